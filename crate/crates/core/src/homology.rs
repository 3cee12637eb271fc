//! Abelian computations that do not go through coset enumeration: `H₂(G; ℤ)`
//! from the normalized bar complex, tensor products of modules with the
//! augmentation ideal, and tensor products of abelianizations.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::snf::{invariant_factors, AbelianInvariants, IntMatrix};

pub const DEFAULT_BAR_BOUND: usize = 16;

/// `H₂(G; ℤ)` as `Ker ∂₂ / Im ∂₃` in the normalized bar complex (tuples of
/// non-identity elements). Refuses groups larger than `bar_bound`.
pub fn h2_bar_resolution(g: &PermGroup, bar_bound: usize) -> Result<AbelianInvariants> {
    let n = g.order()?;
    if n > bar_bound {
        return Err(GroupError::BoundExceeded { bound: bar_bound });
    }
    if n == 1 {
        return Ok(AbelianInvariants::trivial());
    }
    let t = g.elements()?;
    let m = n - 1;
    // Element e ≠ 1 is basis index e - 1.
    let b1 = |x: u32| x as usize - 1;
    let b2 = |x: u32, y: u32| (x as usize - 1) * m + y as usize - 1;

    // ∂₂[a|b] = [b] - [ab] + [a]
    let mut d2 = IntMatrix::zeros(m * m, m);
    for a in 1..n as u32 {
        for b in 1..n as u32 {
            let row = b2(a, b);
            d2.add_to(row, b1(b), 1);
            d2.add_to(row, b1(a), 1);
            let ab = t.mul(a, b);
            if ab != 0 {
                d2.add_to(row, b1(ab), -1);
            }
        }
    }
    // ∂₃[a|b|c] = [b|c] - [ab|c] + [a|bc] - [a|b]
    let mut d3 = IntMatrix::zeros(m * m * m, m * m);
    let mut row = 0;
    for a in 1..n as u32 {
        for b in 1..n as u32 {
            for c in 1..n as u32 {
                d3.add_to(row, b2(b, c), 1);
                let ab = t.mul(a, b);
                if ab != 0 {
                    d3.add_to(row, b2(ab, c), -1);
                }
                let bc = t.mul(b, c);
                if bc != 0 {
                    d3.add_to(row, b2(a, bc), 1);
                }
                d3.add_to(row, b2(a, b), -1);
                row += 1;
            }
        }
    }
    let rank2 = invariant_factors(&d2).iter().filter(|d| !d.is_zero()).count();
    // Ker ∂₂ is a direct summand of C₂, so the torsion of C₂/Im ∂₃ is the
    // torsion of H₂.
    let coker3 = AbelianInvariants::from_relation_matrix(&d3);
    Ok(AbelianInvariants {
        torsion: coker3.torsion,
        free_rank: coker3.free_rank - rank2,
    })
}

/// A finitely generated abelian group with a left action of a finite group
/// given by integer matrices on its standard generators (torsion generators
/// first, as in [`AbelianInvariants::generator_count`]). Column `j` of a
/// matrix is the image of generator `j`.
#[derive(Debug, Clone)]
pub struct ActedModule {
    invariants: AbelianInvariants,
    group: PermGroup,
    /// Matrix of every group element, reduced modulo the torsion orders.
    matrices: Vec<Vec<Vec<i64>>>,
}

impl ActedModule {
    /// `generator_action[k]` is the matrix of the `k`-th generator of `group`.
    pub fn new(invariants: AbelianInvariants, group: &PermGroup, generator_action: &[Vec<Vec<i64>>]) -> Result<Self> {
        let k = invariants.generator_count();
        let t = group.elements()?;
        let gens = group.generators();
        if generator_action.len() != gens.len() {
            return Err(GroupError::InvalidAction(format!(
                "{} matrices given for {} generators",
                generator_action.len(),
                gens.len()
            )));
        }
        if generator_action
            .iter()
            .any(|mat| mat.len() != k || mat.iter().any(|r| r.len() != k))
        {
            return Err(GroupError::InvalidAction(format!("action matrices must be {k}x{k}")));
        }
        let reduce = |mut mat: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            for (i, row) in mat.iter_mut().enumerate() {
                if let Some(&d) = invariants.torsion.get(i) {
                    for v in row.iter_mut() {
                        *v = v.rem_euclid(d as i64);
                    }
                }
            }
            mat
        };
        // A torsion generator of order d must go to an element killed by d.
        for (s, mat) in generator_action.iter().enumerate() {
            for (j, &d) in invariants.torsion.iter().enumerate() {
                let ok = (0..k).all(|i| match invariants.torsion.get(i) {
                    Some(&di) => (mat[i][j] * d as i64).rem_euclid(di as i64) == 0,
                    None => mat[i][j] == 0,
                });
                if !ok {
                    return Err(GroupError::InvalidAction(format!(
                        "generator {s} does not respect the order of module generator {j}"
                    )));
                }
            }
        }
        let pairs: Vec<(u32, Vec<Vec<i64>>)> = gens
            .iter()
            .zip(generator_action)
            .map(|(p, mat)| (t.index_of(p).unwrap() as u32, reduce(mat.clone())))
            .collect();
        let identity: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        let mut matrices: Vec<Option<Vec<Vec<i64>>>> = vec![None; t.order()];
        matrices[0] = Some(identity);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (s, ms) in &pairs {
                // x·s acts as "s first, then x"
                let y = t.mul(x, *s);
                let mx = matrices[x as usize].as_ref().unwrap();
                let prod = reduce(mat_mul(mx, ms));
                match &matrices[y as usize] {
                    None => {
                        matrices[y as usize] = Some(prod);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != prod => {
                        return Err(GroupError::InvalidAction(
                            "matrices violate a relation of the acting group".into(),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
        let matrices: Vec<_> = matrices.into_iter().map(|m| m.unwrap()).collect();
        for mat in &matrices {
            if !invertible_mod_torsion(mat, &invariants) {
                return Err(GroupError::InvalidAction("an element acts non-invertibly".into()));
            }
        }
        Ok(ActedModule {
            invariants,
            group: group.clone(),
            matrices,
        })
    }

    /// The same group with every element acting as the identity.
    pub fn trivial(invariants: AbelianInvariants, group: &PermGroup) -> Result<Self> {
        let k = invariants.generator_count();
        let id: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        Self::new(invariants, group, &vec![id; group.generators().len()])
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn matrix(&self, h: u32) -> &[Vec<i64>] {
        &self.matrices[h as usize]
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = a.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

/// Finitely generated abelian groups are Hopfian, so an endomorphism is an
/// automorphism iff its cokernel is trivial.
fn invertible_mod_torsion(mat: &[Vec<i64>], inv: &AbelianInvariants) -> bool {
    let k = inv.generator_count();
    let mut rows: Vec<Vec<i64>> = (0..k).map(|j| (0..k).map(|i| mat[i][j]).collect()).collect();
    for (i, &d) in inv.torsion.iter().enumerate() {
        let mut r = vec![0; k];
        r[i] = d as i64;
        rows.push(r);
    }
    AbelianInvariants::from_relation_matrix(&IntMatrix::from_i64_rows(k, &rows)).is_trivial()
}

/// `A ⊗_{ℤH} I(H)` for the augmentation ideal `I(H)`, free abelian on
/// `h - 1` (`h ≠ 1`), with `A` made a right module by `a·h = h⁻¹a`.
pub fn module_tensor_aug_ideal(module: &ActedModule) -> Result<AbelianInvariants> {
    let h = module.group();
    let t = h.elements()?;
    let n = t.order();
    let k = module.invariants.generator_count();
    let m = n - 1;
    if m == 0 || k == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    // Generator e_j ⊗ b_x has column j·m + (x - 1).
    let col = |j: usize, x: u32| j * m + x as usize - 1;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (j, &d) in module.invariants.torsion.iter().enumerate() {
        for x in 1..n as u32 {
            let mut r = vec![BigInt::zero(); k * m];
            r[col(j, x)] = BigInt::from(d);
            rows.push(r);
        }
    }
    for g in 1..n as u32 {
        let right = module.matrix(t.inv(g));
        for j in 0..k {
            for x in 1..n as u32 {
                let mut r = vec![BigInt::zero(); k * m];
                // (e_j·g) ⊗ b_x
                for (i, row) in right.iter().enumerate() {
                    if row[j] != 0 {
                        r[col(i, x)] += row[j];
                    }
                }
                // - e_j ⊗ g·b_x, with g·b_x = b_{gx} - b_g
                let gx = t.mul(g, x);
                if gx != 0 {
                    r[col(j, gx)] -= 1;
                }
                r[col(j, g)] += 1;
                rows.push(r);
            }
        }
    }
    let mut mat = IntMatrix::zeros(rows.len(), k * m);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            if !v.is_zero() {
                mat.set(i, j, v);
            }
        }
    }
    Ok(AbelianInvariants::from_relation_matrix(&mat))
}

/// `G_ab ⊗_ℤ H_ab`, the tensor product for trivial mutual actions.
pub fn trivial_action_tensor(g: &PermGroup, h: &PermGroup) -> Result<AbelianInvariants> {
    Ok(g.abelian_invariants()?.tensor(&h.abelian_invariants()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn inv(t: &[u64], r: usize) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(t, r)
    }

    #[test]
    fn bar_multipliers() {
        for n in [2, 3, 4, 5, 6] {
            assert!(h2_bar_resolution(&named::cyclic(n), 16).unwrap().is_trivial(), "C{n}");
        }
        assert_eq!(h2_bar_resolution(&named::klein_four(), 16).unwrap(), inv(&[2], 0));
        assert!(h2_bar_resolution(&named::symmetric(3), 16).unwrap().is_trivial());
        assert!(h2_bar_resolution(&named::quaternion(), 16).unwrap().is_trivial());
        assert_eq!(h2_bar_resolution(&named::dihedral(4), 16).unwrap(), inv(&[2], 0));
    }

    #[test]
    fn bar_bound_is_enforced() {
        let err = h2_bar_resolution(&named::symmetric(4), 16).unwrap_err();
        assert_eq!(err, GroupError::BoundExceeded { bound: 16 });
    }

    #[test]
    fn integers_under_negation() {
        let c2 = named::cyclic(2);
        let a = ActedModule::new(inv(&[], 1), &c2, &[vec![vec![-1]]]).unwrap();
        assert_eq!(module_tensor_aug_ideal(&a).unwrap(), inv(&[], 1));
    }

    #[test]
    fn trivial_actions_give_tensor_with_abelianization() {
        let c3 = named::cyclic(3);
        let a = ActedModule::trivial(inv(&[], 1), &c3).unwrap();
        assert_eq!(module_tensor_aug_ideal(&a).unwrap(), inv(&[3], 0));
        let c2 = named::cyclic(2);
        let a = ActedModule::trivial(inv(&[2], 0), &c2).unwrap();
        assert_eq!(module_tensor_aug_ideal(&a).unwrap(), inv(&[2], 0));
        let s3 = named::symmetric(3);
        let a = ActedModule::trivial(inv(&[], 2), &s3).unwrap();
        assert_eq!(module_tensor_aug_ideal(&a).unwrap(), inv(&[2, 2], 0));
    }

    #[test]
    fn inconsistent_actions_are_rejected() {
        let c3 = named::cyclic(3);
        assert!(ActedModule::new(inv(&[], 1), &c3, &[vec![vec![-1]]]).is_err());
        let c2 = named::cyclic(2);
        assert!(ActedModule::new(inv(&[], 1), &c2, &[vec![vec![2]]]).is_err());
    }

    #[test]
    fn abelian_tensors() {
        let c = named::cyclic;
        assert_eq!(trivial_action_tensor(&c(2), &c(2)).unwrap(), inv(&[2], 0));
        assert_eq!(trivial_action_tensor(&c(4), &c(6)).unwrap(), inv(&[2], 0));
        let s3 = named::symmetric(3);
        assert_eq!(trivial_action_tensor(&s3, &s3).unwrap(), inv(&[2], 0));
    }
}
