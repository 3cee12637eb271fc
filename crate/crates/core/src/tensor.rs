//! The non-abelian tensor product `G ⊗ H` of two groups acting compatibly on
//! each other, realized as a permutation group by enumerating its full
//! symbol presentation, together with `φ`, the induced actions, `∇`, the
//! exterior square and the Schur multiplier.

use serde::Serialize;

use crate::actions::{conjugation_square, Action, MutualActions};
use crate::coset::{perm_rep, todd_coxeter, EnumLimits};
use crate::error::{GroupError, Result};
use crate::fp::{FpGroup, Letter, Word};
use crate::group::{PermGroup, Subgroup};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::snf::AbelianInvariants;

/// The presentation with one generator `g⊗h` per pair of elements and one
/// relator per instance of the two defining relation families.
#[derive(Debug, Clone)]
pub struct TensorPresentation {
    presentation: FpGroup,
    ng: usize,
    nh: usize,
}

impl TensorPresentation {
    pub fn presentation(&self) -> &FpGroup {
        &self.presentation
    }

    /// Generator index of `g⊗h`.
    #[inline]
    pub fn symbol(&self, g: u32, h: u32) -> usize {
        g as usize * self.nh + h as usize
    }

    pub fn pair(&self, symbol: usize) -> (u32, u32) {
        ((symbol / self.nh) as u32, (symbol % self.nh) as u32)
    }

    pub fn symbol_count(&self) -> usize {
        self.ng * self.nh
    }
}

pub fn tensor_presentation(ma: &MutualActions) -> Result<TensorPresentation> {
    ma.require_certified()?;
    let gt = ma.g().elements()?;
    let ht = ma.h().elements()?;
    let (ng, nh) = (gt.order(), ht.order());
    let sym = |g: u32, h: u32, exponent: i8| Letter {
        generator: g as usize * nh + h as usize,
        exponent,
    };
    let names = (0..ng)
        .flat_map(|g| (0..nh).map(move |h| format!("t{g}_{h}")))
        .collect();
    let mut relators = Vec::with_capacity(ng * ng * nh + ng * nh * nh);
    let (agh, ahg) = (ma.act_gh(), ma.act_hg());
    // gg'⊗h = (ᵍg'⊗ᵍh)(g⊗h)
    for g in 0..ng as u32 {
        for g2 in 0..ng as u32 {
            for h in 0..nh as u32 {
                relators.push(Word::from_letters(vec![
                    sym(gt.mul(g, g2), h, 1),
                    sym(g, h, -1),
                    sym(gt.conj(g, g2), agh.act(g, h), -1),
                ]));
            }
        }
    }
    // g⊗hh' = (g⊗h)(ʰg⊗ʰh')
    for g in 0..ng as u32 {
        for h in 0..nh as u32 {
            for h2 in 0..nh as u32 {
                relators.push(Word::from_letters(vec![
                    sym(g, ht.mul(h, h2), 1),
                    sym(ahg.act(h, g), ht.conj(h, h2), -1),
                    sym(g, h, -1),
                ]));
            }
        }
    }
    Ok(TensorPresentation {
        presentation: FpGroup::new(names, relators)?,
        ng,
        nh,
    })
}

/// A concrete `G ⊗ H`.
#[derive(Clone, Debug)]
pub struct TensorGroup {
    actions: MutualActions,
    carrier: PermGroup,
    /// `g·|H| + h` → carrier element of `g⊗h`.
    pairing: Vec<u32>,
    phi: GroupHom,
    act_g: Action,
    act_h: Action,
    cosets_defined: usize,
}

/// A failing instance of a defining relation inside a constructed carrier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RelationViolation {
    /// 1 for `gg'⊗h`, 2 for `g⊗hh'`.
    pub family: u8,
    /// `(g, g', h)` or `(g, h, h')`.
    pub tuple: (u32, u32, u32),
}

impl TensorGroup {
    pub fn actions(&self) -> &MutualActions {
        &self.actions
    }

    pub fn carrier(&self) -> &PermGroup {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order().expect("carrier is enumerated")
    }

    /// Carrier element of `g⊗h`.
    #[inline]
    pub fn pair(&self, g: u32, h: u32) -> u32 {
        self.pairing[g as usize * self.nh() + h as usize]
    }

    pub fn pairing(&self) -> &[u32] {
        &self.pairing
    }

    fn nh(&self) -> usize {
        self.actions.h().order().expect("enumerated")
    }

    /// `φ: g⊗h ↦ g·(ʰg)⁻¹`.
    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    /// `ᵍ(g'⊗h') = ᵍg'⊗ᵍh'`.
    pub fn action_of_g(&self) -> &Action {
        &self.act_g
    }

    /// `ʰ(g'⊗h') = ʰg'⊗ʰh'`.
    pub fn action_of_h(&self) -> &Action {
        &self.act_h
    }

    pub fn cosets_defined(&self) -> usize {
        self.cosets_defined
    }

    pub fn abelian_invariants(&self) -> Result<AbelianInvariants> {
        self.carrier.abelian_invariants()
    }

    /// Every instance of both relation families, over all element tuples.
    pub fn relation_audit(&self) -> Vec<RelationViolation> {
        let gt = self.actions.g().elements().expect("enumerated");
        let ht = self.actions.h().elements().expect("enumerated");
        let ct = self.carrier.elements().expect("enumerated");
        let (agh, ahg) = (self.actions.act_gh(), self.actions.act_hg());
        let mut out = Vec::new();
        for g in 0..gt.order() as u32 {
            for g2 in 0..gt.order() as u32 {
                for h in 0..ht.order() as u32 {
                    let lhs = self.pair(gt.mul(g, g2), h);
                    let rhs = ct.mul(self.pair(gt.conj(g, g2), agh.act(g, h)), self.pair(g, h));
                    if lhs != rhs {
                        out.push(RelationViolation {
                            family: 1,
                            tuple: (g, g2, h),
                        });
                    }
                }
            }
        }
        for g in 0..gt.order() as u32 {
            for h in 0..ht.order() as u32 {
                for h2 in 0..ht.order() as u32 {
                    let lhs = self.pair(g, ht.mul(h, h2));
                    let rhs = ct.mul(self.pair(g, h), self.pair(ahg.act(h, g), ht.conj(h, h2)));
                    if lhs != rhs {
                        out.push(RelationViolation {
                            family: 2,
                            tuple: (g, h, h2),
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Whether the symbols `s⊗t` with `s`, `t` generators of `G` and `H`
    /// already generate the whole carrier.
    pub fn generated_by_generator_pairs(&self) -> bool {
        let gt = self.actions.g().elements().expect("enumerated");
        let ht = self.actions.h().elements().expect("enumerated");
        let gens_g: Vec<u32> = std::iter::once(0).chain(gt.generators().iter().copied()).collect();
        let gens_h: Vec<u32> = std::iter::once(0).chain(ht.generators().iter().copied()).collect();
        let seeds: Vec<usize> = gens_g
            .iter()
            .flat_map(|&g| gens_h.iter().map(move |&h| (g, h)))
            .map(|(g, h)| self.pair(g, h) as usize)
            .collect();
        let sub = self.carrier.subgroup_generated(&seeds).expect("enumerated");
        sub.order() == self.order()
    }

    /// Subgroup generated by the images of the given pairs.
    pub fn generated_by_pairs(&self, pairs: impl IntoIterator<Item = (u32, u32)>) -> Subgroup {
        let mut seeds: Vec<usize> = pairs.into_iter().map(|(g, h)| self.pair(g, h) as usize).collect();
        seeds.sort_unstable();
        seeds.dedup();
        self.carrier.subgroup_generated(&seeds).expect("enumerated")
    }

    /// The homomorphism into another tensor group induced on symbols by
    /// `f_g` and `f_h` (element maps), `g⊗h ↦ f_g(g)⊗f_h(h)`. Fails if this
    /// is not well defined.
    pub fn induced_map(&self, target: &TensorGroup, f_g: &[u32], f_h: &[u32]) -> Result<GroupHom> {
        let pairs = self.symbol_pairs(|g, h| target.pair(f_g[g as usize], f_h[h as usize]));
        GroupHom::from_generator_images(&self.carrier, &target.carrier, &pairs)
    }

    /// A homomorphism out of the carrier given by its values on symbols.
    pub fn map_on_symbols(&self, codomain: &PermGroup, image: impl Fn(u32, u32) -> u32) -> Result<GroupHom> {
        let pairs = self.symbol_pairs(image);
        GroupHom::from_generator_images(&self.carrier, codomain, &pairs)
    }

    fn symbol_pairs(&self, image: impl Fn(u32, u32) -> u32) -> Vec<(u32, u32)> {
        let nh = self.nh() as u32;
        (0..self.pairing.len() as u32)
            .map(|k| (self.pairing[k as usize], image(k / nh, k % nh)))
            .collect()
    }
}

/// Builds `G ⊗ H` by coset enumeration over the trivial subgroup.
pub fn tensor_product(ma: &MutualActions, limits: EnumLimits) -> Result<TensorGroup> {
    let tp = tensor_presentation(ma)?;
    let table = todd_coxeter(tp.presentation(), &[], limits)?;
    let (_, phom) = perm_rep(&table, tp.presentation())?;
    let degree = table.index();
    // Symbol k is generator k, so these are the images of every g⊗h.
    let images = phom.images();

    // A smaller generating set, chosen greedily in symbol order.
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = PermGroup::trivial(degree);
    for p in images {
        if p.is_identity() || span.elements()?.index_of(p).is_some() {
            continue;
        }
        gens.push(p.clone());
        span = PermGroup::new(degree, gens.clone())?;
    }
    let bound = ma.g().element_bound().max(degree);
    let carrier = if gens.is_empty() {
        PermGroup::trivial(degree)
    } else {
        PermGroup::new(degree, gens)?.with_element_bound(bound)
    };
    let ct = carrier.elements()?;
    let pairing: Vec<u32> = images
        .iter()
        .map(|p| ct.index_of(p).expect("symbol lies in the carrier") as u32)
        .collect();

    let gt = ma.g().elements()?;
    let ht = ma.h().elements()?;
    let nh = ht.order() as u32;
    let (agh, ahg) = (ma.act_gh(), ma.act_hg());
    let sym = |g: u32, h: u32| pairing[(g * nh + h) as usize];
    let pairs_for = |f: &dyn Fn(u32, u32) -> u32| -> Vec<(u32, u32)> {
        (0..pairing.len() as u32)
            .map(|k| (pairing[k as usize], f(k / nh, k % nh)))
            .collect()
    };
    let phi_pairs = pairs_for(&|g, h| gt.mul(g, gt.inv(ahg.act(h, g))));
    let phi = GroupHom::from_generator_images(&carrier, ma.g(), &phi_pairs)
        .map_err(|e| internal(format!("φ is not well defined: {e}")))?;

    let mut table_g = Vec::with_capacity(gt.order());
    for a in 0..gt.order() as u32 {
        let pairs = pairs_for(&|g, h| sym(gt.conj(a, g), agh.act(a, h)));
        let hom = GroupHom::from_generator_images(&carrier, &carrier, &pairs)
            .map_err(|e| internal(format!("G-action is not well defined: {e}")))?;
        table_g.push(hom.map().to_vec());
    }
    let mut table_h = Vec::with_capacity(ht.order());
    for b in 0..nh {
        let pairs = pairs_for(&|g, h| sym(ahg.act(b, g), ht.conj(b, h)));
        let hom = GroupHom::from_generator_images(&carrier, &carrier, &pairs)
            .map_err(|e| internal(format!("H-action is not well defined: {e}")))?;
        table_h.push(hom.map().to_vec());
    }
    let act_g = Action::from_table(ma.g(), &carrier, table_g)?;
    let act_h = Action::from_table(ma.h(), &carrier, table_h)?;
    Ok(TensorGroup {
        actions: ma.clone(),
        carrier,
        pairing,
        phi,
        act_g,
        act_h,
        cosets_defined: table.cosets_defined(),
    })
}

fn internal(msg: String) -> GroupError {
    GroupError::InvalidInput(format!("internal construction error: {msg}"))
}

/// `G ⊗ G` with both actions conjugation.
pub fn tensor_square(g: &PermGroup, limits: EnumLimits) -> Result<TensorGroup> {
    tensor_product(&conjugation_square(g)?, limits)
}

/// `λ: g⊗g' ↦ [g, g']` on a tensor square; this is `φ` there.
pub fn lambda(square: &TensorGroup) -> &GroupHom {
    square.phi()
}

/// `∇(G)`: normal closure of the diagonal symbols `g⊗g`.
pub fn nabla(square: &TensorGroup) -> Result<Subgroup> {
    let n = square.actions().g().order()? as u32;
    let mut seeds: Vec<usize> = (0..n).map(|g| square.pair(g, g) as usize).collect();
    seeds.sort_unstable();
    seeds.dedup();
    square.carrier().normal_closure(&seeds)
}

/// `G ∧ G = (G ⊗ G)/∇(G)` with `κ: G ∧ G → G`, `g∧g' ↦ [g, g']`.
#[derive(Clone, Debug)]
pub struct ExteriorSquare {
    pub square: TensorGroup,
    pub nabla: Subgroup,
    pub group: PermGroup,
    pub projection: GroupHom,
    pub kappa: GroupHom,
}

pub fn exterior_square(g: &PermGroup, limits: EnumLimits) -> Result<ExteriorSquare> {
    let square = tensor_square(g, limits)?;
    exterior_from_square(square)
}

pub fn exterior_from_square(square: TensorGroup) -> Result<ExteriorSquare> {
    let nabla = nabla(&square)?;
    let (group, projection) = square.carrier().quotient(&nabla)?;
    let gt = square.actions().g().elements()?;
    let n = gt.order() as u32;
    let mut pairs = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            pairs.push((projection.apply(square.pair(a, b)), gt.comm(a, b)));
        }
    }
    let kappa = GroupHom::from_generator_images(&group, square.actions().g(), &pairs)
        .map_err(|e| internal(format!("κ is not well defined: {e}")))?;
    Ok(ExteriorSquare {
        square,
        nabla,
        group,
        projection,
        kappa,
    })
}

/// `H₂(G)` as `Ker κ`, which must be central in `G ∧ G`.
#[derive(Clone, Debug)]
pub struct SchurMultiplier {
    pub exterior: ExteriorSquare,
    pub kernel: Subgroup,
    pub invariants: AbelianInvariants,
}

pub fn schur_multiplier(g: &PermGroup, limits: EnumLimits) -> Result<SchurMultiplier> {
    multiplier_from_exterior(exterior_square(g, limits)?)
}

pub fn multiplier_from_exterior(exterior: ExteriorSquare) -> Result<SchurMultiplier> {
    let kernel = exterior.kappa.kernel();
    if !kernel.is_central() {
        let t = exterior.group.elements()?;
        let z = kernel
            .members()
            .iter()
            .find(|&&z| t.generators().iter().any(|&s| t.mul(z, s) != t.mul(s, z)))
            .copied()
            .unwrap_or(0);
        return Err(GroupError::NotCentral {
            witness: t.perm(z as usize).to_string(),
        });
    }
    let invariants = kernel.to_group().abelian_invariants()?;
    Ok(SchurMultiplier {
        exterior,
        kernel,
        invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn lim() -> EnumLimits {
        EnumLimits::default()
    }

    #[test]
    fn presentation_counts() {
        let c2 = named::cyclic(2);
        let tp = tensor_presentation(&MutualActions::trivial(&c2, &c2).unwrap()).unwrap();
        assert_eq!(tp.presentation().generator_count(), 4);
        assert_eq!(tp.presentation().relators().len(), 16);
        let s3 = named::symmetric(3);
        let tp = tensor_presentation(&conjugation_square(&s3).unwrap()).unwrap();
        assert_eq!(tp.presentation().generator_count(), 36);
        assert_eq!(tp.presentation().relators().len(), 432);
        assert_eq!(tp.pair(tp.symbol(4, 5)), (4, 5));
    }

    #[test]
    fn trivial_factor_gives_trivial_tensor() {
        let s3 = named::symmetric(3);
        let one = PermGroup::trivial(1);
        let t = tensor_product(&MutualActions::trivial(&s3, &one).unwrap(), lim()).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn small_abelian_tensors() {
        let c2 = named::cyclic(2);
        let t = tensor_product(&MutualActions::trivial(&c2, &c2).unwrap(), lim()).unwrap();
        assert_eq!(t.order(), 2);
        let v4 = named::klein_four();
        let t = tensor_product(&MutualActions::trivial(&v4, &v4).unwrap(), lim()).unwrap();
        assert_eq!(t.order(), 16);
        assert_eq!(t.abelian_invariants().unwrap().torsion, vec![2, 2, 2, 2]);
        assert!(t.relation_audit().is_empty());
    }

    #[test]
    fn cyclic_squares() {
        for n in [2, 3, 4, 6] {
            let t = tensor_square(&named::cyclic(n), lim()).unwrap();
            assert_eq!(t.order(), n, "C{n}");
            assert_eq!(nabla(&t).unwrap().order(), n);
            let ext = exterior_from_square(t).unwrap();
            assert_eq!(ext.group.order().unwrap(), 1);
        }
    }

    #[test]
    fn symmetric_three() {
        let s3 = named::symmetric(3);
        let t = tensor_square(&s3, lim()).unwrap();
        assert!(t.relation_audit().is_empty());
        assert_eq!(lambda(&t).image().order(), 3);
        let nab = nabla(&t).unwrap();
        assert!(nab.is_subset_of(&lambda(&t).kernel()));
        let ext = exterior_from_square(t).unwrap();
        assert_eq!(ext.group.order().unwrap(), 3);
        assert!(ext.kappa.is_injective());
        let m = multiplier_from_exterior(ext).unwrap();
        assert!(m.invariants.is_trivial());
    }

    #[test]
    fn klein_four_multiplier() {
        let m = schur_multiplier(&named::klein_four(), lim()).unwrap();
        assert_eq!(m.exterior.group.order().unwrap(), 2);
        assert_eq!(m.invariants, AbelianInvariants::from_cyclic_orders(&[2], 0));
    }

    #[test]
    fn quaternion_square() {
        let q8 = named::quaternion();
        let t = tensor_square(&q8, lim()).unwrap();
        assert_eq!(lambda(&t).image().order(), 2);
        let m = schur_multiplier(&q8, lim()).unwrap();
        assert!(m.invariants.is_trivial());
    }
}
