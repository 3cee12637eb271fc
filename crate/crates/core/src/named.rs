//! Concrete permutation models of the small groups used throughout.

use crate::group::PermGroup;
use crate::perm::Perm;

fn cycles(degree: usize, cs: &[&[usize]]) -> Perm {
    let cs: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(degree, &cs).expect("well-formed cycle literal")
}

pub fn cyclic(n: usize) -> PermGroup {
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let c: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycles(n, &[&c])]).unwrap()
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(1);
    }
    let full: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycles(n, &[&[0, 1]]), cycles(n, &[&full])]).unwrap()
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (2..n).map(|k| cycles(n, &[&[0, 1, k]])).collect();
    PermGroup::new(n, gens).unwrap()
}

/// Symmetries of a regular `n`-gon, order `2n` (`n ≥ 3`).
pub fn dihedral(n: usize) -> PermGroup {
    assert!(n >= 3, "dihedral(n) needs n >= 3; use klein_four for n = 2");
    let rot: Vec<usize> = (0..n).collect();
    let refl = Perm::from_images((0..n).map(|i| ((n - i) % n) as u32).collect()).unwrap();
    PermGroup::new(n, vec![cycles(n, &[&rot]), refl]).unwrap()
}

pub fn klein_four() -> PermGroup {
    PermGroup::new(4, vec![cycles(4, &[&[0, 1], &[2, 3]]), cycles(4, &[&[0, 2], &[1, 3]])]).unwrap()
}

/// The quaternion group acting regularly on 8 points.
pub fn quaternion() -> PermGroup {
    PermGroup::new(
        8,
        vec![
            cycles(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]),
            cycles(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]]),
        ],
    )
    .unwrap()
}

/// `A × B` acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let shift_a = |p: &Perm| {
        let mut im: Vec<u32> = p.images().to_vec();
        im.extend((da..da + db).map(|i| i as u32));
        Perm::from_images(im).unwrap()
    };
    let shift_b = |p: &Perm| {
        let mut im: Vec<u32> = (0..da as u32).collect();
        im.extend(p.images().iter().map(|&i| i + da as u32));
        Perm::from_images(im).unwrap()
    };
    let gens = a
        .generators()
        .iter()
        .map(shift_a)
        .chain(b.generators().iter().map(shift_b))
        .collect();
    PermGroup::new(da + db, gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).order().unwrap(), 1);
        assert_eq!(cyclic(12).order().unwrap(), 12);
        assert_eq!(symmetric(4).order().unwrap(), 24);
        assert_eq!(alternating(4).order().unwrap(), 12);
        assert_eq!(dihedral(4).order().unwrap(), 8);
        assert_eq!(dihedral(6).order().unwrap(), 12);
        assert_eq!(klein_four().order().unwrap(), 4);
        assert_eq!(direct_product(&cyclic(3), &symmetric(3)).order().unwrap(), 18);
    }

    #[test]
    fn quaternion_has_a_single_involution() {
        let q = quaternion();
        let t = q.elements().unwrap();
        assert_eq!(t.order(), 8);
        assert!(!q.is_abelian().unwrap());
        let involutions = (1..8u32).filter(|&x| t.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }
}
