use std::collections::VecDeque;
use std::fmt;

use crate::error::{GroupError, Result};
use crate::fp::FpGroup;
use crate::group::{PermGroup, Subgroup};
use crate::perm::Perm;

/// A homomorphism between enumerated permutation groups, stored as the full
/// element map (domain index → codomain index).
#[derive(Clone)]
pub struct GroupHom {
    domain: PermGroup,
    codomain: PermGroup,
    map: Vec<u32>,
}

impl GroupHom {
    /// Extends `generator ↦ image` pairs (element indices) to a homomorphism.
    ///
    /// The domain is explored breadth-first along the given generators; if two
    /// paths reach the same element with different images, the closed loop
    /// they form is a relator that is not sent to the identity and is reported
    /// as the witness.
    pub fn from_generator_images(
        domain: &PermGroup,
        codomain: &PermGroup,
        pairs: &[(u32, u32)],
    ) -> Result<Self> {
        let dt = domain.elements()?;
        let ct = codomain.elements()?;
        for &(g, h) in pairs {
            if g as usize >= dt.order() || h as usize >= ct.order() {
                return Err(GroupError::InvalidInput("generator image index out of range".into()));
            }
        }
        let n = dt.order();
        let mut map = vec![u32::MAX; n];
        // (parent element, generator position) for witness reconstruction
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (k, &(s, t)) in pairs.iter().enumerate() {
                let y = dt.mul(x, s);
                let image = ct.mul(map[x as usize], t);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = image;
                    parent[y as usize] = Some((x, k));
                    queue.push_back(y);
                } else if map[y as usize] != image {
                    let mut word = path_to(&parent, x);
                    word.push((k, 1));
                    let mut back = path_to(&parent, y);
                    back.reverse();
                    word.extend(back.into_iter().map(|(g, e)| (g, -e)));
                    return Err(GroupError::NotAHomomorphism {
                        witness: format_word(&word),
                    });
                }
            }
        }
        if map.contains(&u32::MAX) {
            return Err(GroupError::InvalidInput(
                "the given elements do not generate the domain".into(),
            ));
        }
        Ok(GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map,
        })
    }

    /// Homomorphism sending the `k`-th generator of `domain` to `images[k]`.
    pub fn from_perm_images(domain: &PermGroup, codomain: &PermGroup, images: &[Perm]) -> Result<Self> {
        if images.len() != domain.generators().len() {
            return Err(GroupError::InvalidInput(format!(
                "{} images given for {} generators",
                images.len(),
                domain.generators().len()
            )));
        }
        let dt = domain.elements()?;
        let ct = codomain.elements()?;
        let mut pairs = Vec::with_capacity(images.len());
        for (g, img) in domain.generators().iter().zip(images) {
            let h = ct.index_of(img).ok_or_else(|| {
                GroupError::InvalidInput(format!("image {img} is not in the codomain"))
            })?;
            pairs.push((dt.index_of(g).unwrap() as u32, h as u32));
        }
        Self::from_generator_images(domain, codomain, &pairs)
    }

    /// Wraps an element map known to be a homomorphism.
    pub(crate) fn from_map_unchecked(domain: PermGroup, codomain: PermGroup, map: Vec<u32>) -> Self {
        let hom = GroupHom {
            domain,
            codomain,
            map,
        };
        debug_assert!(hom.verify().is_ok());
        hom
    }

    /// Checks `f(x s) = f(x) f(s)` for every element `x` and generator `s`.
    pub fn verify(&self) -> Result<()> {
        let dt = self.domain.elements()?;
        let ct = self.codomain.elements()?;
        for x in 0..dt.order() as u32 {
            for &s in dt.generators() {
                if self.apply(dt.mul(x, s)) != ct.mul(self.apply(x), self.apply(s)) {
                    return Err(GroupError::NotAHomomorphism {
                        witness: format!("{} * {}", dt.perm(x as usize), dt.perm(s as usize)),
                    });
                }
            }
        }
        if self.map[0] != 0 {
            return Err(GroupError::NotAHomomorphism {
                witness: "identity".into(),
            });
        }
        Ok(())
    }

    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &PermGroup {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        let kernel: Vec<usize> = (0..self.map.len()).filter(|&x| self.map[x] == 0).collect();
        self.domain.subgroup_generated(&kernel).expect("domain is enumerated")
    }

    pub fn image(&self) -> Subgroup {
        let mut image: Vec<usize> = self.map.iter().map(|&y| y as usize).collect();
        image.sort_unstable();
        image.dedup();
        self.codomain.subgroup_generated(&image).expect("codomain is enumerated")
    }

    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let mut image: Vec<usize> = sub.members().iter().map(|&x| self.apply(x) as usize).collect();
        image.sort_unstable();
        image.dedup();
        self.codomain.subgroup_generated(&image).expect("codomain is enumerated")
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().skip(1).all(|&y| y != 0)
    }

    pub fn is_surjective(&self) -> bool {
        let n = self.codomain.order().expect("codomain is enumerated");
        let mut hit = vec![false; n];
        for &y in &self.map {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        GroupHom {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            map: self.map.iter().map(|&y| next.apply(y)).collect(),
        }
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?} -> {:?})", self.domain, self.codomain)
    }
}

/// A map from a presented group into a permutation group, valid when every
/// relator evaluates to the identity.
#[derive(Debug, Clone)]
pub struct PresentationHom {
    presentation: FpGroup,
    codomain: PermGroup,
    images: Vec<Perm>,
}

impl PresentationHom {
    pub fn new(presentation: &FpGroup, codomain: &PermGroup, images: Vec<Perm>) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(GroupError::InvalidInput(format!(
                "{} images given for {} generators",
                images.len(),
                presentation.generator_count()
            )));
        }
        if let Some(p) = images.iter().find(|p| p.degree() != codomain.degree()) {
            return Err(GroupError::InvalidInput(format!("image {p} has the wrong degree")));
        }
        if let Some((_, r)) = presentation.failing_relator(&images, codomain.degree()) {
            return Err(GroupError::NotAHomomorphism {
                witness: r.display_with(presentation.generator_names()),
            });
        }
        Ok(PresentationHom {
            presentation: presentation.clone(),
            codomain: codomain.clone(),
            images,
        })
    }

    pub fn presentation(&self) -> &FpGroup {
        &self.presentation
    }

    pub fn codomain(&self) -> &PermGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn image(&self) -> Result<Subgroup> {
        let t = self.codomain.elements()?;
        let idx: Vec<usize> = self
            .images
            .iter()
            .map(|p| {
                t.index_of(p)
                    .ok_or_else(|| GroupError::InvalidInput(format!("image {p} is not in the codomain")))
            })
            .collect::<Result<_>>()?;
        self.codomain.subgroup_generated(&idx)
    }
}

/// Checks the relators of `presentation` against the proposed images.
pub fn hom(presentation: &FpGroup, codomain: &PermGroup, images: Vec<Perm>) -> Result<PresentationHom> {
    PresentationHom::new(presentation, codomain, images)
}

fn path_to(parent: &[Option<(u32, usize)>], mut x: u32) -> Vec<(usize, i8)> {
    let mut word = Vec::new();
    while let Some((p, k)) = parent[x as usize] {
        word.push((k, 1));
        x = p;
    }
    word.reverse();
    word
}

fn format_word(word: &[(usize, i8)]) -> String {
    word.iter()
        .map(|&(k, e)| if e == 1 { format!("s{k}") } else { format!("s{k}^-1") })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn identity_map_is_valid_with_trivial_kernel() {
        let g = named::symmetric(3);
        let images = g.generators().to_vec();
        let id = GroupHom::from_perm_images(&g, &g, &images).unwrap();
        assert!(id.kernel().is_trivial());
        assert!(id.is_injective() && id.is_surjective());
    }

    #[test]
    fn cyclic_four_onto_two() {
        let c4 = named::cyclic(4);
        let c2 = named::cyclic(2);
        let f = GroupHom::from_perm_images(&c4, &c2, &[c2.generators()[0].clone()]).unwrap();
        assert_eq!(f.kernel().order(), 2);
        assert!(f.is_surjective());
    }

    #[test]
    fn bad_images_produce_a_relator_witness() {
        // C3 -> C2 sending the generator to the involution is not a homomorphism.
        let c3 = named::cyclic(3);
        let c2 = named::cyclic(2);
        let err = GroupHom::from_perm_images(&c3, &c2, &[c2.generators()[0].clone()]).unwrap_err();
        match err {
            GroupError::NotAHomomorphism { witness } => assert!(witness.contains("s0")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn composition_and_images() {
        let q8 = named::quaternion();
        let (v4, proj) = q8.quotient(&q8.center().unwrap()).unwrap();
        assert_eq!(proj.image().order(), 4);
        let (triv, p2) = v4.quotient(&v4.whole().unwrap()).unwrap();
        assert_eq!(triv.order().unwrap(), 1);
        assert_eq!(proj.then(&p2).kernel().order(), 8);
    }
}
