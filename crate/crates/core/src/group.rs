//! Finite permutation groups with a cached, canonically ordered element table.
//!
//! Everything downstream works with element *indices* into the sorted element
//! list of a [`PermGroup`]. Index 0 is always the identity.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::snf::{AbelianInvariants, IntMatrix};

pub const DEFAULT_ELEMENT_BOUND: usize = 5000;

/// Groups up to this order get a full multiplication table.
const CAYLEY_LIMIT: usize = 256;

/// A finite group given by generating permutations.
///
/// Cloning is cheap; the element table is shared and computed at most once.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    degree: usize,
    generators: Vec<Perm>,
    element_bound: usize,
    table: OnceLock<Result<ElementTable>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidInput("permutation degree must be at least 1".into()));
        }
        if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
            return Err(GroupError::InvalidPermutation(format!(
                "generator {p} has degree {} but the group has degree {degree}",
                p.degree()
            )));
        }
        Ok(Self::from_parts(degree, generators, DEFAULT_ELEMENT_BOUND))
    }

    fn from_parts(degree: usize, generators: Vec<Perm>, element_bound: usize) -> Self {
        PermGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                element_bound,
                table: OnceLock::new(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree.max(1), Vec::new(), DEFAULT_ELEMENT_BOUND)
    }

    /// Same generators, different enumeration bound. The element cache is not
    /// carried over.
    pub fn with_element_bound(&self, bound: usize) -> Self {
        Self::from_parts(self.degree(), self.generators().to_vec(), bound)
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub fn element_bound(&self) -> usize {
        self.inner.element_bound
    }

    /// The element table, enumerating on first use.
    pub fn elements(&self) -> Result<&ElementTable> {
        self.inner
            .table
            .get_or_init(|| {
                ElementTable::enumerate(self.degree(), self.generators(), self.element_bound())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.order())
    }

    pub fn is_abelian(&self) -> Result<bool> {
        let t = self.elements()?;
        let gens = t.generators();
        Ok(gens
            .iter()
            .all(|&a| gens.iter().all(|&b| t.mul(a, b) == t.mul(b, a))))
    }

    pub fn whole(&self) -> Result<Subgroup> {
        let t = self.elements()?;
        Ok(Subgroup::from_closure(self.clone(), t, t.generators().to_vec()))
    }

    pub fn trivial_subgroup(&self) -> Result<Subgroup> {
        let t = self.elements()?;
        Ok(Subgroup::from_closure(self.clone(), t, Vec::new()))
    }

    /// Smallest subgroup containing the given elements (by index).
    pub fn subgroup_generated(&self, elements: &[usize]) -> Result<Subgroup> {
        let t = self.elements()?;
        t.check_indices(elements)?;
        let gens = elements.iter().map(|&i| i as u32).collect();
        Ok(Subgroup::from_closure(self.clone(), t, gens))
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elements: &[usize]) -> Result<Subgroup> {
        let t = self.elements()?;
        t.check_indices(elements)?;
        let seeds: Vec<u32> = elements.iter().map(|&i| i as u32).collect();
        Ok(Subgroup::normal_closure_within(self.clone(), t, t.generators(), seeds))
    }

    pub fn center(&self) -> Result<Subgroup> {
        let t = self.elements()?;
        let gens = t.generators();
        let central: Vec<u32> = (0..t.order() as u32)
            .filter(|&z| gens.iter().all(|&g| t.mul(z, g) == t.mul(g, z)))
            .collect();
        Ok(Subgroup::from_closure(self.clone(), t, central))
    }

    /// All normal subgroups, by increasing order and then by members.
    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let n = self.order()?;
        let mut found: Vec<Subgroup> = Vec::new();
        for x in 0..n {
            let c = self.normal_closure(&[x])?;
            if !found.contains(&c) {
                found.push(c);
            }
        }
        // Every normal subgroup is a join of normal closures of elements.
        let mut k = 0;
        while k < found.len() {
            for j in 0..k {
                let m = found[k].join(&found[j]);
                if !found.contains(&m) {
                    found.push(m);
                }
            }
            k += 1;
        }
        found.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        Ok(found)
    }

    /// `G/N` realized as the action of `G` on the cosets of `N`, together with
    /// the projection.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(PermGroup, GroupHom)> {
        let t = self.elements()?;
        if let Some(w) = normal.normality_witness(t.generators()) {
            return Err(GroupError::NotNormal { witness: w });
        }
        let n = t.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &m in normal.members() {
                coset_of[t.mul(g, m) as usize] = id;
            }
        }
        let m = reps.len();
        let action_of = |g: u32| -> Perm {
            Perm::from_images_unchecked(
                reps.iter().map(|&r| coset_of[t.mul(r, g) as usize]).collect(),
            )
        };
        let gens: Vec<Perm> = t.generators().iter().map(|&g| action_of(g)).collect();
        let q = PermGroup::from_parts(m, gens, self.element_bound());
        let qt = q.elements()?;
        let map: Vec<u32> = (0..n as u32)
            .map(|g| qt.index_of(&action_of(g)).expect("coset action lies in the quotient") as u32)
            .collect();
        let proj = GroupHom::from_map_unchecked(self.clone(), q.clone(), map);
        Ok((q, proj))
    }

    /// Invariant factors of `G/[G,G]`.
    pub fn abelian_invariants(&self) -> Result<AbelianInvariants> {
        let whole = self.whole()?;
        let derived = commutator_subgroup(&whole, &whole)?;
        let (q, _) = self.quotient(&derived)?;
        abelian_group_invariants(&q)
    }

    /// `Γ₁ = G`, `Γᵢ₊₁ = [Γᵢ, Γᵢ]`, stopping at the first repeated term.
    pub fn derived_series(&self) -> Result<Vec<Subgroup>> {
        let mut series = vec![self.whole()?];
        loop {
            let last = series.last().unwrap();
            let next = commutator_subgroup(last, last)?;
            if next == *last {
                return Ok(series);
            }
            series.push(next);
        }
    }

    /// `γ₁ = G`, `γᵢ₊₁ = [G, γᵢ]`. Ends at the trivial group, or, for a
    /// non-nilpotent group, after listing the first repeated term twice so the
    /// stabilization is visible: `S3 → [S3, A3, A3]`.
    pub fn lower_central_series(&self) -> Result<Vec<Subgroup>> {
        let whole = self.whole()?;
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return Ok(series);
            }
            let next = commutator_subgroup(&whole, last)?;
            let done = next == *last;
            series.push(next);
            if done {
                return Ok(series);
            }
        }
    }

    pub fn fingerprint(&self) -> Result<Fingerprint> {
        let t = self.elements()?;
        let series = self.derived_series()?;
        let derived_length = if series.last().unwrap().is_trivial() {
            Some(series.len() - 1)
        } else {
            None
        };
        let mut order_histogram = BTreeMap::new();
        for p in t.perms() {
            *order_histogram.entry(p.order()).or_insert(0usize) += 1;
        }
        Ok(Fingerprint {
            order: t.order(),
            abelian_invariants: self.abelian_invariants()?,
            center_order: self.center()?.order(),
            derived_length,
            order_histogram,
        })
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree())?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

/// The enumerated elements of a [`PermGroup`] in lexicographic order.
pub struct ElementTable {
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    cayley: Option<Vec<u32>>,
    /// Points whose images determine an element, used when there is no
    /// Cayley table.
    base: Vec<usize>,
    base_images: Vec<u32>,
    base_index: HashMap<Vec<u32>, u32>,
}

/// Greedy base: add a point separating two elements until every element is
/// determined by its images on the chosen points.
fn greedy_base(list: &[Perm]) -> Vec<usize> {
    let mut base = Vec::new();
    let mut classes: Vec<Vec<usize>> = vec![(0..list.len()).collect()];
    while let Some(class) = classes.iter().find(|c| c.len() > 1) {
        let (a, b) = (&list[class[0]], &list[class[1]]);
        let point = (0..a.degree())
            .find(|&p| a.apply(p) != b.apply(p))
            .expect("distinct permutations differ somewhere");
        base.push(point);
        let mut split = Vec::new();
        for class in classes {
            let mut by_image: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for i in class {
                by_image.entry(list[i].apply(point)).or_default().push(i);
            }
            split.extend(by_image.into_values());
        }
        classes = split;
    }
    base
}

impl ElementTable {
    fn enumerate(degree: usize, generators: &[Perm], bound: usize) -> Result<Self> {
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let id = Perm::identity(degree);
        let mut list = vec![id.clone()];
        seen.insert(id, ());
        let mut head = 0;
        while head < list.len() {
            let x = list[head].clone();
            head += 1;
            for s in generators {
                let y = x.mul(s);
                if !seen.contains_key(&y) {
                    if list.len() >= bound {
                        return Err(GroupError::BoundExceeded { bound });
                    }
                    seen.insert(y.clone(), ());
                    list.push(y);
                }
            }
        }
        list.sort();
        let index: HashMap<Perm, u32> =
            list.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let inverses = list.iter().map(|p| index[&p.inverse()]).collect();
        let mut gens: Vec<u32> = generators
            .iter()
            .map(|p| index[p])
            .filter(|&i| i != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let n = list.len();
        let base = greedy_base(&list);
        let base_images: Vec<u32> = list
            .iter()
            .flat_map(|p| base.iter().map(move |&b| p.apply(b) as u32))
            .collect();
        let width = base.len();
        let base_index: HashMap<Vec<u32>, u32> = (0..n)
            .map(|i| (base_images[i * width..(i + 1) * width].to_vec(), i as u32))
            .collect();
        let mut table = ElementTable {
            elements: list,
            index,
            inverses,
            generators: gens,
            cayley: None,
            base,
            base_images,
            base_index,
        };
        if n <= CAYLEY_LIMIT {
            let cayley = (0..n as u32)
                .flat_map(|a| (0..n as u32).map(move |b| (a, b)))
                .map(|(a, b)| table.mul_by_base(a, b))
                .collect();
            table.cayley = Some(cayley);
        }
        Ok(table)
    }

    /// `a·b` from the images of the base points: `b(a(β))`.
    fn mul_by_base(&self, a: u32, b: u32) -> u32 {
        let width = self.base.len();
        let pb = self.elements[b as usize].images();
        let from = &self.base_images[a as usize * width..(a as usize + 1) * width];
        let key: Vec<u32> = from.iter().map(|&x| pb[x as usize]).collect();
        self.base_index[&key]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Indices of the (distinct, non-identity) generators.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.cayley {
            Some(table) => table[a as usize * self.elements.len() + b as usize],
            None => self.mul_by_base(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Left conjugation `ᵍx = g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    #[inline]
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: impl IntoIterator<Item = u32>) -> u32 {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    fn check_indices(&self, xs: &[usize]) -> Result<()> {
        match xs.iter().find(|&&i| i >= self.order()) {
            Some(i) => Err(GroupError::InvalidInput(format!(
                "element index {i} out of range for a group of order {}",
                self.order()
            ))),
            None => Ok(()),
        }
    }

    /// Closure of `gens` as a sorted member list and membership mask.
    fn closure(&self, gens: &[u32]) -> (Vec<u32>, Vec<bool>) {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut list = vec![0u32];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        (list, mask)
    }
}

/// A subgroup of an enumerated ambient group, stored as a sorted list of
/// ambient element indices.
#[derive(Clone)]
pub struct Subgroup {
    ambient: PermGroup,
    members: Vec<u32>,
    mask: Vec<bool>,
    gens: Vec<u32>,
}

impl Subgroup {
    fn from_closure(ambient: PermGroup, t: &ElementTable, gens: Vec<u32>) -> Self {
        let (members, mask) = t.closure(&gens);
        let mut sub = Subgroup {
            ambient,
            members,
            mask,
            gens,
        };
        sub.reduce_generators(t);
        sub
    }

    /// Greedy pass keeping only generators that enlarge the span so far.
    fn reduce_generators(&mut self, t: &ElementTable) {
        let mut kept: Vec<u32> = Vec::new();
        let mut span_mask = vec![false; t.order()];
        span_mask[0] = true;
        let mut candidates = self.gens.clone();
        candidates.sort_unstable();
        candidates.dedup();
        for g in candidates {
            if span_mask[g as usize] {
                continue;
            }
            kept.push(g);
            let (_, m) = t.closure(&kept);
            span_mask = m;
        }
        self.gens = kept;
    }

    fn normal_closure_within(
        ambient: PermGroup,
        t: &ElementTable,
        within: &[u32],
        seeds: Vec<u32>,
    ) -> Self {
        let mut sub = Subgroup::from_closure(ambient.clone(), t, seeds);
        loop {
            let mut extra = None;
            'search: for &w in within {
                for &s in &sub.gens {
                    let c = t.conj(w, s);
                    if !sub.mask[c as usize] {
                        extra = Some(c);
                        break 'search;
                    }
                }
            }
            match extra {
                Some(c) => {
                    let mut gens = sub.gens.clone();
                    gens.push(c);
                    sub = Subgroup::from_closure(ambient.clone(), t, gens);
                }
                None => return sub,
            }
        }
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    /// Sorted ambient indices of the members.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// A small generating set (ambient indices).
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask[x as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let t = self.ambient.elements().expect("ambient is enumerated");
        let common: Vec<u32> = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_closure(self.ambient.clone(), t, common)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let t = self.ambient.elements().expect("ambient is enumerated");
        let gens = self.gens.iter().chain(&other.gens).copied().collect();
        Subgroup::from_closure(self.ambient.clone(), t, gens)
    }

    /// A conjugate `w s w⁻¹` (`w` from `conjugators`) escaping the subgroup.
    pub fn normality_witness(&self, conjugators: &[u32]) -> Option<String> {
        let t = self.ambient.elements().expect("ambient is enumerated");
        for &w in conjugators {
            for &s in &self.gens {
                let c = t.conj(w, s);
                if !self.contains(c) {
                    return Some(format!(
                        "{} conjugated by {} gives {}, outside the subgroup",
                        t.perm(s as usize),
                        t.perm(w as usize),
                        t.perm(c as usize)
                    ));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        let t = self.ambient.elements().expect("ambient is enumerated");
        self.normality_witness(t.generators()).is_none()
    }

    pub fn is_central(&self) -> bool {
        let t = self.ambient.elements().expect("ambient is enumerated");
        self.gens
            .iter()
            .all(|&z| t.generators().iter().all(|&g| t.mul(z, g) == t.mul(g, z)))
    }

    /// The subgroup as a group in its own right, on the same points.
    ///
    /// Member `k` of the result (in its canonical order) is `members()[k]`,
    /// because both orders are lexicographic on the same permutations.
    pub fn to_group(&self) -> PermGroup {
        let t = self.ambient.elements().expect("ambient is enumerated");
        let gens = self.gens.iter().map(|&g| t.perm(g as usize).clone()).collect();
        PermGroup::from_parts(self.ambient.degree(), gens, self.ambient.element_bound())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, members {:?})", self.order(), self.members)
    }
}

/// `[A, B]`: normal closure in `⟨A, B⟩` of the commutators of generators.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if a.ambient.degree() != b.ambient.degree() || a.mask.len() != b.mask.len() {
        return Err(GroupError::InvalidInput(
            "commutator of subgroups of different groups".into(),
        ));
    }
    let t = a.ambient.elements()?;
    let seeds: Vec<u32> = a
        .gens
        .iter()
        .flat_map(|&x| b.gens.iter().map(move |&y| (x, y)))
        .map(|(x, y)| t.comm(x, y))
        .collect();
    let within: Vec<u32> = a.gens.iter().chain(&b.gens).copied().collect();
    Ok(Subgroup::normal_closure_within(a.ambient.clone(), t, &within, seeds))
}

/// Invariant factors of a finite abelian permutation group.
///
/// Each element gets a word in the generators by breadth-first search; every
/// edge `x → x·s` then yields the relation `word(x) + e_s − word(x·s)`, and
/// these generate the full relation lattice.
pub fn abelian_group_invariants(g: &PermGroup) -> Result<AbelianInvariants> {
    let t = g.elements()?;
    let gens = t.generators();
    let k = gens.len();
    if k == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    let n = t.order();
    let mut word: Vec<Option<Vec<i64>>> = vec![None; n];
    word[0] = Some(vec![0; k]);
    let mut queue = VecDeque::from([0u32]);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let wx = word[x as usize].clone().unwrap();
        for (j, &s) in gens.iter().enumerate() {
            let y = t.mul(x, s);
            let mut candidate = wx.clone();
            candidate[j] += 1;
            match &word[y as usize] {
                None => {
                    word[y as usize] = Some(candidate);
                    queue.push_back(y);
                }
                Some(wy) => {
                    let rel: Vec<i64> = candidate.iter().zip(wy).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&v| v != 0) {
                        rows.push(rel);
                    }
                }
            }
        }
    }
    let m = IntMatrix::from_i64_rows(k, &rows);
    Ok(AbelianInvariants::from_relation_matrix(&m))
}

/// Structural summary used to compare groups without an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian_invariants: AbelianInvariants,
    pub center_order: usize,
    /// `None` when the derived series stabilizes above the trivial group.
    pub derived_length: Option<usize>,
    /// Element order → number of elements of that order.
    pub order_histogram: BTreeMap<u64, usize>,
}

impl Fingerprint {
    /// Abelian groups are determined by their invariants.
    pub fn is_abelian(&self) -> bool {
        self.center_order == self.order
    }
}

/// `Some(p)` when the order is a positive power of the prime `p`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn s3() -> PermGroup {
        named::symmetric(3)
    }

    #[test]
    fn trivial_and_small_enumerations() {
        let c2 = PermGroup::new(2, vec![Perm::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        let t = c2.elements().unwrap();
        assert_eq!(t.order(), 2);
        assert!(t.perm(0).is_identity());
        assert_eq!(PermGroup::trivial(1).order().unwrap(), 1);
        assert_eq!(s3().order().unwrap(), 6);
    }

    #[test]
    fn s3_closure_matches_hand_built_table() {
        // All six permutations of {0,1,2}, sorted lexicographically.
        let expected: Vec<Vec<u32>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        let g = s3();
        let t = g.elements().unwrap();
        let got: Vec<Vec<u32>> = t.perms().iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(got, expected);
        for a in 0..6u32 {
            for b in 0..6u32 {
                let p = t.perm(a as usize).mul(t.perm(b as usize));
                assert_eq!(t.index_of(&p).unwrap() as u32, t.mul(a, b));
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
        }
    }

    #[test]
    fn element_bound_is_enforced() {
        let s5 = named::symmetric(5).with_element_bound(100);
        assert_eq!(s5.order(), Err(GroupError::BoundExceeded { bound: 100 }));
    }

    #[test]
    fn subgroup_generation_examples() {
        let g = s3();
        let t = g.elements().unwrap();
        assert!(g.subgroup_generated(&[]).unwrap().is_trivial());
        let three_cycle = t.index_of(&Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()).unwrap();
        assert_eq!(g.subgroup_generated(&[three_cycle]).unwrap().order(), 3);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(g.subgroup_generated(&all).unwrap(), g.whole().unwrap());
    }

    #[test]
    fn normal_closure_examples() {
        let g = s3();
        let t = g.elements().unwrap();
        let tr = t.index_of(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        assert_eq!(g.normal_closure(&[tr]).unwrap().order(), 6);
        assert!(g.normal_closure(&[]).unwrap().is_trivial());
        let c6 = named::cyclic(6);
        for x in 0..6 {
            assert_eq!(c6.normal_closure(&[x]).unwrap(), c6.subgroup_generated(&[x]).unwrap());
        }
    }

    #[test]
    fn centers() {
        assert!(s3().center().unwrap().is_trivial());
        assert_eq!(named::quaternion().center().unwrap().order(), 2);
        let c4 = named::cyclic(4);
        assert_eq!(c4.center().unwrap(), c4.whole().unwrap());
    }

    #[test]
    fn commutator_subgroups() {
        let g = s3();
        let w = g.whole().unwrap();
        assert_eq!(commutator_subgroup(&w, &w).unwrap().order(), 3);
        let c6 = named::cyclic(6).whole().unwrap();
        assert!(commutator_subgroup(&c6, &c6).unwrap().is_trivial());
        let d4 = named::dihedral(4);
        let z = d4.center().unwrap();
        assert!(commutator_subgroup(&d4.whole().unwrap(), &z).unwrap().is_trivial());
    }

    #[test]
    fn commutator_subgroup_matches_all_pairs_oracle() {
        for g in [named::symmetric(3), named::dihedral(4), named::quaternion(), named::alternating(4)] {
            let t = g.elements().unwrap();
            let n = t.order() as u32;
            let all_comms: Vec<usize> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| t.comm(a, b) as usize)
                .collect();
            let oracle = g.subgroup_generated(&all_comms).unwrap();
            let w = g.whole().unwrap();
            assert_eq!(commutator_subgroup(&w, &w).unwrap(), oracle);
        }
    }

    #[test]
    fn quotients() {
        let q8 = named::quaternion();
        let (q, proj) = q8.quotient(&q8.center().unwrap()).unwrap();
        let qt = q.elements().unwrap();
        assert_eq!(qt.order(), 4);
        assert!((1..4).all(|x| qt.element_order(x) == 2));
        assert_eq!(proj.kernel().order(), 2);

        let g = s3();
        let (q, _) = g.quotient(&g.whole().unwrap()).unwrap();
        assert_eq!(q.order().unwrap(), 1);
        let (q, _) = g.quotient(&g.trivial_subgroup().unwrap()).unwrap();
        assert_eq!(q.fingerprint().unwrap(), g.fingerprint().unwrap());

        let t = g.elements().unwrap();
        let tr = t.index_of(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        let h = g.subgroup_generated(&[tr]).unwrap();
        assert!(matches!(g.quotient(&h), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn normal_subgroup_lattices() {
        let count = |g: &PermGroup| g.normal_subgroups().unwrap().len();
        assert_eq!(count(&s3()), 3);
        assert_eq!(count(&named::quaternion()), 6);
        assert_eq!(count(&named::dihedral(4)), 6);
        assert_eq!(count(&named::alternating(4)), 3);
        assert_eq!(count(&named::cyclic(12)), 6);
        // Oracle: every subgroup of these groups is generated by two elements.
        for g in [named::dihedral(4), named::dihedral(6), named::alternating(4)] {
            let all = g.normal_subgroups().unwrap();
            let n = g.order().unwrap();
            for a in 0..n {
                for b in a..n {
                    let s = g.subgroup_generated(&[a, b]).unwrap();
                    assert_eq!(s.is_normal(), all.contains(&s));
                }
            }
        }
    }

    #[test]
    fn abelian_invariant_examples() {
        assert_eq!(s3().abelian_invariants().unwrap().torsion, vec![2]);
        assert_eq!(named::cyclic(6).abelian_invariants().unwrap().torsion, vec![6]);
        assert_eq!(named::quaternion().abelian_invariants().unwrap().torsion, vec![2, 2]);
        assert_eq!(named::direct_product(&named::cyclic(2), &named::cyclic(4)).abelian_invariants().unwrap().torsion, vec![2, 4]);
        assert_eq!(named::alternating(4).abelian_invariants().unwrap().torsion, vec![3]);
        assert_eq!(named::symmetric(3).abelian_invariants().unwrap().free_rank, 0);
    }

    #[test]
    fn series_examples() {
        let orders = |s: Vec<Subgroup>| s.iter().map(Subgroup::order).collect::<Vec<_>>();
        assert_eq!(orders(s3().derived_series().unwrap()), vec![6, 3, 1]);
        assert_eq!(orders(named::cyclic(4).derived_series().unwrap()), vec![4, 1]);
        assert_eq!(orders(named::quaternion().derived_series().unwrap()), vec![8, 2, 1]);
        assert_eq!(orders(named::dihedral(4).lower_central_series().unwrap()), vec![8, 2, 1]);
        // Stabilizes at A3; the repeated term is emitted once.
        assert_eq!(orders(s3().lower_central_series().unwrap()), vec![6, 3, 3]);
        assert_eq!(orders(named::cyclic(5).lower_central_series().unwrap()), vec![5, 1]);
    }

    #[test]
    fn fingerprints_separate_small_groups() {
        let c4 = named::cyclic(4).fingerprint().unwrap();
        let v4 = named::klein_four().fingerprint().unwrap();
        assert_ne!(c4, v4);
        let q8 = named::quaternion().fingerprint().unwrap();
        let d4 = named::dihedral(4).fingerprint().unwrap();
        assert_ne!(q8, d4);
        assert_eq!(q8.order_histogram[&4], 6);
        assert_eq!(d4.order_histogram[&4], 2);
        // Relabel S3 on points {2,1,0}.
        let relabeled = PermGroup::new(
            3,
            vec![
                Perm::from_cycles(3, &[vec![2, 1]]).unwrap(),
                Perm::from_cycles(3, &[vec![2, 1, 0]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(relabeled.fingerprint().unwrap(), s3().fingerprint().unwrap());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn products_without_a_cayley_table_match_composition() {
        for g in [named::symmetric(6), named::direct_product(&named::dihedral(8), &named::symmetric(4))] {
            let t = g.elements().unwrap();
            assert!(t.order() > CAYLEY_LIMIT && t.cayley.is_none());
            let n = t.order() as u32;
            for a in (0..n).step_by(7) {
                for b in (0..n).step_by(11) {
                    let expected = t.index_of(&t.perm(a as usize).mul(t.perm(b as usize))).unwrap() as u32;
                    assert_eq!(t.mul(a, b), expected);
                }
            }
        }
    }
}
