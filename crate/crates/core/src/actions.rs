//! Group actions by automorphisms, compatibility of mutual actions, and the
//! constructions built from them: semidirect products, the Peiffer subgroup,
//! the quotient `G∘H` with its crossed modules `μ`, `ν`, and the derivative
//! `D_H(G)`.

use std::fmt;

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::group::{ElementTable, PermGroup, Subgroup};
use crate::hom::GroupHom;
use crate::perm::Perm;

/// A left action of `actor` on `target` by automorphisms, stored as a full
/// table: `table[a][t]` is the index of `ᵃt`.
#[derive(Clone)]
pub struct Action {
    actor: PermGroup,
    target: PermGroup,
    table: Vec<Vec<u32>>,
}

impl Action {
    /// Validates the table (identity acts trivially, `ᵃ⁽ᵃ'ᵗ⁾ = ᵃᵃ'ᵗ`, every row
    /// an automorphism).
    pub fn from_table(actor: &PermGroup, target: &PermGroup, table: Vec<Vec<u32>>) -> Result<Self> {
        let a = Action {
            actor: actor.clone(),
            target: target.clone(),
            table,
        };
        a.validate()?;
        Ok(a)
    }

    /// Skips validation; for fixtures that deliberately break the invariants.
    pub fn from_table_unchecked(actor: &PermGroup, target: &PermGroup, table: Vec<Vec<u32>>) -> Self {
        Action {
            actor: actor.clone(),
            target: target.clone(),
            table,
        }
    }

    pub fn trivial(actor: &PermGroup, target: &PermGroup) -> Result<Self> {
        let na = actor.order()?;
        let nt = target.order()? as u32;
        let row: Vec<u32> = (0..nt).collect();
        Ok(Action {
            actor: actor.clone(),
            target: target.clone(),
            table: vec![row; na],
        })
    }

    /// A group acting on itself by left conjugation.
    pub fn conjugation(g: &PermGroup) -> Result<Self> {
        let t = g.elements()?;
        let n = t.order() as u32;
        let table = (0..n).map(|a| (0..n).map(|x| t.conj(a, x)).collect()).collect();
        Ok(Action {
            actor: g.clone(),
            target: g.clone(),
            table,
        })
    }

    /// Conjugation between two permutation groups on the same points. Fails
    /// when some conjugate of a target element leaves the target.
    pub fn conjugation_on(actor: &PermGroup, target: &PermGroup) -> Result<Self> {
        if actor.degree() != target.degree() {
            return Err(GroupError::InvalidInput(format!(
                "conjugation needs a common degree, got {} and {}",
                actor.degree(),
                target.degree()
            )));
        }
        let at = actor.elements()?;
        let tt = target.elements()?;
        let mut table = Vec::with_capacity(at.order());
        for g in at.perms() {
            let ginv = g.inverse();
            let row = tt
                .perms()
                .iter()
                .map(|x| {
                    let y = g.mul(x).mul(&ginv);
                    tt.index_of(&y).map(|i| i as u32).ok_or_else(|| GroupError::NotNormal {
                        witness: format!("conjugating {x} by {g} gives {y}, which leaves the target group"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            table.push(row);
        }
        Action::from_table(actor, target, table)
    }

    /// Explicit action: `automorphisms[k][j]` is the image of target generator
    /// `j` under actor generator `k`.
    pub fn from_generator_automorphisms(
        actor: &PermGroup,
        target: &PermGroup,
        automorphisms: &[Vec<Perm>],
    ) -> Result<Self> {
        if automorphisms.len() != actor.generators().len() {
            return Err(GroupError::InvalidAction(format!(
                "{} automorphisms given for {} actor generators",
                automorphisms.len(),
                actor.generators().len()
            )));
        }
        let at = actor.elements()?;
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut maps: Vec<Vec<u32>> = Vec::new();
        for (g, images) in actor.generators().iter().zip(automorphisms) {
            let hom = GroupHom::from_perm_images(target, target, images)
                .map_err(|e| GroupError::InvalidAction(format!("generator {g}: {e}")))?;
            if !hom.is_injective() {
                return Err(GroupError::InvalidAction(format!("generator {g} does not act bijectively")));
            }
            pairs.push((at.index_of(g).unwrap() as u32, maps.len() as u32));
            maps.push(hom.map().to_vec());
        }
        // Extend along the actor's Cayley graph: row(x s) = row(x) ∘ row(s).
        let na = at.order();
        let nt = target.order()? as u32;
        let mut table: Vec<Option<Vec<u32>>> = vec![None; na];
        table[0] = Some((0..nt).collect());
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &(s, m) in &pairs {
                let y = at.mul(x, s);
                let row_x = table[x as usize].as_ref().unwrap();
                let row: Vec<u32> = (0..nt).map(|t| row_x[maps[m as usize][t as usize] as usize]).collect();
                match &table[y as usize] {
                    None => {
                        table[y as usize] = Some(row);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != row => {
                        return Err(GroupError::InvalidAction(format!(
                            "automorphisms violate a relation of the actor at {}",
                            at.perm(y as usize)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let table = table.into_iter().map(|r| r.expect("actor generated")).collect();
        Action::from_table(actor, target, table)
    }

    pub fn actor(&self) -> &PermGroup {
        &self.actor
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    #[inline]
    pub fn act(&self, a: u32, t: u32) -> u32 {
        self.table[a as usize][t as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.table
            .iter()
            .all(|row| row.iter().enumerate().all(|(i, &j)| i as u32 == j))
    }

    pub fn validate(&self) -> Result<()> {
        let at = self.actor.elements()?;
        let tt = self.target.elements()?;
        let (na, nt) = (at.order(), tt.order());
        if self.table.len() != na || self.table.iter().any(|r| r.len() != nt) {
            return Err(GroupError::InvalidAction("table has the wrong shape".into()));
        }
        if self.table[0].iter().enumerate().any(|(i, &j)| i as u32 != j) {
            return Err(GroupError::InvalidAction("the identity does not act trivially".into()));
        }
        for a in 0..na as u32 {
            let row = &self.table[a as usize];
            let mut seen = vec![false; nt];
            for &v in row {
                if v as usize >= nt || std::mem::replace(&mut seen[v as usize], true) {
                    return Err(GroupError::InvalidAction(format!(
                        "{} does not act bijectively",
                        at.perm(a as usize)
                    )));
                }
            }
            for x in 0..nt as u32 {
                for &s in tt.generators() {
                    if row[tt.mul(x, s) as usize] != tt.mul(row[x as usize], row[s as usize]) {
                        return Err(GroupError::InvalidAction(format!(
                            "{} does not act by an automorphism",
                            at.perm(a as usize)
                        )));
                    }
                }
            }
            for &s in at.generators() {
                let composite = at.mul(a, s);
                let ok = (0..nt).all(|x| {
                    self.table[composite as usize][x] == row[self.table[s as usize][x] as usize]
                });
                if !ok {
                    return Err(GroupError::InvalidAction(format!(
                        "acting by {} then {} differs from acting by their product",
                        at.perm(s as usize),
                        at.perm(a as usize)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Action({:?} on {:?})", self.actor, self.target)
    }
}

/// Which of the two compatibility equations failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompatSide {
    /// `^(ʰg)h′ = ^(hgh⁻¹)h′`
    ActionOnH,
    /// `^(ᵍh)g′ = ^(ghg⁻¹)g′`
    ActionOnG,
}

/// A failing instance of one compatibility equation.
///
/// For [`CompatSide::ActionOnH`], `outer` is `h`, `inner` is `g` and `target`
/// is `h′`; for [`CompatSide::ActionOnG`], `outer` is `g`, `inner` is `h` and
/// `target` is `g′`. All are element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatViolation {
    pub side: CompatSide,
    pub outer: u32,
    pub inner: u32,
    pub target: u32,
    pub lhs: u32,
    pub rhs: u32,
}

impl CompatViolation {
    /// Re-evaluates the equation; true when it genuinely fails.
    pub fn replay(&self, ma: &MutualActions) -> bool {
        let (lhs, rhs) = match self.side {
            CompatSide::ActionOnH => ma.equation_on_h(self.inner, self.outer, self.target),
            CompatSide::ActionOnG => ma.equation_on_g(self.outer, self.inner, self.target),
        };
        lhs == self.lhs && rhs == self.rhs && lhs != rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Compatibility {
    Certified,
    Violation(CompatViolation),
}

/// `G` and `H` acting on each other.
#[derive(Clone, Debug)]
pub struct MutualActions {
    g: PermGroup,
    h: PermGroup,
    /// `G` acting on `H`.
    act_gh: Action,
    /// `H` acting on `G`.
    act_hg: Action,
    certificate: Compatibility,
}

impl MutualActions {
    /// Validates both actions and runs the exhaustive compatibility check.
    pub fn new(act_gh: Action, act_hg: Action) -> Result<Self> {
        act_gh.validate()?;
        act_hg.validate()?;
        let mut ma = Self::new_unchecked(act_gh, act_hg)?;
        ma.certificate = check_compatible(&ma);
        Ok(ma)
    }

    /// Skips validation and compatibility checking; the certificate is taken
    /// on trust. Only the shapes are checked.
    pub fn new_unchecked(act_gh: Action, act_hg: Action) -> Result<Self> {
        let g = act_gh.actor().clone();
        let h = act_gh.target().clone();
        if act_hg.actor().order()? != h.order()? || act_hg.target().order()? != g.order()? {
            return Err(GroupError::InvalidAction("the two actions do not match up".into()));
        }
        Ok(MutualActions {
            g,
            h,
            act_gh,
            act_hg,
            certificate: Compatibility::Certified,
        })
    }

    pub fn trivial(g: &PermGroup, h: &PermGroup) -> Result<Self> {
        Self::new(Action::trivial(g, h)?, Action::trivial(h, g)?)
    }

    pub fn g(&self) -> &PermGroup {
        &self.g
    }

    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    pub fn act_gh(&self) -> &Action {
        &self.act_gh
    }

    pub fn act_hg(&self) -> &Action {
        &self.act_hg
    }

    pub fn certificate(&self) -> &Compatibility {
        &self.certificate
    }

    pub fn require_certified(&self) -> Result<()> {
        match &self.certificate {
            Compatibility::Certified => Ok(()),
            Compatibility::Violation(v) => Err(GroupError::Incompatible(format!("{v:?}"))),
        }
    }

    /// The same pair with the roles of `G` and `H` exchanged.
    pub fn swapped(&self) -> MutualActions {
        MutualActions {
            g: self.h.clone(),
            h: self.g.clone(),
            act_gh: self.act_hg.clone(),
            act_hg: self.act_gh.clone(),
            certificate: self.certificate.clone(),
        }
    }

    /// Both sides of `^(ʰg)h′ = ^(hgh⁻¹)h′`, where the exponent on the right
    /// is the composite "act by `h⁻¹`, then `g`, then `h`".
    fn equation_on_h(&self, g: u32, h: u32, h2: u32) -> (u32, u32) {
        let ht = self.h.elements().unwrap();
        let lhs = self.act_gh.act(self.act_hg.act(h, g), h2);
        let rhs = ht.conj(h, self.act_gh.act(g, ht.conj(ht.inv(h), h2)));
        (lhs, rhs)
    }

    /// Both sides of `^(ᵍh)g′ = ^(ghg⁻¹)g′`.
    fn equation_on_g(&self, g: u32, h: u32, g2: u32) -> (u32, u32) {
        let gt = self.g.elements().unwrap();
        let lhs = self.act_hg.act(self.act_gh.act(g, h), g2);
        let rhs = gt.conj(g, self.act_hg.act(h, gt.conj(gt.inv(g), g2)));
        (lhs, rhs)
    }
}

/// Both actions conjugation inside a common group `K`; `G` and `H` must be
/// normal in `K`. Compatibility holds automatically and is not re-checked.
pub fn conjugation_mutual(k: &PermGroup, g: &Subgroup, h: &Subgroup) -> Result<MutualActions> {
    let kt = k.elements()?;
    for sub in [g, h] {
        if let Some(w) = sub.normality_witness(kt.generators()) {
            return Err(GroupError::NotNormal { witness: w });
        }
    }
    let gg = g.to_group();
    let hg = h.to_group();
    let act_gh = Action::from_table_unchecked(&gg, &hg, conjugation_table(kt, g, h));
    let act_hg = Action::from_table_unchecked(&hg, &gg, conjugation_table(kt, h, g));
    MutualActions::new_unchecked(act_gh, act_hg)
}

/// The tensor-square setup: `G` acting on itself by conjugation on both sides.
pub fn conjugation_square(g: &PermGroup) -> Result<MutualActions> {
    let w = g.whole()?;
    conjugation_mutual(g, &w, &w)
}

fn conjugation_table(kt: &ElementTable, actor: &Subgroup, target: &Subgroup) -> Vec<Vec<u32>> {
    let pos = |x: u32| target.members().binary_search(&x).expect("target is normal") as u32;
    actor
        .members()
        .iter()
        .map(|&a| target.members().iter().map(|&t| pos(kt.conj(a, t))).collect())
        .collect()
}

/// Exhaustive check of both compatibility equations; the first failure in
/// canonical order (equation on `H` first, then by `g`, `h`, target) is
/// returned as the witness.
pub fn check_compatible(ma: &MutualActions) -> Compatibility {
    let ng = ma.g.order().unwrap() as u32;
    let nh = ma.h.order().unwrap() as u32;
    for g in 0..ng {
        for h in 0..nh {
            for h2 in 0..nh {
                let (lhs, rhs) = ma.equation_on_h(g, h, h2);
                if lhs != rhs {
                    return Compatibility::Violation(CompatViolation {
                        side: CompatSide::ActionOnH,
                        outer: h,
                        inner: g,
                        target: h2,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    for g in 0..ng {
        for h in 0..nh {
            for g2 in 0..ng {
                let (lhs, rhs) = ma.equation_on_g(g, h, g2);
                if lhs != rhs {
                    return Compatibility::Violation(CompatViolation {
                        side: CompatSide::ActionOnG,
                        outer: g,
                        inner: h,
                        target: g2,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Compatibility::Certified
}

/// `G ⋊ H` with product `(g, h)(g′, h′) = (g·ʰg′, hh′)`, realized by right
/// multiplication on its `|G|·|H|` pairs.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: PermGroup,
    pub embed_g: GroupHom,
    pub embed_h: GroupHom,
    /// Element index → `(g, h)`.
    pub pair_of: Vec<(u32, u32)>,
    /// `g·|H| + h` → element index.
    pub element_of: Vec<u32>,
    nh: usize,
}

impl SemidirectProduct {
    pub fn element(&self, g: u32, h: u32) -> u32 {
        self.element_of[g as usize * self.nh + h as usize]
    }
}

pub fn semidirect_product(g: &PermGroup, h: &PermGroup, act_hg: &Action) -> Result<SemidirectProduct> {
    let gt = g.elements()?;
    let ht = h.elements()?;
    let (ng, nh) = (gt.order(), ht.order());
    let degree = ng * nh;
    let pair_mul = |(g1, h1): (u32, u32), (g2, h2): (u32, u32)| -> (u32, u32) {
        (gt.mul(g1, act_hg.act(h1, g2)), ht.mul(h1, h2))
    };
    let right_mult = |x: (u32, u32)| -> Perm {
        Perm::from_images_unchecked(
            (0..degree)
                .map(|p| {
                    let (a, b) = pair_mul(((p / nh) as u32, (p % nh) as u32), x);
                    a * nh as u32 + b
                })
                .collect(),
        )
    };
    let gens: Vec<Perm> = gt
        .generators()
        .iter()
        .map(|&s| right_mult((s, 0)))
        .chain(ht.generators().iter().map(|&s| right_mult((0, s))))
        .collect();
    let group = PermGroup::new(degree, gens)?.with_element_bound(g.element_bound().max(h.element_bound()));
    let st = group.elements()?;
    let mut element_of = vec![0u32; degree];
    let mut pair_of = vec![(0u32, 0u32); st.order()];
    for a in 0..ng as u32 {
        for b in 0..nh as u32 {
            let e = st.index_of(&right_mult((a, b))).expect("pair lies in the product") as u32;
            element_of[a as usize * nh + b as usize] = e;
            pair_of[e as usize] = (a, b);
        }
    }
    let embed_g = GroupHom::from_map_unchecked(
        g.clone(),
        group.clone(),
        (0..ng).map(|a| element_of[a * nh]).collect(),
    );
    let embed_h = GroupHom::from_map_unchecked(h.clone(), group.clone(), element_of[..nh].to_vec());
    Ok(SemidirectProduct {
        group,
        embed_g,
        embed_h,
        pair_of,
        element_of,
        nh,
    })
}

/// The Peiffer subgroup `(G, H)`: normal closure in `G ⋊ H` of the elements
/// `(g·(ʰg)⁻¹, h·(ᵍh)⁻¹)`.
#[derive(Clone, Debug)]
pub struct Peiffer {
    pub subgroup: Subgroup,
    /// Whether the listed generators alone failed to span a normal subgroup.
    pub closure_needed: bool,
}

pub fn peiffer_subgroup(ma: &MutualActions, sd: &SemidirectProduct) -> Result<Peiffer> {
    ma.require_certified()?;
    let gt = ma.g.elements()?;
    let ht = ma.h.elements()?;
    let mut seeds: Vec<usize> = Vec::new();
    for g in 0..gt.order() as u32 {
        for h in 0..ht.order() as u32 {
            let a = gt.mul(g, gt.inv(ma.act_hg.act(h, g)));
            let b = ht.mul(h, ht.inv(ma.act_gh.act(g, h)));
            seeds.push(sd.element(a, b) as usize);
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    let spanned = sd.group.subgroup_generated(&seeds)?;
    let subgroup = sd.group.normal_closure(&seeds)?;
    Ok(Peiffer {
        closure_needed: spanned != subgroup,
        subgroup,
    })
}

/// `G∘H = (G ⋊ H)/(G, H)` with `μ`, `ν` and the actions of `G∘H` on both
/// factors.
#[derive(Clone, Debug)]
pub struct CircProduct {
    pub semidirect: SemidirectProduct,
    pub peiffer: Peiffer,
    pub group: PermGroup,
    pub projection: GroupHom,
    pub mu: GroupHom,
    pub nu: GroupHom,
    /// `^(g,h)g′ = ^g(^h g′)`
    pub act_on_g: Action,
    /// `^(g,h)h′ = ^g(^h h′)`
    pub act_on_h: Action,
}

pub fn circ_product(ma: &MutualActions) -> Result<CircProduct> {
    ma.require_certified()?;
    let gt = ma.g.elements()?;
    let ht = ma.h.elements()?;
    let sd = semidirect_product(&ma.g, &ma.h, &ma.act_hg)?;
    let peiffer = peiffer_subgroup(ma, &sd)?;
    let (group, projection) = sd.group.quotient(&peiffer.subgroup)?;
    let mu = sd.embed_g.then(&projection);
    let nu = sd.embed_h.then(&projection);
    let nq = group.order()?;
    // First preimage of each quotient element.
    let mut preimage: Vec<Option<(u32, u32)>> = vec![None; nq];
    for (e, &pair) in sd.pair_of.iter().enumerate() {
        let q = projection.apply(e as u32) as usize;
        preimage[q].get_or_insert(pair);
    }
    let preimage: Vec<(u32, u32)> = preimage.into_iter().map(Option::unwrap).collect();
    let on_g: Vec<Vec<u32>> = preimage
        .iter()
        .map(|&(g, h)| {
            (0..gt.order() as u32)
                .map(|x| gt.conj(g, ma.act_hg.act(h, x)))
                .collect()
        })
        .collect();
    let on_h: Vec<Vec<u32>> = preimage
        .iter()
        .map(|&(g, h)| {
            (0..ht.order() as u32)
                .map(|y| ma.act_gh.act(g, ht.conj(h, y)))
                .collect()
        })
        .collect();
    let act_on_g = Action::from_table(&group, &ma.g, on_g)?;
    let act_on_h = Action::from_table(&group, &ma.h, on_h)?;
    Ok(CircProduct {
        semidirect: sd,
        peiffer,
        group,
        projection,
        mu,
        nu,
        act_on_g,
        act_on_h,
    })
}

/// `D_H(G) = ⟨g·(ʰg)⁻¹⟩` for `H` acting on `G`.
pub fn derivative(act_hg: &Action) -> Result<Subgroup> {
    let g = act_hg.target();
    let gt = g.elements()?;
    let nh = act_hg.actor().order()? as u32;
    let mut gens: Vec<usize> = (0..gt.order() as u32)
        .flat_map(|x| (0..nh).map(move |h| (x, h)))
        .map(|(x, h)| gt.mul(x, gt.inv(act_hg.act(h, x))) as usize)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    g.subgroup_generated(&gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossedModuleAxiom {
    /// `∂(ᵍm) = g·∂(m)·g⁻¹`
    Equivariance,
    /// `^(∂m)m′ = m·m′·m⁻¹`
    Peiffer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CrossedModuleCheck {
    Certified,
    /// `(g, m)` for equivariance, `(m, m′)` for the Peiffer identity.
    Violation { axiom: CrossedModuleAxiom, first: u32, second: u32 },
}

/// Checks both crossed-module axioms for `∂: M → G` with `G` acting on `M`.
pub fn check_crossed_module(boundary: &GroupHom, action: &Action) -> Result<CrossedModuleCheck> {
    let mt = boundary.domain().elements()?;
    let gt = boundary.codomain().elements()?;
    if action.target().order()? != mt.order() || action.actor().order()? != gt.order() {
        return Err(GroupError::InvalidInput("action does not match the boundary map".into()));
    }
    for g in 0..gt.order() as u32 {
        for m in 0..mt.order() as u32 {
            if boundary.apply(action.act(g, m)) != gt.conj(g, boundary.apply(m)) {
                return Ok(CrossedModuleCheck::Violation {
                    axiom: CrossedModuleAxiom::Equivariance,
                    first: g,
                    second: m,
                });
            }
        }
    }
    for m in 0..mt.order() as u32 {
        let dm = boundary.apply(m);
        for m2 in 0..mt.order() as u32 {
            if action.act(dm, m2) != mt.conj(m, m2) {
                return Ok(CrossedModuleCheck::Violation {
                    axiom: CrossedModuleAxiom::Peiffer,
                    first: m,
                    second: m2,
                });
            }
        }
    }
    Ok(CrossedModuleCheck::Certified)
}
