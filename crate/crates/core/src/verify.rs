//! Property suites over the corpus. Each case either passes, fails with the
//! first check that broke and a witness precise enough to re-evaluate the
//! failing equation, or is skipped with a reason.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::actions::{
    check_compatible, check_crossed_module, circ_product, conjugation_mutual, derivative, Compatibility,
    CrossedModuleCheck, MutualActions,
};
use crate::corpus::{
    ActionFixture, CentralExtension, Corpus, ModuleFixture, NamedGroup, NormalPair, NormalTriple,
    PresentationFixture,
};
use crate::coset::{perm_rep, todd_coxeter, EnumLimits};
use crate::error::{GroupError, Result};
use crate::group::{commutator_subgroup, prime_power_base, PermGroup, Subgroup};
use crate::hom::GroupHom;
use crate::homology::{h2_bar_resolution, module_tensor_aug_ideal, trivial_action_tensor, DEFAULT_BAR_BOUND};
use crate::tensor::{exterior_from_square, multiplier_from_exterior, nabla, tensor_product, tensor_square, TensorGroup};

/// Coset budget for the enumeration sanity fixtures.
pub const ENUMERATION_SANITY_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub max_cosets: usize,
    pub element_bound: usize,
    pub bar_bound: usize,
    /// Largest group whose multiplier is computed both ways.
    pub multiplier_max_order: usize,
    /// Largest group `G` whose pairs `(G, N ⊴ G)` are used.
    pub pair_max_order: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_cosets: 1_000_000,
            element_bound: crate::group::DEFAULT_ELEMENT_BOUND,
            bar_bound: DEFAULT_BAR_BOUND,
            multiplier_max_order: 12,
            pair_max_order: 12,
        }
    }
}

impl VerifyConfig {
    pub fn limits(&self) -> EnumLimits {
        EnumLimits {
            max_cosets: self.max_cosets,
            max_deductions: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    Pass,
    Fail { check: String, witness: Value },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub case: String,
    #[serde(flatten)]
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
}

impl CaseResult {
    pub fn new(case: impl Into<String>) -> Self {
        CaseResult {
            case: case.into(),
            status: CaseStatus::Pass,
            data: Map::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, CaseStatus::Fail { .. })
    }

    pub fn record(&mut self, key: &str, value: impl Serialize) {
        self.data
            .insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    /// Records a check; the first failing one decides the status.
    pub fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        if !ok && self.status == CaseStatus::Pass {
            self.status = CaseStatus::Fail {
                check: name.into(),
                witness: witness(),
            };
        }
        ok
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = CaseStatus::Skipped { reason: reason.into() };
        self
    }

    fn error(mut self, e: GroupError) -> Self {
        self.check("construction", false, || json!(e.to_string()));
        self
    }
}

/// Runs `body`; a construction error fails the case.
fn case(name: impl Into<String>, body: impl FnOnce(&mut CaseResult) -> Result<()>) -> CaseResult {
    let mut c = CaseResult::new(name);
    match body(&mut c) {
        Ok(()) => c,
        Err(e) => c.error(e),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub cases: Vec<CaseResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: Suite, cases: Vec<CaseResult>, elapsed: Duration) -> Self {
        let failed = cases.iter().filter(|c| c.failed()).count();
        let passed = cases.iter().filter(|c| c.passed()).count();
        VerificationReport {
            suite,
            passed,
            failed,
            skipped: cases.len() - passed - failed,
            cases,
            elapsed,
        }
    }

    pub fn success(&self) -> bool {
        self.failed == 0
    }

    pub fn first_failure(&self) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.failed())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub config: VerifyConfig,
    pub success: bool,
    pub suites: Vec<VerificationReport>,
}

impl CorpusReport {
    /// Seconds per suite, kept apart from the deterministic content.
    pub fn timings(&self) -> BTreeMap<String, f64> {
        self.suites
            .iter()
            .map(|s| (s.suite.to_string(), s.elapsed.as_secs_f64()))
            .collect()
    }

    pub fn suite(&self, suite: Suite) -> Option<&VerificationReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Enumeration,
    Compatibility,
    AbelianConsistency,
    ModuleTensor,
    TensorAudit,
    CrossedModules,
    CircKernels,
    BjrIdentities,
    NormalAbelianQuotient,
    IntersectionSequence,
    SchurEpimorphism,
    SchurClasses,
    DerivativeLcs,
    Multiplier,
    OrderLaws,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Enumeration,
        Suite::Compatibility,
        Suite::AbelianConsistency,
        Suite::ModuleTensor,
        Suite::TensorAudit,
        Suite::CrossedModules,
        Suite::CircKernels,
        Suite::BjrIdentities,
        Suite::NormalAbelianQuotient,
        Suite::IntersectionSequence,
        Suite::SchurEpimorphism,
        Suite::SchurClasses,
        Suite::DerivativeLcs,
        Suite::Multiplier,
        Suite::OrderLaws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Enumeration => "enumeration",
            Suite::Compatibility => "compatibility",
            Suite::AbelianConsistency => "abelian_consistency",
            Suite::ModuleTensor => "module_tensor",
            Suite::TensorAudit => "tensor_audit",
            Suite::CrossedModules => "crossed_modules",
            Suite::CircKernels => "circ_kernels",
            Suite::BjrIdentities => "bjr_identities",
            Suite::NormalAbelianQuotient => "normal_abelian_quotient",
            Suite::IntersectionSequence => "intersection_sequence",
            Suite::SchurEpimorphism => "schur_epimorphism",
            Suite::SchurClasses => "schur_classes",
            Suite::DerivativeLcs => "derivative_lcs",
            Suite::Multiplier => "multiplier",
            Suite::OrderLaws => "order_laws",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == key)
            .ok_or_else(|| GroupError::InvalidInput(format!("unknown suite {s:?}")))
    }
}

/// Runs the selected suites (all of them when `suites` is empty), in
/// canonical order.
pub fn run_corpus(corpus: &Corpus, suites: &[Suite], config: &VerifyConfig) -> CorpusReport {
    let mut selected: Vec<Suite> = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    selected.sort();
    selected.dedup();
    let reports: Vec<VerificationReport> = selected.into_iter().map(|s| run_suite(s, corpus, config)).collect();
    CorpusReport {
        config: *config,
        success: reports.iter().all(VerificationReport::success),
        suites: reports,
    }
}

pub fn run_suite(suite: Suite, corpus: &Corpus, config: &VerifyConfig) -> VerificationReport {
    let start = Instant::now();
    // Failing to list the pairs must not turn into a vacuous pass.
    let (pair_list, pair_error) = match corpus.normal_pairs(config.pair_max_order) {
        Ok(p) => (p, None),
        Err(e) => (Vec::new(), Some(CaseResult::new("normal pairs").error(e))),
    };
    let pairs = || &pair_list;
    let compatible_fixtures = || corpus.fixtures.iter().filter(|f| f.expect_compatible);
    let mut cases: Vec<CaseResult> = match suite {
        Suite::Enumeration => corpus.presentations.iter().map(verify_enumeration).collect(),
        Suite::Compatibility => {
            let mut out: Vec<CaseResult> = pairs().iter().map(verify_conjugation_certificate).collect();
            out.extend(corpus.fixtures.iter().map(verify_compatibility));
            out
        }
        Suite::AbelianConsistency => {
            let gs = &corpus.abelian_groups;
            gs.iter()
                .flat_map(|a| gs.iter().map(move |b| (a, b)))
                .map(|(a, b)| verify_abelian_consistency(a, b, config))
                .collect()
        }
        Suite::ModuleTensor => corpus.modules.iter().map(verify_module_tensor).collect(),
        Suite::TensorAudit => {
            let mut out: Vec<CaseResult> = pairs()
                .iter()
                .map(|p| verify_tensor_audit(&p.name, p.actions(), config))
                .collect();
            out.extend(
                compatible_fixtures().map(|f| verify_tensor_audit(&f.name, Ok(f.actions.clone()), config)),
            );
            out
        }
        Suite::CrossedModules => {
            let mut out: Vec<CaseResult> = pairs()
                .iter()
                .map(|p| verify_crossed_modules(&p.name, p.actions(), config))
                .collect();
            out.extend(
                compatible_fixtures().map(|f| verify_crossed_modules(&f.name, Ok(f.actions.clone()), config)),
            );
            out
        }
        Suite::CircKernels => {
            let mut out: Vec<CaseResult> = pairs()
                .iter()
                .map(|p| verify_circ_kernels(&p.name, p.actions()))
                .collect();
            out.extend(compatible_fixtures().map(|f| verify_circ_kernels(&f.name, Ok(f.actions.clone()))));
            out
        }
        Suite::BjrIdentities => pairs().iter().map(|p| verify_bjr_identities(p, config)).collect(),
        Suite::NormalAbelianQuotient => pairs()
            .iter()
            .map(|p| verify_normal_abelian_quotient(p, config))
            .collect(),
        Suite::IntersectionSequence => corpus
            .triples
            .iter()
            .map(|t| verify_intersection_sequence(t, config))
            .collect(),
        Suite::SchurEpimorphism => corpus
            .extensions
            .iter()
            .map(|e| verify_schur_epimorphism(e, config))
            .collect(),
        Suite::SchurClasses => corpus.groups.iter().map(|g| verify_schur_classes(g, config)).collect(),
        Suite::DerivativeLcs => corpus.groups.iter().map(verify_derivative_lcs).collect(),
        Suite::Multiplier => corpus.groups.iter().map(|g| verify_multiplier(g, config)).collect(),
        Suite::OrderLaws => corpus.groups.iter().map(|g| verify_order_laws(g, config)).collect(),
    };
    let uses_pairs = matches!(
        suite,
        Suite::Compatibility
            | Suite::TensorAudit
            | Suite::CrossedModules
            | Suite::CircKernels
            | Suite::BjrIdentities
            | Suite::NormalAbelianQuotient
    );
    if let (true, Some(e)) = (uses_pairs, pair_error) {
        cases.push(e);
    }
    VerificationReport::new(suite, cases, start.elapsed())
}

fn ord(g: &PermGroup) -> Result<usize> {
    g.order()
}

/// Index of each member of `inner` inside `outer.members()` (both subgroups
/// of the same ambient group, `inner ⊆ outer`).
fn positions(outer: &Subgroup, inner: &Subgroup) -> Vec<u32> {
    inner
        .members()
        .iter()
        .map(|x| outer.members().binary_search(x).expect("subset") as u32)
        .collect()
}

fn identity_map(g: &PermGroup) -> Result<Vec<u32>> {
    Ok((0..g.order()? as u32).collect())
}

/// First element of `sub` that fails to commute with another member.
fn non_commuting_pair(sub: &Subgroup) -> Option<(u32, u32)> {
    let t = sub.ambient().elements().expect("enumerated");
    let m = sub.members();
    m.iter()
        .flat_map(|&a| m.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| t.mul(a, b) != t.mul(b, a))
}

pub fn verify_enumeration(f: &PresentationFixture) -> CaseResult {
    case(&f.name, |c| {
        let limits = EnumLimits::new(ENUMERATION_SANITY_LIMIT)?;
        let outcome = todd_coxeter(&f.presentation, &[], limits);
        match (f.expected_order, outcome) {
            (Some(n), Ok(table)) => {
                c.record("cosets", table.index());
                c.record("cosets_defined", table.cosets_defined());
                c.check("index", table.index() == n, || json!({"expected": n, "found": table.index()}));
                let audit = table.audit(&f.presentation);
                c.check("table_audit", audit.is_ok(), || json!(audit.clone().unwrap_err()));
                if let Some(model) = &f.model {
                    let (g, _) = perm_rep(&table, &f.presentation)?;
                    c.check("fingerprint", g.fingerprint()? == model.fingerprint()?, || {
                        json!("regular representation does not match the model")
                    });
                }
            }
            (Some(n), Err(e)) => {
                c.check("index", false, || json!({"expected": n, "error": e.to_string()}));
            }
            (None, Ok(table)) => {
                c.check("no_false_completion", false, || json!({"completed_with": table.index()}));
            }
            (None, Err(GroupError::LimitExceeded { cosets })) => {
                c.record("cosets_defined", cosets);
            }
            (None, Err(e)) => return Err(e),
        }
        Ok(())
    })
}

/// Conjugation pairs skip the exhaustive check at construction; redo it.
pub fn verify_conjugation_certificate(p: &NormalPair) -> CaseResult {
    case(format!("conjugation {}", p.name), |c| {
        let ma = p.actions()?;
        let cert = check_compatible(&ma);
        c.check("compatibility", cert == Compatibility::Certified, || json!(cert));
        Ok(())
    })
}

pub fn verify_compatibility(f: &ActionFixture) -> CaseResult {
    case(&f.name, |c| {
        c.record("expect_compatible", f.expect_compatible);
        match check_compatible(&f.actions) {
            Compatibility::Certified => {
                c.check("compatibility", f.expect_compatible, || {
                    json!("certified, but the fixture should be rejected")
                });
            }
            Compatibility::Violation(v) => {
                let replays = v.replay(&f.actions);
                c.record("witness", &v);
                c.record("witness_replays", replays);
                c.check("compatibility", !f.expect_compatible, || json!(v));
                c.check("witness_replay", replays, || json!(v));
            }
        }
        Ok(())
    })
}

pub fn verify_abelian_consistency(a: &NamedGroup, b: &NamedGroup, config: &VerifyConfig) -> CaseResult {
    case(format!("{} (x) {}", a.name, b.name), |c| {
        let t = tensor_product(&MutualActions::trivial(&a.group, &b.group)?, config.limits())?;
        let expected = trivial_action_tensor(&a.group, &b.group)?;
        let found = t.abelian_invariants()?;
        c.record("order", t.order());
        c.record("abelian_invariants", &found);
        c.check("abelian", t.carrier().is_abelian()?, || json!("tensor product is not abelian"));
        c.check("invariants", found == expected, || {
            json!({"expected": expected, "found": found})
        });
        Ok(())
    })
}

pub fn verify_module_tensor(f: &ModuleFixture) -> CaseResult {
    case(&f.name, |c| {
        let found = module_tensor_aug_ideal(&f.module)?;
        c.record("abelian_invariants", &found);
        c.check("invariants", found == f.expected, || {
            json!({"expected": f.expected, "found": found})
        });
        Ok(())
    })
}

/// Relations over all tuples, the induced actions, generation by generator
/// pairs (reported only), and symmetry under swapping the factors.
pub fn verify_tensor_audit(name: &str, ma: Result<MutualActions>, config: &VerifyConfig) -> CaseResult {
    case(name, |c| {
        let ma = ma?;
        let t = tensor_product(&ma, config.limits())?;
        c.record("order", t.order());
        c.record("cosets_defined", t.cosets_defined());
        let violations = t.relation_audit();
        c.check("relations", violations.is_empty(), || {
            json!({"count": violations.len(), "first": violations[0]})
        });
        c.check("g_action", t.action_of_g().validate().is_ok(), || json!("not an action"));
        c.check("h_action", t.action_of_h().validate().is_ok(), || json!("not an action"));
        let gt = ma.g().elements()?;
        let ht = ma.h().elements()?;
        let bad = (0..gt.order() as u32)
            .flat_map(|a| (0..gt.order() as u32).map(move |g| (a, g)))
            .flat_map(|(a, g)| (0..ht.order() as u32).map(move |h| (a, g, h)))
            .find(|&(a, g, h)| {
                t.action_of_g().act(a, t.pair(g, h)) != t.pair(gt.conj(a, g), ma.act_gh().act(a, h))
            });
        c.check("g_action_on_symbols", bad.is_none(), || json!(bad));
        c.record("generated_by_generator_pairs", t.generated_by_generator_pairs());
        let swapped = tensor_product(&ma.swapped(), config.limits())?;
        c.check(
            "symmetry",
            swapped.carrier().fingerprint()? == t.carrier().fingerprint()?,
            || json!({"order": t.order(), "swapped_order": swapped.order()}),
        );
        Ok(())
    })
}

/// `φ` with the `G`-action is a crossed module, `Ker φ` is central,
/// `Im φ = D_H(G)`; `μ` and `ν` are crossed modules.
pub fn verify_crossed_modules(name: &str, ma: Result<MutualActions>, config: &VerifyConfig) -> CaseResult {
    case(name, |c| {
        let ma = ma?;
        let t = tensor_product(&ma, config.limits())?;
        let phi_check = check_crossed_module(t.phi(), t.action_of_g())?;
        c.check("phi_crossed_module", phi_check == CrossedModuleCheck::Certified, || json!(phi_check));
        let kernel = t.phi().kernel();
        let center = t.carrier().center()?;
        c.record("kernel_order", kernel.order());
        c.check("kernel_central", kernel.is_subset_of(&center), || {
            json!({"kernel": kernel.members(), "center": center.members()})
        });
        let image = t.phi().image();
        let d = derivative(ma.act_hg())?;
        c.record("image_order", image.order());
        // Reported only: both derivatives, side by side.
        c.record("derivative_of_g_order", d.order());
        c.record("derivative_of_h_order", derivative(ma.act_gh())?.order());
        c.check("image_is_derivative", image == d, || {
            json!({"image": image.members(), "derivative": d.members()})
        });
        let circ = circ_product(&ma)?;
        for (label, m, act) in [("mu", &circ.mu, &circ.act_on_g), ("nu", &circ.nu, &circ.act_on_h)] {
            let r = check_crossed_module(m, act)?;
            c.check(&format!("{label}_crossed_module"), r == CrossedModuleCheck::Certified, || json!(r));
        }
        Ok(())
    })
}

pub fn verify_circ_kernels(name: &str, ma: Result<MutualActions>) -> CaseResult {
    case(name, |c| {
        let ma = ma?;
        let circ = circ_product(&ma)?;
        c.record("circ_order", circ.group.order()?);
        c.record("peiffer_closure_needed", circ.peiffer.closure_needed);
        let ker_mu = circ.mu.kernel();
        let ker_nu = circ.nu.kernel();
        c.record("ker_mu_order", ker_mu.order());
        c.record("ker_nu_order", ker_nu.order());
        let pair = non_commuting_pair(&ker_mu);
        c.check("ker_mu_abelian", pair.is_none(), || json!(pair));
        let pair = non_commuting_pair(&ker_nu);
        c.check("ker_nu_abelian", pair.is_none(), || json!(pair));
        let nh = ord(ma.h())? as u32;
        let ng = ord(ma.g())? as u32;
        let moved = ker_mu
            .members()
            .iter()
            .flat_map(|&k| (0..nh).map(move |h| (k, h)))
            .find(|&(k, h)| ma.act_gh().act(k, h) != h);
        c.check("ker_mu_acts_trivially", moved.is_none(), || json!(moved));
        let moved = ker_nu
            .members()
            .iter()
            .flat_map(|&k| (0..ng).map(move |g| (k, g)))
            .find(|&(k, g)| ma.act_hg().act(k, g) != g);
        c.check("ker_nu_acts_trivially", moved.is_none(), || json!(moved));
        let meet = circ.mu.image().intersection(&circ.nu.image());
        c.record("image_intersection_order", meet.order());
        c.check("image_intersection_normal", meet.is_normal(), || json!(meet.members()));
        Ok(())
    })
}

/// `G ⊗ N`, `N ⊗ N` and `i: N ⊗ N → G ⊗ N` for a normal pair.
struct NormalPairTensors {
    ma: MutualActions,
    t: TensorGroup,
    nn: TensorGroup,
    /// `N`-index → `G`-index.
    iota: Vec<u32>,
    i: GroupHom,
    image: Subgroup,
}

fn normal_pair_tensors(p: &NormalPair, config: &VerifyConfig) -> Result<NormalPairTensors> {
    let ma = p.actions()?;
    let t = tensor_product(&ma, config.limits())?;
    let nn = tensor_square(ma.h(), config.limits())?;
    let iota = p.normal.members().to_vec();
    let i = nn.induced_map(&t, &iota, &identity_map(ma.h())?)?;
    let image = i.image();
    Ok(NormalPairTensors {
        ma,
        t,
        nn,
        iota,
        i,
        image,
    })
}

/// The three commutator identities in `G ⊗ N` for `N ⊴ G` over all tuples:
/// `(g'⊗h')(g⊗h)(g'⊗h')⁻¹ = ^[g',h']g ⊗ ^[g',h']h`,
/// `g⊗[h,h'] = ᵍ(h⊗h')·(h⊗h')⁻¹`, and the congruences
/// `g⊗ʰ'h ≡ g⊗h ≡ ʰ'g⊗h` modulo `i(N⊗N)`.
pub fn verify_bjr_identities(p: &NormalPair, config: &VerifyConfig) -> CaseResult {
    case(&p.name, |c| {
        let s = normal_pair_tensors(p, config)?;
        let gt = s.ma.g().elements()?;
        let ht = s.ma.h().elements()?;
        let ct = s.t.carrier().elements()?;
        let (agh, ahg) = (s.ma.act_gh(), s.ma.act_hg());
        let (ng, nh) = (gt.order() as u32, ht.order() as u32);
        let mut checked = 0usize;

        let mut bad = None;
        'outer: for g2 in 0..ng {
            for h2 in 0..nh {
                let x = s.t.pair(g2, h2);
                let k = gt.comm(g2, s.iota[h2 as usize]);
                for g in 0..ng {
                    for h in 0..nh {
                        checked += 1;
                        let lhs = ct.conj(x, s.t.pair(g, h));
                        let rhs = s.t.pair(gt.conj(k, g), agh.act(k, h));
                        if lhs != rhs {
                            bad = Some(json!({"g": g, "h": h, "g2": g2, "h2": h2, "lhs": lhs, "rhs": rhs}));
                            break 'outer;
                        }
                    }
                }
            }
        }
        c.check("conjugation_identity", bad.is_none(), || bad.clone().unwrap());

        let mut bad = None;
        'outer2: for g in 0..ng {
            for h in 0..nh {
                for h2 in 0..nh {
                    checked += 1;
                    let lhs = s.t.pair(g, ht.comm(h, h2));
                    let moved = s.i.apply(s.nn.pair(agh.act(g, h), agh.act(g, h2)));
                    let rhs = ct.mul(moved, ct.inv(s.i.apply(s.nn.pair(h, h2))));
                    if lhs != rhs {
                        bad = Some(json!({"g": g, "h": h, "h2": h2, "lhs": lhs, "rhs": rhs}));
                        break 'outer2;
                    }
                }
            }
        }
        c.check("commutator_identity", bad.is_none(), || bad.clone().unwrap());

        let mut bad_right = None;
        let mut bad_left = None;
        for g in 0..ng {
            for h in 0..nh {
                let base = s.t.pair(g, h);
                for h2 in 0..nh {
                    checked += 2;
                    let right = s.t.pair(g, ht.conj(h2, h));
                    if bad_right.is_none() && !s.image.contains(ct.mul(right, ct.inv(base))) {
                        bad_right = Some(json!({"g": g, "h": h, "h2": h2}));
                    }
                    let left = s.t.pair(ahg.act(h2, g), h);
                    if bad_left.is_none() && !s.image.contains(ct.mul(left, ct.inv(base))) {
                        bad_left = Some(json!({"g": g, "h": h, "h2": h2}));
                    }
                }
            }
        }
        c.check("congruence_acting_on_right", bad_right.is_none(), || bad_right.clone().unwrap());
        c.check("congruence_acting_on_left", bad_left.is_none(), || bad_left.clone().unwrap());
        c.record("tuples_checked", checked);
        c.record("tensor_order", s.t.order());
        c.record("image_order", s.image.order());
        Ok(())
    })
}

/// `i(N⊗N)` is normal in `G⊗N` with abelian quotient.
pub fn verify_normal_abelian_quotient(p: &NormalPair, config: &VerifyConfig) -> CaseResult {
    case(&p.name, |c| {
        let s = normal_pair_tensors(p, config)?;
        c.record("tensor_order", s.t.order());
        c.record("image_order", s.image.order());
        let w = s.image.normality_witness(s.t.carrier().elements()?.generators());
        c.check("image_normal", w.is_none(), || json!(w));
        let (q, _) = s.t.carrier().quotient(&s.image)?;
        c.record("quotient_order", q.order()?);
        c.check("quotient_abelian", q.is_abelian()?, || json!({"quotient_order": q.order().ok()}));
        if p.normal.order() == ord(&p.group)? {
            c.check("onto_when_equal", s.i.is_surjective(), || json!(s.image.order()));
        }
        Ok(())
    })
}

/// For `G, H ⊴ K` with `I = G ∩ H`: the sequence
/// `(I⊗H) × (G⊗I) → G⊗H → (G/I)⊗(H/I) → 1` is exact, the induced actions
/// on the right are trivial, and the right-hand term is `(G/I)_ab ⊗ (H/I)_ab`.
pub fn verify_intersection_sequence(tr: &NormalTriple, config: &VerifyConfig) -> CaseResult {
    case(&tr.name, |c| {
        let k = &tr.ambient;
        let inter = tr.g.intersection(&tr.h);
        let ma = conjugation_mutual(k, &tr.g, &tr.h)?;
        let t = tensor_product(&ma, config.limits())?;
        let (gg, hg) = (ma.g(), ma.h());
        let i_in_g = positions(&tr.g, &inter);
        let i_in_h = positions(&tr.h, &inter);

        let l1 = tensor_product(&conjugation_mutual(k, &inter, &tr.h)?, config.limits())?;
        let left1 = l1.induced_map(&t, &i_in_g, &identity_map(hg)?)?;
        let l2 = tensor_product(&conjugation_mutual(k, &tr.g, &inter)?, config.limits())?;
        let left2 = l2.induced_map(&t, &identity_map(gg)?, &i_in_h)?;

        let to_usize = |v: &[u32]| v.iter().map(|&x| x as usize).collect::<Vec<_>>();
        let (qg, pg) = gg.quotient(&gg.subgroup_generated(&to_usize(&i_in_g))?)?;
        let (qh, ph) = hg.quotient(&hg.subgroup_generated(&to_usize(&i_in_h))?)?;
        let first_preimage = |p: &GroupHom, n: usize| {
            let mut pre = vec![u32::MAX; n];
            for (x, &y) in p.map().iter().enumerate().rev() {
                pre[y as usize] = x as u32;
            }
            pre
        };
        let pre_g = first_preimage(&pg, qg.order()?);
        let pre_h = first_preimage(&ph, qh.order()?);
        let (nqg, nqh) = (qg.order()? as u32, qh.order()? as u32);
        let moved = (0..nqg)
            .flat_map(|a| (0..nqh).map(move |b| (a, b)))
            .find(|&(a, b)| {
                ph.apply(ma.act_gh().act(pre_g[a as usize], pre_h[b as usize])) != b
            });
        c.check("induced_action_trivial", moved.is_none(), || json!(moved));
        let moved = (0..nqh)
            .flat_map(|b| (0..nqg).map(move |a| (b, a)))
            .find(|&(b, a)| {
                pg.apply(ma.act_hg().act(pre_h[b as usize], pre_g[a as usize])) != a
            });
        c.check("induced_back_action_trivial", moved.is_none(), || json!(moved));

        let r = tensor_product(&MutualActions::trivial(&qg, &qh)?, config.limits())?;
        let right = t.induced_map(&r, pg.map(), ph.map())?;
        c.record("intersection_order", inter.order());
        c.record("middle_order", t.order());
        c.record("right_order", r.order());

        c.check("right_surjective", right.is_surjective(), || json!(right.image().order()));
        let nonzero = left1
            .then(&right)
            .map()
            .iter()
            .chain(left2.then(&right).map())
            .any(|&y| y != 0);
        c.check("composite_trivial", !nonzero, || json!("a left image survives on the right"));
        let im1 = left1.image();
        let im2 = left2.image();
        let joined = im1.join(&im2);
        let kernel = right.kernel();
        c.record("kernel_order", kernel.order());
        c.check("image_equals_kernel", joined == kernel, || {
            json!({"image": joined.members(), "kernel": kernel.members()})
        });
        // Whether the product set of the two images is already a subgroup.
        let ct = t.carrier().elements()?;
        let mut product: Vec<u32> = im1
            .members()
            .iter()
            .flat_map(|&a| im2.members().iter().map(move |&b| ct.mul(a, b)))
            .collect();
        product.sort_unstable();
        product.dedup();
        c.record("product_of_images_is_subgroup", product == joined.members());

        let expected = trivial_action_tensor(&qg, &qh)?;
        let found = r.abelian_invariants()?;
        c.check("right_abelian", r.carrier().is_abelian()?, || json!("right-hand tensor is not abelian"));
        c.check("right_matches_abelianizations", found == expected, || {
            json!({"expected": expected, "found": found})
        });
        Ok(())
    })
}

/// For a central extension `N → G → H`: the image `X` of the symbols
/// `n⊗g`, `g⊗n` is killed by `λ`, `(G⊗G)/X ≅ H⊗H` on symbols, and the
/// composite `H⊗H → (G⊗G)/X → G` is onto `[G, G]` with
/// `π(λ*θ⁻¹(x)) = λ_H(x)` for every `x`.
pub fn verify_schur_epimorphism(e: &CentralExtension, config: &VerifyConfig) -> CaseResult {
    case(&e.name, |c| {
        let g = &e.group;
        let gt = g.elements()?;
        c.check("kernel_central", e.kernel.is_central(), || json!(e.kernel.members()));
        let tg = tensor_square(g, config.limits())?;
        let th = tensor_square(&e.quotient, config.limits())?;
        let pi = &e.projection;
        let n = gt.order() as u32;
        let x = tg.generated_by_pairs(
            e.kernel
                .members()
                .iter()
                .flat_map(|&z| (0..n).flat_map(move |a| [(z, a), (a, z)])),
        );
        c.record("square_order", tg.order());
        c.record("quotient_square_order", th.order());
        c.record("x_order", x.order());
        c.check("x_normal", x.is_normal(), || json!(x.members()));
        let lam = tg.phi();
        let escaped = x.members().iter().copied().find(|&m| lam.apply(m) != 0);
        c.check("lambda_kills_x", escaped.is_none(), || json!(escaped));

        let (q, proj) = tg.carrier().quotient(&x)?;
        let mut theta_pairs = Vec::new();
        let mut lam_pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let s = proj.apply(tg.pair(a, b));
                theta_pairs.push((s, th.pair(pi.apply(a), pi.apply(b))));
                lam_pairs.push((s, gt.comm(a, b)));
            }
        }
        let theta = GroupHom::from_generator_images(&q, th.carrier(), &theta_pairs);
        c.check("theta_well_defined", theta.is_ok(), || json!(theta.as_ref().unwrap_err().to_string()));
        let lam_star = GroupHom::from_generator_images(&q, g, &lam_pairs);
        c.check("lambda_star_well_defined", lam_star.is_ok(), || {
            json!(lam_star.as_ref().unwrap_err().to_string())
        });
        let (Ok(theta), Ok(lam_star)) = (theta, lam_star) else {
            return Ok(());
        };
        c.check("theta_bijective", theta.is_injective() && theta.is_surjective(), || {
            json!({"kernel_order": theta.kernel().order(), "image_order": theta.image().order()})
        });
        let mut theta_inv = vec![0u32; th.order()];
        for (s, &y) in theta.map().iter().enumerate() {
            theta_inv[y as usize] = s as u32;
        }
        let psi: Vec<u32> = theta_inv.iter().map(|&s| lam_star.apply(s)).collect();
        let whole = g.whole()?;
        let derived = commutator_subgroup(&whole, &whole)?;
        let mut image: Vec<u32> = psi.clone();
        image.sort_unstable();
        image.dedup();
        c.record("derived_order", derived.order());
        c.check("onto_derived_subgroup", image == derived.members(), || {
            json!({"image": image, "derived": derived.members()})
        });
        let lam_h = th.phi();
        let off = (0..th.order()).find(|&y| pi.apply(psi[y]) != lam_h.apply(y as u32));
        c.check("diagram_commutes", off.is_none(), || json!(off));
        Ok(())
    })
}

/// When `G/Z(G)` is a `p`-group, so is `[G, G]`; and `[G, G]` is an image
/// of `(G/Z)⊗(G/Z)`, so its order divides that tensor square's order.
pub fn verify_schur_classes(g: &NamedGroup, config: &VerifyConfig) -> CaseResult {
    case(&g.name, |c| {
        let z = g.group.center()?;
        let (q, _) = g.group.quotient(&z)?;
        let whole = g.group.whole()?;
        let derived = commutator_subgroup(&whole, &whole)?;
        let (qn, dn) = (q.order()?, derived.order());
        c.record("central_quotient_order", qn);
        c.record("derived_order", dn);
        if let Some(p) = prime_power_base(qn) {
            c.record("prime", p);
            c.check("derived_is_p_group", dn == 1 || prime_power_base(dn) == Some(p), || {
                json!({"prime": p, "derived_order": dn})
            });
        }
        let sq = tensor_square(&q, config.limits())?;
        c.record("central_quotient_square_order", sq.order());
        c.check("derived_order_divides", sq.order() % dn == 0, || {
            json!({"square_order": sq.order(), "derived_order": dn})
        });
        Ok(())
    })
}

/// `D_G(γₙ) = γₙ₊₁ = D_{γₙ}(G)` along the lower central series, including the
/// step at which it stabilizes.
pub fn verify_derivative_lcs(g: &NamedGroup) -> CaseResult {
    case(&g.name, |c| {
        let series = g.group.lower_central_series()?;
        c.record("series_orders", series.iter().map(Subgroup::order).collect::<Vec<_>>());
        let whole = g.group.whole()?;
        for (n, gamma) in series.iter().enumerate() {
            let next = series.get(n + 1).unwrap_or(gamma);
            let ma = conjugation_mutual(&g.group, &whole, gamma)?;
            let on_gamma = derivative(ma.act_gh())?;
            let lifted: Vec<u32> = on_gamma.members().iter().map(|&k| gamma.members()[k as usize]).collect();
            c.check(&format!("D_G(gamma_{})", n + 1), lifted == next.members(), || {
                json!({"found": lifted, "expected": next.members()})
            });
            let on_g = derivative(ma.act_hg())?;
            c.check(&format!("D_gamma_{}(G)", n + 1), on_g.members() == next.members(), || {
                json!({"found": on_g.members(), "expected": next.members()})
            });
        }
        Ok(())
    })
}

/// `Ker(G∧G → G)` against the bar-complex computation.
pub fn verify_multiplier(g: &NamedGroup, config: &VerifyConfig) -> CaseResult {
    let n = match g.group.order() {
        Ok(n) => n,
        Err(e) => return CaseResult::new(&g.name).error(e),
    };
    if n > config.multiplier_max_order {
        return CaseResult::new(&g.name).skip(format!(
            "order {n} above the multiplier cut-off {}",
            config.multiplier_max_order
        ));
    }
    case(&g.name, |c| {
        let bar = h2_bar_resolution(&g.group, config.bar_bound)?;
        let m = multiplier_from_exterior(exterior_from_square(tensor_square(&g.group, config.limits())?)?)?;
        c.record("bar", &bar);
        c.record("tensor", &m.invariants);
        c.check("agree", bar == m.invariants, || json!({"bar": bar, "tensor": m.invariants}));
        Ok(())
    })
}

/// `|G⊗G| = |∇(G)|·|G∧G|` and `|G∧G| = |H₂(G)|·|[G, G]|`.
pub fn verify_order_laws(g: &NamedGroup, config: &VerifyConfig) -> CaseResult {
    case(&g.name, |c| {
        let sq = tensor_square(&g.group, config.limits())?;
        let nab = nabla(&sq)?;
        let sq_order = sq.order();
        let ext = exterior_from_square(sq)?;
        let ext_order = ext.group.order()?;
        c.record("square_order", sq_order);
        c.record("nabla_order", nab.order());
        c.record("exterior_order", ext_order);
        c.check("square_law", sq_order == nab.order() * ext_order, || {
            json!({"square": sq_order, "nabla": nab.order(), "exterior": ext_order})
        });
        let whole = g.group.whole()?;
        let derived = commutator_subgroup(&whole, &whole)?;
        c.record("derived_order", derived.order());
        match h2_bar_resolution(&g.group, config.bar_bound) {
            Ok(h2) => {
                let h2_order = h2.order().unwrap_or(0) as usize;
                c.record("h2_order", h2_order);
                c.check("exterior_law", ext_order == h2_order * derived.order(), || {
                    json!({"exterior": ext_order, "h2": h2_order, "derived": derived.order()})
                });
            }
            Err(GroupError::BoundExceeded { bound }) => {
                c.record("h2_order", format!("skipped: order above bar bound {bound}"));
            }
            Err(e) => return Err(e),
        }
        Ok(())
    })
}
