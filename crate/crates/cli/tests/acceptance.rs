//! The twelve acceptance criteria, one line each. Runs as a plain binary so
//! the lines are visible under `cargo test`; exits non-zero if any fails.
//!
//! `NABT_ACCEPTANCE_SLOW=1` adds the order-16 groups to criterion 3.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use nabt::actions::{check_compatible, Compatibility};
use nabt::corpus::{lookup, Corpus, ABELIAN_CONSISTENCY_GROUPS, DEFAULT_GROUPS, SLOW_GROUPS};
use nabt::group::commutator_subgroup;
use nabt::homology::{h2_bar_resolution, trivial_action_tensor, DEFAULT_BAR_BOUND};
use nabt::tensor::{exterior_from_square, multiplier_from_exterior, nabla, tensor_product, tensor_square};
use nabt::verify::{run_suite, Suite, VerificationReport, VerifyConfig};
use nabt::{todd_coxeter, AbelianInvariants, EnumLimits, GroupError, MutualActions};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nabt(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nabt"))
        .args(args)
        .env_remove("NABT_MAX_COSETS")
        .output()
        .map_err(|e| format!("cannot run nabt: {e}"))?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn json_of(bytes: &[u8]) -> Result<Value, String> {
    serde_json::from_slice(bytes).map_err(|e| format!("output is not JSON: {e}"))
}

/// Every case passed, and there was at least `min` of them.
fn all_pass(r: &VerificationReport, min: usize) -> Result<(), String> {
    if let Some(f) = r.first_failure() {
        return Err(format!(
            "{}: case {:?} failed: {}",
            r.suite,
            f.case,
            serde_json::to_string(&f.status).unwrap()
        ));
    }
    ensure(r.skipped == 0, || format!("{}: {} cases skipped", r.suite, r.skipped))?;
    ensure(r.passed >= min, || format!("{}: only {} cases ran", r.suite, r.passed))
}

fn corpus() -> Corpus {
    Corpus::standard().expect("standard corpus builds")
}

fn limits() -> EnumLimits {
    EnumLimits::default()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (out, code) = nabt(&[
        "aug-tensor",
        "--module-rank",
        "1",
        "--action",
        "-1",
        "--over",
        "corpus:C2",
        "--format",
        "json",
    ])?;
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit status {code}"))?;
    let doc = json_of(&out)?;
    let inv = &doc["result"]["abelian_invariants"];
    ensure(*inv == json!({"rank": 1, "torsion": []}), || format!("got {inv}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("Z with C2 acting by -1: Z (x) I(C2) = Z in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for a in ABELIAN_CONSISTENCY_GROUPS {
        for b in ABELIAN_CONSISTENCY_GROUPS {
            let (ga, gb) = (lookup(a).unwrap(), lookup(b).unwrap());
            let t = tensor_product(&MutualActions::trivial(&ga, &gb).unwrap(), limits())
                .map_err(|e| format!("{a} (x) {b}: {e}"))?;
            let found = t.abelian_invariants().unwrap();
            let expected = trivial_action_tensor(&ga, &gb).unwrap();
            ensure(found == expected, || format!("{a} (x) {b}: {found} vs {expected}"))?;
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} ordered pairs match the abelian tensor product in {elapsed:.2?}"))
}

fn multiplier_agrees(name: &str) -> Result<AbelianInvariants, String> {
    let g = lookup(name).unwrap();
    let bar = h2_bar_resolution(&g, DEFAULT_BAR_BOUND).map_err(|e| format!("{name}: {e}"))?;
    let sq = tensor_square(&g, limits()).map_err(|e| format!("{name}: {e}"))?;
    let m = multiplier_from_exterior(exterior_from_square(sq).unwrap()).unwrap();
    ensure(m.invariants == bar, || format!("{name}: tensor {} vs bar {bar}", m.invariants))?;
    Ok(bar)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut nontrivial = Vec::new();
    for name in DEFAULT_GROUPS {
        if lookup(name).unwrap().order().unwrap() > 12 {
            continue;
        }
        let m = multiplier_agrees(name)?;
        if !m.is_trivial() {
            nontrivial.push(format!("{name}:{m}"));
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    let mut line = format!(
        "{checked} groups agree with the bar complex in {elapsed:.2?} (non-trivial: {})",
        nontrivial.join(" ")
    );
    if std::env::var("NABT_ACCEPTANCE_SLOW").is_ok_and(|v| v == "1") {
        let start = Instant::now();
        for name in SLOW_GROUPS {
            multiplier_agrees(name)?;
        }
        line += &format!("; slow mode: {} order-16 groups in {:.2?}", SLOW_GROUPS.len(), start.elapsed());
    } else {
        line += "; slow mode not requested";
    }
    Ok(line)
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for name in DEFAULT_GROUPS {
        let g = lookup(name).unwrap();
        let sq = tensor_square(&g, limits()).map_err(|e| format!("{name}: {e}"))?;
        let sq_order = sq.order();
        let nab = nabla(&sq).unwrap().order();
        let ext = exterior_from_square(sq).unwrap().group.order().unwrap();
        ensure(sq_order == nab * ext, || format!("{name}: {sq_order} != {nab} * {ext}"))?;
        let h2 = h2_bar_resolution(&g, DEFAULT_BAR_BOUND).unwrap().order().unwrap() as usize;
        let whole = g.whole().unwrap();
        let derived = commutator_subgroup(&whole, &whole).unwrap().order();
        ensure(ext == h2 * derived, || format!("{name}: {ext} != {h2} * {derived}"))?;
        checked += 1;
    }
    Ok(format!("both order laws hold on {checked} groups"))
}

fn criterion_5() -> Outcome {
    let c = corpus();
    let config = VerifyConfig::default();
    let pairs = c.normal_pairs(12).unwrap().len();
    let bjr = run_suite(Suite::BjrIdentities, &c, &config);
    all_pass(&bjr, pairs)?;
    let quotient = run_suite(Suite::NormalAbelianQuotient, &c, &config);
    all_pass(&quotient, pairs)?;
    let tuples: u64 = bjr.cases.iter().filter_map(|k| k.data["tuples_checked"].as_u64()).sum();
    Ok(format!("{pairs} pairs (G, N normal in G), {tuples} tuples, zero violations"))
}

fn criterion_6() -> Outcome {
    let c = corpus();
    let r = run_suite(Suite::IntersectionSequence, &c, &VerifyConfig::default());
    all_pass(&r, c.triples.len())?;
    for name in ["D4; rotations, Z(D4)", "S3; S3, S3", "C6; C2, C3"] {
        ensure(r.cases.iter().any(|k| k.case == name), || format!("triple {name:?} missing"))?;
    }
    Ok(format!("{} triples exact, image = kernel as sets", r.passed))
}

fn criterion_7() -> Outcome {
    let c = corpus();
    let r = run_suite(Suite::SchurEpimorphism, &c, &VerifyConfig::default());
    all_pass(&r, c.extensions.len())?;
    let q8 = r
        .cases
        .iter()
        .find(|k| k.case == "Z(Q8) -> Q8 -> V4")
        .ok_or("Q8 extension missing")?;
    ensure(q8.data["quotient_square_order"] == json!(16), || {
        format!("|V4 (x) V4| = {}", q8.data["quotient_square_order"])
    })?;
    ensure(q8.data["derived_order"] == json!(2), || format!("|[Q8,Q8]| = {}", q8.data["derived_order"]))?;
    Ok(format!("{} extensions; V4 (x) V4 (order 16) onto [Q8,Q8] (order 2)", r.passed))
}

fn criterion_8() -> Outcome {
    let c = corpus();
    let config = VerifyConfig::default();
    let pairs = c.normal_pairs(12).unwrap().len();
    let r = run_suite(Suite::CrossedModules, &c, &config);
    all_pass(&r, pairs)?;
    let k = run_suite(Suite::CircKernels, &c, &config);
    all_pass(&k, pairs)?;
    Ok(format!("phi, mu and nu are crossed modules on {} inputs", r.passed))
}

fn criterion_9() -> Outcome {
    let c = corpus();
    let r = run_suite(Suite::DerivativeLcs, &c, &VerifyConfig::default());
    all_pass(&r, DEFAULT_GROUPS.len())?;
    Ok(format!("{} groups", r.passed))
}

fn criterion_10() -> Outcome {
    let c = corpus();
    let r = run_suite(Suite::Compatibility, &c, &VerifyConfig::default());
    all_pass(&r, c.normal_pairs(12).unwrap().len())?;
    let inversions = c.fixtures.iter().filter(|f| f.name.starts_with("C2 inverting")).count();
    ensure(inversions > 0, || "no inversion fixtures".into())?;
    let mixed = c
        .fixtures
        .iter()
        .find(|f| !f.expect_compatible)
        .ok_or("no rejected fixture")?;
    let Compatibility::Violation(v) = check_compatible(&mixed.actions) else {
        return Err(format!("{} was accepted", mixed.name));
    };
    ensure(v.replay(&mixed.actions), || format!("witness {v:?} does not replay"))?;
    ensure(v.lhs != v.rhs, || "witness sides agree".into())?;
    Ok(format!(
        "{} accepted; {:?} rejected at (outer {}, inner {}, target {}) and the witness replays",
        r.passed - 1,
        mixed.name,
        v.outer,
        v.inner,
        v.target
    ))
}

fn criterion_11() -> Outcome {
    let c = corpus();
    let lim = EnumLimits::new(10_000).unwrap();
    let mut found = Vec::new();
    for p in &c.presentations {
        match (p.expected_order, todd_coxeter(&p.presentation, &[], lim)) {
            (Some(n), Ok(t)) => {
                ensure(t.index() == n, || format!("{}: {} cosets, expected {n}", p.name, t.index()))?;
                ensure(t.cosets_defined() <= 10_000, || format!("{}: too many definitions", p.name))?;
                found.push(n.to_string());
            }
            (Some(_), Err(e)) => return Err(format!("{}: {e}", p.name)),
            (None, Ok(t)) => return Err(format!("{}: false completion with {} cosets", p.name, t.index())),
            (None, Err(GroupError::LimitExceeded { .. })) => found.push("limit".into()),
            (None, Err(e)) => return Err(format!("{}: {e}", p.name)),
        }
    }
    ensure(found == ["5", "6", "8", "8", "12", "limit"], || format!("outcomes {found:?}"))?;
    all_pass(&run_suite(Suite::Enumeration, &c, &VerifyConfig::default()), 6)?;
    Ok(format!("indices {}", found.join(", ")))
}

fn without_timings(bytes: &[u8]) -> Result<String, String> {
    let mut doc = json_of(bytes)?;
    doc.as_object_mut().ok_or("not an object")?.remove("timings");
    Ok(serde_json::to_string_pretty(&doc).unwrap())
}

fn criterion_12() -> Outcome {
    let (a, code_a) = nabt(&["corpus", "run", "--format", "json"])?;
    let (b, code_b) = nabt(&["corpus", "run", "--format", "json"])?;
    ensure(code_a == 0 && code_b == 0, || format!("exit statuses {code_a}, {code_b}"))?;
    let (a, b) = (without_timings(&a)?, without_timings(&b)?);
    ensure(a == b, || {
        let line = a.lines().zip(b.lines()).position(|(x, y)| x != y).unwrap_or(0);
        format!("outputs differ at line {}", line + 1)
    })?;
    ensure(!a.contains("seconds"), || "timing data outside the timings key".into())?;
    Ok(format!("two runs identical ({} bytes without timings)", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("module tensor with the augmentation ideal", criterion_1),
        ("abelian consistency", criterion_2),
        ("multiplier, tensor route vs bar complex", criterion_3),
        ("order laws", criterion_4),
        ("commutator identities and abelian quotient", criterion_5),
        ("intersection exact sequence", criterion_6),
        ("Schur epimorphism from central extensions", criterion_7),
        ("crossed-module audits", criterion_8),
        ("derivatives along the lower central series", criterion_9),
        ("compatibility checker", criterion_10),
        ("enumeration sanity", criterion_11),
        ("determinism of corpus run", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} [{t:.2?}] {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name} [{t:.2?}] {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
