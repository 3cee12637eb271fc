//! Browser bindings. Every export takes plain strings and returns a JSON
//! string; errors come back as `{"error": "..."}` so the page never has to
//! catch exceptions.
//!
//! A group is either a bundled name (`S3`, `Q8`, `D4`, `C2xC4`, ...) or a
//! list of generators in cycle notation on points 0.., e.g. `(0 1), (0 1 2)`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use nabt::actions::{check_compatible, Action, Compatibility, MutualActions};
use nabt::corpus::lookup;
use nabt::tensor::{exterior_from_square, multiplier_from_exterior, nabla};
use nabt::{h2_bar_resolution, tensor_square, AbelianInvariants, EnumLimits, Perm, PermGroup};

/// The page runs on the main thread, so keep groups small.
const MAX_ORDER: usize = 32;
const BAR_BOUND: usize = 16;

pub fn parse_group(text: &str) -> Result<PermGroup, String> {
    let text = text.trim();
    if !text.starts_with('(') {
        return lookup(text).map_err(|e| e.to_string());
    }
    let mut gens: Vec<Vec<Vec<usize>>> = Vec::new();
    for part in text.split(',').map(str::trim) {
        let mut cycles = Vec::new();
        let mut rest = part;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| format!("expected a cycle like (0 1 2), found {rest:?}"))?;
            let points = body
                .0
                .split_whitespace()
                .map(|p| p.parse::<usize>().map_err(|_| format!("{p:?} is not a point")))
                .collect::<Result<Vec<_>, _>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body.1.trim_start();
        }
        gens.push(cycles);
    }
    let degree = gens.iter().flatten().flatten().max().map_or(1, |&m| m + 1);
    let perms = gens
        .iter()
        .map(|cycles| Perm::from_cycles(degree, cycles).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(degree, perms).map_err(|e| e.to_string())
}

fn small(g: &PermGroup) -> Result<usize, String> {
    let n = g.order().map_err(|e| e.to_string())?;
    if n > MAX_ORDER {
        return Err(format!("order {n} is above the demo limit of {MAX_ORDER}"));
    }
    Ok(n)
}

fn invariants(a: &AbelianInvariants) -> Value {
    json!({"rank": a.free_rank, "torsion": a.torsion})
}

pub fn tensor_square_report(group: &str) -> Result<Value, String> {
    let g = parse_group(group)?;
    let n = small(&g)?;
    let t = tensor_square(&g, EnumLimits::default()).map_err(|e| e.to_string())?;
    let nab = nabla(&t).map_err(|e| e.to_string())?.order();
    let inv = t.abelian_invariants().map_err(|e| e.to_string())?;
    let (order, abelian) = (t.order(), t.carrier().is_abelian().map_err(|e| e.to_string())?);
    let ext = exterior_from_square(t).map_err(|e| e.to_string())?;
    Ok(json!({
        "group_order": n,
        "order": order,
        "abelian": abelian,
        "abelianization": invariants(&inv),
        "nabla_order": nab,
        "exterior_order": ext.group.order().map_err(|e| e.to_string())?,
    }))
}

pub fn schur_report(group: &str) -> Result<Value, String> {
    let g = parse_group(group)?;
    let n = small(&g)?;
    let t = tensor_square(&g, EnumLimits::default()).map_err(|e| e.to_string())?;
    let ext = exterior_from_square(t).map_err(|e| e.to_string())?;
    let m = multiplier_from_exterior(ext).map_err(|e| e.to_string())?;
    let bar = if n <= BAR_BOUND {
        let b = h2_bar_resolution(&g, BAR_BOUND).map_err(|e| e.to_string())?;
        json!({"abelian_invariants": invariants(&b), "agrees": b == m.invariants})
    } else {
        json!(null)
    };
    Ok(json!({
        "group_order": n,
        "abelian_invariants": invariants(&m.invariants),
        "bar_resolution": bar,
    }))
}

fn action(mode: &str, actor: &PermGroup, target: &PermGroup) -> Result<Action, String> {
    match mode.trim() {
        "conjugation" => Action::conjugation_on(actor, target),
        "trivial" => Action::trivial(actor, target),
        other => return Err(format!("unknown action {other:?}; use conjugation or trivial")),
    }
    .map_err(|e| e.to_string())
}

/// Conjugation needs both groups on the same points.
fn widen(g: &PermGroup, degree: usize) -> Result<PermGroup, String> {
    if g.degree() == degree {
        return Ok(g.clone());
    }
    let gens = g
        .generators()
        .iter()
        .map(|p| {
            let mut images = p.images().to_vec();
            images.extend(p.degree() as u32..degree as u32);
            Perm::from_images(images).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(degree, gens).map_err(|e| e.to_string())
}

pub fn compatibility_report(g: &str, h: &str, action_gh: &str, action_hg: &str) -> Result<Value, String> {
    let (g, h) = (parse_group(g)?, parse_group(h)?);
    small(&g)?;
    small(&h)?;
    let degree = g.degree().max(h.degree());
    let (g, h) = (widen(&g, degree)?, widen(&h, degree)?);
    let ma = MutualActions::new_unchecked(action(action_gh, &g, &h)?, action(action_hg, &h, &g)?)
        .map_err(|e| e.to_string())?;
    Ok(match check_compatible(&ma) {
        Compatibility::Certified => json!({"compatible": true}),
        Compatibility::Violation(v) => json!({"compatible": false, "witness": v}),
    })
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

#[wasm_bindgen]
pub fn tensor_square_json(group: &str) -> String {
    respond(tensor_square_report(group))
}

#[wasm_bindgen]
pub fn schur_multiplier_json(group: &str) -> String {
    respond(schur_report(group))
}

#[wasm_bindgen]
pub fn compatible_json(g: &str, h: &str, action_gh: &str, action_hg: &str) -> String {
    respond(compatibility_report(g, h, action_gh, action_hg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_parse_from_names_and_cycles() {
        assert_eq!(parse_group("Q8").unwrap().order().unwrap(), 8);
        assert_eq!(parse_group("(0 1), (0 1 2)").unwrap().order().unwrap(), 6);
        assert_eq!(parse_group("(0 1)(2 3), (0 2)(1 3)").unwrap().order().unwrap(), 4);
        assert!(parse_group("(0 1").is_err());
        assert!(parse_group("(0 x)").is_err());
        assert!(parse_group("Z9").is_err());
    }

    #[test]
    fn tensor_square_of_s3() {
        let r = tensor_square_report("S3").unwrap();
        assert_eq!(r["exterior_order"], 3);
        let nab = r["nabla_order"].as_u64().unwrap();
        assert_eq!(r["order"].as_u64().unwrap(), nab * 3);
    }

    #[test]
    fn multiplier_of_klein_four_matches_bar() {
        let r = schur_report("V4").unwrap();
        assert_eq!(r["abelian_invariants"]["torsion"], json!([2]));
        assert_eq!(r["bar_resolution"]["agrees"], true);
    }

    #[test]
    fn compatibility_with_witness() {
        let s3 = "(0 1), (0 1 2)";
        assert_eq!(compatibility_report(s3, s3, "conjugation", "conjugation").unwrap()["compatible"], true);
        let r = compatibility_report(s3, s3, "conjugation", "trivial").unwrap();
        assert_eq!(r["compatible"], false);
        assert!(r["witness"].is_object());
    }

    #[test]
    fn errors_become_json() {
        let out: Value = serde_json::from_str(&tensor_square_json("S5")).unwrap();
        assert!(out["error"].as_str().unwrap().contains("demo limit"));
        let out: Value = serde_json::from_str(&compatible_json("S3", "(0 1)", "conjugation", "trivial")).unwrap();
        assert!(out["error"].is_string());
    }
}
