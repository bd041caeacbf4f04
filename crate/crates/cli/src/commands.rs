use std::collections::BTreeSet;
use std::time::Instant;

use defring::bm::{bm_solve, cycle_cases, BmSolution};
use defring::hilbert::{hilbert_polynomial_with, reduce_mod_l, DEFAULT_WINDOW};
use defring::{is_dgroebner, verify_presentation, CaseId, Catalogue, CatalogueEntry, DvrScalar, Ideal, Poly, Scalar};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::input;
use crate::{HilbertArgs, RingArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] defring::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

/// What a command produced, before it is rendered.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Value>,
    pub passed: bool,
    pub text: Vec<String>,
    pub timings: Map<String, Value>,
}

macro_rules! at_prime {
    ($l:expr, $f:ident($($arg:expr),*)) => {
        match $l {
            3 => $f::<3>($($arg),*),
            5 => $f::<5>($($arg),*),
            7 => $f::<7>($($arg),*),
            11 => $f::<11>($($arg),*),
            13 => $f::<13>($($arg),*),
            other => Err(CliError::Core(defring::Error::UnsupportedPrime(other))),
        }
    };
}

fn strings<C: Scalar>(ps: &[Poly<C>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn ring_inputs(a: &RingArgs, gens: &[String]) -> Value {
    json!({ "vars": a.vars, "order": a.order, "l": a.l, "gens": gens })
}

fn done(inputs: Value, outputs: Value, text: Vec<String>) -> Outcome {
    Outcome { inputs, outputs, passed: true, text, ..Outcome::default() }
}

pub fn gb(a: &RingArgs) -> Result<Outcome, CliError> {
    at_prime!(a.l, gb_at(a))
}

fn gb_at<const L: u64>(a: &RingArgs) -> Result<Outcome, CliError> {
    let ctx = input::context(&a.vars, &a.order)?;
    let ideal: Ideal<DvrScalar<L>> = input::ideal(&ctx, &a.gens)?;
    let given_is_basis = is_dgroebner(ideal.generators());
    let basis = ideal.basis();
    let gens = strings(basis.generators());
    let mut text = gens.clone();
    text.push(format!("all_hc_units: {}", basis.all_hc_units()));
    text.push(format!("generators form a basis: {given_is_basis}"));
    let outputs = json!({
        "basis": gens,
        "all_hc_units": basis.all_hc_units(),
        "unit_ideal": basis.is_unit_ideal(),
        "generators_are_dgroebner": given_is_basis,
    });
    Ok(done(ring_inputs(a, &strings(ideal.generators())), outputs, text))
}

pub fn member(a: &RingArgs, poly: &str) -> Result<Outcome, CliError> {
    at_prime!(a.l, member_at(a, poly))
}

fn member_at<const L: u64>(a: &RingArgs, poly: &str) -> Result<Outcome, CliError> {
    let ctx = input::context(&a.vars, &a.order)?;
    let ideal: Ideal<DvrScalar<L>> = input::ideal(&ctx, &a.gens)?;
    let f: Poly<DvrScalar<L>> = input::poly(&ctx, poly)?;
    let remainder = ideal.basis().normal_form(&f);
    let is_member = remainder.is_zero();
    let mut inputs = ring_inputs(a, &strings(ideal.generators()));
    inputs["poly"] = json!(f.to_string());
    let outputs = json!({ "member": is_member, "normal_form": remainder.to_string() });
    Ok(done(inputs, outputs, vec![format!("member: {is_member}"), format!("normal form: {remainder}")]))
}

pub fn equal(a: &RingArgs, other: &str) -> Result<Outcome, CliError> {
    at_prime!(a.l, equal_at(a, other))
}

fn equal_at<const L: u64>(a: &RingArgs, other: &str) -> Result<Outcome, CliError> {
    let ctx = input::context(&a.vars, &a.order)?;
    let i: Ideal<DvrScalar<L>> = input::ideal(&ctx, &a.gens)?;
    let j: Ideal<DvrScalar<L>> = input::ideal(&ctx, other)?;
    let missing_from_first = strings(&i.missing_from(&j));
    let missing_from_second = strings(&j.missing_from(&i));
    let is_equal = missing_from_first.is_empty() && missing_from_second.is_empty();
    let mut inputs = ring_inputs(a, &strings(i.generators()));
    inputs["other"] = json!(strings(j.generators()));
    let outputs = json!({
        "equal": is_equal,
        "other_not_in_first": missing_from_first,
        "first_not_in_other": missing_from_second,
    });
    Ok(done(inputs, outputs, vec![format!("equal: {is_equal}")]))
}

pub fn intersect(a: &RingArgs, other: &str) -> Result<Outcome, CliError> {
    at_prime!(a.l, intersect_at(a, other))
}

fn intersect_at<const L: u64>(a: &RingArgs, other: &str) -> Result<Outcome, CliError> {
    let ctx = input::context(&a.vars, &a.order)?;
    let i: Ideal<DvrScalar<L>> = input::ideal(&ctx, &a.gens)?;
    let j: Ideal<DvrScalar<L>> = input::ideal(&ctx, other)?;
    let meet = i.intersect(&j)?;
    let basis = strings(meet.basis().generators());
    let mut inputs = ring_inputs(a, &strings(i.generators()));
    inputs["other"] = json!(strings(j.generators()));
    Ok(done(inputs, json!({ "basis": basis }), basis.clone()))
}

pub fn saturate(a: &RingArgs, by: &str) -> Result<Outcome, CliError> {
    at_prime!(a.l, saturate_at(a, by))
}

fn saturate_at<const L: u64>(a: &RingArgs, by: &str) -> Result<Outcome, CliError> {
    let ctx = input::context(&a.vars, &a.order)?;
    let i: Ideal<DvrScalar<L>> = input::ideal(&ctx, &a.gens)?;
    let sat = if by.trim() == "l" { i.saturate_by_l()? } else { i.saturate_by(&input::poly(&ctx, by)?)? };
    let basis = strings(sat.basis().generators());
    let changed = !sat.equal(&i);
    let mut inputs = ring_inputs(a, &strings(i.generators()));
    inputs["by"] = json!(by.trim());
    let mut text = basis.clone();
    text.push(format!("changed: {changed}"));
    Ok(done(inputs, json!({ "basis": basis, "changed": changed }), text))
}

pub fn hilbert(a: &HilbertArgs) -> Result<Outcome, CliError> {
    at_prime!(a.ring.l, hilbert_at(a))
}

fn hilbert_at<const L: u64>(a: &HilbertArgs) -> Result<Outcome, CliError> {
    let ctx = input::context(&a.ring.vars, &a.ring.order)?;
    let ideal: Ideal<DvrScalar<L>> = input::ideal(&ctx, &a.ring.gens)?;
    let special = reduce_mod_l(&ideal)?;
    let data = hilbert_polynomial_with(&special, a.horizon, DEFAULT_WINDOW)?;
    let polynomial = data.polynomial_string();
    let mut inputs = ring_inputs(&a.ring, &strings(ideal.generators()));
    inputs["horizon"] = json!(a.horizon);
    let mut outputs = serde_json::to_value(&data).expect("hilbert data serializes");
    outputs["polynomial"] = json!(polynomial);
    outputs["special_fibre_basis"] = json!(strings(special.basis().generators()));
    let values: Vec<String> = data.values.iter().map(|v| v.to_string()).collect();
    let text = vec![
        format!("values: {}", values.join(", ")),
        format!("polynomial: {polynomial}"),
        format!("dimension: {}", data.dimension),
        format!("degree: {}", data.degree),
    ];
    Ok(done(inputs, outputs, text))
}

fn verify_entry<const L: u64>(entry: &CatalogueEntry) -> Result<Value, CliError> {
    let spec = entry.spec::<DvrScalar<L>>(entry.q)?;
    let report = verify_presentation(&spec, entry)?;
    Ok(serde_json::to_value(&report).expect("report serializes"))
}

fn bm_line(s: &BmSolution) -> String {
    let parts: Vec<String> = s.solution.iter().map(|c| format!("C[{}] = {}", c.label, c.cycle)).collect();
    let status = if s.feasible && s.round_trip { "PASS" } else { "FAIL" };
    format!("{status} bm/{} (l = {}, q = {}): {}", s.case, s.l, s.q, parts.join("; "))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let catalogue = match &a.catalogue {
        Some(path) => Catalogue::from_path(path)?,
        None => Catalogue::builtin(),
    };
    let (want_presentations, want_bm, case_filter) = match a.case.as_str() {
        "all" => (true, true, None),
        "bm" => (false, true, None),
        id => (true, false, Some(id.parse::<CaseId>()?)),
    };
    let selected: Vec<&CatalogueEntry> = catalogue
        .cases
        .iter()
        .filter(|e| case_filter.is_none_or(|c| e.case_id == c))
        .filter(|e| a.l.is_none_or(|l| e.l == l))
        .filter(|e| a.q.is_none_or(|q| e.q == q))
        .collect();
    if want_presentations && selected.is_empty() {
        return Err(CliError::Usage(format!(
            "no catalogue entry for case {} with l = {:?}, q = {:?}",
            a.case, a.l, a.q
        )));
    }

    let mut out = Outcome { passed: true, ..Outcome::default() };
    let mut presentations = Vec::new();
    if want_presentations {
        for entry in &selected {
            let start = Instant::now();
            let report = at_prime!(entry.l, verify_entry(entry))?;
            let key = format!("{}/{}", entry.case_id, entry.variant);
            out.timings.insert(key.clone(), json!(start.elapsed().as_secs_f64() * 1e3));
            let passed = report["passed"].as_bool().unwrap_or(false);
            let witness = report["checks"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(|c| c["flatness"]["witness"].as_str())
                .next()
                .map(|w| format!(" [torsion witness {w}]"))
                .unwrap_or_default();
            let status = if passed { "PASS" } else { "FAIL" };
            out.text.push(format!("{status} {key} (l = {}, q = {}): {}{witness}", entry.l, entry.q, entry.claim));
            out.checks.push(json!({ "name": key, "l": entry.l, "q": entry.q, "claim": entry.claim, "passed": passed }));
            out.passed &= passed;
            presentations.push(report);
        }
    }

    let mut solutions = Vec::new();
    if want_bm {
        let params: BTreeSet<(u64, u64)> = match (a.l, a.q) {
            (Some(l), Some(q)) => [(l, q)].into(),
            _ => selected.iter().map(|e| (e.l, e.q)).collect(),
        };
        for (l, q) in params {
            for case in cycle_cases() {
                // cases whose congruence condition fails are skipped, not failed
                let Ok(s) = bm_solve(&case, q, l) else { continue };
                let passed = s.feasible && s.round_trip;
                out.text.push(bm_line(&s));
                out.checks.push(json!({ "name": format!("bm/{case}"), "l": l, "q": q, "passed": passed }));
                out.passed &= passed;
                solutions.push(serde_json::to_value(&s).expect("solution serializes"));
            }
        }
    }

    let total = out.checks.len();
    let failed = out.checks.iter().filter(|c| c["passed"] == json!(false)).count();
    out.text.push(format!("{} of {total} checks passed", total - failed));
    out.inputs = json!({ "case": a.case, "l": a.l, "q": a.q, "catalogue": a.catalogue.as_ref().map(|p| p.display().to_string()) });
    out.outputs = json!({ "presentations": presentations, "cycles": solutions });
    Ok(out)
}
