//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line
//! (visible with `--nocapture`) before asserting.

mod common;

use common::*;
use defring::bm::{bm_solve, cycle_cases, cycle_table, reduce_mod_l_rep, RepKind};
use defring::hilbert::{hilbert_function, hilbert_polynomial, reduce_mod_l};
use defring::{
    buchberger, charpoly_power, is_dgroebner, verify_presentation, Catalogue, CatalogueEntry, FlatnessVerdict, Ideal,
    MatrixPoly, Monomial, MonomialOrder, Poly, Scalar, VerificationReport, F3, Z3, Z5,
};
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const INSTANCES: usize = 500;

fn report(criterion: u32, title: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {criterion}: {title}");
    for f in failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {criterion} failed: {failures:?}");
}

fn expect(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

const TAU_ZETA: [&str; 4] = ["A'^2 + 4*B*C - 4*eta - eta^2", "B*Y - X*C", "A'*X - B*F", "A'*Y - C*F"];
const A_R: [&str; 6] = ["A^2 + B*C", "F^2 + 4*X*Y", "A*F + 2*C*X", "A*F + 2*B*Y", "2*A*X - B*F", "2*A*Y - C*F"];

fn tau_zeta_ideal() -> Ideal<Z3> {
    let ctx = ctx("F,A',B,C,X,Y", MonomialOrder::Lex);
    let gens: Vec<String> = TAU_ZETA.iter().map(|g| g.replace("eta", "(-3)")).collect();
    Ideal::parse(&ctx, &gens).unwrap()
}

fn j_generators(alpha: &str) -> Vec<String> {
    [
        "A^2 + B*C",
        "4*X*Y + (F - a)*(F + a)",
        "2*C*X + A*(F - a)",
        "2*B*Y + A*(F + a)",
        "2*A*X - B*(F - a)",
        "2*A*Y - C*(F + a)",
    ]
    .iter()
    .map(|g| g.replace('a', &format!("({alpha})")).to_string())
    .collect()
}

#[test]
fn criterion_1_dgroebner_certification() {
    let mut failures = Vec::new();
    let tz = tau_zeta_ideal();
    expect(&mut failures, is_dgroebner(tz.generators()), "tau_zeta generators under lex F>A'>B>C>X>Y");

    let j_ring = ctx("X,Y,A,B,C,F", MonomialOrder::Lex);
    for alpha in ["0", "-3/2"] {
        let j: Ideal<Z3> = Ideal::parse(&j_ring, &j_generators(alpha)).unwrap();
        expect(&mut failures, j.generators().len() == 6, format!("J (alpha = {alpha}) has six generators"));
        expect(&mut failures, is_dgroebner(j.generators()), format!("J generators (alpha = {alpha}) under lex X>Y>A>B>C>F"));
        if alpha == "0" {
            expect(&mut failures, j.generators().iter().all(|g| g.is_homogeneous()), "J at alpha = 0 is homogeneous");
        }
    }
    let a_r: Ideal<Z3> = Ideal::parse(&j_ring, &A_R).unwrap();
    expect(&mut failures, is_dgroebner(a_r.generators()), "a_r generators under lex X>Y>A>B>C>F");
    // a sanity check that the test can fail: a_r without its last generator is not a basis
    expect(&mut failures, !is_dgroebner(&a_r.generators()[..5]), "truncated a_r is rejected");
    report(1, "D-Groebner certification", &failures);
}

#[test]
fn criterion_2_flatness_certificates() {
    let mut failures = Vec::new();
    let cert = tau_zeta_ideal().is_flat().unwrap();
    expect(&mut failures, cert.verdict == FlatnessVerdict::FlatByUnits, format!("tau_zeta: {:?}", cert.verdict));

    let p_ring = ctx("P", MonomialOrder::Lex);
    let i: Ideal<Z3> = Ideal::parse(&p_ring, &["3*P", "P^2"]).unwrap();
    let cert = i.is_flat().unwrap();
    expect(&mut failures, cert.verdict == FlatnessVerdict::NotFlat, "(3P, P^2) is not flat");
    expect(&mut failures, cert.witness.map(|w| w.to_string()) == Some("P".into()), "witness P");

    let v_ring = ctx("V',B,C", MonomialOrder::Lex);
    let i: Ideal<Z3> = Ideal::parse(&v_ring, &["C*V'", "B*V'", "4*B*C + 3"]).unwrap();
    let cert = i.is_flat().unwrap();
    expect(&mut failures, cert.verdict == FlatnessVerdict::NotFlat, "(CV', BV', 4BC+3) is not flat");
    expect(&mut failures, cert.witness.map(|w| w.to_string()) == Some("V'".into()), "witness V'");
    let sat = i.saturate_by_l().unwrap();
    let expected: Ideal<Z3> = Ideal::parse(&v_ring, &["V'", "4*B*C + 3"]).unwrap();
    expect(&mut failures, sat.equal(&expected), "saturation is (V', 4BC+3)");
    report(2, "flatness certificates", &failures);
}

fn run_entry(e: &CatalogueEntry) -> VerificationReport {
    match e.l {
        3 => verify_presentation(&e.spec::<Z3>(e.q).unwrap(), e).unwrap(),
        5 => verify_presentation(&e.spec::<Z5>(e.q).unwrap(), e).unwrap(),
        other => panic!("no catalogue entries expected at l = {other}"),
    }
}

#[test]
fn criterion_3_presentation_regeneration() {
    let mut failures = Vec::new();
    let catalogue = Catalogue::builtin();
    let params = [(3, 2), (3, 4), (5, 2)];
    let mut seen = Vec::new();
    for e in &catalogue.cases {
        expect(&mut failures, params.contains(&(e.l, e.q)), format!("{} {} at unexpected parameters", e.case_id, e.variant));
        let r = run_entry(e);
        expect(&mut failures, r.passed, format!("{} {} (l = {}, q = {})", e.case_id, e.variant, e.l, e.q));
        println!("    {} {}/{} (l = {}, q = {})", if r.passed { "ok  " } else { "FAIL" }, e.case_id, e.variant, e.l, e.q);
        seen.push(format!("{}/{}", e.case_id, e.variant));
    }
    for must in [
        "banal_unram/y_nonzero",
        "banal_ram/x_zero",
        "qplus1_tau1/x_zero",
        "qplus1_tauxi/x_zero",
        "qplus1_tauxi/x_zero_torsion",
        "qminus1_tau1/x_zero_y_nonzero",
        "qminus1_tau1/x_zero_y_zero",
        "no_ext_tau1/generic",
    ] {
        expect(&mut failures, seen.iter().any(|s| s == must), format!("catalogue lacks {must}"));
    }
    for (l, q) in params {
        expect(&mut failures, catalogue.cases.iter().any(|e| (e.l, e.q) == (l, q)), format!("no entry at l = {l}, q = {q}"));
    }
    report(3, "presentation regeneration", &failures);
}

#[test]
fn criterion_4_hilbert_multiplicities() {
    let mut failures = Vec::new();
    let ring = ctx("A,B,C,F,X,Y", MonomialOrder::Grevlex);
    let a_r: Ideal<Z3> = Ideal::parse(&ring, &A_R).unwrap();
    let a_m: Ideal<Z3> = Ideal::parse(&ring, &["A", "B", "C"]).unwrap();
    let special: Ideal<Z3> = Ideal::parse(&ring, &["A^2 + B*C", "2*A*X - B*F", "2*A*Y - C*F", "B*Y - C*X"]).unwrap();

    let h_r = hilbert_polynomial(&reduce_mod_l(&a_r).unwrap()).unwrap();
    let h_m = hilbert_polynomial(&reduce_mod_l(&a_m).unwrap()).unwrap();
    let h_i = hilbert_polynomial(&reduce_mod_l(&special).unwrap()).unwrap();
    expect(&mut failures, (h_r.dimension, h_r.degree) == (3, 4), format!("a_r: dimension {} degree {}", h_r.dimension, h_r.degree));
    expect(&mut failures, h_m.degree == 1, format!("(A,B,C): degree {}", h_m.degree));
    expect(&mut failures, (h_i.dimension, h_i.degree) == (3, 6), format!("special fibre: dimension {} degree {}", h_i.dimension, h_i.degree));
    expect(&mut failures, h_i.degree == 2 * h_m.degree + h_r.degree, "6 = 2*1 + 1*4");
    for g in special.generators() {
        expect(&mut failures, a_m.member(g), format!("{g} in a_m"));
        expect(&mut failures, a_r.member(g), format!("{g} in a_r"));
    }
    // lower-order terms are logged only
    println!("    Hilbert polynomial of a_r: {} (values {:?})", h_r.polynomial_string(), &h_r.values[..4]);
    expect(&mut failures, h_r.values[1] == 6, "h(1) = 6 for a_r");
    report(4, "Hilbert polynomial and multiplicities", &failures);
}

/// `m^q` for the generic matrix, reduced after every product by the basis of
/// the trace and determinant constraints.
fn brute_force_power(q: u64, trace: i64, det: i64) -> bool {
    let ring = ctx("a,b,c,d", MonomialOrder::Grevlex);
    let m = MatrixPoly::<Z3>::new(["a", "b", "c", "d"].map(|v| Poly::var_named(&ring, v).unwrap()));
    let constraints = buchberger(
        &ring,
        &[m.trace().sub(&Poly::constant(&ring, Z3::from_i64(trace))), m.det().sub(&Poly::constant(&ring, Z3::from_i64(det)))],
    );
    let mut acc = MatrixPoly::identity(&ring);
    for _ in 0..q {
        acc = acc.mul(&m).map(|p| constraints.normal_form(p));
    }
    let claimed = charpoly_power(q, &Z3::from_i64(trace), &Z3::from_i64(det)).apply(&m);
    acc.entries().iter().zip(claimed.entries()).all(|(x, y)| constraints.normal_form(&x.sub(y)).is_zero())
}

#[test]
fn criterion_5_cayley_hamilton_oracle() {
    let mut failures = Vec::new();
    for q in 1..=50u64 {
        let lf = charpoly_power(q, &Z3::from_i64(2), &Z3::one());
        let ok = lf.c1 == Z3::from_i64(q as i64) && lf.c0 == Z3::from_i64(1 - q as i64);
        expect(&mut failures, ok, format!("charpoly_power({q}, 2, 1) = {lf}"));
        expect(&mut failures, brute_force_power(q, 2, 1), format!("matrix power q = {q}, trace 2"));
    }
    let lf = charpoly_power(2, &Z3::from_i64(-1), &Z3::one());
    expect(&mut failures, lf.to_string() == "-t - 1", format!("charpoly_power(2, -1, 1) = {lf}"));
    expect(&mut failures, brute_force_power(2, -1, 1), "matrix power q = 2, trace -1");
    report(5, "Cayley-Hamilton oracle", &failures);
}

#[test]
fn criterion_6_breuil_mezard_solve() {
    let mut failures = Vec::new();
    let mut solved_cases = std::collections::BTreeSet::new();
    for (q, l) in [(2, 3), (4, 3), (2, 5)] {
        for case in cycle_cases() {
            if cycle_table(&case, q, l).is_err() {
                continue;
            }
            let s = bm_solve(&case, q, l).unwrap();
            expect(&mut failures, s.feasible && s.round_trip, format!("case {case} at q = {q}, l = {l}"));
            let line: Vec<String> = s.solution.iter().map(|c| format!("C[{}] = {}", c.label, c.cycle)).collect();
            println!("    case {case} (q = {q}, l = {l}): {}", line.join("; "));
            solved_cases.insert(case.split('_').next().unwrap().to_string());
        }
    }
    let all: Vec<String> = (1..=8).map(|i| i.to_string()).collect();
    expect(&mut failures, solved_cases.iter().cloned().collect::<Vec<_>>() == all, format!("cases solved: {solved_cases:?}"));

    let s = bm_solve("7", 2, 3).unwrap();
    expect(&mut failures, s.cycle_of(RepKind::OneDim).map(|c| c.to_string()) == Some("[a_m]".into()), "case 7: C[one_dim]");
    expect(&mut failures, s.cycle_of(RepKind::Pi1).map(|c| c.to_string()) == Some("[a_N] + [a_N']".into()), "case 7: C[pi1]");
    let s = bm_solve("8_split", 4, 3).unwrap();
    expect(&mut failures, s.cycle_of(RepKind::Steinberg).map(|c| c.to_string()) == Some("[a_m] + [a_r]".into()), "case 8: C[steinberg]");
    expect(&mut failures, s.cycle_of(RepKind::OneDim).map(|c| c.to_string()) == Some("[a_m]".into()), "case 8: C[one_dim]");
    report(6, "Breuil-Mezard solve", &failures);
}

#[test]
fn criterion_7_property_suites() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let xy = ctx("x,y", MonomialOrder::Lex);
    let x = Poly::<Z3>::var(&xy, 0);
    let y = Poly::<Z3>::var(&xy, 1);
    let one = Poly::<Z3>::one(&xy);
    let cofactors: Vec<Poly<Z3>> = vec![
        Poly::zero(&xy),
        one.clone(),
        one.neg(),
        one.scale(&Z3::from_i64(3)),
        x.clone(),
        y.clone(),
        x.add(&one),
        x.mul(&y).sub(&y.scale(&Z3::from_i64(2))),
    ];
    let points: [[i64; 2]; 5] = [[0, 0], [1, 1], [2, -1], [-3, 4], [5, 2]];

    // normal forms
    let mut bad = 0;
    for _ in 0..INSTANCES {
        let (g1, g2) = (random_poly(&mut rng, &xy, 3, 2), random_poly(&mut rng, &xy, 3, 2));
        let ideal = Ideal::new(&xy, vec![g1.clone(), g2.clone()]).unwrap();
        let basis = ideal.basis();
        let f = random_poly(&mut rng, &xy, 4, 3);
        let nf = basis.normal_form(&f);
        let mut ok = basis.normal_form(&nf) == nf;
        for c1 in &cofactors {
            for c2 in &cofactors {
                ok &= ideal.member(&c1.mul(&g1).add(&c2.mul(&g2)));
            }
        }
        for g in basis.generators().iter().chain(std::iter::once(&f).filter(|f| ideal.member(f))) {
            ok &= points.iter().all(|p| passes_point_test(g, ideal.generators(), p));
        }
        ok &= ideal.member(&f.sub(&nf));
        bad += usize::from(!ok);
    }
    expect(&mut failures, bad == 0, format!("normal form / membership: {bad} of {INSTANCES} failed"));

    // canonicality under shuffles
    let gv = ctx("x,y,z", MonomialOrder::Grevlex);
    let mut bad = 0;
    for _ in 0..INSTANCES {
        let mut gens: Vec<Poly<Z3>> = (0..3).map(|_| random_poly(&mut rng, &gv, 3, 2)).collect();
        let reference = buchberger(&gv, &gens);
        let h = random_poly(&mut rng, &gv, 2, 1);
        gens.push(gens[0].mul(&h).add(&gens[2]));
        gens.shuffle(&mut rng);
        bad += usize::from(buchberger(&gv, &gens).generators() != reference.generators());
    }
    expect(&mut failures, bad == 0, format!("canonicality: {bad} of {INSTANCES} failed"));

    // saturation
    let mut bad = 0;
    for _ in 0..INSTANCES {
        let i = random_ideal(&mut rng, &xy, 2);
        let extra = random_poly(&mut rng, &xy, 2, 2);
        let j = i.add(&Ideal::new(&xy, vec![extra]).unwrap()).unwrap();
        let f = if rng.gen_bool(0.5) { Poly::constant(&xy, Z3::lambda_pow(1)) } else { x.clone() };
        let si = i.saturate_by(&f).unwrap();
        let ok = si.contains_ideal(&i)
            && si.saturate_by(&f).unwrap().equal(&si)
            && j.saturate_by(&f).unwrap().contains_ideal(&si);
        bad += usize::from(!ok);
    }
    expect(&mut failures, bad == 0, format!("saturation: {bad} of {INSTANCES} failed"));

    // Hilbert functions of monomial ideals
    let mut bad = 0;
    for k in 0..INSTANCES {
        let n = k % 5 + 1;
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let c = defring::VarContext::new(&names, MonomialOrder::Grevlex).unwrap();
        let gens = random_monomial_gens(&mut rng, n);
        let polys = gens.iter().map(|e| Poly::term(&c, Monomial::from_exponents(e), F3::one())).collect();
        let ideal = Ideal::new(&c, polys).unwrap();
        let ok = (0..7).all(|d| hilbert_function(&ideal, d).unwrap() == brute_force_standard_count(&gens, n, d as u32));
        bad += usize::from(!ok);
    }
    expect(&mut failures, bad == 0, format!("Hilbert functions: {bad} of {INSTANCES} failed"));

    // dimension additivity of reductions
    let mut bad = 0;
    for _ in 0..INSTANCES {
        let (rep, q, l) = random_rep(&mut rng);
        let total: u64 = reduce_mod_l_rep(&rep, q, l).unwrap().iter().map(|(r, m)| r.dimension * u64::from(*m)).sum();
        bad += usize::from(total != rep.dimension);
    }
    expect(&mut failures, bad == 0, format!("dimension additivity: {bad} of {INSTANCES} failed"));

    report(7, "property suites, 500 instances each", &failures);
}

use rand::Rng;
