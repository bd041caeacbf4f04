//! Equation ideals of framed deformation rings built from 2×2 matrices, and
//! their comparison with known presentations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{FlatnessVerdict, Ideal};
use crate::poly::{Ctx, MonomialOrder, Poly, VarContext};
use crate::scalar::Scalar;

/// A 2×2 matrix `[[a, b], [c, d]]` of polynomials in one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPoly<C: Scalar> {
    entries: [Poly<C>; 4],
}

impl<C: Scalar> MatrixPoly<C> {
    pub fn new(entries: [Poly<C>; 4]) -> Self {
        MatrixPoly { entries }
    }

    pub fn scalar(ctx: &Ctx, c: C) -> Self {
        let z = Poly::zero(ctx);
        let c = Poly::constant(ctx, c);
        MatrixPoly { entries: [c.clone(), z.clone(), z, c] }
    }

    pub fn identity(ctx: &Ctx) -> Self {
        Self::scalar(ctx, C::one())
    }

    pub fn parse_with(texts: &[String; 4], ctx: &Ctx, consts: &HashMap<String, C>) -> Result<Self> {
        let [a, b, c, d] = texts;
        Ok(MatrixPoly {
            entries: [
                Poly::parse_with(a, ctx, consts)?,
                Poly::parse_with(b, ctx, consts)?,
                Poly::parse_with(c, ctx, consts)?,
                Poly::parse_with(d, ctx, consts)?,
            ],
        })
    }

    pub fn entries(&self) -> &[Poly<C>; 4] {
        &self.entries
    }

    pub fn ctx(&self) -> &Ctx {
        self.entries[0].ctx()
    }

    pub fn add(&self, other: &Self) -> Self {
        MatrixPoly { entries: std::array::from_fn(|i| self.entries[i].add(&other.entries[i])) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        MatrixPoly { entries: std::array::from_fn(|i| self.entries[i].sub(&other.entries[i])) }
    }

    pub fn scale(&self, c: &C) -> Self {
        MatrixPoly { entries: std::array::from_fn(|i| self.entries[i].scale(c)) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        MatrixPoly {
            entries: [
                a.mul(e).add(&b.mul(g)),
                a.mul(f).add(&b.mul(h)),
                c.mul(e).add(&d.mul(g)),
                c.mul(f).add(&d.mul(h)),
            ],
        }
    }

    pub fn map(&self, f: impl Fn(&Poly<C>) -> Poly<C>) -> Self {
        MatrixPoly { entries: std::array::from_fn(|i| f(&self.entries[i])) }
    }

    pub fn det(&self) -> Poly<C> {
        let [a, b, c, d] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn trace(&self) -> Poly<C> {
        self.entries[0].add(&self.entries[3])
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// `c1*t + c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm<C: Scalar> {
    pub c1: C,
    pub c0: C,
}

impl<C: Scalar> LinearForm<C> {
    /// `c1*M + c0*I`.
    pub fn apply(&self, m: &MatrixPoly<C>) -> MatrixPoly<C> {
        m.scale(&self.c1).add(&MatrixPoly::scalar(m.ctx(), self.c0.clone()))
    }
}

impl<C: Scalar> fmt::Display for LinearForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = VarContext::new(&["t"], MonomialOrder::Lex).expect("valid name");
        let p = Poly::var(&ctx, 0).scale(&self.c1).add(&Poly::constant(&ctx, self.c0.clone()));
        write!(f, "{p}")
    }
}

/// `t^q` modulo `t^2 - trace*t + det`, by square-and-multiply.
pub fn charpoly_power<C: Scalar>(q: u64, trace: &C, det: &C) -> LinearForm<C> {
    // (a t + b)(c t + d) = (ad + bc + ac*tr) t + (bd - ac*det)
    let mul = |x: &LinearForm<C>, y: &LinearForm<C>| {
        let ac = x.c1.mul_ref(&y.c1);
        LinearForm {
            c1: x.c1.mul_ref(&y.c0).add_ref(&x.c0.mul_ref(&y.c1)).add_ref(&ac.mul_ref(trace)),
            c0: x.c0.mul_ref(&y.c0).sub_ref(&ac.mul_ref(det)),
        }
    };
    let mut acc = LinearForm { c1: C::zero(), c0: C::one() };
    let mut base = LinearForm { c1: C::one(), c0: C::zero() };
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    NoExtTau1,
    NoExtTauzeta,
    BanalUnram,
    BanalRam,
    Qplus1Tau1,
    Qplus1Tauxi,
    Qminus1Tauzeta,
    Qminus1Tau1,
    CharacterDeformation,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::NoExtTau1,
        CaseId::NoExtTauzeta,
        CaseId::BanalUnram,
        CaseId::BanalRam,
        CaseId::Qplus1Tau1,
        CaseId::Qplus1Tauxi,
        CaseId::Qminus1Tauzeta,
        CaseId::Qminus1Tau1,
        CaseId::CharacterDeformation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::NoExtTau1 => "no_ext_tau1",
            CaseId::NoExtTauzeta => "no_ext_tauzeta",
            CaseId::BanalUnram => "banal_unram",
            CaseId::BanalRam => "banal_ram",
            CaseId::Qplus1Tau1 => "qplus1_tau1",
            CaseId::Qplus1Tauxi => "qplus1_tauxi",
            CaseId::Qminus1Tauzeta => "qminus1_tauzeta",
            CaseId::Qminus1Tau1 => "qminus1_tau1",
            CaseId::CharacterDeformation => "character_deformation",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidCase(format!("unknown case '{s}'")))
    }
}

fn vl(mut n: u64, l: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(l) {
        n /= l;
        v += 1;
    }
    v
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

/// Parameters of one case together with the constants it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSpec<C: Scalar> {
    pub case_id: CaseId,
    pub q: u64,
    pub l: u64,
    pub x_zero: bool,
    pub y_zero: bool,
    pub a: u32,
    pub b: u32,
    /// `zeta + 1/zeta - 2` for a root of unity of order 3.
    pub eta: Option<C>,
    /// `xi + 1/xi - 2` for a root of unity of order 3.
    pub kappa: Option<C>,
    /// The square root of `q` congruent to 1 mod `l`.
    pub sqrt_q: Option<C>,
    /// `(q - 1)/sqrt(q)`.
    pub alpha: Option<C>,
}

impl<C: Scalar> CaseSpec<C> {
    pub fn new(case_id: CaseId, q: u64, x_zero: bool, y_zero: bool) -> Result<Self> {
        let l = C::prime();
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if !is_prime_power(q) {
            return bad(format!("q = {q} is not a prime power"));
        }
        if q.is_multiple_of(l) {
            return bad(format!("l = {l} divides q = {q}"));
        }
        let a = vl(q - 1, l);
        let b = vl(q + 1, l);
        let order_three = |v: u32| (l == 3 && v >= 1).then(|| C::from_i64(-3));
        let eta = order_three(a);
        let kappa = order_three(b);
        let root = (1..=q).find(|s| s * s == q);
        let sqrt_q = root.and_then(|s| {
            let s = s as i64;
            [s, -s].into_iter().find(|r| r.rem_euclid(l as i64) == 1).map(C::from_i64)
        });
        let alpha = sqrt_q.as_ref().and_then(|s| C::from_i64(q as i64 - 1).try_div(s));

        let need = |ok: bool, what: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!("{case_id} needs {what} (l = {l}, q = {q})")))
            }
        };
        match case_id {
            CaseId::NoExtTau1 => need(!(q + 1).is_multiple_of(l), "q != -1 mod l")?,
            CaseId::NoExtTauzeta | CaseId::Qminus1Tauzeta => need(eta.is_some(), "l | q - 1 with l = 3")?,
            CaseId::BanalUnram | CaseId::BanalRam => need(a == 0 && b == 0, "l not dividing q^2 - 1")?,
            CaseId::Qplus1Tau1 => need(b > 0, "l | q + 1")?,
            CaseId::Qplus1Tauxi => need(kappa.is_some(), "l | q + 1 with l = 3")?,
            CaseId::Qminus1Tau1 => need(a > 0 && alpha.is_some(), "l | q - 1 and a square q")?,
            CaseId::CharacterDeformation => need(a > 0, "l | q - 1")?,
        }
        Ok(CaseSpec { case_id, q, l, x_zero, y_zero, a, b, eta, kappa, sqrt_q, alpha })
    }

    /// Trace of the image of `sigma` prescribed by the type.
    pub fn type_trace(&self) -> C {
        let two = C::from_i64(2);
        match self.case_id {
            CaseId::NoExtTauzeta | CaseId::Qminus1Tauzeta => two.add_ref(self.eta.as_ref().unwrap()),
            CaseId::Qplus1Tauxi => two.add_ref(self.kappa.as_ref().unwrap()),
            _ => two,
        }
    }

    /// Named constants usable in catalogue expressions.
    pub fn constants(&self) -> HashMap<String, C> {
        let mut m = HashMap::new();
        m.insert("q".to_string(), C::from_i64(self.q as i64));
        m.insert("x".to_string(), C::from_i64(if self.x_zero { 0 } else { 1 }));
        m.insert("y".to_string(), C::from_i64(if self.y_zero { 0 } else { 1 }));
        let named = [("eta", &self.eta), ("kappa", &self.kappa), ("sqrtq", &self.sqrt_q), ("alpha", &self.alpha)];
        for (name, value) in named {
            if let Some(v) = value {
                m.insert(name.to_string(), v.clone());
            }
        }
        if let Some(s) = &self.sqrt_q {
            if let Some(g) = C::from_i64(self.q as i64 + 1).try_div(s) {
                m.insert("gamma".to_string(), g);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Number of recipe steps applied before comparing; all of them if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub after: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
    /// Target given as an intersection of ideals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<String>>>,
    /// Variable renaming applied to the target before comparison.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rename: BTreeMap<String, String>,
    /// Saturations applied to the target, for presentations that invert a
    /// local unit.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target_steps: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<FlatnessVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub case_id: CaseId,
    pub variant: String,
    pub claim: String,
    pub l: u64,
    pub q: u64,
    #[serde(default = "yes")]
    pub x_zero: bool,
    #[serde(default = "yes")]
    pub y_zero: bool,
    pub vars: Vec<String>,
    #[serde(default = "lex")]
    pub order: MonomialOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<[String; 4]>,
    /// Prescribed determinant of the image of `phi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_phi: Option<String>,
    /// Closed-form generators, used instead of the matrix relation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    /// Saturation recipe: `"l"` or a polynomial.
    #[serde(default)]
    pub steps: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reducedness: Option<String>,
}

fn yes() -> bool {
    true
}

fn lex() -> MonomialOrder {
    MonomialOrder::Lex
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalogue {
    pub schema: String,
    pub cases: Vec<CatalogueEntry>,
}

const BUILTIN: &str = include_str!("../data/catalogue.json");

impl Catalogue {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled catalogue parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Catalogue(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Catalogue(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn entries(&self, case_id: CaseId) -> impl Iterator<Item = &CatalogueEntry> {
        self.cases.iter().filter(move |c| c.case_id == case_id)
    }
}

impl CatalogueEntry {
    pub fn spec<C: Scalar>(&self, q: u64) -> Result<CaseSpec<C>> {
        CaseSpec::new(self.case_id, q, self.x_zero, self.y_zero)
    }

    pub fn context(&self) -> Result<Ctx> {
        VarContext::new(&self.vars, self.order)
    }
}

fn parse_all<C: Scalar>(texts: &[String], ctx: &Ctx, consts: &HashMap<String, C>) -> Result<Vec<Poly<C>>> {
    texts.iter().map(|t| Poly::parse_with(t, ctx, consts)).collect()
}

/// The equations of the case: entries of `Phi*Sigma - Sigma^q*Phi` with
/// `Sigma^q` from [`charpoly_power`], together with `det Sigma - 1`,
/// `tr Sigma - trace(type)` and `det Phi - psi(phi)`.
pub fn relation_ideal<C: Scalar>(spec: &CaseSpec<C>, entry: &CatalogueEntry) -> Result<Ideal<C>> {
    let ctx = entry.context()?;
    let consts = spec.constants();
    if let Some(gens) = &entry.generators {
        return Ideal::new(&ctx, parse_all(gens, &ctx, &consts)?);
    }
    let (Some(sigma), Some(phi), Some(det_phi)) = (&entry.sigma, &entry.phi, &entry.det_phi) else {
        return Err(Error::Catalogue(format!("{} {}: missing matrices", entry.case_id, entry.variant)));
    };
    let sigma = MatrixPoly::parse_with(sigma, &ctx, &consts)?;
    let phi = MatrixPoly::parse_with(phi, &ctx, &consts)?;
    let det_phi = Poly::parse_with(det_phi, &ctx, &consts)?;
    let trace = spec.type_trace();
    let power = charpoly_power(spec.q, &trace, &C::one()).apply(&sigma);
    let relation = phi.mul(&sigma).sub(&power.mul(&phi));
    let mut gens: Vec<Poly<C>> = relation.entries().to_vec();
    gens.push(sigma.det().sub(&Poly::one(&ctx)));
    gens.push(sigma.trace().sub(&Poly::constant(&ctx, trace)));
    gens.push(phi.det().sub(&det_phi));
    Ideal::new(&ctx, gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub verdict: FlatnessVerdict,
    pub witness: Option<String>,
    pub expected: FlatnessVerdict,
    pub expected_witness: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub after_step: usize,
    pub target: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub equal: Option<bool>,
    /// Target generators outside the computed ideal.
    pub target_not_in_computed: Vec<String>,
    /// Computed basis elements outside the target ideal.
    pub computed_not_in_target: Vec<String>,
    pub flatness: Option<FlatnessReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case_id: CaseId,
    pub variant: String,
    pub l: u64,
    pub q: u64,
    pub claim: String,
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub raw: Vec<String>,
    pub steps: Vec<StepReport>,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reducedness: Option<String>,
    pub passed: bool,
}

fn strings<C: Scalar>(ps: &[Poly<C>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn parse_step<C: Scalar>(step: &str, ctx: &Ctx, consts: &HashMap<String, C>) -> Result<Poly<C>> {
    if step.trim() == "l" {
        Ok(Poly::constant(ctx, C::lambda_pow(1)))
    } else {
        Poly::parse_with(step, ctx, consts)
    }
}

fn renamed<C: Scalar>(p: Poly<C>, rename: &BTreeMap<String, String>) -> Result<Poly<C>> {
    if rename.is_empty() {
        return Ok(p);
    }
    let ctx = p.ctx().clone();
    let mut images = vec![None; ctx.nvars()];
    for (from, to) in rename {
        let i = ctx.index_of(from).ok_or_else(|| Error::Catalogue(format!("rename of unknown variable '{from}'")))?;
        images[i] = Some(Poly::var_named(&ctx, to)?);
    }
    p.substitute(&ctx, &images)
}

/// Builds the relation ideal, applies the saturation recipe and runs every
/// check of the entry. Failed comparisons are reported, not raised.
pub fn verify_presentation<C: Scalar>(spec: &CaseSpec<C>, entry: &CatalogueEntry) -> Result<VerificationReport> {
    let ctx = entry.context()?;
    let consts = spec.constants();
    let raw = relation_ideal(spec, entry)?;

    let mut stages = vec![raw.clone()];
    let mut steps = Vec::new();
    for step in &entry.steps {
        let f = parse_step(step, &ctx, &consts)?;
        let next = stages.last().unwrap().saturate_by(&f)?;
        steps.push(StepReport { step: format!("saturate by {step}"), basis: strings(next.basis().generators()) });
        stages.push(next);
    }

    let mut checks = Vec::new();
    for check in &entry.checks {
        let after = check.after.unwrap_or(entry.steps.len()).min(entry.steps.len());
        let computed = &stages[after];
        let mut report = CheckReport {
            after_step: after,
            target: Vec::new(),
            components: Vec::new(),
            note: check.note.clone(),
            equal: None,
            target_not_in_computed: Vec::new(),
            computed_not_in_target: Vec::new(),
            flatness: None,
            passed: true,
        };

        let target = match (&check.target, &check.components) {
            (Some(t), _) => {
                let gens = parse_all(t, &ctx, &consts)?
                    .into_iter()
                    .map(|p| renamed(p, &check.rename))
                    .collect::<Result<Vec<_>>>()?;
                report.target = strings(&gens);
                Some(Ideal::new(&ctx, gens)?)
            }
            (None, Some(parts)) => {
                let mut acc: Option<Ideal<C>> = None;
                for part in parts {
                    let gens = parse_all(part, &ctx, &consts)?
                        .into_iter()
                        .map(|p| renamed(p, &check.rename))
                        .collect::<Result<Vec<_>>>()?;
                    report.components.push(strings(&gens));
                    let ideal = Ideal::new(&ctx, gens)?;
                    acc = Some(match acc {
                        None => ideal,
                        Some(prev) => prev.intersect(&ideal)?,
                    });
                }
                let acc = acc.ok_or_else(|| Error::Catalogue("empty component list".into()))?;
                report.target = strings(acc.basis().generators());
                Some(acc)
            }
            (None, None) => None,
        };
        let target = match target {
            Some(mut t) => {
                for step in &check.target_steps {
                    t = t.saturate_by(&parse_step(step, &ctx, &consts)?)?;
                }
                if !check.target_steps.is_empty() {
                    report.target = strings(t.basis().generators());
                }
                Some(t)
            }
            None => None,
        };
        if let Some(target) = target {
            let computed_basis = Ideal::new(&ctx, computed.basis().generators().to_vec())?;
            report.target_not_in_computed = strings(&computed.missing_from(&target));
            report.computed_not_in_target = strings(&target.missing_from(&computed_basis));
            let equal = report.target_not_in_computed.is_empty() && report.computed_not_in_target.is_empty();
            report.equal = Some(equal);
            report.passed &= equal;
        }
        if let Some(expected) = check.flat {
            let cert = computed.is_flat()?;
            let expected_witness = match &check.witness {
                Some(w) => Some(Poly::parse_with(w, &ctx, &consts)?),
                None => None,
            };
            let ok = cert.verdict == expected && (expected_witness.is_none() || expected_witness == cert.witness);
            report.flatness = Some(FlatnessReport {
                verdict: cert.verdict,
                witness: cert.witness.map(|w| w.to_string()),
                expected,
                expected_witness: expected_witness.map(|w| w.to_string()),
                ok,
            });
            report.passed &= ok;
        }
        checks.push(report);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        case_id: entry.case_id,
        variant: entry.variant.clone(),
        l: spec.l,
        q: spec.q,
        claim: entry.claim.clone(),
        variables: entry.vars.clone(),
        order: entry.order,
        raw: strings(raw.generators()),
        steps,
        checks,
        reducedness: entry.reducedness.clone(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DvrScalar;
    use num_traits::Zero;

    type Z3 = DvrScalar<3>;
    type Z5 = DvrScalar<5>;

    fn z(n: i64) -> Z3 {
        Z3::from_i64(n)
    }

    fn entry(case_id: CaseId, variant: &str) -> CatalogueEntry {
        Catalogue::builtin().entries(case_id).find(|e| e.variant == variant).unwrap().clone()
    }

    fn evaluate<C: Scalar>(p: &Poly<C>, point: &[(&str, C)]) -> C {
        let ctx = p.ctx();
        let mut images = vec![None; ctx.nvars()];
        for (name, value) in point {
            images[ctx.index_of(name).unwrap()] = Some(Poly::constant(ctx, value.clone()));
        }
        let v = p.substitute(ctx, &images).unwrap();
        assert!(v.is_constant(), "{v} still has variables");
        v.constant_coeff()
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly_power(4, &z(2), &z(1)), LinearForm { c1: z(4), c0: z(-3) });
        assert_eq!(charpoly_power(2, &z(-1), &z(1)), LinearForm { c1: z(-1), c0: z(-1) });
        assert_eq!(charpoly_power(1, &z(7), &z(5)), LinearForm { c1: z(1), c0: z(0) });
        assert_eq!(charpoly_power(4, &z(2), &z(1)).to_string(), "4*t - 3");
    }

    #[test]
    fn charpoly_matches_matrix_power() {
        let ctx = VarContext::parse("a,b,c,d", MonomialOrder::Lex).unwrap();
        let m = MatrixPoly::parse_with(&["a", "b", "c", "d"].map(String::from), &ctx, &HashMap::new()).unwrap();
        for (tr, det) in [(2, 1), (-1, 1), (3, 2)] {
            let constraints = Ideal::new(
                &ctx,
                vec![m.trace().sub(&Poly::constant(&ctx, z(tr))), m.det().sub(&Poly::constant(&ctx, z(det)))],
            )
            .unwrap();
            for q in 1..=9 {
                let lhs = m.pow(q);
                let rhs = charpoly_power(q, &z(tr), &z(det)).apply(&m);
                for (x, y) in lhs.entries().iter().zip(rhs.entries()) {
                    assert!(constraints.member(&x.sub(y)), "q = {q}, trace {tr}, det {det}");
                }
            }
        }
    }

    #[test]
    fn case_spec_constants() {
        let s = CaseSpec::<Z3>::new(CaseId::Qminus1Tau1, 4, true, true).unwrap();
        assert_eq!((s.a, s.b), (1, 0));
        assert_eq!(s.sqrt_q, Some(z(-2)));
        assert_eq!(s.alpha, Some(z(3).try_div(&z(-2)).unwrap()));
        assert_eq!(s.eta, Some(z(-3)));
        assert_eq!(s.constants()["gamma"], z(5).try_div(&z(-2)).unwrap());

        let s = CaseSpec::<Z3>::new(CaseId::Qplus1Tauxi, 2, true, true).unwrap();
        assert_eq!((s.a, s.b, s.kappa.clone()), (0, 1, Some(z(-3))));
        assert_eq!(s.type_trace(), z(-1));
    }

    #[test]
    fn invalid_specs() {
        assert!(CaseSpec::<Z3>::new(CaseId::Qplus1Tau1, 4, true, true).is_err());
        assert!(CaseSpec::<Z3>::new(CaseId::Qminus1Tau1, 2, true, true).is_err());
        assert!(CaseSpec::<Z3>::new(CaseId::NoExtTau1, 9, true, true).is_err());
        assert!(CaseSpec::<Z3>::new(CaseId::NoExtTau1, 6, true, true).is_err());
        assert!(CaseSpec::<Z5>::new(CaseId::BanalRam, 4, true, true).is_err());
        assert!(CaseSpec::<Z5>::new(CaseId::BanalRam, 2, true, true).is_ok());
        // q = 7 is not a square, so alpha is irrational
        assert!(CaseSpec::<Z3>::new(CaseId::Qminus1Tau1, 7, true, true).is_err());
        assert!("qplus2".parse::<CaseId>().is_err());
        assert_eq!("banal_ram".parse::<CaseId>().unwrap(), CaseId::BanalRam);
    }

    #[test]
    fn shifted_form_of_the_relation() {
        // with N = Sigma - I and P = Phi - I the relation reads
        // Phi N - N Phi = (q - 1) N (I + P)
        let e = entry(CaseId::Qminus1Tau1, "x_zero_y_zero");
        let spec = e.spec::<Z3>(4).unwrap();
        let ctx = e.context().unwrap();
        let consts = spec.constants();
        let sigma = MatrixPoly::parse_with(e.sigma.as_ref().unwrap(), &ctx, &consts).unwrap();
        let phi = MatrixPoly::parse_with(e.phi.as_ref().unwrap(), &ctx, &consts).unwrap();
        let n = sigma.sub(&MatrixPoly::identity(&ctx));
        let shifted = phi.mul(&n).sub(&n.mul(&phi)).sub(&n.mul(&phi).scale(&z(3)));
        let mut gens = shifted.entries().to_vec();
        gens.push(sigma.det().sub(&Poly::one(&ctx)));
        gens.push(sigma.trace().sub(&Poly::constant(&ctx, z(2))));
        gens.push(phi.det().sub(&Poly::one(&ctx)));
        let simplified = Ideal::new(&ctx, gens).unwrap();
        let raw = relation_ideal(&spec, &e).unwrap();
        assert!(raw.equal(&simplified));
    }

    #[test]
    fn numeric_points_satisfy_the_relations() {
        // Sigma unipotent, Phi = diag(q, 1)
        let e = entry(CaseId::BanalRam, "x_zero");
        let spec = e.spec::<Z5>(2).unwrap();
        let raw = relation_ideal(&spec, &e).unwrap();
        let zero = Z5::from_i64(0);
        let point = [("A", zero.clone()), ("B", Z5::from_i64(7)), ("C", zero.clone()), ("D", zero.clone()), ("W", zero.clone()), ("Z", zero)];
        for g in raw.generators() {
            assert!(evaluate(g, &point).is_zero(), "{g}");
        }

        // Sigma = Phi = [[0, -1], [1, -1]], of order 3
        let e = entry(CaseId::Qminus1Tauzeta, "x_zero_y_zero");
        let spec = e.spec::<Z3>(4).unwrap();
        let raw = relation_ideal(&spec, &e).unwrap();
        let point = [("A'", z(1)), ("B", z(-1)), ("C", z(1)), ("E", z(-3)), ("F", z(1)), ("X", z(-1)), ("Y", z(1))];
        for g in raw.generators() {
            assert!(evaluate(g, &point).is_zero(), "{g}");
        }
        // and a point off the relation is detected
        let point = [("A'", z(1)), ("B", z(-1)), ("C", z(1)), ("E", z(2)), ("F", z(0)), ("X", z(0)), ("Y", z(0))];
        assert!(raw.generators().iter().any(|g| !evaluate(g, &point).is_zero()));
    }

    #[test]
    fn raw_torsion_ideal() {
        let e = entry(CaseId::Qplus1Tauxi, "x_zero_torsion");
        let spec = e.spec::<Z3>(2).unwrap();
        let raw = relation_ideal(&spec, &e).unwrap();
        let strs: Vec<String> = raw.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, ["V'*C", "V'*B", "4*B*C + 3"]);
        let sat = raw.saturate_by_l().unwrap();
        assert!(sat.equal(&Ideal::parse(raw.ctx(), &["V'", "4*B*C+3"]).unwrap()));
    }

    #[test]
    fn builtin_catalogue_verifies() {
        let cat = Catalogue::builtin();
        for e in &cat.cases {
            let report = match e.l {
                3 => verify_presentation(&e.spec::<Z3>(e.q).unwrap(), e).unwrap().passed,
                5 => verify_presentation(&e.spec::<Z5>(e.q).unwrap(), e).unwrap().passed,
                _ => unreachable!(),
            };
            assert!(report, "{} {}", e.case_id, e.variant);
        }
    }

    #[test]
    fn failed_comparison_is_reported() {
        let mut e = entry(CaseId::BanalRam, "x_nonzero");
        e.checks[0].target = Some(vec!["A".into(), "C".into(), "D".into(), "W".into()]);
        let r = verify_presentation(&e.spec::<Z5>(2).unwrap(), &e).unwrap();
        assert!(!r.passed);
        assert_eq!(r.checks[0].equal, Some(false));
        assert_eq!(r.checks[0].computed_not_in_target, ["Z"]);
        assert!(r.checks[0].target_not_in_computed.is_empty());
    }
}
