//! Tame inertial types, the representations of `GL_2` of the residue field
//! attached to them, their reductions mod `l`, and the linear system that
//! expresses type-restricted cycles through cycles indexed by irreducible
//! mod `l` representations.
//!
//! Characters are exponents with respect to a fixed generator of the
//! character group: mod `q - 1` for characters of the residue field, mod
//! `q^2 - 1` for characters of its quadratic extension.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeKind {
    Tau1,
    TauZeta,
    TauXi,
    PrincipalPair,
    InducedUnramified,
    InducedRamified,
    IrreducibleWild,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub kind: TypeKind,
    /// Character exponents: `zeta` or the pair mod `q - 1`, `xi` mod `q^2 - 1`.
    pub params: Vec<u64>,
    /// Exponent of the twisting character, mod `q - 1`.
    pub twist: u64,
}

impl TypeLabel {
    pub fn tau1() -> Self {
        TypeLabel { kind: TypeKind::Tau1, params: Vec::new(), twist: 0 }
    }

    pub fn tau_zeta(e: u64) -> Self {
        TypeLabel { kind: TypeKind::TauZeta, params: vec![e], twist: 0 }
    }

    pub fn tau_xi(e: u64) -> Self {
        TypeLabel { kind: TypeKind::TauXi, params: vec![e], twist: 0 }
    }

    pub fn principal_pair(e1: u64, e2: u64) -> Self {
        TypeLabel { kind: TypeKind::PrincipalPair, params: vec![e1, e2], twist: 0 }
    }

    pub fn induced_unramified(e: u64) -> Self {
        TypeLabel { kind: TypeKind::InducedUnramified, params: vec![e], twist: 0 }
    }

    pub fn wild(index: u64) -> Self {
        TypeLabel { kind: TypeKind::IrreducibleWild, params: vec![index], twist: 0 }
    }

    pub fn twisted(mut self, twist: u64) -> Self {
        self.twist = twist;
        self
    }

    pub fn is_wild(&self) -> bool {
        matches!(self.kind, TypeKind::InducedRamified | TypeKind::IrreducibleWild)
    }

    /// Checks that the label describes a type for `(q, l)`.
    pub fn check(&self, q: u64, l: u64) -> Result<()> {
        let g = Group::new(q, l)?;
        let bad = |msg: &str| Err(Error::InvalidParameters(format!("{self}: {msg} (q = {q}, l = {l})")));
        let arity = match self.kind {
            TypeKind::Tau1 => 0,
            TypeKind::PrincipalPair => 2,
            _ => 1,
        };
        if self.params.len() != arity {
            return bad("wrong number of parameters");
        }
        match self.kind {
            TypeKind::TauZeta => {
                let e = self.params[0] % g.n1;
                if g.a == 0 {
                    return bad("needs l | q - 1");
                }
                if e == 0 || !(e * g.l_part(g.a)).is_multiple_of(g.n1) {
                    return bad("zeta must be a non-trivial l-power root of unity");
                }
            }
            TypeKind::TauXi => {
                let e = self.params[0] % g.n2;
                if g.b == 0 {
                    return bad("needs l | q + 1");
                }
                if e == 0 || !(e * g.l_part(g.b)).is_multiple_of(g.n2) {
                    return bad("xi must be a non-trivial l-power root of unity");
                }
            }
            TypeKind::PrincipalPair => {
                if self.params[0] % g.n1 == self.params[1] % g.n1 {
                    return bad("the two characters must differ");
                }
            }
            TypeKind::InducedUnramified => {
                let e = self.params[0] % g.n2;
                if e == (q * e) % g.n2 {
                    return bad("the character must not factor through the norm");
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The characters of inertia making up the type, as exponents mod `q^2 - 1`.
    pub fn inertia_characters(&self, q: u64, l: u64) -> Result<Vec<u64>> {
        if self.is_wild() {
            return Err(Error::WildType);
        }
        self.check(q, l)?;
        let g = Group::new(q, l)?;
        let lift = |e: u64| (e % g.n1) * (q + 1) % g.n2;
        let t = lift(self.twist);
        let shift = |e: u64| (e + t) % g.n2;
        let mut chars = match self.kind {
            TypeKind::Tau1 => vec![t, t],
            TypeKind::TauZeta => {
                let e = self.params[0] % g.n1;
                vec![shift(lift(e)), shift(lift(g.n1 - e))]
            }
            TypeKind::PrincipalPair => vec![shift(lift(self.params[0])), shift(lift(self.params[1]))],
            TypeKind::TauXi | TypeKind::InducedUnramified => {
                let e = self.params[0] % g.n2;
                vec![shift(e), shift(q * e % g.n2)]
            }
            TypeKind::InducedRamified | TypeKind::IrreducibleWild => unreachable!(),
        };
        chars.sort_unstable();
        Ok(chars)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            TypeKind::Tau1 => "tau1",
            TypeKind::TauZeta => "tau_zeta",
            TypeKind::TauXi => "tau_xi",
            TypeKind::PrincipalPair => "principal_pair",
            TypeKind::InducedUnramified => "induced_unramified",
            TypeKind::InducedRamified => "induced_ramified",
            TypeKind::IrreducibleWild => "irreducible_wild",
        };
        f.write_str(name)?;
        write_params(f, &self.params)?;
        if self.twist != 0 {
            write!(f, " twisted by {}", self.twist)?;
        }
        Ok(())
    }
}

fn write_params(f: &mut fmt::Formatter<'_>, params: &[u64]) -> fmt::Result {
    if params.is_empty() {
        return Ok(());
    }
    let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    write!(f, "({})", joined.join(","))
}

/// Orders of the character groups and their `l`-parts.
#[derive(Clone, Copy, Debug)]
struct Group {
    l: u64,
    n1: u64,
    n2: u64,
    /// `l`-regular parts of `n1` and `n2`.
    m1: u64,
    m2: u64,
    a: u32,
    b: u32,
}

impl Group {
    fn new(q: u64, l: u64) -> Result<Self> {
        if l < 3 || !is_prime(l) {
            return Err(Error::InvalidParameters(format!("l = {l} is not an odd prime")));
        }
        if !is_prime_power(q) {
            return Err(Error::InvalidParameters(format!("q = {q} is not a prime power")));
        }
        if q.is_multiple_of(l) {
            return Err(Error::InvalidParameters(format!("l = {l} divides q = {q}")));
        }
        let n1 = q - 1;
        let n2 = q * q - 1;
        let (a, m1) = split_l(n1, l);
        let (b, _) = split_l(q + 1, l);
        let (_, m2) = split_l(n2, l);
        Ok(Group { l, n1, n2, m1, m2, a, b })
    }

    fn l_part(&self, v: u32) -> u64 {
        self.l.pow(v)
    }
}

fn split_l(mut n: u64, l: u64) -> (u32, u64) {
    let mut v = 0;
    while n.is_multiple_of(l) {
        n /= l;
        v += 1;
    }
    (v, n)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    split_l(q, p).1 == 1
}

/// Types with non-zero deformation ring for a residual representation that
/// is trivial on wild inertia, up to twist: `tau1`, one `tau_zeta` per
/// non-trivial `l^a`-th root of unity up to inversion, and likewise `tau_xi`.
pub fn enumerate_types(q: u64, l: u64) -> Result<Vec<TypeLabel>> {
    let g = Group::new(q, l)?;
    let mut out = vec![TypeLabel::tau1()];
    if g.a > 0 {
        let step = g.n1 / g.l_part(g.a);
        out.extend((1..g.l_part(g.a)).map(|k| k * step).filter(|&e| e <= g.n1 - e).map(TypeLabel::tau_zeta));
    }
    if g.b > 0 {
        let step = g.n2 / g.l_part(g.b);
        out.extend((1..g.l_part(g.b)).map(|k| k * step).filter(|&e| e <= g.n2 - e).map(TypeLabel::tau_xi));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    Steinberg,
    OneDim,
    PrincipalSeries,
    Cuspidal,
    Pi1,
    /// The reduction of the representation attached to a wild type, taken
    /// to be irreducible.
    Typical,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepLabel {
    pub kind: RepKind,
    /// Character exponents: twist for `steinberg`, `one_dim`, `pi1`; the pair
    /// for `principal_series`; `theta` for `cuspidal`.
    pub params: Vec<u64>,
    /// Modulus of the exponents.
    pub modulus: u64,
    pub dimension: u64,
    /// Over the residue field of the coefficients.
    pub modular: bool,
}

impl RepLabel {
    fn new(kind: RepKind, params: Vec<u64>, modulus: u64, q: u64, modular: bool) -> Self {
        let dimension = match kind {
            RepKind::Steinberg => q,
            RepKind::OneDim | RepKind::Typical => 1,
            RepKind::PrincipalSeries => q + 1,
            RepKind::Cuspidal | RepKind::Pi1 => q - 1,
        };
        let params = params.into_iter().map(|p| p % modulus).collect();
        RepLabel { kind, params, modulus, dimension, modular }
    }

    fn typical() -> Self {
        RepLabel { kind: RepKind::Typical, params: Vec::new(), modulus: 1, dimension: 1, modular: true }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            RepKind::Steinberg => "steinberg",
            RepKind::OneDim => "one_dim",
            RepKind::PrincipalSeries => "principal_series",
            RepKind::Cuspidal => "cuspidal",
            RepKind::Pi1 => "pi1",
            RepKind::Typical => "typical",
        };
        f.write_str(name)?;
        if self.params.iter().any(|&p| p != 0) {
            write_params(f, &self.params)?;
        }
        Ok(())
    }
}

fn sorted_pair(x: u64, y: u64) -> Vec<u64> {
    vec![x.min(y), x.max(y)]
}

/// Orbit representative of `theta` under `theta -> theta^q`.
fn frobenius_min(e: u64, q: u64, n: u64) -> u64 {
    let e = e % n;
    e.min(q * e % n)
}

/// The representation of `GL_2` of the residue field attached to a tame type.
pub fn sigma_of_tau(t: &TypeLabel, q: u64, l: u64) -> Result<RepLabel> {
    if t.is_wild() {
        return Err(Error::WildType);
    }
    t.check(q, l)?;
    let g = Group::new(q, l)?;
    let tw = t.twist % g.n1;
    Ok(match t.kind {
        TypeKind::Tau1 => RepLabel::new(RepKind::Steinberg, vec![tw], g.n1, q, false),
        TypeKind::TauZeta => {
            let e = t.params[0] % g.n1;
            RepLabel::new(RepKind::PrincipalSeries, sorted_pair((e + tw) % g.n1, (g.n1 - e + tw) % g.n1), g.n1, q, false)
        }
        TypeKind::PrincipalPair => {
            let (e1, e2) = ((t.params[0] + tw) % g.n1, (t.params[1] + tw) % g.n1);
            RepLabel::new(RepKind::PrincipalSeries, sorted_pair(e1, e2), g.n1, q, false)
        }
        TypeKind::TauXi | TypeKind::InducedUnramified => {
            let theta = (t.params[0] + tw * (q + 1)) % g.n2;
            RepLabel::new(RepKind::Cuspidal, vec![frobenius_min(theta, q, g.n2)], g.n2, q, false)
        }
        TypeKind::InducedRamified | TypeKind::IrreducibleWild => unreachable!(),
    })
}

/// Jordan–Hölder constituents of the reduction mod `l`, with multiplicities.
pub fn reduce_mod_l_rep(r: &RepLabel, q: u64, l: u64) -> Result<Vec<(RepLabel, u32)>> {
    if r.modular {
        return Ok(vec![(r.clone(), 1)]);
    }
    let g = Group::new(q, l)?;
    let bar = |kind, params: Vec<u64>, modulus| RepLabel::new(kind, params, modulus, q, true);
    let out = match r.kind {
        RepKind::OneDim => vec![(bar(RepKind::OneDim, r.params.clone(), g.m1), 1)],
        RepKind::Steinberg => {
            if g.b > 0 {
                // dimension q = 1 + (q - 1) forces each factor to occur once
                vec![(bar(RepKind::OneDim, r.params.clone(), g.m1), 1), (bar(RepKind::Pi1, r.params.clone(), g.m1), 1)]
            } else {
                vec![(bar(RepKind::Steinberg, r.params.clone(), g.m1), 1)]
            }
        }
        RepKind::PrincipalSeries => {
            let (c1, c2) = (r.params[0] % g.m1, r.params[1] % g.m1);
            if c1 == c2 {
                vec![(bar(RepKind::OneDim, vec![c1], g.m1), 1), (bar(RepKind::Steinberg, vec![c1], g.m1), 1)]
            } else {
                vec![(bar(RepKind::PrincipalSeries, sorted_pair(c1, c2), g.m1), 1)]
            }
        }
        RepKind::Cuspidal => {
            let theta = r.params[0] % g.m2;
            if theta == q * theta % g.m2 {
                let c = (0..g.m1).find(|c| c * (q + 1) % g.m2 == theta).expect("norm-invariant characters come from the base");
                vec![(bar(RepKind::Pi1, vec![c], g.m1), 1)]
            } else {
                vec![(bar(RepKind::Cuspidal, vec![frobenius_min(theta, q, g.m2)], g.m2), 1)]
            }
        }
        RepKind::Pi1 | RepKind::Typical => vec![(RepLabel { modular: true, ..r.clone() }, 1)],
    };
    Ok(out)
}

/// The reduction of the representation attached to a type; wild types are
/// sent to a single irreducible representation shared by all wild types.
pub fn type_reduction(t: &TypeLabel, q: u64, l: u64) -> Result<Vec<(RepLabel, u32)>> {
    if t.is_wild() {
        return Ok(vec![(RepLabel::typical(), 1)]);
    }
    reduce_mod_l_rep(&sigma_of_tau(t, q, l)?, q, l)
}

/// Whether the semisimplified restrictions to inertia agree mod `l`.
pub fn types_congruent(t1: &TypeLabel, t2: &TypeLabel, q: u64, l: u64) -> Result<bool> {
    let g = Group::new(q, l)?;
    let reduce = |t: &TypeLabel| -> Result<Vec<u64>> {
        let mut chars: Vec<u64> = t.inertia_characters(q, l)?.into_iter().map(|c| c % g.m2).collect();
        chars.sort_unstable();
        Ok(chars)
    };
    Ok(reduce(t1)? == reduce(t2)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    #[serde(rename = "a_m")]
    Am,
    #[serde(rename = "a_N")]
    AN,
    #[serde(rename = "a_N'")]
    ANPrime,
    #[serde(rename = "a_r")]
    Ar,
}

impl Point {
    pub const ALL: [Point; 4] = [Point::Am, Point::AN, Point::ANPrime, Point::Ar];

    pub fn as_str(self) -> &'static str {
        match self {
            Point::Am => "a_m",
            Point::AN => "a_N",
            Point::ANPrime => "a_N'",
            Point::Ar => "a_r",
        }
    }
}

/// A formal combination of points with non-negative multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(BTreeMap<Point, u32>);

impl Cycle {
    pub fn zero() -> Self {
        Cycle::default()
    }

    pub fn from_pairs(pairs: &[(Point, u32)]) -> Self {
        let mut c = Cycle::zero();
        for &(p, n) in pairs {
            c.add_point(p, n);
        }
        c
    }

    pub fn get(&self, p: Point) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn add_point(&mut self, p: Point, n: u32) {
        if n > 0 {
            *self.0.entry(p).or_insert(0) += n;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&n| n == 0)
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        let mut c = self.clone();
        for (&p, &n) in &other.0 {
            c.add_point(p, n);
        }
        c
    }

    pub fn scale(&self, k: u32) -> Cycle {
        let mut c = Cycle::zero();
        for (&p, &n) in &self.0 {
            c.add_point(p, n * k);
        }
        c
    }

    /// `other` is a subcycle of `self`.
    pub fn contains(&self, other: &Cycle) -> bool {
        Point::ALL.iter().all(|&p| other.get(p) <= self.get(p))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Point::ALL
            .iter()
            .filter(|&&p| self.get(p) > 0)
            .map(|&p| match self.get(p) {
                1 => format!("[{}]", p.as_str()),
                n => format!("{n}[{}]", p.as_str()),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Requirement {
    Any,
    LNmidQ2m1,
    LMidQp1,
    LMidQm1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CycleCase {
    case: String,
    residual: String,
    requires: Requirement,
    #[serde(default)]
    wild: bool,
    cycles: BTreeMap<String, Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CycleData {
    schema: String,
    cases: Vec<CycleCase>,
}

const CYCLES: &str = include_str!("../data/cycles.json");

fn cycle_data() -> CycleData {
    serde_json::from_str(CYCLES).expect("bundled cycle table parses")
}

/// Identifiers of the residual cases in the cycle table.
pub fn cycle_cases() -> Vec<String> {
    cycle_data().cases.into_iter().map(|c| c.case).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleRow {
    #[serde(rename = "type")]
    pub ty: TypeLabel,
    pub cycle: Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTable {
    pub case: String,
    pub residual: String,
    pub q: u64,
    pub l: u64,
    pub rows: Vec<CycleRow>,
}

/// The cycles of the special fibres for each type, for one residual case.
pub fn cycle_table(case: &str, q: u64, l: u64) -> Result<CycleTable> {
    let data = cycle_data();
    let entry = data
        .cases
        .into_iter()
        .find(|c| c.case == case)
        .ok_or_else(|| Error::InvalidCase(format!("unknown residual case '{case}'")))?;
    let g = Group::new(q, l)?;
    let ok = match entry.requires {
        Requirement::Any => true,
        Requirement::LNmidQ2m1 => g.a == 0 && g.b == 0,
        Requirement::LMidQp1 => g.b > 0,
        Requirement::LMidQm1 => g.a > 0,
    };
    if !ok {
        return Err(Error::InvalidParameters(format!("case {case} needs {:?} (q = {q}, l = {l})", entry.requires)));
    }
    let cycle_of = |key: &str| entry.cycles.get(key).cloned().unwrap_or_default();
    let rows = if entry.wild {
        (0..2).map(|i| CycleRow { ty: TypeLabel::wild(i), cycle: cycle_of("wild") }).collect()
    } else {
        enumerate_types(q, l)?
            .into_iter()
            .map(|ty| {
                let key = match ty.kind {
                    TypeKind::TauZeta => "tau_zeta",
                    TypeKind::TauXi => "tau_xi",
                    _ => "tau1",
                };
                CycleRow { cycle: cycle_of(key), ty }
            })
            .collect()
    };
    Ok(CycleTable { case: entry.case, residual: entry.residual, q, l, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub rep: RepLabel,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BmRow {
    #[serde(rename = "type")]
    pub ty: TypeLabel,
    pub sigma: Option<RepLabel>,
    pub reduction: Vec<Constituent>,
    pub cycle: Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedCycle {
    pub rep: RepLabel,
    pub label: String,
    pub cycle: Cycle,
}

/// The equations at one point that admit no non-negative solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub point: Point,
    pub equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BmSolution {
    pub case: String,
    pub q: u64,
    pub l: u64,
    pub rows: Vec<BmRow>,
    pub feasible: bool,
    pub unique: bool,
    pub solution: Vec<SolvedCycle>,
    pub round_trip: bool,
    pub violation: Option<Violation>,
}

impl BmSolution {
    pub fn cycle_of(&self, kind: RepKind) -> Option<&Cycle> {
        self.solution.iter().find(|s| s.rep.kind == kind).map(|s| &s.cycle)
    }
}

/// All non-negative integer solutions of `matrix * x = rhs`.
fn nonnegative_solutions(matrix: &[Vec<u32>], rhs: &[u32], nvars: usize) -> Vec<Vec<u32>> {
    // a variable occurring in some row is bounded by that row's right-hand side
    let bounds: Vec<u32> = (0..nvars)
        .map(|j| matrix.iter().zip(rhs).filter(|(row, _)| row[j] > 0).map(|(row, &r)| r / row[j]).min().unwrap_or(0))
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0; nvars];
    fn go(j: usize, x: &mut Vec<u32>, bounds: &[u32], matrix: &[Vec<u32>], rhs: &[u32], out: &mut Vec<Vec<u32>>) {
        if j == x.len() {
            let fits = matrix.iter().zip(rhs).all(|(row, &r)| row.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<u32>() == r);
            if fits {
                out.push(x.clone());
            }
            return;
        }
        for v in 0..=bounds[j] {
            x[j] = v;
            go(j + 1, x, bounds, matrix, rhs, out);
        }
        x[j] = 0;
    }
    go(0, &mut x, &bounds, matrix, rhs, &mut out);
    out
}

/// Solves `Z(tau) = sum_theta m(theta, tau) C_theta` for effective cycles
/// `C_theta`, pointwise by bounded enumeration.
pub fn bm_solve(case: &str, q: u64, l: u64) -> Result<BmSolution> {
    solve_table(&cycle_table(case, q, l)?)
}

pub fn solve_table(table: &CycleTable) -> Result<BmSolution> {
    let (q, l) = (table.q, table.l);
    let mut rows = Vec::new();
    let mut unknowns: Vec<RepLabel> = Vec::new();
    for row in &table.rows {
        let sigma = if row.ty.is_wild() { None } else { Some(sigma_of_tau(&row.ty, q, l)?) };
        let reduction: Vec<Constituent> = type_reduction(&row.ty, q, l)?
            .into_iter()
            .map(|(rep, multiplicity)| Constituent { rep, multiplicity })
            .collect();
        for c in &reduction {
            if !unknowns.contains(&c.rep) {
                unknowns.push(c.rep.clone());
            }
        }
        rows.push(BmRow { ty: row.ty.clone(), sigma, reduction, cycle: row.cycle.clone() });
    }
    unknowns.sort();
    let matrix: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            unknowns
                .iter()
                .map(|u| r.reduction.iter().filter(|c| &c.rep == u).map(|c| c.multiplicity).sum())
                .collect()
        })
        .collect();

    let mut solution: Vec<Cycle> = vec![Cycle::zero(); unknowns.len()];
    let mut unique = true;
    let mut violation = None;
    for p in Point::ALL {
        let rhs: Vec<u32> = rows.iter().map(|r| r.cycle.get(p)).collect();
        let sols = nonnegative_solutions(&matrix, &rhs, unknowns.len());
        match sols.first() {
            None => {
                let equations = rows
                    .iter()
                    .zip(&matrix)
                    .map(|(r, coeffs)| {
                        let lhs: Vec<String> = coeffs
                            .iter()
                            .zip(&unknowns)
                            .filter(|(m, _)| **m > 0)
                            .map(|(m, u)| if *m == 1 { format!("C[{u}]") } else { format!("{m}*C[{u}]") })
                            .collect();
                        let lhs = if lhs.is_empty() { "0".to_string() } else { lhs.join(" + ") };
                        format!("{}: {lhs} = {}", r.ty, r.cycle.get(p))
                    })
                    .collect();
                violation = Some(Violation { point: p, equations });
                break;
            }
            Some(x) => {
                unique &= sols.len() == 1;
                for (c, &n) in solution.iter_mut().zip(x) {
                    c.add_point(p, n);
                }
            }
        }
    }

    let feasible = violation.is_none();
    let round_trip = feasible
        && rows.iter().zip(&matrix).all(|(r, coeffs)| {
            let total = coeffs.iter().zip(&solution).fold(Cycle::zero(), |acc, (&m, c)| acc.add(&c.scale(m)));
            total == r.cycle
        });
    let solution = if feasible {
        unknowns
            .into_iter()
            .zip(solution)
            .map(|(rep, cycle)| SolvedCycle { label: rep.to_string(), rep, cycle })
            .collect()
    } else {
        Vec::new()
    };
    Ok(BmSolution { case: table.case.clone(), q, l, rows, feasible, unique: feasible && unique, solution, round_trip, violation })
}
