//! Hilbert functions and multiplicities of homogeneous ideals over the
//! residue field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Monomial;
use crate::scalar::{DvrScalar, Fp};

pub const DEFAULT_HORIZON: usize = 12;
pub const DEFAULT_WINDOW: usize = 4;

/// Coefficient-wise residue of every generator; zero images are dropped.
pub fn reduce_mod_l<const L: u64>(ideal: &Ideal<DvrScalar<L>>) -> Result<Ideal<Fp<L>>> {
    let gens = ideal.generators().iter().map(|g| g.map_coeffs(|c| c.residue())).collect();
    Ideal::new(ideal.ctx(), gens)
}

fn check_homogeneous<const P: u64>(ideal: &Ideal<Fp<P>>) -> Result<()> {
    if ideal.generators().iter().all(|g| g.is_homogeneous()) {
        Ok(())
    } else {
        Err(Error::Inhomogeneous)
    }
}

/// Minimal generators of a monomial ideal.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `S/M` for a
/// monomial ideal `M`, via `N(M) = N(M') - t^deg(m) N(M' : m)`.
pub fn series_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens)
}

fn numerator_rec(mut gens: Vec<Monomial>) -> Vec<i64> {
    let Some(m) = gens.pop() else {
        return vec![1];
    };
    if gens.is_empty() {
        let mut n = vec![0; m.degree() as usize + 1];
        n[0] = 1;
        n[m.degree() as usize] -= 1;
        return n;
    }
    if gens.iter().all(|g| g.coprime(&m)) {
        // N(M' + (m)) = N(M') (1 - t^deg m) when m is coprime to M'
        let base = numerator_rec(gens);
        let mut out = base.clone();
        poly_sub_shifted(&mut out, &base, m.degree() as usize);
        return out;
    }
    let colon: Vec<Monomial> = gens.iter().map(|g| m.quotient_of(&g.lcm(&m)).unwrap()).collect();
    let mut out = numerator_rec(gens);
    let inner = numerator_rec(minimalize(colon));
    poly_sub_shifted(&mut out, &inner, m.degree() as usize);
    out
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Number of monomials of degree `d` in `nvars` variables outside the ideal
/// generated by `gens`.
pub fn count_standard_monomials(gens: &[Monomial], nvars: usize, d: usize) -> u64 {
    let numer = series_numerator(gens);
    if nvars == 0 {
        return numer.get(d).copied().unwrap_or(0).max(0) as u64;
    }
    let mut total: i128 = 0;
    for (k, &c) in numer.iter().enumerate() {
        if k > d {
            break;
        }
        total += c as i128 * binomial((d - k + nvars - 1) as i64, nvars as i64 - 1);
    }
    total as u64
}

fn leading_monomials<const P: u64>(ideal: &Ideal<Fp<P>>) -> Vec<Monomial> {
    ideal.basis().generators().iter().map(|g| g.ht().unwrap().clone()).collect()
}

/// Dimension of the degree `d` part of `S/I`.
pub fn hilbert_function<const P: u64>(ideal: &Ideal<Fp<P>>, d: usize) -> Result<u64> {
    check_homogeneous(ideal)?;
    Ok(count_standard_monomials(&leading_monomials(ideal), ideal.ctx().nvars(), d))
}

fn serialize_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub values: Vec<u64>,
    /// Coefficients of the eventual polynomial, constant term first.
    #[serde(serialize_with = "serialize_rationals")]
    pub fitted_polynomial: Vec<BigRational>,
    /// First degree from which the polynomial agrees with `values`.
    pub stable_from: usize,
    pub dimension: usize,
    pub degree: u64,
}

impl HilbertData {
    pub fn polynomial_string(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.fitted_polynomial.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{k}"),
            };
            let body = if !coeff.is_empty() && !var.is_empty() { format!("{coeff}*{var}") } else { coeff + &var };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (sign, body)) in parts.into_iter().enumerate() {
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                (_, s) => out.push_str(&format!(" {s} ")),
            }
            out.push_str(&body);
        }
        out
    }
}

pub fn hilbert_polynomial<const P: u64>(ideal: &Ideal<Fp<P>>) -> Result<HilbertData> {
    hilbert_polynomial_with(ideal, DEFAULT_HORIZON, DEFAULT_WINDOW)
}

pub fn hilbert_polynomial_with<const P: u64>(
    ideal: &Ideal<Fp<P>>,
    horizon: usize,
    window: usize,
) -> Result<HilbertData> {
    check_homogeneous(ideal)?;
    let lead = leading_monomials(ideal);
    let n = ideal.ctx().nvars();
    let values: Vec<u64> = (0..=horizon).map(|d| count_standard_monomials(&lead, n, d)).collect();
    fit(values, window)
}

/// Fits the eventual polynomial of a Hilbert function from its values on
/// `0..=horizon`.
pub fn fit(values: Vec<u64>, window: usize) -> Result<HilbertData> {
    let horizon = values.len() - 1;
    let too_small = Error::HorizonTooSmall { horizon, suggested: 2 * horizon.max(1) };
    let window = window.max(1);
    if values.len() < window {
        return Err(too_small);
    }
    if values[values.len() - window..].iter().all(|&v| v == 0) {
        let stable_from = values.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1);
        let degree = values.iter().sum();
        return Ok(HilbertData { values, fitted_polynomial: Vec::new(), stable_from, dimension: 0, degree });
    }

    let mut diffs: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    let mut table = vec![diffs.clone()];
    let mut r = 0;
    loop {
        let len = diffs.len();
        if len < window {
            return Err(too_small);
        }
        let tail = &diffs[len - window..];
        if tail.iter().all(|&x| x == tail[0]) && tail[0] != 0 {
            break;
        }
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        table.push(diffs.clone());
        r += 1;
    }

    // Newton form anchored at the last r+1 values
    let base = horizon - r;
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); r + 1];
    let mut falling: Vec<BigRational> = vec![BigRational::one()];
    let mut factorial = BigInt::one();
    for (k, row) in table.iter().enumerate().take(r + 1) {
        if k > 0 {
            // falling *= (d - base - (k - 1))
            let shift = BigRational::from_integer(BigInt::from(-((base + k - 1) as i64)));
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] += c * &shift;
            }
            falling = next;
            factorial *= BigInt::from(k);
        }
        let delta = BigRational::new(BigInt::from(row[base]), factorial.clone());
        for (i, c) in falling.iter().enumerate() {
            coeffs[i] += c * &delta;
        }
    }

    let eval = |d: usize| -> BigRational {
        let x = BigRational::from_integer(BigInt::from(d));
        coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    };
    let mut stable_from = horizon;
    while stable_from > 0 && eval(stable_from - 1) == BigRational::from_integer(BigInt::from(values[stable_from - 1])) {
        stable_from -= 1;
    }
    if horizon + 1 - stable_from < window + r {
        return Err(too_small);
    }

    let mut fact = BigInt::one();
    for k in 2..=r {
        fact *= BigInt::from(k);
    }
    let lead = &coeffs[r] * BigRational::from_integer(fact);
    let degree = lead.to_integer().to_u64().expect("multiplicity is a positive integer");
    Ok(HilbertData { values, fitted_polynomial: coeffs, stable_from, dimension: r + 1, degree })
}
