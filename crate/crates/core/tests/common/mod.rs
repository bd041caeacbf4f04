#![allow(dead_code)]

use defring::bm::{enumerate_types, sigma_of_tau, RepLabel, TypeLabel};
use defring::{Ctx, Ideal, Monomial, MonomialOrder, Poly, Scalar, VarContext, Z3};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn ctx(vars: &str, order: MonomialOrder) -> Ctx {
    VarContext::parse(vars, order).unwrap()
}

/// Elements of `Z_(3)` with small numerators and denominators in {1, 2, 4}.
pub fn small_scalar<R: Rng>(rng: &mut R) -> Z3 {
    let num = rng.gen_range(-9i64..=9);
    let den = *[1i64, 1, 1, 2, 4].choose(rng).unwrap();
    Z3::new(num, den).unwrap()
}

pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32) -> Monomial {
    let total = rng.gen_range(0..=max_deg);
    let mut exps = vec![0u32; nvars];
    for _ in 0..total {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

pub fn random_poly<R: Rng>(rng: &mut R, ctx: &Ctx, max_terms: usize, max_deg: u32) -> Poly<Z3> {
    let n = rng.gen_range(1..=max_terms);
    let terms = (0..n).map(|_| (random_monomial(rng, ctx.nvars(), max_deg), small_scalar(rng))).collect();
    Poly::from_terms(ctx, terms)
}

pub fn random_ideal<R: Rng>(rng: &mut R, ctx: &Ctx, ngens: usize) -> Ideal<Z3> {
    let gens = (0..ngens).map(|_| random_poly(rng, ctx, 3, 2)).collect();
    Ideal::new(ctx, gens).unwrap()
}

/// Value of `p` at an integral point.
pub fn evaluate<C: Scalar>(p: &Poly<C>, point: &[i64]) -> C {
    let mut acc = C::zero();
    for (m, c) in p.terms() {
        let mut term = c.clone();
        for (&x, &e) in point.iter().zip(m.exponents()) {
            for _ in 0..e {
                term = term.mul_ref(&C::from_i64(x));
            }
        }
        acc = acc.add_ref(&term);
    }
    acc
}

/// Necessary condition for `f` in `(g_1, ..., g_k)`: at each integral point the
/// value of `f` lies in the ideal of `Z_(l)` generated by the values of the
/// `g_i`.
pub fn passes_point_test<C: Scalar>(f: &Poly<C>, gens: &[Poly<C>], point: &[i64]) -> bool {
    let Some(vf) = evaluate(f, point).valuation() else { return true };
    gens.iter().filter_map(|g| evaluate(g, point).valuation()).min().is_some_and(|vg| vg <= vf)
}

/// Number of monomials of degree `d` in `n` variables divisible by none of `gens`.
pub fn brute_force_standard_count(gens: &[Vec<u32>], n: usize, d: u32) -> u64 {
    fn go(i: usize, left: u32, exps: &mut Vec<u32>, gens: &[Vec<u32>], count: &mut u64) {
        if i + 1 == exps.len() {
            exps[i] = left;
            let divisible = gens.iter().any(|g| g.iter().zip(exps.iter()).all(|(a, b)| a <= b));
            if !divisible {
                *count += 1;
            }
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            go(i + 1, left - e, exps, gens, count);
        }
    }
    let mut count = 0;
    go(0, d, &mut vec![0; n], gens, &mut count);
    count
}

pub fn random_monomial_gens<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<u32>> {
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| {
            let mut e = random_monomial(rng, n, 3).exponents().to_vec();
            if e.iter().all(|&x| x == 0) {
                e[rng.gen_range(0..n)] = 1;
            }
            e
        })
        .collect()
}

const PRIME_POWERS: [u64; 20] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 49];

/// A random representation attached to a tame type, with its `(q, l)`.
pub fn random_rep<R: Rng>(rng: &mut R) -> (RepLabel, u64, u64) {
    loop {
        let l = *[3u64, 5, 7].choose(rng).unwrap();
        let q = *PRIME_POWERS.choose(rng).unwrap();
        if q.is_multiple_of(l) {
            continue;
        }
        let twist = rng.gen_range(0..q - 1);
        let mut candidates = enumerate_types(q, l).unwrap();
        let (e1, e2) = (rng.gen_range(0..q - 1), rng.gen_range(0..q - 1));
        candidates.push(TypeLabel::principal_pair(e1, e2));
        candidates.push(TypeLabel::induced_unramified(rng.gen_range(0..q * q - 1)));
        let t = candidates.choose(rng).unwrap().clone().twisted(twist);
        if let Ok(r) = sigma_of_tau(&t, q, l) {
            return (r, q, l);
        }
    }
}
