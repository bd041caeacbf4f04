//! D-Gröbner bases over a discrete valuation ring.
//!
//! Reduction is strong reduction: a term `c*m` is reducible by `g` when
//! `HT(g) | m` and `HC(g) | c`. Leading coefficients of a DVR are totally
//! ordered by divisibility, so the G-polynomial of a pair always reduces to
//! zero by one member of the pair and only S-polynomials are formed.

use crate::poly::{term_divide, Ctx, Monomial, Poly};
use crate::scalar::Scalar;

/// Full strong reduction of `f` modulo `basis`.
///
/// Terms are processed from the highest down; for each one the first
/// generator (in listed order) whose leading monomial divides it is used.
pub fn normal_form<C: Scalar>(f: &Poly<C>, basis: &[Poly<C>]) -> Poly<C> {
    let ctx = f.ctx().clone();
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, C)> = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        let reducer = basis.iter().filter(|g| !g.is_zero()).find_map(|g| {
            let (gm, gc) = g.leading_term().unwrap();
            term_divide((m, c), (gm, gc)).map(|(q, k)| (q, k, g))
        });
        match reducer {
            Some((q, k, g)) => rest = rest.sub_mul_term(&q, &k, g),
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = drop_leading(rest);
            }
        }
    }
    Poly::from_terms(&ctx, remainder)
}

fn drop_leading<C: Scalar>(p: Poly<C>) -> Poly<C> {
    let ctx = p.ctx().clone();
    let terms = p.terms()[1..].to_vec();
    // already sorted and nonzero
    Poly::from_terms(&ctx, terms)
}

/// Strong reduction followed by canonical coefficient remainders: a term
/// `c*m` whose monomial is divisible by some leading term, but whose
/// coefficient is not, is replaced by `(c mod l^k)*m` where `l^k` is the
/// smallest leading coefficient among those generators. Modulo a
/// D-Gröbner basis the result depends only on the class of `f`.
pub fn canonical_form<C: Scalar>(f: &Poly<C>, basis: &[Poly<C>]) -> Poly<C> {
    let ctx = f.ctx().clone();
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, C)> = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        let mut best: Option<(u32, &Poly<C>)> = None;
        for g in basis.iter().filter(|g| !g.is_zero()) {
            let (gm, gc) = g.leading_term().unwrap();
            if gm.divides(m) {
                let v = gc.valuation().unwrap();
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, g));
                }
            }
        }
        match best {
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = drop_leading(rest);
            }
            Some((k, g)) => {
                let (gm, gc) = g.leading_term().unwrap();
                let q = gm.quotient_of(m).unwrap();
                let keep = c.rem_lambda_pow(k);
                let removed = c.sub_ref(&keep);
                let m = m.clone();
                if !removed.is_zero() {
                    let factor = removed.try_div(gc).expect("valuation at least k");
                    rest = rest.sub_mul_term(&q, &factor, g);
                }
                if !keep.is_zero() {
                    debug_assert_eq!(rest.ht(), Some(&m));
                    remainder.push((m, keep));
                    rest = drop_leading(rest);
                }
            }
        }
    }
    Poly::from_terms(&ctx, remainder)
}

/// The S-polynomial of `f` and `g`: with `L = lcm(HT f, HT g)` and coefficient
/// lcm `l^max(v(HC f), v(HC g))`, the combination cancelling both leading
/// terms.
pub fn s_polynomial<C: Scalar>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    let (fm, fc) = f.leading_term().expect("nonzero f");
    let (gm, gc) = g.leading_term().expect("nonzero g");
    let lcm = fm.lcm(gm);
    let v = fc.valuation().unwrap().max(gc.valuation().unwrap());
    let coeff = C::lambda_pow(v);
    let a = coeff.try_div(fc).expect("coefficient lcm divisible by HC(f)");
    let b = coeff.try_div(gc).expect("coefficient lcm divisible by HC(g)");
    let left = f.mul_term(&fm.quotient_of(&lcm).unwrap(), &a);
    let right = g.mul_term(&gm.quotient_of(&lcm).unwrap(), &b);
    left.sub(&right)
}

/// `true` iff every pairwise S-polynomial of `gens` reduces to zero.
pub fn is_dgroebner<C: Scalar>(gens: &[Poly<C>]) -> bool {
    let gens: Vec<Poly<C>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !normal_form(&s_polynomial(&gens[i], &gens[j]), &gens).is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Skip pairs with coprime leading monomials (terms and coefficients).
    pub product_criterion: bool,
    /// Skip pairs whose lcm is a multiple of a third leading monomial whose
    /// own pairs have been handled.
    pub chain_criterion: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { product_criterion: true, chain_criterion: false }
    }
}

/// Canonical reduced D-Gröbner basis.
///
/// Generators have leading coefficient `l^v`, are sorted by decreasing
/// leading term and are fully reduced against each other (tails use the
/// canonical remainders of [`canonical_form`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<C: Scalar> {
    ctx: Ctx,
    generators: Vec<Poly<C>>,
    all_hc_units: bool,
}

impl<C: Scalar> GroebnerBasis<C> {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Poly<C>> {
        self.generators
    }

    pub fn all_hc_units(&self) -> bool {
        self.all_hc_units
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant() && self.generators[0].hc().unwrap().is_one()
    }

    pub fn normal_form(&self, f: &Poly<C>) -> Poly<C> {
        normal_form(f, &self.generators)
    }

    pub fn reduce(&self, f: &Poly<C>) -> Poly<C> {
        canonical_form(f, &self.generators)
    }

    pub fn contains(&self, f: &Poly<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Leading terms with their valuations.
    pub fn leading_monomials(&self) -> Vec<(Monomial, u32)> {
        self.generators
            .iter()
            .map(|g| {
                let (m, c) = g.leading_term().unwrap();
                (m.clone(), c.valuation().unwrap())
            })
            .collect()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn hm_divides<C: Scalar>(g: &Poly<C>, m: &Monomial, v: u32) -> bool {
    let (gm, gc) = g.leading_term().unwrap();
    gm.divides(m) && gc.valuation().unwrap() <= v
}

pub fn buchberger<C: Scalar>(ctx: &Ctx, gens: &[Poly<C>]) -> GroebnerBasis<C> {
    buchberger_with(ctx, gens, BuchbergerOptions::default())
}

pub fn buchberger_with<C: Scalar>(ctx: &Ctx, gens: &[Poly<C>], opts: BuchbergerOptions) -> GroebnerBasis<C> {
    let unit = |ctx: &Ctx| GroebnerBasis { ctx: ctx.clone(), generators: vec![Poly::one(ctx)], all_hc_units: true };

    let mut basis: Vec<Poly<C>> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let g = g.normalized();
        if g.is_constant() && g.hc().unwrap().is_one() {
            return unit(ctx);
        }
        if !basis.contains(&g) {
            basis.push(g);
        }
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: Vec<Vec<bool>> = Vec::new();
    let push_pairs = |basis: &Vec<Poly<C>>, pairs: &mut Vec<Pair>, done: &mut Vec<Vec<bool>>, j: usize| {
        for row in done.iter_mut() {
            row.push(false);
        }
        done.push(vec![false; j + 1]);
        for i in 0..j {
            let lcm = basis[i].ht().unwrap().lcm(basis[j].ht().unwrap());
            pairs.push(Pair { i, j, lcm });
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut pairs, &mut done, j);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties broken by index
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = ctx.cmp(&pairs[k].lcm, &pairs[best].lcm);
            if ord.is_lt() || (ord.is_eq() && (pairs[k].i, pairs[k].j) < (pairs[best].i, pairs[best].j)) {
                best = k;
            }
        }
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        done[i][j] = true;
        done[j][i] = true;

        let (fi, fj) = (&basis[i], &basis[j]);
        let vi = fi.hc().unwrap().valuation().unwrap();
        let vj = fj.hc().unwrap().valuation().unwrap();
        // the gcd of the two leading coefficients is one of them, so the
        // G-polynomial is a monomial multiple of fi or fj
        debug_assert!(vi.min(vj) == vi || vi.min(vj) == vj);

        if opts.product_criterion && vi.min(vj) == 0 && fi.ht().unwrap().coprime(fj.ht().unwrap()) {
            continue;
        }
        if opts.chain_criterion {
            let v = vi.max(vj);
            let redundant = (0..basis.len())
                .any(|k| k != i && k != j && done[i][k] && done[j][k] && hm_divides(&basis[k], &lcm, v));
            if redundant {
                continue;
            }
        }

        let s = s_polynomial(fi, fj);
        let h = normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.normalized();
        if h.is_constant() && h.hc().unwrap().is_one() {
            return unit(ctx);
        }
        basis.push(h);
        let j = basis.len() - 1;
        push_pairs(&basis, &mut pairs, &mut done, j);
    }

    reduce_basis(ctx, basis)
}

/// Turns any D-Gröbner basis into the canonical reduced one.
pub fn reduce_basis<C: Scalar>(ctx: &Ctx, basis: Vec<Poly<C>>) -> GroebnerBasis<C> {
    let basis: Vec<Poly<C>> = basis.into_iter().filter(|g| !g.is_zero()).map(|g| g.normalized()).collect();
    let keys: Vec<(Monomial, u32)> =
        basis.iter().map(|g| (g.ht().unwrap().clone(), g.hc().unwrap().valuation().unwrap())).collect();
    let mut minimal: Vec<Poly<C>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (m, v) = &keys[i];
        let dominated = keys.iter().enumerate().any(|(j, (n, w))| {
            j != i && n.divides(m) && w <= v && ((n, w) != (m, v) || j < i)
        });
        if !dominated {
            minimal.push(g.clone());
        }
    }

    let mut reduced: Vec<Poly<C>> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Poly<C>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let (m, c) = g.leading_term().unwrap();
        let head = Poly::term(ctx, m.clone(), c.clone());
        let tail = g.sub(&head);
        reduced.push(head.add(&canonical_form(&tail, &others)));
    }
    reduced.sort_by(|a, b| ctx.cmp(b.ht().unwrap(), a.ht().unwrap()));
    let all_hc_units = reduced.iter().all(|g| g.hc().unwrap().is_unit());
    GroebnerBasis { ctx: ctx.clone(), generators: reduced, all_hc_units }
}
