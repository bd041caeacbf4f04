//! Ideals with a lazily computed canonical basis: membership, elimination,
//! intersection and saturation.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{same_ctx, Ctx, MonomialOrder, Poly, VarContext};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Ideal<C: Scalar> {
    ctx: Ctx,
    generators: Vec<Poly<C>>,
    basis: OnceLock<GroebnerBasis<C>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatnessVerdict {
    FlatByUnits,
    FlatBySaturation,
    NotFlat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessCertificate<C: Scalar> {
    pub verdict: FlatnessVerdict,
    /// For `NotFlat`: some `g` with `l*g` in the ideal and `g` not in it.
    pub witness: Option<Poly<C>>,
}

impl<C: Scalar> Ideal<C> {
    pub fn new(ctx: &Ctx, generators: Vec<Poly<C>>) -> Result<Self> {
        if generators.iter().any(|g| !same_ctx(g.ctx(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ctx: ctx.clone(), generators, basis: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(ctx: &Ctx, texts: &[S]) -> Result<Self> {
        let gens = texts.iter().map(|t| Poly::parse(t.as_ref(), ctx)).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, gens)
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Ideal { ctx: ctx.clone(), generators: Vec::new(), basis: OnceLock::new() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    pub fn basis(&self) -> &GroebnerBasis<C> {
        self.basis.get_or_init(|| buchberger(&self.ctx, &self.generators))
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit_ideal()
    }

    pub fn member(&self, f: &Poly<C>) -> bool {
        self.basis().contains(f)
    }

    /// Generators of `other` that are not in `self`.
    pub fn missing_from(&self, other: &Ideal<C>) -> Vec<Poly<C>> {
        other.generators.iter().filter(|g| !self.member(g)).cloned().collect()
    }

    pub fn contains_ideal(&self, other: &Ideal<C>) -> bool {
        other.generators.iter().all(|g| self.member(g))
    }

    pub fn equal(&self, other: &Ideal<C>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn add(&self, other: &Ideal<C>) -> Result<Ideal<C>> {
        let mut gens = self.generators.clone();
        for g in &other.generators {
            gens.push(g.to_context(&self.ctx)?);
        }
        Ideal::new(&self.ctx, gens)
    }

    /// The same ideal read in another context (matching variables by name).
    pub fn to_context(&self, target: &Ctx) -> Result<Ideal<C>> {
        let gens = self.generators.iter().map(|g| g.to_context(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// `I` intersected with the polynomial ring in the remaining variables.
    /// The context must be lex with the dropped variables listed first; the
    /// result lives in the context of the remaining variables.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal<C>> {
        let names = self.ctx.names();
        let k = drop.len();
        let leading_ok = k <= names.len() && drop.iter().all(|d| names[..k].iter().any(|n| n == d));
        if self.ctx.order() != MonomialOrder::Lex || !leading_ok {
            return Err(Error::EliminationOrder);
        }
        let rest = VarContext::new(&names[k..], MonomialOrder::Lex)?;
        let mut kept = Vec::new();
        for g in self.basis().generators() {
            if (0..k).all(|i| !g.uses_var(i)) {
                kept.push(g.to_context(&rest)?);
            }
        }
        Ideal::new(&rest, kept)
    }

    /// Runs `build` in a fresh lex context with one auxiliary variable
    /// prepended, eliminates it and returns to the original context.
    fn with_aux<F>(&self, build: F) -> Result<Ideal<C>>
    where
        F: FnOnce(&Ctx, &Poly<C>) -> Result<Vec<Poly<C>>>,
    {
        let t = self.ctx.fresh_name("t");
        let big = self.ctx.lex_with_prefix(&[t.as_str()])?;
        let tvar = Poly::var(&big, 0);
        let gens = build(&big, &tvar)?;
        let eliminated = Ideal::new(&big, gens)?.eliminate(&[t.as_str()])?;
        eliminated.to_context(&self.ctx)
    }

    /// `I ∩ J` as the `t`-free part of `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal<C>) -> Result<Ideal<C>> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        self.with_aux(|big, t| {
            let one_minus_t = Poly::one(big).sub(t);
            let mut gens = Vec::new();
            for f in &self.generators {
                gens.push(t.mul(&f.to_context(big)?));
            }
            for g in &other.generators {
                gens.push(one_minus_t.mul(&g.to_context(big)?));
            }
            Ok(gens)
        })
    }

    /// `I : f^∞`, computed as `(I + (1 - t*f))` with `t` eliminated.
    pub fn saturate_by(&self, f: &Poly<C>) -> Result<Ideal<C>> {
        if f.is_zero() {
            return Err(Error::ZeroSaturation);
        }
        if !same_ctx(f.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        self.with_aux(|big, t| {
            let mut gens = self.generators.iter().map(|g| g.to_context(big)).collect::<Result<Vec<_>>>()?;
            gens.push(Poly::one(big).sub(&t.mul(&f.to_context(big)?)));
            Ok(gens)
        })
    }

    /// `I : l^∞`, the largest quotient without `l`-torsion.
    pub fn saturate_by_l(&self) -> Result<Ideal<C>> {
        self.saturate_by(&Poly::constant(&self.ctx, C::lambda_pow(1)))
    }

    pub fn is_flat(&self) -> Result<FlatnessCertificate<C>> {
        if self.basis().all_hc_units() {
            return Ok(FlatnessCertificate { verdict: FlatnessVerdict::FlatByUnits, witness: None });
        }
        let sat = self.saturate_by_l()?;
        let lambda = C::lambda_pow(1);
        let witness = sat.basis().generators().iter().find(|g| !self.member(g)).cloned();
        match witness {
            None => Ok(FlatnessCertificate { verdict: FlatnessVerdict::FlatBySaturation, witness: None }),
            Some(mut g) => {
                // some l^k g lies in I; step up until l g does
                loop {
                    let next = g.scale(&lambda);
                    if self.member(&next) {
                        break;
                    }
                    g = next;
                }
                Ok(FlatnessCertificate { verdict: FlatnessVerdict::NotFlat, witness: Some(g) })
            }
        }
    }
}

impl<C: Scalar> PartialEq for Ideal<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.basis() == other.basis()
    }
}

impl<C: Scalar> Eq for Ideal<C> {}
