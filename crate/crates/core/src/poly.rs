//! Multivariate polynomials over a [`Scalar`] with named variables and a
//! fixed monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            other => Err(Error::InvalidContext(format!("unknown monomial order '{other}'"))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
        })
    }
}

/// Variable names plus monomial order. The first listed variable is the
/// greatest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    order: MonomialOrder,
}

pub type Ctx = Arc<VarContext>;

fn valid_name(name: &str) -> bool {
    let core = name.trim_end_matches('\'');
    let mut chars = core.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ctx> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::InvalidContext(format!("invalid variable name '{n}'")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable '{n}'")));
            }
        }
        Ok(Arc::new(VarContext { names, order }))
    }

    /// Parses a comma separated variable list such as `"F,A',B,C,X,Y"`.
    pub fn parse(list: &str, order: MonomialOrder) -> Result<Ctx> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::new(&names, order)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Lex context with `extra` prepended as the greatest variables.
    pub fn lex_with_prefix(&self, extra: &[&str]) -> Result<Ctx> {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.names.iter().cloned());
        VarContext::new(&names, MonomialOrder::Lex)
    }

    /// A variable name not already used in this context.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{stem}{k}");
        }
        name
    }
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector aligned with a [`VarContext`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a > b {
                return None;
            }
            out.push(b - a);
        }
        Some(Monomial(out))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.0[index] > 0
    }

    fn write(&self, ctx: &VarContext, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in ctx.names.iter().zip(self.0.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Highest monomial, term and coefficient of a nonzero polynomial. `hm` is
/// the coefficient times the term, as a one-term polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData<C: Scalar> {
    pub hm: Poly<C>,
    pub ht: Monomial,
    pub hc: C,
}

/// Polynomial with nonzero coefficients, terms kept strictly decreasing in
/// the context's order.
#[derive(Clone)]
pub struct Poly<C: Scalar> {
    ctx: Ctx,
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<C: Scalar> Eq for Poly<C> {}

impl<C: Scalar> std::hash::Hash for Poly<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// `t / s` when the monomial of `s` divides that of `t` and the coefficient
/// of `s` divides that of `t`.
pub fn term_divide<C: Scalar>(t: (&Monomial, &C), s: (&Monomial, &C)) -> Option<(Monomial, C)> {
    let m = s.0.quotient_of(t.0)?;
    let c = t.1.try_div(s.1)?;
    Some((m, c))
}

impl<C: Scalar> Poly<C> {
    pub fn zero(ctx: &Ctx) -> Self {
        Poly { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Ctx, c: C) -> Self {
        Self::term(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn var(ctx: &Ctx, index: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.nvars(), index), C::one())
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        let i = ctx.index_of(name).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("unknown variable '{name}'"),
        })?;
        Ok(Self::var(ctx, i))
    }

    pub fn term(ctx: &Ctx, m: Monomial, c: C) -> Self {
        debug_assert_eq!(m.0.len(), ctx.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ctx: ctx.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(ctx: &Ctx, mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add_ref(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        // a zero sum may have been followed by the same monomial again
        out.retain(|(_, c)| !c.is_zero());
        Poly { ctx: ctx.clone(), terms: out }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn ht(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn hc(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_data(&self) -> Result<LeadingData<C>> {
        let (m, c) = self.leading_term().ok_or(Error::ZeroPolynomial)?;
        Ok(LeadingData { hm: Poly::term(&self.ctx, m.clone(), c.clone()), ht: m.clone(), hc: c.clone() })
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_coeff(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.uses_var(index))
    }

    fn check_ctx(&self, other: &Self) {
        assert!(same_ctx(&self.ctx, &other.ctx), "polynomials from different contexts");
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_ctx(other);
        let ctx = &self.ctx;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ctx.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            let c = if negate_other { -c.clone() } else { c.clone() };
            out.push((m.clone(), c));
        }
        Poly { ctx: ctx.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| (m.clone(), d.mul_ref(c)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Poly { ctx: self.ctx.clone(), terms }
    }

    /// `c * m * self`; multiplication by a monomial preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), d.mul_ref(c)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Poly { ctx: self.ctx.clone(), terms }
    }

    /// `self - c * m * g`, fused.
    pub fn sub_mul_term(&self, m: &Monomial, c: &C, g: &Self) -> Self {
        self.sub(&g.mul_term(m, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let e = acc.entry(m.mul(n)).or_insert_with(C::zero);
                *e = e.add_ref(&c.mul_ref(d));
            }
        }
        Poly::from_terms(&self.ctx, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
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

    /// Divides every coefficient by the unit part of the leading coefficient,
    /// so that the leading coefficient becomes a power of the uniformiser.
    pub fn normalized(&self) -> Self {
        match self.hc() {
            None => self.clone(),
            Some(hc) => {
                let u = hc.unit_part().expect("nonzero");
                if u.is_one() {
                    return self.clone();
                }
                let terms = self
                    .terms
                    .iter()
                    .map(|(m, c)| (m.clone(), c.try_div(&u).expect("division by a unit")))
                    .collect();
                Poly { ctx: self.ctx.clone(), terms }
            }
        }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { ctx: self.ctx.clone(), terms }
    }

    /// Replaces each variable by the given image (`None` keeps the variable).
    /// Images must live in `target`; unreplaced variables are mapped by name.
    pub fn substitute(&self, target: &Ctx, images: &[Option<Poly<C>>]) -> Result<Poly<C>> {
        let n = self.ctx.nvars();
        let mut var_images = Vec::with_capacity(n);
        for (i, name) in self.ctx.names().iter().enumerate() {
            match images.get(i).and_then(|x| x.clone()) {
                Some(p) => var_images.push(p),
                None => match target.index_of(name) {
                    Some(j) => var_images.push(Poly::var(target, j)),
                    None if !self.uses_var(i) => var_images.push(Poly::zero(target)),
                    None => {
                        return Err(Error::InvalidContext(format!("variable '{name}' missing from target context")))
                    }
                },
            }
        }
        let mut out = Poly::zero(target);
        let mut power_cache: HashMap<(usize, u32), Poly<C>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache.entry((i, e)).or_insert_with(|| var_images[i].pow(e)).clone();
                t = t.mul(&p);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in another context by matching variable
    /// names.
    pub fn to_context(&self, target: &Ctx) -> Result<Poly<C>> {
        if same_ctx(&self.ctx, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ctx.nvars());
        for (i, name) in self.ctx.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.uses_var(i) => map.push(None),
                None => {
                    return Err(Error::InvalidContext(format!("variable '{name}' missing from target context")))
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(target.nvars());
                for (i, &k) in m.0.iter().enumerate() {
                    if let Some(j) = map[i] {
                        e.0[j] = k;
                    }
                }
                (e, c.clone())
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    pub fn parse(text: &str, ctx: &Ctx) -> Result<Self> {
        Parser::new(text, ctx, &HashMap::new()).parse_all()
    }

    /// Like [`Poly::parse`], resolving the names in `consts` to scalars first.
    pub fn parse_with(text: &str, ctx: &Ctx, consts: &HashMap<String, C>) -> Result<Self> {
        Parser::new(text, ctx, consts).parse_all()
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&magnitude)?;
            } else {
                if magnitude != "1" {
                    write!(f, "{magnitude}*")?;
                }
                m.write(&self.ctx, f)?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Recursive-descent parser for
///
/// ```text
/// expr   := [+|-] term ((+|-) term)*
/// term   := factor (* factor)*
/// factor := atom (^ posint)?
/// atom   := integer [/ integer] | name | ( expr )
/// ```
///
/// Names are identifiers optionally followed by apostrophes.
struct Parser<'a, C: Scalar> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Ctx,
    consts: &'a HashMap<String, C>,
}

impl<'a, C: Scalar> Parser<'a, C> {
    fn new(text: &'a str, ctx: &'a Ctx, consts: &'a HashMap<String, C>) -> Self {
        Parser { src: text.as_bytes(), pos: 0, ctx, consts }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Poly<C>> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err(format!("unexpected character '{}'", self.src[self.pos] as char));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly<C>> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<C>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<C>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = match text.parse() {
                Ok(e) => e,
                Err(_) => {
                    self.pos = start;
                    return self.err("exponent out of range");
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<Poly<C>> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let mut text = self.digits().to_string();
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits();
                    if den.is_empty() {
                        return self.err("expected denominator");
                    }
                    text.push('/');
                    text.push_str(den);
                } else {
                    self.pos = save;
                }
                match text.parse::<C>() {
                    Ok(c) => Ok(Poly::constant(self.ctx, c)),
                    Err(Error::Parse { msg, .. }) => Err(Error::Parse { pos: start, msg }),
                    Err(e) => Err(e),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                while self.pos < self.src.len() && self.src[self.pos] == b'\'' {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(c) = self.consts.get(name) {
                    return Ok(Poly::constant(self.ctx, c.clone()));
                }
                match self.ctx.index_of(name) {
                    Some(i) => Ok(Poly::var(self.ctx, i)),
                    None => Err(Error::Parse { pos: start, msg: format!("unknown variable '{name}'") }),
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }
}
