//! Coefficient domains.
//!
//! Everything above this module is generic over [`Scalar`]: the ring
//! `Z_(l)` of rationals with denominator prime to `l` ([`DvrScalar`]) and its
//! residue field `F_l` ([`Fp`]). Both carry the prime as a const parameter,
//! so mixing elements of different rings is a type error.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A discrete valuation ring (or a field, viewed as the trivial case) whose
/// maximal ideal is generated by the rational prime [`Scalar::prime`].
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = Error>
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The residue characteristic `l`.
    fn prime() -> u64;

    fn from_i64(n: i64) -> Self;

    /// `l`-adic valuation; `None` stands for the valuation of zero.
    fn valuation(&self) -> Option<u32>;

    /// `u` with `self = u * l^valuation(self)`.
    fn unit_part(&self) -> Result<Self>;

    /// Exact quotient inside the ring, if it exists.
    fn try_div(&self, divisor: &Self) -> Option<Self>;

    /// The image of `l^k` in the ring.
    fn lambda_pow(k: u32) -> Self;

    /// Canonical representative of `self` modulo `l^k`, an integer in `[0, l^k)`.
    fn rem_lambda_pow(&self, k: u32) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }
}

pub(crate) const fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Element of the localisation `Z_(L)`: a reduced fraction whose denominator
/// is prime to `L`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DvrScalar<const L: u64>(BigRational);

impl<const L: u64> DvrScalar<L> {
    const CHECK_PRIME: () = assert!(is_odd_prime(L), "DvrScalar requires an odd prime");

    pub fn from_rational(value: BigRational) -> Result<Self> {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK_PRIME;
        if value.denom().is_multiple_of(&BigInt::from(L)) {
            return Err(Error::NotIntegral(L));
        }
        Ok(DvrScalar(value))
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        DvrScalar(BigRational::from_integer(n))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Image in the residue field `F_L`.
    pub fn residue(&self) -> Fp<L> {
        let l = BigInt::from(L);
        let n = self.0.numer().mod_floor(&l).to_u64().unwrap();
        let d = self.0.denom().mod_floor(&l).to_u64().unwrap();
        Fp::new(n) * Fp::new(d).inverse().expect("denominator is a unit")
    }
}

impl<const L: u64> Scalar for DvrScalar<L> {
    fn prime() -> u64 {
        L
    }

    fn from_i64(n: i64) -> Self {
        DvrScalar(BigRational::from_integer(n.into()))
    }

    fn valuation(&self) -> Option<u32> {
        if self.0.is_zero() {
            return None;
        }
        let l = BigInt::from(L);
        let mut n = self.0.numer().abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&l);
            if !r.is_zero() {
                return Some(v);
            }
            n = q;
            v += 1;
        }
    }

    fn unit_part(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroUnitPart)?;
        let scale = BigInt::from(L).pow(v);
        Ok(DvrScalar(BigRational::new(self.0.numer() / scale, self.0.denom().clone())))
    }

    fn try_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.valuation()? < divisor.valuation()? {
            return None;
        }
        Some(DvrScalar(&self.0 / &divisor.0))
    }

    fn lambda_pow(k: u32) -> Self {
        DvrScalar(BigRational::from_integer(BigInt::from(L).pow(k)))
    }

    fn rem_lambda_pow(&self, k: u32) -> Self {
        let modulus = BigInt::from(L).pow(k);
        if modulus.is_one() {
            return Self::zero();
        }
        let d = self.0.denom().mod_floor(&modulus);
        let eg = d.extended_gcd(&modulus);
        debug_assert!(eg.gcd.is_one());
        let r = (self.0.numer() * eg.x).mod_floor(&modulus);
        DvrScalar(BigRational::from_integer(r))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        DvrScalar(&self.0 + &rhs.0)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        DvrScalar(&self.0 - &rhs.0)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        DvrScalar(&self.0 * &rhs.0)
    }
}

impl<const L: u64> Zero for DvrScalar<L> {
    fn zero() -> Self {
        DvrScalar(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const L: u64> One for DvrScalar<L> {
    fn one() -> Self {
        DvrScalar(BigRational::one())
    }
}

impl<const L: u64> Add for DvrScalar<L> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DvrScalar(self.0 + rhs.0)
    }
}

impl<const L: u64> Sub for DvrScalar<L> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DvrScalar(self.0 - rhs.0)
    }
}

impl<const L: u64> Mul for DvrScalar<L> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        DvrScalar(self.0 * rhs.0)
    }
}

impl<const L: u64> Neg for DvrScalar<L> {
    type Output = Self;
    fn neg(self) -> Self {
        DvrScalar(-self.0)
    }
}

impl<const L: u64> fmt::Display for DvrScalar<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl<const L: u64> fmt::Debug for DvrScalar<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `[sign] digits [/ digits]`.
fn parse_fraction(text: &str) -> Result<(BigInt, BigInt)> {
    let s = text.trim();
    let bad = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let (num_txt, den_txt) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits = num_txt.trim_start_matches(['+', '-']).trim_start();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(0, "expected an integer"));
    }
    let negative = num_txt.starts_with('-');
    let mut numer: BigInt = digits.parse().map_err(|_| bad(0, "expected an integer"))?;
    if negative {
        numer = -numer;
    }
    let denom = match den_txt {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(num_txt.len() + 1, "expected a denominator"));
            }
            d.parse::<BigInt>().map_err(|_| bad(num_txt.len() + 1, "expected a denominator"))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok((numer, denom))
}

impl<const L: u64> FromStr for DvrScalar<L> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = parse_fraction(s)?;
        Self::from_rational(BigRational::new(n, d))
    }
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK_PRIME: () = assert!(is_odd_prime(P), "Fp requires an odd prime");

    pub fn new(value: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK_PRIME;
        Fp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn prime() -> u64 {
        P
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n.rem_euclid(P as i64) as u64)
    }

    fn valuation(&self) -> Option<u32> {
        (self.0 != 0).then_some(0)
    }

    fn unit_part(&self) -> Result<Self> {
        if self.0 == 0 {
            Err(Error::ZeroUnitPart)
        } else {
            Ok(*self)
        }
    }

    fn try_div(&self, divisor: &Self) -> Option<Self> {
        divisor.inverse().map(|inv| *self * inv)
    }

    fn lambda_pow(k: u32) -> Self {
        if k == 0 {
            Fp(1)
        } else {
            Fp(0)
        }
    }

    fn rem_lambda_pow(&self, _k: u32) -> Self {
        Fp(0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> FromStr for Fp<P> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = parse_fraction(s)?;
        let p = BigInt::from(P);
        let n = Fp::new(n.mod_floor(&p).to_u64().unwrap());
        let d = Fp::new(d.mod_floor(&p).to_u64().unwrap());
        d.inverse().map(|inv| n * inv).ok_or(Error::NotIntegral(P))
    }
}
