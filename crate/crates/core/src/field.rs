//! Exact scalar arithmetic: prime fields F_p and arbitrary-precision rationals.
//!
//! All linear algebra in this crate is generic over [`Field`]. The two
//! implementations are [`Fp`] (a prime field with const-generic modulus) and
//! [`Rat`] (always-reduced big rationals). Floating point is deliberately
//! not supported: canonical forms must be bit-exact.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Runtime descriptor of a scalar field, used for dispatch and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// Prime field F_p with p a prime, p <= 251.
    Prime(u64),
    /// The field of rational numbers.
    Rationals,
}

pub(crate) const fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p > 251 {
            return Err(Error::UnsupportedField(format!(
                "F{p}: modulus must be a prime <= 251"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::UnsupportedField(s.to_string()))?;
            return FieldSpec::prime(p);
        }
        Err(Error::UnsupportedField(s.to_string()))
    }
}

/// An exact field the linear algebra can run over.
///
/// `elements()` returns the full element list (in a fixed canonical order)
/// for finite fields and `None` for infinite ones; exhaustive enumeration
/// is only available when it is `Some`.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + PartialOrd
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    fn spec() -> FieldSpec;

    /// Multiplicative inverse; `None` on zero.
    fn inv(&self) -> Option<Self>;

    /// Canonical image of an integer.
    fn from_int(n: i64) -> Self;

    /// All elements in canonical order, when the field is finite.
    fn elements() -> Option<Vec<Self>>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    /// Integer power, allowing negative exponents. `None` for 0^(negative).
    fn pow_int(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }
}

/// Prime field with compile-time modulus; elements are residues 0..P.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME_CHECK: () = assert!(is_prime_u64(P) && P <= 251, "modulus must be a prime <= 251");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME_CHECK;
        Fp(v % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
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
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2) is the inverse for prime p.
        let mut acc = 1u64;
        let mut base = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Some(Fp(acc))
    }

    fn from_int(n: i64) -> Self {
        let p = P as i64;
        Fp(n.rem_euclid(p) as u64)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn to_json(&self) -> Value {
        Value::from(self.0)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .as_i64()
            .ok_or_else(|| Error::Parse(format!("expected an integer entry, got {v}")))?;
        Ok(Self::from_int(n))
    }
}

/// Rational number: arbitrary-precision integers, always reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Hash for Rat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // BigRational is kept reduced with positive denominator, so the
        // (numer, denom) pair is a canonical key.
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for Rat {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Rat(self.0 * rhs.0)
    }
}

impl Neg for Rat {
    type Output = Self;
    fn neg(self) -> Self {
        Rat(-self.0)
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
}

impl Field for Rat {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn to_json(&self) -> Value {
        Value::from(format!("{}/{}", self.0.numer(), self.0.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        if let Some(n) = v.as_i64() {
            return Ok(Self::from_int(n));
        }
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected \"n/d\" entry, got {v}")))?;
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer =
            BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad numerator {s}")))?;
        let denom =
            BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad denominator {s}")))?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

/// F_2, the default verification field.
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

/// Monomorphization hook for runtime field dispatch.
pub trait FieldVisitor {
    type Out;
    fn visit<K: Field>(self) -> Self::Out;
}

/// Dispatch a generic computation on a runtime [`FieldSpec`].
///
/// Finite-field dispatch is limited to the moduli the command-line surface
/// admits (2, 3, 5, 7); other primes are valid descriptors but have no
/// monomorphized backend.
pub fn dispatch_field<V: FieldVisitor>(spec: FieldSpec, v: V) -> Result<V::Out> {
    match spec {
        FieldSpec::Prime(2) => Ok(v.visit::<F2>()),
        FieldSpec::Prime(3) => Ok(v.visit::<F3>()),
        FieldSpec::Prime(5) => Ok(v.visit::<F5>()),
        FieldSpec::Prime(7) => Ok(v.visit::<F7>()),
        FieldSpec::Prime(p) => Err(Error::UnsupportedField(format!(
            "F{p} has no enumeration backend; use F2, F3, F5 or F7"
        ))),
        FieldSpec::Rationals => Ok(v.visit::<Rat>()),
    }
}
