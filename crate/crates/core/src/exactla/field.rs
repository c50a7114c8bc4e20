//! Exact scalar fields: rationals over any num-traits integer, and prime fields GF(p).

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a matrix or document lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(FieldSpec::Prime { p })
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rational"),
            FieldSpec::Prime { p } => write!(f, "prime:{p}"),
        }
    }
}

/// Largest modulus accepted for GF(p); keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

fn check_prime(p: u64) -> Result<()> {
    if !(2..=MAX_PRIME).contains(&p) {
        return Err(Error::NotPrime(p));
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return Err(Error::NotPrime(p));
        }
        k += 1;
    }
    Ok(())
}

/// An element of an exact field. Equality is structural: every value is kept
/// in canonical form.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Fixed total order used wherever output must be deterministic.
    /// Rationals compare `(num, den)` lexicographically, residues by value.
    fn canonical_cmp(&self, other: &Self) -> Ordering;
}

/// A field context. Carries whatever runtime data the elements need
/// (the modulus for GF(p)) and produces constants.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn spec(&self) -> FieldSpec;

    /// 0 for characteristic zero, otherwise p.
    fn characteristic(&self) -> u64;

    /// Converts `num/den`; `None` when the fraction has no image in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;

    /// Distinct roots in the field of the polynomial with ascending
    /// coefficients `coeffs`. The zero polynomial has no roots reported.
    fn roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    fn div(&self, a: Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        b.inv().map(|bi| a * bi)
    }
}

/// Integer types usable as the base of [`RationalField`].
pub trait IntegerBase:
    Integer + Signed + Clone + Hash + Display + Debug + Send + Sync + 'static
{
}

impl<T> IntegerBase for T where
    T: Integer + Signed + Clone + Hash + Display + Debug + Send + Sync + 'static
{
}

impl<T: IntegerBase> Scalar for Ratio<T> {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.numer()
            .cmp(other.numer())
            .then_with(|| self.denom().cmp(other.denom()))
    }
}

/// The rationals over the integer type `T`.
#[derive(Debug)]
pub struct RationalField<T> {
    _base: PhantomData<fn() -> T>,
}

impl<T> RationalField<T> {
    pub const fn new() -> Self {
        RationalField { _base: PhantomData }
    }
}

impl<T> Default for RationalField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for RationalField<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for RationalField<T> {}

impl<T> PartialEq for RationalField<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for RationalField<T> {}

impl<T: IntegerBase> Field for RationalField<T> {
    type Elem = Ratio<T>;

    fn zero(&self) -> Ratio<T> {
        Ratio::zero()
    }

    fn one(&self) -> Ratio<T> {
        Ratio::one()
    }

    fn from_i64(&self, v: i64) -> Ratio<T> {
        let t = T::from_str_radix(&v.to_string(), 10)
            .unwrap_or_else(|_| panic!("integer base cannot hold {v}"));
        Ratio::from_integer(t)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Ratio<T>> {
        if den.is_zero() {
            return None;
        }
        let n = T::from_str_radix(&num.to_string(), 10).ok()?;
        let d = T::from_str_radix(&den.to_string(), 10).ok()?;
        Some(Ratio::new(n, d))
    }

    fn roots(&self, coeffs: &[Ratio<T>]) -> Vec<Ratio<T>> {
        rational_roots(coeffs)
    }
}

fn horner<S: Scalar>(coeffs: &[S], x: &S, zero: S) -> S {
    coeffs
        .iter()
        .rev()
        .fold(zero, |acc, c| acc * x.clone() + c.clone())
}

fn divisors<T: IntegerBase>(n: &T) -> Vec<T> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = T::one();
    while k.clone() * k.clone() <= n {
        if (n.clone() % k.clone()).is_zero() {
            let q = n.clone() / k.clone();
            if q != k {
                large.push(q);
            }
            small.push(k.clone());
        }
        k = k + T::one();
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots by the rational root theorem on the denominator-cleared
/// integer polynomial.
fn rational_roots<T: IntegerBase>(coeffs: &[Ratio<T>]) -> Vec<Ratio<T>> {
    let end = match coeffs.iter().rposition(|c| !Zero::is_zero(c)) {
        Some(e) => e + 1,
        None => return Vec::new(),
    };
    let coeffs = &coeffs[..end];
    let lcm = coeffs
        .iter()
        .fold(T::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<T> = coeffs
        .iter()
        .map(|c| (c.clone() * Ratio::from_integer(lcm.clone())).to_integer())
        .collect();

    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(Ratio::zero());
    }
    let ints = &ints[shift..];
    if ints.len() < 2 {
        return roots;
    }
    let lead = ints.last().expect("nonempty");
    let ps = divisors(&ints[0]);
    let qs = divisors(lead);
    let int_coeffs: Vec<Ratio<T>> = ints.iter().cloned().map(Ratio::from_integer).collect();
    for p in &ps {
        for q in &qs {
            for cand in [
                Ratio::new(p.clone(), q.clone()),
                Ratio::new(-p.clone(), q.clone()),
            ] {
                if !roots.contains(&cand)
                    && Zero::is_zero(&horner(&int_coeffs, &cand, Ratio::zero()))
                {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// A residue in GF(p). The modulus travels with the value so that the
/// arithmetic operators need no context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value * rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Fp> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    fn canonical_cmp(&self, other: &Fp) -> Ordering {
        self.value.cmp(&other.value)
    }
}

/// GF(p) for a prime `p <= MAX_PRIME`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp {
            value: v % self.p,
            modulus: self.p,
        }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        self.elem(0)
    }

    fn one(&self) -> Fp {
        self.elem(1)
    }

    fn from_i64(&self, v: i64) -> Fp {
        self.elem(v.rem_euclid(self.p as i64) as u64)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Fp> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u64 {
            let r = x.mod_floor(&p);
            r.to_string().parse().expect("residue fits u64")
        };
        let d = self.elem(reduce(den));
        let n = self.elem(reduce(num));
        d.inv().map(|di| n * di)
    }

    fn roots(&self, coeffs: &[Fp]) -> Vec<Fp> {
        if coeffs.iter().all(|c| c.value == 0) {
            return Vec::new();
        }
        (0..self.p)
            .map(|v| self.elem(v))
            .filter(|x| horner(coeffs, x, self.zero()).value == 0)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn primality_by_trial_division() {
        assert!(PrimeField::new(13).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(q(3, 6), q(1, 2));
        assert_eq!(q(1, -2), q(-1, 2));
        assert_eq!(q(3, 6).to_string(), "1/2");
        assert_eq!(q(4, 2).to_string(), "2");
    }

    #[test]
    fn canonical_order_is_num_then_den() {
        assert_eq!(q(-1, 1).canonical_cmp(&q(1, 1)), Ordering::Less);
        assert_eq!(q(1, 1).canonical_cmp(&q(1, 2)), Ordering::Less);
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.from_i64(-1).canonical_cmp(&f.from_i64(1)), Ordering::Greater);
    }

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(13).unwrap();
        let a = f.from_i64(-2);
        assert_eq!(a.value(), 11);
        assert_eq!(a * a.inv().unwrap(), f.one());
        assert_eq!(f.from_fraction(&BigInt::from(1), &BigInt::from(2)), Some(f.elem(7)));
        assert_eq!(f.from_fraction(&BigInt::from(1), &BigInt::from(13)), None);
    }

    #[test]
    fn rational_roots_of_cubic() {
        let f = crate::Rationals::new();
        // λ^3 - 4λ
        let coeffs = vec![q(0, 1), q(-4, 1), q(0, 1), q(1, 1)];
        let mut r = f.roots(&coeffs);
        r.sort();
        assert_eq!(r, vec![q(-2, 1), q(0, 1), q(2, 1)]);
        // 2λ - 1 has root 1/2
        assert_eq!(f.roots(&[q(-1, 1), q(2, 1)]), vec![q(1, 2)]);
        // λ^2 + 1 has none
        assert!(f.roots(&[q(1, 1), q(0, 1), q(1, 1)]).is_empty());
    }

    #[test]
    fn prime_roots_exhaustive() {
        let f = PrimeField::new(13).unwrap();
        // λ^2 + 1 splits mod 13 (5^2 = 25 = -1)
        let r = f.roots(&[f.one(), f.zero(), f.one()]);
        assert_eq!(r, vec![f.elem(5), f.elem(8)]);
    }

    #[test]
    fn machine_integer_base_works() {
        let f = RationalField::<i64>::new();
        let half = f.from_fraction(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(half, Ratio::new(1i64, 2));
        assert_eq!(half.inv(), Some(Ratio::from_integer(2)));
    }
}
