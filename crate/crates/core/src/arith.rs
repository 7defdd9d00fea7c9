//! Exact nonnegative rationals over arbitrary-precision integers.
//!
//! [`Ratio`] is always stored reduced with a positive denominator, so equality
//! is structural and numerator/denominator are the n(x), d(x) of the value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced nonnegative rational `num/den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    /// Builds `p/q` in lowest terms.
    pub fn new(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Result<Self> {
        let p = p.into();
        let q = q.into();
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(p, q))
    }

    fn reduced(p: BigUint, q: BigUint) -> Self {
        if p.is_zero() {
            return Ratio {
                num: BigUint::zero(),
                den: BigUint::one(),
            };
        }
        let g = p.gcd(&q);
        if g.is_one() {
            Ratio { num: p, den: q }
        } else {
            Ratio {
                num: p / &g,
                den: q / g,
            }
        }
    }

    pub fn zero() -> Self {
        Ratio {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1u32)
    }

    pub fn integer(n: impl Into<BigUint>) -> Self {
        Ratio {
            num: n.into(),
            den: BigUint::one(),
        }
    }

    /// n(x)
    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    /// d(x)
    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Exact `self^e`. Numerator and denominator are raised separately, which
    /// keeps the result reduced without another gcd.
    pub fn pow(&self, e: u64) -> Ratio {
        Ratio {
            num: Pow::pow(&self.num, e),
            den: Pow::pow(&self.den, e),
        }
    }

    pub fn add(&self, other: &Ratio) -> Ratio {
        if self.den == other.den {
            return Self::reduced(&self.num + &other.num, self.den.clone());
        }
        Self::reduced(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    /// `self - other`, or `None` when the difference would be negative.
    pub fn checked_sub(&self, other: &Ratio) -> Option<Ratio> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        if lhs < rhs {
            return None;
        }
        Some(Self::reduced(lhs - rhs, &self.den * &other.den))
    }

    pub fn mul(&self, other: &Ratio) -> Ratio {
        Self::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_int(&self, k: &BigUint) -> Ratio {
        Self::reduced(&self.num * k, self.den.clone())
    }

    /// `self / other`; fails on division by zero.
    pub fn div(&self, other: &Ratio) -> Result<Ratio> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(&self.num * &other.den, &self.den * &other.num))
    }

    /// `floor(self / other)` for `other > 0`.
    pub fn floor_div(&self, other: &Ratio) -> BigUint {
        debug_assert!(!other.is_zero());
        (&self.num * &other.den) / (&self.den * &other.num)
    }

    /// Sum of an iterator of ratios.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Ratio>) -> Ratio {
        items
            .into_iter()
            .fold(Ratio::zero(), |acc, x| acc.add(x))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p = parse_nat(p)?;
        let q = parse_nat(q)?;
        Ratio::new(p, q)
    }
}

/// Parses a nonnegative decimal integer (no sign).
pub(crate) fn parse_nat(s: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("expected a nonnegative integer, got {s:?}")));
    }
    BigUint::from_str(s).map_err(|e| Error::parse(e.to_string()))
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `make_ratio(p, q)`: the reduced form of `p/q`.
pub fn make_ratio(p: u64, q: u64) -> Result<Ratio> {
    Ratio::new(p, q)
}

/// `max{k : b^k | m}` for `b >= 2`, `m >= 1`.
///
/// Panics if the preconditions are violated.
pub fn max_power_dividing(b: &BigUint, m: &BigUint) -> u64 {
    assert!(*b >= BigUint::from(2u32), "base must be at least 2");
    assert!(!m.is_zero(), "m must be positive");
    let mut k = 0;
    let mut rest = m.clone();
    loop {
        let (q, r) = rest.div_rem(b);
        if !r.is_zero() {
            return k;
        }
        rest = q;
        k += 1;
    }
}

/// Smallest prime factor by trial division, or `None` for `n < 2`.
pub(crate) fn smallest_prime_factor(n: &BigUint) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    if *n < two {
        return None;
    }
    if n.is_even() {
        return Some(two);
    }
    let mut p = BigUint::from(3u32);
    while &p * &p <= *n {
        if (n % &p).is_zero() {
            return Some(p);
        }
        p += 2u32;
    }
    Some(n.clone())
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k >= 1`.
pub(crate) fn prime_power_base(n: &BigUint) -> Option<BigUint> {
    let p = smallest_prime_factor(n)?;
    let mut rest = n.clone();
    while (&rest % &p).is_zero() {
        rest /= &p;
    }
    rest.is_one().then_some(p)
}

/// Modular inverse of `a` modulo `m` (`m >= 1`, `gcd(a, m) = 1`).
pub(crate) fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    use num_bigint::BigInt;
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let a = BigInt::from(a % m);
    let mi = BigInt::from(m.clone());
    let ext = a.extended_gcd(&mi);
    if !ext.gcd.is_one() {
        return None;
    }
    let x = ext.x.mod_floor(&mi);
    x.to_biguint()
}
