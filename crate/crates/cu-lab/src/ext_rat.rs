//! Nonnegative rationals extended by a single point at infinity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// An exact value in `[0, ∞]`.
///
/// Finite values are kept in lowest terms with a positive denominator, so
/// structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Fin(BigRational),
    Inf,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Fin(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRat::Fin(BigRational::one())
    }

    pub fn int(n: u64) -> Self {
        ExtRat::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn frac(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtRat::Fin(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Wraps a rational, rejecting negative values.
    pub fn from_rational(q: BigRational) -> Option<Self> {
        if q.is_negative() {
            None
        } else {
            Some(ExtRat::Fin(q))
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRat::Fin(q) if q.is_zero())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Fin(q) => Some(q),
            ExtRat::Inf => None,
        }
    }

    /// `n · self` with `0 · ∞ = 0`.
    pub fn mul_int(&self, n: u64) -> Self {
        if n == 0 {
            return ExtRat::zero();
        }
        match self {
            ExtRat::Fin(q) => ExtRat::Fin(q * BigRational::from_integer(BigInt::from(n))),
            ExtRat::Inf => ExtRat::Inf,
        }
    }

    /// Product with `0 · ∞ = 0`.
    pub fn mul(&self, other: &ExtRat) -> Self {
        if self.is_zero() || other.is_zero() {
            return ExtRat::zero();
        }
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a * b),
            _ => ExtRat::Inf,
        }
    }

    /// Quotient with `q/0 = ∞` for `q > 0`, `0/0 = 0`, `q/∞ = 0`, `∞/q = ∞`, `∞/∞ = 0`.
    pub fn div(&self, other: &ExtRat) -> Self {
        match (self, other) {
            (_, ExtRat::Inf) => ExtRat::zero(),
            (ExtRat::Inf, _) => ExtRat::Inf,
            (ExtRat::Fin(a), ExtRat::Fin(b)) => {
                if a.is_zero() {
                    ExtRat::zero()
                } else if b.is_zero() {
                    ExtRat::Inf
                } else {
                    ExtRat::Fin(a / b)
                }
            }
        }
    }

    /// `1/self` with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        ExtRat::one().div(self)
    }

    /// `self − other` when the result is nonnegative and finite.
    pub fn checked_sub(&self, other: &ExtRat) -> Option<Self> {
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) if a >= b => Some(ExtRat::Fin(a - b)),
            _ => None,
        }
    }

    pub fn min(self, other: ExtRat) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtRat) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRat::Fin(q) => q.to_f64().unwrap_or(f64::MAX),
            ExtRat::Inf => f64::INFINITY,
        }
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl Add for ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: ExtRat) -> ExtRat {
        &self + &rhs
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => a.cmp(b),
            (ExtRat::Fin(_), ExtRat::Inf) => Ordering::Less,
            (ExtRat::Inf, ExtRat::Fin(_)) => Ordering::Greater,
            (ExtRat::Inf, ExtRat::Inf) => Ordering::Equal,
        }
    }
}

impl From<BigRational> for ExtRat {
    fn from(q: BigRational) -> Self {
        assert!(!q.is_negative(), "negative value");
        ExtRat::Fin(q)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Inf => write!(f, "inf"),
            ExtRat::Fin(q) => write_rational(f, q),
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` (nonnegative, `q > 0`).
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let t = text.trim();
    let bad = || ParseError::Syntax(format!("not a rational: {t:?}"));
    if t.is_empty() || t.starts_with('+') || t.starts_with('-') {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ParseError::Syntax(format!("zero denominator in {t:?}")));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for ExtRat {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "inf" {
            Ok(ExtRat::Inf)
        } else {
            parse_rational(s).map(ExtRat::Fin)
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q: ExtRat = "6/8".parse().unwrap();
        assert_eq!(q, ExtRat::frac(3, 4));
        assert_eq!(q.to_string(), "3/4");
        assert_eq!("4/2".parse::<ExtRat>().unwrap().to_string(), "2");
    }

    #[test]
    fn infinity_absorbs() {
        assert_eq!(&ExtRat::Inf + &ExtRat::frac(1, 2), ExtRat::Inf);
        assert!(ExtRat::Inf > ExtRat::int(1_000_000));
        assert_eq!(ExtRat::Inf.mul_int(0), ExtRat::zero());
    }

    #[test]
    fn rejects_bad_literals() {
        for t in ["", "-1", "1/0", "a", "1/", "/2", "+3", "1.5"] {
            assert!(t.parse::<ExtRat>().is_err(), "{t}");
        }
    }

    #[test]
    fn division_conventions() {
        assert_eq!(ExtRat::frac(1, 2).div(&ExtRat::one()), ExtRat::frac(1, 2));
        assert_eq!(ExtRat::one().div(&ExtRat::zero()), ExtRat::Inf);
        assert_eq!(ExtRat::zero().div(&ExtRat::zero()), ExtRat::zero());
        assert_eq!(ExtRat::Inf.div(&ExtRat::Inf), ExtRat::zero());
        assert_eq!(ExtRat::zero().recip(), ExtRat::Inf);
        assert_eq!(ExtRat::one().checked_sub(&ExtRat::frac(3, 2)), None);
    }
}
