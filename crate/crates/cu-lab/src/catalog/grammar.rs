//! Shared pieces of the element grammar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::ParseError;
use crate::ext_rat::{parse_rational, ExtRat};

/// Splits `"(a, b)"` into `("a", "b")` at the top-level comma.
pub fn split_pair(text: &str) -> Result<(&str, &str), ParseError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| ParseError::Syntax(format!("expected a pair \"(a, b)\", got {t:?}")))?;
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Ok((inner[..i].trim(), inner[i + 1..].trim())),
            _ => {}
        }
    }
    Err(ParseError::Syntax(format!("pair without a comma: {t:?}")))
}

/// Parses `"[a1,a2,…;tail]"`.
pub fn split_sequence(text: &str) -> Result<(Vec<BigRational>, BigRational), ParseError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ParseError::Syntax(format!("expected \"[a1,…;tail]\", got {t:?}")))?;
    let (head, tail) = inner
        .split_once(';')
        .ok_or_else(|| ParseError::Syntax(format!("sequence without ';': {t:?}")))?;
    let prefix = if head.trim().is_empty() {
        Vec::new()
    } else {
        head.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok((prefix, parse_rational(tail)?))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> BigRational {
    rat(1, 2)
}

/// `1 − 2^{−(n+1)}`.
pub fn approach_factor(n: u32) -> BigRational {
    let pow = BigInt::one() << (n as usize + 1);
    BigRational::one() - BigRational::new(BigInt::one(), pow)
}

/// Uniform rational in `[lo, hi]` with denominator at most `max_den`.
pub fn rand_rational<R: Rng + ?Sized>(
    rng: &mut R,
    lo: &BigRational,
    hi: &BigRational,
    max_den: u32,
) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    let d = BigRational::from_integer(BigInt::from(den));
    let lo_n = (lo * &d).ceil().to_integer();
    let hi_n = (hi * &d).floor().to_integer();
    if lo_n > hi_n {
        return if lo.is_zero() { hi.clone() } else { lo.clone() };
    }
    let lo_i: i64 = lo_n.try_into().unwrap_or(0);
    let hi_i: i64 = hi_n.try_into().unwrap_or(lo_i);
    let num = rng.gen_range(lo_i..=hi_i);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational in `(lo, hi]`, retrying until strictly above `lo`.
pub fn rand_open_closed<R: Rng + ?Sized>(
    rng: &mut R,
    lo: &BigRational,
    hi: &BigRational,
    max_den: u32,
) -> BigRational {
    for _ in 0..32 {
        let q = rand_rational(rng, lo, hi, max_den);
        if &q > lo {
            return q;
        }
    }
    hi.clone()
}

pub fn fin(q: BigRational) -> ExtRat {
    ExtRat::Fin(q)
}
