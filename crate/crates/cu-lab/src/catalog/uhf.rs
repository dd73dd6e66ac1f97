//! Compact and soft copies of the positive rationals, ordered by value.
//!
//! A compact point sits just above the soft point of the same value:
//! `c:q ≤ s:r` iff `q < r`, and `s:r ≤ c:q` iff `r ≤ q`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::grammar::{approach_factor, fin, rand_open_closed, rat};
use crate::error::ParseError;
use crate::ext_rat::{fmt_rational, parse_rational, ExtRat};
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};
use crate::series::SeriesSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UhfElem {
    Zero,
    Compact(BigRational),
    Soft(ExtRat),
}

impl UhfElem {
    pub fn value(&self) -> ExtRat {
        match self {
            UhfElem::Zero => ExtRat::zero(),
            UhfElem::Compact(q) => fin(q.clone()),
            UhfElem::Soft(r) => r.clone(),
        }
    }

    pub fn is_compact(&self) -> bool {
        !matches!(self, UhfElem::Soft(_))
    }

    pub fn soft_inf() -> Self {
        UhfElem::Soft(ExtRat::Inf)
    }

    /// Same sort as `self`, new value; zero values give `Zero`.
    pub fn with_value(&self, v: ExtRat) -> Self {
        if v.is_zero() {
            return UhfElem::Zero;
        }
        match (self, v) {
            (UhfElem::Compact(_), ExtRat::Fin(q)) => UhfElem::Compact(q),
            (_, v) => UhfElem::Soft(v),
        }
    }
}

pub fn uhf_add(x: &UhfElem, y: &UhfElem) -> UhfElem {
    match (x, y) {
        (UhfElem::Zero, _) => y.clone(),
        (_, UhfElem::Zero) => x.clone(),
        (UhfElem::Compact(a), UhfElem::Compact(b)) => UhfElem::Compact(a + b),
        _ => UhfElem::Soft(&x.value() + &y.value()),
    }
}

pub fn uhf_leq(x: &UhfElem, y: &UhfElem) -> bool {
    match (x, y) {
        (UhfElem::Zero, _) => true,
        (_, UhfElem::Zero) => false,
        (UhfElem::Compact(_), UhfElem::Soft(_)) => x.value() < y.value(),
        _ => x.value() <= y.value(),
    }
}

pub fn uhf_way_below(x: &UhfElem, y: &UhfElem) -> bool {
    match (x, y) {
        (UhfElem::Zero, _) | (UhfElem::Compact(_), _) => uhf_leq(x, y),
        (UhfElem::Soft(_), UhfElem::Zero) => false,
        (UhfElem::Soft(r), UhfElem::Compact(q)) => *r <= fin(q.clone()),
        (UhfElem::Soft(r), UhfElem::Soft(s)) => r < s,
    }
}

pub fn uhf_rapid_term(x: &UhfElem, n: u32) -> UhfElem {
    match x {
        UhfElem::Soft(ExtRat::Fin(r)) => UhfElem::Compact(r * approach_factor(n)),
        UhfElem::Soft(ExtRat::Inf) => UhfElem::Compact(BigRational::from_integer((n + 1).into())),
        _ => x.clone(),
    }
}

pub fn parse_uhf(text: &str) -> Result<UhfElem, ParseError> {
    let t = text.trim();
    if t == "0" {
        return Ok(UhfElem::Zero);
    }
    let bad = || ParseError::OutOfCarrier(format!("{t:?}: values must be positive"));
    if let Some(v) = t.strip_prefix("c:") {
        let q = parse_rational(v)?;
        return if q.is_zero() {
            Err(bad())
        } else {
            Ok(UhfElem::Compact(q))
        };
    }
    if let Some(v) = t.strip_prefix("s:") {
        let r: ExtRat = v.parse()?;
        return if r.is_zero() {
            Err(bad())
        } else {
            Ok(UhfElem::Soft(r))
        };
    }
    Err(ParseError::Syntax(format!(
        "expected \"0\", \"c:p/q\", \"s:p/q\" or \"s:inf\", got {t:?}"
    )))
}

pub fn format_uhf(x: &UhfElem) -> String {
    match x {
        UhfElem::Zero => "0".to_string(),
        UhfElem::Compact(q) => format!("c:{}", fmt_rational(q)),
        UhfElem::Soft(r) => format!("s:{r}"),
    }
}

/// Compact or soft (even odds) with value in `(lo, hi]`.
pub fn rand_uhf<R: Rng + ?Sized>(rng: &mut R, lo: &BigRational, hi: &BigRational, max_den: u32) -> UhfElem {
    let q = rand_open_closed(rng, lo, hi, max_den);
    if q.is_zero() {
        UhfElem::Zero
    } else if rng.gen_bool(0.5) {
        UhfElem::Compact(q)
    } else {
        UhfElem::Soft(fin(q))
    }
}

/// Value-`v` points of both sorts (nothing for `v = 0` or `∞`).
pub fn both_sorts(v: &ExtRat) -> Vec<UhfElem> {
    match v {
        ExtRat::Fin(q) if !q.is_zero() => vec![UhfElem::Compact(q.clone()), UhfElem::Soft(v.clone())],
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, Default)]
pub struct UhfRay;

impl Semigroup for UhfRay {
    type Elem = UhfElem;

    fn id(&self) -> &str {
        "uhf"
    }

    fn entry(&self) -> &'static str {
        "UhfRay"
    }

    fn zero(&self) -> UhfElem {
        UhfElem::Zero
    }

    fn top(&self) -> UhfElem {
        UhfElem::soft_inf()
    }

    fn add(&self, x: &UhfElem, y: &UhfElem) -> UhfElem {
        uhf_add(x, y)
    }

    fn leq(&self, x: &UhfElem, y: &UhfElem) -> bool {
        uhf_leq(x, y)
    }

    fn way_below(&self, x: &UhfElem, y: &UhfElem) -> bool {
        uhf_way_below(x, y)
    }

    fn rapid_term(&self, x: &UhfElem, n: u32) -> UhfElem {
        uhf_rapid_term(x, n)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> UhfElem {
        let zero = BigRational::zero();
        match profile {
            Profile::Small => rand_uhf(rng, &zero, &BigRational::one(), 8),
            Profile::Mixed => match rng.gen_range(0..16) {
                0 => UhfElem::Zero,
                1 => UhfElem::soft_inf(),
                _ => rand_uhf(rng, &zero, &rat(4, 1), 64),
            },
            Profile::NearTop => {
                if rng.gen_range(0..4) == 0 {
                    UhfElem::soft_inf()
                } else {
                    rand_uhf(rng, &rat(2, 1), &rat(4, 1), 16)
                }
            }
        }
    }

    fn parse(&self, text: &str) -> Result<UhfElem, ParseError> {
        parse_uhf(text)
    }

    fn format(&self, x: &UhfElem) -> String {
        format_uhf(x)
    }

    fn is_simple(&self) -> bool {
        true
    }

    fn is_algebraic(&self) -> bool {
        true
    }

    fn classification(&self) -> Classification {
        Classification::StablyFinite
    }

    fn landmarks(&self) -> Vec<UhfElem> {
        let half = rat(1, 2);
        let one = BigRational::one();
        let two = rat(2, 1);
        vec![
            UhfElem::Zero,
            UhfElem::Compact(half.clone()),
            UhfElem::Soft(fin(half)),
            UhfElem::Compact(one.clone()),
            UhfElem::Soft(fin(one)),
            UhfElem::Compact(two.clone()),
            UhfElem::Soft(fin(two)),
            UhfElem::soft_inf(),
        ]
    }

    fn scalar_term(&self, q: &ExtRat) -> Option<UhfElem> {
        Some(match q {
            ExtRat::Fin(v) if v.is_zero() => UhfElem::Zero,
            ExtRat::Fin(v) => UhfElem::Compact(v.clone()),
            ExtRat::Inf => UhfElem::soft_inf(),
        })
    }

    fn scalar_limit(&self, q: &ExtRat) -> Option<UhfElem> {
        Some(if q.is_zero() {
            UhfElem::Zero
        } else {
            UhfElem::Soft(q.clone())
        })
    }

    fn s_below_exact(&self, x: &UhfElem, y: &UhfElem) -> Option<bool> {
        let (vx, vy) = (x.value(), y.value());
        Some(vx.is_zero() || vy.is_inf() || vx < vy)
    }

    fn properly_infinite_multiple_exact(&self, x: &UhfElem) -> Option<bool> {
        let v = x.value();
        Some(v.is_zero() || v.is_inf())
    }

    fn beta_formula(&self, x: &UhfElem, y: &UhfElem) -> Option<ExtRat> {
        Some(x.value().div(&y.value()))
    }

    fn s_below_all_terms(&self, x: &UhfElem, spec: &SeriesSpec<UhfElem>) -> Option<bool> {
        match spec {
            SeriesSpec::Constant { term } => self.s_below_exact(x, term),
            SeriesSpec::Geometric { first, .. } if first.is_inf() => Some(true),
            // Terms shrink to zero, so eventually fall below any nonzero x.
            SeriesSpec::Geometric { .. } => Some(x.value().is_zero()),
            _ => None,
        }
    }

    fn o5_candidates(&self, xp: &UhfElem, x: &UhfElem, y: &UhfElem) -> Candidates<UhfElem> {
        let mut elems = vec![UhfElem::Zero, y.clone(), UhfElem::soft_inf()];
        let vy = y.value();
        for sub in [xp, x] {
            if let Some(d) = vy.checked_sub(&sub.value()) {
                elems.extend(both_sorts(&d));
            }
        }
        Candidates::partial(elems)
    }

    fn meet(&self, a: &UhfElem, b: &UhfElem) -> Option<UhfElem> {
        Some(if uhf_leq(a, b) { a.clone() } else { b.clone() })
    }

    fn halving_candidates(&self, x: &UhfElem) -> Candidates<UhfElem> {
        let h = x.value().mul(&ExtRat::frac(1, 2));
        let mut elems = both_sorts(&h);
        if x.value().is_inf() {
            elems.push(UhfElem::soft_inf());
        }
        Candidates::partial(elems)
    }

    fn absorbed_candidates(&self, a: &UhfElem) -> Candidates<UhfElem> {
        let mut elems = vec![UhfElem::Compact(BigRational::one()), UhfElem::soft_inf()];
        if *a != UhfElem::Zero {
            elems.push(a.clone());
        }
        Candidates::partial(elems)
    }

    fn functional_coordinate(&self, x: &UhfElem) -> Option<ExtRat> {
        Some(x.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{has_properly_infinite_multiple, is_properly_infinite, s_below};

    fn e(s: &str) -> UhfElem {
        parse_uhf(s).unwrap()
    }

    #[test]
    fn mixed_order() {
        assert!(!uhf_leq(&e("c:1/2"), &e("s:1/2")));
        assert!(uhf_leq(&e("s:1/2"), &e("c:1/2")));
        assert!(uhf_leq(&e("c:1/2"), &e("s:3/4")));
        assert!(uhf_way_below(&e("s:1/2"), &e("c:1/2")));
        assert!(!uhf_way_below(&e("s:1/2"), &e("s:1/2")));
        assert!(uhf_way_below(&e("c:1/2"), &e("c:1/2")));
    }

    #[test]
    fn soft_absorbs_compact_in_sums() {
        assert_eq!(uhf_add(&e("c:1/2"), &e("c:1/4")), e("c:3/4"));
        assert_eq!(uhf_add(&e("c:1/2"), &e("s:1/4")), e("s:3/4"));
        assert_eq!(uhf_add(&e("s:1"), &e("s:inf")), e("s:inf"));
    }

    #[test]
    fn no_finite_element_is_infinite() {
        let s = UhfRay;
        assert_eq!(s_below(&s, &e("s:1"), &e("s:1"), 64), None);
        assert!(!is_properly_infinite(&s, &e("s:2")));
        assert_eq!(has_properly_infinite_multiple(&s, &e("s:1"), 64), None);
        assert!(is_properly_infinite(&s, &s.top()));
    }

    #[test]
    fn grammar() {
        for t in ["0", "c:1/2", "s:3", "s:inf"] {
            assert_eq!(format_uhf(&e(t)), t);
        }
        assert!(parse_uhf("c:0").is_err());
        assert!(parse_uhf("c:inf").is_err());
        assert!(parse_uhf("1/2").is_err());
    }
}
