//! The product entry rebuilt from compact and soft points in each component.
//!
//! The first component holds values in `(0,1]` plus a compact `∞` reached
//! when a sum exceeds 1; the second is a full compact/soft ray.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::grammar::{half, rat, split_pair};
use super::uhf::{
    both_sorts, format_uhf, parse_uhf, rand_uhf, uhf_add, uhf_leq, uhf_rapid_term, uhf_way_below, UhfElem,
};
use crate::error::ParseError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};
use crate::series::SeriesSpec;

/// `(first, second)`; in the first slot `Soft(∞)` is the compact infinity.
pub type AlgElem = (UhfElem, UhfElem);

fn first_inf() -> UhfElem {
    UhfElem::soft_inf()
}

fn is_zero(x: &AlgElem) -> bool {
    x.0 == UhfElem::Zero
}

fn saturate_first(a: UhfElem) -> UhfElem {
    if a.value() > ExtRat::one() {
        first_inf()
    } else {
        a
    }
}

fn first_leq(a: &UhfElem, b: &UhfElem) -> bool {
    match (a.value().is_inf(), b.value().is_inf()) {
        (_, true) => true,
        (true, false) => false,
        _ => uhf_leq(a, b),
    }
}

fn first_way_below(a: &UhfElem, b: &UhfElem) -> bool {
    if b.value().is_inf() {
        return true;
    }
    !a.value().is_inf() && uhf_way_below(a, b)
}

fn first_rapid_term(a: &UhfElem, n: u32) -> UhfElem {
    if a.value().is_inf() {
        a.clone()
    } else {
        uhf_rapid_term(a, n)
    }
}

fn format_first(a: &UhfElem) -> String {
    if a.value().is_inf() {
        "inf".to_string()
    } else {
        format_uhf(a)
    }
}

fn parse_first(t: &str) -> Result<UhfElem, ParseError> {
    if t == "inf" {
        return Ok(first_inf());
    }
    let a = parse_uhf(t)?;
    if a.value() > ExtRat::one() {
        return Err(ParseError::OutOfCarrier(format!(
            "first component {t:?} must be at most 1 or inf"
        )));
    }
    Ok(a)
}

fn per_coord(yc: &UhfElem, subs: [&UhfElem; 2], top: UhfElem) -> Vec<UhfElem> {
    let mut c = vec![top, yc.clone()];
    for s in subs {
        if let Some(d) = yc.value().checked_sub(&s.value()) {
            c.extend(both_sorts(&d));
        }
    }
    c
}

fn halve(a: &UhfElem) -> UhfElem {
    if a.value().is_inf() {
        a.clone()
    } else {
        a.with_value(a.value().mul(&ExtRat::frac(1, 2)))
    }
}

#[derive(Clone, Debug, Default)]
pub struct AlgebraicProduct;

impl Semigroup for AlgebraicProduct {
    type Elem = AlgElem;

    fn id(&self) -> &str {
        "algebraic"
    }

    fn entry(&self) -> &'static str {
        "AlgebraicProduct"
    }

    fn zero(&self) -> AlgElem {
        (UhfElem::Zero, UhfElem::Zero)
    }

    fn top(&self) -> AlgElem {
        (first_inf(), UhfElem::soft_inf())
    }

    fn add(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        if is_zero(x) {
            return y.clone();
        }
        if is_zero(y) {
            return x.clone();
        }
        (saturate_first(uhf_add(&x.0, &y.0)), uhf_add(&x.1, &y.1))
    }

    fn leq(&self, x: &AlgElem, y: &AlgElem) -> bool {
        is_zero(x) || (!is_zero(y) && first_leq(&x.0, &y.0) && uhf_leq(&x.1, &y.1))
    }

    fn way_below(&self, x: &AlgElem, y: &AlgElem) -> bool {
        if is_zero(x) {
            return true;
        }
        !is_zero(y) && first_way_below(&x.0, &y.0) && uhf_way_below(&x.1, &y.1)
    }

    fn rapid_term(&self, x: &AlgElem, n: u32) -> AlgElem {
        if is_zero(x) {
            return x.clone();
        }
        (first_rapid_term(&x.0, n), uhf_rapid_term(&x.1, n))
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> AlgElem {
        let zero = BigRational::zero();
        let one = BigRational::one();
        match profile {
            Profile::Small => (rand_uhf(rng, &zero, &half(), 8), rand_uhf(rng, &zero, &half(), 8)),
            Profile::Mixed => {
                if rng.gen_range(0..10) == 0 {
                    return self.zero();
                }
                let a = if rng.gen_range(0..8) == 0 {
                    first_inf()
                } else {
                    rand_uhf(rng, &zero, &one, 16)
                };
                let r = if rng.gen_range(0..5) == 0 {
                    UhfElem::soft_inf()
                } else {
                    rand_uhf(rng, &zero, &rat(4, 1), 16)
                };
                (a, r)
            }
            Profile::NearTop => {
                let a = if rng.gen_range(0..4) == 0 {
                    first_inf()
                } else {
                    rand_uhf(rng, &half(), &one, 64)
                };
                let r = if rng.gen_range(0..4) == 0 {
                    UhfElem::soft_inf()
                } else {
                    rand_uhf(rng, &one, &rat(4, 1), 16)
                };
                (a, r)
            }
        }
    }

    fn parse(&self, text: &str) -> Result<AlgElem, ParseError> {
        let (a, r) = split_pair(text)?;
        let a = parse_first(a)?;
        let r = parse_uhf(r)?;
        match (a == UhfElem::Zero, r == UhfElem::Zero) {
            (true, true) => Ok(self.zero()),
            (false, false) => Ok((a, r)),
            _ => Err(ParseError::OutOfCarrier(format!(
                "{text:?}: components are both zero or both nonzero"
            ))),
        }
    }

    fn format(&self, x: &AlgElem) -> String {
        format!("({}, {})", format_first(&x.0), format_uhf(&x.1))
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

    fn landmarks(&self) -> Vec<AlgElem> {
        let c = |p: i64, q: i64| UhfElem::Compact(rat(p, q));
        let s = |p: i64, q: i64| UhfElem::Soft(ExtRat::Fin(rat(p, q)));
        vec![
            self.zero(),
            (c(1, 2), c(1, 1)),
            (s(1, 2), s(1, 1)),
            (c(3, 4), c(1, 1)),
            (c(1, 1), c(2, 1)),
            (s(3, 4), UhfElem::soft_inf()),
            (c(1, 1), UhfElem::soft_inf()),
            (first_inf(), c(1, 1)),
            self.top(),
        ]
    }

    fn scalar_term(&self, q: &ExtRat) -> Option<AlgElem> {
        Some(match q {
            ExtRat::Fin(v) if v.is_zero() => self.zero(),
            ExtRat::Fin(v) => (saturate_first(UhfElem::Compact(v.clone())), UhfElem::soft_inf()),
            ExtRat::Inf => self.top(),
        })
    }

    fn scalar_limit(&self, q: &ExtRat) -> Option<AlgElem> {
        if q.is_zero() {
            return Some(self.zero());
        }
        Some((saturate_first(UhfElem::Soft(q.clone())), UhfElem::soft_inf()))
    }

    fn s_below_exact(&self, x: &AlgElem, y: &AlgElem) -> Option<bool> {
        Some(if is_zero(x) {
            true
        } else if is_zero(y) {
            false
        } else {
            y.1.value().is_inf() || x.1.value() < y.1.value()
        })
    }

    fn properly_infinite_multiple_exact(&self, x: &AlgElem) -> Option<bool> {
        Some(is_zero(x) || x.1.value().is_inf())
    }

    fn beta_formula(&self, x: &AlgElem, y: &AlgElem) -> Option<ExtRat> {
        Some(x.1.value().div(&y.1.value()))
    }

    fn s_below_all_terms(&self, x: &AlgElem, spec: &SeriesSpec<AlgElem>) -> Option<bool> {
        match spec {
            SeriesSpec::Geometric { first, .. } => Some(is_zero(x) || !first.is_zero()),
            SeriesSpec::Constant { term } => self.s_below_exact(x, term),
            _ => None,
        }
    }

    fn o5_candidates(&self, xp: &AlgElem, x: &AlgElem, y: &AlgElem) -> Candidates<AlgElem> {
        let mut elems = vec![self.zero(), y.clone(), self.top()];
        if is_zero(y) {
            return Candidates::partial(elems);
        }
        let xp = if is_zero(xp) { y } else { xp };
        let firsts = per_coord(&y.0, [&xp.0, &x.0], first_inf());
        let seconds = per_coord(&y.1, [&xp.1, &x.1], UhfElem::soft_inf());
        for a in &firsts {
            for r in &seconds {
                elems.push((saturate_first(a.clone()), r.clone()));
            }
        }
        Candidates::partial(elems)
    }

    fn meet(&self, a: &AlgElem, b: &AlgElem) -> Option<AlgElem> {
        if is_zero(a) || is_zero(b) {
            return Some(self.zero());
        }
        let first = if first_leq(&a.0, &b.0) { &a.0 } else { &b.0 };
        let second = if uhf_leq(&a.1, &b.1) { &a.1 } else { &b.1 };
        Some((first.clone(), second.clone()))
    }

    fn halving_candidates(&self, x: &AlgElem) -> Candidates<AlgElem> {
        if is_zero(x) {
            return Candidates::partial(vec![self.zero()]);
        }
        Candidates::partial(vec![(halve(&x.0), halve(&x.1))])
    }

    fn absorbed_candidates(&self, a: &AlgElem) -> Candidates<AlgElem> {
        let one = || UhfElem::Compact(BigRational::one());
        let mut elems = vec![
            (first_inf(), one()),
            (UhfElem::Compact(half()), one()),
            (one(), UhfElem::soft_inf()),
        ];
        if !is_zero(a) {
            elems.push(a.clone());
        }
        Candidates::partial(elems)
    }

    fn functional_coordinate(&self, x: &AlgElem) -> Option<ExtRat> {
        Some(x.1.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> AlgElem {
        AlgebraicProduct.parse(s).unwrap()
    }

    #[test]
    fn first_component_saturates_to_compact_infinity() {
        let s = AlgebraicProduct;
        let sum = s.add(&e("(c:1/2, c:1)"), &e("(s:3/4, c:2)"));
        assert_eq!(sum, e("(inf, c:3)"));
        assert!(s.way_below(&e("(inf, c:1)"), &e("(inf, s:2)")));
        assert!(s.way_below(&e("(inf, c:1)"), &e("(inf, c:1)")));
    }

    #[test]
    fn geometric_sum_is_soft() {
        use crate::semigroup::series_sum;
        let s = AlgebraicProduct;
        let spec = SeriesSpec::geometric(ExtRat::frac(1, 4), ExtRat::frac(1, 2));
        assert_eq!(series_sum(&s, &spec).unwrap(), e("(s:1/2, s:inf)"));
        assert!(!s.leq(&e("(c:3/4, c:1)"), &e("(s:1/2, s:inf)")));
    }

    #[test]
    fn grammar() {
        let s = AlgebraicProduct;
        for t in ["(0, 0)", "(c:1/2, s:3)", "(inf, s:inf)", "(s:1, c:7/3)"] {
            assert_eq!(s.format(&e(t)), t);
        }
        assert!(s.parse("(c:3/2, c:1)").is_err());
        assert!(s.parse("(0, c:1)").is_err());
    }
}
