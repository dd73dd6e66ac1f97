//! `{(0,0)} ∪ ((0,1] ∪ {∞}) × (0,∞]`: a saturating first coordinate next to
//! an unbounded ray.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::grammar::{approach_factor, fin, half, rand_open_closed, rat, split_pair};
use crate::error::ParseError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};
use crate::series::SeriesSpec;

/// `(first, ray)`; `(0, 0)` is the zero element.
pub type PairElem = (ExtRat, ExtRat);

#[derive(Clone, Debug, Default)]
pub struct ProductFiniteByRay;

fn is_zero(x: &PairElem) -> bool {
    x.0.is_zero()
}

fn saturate(v: ExtRat) -> ExtRat {
    if v > ExtRat::one() {
        ExtRat::Inf
    } else {
        v
    }
}

fn approach(v: &ExtRat, n: u32) -> ExtRat {
    match v {
        ExtRat::Fin(q) => fin(q * approach_factor(n)),
        ExtRat::Inf => ExtRat::Inf,
    }
}

fn rand_first<R: Rng + ?Sized>(rng: &mut R, hi: &BigRational) -> ExtRat {
    fin(rand_open_closed(rng, &BigRational::zero(), hi, 16))
}

impl ProductFiniteByRay {
    fn pair(a: ExtRat, r: ExtRat) -> PairElem {
        (a, r)
    }
}

impl Semigroup for ProductFiniteByRay {
    type Elem = PairElem;

    fn id(&self) -> &str {
        "product"
    }

    fn entry(&self) -> &'static str {
        "ProductFiniteByRay"
    }

    fn zero(&self) -> PairElem {
        (ExtRat::zero(), ExtRat::zero())
    }

    fn top(&self) -> PairElem {
        (ExtRat::Inf, ExtRat::Inf)
    }

    fn add(&self, x: &PairElem, y: &PairElem) -> PairElem {
        if is_zero(x) {
            return y.clone();
        }
        if is_zero(y) {
            return x.clone();
        }
        (saturate(&x.0 + &y.0), &x.1 + &y.1)
    }

    fn leq(&self, x: &PairElem, y: &PairElem) -> bool {
        is_zero(x) || (!is_zero(y) && x.0 <= y.0 && x.1 <= y.1)
    }

    fn way_below(&self, x: &PairElem, y: &PairElem) -> bool {
        if is_zero(x) {
            return true;
        }
        if is_zero(y) {
            return false;
        }
        let first = x.0 < y.0 || (x.0.is_inf() && y.0.is_inf());
        first && x.1 < y.1
    }

    fn rapid_term(&self, x: &PairElem, n: u32) -> PairElem {
        if is_zero(x) {
            return x.clone();
        }
        let ray = match &x.1 {
            ExtRat::Inf => ExtRat::int(n as u64 + 1),
            r => approach(r, n),
        };
        (approach(&x.0, n), ray)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> PairElem {
        let one = BigRational::one();
        match profile {
            Profile::Small => (rand_first(rng, &half()), rand_first(rng, &half())),
            Profile::Mixed => {
                if rng.gen_range(0..10) == 0 {
                    return self.zero();
                }
                let a = if rng.gen_range(0..8) == 0 {
                    ExtRat::Inf
                } else {
                    rand_first(rng, &one)
                };
                let r = if rng.gen_range(0..5) == 0 {
                    ExtRat::Inf
                } else {
                    fin(rand_open_closed(rng, &BigRational::zero(), &rat(4, 1), 16))
                };
                (a, r)
            }
            Profile::NearTop => {
                let a = if rng.gen_range(0..4) == 0 {
                    ExtRat::Inf
                } else {
                    fin(rand_open_closed(rng, &half(), &one, 64))
                };
                let r = if rng.gen_range(0..4) == 0 {
                    ExtRat::Inf
                } else {
                    fin(rand_open_closed(rng, &one, &rat(4, 1), 16))
                };
                (a, r)
            }
        }
    }

    fn parse(&self, text: &str) -> Result<PairElem, ParseError> {
        let (a, r) = split_pair(text)?;
        let a: ExtRat = a.parse()?;
        let r: ExtRat = r.parse()?;
        if a.is_zero() && r.is_zero() {
            return Ok(self.zero());
        }
        let first_ok = !a.is_zero() && (a.is_inf() || a <= ExtRat::one());
        if !first_ok || r.is_zero() {
            return Err(ParseError::OutOfCarrier(format!(
                "{text:?} is not (0, 0) or in ((0,1] ∪ {{inf}}) × (0,inf]"
            )));
        }
        Ok((a, r))
    }

    fn format(&self, x: &PairElem) -> String {
        format!("({}, {})", x.0, x.1)
    }

    fn is_simple(&self) -> bool {
        true
    }

    fn is_algebraic(&self) -> bool {
        false
    }

    fn classification(&self) -> Classification {
        Classification::StablyFinite
    }

    fn landmarks(&self) -> Vec<PairElem> {
        let p = |a: ExtRat, r: ExtRat| Self::pair(a, r);
        vec![
            self.zero(),
            p(ExtRat::frac(1, 4), ExtRat::frac(1, 2)),
            p(ExtRat::frac(1, 2), ExtRat::one()),
            p(ExtRat::frac(3, 4), ExtRat::int(2)),
            p(ExtRat::one(), ExtRat::int(2)),
            p(ExtRat::frac(3, 4), ExtRat::Inf),
            p(ExtRat::frac(1, 2), ExtRat::Inf),
            p(ExtRat::Inf, ExtRat::one()),
            self.top(),
        ]
    }

    fn scalar_term(&self, q: &ExtRat) -> Option<PairElem> {
        if q.is_zero() {
            Some(self.zero())
        } else {
            Some((saturate(q.clone()), ExtRat::Inf))
        }
    }

    fn scalar_limit(&self, q: &ExtRat) -> Option<PairElem> {
        self.scalar_term(q)
    }

    fn multiples_sup(&self, c: &PairElem) -> PairElem {
        if is_zero(c) {
            self.zero()
        } else {
            self.top()
        }
    }

    fn s_below_exact(&self, x: &PairElem, y: &PairElem) -> Option<bool> {
        Some(if is_zero(x) {
            true
        } else if is_zero(y) {
            false
        } else {
            y.1.is_inf() || x.1 < y.1
        })
    }

    fn properly_infinite_multiple_exact(&self, x: &PairElem) -> Option<bool> {
        Some(is_zero(x) || x.1.is_inf())
    }

    fn beta_formula(&self, x: &PairElem, y: &PairElem) -> Option<ExtRat> {
        Some(if is_zero(x) {
            ExtRat::zero()
        } else if is_zero(y) {
            ExtRat::Inf
        } else {
            x.1.div(&y.1)
        })
    }

    fn s_below_all_terms(&self, x: &PairElem, spec: &SeriesSpec<PairElem>) -> Option<bool> {
        match spec {
            SeriesSpec::Geometric { first, .. } => Some(is_zero(x) || !first.is_zero()),
            SeriesSpec::Constant { term } => self.s_below_exact(x, term),
            _ => None,
        }
    }

    fn o5_candidates(&self, xp: &PairElem, x: &PairElem, y: &PairElem) -> Candidates<PairElem> {
        let mut elems = vec![self.zero(), y.clone(), self.top()];
        if is_zero(y) {
            return Candidates::partial(elems);
        }
        let coord = |yc: &ExtRat, xpc: &ExtRat, xc: &ExtRat| {
            let mut c = vec![ExtRat::Inf, yc.clone()];
            c.extend(yc.checked_sub(xpc));
            c.extend(yc.checked_sub(xc));
            c.retain(|v| !v.is_zero());
            c
        };
        for a in coord(&y.0, &xp.0, &x.0) {
            for r in coord(&y.1, &xp.1, &x.1) {
                let a = saturate(a.clone());
                elems.push((a, r));
            }
        }
        Candidates::partial(elems)
    }

    fn meet(&self, a: &PairElem, b: &PairElem) -> Option<PairElem> {
        if is_zero(a) || is_zero(b) {
            return Some(self.zero());
        }
        Some((a.0.clone().min(b.0.clone()), a.1.clone().min(b.1.clone())))
    }

    fn halving_candidates(&self, x: &PairElem) -> Candidates<PairElem> {
        if is_zero(x) {
            return Candidates::partial(vec![self.zero()]);
        }
        let half_of = |v: &ExtRat| v.mul(&ExtRat::frac(1, 2));
        Candidates::partial(vec![
            (half_of(&x.0), half_of(&x.1)),
            (half_of(&x.0), half_of(&half_of(&x.1))),
        ])
    }

    fn absorbed_candidates(&self, a: &PairElem) -> Candidates<PairElem> {
        let mut elems = vec![
            (ExtRat::Inf, ExtRat::one()),
            (ExtRat::frac(1, 2), ExtRat::one()),
            (ExtRat::one(), ExtRat::Inf),
        ];
        if !is_zero(a) {
            elems.push(a.clone());
        }
        Candidates::partial(elems)
    }

    fn compact_elements(&self) -> Option<Vec<PairElem>> {
        Some(vec![self.zero()])
    }

    fn functional_coordinate(&self, x: &PairElem) -> Option<ExtRat> {
        Some(x.1.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PairElem {
        ProductFiniteByRay.parse(s).unwrap()
    }

    #[test]
    fn saturation_moves_to_first_infinity() {
        let s = ProductFiniteByRay;
        assert_eq!(s.add(&e("(1/2, 1)"), &e("(3/4, 2)")), e("(inf, 3)"));
        assert_eq!(s.add(&e("(1/2, 1)"), &e("(1/2, 1)")), e("(1, 2)"));
    }

    #[test]
    fn way_below_cases() {
        let s = ProductFiniteByRay;
        assert!(s.way_below(&e("(1/2, 1)"), &e("(3/4, 2)")));
        assert!(s.way_below(&e("(inf, 1)"), &e("(inf, 2)")));
        assert!(!s.way_below(&e("(inf, 2)"), &e("(inf, 2)")));
        assert!(!s.way_below(&e("(1/2, inf)"), &s.top()));
    }

    #[test]
    fn grammar_round_trip() {
        let s = ProductFiniteByRay;
        for t in ["(0, 0)", "(1/2, 1)", "(inf, inf)", "(1, 3/7)"] {
            assert_eq!(s.format(&e(t)), t);
        }
        assert!(s.parse("(0, 1)").is_err());
        assert!(s.parse("(3/2, 1)").is_err());
        assert!(s.parse("(1/2, 0)").is_err());
    }
}
