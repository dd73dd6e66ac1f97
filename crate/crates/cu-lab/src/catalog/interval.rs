//! `[0,1] ∪ {∞}` on rational points; sums above 1 collapse to `∞`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::grammar::{approach_factor, fin, half, rand_open_closed, rand_rational, rat};
use crate::error::ParseError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};

#[derive(Clone, Debug, Default)]
pub struct Interval01Inf;

fn saturate(v: ExtRat) -> ExtRat {
    if v > ExtRat::one() {
        ExtRat::Inf
    } else {
        v
    }
}

impl Semigroup for Interval01Inf {
    type Elem = ExtRat;

    fn id(&self) -> &str {
        "interval01"
    }

    fn entry(&self) -> &'static str {
        "Interval01Inf"
    }

    fn zero(&self) -> ExtRat {
        ExtRat::zero()
    }

    fn top(&self) -> ExtRat {
        ExtRat::Inf
    }

    fn add(&self, x: &ExtRat, y: &ExtRat) -> ExtRat {
        saturate(x + y)
    }

    fn leq(&self, x: &ExtRat, y: &ExtRat) -> bool {
        x <= y
    }

    fn way_below(&self, x: &ExtRat, y: &ExtRat) -> bool {
        x.is_zero() || y.is_inf() || x < y
    }

    fn rapid_term(&self, x: &ExtRat, n: u32) -> ExtRat {
        match x {
            ExtRat::Inf => ExtRat::Inf,
            ExtRat::Fin(q) => fin(q * approach_factor(n)),
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> ExtRat {
        match profile {
            Profile::Small => fin(rand_rational(rng, &BigRational::zero(), &half(), 16)),
            Profile::Mixed => match rng.gen_range(0..10) {
                0 => ExtRat::zero(),
                1 => ExtRat::Inf,
                _ => fin(rand_rational(rng, &BigRational::zero(), &BigRational::one(), 64)),
            },
            Profile::NearTop => {
                if rng.gen_range(0..4) == 0 {
                    ExtRat::Inf
                } else {
                    fin(rand_open_closed(rng, &half(), &BigRational::one(), 64))
                }
            }
        }
    }

    fn parse(&self, text: &str) -> Result<ExtRat, ParseError> {
        let v: ExtRat = text.parse()?;
        if !v.is_inf() && v > ExtRat::one() {
            return Err(ParseError::OutOfCarrier(format!(
                "{text:?} is not in [0,1] ∪ {{inf}}"
            )));
        }
        Ok(v)
    }

    fn format(&self, x: &ExtRat) -> String {
        x.to_string()
    }

    fn is_simple(&self) -> bool {
        true
    }

    fn is_algebraic(&self) -> bool {
        false
    }

    fn classification(&self) -> Classification {
        Classification::Mixed
    }

    fn landmarks(&self) -> Vec<ExtRat> {
        vec![
            ExtRat::zero(),
            ExtRat::frac(1, 4),
            ExtRat::frac(1, 2),
            ExtRat::frac(3, 4),
            ExtRat::one(),
            ExtRat::Inf,
        ]
    }

    fn scalar_term(&self, q: &ExtRat) -> Option<ExtRat> {
        Some(saturate(q.clone()))
    }

    fn scalar_limit(&self, q: &ExtRat) -> Option<ExtRat> {
        Some(saturate(q.clone()))
    }

    fn s_below_exact(&self, x: &ExtRat, y: &ExtRat) -> Option<bool> {
        Some(x.is_zero() || !y.is_zero())
    }

    fn properly_infinite_multiple_exact(&self, _x: &ExtRat) -> Option<bool> {
        Some(true)
    }

    fn beta_formula(&self, x: &ExtRat, y: &ExtRat) -> Option<ExtRat> {
        Some(if !x.is_zero() && y.is_zero() {
            ExtRat::Inf
        } else {
            ExtRat::zero()
        })
    }

    fn s_below_all_terms(&self, x: &ExtRat, spec: &crate::series::SeriesSpec<ExtRat>) -> Option<bool> {
        use crate::series::SeriesSpec;
        match spec {
            SeriesSpec::Geometric { first, .. } => Some(x.is_zero() || !first.is_zero()),
            SeriesSpec::Constant { term } => self.s_below_exact(x, term),
            _ => None,
        }
    }

    fn o5_candidates(&self, xp: &ExtRat, x: &ExtRat, y: &ExtRat) -> Candidates<ExtRat> {
        let mut elems = vec![ExtRat::zero(), y.clone(), ExtRat::Inf];
        elems.extend(y.checked_sub(xp));
        elems.extend(y.checked_sub(x));
        Candidates::partial(elems)
    }

    fn meet(&self, a: &ExtRat, b: &ExtRat) -> Option<ExtRat> {
        Some(a.clone().min(b.clone()))
    }

    fn halving_candidates(&self, x: &ExtRat) -> Candidates<ExtRat> {
        let elems = match x {
            ExtRat::Inf => vec![ExtRat::Inf, ExtRat::one(), ExtRat::frac(1, 2)],
            ExtRat::Fin(q) => vec![fin(q * half()), fin(q * rat(1, 4))],
        };
        Candidates::partial(elems)
    }

    fn absorbed_candidates(&self, a: &ExtRat) -> Candidates<ExtRat> {
        let mut elems = vec![ExtRat::one(), ExtRat::frac(1, 2), ExtRat::Inf];
        if let ExtRat::Fin(q) = a {
            elems.push(fin(q * half()));
        }
        Candidates::partial(elems)
    }

    fn compact_elements(&self) -> Option<Vec<ExtRat>> {
        Some(vec![ExtRat::zero(), ExtRat::Inf])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{has_properly_infinite_multiple, s_below, series_sum};
    use crate::series::SeriesSpec;

    #[test]
    fn saturating_sum() {
        let s = Interval01Inf;
        assert_eq!(s.add(&ExtRat::frac(3, 4), &ExtRat::frac(1, 2)), ExtRat::Inf);
        assert_eq!(s.add(&ExtRat::frac(1, 2), &ExtRat::frac(1, 2)), ExtRat::one());
    }

    #[test]
    fn way_below_is_strict_order() {
        let s = Interval01Inf;
        assert!(!s.way_below(&ExtRat::frac(1, 2), &ExtRat::frac(1, 2)));
        assert!(s.way_below(&ExtRat::Inf, &ExtRat::Inf));
        assert!(s.way_below(&ExtRat::one(), &ExtRat::Inf));
        assert!(s.way_below(&ExtRat::zero(), &ExtRat::zero()));
    }

    #[test]
    fn rapid_chain_for_one() {
        let s = Interval01Inf;
        assert_eq!(s.rapid_term(&ExtRat::one(), 0), ExtRat::frac(1, 2));
        assert_eq!(s.rapid_term(&ExtRat::one(), 2), ExtRat::frac(7, 8));
        assert_eq!(s.rapid_term(&ExtRat::Inf, 5), ExtRat::Inf);
    }

    #[test]
    fn series_examples() {
        let s = Interval01Inf;
        let geo = SeriesSpec::geometric(ExtRat::frac(1, 4), ExtRat::frac(1, 2));
        assert_eq!(series_sum(&s, &geo).unwrap(), ExtRat::frac(1, 2));
        let c = SeriesSpec::Constant {
            term: ExtRat::frac(1, 4),
        };
        assert_eq!(series_sum(&s, &c).unwrap(), ExtRat::Inf);
    }

    #[test]
    fn bounded_relations() {
        let s = Interval01Inf;
        assert_eq!(
            s_below(&s, &ExtRat::frac(3, 4), &ExtRat::frac(1, 16), 32),
            Some(17)
        );
        assert_eq!(
            has_properly_infinite_multiple(&s, &ExtRat::frac(3, 4), 8),
            Some(2)
        );
        assert!(s.parse("3/2").is_err());
    }
}
