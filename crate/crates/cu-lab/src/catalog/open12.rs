//! `{0} ∪ (1,2] ∪ {∞}`: every sum of two nonzero elements is `∞`.

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use super::grammar::{approach_factor, fin, rand_open_closed, rat};
use crate::error::ParseError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};

#[derive(Clone, Debug, Default)]
pub struct OpenInterval12;

fn in_open_part(x: &ExtRat) -> bool {
    !x.is_zero() && !x.is_inf()
}

impl Semigroup for OpenInterval12 {
    type Elem = ExtRat;

    fn id(&self) -> &str {
        "open12"
    }

    fn entry(&self) -> &'static str {
        "OpenInterval12"
    }

    fn zero(&self) -> ExtRat {
        ExtRat::zero()
    }

    fn top(&self) -> ExtRat {
        ExtRat::Inf
    }

    fn add(&self, x: &ExtRat, y: &ExtRat) -> ExtRat {
        if x.is_zero() {
            y.clone()
        } else if y.is_zero() {
            x.clone()
        } else {
            ExtRat::Inf
        }
    }

    fn leq(&self, x: &ExtRat, y: &ExtRat) -> bool {
        x <= y
    }

    fn way_below(&self, x: &ExtRat, y: &ExtRat) -> bool {
        x.is_zero() || y.is_inf() || (in_open_part(x) && in_open_part(y) && x < y)
    }

    fn rapid_term(&self, x: &ExtRat, n: u32) -> ExtRat {
        match x {
            ExtRat::Fin(q) if in_open_part(x) => {
                let one = BigRational::one();
                fin(&one + (q - &one) * approach_factor(n))
            }
            _ => x.clone(),
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> ExtRat {
        let one = BigRational::one();
        match profile {
            Profile::Small => {
                if rng.gen_range(0..5) == 0 {
                    ExtRat::zero()
                } else {
                    fin(rand_open_closed(rng, &one, &rat(3, 2), 16))
                }
            }
            Profile::Mixed => match rng.gen_range(0..10) {
                0 => ExtRat::zero(),
                1 => ExtRat::Inf,
                _ => fin(rand_open_closed(rng, &one, &rat(2, 1), 64)),
            },
            Profile::NearTop => {
                if rng.gen_range(0..4) == 0 {
                    ExtRat::Inf
                } else {
                    fin(rand_open_closed(rng, &rat(3, 2), &rat(2, 1), 64))
                }
            }
        }
    }

    fn parse(&self, text: &str) -> Result<ExtRat, ParseError> {
        let v: ExtRat = text.parse()?;
        if in_open_part(&v) && (v <= ExtRat::one() || v > ExtRat::int(2)) {
            return Err(ParseError::OutOfCarrier(format!(
                "{text:?} is not in {{0}} ∪ (1,2] ∪ {{inf}}"
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
            ExtRat::frac(9, 8),
            ExtRat::frac(5, 4),
            ExtRat::frac(3, 2),
            ExtRat::int(2),
            ExtRat::Inf,
        ]
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

    // Any nonzero z sends both x' + z and x + z to ∞ when x' ≠ 0, so one
    // nonzero representative covers all of them.
    fn o5_candidates(&self, _xp: &ExtRat, _x: &ExtRat, y: &ExtRat) -> Candidates<ExtRat> {
        Candidates::complete(vec![ExtRat::zero(), y.clone(), ExtRat::int(2), ExtRat::Inf])
    }

    fn meet(&self, a: &ExtRat, b: &ExtRat) -> Option<ExtRat> {
        Some(a.clone().min(b.clone()))
    }

    fn halving_candidates(&self, _x: &ExtRat) -> Candidates<ExtRat> {
        Candidates::complete(vec![ExtRat::zero(), ExtRat::int(2), ExtRat::Inf])
    }

    fn absorbed_candidates(&self, _a: &ExtRat) -> Candidates<ExtRat> {
        Candidates::complete(vec![ExtRat::int(2), ExtRat::Inf])
    }

    fn compact_elements(&self) -> Option<Vec<ExtRat>> {
        Some(vec![ExtRat::zero(), ExtRat::Inf])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonzero_sums_are_infinite() {
        let s = OpenInterval12;
        assert_eq!(s.add(&ExtRat::frac(9, 8), &ExtRat::frac(9, 8)), ExtRat::Inf);
        assert_eq!(s.add(&ExtRat::frac(9, 8), &ExtRat::zero()), ExtRat::frac(9, 8));
    }

    #[test]
    fn carrier_bounds() {
        let s = OpenInterval12;
        assert!(s.parse("1").is_err());
        assert!(s.parse("5/2").is_err());
        assert!(s.parse("2").is_ok());
        assert!(s.parse("0").is_ok());
    }

    #[test]
    fn way_below_within_open_part() {
        let s = OpenInterval12;
        assert!(s.way_below(&ExtRat::frac(9, 8), &ExtRat::frac(5, 4)));
        assert!(!s.way_below(&ExtRat::frac(5, 4), &ExtRat::frac(5, 4)));
        let r = s.rapid_term(&ExtRat::frac(3, 2), 0);
        assert_eq!(r, ExtRat::frac(5, 4));
    }
}
