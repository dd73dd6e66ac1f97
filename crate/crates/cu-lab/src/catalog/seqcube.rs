//! Eventually constant sequences in `[0,1]^ℕ` plus `∞`; a sum with any
//! coordinate above 1 is `∞`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::grammar::{approach_factor, half, rand_open_closed, rand_rational, split_sequence};
use crate::error::ParseError;
use crate::ext_rat::{fmt_rational, ExtRat};
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};
use crate::series::SeriesSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeqElem {
    /// Coordinates `prefix[0], prefix[1], …` followed by `tail` forever.
    /// The prefix never ends with the tail value.
    Fin {
        prefix: Vec<BigRational>,
        tail: BigRational,
    },
    Inf,
}

impl SeqElem {
    pub fn new(mut prefix: Vec<BigRational>, tail: BigRational) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        SeqElem::Fin { prefix, tail }
    }

    pub fn zero() -> Self {
        SeqElem::new(Vec::new(), BigRational::zero())
    }

    /// Unit vector at the 1-based position `i`.
    pub fn unit(i: u64) -> Self {
        let mut prefix = vec![BigRational::zero(); (i - 1) as usize];
        prefix.push(BigRational::one());
        SeqElem::new(prefix, BigRational::zero())
    }

    fn coord(&self, i: usize) -> Option<&BigRational> {
        match self {
            SeqElem::Fin { prefix, tail } => Some(prefix.get(i).unwrap_or(tail)),
            SeqElem::Inf => None,
        }
    }

    fn prefix_len(&self) -> usize {
        match self {
            SeqElem::Fin { prefix, .. } => prefix.len(),
            SeqElem::Inf => 0,
        }
    }

    fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> SeqElem {
        match self {
            SeqElem::Fin { prefix, tail } => SeqElem::new(prefix.iter().map(&f).collect(), f(tail)),
            SeqElem::Inf => SeqElem::Inf,
        }
    }
}

/// Applies `f` to aligned coordinates (prefix positions, then the tail).
fn zip_coords<T>(
    a: &SeqElem,
    b: &SeqElem,
    mut f: impl FnMut(&BigRational, &BigRational) -> T,
) -> Option<(Vec<T>, T)> {
    let n = a.prefix_len().max(b.prefix_len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(f(a.coord(i)?, b.coord(i)?));
    }
    let t = f(a.coord(usize::MAX)?, b.coord(usize::MAX)?);
    Some((out, t))
}

#[derive(Clone, Debug, Default)]
pub struct SeqCube;

impl SeqCube {
    fn rand_seq<R: Rng + ?Sized>(rng: &mut R, hi: &BigRational, max_den: u32, len: usize) -> SeqElem {
        let zero = BigRational::zero();
        let prefix = (0..len).map(|_| rand_rational(rng, &zero, hi, max_den)).collect();
        let tail = if rng.gen_range(0..2) == 0 {
            zero.clone()
        } else {
            rand_rational(rng, &zero, hi, max_den)
        };
        SeqElem::new(prefix, tail)
    }
}

impl Semigroup for SeqCube {
    type Elem = SeqElem;

    fn id(&self) -> &str {
        "seqcube"
    }

    fn entry(&self) -> &'static str {
        "SeqCube"
    }

    fn zero(&self) -> SeqElem {
        SeqElem::zero()
    }

    fn top(&self) -> SeqElem {
        SeqElem::Inf
    }

    fn add(&self, x: &SeqElem, y: &SeqElem) -> SeqElem {
        let Some((prefix, tail)) = zip_coords(x, y, |a, b| a + b) else {
            return SeqElem::Inf;
        };
        let one = BigRational::one();
        if tail > one || prefix.iter().any(|c| *c > one) {
            return SeqElem::Inf;
        }
        SeqElem::new(prefix, tail)
    }

    fn leq(&self, x: &SeqElem, y: &SeqElem) -> bool {
        match (x, y) {
            (_, SeqElem::Inf) => true,
            (SeqElem::Inf, _) => false,
            _ => zip_coords(x, y, |a, b| a <= b)
                .map(|(p, t)| t && p.into_iter().all(|b| b))
                .unwrap_or(false),
        }
    }

    fn way_below(&self, x: &SeqElem, y: &SeqElem) -> bool {
        if *x == SeqElem::zero() || *y == SeqElem::Inf {
            return true;
        }
        if *x == SeqElem::Inf {
            return false;
        }
        zip_coords(x, y, |a, b| a.is_zero() || a < b)
            .map(|(p, t)| t && p.into_iter().all(|b| b))
            .unwrap_or(false)
    }

    fn rapid_term(&self, x: &SeqElem, n: u32) -> SeqElem {
        let f = approach_factor(n);
        x.map(|c| c * &f)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> SeqElem {
        let one = BigRational::one();
        match profile {
            Profile::Small => {
                let len = rng.gen_range(0..=3);
                Self::rand_seq(rng, &half(), 8, len)
            }
            Profile::Mixed => match rng.gen_range(0..10) {
                0 => SeqElem::zero(),
                1 => SeqElem::Inf,
                _ => {
                    let len = rng.gen_range(0..=4);
                    Self::rand_seq(rng, &one, 16, len)
                }
            },
            Profile::NearTop => {
                if rng.gen_range(0..4) == 0 {
                    return SeqElem::Inf;
                }
                let len = rng.gen_range(1..=4);
                let base = Self::rand_seq(rng, &one, 16, len);
                let big = rand_open_closed(rng, &half(), &one, 16);
                let pos = rng.gen_range(0..len);
                match base {
                    SeqElem::Fin { mut prefix, tail } => {
                        prefix.resize(len, tail.clone());
                        prefix[pos] = big;
                        SeqElem::new(prefix, tail)
                    }
                    SeqElem::Inf => SeqElem::Inf,
                }
            }
        }
    }

    fn parse(&self, text: &str) -> Result<SeqElem, ParseError> {
        if text.trim() == "inf" {
            return Ok(SeqElem::Inf);
        }
        let (prefix, tail) = split_sequence(text)?;
        let one = BigRational::one();
        if tail > one || prefix.iter().any(|c| *c > one) {
            return Err(ParseError::OutOfCarrier(format!(
                "{text:?} has a coordinate outside [0,1]"
            )));
        }
        Ok(SeqElem::new(prefix, tail))
    }

    fn format(&self, x: &SeqElem) -> String {
        match x {
            SeqElem::Inf => "inf".to_string(),
            SeqElem::Fin { prefix, tail } => {
                let head: Vec<String> = prefix.iter().map(fmt_rational).collect();
                format!("[{};{}]", head.join(","), fmt_rational(tail))
            }
        }
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

    fn landmarks(&self) -> Vec<SeqElem> {
        let h = half();
        vec![
            SeqElem::zero(),
            SeqElem::new(vec![h.clone()], BigRational::zero()),
            SeqElem::unit(1),
            SeqElem::unit(2),
            SeqElem::new(vec![BigRational::one(), h.clone()], BigRational::zero()),
            SeqElem::new(Vec::new(), h),
            SeqElem::new(Vec::new(), BigRational::one()),
            SeqElem::Inf,
        ]
    }

    fn indicator(&self, i: u64) -> Option<SeqElem> {
        Some(SeqElem::unit(i))
    }

    fn indicator_tail_sum(&self, k: u64) -> Option<SeqElem> {
        Some(SeqElem::new(
            vec![BigRational::zero(); (k - 1) as usize],
            BigRational::one(),
        ))
    }

    fn s_below_exact(&self, x: &SeqElem, y: &SeqElem) -> Option<bool> {
        Some(*x == SeqElem::zero() || *y != SeqElem::zero())
    }

    fn properly_infinite_multiple_exact(&self, _x: &SeqElem) -> Option<bool> {
        Some(true)
    }

    fn beta_formula(&self, x: &SeqElem, y: &SeqElem) -> Option<ExtRat> {
        Some(if *x != SeqElem::zero() && *y == SeqElem::zero() {
            ExtRat::Inf
        } else {
            ExtRat::zero()
        })
    }

    fn s_below_all_terms(&self, x: &SeqElem, spec: &SeriesSpec<SeqElem>) -> Option<bool> {
        match spec {
            SeriesSpec::IndicatorStream => Some(true),
            SeriesSpec::Tail { inner, .. } => self.s_below_all_terms(x, inner),
            SeriesSpec::Constant { term } => self.s_below_exact(x, term),
            _ => None,
        }
    }

    fn o5_candidates(&self, xp: &SeqElem, x: &SeqElem, y: &SeqElem) -> Candidates<SeqElem> {
        let mut elems = vec![self.zero(), y.clone(), SeqElem::Inf];
        for sub in [xp, x] {
            if let Some((p, t)) = zip_coords(y, sub, |a, b| if a >= b { Some(a - b) } else { None }) {
                if let (Some(p), Some(t)) = (p.into_iter().collect::<Option<Vec<_>>>(), t) {
                    elems.push(SeqElem::new(p, t));
                }
            }
        }
        Candidates::partial(elems)
    }

    fn meet(&self, a: &SeqElem, b: &SeqElem) -> Option<SeqElem> {
        match (a, b) {
            (SeqElem::Inf, _) => Some(b.clone()),
            (_, SeqElem::Inf) => Some(a.clone()),
            _ => zip_coords(a, b, |p, q| p.min(q).clone()).map(|(p, t)| SeqElem::new(p, t)),
        }
    }

    fn halving_candidates(&self, x: &SeqElem) -> Candidates<SeqElem> {
        match x {
            SeqElem::Inf => Candidates::partial(vec![SeqElem::Inf, SeqElem::unit(1)]),
            _ => Candidates::partial(vec![x.map(|c| c * half())]),
        }
    }

    fn absorbed_candidates(&self, a: &SeqElem) -> Candidates<SeqElem> {
        let mut elems = vec![SeqElem::unit(1), SeqElem::new(Vec::new(), BigRational::one())];
        if *a != SeqElem::zero() {
            elems.push(a.clone());
        }
        Candidates::partial(elems)
    }

    fn compact_elements(&self) -> Option<Vec<SeqElem>> {
        Some(vec![SeqElem::zero(), SeqElem::Inf])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{multiple, series_sum};

    fn e(s: &str) -> SeqElem {
        SeqCube.parse(s).unwrap()
    }

    #[test]
    fn canonical_prefix() {
        assert_eq!(e("[1,0;0]"), SeqElem::unit(1));
        assert_eq!(SeqCube.format(&e("[1,0;0]")), "[1;0]");
        assert_eq!(SeqCube.format(&e("[1/2,1/2;1/2]")), "[;1/2]");
    }

    #[test]
    fn componentwise_order_and_saturation() {
        let s = SeqCube;
        assert!(!s.leq(&SeqElem::unit(1), &SeqElem::unit(2)));
        assert_eq!(multiple(&s, 2, &SeqElem::unit(1)), SeqElem::Inf);
        assert_eq!(s.add(&SeqElem::unit(1), &SeqElem::unit(2)), e("[1,1;0]"));
    }

    #[test]
    fn indicator_sum_is_all_ones() {
        let s = SeqCube;
        let sum = series_sum(&s, &SeriesSpec::IndicatorStream).unwrap();
        assert_eq!(sum, e("[;1]"));
        assert_ne!(sum, SeqElem::Inf);
    }

    #[test]
    fn way_below_coordinatewise() {
        let s = SeqCube;
        assert!(s.way_below(&e("[1/2;0]"), &SeqElem::unit(1)));
        assert!(!s.way_below(&SeqElem::unit(1), &SeqElem::unit(1)));
        assert!(s.way_below(&SeqElem::unit(1), &SeqElem::Inf));
    }
}
