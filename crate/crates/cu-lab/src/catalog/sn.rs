//! `S_n = {0, 1, …, n, ∞}` with sums above `n` collapsing to `∞`.

use rand::Rng;

use crate::error::ParseError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{Candidates, Classification, Profile, Semigroup};

#[derive(Clone, Debug)]
pub struct Sn {
    n: u64,
    id: String,
}

impl Sn {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "S_n needs n ≥ 1");
        Sn {
            n,
            id: format!("s{n}"),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn saturate(&self, v: ExtRat) -> ExtRat {
        if v > ExtRat::int(self.n) {
            ExtRat::Inf
        } else {
            v
        }
    }
}

impl Semigroup for Sn {
    type Elem = ExtRat;

    fn id(&self) -> &str {
        &self.id
    }

    fn entry(&self) -> &'static str {
        "S_n"
    }

    fn zero(&self) -> ExtRat {
        ExtRat::zero()
    }

    fn top(&self) -> ExtRat {
        ExtRat::Inf
    }

    fn add(&self, x: &ExtRat, y: &ExtRat) -> ExtRat {
        self.saturate(x + y)
    }

    fn leq(&self, x: &ExtRat, y: &ExtRat) -> bool {
        x <= y
    }

    fn way_below(&self, x: &ExtRat, y: &ExtRat) -> bool {
        x <= y
    }

    fn rapid_term(&self, x: &ExtRat, _n: u32) -> ExtRat {
        x.clone()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> ExtRat {
        let pick = match profile {
            Profile::Small => rng.gen_range(0..=self.n.min(1)),
            Profile::Mixed => rng.gen_range(0..=self.n + 1),
            Profile::NearTop => rng.gen_range(self.n..=self.n + 1),
        };
        if pick > self.n {
            ExtRat::Inf
        } else {
            ExtRat::int(pick)
        }
    }

    fn parse(&self, text: &str) -> Result<ExtRat, ParseError> {
        let v: ExtRat = text.parse()?;
        match v.finite() {
            Some(q) if !q.is_integer() || v > ExtRat::int(self.n) => Err(ParseError::OutOfCarrier(format!(
                "{text:?} is not in {{0..{}, inf}}",
                self.n
            ))),
            _ => Ok(v),
        }
    }

    fn format(&self, x: &ExtRat) -> String {
        x.to_string()
    }

    fn is_finite_carrier(&self) -> bool {
        true
    }

    fn is_simple(&self) -> bool {
        true
    }

    fn is_algebraic(&self) -> bool {
        true
    }

    fn classification(&self) -> Classification {
        Classification::Mixed
    }

    fn carrier(&self) -> Option<Vec<ExtRat>> {
        let mut all: Vec<ExtRat> = (0..=self.n).map(ExtRat::int).collect();
        all.push(ExtRat::Inf);
        Some(all)
    }

    fn landmarks(&self) -> Vec<ExtRat> {
        self.carrier().unwrap_or_default()
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

    fn o5_candidates(&self, _xp: &ExtRat, _x: &ExtRat, _y: &ExtRat) -> Candidates<ExtRat> {
        Candidates::complete(self.carrier().unwrap_or_default())
    }

    fn meet(&self, a: &ExtRat, b: &ExtRat) -> Option<ExtRat> {
        Some(a.clone().min(b.clone()))
    }

    fn halving_candidates(&self, _x: &ExtRat) -> Candidates<ExtRat> {
        Candidates::complete(self.carrier().unwrap_or_default())
    }

    fn absorbed_candidates(&self, _a: &ExtRat) -> Candidates<ExtRat> {
        Candidates::complete(self.carrier().unwrap_or_default())
    }

    fn compact_elements(&self) -> Option<Vec<ExtRat>> {
        self.carrier()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{has_properly_infinite_multiple, is_properly_infinite, multiple, s_below};

    #[test]
    fn saturation_rule() {
        let s3 = Sn::new(3);
        assert_eq!(multiple(&s3, 4, &ExtRat::one()), ExtRat::Inf);
        assert_eq!(multiple(&s3, 3, &ExtRat::one()), ExtRat::int(3));
        assert_eq!(s3.add(&ExtRat::int(2), &ExtRat::zero()), ExtRat::int(2));
    }

    #[test]
    fn derived_relations_on_s1() {
        let s1 = Sn::new(1);
        let one = ExtRat::one();
        assert!(s1.leq(&one, &ExtRat::Inf));
        assert_eq!(s_below(&s1, &one, &one, 8), Some(2));
        assert!(!is_properly_infinite(&s1, &one));
        assert!(is_properly_infinite(&s1, &ExtRat::Inf));
        assert_eq!(has_properly_infinite_multiple(&s1, &one, 8), Some(2));
    }

    #[test]
    fn grammar() {
        let s2 = Sn::new(2);
        assert_eq!(s2.parse("2").unwrap(), ExtRat::int(2));
        assert_eq!(s2.parse("inf").unwrap(), ExtRat::Inf);
        assert!(matches!(s2.parse("3"), Err(ParseError::OutOfCarrier(_))));
        assert!(matches!(s2.parse("1/2"), Err(ParseError::OutOfCarrier(_))));
    }
}
