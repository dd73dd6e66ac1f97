//! The ordered-semigroup interface and the relations derived from it.

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CapabilityError, ParseError};
use crate::ext_rat::ExtRat;
use crate::series::SeriesSpec;

/// Magnitude bias for samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Small,
    Mixed,
    NearTop,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Small, Profile::Mixed, Profile::NearTop];
}

/// Witness candidates for an existential search.
///
/// `complete` means the entry has a case argument showing that if any
/// witness exists, one of `elems` is a witness.
#[derive(Clone, Debug)]
pub struct Candidates<E> {
    pub elems: Vec<E>,
    pub complete: bool,
}

impl<E> Candidates<E> {
    pub fn partial(elems: Vec<E>) -> Self {
        Candidates {
            elems,
            complete: false,
        }
    }

    pub fn complete(elems: Vec<E>) -> Self {
        Candidates {
            elems,
            complete: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    StablyFinite,
    PurelyInfinite,
    Mixed,
}

/// A positively ordered abelian monoid with a largest element.
///
/// `way_below`, the series suprema and the analytic overrides are supplied
/// per entry in closed form.
pub trait Semigroup: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    /// Instance id used on the command line, e.g. `s1`.
    fn id(&self) -> &str;
    /// Catalog entry name, e.g. `S_n`.
    fn entry(&self) -> &'static str;

    fn zero(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn way_below(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    /// `n`-th term of a canonical rapidly increasing chain with supremum `x`.
    fn rapid_term(&self, x: &Self::Elem, n: u32) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, profile: Profile) -> Self::Elem;
    fn parse(&self, text: &str) -> Result<Self::Elem, ParseError>;
    fn format(&self, x: &Self::Elem) -> String;

    fn is_finite_carrier(&self) -> bool {
        false
    }
    fn is_simple(&self) -> bool;
    fn is_algebraic(&self) -> bool;
    fn classification(&self) -> Classification;

    /// Every element, for finite carriers.
    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Notable elements that every search visits before random samples.
    fn landmarks(&self) -> Vec<Self::Elem>;

    /// Scalar embedding used by geometric series terms.
    fn scalar_term(&self, _q: &ExtRat) -> Option<Self::Elem> {
        None
    }

    /// Supremum of a strictly increasing chain of embedded scalars whose real
    /// limit is `q`.
    fn scalar_limit(&self, _q: &ExtRat) -> Option<Self::Elem> {
        None
    }

    /// The `i`-th unit vector (1-based).
    fn indicator(&self, _i: u64) -> Option<Self::Elem> {
        None
    }

    /// `Σ_{n ≥ k} e_n`.
    fn indicator_tail_sum(&self, _k: u64) -> Option<Self::Elem> {
        None
    }

    /// `sup_n n·c`.
    fn multiples_sup(&self, c: &Self::Elem) -> Self::Elem {
        if *c == self.zero() {
            self.zero()
        } else {
            self.top()
        }
    }

    /// Exact decision of `x <_s y` when the entry has one.
    fn s_below_exact(&self, _x: &Self::Elem, _y: &Self::Elem) -> Option<bool> {
        None
    }

    /// Exact decision of "some multiple of `x` is properly infinite".
    fn properly_infinite_multiple_exact(&self, _x: &Self::Elem) -> Option<bool> {
        None
    }

    /// Closed form for `β(x, y)`.
    fn beta_formula(&self, _x: &Self::Elem, _y: &Self::Elem) -> Option<ExtRat> {
        None
    }

    /// Exact decision of `x <_s y_j` for every term of a series.
    fn s_below_all_terms(&self, _x: &Self::Elem, _spec: &SeriesSpec<Self::Elem>) -> Option<bool> {
        None
    }

    /// Candidate `z` with `x' + z ≤ y ≤ x + z`.
    fn o5_candidates(&self, _xp: &Self::Elem, _x: &Self::Elem, y: &Self::Elem) -> Candidates<Self::Elem> {
        Candidates::partial(vec![self.zero(), y.clone(), self.top()])
    }

    /// Greatest lower bound, when it exists in closed form.
    fn meet(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Candidate halves `y` with `2y ≤ x` or `y_1 + y_2 ≤ x`.
    fn halving_candidates(&self, x: &Self::Elem) -> Candidates<Self::Elem> {
        Candidates::partial(vec![x.clone()])
    }

    /// Candidate `b ≠ 0` with `a + b ≤ a`.
    fn absorbed_candidates(&self, a: &Self::Elem) -> Candidates<Self::Elem> {
        Candidates::partial(vec![a.clone()])
    }

    /// All compact elements, when there are finitely many.
    fn compact_elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// The coordinate read by the scaled functionals, for entries that
    /// register them.
    fn functional_coordinate(&self, _x: &Self::Elem) -> Option<ExtRat> {
        None
    }
}

/// `n · x`; `multiple(0, x)` is zero.
pub fn multiple<S: Semigroup>(s: &S, n: u64, x: &S::Elem) -> S::Elem {
    let mut acc = s.zero();
    let mut base = x.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = s.add(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = s.add(&base, &base);
        }
    }
    acc
}

/// Smallest `k ≤ kmax` with `(k+1)·x ≤ k·y`.
pub fn s_below<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem, kmax: u64) -> Option<u64> {
    let mut lhs = s.add(x, x);
    let mut rhs = y.clone();
    for k in 1..=kmax {
        if s.leq(&lhs, &rhs) {
            return Some(k);
        }
        lhs = s.add(&lhs, x);
        rhs = s.add(&rhs, y);
    }
    None
}

/// `x <_s y`: exact when the entry decides it, otherwise the bounded search
/// (`None` means inconclusive).
pub fn s_below_holds<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem, kmax: u64) -> Option<bool> {
    if let Some(b) = s.s_below_exact(x, y) {
        return Some(b);
    }
    s_below(s, x, y, kmax).map(|_| true)
}

pub fn is_properly_infinite<S: Semigroup>(s: &S, x: &S::Elem) -> bool {
    s.leq(&s.add(x, x), x)
}

/// `a` is finite when `a + b ≤ a` forces `b = 0`.
///
/// Decided over the entry's candidates; `None` when no candidate refutes
/// finiteness and the candidates are not complete.
pub fn is_finite_elem<S: Semigroup>(s: &S, a: &S::Elem) -> Option<bool> {
    let zero = s.zero();
    let cands = match s.carrier() {
        Some(all) => Candidates::complete(all),
        None => s.absorbed_candidates(a),
    };
    for b in &cands.elems {
        if *b != zero && s.leq(&s.add(a, b), a) {
            return Some(false);
        }
    }
    if cands.complete {
        Some(true)
    } else {
        None
    }
}

/// Smallest `n ≤ nmax` with `n·x` properly infinite.
pub fn has_properly_infinite_multiple<S: Semigroup>(s: &S, x: &S::Elem, nmax: u64) -> Option<u64> {
    let mut m = x.clone();
    for n in 1..=nmax {
        if is_properly_infinite(s, &m) {
            return Some(n);
        }
        m = s.add(&m, x);
    }
    None
}

/// Exact when the entry decides it, otherwise the bounded search.
pub fn properly_infinite_multiple_holds<S: Semigroup>(s: &S, x: &S::Elem, nmax: u64) -> Option<bool> {
    if let Some(b) = s.properly_infinite_multiple_exact(x) {
        return Some(b);
    }
    has_properly_infinite_multiple(s, x, nmax).map(|_| true)
}

/// Smallest `n ≤ nmax` with `x ≤ n·y`.
pub fn proportional<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem, nmax: u64) -> Option<u64> {
    let mut m = y.clone();
    for n in 1..=nmax {
        if s.leq(x, &m) {
            return Some(n);
        }
        m = s.add(&m, y);
    }
    None
}

pub fn is_compact<S: Semigroup>(s: &S, x: &S::Elem) -> bool {
    s.way_below(x, x)
}

/// `n`-th term (1-based) of a series.
pub fn series_term<S: Semigroup>(
    s: &S,
    spec: &SeriesSpec<S::Elem>,
    n: u64,
) -> Result<S::Elem, CapabilityError> {
    assert!(n >= 1, "series terms are 1-based");
    match spec {
        SeriesSpec::Geometric { first, ratio } => {
            let mut q = first.clone();
            for _ in 1..n {
                q = q.mul(ratio);
            }
            s.scalar_term(&q)
                .ok_or_else(|| CapabilityError::new(s.id(), "geometric series"))
        }
        SeriesSpec::Constant { term } => Ok(term.clone()),
        SeriesSpec::IndicatorStream => s
            .indicator(n)
            .ok_or_else(|| CapabilityError::new(s.id(), "indicator stream")),
        SeriesSpec::FiniteThenZero { terms } => {
            Ok(terms.get((n - 1) as usize).cloned().unwrap_or_else(|| s.zero()))
        }
        SeriesSpec::Scaled { factor, inner } => Ok(multiple(s, *factor, &series_term(s, inner, n)?)),
        SeriesSpec::Tail { start, inner } => series_term(s, inner, n + start - 1),
    }
}

/// `y_1 + … + y_n`.
pub fn partial_sum<S: Semigroup>(
    s: &S,
    spec: &SeriesSpec<S::Elem>,
    n: u64,
) -> Result<S::Elem, CapabilityError> {
    let mut acc = s.zero();
    for i in 1..=n {
        acc = s.add(&acc, &series_term(s, spec, i)?);
    }
    Ok(acc)
}

/// Exact supremum of the partial sums.
pub fn series_sum<S: Semigroup>(s: &S, spec: &SeriesSpec<S::Elem>) -> Result<S::Elem, CapabilityError> {
    match spec {
        SeriesSpec::FiniteThenZero { terms } => Ok(terms.iter().fold(s.zero(), |acc, t| s.add(&acc, t))),
        SeriesSpec::Constant { term } => Ok(s.multiples_sup(term)),
        SeriesSpec::Geometric { first, ratio } => {
            let cap = || CapabilityError::new(s.id(), "geometric series");
            if first.is_zero() {
                return Ok(s.zero());
            }
            if first.is_inf() {
                let t = s.scalar_term(first).ok_or_else(cap)?;
                return Ok(s.multiples_sup(&t));
            }
            let gap = ExtRat::one().checked_sub(ratio).ok_or_else(cap)?;
            s.scalar_limit(&first.div(&gap)).ok_or_else(cap)
        }
        SeriesSpec::IndicatorStream => s
            .indicator_tail_sum(1)
            .ok_or_else(|| CapabilityError::new(s.id(), "indicator stream")),
        SeriesSpec::Scaled { factor, inner } => Ok(multiple(s, *factor, &series_sum(s, inner)?)),
        SeriesSpec::Tail { start, inner } => match inner.as_ref() {
            SeriesSpec::IndicatorStream => s
                .indicator_tail_sum(*start)
                .ok_or_else(|| CapabilityError::new(s.id(), "indicator stream")),
            other => series_sum(s, &other.shifted(*start)),
        },
    }
}

/// Closed-form decision of "`m · Σ_{n ≥ k} y_n = ∞` for every `k`".
pub fn tail_scaled_is_top<S: Semigroup>(
    s: &S,
    spec: &SeriesSpec<S::Elem>,
    m: u64,
) -> Result<bool, CapabilityError> {
    let top = s.top();
    match spec {
        // Tails are eventually zero.
        SeriesSpec::FiniteThenZero { .. } => Ok(top == s.zero()),
        // Every tail has the same supremum.
        SeriesSpec::Constant { .. } => Ok(multiple(s, m, &series_sum(s, spec)?) == top),
        // Tail sums of a finite geometric series tend to zero in the scalar
        // embedding, so some scaled tail stays below the top.
        SeriesSpec::Geometric { first, .. } => {
            if first.is_inf() {
                Ok(multiple(s, m, &series_sum(s, spec)?) == top)
            } else {
                Ok(false)
            }
        }
        // Indicator tails are shifts of one another; the entry's tail sums
        // differ only in a zero prefix.
        SeriesSpec::IndicatorStream => {
            let first = s
                .indicator_tail_sum(1)
                .ok_or_else(|| CapabilityError::new(s.id(), "indicator stream"))?;
            let later = s
                .indicator_tail_sum(64)
                .ok_or_else(|| CapabilityError::new(s.id(), "indicator stream"))?;
            Ok(multiple(s, m, &first) == top && multiple(s, m, &later) == top)
        }
        SeriesSpec::Scaled { factor, inner } => tail_scaled_is_top(s, inner, m * factor),
        SeriesSpec::Tail { inner, .. } => tail_scaled_is_top(s, inner, m),
    }
}
