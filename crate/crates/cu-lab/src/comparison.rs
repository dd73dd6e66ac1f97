//! The comparison value `β(x, y) = inf { l/k : k·x ≤ l·y }` and the state it
//! induces on the subsemigroup generated by `x` and `y`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::error::CapabilityError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{
    multiple, properly_infinite_multiple_holds, proportional, s_below, s_below_holds, Profile, Semigroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BetaStatus {
    /// The search reached the exact value.
    ExactAttained,
    /// The exact value is known and lies strictly below every bound found.
    ExactLimit,
    BoundOnly,
    /// No `(k, l)` within the bound satisfies `k·x ≤ l·y`.
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaResult {
    pub upper: ExtRat,
    pub witness: Option<(u64, u64)>,
    pub exact: Option<ExtRat>,
    pub status: BetaStatus,
}

fn ratio(l: u64, k: u64) -> ExtRat {
    ExtRat::Fin(BigRational::new(BigInt::from(l), BigInt::from(k)))
}

/// Least `l/k` over `1 ≤ k ≤ K`, `0 ≤ l ≤ K` with `k·x ≤ l·y`.
///
/// `k` runs upwards and only strict improvements replace the witness, so
/// the reported pair is the lexicographically least minimiser.
pub fn beta_bounded<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem, bound: u64) -> BetaResult {
    assert!(bound >= 1, "beta bound must be positive");
    let ys: Vec<S::Elem> = {
        let mut v = Vec::with_capacity(bound as usize + 1);
        let mut acc = s.zero();
        v.push(acc.clone());
        for _ in 0..bound {
            acc = s.add(&acc, y);
            v.push(acc.clone());
        }
        v
    };
    let mut best: Option<(u64, u64)> = None;
    let mut kx = s.zero();
    for k in 1..=bound {
        kx = s.add(&kx, x);
        // Only l with l/k strictly below the current best can improve it.
        let l_cap = match best {
            Some((bk, bl)) => {
                let num = bl * k;
                if num == 0 {
                    break;
                }
                ((num - 1) / bk).min(bound)
            }
            None => bound,
        };
        // l·y is increasing in l, so the feasible l form an upper interval.
        if !s.leq(&kx, &ys[l_cap as usize]) {
            continue;
        }
        let (mut lo, mut hi) = (0u64, l_cap);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if s.leq(&kx, &ys[mid as usize]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        best = Some((k, lo));
    }
    match best {
        Some((k, l)) => BetaResult {
            upper: ratio(l, k),
            witness: Some((k, l)),
            exact: None,
            status: BetaStatus::BoundOnly,
        },
        None => BetaResult {
            upper: ExtRat::Inf,
            witness: None,
            exact: None,
            status: BetaStatus::Undefined,
        },
    }
}

/// Exact `β(x, y)` from the entry's closed form, or `0` when `x ∝ y` and `y`
/// has a properly infinite multiple.
pub fn beta_exact<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem) -> Result<ExtRat, CapabilityError> {
    if *x == s.zero() {
        return Ok(ExtRat::zero());
    }
    if let Some(v) = s.beta_formula(x, y) {
        return Ok(v);
    }
    let pim = properly_infinite_multiple_holds(s, y, 64) == Some(true);
    if pim && proportional(s, x, y, 1024).is_some() {
        return Ok(ExtRat::zero());
    }
    Err(CapabilityError::new(s.id(), "no closed form for beta"))
}

/// Bounded search combined with the exact value when available.
pub fn beta<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem, bound: u64) -> BetaResult {
    let mut r = beta_bounded(s, x, y, bound);
    if let Ok(exact) = beta_exact(s, x, y) {
        if r.status != BetaStatus::Undefined {
            r.status = if exact == r.upper {
                BetaStatus::ExactAttained
            } else {
                BetaStatus::ExactLimit
            };
        }
        r.exact = Some(exact);
    }
    r
}

/// `f₀(k·x + l·y) = k·β + l` on the subsemigroup generated by `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePair<E> {
    pub x: E,
    pub y: E,
    pub beta: ExtRat,
}

impl<E: Clone> StatePair<E> {
    pub fn new<S: Semigroup<Elem = E>>(s: &S, x: &E, y: &E) -> Result<Self, CapabilityError> {
        let beta = beta_exact(s, x, y)?;
        Ok(StatePair {
            x: x.clone(),
            y: y.clone(),
            beta,
        })
    }
}

pub fn f0_eval<E>(sp: &StatePair<E>, k: u64, l: u64) -> ExtRat {
    &sp.beta.mul_int(k) + &ExtRat::int(l)
}

/// Which branch of the monotonicity argument a comparable quadruple falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F0Case {
    /// `k₁ ≤ k₂`, `l₁ ≤ l₂`.
    BothGrow,
    /// `k₁ ≤ k₂`, `l₁ > l₂`.
    TradeYForX,
    /// `k₁ > k₂`, `l₁ ≤ l₂`.
    TradeXForY,
    /// `k₁ > k₂`, `l₁ > l₂`.
    BothShrink,
}

impl F0Case {
    pub fn of(k1: u64, l1: u64, k2: u64, l2: u64) -> Self {
        match (k1 <= k2, l1 <= l2) {
            (true, true) => F0Case::BothGrow,
            (true, false) => F0Case::TradeYForX,
            (false, true) => F0Case::TradeXForY,
            (false, false) => F0Case::BothShrink,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct F0Report {
    pub comparable: u64,
    /// Counts per [`F0Case`] in declaration order.
    pub buckets: [u64; 4],
    pub violations: Vec<(u64, u64, u64, u64)>,
}

impl F0Report {
    pub fn bucket(&self, case: F0Case) -> u64 {
        self.buckets[case.index()]
    }
}

/// Samples quadruples `(k₁, l₁, k₂, l₂)` in `0..=max_coeff` until `samples`
/// of them satisfy `k₁x + l₁y ≤ k₂x + l₂y`, and checks
/// `f₀(k₁, l₁) ≤ f₀(k₂, l₂)` on each.
pub fn f0_monotone_check<S: Semigroup, R: Rng + ?Sized>(
    s: &S,
    sp: &StatePair<S::Elem>,
    samples: u64,
    max_coeff: u64,
    rng: &mut R,
) -> F0Report {
    let mut report = F0Report::default();
    let elem = |k: u64, l: u64| s.add(&multiple(s, k, &sp.x), &multiple(s, l, &sp.y));
    let mut attempts = 0u64;
    while report.comparable < samples && attempts < samples * 200 {
        attempts += 1;
        let (k1, l1, k2, l2) = (
            rng.gen_range(0..=max_coeff),
            rng.gen_range(0..=max_coeff),
            rng.gen_range(0..=max_coeff),
            rng.gen_range(0..=max_coeff),
        );
        if !s.leq(&elem(k1, l1), &elem(k2, l2)) {
            continue;
        }
        report.comparable += 1;
        report.buckets[F0Case::of(k1, l1, k2, l2).index()] += 1;
        if f0_eval(sp, k1, l1) > f0_eval(sp, k2, l2) {
            report.violations.push((k1, l1, k2, l2));
        }
    }
    report
}

/// Searches `z = k·x + l·y` (coefficients up to `max_coeff`) and `k < l`
/// with `l·y + z ≤ k·y + z`; such a pair rules out every state normalised
/// at `y`, and with it the monotonicity of `f₀`.
pub fn normalisation_obstruction<S: Semigroup>(
    s: &S,
    x: &S::Elem,
    y: &S::Elem,
    max_coeff: u64,
) -> Option<(u64, u64, u64, u64)> {
    for a in 0..=max_coeff {
        for b in 0..=max_coeff {
            let z = s.add(&multiple(s, a, x), &multiple(s, b, y));
            for k in 0..max_coeff {
                for l in (k + 1)..=max_coeff {
                    let lhs = s.add(&multiple(s, l, y), &z);
                    let rhs = s.add(&multiple(s, k, y), &z);
                    if s.leq(&lhs, &rhs) {
                        return Some((a, b, k, l));
                    }
                }
            }
        }
    }
    None
}

/// Bounded upper values of `β(x, y)` at each search bound, in the given order.
pub fn upper_profile<S: Semigroup>(s: &S, x: &S::Elem, y: &S::Elem, bounds: &[u64]) -> Vec<ExtRat> {
    bounds.iter().map(|&k| beta_bounded(s, x, y, k).upper).collect()
}

/// Per-law counts of applicable samples and the violations found.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BetaSuiteReport {
    pub checked: BTreeMap<&'static str, u64>,
    pub violations: Vec<String>,
}

impl BetaSuiteReport {
    fn record(&mut self, law: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(law).or_default() += 1;
        if !ok {
            self.violations.push(format!("{law}: {}", detail()));
        }
    }

    pub fn count(&self, law: &str) -> u64 {
        self.checked.get(law).copied().unwrap_or(0)
    }
}

pub const BETA_LAWS: [&str; 7] = [
    "monotone_in_y",
    "monotone_in_x",
    "subadditive",
    "harmonic",
    "almost_zero",
    "s_below_bridge",
    "multiples_equivalence",
];

/// Order laws of `β` on `samples` random draws.
///
/// Laws stated for the exact value are only checked where the entry has a
/// closed form; the `<_s` bridge falls back to its bounded direction.
pub fn beta_property_suite<S: Semigroup, R: Rng + ?Sized>(
    s: &S,
    samples: u64,
    rng: &mut R,
) -> BetaSuiteReport {
    const KMAX: u64 = 1024;
    const K_BRIDGE: u64 = 256;
    let mut report = BetaSuiteReport::default();
    let exact = |x: &S::Elem, y: &S::Elem| beta_exact(s, x, y).ok();
    let fmt = |e: &S::Elem| s.format(e);
    for i in 0..samples {
        let profile = Profile::ALL[(i % 3) as usize];
        let x = s.sample(rng, profile);
        let y = s.sample(rng, Profile::ALL[((i / 3) % 3) as usize]);
        let z = s.sample(rng, Profile::Mixed);

        // Monotone in y: y ≤ y + z.
        let yz = s.add(&y, &z);
        if let (Some(a), Some(b)) = (exact(&x, &y), exact(&x, &yz)) {
            report.record("monotone_in_y", a >= b, || {
                format!("β({}, {}) = {a} < β(x, {}) = {b}", fmt(&x), fmt(&y), fmt(&yz))
            });
        }
        // Monotone in x: x ≤ x + z.
        let xz = s.add(&x, &z);
        if let (Some(a), Some(b)) = (exact(&x, &y), exact(&xz, &y)) {
            report.record("monotone_in_x", a <= b, || {
                format!("β({}, {}) = {a} > β({}, y) = {b}", fmt(&x), fmt(&y), fmt(&xz))
            });
        }
        if let (Some(a), Some(b), Some(c)) = (exact(&xz, &y), exact(&x, &y), exact(&z, &y)) {
            let sum = &b + &c;
            report.record("subadditive", a <= sum, || {
                format!("β({} + {}, {}) = {a} > {sum}", fmt(&x), fmt(&z), fmt(&y))
            });
        }
        if let (Some(a), Some(b), Some(c)) = (exact(&x, &yz), exact(&x, &y), exact(&x, &z)) {
            let bound = (&b.recip() + &c.recip()).recip();
            report.record("harmonic", a <= bound, || {
                format!("β({}, {} + {}) = {a} > {bound}", fmt(&x), fmt(&y), fmt(&z))
            });
        }

        // Sums of k elements each strictly above x in the <_s sense.
        let k = rng.gen_range(1..=3u64);
        let ys: Vec<S::Elem> = (0..k).map(|_| s.sample(rng, Profile::NearTop)).collect();
        let x_small = s.sample(rng, Profile::Small);
        if ys
            .iter()
            .all(|yj| s_below_holds(s, &x_small, yj, KMAX) == Some(true))
        {
            let total = ys.iter().fold(s.zero(), |acc, yj| s.add(&acc, yj));
            if let Some(a) = exact(&x_small, &total) {
                let bound = ExtRat::frac(1, k);
                report.record("almost_zero", a <= bound, || {
                    format!("β({}, Σ of {k}) = {a} > 1/{k}", fmt(&x_small))
                });
            }
        }

        match (exact(&x, &y), s_below_holds(s, &x, &y, KMAX)) {
            (Some(a), Some(sb)) => {
                report.record("s_below_bridge", (a < ExtRat::one()) == sb, || {
                    format!("β({}, {}) = {a} but <_s is {sb}", fmt(&x), fmt(&y))
                });
            }
            (None, Some(true)) => {
                if let Some(k) = s_below(s, &x, &y, K_BRIDGE - 1) {
                    let upper = beta_bounded(s, &x, &y, K_BRIDGE).upper;
                    report.record("s_below_bridge", upper < ExtRat::one(), || {
                        format!("({}+1)·{} ≤ {k}·{} but bounded β is {upper}", k, fmt(&x), fmt(&y))
                    });
                }
            }
            _ => {}
        }

        let mutual = proportional(s, &x, &y, 64).is_some() && proportional(s, &y, &x, 64).is_some();
        if mutual {
            let px = properly_infinite_multiple_holds(s, &x, 64);
            let py = properly_infinite_multiple_holds(s, &y, 64);
            if let (Some(a), Some(px), Some(py)) = (exact(&x, &y), px, py) {
                report.record("multiples_equivalence", a.is_zero() == px && px == py, || {
                    format!("β({}, {}) = {a}, multiples {px}/{py}", fmt(&x), fmt(&y))
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Interval01Inf, ProductFiniteByRay, Sn, UhfRay};
    use crate::semigroup::Semigroup;

    #[test]
    fn bounded_examples() {
        let s1 = Sn::new(1);
        let one = ExtRat::one();
        let r = beta_bounded(&s1, &one, &one, 8);
        assert_eq!(r.upper, ExtRat::frac(1, 4));
        assert_eq!(r.witness, Some((8, 2)));
        assert_eq!(r.status, BetaStatus::BoundOnly);

        let r = beta_bounded(&Interval01Inf, &ExtRat::frac(3, 4), &ExtRat::frac(1, 2), 64);
        assert_eq!(r.upper, ExtRat::frac(3, 64));
        assert_eq!(r.witness, Some((64, 3)));
    }

    #[test]
    fn exact_examples() {
        let s1 = Sn::new(1);
        assert_eq!(
            beta_exact(&s1, &ExtRat::one(), &ExtRat::one()).unwrap(),
            ExtRat::zero()
        );
        let p = ProductFiniteByRay;
        let x = p.parse("(1/2, 1)").unwrap();
        let y = p.parse("(3/4, inf)").unwrap();
        assert_eq!(beta_exact(&p, &x, &y).unwrap(), ExtRat::zero());
        let u = UhfRay;
        let x = u.parse("s:1/2").unwrap();
        let y = u.parse("s:1").unwrap();
        let r = beta(&u, &x, &y, 64);
        assert_eq!(r.exact, Some(ExtRat::frac(1, 2)));
        assert_eq!(r.witness, Some((2, 1)));
        assert_eq!(r.status, BetaStatus::ExactAttained);
    }

    #[test]
    fn zero_first_argument() {
        let u = UhfRay;
        let y = u.parse("c:3").unwrap();
        assert_eq!(beta_exact(&u, &u.zero(), &y).unwrap(), ExtRat::zero());
        let r = beta_bounded(&u, &u.zero(), &y, 4);
        assert_eq!(r.witness, Some((1, 0)));
    }

    #[test]
    fn state_values() {
        let u = UhfRay;
        let sp = StatePair::new(&u, &u.parse("s:1/2").unwrap(), &u.parse("s:1").unwrap()).unwrap();
        assert_eq!(f0_eval(&sp, 2, 0), ExtRat::one());
        assert_eq!(f0_eval(&sp, 0, 1), ExtRat::one());
        assert_eq!(f0_eval(&sp, 0, 0), ExtRat::zero());
    }

    #[test]
    fn s1_has_no_state_normalised_at_one() {
        let s1 = Sn::new(1);
        let one = ExtRat::one();
        assert!(normalisation_obstruction(&s1, &one, &one, 3).is_some());
        let u = UhfRay;
        let x = u.parse("s:1/2").unwrap();
        let y = u.parse("s:1").unwrap();
        assert_eq!(normalisation_obstruction(&u, &x, &y, 3), None);
    }
}
