//! Refutation certificates: the JSON form and the independent verifier.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Property;
use crate::catalog::instance;
use crate::comparison::{beta_bounded, beta_exact};
use crate::error::LabError;
use crate::semigroup::{
    is_compact, is_properly_infinite, multiple, proportional, s_below_holds, series_sum, series_term,
    tail_scaled_is_top, Semigroup,
};
use crate::series::SeriesSpec;
use crate::with_instance;

pub const CERTIFICATE_SCHEMA: &str = "cu-lab.certificate.v1";

/// Bound for `<_s` and `∝` searches inside verification.
const VERIFY_BOUND: u64 = 64;
/// Terms checked individually when a series leg has no closed form.
const TERM_PROBE: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Omega,
    Cfp,
    Qq,
    Cancellation,
    O5,
    O6,
    WeakHalving,
    GlimmHalving,
    Beta,
    StableFiniteness,
    PureInfiniteness,
    Algebraicity,
    Simplicity,
}

impl CertKind {
    pub fn property(self) -> Property {
        match self {
            CertKind::Omega => Property::Omega,
            CertKind::Cfp => Property::Cfp,
            CertKind::Qq => Property::Qq,
            CertKind::Cancellation => Property::Cancellation,
            CertKind::O5 => Property::O5,
            CertKind::O6 => Property::O6,
            CertKind::WeakHalving => Property::WeakHalving,
            CertKind::GlimmHalving => Property::GlimmHalving,
            CertKind::Beta => Property::Beta,
            CertKind::StableFiniteness => Property::StablyFinite,
            CertKind::PureInfiniteness => Property::PurelyInfinite,
            CertKind::Algebraicity => Property::Algebraic,
            CertKind::Simplicity => Property::Simple,
        }
    }
}

/// A certificate as stored on disk. Elements are in the entry's grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// Instance id, e.g. `s1`.
    pub entry: String,
    pub property: Property,
    pub kind: CertKind,
    #[serde(default)]
    pub elements: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSpec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
}

impl CertificateFile {
    pub fn new(entry: &str, kind: CertKind) -> Self {
        CertificateFile {
            schema: CERTIFICATE_SCHEMA.to_string(),
            id: None,
            entry: entry.to_string(),
            property: kind.property(),
            kind,
            elements: BTreeMap::new(),
            series: None,
            params: BTreeMap::new(),
        }
    }

    pub fn with_elem<S: Semigroup>(mut self, s: &S, key: &str, e: &S::Elem) -> Self {
        self.elements.insert(key.to_string(), s.format(e));
        self
    }

    pub fn with_series<S: Semigroup>(mut self, s: &S, spec: &SeriesSpec<S::Elem>) -> Self {
        let mapped: Result<SeriesSpec<String>, ()> = spec.try_map(&mut |e| Ok(s.format(e)));
        self.series = mapped.ok();
        self
    }

    pub fn with_param(mut self, key: &str, v: u64) -> Self {
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn from_json(text: &str) -> Result<Self, LabError> {
        let c: CertificateFile = serde_json::from_str(text)?;
        if c.schema != CERTIFICATE_SCHEMA {
            return Err(LabError::Certificate(format!(
                "unsupported schema {:?}",
                c.schema
            )));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

/// A failed verification: the leg that did not hold plus the lines that did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub leg: String,
    pub transcript: Vec<String>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rejected: {}", self.leg)
    }
}

struct Checker {
    lines: Vec<String>,
}

impl Checker {
    fn leg(&mut self, ok: bool, text: impl Into<String>) -> Result<(), Rejection> {
        self.leg_or(ok, text, |t| t)
    }

    /// Records `text` when `ok`, otherwise rejects with `fail(text)`.
    fn leg_or(
        &mut self,
        ok: bool,
        text: impl Into<String>,
        fail: impl FnOnce(String) -> String,
    ) -> Result<(), Rejection> {
        let text = text.into();
        if ok {
            self.lines.push(format!("ok   {text}"));
            Ok(())
        } else {
            Err(self.reject(fail(text)))
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.lines.push(format!("info {}", text.into()));
    }

    fn reject(&self, leg: impl Into<String>) -> Rejection {
        Rejection {
            leg: leg.into(),
            transcript: self.lines.clone(),
        }
    }
}

/// `x <_s y_n` for every `n`, decided in closed form where possible.
pub fn s_below_every_term<S: Semigroup>(s: &S, x: &S::Elem, spec: &SeriesSpec<S::Elem>) -> Option<bool> {
    if let Some(b) = s.s_below_all_terms(x, spec) {
        return Some(b);
    }
    if *x == s.zero() {
        return Some(true);
    }
    match spec {
        SeriesSpec::Constant { term } => s_below_holds(s, x, term, VERIFY_BOUND),
        // The zero tail is never above a nonzero x.
        SeriesSpec::FiniteThenZero { .. } => Some(false),
        // y ≤ f·y, so the inner series already suffices.
        SeriesSpec::Scaled { inner, .. } => match s_below_every_term(s, x, inner) {
            Some(true) => Some(true),
            _ => None,
        },
        SeriesSpec::Tail { start, inner } => {
            if s_below_every_term(s, x, inner) == Some(true) {
                return Some(true);
            }
            let shifted = inner.shifted(*start);
            match shifted {
                SeriesSpec::Tail { .. } => None,
                other => s_below_every_term(s, x, &other),
            }
        }
        SeriesSpec::Geometric { .. } | SeriesSpec::IndicatorStream => None,
    }
}

/// Verifies a certificate against its own instance.
pub fn verify_certificate(cert: &CertificateFile) -> Result<Vec<String>, Rejection> {
    let early = |leg: String| Rejection {
        leg,
        transcript: Vec::new(),
    };
    if cert.kind.property() != cert.property {
        return Err(early(format!(
            "kind {:?} does not refute property {}",
            cert.kind, cert.property
        )));
    }
    let inst = instance(&cert.entry).map_err(|e| early(e.to_string()))?;
    with_instance!(&inst, s => verify_on(s, cert))
}

fn elem<S: Semigroup>(s: &S, cert: &CertificateFile, key: &str) -> Result<S::Elem, Rejection> {
    let text = cert.elements.get(key).ok_or_else(|| Rejection {
        leg: format!("missing element {key:?}"),
        transcript: Vec::new(),
    })?;
    s.parse(text).map_err(|e| Rejection {
        leg: format!("element {key:?}: {e}"),
        transcript: Vec::new(),
    })
}

fn param(cert: &CertificateFile, key: &str) -> Result<u64, Rejection> {
    cert.params.get(key).copied().ok_or_else(|| Rejection {
        leg: format!("missing parameter {key:?}"),
        transcript: Vec::new(),
    })
}

fn series<S: Semigroup>(s: &S, cert: &CertificateFile) -> Result<SeriesSpec<S::Elem>, Rejection> {
    let bad = |leg: String| Rejection {
        leg,
        transcript: Vec::new(),
    };
    let spec = cert.series.as_ref().ok_or_else(|| bad("missing series".into()))?;
    spec.validate().map_err(bad)?;
    spec.try_map(&mut |t| s.parse(t))
        .map_err(|e| bad(format!("series term: {e}")))
}

/// Every element a complete search has to consider: the carrier if finite,
/// otherwise the entry's candidates when they are complete.
fn exhaustive_set<S: Semigroup>(s: &S, cands: crate::semigroup::Candidates<S::Elem>) -> Option<Vec<S::Elem>> {
    match s.carrier() {
        Some(all) => Some(all),
        None if cands.complete => Some(cands.elems),
        None => None,
    }
}

fn verify_on<S: Semigroup>(s: &S, cert: &CertificateFile) -> Result<Vec<String>, Rejection> {
    let mut c = Checker { lines: Vec::new() };
    c.note(format!("{} on {} ({})", cert.kind_name(), s.id(), s.entry()));
    let f = |e: &S::Elem| s.format(e);
    let zero = s.zero();
    let top = s.top();
    match cert.kind {
        CertKind::Omega => {
            let xp = elem(s, cert, "x_prime")?;
            let x = elem(s, cert, "x")?;
            let spec = series(s, cert)?;
            c.leg(s.way_below(&xp, &x), format!("x' = {} ≪ x = {}", f(&xp), f(&x)))?;
            match s_below_every_term(s, &x, &spec) {
                Some(true) => c.leg(true, "x <_s y_n for every n")?,
                Some(false) => return Err(c.reject("x <_s y_n fails for some n")),
                None => {
                    return Err(c.reject(format!(
                        "{}: no closed form for x <_s y_n over this series",
                        s.entry()
                    )))
                }
            }
            let sum = series_sum(s, &spec).map_err(|e| c.reject(e.to_string()))?;
            c.leg_or(
                !s.leq(&xp, &sum),
                format!("x' = {} ≰ Σ y_n = {}", f(&xp), f(&sum)),
                |_| "x' ≤ Σ y_n holds, not a refutation".to_string(),
            )?;
            let chain = (1..8u64).all(
                |n| match (series_term(s, &spec, n), series_term(s, &spec, n + 1)) {
                    (Ok(a), Ok(b)) => s_below_holds(s, &a, &b, VERIFY_BOUND) == Some(true),
                    _ => false,
                },
            );
            c.note(format!("chain y_n <_s y_(n+1) for n < 8: {chain}"));
        }
        CertKind::Cfp => {
            let spec = series(s, cert)?;
            let m = param(cert, "m")?;
            let terms_small = (1..=TERM_PROBE).all(|n| {
                series_term(s, &spec, n)
                    .map(|t| s.way_below(&t, &top))
                    .unwrap_or(false)
            });
            c.leg(terms_small, format!("y_n ≪ ∞ for n ≤ {TERM_PROBE}"))?;
            let tails = tail_scaled_is_top(s, &spec, m).map_err(|e| c.reject(e.to_string()))?;
            c.leg(tails, format!("{m}·Σ_(n≥k) y_n = ∞ for every k"))?;
            let sum = series_sum(s, &spec).map_err(|e| c.reject(e.to_string()))?;
            c.leg(sum != top, format!("Σ y_n = {} ≠ ∞", f(&sum)))?;
        }
        CertKind::Qq => {
            let x = elem(s, cert, "x")?;
            let n = param(cert, "n")?;
            let nx = multiple(s, n, &x);
            c.leg(
                is_properly_infinite(s, &nx),
                format!("{n}·x = {} is properly infinite", f(&nx)),
            )?;
            c.leg(
                !is_properly_infinite(s, &x),
                format!("x = {} is not properly infinite", f(&x)),
            )?;
        }
        CertKind::Cancellation => {
            let x = elem(s, cert, "x")?;
            let y = elem(s, cert, "y")?;
            c.leg(s.way_below(&x, &top), format!("x = {} ≪ ∞", f(&x)))?;
            c.leg(y != zero, format!("y = {} ≠ 0", f(&y)))?;
            c.leg(s.add(&x, &y) == top, "x + y = ∞")?;
            c.leg(y != top, "y ≠ ∞")?;
        }
        CertKind::O5 => {
            let xp = elem(s, cert, "x_prime")?;
            let x = elem(s, cert, "x")?;
            let y = elem(s, cert, "y")?;
            c.leg(s.way_below(&xp, &x), format!("x' = {} ≪ x = {}", f(&xp), f(&x)))?;
            c.leg(s.leq(&x, &y), format!("x ≤ y = {}", f(&y)))?;
            let Some(all) = exhaustive_set(s, s.o5_candidates(&xp, &x, &y)) else {
                return Err(c.reject(format!("{}: no complete witness enumeration for z", s.entry())));
            };
            let found = all
                .iter()
                .find(|z| s.leq(&s.add(&xp, z), &y) && s.leq(&y, &s.add(&x, z)));
            c.leg_or(
                found.is_none(),
                format!(
                    "no z among {} exhaustive candidates has x' + z ≤ y ≤ x + z",
                    all.len()
                ),
                |_| format!("z = {} satisfies x' + z ≤ y ≤ x + z", f(found.expect("found"))),
            )?;
        }
        CertKind::O6 => {
            let xp = elem(s, cert, "x_prime")?;
            let x = elem(s, cert, "x")?;
            let y1 = elem(s, cert, "y1")?;
            let y2 = elem(s, cert, "y2")?;
            c.leg(s.way_below(&xp, &x), format!("x' = {} ≪ x = {}", f(&xp), f(&x)))?;
            let sum = s.add(&y1, &y2);
            c.leg(s.leq(&x, &sum), format!("x ≤ y1 + y2 = {}", f(&sum)))?;
            if let (Some(m1), Some(m2)) = (s.meet(&x, &y1), s.meet(&x, &y2)) {
                let best = s.add(&m1, &m2);
                c.leg_or(
                    !s.leq(&xp, &best),
                    format!(
                        "x' ≰ (x ∧ y1) + (x ∧ y2) = {} + {}; every admissible pair lies below",
                        f(&m1),
                        f(&m2)
                    ),
                    |_| "x' ≤ (x ∧ y1) + (x ∧ y2), not a refutation".to_string(),
                )?;
            } else if let Some(all) = s.carrier() {
                let below = |b: &S::Elem| -> Vec<S::Elem> {
                    all.iter()
                        .filter(|e| s.leq(e, &x) && s.leq(e, b))
                        .cloned()
                        .collect()
                };
                let (l1, l2) = (below(&y1), below(&y2));
                let hit = l1.iter().any(|a| l2.iter().any(|b| s.leq(&xp, &s.add(a, b))));
                c.leg(
                    !hit,
                    "no x1 ≤ x, y1 and x2 ≤ x, y2 in the carrier with x' ≤ x1 + x2",
                )?;
            } else {
                return Err(c.reject(format!("{}: no meet and no finite carrier", s.entry())));
            }
        }
        CertKind::WeakHalving | CertKind::GlimmHalving => {
            let x = elem(s, cert, "x")?;
            c.leg(x != zero, format!("x = {} ≠ 0", f(&x)))?;
            let Some(all) = exhaustive_set(s, s.halving_candidates(&x)) else {
                return Err(c.reject(format!("{}: no complete enumeration of halves", s.entry())));
            };
            if cert.kind == CertKind::GlimmHalving {
                let hit = all.iter().find(|z| **z != zero && s.leq(&s.add(z, z), &x));
                c.leg_or(
                    hit.is_none(),
                    format!("no nonzero z among {} candidates has 2z ≤ x", all.len()),
                    |_| format!("z = {} has 2z ≤ x", f(hit.expect("hit"))),
                )?;
            } else {
                for y1 in &all {
                    for y2 in &all {
                        if !s.leq(&s.add(y1, y2), &x) {
                            continue;
                        }
                        let p1 = proportional(s, &x, y1, VERIFY_BOUND);
                        let p2 = proportional(s, &x, y2, VERIFY_BOUND);
                        if p1.is_some() && p2.is_some() {
                            return Err(c.reject(format!("y1 = {}, y2 = {} halve x", f(y1), f(y2))));
                        }
                        if s.carrier().is_none() {
                            let undecided = (p1.is_none() && *y1 != zero) || (p2.is_none() && *y2 != zero);
                            if undecided {
                                return Err(c.reject(format!(
                                    "x ∝ y undecided within {VERIFY_BOUND} for y1 = {}, y2 = {}",
                                    f(y1),
                                    f(y2)
                                )));
                            }
                        }
                    }
                }
                c.leg(
                    true,
                    format!("no y1 + y2 ≤ x with x ∝ y1, y2 among {} candidates", all.len()),
                )?;
            }
        }
        CertKind::Beta => {
            let x = elem(s, cert, "x")?;
            let y = elem(s, cert, "y")?;
            c.leg(x != zero, format!("x = {} ≠ 0", f(&x)))?;
            let b = beta_exact(s, &x, &y).map_err(|e| c.reject(e.to_string()))?;
            c.leg(b.is_zero(), format!("β(x, y) = 0 for y = {}", f(&y)))?;
            if s.leq(&x, &y) {
                c.leg(
                    s.is_simple(),
                    format!("x ≤ y; {} is simple, so β = 0 forces y = ∞", s.entry()),
                )?;
                c.leg(y != top, "y ≠ ∞")?;
            } else {
                c.leg(true, "x ≰ y")?;
            }
            let r = beta_bounded(s, &x, &y, VERIFY_BOUND);
            c.note(format!("bounded search at K = {VERIFY_BOUND}: upper {}", r.upper));
        }
        CertKind::StableFiniteness => {
            let a = elem(s, cert, "a")?;
            let b = elem(s, cert, "b")?;
            c.leg(s.way_below(&a, &top), format!("a = {} ≪ ∞", f(&a)))?;
            c.leg(b != zero, format!("b = {} ≠ 0", f(&b)))?;
            c.leg(s.leq(&s.add(&a, &b), &a), "a + b ≤ a, so a is not finite")?;
        }
        CertKind::PureInfiniteness => {
            let a = elem(s, cert, "a")?;
            c.leg(a != zero && a != top, format!("a = {} ∉ {{0, ∞}}", f(&a)))?;
        }
        CertKind::Algebraicity => {
            let xp = elem(s, cert, "x_prime")?;
            let x = elem(s, cert, "x")?;
            c.leg(s.way_below(&xp, &x), format!("x' = {} ≪ x = {}", f(&xp), f(&x)))?;
            let Some(compacts) = s.compact_elements() else {
                return Err(c.reject(format!("{}: compact elements are not enumerable", s.entry())));
            };
            c.leg(
                compacts.iter().all(|k| is_compact(s, k)),
                format!("{} listed compact elements are compact", compacts.len()),
            )?;
            let hit = compacts.iter().find(|k| s.leq(&xp, k) && s.leq(k, &x));
            c.leg_or(hit.is_none(), "no compact c with x' ≤ c ≤ x", |_| {
                format!("compact c = {} lies between x' and x", f(hit.expect("hit")))
            })?;
        }
        CertKind::Simplicity => {
            let x = elem(s, cert, "x")?;
            let yp = elem(s, cert, "y_prime")?;
            let y = elem(s, cert, "y")?;
            c.leg(x != zero, format!("x = {} ≠ 0", f(&x)))?;
            c.leg(s.way_below(&yp, &y), format!("y' = {} ≪ y = {}", f(&yp), f(&y)))?;
            let Some(all) = s.carrier() else {
                return Err(c.reject(format!(
                    "{}: y' ∝ x is only refutable on finite carriers",
                    s.entry()
                )));
            };
            let bound = all.len() as u64 + 1;
            c.leg(
                proportional(s, &yp, &x, bound).is_none(),
                format!("y' ≰ n·x for n ≤ {bound}, where n·x has stabilised"),
            )?;
        }
    }
    Ok(c.lines)
}

impl CertificateFile {
    fn kind_name(&self) -> String {
        serde_json::to_value(self.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }
}

/// Partial sums up to `n` reaching `target`.
pub(crate) fn first_partial_sum_above<S: Semigroup>(
    s: &S,
    spec: &SeriesSpec<S::Elem>,
    target: &S::Elem,
    n_max: u64,
) -> Option<u64> {
    let mut acc = s.zero();
    for n in 1..=n_max {
        acc = s.add(&acc, &series_term(s, spec, n).ok()?);
        if s.leq(target, &acc) {
            return Some(n);
        }
    }
    None
}
