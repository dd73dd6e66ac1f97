//! Registered functional families: additive, order-preserving maps to
//! `[0, ∞]` that preserve suprema of increasing sequences.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::comparison::beta_exact;
use crate::error::LabError;
use crate::ext_rat::ExtRat;
use crate::semigroup::{properly_infinite_multiple_holds, Profile, Semigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Zero,
    /// `∞` on every nonzero element.
    LambdaInf,
    /// `c` times the entry's functional coordinate.
    Scale(ExtRat),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalDesc {
    pub entry: &'static str,
    pub family: Family,
}

impl fmt::Display for FunctionalDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Zero => write!(f, "zero"),
            Family::LambdaInf => write!(f, "lambda_inf"),
            Family::Scale(c) => write!(f, "scale({c})"),
        }
    }
}

/// Probe values for the scale parameter.
pub fn scale_grid() -> Vec<ExtRat> {
    vec![
        ExtRat::zero(),
        ExtRat::frac(1, 4),
        ExtRat::frac(1, 2),
        ExtRat::one(),
        ExtRat::int(2),
        ExtRat::Inf,
    ]
}

pub fn functionals<S: Semigroup>(s: &S) -> Vec<FunctionalDesc> {
    let mut out = vec![
        FunctionalDesc {
            entry: s.entry(),
            family: Family::Zero,
        },
        FunctionalDesc {
            entry: s.entry(),
            family: Family::LambdaInf,
        },
    ];
    if s.functional_coordinate(&s.zero()).is_some() {
        out.extend(scale_grid().into_iter().map(|c| FunctionalDesc {
            entry: s.entry(),
            family: Family::Scale(c),
        }));
    }
    out
}

pub fn eval_functional<S: Semigroup>(s: &S, f: &FunctionalDesc, x: &S::Elem) -> Result<ExtRat, LabError> {
    if f.entry != s.entry() {
        return Err(LabError::UnknownEntry(format!(
            "functional registered for {} evaluated on {}",
            f.entry,
            s.entry()
        )));
    }
    Ok(match &f.family {
        Family::Zero => ExtRat::zero(),
        Family::LambdaInf if *x == s.zero() => ExtRat::zero(),
        Family::LambdaInf => ExtRat::Inf,
        Family::Scale(c) => {
            let v = s.functional_coordinate(x).ok_or_else(|| {
                LabError::Capability(crate::error::CapabilityError::new(s.id(), "scaled functional"))
            })?;
            c.mul(&v)
        }
    })
}

fn is_zero_functional(f: &FunctionalDesc) -> bool {
    match &f.family {
        Family::Zero => true,
        Family::Scale(c) => c.is_zero(),
        Family::LambdaInf => false,
    }
}

/// Every nonzero registered functional is `∞` at `y`.
///
/// Over the scale family this is the grid check: a finite nonzero scale is
/// infinite exactly when the coordinate is, which the grid already covers.
pub fn all_functionals_infinite<S: Semigroup>(s: &S, y: &S::Elem) -> bool {
    functionals(s)
        .iter()
        .filter(|f| !is_zero_functional(f))
        .all(|f| eval_functional(s, f, y).map(|v| v.is_inf()).unwrap_or(false))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl AxiomReport {
    fn fail(&mut self, msg: String) {
        self.violations.push(msg);
    }
}

const CHAIN_DEPTH: u32 = 48;

/// `λ(x) = sup_n λ(x_n)` along the canonical chain: values are increasing
/// and bounded by `λ(x)`; a finite `λ(x)` is approached to within
/// `λ(x)·2^{-depth/2}`, an infinite one is reached or at least doubled
/// over the last three quarters of the chain.
fn sup_preserved<S: Semigroup>(s: &S, f: &FunctionalDesc, x: &S::Elem) -> Result<bool, LabError> {
    let target = eval_functional(s, f, x)?;
    let mut prev = ExtRat::zero();
    let mut quarter = ExtRat::zero();
    for n in 0..=CHAIN_DEPTH {
        let v = eval_functional(s, f, &s.rapid_term(x, n))?;
        if v < prev || v > target {
            return Ok(false);
        }
        if n == CHAIN_DEPTH / 4 {
            quarter = v.clone();
        }
        prev = v;
    }
    Ok(match &target {
        ExtRat::Inf => prev.is_inf() || (!quarter.is_zero() && prev >= quarter.mul_int(2)),
        ExtRat::Fin(_) => {
            let slack = target.div(&ExtRat::int(1u64 << (CHAIN_DEPTH / 2)));
            target.checked_sub(&prev).map(|gap| gap <= slack).unwrap_or(false)
        }
    })
}

/// Additivity, monotonicity, supremum preservation and faithfulness of
/// every registered functional on sampled elements.
pub fn axiom_suite<S: Semigroup, R: Rng + ?Sized>(s: &S, samples: u64, rng: &mut R) -> AxiomReport {
    let fs = functionals(s);
    let mut report = AxiomReport::default();
    let draw = |rng: &mut R, i: u64| s.sample(rng, Profile::ALL[(i % 3) as usize]);
    for i in 0..samples {
        let x = draw(rng, i);
        let y = draw(rng, i + 1);
        let z = draw(rng, i + 2);
        let bigger = s.add(&x, &z);
        for f in &fs {
            let ev = |e: &S::Elem| eval_functional(s, f, e);
            let (fx, fy, fxy) = match (ev(&x), ev(&y), ev(&s.add(&x, &y))) {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                _ => {
                    report.fail(format!("{f}: evaluation unsupported"));
                    continue;
                }
            };
            if fxy != &fx + &fy {
                report.fail(format!(
                    "{f}: not additive at ({}, {})",
                    s.format(&x),
                    s.format(&y)
                ));
            }
            for (lo, hi) in [(&x, &bigger), (&x, &y), (&y, &x)] {
                if s.leq(lo, hi) && ev(lo).ok() > ev(hi).ok() {
                    report.fail(format!(
                        "{f}: not monotone at ({}, {})",
                        s.format(lo),
                        s.format(hi)
                    ));
                }
            }
            if !sup_preserved(s, f, &x).unwrap_or(false) {
                report.fail(format!("{f}: supremum not preserved at {}", s.format(&x)));
            }
            if s.is_simple() && !is_zero_functional(f) && x != s.zero() && fx.is_zero() {
                report.fail(format!("{f}: vanishes at nonzero {}", s.format(&x)));
            }
        }
        report.checked += 1;
    }
    report
}

/// For sampled nonzero `y`: some nonzero `x` has `β(x, y) = 0` iff every
/// nonzero functional is infinite at `y`. On entries whose only functionals
/// are `0` and `λ_∞`, also iff some multiple of `y` is properly infinite.
pub fn beta_functional_equivalence<S: Semigroup, R: Rng + ?Sized>(
    s: &S,
    samples: u64,
    rng: &mut R,
) -> AxiomReport {
    let mut report = AxiomReport::default();
    let mut probes = s.landmarks();
    for i in 0..16 {
        probes.push(s.sample(rng, Profile::ALL[i % 3]));
    }
    probes.retain(|p| *p != s.zero());
    let only_trivial = s.functional_coordinate(&s.zero()).is_none();
    let mut drawn = 0u64;
    let mut attempts = 0u64;
    while drawn < samples && attempts < samples * 50 {
        attempts += 1;
        let y = s.sample(rng, Profile::ALL[(attempts % 3) as usize]);
        if y == s.zero() {
            continue;
        }
        drawn += 1;
        let vanishing = probes
            .iter()
            .any(|x| beta_exact(s, x, &y).map(|b| b.is_zero()).unwrap_or(false));
        let infinite = all_functionals_infinite(s, &y);
        if vanishing != infinite {
            report.fail(format!(
                "y = {}: beta-vanishing {vanishing}, functionals infinite {infinite}",
                s.format(&y)
            ));
        }
        if only_trivial {
            let pim = properly_infinite_multiple_holds(s, &y, 64) == Some(true);
            if pim != infinite {
                report.fail(format!(
                    "y = {}: properly infinite multiple {pim}, functionals infinite {infinite}",
                    s.format(&y)
                ));
            }
        }
        report.checked += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Interval01Inf, ProductFiniteByRay, UhfRay};

    #[test]
    fn families_per_entry() {
        assert_eq!(functionals(&Interval01Inf).len(), 2);
        let p = functionals(&ProductFiniteByRay);
        assert!(p.iter().any(|f| f.family == Family::Scale(ExtRat::one())));
    }

    #[test]
    fn evaluation() {
        let u = UhfRay;
        let one = FunctionalDesc {
            entry: "UhfRay",
            family: Family::Scale(ExtRat::one()),
        };
        assert_eq!(
            eval_functional(&u, &one, &u.parse("c:3/4").unwrap()).unwrap(),
            ExtRat::frac(3, 4)
        );
        assert_eq!(
            eval_functional(&u, &one, &u.parse("s:1").unwrap()).unwrap(),
            ExtRat::one()
        );
        let inf = FunctionalDesc {
            entry: "UhfRay",
            family: Family::LambdaInf,
        };
        assert_eq!(
            eval_functional(&u, &inf, &u.parse("c:1/8").unwrap()).unwrap(),
            ExtRat::Inf
        );
        assert!(eval_functional(&Interval01Inf, &one, &ExtRat::one()).is_err());
    }

    #[test]
    fn infinite_at_y() {
        let p = ProductFiniteByRay;
        assert!(all_functionals_infinite(&p, &p.parse("(3/4, inf)").unwrap()));
        let u = UhfRay;
        assert!(!all_functionals_infinite(&u, &u.parse("s:2").unwrap()));
        assert!(all_functionals_infinite(&Interval01Inf, &ExtRat::frac(1, 2)));
    }
}
