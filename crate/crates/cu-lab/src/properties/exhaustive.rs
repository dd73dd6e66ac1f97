//! Decisions by full enumeration of a finite carrier.
//!
//! On a finite carrier every increasing sequence of partial sums is
//! eventually constant, so series collapse to the stabilised multiples
//! `ω(y) = sup_n n·y` of the terms that recur.

use super::certificate::{CertKind, CertificateFile};
use super::{refuted, Bounds, Outcome, Property};
use crate::comparison::beta_exact;
use crate::semigroup::{
    has_properly_infinite_multiple, is_compact, is_properly_infinite, multiple, proportional, s_below_holds,
    Semigroup,
};
use crate::series::SeriesSpec;

/// `sup_n n·y`, reached once the multiples stop growing.
fn stabilised<S: Semigroup>(s: &S, y: &S::Elem) -> S::Elem {
    let mut m = y.clone();
    loop {
        let next = s.add(&m, y);
        if next == m {
            return m;
        }
        m = next;
    }
}

struct Enumeration<S: Semigroup> {
    all: Vec<S::Elem>,
    cases: u64,
}

impl<S: Semigroup> Enumeration<S> {
    fn proved(&self) -> Outcome {
        Outcome::ProvedExhaustively { cases: self.cases }
    }
}

pub fn decide<S: Semigroup>(s: &S, property: Property, bounds: &Bounds) -> Outcome {
    let Some(all) = s.carrier() else {
        return Outcome::CapabilityLimited {
            reason: format!("{} has no finite carrier", s.entry()),
        };
    };
    let mut en = Enumeration::<S> { all, cases: 0 };
    let id = s.id().to_string();
    let zero = s.zero();
    let top = s.top();
    let all = en.all.clone();
    let nbound = all.len() as u64 + 1;
    match property {
        Property::O5 => {
            for xp in &all {
                for x in all.iter().filter(|x| s.way_below(xp, x)) {
                    for y in all.iter().filter(|y| s.leq(x, y)) {
                        en.cases += 1;
                        let ok = all
                            .iter()
                            .any(|z| s.leq(&s.add(xp, z), y) && s.leq(y, &s.add(x, z)));
                        if !ok {
                            return refuted(
                                CertificateFile::new(&id, CertKind::O5)
                                    .with_elem(s, "x_prime", xp)
                                    .with_elem(s, "x", x)
                                    .with_elem(s, "y", y),
                            );
                        }
                    }
                }
            }
            en.proved()
        }
        Property::O6 => {
            for xp in &all {
                for x in all.iter().filter(|x| s.way_below(xp, x)) {
                    for y1 in &all {
                        for y2 in all.iter().filter(|y2| s.leq(x, &s.add(y1, y2))) {
                            en.cases += 1;
                            let below = |b: &S::Elem| -> Vec<&S::Elem> {
                                all.iter().filter(|e| s.leq(e, x) && s.leq(e, b)).collect()
                            };
                            let (l1, l2) = (below(y1), below(y2));
                            let ok = l1.iter().any(|a| l2.iter().any(|b| s.leq(xp, &s.add(a, b))));
                            if !ok {
                                return refuted(
                                    CertificateFile::new(&id, CertKind::O6)
                                        .with_elem(s, "x_prime", xp)
                                        .with_elem(s, "x", x)
                                        .with_elem(s, "y1", y1)
                                        .with_elem(s, "y2", y2),
                                );
                            }
                        }
                    }
                }
            }
            en.proved()
        }
        Property::Omega => {
            // A sequence from Y_x = {y : x <_s y} sums to some s with
            // s + y = s for each recurring y, hence s ≥ ω(y); and the
            // constant sequence y sums to exactly ω(y). So ω-comparison
            // fails iff x' ≰ ω(y) for some x' ≪ x <_s y.
            for xp in &all {
                for x in all.iter().filter(|x| s.way_below(xp, x)) {
                    for y in all
                        .iter()
                        .filter(|y| s_below_holds(s, x, y, nbound) == Some(true))
                    {
                        en.cases += 1;
                        if !s.leq(xp, &stabilised(s, y)) {
                            return refuted(
                                CertificateFile::new(&id, CertKind::Omega)
                                    .with_elem(s, "x_prime", xp)
                                    .with_elem(s, "x", x)
                                    .with_series(s, &SeriesSpec::Constant { term: y.clone() }),
                            );
                        }
                    }
                }
            }
            en.proved()
        }
        Property::Cfp => {
            // Tail sums of a sequence in S_{≪∞} equal Σ_{y ∈ R} ω(y) over the
            // set R of recurring terms, for every start index.
            let small: Vec<S::Elem> = all
                .iter()
                .filter(|y| **y != zero && s.way_below(y, &top))
                .cloned()
                .collect();
            for mask in 1u64..(1 << small.len()) {
                en.cases += 1;
                let rec: Vec<&S::Elem> = (0..small.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| &small[i])
                    .collect();
                let t = rec
                    .iter()
                    .fold(zero.clone(), |acc, y| s.add(&acc, &stabilised(s, y)));
                if t == top {
                    continue;
                }
                if let Some(m) = (1..=nbound).find(|m| multiple(s, *m, &t) == top) {
                    let term = rec.iter().fold(zero.clone(), |acc, y| s.add(&acc, y));
                    if s.way_below(&term, &top) {
                        return refuted(
                            CertificateFile::new(&id, CertKind::Cfp)
                                .with_series(s, &SeriesSpec::Constant { term })
                                .with_param("m", m),
                        );
                    }
                    return Outcome::CapabilityLimited {
                        reason: "CFP fails on a cycle whose sum is not way below the top".into(),
                    };
                }
            }
            en.proved()
        }
        Property::Stcfp => {
            for xp in &all {
                for x in all.iter().filter(|x| s.way_below(xp, x)) {
                    for m in 1..=nbound {
                        let allowed: Vec<&S::Elem> =
                            all.iter().filter(|y| s.leq(x, &multiple(s, m, y))).collect();
                        for mask in 1u64..(1 << allowed.len()) {
                            en.cases += 1;
                            let t = (0..allowed.len())
                                .filter(|i| mask >> i & 1 == 1)
                                .fold(zero.clone(), |acc, i| s.add(&acc, &stabilised(s, allowed[i])));
                            if !s.leq(xp, &t) {
                                return Outcome::CapabilityLimited {
                                    reason: format!(
                                        "StCFP fails at x' = {}, x = {}, m = {m}; no certificate form",
                                        s.format(xp),
                                        s.format(x)
                                    ),
                                };
                            }
                        }
                    }
                }
            }
            en.proved()
        }
        Property::Beta => {
            // Simple-entry form first (β(x,y) = 0 forces y = ∞), then the
            // definition (β(x,y) = 0 forces x ≤ y).
            let mut definitional = None;
            for x in all.iter().filter(|x| **x != zero) {
                for y in &all {
                    en.cases += 1;
                    let Ok(b) = beta_exact(s, x, y) else {
                        return Outcome::CapabilityLimited {
                            reason: "no exact β on this carrier".into(),
                        };
                    };
                    if !b.is_zero() {
                        continue;
                    }
                    if s.is_simple() && *y != top {
                        return refuted(
                            CertificateFile::new(&id, CertKind::Beta)
                                .with_elem(s, "x", x)
                                .with_elem(s, "y", y),
                        );
                    }
                    if !s.leq(x, y) && definitional.is_none() {
                        definitional = Some((x.clone(), y.clone()));
                    }
                }
            }
            match definitional {
                Some((x, y)) => refuted(
                    CertificateFile::new(&id, CertKind::Beta)
                        .with_elem(s, "x", &x)
                        .with_elem(s, "y", &y),
                ),
                None => en.proved(),
            }
        }
        Property::Qq => {
            for x in &all {
                en.cases += 1;
                if let Some(n) = has_properly_infinite_multiple(s, x, bounds.nmax.max(nbound)) {
                    if !is_properly_infinite(s, x) {
                        return refuted(
                            CertificateFile::new(&id, CertKind::Qq)
                                .with_elem(s, "x", x)
                                .with_param("n", n),
                        );
                    }
                }
            }
            en.proved()
        }
        Property::Cancellation => {
            for x in all.iter().filter(|x| s.way_below(x, &top)) {
                for y in all.iter().filter(|y| **y != zero) {
                    en.cases += 1;
                    if s.add(x, y) == top && *y != top {
                        return refuted(
                            CertificateFile::new(&id, CertKind::Cancellation)
                                .with_elem(s, "x", x)
                                .with_elem(s, "y", y),
                        );
                    }
                }
            }
            en.proved()
        }
        Property::WeakHalving => {
            for x in all.iter().filter(|x| **x != zero) {
                en.cases += 1;
                let ok = all.iter().any(|y1| {
                    all.iter().any(|y2| {
                        s.leq(&s.add(y1, y2), x)
                            && proportional(s, x, y1, nbound).is_some()
                            && proportional(s, x, y2, nbound).is_some()
                    })
                });
                if !ok {
                    return refuted(CertificateFile::new(&id, CertKind::WeakHalving).with_elem(s, "x", x));
                }
            }
            en.proved()
        }
        Property::GlimmHalving => {
            for x in all.iter().filter(|x| **x != zero) {
                en.cases += 1;
                if !all.iter().any(|z| *z != zero && s.leq(&s.add(z, z), x)) {
                    return refuted(CertificateFile::new(&id, CertKind::GlimmHalving).with_elem(s, "x", x));
                }
            }
            en.proved()
        }
        Property::StablyFinite => {
            for a in all.iter().filter(|a| s.way_below(a, &top)) {
                for b in all.iter().filter(|b| **b != zero) {
                    en.cases += 1;
                    if s.leq(&s.add(a, b), a) {
                        return refuted(
                            CertificateFile::new(&id, CertKind::StableFiniteness)
                                .with_elem(s, "a", a)
                                .with_elem(s, "b", b),
                        );
                    }
                }
            }
            en.proved()
        }
        Property::PurelyInfinite => {
            for a in &all {
                en.cases += 1;
                if *a != zero && *a != top {
                    return refuted(
                        CertificateFile::new(&id, CertKind::PureInfiniteness).with_elem(s, "a", a),
                    );
                }
            }
            en.proved()
        }
        Property::Simple => {
            for x in all.iter().filter(|x| **x != zero) {
                for y in &all {
                    for yp in all.iter().filter(|yp| s.way_below(yp, y)) {
                        en.cases += 1;
                        if proportional(s, yp, x, nbound).is_none() {
                            return refuted(
                                CertificateFile::new(&id, CertKind::Simplicity)
                                    .with_elem(s, "x", x)
                                    .with_elem(s, "y_prime", yp)
                                    .with_elem(s, "y", y),
                            );
                        }
                    }
                }
            }
            en.proved()
        }
        Property::Algebraic => {
            // Finite carrier: every element is the supremum of compacts
            // below it iff every element is compact.
            for x in &all {
                en.cases += 1;
                if !is_compact(s, x) {
                    let xp = all
                        .iter()
                        .filter(|c| s.way_below(c, x) && !is_compact(s, c))
                        .last()
                        .cloned()
                        .unwrap_or_else(|| x.clone());
                    return refuted(
                        CertificateFile::new(&id, CertKind::Algebraicity)
                            .with_elem(s, "x_prime", &xp)
                            .with_elem(s, "x", x),
                    );
                }
            }
            en.proved()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Sn;
    use crate::properties::Class;

    #[test]
    fn s1_table() {
        let s1 = Sn::new(1);
        let b = Bounds::default();
        let class = |p| decide(&s1, p, &b).class();
        assert_eq!(class(Property::Omega), Class::Holds);
        assert_eq!(class(Property::Cfp), Class::Holds);
        assert_eq!(class(Property::Beta), Class::Fails);
        assert_eq!(class(Property::Qq), Class::Fails);
        assert_eq!(class(Property::WeakHalving), Class::Fails);
        assert_eq!(class(Property::Cancellation), Class::Fails);
    }

    #[test]
    fn beta_refutation_on_s1_uses_units() {
        let s1 = Sn::new(1);
        match decide(&s1, Property::Beta, &Bounds::default()) {
            Outcome::RefutedByCertificate { certificate } => {
                assert_eq!(certificate.elements["x"], "1");
                assert_eq!(certificate.elements["y"], "1");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stabilised_multiples() {
        let s3 = Sn::new(3);
        assert_eq!(stabilised(&s3, &crate::ext_rat::ExtRat::one()), s3.top());
        assert_eq!(stabilised(&s3, &s3.zero()), s3.zero());
    }
}
