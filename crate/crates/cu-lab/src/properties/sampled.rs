//! Seeded searches on infinite carriers. A counterexample becomes a
//! certificate and is verified before it is reported; otherwise the
//! outcome records how many sampled instances were settled.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::certificate::{first_partial_sum_above, s_below_every_term, CertKind, CertificateFile};
use super::{refuted, Bounds, Outcome, Property};
use crate::comparison::beta_exact;
use crate::ext_rat::ExtRat;
use crate::semigroup::{
    has_properly_infinite_multiple, is_compact, is_properly_infinite, proportional, series_sum, series_term,
    tail_scaled_is_top, Profile, Semigroup,
};
use crate::series::SeriesSpec;

/// Depth range for canonical approximants `x' = rapid_term(x, r)`.
const RAPID_DEPTH: u32 = 8;

#[derive(Default)]
struct Tally {
    instances: u64,
    inconclusive: u64,
}

impl Tally {
    fn settled(&mut self) {
        self.instances += 1;
    }

    fn open(&mut self) {
        self.inconclusive += 1;
    }

    fn outcome(self) -> Outcome {
        if self.instances == 0 && self.inconclusive > 0 {
            return Outcome::CapabilityLimited {
                reason: format!("all {} sampled instances hit a search bound", self.inconclusive),
            };
        }
        Outcome::ConsistentUpTo {
            instances: self.instances,
            inconclusive: self.inconclusive,
        }
    }
}

/// Landmarks first, then samples cycling through the profiles.
struct Pool<'a, S: Semigroup> {
    s: &'a S,
    landmarks: Vec<S::Elem>,
}

impl<'a, S: Semigroup> Pool<'a, S> {
    fn new(s: &'a S) -> Self {
        Pool {
            s,
            landmarks: s.landmarks(),
        }
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> S::Elem {
        let profile = Profile::ALL[rng.gen_range(0..3)];
        self.s.sample(rng, profile)
    }

    fn single_count(&self, samples: u64) -> u64 {
        self.landmarks.len() as u64 + samples
    }

    fn single(&self, i: u64, rng: &mut ChaCha8Rng) -> S::Elem {
        match self.landmarks.get(i as usize) {
            Some(e) => e.clone(),
            None => self.random(rng),
        }
    }

    fn pair_count(&self, samples: u64) -> u64 {
        (self.landmarks.len() * self.landmarks.len()) as u64 + samples
    }

    fn pair(&self, i: u64, rng: &mut ChaCha8Rng) -> (S::Elem, S::Elem) {
        let l = self.landmarks.len() as u64;
        if i < l * l {
            (
                self.landmarks[(i / l) as usize].clone(),
                self.landmarks[(i % l) as usize].clone(),
            )
        } else {
            (self.random(rng), self.random(rng))
        }
    }

    /// `x' = rapid_term(x, r)` when it is way below `x`, else zero.
    fn approximant(&self, x: &S::Elem, rng: &mut ChaCha8Rng) -> S::Elem {
        let xp = self.s.rapid_term(x, rng.gen_range(0..RAPID_DEPTH));
        if self.s.way_below(&xp, x) {
            xp
        } else {
            self.s.zero()
        }
    }

    /// One series of each supported shape; sometimes a tail of it.
    fn series_menu(&self, rng: &mut ChaCha8Rng) -> Vec<SeriesSpec<S::Elem>> {
        let s = self.s;
        let mut menu = vec![SeriesSpec::Constant {
            term: self.random(rng),
        }];
        if s.scalar_term(&ExtRat::one()).is_some() {
            let first = ExtRat::frac(rng.gen_range(1..=4), 4);
            menu.push(SeriesSpec::geometric(first, ExtRat::frac(1, 2)));
        }
        if s.indicator(1).is_some() {
            menu.push(SeriesSpec::IndicatorStream);
        }
        if rng.gen_range(0..4) == 0 {
            let pick = rng.gen_range(0..menu.len());
            let start = rng.gen_range(2..=4);
            menu.push(SeriesSpec::tail(start, menu[pick].clone()));
        }
        menu
    }
}

pub fn search<S: Semigroup>(s: &S, property: Property, bounds: &Bounds, rng: &mut ChaCha8Rng) -> Outcome {
    let pool = Pool::new(s);
    let n = bounds.samples;
    let id = s.id().to_string();
    let zero = s.zero();
    let top = s.top();
    let mut t = Tally::default();
    match property {
        Property::Omega => {
            for i in 0..pool.single_count(n) {
                let x = pool.single(i, rng);
                let xp = pool.approximant(&x, rng);
                for spec in pool.series_menu(rng) {
                    match s_below_every_term(s, &x, &spec) {
                        Some(false) => t.settled(),
                        None => t.open(),
                        Some(true) => {
                            let Ok(sum) = series_sum(s, &spec) else {
                                t.open();
                                continue;
                            };
                            if !s.leq(&xp, &sum) {
                                return refuted(
                                    CertificateFile::new(&id, CertKind::Omega)
                                        .with_elem(s, "x_prime", &xp)
                                        .with_elem(s, "x", &x)
                                        .with_series(s, &spec),
                                );
                            }
                            match first_partial_sum_above(s, &spec, &xp, bounds.n_probe) {
                                Some(_) => t.settled(),
                                None => t.open(),
                            }
                        }
                    }
                }
            }
        }
        Property::Cfp | Property::Stcfp => {
            for _ in 0..pool.single_count(n) {
                let m = rng.gen_range(1..=4);
                for spec in pool.series_menu(rng) {
                    let small = (1..=16).all(|k| {
                        series_term(s, &spec, k)
                            .map(|y| s.way_below(&y, &top))
                            .unwrap_or(false)
                    });
                    if !small {
                        t.settled();
                        continue;
                    }
                    match tail_scaled_is_top(s, &spec, m) {
                        Err(_) => t.open(),
                        Ok(false) => t.settled(),
                        Ok(true) => match series_sum(s, &spec) {
                            Err(_) => t.open(),
                            Ok(sum) if sum != top => {
                                return refuted(
                                    CertificateFile::new(&id, CertKind::Cfp)
                                        .with_series(s, &spec)
                                        .with_param("m", m),
                                );
                            }
                            Ok(_) => t.settled(),
                        },
                    }
                }
            }
        }
        Property::Beta => {
            for i in 0..pool.pair_count(n) {
                let (x, y) = pool.pair(i, rng);
                if x == zero {
                    t.settled();
                    continue;
                }
                match beta_exact(s, &x, &y) {
                    Err(_) => t.open(),
                    Ok(b) => {
                        let violates = !s.leq(&x, &y) || (s.is_simple() && y != top);
                        if b.is_zero() && violates {
                            return refuted(
                                CertificateFile::new(&id, CertKind::Beta)
                                    .with_elem(s, "x", &x)
                                    .with_elem(s, "y", &y),
                            );
                        }
                        t.settled();
                    }
                }
            }
        }
        Property::Qq => {
            for i in 0..pool.single_count(n) {
                let x = pool.single(i, rng);
                if let Some(k) = has_properly_infinite_multiple(s, &x, bounds.nmax) {
                    if !is_properly_infinite(s, &x) {
                        return refuted(
                            CertificateFile::new(&id, CertKind::Qq)
                                .with_elem(s, "x", &x)
                                .with_param("n", k),
                        );
                    }
                }
                t.settled();
            }
        }
        Property::Cancellation => {
            for i in 0..pool.pair_count(n) {
                let (x, y) = pool.pair(i, rng);
                if s.way_below(&x, &top) && y != zero && y != top && s.add(&x, &y) == top {
                    return refuted(
                        CertificateFile::new(&id, CertKind::Cancellation)
                            .with_elem(s, "x", &x)
                            .with_elem(s, "y", &y),
                    );
                }
                t.settled();
            }
        }
        Property::O5 => {
            for i in 0..pool.single_count(n) {
                let x = pool.single(i, rng);
                let y = if i % 3 == 0 {
                    x.clone()
                } else {
                    s.add(&x, &pool.random(rng))
                };
                let xp = pool.approximant(&x, rng);
                let cands = s.o5_candidates(&xp, &x, &y);
                let ok = cands
                    .elems
                    .iter()
                    .any(|z| s.leq(&s.add(&xp, z), &y) && s.leq(&y, &s.add(&x, z)));
                if ok {
                    t.settled();
                } else if cands.complete {
                    return refuted(
                        CertificateFile::new(&id, CertKind::O5)
                            .with_elem(s, "x_prime", &xp)
                            .with_elem(s, "x", &x)
                            .with_elem(s, "y", &y),
                    );
                } else {
                    t.open();
                }
            }
        }
        Property::O6 => {
            for i in 0..pool.single_count(n) {
                let y1 = pool.single(i, rng);
                let y2 = pool.random(rng);
                let sum = s.add(&y1, &y2);
                let x = match i % 3 {
                    0 => sum.clone(),
                    1 => s.rapid_term(&sum, rng.gen_range(0..RAPID_DEPTH)),
                    _ => {
                        let z = pool.random(rng);
                        if s.leq(&z, &sum) {
                            z
                        } else {
                            sum.clone()
                        }
                    }
                };
                let xp = pool.approximant(&x, rng);
                match (s.meet(&x, &y1), s.meet(&x, &y2)) {
                    (Some(m1), Some(m2)) => {
                        if s.leq(&xp, &s.add(&m1, &m2)) {
                            t.settled();
                        } else {
                            return refuted(
                                CertificateFile::new(&id, CertKind::O6)
                                    .with_elem(s, "x_prime", &xp)
                                    .with_elem(s, "x", &x)
                                    .with_elem(s, "y1", &y1)
                                    .with_elem(s, "y2", &y2),
                            );
                        }
                    }
                    _ => t.open(),
                }
            }
        }
        Property::WeakHalving | Property::GlimmHalving => {
            let weak = property == Property::WeakHalving;
            for i in 0..pool.single_count(n) {
                let x = pool.single(i, rng);
                if x == zero {
                    continue;
                }
                let cands = s.halving_candidates(&x);
                let ok = if weak {
                    let halves: Vec<&S::Elem> = cands
                        .elems
                        .iter()
                        .filter(|y| proportional(s, &x, y, bounds.n_probe).is_some())
                        .collect();
                    halves
                        .iter()
                        .any(|a| halves.iter().any(|b| s.leq(&s.add(a, b), &x)))
                } else {
                    cands.elems.iter().any(|z| *z != zero && s.leq(&s.add(z, z), &x))
                };
                if ok {
                    t.settled();
                } else if cands.complete {
                    let kind = if weak {
                        CertKind::WeakHalving
                    } else {
                        CertKind::GlimmHalving
                    };
                    return refuted(CertificateFile::new(&id, kind).with_elem(s, "x", &x));
                } else {
                    t.open();
                }
            }
        }
        Property::StablyFinite => {
            for i in 0..pool.single_count(n) {
                let a = pool.single(i, rng);
                if !s.way_below(&a, &top) {
                    continue;
                }
                let hit = s
                    .absorbed_candidates(&a)
                    .elems
                    .into_iter()
                    .find(|b| *b != zero && s.leq(&s.add(&a, b), &a));
                if let Some(b) = hit {
                    return refuted(
                        CertificateFile::new(&id, CertKind::StableFiniteness)
                            .with_elem(s, "a", &a)
                            .with_elem(s, "b", &b),
                    );
                }
                t.settled();
            }
        }
        Property::PurelyInfinite => {
            for i in 0..pool.single_count(n) {
                let a = pool.single(i, rng);
                if a != zero && a != top {
                    return refuted(
                        CertificateFile::new(&id, CertKind::PureInfiniteness).with_elem(s, "a", &a),
                    );
                }
                t.settled();
            }
        }
        Property::Simple => {
            for i in 0..pool.pair_count(n) {
                let (x, y) = pool.pair(i, rng);
                if x == zero {
                    continue;
                }
                let yp = pool.approximant(&y, rng);
                match proportional(s, &yp, &x, bounds.n_probe) {
                    Some(_) => t.settled(),
                    None => t.open(),
                }
            }
        }
        Property::Algebraic => {
            let compacts = s.compact_elements();
            for i in 0..pool.single_count(n) {
                let x = pool.single(i, rng);
                let approximants: Vec<S::Elem> = (0..RAPID_DEPTH)
                    .map(|r| s.rapid_term(&x, r))
                    .filter(|xp| s.way_below(xp, &x))
                    .collect();
                if approximants.iter().all(|xp| is_compact(s, xp)) {
                    t.settled();
                    continue;
                }
                let Some(list) = &compacts else {
                    t.open();
                    continue;
                };
                let gap = approximants
                    .iter()
                    .find(|xp| !list.iter().any(|c| s.leq(xp, c) && s.leq(c, &x)));
                match gap {
                    Some(xp) => {
                        return refuted(
                            CertificateFile::new(&id, CertKind::Algebraicity)
                                .with_elem(s, "x_prime", xp)
                                .with_elem(s, "x", &x),
                        );
                    }
                    None => t.settled(),
                }
            }
        }
    }
    t.outcome()
}
