use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cu_lab::catalog::{all_instances, instance, INSTANCE_IDS};
use cu_lab::comparison::{beta, beta_bounded};
use cu_lab::ext_rat::ExtRat;
use cu_lab::semigroup::{multiple, Profile, Semigroup};
use cu_lab::with_instance;

fn ext_rat() -> impl Strategy<Value = ExtRat> {
    prop_oneof![
        1 => Just(ExtRat::Inf),
        6 => (0u64..200, 1u64..50).prop_map(|(n, d)| ExtRat::frac(n, d)),
    ]
}

fn profile() -> impl Strategy<Value = Profile> {
    prop_oneof![Just(Profile::Small), Just(Profile::Mixed), Just(Profile::NearTop)]
}

fn instance_id() -> impl Strategy<Value = &'static str> {
    prop::sample::select(INSTANCE_IDS.to_vec())
}

proptest! {
    #[test]
    fn ext_rat_addition_is_a_commutative_monoid(a in ext_rat(), b in ext_rat(), c in ext_rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &ExtRat::zero(), a.clone());
        prop_assert!(a <= &a + &b);
    }

    #[test]
    fn ext_rat_text_round_trip(a in ext_rat()) {
        prop_assert_eq!(a.to_string().parse::<ExtRat>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExtRat>(&json).unwrap(), a);
    }

    #[test]
    fn ext_rat_subtraction_inverts_addition(a in ext_rat(), b in ext_rat()) {
        if let Some(d) = a.checked_sub(&b) {
            prop_assert_eq!(&d + &b, a);
        } else {
            prop_assert!(a < b || a.is_inf());
        }
    }

    #[test]
    fn ordered_monoid_laws(id in instance_id(), seed: u64, p in profile()) {
        let inst = instance(id).unwrap();
        with_instance!(&inst, s => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = s.sample(&mut rng, p);
            let y = s.sample(&mut rng, Profile::Mixed);
            let z = s.sample(&mut rng, Profile::NearTop);
            prop_assert_eq!(s.add(&x, &y), s.add(&y, &x));
            prop_assert_eq!(s.add(&s.add(&x, &y), &z), s.add(&x, &s.add(&y, &z)));
            prop_assert_eq!(s.add(&x, &s.zero()), x.clone());
            prop_assert!(s.leq(&s.zero(), &x));
            prop_assert!(s.leq(&x, &s.top()));
            prop_assert!(s.leq(&x, &x));
            prop_assert!(s.leq(&x, &s.add(&x, &y)));
            if s.leq(&x, &y) {
                prop_assert!(s.leq(&s.add(&x, &z), &s.add(&y, &z)));
                if s.leq(&y, &x) {
                    prop_assert_eq!(&x, &y);
                }
            }
        });
    }

    #[test]
    fn way_below_and_approximants(id in instance_id(), seed: u64, p in profile(), n in 0u32..12) {
        let inst = instance(id).unwrap();
        with_instance!(&inst, s => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = s.sample(&mut rng, p);
            let y = s.sample(&mut rng, Profile::Mixed);
            let a = s.rapid_term(&x, n);
            let b = s.rapid_term(&x, n + 1);
            prop_assert!(s.leq(&a, &b));
            prop_assert!(s.leq(&b, &x));
            prop_assert!(s.way_below(&a, &b) || s.carrier().is_some());
            if s.way_below(&x, &y) {
                prop_assert!(s.leq(&x, &y));
            }
            prop_assert!(s.way_below(&s.zero(), &x));
        });
    }

    #[test]
    fn grammar_round_trip(id in instance_id(), seed: u64, p in profile()) {
        let inst = instance(id).unwrap();
        with_instance!(&inst, s => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = s.sample(&mut rng, p);
            let text = s.format(&x);
            prop_assert_eq!(s.parse(&text).unwrap(), x);
        });
    }

    #[test]
    fn bounded_beta_is_sound_and_monotone(id in instance_id(), seed: u64, k in 1u64..40) {
        let inst = instance(id).unwrap();
        with_instance!(&inst, s => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = s.sample(&mut rng, Profile::Small);
            let y = s.sample(&mut rng, Profile::Mixed);
            let small = beta_bounded(s, &x, &y, k);
            let large = beta_bounded(s, &x, &y, 2 * k);
            prop_assert!(large.upper <= small.upper);
            if let Some((kw, lw)) = small.witness {
                prop_assert!(s.leq(&multiple(s, kw, &x), &multiple(s, lw, &y)));
                prop_assert_eq!(small.upper.clone(), ExtRat::frac(lw, kw));
            }
            let full = beta(s, &x, &y, k);
            if let Some(exact) = full.exact {
                prop_assert!(exact <= full.upper);
            }
        });
    }
}

#[test]
fn every_instance_samples_each_profile() {
    for inst in all_instances() {
        with_instance!(&inst, s => {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for p in Profile::ALL {
                let x = s.sample(&mut rng, p);
                assert!(s.leq(&x, &s.top()), "{}", s.id());
            }
        });
    }
}

#[test]
fn manifest_functional_families_match_code() {
    use cu_lab::catalog::entry_manifest;
    use cu_lab::functionals::{functionals, Family};
    for inst in all_instances() {
        let listed = &entry_manifest(inst.entry()).unwrap().functionals.families;
        with_instance!(&inst, s => {
            let fs = functionals(s);
            let scaled = fs.iter().any(|f| matches!(f.family, Family::Scale(_)));
            assert_eq!(scaled, listed.iter().any(|f| f.starts_with("scale")), "{}", s.id());
            assert!(listed.contains(&"zero".to_string()) && listed.contains(&"lambda_inf".to_string()));
        });
    }
}
