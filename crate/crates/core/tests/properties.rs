//! Property tests for invariants across modules.

use mosaic_core::designs::{verify_bibd, IncidenceStructure};
use mosaic_core::families::{Family, FamilySpec};
use mosaic_core::field::{make_field, FieldElement};
use mosaic_core::mosaics::{materialize, sample_inverse};
use mosaic_core::security::{
    chi2, d2, exact_wiretap_metrics, kl, prop41_check, tv, wiretap_joint, BoundParams, Channel, IDENTITY_TOL,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u32, u32); 9] = [(2, 1), (2, 3), (2, 5), (2, 8), (3, 1), (3, 3), (5, 2), (7, 2), (251, 1)];

fn field_case() -> impl Strategy<Value = ((u32, u32), u32, u32, u32)> {
    (0..FIELDS.len(), any::<u32>(), any::<u32>(), any::<u32>()).prop_map(|(i, a, b, c)| (FIELDS[i], a, b, c))
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::m1(2, 3)),
        Just(FamilySpec::m1(3, 2)),
        Just(FamilySpec::m2(2, 1)),
        Just(FamilySpec::m3(2, 1, 2)),
        Just(FamilySpec::m4(3, 3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms_hold((pn, a, b, c) in field_case()) {
        let f = make_field(pn.0, pn.1).unwrap();
        let q = f.order();
        let (a, b, c) = (FieldElement::from_index(a % q), FieldElement::from_index(b % q), FieldElement::from_index(c % q));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.pow(a, q as u64), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn char2_trace_is_additive_and_roots_solve(n in 1u32..=10, a in any::<u32>(), b in any::<u32>()) {
        let f = make_field(2, n).unwrap();
        let (a, b) = (FieldElement::from_index(a % f.order()), FieldElement::from_index(b % f.order()));
        prop_assert_eq!(f.trace(f.add(a, b)).unwrap(), f.trace(a).unwrap() ^ f.trace(b).unwrap());
        let roots = f.solve_artin_schreier(a).unwrap();
        prop_assert_eq!(roots.len(), if f.trace(a).unwrap() == 0 { 2 } else { 0 });
        for w in roots {
            prop_assert_eq!(f.add(f.square(w), w), a);
        }
        prop_assert_eq!(f.square(f.sqrt_char2(a).unwrap()), a);
    }

    #[test]
    fn relabeling_and_csv_preserve_designs(seed in any::<u64>()) {
        let fam = Family::build(&FamilySpec::m1(2, 3)).unwrap();
        let d = materialize(fam.form()).unwrap().member(0).clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pi: Vec<usize> = (0..d.v()).collect();
        let mut sigma: Vec<usize> = (0..d.b()).collect();
        pi.shuffle(&mut rng);
        sigma.shuffle(&mut rng);
        let e = d.relabel(&pi, &sigma);
        prop_assert_eq!(verify_bibd(&e, 1).unwrap(), verify_bibd(&d, 1).unwrap());
        prop_assert_eq!(IncidenceStructure::from_csv(&e.to_csv()).unwrap(), e.clone());
        prop_assert_eq!(e.dual().dual(), e);
    }

    #[test]
    fn randomized_inverse_lands_in_preimage(spec in family(), seed in any::<u64>()) {
        let fam = Family::build(&spec).unwrap();
        let f = fam.form();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in 0..f.blocks() {
            let alpha = s % f.colors();
            let x = sample_inverse(f, s, alpha, &mut rng).unwrap();
            prop_assert_eq!(f.color(x, s), alpha);
        }
    }

    #[test]
    fn divergence_orderings(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Channel::random(2, n, 0.2, &mut rng);
        let (p, q) = (w.row(0), w.row(1));
        // Σ|P − Q| ≤ sqrt(χ²) by Cauchy–Schwarz; D ≤ D₂ by monotonicity in the order
        prop_assert!(tv(p, q).unwrap() <= chi2(p, q).unwrap().sqrt() + 1e-12 || q.iter().zip(p).any(|(b, a)| *b == 0.0 && *a > 0.0));
        prop_assert!(kl(p, q).unwrap() <= d2(p, q).unwrap() + 1e-12);
        prop_assert!(kl(p, p).unwrap().abs() < 1e-12);
    }

    #[test]
    fn identity_on_random_channels(spec in family(), seed in any::<u64>(), nz in 2usize..6) {
        let fam = Family::build(&spec).unwrap();
        let f = fam.form();
        let params = BoundParams::from_certificate(&fam.certificate()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Channel::random(f.points(), nz, 0.3, &mut rng);
        for d in materialize(f).unwrap().members() {
            prop_assert!(prop41_check(d, &params, &w).unwrap().discrepancy < IDENTITY_TOL);
        }
    }

    #[test]
    fn wiretap_metrics_do_not_depend_on_member_weights(spec in family(), seed in any::<u64>()) {
        let fam = Family::build(&spec).unwrap();
        let f = fam.form();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Channel::random(f.points(), 3, 0.0, &mut rng);
        let base = exact_wiretap_metrics(&wiretap_joint(f, &w, &vec![1.0 / f.colors() as f64; f.colors()]).unwrap());
        for _ in 0..10 {
            let p_a = Channel::random(1, f.colors(), 0.3, &mut rng).row(0).to_vec();
            let j = wiretap_joint(f, &w, &p_a).unwrap();
            let m = exact_wiretap_metrics(&j);
            prop_assert!((m.max_exp_d2_cond - base.max_exp_d2_cond).abs() < 1e-12);
            prop_assert!((m.max_kl_cond - base.max_kl_cond).abs() < 1e-12);
            prop_assert!(m.chain_holds(1e-12));
        }
    }
}
