use mixedwalk::generate;
use mixedwalk::graph::{build_cycle, MixedGraph};
use mixedwalk::linalg::{charpoly, distance_to_identity, matmul};
use mixedwalk::periodicity::{period_of, PeriodOptions};
use mixedwalk::spectra::{h_eta, Angle, RationalAngle};
use mixedwalk::switching::{apply_switching, canonicalize_cycle, classify_cycle, named_move, Move, SwitchingFunction};
use mixedwalk::walk::time_evolution;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cycle(seed: u64, n: usize) -> MixedGraph {
    generate::random_cycle(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn connected(seed: u64, n: usize) -> MixedGraph {
    generate::random_connected(n, 0.35, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn angle() -> impl Strategy<Value = Angle> {
    prop_oneof![
        (0i64..12, 1i64..7).prop_map(|(p, q)| Angle::rational(p, q).unwrap()),
        (0.0f64..std::f64::consts::TAU).prop_map(|x| Angle::real(x).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switching_preserves_charpoly(seed in any::<u64>(), n in 2usize..9, eta in angle(),
                                    exps in prop::collection::vec(-3i64..4, 9)) {
        let g = connected(seed, n);
        let alpha = SwitchingFunction::from_exponents(exps[..n].to_vec(), eta);
        let switched = apply_switching(&g, &alpha).unwrap();
        prop_assert!(switched.hermitian_defect() < 1e-10);
        let a = charpoly(&switched).unwrap();
        let b = charpoly(&h_eta(&g, eta)).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-8));
    }

    #[test]
    fn moves_preserve_type(seed in any::<u64>(), n in 3usize..13, picks in prop::collection::vec(0usize..36, 1..6)) {
        let mut g = cycle(seed, n);
        let j = classify_cycle(&g).unwrap();
        for pick in picks {
            let mv = [Move::Sw2, Move::Sw3, Move::Sw4][pick % 3];
            if let Ok(h) = named_move(&g, mv, pick % n) {
                g = h;
                prop_assert_eq!(classify_cycle(&g).unwrap(), j);
            }
        }
    }

    #[test]
    fn canonical_form_matches(seed in any::<u64>(), n in 3usize..13, eta in angle()) {
        let g = cycle(seed, n);
        let cls = canonicalize_cycle(&g, eta).unwrap();
        prop_assert_eq!(cls.type_j, classify_cycle(&g).unwrap());
        prop_assert!(cls.residual(&g).unwrap() < 1e-10);
        prop_assert!(cls.moves.len() <= n * n);
    }

    #[test]
    fn walk_operators_are_unitary_involutions(seed in any::<u64>(), n in 2usize..11, eta in angle()) {
        let g = connected(seed, n);
        let ops = time_evolution(&g, eta).unwrap();
        prop_assert!(distance_to_identity(&matmul(&ops.k, &ops.k.adjoint()).unwrap()) < 1e-12);
        prop_assert!(ops.c.hermitian_defect() < 1e-10);
        prop_assert!(distance_to_identity(&matmul(&ops.c, &ops.c).unwrap()) < 1e-10);
        prop_assert!(ops.s.unitarity_defect() < 1e-10);
        prop_assert!(distance_to_identity(&matmul(&ops.s, &ops.s).unwrap()) < 1e-10);
        prop_assert!(ops.u.unitarity_defect() < 1e-10);
        prop_assert!(ops.formula_residual < 1e-12);
    }

    #[test]
    fn period_invariant_under_switching(seed in any::<u64>(), n in 3usize..8, pq in 0usize..6) {
        let (p, q) = [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3), (3, 4)][pq];
        let eta = Angle::Rational(RationalAngle::new(p, q).unwrap());
        let g = cycle(seed, n);
        let canonical = build_cycle(n, classify_cycle(&g).unwrap()).unwrap();
        let a = period_of(&g, eta, PeriodOptions::default()).unwrap();
        let b = period_of(&canonical, eta, PeriodOptions::default()).unwrap();
        prop_assert_eq!(a.period, b.period);
        prop_assert_eq!(a.brute_force_period, b.brute_force_period);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..11) {
        let g = connected(seed, n);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(MixedGraph::from_json_str(&text).unwrap(), g);
    }

    #[test]
    fn angle_text_round_trip(p in -40i64..40, q in 1i64..30) {
        let a = Angle::rational(p, q).unwrap();
        prop_assert_eq!(Angle::parse(&a.to_string()).unwrap(), a);
        let r = a.as_rational().unwrap();
        prop_assert!(r.p() < 2 * r.q());
    }
}
