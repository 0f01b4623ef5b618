use proptest::prelude::*;
use rand::Rng;
use twoq::circuit::{parse_circuit, Circuit, Gate};
use twoq::cli::{format_matrix, parse_matrix};
use twoq::haar::{haar_su2, haar_unitary4, random_circuit, seeded_rng};
use twoq::invariants::{cnot_cost, invariant_data, same_double_coset, same_left_coset};
use twoq::numerics::{kron, Mat4};
use twoq::rewrite::{effectively_separated, reduce};
use twoq::synthesis::{match_local_factors, synthesize, GateLibrary};

fn library() -> impl Strategy<Value = GateLibrary> {
    prop::sample::select(GateLibrary::ALL.to_vec())
}

fn local(seed: u64) -> Mat4 {
    let mut rng = seeded_rng(seed);
    kron(&haar_su2(&mut rng), &haar_su2(&mut rng))
}

fn elementary_gate() -> impl Strategy<Value = Gate> {
    let angle = -6.3f64..6.3;
    prop_oneof![
        (0u8..2, angle.clone()).prop_map(|(q, a)| Gate::rx(q, a)),
        (0u8..2, angle.clone()).prop_map(|(q, a)| Gate::ry(q, a)),
        (0u8..2, angle).prop_map(|(q, a)| Gate::rz(q, a)),
        (0u8..2).prop_map(|q| Gate::cnot(q, 1 - q)),
        Just(Gate::Swap),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn synthesis_verifies(seed in any::<u64>(), lib in library()) {
        let u = haar_unitary4(&mut seeded_rng(seed));
        let r = synthesize(&u, lib).unwrap();
        prop_assert_eq!(r.cnot_count, 3);
        prop_assert!(r.residual <= 1e-8);
        prop_assert!(lib.admits(&r.circuit));
        let back = parse_circuit(&r.circuit.to_text()).unwrap();
        prop_assert!(back.matrix().phase_distance(&u) <= 1e-10);
    }

    #[test]
    fn locals_preserve_classes(seed in any::<u64>()) {
        let u = haar_unitary4(&mut seeded_rng(seed));
        let (l, r) = (local(seed ^ 1), local(seed ^ 2));
        let v = l * u * r;
        prop_assert!(same_double_coset(&u, &v).unwrap());
        prop_assert!(same_left_coset(&(u * r), &u).unwrap());
        prop_assert_eq!(cnot_cost(&u).unwrap(), cnot_cost(&v).unwrap());
        let f = match_local_factors(&v, &u).unwrap();
        prop_assert!(f.residual(&v, &u) <= 1e-8);
    }

    #[test]
    fn gamma_spectrum_is_unimodular(seed in any::<u64>()) {
        let d = invariant_data(&haar_unitary4(&mut seeded_rng(seed))).unwrap();
        for z in d.spectrum {
            prop_assert!((z.norm() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn circuit_text_round_trip(gates in prop::collection::vec(elementary_gate(), 0..25)) {
        let c = Circuit::new(gates).unwrap();
        prop_assert_eq!(parse_circuit(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn reduce_is_sound_and_idempotent(gates in prop::collection::vec(elementary_gate(), 0..25)) {
        let c = Circuit::new(gates).unwrap();
        let (r, trace) = reduce(&c);
        prop_assert!(r.len() <= c.len());
        prop_assert!(r.matrix().phase_distance(&c.matrix()) <= 1e-10);
        prop_assert_eq!(trace.replay(&c).unwrap(), r.clone());
        let (again, t2) = reduce(&r);
        prop_assert_eq!(again, r);
        prop_assert!(t2.steps.is_empty());
    }

    #[test]
    fn reduce_random_mixed_circuits(seed in any::<u64>()) {
        let c = random_circuit(&mut seeded_rng(seed), 30);
        let (r, _) = reduce(&c);
        prop_assert!(r.matrix().phase_distance(&c.matrix()) <= 1e-10);
    }

    #[test]
    fn separation_monotone_in_depth(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let gates: Vec<Gate> = (0..rng.random_range(2..7))
            .map(|_| match rng.random_range(0..3) {
                0 => Gate::rx(rng.random_range(0..2), 0.4),
                1 => Gate::rz(rng.random_range(0..2), 0.7),
                _ => {
                    let q = rng.random_range(0..2);
                    Gate::cnot(q, 1 - q)
                }
            })
            .collect();
        let c = Circuit::new(gates).unwrap();
        let mut was_false = false;
        for depth in 1..=6 {
            let s = effectively_separated(&c, depth).unwrap();
            prop_assert!(!(was_false && s));
            was_false |= !s;
        }
    }

    #[test]
    fn matrix_file_round_trip(seed in any::<u64>()) {
        let u = haar_unitary4(&mut seeded_rng(seed));
        prop_assert_eq!(parse_matrix(&format_matrix(&u), 1e-8).unwrap(), u);
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,200}") {
        let _ = parse_circuit(&s);
        let _ = parse_matrix(&s, 1e-8);
    }
}
