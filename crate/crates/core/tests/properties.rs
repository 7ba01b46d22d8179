use proptest::prelude::*;
use supremal::conditions::{check_cartesian_submaximality, check_separate_submaximality};
use supremal::functional::evaluate_h;
use supremal::lab::{
    hunt_counterexample, oracle_lsc, SequenceRecipe, WitnessFile, WitnessGeometry,
};
use supremal::supremand::{alphabet_pairs, is_diagonal, is_symmetric};
use supremal::{ExtReal, GridSupremand, Interval, StepFunction, SumPolicy, TripleGrid};

const ALPHABET: [f64; 4] = [1.0, 2.0, 3.0, 4.0];

fn entry() -> impl Strategy<Value = ExtReal> {
    prop_oneof![
        8 => (0..5i32).prop_map(|k| ExtReal::Finite(k as f64)),
        1 => Just(ExtReal::Top),
    ]
}

fn table(n: usize) -> impl Strategy<Value = GridSupremand> {
    proptest::collection::vec(proptest::collection::vec(entry(), n), n)
        .prop_map(move |rows| GridSupremand::new(ALPHABET[..n].to_vec(), rows).unwrap())
}

fn jumps() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(prop::sample::select(ALPHABET.to_vec()), 0..6)
}

fn step(j: &[f64]) -> StepFunction {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let breaks: Vec<f64> = (1..=j.len())
        .map(|i| i as f64 / (j.len() + 1) as f64)
        .collect();
    StepFunction::from_jumps(iv, 0.0, &breaks, j).unwrap()
}

fn triple_grid(n: usize) -> TripleGrid {
    TripleGrid::new(ALPHABET[..n].to_vec(), SumPolicy::SkipUndefined).unwrap()
}

proptest! {
    #[test]
    fn hull_is_idempotent_dominating_symmetric_diagonal(h in table(4)) {
        let hat = h.hull();
        prop_assert_eq!(hat.hull(), hat.clone());
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!(hat.entry(i, j) >= h.entry(i, j));
            }
        }
        let probe = alphabet_pairs(&ALPHABET);
        prop_assert!(is_symmetric(&hat, &probe, 0.0).unwrap().passed());
        prop_assert!(is_diagonal(&hat, &probe, 0.0).unwrap().passed());
    }

    #[test]
    fn hull_preserves_energy(h in table(4), j in jumps()) {
        let u = step(&j);
        prop_assert_eq!(evaluate_h(&u, &h).unwrap().value, evaluate_h(&u, &h.hull()).unwrap().value);
    }

    #[test]
    fn separate_implies_cartesian(h in table(4)) {
        let g = triple_grid(4);
        let hat = h.hull();
        if check_separate_submaximality(&hat, &g, 0.0).unwrap().passed() {
            prop_assert!(check_cartesian_submaximality(&hat, &g, 0.0).unwrap().passed());
        }
    }

    #[test]
    fn energy_ignores_jump_order(h in table(4), j in jumps(), seed in any::<u64>()) {
        let mut k = j.clone();
        let len = k.len().max(1);
        k.rotate_left(seed as usize % len);
        k.reverse();
        let a = evaluate_h(&step(&j), &h.hull()).unwrap().value;
        let b = evaluate_h(&step(&k), &h.hull()).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inserting_a_jump_never_lowers_energy(h in table(4), j in jumps(), extra in prop::sample::select(ALPHABET.to_vec()), at in 0usize..6) {
        let mut k = j.clone();
        k.insert(at.min(j.len()), extra);
        let a = evaluate_h(&step(&j), &h).unwrap().value;
        let b = evaluate_h(&step(&k), &h).unwrap().value;
        prop_assert!(b >= a);
    }

    #[test]
    fn increasing_compression_keeps_verdicts(h in table(4)) {
        let g = triple_grid(4);
        let fh = h.compose_increasing(|v| v.atan() + v * v * v);
        for (a, b) in [
            (check_cartesian_submaximality(&h, &g, 0.0).unwrap(), check_cartesian_submaximality(&fh, &g, 0.0).unwrap()),
            (check_separate_submaximality(&h, &g, 0.0).unwrap(), check_separate_submaximality(&fh, &g, 0.0).unwrap()),
        ] {
            prop_assert_eq!(a.passed(), b.passed());
            prop_assert_eq!(a.witness().map(|w| w.arguments.clone()), b.witness().map(|w| w.arguments.clone()));
        }
    }

    #[test]
    fn hunted_witnesses_are_sound(h in table(3)) {
        let hat = h.hull();
        let found = hunt_counterexample(&hat, &ALPHABET[..3], 0.0, WitnessGeometry::default()).unwrap();
        let predicate = check_cartesian_submaximality(&hat, &triple_grid(3), 0.0).unwrap().passed();
        prop_assert_eq!(found.is_some(), !predicate);
        prop_assert_eq!(oracle_lsc(&hat, 3, 0.0).unwrap().passed(), predicate);
        if let Some(w) = found {
            prop_assert!(w.limit_energy > w.sequence_energy_liminf);
            let mut last = f64::INFINITY;
            for n in [2u64, 20, 200] {
                let un = w.recipe.element(n).unwrap();
                prop_assert_eq!(evaluate_h(&un, &hat).unwrap().value, w.sequence_energy_liminf);
                let d = un.l1_distance(&w.limit).unwrap();
                prop_assert!(d < last);
                last = d;
            }
        }
    }

    #[test]
    fn grid_tables_round_trip(h in table(4)) {
        let back: GridSupremand = h.to_string().parse().unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn witness_files_round_trip(y in -5.0f64..5.0, w1 in 0.1f64..5.0, w2 in 0.1f64..5.0) {
        let file = WitnessFile {
            supremand: Some("sin-ratio-sum".into()),
            recipe: SequenceRecipe::split_jump(WitnessGeometry::default(), y, w1, w2),
        };
        let back: WitnessFile = file.to_string().parse().unwrap();
        prop_assert_eq!(back, file);
    }
}
