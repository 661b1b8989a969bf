mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use focused_aco::construction::{apply_relocation, construct, relocation_delta, ChoiceTable, SamplerParams};
use focused_aco::local_search::two_opt_restricted;
use focused_aco::tsplib::{parse_tsplib, write_tsplib};
use focused_aco::{HeuristicMatrix, Instance, NeighborModel, PheromoneState, Tour};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cost_invariant_under_rotation_and_reversal(n in 3usize..40, seed in any::<u64>(), shift in 0usize..40) {
        let inst = Instance::generate_random(n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = common::random_order(n, &mut rng);
        let base = inst.tour_cost(&order).unwrap();
        let mut rotated = order.clone();
        rotated.rotate_left(shift % n);
        prop_assert!((inst.tour_cost(&rotated).unwrap() - base).abs() < 1e-12);
        rotated.reverse();
        prop_assert!((inst.tour_cost(&rotated).unwrap() - base).abs() < 1e-12);
    }

    #[test]
    fn rounded_costs_are_integral(n in 3usize..30, seed in any::<u64>()) {
        let raw = Instance::generate_random(n, seed).unwrap();
        let scaled: Vec<[f64; 2]> = raw.coords().iter().map(|[x, y]| [x * 1000.0, y * 1000.0]).collect();
        let inst = Instance::new("r", scaled, focused_aco::EdgeMetric::EuclidRounded).unwrap();
        let order: Vec<usize> = (0..n).collect();
        let c = inst.tour_cost(&order).unwrap();
        prop_assert_eq!(c, c.round());
    }

    #[test]
    fn text_formats_round_trip(n in 3usize..50, seed in any::<u64>()) {
        let inst = Instance::generate_random(n, seed).unwrap();
        let dumped = Instance::parse_dump(&inst.to_dump_string(), inst.name()).unwrap();
        prop_assert_eq!(&dumped, &inst);
        let tsplib = parse_tsplib(&write_tsplib(&inst)).unwrap();
        prop_assert_eq!(tsplib.coords(), inst.coords());
    }

    #[test]
    fn candidate_lists_hold_the_nearest(n in 4usize..60, k in 1usize..12, seed in any::<u64>()) {
        let inst = Instance::generate_random(n, seed).unwrap();
        let nm = NeighborModel::build(&inst, k, 3).unwrap();
        for i in 0..n {
            let cand = nm.cand(i);
            prop_assert!(!cand.contains(&i));
            let radius = cand.iter().map(|&j| inst.distance(i, j)).fold(0.0, f64::max);
            for j in (0..n).filter(|&j| j != i && !cand.contains(&j)) {
                prop_assert!(inst.distance(i, j) >= radius);
            }
            let chain: Vec<f64> = cand.iter().chain(nm.backup(i)).map(|&j| inst.distance(i, j)).collect();
            prop_assert!(chain.windows(2).all(|w| w[0] <= w[1]));
            for (r, &j) in cand.iter().enumerate() {
                prop_assert_eq!(nm.cand_pos(i, j), Some(r));
            }
        }
    }

    #[test]
    fn relocation_delta_matches_recomputation(n in 3usize..80, seed in any::<u64>()) {
        let inst = Instance::generate_random(n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED);
        let mut tour = Tour::new(&inst, common::random_order(n, &mut rng)).unwrap();
        for _ in 0..20 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v || tour.succ(u) == v {
                prop_assert!(relocation_delta(&inst, &tour, u, v).is_err());
                continue;
            }
            let before = common::cycle_cost(&inst, tour.order());
            let mv = apply_relocation(&inst, &mut tour, u, v).unwrap();
            let after = common::cycle_cost(&inst, tour.order());
            prop_assert!((mv.delta - (after - before)).abs() < 1e-9);
            prop_assert_eq!(tour.succ(u), v);
            prop_assert!(tour.validate(&inst).is_ok());
        }
    }

    #[test]
    fn construction_then_two_opt(n in 5usize..120, seed in any::<u64>(), mne in 1usize..12) {
        let inst = Instance::generate_random(n, seed).unwrap();
        let nm = NeighborModel::build(&inst, 10, 16).unwrap();
        let h = HeuristicMatrix::inverse_distance(&inst, &nm).unwrap();
        let reference = Tour::nearest_neighbor(&inst, 0).unwrap();
        let tau = PheromoneState::for_global_best(&nm, reference.cost(), 0.1, 0.1).unwrap();
        let table = ChoiceTable::new(&tau, &h, 1.0, 2.0);
        let params = SamplerParams { mne, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut tour, new_edges) = construct(&inst, &reference, &table, &nm, &params, &mut rng).unwrap();
        prop_assert!(tour.validate(&inst).is_ok());
        let mut got: Vec<_> = new_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        got.sort();
        prop_assert_eq!(got, common::symmetric_new_edges(tour.order(), reference.order()));

        let before = tour.cost();
        two_opt_restricted(&inst, &mut tour, &new_edges, &nm).unwrap();
        prop_assert!(tour.cost() <= before + 1e-12);
        prop_assert!(tour.validate(&inst).is_ok());
    }

    #[test]
    fn trails_stay_bounded(seed in any::<u64>()) {
        let inst = Instance::generate_random(40, seed).unwrap();
        let nm = NeighborModel::build(&inst, 8, 0).unwrap();
        let base = Tour::nearest_neighbor(&inst, 0).unwrap();
        let mut state = PheromoneState::for_global_best(&nm, base.cost(), 0.2, 0.05).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            if rng.gen_bool(0.5) {
                let t = Tour::new(&inst, common::random_order(40, &mut rng)).unwrap();
                state.update_best(&nm, &t, rng.gen_range(0.0..2.0) / t.cost()).unwrap();
            } else {
                state.refresh_bounds(base.cost() * rng.gen_range(0.3..2.0)).unwrap();
            }
            prop_assert!(state.values().iter().all(|&t| t >= state.tau_min() && t <= state.tau_max()));
        }
    }
}
