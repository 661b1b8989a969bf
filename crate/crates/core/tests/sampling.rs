mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use focused_aco::construction::{construct, select_next, ChoiceTable, SamplerParams};
use focused_aco::instance::EdgeMetric;
use focused_aco::{Error, HeuristicMatrix, Instance, NeighborModel, PheromoneState, Tour};

fn colony(inst: &Instance, k: usize, bkp: usize) -> (NeighborModel, HeuristicMatrix, PheromoneState) {
    let nm = NeighborModel::build(inst, k, bkp).unwrap();
    let h = HeuristicMatrix::inverse_distance(inst, &nm).unwrap();
    let tour = Tour::nearest_neighbor(inst, 0).unwrap();
    let mut tau = PheromoneState::for_global_best(&nm, tour.cost(), 0.1, 0.1).unwrap();
    // make the trails uneven
    for _ in 0..15 {
        tau.update_best(&nm, &tour, 1.0 / tour.cost()).unwrap();
    }
    (nm, h, tau)
}

#[test]
fn single_open_candidate_is_forced() {
    let inst = Instance::generate_random(12, 3).unwrap();
    let (nm, h, tau) = colony(&inst, 4, 2);
    let table = ChoiceTable::new(&tau, &h, 1.0, 1.0);
    let mut visited = vec![false; 12];
    let cand = nm.cand(5).to_vec();
    for &c in &cand[..3] {
        visited[c] = true;
    }
    visited[5] = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        assert_eq!(select_next(&inst, 5, &visited, &table, &nm, &mut rng).unwrap(), cand[3]);
    }
}

#[test]
fn zero_exponents_are_uniform() {
    let inst = Instance::generate_random(30, 8).unwrap();
    let (nm, h, tau) = colony(&inst, 6, 0);
    let table = ChoiceTable::new(&tau, &h, 0.0, 0.0);
    let mut visited = vec![false; 30];
    visited[0] = true;
    visited[nm.cand(0)[2]] = true;
    let open: Vec<usize> = nm.cand(0).iter().copied().filter(|&j| !visited[j]).collect();
    let m = open.len();
    let draws = 100_000 * m;
    let mut counts = vec![0usize; 30];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..draws {
        counts[select_next(&inst, 0, &visited, &table, &nm, &mut rng).unwrap()] += 1;
    }
    let p = 1.0 / m as f64;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for &j in &open {
        let dev = (counts[j] as f64 - draws as f64 * p).abs();
        assert!(dev <= 3.0 * sigma, "candidate {j}: {} draws, {dev:.0} > 3 sigma", counts[j]);
    }
}

#[test]
fn roulette_matches_exact_probabilities() {
    let inst = Instance::generate_random(6, 21).unwrap();
    let (nm, h, tau) = colony(&inst, 5, 0);
    let (alpha, beta) = (1.5, 2.0);
    let table = ChoiceTable::new(&tau, &h, alpha, beta);
    let i = 2;
    let mut visited = vec![false; 6];
    visited[i] = true;
    visited[4] = true;

    // exact normalisation straight from the trail and prior lookups
    let mut expected = [0.0; 6];
    for j in (0..6).filter(|&j| !visited[j]) {
        let t = tau.get(&nm, i, j).unwrap();
        let hv = h.row(i)[nm.cand_pos(i, j).unwrap()];
        expected[j] = t.powf(alpha) * hv.powf(beta);
    }
    let total: f64 = expected.iter().sum();
    expected.iter_mut().for_each(|p| *p /= total);

    let draws = 1_000_000;
    let mut counts = [0usize; 6];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..draws {
        counts[select_next(&inst, i, &visited, &table, &nm, &mut rng).unwrap()] += 1;
    }
    for j in 0..6 {
        let freq = counts[j] as f64 / draws as f64;
        if expected[j] == 0.0 {
            assert_eq!(counts[j], 0);
        } else {
            assert!(
                (freq - expected[j]).abs() <= 0.01 * expected[j],
                "node {j}: freq {freq} vs {}",
                expected[j]
            );
        }
    }
}

#[test]
fn backup_then_nearest_fallback() {
    let coords: Vec<[f64; 2]> = (0..8).map(|i| [i as f64, 0.0]).collect();
    let inst = Instance::new("line", coords, EdgeMetric::EuclidReal).unwrap();
    let (nm, h, tau) = colony(&inst, 2, 2);
    let table = ChoiceTable::new(&tau, &h, 1.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    // node 0: cand [1, 2], backup [3, 4]
    let mut visited = vec![false; 8];
    visited[0] = true;
    visited[1] = true;
    visited[2] = true;
    assert_eq!(select_next(&inst, 0, &visited, &table, &nm, &mut rng).unwrap(), 3);
    visited[3] = true;
    visited[4] = true;
    // cand and backup exhausted: nearest unvisited overall
    assert_eq!(select_next(&inst, 0, &visited, &table, &nm, &mut rng).unwrap(), 5);
    let all = vec![true; 8];
    assert!(matches!(
        select_next(&inst, 0, &all, &table, &nm, &mut rng),
        Err(Error::NoFeasibleNode(0))
    ));
}

#[test]
fn zero_cutoff_copies_reference() {
    let inst = Instance::generate_random(50, 2).unwrap();
    let (nm, h, tau) = colony(&inst, 10, 5);
    let table = ChoiceTable::new(&tau, &h, 1.0, 1.0);
    let reference = Tour::nearest_neighbor(&inst, 7).unwrap();
    let params = SamplerParams { mne: 0, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (tour, new_edges) = construct(&inst, &reference, &table, &nm, &params, &mut rng).unwrap();
    assert_eq!(tour, reference);
    assert!(new_edges.is_empty());
}

#[test]
fn focused_construction_on_200_nodes() {
    let inst = Instance::generate_random(200, 5).unwrap();
    let (nm, h, tau) = colony(&inst, 20, 64);
    let table = ChoiceTable::new(&tau, &h, 1.0, 1.0);
    let reference = Tour::nearest_neighbor(&inst, 0).unwrap();
    let params = SamplerParams::default();
    let mut sizes = Vec::new();
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (tour, new_edges) = construct(&inst, &reference, &table, &nm, &params, &mut rng).unwrap();
        tour.validate(&inst).unwrap();
        assert!((tour.cost() - common::cycle_cost(&inst, tour.order())).abs() < 1e-9);
        let mut got: Vec<_> = new_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        got.sort();
        assert_eq!(got, common::symmetric_new_edges(tour.order(), reference.order()));
        // one relocation adds at most three edges past the cutoff
        assert!(new_edges.len() <= params.mne + 2, "{} new edges", new_edges.len());
        sizes.push(new_edges.len());
    }
    assert!(sizes.iter().any(|&s| s >= params.mne));
}

#[test]
fn construction_is_deterministic() {
    let inst = Instance::generate_random(120, 6).unwrap();
    let (nm, h, tau) = colony(&inst, 20, 64);
    let table = ChoiceTable::new(&tau, &h, 1.0, 1.0);
    let reference = Tour::nearest_neighbor(&inst, 0).unwrap();
    let params = SamplerParams::default();
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        construct(&inst, &reference, &table, &nm, &params, &mut rng).unwrap()
    };
    assert_eq!(run(), run());
}
