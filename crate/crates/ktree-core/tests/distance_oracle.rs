//! Distance oracle: the incremental distance rule must agree with plain
//! BFS on every enumerated small history and on random trees, and the
//! structural invariants must hold under random growth.

use proptest::prelude::*;

use ktree_core::ktree::{enumerate_histories, from_tree_repr, grow_random, to_tree_repr};
use ktree_core::profile::{bfs_distances, connectivity_profile, root_distances};
use ktree_core::rng::RngFactory;

#[test]
fn incremental_equals_bfs_on_every_small_history() {
    for k in 1..=3usize {
        for n in 0..=5usize {
            for tree in enumerate_histories(k, n).unwrap() {
                let table = root_distances(&tree);
                for root in 0..k {
                    let bfs = bfs_distances(&tree, root as u32 + 1).unwrap();
                    for index in 0..tree.n() {
                        assert_eq!(table.distance(index, root), bfs[k + index]);
                    }
                }
            }
        }
    }
}

#[test]
fn incremental_equals_bfs_on_random_trees() {
    let factory = RngFactory::new(0xD15);
    for k in 1..=4usize {
        for trial in 0..50u64 {
            let mut rng = factory.stream(k as u64 * 101 + trial);
            let tree = grow_random(k, 500, &mut rng).unwrap();
            let table = root_distances(&tree);
            for root in 0..k {
                let bfs = bfs_distances(&tree, root as u32 + 1).unwrap();
                for index in 0..tree.n() {
                    assert_eq!(
                        table.distance(index, root),
                        bfs[k + index],
                        "k={k} trial={trial}"
                    );
                }
            }
        }
    }
}

#[test]
fn pair_distance_grows_like_log_n() {
    // Sample means at n = 10^3 and 10^5 scale like log n (within 25%).
    let factory = RngFactory::new(0xBEEF);
    let mean_at = |n: usize, stream: u64| -> f64 {
        let mut rng = factory.stream(stream);
        let mut total = 0.0;
        let trees = 4;
        for _ in 0..trees {
            let tree = grow_random(2, n, &mut rng).unwrap();
            total += ktree_core::profile::sample_pair_distance(&tree, 64, &mut rng)
                .unwrap()
                .mean;
        }
        total / trees as f64
    };
    let small = mean_at(1_000, 1);
    let large = mean_at(100_000, 2);
    assert!(small >= 1.0 && large >= 1.0);
    let ratio = large / small;
    let log_ratio = (100_000f64).ln() / (1_000f64).ln();
    assert!(
        (ratio - log_ratio).abs() <= 0.25 * log_ratio,
        "mean ratio {ratio} vs log ratio {log_ratio}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_repr_roundtrip_identity(k in 1usize..=4, n in 0usize..=100, seed in any::<u64>()) {
        let mut rng = RngFactory::new(seed).stream(0);
        let tree = grow_random(k, n, &mut rng).unwrap();
        prop_assert_eq!(from_tree_repr(&to_tree_repr(&tree)).unwrap(), tree);
    }

    #[test]
    fn profile_mass_equals_n(k in 1usize..=4, n in 0usize..=150, seed in any::<u64>()) {
        let mut rng = RngFactory::new(seed).stream(1);
        let tree = grow_random(k, n, &mut rng).unwrap();
        let p = connectivity_profile(&tree);
        for j in 1..=k {
            let mass: u64 = (1..=p.depth()).map(|d| p.count(d, j)).sum();
            prop_assert_eq!(mass, n as u64);
        }
    }

    #[test]
    fn root_distance_spread_at_most_one(k in 2usize..=4, n in 1usize..=150, seed in any::<u64>()) {
        let mut rng = RngFactory::new(seed).stream(2);
        let tree = grow_random(k, n, &mut rng).unwrap();
        let table = root_distances(&tree);
        for index in 0..n {
            let row: Vec<u32> = (0..k).map(|r| table.distance(index, r)).collect();
            let lo = *row.iter().min().unwrap();
            let hi = *row.iter().max().unwrap();
            prop_assert!(hi - lo <= 1);
        }
    }

    #[test]
    fn registry_and_edge_counts(k in 1usize..=4, n in 0usize..=100, seed in any::<u64>()) {
        let mut rng = RngFactory::new(seed).stream(3);
        let tree = grow_random(k, n, &mut rng).unwrap();
        prop_assert_eq!(tree.clique_count(), n * k + 1);
        prop_assert_eq!(tree.edges().len(), n * k + k * (k - 1) / 2);
    }
}
