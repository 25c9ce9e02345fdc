//! The rank decider against its independent oracles: the pebble game through
//! the reference extendible graphs, extendibility, and the coloring bound.

use kuniv_core::coloring::coloring_number;
use kuniv_core::constructions;
use kuniv_core::extendibility::{is_k_extendible, reference_extendible};
use kuniv_core::game::preceq;
use kuniv_core::sparse::sample_gnp;
use kuniv_core::universality::{is_k_universal, rank_table};
use kuniv_core::{NatOmega, VertexSet};
use rand::{Rng, SeedableRng};

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn decider_matches_game_oracle_small() {
    let mut rng = rng(201);
    for trial in 0..25 {
        let n = rng.gen_range(2..=9);
        let g = sample_gnp(n, [0.2, 0.5, 0.8][trial % 3], rng.gen()).unwrap();
        for k in 2..=3usize {
            let decided = is_k_universal(&g, k).unwrap().universal;
            let oracle = preceq(&reference_extendible(k).unwrap(), &g, k).unwrap();
            assert_eq!(decided, oracle, "trial={trial} n={n} k={k}");
        }
    }
}

#[test]
fn extendible_implies_universal() {
    let mut rng = rng(202);
    let mut extendible_seen = 0usize;
    for _ in 0..60 {
        let n = rng.gen_range(3..=10);
        let g = sample_gnp(n, rng.gen_range(0.3..0.8), rng.gen()).unwrap();
        for k in 2..=3usize {
            if is_k_extendible(&g, k).unwrap().extendible {
                extendible_seen += 1;
                assert!(is_k_universal(&g, k).unwrap().universal);
            }
        }
    }
    // the reference graphs keep the implication non-vacuous regardless
    for k in 2..=3usize {
        let r = reference_extendible(k).unwrap();
        assert!(is_k_extendible(&r, k).unwrap().extendible);
        assert!(is_k_universal(&r, k).unwrap().universal);
    }
    let _ = extendible_seen;
}

#[test]
fn universality_is_monotone_under_extension() {
    let mut rng = rng(203);
    for _ in 0..30 {
        let n = rng.gen_range(3..=9);
        let g = sample_gnp(n, rng.gen_range(0.3..0.8), rng.gen()).unwrap();
        let s: VertexSet = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        let (h, _) = g.induced_subgraph(&s).unwrap();
        for k in 2..=3usize {
            if is_k_universal(&h, k).unwrap().universal {
                assert!(is_k_universal(&g, k).unwrap().universal);
            }
        }
    }
}

#[test]
fn low_coloring_number_blocks_universality() {
    // forests have coloring number at most 1 < 2^{k-2} for k = 4
    let mut rng = rng(204);
    for _ in 0..25 {
        let n = rng.gen_range(1..=10);
        let g = constructions::random_forest(n, 0.6, rng.gen()).unwrap();
        assert!(coloring_number(&g).0 <= 2);
        assert!(!is_k_universal(&g, 4).unwrap().universal);
    }
}

#[test]
fn paley_29_has_all_pairs_at_rank_omega() {
    let g = constructions::paley(29).unwrap();
    let table = rank_table(&g, 3).unwrap();
    let entries = table.entries();
    assert_eq!(entries.len(), 29 * 28 / 2);
    assert!(entries.iter().all(|(_, r)| *r == NatOmega::Omega));
}
