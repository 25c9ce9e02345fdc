//! Witness amalgamation over free joins, rigidity composition, and the
//! safe-implies-small-coloring-number bridge.

use kuniv_core::coloring::{coloring_number, extends_uniformly};
use kuniv_core::graph::{free_join, is_compatible, OverlapSpec};
use kuniv_core::rational::{admissible_alpha_between, ExactRational};
use kuniv_core::sparse::{is_rigid, is_safe, sample_gnp, sample_sparse, DEFAULT_ENUM_BUDGET};
use kuniv_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Builds a random pair (a, b) compatible over a shared set: the first
/// `c_size` vertices of each side are identified and forced to agree.
fn compatible_pair(
    rng: &mut rand_chacha::ChaCha8Rng,
    na: usize,
    nb: usize,
    c_size: usize,
) -> (Graph, Graph, OverlapSpec) {
    let mut a_edges = Vec::new();
    for u in 0..na {
        for v in u + 1..na {
            if rng.gen_bool(0.5) {
                a_edges.push((u, v));
            }
        }
    }
    let a = Graph::new(na, &a_edges).unwrap();
    let mut b_edges = Vec::new();
    for u in 0..nb {
        for v in u + 1..nb {
            let edge = if u < c_size && v < c_size {
                a.adjacent(u, v) // overlap must induce identical subgraphs
            } else {
                rng.gen_bool(0.5)
            };
            if edge {
                b_edges.push((u, v));
            }
        }
    }
    let b = Graph::new(nb, &b_edges).unwrap();
    let ov = OverlapSpec::new((0..c_size).map(|i| (i, i)).collect()).unwrap();
    (a, b, ov)
}

#[test]
fn free_join_amalgamates_witness_extensions() {
    let mut rng = rng(301);
    let mut exercised = 0usize;
    for _ in 0..200 {
        let c_size = rng.gen_range(0..=3);
        let na = rng.gen_range(c_size.max(1)..=6);
        let nb = rng.gen_range(c_size.max(1)..=6);
        let (a, b, ov) = compatible_pair(&mut rng, na, nb, c_size);
        assert!(is_compatible(&a, &b, &ov).unwrap());
        let t = rng.gen_range(1..=3);
        let c_in_a: VertexSet = (0..c_size).collect();
        let both_sides_extend = extends_uniformly(&a, &c_in_a, t).unwrap()
            && extends_uniformly(&b, &c_in_a, t).unwrap();
        let both_in_class = coloring_number(&a).0 <= t && coloring_number(&b).0 <= t;
        if !(both_sides_extend && both_in_class) {
            continue;
        }
        exercised += 1;
        let j = free_join(&a, &b, &ov).unwrap();
        // the join keeps a's ids and appends b's private vertices in
        // ascending id order
        let a_in_j: VertexSet = (0..na).collect();
        let b_in_j: VertexSet = (0..c_size).chain(na..j.n()).collect();
        assert!(coloring_number(&j).0 <= t);
        assert!(extends_uniformly(&j, &a_in_j, t).unwrap());
        assert!(extends_uniformly(&j, &b_in_j, t).unwrap());
    }
    assert!(exercised >= 20, "only {exercised} joins exercised");
}

#[test]
fn rigidity_composes_through_intermediates() {
    let mut rng = rng(302);
    // inverse threshold just above 1, so dense pairs (and hence rigid
    // instances) are common at this scale
    let alpha: ExactRational = "100/101".parse().unwrap();
    let mut exercised = 0usize;
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let g = sample_gnp(n, rng.gen_range(0.6..0.95), rng.gen()).unwrap();
        let base: VertexSet = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        if base.len() == n {
            continue;
        }
        let Ok(rigid) = is_rigid(&g, &base, &alpha, DEFAULT_ENUM_BUDGET) else {
            continue; // tie under this alpha: skip the instance
        };
        if !rigid {
            continue;
        }
        exercised += 1;
        // any set between the base and the whole graph stays rigid
        let mut mid = base.clone();
        for v in 0..n {
            if !mid.contains(v) && rng.gen_bool(0.5) {
                mid.insert(v);
            }
        }
        assert!(is_rigid(&g, &mid, &alpha, DEFAULT_ENUM_BUDGET).unwrap());
    }
    assert!(exercised >= 20, "only {exercised} rigid instances");
}

#[test]
fn safe_samples_have_small_coloring_number() {
    // 1/(k+1) < alpha for k = 3, so safety forces col <= 2k+1 = 7
    let lo: ExactRational = "1/4".parse().unwrap();
    let hi: ExactRational = "1/3".parse().unwrap();
    let alpha = admissible_alpha_between(&lo, &hi, 12).unwrap();
    let mut rng = rng(303);
    let mut safe_seen = 0usize;
    for _ in 0..15 {
        let n = rng.gen_range(8..=12);
        let g = sample_sparse(n, &alpha, rng.gen()).unwrap();
        if is_safe(&g, &VertexSet::new(), &alpha, DEFAULT_ENUM_BUDGET).unwrap() {
            safe_seen += 1;
            assert!(coloring_number(&g).0 <= 7);
        }
    }
    assert!(safe_seen > 0);
}
