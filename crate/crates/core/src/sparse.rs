//! Sparse/dense pair classification at an exact rational threshold, safe and
//! rigid extensions, the bounded closure operator, and seeded samplers for
//! G(n,p) and G(n, n^{-alpha}).
//!
//! For nested vertex sets `G ⊆ H` of a host graph, the pair `(G, H)` is
//! sparse when the ratio of new edges to new vertices is below `1/alpha` and
//! dense when above; equality is a `Tie` error, ruled out for admissible
//! alphas (denominator a prime exceeding the squared vertex count). `safe`
//! requires every intermediate extension to be sparse, `rigid` every
//! intermediate restriction to be dense. The closure of a set repeatedly
//! absorbs every small set that is rigid over its current intersection.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::rational::ExactRational;
use crate::{Error, Graph, Result, VertexSet};

/// Default cap on `|H \ G|` for the exhaustive safe/rigid enumerations.
pub const DEFAULT_ENUM_BUDGET: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairClass {
    Sparse,
    Dense,
    Tie,
}

/// Classifies the pair `(g, h)` for `g` a proper subset of the vertices of
/// `h`: compares (new edges)/(new vertices) to `1/alpha` in exact rational
/// arithmetic.
pub fn classify_pair(h: &Graph, g: &VertexSet, alpha: &ExactRational) -> Result<PairClass> {
    alpha.check_alpha()?;
    g.check_range(h.n())?;
    if g.len() == h.n() {
        return Err(Error::EmptyDifference);
    }
    let d_edges = (h.edge_count() - h.induced_edge_count(g)) as u64;
    let d_vertices = (h.n() - g.len()) as u64;
    Ok(match alpha.cmp_ratio_to_inverse(d_edges, d_vertices) {
        Ordering::Less => PairClass::Sparse,
        Ordering::Greater => PairClass::Dense,
        Ordering::Equal => PairClass::Tie,
    })
}

/// Incremental edge counts for all supersets `g ∪ D`, `D ⊆ diff`, where
/// `diff` lists the vertices of `h` outside `g`. `visit` receives each
/// subset mask over `diff`, the induced edge count of `g ∪ D`, and `|D|`;
/// returning false stops the walk early.
fn walk_extensions(
    h: &Graph,
    g: &VertexSet,
    diff: &[usize],
    visit: &mut impl FnMut(u32, usize, usize) -> bool,
) {
    let base_edges = h.induced_edge_count(g);
    let mut edge_counts = vec![0usize; 1 << diff.len()];
    let base_mask = h.mask_of(g.iter());
    for sub in 0u32..(1u64 << diff.len()) as u32 {
        let e = if sub == 0 {
            base_edges
        } else {
            let low = sub.trailing_zeros() as usize;
            let prev = sub & (sub - 1);
            // neighbors of the new vertex inside g ∪ (D minus itself)
            let mut mask = base_mask.clone();
            for (i, &v) in diff.iter().enumerate() {
                if prev >> i & 1 == 1 {
                    mask[v >> 6] |= 1 << (v & 63);
                }
            }
            edge_counts[prev as usize] + h.degree_into_mask(diff[low], &mask)
        };
        edge_counts[sub as usize] = e;
        if !visit(sub, e, sub.count_ones() as usize) {
            return;
        }
    }
}

fn check_budget(what: &'static str, got: usize, budget: usize) -> Result<()> {
    if got > budget {
        return Err(Error::BudgetExceeded { what, got, budget });
    }
    Ok(())
}

/// True iff every `I` with `g ⊂ I ⊆ h` makes `(g, I)` sparse. Exhaustive over
/// the `2^{|h \ g|} - 1` intermediate sets; `budget` caps `|h \ g|`.
pub fn is_safe(h: &Graph, g: &VertexSet, alpha: &ExactRational, budget: usize) -> Result<bool> {
    alpha.check_alpha()?;
    g.check_range(h.n())?;
    let diff: Vec<usize> = (0..h.n()).filter(|v| !g.contains(*v)).collect();
    check_budget("safe enumeration |H \\ G|", diff.len(), budget)?;
    let base_edges = h.induced_edge_count(g);
    let mut verdict = Ok(true);
    walk_extensions(h, g, &diff, &mut |sub, e, added| {
        if sub == 0 {
            return true;
        }
        match alpha.cmp_ratio_to_inverse((e - base_edges) as u64, added as u64) {
            Ordering::Less => true,
            Ordering::Greater => {
                verdict = Ok(false);
                false
            }
            Ordering::Equal => {
                verdict = Err(Error::Tie {
                    alpha: alpha.to_string(),
                });
                false
            }
        }
    });
    verdict
}

/// True iff every `I` with `g ⊆ I ⊂ h` makes `(I, h)` dense. Same budget and
/// tie discipline as [`is_safe`].
pub fn is_rigid(h: &Graph, g: &VertexSet, alpha: &ExactRational, budget: usize) -> Result<bool> {
    alpha.check_alpha()?;
    g.check_range(h.n())?;
    let diff: Vec<usize> = (0..h.n()).filter(|v| !g.contains(*v)).collect();
    check_budget("rigid enumeration |H \\ G|", diff.len(), budget)?;
    let total_edges = h.edge_count();
    let full = ((1u64 << diff.len()) - 1) as u32;
    let mut verdict = Ok(true);
    walk_extensions(h, g, &diff, &mut |sub, e, added| {
        if sub == full {
            return true; // I = h is excluded by the strict inclusion
        }
        let d_edges = (total_edges - e) as u64;
        let d_vertices = (diff.len() - added) as u64;
        match alpha.cmp_ratio_to_inverse(d_edges, d_vertices) {
            Ordering::Greater => true,
            Ordering::Less => {
                verdict = Ok(false);
                false
            }
            Ordering::Equal => {
                verdict = Err(Error::Tie {
                    alpha: alpha.to_string(),
                });
                false
            }
        }
    });
    verdict
}

/// One accepted absorption step in a closure run.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureStep {
    /// 1-based round in which the set was absorbed.
    pub round: usize,
    /// The absorbed set `B`.
    pub added: Vec<usize>,
    /// The rigid-pair certificate `(B ∩ closure-so-far, B)`.
    pub certificate: (Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureResult {
    pub closure: Vec<usize>,
    pub trace: Vec<ClosureStep>,
}

/// Least fixed point of the one-step absorption operator: starting from `a`,
/// add every `B ⊆ V(h)` with `|B| ≤ l` that is rigid over `B ∩ current`,
/// until stable.
///
/// After the first full round only candidates touching the newly added
/// frontier can change verdict, so later rounds rescan only those; the
/// full-rescan fixed point is the oracle this is validated against.
pub fn closure(h: &Graph, a: &VertexSet, l: usize, alpha: &ExactRational) -> Result<ClosureResult> {
    closure_impl(h, a, l, alpha, true)
}

/// Full-rescan reference implementation of [`closure`]: rescans every
/// candidate set each round.
pub fn closure_brute_force(
    h: &Graph,
    a: &VertexSet,
    l: usize,
    alpha: &ExactRational,
) -> Result<ClosureResult> {
    closure_impl(h, a, l, alpha, false)
}

fn closure_impl(
    h: &Graph,
    a: &VertexSet,
    l: usize,
    alpha: &ExactRational,
    frontier_only: bool,
) -> Result<ClosureResult> {
    alpha.check_alpha()?;
    a.check_range(h.n())?;
    let mut current: Vec<bool> = (0..h.n()).map(|v| a.contains(v)).collect();
    let mut frontier: Vec<bool> = current.clone();
    let mut trace = Vec::new();
    let candidates = subsets_up_to(h.n(), l);
    let mut round = 0;
    loop {
        round += 1;
        let mut added: Vec<usize> = Vec::new();
        for b in &candidates {
            if b.iter().all(|&v| current[v]) {
                continue; // nothing new to absorb
            }
            // After round 1 a candidate's intersection with the closure can
            // only have changed if it touches the last round's additions.
            if frontier_only && round > 1 && !b.iter().any(|&v| frontier[v]) {
                continue;
            }
            let inter: VertexSet = b.iter().copied().filter(|&v| current[v]).collect();
            let (sub, map) = h.induced_subgraph(&VertexSet::from_iter(b.iter().copied()))?;
            let g_local: VertexSet = (0..map.len()).filter(|&i| inter.contains(map[i])).collect();
            if is_rigid(&sub, &g_local, alpha, l)? {
                trace.push(ClosureStep {
                    round,
                    added: b.clone(),
                    certificate: (inter.to_vec(), b.clone()),
                });
                added.extend(b.iter().copied().filter(|&v| !current[v]));
            }
        }
        if added.is_empty() {
            break;
        }
        frontier.iter_mut().for_each(|f| *f = false);
        for v in added {
            current[v] = true;
            frontier[v] = true;
        }
    }
    Ok(ClosureResult {
        closure: (0..h.n()).filter(|&v| current[v]).collect(),
        trace,
    })
}

/// All nonempty subsets of `0..n` of size at most `l`, in (size, lex) order.
fn subsets_up_to(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            cur.push(v);
            go(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for size in 1..=l.min(n) {
        go(n, size, 0, &mut cur, &mut out);
    }
    out
}

/// True iff some seed set of size at most `l` closes to the whole vertex set.
pub fn is_l_small(h: &Graph, l: usize, alpha: &ExactRational) -> Result<bool> {
    if h.n() <= l {
        return Ok(true); // take the whole graph as the seed
    }
    let mut seeds = subsets_up_to(h.n(), l);
    seeds.insert(0, Vec::new());
    for seed in seeds {
        let res = closure(h, &VertexSet::from_iter(seed), l, alpha)?;
        if res.closure.len() == h.n() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Erdos-Renyi sample: each unordered pair is an edge independently with
/// probability `p`. Identical seeds give identical graphs.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Sparse random graph G(n, n^{-alpha}). The edge probability is computed in
/// floating point (sampling only; all classification stays exact).
pub fn sample_sparse(n: usize, alpha: &ExactRational, seed: u64) -> Result<Graph> {
    alpha.check_alpha()?;
    let p = if n <= 1 {
        0.0
    } else {
        (n as f64).powf(-alpha.to_f64())
    };
    sample_gnp(n, p, seed)
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureBoundStats {
    pub n: usize,
    pub alpha: String,
    pub l: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_closure_size: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub closure_sizes: Vec<usize>,
}

/// Samples `trials` graphs G(n, n^{-alpha}), draws a random seed set of size
/// at most `l` in each, and reports the distribution of closure sizes. A
/// desk-scale probe of the uniform closure bound; no ground truth is
/// asserted here.
pub fn closure_bound_experiment(
    n: usize,
    alpha: &ExactRational,
    l: usize,
    trials: usize,
    seed: u64,
) -> Result<ClosureBoundStats> {
    alpha.check_alpha()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut sizes = Vec::with_capacity(trials);
    for trial in 0..trials {
        let g = sample_sparse(
            n,
            alpha,
            seed.wrapping_add(trial as u64).wrapping_mul(2) + 1,
        )?;
        let size = rng.gen_range(0..=l.min(n));
        let mut seed_set = VertexSet::new();
        while seed_set.len() < size {
            seed_set.insert(rng.gen_range(0..n));
        }
        let res = closure(&g, &seed_set, l, alpha)?;
        sizes.push(res.closure.len());
    }
    let mut histogram = BTreeMap::new();
    for &s in &sizes {
        *histogram.entry(s).or_insert(0usize) += 1;
    }
    Ok(ClosureBoundStats {
        n,
        alpha: alpha.to_string(),
        l,
        trials,
        seed,
        max_closure_size: sizes.iter().copied().max().unwrap_or(0),
        histogram,
        closure_sizes: sizes,
    })
}
