//! Deterministic generators for the structured graph families used by the
//! test suite and the CLI, plus verifiers for their structural properties.
//!
//! `theorem3_graph(k)` is the k-part graph on k*2^k vertices whose vertices
//! are (binary sequence of length k, part index) and whose edge rule matches
//! sequence values across distinct parts. `theorem4_graph(k, n)` is the
//! cyclic n-part variant on n*2^(2k-2) vertices whose edge rule depends only
//! on the circular part distance, giving a shift automorphism; it is
//! evaluated lazily so band structure can be checked at sizes where
//! materializing all edges is wasteful.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::rational;
use crate::{Error, Graph, NatOmega, Result};

pub fn clique(n: usize) -> Result<Graph> {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::new(n, &e)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("cycle needs n >= 3, got {n}")));
    }
    let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    e.push((n - 1, 0));
    Graph::new(n, &e)
}

pub fn path(n: usize) -> Result<Graph> {
    let e: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &e)
}

pub fn empty(n: usize) -> Result<Graph> {
    Graph::new(n, &[])
}

/// Star with `n` vertices: center 0 joined to `n - 1` leaves.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("star needs n >= 1".into()));
    }
    let e: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::new(n, &e)
}

/// Uniform random labeled tree on `n` vertices via a seeded random Pruefer
/// sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Graph::new(0, &[]);
    }
    if n <= 2 {
        return Graph::new(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pruefer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &pruefer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaf_heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &pruefer {
        let std::cmp::Reverse(leaf) = leaf_heap.pop().expect("tree decoding invariant");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaf_heap.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaf_heap.pop().unwrap();
    let std::cmp::Reverse(b) = leaf_heap.pop().unwrap();
    edges.push((a, b));
    Graph::new(n, &edges)
}

/// Random forest: a seeded random tree with each edge independently kept
/// with probability `keep`.
pub fn random_forest(n: usize, keep: f64, seed: u64) -> Result<Graph> {
    let tree = random_tree(n, seed)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let edges: Vec<_> = tree
        .edges()
        .into_iter()
        .filter(|_| rng.gen_bool(keep))
        .collect();
    Graph::new(n, &edges)
}

/// Quadratic-residue graph on a prime `q ≡ 1 (mod 4)`: vertices `0..q`,
/// `u ~ v` iff `u - v` is a nonzero square modulo `q`.
pub fn paley(q: usize) -> Result<Graph> {
    if !rational::is_prime(q as u64) || q % 4 != 1 {
        return Err(Error::InvalidParams(format!(
            "paley order must be a prime congruent to 1 mod 4, got {q}"
        )));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let mut e = Vec::new();
    for u in 0..q {
        for v in u + 1..q {
            if residue[(v - u) % q] {
                e.push((u, v));
            }
        }
    }
    Graph::new(q, &e)
}

/// The k-part graph on `k * 2^k` labeled vertices: vertex `(f, i)` carries a
/// binary sequence `f` of length `k` and a part index `i` in `1..=k`; two
/// vertices are adjacent iff their parts differ and each sequence, evaluated
/// at the other's part index, agrees: `f(j) = g(i)`.
pub fn theorem3_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidParams(format!(
            "theorem3 family needs k >= 2, got {k}"
        )));
    }
    if k > 10 {
        return Err(Error::InvalidParams(format!(
            "theorem3 family capped at k = 10 ({} vertices), got k = {k}",
            10 * (1 << 10)
        )));
    }
    let part_size = 1usize << k;
    let n = k * part_size;
    let mut edges = Vec::new();
    for u in 0..n {
        let (fu, iu) = (u % part_size, u / part_size + 1);
        for v in u + 1..n {
            let (fv, iv) = (v % part_size, v / part_size + 1);
            if iu != iv && seq_bit(fu, iv) == seq_bit(fv, iu) {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n)
        .map(|v| {
            let (f, i) = (v % part_size, v / part_size + 1);
            format!("f={:0width$b},part={}", f, i, width = k)
        })
        .collect();
    Graph::new(n, &edges)?.with_labels(labels)
}

/// Value of the length-k binary sequence `f` at 1-based index `j`.
fn seq_bit(f: usize, j: usize) -> usize {
    f >> (j - 1) & 1
}

/// Vertex id of `(f, part)` in [`theorem3_graph`], parts 1-based.
pub fn theorem3_vertex(k: usize, f: usize, part: usize) -> usize {
    debug_assert!(part >= 1 && part <= k && f < (1 << k));
    (part - 1) * (1 << k) + f
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRefutationReport {
    pub k: usize,
    pub pairs_checked: usize,
    /// Pairs whose refuting formula unexpectedly held in the graph.
    pub violations: Vec<PairViolation>,
    /// Pairs whose formula failed its satisfiability side-check.
    pub satisfiability_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairViolation {
    pub part: usize,
    pub f1: usize,
    pub f2: usize,
}

/// Checks, for every part `l` and ordered pair of distinct sequences
/// `(f1, f2)`, that the existential formula built from the smaller of the
/// two disagreement/agreement index sets fails at `((f1,l), (f2,l))` in the
/// graph, while being satisfiable in an explicitly built witness graph.
///
/// The formula demands `|w| + 1` fresh pairwise-adjacent vertices, each
/// adjacent to `(f1,l)`; when `w` is the disagreement set they must avoid
/// `(f2,l)`, and when it is the agreement set they must also be adjacent to
/// `(f2,l)`. Either way the fresh vertices are confined to parts indexed by
/// `w`, and `|w| + 1` of them cannot fit into `|w|` independent parts.
pub fn verify_theorem3_pairs(k: usize) -> Result<PairRefutationReport> {
    if k < 4 {
        return Err(Error::InvalidParams(format!(
            "pair refutation check needs k >= 4, got {k}"
        )));
    }
    let g = theorem3_graph(k)?;
    let part_size = 1usize << k;
    let mut report = PairRefutationReport {
        k,
        pairs_checked: 0,
        violations: Vec::new(),
        satisfiability_failures: 0,
    };
    for part in 1..=k {
        for f1 in 0..part_size {
            for f2 in 0..part_size {
                if f1 == f2 {
                    continue;
                }
                report.pairs_checked += 1;
                let mut w_prime = 0usize; // j != part with f1(j) != f2(j)
                let mut w_dprime = 0usize; // j != part with f1(j) == f2(j)
                for j in 1..=k {
                    if j == part {
                        continue;
                    }
                    if seq_bit(f1, j) != seq_bit(f2, j) {
                        w_prime += 1;
                    } else {
                        w_dprime += 1;
                    }
                }
                let (w, same_side) = if w_prime <= w_dprime {
                    (w_prime, false)
                } else {
                    (w_dprime, true)
                };
                debug_assert!(w + 3 <= k);
                let x1 = theorem3_vertex(k, f1, part);
                let x2 = theorem3_vertex(k, f2, part);
                if holds_clique_formula(&g, x1, x2, w + 1, same_side) {
                    report.violations.push(PairViolation { part, f1, f2 });
                }
                if !satisfiable_clique_formula(w + 1, same_side)? {
                    report.satisfiability_failures += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Exhaustive witness search for: `q` distinct vertices outside `{x1, x2}`,
/// pairwise adjacent, all adjacent to `x1`, and all adjacent to `x2` when
/// `same_side` (otherwise all non-adjacent to `x2`).
fn holds_clique_formula(g: &Graph, x1: usize, x2: usize, q: usize, same_side: bool) -> bool {
    let candidates: Vec<usize> = g
        .vertices()
        .filter(|&v| v != x1 && v != x2)
        .filter(|&v| g.adjacent(x1, v) && g.adjacent(x2, v) == same_side)
        .collect();
    fn search(g: &Graph, cands: &[usize], chosen: &mut Vec<usize>, q: usize, from: usize) -> bool {
        if chosen.len() == q {
            return true;
        }
        for i in from..cands.len() {
            let v = cands[i];
            if chosen.iter().all(|&u| g.adjacent(u, v)) {
                chosen.push(v);
                if search(g, cands, chosen, q, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    search(g, &candidates, &mut Vec::new(), q, 0)
}

/// Builds the intended model of the formula and evaluates it there with the
/// same witness search: `x1` joined to a `q`-clique, `x2` joined to it too
/// exactly when `same_side`.
fn satisfiable_clique_formula(q: usize, same_side: bool) -> Result<bool> {
    let n = q + 2; // 0 = x1, 1 = x2, 2.. = clique
    let mut edges = Vec::new();
    for i in 2..n {
        edges.push((0, i));
        if same_side {
            edges.push((1, i));
        }
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let model = Graph::new(n, &edges)?;
    Ok(holds_clique_formula(&model, 0, 1, q, same_side))
}

/// The cyclic family member on `n * 2^(2k-2)` vertices. Vertex `(d, f, m)`
/// carries a boundary bit `d`, a binary sequence `f` over positions
/// `-(k-2)..=(k-2)`, and a part index `m` modulo `n`.
///
/// For parts at circular distance 0 or in the band `k..=n-k` there is no
/// edge. At distance `1..=k-2` the sequences decide: the lower vertex's
/// sequence at `+dist` must equal the higher vertex's at `-dist`. At
/// distance exactly `k-1` the boundary bit of the higher-part vertex decides
/// alone, so each vertex sees each part at that distance all-or-nothing.
#[derive(Debug, Clone, Copy)]
pub struct Theorem4Graph {
    pub k: usize,
    pub n: usize,
}

impl Theorem4Graph {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 4 || n < 4 * k {
            return Err(Error::InvalidParams(format!(
                "theorem4 family needs k >= 4 and n >= 4k, got k={k} n={n}"
            )));
        }
        if 2 * k - 2 > 20 {
            return Err(Error::InvalidParams(format!(
                "theorem4 family capped at k = 11, got {k}"
            )));
        }
        Ok(Theorem4Graph { k, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.n << (2 * self.k - 2)
    }

    fn part_bits(&self) -> usize {
        2 * self.k - 2
    }

    /// Encodes `(delta, f, m)`: `f` is indexed by signed offsets, bit
    /// `offset + (k-2)` of the sequence word.
    pub fn encode(&self, delta: usize, f: usize, m: usize) -> usize {
        debug_assert!(delta < 2 && f < 1 << (2 * self.k - 3) && m < self.n);
        (m << self.part_bits()) | (delta << (self.part_bits() - 1)) | f
    }

    pub fn decode(&self, v: usize) -> (usize, usize, usize) {
        let m = v >> self.part_bits();
        let rest = v & ((1 << self.part_bits()) - 1);
        let delta = rest >> (self.part_bits() - 1);
        let f = rest & ((1 << (self.part_bits() - 1)) - 1);
        (delta, f, m)
    }

    pub fn part_of(&self, v: usize) -> usize {
        v >> self.part_bits()
    }

    /// Sequence value at signed offset `off` in `-(k-2)..=(k-2)`.
    fn seq(&self, f: usize, off: isize) -> usize {
        let idx = (off + (self.k as isize - 2)) as usize;
        f >> idx & 1
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let (du, fu, mu) = self.decode(u);
        let (dv, fv, mv) = self.decode(v);
        let d = (mu + self.n - mv) % self.n;
        if d == 0 || (d >= self.k && d <= self.n - self.k) {
            return false;
        }
        // orient so `hi` is the endpoint whose part is higher by `dist`
        let (dist, hi_delta, hi_f, lo_f) = if d < self.k {
            (d, du, fu, fv)
        } else {
            (self.n - d, dv, fv, fu)
        };
        if dist == self.k - 1 {
            hi_delta == 1
        } else {
            // lower sequence at +dist, higher sequence at -dist
            self.seq(lo_f, dist as isize) == self.seq(hi_f, -(dist as isize))
        }
    }

    /// Materializes the adjacency into a labeled [`Graph`]. Intended for
    /// small parameters; the verifier works on the lazy form.
    pub fn materialize(&self) -> Result<Graph> {
        let n = self.vertex_count();
        if n > 1 << 16 {
            return Err(Error::BudgetExceeded {
                what: "theorem4 materialized vertex count",
                got: n,
                budget: 1 << 16,
            });
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let labels = (0..n)
            .map(|v| {
                let (d, f, m) = self.decode(v);
                format!(
                    "delta={},f={:0width$b},part={}",
                    d,
                    f,
                    m,
                    width = 2 * self.k - 3
                )
            })
            .collect();
        Graph::new(n, &edges)?.with_labels(labels)
    }

    /// Independent re-derivation of the edge rule: evaluates the raw ordered
    /// clauses in both orientations and cross-checks their verdicts.
    /// Returns `None` when the two orientations disagree (which would be a
    /// rule bug).
    fn adjacent_by_cases(&self, u: usize, v: usize) -> Option<bool> {
        if u == v {
            return Some(false);
        }
        let one_sided = |x: usize, y: usize| -> Option<bool> {
            let (dx, fx, mx) = self.decode(x);
            let (_, fy, my) = self.decode(y);
            let d = (mx + self.n - my) % self.n;
            if d == 0 || (self.k..=self.n - self.k).contains(&d) {
                Some(false)
            } else if (1..self.k - 1).contains(&d) {
                // first endpoint higher by d: its sequence is read at -d
                Some(self.seq(fy, d as isize) == self.seq(fx, -(d as isize)))
            } else if d == self.k - 1 {
                Some(dx == 1)
            } else {
                None // the mirrored ordering carries this case
            }
        };
        match (one_sided(u, v), one_sided(v, u)) {
            (Some(a), Some(b)) if a == b => Some(a),
            (Some(a), None) | (None, Some(a)) => Some(a),
            _ => None,
        }
    }
}

pub fn theorem4_graph(k: usize, n: usize) -> Result<Graph> {
    Theorem4Graph::new(k, n)?.materialize()
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem4Report {
    pub k: usize,
    pub n: usize,
    pub vertex_count: usize,
    pub shift_pairs_checked: usize,
    pub shift_exhaustive: bool,
    pub shift_mismatches: usize,
    pub audit_pairs: usize,
    pub audit_mismatches: usize,
    pub bfs_sources: usize,
    pub target_part: usize,
    pub required_min_distance: u64,
    pub observed_min_distance: NatOmega,
    pub passed: bool,
}

/// Structural verification of [`Theorem4Graph`]:
///
/// * the part-shift map `(d, f, m) -> (d, f, m+1)` preserves adjacency,
///   exhaustively for small instances and on a seeded sample otherwise;
/// * the edge rule agrees with an independent per-clause re-implementation
///   on a seeded sample of pairs;
/// * BFS from sampled vertices of part 0 reaches the diametrically opposite
///   part no sooner than `ceil(floor((n-1)/2) / (k-1))` steps.
pub fn verify_theorem4(k: usize, n: usize, seed: u64) -> Result<Theorem4Report> {
    let g = Theorem4Graph::new(k, n)?;
    let count = g.vertex_count();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // shift automorphism
    let shift = |v: usize| -> usize {
        let (d, f, m) = g.decode(v);
        g.encode(d, f, (m + 1) % n)
    };
    let mut shift_mismatches = 0usize;
    let mut shift_pairs = 0usize;
    let shift_exhaustive = count <= 2048;
    if shift_exhaustive {
        for u in 0..count {
            for v in u + 1..count {
                shift_pairs += 1;
                if g.adjacent(u, v) != g.adjacent(shift(u), shift(v)) {
                    shift_mismatches += 1;
                }
            }
        }
    } else {
        for _ in 0..1_000_000 {
            let u = rng.gen_range(0..count);
            let v = rng.gen_range(0..count);
            shift_pairs += 1;
            if g.adjacent(u, v) != g.adjacent(shift(u), shift(v)) {
                shift_mismatches += 1;
            }
        }
    }

    // adjacency audit against the independent clause evaluation
    let mut audit_mismatches = 0usize;
    let audit_pairs = 10_000usize;
    for _ in 0..audit_pairs {
        let u = rng.gen_range(0..count);
        let v = rng.gen_range(0..count);
        let expect = g.adjacent(u, v);
        let sym_ok = g.adjacent(v, u) == expect;
        match g.adjacent_by_cases(u, v) {
            Some(audit) if audit == expect && sym_ok => {}
            _ => audit_mismatches += 1,
        }
    }

    // distance floor to the opposite part
    let target_part = (n - 1) / 2;
    let required = ((n - 1) / 2).div_ceil(k - 1) as u64;
    let bfs_sources = 5usize.min(1 << (2 * k - 2));
    let mut observed = NatOmega::Omega;
    for _ in 0..bfs_sources {
        let f = rng.gen_range(0..1usize << (2 * k - 3));
        let delta = rng.gen_range(0..2usize);
        let src = g.encode(delta, f, 0);
        if let Some(dist) = bfs_distance_to_part(&g, src, target_part) {
            let dist = NatOmega::Finite(dist);
            if dist < observed {
                observed = dist;
            }
        }
    }
    let passed =
        shift_mismatches == 0 && audit_mismatches == 0 && observed >= NatOmega::Finite(required);
    Ok(Theorem4Report {
        k,
        n,
        vertex_count: count,
        shift_pairs_checked: shift_pairs,
        shift_exhaustive,
        shift_mismatches,
        audit_pairs,
        audit_mismatches,
        bfs_sources,
        target_part,
        required_min_distance: required,
        observed_min_distance: observed,
        passed,
    })
}

/// Breadth-first distance from `src` to the nearest vertex of `part`,
/// scanning candidate neighbors lazily; stops at the first hit.
fn bfs_distance_to_part(g: &Theorem4Graph, src: usize, part: usize) -> Option<u64> {
    let count = g.vertex_count();
    if g.part_of(src) == part {
        return Some(0);
    }
    let mut dist = vec![u32::MAX; count];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for v in 0..count {
            if dist[v] == u32::MAX && g.adjacent(u, v) {
                if g.part_of(v) == part {
                    return Some(dist[u] as u64 + 1);
                }
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    None
}
