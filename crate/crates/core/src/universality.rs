//! Polynomial-time decision procedure for k-universality.
//!
//! A graph is `k`-universal when every graph `H` satisfies `H ≼^k G`. The
//! decider assigns every proper (k-1)-tuple of `G` a rank: the least stage at
//! which an inductive operator refutes it. A tuple is refuted at stage 0 when
//! some extension pattern (a prescribed adjacency subset for a fresh vertex)
//! has no witness at all, and at stage `m+1` when some pattern's every
//! witness extends the tuple into one whose drop-one subtuples are all... at
//! least one of which is already refuted. Tuples never refuted have rank
//! omega, and `G` is `k`-universal exactly when it has at least `k-1`
//! vertices and some proper tuple of rank omega.
//!
//! Ranks are permutation-invariant, so the engine works on sorted tuples
//! (combinations) and re-expands on lookup; a worklist confined to
//! swap-distance-one neighbors of newly refuted tuples keeps the fixed-point
//! computation fast. The literal one-step operator over ordered tuples is
//! exposed as [`theta_step`] and doubles as the engine's oracle in tests.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::{Error, Graph, NatOmega, Result};

/// One k-extension pattern: the fresh vertex must be distinct from all of
/// `x_1..x_{k-1}` and adjacent to exactly the positions in `members`
/// (1-based positions, a subset of `{1..k-1}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionPattern {
    pub k: usize,
    pub members: BTreeSet<usize>,
}

impl ExtensionPattern {
    fn from_mask(k: usize, mask: u32) -> Self {
        ExtensionPattern {
            k,
            members: (1..k).filter(|i| mask >> (i - 1) & 1 == 1).collect(),
        }
    }
}

/// All `2^{k-1}` extension patterns for `k` pebbles, in mask order.
pub fn extension_patterns(k: usize) -> Result<Vec<ExtensionPattern>> {
    if k < 2 {
        return Err(Error::PebbleCountTooSmall { min: 2, got: k });
    }
    Ok((0..1u32 << (k - 1))
        .map(|mask| ExtensionPattern::from_mask(k, mask))
        .collect())
}

/// One application of the inductive refutation operator to a set of ordered
/// (k-1)-tuples.
///
/// The result contains a tuple `x` iff `x` is improper (repeats a vertex),
/// or some extension pattern is such that every witness `a` (distinct from
/// all of `x`, adjacent to exactly the pattern positions) gives a k-tuple
/// `x·a` with at least one of its `k` drop-one subtuples in `r`. An
/// unwitnessed pattern satisfies the condition vacuously.
///
/// Literal and exponential in `k`; the rank engine below is the fast path.
pub fn theta_step(g: &Graph, k: usize, r: &BTreeSet<Vec<usize>>) -> Result<BTreeSet<Vec<usize>>> {
    if k < 2 {
        return Err(Error::PebbleCountTooSmall { min: 2, got: k });
    }
    let mut out = BTreeSet::new();
    if g.n() == 0 {
        return Ok(out);
    }
    let mut tuple = vec![0usize; k - 1];
    loop {
        if is_improper(&tuple) || theta_holds(g, k, &tuple, r) {
            out.insert(tuple.clone());
        }
        // lexicographic successor over n^{k-1} tuples
        let mut i = k - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < g.n() {
                break;
            }
            tuple[i] = 0;
        }
    }
}

fn is_improper(tuple: &[usize]) -> bool {
    tuple
        .iter()
        .enumerate()
        .any(|(i, v)| tuple[i + 1..].contains(v))
}

fn theta_holds(g: &Graph, k: usize, tuple: &[usize], r: &BTreeSet<Vec<usize>>) -> bool {
    'pattern: for mask in 0..1u32 << (k - 1) {
        for a in g.vertices() {
            if tuple.contains(&a) {
                continue;
            }
            let matches = (0..k - 1).all(|i| g.adjacent(a, tuple[i]) == (mask >> i & 1 == 1));
            if !matches {
                continue;
            }
            // witness found: some drop-one subtuple of tuple·a must be in r
            let mut extended: Vec<usize> = tuple.to_vec();
            extended.push(a);
            let mut any = false;
            for drop in 0..k {
                let mut sub = extended.clone();
                sub.remove(drop);
                if r.contains(&sub) {
                    any = true;
                    break;
                }
            }
            if !any {
                continue 'pattern;
            }
        }
        return true; // all witnesses covered (vacuously if none)
    }
    false
}

/// Rank of every proper (k-1)-tuple: the stage at which the refutation
/// operator first contains it, or omega if never. Permutation-invariant.
#[derive(Debug, Clone)]
pub struct RankTable {
    k: usize,
    n: usize,
    /// Rank per combination in colex index order; `u32::MAX` encodes omega.
    ranks: Vec<u32>,
    binomials: Vec<Vec<u64>>,
    iterations: usize,
}

const OMEGA_RANK: u32 = u32::MAX;

impl RankTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of operator applications performed before stabilizing.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Rank of a proper (k-1)-tuple, in any vertex order.
    pub fn rank(&self, tuple: &[usize]) -> Result<NatOmega> {
        if tuple.len() != self.k - 1 {
            return Err(Error::InvalidParams(format!(
                "expected a {}-tuple, got {} entries",
                self.k - 1,
                tuple.len()
            )));
        }
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        if sorted.iter().any(|&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: *sorted.last().unwrap(),
                n: self.n,
            });
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams("tuple is not proper".into()));
        }
        Ok(self.rank_at(self.combo_index(&sorted)))
    }

    fn rank_at(&self, idx: usize) -> NatOmega {
        match self.ranks[idx] {
            OMEGA_RANK => NatOmega::Omega,
            r => NatOmega::Finite(r as u64),
        }
    }

    /// Sorted combinations paired with their ranks.
    pub fn entries(&self) -> Vec<(Vec<usize>, NatOmega)> {
        let mut out = Vec::with_capacity(self.ranks.len());
        let mut combo: Vec<usize> = (0..self.k - 1).collect();
        if combo.len() > self.n {
            return out;
        }
        loop {
            out.push((combo.clone(), self.rank_at(self.combo_index(&combo))));
            if !next_combination(&mut combo, self.n) {
                return out;
            }
        }
    }

    fn combo_index(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &v)| self.binomials[v][i + 1] as usize)
            .sum()
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial_table(n: usize, k: usize) -> Vec<Vec<u64>> {
    let mut p = vec![vec![0u64; k + 1]; n + 1];
    for row in 0..=n {
        p[row][0] = 1;
        for c in 1..=k {
            p[row][c] = if row == 0 {
                0
            } else {
                p[row - 1][c - 1] + p[row - 1][c]
            };
        }
    }
    p
}

/// Computes the rank table of `g` for `k` pebbles by iterating the
/// refutation operator from the empty set to its least fixed point.
///
/// Stage 0 adds every combination with an unwitnessed pattern; stage `m+1`
/// rechecks only combinations at swap distance one from those added at stage
/// `m` (the only ones whose condition can have changed).
pub fn rank_table(g: &Graph, k: usize) -> Result<RankTable> {
    if k < 2 {
        return Err(Error::PebbleCountTooSmall { min: 2, got: k });
    }
    let n = g.n();
    let arity = k - 1;
    let binomials = binomial_table(n.max(1), arity.max(1));
    let combo_count = if n >= arity {
        binomials[n][arity] as usize
    } else {
        0
    };
    let mut table = RankTable {
        k,
        n,
        ranks: vec![OMEGA_RANK; combo_count],
        binomials,
        iterations: 0,
    };
    if combo_count == 0 {
        return Ok(table);
    }

    // Stage additions are judged against the previous stage's set only, so
    // each stage collects its refutations before writing any rank.

    // stage 0: full scan
    let mut newly: Vec<Vec<usize>> = Vec::new();
    let mut combo: Vec<usize> = (0..arity).collect();
    loop {
        if refuted(g, k, &combo, &table) {
            newly.push(combo.clone());
        }
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    for c in &newly {
        let idx = table.combo_index(c);
        table.ranks[idx] = 0;
    }

    // later stages: only swap-distance-one neighbors of fresh refutations
    let mut stage: u32 = 0;
    while !newly.is_empty() {
        stage += 1;
        let mut dirty: BTreeSet<Vec<usize>> = BTreeSet::new();
        for d in &newly {
            for i in 0..arity {
                for y in 0..n {
                    if d.contains(&y) && d[i] != y {
                        continue;
                    }
                    let mut c = d.clone();
                    c[i] = y;
                    c.sort_unstable();
                    if c.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    if table.ranks[table.combo_index(&c)] == OMEGA_RANK {
                        dirty.insert(c);
                    }
                }
            }
        }
        newly.clear();
        for c in dirty {
            if refuted(g, k, &c, &table) {
                newly.push(c);
            }
        }
        for c in &newly {
            let idx = table.combo_index(c);
            table.ranks[idx] = stage;
        }
    }
    table.iterations = stage as usize + 1;
    Ok(table)
}

/// Does some pattern of the sorted combination `combo` have all its
/// witnesses already leading into the refuted set?
fn refuted(g: &Graph, k: usize, combo: &[usize], table: &RankTable) -> bool {
    let arity = k - 1;
    debug_assert_eq!(combo.len(), arity);
    // pattern mask -> still viable (no uncovered witness seen yet)
    let mut viable = vec![true; 1usize << arity];
    let mut viable_count = viable.len();
    let mut scratch = vec![0usize; arity];
    for a in g.vertices() {
        if combo.contains(&a) {
            continue;
        }
        let mut mask = 0usize;
        for (i, &v) in combo.iter().enumerate() {
            if g.adjacent(a, v) {
                mask |= 1 << i;
            }
        }
        if !viable[mask] {
            continue;
        }
        // witness a for pattern `mask`: need some drop-one subtuple of
        // combo·a (other than combo itself, which is not yet refuted) to be
        // refuted already
        let mut covered = false;
        for drop in 0..arity {
            let mut idx = 0;
            for (i, &v) in combo.iter().enumerate() {
                if i != drop {
                    scratch[idx] = v;
                    idx += 1;
                }
            }
            scratch[arity - 1] = a;
            scratch.sort_unstable();
            if table.ranks[table.combo_index(&scratch)] != OMEGA_RANK {
                covered = true;
                break;
            }
        }
        if !covered {
            viable[mask] = false;
            viable_count -= 1;
            if viable_count == 0 {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateStep {
    pub tuple: Vec<usize>,
    pub rank: u64,
    /// 1-based positions of the refuting pattern, relative to the sorted tuple.
    pub pattern: Vec<usize>,
    /// A witness of that pattern with the deepest surviving subtuple, absent
    /// when the pattern is unwitnessed (rank 0).
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniversalityReport {
    pub universal: bool,
    /// A proper (k-1)-tuple of rank omega, when universal.
    pub witness: Option<Vec<usize>>,
    pub iterations: usize,
    /// For a non-universal graph, a refutation trace for a maximal-rank
    /// tuple, descending through the ranks to an unwitnessed pattern.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateStep>>,
}

/// Decides membership in the class of k-universal graphs: `g` qualifies iff
/// it has at least `k-1` vertices and some proper (k-1)-tuple has rank omega.
pub fn is_k_universal(g: &Graph, k: usize) -> Result<UniversalityReport> {
    is_k_universal_with(g, k, false)
}

/// As [`is_k_universal`], optionally extracting a refutation certificate for
/// non-universal inputs.
pub fn is_k_universal_with(g: &Graph, k: usize, certificate: bool) -> Result<UniversalityReport> {
    let table = rank_table(g, k)?;
    let witness = table
        .entries()
        .into_iter()
        .find(|(_, r)| *r == NatOmega::Omega)
        .map(|(c, _)| c);
    let universal = g.n() >= k - 1 && witness.is_some();
    let cert = if certificate && !universal {
        Some(extract_certificate(g, k, &table))
    } else {
        None
    };
    Ok(UniversalityReport {
        universal,
        witness,
        iterations: table.iterations(),
        certificate: cert,
    })
}

/// A witness continuation: the witness vertex, the successor tuple, and its
/// rank.
type Continuation = (usize, Vec<usize>, u64);

/// Builds a human-checkable refutation chain starting from a tuple of
/// maximal finite rank.
fn extract_certificate(g: &Graph, k: usize, table: &RankTable) -> Vec<CertificateStep> {
    let arity = k - 1;
    let mut steps = Vec::new();
    let Some((mut combo, mut rank)) = table
        .entries()
        .into_iter()
        .filter_map(|(c, r)| r.finite().map(|f| (c, f)))
        .max_by_key(|(_, r)| *r)
    else {
        return steps;
    };
    loop {
        // find the refuting pattern: every witness has a drop-one subtuple
        // of strictly smaller rank
        let mut chosen: Option<(u32, Option<Continuation>)> = None;
        'mask: for mask in 0..1u32 << arity {
            // deepest witness continuation for this pattern
            let mut deepest: Option<Continuation> = None;
            for a in g.vertices() {
                if combo.contains(&a) {
                    continue;
                }
                let m: u32 = combo
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (g.adjacent(a, v) as u32) << i)
                    .sum();
                if m != mask {
                    continue;
                }
                let mut best: Option<(Vec<usize>, u64)> = None;
                for drop in 0..arity {
                    let mut sub: Vec<usize> = combo
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    sub.push(a);
                    sub.sort_unstable();
                    if let NatOmega::Finite(r) = table.rank_at(table.combo_index(&sub)) {
                        if r < rank && best.as_ref().is_none_or(|(_, br)| r < *br) {
                            best = Some((sub, r));
                        }
                    }
                }
                match best {
                    None => continue 'mask, // witness not covered: wrong pattern
                    Some((sub, r)) => {
                        if deepest.as_ref().is_none_or(|(_, _, dr)| r > *dr) {
                            deepest = Some((a, sub, r));
                        }
                    }
                }
            }
            chosen = Some((mask, deepest));
            break;
        }
        let (mask, continuation) = chosen.expect("a finite-rank tuple has a refuting pattern");
        steps.push(CertificateStep {
            tuple: combo.clone(),
            rank,
            pattern: (0..arity)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect(),
            witness: continuation.as_ref().map(|(a, _, _)| *a),
        });
        match continuation {
            None => return steps, // unwitnessed pattern: rank 0, chain ends
            Some((_, sub, r)) => {
                combo = sub;
                rank = r;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn extension_pattern_counts() {
        assert_eq!(extension_patterns(2).unwrap().len(), 2);
        assert_eq!(extension_patterns(4).unwrap().len(), 8);
        assert_eq!(extension_patterns(7).unwrap().len(), 64);
        assert!(extension_patterns(1).is_err());
        let pats = extension_patterns(2).unwrap();
        assert!(pats[0].members.is_empty());
        assert_eq!(pats[1].members, BTreeSet::from([1]));
    }

    #[test]
    fn theta_step_examples() {
        // K2, k=2, R=∅: the "distinct non-neighbor" pattern has no witness
        let k2 = clique(2);
        let out = theta_step(&k2, 2, &BTreeSet::new()).unwrap();
        assert_eq!(out, BTreeSet::from([vec![0], vec![1]]));

        // R = all tuples stays all tuples
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let all: BTreeSet<Vec<usize>> = (0..3).map(|v| vec![v]).collect();
        assert_eq!(theta_step(&g, 2, &all).unwrap(), all);

        // 5 isolated vertices, k=2, R=∅: "distinct neighbor" is unwitnessed
        let iso = Graph::new(5, &[]).unwrap();
        let out = theta_step(&iso, 2, &BTreeSet::new()).unwrap();
        assert_eq!(out.len(), 5);
    }

    #[test]
    fn theta_is_monotone_seeded() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = crate::sparse::sample_gnp(rng.gen_range(2..=5), 0.5, rng.gen()).unwrap();
            let k = 3;
            // random r ⊆ r'
            let mut r = BTreeSet::new();
            let mut r2 = BTreeSet::new();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    if rng.gen_bool(0.2) {
                        r.insert(vec![u, v]);
                    }
                    if rng.gen_bool(0.2) {
                        r2.insert(vec![u, v]);
                    }
                }
            }
            r2.extend(r.iter().cloned());
            let small = theta_step(&g, k, &r).unwrap();
            let big = theta_step(&g, k, &r2).unwrap();
            assert!(small.is_subset(&big));
        }
    }

    #[test]
    fn rank_table_examples() {
        // K2, k=2: both 1-tuples rank 0
        let t = rank_table(&clique(2), 2).unwrap();
        assert_eq!(t.rank(&[0]).unwrap(), NatOmega::Finite(0));
        assert_eq!(t.rank(&[1]).unwrap(), NatOmega::Finite(0));

        // K3, k=2: no distinct non-neighbor anywhere
        let t = rank_table(&clique(3), 2).unwrap();
        for v in 0..3 {
            assert_eq!(t.rank(&[v]).unwrap(), NatOmega::Finite(0));
        }
    }

    #[test]
    fn rank_table_agrees_with_literal_operator() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..15 {
            let n = rng.gen_range(2..=6);
            let g = crate::sparse::sample_gnp(n, [0.25, 0.5, 0.75][trial % 3], rng.gen()).unwrap();
            for k in [2usize, 3] {
                let table = rank_table(&g, k).unwrap();
                // iterate the literal operator and record insertion stages
                let mut r = BTreeSet::new();
                let mut stage_of: std::collections::HashMap<Vec<usize>, u64> =
                    std::collections::HashMap::new();
                let mut stage = 0u64;
                loop {
                    let next = theta_step(&g, k, &r).unwrap();
                    for t in next.difference(&r) {
                        if !is_improper(t) {
                            stage_of.insert(t.clone(), stage);
                        }
                    }
                    if next == r {
                        break;
                    }
                    r = next;
                    stage += 1;
                }
                for (combo, rank) in table.entries() {
                    let expect = stage_of
                        .get(&combo)
                        .map(|&s| NatOmega::Finite(s))
                        .unwrap_or(NatOmega::Omega);
                    assert_eq!(rank, expect, "n={n} k={k} combo={combo:?}");
                }
            }
        }
    }

    #[test]
    fn degenerate_graphs() {
        let none = Graph::new(0, &[]).unwrap();
        assert!(theta_step(&none, 2, &BTreeSet::new()).unwrap().is_empty());
        assert!(!is_k_universal(&none, 2).unwrap().universal);
        assert!(!is_k_universal(&none, 3).unwrap().universal);
    }

    #[test]
    fn single_vertex_is_not_2_universal() {
        let g = Graph::new(1, &[]).unwrap();
        let rep = is_k_universal(&g, 2).unwrap();
        assert!(!rep.universal);
    }

    #[test]
    fn k3_is_not_2_universal_but_c5_is() {
        assert!(!is_k_universal(&clique(3), 2).unwrap().universal);
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let rep = is_k_universal(&c5, 2).unwrap();
        assert!(rep.universal);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn certificate_descends_to_rank_zero() {
        let rep = is_k_universal_with(&clique(3), 2, true).unwrap();
        let cert = rep.certificate.unwrap();
        assert!(!cert.is_empty());
        assert_eq!(cert.last().unwrap().rank, 0);
        assert!(cert.last().unwrap().witness.is_none());
        for w in cert.windows(2) {
            assert!(w[0].rank > w[1].rank);
        }
    }

    #[test]
    fn rank_lookup_validates_input() {
        let t = rank_table(&clique(3), 3).unwrap();
        assert!(t.rank(&[0]).is_err());
        assert!(t.rank(&[0, 0]).is_err());
        assert!(t.rank(&[0, 9]).is_err());
        // permutation invariance by construction
        assert_eq!(t.rank(&[0, 1]).unwrap(), t.rank(&[1, 0]).unwrap());
    }
}
