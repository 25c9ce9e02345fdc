//! Core graph representation: finite simple graphs with dense vertex ids,
//! induced subgraphs, free joins over a shared part, and elementary metrics.

use std::collections::BTreeSet;

use crate::bits::{word_mask, BitMatrix};
use crate::{Error, NatOmega, Result};

/// A finite simple graph on vertices `0..n`.
///
/// Adjacency is stored as per-vertex bit rows, so membership tests are O(1)
/// and neighborhood intersections are word-parallel. The structure is
/// immutable after construction; constructions that want to tag vertices with
/// semantic identities do so through the optional `labels` vector, which when
/// present covers every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: BitMatrix,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Edges are symmetrized; duplicates
    /// are allowed and counted once. Rejects self-loops and out-of-range
    /// endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = BitMatrix::new(n);
        let mut edge_count = 0;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adj.get(u, v) {
                adj.set(u, v);
                adj.set(v, u);
                edge_count += 1;
            }
        }
        Ok(Graph {
            n,
            adj,
            edge_count,
            labels: None,
        })
    }

    /// Attaches labels covering all vertices.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::PartialLabels {
                n: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_count(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter_row(v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.adj.iter_row(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of neighbors of `v` inside the word-packed vertex mask.
    pub(crate) fn degree_into_mask(&self, v: usize, mask: &[u64]) -> usize {
        self.adj.row_intersection_count(v, mask)
    }

    pub(crate) fn mask_of(&self, members: impl IntoIterator<Item = usize>) -> Vec<u64> {
        word_mask(members, self.n)
    }

    /// The subgraph induced by `set`, re-indexed to `0..|set|` in ascending
    /// vertex order. Returns the graph together with the re-index map: entry
    /// `i` of the map is the original id of new vertex `i`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        set.check_range(self.n)?;
        let map: Vec<usize> = set.iter().collect();
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    edges.push((i, j));
                }
            }
        }
        let mut g = Graph::new(map.len(), &edges)?;
        if let Some(labels) = &self.labels {
            g = g.with_labels(map.iter().map(|&v| labels[v].clone()).collect())?;
        }
        Ok((g, map))
    }

    /// Number of edges of the subgraph induced by `set`, without building it.
    pub fn induced_edge_count(&self, set: &VertexSet) -> usize {
        let mask = self.mask_of(set.iter());
        set.iter()
            .map(|v| self.degree_into_mask(v, &mask))
            .sum::<usize>()
            / 2
    }

    /// Maximum over vertex pairs of the shortest-path distance; `Omega` if
    /// the graph is disconnected. Graphs with at most one vertex have
    /// diameter 0.
    pub fn diameter(&self) -> NatOmega {
        if self.n <= 1 {
            return NatOmega::Finite(0);
        }
        let mut best = 0u64;
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for src in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[src] = 0;
            queue.clear();
            queue.push_back(src);
            let mut seen = 1;
            let mut far = 0;
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        far = far.max(dist[v]);
                        seen += 1;
                        queue.push_back(v);
                    }
                }
            }
            if seen < self.n {
                return NatOmega::Omega;
            }
            best = best.max(far as u64);
        }
        NatOmega::Finite(best)
    }
}

/// A subset of the vertices of an associated graph, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        if let Some(&max) = self.0.iter().next_back() {
            if max >= n {
                return Err(Error::VertexOutOfRange { vertex: max, n });
            }
        }
        Ok(())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// Identification of vertices of two graphs along a shared substructure.
///
/// `pairs` lists `(a_vertex, b_vertex)` identifications; both coordinates
/// must be injective. Whether the identified vertices induce identical
/// subgraphs is checked by [`is_compatible`].
#[derive(Debug, Clone, Default)]
pub struct OverlapSpec {
    pairs: Vec<(usize, usize)>,
}

impl OverlapSpec {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut a_seen = BTreeSet::new();
        let mut b_seen = BTreeSet::new();
        for &(a, b) in &pairs {
            if !a_seen.insert(a) {
                return Err(Error::OverlapNotInjective {
                    side: "a",
                    vertex: a,
                });
            }
            if !b_seen.insert(b) {
                return Err(Error::OverlapNotInjective {
                    side: "b",
                    vertex: b,
                });
            }
        }
        Ok(OverlapSpec { pairs })
    }

    pub fn empty() -> Self {
        OverlapSpec { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// True iff the overlap-identified vertices induce identical subgraphs on
/// both sides: for all identified `(a,a')`, `(b,b')`, `a ~_A b` iff `a' ~_B b'`.
pub fn is_compatible(a: &Graph, b: &Graph, ov: &OverlapSpec) -> Result<bool> {
    for &(va, vb) in ov.pairs() {
        if va >= a.n() {
            return Err(Error::VertexOutOfRange {
                vertex: va,
                n: a.n(),
            });
        }
        if vb >= b.n() {
            return Err(Error::VertexOutOfRange {
                vertex: vb,
                n: b.n(),
            });
        }
    }
    for (i, &(a1, b1)) in ov.pairs().iter().enumerate() {
        for &(a2, b2) in &ov.pairs()[i + 1..] {
            if a.adjacent(a1, a2) != b.adjacent(b1, b2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The free join of `a` and `b` over the overlap: vertex set is `a` plus the
/// non-identified vertices of `b`, edges are those of both sides under the
/// identification, and no edges are added between the private parts.
///
/// Vertices of `a` keep their ids; private vertices of `b` follow in
/// ascending `b`-id order. Labels are kept only when both inputs carry them
/// (overlap vertices take the `a`-side label).
pub fn free_join(a: &Graph, b: &Graph, ov: &OverlapSpec) -> Result<Graph> {
    if !is_compatible(a, b, ov)? {
        return Err(Error::IncompatibleOverlap);
    }
    let mut b_to_joined = vec![usize::MAX; b.n()];
    for &(va, vb) in ov.pairs() {
        b_to_joined[vb] = va;
    }
    let mut next = a.n();
    for slot in b_to_joined.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = a.edges();
    for (ub, vb) in b.edges() {
        edges.push((b_to_joined[ub], b_to_joined[vb]));
    }
    let g = Graph::new(next, &edges)?;
    match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => {
            let mut labels = la.to_vec();
            labels.resize(next, String::new());
            for vb in 0..b.n() {
                let j = b_to_joined[vb];
                if j >= a.n() {
                    labels[j] = lb[vb].clone();
                }
            }
            g.with_labels(labels)
        }
        _ => Ok(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> Graph {
        Graph::new(
            n,
            &(0..n.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    pub(crate) fn clique(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn new_graph_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert!(p3.adjacent(0, 1) && p3.adjacent(1, 0));
        assert!(!p3.adjacent(0, 2));

        let single = Graph::new(1, &[]).unwrap();
        assert_eq!(single.edge_count(), 0);

        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::new(2, &[(0, 5)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn duplicate_edges_counted_once() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k2, map) = clique(3)
            .induced_subgraph(&VertexSet::from_iter([0, 1]))
            .unwrap();
        assert_eq!(k2.n(), 2);
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(map, vec![0, 1]);

        let (iso, map) = path(3)
            .induced_subgraph(&VertexSet::from_iter([0, 2]))
            .unwrap();
        assert_eq!(iso.n(), 2);
        assert_eq!(iso.edge_count(), 0);
        assert_eq!(map, vec![0, 2]);
    }

    #[test]
    fn induced_on_all_vertices_is_identity() {
        let g = cycle(6);
        let (h, map) = g.induced_subgraph(&VertexSet::from_iter(0..6)).unwrap();
        assert_eq!(map, (0..6).collect::<Vec<_>>());
        assert_eq!(h.edges(), g.edges());
    }

    #[test]
    fn compatibility_examples() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let ov = OverlapSpec::new(vec![(1, 0)]).unwrap();
        assert!(is_compatible(&e, &e, &ov).unwrap());

        let k2 = clique(2);
        let empty2 = Graph::new(2, &[]).unwrap();
        let both = OverlapSpec::new(vec![(0, 0), (1, 1)]).unwrap();
        assert!(!is_compatible(&k2, &empty2, &both).unwrap());

        let tri = clique(3);
        let edge_ov = OverlapSpec::new(vec![(0, 0), (1, 1)]).unwrap();
        assert!(is_compatible(&tri, &tri, &edge_ov).unwrap());
    }

    #[test]
    fn overlap_injectivity_enforced() {
        assert!(OverlapSpec::new(vec![(0, 1), (0, 2)]).is_err());
        assert!(OverlapSpec::new(vec![(0, 1), (2, 1)]).is_err());
    }

    #[test]
    fn free_join_examples() {
        // two edges glued end to end give a path of length 2
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let ov = OverlapSpec::new(vec![(1, 0)]).unwrap();
        let j = free_join(&e, &e, &ov).unwrap();
        assert_eq!((j.n(), j.edge_count()), (3, 2));
        assert_eq!(j.diameter(), NatOmega::Finite(2));

        // two triangles sharing an edge: the 4-vertex, 5-edge book
        let tri = clique(3);
        let ov = OverlapSpec::new(vec![(0, 0), (1, 1)]).unwrap();
        let book = free_join(&tri, &tri, &ov).unwrap();
        assert_eq!((book.n(), book.edge_count()), (4, 5));

        // empty overlap is disjoint union
        let j = free_join(&tri, &tri, &OverlapSpec::empty()).unwrap();
        assert_eq!((j.n(), j.edge_count()), (6, 6));
        assert_eq!(j.diameter(), NatOmega::Omega);

        // incompatible inputs are rejected
        let k2 = clique(2);
        let empty2 = Graph::new(2, &[]).unwrap();
        let both = OverlapSpec::new(vec![(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            free_join(&k2, &empty2, &both),
            Err(Error::IncompatibleOverlap)
        ));
    }

    #[test]
    fn free_join_edge_count_formula() {
        // |E(J)| = |E(A)| + |E(B)| - |E(C)| with C the overlap-induced subgraph
        let a = cycle(5);
        let b = clique(4);
        // identify a path 0-1-2 of the cycle with the path 0-1-2 in... K4 has
        // all edges, cycle path has only consecutive ones; use a compatible
        // overlap instead: a cycle edge onto a clique edge.
        let ov = OverlapSpec::new(vec![(0, 0), (1, 1)]).unwrap();
        let j = free_join(&a, &b, &ov).unwrap();
        let c_edges = 1; // the identified pair is an edge on both sides
        assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() - c_edges);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(cycle(6).diameter(), NatOmega::Finite(3));
        assert_eq!(Graph::new(2, &[]).unwrap().diameter(), NatOmega::Omega);
        assert_eq!(clique(5).diameter(), NatOmega::Finite(1));
        assert_eq!(Graph::new(1, &[]).unwrap().diameter(), NatOmega::Finite(0));
        assert_eq!(Graph::new(0, &[]).unwrap().diameter(), NatOmega::Finite(0));
    }

    #[test]
    fn edge_count_and_degree_examples() {
        assert_eq!(clique(4).edge_count(), 6);
        assert_eq!(Graph::new(5, &[]).unwrap().edge_count(), 0);
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree(0), 3);
        assert_eq!(star.degree(1), 1);
    }

    #[test]
    fn labels_cover_all_vertices() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(g.clone().with_labels(vec!["a".into()]).is_err());
        let g = g.with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(g.label(1), Some("b"));
        let (h, _) = g.induced_subgraph(&VertexSet::from_iter([1])).unwrap();
        assert_eq!(h.label(0), Some("b"));
    }
}
