//! Exact solver for the one-sided existential k-pebble game from a source
//! graph `A` to a target graph `B`.
//!
//! Each round the Spoiler picks one of `k` pebbles (in play or not) and puts
//! it on a vertex of `A`; the Duplicator answers on `B`. The Spoiler wins as
//! soon as the pebbled map fails to be a partial isomorphism. The solver
//! decides the `n`-round and the eternal game.
//!
//! Positions are stored as partial isomorphisms (sets of pebbled pairs with
//! distinct sources, at most `k` of them); pebble indices and duplicated
//! pebbles are quotiented away, which is sound because survival is closed
//! under dropping pairs. Two engines share the position space:
//!
//! * a literal backward-induction sweep, used for bounded-round queries and
//!   as an oracle;
//! * a support-counting deletion cascade for the eternal game (the greatest
//!   fixed point), which exploits two structural facts: a position dies as
//!   soon as any of its sub-positions dies (the Spoiler re-pebbles a vertex
//!   that is still pebbled elsewhere, forcing the answer into the
//!   sub-position), and otherwise dies exactly when some (sub-position,
//!   source-vertex) extension pool runs dry.

use std::collections::HashMap;

use serde::Serialize;

use crate::{Error, Graph, NatOmega, Result};

/// Hard cap on stored game positions, to fail loudly instead of thrashing.
pub const MAX_GAME_POSITIONS: usize = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Player {
    Duplicator,
    Spoiler,
}

/// Outcome of a game query.
///
/// For an eternal query, `rounds_bound` is `Omega` when the Duplicator wins
/// and otherwise the least `n` such that the Spoiler wins the `n`-round game.
/// For an `n`-round query won by the Duplicator it is `Omega` when the
/// verdict already stabilized (the Duplicator wins eternally) and `n`
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GameVerdict {
    pub winner: Player,
    pub rounds_bound: NatOmega,
}

/// A pebble position: `k` slots, each empty or holding a (source, target)
/// vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PebblePosition {
    slots: Vec<Option<(usize, usize)>>,
}

impl PebblePosition {
    pub fn new(slots: Vec<Option<(usize, usize)>>) -> Self {
        PebblePosition { slots }
    }

    pub fn k(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<(usize, usize)>] {
        &self.slots
    }
}

/// Whether the map induced by the occupied slots is well defined (equal
/// sources map to equal targets) and a partial isomorphism (injective and
/// adjacency-preserving in both directions).
///
/// Panics if a slot references a vertex outside `a` or `b`.
pub fn is_partial_isomorphism(pos: &PebblePosition, a: &Graph, b: &Graph) -> bool {
    let occupied: Vec<(usize, usize)> = pos.slots.iter().flatten().copied().collect();
    for &(x, y) in &occupied {
        assert!(
            x < a.n() && y < b.n(),
            "pebble ({x},{y}) out of range for |A|={}, |B|={}",
            a.n(),
            b.n()
        );
    }
    for (i, &(a1, b1)) in occupied.iter().enumerate() {
        for &(a2, b2) in &occupied[i + 1..] {
            if (a1 == a2) != (b1 == b2) {
                return false;
            }
            if a.adjacent(a1, a2) != b.adjacent(b1, b2) {
                return false;
            }
        }
    }
    true
}

/// Decides the game from `a` to `b` with `k` pebbles, for `rounds` rounds
/// (`Omega` = the eternal game). Pure and deterministic.
pub fn duplicator_wins(a: &Graph, b: &Graph, k: usize, rounds: NatOmega) -> Result<GameVerdict> {
    if k == 0 {
        return Err(Error::PebbleCountTooSmall { min: 1, got: 0 });
    }
    if a.n() > u16::MAX as usize || b.n() > u16::MAX as usize {
        return Err(Error::BudgetExceeded {
            what: "game graph size",
            got: a.n().max(b.n()),
            budget: u16::MAX as usize,
        });
    }
    let space = PositionSpace::build(a, b, k)?;
    match rounds {
        NatOmega::Omega => Ok(space.solve_eternal()),
        NatOmega::Finite(n) => Ok(space.solve_rounds(n)),
    }
}

/// `A ≼^k B`: the Duplicator wins the eternal game from `a` to `b`.
pub fn preceq(a: &Graph, b: &Graph, k: usize) -> Result<bool> {
    Ok(duplicator_wins(a, b, k, NatOmega::Omega)?.winner == Player::Duplicator)
}

/// All legal positions of the game, layered by size, with the incidence
/// structure the two engines need.
struct PositionSpace<'g> {
    a: &'g Graph,
    b: &'g Graph,
    k: usize,
    a_n: usize,
    b_n: usize,
    /// Pair data, stride `2k`: sorted by source vertex.
    pairs: Vec<u16>,
    sizes: Vec<u8>,
    /// Parent ids, stride `k`: entry `j` is the position minus its `j`-th pair.
    parents: Vec<u32>,
    /// Children in CSR form.
    child_offsets: Vec<u32>,
    child_data: Vec<u32>,
    /// Extension pool sizes, stride `a_n`, for positions of size < k:
    /// `sup[h][x]` = number of legal extensions of `h` pebbling source `x`.
    /// `u32::MAX` marks sources already pebbled in `h`.
    sup_offsets: Vec<u32>,
    sup: Vec<u32>,
    index: HashMap<Box<[u16]>, u32>,
}

const EMPTY_ID: u32 = 0;
const NO_SUP: u32 = u32::MAX;

impl<'g> PositionSpace<'g> {
    fn build(a: &'g Graph, b: &'g Graph, k: usize) -> Result<Self> {
        let mut space = PositionSpace {
            a,
            b,
            k,
            a_n: a.n(),
            b_n: b.n(),
            pairs: Vec::new(),
            sizes: Vec::new(),
            parents: Vec::new(),
            child_offsets: Vec::new(),
            child_data: Vec::new(),
            sup_offsets: Vec::new(),
            sup: Vec::new(),
            index: HashMap::new(),
        };
        space.intern(&[]);
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut layer_start = 0usize;
        for size in 0..k {
            let layer_end = space.sizes.len();
            if layer_start == layer_end {
                break;
            }
            for h in layer_start as u32..layer_end as u32 {
                debug_assert_eq!(space.sizes[h as usize] as usize, size);
                space.extend_all(h, &mut edges)?;
            }
            layer_start = layer_end;
        }
        space.build_children(&mut edges);
        Ok(space)
    }

    fn pairs_of(&self, id: u32) -> &[u16] {
        let s = self.sizes[id as usize] as usize;
        let base = id as usize * 2 * self.k;
        &self.pairs[base..base + 2 * s]
    }

    fn source_pebbled(&self, id: u32, x: u16) -> Option<u16> {
        let ps = self.pairs_of(id);
        ps.chunks_exact(2).find(|c| c[0] == x).map(|c| c[1])
    }

    fn intern(&mut self, sorted_pairs: &[u16]) -> u32 {
        if let Some(&id) = self.index.get(sorted_pairs) {
            return id;
        }
        let id = self.sizes.len() as u32;
        self.sizes.push((sorted_pairs.len() / 2) as u8);
        let base = self.pairs.len();
        self.pairs.resize(base + 2 * self.k, 0);
        self.pairs[base..base + sorted_pairs.len()].copy_from_slice(sorted_pairs);
        self.parents.resize(self.parents.len() + self.k, u32::MAX);
        if (sorted_pairs.len() / 2) < self.k {
            self.sup_offsets
                .push((self.sup.len() / self.a_n.max(1)) as u32);
            self.sup.resize(self.sup.len() + self.a_n, 0);
        } else {
            self.sup_offsets.push(NO_SUP);
        }
        self.index.insert(sorted_pairs.into(), id);
        id
    }

    /// Enumerates every legal one-pair extension of `h`, recording extension
    /// pool sizes, parent links, and parent->child edges.
    fn extend_all(&mut self, h: u32, edges: &mut Vec<(u32, u32)>) -> Result<()> {
        let h_pairs: Vec<u16> = self.pairs_of(h).to_vec();
        let size = h_pairs.len() / 2;
        let mut buf = vec![0u16; 2 * (size + 1)];
        for x in 0..self.a_n as u16 {
            let sup_slot = self.sup_offsets[h as usize] as usize * self.a_n + x as usize;
            if h_pairs.chunks_exact(2).any(|c| c[0] == x) {
                self.sup[sup_slot] = NO_SUP;
                continue;
            }
            let mut count = 0u32;
            'target: for y in 0..self.b_n as u16 {
                for c in h_pairs.chunks_exact(2) {
                    let (px, py) = (c[0], c[1]);
                    if py == y {
                        continue 'target; // target already used
                    }
                    if self.a.adjacent(px as usize, x as usize)
                        != self.b.adjacent(py as usize, y as usize)
                    {
                        continue 'target;
                    }
                }
                count += 1;
                // canonical child: insert (x, y) keeping sources sorted
                let mut at = 0;
                while at < size && h_pairs[2 * at] < x {
                    at += 1;
                }
                buf[..2 * at].copy_from_slice(&h_pairs[..2 * at]);
                buf[2 * at] = x;
                buf[2 * at + 1] = y;
                buf[2 * at + 2..].copy_from_slice(&h_pairs[2 * at..]);
                if self.sizes.len() >= MAX_GAME_POSITIONS {
                    return Err(Error::BudgetExceeded {
                        what: "game position count",
                        got: self.sizes.len(),
                        budget: MAX_GAME_POSITIONS,
                    });
                }
                let child = self.intern(&buf);
                self.parents[child as usize * self.k + at] = h;
                edges.push((h, child));
            }
            self.sup[sup_slot] = count;
        }
        Ok(())
    }

    fn build_children(&mut self, edges: &mut Vec<(u32, u32)>) {
        let n = self.sizes.len();
        let mut counts = vec![0u32; n + 1];
        for &(p, _) in edges.iter() {
            counts[p as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        self.child_offsets = counts;
        self.child_data = vec![0; edges.len()];
        let mut fill = self.child_offsets.clone();
        for &(p, c) in edges.iter() {
            self.child_data[fill[p as usize] as usize] = c;
            fill[p as usize] += 1;
        }
        edges.clear();
    }

    fn children(&self, id: u32) -> &[u32] {
        &self.child_data
            [self.child_offsets[id as usize] as usize..self.child_offsets[id as usize + 1] as usize]
    }

    fn sup_at(&self, id: u32, x: usize) -> u32 {
        debug_assert_ne!(self.sup_offsets[id as usize], NO_SUP);
        self.sup[self.sup_offsets[id as usize] as usize * self.a_n + x]
    }

    /// True iff `id` has an unanswerable challenge against the initial
    /// all-legal field: some unpebbled source with an empty extension pool,
    /// on the position itself (fresh pebble) or on any of its sub-positions
    /// (moved pebble).
    fn initially_dead(&self, id: u32) -> bool {
        let check_zero = |h: u32| -> bool {
            if self.sup_offsets[h as usize] == NO_SUP {
                return false;
            }
            (0..self.a_n).any(|x| self.sup_at(h, x) == 0)
        };
        if check_zero(id) {
            return true;
        }
        let size = self.sizes[id as usize] as usize;
        (0..size).any(|j| check_zero(self.parents[id as usize * self.k + j]))
    }

    /// Greatest-fixed-point deletion with exact death levels. Returns the
    /// verdict for the empty position.
    fn solve_eternal(&self) -> GameVerdict {
        let n = self.sizes.len();
        let mut alive = vec![true; n];
        let mut sup = self.sup.clone();
        let mut queue = std::collections::VecDeque::new();
        let kill = |alive: &mut Vec<bool>,
                    queue: &mut std::collections::VecDeque<(u32, u32)>,
                    id: u32,
                    level: u32| {
            if alive[id as usize] {
                alive[id as usize] = false;
                queue.push_back((id, level));
            }
        };
        for id in 0..n as u32 {
            if self.initially_dead(id) {
                kill(&mut alive, &mut queue, id, 0);
            }
        }
        while let Some((g, level)) = queue.pop_front() {
            if g == EMPTY_ID {
                return GameVerdict {
                    winner: Player::Spoiler,
                    rounds_bound: NatOmega::Finite(level as u64 + 1),
                };
            }
            for &c in self.children(g) {
                kill(&mut alive, &mut queue, c, level + 1);
            }
            let size = self.sizes[g as usize] as usize;
            for j in 0..size {
                let h = self.parents[g as usize * self.k + j];
                if !alive[h as usize] {
                    continue;
                }
                let x = self.pairs_of(g)[2 * j] as usize;
                let slot = self.sup_offsets[h as usize] as usize * self.a_n + x;
                debug_assert_ne!(sup[slot], NO_SUP);
                debug_assert_ne!(sup[slot], 0);
                sup[slot] -= 1;
                if sup[slot] == 0 {
                    // the fresh challenge on h and the moved-pebble challenge
                    // on each child of h lose their last answer together
                    kill(&mut alive, &mut queue, h, level + 1);
                    for &c in self.children(h) {
                        kill(&mut alive, &mut queue, c, level + 1);
                    }
                }
            }
        }
        GameVerdict {
            winner: Player::Duplicator,
            rounds_bound: NatOmega::Omega,
        }
    }

    /// Literal backward induction: `S_0` = all legal positions, `S_{m+1}` =
    /// positions whose every challenge has an answer inside `S_m`. Runs until
    /// round `n` or stabilization, whichever comes first.
    fn solve_rounds(&self, n: u64) -> GameVerdict {
        let count = self.sizes.len();
        let mut alive = vec![true; count];
        let mut round = 0u64;
        while round < n {
            let next: Vec<bool> = (0..count as u32)
                .map(|id| alive[id as usize] && !self.fails(id, &alive))
                .collect();
            round += 1;
            let stable = next == alive;
            let empty_dead = !next[EMPTY_ID as usize];
            alive = next;
            if empty_dead {
                return GameVerdict {
                    winner: Player::Spoiler,
                    rounds_bound: NatOmega::Finite(round),
                };
            }
            if stable {
                return GameVerdict {
                    winner: Player::Duplicator,
                    rounds_bound: NatOmega::Omega,
                };
            }
        }
        GameVerdict {
            winner: Player::Duplicator,
            rounds_bound: NatOmega::Finite(n),
        }
    }

    /// Full challenge check of position `id` against the `alive` field.
    fn fails(&self, id: u32, alive: &[bool]) -> bool {
        let size = self.sizes[id as usize] as usize;
        let pairs = self.pairs_of(id).to_vec();
        for x in 0..self.a_n as u16 {
            // fresh pebble (only if a slot is free; placing on a pebbled
            // source forces the answer onto the position itself)
            if size < self.k
                && self.source_pebbled(id, x).is_none()
                && !self.has_alive_extension(&pairs, x, alive)
            {
                return true;
            }
            // move the pebble from pair j and place it on x
            for j in 0..size {
                let h = self.parents[id as usize * self.k + j];
                let h_pairs: Vec<u16> = self.pairs_of(h).to_vec();
                let answered = match self.source_pebbled(h, x) {
                    // x still pebbled in the sub-position: forced answer
                    Some(_) => alive[h as usize],
                    None => self.has_alive_extension(&h_pairs, x, alive),
                };
                if !answered {
                    return true;
                }
            }
        }
        false
    }

    fn has_alive_extension(&self, h_pairs: &[u16], x: u16, alive: &[bool]) -> bool {
        let size = h_pairs.len() / 2;
        let mut buf = vec![0u16; 2 * (size + 1)];
        'target: for y in 0..self.b_n as u16 {
            for c in h_pairs.chunks_exact(2) {
                if c[1] == y {
                    continue 'target;
                }
                if self.a.adjacent(c[0] as usize, x as usize)
                    != self.b.adjacent(c[1] as usize, y as usize)
                {
                    continue 'target;
                }
            }
            let mut at = 0;
            while at < size && h_pairs[2 * at] < x {
                at += 1;
            }
            buf[..2 * at].copy_from_slice(&h_pairs[..2 * at]);
            buf[2 * at] = x;
            buf[2 * at + 1] = y;
            buf[2 * at + 2..].copy_from_slice(&h_pairs[2 * at..]);
            if let Some(&gid) = self.index.get(buf.as_slice()) {
                if alive[gid as usize] {
                    return true;
                }
            }
        }
        false
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

    fn path(n: usize) -> Graph {
        Graph::new(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn partial_isomorphism_examples() {
        let k2 = clique(2);
        let iso2 = Graph::new(2, &[]).unwrap();
        let pos = PebblePosition::new(vec![Some((0, 0)), Some((1, 1))]);
        assert!(is_partial_isomorphism(&pos, &k2, &k2));
        assert!(!is_partial_isomorphism(&pos, &k2, &iso2));
        let clash = PebblePosition::new(vec![Some((0, 0)), Some((0, 1))]);
        assert!(!is_partial_isomorphism(&clash, &k2, &k2));
        let empty = PebblePosition::new(vec![None, None]);
        assert!(is_partial_isomorphism(&empty, &k2, &k2));
    }

    #[test]
    fn single_vertex_source_always_loses_for_spoiler() {
        let one = Graph::new(1, &[]).unwrap();
        for target in [clique(3), path(4), Graph::new(1, &[]).unwrap()] {
            let v = duplicator_wins(&one, &target, 2, NatOmega::Omega).unwrap();
            assert_eq!(v.winner, Player::Duplicator);
            assert_eq!(v.rounds_bound, NatOmega::Omega);
        }
    }

    #[test]
    fn spoiler_pebbles_a_triangle_against_a_path() {
        let v = duplicator_wins(&clique(3), &path(3), 3, NatOmega::Omega).unwrap();
        assert_eq!(v.winner, Player::Spoiler);
        // three placements are needed and suffice
        assert_eq!(v.rounds_bound, NatOmega::Finite(3));
        // ...so the duplicator still wins the 2-round game
        let v2 = duplicator_wins(&clique(3), &path(3), 3, NatOmega::Finite(2)).unwrap();
        assert_eq!(v2.winner, Player::Duplicator);
        let v3 = duplicator_wins(&clique(3), &path(3), 3, NatOmega::Finite(3)).unwrap();
        assert_eq!(v3.winner, Player::Spoiler);
        assert_eq!(v3.rounds_bound, NatOmega::Finite(3));
    }

    #[test]
    fn k4_to_k3_is_won_by_duplicator() {
        let v = duplicator_wins(&clique(4), &clique(3), 3, NatOmega::Omega).unwrap();
        assert_eq!(v.winner, Player::Duplicator);
    }

    #[test]
    fn preceq_examples() {
        assert!(preceq(&clique(2), &clique(3), 2).unwrap());
        assert!(!preceq(&clique(3), &clique(2), 3).unwrap());
        for g in [clique(4), path(5)] {
            for k in 1..=3 {
                assert!(preceq(&g, &g, k).unwrap(), "identity strategy, k={k}");
            }
        }
    }

    #[test]
    fn empty_graphs() {
        let none = Graph::new(0, &[]).unwrap();
        let some = clique(2);
        // no spoiler move exists
        assert!(preceq(&none, &some, 2).unwrap());
        assert!(preceq(&none, &none, 2).unwrap());
        // spoiler places anywhere, duplicator has no answer
        let v = duplicator_wins(&some, &none, 2, NatOmega::Omega).unwrap();
        assert_eq!(v.winner, Player::Spoiler);
        assert_eq!(v.rounds_bound, NatOmega::Finite(1));
    }

    #[test]
    fn zero_pebbles_is_an_error() {
        assert!(matches!(
            duplicator_wins(&clique(2), &clique(2), 0, NatOmega::Omega),
            Err(Error::PebbleCountTooSmall { .. })
        ));
    }

    #[test]
    fn cascade_and_sweep_agree_on_seeded_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let na = rng.gen_range(1..=6);
            let nb = rng.gen_range(0..=6);
            let pa = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
            let pb = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
            let a = crate::sparse::sample_gnp(na, pa, rng.gen()).unwrap();
            let b = crate::sparse::sample_gnp(nb, pb, rng.gen()).unwrap();
            for k in 1..=3 {
                let eternal = duplicator_wins(&a, &b, k, NatOmega::Omega).unwrap();
                let swept = duplicator_wins(&a, &b, k, NatOmega::Finite(10_000)).unwrap();
                assert_eq!(eternal, swept, "na={na} nb={nb} k={k}");
            }
        }
    }

    #[test]
    fn round_monotonicity_on_seeded_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = crate::sparse::sample_gnp(rng.gen_range(1..=5), 0.5, rng.gen()).unwrap();
            let b = crate::sparse::sample_gnp(rng.gen_range(1..=5), 0.5, rng.gen()).unwrap();
            let mut prev = true;
            for n in 0..=8u64 {
                let w = duplicator_wins(&a, &b, 2, NatOmega::Finite(n))
                    .unwrap()
                    .winner
                    == Player::Duplicator;
                // winning n+1 rounds implies winning n rounds
                assert!(prev || !w);
                prev = w;
            }
        }
    }
}
