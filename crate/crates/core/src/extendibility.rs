//! Direct checker for first-order k-extendibility.
//!
//! A graph is `k`-extendible when it has at least `k` vertices and every
//! proper (k-1)-tuple extends, for every prescribed adjacency pattern, by a
//! fresh vertex realizing exactly that pattern. Because the condition is
//! universally quantified over all tuples (hence all orderings), prescribing
//! adjacency to a subset of an unordered tuple is equivalent to the
//! prefix-shaped patterns of the first-order definition; the checker works in
//! subset form over sorted tuples.

use serde::Serialize;

use crate::{Error, Graph, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ExtendibilityReport {
    pub extendible: bool,
    /// A failing (sorted proper (k-1)-tuple, adjacency subset) pair, if the
    /// failure is witnessed by one (graphs smaller than `k` fail without a
    /// defect).
    pub defect: Option<Defect>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Defect {
    pub tuple: Vec<usize>,
    /// The vertices of `tuple` the fresh vertex had to be adjacent to.
    pub pattern: Vec<usize>,
}

/// Checks k-extendibility, reporting the first defect in deterministic
/// (combination, pattern-mask) order.
pub fn is_k_extendible(g: &Graph, k: usize) -> Result<ExtendibilityReport> {
    if k == 0 {
        return Err(Error::PebbleCountTooSmall { min: 1, got: 0 });
    }
    if g.n() < k {
        return Ok(ExtendibilityReport {
            extendible: false,
            defect: None,
        });
    }
    let arity = k - 1;
    let mut combo: Vec<usize> = (0..arity).collect();
    loop {
        // bucket the fresh candidates by their adjacency mask into the tuple
        let mut seen = vec![false; 1usize << arity];
        let mut seen_count = 0usize;
        for a in g.vertices() {
            if combo.contains(&a) {
                continue;
            }
            let mask: usize = combo
                .iter()
                .enumerate()
                .map(|(i, &v)| (g.adjacent(a, v) as usize) << i)
                .sum();
            if !seen[mask] {
                seen[mask] = true;
                seen_count += 1;
            }
        }
        if seen_count != seen.len() {
            let mask = seen.iter().position(|&s| !s).unwrap();
            return Ok(ExtendibilityReport {
                extendible: false,
                defect: Some(Defect {
                    tuple: combo.clone(),
                    pattern: combo
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                }),
            });
        }
        if !next_combination(&mut combo, g.n()) {
            return Ok(ExtendibilityReport {
                extendible: true,
                defect: None,
            });
        }
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
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

/// Literal prefix-form check, quantified over all ordered tuples and all
/// prefix lengths `1..=k`. Exponentially slower than the subset form; kept as
/// its oracle.
pub fn is_k_extendible_prefix_form(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::PebbleCountTooSmall { min: 1, got: 0 });
    }
    if g.n() < k {
        return Ok(false);
    }
    let arity = k - 1;
    let mut tuple = vec![0usize; arity];
    'tuples: loop {
        let proper = tuple
            .iter()
            .enumerate()
            .all(|(i, v)| !tuple[i + 1..].contains(v));
        if proper {
            for l in 1..=k {
                // fresh vertex adjacent to positions < l, non-adjacent to the rest
                let found = g.vertices().any(|b| {
                    !tuple.contains(&b)
                        && tuple
                            .iter()
                            .enumerate()
                            .all(|(i, &v)| g.adjacent(b, v) == (i + 1 < l))
                });
                if !found {
                    return Ok(false);
                }
            }
        }
        // lexicographic successor
        let mut i = arity;
        loop {
            if i == 0 {
                break 'tuples;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < g.n() {
                break;
            }
            tuple[i] = 0;
        }
    }
    Ok(true)
}

/// A stored, verified k-extendible graph: the 5-cycle for `k = 2` and the
/// quadratic-residue graph on 29 vertices for `k = 3`. No verified instance
/// is maintained for larger `k`.
pub fn reference_extendible(k: usize) -> Result<Graph> {
    match k {
        2 => crate::constructions::cycle(5),
        3 => crate::constructions::paley(29),
        _ => Err(Error::UnsupportedReference(k)),
    }
}
