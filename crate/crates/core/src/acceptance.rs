//! End-to-end acceptance suite: every headline property the artifact must
//! exhibit, as reproducible pass/fail checks with deterministic payloads.
//!
//! Each criterion returns its verdict plus a JSON payload that is a pure
//! function of the built-in seeds; the final criterion re-runs the whole
//! suite and demands byte-identical payloads, so any hidden nondeterminism
//! fails loudly. The `kuniv acceptance` subcommand and the `acceptance`
//! integration test both drive [`run_suite`].

use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{coloring_number, coloring_number_brute_force};
use crate::extendibility::{is_k_extendible, reference_extendible};
use crate::game::preceq;
use crate::rational::{admissible_alpha_between, ExactRational};
use crate::sparse::{
    classify_pair, closure, closure_brute_force, is_safe, sample_gnp, sample_sparse, PairClass,
    DEFAULT_ENUM_BUDGET,
};
use crate::universality::is_k_universal;
use crate::{constructions, Graph, Result, VertexSet};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Deterministic result payload (no timings).
    pub details: Value,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

impl SuiteResult {
    /// One `PASS`/`FAIL` line per criterion.
    pub fn table(&self) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            s.push_str(&format!(
                "[{}] criterion {:>2} {:<38} ({} ms)\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.millis
            ));
        }
        s
    }
}

fn timed(
    id: usize,
    name: &'static str,
    run: impl FnOnce() -> Result<(bool, Value)>,
) -> CriterionResult {
    let start = std::time::Instant::now();
    let (passed, details) = match run() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    CriterionResult {
        id,
        name,
        passed,
        details,
        millis: start.elapsed().as_millis(),
    }
}

/// Runs criteria 1 through 11 in order.
pub fn run_core_criteria() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ]
}

/// Runs the full suite including the determinism re-run.
pub fn run_suite() -> SuiteResult {
    let mut criteria = run_core_criteria();
    criteria.push(criterion_12(&criteria));
    let all_passed = criteria.iter().all(|c| c.passed);
    SuiteResult {
        criteria,
        all_passed,
    }
}

/// The 64-vertex 4-part construction is 4-universal.
pub fn criterion_1() -> CriterionResult {
    timed(1, "theorem3 graph is 4-universal", || {
        let g = constructions::theorem3_graph(4)?;
        let rep = is_k_universal(&g, 4)?;
        Ok((
            rep.universal,
            json!({
                "n": g.n(),
                "universal": rep.universal,
                "witness": rep.witness,
                "iterations": rep.iterations,
            }),
        ))
    })
}

/// Same-part pairs of the construction are refuted by their clique formula,
/// exhaustively over all parts and ordered pairs.
pub fn criterion_2() -> CriterionResult {
    timed(2, "theorem3 same-part pairs refuted", || {
        let rep = constructions::verify_theorem3_pairs(4)?;
        Ok((
            rep.violations.is_empty() && rep.satisfiability_failures == 0,
            json!({
                "pairs_checked": rep.pairs_checked,
                "violations": rep.violations.len(),
                "satisfiability_failures": rep.satisfiability_failures,
            }),
        ))
    })
}

/// No sampled induced subgraph of the construction (5 or more vertices) is
/// 4-extendible.
pub fn criterion_3() -> CriterionResult {
    timed(3, "theorem3 subgraphs not 4-extendible", || {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let g = constructions::theorem3_graph(4)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC3);
        let mut failures = 0usize;
        let trials = 200usize;
        for _ in 0..trials {
            let size = rng.gen_range(5..=g.n());
            let mut ids: Vec<usize> = (0..g.n()).collect();
            ids.shuffle(&mut rng);
            ids.truncate(size);
            let (h, _) = g.induced_subgraph(&VertexSet::from_iter(ids))?;
            if is_k_extendible(&h, 4)?.extendible {
                failures += 1;
            }
        }
        Ok((
            failures == 0,
            json!({ "trials": trials, "extendible_subgraphs_found": failures }),
        ))
    })
}

/// The rank decider agrees with the pebble-game oracle through the reference
/// extendible graphs, for k = 2 and k = 3, on 50 seeded random graphs each.
pub fn criterion_4() -> CriterionResult {
    timed(4, "rank decider == game oracle (k=2,3)", || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC4);
        let mut agreements = [0usize; 2];
        let mut universal_counts = [0usize; 2];
        let trials = 50usize;
        for i in 0..trials {
            let n = 4 + (i % 9); // 4..=12
            let p = [0.2, 0.5, 0.8][i % 3];
            let g = sample_gnp(n, p, rng.gen())?;
            for (slot, k) in [(0usize, 2usize), (1, 3)] {
                let decided = is_k_universal(&g, k)?.universal;
                let oracle = preceq(&reference_extendible(k)?, &g, k)?;
                if decided == oracle {
                    agreements[slot] += 1;
                }
                if decided {
                    universal_counts[slot] += 1;
                }
            }
        }
        Ok((
            agreements == [trials; 2],
            json!({
                "trials": trials,
                "agreement_k2": agreements[0],
                "agreement_k3": agreements[1],
                "universal_seen_k2": universal_counts[0],
                "universal_seen_k3": universal_counts[1],
            }),
        ))
    })
}

/// The reference extendible graphs are extendible and universal.
pub fn criterion_5() -> CriterionResult {
    timed(5, "extendible implies universal, references", || {
        let c5 = constructions::cycle(5)?;
        let paley = constructions::paley(29)?;
        let e2 = is_k_extendible(&c5, 2)?.extendible;
        let e3 = is_k_extendible(&paley, 3)?.extendible;
        let u2 = is_k_universal(&c5, 2)?.universal;
        let u3 = is_k_universal(&paley, 3)?.universal;
        Ok((
            e2 && e3 && u2 && u3,
            json!({
                "c5_2_extendible": e2,
                "c5_2_universal": u2,
                "paley29_3_extendible": e3,
                "paley29_3_universal": u3,
            }),
        ))
    })
}

/// Forests have coloring number below the 4-pebble threshold and are never
/// 4-universal.
pub fn criterion_6() -> CriterionResult {
    timed(6, "coloring bound on random forests (k=4)", || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC6);
        let trials = 100usize;
        let mut ok = 0usize;
        for _ in 0..trials {
            let n = rng.gen_range(1..=10);
            let g = constructions::random_forest(n, 0.7, rng.gen())?;
            let (col, _) = coloring_number(&g);
            let universal = is_k_universal(&g, 4)?.universal;
            if col <= 2 && 2 < (1 << (4 - 2)) && !universal {
                ok += 1;
            }
        }
        Ok((ok == trials, json!({ "trials": trials, "ok": ok })))
    })
}

/// Greedy peeling attains the brute-force minimum over all orderings, on
/// every graph with up to 6 vertices and 100 random 8-vertex graphs.
pub fn criterion_7() -> CriterionResult {
    timed(7, "coloring number greedy == brute force", || {
        use rand::{Rng, SeedableRng};
        let mut checked = 0usize;
        let mut mismatches = 0usize;
        for n in 0..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1u32 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &edges)?;
                checked += 1;
                if coloring_number(&g).0 != coloring_number_brute_force(&g) {
                    mismatches += 1;
                }
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC7);
        for _ in 0..100 {
            let g = sample_gnp(8, rng.gen_range(0.2..0.8), rng.gen())?;
            checked += 1;
            if coloring_number(&g).0 != coloring_number_brute_force(&g) {
                mismatches += 1;
            }
        }
        Ok((
            mismatches == 0,
            json!({ "graphs_checked": checked, "mismatches": mismatches }),
        ))
    })
}

/// The frontier-pruned closure matches the full-rescan fixed point, and is
/// monotone, inflationary, and idempotent, on 100 seeded instances.
pub fn criterion_8() -> CriterionResult {
    timed(8, "closure == brute force + lattice laws", || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC8);
        let alpha = admissible_alpha_between(
            &"1/5".parse::<ExactRational>()?,
            &"4/5".parse::<ExactRational>()?,
            8,
        )?;
        let trials = 100usize;
        let mut ok = 0usize;
        for _ in 0..trials {
            let n = rng.gen_range(3..=8);
            let g = sample_gnp(n, rng.gen_range(0.2..0.9), rng.gen())?;
            let l = rng.gen_range(0..=4);
            let a: VertexSet = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
            let mut a_prime = a.clone();
            a_prime.insert(rng.gen_range(0..n));

            let fast = closure(&g, &a, l, &alpha)?;
            let slow = closure_brute_force(&g, &a, l, &alpha)?;
            let cl_a: VertexSet = fast.closure.iter().copied().collect();
            let cl_bigger = closure(&g, &a_prime, l, &alpha)?;
            let cl_again = closure(&g, &cl_a, l, &alpha)?;

            let matches = fast.closure == slow.closure;
            let inflationary = a.iter().all(|v| cl_a.contains(v));
            let monotone = fast.closure.iter().all(|v| cl_bigger.closure.contains(v));
            let idempotent = cl_again.closure == fast.closure;
            if matches && inflationary && monotone && idempotent {
                ok += 1;
            }
        }
        Ok((
            ok == trials,
            json!({ "trials": trials, "ok": ok, "alpha": alpha.to_string() }),
        ))
    })
}

/// Admissible alphas never tie across ten thousand seeded classifications.
pub fn criterion_9() -> CriterionResult {
    timed(9, "admissible alpha never ties", || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACC9);
        let n_max = 12usize;
        let mut ties = 0usize;
        let mut calls = 0usize;
        while calls < 10_000 {
            let q = 149u64; // prime > 12^2
            let p = rng.gen_range(1..q);
            let alpha = ExactRational::new(p as i64, q as i64)?;
            assert!(alpha.is_admissible_for(n_max));
            let n = rng.gen_range(2..=n_max);
            let g = sample_gnp(n, rng.gen_range(0.1..0.9), rng.gen())?;
            let sub: VertexSet = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            if sub.len() == n {
                continue;
            }
            calls += 1;
            if classify_pair(&g, &sub, &alpha)? == PairClass::Tie {
                ties += 1;
            }
        }
        Ok((ties == 0, json!({ "calls": calls, "ties": ties })))
    })
}

/// Safe-over-empty sparse samples have coloring number at most 2k+1 = 7 for
/// k = 3 and an admissible alpha strictly between 1/4 and 1/3.
pub fn criterion_10() -> CriterionResult {
    timed(10, "safe implies coloring number <= 7", || {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xACCA);
        let alpha = admissible_alpha_between(
            &"1/4".parse::<ExactRational>()?,
            &"1/3".parse::<ExactRational>()?,
            14,
        )?;
        let trials = 40usize;
        let mut safe_seen = 0usize;
        let mut violations = 0usize;
        for _ in 0..trials {
            let n = rng.gen_range(8..=14);
            let g = sample_sparse(n, &alpha, rng.gen())?;
            if is_safe(&g, &VertexSet::new(), &alpha, DEFAULT_ENUM_BUDGET)? {
                safe_seen += 1;
                if coloring_number(&g).0 > 7 {
                    violations += 1;
                }
            }
        }
        Ok((
            violations == 0 && safe_seen > 0,
            json!({
                "alpha": alpha.to_string(),
                "trials": trials,
                "safe_samples": safe_seen,
                "violations": violations,
            }),
        ))
    })
}

/// Structural verification of the cyclic construction at k = 6, n = 24.
pub fn criterion_11() -> CriterionResult {
    timed(11, "theorem4 structure at k=6, n=24", || {
        let rep = constructions::verify_theorem4(6, 24, 0xACCB)?;
        Ok((
            rep.passed,
            json!({
                "vertex_count": rep.vertex_count,
                "shift_pairs_checked": rep.shift_pairs_checked,
                "shift_mismatches": rep.shift_mismatches,
                "audit_pairs": rep.audit_pairs,
                "audit_mismatches": rep.audit_mismatches,
                "required_min_distance": rep.required_min_distance,
                "observed_min_distance": rep.observed_min_distance,
            }),
        ))
    })
}

/// The whole suite, run twice, produces byte-identical payloads.
pub fn criterion_12(first: &[CriterionResult]) -> CriterionResult {
    timed(12, "suite is deterministic across reruns", || {
        let second = run_core_criteria();
        let strip = |cs: &[CriterionResult]| -> Result<Vec<String>> {
            cs.iter()
                .map(|c| {
                    Ok(serde_json::to_string(&json!({
                        "id": c.id,
                        "passed": c.passed,
                        "details": c.details,
                    }))?)
                })
                .collect()
        };
        let a = strip(first)?;
        let b = strip(&second)?;
        let identical = a == b;
        Ok((
            identical,
            json!({ "criteria_compared": a.len(), "identical": identical }),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // The full suite runs in the dedicated acceptance test target; here we
    // keep only the cheapest criteria as unit smoke checks.
    #[test]
    fn cheap_criteria_pass() {
        let c5 = criterion_5();
        assert!(c5.passed, "{:?}", c5.details);
        let c9 = criterion_9();
        assert!(c9.passed, "{:?}", c9.details);
    }
}
