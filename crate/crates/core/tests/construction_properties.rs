//! Heavier construction invariants kept out of the unit layer.

use kuniv_core::constructions::verify_theorem3_pairs;
use kuniv_core::extendibility::is_k_extendible;
use kuniv_core::sparse::sample_gnp;

#[test]
fn pair_refutation_holds_at_k5() {
    let rep = verify_theorem3_pairs(5).unwrap();
    assert_eq!(rep.pairs_checked, 5 * 32 * 31);
    assert!(
        rep.violations.is_empty(),
        "{:?}",
        &rep.violations[..5.min(rep.violations.len())]
    );
    assert_eq!(rep.satisfiability_failures, 0);
}

#[test]
fn extendibility_descends_in_k_on_dense_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(401);
    let mut nonvacuous = 0usize;
    for _ in 0..8 {
        let g = sample_gnp(100, 0.5, rng.gen()).unwrap();
        if is_k_extendible(&g, 3).unwrap().extendible {
            nonvacuous += 1;
            assert!(is_k_extendible(&g, 2).unwrap().extendible);
            assert!(is_k_extendible(&g, 1).unwrap().extendible);
        }
    }
    // at this size almost every sample is 3-extendible
    assert!(
        nonvacuous >= 4,
        "only {nonvacuous} samples were 3-extendible"
    );
}
