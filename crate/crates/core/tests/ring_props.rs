mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trinomial_fano::ring::{render_relations, validate_triple, RingDoc, TripleData};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trinomial_cocycle_identities(seed in any::<u64>()) {
        let t = common::random_triple(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        prop_assert_eq!(common::check_cocycles(&t), Ok(()));
    }

    #[test]
    fn canonical_grading_is_homogeneous_and_free(seed in any::<u64>()) {
        let t = common::random_triple(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        prop_assert_eq!(common::check_grading(&t), Ok(()));
    }

    #[test]
    fn ring_documents_round_trip(seed in any::<u64>()) {
        let t = common::random_triple(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let doc = RingDoc::from_triple(&t);
        let text = toml::to_string(&doc).unwrap();
        let back: RingDoc = toml::from_str(&text).unwrap();
        prop_assert_eq!(back.triple().unwrap(), t.clone());
        prop_assert_eq!(render_relations(&t).relations.len(), t.r().saturating_sub(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn admissibility_is_lattice_extendability(seed in any::<u64>()) {
        let l = common::random_exponents(&mut ChaCha8Rng::seed_from_u64(seed), 4, 12);
        prop_assert!(common::admissibility_matches_extendability(&l), "L = {:?}", l);
    }
}

#[test]
fn relation_lattice_of_two_three_five() {
    let l = vec![vec![2], vec![3], vec![5]];
    assert!(common::admissibility_matches_extendability(&l));
    assert!(validate_triple(&TripleData::new(l, 0)).is_ok());
    let l = vec![vec![2, 4], vec![2], vec![3]];
    assert!(common::admissibility_matches_extendability(&l));
    assert!(validate_triple(&TripleData::new(l, 0)).is_err());
}
