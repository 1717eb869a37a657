mod common;

use factolab::classify::{classify_batch, classify_batch_sequential, WitnessClaim};
use factolab::{classify, AtomLabel, Error, MonoidPresentation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

/// Small planar presentations: search to grade 20 never contradicts the
/// kernel verdicts, and every witness re-verifies.
#[test]
fn kernel_verdicts_agree_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let p = random_presentation(&mut rng, 2, 4, 0, 4);
        let r = classify(&p).unwrap();
        let b = brute_evidence(&p, 20);
        assert!(!(r.is_ufm && b.any_relation), "{p}");
        assert!(!(r.is_lfm && b.balanced), "{p}");
        assert!(!(r.is_hfm && b.unbalanced), "{p}");
        for (i, l) in r.labels.iter().enumerate() {
            match l {
                AtomLabel::Prime => assert!(!b.mentioned[i], "{p}: atom {i}"),
                AtomLabel::PurelyLong => assert!(!b.not_long[i], "{p}: atom {i}"),
                AtomLabel::PurelyShort => assert!(!b.not_short[i], "{p}: atom {i}"),
                AtomLabel::Neither => {}
            }
        }
        for w in &r.witnesses {
            assert!(w.verify(&p).unwrap(), "{p}: {w:?}");
        }
    }
}

#[test]
fn verdict_implications() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..60 {
        let p = random_presentation(&mut rng, 3, 5, 0, 5);
        let r = classify(&p).unwrap();
        if r.is_ufm {
            assert!(r.is_lfm && r.is_hfm && r.witnesses.is_empty());
            assert_eq!(r.prime.len(), r.atom_count);
        }
        if r.is_lfm && r.is_hfm {
            assert!(r.is_ufm);
        }
        assert_eq!(r.master.is_some(), r.is_proper_lfm());
        assert_eq!(r.is_plsm, !r.purely_long.is_empty() && !r.purely_short.is_empty());
        let claims: Vec<&WitnessClaim> = r.witnesses.iter().map(|w| &w.claim).collect();
        assert_eq!(!r.is_lfm, claims.contains(&&WitnessClaim::NotLengthFactorial));
        assert_eq!(!r.is_hfm, claims.contains(&&WitnessClaim::NotHalfFactorial));
    }
}

#[test]
fn batch_matches_sequential() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let ps: Vec<MonoidPresentation> = (0..30).map(|_| random_presentation(&mut rng, 3, 4, 0, 5)).collect();
    assert_eq!(classify_batch(&ps), classify_batch_sequential(&ps));
}

#[test]
fn unnormalized_input_is_rejected() {
    assert!(matches!(classify(&numerical(&[2, 3, 5])), Err(Error::NotNormalized(_))));
    assert!(matches!(classify(&numerical(&[2, 2, 3])), Err(Error::NotNormalized(_))));
    let p = presentation(&[vec![1, 0], vec![-1, 0]]);
    assert!(matches!(classify(&p), Err(Error::NotPointed { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn permuting_generators_permutes_labels(seed in any::<u64>(), rot in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(&mut rng, 2, 5, 0, 5);
        let mut rows = integer_rows(&p);
        let k = rows.len();
        rows.rotate_left(rot % k);
        let r1 = classify(&p).unwrap();
        let r2 = classify(&presentation(&rows)).unwrap();
        let mut labels = r1.labels.clone();
        labels.rotate_left(rot % k);
        prop_assert_eq!(labels, r2.labels);
        prop_assert_eq!((r1.is_ufm, r1.is_lfm, r1.is_hfm, r1.is_plsm), (r2.is_ufm, r2.is_lfm, r2.is_hfm, r2.is_plsm));
        prop_assert_eq!(r1.kernel_rank, r2.kernel_rank);
    }
}
