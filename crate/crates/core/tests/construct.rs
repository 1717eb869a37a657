use factolab::construct::{
    build_master_monoid, fixture_gallery, master_sweep, master_sweep_sequential, pls_example, pls_spec,
    run_gallery, run_gallery_sequential, valid_master_specs, MasterSpec,
};
use factolab::{classify, Error, Monoid, MonoidPresentation};

#[test]
fn parallel_and_sequential_sweeps_agree() {
    let specs = valid_master_specs(2, 3);
    let par = master_sweep(&specs);
    let seq = master_sweep_sequential(&specs);
    assert_eq!(par.len(), seq.len());
    for (a, b) in par.iter().zip(&seq) {
        assert_eq!(a.spec, b.spec);
        assert!(a.passed() && b.passed(), "{:?}", a.failures);
    }
}

#[test]
fn spec_enumeration_respects_validity() {
    let specs = valid_master_specs(2, 3);
    for s in &specs {
        assert_eq!(MasterSpec::new(s.a().to_vec(), s.b().to_vec()).as_ref(), Ok(s));
    }
    assert!(!specs.iter().any(|s| s.a() == [1] || s.b() == [1]));
    assert!(specs.contains(&MasterSpec::new(vec![3], vec![2]).unwrap()));
}

/// The factorizations of an element are exactly the chain `z + t(a, −b)`.
#[test]
fn fibers_are_kernel_chains() {
    for (a, b) in [(vec![3], vec![2]), (vec![2, 1], vec![1, 1]), (vec![1, 3], vec![2]), (vec![4], vec![1, 2])] {
        let spec = MasterSpec::new(a.clone(), b.clone()).unwrap();
        let p = build_master_monoid(&spec);
        let m = Monoid::new(p.clone()).unwrap();
        let v: Vec<i64> = a.iter().map(|&x| x as i64).chain(b.iter().map(|&x| -(x as i64))).collect();
        let z: Vec<u64> = a.iter().map(|&x| 2 * x + 1).chain(b.iter().copied()).collect();
        let x = m.evaluate(&factolab::FactorizationVector(z.clone())).unwrap();
        let zs = m.factorizations(&x).unwrap();
        let chain: Vec<Vec<u64>> = (-10i64..=10)
            .map(|t| z.iter().zip(&v).map(|(&zi, &vi)| zi as i64 + t * vi).collect::<Vec<i64>>())
            .filter(|w| w.iter().all(|&c| c >= 0))
            .map(|w| w.into_iter().map(|c| c as u64).collect())
            .collect();
        let mut got: Vec<Vec<u64>> = zs.into_iter().map(|f| f.0).collect();
        got.sort();
        let mut want = chain;
        want.sort();
        assert_eq!(got, want, "{spec:?}");
    }
}

#[test]
fn pls_examples_up_to_four() {
    for m in 1..=4 {
        for n in 1..=4 {
            let r = classify(&pls_example(m, n).unwrap()).unwrap();
            assert!(r.is_proper_lfm());
            assert_eq!((r.purely_long.len(), r.purely_short.len()), (m, n));
            let spec = pls_spec(m, n).unwrap();
            assert_eq!(r.master.unwrap(), spec.relation());
        }
    }
    assert!(matches!(pls_example(0, 2), Err(Error::Domain(_))));
}

#[test]
fn pls_spec_is_lexicographically_smallest() {
    let specs = valid_master_specs(3, 5);
    for m in 1..=3 {
        for n in 1..=3 {
            let best = specs
                .iter()
                .filter(|s| s.a().len() == m && s.b().len() == n)
                .min_by(|x, y| (x.b(), x.a()).cmp(&(y.b(), y.a())))
                .unwrap();
            assert_eq!(&pls_spec(m, n).unwrap(), best, "m = {m}, n = {n}");
        }
    }
}

#[test]
fn gallery_passes_for_several_truncations() {
    for k in 2..=5 {
        let fixtures = fixture_gallery(k).unwrap();
        let outcomes = run_gallery(&fixtures);
        for o in &outcomes {
            assert!(o.passed, "K = {k}, {}: {:?}", o.name, o.mismatches);
        }
        let seq = run_gallery_sequential(&fixtures);
        let names: Vec<_> = seq.iter().map(|o| (&o.name, o.passed)).collect();
        assert_eq!(names, outcomes.iter().map(|o| (&o.name, o.passed)).collect::<Vec<_>>());
    }
}

#[test]
fn gallery_export_round_trips() {
    for f in fixture_gallery(3).unwrap() {
        let text = serde_json::to_string(&f).unwrap();
        let back: MonoidPresentation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f.presentation);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["expected"].is_object(), "{}", f.name);
    }
}

#[test]
fn a_mismatch_is_reported() {
    let mut fixtures = fixture_gallery(2).unwrap();
    fixtures[0].expected.is_lfm = Some(false);
    let outcomes = run_gallery(&fixtures[..1]);
    assert!(!outcomes[0].passed);
    assert_eq!(outcomes[0].mismatches.len(), 1);
}
