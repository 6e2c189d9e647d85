use proptest::prelude::*;
use semicomm::constructions::Family;
use semicomm::search::{read_witness, search_dims, search_idempotent_even, write_witnesses, Witness};
use semicomm::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witnesses_replay_after_persisting(n in 1usize..=4, seed in any::<u64>()) {
        let r = search_dims(n, &Family::ALL, 40, seed).unwrap();
        prop_assert!(r.attained.iter().all(|&d| d >= 1 && d <= n * (n + 1) / 2));
        let dir = tempfile::tempdir().unwrap();
        let paths = write_witnesses(dir.path(), &r.witnesses).unwrap();
        prop_assert_eq!(paths.len(), r.attained.len());
        for (path, w) in paths.iter().zip(&r.witnesses) {
            prop_assert_eq!(path.file_name().unwrap().to_str().unwrap(), format!("witness-{}.json", w.dim));
            let loaded = read_witness(path).unwrap();
            prop_assert_eq!(&loaded, w);
            prop_assert!(loaded.replay().unwrap());
        }
    }

    #[test]
    fn attained_sets_grow_with_trials(n in 2usize..=4, seed in any::<u64>(), short in 1usize..30, extra in 0usize..30) {
        let a = search_dims(n, &Family::ALL, short, seed).unwrap();
        let b = search_dims(n, &Family::ALL, short + extra, seed).unwrap();
        prop_assert!(a.attained.is_subset(&b.attained));
        // first witnesses are kept, so shared dimensions keep their witness
        for w in &a.witnesses {
            let same: Option<&Witness> = b.witnesses.iter().find(|x| x.dim == w.dim);
            prop_assert_eq!(same, Some(w));
        }
    }

    #[test]
    fn idempotent_search_respects_bound(half in 1usize..=3, seed in any::<u64>()) {
        let n = 2 * half;
        let r = search_idempotent_even(n, 30, seed).unwrap();
        prop_assert!(r.max_dim_found <= 2 * n);
        prop_assert!(r.max_dim_found >= 1);
        for w in &r.witnesses {
            prop_assert!(w.a.is_idempotent() && w.b.is_idempotent());
            prop_assert!(w.replay().unwrap());
        }
    }
}

#[test]
fn small_cases_from_the_contract() {
    assert_eq!(search_dims(1, &Family::ALL, 5, 0).unwrap().attained.into_iter().collect::<Vec<_>>(), vec![1]);
    let r = search_dims(2, &Family::ALL, 1000, 7).unwrap();
    assert!(r.attained.contains(&2) && r.attained.contains(&3));
    assert!(search_idempotent_even(2, 1, 0).unwrap().max_dim_found >= 3);
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert!(matches!(search_idempotent_even(5, 10, 0), Err(Error::Usage(_))));
    assert!(matches!(search_dims(0, &Family::ALL, 10, 0), Err(Error::Usage(_))));
    assert!(matches!(search_dims(3, &[], 10, 0), Err(Error::Usage(_))));
    assert!(matches!(search_dims(3, &Family::ALL, 0, 0), Err(Error::Usage(_))));
    assert!(matches!("nope".parse::<Family>(), Err(Error::Usage(_))));
}
