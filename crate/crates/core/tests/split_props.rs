use proptest::prelude::*;

use wqo_core::corpus::Corpus;
use wqo_core::split::{construct_split, default_budget, fast_tlbl, k_classes, validate_ramseyan};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructed_splits_are_ramseyan(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(6);
        let t = c.tree(&m, &gens, 64);
        let budget = default_budget(&m);
        let s = construct_split(&t, budget).unwrap();
        prop_assert!(s.height() <= budget);
        prop_assert!(validate_ramseyan(&t, &s).is_none());
        for x in t.nodes() {
            for y in t.subtree(x) {
                prop_assert_eq!(fast_tlbl(&t, &s, x, y).unwrap(), t.tlbl(x, y).unwrap());
            }
        }
    }

    #[test]
    fn classes_are_separated_intervals(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (t, s) = c.split_tree(6, 48).unwrap();
        let m = t.monoid();
        for leaf in t.leaves_in_order() {
            let branch = t.path(t.root(), leaf).unwrap();
            for k in 1..=s.height() {
                let classes = k_classes(&t, &s, leaf, k).unwrap();
                for class in &classes {
                    for (i, &x) in class.iter().enumerate() {
                        prop_assert_eq!(s.value(x), k);
                        for &y in &class[i + 1..] {
                            prop_assert!(m.is_idempotent(t.tlbl(x, y).unwrap()).unwrap());
                            let inner = t.path(x, y).unwrap();
                            prop_assert!(inner.iter().all(|&z| s.value(z) >= k));
                        }
                    }
                }
                for pair in classes.windows(2) {
                    let (a, b) = (*pair[0].last().unwrap(), pair[1][0]);
                    let between = t.path(a, b).unwrap();
                    prop_assert!(between[1..between.len() - 1].iter().any(|&z| s.value(z) < k));
                }
                let members: Vec<_> = branch.iter().filter(|&&z| s.value(z) == k).collect();
                prop_assert_eq!(members.len(), classes.iter().map(Vec::len).sum::<usize>());
            }
        }
    }
}
