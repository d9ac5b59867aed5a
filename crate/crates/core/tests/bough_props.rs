use proptest::prelude::*;

use wqo_core::bough::{
    adjacent_by_types, check_bough_replacement, compatible_in_context, decompose, enumerate_boughs, is_perfect_bough,
    power_bough, substitute, verify_perfect_certificate,
};
use wqo_core::corpus::Corpus;
use wqo_core::split::{construct_split, default_budget};
use wqo_core::Deadline;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boughs_round_trip_and_replace(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(6);
        let i = c.interpretation(&m, &gens).unwrap();
        let t = c.tree(&m, &gens, 40);
        let s = construct_split(&t, default_budget(&m)).unwrap();
        for k in 1..=s.height() {
            for b in enumerate_boughs(&t, &s, k, 1) {
                let (ctx, bt, _) = decompose(&t, &s, &b).unwrap();
                let back = substitute(&ctx, &bt).unwrap();
                prop_assert_eq!(&back.tree, &t);
                prop_assert_eq!(back.split.values(), s.values());
                let leaves = b.leaves(&t);
                for &x in &leaves {
                    for &y in &leaves {
                        if t.left_of(x, y) && b.block_of(&t, x) != b.block_of(&t, y) {
                            prop_assert_eq!(adjacent_by_types(&i, &t, &b, x, y).unwrap(), i.adjacent(&t, x, y));
                        }
                    }
                }
                let (five, _) = power_bough(&bt, 5).unwrap();
                if compatible_in_context(&ctx, &bt, &five).unwrap() {
                    prop_assert!(check_bough_replacement(&i, &ctx, &bt, &five).unwrap());
                }
            }
        }
    }

    #[test]
    fn perfect_certificates_reverify(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(4);
        let i = c.interpretation(&m, &gens).unwrap();
        let t = c.tree(&m, &gens, 24);
        let s = construct_split(&t, default_budget(&m)).unwrap();
        for k in 1..=s.height() {
            for b in enumerate_boughs(&t, &s, k, 1).into_iter().take(2) {
                let (ctx, bt, _) = decompose(&t, &s, &b).unwrap();
                if let Ok(Some(cert)) = is_perfect_bough(&i, &ctx, &bt, Deadline::after(std::time::Duration::from_secs(2))) {
                    prop_assert!(verify_perfect_certificate(&i, &ctx, &bt, &cert).unwrap());
                }
            }
        }
    }
}
