use proptest::prelude::*;
use rand::Rng;

use wqo_core::corpus::Corpus;
use wqo_core::graph::verify_embedding;
use wqo_core::interp::marked_leaves;
use wqo_core::split::{construct_split, default_budget};
use wqo_core::LabelOrder;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_compose_along_branches(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(6);
        let t = c.tree(&m, &gens, 31);
        for x in t.nodes() {
            for y in t.subtree(x) {
                for z in t.subtree(y) {
                    prop_assert_eq!(t.tlbl(x, z).unwrap(), m.mul(t.tlbl(x, y).unwrap(), t.tlbl(y, z).unwrap()));
                }
            }
        }
    }

    #[test]
    fn lca_laws(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(4);
        let t = c.tree(&m, &gens, 31);
        for x in t.nodes() {
            prop_assert_eq!(t.lca(x, x).unwrap(), x);
            for y in t.nodes() {
                let l = t.lca(x, y).unwrap();
                prop_assert_eq!(l, t.lca(y, x).unwrap());
                prop_assert!(t.is_ancestor(l, x) && t.is_ancestor(l, y));
            }
        }
    }

    #[test]
    fn leaves_follow_the_sibling_order(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(4);
        let t = c.tree(&m, &gens, 63);
        let leaves = t.leaves_in_order();
        let mut sorted = leaves.clone();
        sorted.sort_unstable();
        let expected: Vec<_> = t.nodes().filter(|&x| t.is_leaf(x)).collect();
        prop_assert_eq!(sorted, expected);
        for (i, &x) in leaves.iter().enumerate() {
            for &y in &leaves[i + 1..] {
                prop_assert!(t.left_of(x, y));
            }
        }
    }

    #[test]
    fn grafting_is_monotone(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(6);
        let i = c.interpretation(&m, &gens).unwrap();
        let t1 = c.tree(&m, &gens, 15);
        let other = c.tree(&m, &gens, 9);
        let leaves = t1.leaves_in_order();
        let leaf = leaves[c.rng().gen_range(0..leaves.len())];
        let label = gens[c.rng().gen_range(0..gens.len())];
        let fresh_left = c.rng().gen_bool(0.5);
        let (t2, map) = t1.graft(leaf, &other, label, fresh_left).unwrap();
        let g1 = i.interpret(&t1).unwrap();
        let g2 = i.interpret(&t2).unwrap();
        let l2 = t2.leaves_in_order();
        let pos: Vec<usize> = leaves.iter().map(|&x| l2.iter().position(|&y| y == map[x]).unwrap()).collect();
        let ord = LabelOrder::equality_for(&[&g1, &g2]);
        prop_assert!(verify_embedding(&g1, &g2, &ord, &pos, true).is_ok());
    }

    #[test]
    fn interpreted_graphs_live_on_leaves(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(6);
        let i = c.interpretation(&m, &gens).unwrap();
        let t = c.tree(&m, &gens, 31);
        let g = i.interpret(&t).unwrap();
        prop_assert_eq!(g.n(), t.leaf_count());
        prop_assert!((0..g.n()).all(|v| !g.has_edge(v, v)));
        let s = construct_split(&t, default_budget(&m)).unwrap();
        let mt = c.marking(&t, &s).unwrap();
        let marked = marked_leaves(&mt);
        let leaves = t.leaves_in_order();
        let idx: Vec<usize> = marked.iter().map(|x| leaves.iter().position(|y| y == x).unwrap()).collect();
        let restricted = g.induced(&idx);
        let direct = i.interpret_marked(&mt).unwrap();
        prop_assert_eq!(restricted.edges(), direct.edges());
    }
}
