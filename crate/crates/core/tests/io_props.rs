use proptest::prelude::*;

use wqo_core::corpus::Corpus;
use wqo_core::io::{
    graph_to_json, marked_tree_to_json, monoid_to_json, parse_graph, parse_marked_tree, parse_monoid, parse_sequence,
    parse_split, parse_tree, sequence_to_json, split_to_json, tree_to_json,
};
use wqo_core::sequence::Sequence;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_inverts_serialize(seed in any::<u64>()) {
        let mut c = Corpus::new(seed);
        let (m, gens) = c.monoid(6);
        prop_assert_eq!(&parse_monoid(&monoid_to_json(&m).to_string()).unwrap(), &*m);
        let t = c.tree(&m, &gens, 40);
        let t2 = parse_tree(&tree_to_json(&t).to_string(), m.clone(), None).unwrap();
        prop_assert_eq!(&t2, &t);
        let s = wqo_core::split::construct_split(&t, wqo_core::split::default_budget(&m)).unwrap();
        let s2 = parse_split(&split_to_json(&s).to_string(), &t).unwrap();
        prop_assert_eq!(s2.values(), s.values());
        let mt = c.marking(&t, &s).unwrap();
        let back = parse_marked_tree(&marked_tree_to_json(&mt).to_string(), m.clone(), None).unwrap();
        prop_assert_eq!(back.marking(), mt.marking());
        prop_assert_eq!(back.split().values(), mt.split().values());
        let seq = Sequence::Regular(c.regular_sequence(4));
        prop_assert_eq!(&parse_sequence(&sequence_to_json(&seq).to_string()).unwrap(), &seq);
        let Sequence::Regular(r) = &seq else { unreachable!() };
        prop_assert_eq!(&parse_graph(&graph_to_json(&r.graph).to_string()).unwrap(), &r.graph);
    }
}
