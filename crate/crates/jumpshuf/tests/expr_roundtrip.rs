//! Property: printing an expression and parsing it back yields the same
//! tree, for arbitrary ASTs over a three-letter alphabet up to depth 6.

use proptest::prelude::*;

use jumpshuf::alphabet::{Alphabet, Word};
use jumpshuf::expr::{parse_expr, print_expr, Expr};

fn sigma() -> Alphabet {
    Alphabet::from_chars("abc").unwrap()
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::epsilon(sigma())),
        Just(Expr::empty_set(sigma())),
        proptest::collection::vec(0u16..3, 1..=3).prop_map(|syms| {
            Expr::atom(&Word::from_indices(sigma(), syms)).unwrap()
        }),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.union(b).unwrap()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.concat(b).unwrap()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.shuffle(b).unwrap()),
            inner.clone().prop_map(|a| a.star()),
            inner.prop_map(|a| a.iter_shuffle()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let text = print_expr(&e);
        let back = parse_expr(&text, &sigma()).expect("printed form parses");
        prop_assert!(back == e, "round trip changed `{text}` into `{}`", print_expr(&back));
    }
}
