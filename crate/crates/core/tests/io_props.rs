//! Graph-file round trips and generator guarantees.

use proptest::prelude::*;

use dualgain::graph::AnyGainGraph;
use dualgain::io::{generate, parse, serialize, Family};
use dualgain::Ring;

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Real), Just(Ring::Complex), Just(Ring::Quaternion)]
}

fn random_graph() -> impl Strategy<Value = AnyGainGraph> {
    (1usize..=12, 0.0f64..=1.0, any::<u64>(), ring())
        .prop_map(|(n, p, seed, ring)| generate(&Family::Random { n, p, seed, ring }, 1e-12).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn serialize_then_parse_is_identity(g in random_graph()) {
        let text = serialize(&g);
        let back = parse(&text, 1e-12).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn generated_gains_are_units(g in random_graph()) {
        prop_assert!(g.tagged_gains().iter().all(|x| x.is_unit(1e-12)));
    }
}

#[test]
fn random_family_is_seed_deterministic() {
    let family = Family::Random {
        n: 6,
        p: 0.5,
        seed: 42,
        ring: Ring::Quaternion,
    };
    assert_eq!(
        serialize(&generate(&family, 1e-12).unwrap()),
        serialize(&generate(&family, 1e-12).unwrap())
    );
}
