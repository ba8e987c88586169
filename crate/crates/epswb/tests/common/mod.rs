//! Shared proptest strategies for canonical ordinal terms.

use epswb::term::Ordinal;
use proptest::prelude::*;

/// Canonical ordinals built through the normalizing arithmetic, with
/// bounded structural depth.
pub fn ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = prop_oneof![
        1 => Just(Ordinal::Zero),
        4 => (1u32..6).prop_map(Ordinal::nat),
    ];
    leaf.prop_recursive(5, 48, 4, |inner| {
        prop_oneof![
            3 => proptest::collection::vec((inner.clone(), 1u32..4), 1..4).prop_map(|parts| {
                let mut acc = Ordinal::Zero;
                for (e, c) in parts {
                    acc = acc.add(&e.omega_pow().mul(&Ordinal::nat(c)));
                }
                acc
            }),
            1 => inner.prop_map(Ordinal::eps),
        ]
    })
}

/// Epsilon atoms with shallow indices.
#[allow(dead_code)]
pub fn epsilon() -> impl Strategy<Value = Ordinal> {
    ordinal().prop_map(Ordinal::eps)
}
