//! Property suite for the leading-part functions and their interaction
//! with substitution.

mod common;

use common::epsilon;
use epswb::eta::{d_of, eta_of, pi_of};
use epswb::subst::{ep_set, subst};
use epswb::term::Ordinal;
use proptest::prelude::*;

// Members of [alpha, alpha^+) over the atom alpha and finite numbers.
fn interval_over(alpha: Ordinal) -> impl Strategy<Value = Ordinal> {
    let a = alpha.clone();
    let tail = prop_oneof![
        1 => Just(Ordinal::Zero),
        2 => (1u32..5).prop_map(Ordinal::nat),
        2 => Just(alpha.clone()),
    ]
    .prop_recursive(3, 24, 3, |inner| {
        proptest::collection::vec((inner, 1u32..4), 1..3).prop_map(|parts| {
            let mut acc = Ordinal::Zero;
            for (e, c) in parts {
                acc = acc.add(&e.omega_pow().mul(&Ordinal::nat(c)));
            }
            acc
        })
    });
    (0u8..3, tail.clone(), tail).prop_map(move |(lift, head, extra)| {
        // force the leading exponent to sit at or above alpha
        let mut exp = a.clone();
        for _ in 0..lift {
            exp = exp.add(&Ordinal::one());
        }
        let mut t = exp.omega_pow();
        if !head.is_zero() {
            t = t.mul(&Ordinal::nat(2)).add(&head.min(a.clone()));
        }
        t.add(&extra.min(a.clone()))
    })
}

fn pair_in_interval() -> impl Strategy<Value = (Ordinal, Ordinal, Ordinal)> {
    epsilon().prop_flat_map(|alpha| {
        (interval_over(alpha.clone()), interval_over(alpha.clone()))
            .prop_map(move |(t, s)| (alpha.clone(), t, s))
    })
}

proptest! {
    #[test]
    fn successor_keeps_the_leading_part((_a, t, _s) in pair_in_interval()) {
        prop_assert_eq!(pi_of(&t.succ()).unwrap(), pi_of(&t).unwrap());
    }

    #[test]
    fn d_pi_sits_under_the_leading_exponent((_a, t, _s) in pair_in_interval()) {
        let pi = pi_of(&t).unwrap();
        let t1 = t.leading_exponent().unwrap().clone();
        prop_assert!(d_of(&pi) <= t1);
        prop_assert!(t1 <= pi);
    }

    #[test]
    fn pi_and_eta_are_monotone((_a, t, s) in pair_in_interval()) {
        let (lo, hi) = if t <= s { (t, s) } else { (s, t) };
        let (pl, ph) = (pi_of(&lo).unwrap(), pi_of(&hi).unwrap());
        prop_assert!(pl <= ph);
        prop_assert!(pl.add(&d_of(&pl)) <= ph.add(&d_of(&ph)));
        prop_assert!(eta_of(&lo).unwrap() <= eta_of(&hi).unwrap());
    }

    #[test]
    fn eta_reaches_twice_the_base((a, t, _s) in pair_in_interval()) {
        prop_assert!(a.mul(&Ordinal::nat(2)) <= eta_of(&t).unwrap());
    }

    #[test]
    fn eta_is_idempotent((_a, t, _s) in pair_in_interval()) {
        let e = eta_of(&t).unwrap();
        prop_assert_eq!(eta_of(&e).unwrap(), e);
    }

    #[test]
    fn the_functions_commute_with_substitution((a, t, _s) in pair_in_interval()) {
        let beta = Ordinal::eps(Ordinal::Zero);
        // window: our terms carry no epsilons below alpha
        prop_assert!(ep_set(&t).below(&a).is_empty());
        let sub = |x: &Ordinal| subst(x, &a, &beta).unwrap();
        let moved = sub(&t);
        let pi = pi_of(&t).unwrap();
        prop_assert_eq!(pi_of(&moved).unwrap(), sub(&pi));
        prop_assert_eq!(d_of(&pi_of(&moved).unwrap()), sub(&d_of(&pi)));
        prop_assert_eq!(eta_of(&moved).unwrap(), sub(&eta_of(&t).unwrap()));
    }
}
