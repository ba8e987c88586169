//! Property suite for canonical fundamental sequences: monotonicity, range,
//! the restriction law under substitution, eta bounds, and domination.

mod common;

use epswb::eta::{d_of, eta_of, pi_of};
use epswb::fundseq::l_seq;
use epswb::subst::{ep_set, subst};
use epswb::term::Ordinal;
use proptest::prelude::*;

// Limits in (alpha, alpha^+) over the atom alpha and finite parts.
fn limit_over(alpha: Ordinal) -> impl Strategy<Value = Ordinal> {
    let a = alpha.clone();
    let piece = prop_oneof![
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
    (0u8..3, 1u32..4, piece).prop_filter_map("limit in the interval", move |(lift, c, tail)| {
        let mut exp = a.clone();
        for _ in 0..lift {
            exp = exp.add(&Ordinal::one());
        }
        let t = exp.omega_pow().mul(&Ordinal::nat(c)).add(&tail.min(a.clone()));
        if t.is_limit() && t > a {
            Some(t)
        } else {
            None
        }
    })
}

fn instance() -> impl Strategy<Value = (Ordinal, Ordinal)> {
    common::epsilon().prop_flat_map(|alpha| {
        limit_over(alpha.clone()).prop_map(move |t| (alpha.clone(), t))
    })
}

fn small_indices(bound: &Ordinal) -> Vec<Ordinal> {
    [1u32, 2, 3, 7]
        .iter()
        .map(|&n| Ordinal::nat(n))
        .filter(|j| j < bound)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn members_increase_inside_the_interval((alpha, t) in instance()) {
        let seq = l_seq(&t, &alpha).unwrap();
        prop_assert!(seq.index_bound <= alpha);
        let mut prev = alpha.clone();
        for j in small_indices(&seq.index_bound) {
            let v = seq.eval(&j).unwrap();
            prop_assert!(v > alpha && v < t, "member {v} at {j} for {t}");
            prop_assert!(v > prev || prev == alpha);
            prev = v;
        }
    }

    #[test]
    fn restriction_commutes_with_substitution((alpha, t) in instance()) {
        let beta = Ordinal::eps(Ordinal::Zero);
        prop_assume!(beta < alpha);
        prop_assume!(ep_set(&t).below(&alpha).is_empty());
        let seq = l_seq(&t, &alpha).unwrap();
        let moved = subst(&t, &alpha, &beta).unwrap();
        prop_assume!(moved.is_limit() && moved > beta);
        let moved_seq = l_seq(&moved, &beta).unwrap();
        for j in small_indices(&seq.index_bound.clone().min(moved_seq.index_bound.clone())) {
            let direct = moved_seq.eval(&j).unwrap();
            let pushed = subst(&seq.eval(&j).unwrap(), &alpha, &beta).unwrap();
            prop_assert_eq!(direct, pushed, "index {} of {}", j, t);
        }
    }

    #[test]
    fn eta_of_members_is_bounded((alpha, t) in instance()) {
        let seq = l_seq(&t, &alpha).unwrap();
        let eta_t = eta_of(&t).unwrap();
        let pi = pi_of(&t).unwrap();
        let strict = t > pi.add(&d_of(&pi));
        for j in small_indices(&seq.index_bound) {
            let eta_j = eta_of(&seq.eval(&j).unwrap()).unwrap();
            prop_assert!(eta_j <= eta_t);
            if strict {
                prop_assert!(eta_j < eta_t);
            }
        }
    }

    #[test]
    fn domination_succeeds_below_the_target((alpha, t) in instance(), pick in 0usize..4) {
        let seq = l_seq(&t, &alpha).unwrap();
        // probe points: the base, a member, and a perturbed member
        let mut probes = vec![alpha.clone()];
        let indices = small_indices(&seq.index_bound);
        if let Some(j) = indices.get(pick.min(indices.len().saturating_sub(1))) {
            let v = seq.eval(j).unwrap();
            probes.push(v.clone());
            if v.succ() < t {
                probes.push(v.succ());
            }
        }
        for s in probes {
            prop_assert!(s < t);
            let j = seq.dominating_index(&s).unwrap();
            prop_assert!(seq.eval(&j).unwrap() > s, "domination of {s} under {t}");
        }
    }
}
