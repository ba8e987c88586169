//! Property suite for the canonical term algebra.

mod common;

use common::{epsilon, ordinal};
use epswb::term::Ordinal;
use proptest::prelude::*;

proptest! {
    #[test]
    fn parser_survives_arbitrary_text(text in "\\PC{0,60}") {
        let _ = epswb::parse(&text);
    }

    #[test]
    fn parser_survives_grammar_soup(text in "[0-9we()^*+; ]{0,48}") {
        if let Ok(x) = epswb::parse(&text) {
            prop_assert_eq!(epswb::parse(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn print_parse_round_trip(x in ordinal()) {
        let text = x.to_string();
        prop_assert_eq!(epswb::parse(&text).unwrap(), x);
    }

    #[test]
    fn add_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes_from_the_left(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn add_grows(a in ordinal(), b in ordinal()) {
        prop_assert!(a <= a.add(&b));
        prop_assert!(b <= a.add(&b));
    }

    #[test]
    fn right_monotonicity(a in ordinal(), b in ordinal(), c in ordinal()) {
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
            if !a.is_zero() {
                prop_assert!(a.mul(&b) < a.mul(&c));
            }
        }
    }

    #[test]
    fn omega_pow_strictly_monotone(a in ordinal(), b in ordinal()) {
        if a < b {
            prop_assert!(a.omega_pow() < b.omega_pow());
        }
    }

    #[test]
    fn epsilon_atoms_are_the_fixed_points(x in ordinal()) {
        prop_assert_eq!(x.omega_pow() == x, x.is_epsilon());
    }

    #[test]
    fn indices_sit_below_their_epsilon(i in ordinal()) {
        prop_assert!(i < Ordinal::eps(i.clone()));
    }

    #[test]
    fn sub_left_inverts_add(a in ordinal(), b in ordinal()) {
        let sum = a.add(&b);
        let diff = sum.sub_left(&a).unwrap();
        prop_assert_eq!(a.add(&diff), sum);
    }

    #[test]
    fn division_by_omega_pow(x in ordinal(), l in ordinal()) {
        let (q, r) = x.div_pow_omega(&l);
        prop_assert!(r < l.omega_pow());
        prop_assert_eq!(l.omega_pow().mul(&q).add(&r), x);
    }

    #[test]
    fn successor_and_predecessor(x in ordinal()) {
        prop_assert_eq!(x.succ().pred_if_succ().unwrap(), x.clone());
        if x.is_limit() {
            prop_assert_eq!(x.pred_if_succ(), None);
        }
    }

    #[test]
    fn next_epsilon_is_above_and_epsilon(x in ordinal()) {
        let e = x.next_epsilon();
        prop_assert!(e.is_epsilon());
        prop_assert!(e > x);
    }

    #[test]
    fn epsilon_comparison_matches_indices(i in ordinal(), j in ordinal()) {
        prop_assert_eq!(
            Ordinal::eps(i.clone()).cmp(&Ordinal::eps(j.clone())),
            i.cmp(&j)
        );
    }

    #[test]
    fn epsilons_absorb_omega_pow(e in epsilon()) {
        prop_assert_eq!(e.omega_pow(), e.clone());
        prop_assert!(e.is_limit());
        prop_assert!(e.is_principal());
    }
}
