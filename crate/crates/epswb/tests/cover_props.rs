//! Property suite for the cover constructions: containment, the eta bound,
//! transitive closure, and behavior on finite sets.

mod common;

use common::ordinal;
use epswb::cover::{b_t, c_cover, delta_cover, s_cnf};
use epswb::eta::eta_of;
use epswb::set::FinOrdSet;
use epswb::term::Ordinal;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cover_holds_the_ordinal_and_its_monomials(delta in ordinal()) {
        prop_assume!(!delta.is_zero());
        let cover = c_cover(&delta).unwrap();
        prop_assert!(cover.contains(&delta));
        for m in delta.monomials() {
            prop_assert!(cover.contains(&Ordinal::from_monomials(vec![m])));
        }
    }

    #[test]
    fn cover_respects_the_eta_bound(delta in ordinal()) {
        prop_assume!(!delta.is_zero());
        let cover = c_cover(&delta).unwrap();
        let eta = eta_of(&delta).unwrap();
        prop_assert!(cover.max().unwrap() <= &eta);
    }

    #[test]
    fn cover_is_transitively_closed(delta in ordinal()) {
        prop_assume!(!delta.is_zero());
        let cover = c_cover(&delta).unwrap();
        for rho in cover.iter() {
            prop_assert!(c_cover(rho).unwrap().is_subset(&cover));
        }
    }

    #[test]
    fn scnf_sits_inside_bt_inside_c(delta in ordinal()) {
        prop_assume!(!delta.is_zero());
        let s = s_cnf(&delta).unwrap();
        let b = b_t(&delta).unwrap();
        prop_assert!(s.is_subset(&b));
        prop_assert!(s.contains(&delta));
    }

    #[test]
    fn low_sets_are_left_alone(xs in proptest::collection::vec(ordinal(), 0..4)) {
        let alpha = Ordinal::eps(Ordinal::omega().omega_pow());
        let b: FinOrdSet = xs.into_iter().filter(|x| x < &alpha).collect();
        prop_assert_eq!(delta_cover(&alpha, &b).unwrap(), b);
    }

    #[test]
    fn finite_set_cover_respects_the_max_bound(
        xs in proptest::collection::vec(ordinal(), 1..4),
        lift in 0u32..3,
    ) {
        let alpha = Ordinal::eps(Ordinal::Zero);
        let mut b: FinOrdSet = xs.into_iter().filter(|x| x < &alpha).collect();
        // put one element inside the interval
        b.insert(alpha.omega_pow().mul(&Ordinal::nat(lift + 1)));
        let big = delta_cover(&alpha, &b).unwrap();
        let bound = eta_of(b.max().unwrap()).unwrap();
        prop_assert!(big.max().unwrap() <= &bound);
        prop_assert!(b.is_subset(&big));
    }
}
