#![no_main]

use libfuzzer_sys::fuzz_target;

// Parse two expressions separated by ';' and hammer the order and algebra
// invariants with the checked operations only.
fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let mut parts = text.splitn(2, ';');
    let a = match parts.next().and_then(|s| epswb::parse(s).ok()) {
        None => return,
        Some(a) => a,
    };
    let b = match parts.next().and_then(|s| epswb::parse(s).ok()) {
        None => return,
        Some(b) => b,
    };

    assert_eq!(a == b, a.cmp(&b).is_eq());
    if let Some(sum) = a.checked_add(&b) {
        assert!(sum >= a && sum >= b);
        assert_eq!(sum.sub_left(&a).map(|d| a.add(&d)), Some(sum.clone()));
    }
    if let Some(prod) = a.checked_mul(&b) {
        if !a.is_zero() && !b.is_zero() {
            assert!(prod >= a);
        }
    }
    let pow = b.omega_pow();
    assert!(pow.is_principal());
    assert_eq!(pow == b, b.is_epsilon());
    let (q, r) = a.div_pow_omega(&b);
    assert!(r < b.omega_pow());
    if let Some(back) = b.omega_pow().checked_mul(&q).and_then(|x| x.checked_add(&r)) {
        assert_eq!(back, a);
    }
});
