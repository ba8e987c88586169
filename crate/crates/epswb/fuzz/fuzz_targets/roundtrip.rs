#![no_main]

use epswb::term::Ordinal;
use libfuzzer_sys::fuzz_target;

// Drive the canonical constructors with a little stack machine, then check
// that the printed form parses back to the same term.
fn build(data: &[u8]) -> Ordinal {
    let mut stack: Vec<Ordinal> = Vec::new();
    for &b in data.iter().take(96) {
        match b % 6 {
            0 => stack.push(Ordinal::Zero),
            1 => stack.push(Ordinal::nat(u32::from(b / 6) % 7 + 1)),
            2 => {
                let x = stack.pop().unwrap_or_else(Ordinal::omega);
                if x.eps_depth() < 8 {
                    stack.push(Ordinal::eps(x));
                }
            }
            3 => {
                if let (Some(y), Some(x)) = (stack.pop(), stack.pop()) {
                    if let Some(z) = x.checked_add(&y) {
                        stack.push(z);
                    }
                }
            }
            4 => {
                if let (Some(y), Some(x)) = (stack.pop(), stack.pop()) {
                    if let Some(z) = x.checked_mul(&y) {
                        stack.push(z);
                    }
                }
            }
            _ => {
                if let Some(x) = stack.pop() {
                    if x.size() < 64 {
                        stack.push(x.omega_pow());
                    }
                }
            }
        }
        if stack.len() > 16 {
            stack.truncate(16);
        }
    }
    let mut acc = Ordinal::Zero;
    for x in stack {
        if let Some(next) = acc.checked_add(&x) {
            acc = next;
        }
    }
    acc
}

fuzz_target!(|data: &[u8]| {
    let x = build(data);
    let printed = x.to_string();
    let back = epswb::parse(&printed).expect("printer output parses");
    assert_eq!(back, x, "round-trip through {printed}");
});
