//! Acceptance suite. One test per criterion; each prints a single
//! PASS/FAIL line (run with `--nocapture` to see them). Every tolerance and
//! budget is pinned here.

use std::time::{Duration, Instant};

use epswb::engine::{replay, Config, Engine};
use epswb::suite::{run_suite, witness_corroboration, wilken_cross_check, SuiteReport};
use epswb::term::Ordinal;

const SEED: u64 = 0xE125_ACCE;

fn verdict(name: &str, ok: bool, detail: String) {
    println!("criterion {name}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {name} failed: {detail}");
}

fn suite_line(r: &SuiteReport) -> String {
    format!(
        "{}: pass {}, fail {}, skip {}, seed {}{}",
        r.name,
        r.passed,
        r.failed,
        r.skipped,
        r.seed,
        r.failures
            .first()
            .map(|f| format!("; first failure: {f}"))
            .unwrap_or_default()
    )
}

#[test]
fn criterion_01_cnf_round_trip_and_algebra() {
    let start = Instant::now();
    let r = run_suite("cnf-laws", SEED, 10_000).unwrap();
    let elapsed = start.elapsed();
    let ok = r.ok() && elapsed < Duration::from_secs(30);
    verdict(
        "1 (cnf round-trip and algebra, 10^4 terms, < 30 s)",
        ok,
        format!("{}; elapsed {elapsed:?}", suite_line(&r)),
    );
}

#[test]
fn criterion_02_substitution_calculus() {
    let r = run_suite("subst-props", SEED, 1_000).unwrap();
    let ok = r.ok() && r.skipped == 0;
    verdict("2 (substitution calculus, 10^3 samples)", ok, suite_line(&r));
}

#[test]
fn criterion_03_eta_pi_d_suite() {
    let r = run_suite("eta-props", SEED, 1_000).unwrap();
    let ok = r.ok() && r.skipped == 0;
    verdict("3 (eta/pi/d properties and substitution, 10^3 samples)", ok, suite_line(&r));
}

#[test]
fn criterion_04_wilken_cross_check() {
    let r = wilken_cross_check(4);
    let ok = r.ok() && r.passed >= 500;
    verdict(
        "4 (reach formula vs divisibility criterion, enumerated principals)",
        ok,
        suite_line(&r),
    );
}

#[test]
fn criterion_05_covering_suite() {
    let r = run_suite("cover-props", SEED, 500).unwrap();
    let ok = r.ok() && r.skipped == 0;
    verdict("5 (covering constructions, 500 samples)", ok, suite_line(&r));
}

#[test]
fn criterion_06_fundamental_sequences() {
    let r = run_suite("fundseq-props", SEED, 200).unwrap();
    let ok = r.ok() && r.skipped == 0;
    verdict("6 (fundamental sequences, 200 tuples, domination within fuel 64)", ok, suite_line(&r));
}

#[test]
fn criterion_07_reach_table() {
    let engine = Engine::new(Config::default());
    let w = Ordinal::omega;
    let table: Vec<(Ordinal, Ordinal)> = vec![
        (Ordinal::one(), Ordinal::Zero),
        (w(), Ordinal::one()),
        (w().mul(&w()), Ordinal::nat(2)),
        (w().mul(&w()).mul(&w()), Ordinal::nat(3)),
        (w().omega_pow(), w()),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (index, tail) in table {
        let alpha = Ordinal::eps(index.clone());
        let expect = alpha.mul(&Ordinal::nat(2)).add(&tail);
        let start = Instant::now();
        let (value, v) = engine.m_of(&alpha).unwrap();
        let elapsed = start.elapsed();
        let this = value.as_ref() == Some(&expect)
            && v.is_certified()
            && replay(&v).is_ok()
            && elapsed < Duration::from_secs(1);
        if !this {
            ok = false;
        }
        detail.push_str(&format!(
            "m(e({index})) = {} in {elapsed:?}; ",
            value.map(|m| m.to_string()).unwrap_or_else(|| "?".into())
        ));
    }
    verdict("7 (reach table, certified, each query < 1 s)", ok, detail);
}

#[test]
fn criterion_08_recursive_vs_direct_route() {
    let r = run_suite("a-eq-g", SEED, 120).unwrap();
    // every comparison counts two checks: agreement and replay
    let compared = r.passed / 2;
    let ok = r.ok() && compared >= 100;
    verdict(
        "8 (recursive route = direct route, >= 100 certified triples)",
        ok,
        format!("{} certified comparisons; {}", compared, suite_line(&r)),
    );
}

#[test]
fn criterion_09_restriction_law() {
    let r = run_suite("restriction", SEED, 50).unwrap();
    let ok = r.ok() && r.passed >= 50;
    verdict("9 (restriction law, 50 triples)", ok, suite_line(&r));
}

#[test]
fn criterion_10_witness_corroboration() {
    let r = witness_corroboration(SEED, 120);
    let ok = r.ok() && r.passed >= 100;
    verdict(
        "10 (substitution witnesses corroborate every certified verdict)",
        ok,
        suite_line(&r),
    );
}

#[test]
fn criterion_11_engine_axioms_and_replay() {
    let r = run_suite("engine-axioms", SEED, 400).unwrap();
    let ok = r.ok() && r.passed >= 400;
    verdict(
        "11 (connectedness, continuity, fuel monotonicity, 100% replay)",
        ok,
        suite_line(&r),
    );
}
