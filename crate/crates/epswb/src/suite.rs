//! Seeded verification suites: randomized law checks for every layer of the
//! library, cross-checks between the independent reach routes, and the
//! pinned reach table. Each suite is deterministic given its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cover::{c_cover, d_cover, delta_cover};
use crate::engine::{replay, Config, Engine, Truth};
use crate::eta::{d_of, eta_of, m_non_epsilon, pi_of, wilken_le1_plus};
use crate::fundseq::l_seq;
use crate::oracle::subst_witness_search;
use crate::set::FinOrdSet;
use crate::subst::{ep_set, in_m, subst};
use crate::term::Ordinal;

pub const SUITE_NAMES: &[&str] = &[
    "cnf-laws",
    "subst-props",
    "eta-props",
    "cover-props",
    "fundseq-props",
    "engine-axioms",
    "a-eq-g",
    "restriction",
    "m-table",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'; known suites: cnf-laws, subst-props, eta-props, cover-props, fundseq-props, engine-axioms, a-eq-g, restriction, m-table")]
    Unknown(String),
}

/// Machine-readable outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub budget: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, seed: u64, budget: usize) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            seed,
            budget,
            passed: 0,
            failed: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn pass(&mut self) {
        self.passed += 1;
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < 16 {
            self.failures.push(msg);
        }
    }

    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if cond {
            self.pass();
        } else {
            self.fail(msg());
        }
    }
}

/// Run a registered suite with the given seed and case budget.
pub fn run_suite(name: &str, seed: u64, budget: usize) -> Result<SuiteReport, SuiteError> {
    match name {
        "cnf-laws" => Ok(cnf_laws(seed, budget)),
        "subst-props" => Ok(subst_props(seed, budget)),
        "eta-props" => Ok(eta_props(seed, budget)),
        "cover-props" => Ok(cover_props(seed, budget)),
        "fundseq-props" => Ok(fundseq_props(seed, budget)),
        "engine-axioms" => Ok(engine_axioms(seed, budget)),
        "a-eq-g" => Ok(a_eq_g(seed, budget)),
        "restriction" => Ok(restriction(seed, budget)),
        "m-table" => Ok(m_table(seed, budget)),
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}

/// Seeded term generator used by all suites.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    fn coeff(&mut self) -> u32 {
        self.rng.gen_range(1..=3)
    }

    /// Arbitrary ordinal with bounded structural depth and epsilon nesting.
    pub fn ordinal(&mut self, depth: usize, eps: usize) -> Ordinal {
        match self.rng.gen_range(0..10u8) {
            0 => Ordinal::Zero,
            1..=3 => Ordinal::nat(self.rng.gen_range(1..=5)),
            4 | 5 if eps > 0 && depth > 0 => {
                Ordinal::eps(self.ordinal(depth - 1, eps - 1))
            }
            _ if depth == 0 => Ordinal::nat(self.rng.gen_range(1..=5)),
            _ => {
                let n = self.rng.gen_range(1..=3);
                let mut acc = Ordinal::Zero;
                for _ in 0..n {
                    let e = self.ordinal(depth - 1, eps);
                    let c = self.coeff();
                    acc = acc.add(&e.omega_pow().mul(&Ordinal::nat(c)));
                }
                acc
            }
        }
    }

    /// A random epsilon atom.
    pub fn epsilon(&mut self, depth: usize) -> Ordinal {
        Ordinal::eps(self.ordinal(depth, 1))
    }

    /// An epsilon strictly below `bound`, if the generator finds one.
    fn epsilon_below(&mut self, bound: &Ordinal, depth: usize) -> Option<Ordinal> {
        for _ in 0..16 {
            let e = self.epsilon(depth);
            if e < *bound {
                return Some(e);
            }
        }
        None
    }

    /// A member of `M(alpha, e)`: built from the atom `alpha`, epsilons
    /// below `window`, and small ordinals. Always below `alpha^+`.
    pub fn member(&mut self, alpha: &Ordinal, window: &Ordinal, depth: usize) -> Ordinal {
        match self.rng.gen_range(0..10u8) {
            0 => Ordinal::Zero,
            1 | 2 => Ordinal::nat(self.rng.gen_range(1..=5)),
            3 | 4 => alpha.clone(),
            5 if !window.is_zero() => self
                .epsilon_below(window, 1)
                .unwrap_or_else(|| Ordinal::nat(1)),
            _ if depth == 0 => {
                if self.coin() {
                    alpha.clone()
                } else {
                    Ordinal::nat(self.rng.gen_range(1..=5))
                }
            }
            _ => {
                let n = self.rng.gen_range(1..=3);
                let mut acc = Ordinal::Zero;
                for _ in 0..n {
                    let e = self.member(alpha, window, depth - 1);
                    let c = self.coeff();
                    acc = acc.add(&e.omega_pow().mul(&Ordinal::nat(c)));
                }
                acc
            }
        }
    }

    /// A member of `[alpha, alpha^+)` whose epsilons below `alpha` lie
    /// below `window`.
    pub fn interval(&mut self, alpha: &Ordinal, window: &Ordinal, depth: usize) -> Ordinal {
        let exp = if depth == 0 || self.coin() {
            alpha.clone()
        } else {
            self.interval(alpha, window, depth - 1)
        };
        let mut t = exp.omega_pow().mul(&Ordinal::nat(self.coeff()));
        if self.coin() {
            t = t.add(&self.member(alpha, window, depth.saturating_sub(1)));
        }
        t
    }

    /// A limit member of `(alpha, alpha^+)`, for sequence tests.
    pub fn interval_limit(&mut self, alpha: &Ordinal, window: &Ordinal, depth: usize) -> Ordinal {
        loop {
            let t = self.interval(alpha, window, depth);
            if t.is_limit() && t > *alpha {
                return t;
            }
        }
    }
}

fn cnf_laws(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("cnf-laws", seed, budget);
    let mut g = Gen::new(seed);
    for _ in 0..budget {
        let a = g.ordinal(6, 3);
        let b = g.ordinal(6, 3);
        let c = g.ordinal(6, 3);

        let printed = a.to_string();
        match crate::parse::parse(&printed) {
            Ok(back) => r.check(back == a, || format!("round-trip broke on {printed}")),
            Err(e) => r.fail(format!("reparse of {printed} failed: {e}")),
        }

        r.check(
            a.add(&b).add(&c) == a.add(&b.add(&c)),
            || format!("add not associative at {a}, {b}, {c}"),
        );
        r.check(
            a.mul(&b).mul(&c) == a.mul(&b.mul(&c)),
            || format!("mul not associative at {a}, {b}, {c}"),
        );
        r.check(
            a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)),
            || format!("left distributivity failed at {a}, {b}, {c}"),
        );
        r.check(a <= a.add(&b), || format!("a <= a+b failed at {a}, {b}"));
        if b < c {
            r.check(a.add(&b) < a.add(&c), || format!("add not strict in {a}+{b} vs {a}+{c}"));
            if !a.is_zero() {
                r.check(
                    a.mul(&b) < a.mul(&c),
                    || format!("mul not strict in {a}*{b} vs {a}*{c}"),
                );
            }
        }
        if a < b {
            r.check(
                a.omega_pow() < b.omega_pow(),
                || format!("omega_pow not strictly monotone at {a} < {b}"),
            );
        }
        r.check(
            a.is_epsilon() == (a.omega_pow() == a),
            || format!("epsilon fixed-point law failed at {a}"),
        );
        let e = Ordinal::eps(a.clone());
        r.check(a < e, || format!("index {a} not below its epsilon"));
    }
    r
}

fn subst_props(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("subst-props", seed, budget);
    let mut g = Gen::new(seed);
    for _ in 0..budget {
        let alpha = g.epsilon(2);
        let e = g.epsilon(2);
        let window = alpha.clone().min(e.clone());
        let mut q = g.member(&alpha, &window, 3);
        let mut s = g.member(&alpha, &window, 3);
        let mut tries = 0;
        while (!in_m(&q, &alpha, &e).unwrap() || !in_m(&s, &alpha, &e).unwrap()) && tries < 16 {
            q = g.member(&alpha, &window, 3);
            s = g.member(&alpha, &window, 3);
            tries += 1;
        }
        if tries == 16 {
            r.skip();
            continue;
        }
        let sub = |x: &Ordinal| subst(x, &alpha, &e).unwrap();
        let (q1, s1) = (sub(&q), sub(&s));

        r.check(
            q.cmp(&s) == q1.cmp(&s1),
            || format!("order not preserved: {q} vs {s} under [{alpha} := {e}]"),
        );
        r.check(s1 < e.next_epsilon(), || format!("{s1} escaped below {e}^+"));
        let lhs = ep_set(&s1).below(&e);
        let rhs = ep_set(&s).below(&alpha);
        r.check(lhs == rhs, || format!("epsilon window changed: {lhs} vs {rhs}"));

        r.check(sub(&q.add(&s)) == q1.add(&s1), || format!("add hom failed at {q}, {s}"));
        r.check(sub(&q.mul(&s)) == q1.mul(&s1), || format!("mul hom failed at {q}, {s}"));
        r.check(
            sub(&s.omega_pow()) == s1.omega_pow(),
            || format!("omega_pow hom failed at {s}"),
        );
        r.check(
            subst(&s1, &e, &alpha).unwrap() == s,
            || format!("involution failed at {s}"),
        );

        // tail closure: every CNF suffix of a member is a member
        let ms = s.monomials();
        for k in 0..ms.len() {
            let tail = Ordinal::from_monomials(ms[k..].to_vec());
            r.check(
                in_m(&tail, &alpha, &e).unwrap(),
                || format!("tail {tail} of {s} left M({alpha}, {e})"),
            );
        }

        // closure of M under the three operations
        for (x, label) in [
            (q.add(&s), "sum"),
            (q.mul(&s), "product"),
            (s.omega_pow(), "power"),
        ] {
            r.check(
                in_m(&x, &alpha, &e).unwrap(),
                || format!("M not closed under {label} at {q}, {s}"),
            );
        }
    }
    r
}

fn eta_props(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("eta-props", seed, budget);
    let mut g = Gen::new(seed);
    for _ in 0..budget {
        let alpha = g.epsilon(1);
        let beta = g.epsilon(1);
        let window = alpha.clone().min(beta.clone());
        let t = g.interval(&alpha, &window, 3);
        let s = g.interval(&alpha, &window, 3);
        let (lo, hi) = if t <= s { (t, s) } else { (s, t) };

        let pi_lo = pi_of(&lo).unwrap();
        r.check(
            pi_of(&lo.succ()).unwrap() == pi_lo,
            || format!("pi(t+1) != pi t at {lo}"),
        );
        let t1 = lo.leading_exponent().unwrap().clone();
        r.check(
            d_of(&pi_lo) <= t1 && t1 <= pi_lo,
            || format!("d pi t <= T1 <= pi t failed at {lo}"),
        );

        let pi_hi = pi_of(&hi).unwrap();
        r.check(pi_lo <= pi_hi, || format!("pi not monotone at {lo} <= {hi}"));
        r.check(
            pi_lo.add(&d_of(&pi_lo)) <= pi_hi.add(&d_of(&pi_hi)),
            || format!("pi + d pi not monotone at {lo} <= {hi}"),
        );
        let eta_lo = eta_of(&lo).unwrap();
        let eta_hi = eta_of(&hi).unwrap();
        r.check(eta_lo <= eta_hi, || format!("eta not monotone at {lo} <= {hi}"));
        r.check(
            alpha.mul(&Ordinal::nat(2)) <= eta_lo,
            || format!("alpha*2 <= eta t failed at {lo} over {alpha}"),
        );
        r.check(
            eta_of(&eta_lo).unwrap() == eta_lo,
            || format!("eta not idempotent at {lo}"),
        );

        // eta s is the maximum of the interval reaches up to s
        let a2 = alpha.mul(&Ordinal::nat(2));
        if lo <= a2 {
            r.check(
                eta_lo == a2,
                || format!("eta below alpha*2 must be alpha*2, got {eta_lo} at {lo}"),
            );
        } else {
            let pi = pi_of(&lo).unwrap();
            let mut probes = vec![lo.clone(), pi];
            probes.push(g.interval(&alpha, &window, 2).min(lo.clone()));
            let mut attained = false;
            let mut bounded = true;
            for u in probes {
                if u <= alpha {
                    continue;
                }
                let m = crate::eta::m_interval(&u, &alpha).unwrap();
                if m == eta_lo {
                    attained = true;
                }
                if m > eta_lo {
                    bounded = false;
                }
            }
            r.check(
                attained && bounded,
                || format!("eta {eta_lo} is not the max interval reach at {lo}"),
            );
        }

        // substitution commutation, under the epsilon window
        if beta < alpha && !ep_set(&lo).below(&alpha).iter().any(|m| m >= &beta) {
            let sub = |x: &Ordinal| subst(x, &alpha, &beta).unwrap();
            let moved = sub(&lo);
            let pieces = [
                ep_set(&pi_lo).below(&alpha),
                ep_set(&d_of(&pi_lo)).below(&alpha),
                ep_set(&eta_lo).below(&alpha),
            ];
            r.check(
                pieces.iter().all(|p| p.iter().all(|m| m < &beta)),
                || format!("window not preserved by pi/d/eta at {lo}"),
            );
            r.check(
                pi_of(&moved).unwrap() == sub(&pi_lo),
                || format!("pi does not commute with substitution at {lo}"),
            );
            r.check(
                d_of(&pi_of(&moved).unwrap()) == sub(&d_of(&pi_lo)),
                || format!("d pi does not commute at {lo}"),
            );
            r.check(
                eta_of(&moved).unwrap() == sub(&eta_lo),
                || format!("eta does not commute at {lo}"),
            );
        }
    }
    r
}

// Epsilon atoms capped at index 2, for the cover suite's size bound.
fn low_ordinal(g: &mut Gen, depth: usize) -> Ordinal {
    let x = g.ordinal(depth, 0);
    match g.rng.gen_range(0..4u8) {
        0 => x,
        1 => x.add(&Ordinal::eps(Ordinal::nat(g.rng.gen_range(0..=2))).mul(&Ordinal::nat(g.coeff()))),
        2 => Ordinal::eps(Ordinal::nat(g.rng.gen_range(0..=2)))
            .add(&x)
            .add(&Ordinal::nat(g.rng.gen_range(0..=3))),
        _ => x
            .add(&Ordinal::eps(Ordinal::nat(g.rng.gen_range(0..=2))).omega_pow().mul(&x.omega_pow()))
            .add(&x),
    }
}

fn cover_props(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("cover-props", seed, budget);
    let mut g = Gen::new(seed);
    let low_epsilons: Vec<Ordinal> =
        (0..=2).map(|k| Ordinal::eps(Ordinal::nat(k))).collect();
    for _ in 0..budget {
        let mut delta = low_ordinal(&mut g, 3);
        while delta.is_zero() {
            delta = low_ordinal(&mut g, 3);
        }
        let cover = match c_cover(&delta) {
            Err(e) => {
                r.fail(format!("cover of {delta} failed: {e}"));
                continue;
            }
            Ok(c) => c,
        };
        r.check(
            cover.len() >= delta.mono_len(),
            || format!("cover of {delta} smaller than its monomial count"),
        );
        r.check(cover.contains(&delta), || format!("{delta} missing from its own cover"));
        let mut monomials_in = true;
        for m in delta.monomials() {
            if !cover.contains(&Ordinal::from_monomials(vec![m])) {
                monomials_in = false;
            }
        }
        r.check(monomials_in, || format!("monomial missing from cover of {delta}"));
        let eta = eta_of(&delta).unwrap();
        r.check(
            cover.max().map(|m| *m <= eta).unwrap_or(true),
            || format!("cover of {delta} exceeds eta + 1"),
        );
        let mut transitive = true;
        for rho in cover.iter() {
            if rho.is_zero() {
                continue;
            }
            let inner = c_cover(rho).unwrap();
            if !inner.is_subset(&cover) {
                transitive = false;
            }
        }
        r.check(transitive, || format!("cover of {delta} not transitively closed"));

        if let Some(alpha) = low_epsilons.iter().rev().find(|a| **a <= delta) {
            let d = d_cover(alpha, &delta).unwrap();
            r.check(
                d.contains(&eta),
                || format!("eta {eta} missing from D({alpha}, {delta})"),
            );
        }

        // finite-set cover bound
        let alpha = Ordinal::eps(Ordinal::nat(g.rng.gen_range(0..=2)));
        let mut b = FinOrdSet::new();
        for _ in 0..g.rng.gen_range(1..=3usize) {
            let x = low_ordinal(&mut g, 2);
            if x < alpha.next_epsilon() {
                b.insert(x);
            }
        }
        match delta_cover(&alpha, &b) {
            Err(e) => r.fail(format!("delta cover of {b} failed: {e}")),
            Ok(big) => {
                if b.iter().all(|x| x < &alpha) {
                    r.check(big == b, || format!("low set {b} was not left alone"));
                } else {
                    let top = b.max().unwrap();
                    let bound = eta_of(top).unwrap();
                    r.check(
                        big.max().map(|m| *m <= bound).unwrap_or(true),
                        || format!("delta cover of {b} exceeds eta(max) + 1"),
                    );
                }
            }
        }

        // substitution compatibility of covers
        let e_target = Ordinal::eps(Ordinal::nat(g.rng.gen_range(3..=4)));
        let alpha2 = Ordinal::eps(Ordinal::nat(2));
        if in_m(&delta, &alpha2, &e_target).unwrap() {
            let moved = subst(&delta, &alpha2, &e_target).unwrap();
            let image_cover = c_cover(&moved).unwrap();
            let mut compatible = true;
            for x in cover.iter() {
                if !in_m(x, &alpha2, &e_target).unwrap() {
                    compatible = false;
                    continue;
                }
                let y = subst(x, &alpha2, &e_target).unwrap();
                if !image_cover.contains(&y) {
                    compatible = false;
                }
            }
            r.check(
                compatible,
                || format!("cover of {delta} not mapped into cover of {moved}"),
            );
        }
    }
    r
}

fn fundseq_props(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("fundseq-props", seed, budget);
    let mut g = Gen::new(seed);
    let small: Vec<Ordinal> = [1u32, 2, 3, 5].iter().map(|&n| Ordinal::nat(n)).collect();
    for _ in 0..budget {
        let beta = g.epsilon(1);
        let alpha = Ordinal::eps(beta.clone().add(&Ordinal::nat(g.rng.gen_range(1..=2))));
        let t = g.interval_limit(&alpha, &beta, 3);
        let seq = match l_seq(&t, &alpha) {
            Err(e) => {
                r.fail(format!("no sequence for {t} over {alpha}: {e}"));
                continue;
            }
            Ok(s) => s,
        };
        r.check(
            seq.index_bound <= alpha,
            || format!("index bound of {t} exceeds {alpha}"),
        );

        // (1) strictly increasing, inside (alpha, t)
        let mut prev: Option<Ordinal> = None;
        for j in small.iter().filter(|j| **j < seq.index_bound) {
            let v = seq.eval(j).unwrap();
            r.check(
                v > alpha && v < t,
                || format!("member at {j} of {t} out of range: {v}"),
            );
            if let Some(p) = &prev {
                r.check(*p < v, || format!("sequence of {t} not increasing at {j}"));
            }
            prev = Some(v);
        }

        // (2) substitution compatibility and the restriction property
        if ep_set(&t).below(&alpha).iter().all(|m| m < &beta) {
            let moved = subst(&t, &alpha, &beta).unwrap();
            if moved.is_limit() && moved > beta {
                match l_seq(&moved, &beta) {
                    Err(e) => r.fail(format!("no sequence for {moved} over {beta}: {e}")),
                    Ok(moved_seq) => {
                        let mut ok = true;
                        for j in small.iter().filter(|j| **j < moved_seq.index_bound) {
                            let lj = seq.eval(j).unwrap();
                            if !ep_set(&lj).below(&alpha).iter().all(|m| m < &beta) {
                                ok = false;
                                continue;
                            }
                            let pushed = subst(&lj, &alpha, &beta).unwrap();
                            if moved_seq.eval(j).unwrap() != pushed {
                                ok = false;
                            }
                        }
                        r.check(ok, || format!("sequence of {t} does not restrict to {beta}"));
                    }
                }
                // (3) eta bounds after substitution
                let eta_moved = eta_of(&moved).unwrap();
                let pi_t = pi_of(&t).unwrap();
                let strict = t > pi_t.add(&d_of(&pi_t));
                let mut ok = true;
                for j in small.iter().filter(|j| **j < seq.index_bound.clone().min(beta.clone())) {
                    let lj = seq.eval(j).unwrap();
                    if !ep_set(&lj).below(&alpha).iter().all(|m| m < &beta) {
                        continue;
                    }
                    let pushed = subst(&lj, &alpha, &beta).unwrap();
                    let eta_pushed = eta_of(&pushed).unwrap();
                    if eta_pushed > eta_moved || (strict && eta_pushed >= eta_moved) {
                        ok = false;
                    }
                }
                r.check(ok, || format!("eta bound failed along the sequence of {t}"));
            }
        }

        // cofinality probe: a dominating member exists for any s < t
        let probe = {
            let x = g.member(&alpha, &beta, 2);
            if x >= t {
                alpha.clone()
            } else {
                x.max(alpha.clone())
            }
        };
        match seq.dominating_index(&probe) {
            None => r.fail(format!("no member of {t} dominates {probe}")),
            Some(j) => r.check(
                seq.eval(&j).unwrap() > probe,
                || format!("claimed dominating index {j} of {t} fails"),
            ),
        }
    }
    r
}

fn engine_axioms(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("engine-axioms", seed, budget);
    let mut g = Gen::new(seed);
    let engine = Engine::new(Config::default());
    let fuel = 256;
    for _ in 0..budget {
        let alpha = g.epsilon(2);
        let s = if g.coin() {
            g.interval(&alpha, &alpha, 2)
        } else {
            // reach-shaped targets exercise both sides of the boundary
            let tail = g.ordinal(2, 1);
            alpha.mul(&Ordinal::nat(2)).add(&tail)
        };
        if s >= alpha.next_epsilon() {
            r.skip();
            continue;
        }
        let v = engine.le1_decide_with_fuel(&alpha, &s, fuel).unwrap();
        if !v.is_certified() {
            r.skip();
            continue;
        }
        r.check(
            replay(&v).is_ok(),
            || format!("replay failed for {alpha} <=1 {s}: {:?}", replay(&v).err()),
        );

        // fuel monotonicity, on a fresh engine so the memo cannot answer
        let fresh = Engine::new(Config::default());
        let again = fresh.le1_decide_with_fuel(&alpha, &s, fuel * 2).unwrap();
        r.check(
            again.value == v.value,
            || format!("verdict flipped under more fuel at {alpha} <=1 {s}"),
        );

        if v.value == Truth::True {
            // connectedness: anything between alpha and s is reachable
            let mid = if s.is_limit() {
                l_seq(&s, &alpha).ok().map(|seq| seq.eval(&Ordinal::one()).unwrap())
            } else {
                s.pred_if_succ()
            };
            if let Some(mid) = mid.filter(|m| *m >= alpha) {
                let vm = engine.le1_decide_with_fuel(&alpha, &mid, fuel).unwrap();
                r.check(
                    vm.certified_value() == Some(true),
                    || format!("connectedness failed: {alpha} reaches {s} but not {mid}"),
                );
            }
        } else if s.is_limit() && s > alpha {
            // continuity: a refuted limit must have refuted approximants in
            // every tail, in particular past the certified reach boundary
            if let Ok(seq) = l_seq(&s, &alpha) {
                if let (Some(reach), _) = engine.m_of_with_fuel(&alpha, fuel).unwrap() {
                    match seq.dominating_index(&reach) {
                        None => r.skip(),
                        Some(j) => {
                            let lj = seq.eval(&j).unwrap();
                            let vj = engine.le1_decide_with_fuel(&alpha, &lj, fuel).unwrap();
                            r.check(
                                vj.certified_value() == Some(false),
                                || format!(
                                    "continuity: {s} refuted over {alpha} but the tail member {lj} passes"
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    r
}

fn epsilon_pool(g: &mut Gen) -> Ordinal {
    let idx = match g.rng.gen_range(0..10u8) {
        0 => Ordinal::omega(),
        1 => Ordinal::omega().omega_pow(),
        2 => Ordinal::omega().mul(&Ordinal::nat(g.rng.gen_range(1..=3))),
        3 => Ordinal::nat(2).omega_pow(),  // w^2
        4 => Ordinal::nat(3).omega_pow(),  // w^3
        5 => Ordinal::eps(Ordinal::Zero),
        6 => Ordinal::omega().add(&Ordinal::nat(g.rng.gen_range(1..=2))),
        // epsilon-sized index depths, for cross-base membership probes
        7 => Ordinal::eps(Ordinal::Zero).mul(&Ordinal::nat(2)),
        8 => Ordinal::eps(Ordinal::omega().mul(&Ordinal::nat(2))),
        _ => Ordinal::omega().omega_pow().mul(&Ordinal::nat(2)),
    };
    Ordinal::eps(idx)
}

fn a_eq_g(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("a-eq-g", seed, budget);
    let mut g = Gen::new(seed);
    let engine = Engine::new(Config::default());
    let fuel = 256;
    for _ in 0..budget {
        let alpha = epsilon_pool(&mut g);
        let beta = epsilon_pool(&mut g);
        let window = alpha.clone().min(beta.clone());
        let t = if g.coin() { g.interval(&alpha, &window, 2) } else { alpha.clone() };
        if t >= alpha.next_epsilon() {
            r.skip();
            continue;
        }
        let via_a = engine.a_member(&beta, &t, &alpha, fuel).unwrap();
        let via_g = engine.g_member(&beta, &t, &alpha, fuel).unwrap();
        match (via_a.certified_value(), via_g.certified_value()) {
            (Some(a), Some(b)) => {
                r.check(
                    a == b,
                    || format!("routes disagree at beta={beta}, t={t}, alpha={alpha}: {a} vs {b}"),
                );
                r.check(
                    replay(&via_a).is_ok() && replay(&via_g).is_ok(),
                    || format!("replay failed at beta={beta}, t={t}, alpha={alpha}"),
                );
            }
            _ => r.skip(),
        }
    }
    r
}

fn restriction(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("restriction", seed, budget);
    let mut g = Gen::new(seed);
    let engine = Engine::new(Config::default());
    let fuel = 256;
    for _ in 0..budget {
        let alpha = epsilon_pool(&mut g);
        let beta = Ordinal::eps(alpha.clone().add(&Ordinal::nat(g.rng.gen_range(1..=2))));
        let window = g
            .epsilon_below(&alpha, 1)
            .unwrap_or_else(|| Ordinal::eps(Ordinal::Zero))
            .min(alpha.clone());
        let t = g.interval(&beta, &window, 2);
        if t >= beta.next_epsilon() {
            r.skip();
            continue;
        }
        let probes: Vec<Ordinal> = (0..4)
            .filter_map(|_| {
                let gamma = epsilon_pool(&mut g);
                if gamma <= alpha {
                    Some(gamma)
                } else {
                    None
                }
            })
            .chain(std::iter::once(alpha.clone()))
            .collect();
        match engine.restriction_check(&t, &beta, &alpha, &probes, fuel) {
            Err(e) => r.fail(format!("restriction setup failed at t={t}: {e}")),
            Ok(report) => r.check(
                report.disagreements == 0,
                || format!("restriction law failed at t={t}, beta={beta}, alpha={alpha}"),
            ),
        }
    }
    r
}

fn m_table(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("m-table", seed, budget);
    let engine = Engine::new(Config::default());
    let w = Ordinal::omega;
    let pinned: Vec<(Ordinal, Ordinal)> = vec![
        (w(), Ordinal::one()),
        (w().mul(&w()), Ordinal::nat(2)),
        (w().mul(&w()).mul(&w()), Ordinal::nat(3)),
        (w().omega_pow(), w()),
    ];
    // pinned entries: m(e(1)) = e(1)*2, then the limit-index ladder
    let e1 = Ordinal::eps(Ordinal::one());
    match engine.m_of(&e1) {
        Ok((Some(value), v)) if v.is_certified() => {
            r.check(
                value == e1.mul(&Ordinal::nat(2)),
                || format!("m(e(1)) = {value}"),
            );
            r.check(replay(&v).is_ok(), || "replay of m(e(1)) failed".to_string());
        }
        _ => r.fail("m(e(1)) not certified".to_string()),
    }
    for (idx, reach) in pinned {
        let alpha = Ordinal::eps(idx.clone());
        let expect = alpha.mul(&Ordinal::nat(2)).add(&reach);
        match engine.m_of(&alpha) {
            Ok((Some(value), v)) if v.is_certified() => {
                r.check(value == expect, || format!("m(e({idx})) = {value}, expected {expect}"));
                r.check(replay(&v).is_ok(), || format!("replay of m(e({idx})) failed"));
            }
            _ => r.fail(format!("m(e({idx})) not certified")),
        }
    }
    // random indices against the independent iterated-limit index oracle
    let mut g = Gen::new(seed);
    for _ in 0..budget {
        let i = g.ordinal(3, 1);
        let alpha = Ordinal::eps(i.clone());
        let oracle = alpha
            .mul(&Ordinal::nat(2))
            .add(&i.last_exponent().cloned().unwrap_or(Ordinal::Zero));
        match engine.m_of_with_fuel(&alpha, 256) {
            Ok((Some(value), v)) if v.is_certified() => {
                r.check(
                    value == oracle,
                    || format!("m(e({i})) = {value} disagrees with index oracle {oracle}"),
                );
                // realization: the reach is eta-fixed and is the image of
                // an eta-fixed point one level up
                r.check(
                    eta_of(&value).unwrap() == value,
                    || format!("reach {value} of e({i}) is not eta-fixed"),
                );
                let up = Ordinal::eps(alpha.succ());
                let t = subst(&value, &alpha, &up).unwrap();
                let back = subst(&t, &up, &alpha).unwrap();
                r.check(
                    eta_of(&t).unwrap() == t && back == value,
                    || format!("reach {value} of e({i}) is not a substitution instance"),
                );
            }
            _ => r.fail(format!("m(e({i})) not certified")),
        }
    }
    r
}

/// Criterion-4 style enumeration: every principal below `w^(w^4)` with
/// coefficients at most `max_coeff`, paired with its reach boundary.
pub fn wilken_cross_check(max_coeff: u32) -> SuiteReport {
    let mut r = SuiteReport::new("wilken-cross-check", 0, 0);
    for a3 in 0..=max_coeff {
        for a2 in 0..=max_coeff {
            for a1 in 0..=max_coeff {
                for a0 in 0..=max_coeff {
                    let mut a = Ordinal::Zero;
                    for (exp, c) in [(3u32, a3), (2, a2), (1, a1), (0, a0)] {
                        if c > 0 {
                            a = a.add(&Ordinal::nat(exp).omega_pow().mul(&Ordinal::nat(c)));
                        }
                    }
                    if a.is_zero() {
                        continue;
                    }
                    let alpha = a.omega_pow();
                    let m = m_non_epsilon(&alpha).unwrap();
                    let reach = m.sub_left(&alpha).unwrap();
                    // downward-closed in xi, so the boundary pair settles the max
                    let ok_at = if reach.is_zero() {
                        true
                    } else {
                        wilken_le1_plus(&alpha, &reach).unwrap_or(false)
                    };
                    let next = reach.succ();
                    let ok_above = if next < alpha {
                        !wilken_le1_plus(&alpha, &next).unwrap_or(true)
                    } else {
                        true
                    };
                    r.check(
                        ok_at && ok_above,
                        || format!("reach of {alpha} disagrees with the divisibility bound"),
                    );
                }
            }
        }
    }
    r
}

/// Criterion-10 style corroboration: engine verdicts at `eta t + 1` versus
/// substitution witnesses on `B(t)`.
pub fn witness_corroboration(seed: u64, budget: usize) -> SuiteReport {
    let mut r = SuiteReport::new("witness-corroboration", seed, budget);
    let mut g = Gen::new(seed);
    let engine = Engine::new(Config::default());
    let fuel = 256;
    for _ in 0..budget {
        let alpha = epsilon_pool(&mut g);
        let window = g
            .epsilon_below(&alpha, 1)
            .map(|e| e.min(alpha.clone()))
            .unwrap_or(Ordinal::Zero);
        let t = g.interval(&alpha, &window, 2);
        if t >= alpha.next_epsilon() {
            r.skip();
            continue;
        }
        let eta_t = eta_of(&t).unwrap();
        let target = eta_t.succ();
        let v = engine.le1_decide_with_fuel(&alpha, &target, fuel).unwrap();
        let b = match crate::cover::b_t(&t) {
            Err(_) => {
                r.skip();
                continue;
            }
            Ok(b) => b,
        };
        let found = subst_witness_search(&engine, &alpha, &b, fuel);
        match v.certified_value() {
            Some(true) => match &found {
                None => r.fail(format!(
                    "certified {alpha} <=1 {target} but no substitution witness on B({t})"
                )),
                Some((gamma, witness)) => {
                    // covering bound: the witness dominates the substitution
                    let mut dominated = true;
                    for (x, hx) in &witness.pairs {
                        if subst(x, &alpha, gamma).unwrap() > *hx {
                            dominated = false;
                        }
                    }
                    r.check(
                        dominated,
                        || format!("witness at {gamma} fails the domination bound for {t}"),
                    );
                }
            },
            Some(false) => r.check(
                found.is_none(),
                || format!("refuted {alpha} <=1 {target} yet a grid witness passed on B({t})"),
            ),
            None => r.skip(),
        }
    }
    r
}
