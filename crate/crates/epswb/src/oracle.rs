//! Brute-force corroboration of the decision engine: isomorphism checking
//! on finite sets, substitution witness search over candidate grids, and
//! the minimality check for cover isomorphisms.
//!
//! The oracle never trusts the reduction engine's internals: structure
//! preservation is checked pair by pair against a reach function computed
//! from the closed-form results, and witnesses are searched on exactly the
//! canonical sets on which any valid isomorphism must be a substitution.

use crate::cover::delta_cover;
use crate::engine::Engine;
use crate::eta::m_non_epsilon;
use crate::fundseq::index_grid;
use crate::set::FinOrdSet;
use crate::subst::{ep_set, subst, subst_map, IsoWitness};
use crate::term::Ordinal;

/// Maximal reach of an arbitrary ordinal: closed form off the epsilons,
/// engine-certified on them. `None` when the engine runs out of fuel.
pub fn reach_of(x: &Ordinal, engine: &Engine, fuel: u64) -> Option<Ordinal> {
    if x.is_zero() {
        return Some(Ordinal::Zero);
    }
    if x.is_epsilon() {
        let (value, _verdict) = engine.m_of_with_fuel(x, fuel).ok()?;
        value
    } else {
        m_non_epsilon(x).ok()
    }
}

/// Decide `x <=1 y` for arbitrary `x <= y` through the reach function.
pub fn le1_pair(x: &Ordinal, y: &Ordinal, engine: &Engine, fuel: u64) -> Option<bool> {
    if x > y {
        return Some(false);
    }
    if x == y {
        return Some(true);
    }
    let reach = reach_of(x, engine, fuel)?;
    Some(*y <= reach)
}

/// First violation found while checking a witness, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoViolation {
    NotInjective { image: Ordinal },
    OrderBroken { x: Ordinal, y: Ordinal },
    NotFixedBelow { x: Ordinal },
    AddClosure { x: Ordinal, y: Ordinal, z: Ordinal },
    OmegaPowClosure { x: Ordinal, z: Ordinal },
    Le1Broken { x: Ordinal, y: Ordinal },
    OracleGap { x: Ordinal, y: Ordinal },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub checked_pairs: usize,
    pub violation: Option<IsoViolation>,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Verify that a finite map is an order / `+`-closure / reach isomorphism
/// that fixes everything below its `fixed_below` point; optionally check
/// `w^`-closure preservation as well.
pub fn iso_check(
    w: &IsoWitness,
    le1_oracle: &dyn Fn(&Ordinal, &Ordinal) -> Option<bool>,
    check_omega_pow: bool,
) -> IsoReport {
    let mut checked = 0;
    fn fail(checked: usize, v: IsoViolation) -> IsoReport {
        IsoReport { checked_pairs: checked, violation: Some(v) }
    }

    // order preservation over the sorted domain, which also gives injectivity
    let mut sorted = w.pairs.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for k in 1..sorted.len() {
        checked += 1;
        if sorted[k - 1].1 == sorted[k].1 {
            return fail(checked, IsoViolation::NotInjective { image: sorted[k].1.clone() });
        }
        if sorted[k - 1].1 > sorted[k].1 {
            return fail(checked, IsoViolation::OrderBroken {
                x: sorted[k - 1].0.clone(),
                y: sorted[k].0.clone(),
            });
        }
    }
    for (x, hx) in &sorted {
        if *x < w.fixed_below && x != hx {
            return fail(checked, IsoViolation::NotFixedBelow { x: x.clone() });
        }
    }

    let domain: Vec<&Ordinal> = sorted.iter().map(|(x, _)| x).collect();
    let image = |x: &Ordinal| w.image(x).expect("domain element");

    // x + y = z inside the domain must be mirrored exactly
    for x in &domain {
        for y in &domain {
            let sum = match x.checked_add(y) {
                None => continue,
                Some(s) => s,
            };
            let h_sum = match image(x).checked_add(image(y)) {
                None => continue,
                Some(s) => s,
            };
            for z in &domain {
                checked += 1;
                if (sum == **z) != (h_sum == *image(z)) {
                    return fail(checked, IsoViolation::AddClosure {
                        x: (*x).clone(),
                        y: (*y).clone(),
                        z: (*z).clone(),
                    });
                }
            }
        }
    }

    if check_omega_pow {
        for x in &domain {
            let pow = x.omega_pow();
            let h_pow = image(x).omega_pow();
            for z in &domain {
                checked += 1;
                if (pow == **z) != (h_pow == *image(z)) {
                    return fail(checked, IsoViolation::OmegaPowClosure {
                        x: (*x).clone(),
                        z: (*z).clone(),
                    });
                }
            }
        }
    }

    // reach relation on both sides
    for x in &domain {
        for y in &domain {
            if x >= y {
                continue;
            }
            checked += 1;
            let left = le1_oracle(x, y);
            let right = le1_oracle(image(x), image(y));
            match (left, right) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return fail(checked, IsoViolation::Le1Broken {
                            x: (*x).clone(),
                            y: (*y).clone(),
                        });
                    }
                }
                _ => {
                    return fail(checked, IsoViolation::OracleGap { x: (*x).clone(), y: (*y).clone() })
                }
            }
        }
    }

    IsoReport { checked_pairs: checked, violation: None }
}

/// Candidate epsilons below `alpha` for witness searches: grid positions of
/// the index, filtered to lie above `floor`.
fn candidate_gammas(alpha: &Ordinal, floor: &Ordinal, count: usize) -> Vec<Ordinal> {
    let i = match alpha.eps_index() {
        None => return Vec::new(),
        Some(i) => i,
    };
    index_grid(i, count)
        .into_iter()
        .map(Ordinal::eps)
        .filter(|g| g > floor && g < alpha)
        .collect()
}

/// The floor every candidate must clear: the epsilons of `z` below `alpha`,
/// the members of `z` below `alpha`, and their reaches when those stay
/// below `alpha`.
fn search_floor(alpha: &Ordinal, z: &FinOrdSet, engine: &Engine, fuel: u64) -> Ordinal {
    let mut floor = Ordinal::Zero;
    let mut raise = |x: &Ordinal| {
        if *x > floor {
            floor = x.clone();
        }
    };
    for b in z.iter() {
        for e in ep_set(b).below(alpha).iter() {
            raise(e);
        }
        if b < alpha {
            raise(b);
            if let Some(m) = reach_of(b, engine, fuel) {
                if m < *alpha {
                    raise(&m);
                }
            }
        }
    }
    floor
}

/// The reach oracle used when hunting witnesses for a claim `alpha <=1 ...`:
/// pairs from the base upward are true by hypothesis (connectedness under
/// the claim); everything else is decided.
fn hypothesis_oracle<'a>(
    engine: &'a Engine,
    alpha: &'a Ordinal,
    fuel: u64,
) -> impl Fn(&Ordinal, &Ordinal) -> Option<bool> + 'a {
    move |x: &Ordinal, y: &Ordinal| {
        if *x == *alpha && *y >= *alpha {
            Some(true)
        } else {
            le1_pair(x, y, engine, fuel)
        }
    }
}

/// Search for an epsilon `gamma` below `alpha` whose substitution witnesses
/// the reach claim on `Z + {alpha}`: the map must realize, inside `alpha`,
/// the relation pattern that the claim forces on the domain. Failure over
/// the whole grid corroborates a refuted claim; it is reported as absence
/// over the grid, not as proof.
pub fn subst_witness_search(
    engine: &Engine,
    alpha: &Ordinal,
    z: &FinOrdSet,
    fuel: u64,
) -> Option<(Ordinal, IsoWitness)> {
    if !alpha.is_epsilon() {
        return None;
    }
    let mut b = z.clone();
    b.insert(alpha.clone());
    let floor = search_floor(alpha, &b, engine, fuel);
    let budget = (fuel as usize).clamp(1, 24);
    let oracle = hypothesis_oracle(engine, alpha, fuel);
    for gamma in candidate_gammas(alpha, &floor, budget) {
        let witness = match subst_map(&b, alpha, &gamma) {
            Err(_) => continue,
            Ok(w) => w,
        };
        if iso_check(&witness, &oracle, true).ok() {
            return Some((gamma, witness));
        }
    }
    None
}

/// How a candidate pool member fared in [`min_iso`].
#[derive(Debug, Clone)]
pub struct MinIsoReport {
    pub pool_examined: usize,
    pub valid: usize,
    /// the lexicographically minimal valid witness, with its anchor image
    pub minimum: Option<(Ordinal, IsoWitness)>,
    /// the minimum agrees pointwise with the substitution at its anchor
    pub minimum_is_substitution: bool,
    /// every valid candidate dominates the substitution pointwise
    pub dominance_ok: bool,
    /// wherever any candidate validates, the plain substitution at the
    /// same anchor validates as well
    pub substitution_backed: bool,
    /// true when the pool was empty or nothing validated
    pub inconclusive: bool,
}

fn lex_less(a: &IsoWitness, b: &IsoWitness) -> bool {
    let mut left = a.pairs.clone();
    let mut right = b.pairs.clone();
    left.sort_by(|p, q| p.0.cmp(&q.0));
    right.sort_by(|p, q| p.0.cmp(&q.0));
    for (p, q) in left.iter().zip(right.iter()) {
        debug_assert_eq!(p.0, q.0);
        if p.1 != q.1 {
            return p.1 < q.1;
        }
    }
    false
}

/// Search the candidate pool of isomorphisms on the cover of `B` and check
/// that the lexicographic minimum over the pool is the plain substitution.
/// The pool holds the grid substitutions plus single-point upward
/// perturbations of each valid one; the minimum is reported as a minimum
/// over this finite pool.
pub fn min_iso(
    engine: &Engine,
    alpha: &Ordinal,
    b: &FinOrdSet,
    fuel: u64,
) -> MinIsoReport {
    let inconclusive = MinIsoReport {
        pool_examined: 0,
        valid: 0,
        minimum: None,
        minimum_is_substitution: false,
        dominance_ok: true,
        substitution_backed: true,
        inconclusive: true,
    };
    let delta = match delta_cover(alpha, b) {
        Err(_) => return inconclusive,
        Ok(d) => d,
    };
    let mut domain = delta.clone();
    domain.insert(alpha.clone());
    let floor = search_floor(alpha, &domain, engine, fuel);
    let budget = (fuel as usize).clamp(1, 16);
    let oracle = hypothesis_oracle(engine, alpha, fuel);

    let mut pool: Vec<(Ordinal, IsoWitness)> = Vec::new();
    for gamma in candidate_gammas(alpha, &floor, budget) {
        if let Ok(w) = subst_map(&domain, alpha, &gamma) {
            // single-point upward perturbations of the substitution
            for k in 0..w.pairs.len() {
                if w.pairs[k].0 <= *alpha {
                    continue;
                }
                let mut bumped = w.clone();
                bumped.pairs[k].1 = bumped.pairs[k].1.succ();
                pool.push((gamma.clone(), bumped));
            }
            pool.push((gamma.clone(), w));
        }
    }

    let pool_examined = pool.len();
    let mut valid: Vec<(Ordinal, IsoWitness)> = Vec::new();
    let mut dominance_ok = true;
    let mut substitution_backed = true;
    for (gamma, w) in pool {
        if !iso_check(&w, &oracle, false).ok() {
            continue;
        }
        // any valid candidate forces the plain substitution at its anchor
        match subst_map(&domain, alpha, &gamma) {
            Ok(plain) => {
                if !iso_check(&plain, &oracle, false).ok() {
                    substitution_backed = false;
                }
            }
            Err(_) => substitution_backed = false,
        }
        // covering bound: every valid witness dominates the substitution
        for (x, hx) in &w.pairs {
            match subst(x, alpha, &gamma) {
                Ok(sub) => {
                    if sub > *hx {
                        dominance_ok = false;
                    }
                }
                Err(_) => dominance_ok = false,
            }
        }
        valid.push((gamma, w));
    }

    if valid.is_empty() {
        return MinIsoReport { pool_examined, ..inconclusive };
    }
    let mut min = valid[0].clone();
    for cand in &valid[1..] {
        if lex_less(&cand.1, &min.1) {
            min = cand.clone();
        }
    }
    let minimum_is_substitution = min
        .1
        .pairs
        .iter()
        .all(|(x, hx)| subst(x, alpha, &min.0).map(|s| s == *hx).unwrap_or(false));
    MinIsoReport {
        pool_examined,
        valid: valid.len(),
        minimum: Some(min),
        minimum_is_substitution,
        dominance_ok,
        substitution_backed,
        inconclusive: false,
    }
}


#[cfg(test)]
mod min_iso_tests {
    use super::*;
    use crate::engine::Config;
    use crate::parse::parse;

    fn o(s: &str) -> Ordinal {
        parse(s).unwrap()
    }

    #[test]
    fn minimum_over_the_pool_is_the_substitution() {
        let eng = Engine::new(Config::default());
        let alpha = o("e(w)");
        let b: FinOrdSet = [o("e(w)+1")].into_iter().collect();
        let report = min_iso(&eng, &alpha, &b, 64);
        assert!(!report.inconclusive);
        assert!(report.valid >= 1);
        assert!(report.dominance_ok);
        assert!(report.substitution_backed);
        assert!(report.minimum_is_substitution);
        let (gamma, w) = report.minimum.unwrap();
        assert!(gamma.is_epsilon() && gamma < alpha);
        assert_eq!(w.image(&alpha), Some(&gamma));
    }

    #[test]
    fn empty_fuel_is_inconclusive() {
        let eng = Engine::new(Config::default());
        let alpha = o("e(1)");
        let b: FinOrdSet = [o("e(1)+1")].into_iter().collect();
        // index 1 is a successor: the candidate grid is empty
        let report = min_iso(&eng, &alpha, &b, 64);
        assert!(report.inconclusive);
        assert!(report.minimum.is_none());
    }

    #[test]
    fn covering_dominance_holds_for_every_valid_candidate() {
        let eng = Engine::new(Config::default());
        let alpha = o("e(w)");
        let b: FinOrdSet = [o("e(w)*2"), o("e(w)+w")].into_iter().collect();
        let report = min_iso(&eng, &alpha, &b, 64);
        assert!(!report.inconclusive);
        assert!(report.dominance_ok);
        assert!(report.substitution_backed);
        assert!(report.minimum_is_substitution);
    }
}
