//! Independent replay of reduction certificates.
//!
//! The checker never calls the decision procedures. It walks the tree,
//! recomputes each rule's premises from the term-level operations (eta,
//! canonical sequences, left subtraction, index arithmetic), and confirms
//! that the recorded conclusion follows. A certified verdict whose
//! certificate fails replay is a bug.

use std::fmt;

use crate::eta::{d_of, eta_of, pi_of};
use crate::fundseq::{e_seq, l_seq};
use crate::subst::subst;
use crate::term::Ordinal;

use super::verdict::{
    AStep, CertNode, Claim, Rule, Truth, Verdict, WitnessSchema,
};
use super::Engine;

/// A replay failure, with the path of rule labels leading to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayError {
    pub reason: String,
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "certificate replay failed: {}", self.reason)
    }
}

impl std::error::Error for ReplayError {}

fn fail<T>(reason: impl Into<String>) -> Result<T, ReplayError> {
    Err(ReplayError { reason: reason.into() })
}

/// Validate a certified verdict against its certificate.
pub fn replay(verdict: &Verdict) -> Result<(), ReplayError> {
    if !verdict.is_certified() {
        return fail("only certified verdicts are replayable");
    }
    let root = &verdict.certificate.root;
    match &verdict.certificate.claim {
        Claim::Le1 { alpha, s } => replay_le1(alpha, s, verdict.value, root),
        Claim::GMember { beta, t, alpha } => replay_g(beta, t, alpha, verdict.value, root),
        Claim::AMember { beta, t, alpha } => {
            // below the recursion's domain the direct route answers
            if matches!(root.rule, Rule::GCriterion { .. })
                || matches!(&root.rule, Rule::LimSetEmpty { .. } if root.children.first().map(|c| matches!(c.rule, Rule::GCriterion { .. })).unwrap_or(false))
            {
                replay_g(beta, t, alpha, verdict.value, root)
            } else {
                replay_a(beta, t, alpha, verdict.value, root)
            }
        }
        Claim::MaxReach { alpha, value } => replay_max_reach(alpha, value, verdict.value, root),
        Claim::Class2 { alpha } => replay_class2(alpha, verdict.value, root),
        Claim::LimMembership { alpha, .. } => replay_lim_membership(alpha, verdict.value, root),
    }
}

fn alpha2(alpha: &Ordinal) -> Ordinal {
    alpha.mul(&Ordinal::nat(2))
}

fn index_depth(x: &Ordinal) -> Result<Ordinal, ReplayError> {
    match x.eps_index() {
        None => fail(format!("{x} is not an epsilon number")),
        Some(i) => Ok(i.last_exponent().cloned().unwrap_or(Ordinal::Zero)),
    }
}

fn replay_le1(
    alpha: &Ordinal,
    s: &Ordinal,
    value: Truth,
    root: &CertNode,
) -> Result<(), ReplayError> {
    match value {
        Truth::True => {
            let depth = check_requirement(alpha, root)?;
            if root.target != *s {
                return fail(format!("derivation target {} is not {s}", root.target));
            }
            if index_depth(alpha)? >= depth {
                Ok(())
            } else {
                fail("claimed True but the index depth is below the requirement")
            }
        }
        Truth::False => {
            let (required, child) = open_refutation(root)?;
            if child.target > *s {
                return fail("refuting target lies above the claimed target");
            }
            let depth = check_requirement(alpha, child)?;
            if depth != *required {
                return fail("refutation depth does not match the derivation");
            }
            if index_depth(alpha)? < depth {
                Ok(())
            } else {
                fail("claimed False but the index depth meets the requirement")
            }
        }
        Truth::Unknown => fail("Unknown is not replayable"),
    }
}

fn open_refutation(root: &CertNode) -> Result<(&Ordinal, &CertNode), ReplayError> {
    match &root.rule {
        Rule::LimSetEmpty { required_depth, .. } => match root.children.first() {
            Some(child) => Ok((required_depth, child)),
            None => fail("refutation node has no derivation child"),
        },
        other => fail(format!("False conclusion must be a LimSetEmpty node, found {other:?}")),
    }
}

/// Recompute the depth requirement established by a reduction subtree.
fn check_requirement(alpha: &Ordinal, node: &CertNode) -> Result<Ordinal, ReplayError> {
    if node.alpha != *alpha {
        return fail("base epsilon changed inside a derivation");
    }
    let a2 = alpha2(alpha);
    match &node.rule {
        Rule::Interval => {
            if node.target > a2 {
                return fail(format!("Interval applied above alpha*2 at {}", node.target));
            }
            if !node.depth.is_zero() {
                return fail("Interval must conclude depth 0");
            }
            Ok(Ordinal::Zero)
        }
        Rule::EtaReduce { to } => {
            let child = one_child(node)?;
            if child.target != *to {
                return fail("EtaReduce child does not derive the reduced target");
            }
            if to.succ() != node.target {
                return fail("EtaReduce target is not the successor of the reduced point");
            }
            let eta = eta_of(to).map_err(|e| ReplayError { reason: e.to_string() })?;
            if eta <= *to {
                return fail("EtaReduce premise eta(l) > l fails");
            }
            let depth = check_requirement(alpha, child)?;
            if depth != node.depth {
                return fail("EtaReduce must preserve the requirement");
            }
            Ok(depth)
        }
        Rule::LimE | Rule::LimSetCofinal { schema: WitnessSchema::Membership { .. } } => {
            let child = one_child(node)?;
            let l = match node.target.pred_if_succ() {
                None => return fail("thinning step at a non-successor target"),
                Some(l) => l,
            };
            if child.target != l {
                return fail("thinning child does not derive the predecessor");
            }
            let eta = eta_of(&l).map_err(|e| ReplayError { reason: e.to_string() })?;
            if eta != l {
                return fail("thinning step premise eta(l) = l fails");
            }
            let inner = check_requirement(alpha, child)?;
            if let Rule::LimSetCofinal { schema: WitnessSchema::Membership { inner_depth } } =
                &node.rule
            {
                if *inner_depth != inner {
                    return fail("recorded inner depth disagrees with the child derivation");
                }
            } else if !inner.is_zero() {
                return fail("LimE applies only at inner depth 0");
            }
            if node.depth != inner.succ() {
                return fail("thinning step must bump the requirement by one");
            }
            Ok(node.depth.clone())
        }
        Rule::LimSetCofinal { schema: WitnessSchema::Cofinal { probes } } => {
            if !node.target.is_limit() {
                return fail("continuity step at a non-limit target");
            }
            let depth = match node.target.sub_left(&a2) {
                None => return fail("continuity target below alpha*2"),
                Some(d) => d,
            };
            if depth != node.depth {
                return fail("continuity requirement is not the left difference from alpha*2");
            }
            let seq = l_seq(&node.target, alpha)
                .map_err(|e| ReplayError { reason: e.to_string() })?;
            if probes.len() != node.children.len() {
                return fail("probe list and children disagree");
            }
            for ((j, claimed), child) in probes.iter().zip(&node.children) {
                let member = seq.eval(j).map_err(|e| ReplayError { reason: e.to_string() })?;
                if child.target != member {
                    return fail("probe child does not derive the sequence member");
                }
                let got = check_requirement(alpha, child)?;
                if got != *claimed {
                    return fail("probe depth disagrees with its derivation");
                }
                if got > depth {
                    return fail("probe requirement exceeds the limit requirement");
                }
            }
            Ok(depth)
        }
        other => fail(format!("rule {other:?} cannot appear in a reach derivation")),
    }
}

fn one_child(node: &CertNode) -> Result<&CertNode, ReplayError> {
    if node.children.len() != 1 {
        return fail("expected exactly one premise");
    }
    Ok(&node.children[0])
}

fn replay_g(
    beta: &Ordinal,
    t: &Ordinal,
    alpha: &Ordinal,
    value: Truth,
    root: &CertNode,
) -> Result<(), ReplayError> {
    // a False may be wrapped in the standard refutation node
    let g_node = match &root.rule {
        Rule::GCriterion { .. } => root,
        Rule::LimSetEmpty { .. } => one_child(root)?,
        other => return fail(format!("unexpected root {other:?} for a membership claim")),
    };
    let (node_beta, instantiated) = match &g_node.rule {
        Rule::GCriterion { beta: b, instantiated } => (b, instantiated),
        other => return fail(format!("expected GCriterion, found {other:?}")),
    };
    if node_beta != beta || g_node.target != *t {
        return fail("membership node instance mismatch");
    }
    let window = Engine::window_bound(t, alpha);
    if g_node.children.is_empty() {
        // window refutation
        if value != Truth::False {
            return fail("window refutation must conclude False");
        }
        if *beta > window {
            return fail("window refutation claimed but the window admits beta");
        }
        return Ok(());
    }
    if *beta <= window {
        return fail("window excludes beta but the certificate proceeded to the target");
    }
    let eta_t = eta_of(t).map_err(|e| ReplayError { reason: e.to_string() })?;
    let expect = subst(&eta_t, alpha, beta)
        .map_err(|e| ReplayError { reason: e.to_string() })?
        .succ();
    if expect != *instantiated {
        return fail("instantiated target does not match eta(t)[alpha := beta] + 1");
    }
    replay_le1(beta, instantiated, value, one_child(g_node)?)
}

fn replay_a(
    beta: &Ordinal,
    t: &Ordinal,
    alpha: &Ordinal,
    value: Truth,
    root: &CertNode,
) -> Result<(), ReplayError> {
    let (deriv, required) = match (&root.rule, value) {
        (Rule::ARecursion { .. }, Truth::True) => (root, None),
        (Rule::LimSetEmpty { required_depth, .. }, Truth::False) => {
            (one_child(root)?, Some(required_depth.clone()))
        }
        (other, v) => return fail(format!("unexpected root {other:?} for value {v}")),
    };
    if deriv.target != *t {
        return fail("hierarchy derivation target mismatch");
    }
    let depth = check_a_requirement(alpha, deriv)?;
    // the requirement is stated over `alpha`; read it at the level of the
    // candidate through the substitution
    let local = subst(&depth, alpha, beta).map_err(|e| ReplayError { reason: e.to_string() })?;
    if let Some(req) = required {
        if req != local {
            return fail("recorded refutation depth disagrees with the derivation");
        }
    }
    let window = Engine::window_bound(t, alpha);
    let member = *beta > window && index_depth(beta)? >= local;
    match value {
        Truth::True if member => Ok(()),
        Truth::False if !member => Ok(()),
        _ => fail("membership conclusion does not follow from the derived depth"),
    }
}

fn check_a_requirement(alpha: &Ordinal, node: &CertNode) -> Result<Ordinal, ReplayError> {
    if node.alpha != *alpha {
        return fail("base epsilon changed inside a hierarchy derivation");
    }
    let a2 = alpha2(alpha);
    let step = match &node.rule {
        Rule::ARecursion { step } => *step,
        other => return fail(format!("rule {other:?} inside a hierarchy derivation")),
    };
    match step {
        AStep::Base => {
            if node.target > a2 {
                return fail("Base clause applied above alpha*2");
            }
            if node.depth != Ordinal::one() {
                return fail("Base clause concludes depth 1");
            }
            Ok(Ordinal::one())
        }
        AStep::SuccessorCopy | AStep::SuccessorLim => {
            let child = one_child(node)?;
            let l = match node.target.pred_if_succ() {
                None => return fail("successor clause at a non-successor"),
                Some(l) => l,
            };
            if child.target != l {
                return fail("successor clause child target mismatch");
            }
            let eta = eta_of(&l).map_err(|e| ReplayError { reason: e.to_string() })?;
            let inner = check_a_requirement(alpha, child)?;
            let expect = match step {
                AStep::SuccessorLim => {
                    if eta != l {
                        return fail("Lim clause premise eta(l) = l fails");
                    }
                    inner.succ()
                }
                _ => {
                    if eta == l {
                        return fail("Copy clause premise l < pi l + d pi l fails");
                    }
                    inner
                }
            };
            if expect != node.depth {
                return fail("successor clause depth mismatch");
            }
            Ok(expect)
        }
        AStep::LimitViaL | AStep::LimitViaE => {
            if !node.target.is_limit() {
                return fail("limit clause at a non-limit");
            }
            let pi = pi_of(&node.target).map_err(|e| ReplayError { reason: e.to_string() })?;
            let pidpi = pi.add(&d_of(&pi));
            let eta_t = if pidpi > node.target { pidpi.clone() } else { node.target.clone() };
            let member = match step {
                AStep::LimitViaL => {
                    if node.target <= pidpi {
                        return fail("LimitViaL premise t > pi t + d pi t fails");
                    }
                    l_seq(&node.target, alpha)
                        .map_err(|e| ReplayError { reason: e.to_string() })?
                        .eval(&Ordinal::one())
                        .map_err(|e| ReplayError { reason: e.to_string() })?
                }
                _ => {
                    if node.target > pidpi {
                        return fail("LimitViaE premise t <= pi t + d pi t fails");
                    }
                    e_seq(&node.target, alpha)
                        .map_err(|e| ReplayError { reason: e.to_string() })?
                        .eval(&Ordinal::one())
                        .map_err(|e| ReplayError { reason: e.to_string() })?
                }
            };
            let child = one_child(node)?;
            if child.target != member {
                return fail("limit clause probe is not the first sequence member");
            }
            let probe_depth = check_a_requirement(alpha, child)?;
            let sup = match eta_t.sub_left(&a2) {
                None => return fail("eta of a limit target fell below alpha*2"),
                Some(d) => d,
            };
            let expect = sup.succ();
            if expect != node.depth {
                return fail("limit clause depth is not sup + 1");
            }
            if probe_depth > node.depth {
                return fail("probe requirement exceeds the clause requirement");
            }
            Ok(expect)
        }
    }
}

fn replay_max_reach(
    alpha: &Ordinal,
    value: &Ordinal,
    truth: Truth,
    root: &CertNode,
) -> Result<(), ReplayError> {
    if truth != Truth::True {
        return fail("a reach determination must conclude True");
    }
    if root.children.len() != 2 {
        return fail("reach certificate needs the two boundary derivations");
    }
    if root.target != *value {
        return fail("reach certificate target mismatch");
    }
    replay_le1(alpha, value, Truth::True, &root.children[0])?;
    replay_le1(alpha, &value.succ(), Truth::False, &root.children[1])
}

fn replay_class2(alpha: &Ordinal, truth: Truth, root: &CertNode) -> Result<(), ReplayError> {
    match truth {
        // certified refutation: some target at or below alpha^+ is
        // unreachable, and connectedness lifts that to alpha^+
        Truth::False => replay_le1(alpha, &alpha.next_epsilon(), Truth::False, root),
        _ => fail("only certified False class-2 verdicts are replayable"),
    }
}

fn replay_lim_membership(
    alpha: &Ordinal,
    truth: Truth,
    root: &CertNode,
) -> Result<(), ReplayError> {
    let actual = index_depth(alpha)?;
    match &root.rule {
        Rule::LimSetCofinal { schema: WitnessSchema::Membership { inner_depth } } => {
            if truth != Truth::True {
                return fail("cofinality witness must conclude True");
            }
            if actual >= inner_depth.succ() {
                Ok(())
            } else {
                fail("index depth below the cofinality requirement")
            }
        }
        Rule::LimSetEmpty { required_depth, .. } => {
            if truth != Truth::False {
                return fail("emptiness witness must conclude False");
            }
            if actual < *required_depth {
                Ok(())
            } else {
                fail("index depth meets the requirement despite a False conclusion")
            }
        }
        other => fail(format!("unexpected rule {other:?} for a limit-membership claim")),
    }
}
