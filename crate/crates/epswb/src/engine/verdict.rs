//! Three-valued verdicts with replayable reduction certificates.

use std::fmt;

use crate::term::Ordinal;

/// Truth value of a decided query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

/// Whether the verdict is backed by a closed reduction trace or by uniform
/// probe evidence along a fundamental sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Certified,
    Extrapolated,
}

/// What a verdict is about. Stored alongside the certificate so the replay
/// checker knows which conclusion to validate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// `alpha <=1 s`
    Le1 { alpha: Ordinal, s: Ordinal },
    /// `beta` solves `x <=1 (eta t)[alpha := x] + 1` (membership in the
    /// thinning hierarchy at `t`), via the recursive route
    AMember { beta: Ordinal, t: Ordinal, alpha: Ordinal },
    /// same solution set, via the direct instantiated-target route
    GMember { beta: Ordinal, t: Ordinal, alpha: Ordinal },
    /// `m(alpha) = value`: maximal reach of `alpha`
    MaxReach { alpha: Ordinal, value: Ordinal },
    /// `alpha` is a limit of the described class
    LimMembership { alpha: Ordinal, description: String },
    /// `alpha <=1 alpha^+` (probed, never certified true)
    Class2 { alpha: Ordinal },
}

/// Witness data attached to a cofinality step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSchema {
    /// The solution class one step down has index depth `inner_depth`;
    /// cofinality below the base index bumps the requirement by one.
    Membership { inner_depth: Ordinal },
    /// The target is the sup of its canonical fundamental sequence; the
    /// requirement is the sup of the member requirements, evaluated by left
    /// subtraction. `probes` records sampled `(index, member requirement)`
    /// pairs whose derivations are the node's children.
    Cofinal { probes: Vec<(Ordinal, Ordinal)> },
}

/// Which clause of the recursive hierarchy definition a step used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AStep {
    /// `t` at or below `alpha*2`: the class is the limit epsilons above the
    /// epsilon window
    Base,
    /// successor with `l < pi l + d pi l`: class unchanged
    SuccessorCopy,
    /// successor with `l >= pi l + d pi l`: class thinned by one limit
    SuccessorLim,
    /// limit with `t > pi t + d pi t`: through the canonical sequence of `t`
    LimitViaL,
    /// limit with `t <= pi t + d pi t`: through the exponent sequence of
    /// `pi t`
    LimitViaE,
}

/// Reduction rule labels. Each certificate node carries one, the instance
/// ordinals it was applied at, and the subderivations its premises need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// target at or below `alpha*2`: reachable by connectedness
    Interval,
    /// `alpha <1 alpha*2` because `alpha` is an epsilon number
    Alpha2Base,
    /// `alpha <=1 l+1` iff `alpha <=1 l`, because `l+1 <= eta l`
    EtaReduce { to: Ordinal },
    /// first thinning step: requirement 0 becomes 1 through `Lim E`
    LimE,
    /// a cofinality step with its witness schema
    LimSetCofinal { schema: WitnessSchema },
    /// refutation: the required index class is not cofinal at the base
    LimSetEmpty { required_depth: Ordinal, actual_depth: Ordinal },
    /// membership test through the instantiated target at level `beta`
    GCriterion { beta: Ordinal, instantiated: Ordinal },
    /// one clause of the recursive hierarchy definition
    ARecursion { step: AStep },
}

/// A node of the reduction trace: a rule, the target it was applied to, the
/// index-depth requirement established for that target, and the premise
/// derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertNode {
    pub rule: Rule,
    pub alpha: Ordinal,
    pub target: Ordinal,
    pub depth: Ordinal,
    pub children: Vec<CertNode>,
}

impl CertNode {
    pub fn leaf(rule: Rule, alpha: Ordinal, target: Ordinal, depth: Ordinal) -> CertNode {
        CertNode { rule, alpha, target, depth, children: Vec::new() }
    }

    /// Rule-skeleton string: tree shape and rule labels with the instance
    /// ordinals erased. Uniform probe evidence means equal skeletons.
    pub fn skeleton(&self) -> String {
        let mut out = String::new();
        self.write_skeleton(&mut out);
        out
    }

    fn write_skeleton(&self, out: &mut String) {
        let label = match &self.rule {
            Rule::Interval => "Interval",
            Rule::Alpha2Base => "Alpha2Base",
            Rule::EtaReduce { .. } => "EtaReduce",
            Rule::LimE => "LimE",
            Rule::LimSetCofinal { schema: WitnessSchema::Membership { .. } } => "LimSetCofinal/M",
            Rule::LimSetCofinal { schema: WitnessSchema::Cofinal { .. } } => "LimSetCofinal/C",
            Rule::LimSetEmpty { .. } => "LimSetEmpty",
            Rule::GCriterion { .. } => "GCriterion",
            Rule::ARecursion { step: AStep::Base } => "ARecursion/Base",
            Rule::ARecursion { step: AStep::SuccessorCopy } => "ARecursion/Copy",
            Rule::ARecursion { step: AStep::SuccessorLim } => "ARecursion/Lim",
            Rule::ARecursion { step: AStep::LimitViaL } => "ARecursion/L",
            Rule::ARecursion { step: AStep::LimitViaE } => "ARecursion/E",
        };
        out.push_str(label);
        out.push('(');
        for (k, c) in self.children.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            c.write_skeleton(out);
        }
        out.push(')');
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(CertNode::node_count).sum::<usize>()
    }
}

/// A reduction trace for a claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub root: CertNode,
}

/// The outcome of a query: a truth value, its exactness, the supporting
/// certificate, and how much fuel the derivation consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: Truth,
    pub exactness: Exactness,
    pub certificate: Certificate,
    pub fuel_used: u64,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        self.exactness == Exactness::Certified && self.value != Truth::Unknown
    }

    pub fn certified_value(&self) -> Option<bool> {
        match (self.is_certified(), self.value) {
            (true, Truth::True) => Some(true),
            (true, Truth::False) => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truth::True => write!(f, "True"),
            Truth::False => write!(f, "False"),
            Truth::Unknown => write!(f, "Unknown"),
        }
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Certified => write!(f, "certified"),
            Exactness::Extrapolated => write!(f, "extrapolated"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Truth::Unknown => write!(f, "Unknown (fuel exhausted after {})", self.fuel_used),
            v => write!(f, "{v} ({})", self.exactness),
        }
    }
}
