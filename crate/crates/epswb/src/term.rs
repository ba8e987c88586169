//! Canonical ordinal terms below the first fixed point of the epsilon
//! enumeration.
//!
//! A term is zero, an epsilon atom `e(i)`, or a Cantor normal form sum
//! `w^A1*a1 + ... + w^An*an` with strictly decreasing exponents and finite
//! positive coefficients. Canonical form is enforced by the constructors:
//! `w^e(i)` collapses to the atom `e(i)` at construction time, so structural
//! equality coincides with ordinal equality.

use std::cmp::Ordering;
use std::fmt;

/// A single CNF monomial `w^exp * coeff`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub exp: Ordinal,
    pub coeff: u32,
}

/// Canonical ordinal term.
///
/// Invariants (maintained by all constructors in this module):
/// - `Sum` is nonempty and its exponents are strictly decreasing;
/// - all coefficients are at least 1;
/// - no `Sum` is a lone monomial `(Eps(i), 1)`: that value is the atom
///   `Eps(i)`, because `w^e = e` for epsilon numbers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ordinal {
    Zero,
    Sum(Vec<Monomial>),
    Eps(Box<Ordinal>),
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal::Zero
    }

    /// The finite ordinal `n`.
    pub fn nat(n: u32) -> Ordinal {
        if n == 0 {
            Ordinal::Zero
        } else {
            Ordinal::Sum(vec![Monomial { exp: Ordinal::Zero, coeff: n }])
        }
    }

    pub fn one() -> Ordinal {
        Ordinal::nat(1)
    }

    pub fn omega() -> Ordinal {
        Ordinal::Sum(vec![Monomial { exp: Ordinal::one(), coeff: 1 }])
    }

    /// The epsilon number with the given index.
    pub fn eps(index: Ordinal) -> Ordinal {
        Ordinal::Eps(Box::new(index))
    }

    /// Canonicalizing constructor from a strictly decreasing monomial list.
    pub fn from_monomials(ms: Vec<Monomial>) -> Ordinal {
        debug_assert!(ms.iter().all(|m| m.coeff >= 1));
        debug_assert!(ms.windows(2).all(|w| w[0].exp > w[1].exp));
        if ms.is_empty() {
            return Ordinal::Zero;
        }
        if ms.len() == 1 && ms[0].coeff == 1 {
            if let Ordinal::Eps(_) = ms[0].exp {
                return ms.into_iter().next().unwrap().exp;
            }
        }
        Ordinal::Sum(ms)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ordinal::Zero)
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, Ordinal::Eps(_))
    }

    /// Number of monomials in the CNF view (an epsilon atom counts as one).
    pub fn mono_len(&self) -> usize {
        match self {
            Ordinal::Zero => 0,
            Ordinal::Sum(ms) => ms.len(),
            Ordinal::Eps(_) => 1,
        }
    }

    /// The `k`-th monomial of the CNF view. For an epsilon atom the view is
    /// the single monomial `(self, 1)`.
    pub fn mono(&self, k: usize) -> Option<(&Ordinal, u32)> {
        match self {
            Ordinal::Zero => None,
            Ordinal::Sum(ms) => ms.get(k).map(|m| (&m.exp, m.coeff)),
            Ordinal::Eps(_) => {
                if k == 0 {
                    Some((self, 1))
                } else {
                    None
                }
            }
        }
    }

    /// Materialized monomial list of the CNF view.
    pub fn monomials(&self) -> Vec<Monomial> {
        match self {
            Ordinal::Zero => Vec::new(),
            Ordinal::Sum(ms) => ms.clone(),
            Ordinal::Eps(_) => vec![Monomial { exp: self.clone(), coeff: 1 }],
        }
    }

    /// Leading exponent `A1`, if nonzero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.mono(0).map(|(e, _)| e)
    }

    /// Last exponent `An` of the CNF view. For `e(i)` this is `e(i)` itself.
    pub fn last_exponent(&self) -> Option<&Ordinal> {
        match self {
            Ordinal::Zero => None,
            Ordinal::Sum(ms) => ms.last().map(|m| &m.exp),
            Ordinal::Eps(_) => Some(self),
        }
    }

    /// `x + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// True iff `x` is a limit ordinal: nonzero with last exponent `> 0`.
    pub fn is_limit(&self) -> bool {
        match self.last_exponent() {
            None => false,
            Some(e) => !e.is_zero(),
        }
    }

    /// The predecessor, defined only for successor ordinals.
    pub fn pred_if_succ(&self) -> Option<Ordinal> {
        match self {
            Ordinal::Sum(ms) if ms.last().map(|m| m.exp.is_zero()) == Some(true) => {
                let mut ms = ms.clone();
                let last = ms.last_mut().unwrap();
                if last.coeff > 1 {
                    last.coeff -= 1;
                } else {
                    ms.pop();
                }
                Some(Ordinal::from_monomials(ms))
            }
            _ => None,
        }
    }

    /// True iff `x = w^y` for some `y` (additive principal).
    pub fn is_principal(&self) -> bool {
        match self {
            Ordinal::Eps(_) => true,
            Ordinal::Sum(ms) => ms.len() == 1 && ms[0].coeff == 1,
            Ordinal::Zero => false,
        }
    }

    /// Index of an epsilon atom.
    pub fn eps_index(&self) -> Option<&Ordinal> {
        match self {
            Ordinal::Eps(i) => Some(i),
            _ => None,
        }
    }

    /// The least epsilon number strictly above `self`.
    pub fn next_epsilon(&self) -> Ordinal {
        match self {
            Ordinal::Zero => Ordinal::eps(Ordinal::Zero),
            Ordinal::Eps(i) => Ordinal::eps(i.succ()),
            // e(j) > Sum iff e(j) > leading exponent, so the least such is
            // the least epsilon above the leading exponent.
            Ordinal::Sum(ms) => ms[0].exp.next_epsilon(),
        }
    }

    /// Natural-number view, if finite.
    pub fn as_nat(&self) -> Option<u32> {
        match self {
            Ordinal::Zero => Some(0),
            Ordinal::Sum(ms) if ms.len() == 1 && ms[0].exp.is_zero() => Some(ms[0].coeff),
            _ => None,
        }
    }

    /// True iff the ordinal is a member of `Lim^n(OR)`, i.e. divisible by
    /// `w^n` with a nonzero quotient: every CNF exponent is `>= n`.
    pub fn lim_depth_of_index(&self, n: u32) -> bool {
        debug_assert!(n >= 1);
        match self.last_exponent() {
            None => false,
            Some(e) => *e >= Ordinal::nat(n),
        }
    }

    /// CNF addition, `None` on coefficient overflow.
    pub fn checked_add(&self, other: &Ordinal) -> Option<Ordinal> {
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(other.clone());
        }
        let b = other.monomials();
        let b0_exp = b[0].exp.clone();
        let mut out: Vec<Monomial> = Vec::new();
        for k in 0..self.mono_len() {
            let (e, c) = self.mono(k).unwrap();
            if *e > b0_exp {
                out.push(Monomial { exp: e.clone(), coeff: c });
            } else {
                break;
            }
        }
        let merge_at = out.len();
        let mut b_iter = b.into_iter();
        let mut first_b = b_iter.next().unwrap();
        if let Some((e, c)) = self.mono(merge_at) {
            if *e == b0_exp {
                first_b.coeff = first_b.coeff.checked_add(c)?;
            }
        }
        out.push(first_b);
        out.extend(b_iter);
        Some(Ordinal::from_monomials(out))
    }

    /// CNF addition. Panics on coefficient overflow; use [`Ordinal::checked_add`]
    /// on untrusted input.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        self.checked_add(other).expect("ordinal coefficient overflow in add")
    }

    /// CNF multiplication, `None` on coefficient overflow.
    pub fn checked_mul(&self, other: &Ordinal) -> Option<Ordinal> {
        if self.is_zero() || other.is_zero() {
            return Some(Ordinal::Zero);
        }
        let a1 = self.leading_exponent().unwrap();
        let mut acc = Ordinal::Zero;
        for k in 0..other.mono_len() {
            let (b, c) = other.mono(k).unwrap();
            let part = if b.is_zero() {
                // a * c for finite c: scale the leading coefficient.
                let mut ms = self.monomials();
                ms[0].coeff = ms[0].coeff.checked_mul(c)?;
                Ordinal::from_monomials(ms)
            } else {
                // a * w^b * c = w^(A1 + b) * c.
                let exp = a1.checked_add(b)?;
                Ordinal::from_monomials(vec![Monomial { exp, coeff: c }])
            };
            acc = acc.checked_add(&part)?;
        }
        Some(acc)
    }

    /// CNF multiplication. Panics on coefficient overflow.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        self.checked_mul(other).expect("ordinal coefficient overflow in mul")
    }

    /// `w^self`. Epsilon atoms are fixed points.
    pub fn omega_pow(&self) -> Ordinal {
        Ordinal::from_monomials(vec![Monomial { exp: self.clone(), coeff: 1 }])
    }

    /// Left subtraction: the unique `c` with `self = other + c`, when
    /// `other <= self`.
    pub fn sub_left(&self, other: &Ordinal) -> Option<Ordinal> {
        if self < other {
            return None;
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        let a = self.monomials();
        let b = other.monomials();
        for k in 0..b.len() {
            match a[k].exp.cmp(&b[k].exp) {
                Ordering::Greater => {
                    // remainder begins at a[k]
                    return Some(Ordinal::from_monomials(a[k..].to_vec()));
                }
                Ordering::Less => unreachable!("sub_left: self < other slipped through"),
                Ordering::Equal => match a[k].coeff.cmp(&b[k].coeff) {
                    Ordering::Greater => {
                        let mut ms = a[k..].to_vec();
                        ms[0].coeff -= b[k].coeff;
                        return Some(Ordinal::from_monomials(ms));
                    }
                    Ordering::Less => unreachable!("sub_left: self < other slipped through"),
                    Ordering::Equal => {
                        if k + 1 == b.len() {
                            return Some(Ordinal::from_monomials(a[k + 1..].to_vec()));
                        }
                    }
                },
            }
        }
        Some(Ordinal::Zero)
    }

    /// Division by `w^l`: the unique `(q, r)` with `self = w^l * q + r` and
    /// `r < w^l`.
    pub fn div_pow_omega(&self, l: &Ordinal) -> (Ordinal, Ordinal) {
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        for m in self.monomials() {
            match m.exp.sub_left(l) {
                Some(e) => quot.push(Monomial { exp: e, coeff: m.coeff }),
                None => rem.push(m),
            }
        }
        (Ordinal::from_monomials(quot), Ordinal::from_monomials(rem))
    }

    /// Structural size, used for recursion budgets and shrink heuristics.
    pub fn size(&self) -> usize {
        match self {
            Ordinal::Zero => 1,
            Ordinal::Eps(i) => 1 + i.size(),
            Ordinal::Sum(ms) => 1 + ms.iter().map(|m| m.exp.size()).sum::<usize>(),
        }
    }

    /// Deepest `e(...)` nesting in the term.
    pub fn eps_depth(&self) -> usize {
        match self {
            Ordinal::Zero => 0,
            Ordinal::Eps(i) => 1 + i.eps_depth(),
            Ordinal::Sum(ms) => ms.iter().map(|m| m.exp.eps_depth()).max().unwrap_or(0),
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    /// Standard CNF order; an epsilon atom compares as `w^e(i)`.
    fn cmp(&self, other: &Self) -> Ordering {
        use Ordinal::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            (Eps(a), Eps(b)) => a.cmp(b),
            _ => {
                let n = self.mono_len();
                let m = other.mono_len();
                for k in 0..n.min(m) {
                    let (e1, c1) = self.mono(k).unwrap();
                    let (e2, c2) = other.mono(k).unwrap();
                    match e1.cmp(e2) {
                        Ordering::Equal => {}
                        ne => return ne,
                    }
                    match c1.cmp(&c2) {
                        Ordering::Equal => {}
                        ne => return ne,
                    }
                }
                n.cmp(&m)
            }
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Zero => write!(f, "0"),
            Ordinal::Eps(i) => write!(f, "e({i})"),
            Ordinal::Sum(ms) => {
                for (k, m) in ms.iter().enumerate() {
                    if k > 0 {
                        write!(f, "+")?;
                    }
                    write_monomial(f, m)?;
                }
                Ok(())
            }
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    if m.exp.is_zero() {
        return write!(f, "{}", m.coeff);
    }
    match &m.exp {
        Ordinal::Eps(_) => write!(f, "{}", m.exp)?,
        e if *e == Ordinal::one() => write!(f, "w")?,
        e => {
            // Exponents that print as sums or products get parentheses;
            // anything that is itself an atom chains after `w^`.
            let inner = format!("{e}");
            if exponent_is_atom(e) {
                write!(f, "w^{inner}")?;
            } else {
                write!(f, "w^({inner})")?;
            }
        }
    }
    if m.coeff > 1 {
        write!(f, "*{}", m.coeff)?;
    }
    Ok(())
}

// An exponent's printed form is a grammar atom unless it is a sum of
// several monomials or carries a coefficient.
fn exponent_is_atom(e: &Ordinal) -> bool {
    match e {
        Ordinal::Zero | Ordinal::Eps(_) => true,
        Ordinal::Sum(ms) => ms.len() == 1 && (ms[0].coeff == 1 || ms[0].exp.is_zero()),
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        crate::parse::parse(s).unwrap()
    }

    #[test]
    fn constructors_canonicalize() {
        // w^e(i) collapses to the atom
        let e0 = Ordinal::eps(Ordinal::Zero);
        assert_eq!(e0.omega_pow(), e0);
        assert_eq!(
            Ordinal::from_monomials(vec![Monomial { exp: e0.clone(), coeff: 1 }]),
            e0
        );
        // but w^e(i)*2 stays a sum
        let twice = Ordinal::from_monomials(vec![Monomial { exp: e0.clone(), coeff: 2 }]);
        assert!(matches!(twice, Ordinal::Sum(_)));
    }

    #[test]
    fn cmp_examples() {
        let w = Ordinal::omega();
        assert_eq!(w.cmp(&w), Ordering::Equal);
        let e0 = Ordinal::eps(Ordinal::Zero);
        let e0x2 = e0.mul(&Ordinal::nat(2));
        assert_eq!(e0.cmp(&e0x2), Ordering::Less);
        let e1 = Ordinal::eps(Ordinal::one());
        let sum = e1.add(&e0);
        assert_eq!(sum.cmp(&e1), Ordering::Greater);
    }

    #[test]
    fn add_absorbs_on_the_left() {
        let one = Ordinal::one();
        let w = Ordinal::omega();
        assert_eq!(one.add(&w), w);
        assert_eq!(w.add(&one), o("w+1"));
    }

    #[test]
    fn mul_examples() {
        let w = Ordinal::omega();
        let w_plus_1 = w.succ();
        assert_eq!(w_plus_1.mul(&w), o("w^2"));
        assert_eq!(o("w+1").mul(&Ordinal::nat(2)), o("w*2+1"));
        assert_eq!(o("w").mul(&o("w")), o("w^2"));
    }

    #[test]
    fn omega_pow_fixed_point() {
        let e2 = Ordinal::eps(Ordinal::nat(2));
        assert_eq!(e2.omega_pow(), e2);
        assert!(o("w^(e(2)+1)") > e2);
    }

    #[test]
    fn succ_pred_limits() {
        assert!(Ordinal::eps(Ordinal::Zero).is_limit());
        let x = o("w+3");
        assert!(!x.is_limit());
        assert_eq!(x.pred_if_succ().unwrap(), o("w+2"));
        assert!(o("e(0)*2").is_limit());
        assert_eq!(o("e(0)*2").pred_if_succ(), None);
        assert_eq!(Ordinal::Zero.pred_if_succ(), None);
    }

    #[test]
    fn principal_and_epsilon_predicates() {
        assert!(o("w^2").is_principal());
        assert!(!o("w^2").is_epsilon());
        assert!(o("e(0)").is_principal());
        assert!(!o("w*2").is_principal());
        assert!(Ordinal::one().is_principal());
    }

    #[test]
    fn next_epsilon_examples() {
        let e0 = Ordinal::eps(Ordinal::Zero);
        let e1 = Ordinal::eps(Ordinal::one());
        assert_eq!(e0.next_epsilon(), e1);
        assert_eq!(o("e(3)+1").next_epsilon(), Ordinal::eps(Ordinal::nat(4)));
        assert_eq!(Ordinal::nat(7).next_epsilon(), e0);
        assert_eq!(Ordinal::Zero.next_epsilon(), e0);
        // index need not be below the atom's own index region
        assert_eq!(o("w^(e(0)+1)").next_epsilon(), e1);
    }

    #[test]
    fn lim_depth_examples() {
        assert!(Ordinal::omega().lim_depth_of_index(1));
        assert!(!o("w*3+1").lim_depth_of_index(1));
        assert!(o("w^2").lim_depth_of_index(2));
        assert!(!o("w*3").lim_depth_of_index(2));
        assert!(Ordinal::eps(Ordinal::Zero).lim_depth_of_index(7));
    }

    #[test]
    fn sub_left_inverts_add() {
        let a = o("w^3*2+w");
        let b = o("w^3+5");
        let c = a.sub_left(&b).unwrap();
        assert_eq!(b.add(&c), a);
        assert_eq!(b.sub_left(&a), None);
        assert_eq!(a.sub_left(&a).unwrap(), Ordinal::Zero);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Ordinal::from_monomials(vec![Monomial { exp: Ordinal::one(), coeff: u32::MAX }]);
        assert!(big.checked_add(&Ordinal::omega()).is_none());
        assert!(big.checked_mul(&Ordinal::nat(2)).is_none());
    }
}
