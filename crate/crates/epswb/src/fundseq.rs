//! Canonical fundamental sequences for limits `t` in an epsilon interval
//! `(alpha, alpha^+)`, plus the exponent-approximating variant used by the
//! thinning hierarchy, and the standard index sequences used as probe grids.
//!
//! Sequences are lazy: a shape plus an index bound. The index bound can be
//! epsilon-sized, so sequences are never materialized.

use std::fmt;

use thiserror::Error;

use crate::term::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("{got} is not in the open interval ({low}, {high})")]
    OutsideInterval { low: Ordinal, high: Ordinal, got: Ordinal },
    #[error("expected an epsilon number, got {0}")]
    NotEpsilon(Ordinal),
    #[error("leading part of {0} is the base epsilon; no exponent sequence exists")]
    PiIsBase(Ordinal),
    #[error("index {index} outside the domain (0, {bound})")]
    IndexOutOfDomain { index: Ordinal, bound: Ordinal },
    #[error("value not representable: coefficient overflow")]
    Overflow,
}

/// How the `j`-th element is built from the index.
#[derive(Clone, PartialEq, Eq)]
pub enum SeqKind {
    /// `prefix + j`
    PlusIndex { prefix: Ordinal },
    /// `base * j`, finite `j`
    MulIndex { base: Ordinal },
    /// `base * (j+1)`, finite `j`; used when `base * 1` would fall back
    /// onto the base epsilon itself
    MulShiftIndex { base: Ordinal },
    /// `w^(expo_prefix + step*j)`, finite `j`
    ExpScaledIndex { expo_prefix: Ordinal, step: Ordinal },
    /// `w^(expo_prefix + w^j)`
    ExpOmegaIndex { expo_prefix: Ordinal },
    /// `w^(expo_prefix + j)`
    ExpPlusIndex { expo_prefix: Ordinal },
    /// `prefix + inner(j)`
    PlusInner { prefix: Ordinal, inner: Box<FundSeq> },
    /// `w^(expo_prefix + inner(j))`
    ExpInner { expo_prefix: Ordinal, inner: Box<FundSeq> },
}

/// A lazily evaluated strictly increasing sequence cofinal in its target,
/// indexed by the ordinals in `(0, index_bound)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FundSeq {
    pub index_bound: Ordinal,
    pub kind: SeqKind,
}

impl FundSeq {
    /// Evaluate at index `j`, which must lie in `(0, index_bound)`.
    pub fn eval(&self, j: &Ordinal) -> Result<Ordinal, SeqError> {
        if j.is_zero() || *j >= self.index_bound {
            return Err(SeqError::IndexOutOfDomain {
                index: j.clone(),
                bound: self.index_bound.clone(),
            });
        }
        self.eval_unchecked(j)
    }

    fn eval_unchecked(&self, j: &Ordinal) -> Result<Ordinal, SeqError> {
        let out = match &self.kind {
            SeqKind::PlusIndex { prefix } => prefix.checked_add(j),
            SeqKind::MulIndex { base } => base.checked_mul(j),
            SeqKind::MulShiftIndex { base } => base.checked_mul(&j.succ()),
            SeqKind::ExpScaledIndex { expo_prefix, step } => step
                .checked_mul(j)
                .and_then(|sj| expo_prefix.checked_add(&sj))
                .map(|e| e.omega_pow()),
            SeqKind::ExpOmegaIndex { expo_prefix } => {
                expo_prefix.checked_add(&j.omega_pow()).map(|e| e.omega_pow())
            }
            SeqKind::ExpPlusIndex { expo_prefix } => {
                expo_prefix.checked_add(j).map(|e| e.omega_pow())
            }
            SeqKind::PlusInner { prefix, inner } => {
                let x = inner.eval(j)?;
                prefix.checked_add(&x)
            }
            SeqKind::ExpInner { expo_prefix, inner } => {
                let x = inner.eval(j)?;
                expo_prefix.checked_add(&x).map(|e| e.omega_pow())
            }
        };
        out.ok_or(SeqError::Overflow)
    }

    /// Pointwise evaluation over several indices.
    pub fn sample(&self, indices: &[Ordinal]) -> Result<Vec<Ordinal>, SeqError> {
        indices.iter().map(|j| self.eval(j)).collect()
    }

    /// Some index `j` with `eval(j) > s`, for any `s` strictly below the
    /// sequence's target. Returns `None` only if the witnessing value is not
    /// machine-representable.
    pub fn dominating_index(&self, s: &Ordinal) -> Option<Ordinal> {
        let j = self.dominating_index_raw(s)?;
        debug_assert!(j > Ordinal::Zero && j < self.index_bound);
        match self.eval(&j) {
            Ok(v) if v > *s => Some(j),
            _ => None,
        }
    }

    fn dominating_index_raw(&self, s: &Ordinal) -> Option<Ordinal> {
        let one = Ordinal::one();
        match &self.kind {
            SeqKind::PlusIndex { prefix } => match s.sub_left(prefix) {
                None => Some(one),
                Some(r) => Some(r.succ()),
            },
            SeqKind::MulIndex { base } | SeqKind::MulShiftIndex { base } => {
                // base*j > s once j exceeds the leading coefficient of s
                if s < base {
                    return Some(one);
                }
                let (be, _) = base.mono(0)?;
                let (se, sc) = s.mono(0)?;
                if se < be {
                    Some(one)
                } else {
                    Some(Ordinal::nat(sc.checked_add(1)?))
                }
            }
            SeqKind::ExpScaledIndex { expo_prefix, step } => {
                let r = match exceed_target(s, expo_prefix) {
                    None => return Some(one),
                    Some(r) => r,
                };
                // step*j > r: overshoot via the leading coefficients
                if r < *step {
                    return Some(one);
                }
                let (te, tc) = step.mono(0)?;
                let (re, rc) = r.mono(0)?;
                if re < te {
                    Some(one)
                } else {
                    let k = rc / tc;
                    Some(Ordinal::nat(k.checked_add(2)?))
                }
            }
            SeqKind::ExpOmegaIndex { expo_prefix } => {
                let r = match exceed_target(s, expo_prefix) {
                    None => return Some(one),
                    Some(r) => r,
                };
                // w^j > r
                Some(r.leading_exponent().cloned().unwrap_or(Ordinal::Zero).succ())
            }
            SeqKind::ExpPlusIndex { expo_prefix } => {
                match exceed_target(s, expo_prefix) {
                    None => Some(one),
                    Some(r) => Some(r.succ()),
                }
            }
            SeqKind::PlusInner { prefix, inner } => match s.sub_left(prefix) {
                None => Some(one),
                Some(r) => inner.dominating_index_raw(&r),
            },
            SeqKind::ExpInner { expo_prefix, inner } => {
                match exceed_target(s, expo_prefix) {
                    None => Some(one),
                    Some(r) => inner.dominating_index_raw(&r),
                }
            }
        }
    }
}

// For shapes of the form w^(expo_prefix + v(j)): the element exceeds s iff
// v(j) exceeds the returned remainder; `None` means the first element
// already works.
fn exceed_target(s: &Ordinal, expo_prefix: &Ordinal) -> Option<Ordinal> {
    s.leading_exponent()?.sub_left(expo_prefix)
}

impl fmt::Display for FundSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SeqKind::PlusIndex { prefix } => write!(f, "j -> {prefix}+j")?,
            SeqKind::MulIndex { base } => write!(f, "j -> ({base})*j")?,
            SeqKind::MulShiftIndex { base } => write!(f, "j -> ({base})*(j+1)")?,
            SeqKind::ExpScaledIndex { expo_prefix, step } => {
                write!(f, "j -> w^({expo_prefix}+({step})*j)")?
            }
            SeqKind::ExpOmegaIndex { expo_prefix } => write!(f, "j -> w^({expo_prefix}+w^j)")?,
            SeqKind::ExpPlusIndex { expo_prefix } => write!(f, "j -> w^({expo_prefix}+j)")?,
            SeqKind::PlusInner { prefix, inner } => write!(f, "j -> {prefix}+[{inner}](j)")?,
            SeqKind::ExpInner { expo_prefix, inner } => {
                write!(f, "j -> w^({expo_prefix}+[{inner}](j))")?
            }
        }
        write!(f, " for 0 < j < {}", self.index_bound)
    }
}

impl fmt::Debug for FundSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// x with the coefficient of its last monomial decremented.
fn decrement_last(x: &Ordinal) -> Ordinal {
    let mut ms = x.monomials();
    match ms.last_mut() {
        None => Ordinal::Zero,
        Some(last) => {
            if last.coeff > 1 {
                last.coeff -= 1;
            } else {
                ms.pop();
            }
            Ordinal::from_monomials(ms)
        }
    }
}

// Multiplicative sequences start at index 1; when the base is the interval
// epsilon itself the first member would be the epsilon, so the indexing
// shifts by one to stay inside the open interval.
fn mul_kind(base: Ordinal, alpha: &Ordinal) -> SeqKind {
    if base == *alpha {
        SeqKind::MulShiftIndex { base }
    } else {
        SeqKind::MulIndex { base }
    }
}

fn check_interval(t: &Ordinal, alpha: &Ordinal) -> Result<(), SeqError> {
    if !alpha.is_epsilon() {
        return Err(SeqError::NotEpsilon(alpha.clone()));
    }
    let high = alpha.next_epsilon();
    if t <= alpha || *t >= high {
        return Err(SeqError::OutsideInterval { low: alpha.clone(), high, got: t.clone() });
    }
    Ok(())
}

/// The canonical fundamental sequence of a limit `t` in `(alpha, alpha^+)`.
///
/// The construction follows the Cantor normal form of `t`: a proper tail is
/// approximated in its last monomial; a power `w^T1` splits on the last
/// exponent `Qm` of `T1` (zero, successor, limit at or below `alpha`, or a
/// recursive approximation of `w^Qm` above `alpha`).
pub fn l_seq(t: &Ordinal, alpha: &Ordinal) -> Result<FundSeq, SeqError> {
    check_interval(t, alpha)?;
    if !t.is_limit() {
        return Err(SeqError::NotLimit(t.clone()));
    }
    let ms = t.monomials();
    let n = ms.len();
    if n >= 2 {
        let tn = &ms[n - 1].exp;
        let prefix = decrement_last(t);
        return if tn <= alpha {
            // tail grows by j below w^Tn (for Tn = alpha that bound is alpha)
            Ok(FundSeq { index_bound: tn.omega_pow(), kind: SeqKind::PlusIndex { prefix } })
        } else {
            let inner = l_seq(&tn.omega_pow(), alpha)?;
            Ok(FundSeq {
                index_bound: inner.index_bound.clone(),
                kind: SeqKind::PlusInner { prefix, inner: Box::new(inner) },
            })
        };
    }
    let t1 = &ms[0].exp;
    let coeff = ms[0].coeff;
    if coeff >= 2 {
        let prefix = decrement_last(t);
        return if t1 == alpha {
            Ok(FundSeq { index_bound: alpha.clone(), kind: SeqKind::PlusIndex { prefix } })
        } else {
            // T1 > alpha: approximate the final copy of w^T1
            let inner = l_seq(&t1.omega_pow(), alpha)?;
            Ok(FundSeq {
                index_bound: inner.index_bound.clone(),
                kind: SeqKind::PlusInner { prefix, inner: Box::new(inner) },
            })
        };
    }
    // t = w^T1 with T1 > alpha (T1 = alpha would make t the atom alpha)
    let qm = t1
        .last_exponent()
        .cloned()
        .expect("t = w^T1 with T1 = 0 is finite, excluded by the limit check");
    let expo_prefix = decrement_last(t1);
    if qm.is_zero() {
        return Ok(FundSeq {
            index_bound: Ordinal::omega(),
            kind: mul_kind(expo_prefix.omega_pow(), alpha),
        });
    }
    if qm > *alpha {
        let inner = l_seq(&qm.omega_pow(), alpha)?;
        return Ok(FundSeq {
            index_bound: inner.index_bound.clone(),
            kind: SeqKind::ExpInner { expo_prefix, inner: Box::new(inner) },
        });
    }
    if let Some(pred) = qm.pred_if_succ() {
        return Ok(FundSeq {
            index_bound: Ordinal::omega(),
            kind: SeqKind::ExpScaledIndex { expo_prefix, step: pred.omega_pow() },
        });
    }
    // Qm a limit at or below alpha
    Ok(FundSeq { index_bound: qm, kind: SeqKind::ExpOmegaIndex { expo_prefix } })
}

/// The exponent-approximating sequence `(e_j)`: a sequence cofinal in
/// `pi t = w^T1`, built from the last exponent `Qm` of `T1`. Defined when
/// `pi t` is a limit strictly above `alpha`.
pub fn e_seq(t: &Ordinal, alpha: &Ordinal) -> Result<FundSeq, SeqError> {
    check_interval(t, alpha)?;
    let t1 = match t.leading_exponent() {
        None => return Err(SeqError::NotLimit(t.clone())),
        Some(e) => e.clone(),
    };
    if t1 <= *alpha {
        // pi t = alpha: below the interval, no sequence
        return Err(SeqError::PiIsBase(t.clone()));
    }
    let qm = t1.last_exponent().cloned().unwrap_or(Ordinal::Zero);
    let expo_prefix = decrement_last(&t1);
    if qm.is_zero() {
        return Ok(FundSeq {
            index_bound: Ordinal::omega(),
            kind: mul_kind(expo_prefix.omega_pow(), alpha),
        });
    }
    if qm <= *alpha {
        return Ok(FundSeq {
            index_bound: qm.omega_pow(),
            kind: SeqKind::ExpPlusIndex { expo_prefix },
        });
    }
    let inner = l_seq(&qm.omega_pow(), alpha)?;
    Ok(FundSeq {
        index_bound: inner.index_bound.clone(),
        kind: SeqKind::ExpInner { expo_prefix, inner: Box::new(inner) },
    })
}

/// First `count` positions of the standard fundamental sequence of a limit
/// index ordinal. Used only as a probe grid, never as mathematical content.
pub fn index_grid(i: &Ordinal, count: usize) -> Vec<Ordinal> {
    let mut out = Vec::with_capacity(count);
    match i {
        Ordinal::Zero => {}
        Ordinal::Eps(idx) => match idx.pred_if_succ() {
            // e(k+1): the omega-power tower over e(k)+1
            Some(pred) => {
                let mut x = Ordinal::eps(pred).succ();
                for _ in 0..count {
                    x = x.omega_pow();
                    out.push(x.clone());
                }
            }
            None => {
                if idx.is_zero() {
                    // e(0): the plain omega tower
                    let mut x = Ordinal::omega();
                    for _ in 0..count {
                        out.push(x.clone());
                        x = x.omega_pow();
                    }
                } else {
                    // e(limit): epsilons over the index's own grid
                    out.extend(index_grid(idx, count).into_iter().map(Ordinal::eps));
                }
            }
        },
        Ordinal::Sum(_) => {
            let last = i.last_exponent().unwrap().clone();
            if last.is_zero() {
                return out; // successor: no grid
            }
            let head = decrement_last(i);
            match last.pred_if_succ() {
                Some(pred) => {
                    let step = pred.omega_pow();
                    let mut acc = Ordinal::Zero;
                    for _ in 0..count {
                        acc = acc.add(&step);
                        out.push(head.add(&acc));
                    }
                }
                None => {
                    out.extend(index_grid(&last, count).into_iter().map(|c| head.add(&c.omega_pow())));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn o(s: &str) -> Ordinal {
        parse(s).unwrap()
    }

    #[test]
    fn tail_at_alpha_case() {
        // e(0)*2 approached by e(0)+j, indices up to e(0)
        let seq = l_seq(&o("e(0)*2"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, o("e(0)"));
        assert_eq!(seq.eval(&o("1")).unwrap(), o("e(0)+1"));
        assert_eq!(seq.eval(&o("w")).unwrap(), o("e(0)+w"));
        assert_eq!(seq.eval(&o("w^w*2+5")).unwrap(), o("e(0)+w^w*2+5"));
    }

    #[test]
    fn qm_zero_case() {
        // w^(e(0)+1) approached by multiples of e(0); the indexing shifts
        // so the first member clears the base epsilon
        let seq = l_seq(&o("w^(e(0)+1)"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, Ordinal::omega());
        assert_eq!(seq.eval(&o("1")).unwrap(), o("e(0)*2"));
        assert_eq!(seq.eval(&o("3")).unwrap(), o("e(0)*4"));
        assert!(seq.eval(&o("w")).is_err());

        // no shift once the base is past the epsilon
        let seq = l_seq(&o("w^(e(0)+2)"), &o("e(0)")).unwrap();
        assert_eq!(seq.eval(&o("3")).unwrap(), o("w^(e(0)+1)*3"));
    }

    #[test]
    fn qm_successor_case() {
        // w^(e(0)+w) = w^(w^e(0) + w^1): Qm = 1, steps w^(e(0)+j)
        let seq = l_seq(&o("w^(e(0)+w)"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, Ordinal::omega());
        assert_eq!(seq.eval(&o("2")).unwrap(), o("w^(e(0)+2)"));
    }

    #[test]
    fn qm_limit_case() {
        // w^(e(0)+w^w): Qm = w limit, steps w^(e(0)+w^j)
        let seq = l_seq(&o("w^(e(0)+w^w)"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, Ordinal::omega());
        assert_eq!(seq.eval(&o("2")).unwrap(), o("w^(e(0)+w^2)"));
    }

    #[test]
    fn qm_equals_alpha_case() {
        // w^(e(0)*2): Qm = alpha, steps w^(e(0)+w^j) with bound alpha
        let seq = l_seq(&o("w^(e(0)*2)"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, o("e(0)"));
        assert_eq!(seq.eval(&o("w")).unwrap(), o("w^(e(0)+w^w)"));
    }

    #[test]
    fn qm_above_alpha_recursive_case() {
        // w^w^(e(0)+1): Qm = e(0)+1 > alpha, recursion on w^Qm
        let t = o("w^w^(e(0)+1)");
        let seq = l_seq(&t, &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, Ordinal::omega());
        // inner approximates w^(e(0)+1) by shifted multiples of e(0)
        assert_eq!(seq.eval(&o("3")).unwrap(), o("w^(e(0)*4)"));
    }

    #[test]
    fn coefficient_case() {
        // w^(e(0)+1)*3: last copy of w^(e(0)+1) approximated recursively
        let seq = l_seq(&o("w^(e(0)+1)*3"), &o("e(0)")).unwrap();
        assert_eq!(seq.eval(&o("2")).unwrap(), o("w^(e(0)+1)*2+e(0)*3"));
    }

    #[test]
    fn proper_tail_case() {
        let seq = l_seq(&o("e(0)*2+w^3"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, o("w^3"));
        assert_eq!(seq.eval(&o("w+1")).unwrap(), o("e(0)*2+w+1"));
    }

    #[test]
    fn rejects_bad_arguments() {
        let a = o("e(0)");
        assert!(l_seq(&o("e(0)+1"), &a).is_err());
        assert!(l_seq(&o("w"), &a).is_err());
        assert!(l_seq(&o("e(1)"), &a).is_err());
        assert!(l_seq(&a, &a).is_err());
    }

    #[test]
    fn e_seq_examples() {
        // pi t = w^(e(0)+1): Qm = 0, shifted multiples of e(0)
        let seq = e_seq(&o("w^(e(0)+1)"), &o("e(0)")).unwrap();
        assert_eq!(seq.eval(&o("2")).unwrap(), o("e(0)*3"));

        // pi t = w^(e(0)*2): Qm = alpha, e_j = w^(e(0)+j) with bound alpha
        let seq = e_seq(&o("w^(e(0)*2)"), &o("e(0)")).unwrap();
        assert_eq!(seq.index_bound, o("e(0)"));
        assert_eq!(seq.eval(&o("w")).unwrap(), o("w^(e(0)+w)"));

        // pi t = alpha: rejected
        assert!(e_seq(&o("e(0)*2+1"), &o("e(0)")).is_err());
    }

    #[test]
    fn strictly_increasing_and_in_range() {
        let a = o("e(0)");
        for t in ["e(0)*2", "w^(e(0)+1)", "w^(e(0)*2)", "e(0)*2+w^3", "w^(e(0)+w)"] {
            let t = o(t);
            let seq = l_seq(&t, &a).unwrap();
            let mut prev = a.clone();
            for j in [o("1"), o("2"), o("5")] {
                if j >= seq.index_bound {
                    continue;
                }
                let v = seq.eval(&j).unwrap();
                assert!(v > prev, "not increasing at {j} for {t}");
                assert!(v > a && v < t, "out of range at {j} for {t}");
                prev = v;
            }
        }
    }

    #[test]
    fn dominating_index_finds_a_witness() {
        let a = o("e(0)");
        let cases = [
            ("e(0)*2", "e(0)+w^w*4"),
            ("w^(e(0)+1)", "e(0)*17+3"),
            ("w^(e(0)*2)", "w^(e(0)+w^w)*2"),
            ("e(0)*2+w^3", "e(0)*2+w^2*9"),
            ("w^(e(0)+w)", "w^(e(0)+5)*3"),
            ("w^w^(e(0)+1)", "w^(e(0)*5)"),
        ];
        for (t, s) in cases {
            let (t, s) = (o(t), o(s));
            assert!(s < t);
            let seq = l_seq(&t, &a).unwrap();
            let j = seq.dominating_index(&s).unwrap();
            assert!(seq.eval(&j).unwrap() > s, "domination failed for t={t}, s={s}");
        }
    }

    #[test]
    fn index_grid_shapes() {
        assert_eq!(index_grid(&o("w"), 3), vec![o("1"), o("2"), o("3")]);
        assert_eq!(index_grid(&o("w^2"), 3), vec![o("w"), o("w*2"), o("w*3")]);
        assert_eq!(index_grid(&o("w^w"), 3), vec![o("w"), o("w^2"), o("w^3")]);
        assert_eq!(index_grid(&o("w^2+w"), 2), vec![o("w^2+1"), o("w^2+2")]);
        let eps_grid = index_grid(&o("e(0)"), 3);
        assert_eq!(eps_grid, vec![o("w"), o("w^w"), o("w^w^w")]);
        let eps1_grid = index_grid(&o("e(1)"), 2);
        assert_eq!(eps1_grid, vec![o("w^(e(0)+1)"), o("w^w^(e(0)+1)")]);
        let epsw_grid = index_grid(&o("e(w)"), 3);
        assert_eq!(epsw_grid, vec![o("e(1)"), o("e(2)"), o("e(3)")]);
        assert!(index_grid(&o("w+1"), 3).is_empty());
    }
}
