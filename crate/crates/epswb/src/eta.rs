//! The `d`, `pi`, `eta` functions and the closed-form reach results for
//! additive principal and non-epsilon ordinals.
//!
//! `pi t` is the leading principal part `w^T1` of `t`; `d q` is the last
//! exponent of the exponent of a principal `q` (zero for non-principals);
//! `eta t = max(t, pi t + d(pi t))`.

use thiserror::Error;

use crate::term::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("{op} is undefined at zero")]
    Zero { op: &'static str },
    #[error("expected an argument in the interval ({low}, {high}), got {got}")]
    OutsideInterval { low: Ordinal, high: Ordinal, got: Ordinal },
    #[error("expected a non-epsilon argument, got {0}")]
    EpsilonArgument(Ordinal),
    #[error("xi must satisfy 1 <= xi < alpha, got xi = {xi} for alpha = {alpha}")]
    XiOutOfRange { xi: Ordinal, alpha: Ordinal },
}

/// `d q`: zero unless `q = w^Q` is principal, in which case the last CNF
/// exponent of `Q`. For an epsilon atom, `Q = q` itself and `d q = q`.
pub fn d_of(q: &Ordinal) -> Ordinal {
    match q {
        Ordinal::Eps(_) => q.clone(),
        Ordinal::Sum(ms) if ms.len() == 1 && ms[0].coeff == 1 => {
            // q = w^Q with Q zero or a (non-epsilon-atom) sum
            match ms[0].exp.last_exponent() {
                None => Ordinal::Zero, // q = 1
                Some(e) => e.clone(),
            }
        }
        _ => Ordinal::Zero,
    }
}

/// `pi t = w^T1`, the leading principal part.
pub fn pi_of(t: &Ordinal) -> Result<Ordinal, EtaError> {
    match t.leading_exponent() {
        None => Err(EtaError::Zero { op: "pi" }),
        Some(e) => Ok(e.omega_pow()),
    }
}

/// `eta t = max(t, pi t + d(pi t))`.
pub fn eta_of(t: &Ordinal) -> Result<Ordinal, EtaError> {
    let pi = pi_of(t)?;
    let reach = pi.add(&d_of(&pi));
    Ok(if reach > *t { reach } else { t.clone() })
}

/// Decides `alpha <1 alpha + xi` for `1 <= xi < alpha` (Wilken): true iff
/// `alpha = w^A` and `A = w^xi * s` for some `s != 0`, i.e. the least CNF
/// exponent of `A` is at least `xi`.
pub fn wilken_le1_plus(alpha: &Ordinal, xi: &Ordinal) -> Result<bool, EtaError> {
    if xi.is_zero() || xi >= alpha {
        return Err(EtaError::XiOutOfRange { xi: xi.clone(), alpha: alpha.clone() });
    }
    if !alpha.is_principal() {
        return Ok(false);
    }
    let a = match alpha {
        Ordinal::Eps(_) => alpha,
        _ => alpha.leading_exponent().unwrap(),
    };
    // least exponent of A; for A = 0 (alpha = 1) the precondition already
    // ruled the call out.
    let least = a.last_exponent().cloned().unwrap_or(Ordinal::Zero);
    Ok(least >= *xi)
}

/// `m(alpha)` for non-epsilon `alpha >= 1`: `alpha` itself unless `alpha` is
/// `w^A1` with coefficient 1, in which case `alpha + Bs` for `Bs` the least
/// exponent of `A1`.
pub fn m_non_epsilon(alpha: &Ordinal) -> Result<Ordinal, EtaError> {
    if alpha.is_epsilon() {
        return Err(EtaError::EpsilonArgument(alpha.clone()));
    }
    match alpha {
        Ordinal::Zero => Err(EtaError::Zero { op: "m" }),
        Ordinal::Sum(ms) => {
            if ms.len() >= 2 || ms[0].coeff >= 2 {
                Ok(alpha.clone())
            } else {
                let bs = ms[0].exp.last_exponent().cloned().unwrap_or(Ordinal::Zero);
                Ok(alpha.add(&bs))
            }
        }
        Ordinal::Eps(_) => unreachable!(),
    }
}

/// `m(t)` for `t` in the open interval `(alpha, alpha^+)`: `t` itself off the
/// principals, `eta t` on them.
pub fn m_interval(t: &Ordinal, alpha: &Ordinal) -> Result<Ordinal, EtaError> {
    check_open_interval(t, alpha)?;
    if t.is_principal() {
        eta_of(t)
    } else {
        Ok(t.clone())
    }
}

/// `b <=1 g` for `b, g` both in `(alpha, alpha^+)`, via `b <= g <= m(b)`.
pub fn le1_same_interval(b: &Ordinal, g: &Ordinal, alpha: &Ordinal) -> Result<bool, EtaError> {
    check_open_interval(b, alpha)?;
    check_open_interval(g, alpha)?;
    Ok(b <= g && *g <= m_interval(b, alpha)?)
}

fn check_open_interval(t: &Ordinal, alpha: &Ordinal) -> Result<(), EtaError> {
    if !alpha.is_epsilon() {
        return Err(EtaError::EpsilonArgument(alpha.clone()));
    }
    let high = alpha.next_epsilon();
    if t <= alpha || *t >= high {
        return Err(EtaError::OutsideInterval { low: alpha.clone(), high, got: t.clone() });
    }
    Ok(())
}
