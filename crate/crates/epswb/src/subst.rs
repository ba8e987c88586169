//! Epsilon extraction, the substitution `x[a := e]`, and the `M(a, e)` guard.
//!
//! The substitution replaces the epsilon atom `a` by the epsilon atom `e`
//! wherever it occurs as a subterm of the Cantor normal form. It is total;
//! callers that need the order/algebra preservation properties must check
//! [`in_m`] first.

use thiserror::Error;

use crate::set::FinOrdSet;
use crate::term::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution point {0} is not an epsilon number")]
    NotEpsilon(Ordinal),
    #[error("element {element} violates the M({alpha}, {e}) guard")]
    OutsideM { element: Ordinal, alpha: Ordinal, e: Ordinal },
}

/// The finite set of epsilon numbers appearing in the CNF of `x`.
///
/// An epsilon atom contributes itself and nothing from its index; `ep_set` of
/// zero and of naturals is empty.
pub fn ep_set(x: &Ordinal) -> FinOrdSet {
    let mut out = FinOrdSet::new();
    collect_eps(x, &mut out);
    out
}

fn collect_eps(x: &Ordinal, out: &mut FinOrdSet) {
    match x {
        Ordinal::Zero => {}
        Ordinal::Eps(_) => {
            out.insert(x.clone());
        }
        Ordinal::Sum(ms) => {
            for m in ms {
                collect_eps(&m.exp, out);
            }
        }
    }
}

/// `x[alpha := e]`: structural replacement of the atom `alpha` by `e`.
///
/// Errors only when `alpha` or `e` is not an epsilon atom. The result is
/// rebuilt through the canonicalizing arithmetic, so it is canonical even
/// when the `M(alpha, e)` guard fails.
pub fn subst(x: &Ordinal, alpha: &Ordinal, e: &Ordinal) -> Result<Ordinal, SubstError> {
    if !alpha.is_epsilon() {
        return Err(SubstError::NotEpsilon(alpha.clone()));
    }
    if !e.is_epsilon() {
        return Err(SubstError::NotEpsilon(e.clone()));
    }
    Ok(subst_raw(x, alpha, e))
}

fn subst_raw(x: &Ordinal, alpha: &Ordinal, e: &Ordinal) -> Ordinal {
    match x {
        Ordinal::Zero => Ordinal::Zero,
        Ordinal::Eps(_) => {
            if x == alpha {
                e.clone()
            } else {
                x.clone()
            }
        }
        Ordinal::Sum(ms) => {
            let mut acc = Ordinal::Zero;
            for m in ms {
                let exp = subst_raw(&m.exp, alpha, e);
                let part = exp.omega_pow().mul(&Ordinal::nat(m.coeff));
                acc = acc.add(&part);
            }
            acc
        }
    }
}

/// Membership in `M(alpha, e)`: `q` lies below `alpha^+` and every epsilon of
/// `q` below `alpha` is below `e`.
pub fn in_m(q: &Ordinal, alpha: &Ordinal, e: &Ordinal) -> Result<bool, SubstError> {
    if !alpha.is_epsilon() {
        return Err(SubstError::NotEpsilon(alpha.clone()));
    }
    if !e.is_epsilon() {
        return Err(SubstError::NotEpsilon(e.clone()));
    }
    Ok(in_m_unchecked(q, alpha, e))
}

pub(crate) fn in_m_unchecked(q: &Ordinal, alpha: &Ordinal, e: &Ordinal) -> bool {
    if *q >= alpha.next_epsilon() {
        return false;
    }
    ep_set(q).iter().all(|m| m >= alpha || m < e)
}

/// A finite substitution witness: the map `b -> b[alpha := e]` over a finite
/// domain, together with the point below which it is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub pairs: Vec<(Ordinal, Ordinal)>,
    pub fixed_below: Ordinal,
}

impl IsoWitness {
    pub fn identity(domain: &FinOrdSet) -> IsoWitness {
        let fixed_below = domain.max().map(|m| m.succ()).unwrap_or(Ordinal::Zero);
        IsoWitness {
            pairs: domain.iter().map(|x| (x.clone(), x.clone())).collect(),
            fixed_below,
        }
    }

    pub fn image(&self, x: &Ordinal) -> Option<&Ordinal> {
        self.pairs.iter().find(|(a, _)| a == x).map(|(_, b)| b)
    }

    pub fn domain(&self) -> FinOrdSet {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }
}

/// Package the pointwise substitution over `B` as an [`IsoWitness`].
///
/// Every element must satisfy the `M(alpha, e)` guard; the first offender is
/// reported otherwise.
pub fn subst_map(b: &FinOrdSet, alpha: &Ordinal, e: &Ordinal) -> Result<IsoWitness, SubstError> {
    if !alpha.is_epsilon() {
        return Err(SubstError::NotEpsilon(alpha.clone()));
    }
    if !e.is_epsilon() {
        return Err(SubstError::NotEpsilon(e.clone()));
    }
    let mut pairs = Vec::with_capacity(b.len());
    for x in b.iter() {
        if !in_m_unchecked(x, alpha, e) {
            return Err(SubstError::OutsideM {
                element: x.clone(),
                alpha: alpha.clone(),
                e: e.clone(),
            });
        }
        pairs.push((x.clone(), subst_raw(x, alpha, e)));
    }
    Ok(IsoWitness { pairs, fixed_below: alpha.clone() })
}
