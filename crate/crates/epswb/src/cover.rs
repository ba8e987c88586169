//! Finite cover constructions: `S_CNF`, `B(t)`, `F(L)`, `C(delta)`,
//! `D(alpha, delta)` and `Delta(alpha, B)`.
//!
//! Every valid `(<, <1, +)`-isomorphism on one of these covers is forced to
//! dominate the plain substitution pointwise, which is what the witness
//! search in the oracle module exploits.

use thiserror::Error;

use crate::set::FinOrdSet;
use crate::term::{Monomial, Ordinal};

/// Hard cap on materialized cover sizes. Coefficients range up to `2^32`, so
/// a literal cover of untrusted input can be astronomically large even though
/// it is finite; building stops with an error rather than exhausting memory.
pub const MAX_COVER_SIZE: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover exceeds {MAX_COVER_SIZE} elements")]
    TooLarge,
    #[error("argument {0} of F is not additive principal")]
    NotPrincipal(Ordinal),
    #[error("expected an epsilon number, got {0}")]
    NotEpsilon(Ordinal),
    #[error("element {element} is not below {bound}")]
    OutOfRange { element: Ordinal, bound: Ordinal },
}

fn push(out: &mut FinOrdSet, x: Ordinal) -> Result<(), CoverError> {
    out.insert(x);
    if out.len() > MAX_COVER_SIZE {
        Err(CoverError::TooLarge)
    } else {
        Ok(())
    }
}

/// `S_CNF(q)`: the monomials of `q`, its partial sums, and recursively the
/// `S_CNF` of the exponents of its non-epsilon principal parts.
pub fn s_cnf(q: &Ordinal) -> Result<FinOrdSet, CoverError> {
    let mut out = FinOrdSet::new();
    s_cnf_into(q, &mut out)?;
    Ok(out)
}

fn s_cnf_into(q: &Ordinal, out: &mut FinOrdSet) -> Result<(), CoverError> {
    if q.is_zero() {
        return Ok(());
    }
    let ms = q.monomials();
    let mut partial = Ordinal::Zero;
    for m in &ms {
        let piece = Ordinal::from_monomials(vec![m.clone()]);
        push(out, piece.clone())?;
        partial = partial.add(&piece);
        push(out, partial.clone())?;
        if !m.exp.omega_pow().is_epsilon() {
            s_cnf_into(&m.exp, out)?;
        }
    }
    Ok(())
}

/// `B(t)`: `S_CNF(t)` plus every coefficient truncation `L*j` of its members
/// of the shape `L*q` with `L` principal and `q` finite.
pub fn b_t(t: &Ordinal) -> Result<FinOrdSet, CoverError> {
    let base = s_cnf(t)?;
    let mut out = base.clone();
    for s in base.iter() {
        if let Ordinal::Sum(ms) = s {
            if ms.len() == 1 && ms[0].coeff >= 2 {
                for j in 1..ms[0].coeff {
                    push(
                        &mut out,
                        Ordinal::from_monomials(vec![Monomial { exp: ms[0].exp.clone(), coeff: j }]),
                    )?;
                }
            }
        }
    }
    Ok(out)
}

/// `F(L)` for principal `L`: the prefix-truncated powers of the exponent of
/// `L`, each optionally bumped by the truncation point's own exponent.
/// Epsilon atoms and `1` are their own cover.
pub fn f_of(l: &Ordinal) -> Result<FinOrdSet, CoverError> {
    if !l.is_principal() {
        return Err(CoverError::NotPrincipal(l.clone()));
    }
    let mut out = FinOrdSet::new();
    if l.is_epsilon() || *l == Ordinal::one() {
        out.insert(l.clone());
        return Ok(out);
    }
    let z = l.leading_exponent().unwrap();
    let zm = z.monomials();
    let mut prefix_before: Vec<Monomial> = Vec::new();
    for m in &zm {
        for j in 1..=m.coeff {
            let mut ms = prefix_before.clone();
            ms.push(Monomial { exp: m.exp.clone(), coeff: j });
            let power = Ordinal::from_monomials(ms).omega_pow();
            push(&mut out, power.add(&m.exp))?;
            push(&mut out, power)?;
        }
        prefix_before.push(m.clone());
    }
    Ok(out)
}

// C1(delta) = union of F over the non-epsilon principal parts.
fn c1(delta: &Ordinal) -> Result<FinOrdSet, CoverError> {
    let mut out = FinOrdSet::new();
    for m in delta.monomials() {
        let l = m.exp.omega_pow();
        if !l.is_epsilon() {
            out.union_with(&f_of(&l)?);
            if out.len() > MAX_COVER_SIZE {
                return Err(CoverError::TooLarge);
            }
        }
    }
    Ok(out)
}

// C2(delta) = coefficient truncations of the monomials plus partial sums.
fn c2(delta: &Ordinal) -> Result<FinOrdSet, CoverError> {
    let mut out = FinOrdSet::new();
    let ms = delta.monomials();
    let mut partial = Ordinal::Zero;
    for m in &ms {
        for j in 1..=m.coeff {
            push(&mut out, Ordinal::from_monomials(vec![Monomial { exp: m.exp.clone(), coeff: j }]))?;
        }
        partial = partial.add(&Ordinal::from_monomials(vec![m.clone()]));
        push(&mut out, partial.clone())?;
    }
    Ok(out)
}

// Y(delta): all exponents appearing in the exponents of the non-epsilon
// principal parts. Y(delta) is a set of ordinals strictly below delta, which
// grounds the recursion in `c_cover`.
fn y_of(delta: &Ordinal) -> FinOrdSet {
    let mut out = FinOrdSet::new();
    for m in delta.monomials() {
        if !m.exp.omega_pow().is_epsilon() {
            for inner in m.exp.monomials() {
                out.insert(inner.exp);
            }
        }
    }
    out
}

/// The recursive cover `C(delta) = C1 + C2 of each member of C1 + C2(delta)
/// + the covers of Y(delta)`. `C(0)` is empty.
pub fn c_cover(delta: &Ordinal) -> Result<FinOrdSet, CoverError> {
    if delta.is_zero() {
        return Ok(FinOrdSet::new());
    }
    let mut out = c1(delta)?;
    for sigma in out.clone().iter() {
        out.union_with(&c2(sigma)?);
        if out.len() > MAX_COVER_SIZE {
            return Err(CoverError::TooLarge);
        }
    }
    out.union_with(&c2(delta)?);
    for v in y_of(delta).iter() {
        out.union_with(&c_cover(v)?);
        if out.len() > MAX_COVER_SIZE {
            return Err(CoverError::TooLarge);
        }
    }
    Ok(out)
}

/// `D(alpha, delta) = C(delta) + {alpha, alpha*2}` for `delta` below
/// `alpha^+`.
pub fn d_cover(alpha: &Ordinal, delta: &Ordinal) -> Result<FinOrdSet, CoverError> {
    if !alpha.is_epsilon() {
        return Err(CoverError::NotEpsilon(alpha.clone()));
    }
    let bound = alpha.next_epsilon();
    if *delta >= bound {
        return Err(CoverError::OutOfRange { element: delta.clone(), bound });
    }
    let mut out = c_cover(delta)?;
    out.insert(alpha.clone());
    out.insert(alpha.mul(&Ordinal::nat(2)));
    Ok(out)
}

/// `Delta(alpha, B) = B + union of D(alpha, delta)` over the members of `B`
/// in `[alpha, alpha^+)`.
pub fn delta_cover(alpha: &Ordinal, b: &FinOrdSet) -> Result<FinOrdSet, CoverError> {
    if !alpha.is_epsilon() {
        return Err(CoverError::NotEpsilon(alpha.clone()));
    }
    let bound = alpha.next_epsilon();
    let mut out = b.clone();
    for x in b.iter() {
        if *x >= bound {
            return Err(CoverError::OutOfRange { element: x.clone(), bound });
        }
        if x >= alpha {
            out.union_with(&d_cover(alpha, x)?);
            if out.len() > MAX_COVER_SIZE {
                return Err(CoverError::TooLarge);
            }
        }
    }
    Ok(out)
}
