// Local standard forms and the splitting of a single place.

use super::{ArithError, Extension, Family, Signature};
use crate::ffcubic::{decompose_char3, decompose_depressed, Shape};
use crate::ffield::FieldElem;
use crate::places::Place;
use crate::polyring::{RatFunc, Scalar};

/// `a = a' c^3` with `v_P(a')` in `{0, 1, 2}`; returns `(a', c)`.
pub fn pure_local_form(a: &RatFunc, p: &Place) -> Result<(RatFunc, RatFunc), ArithError> {
    let v = p.valuation(a).ok_or(ArithError::ZeroParameter)?;
    let j = v.div_euclid(3);
    let c = p.uniformizer_pow(j);
    Ok((a.clone() * p.uniformizer_pow(-3 * j), c))
}

/// Removes the even pole orders of `u` at `P`: returns `(u', w)` with
/// `u' = u - (w^2 + w)` and `v_P(u') >= 0` or odd. Needs `p = 2`.
pub fn as_local_reduce(u: &RatFunc, p: &Place) -> Result<(RatFunc, RatFunc), ArithError> {
    let base = u.base_field();
    assert_eq!(base.p(), 2);
    let mut u = u.clone();
    let mut w = RatFunc::zero(base);
    while let Some(v) = p.valuation(&u) {
        if v >= 0 || v % 2 != 0 {
            break;
        }
        let s = p.unit_residue(&u)?;
        let k = s.field().order();
        let r = s.pow(k / 2);
        let step = p.lift_ratfunc(r)? * p.uniformizer_pow(v / 2);
        u = u - (step.clone() * step.clone() + step.clone());
        w = w + step;
    }
    Ok((u, w))
}

/// Replaces `a` by an isomorphic parameter whose valuation at `P` is
/// non-negative or prime to 3. Needs `p = 3`.
pub fn char3_local_form(a: &RatFunc, p: &Place) -> Result<RatFunc, ArithError> {
    let mut a = a.clone();
    while let Some(v) = p.valuation(&a) {
        if v >= 0 || v % 3 != 0 {
            break;
        }
        // w^3 cancels the leading term of a^2
        let rho = p.unit_residue(&(-(a.clone() * a.clone())))?;
        let root = rho.cbrt().expect("cube roots exist in characteristic 3");
        let w = p.lift_ratfunc(root)? * p.uniformizer_pow(2 * v / 3);
        let num = a.clone() * a.clone() + w.clone() * w.clone() * w.clone() + a.clone() * w;
        a = num.clone() * num / (a.clone() * a.clone() * a);
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolventBehavior {
    Split,
    Inert,
    Ramified,
}

/// Behaviour of `P` in the quadratic resolvent field of `X^3 - 3X - a`.
pub fn resolvent_place_behavior(a: &RatFunc, p: &Place) -> Result<ResolventBehavior, ArithError> {
    let base = a.base_field();
    if base.p() == 2 {
        let u = (a.clone() * a.clone()).inv() + RatFunc::one(base);
        let (u, _) = as_local_reduce(&u, p)?;
        return Ok(match p.valuation(&u) {
            Some(v) if v < 0 => ResolventBehavior::Ramified,
            _ => {
                let r = p.reduce(&u)?;
                if r.trace().is_zero() {
                    ResolventBehavior::Split
                } else {
                    ResolventBehavior::Inert
                }
            }
        });
    }
    let four = RatFunc::constant(base.from_int(4));
    let disc = RatFunc::constant(base.from_int(-27)) * (a.clone() * a.clone() - four);
    let v = p.valuation(&disc).ok_or(ArithError::Reducible)?;
    if v % 2 != 0 {
        return Ok(ResolventBehavior::Ramified);
    }
    Ok(if p.unit_residue(&disc)?.is_square() {
        ResolventBehavior::Split
    } else {
        ResolventBehavior::Inert
    })
}

/// Unit `rho` with residue field order `k`: how `X^3 - rho` splits.
fn pure_unit_signature(rho: FieldElem) -> Signature {
    let k = rho.field().order();
    if k % 3 == 1 {
        if rho.is_cube() {
            Signature::Split
        } else {
            Signature::Inert
        }
    } else {
        Signature::SplitInert
    }
}

fn signature_pure(a: &RatFunc, p: &Place) -> Result<Signature, ArithError> {
    let v = p.valuation(a).ok_or(ArithError::ZeroParameter)?;
    if v % 3 != 0 {
        return Ok(Signature::Ramified);
    }
    Ok(pure_unit_signature(p.unit_residue(a)?))
}

fn signature_depressed(a: &RatFunc, p: &Place) -> Result<Signature, ArithError> {
    let v = p.valuation(a).ok_or(ArithError::ZeroParameter)?;
    if v < 0 {
        if v % 3 != 0 {
            return Ok(Signature::Ramified);
        }
        return Ok(pure_unit_signature(p.unit_residue(a)?));
    }
    let abar = p.reduce(a)?;
    Ok(match decompose_depressed(abar).shape() {
        Shape::Irreducible => Signature::Inert,
        Shape::LinTimesQuad => Signature::SplitInert,
        Shape::ThreeDistinct => Signature::Split,
        Shape::LinTimesSquare => match resolvent_place_behavior(a, p)? {
            ResolventBehavior::Split => Signature::Split,
            ResolventBehavior::Inert => Signature::SplitInert,
            ResolventBehavior::Ramified => Signature::PartiallyRamified,
        },
        Shape::Triple => unreachable!("depressed cubics have no triple root"),
    })
}

fn signature_char3(a: &RatFunc, p: &Place) -> Result<Signature, ArithError> {
    let c = char3_local_form(a, p)?;
    let v = p.valuation(&c).ok_or(ArithError::ZeroParameter)?;
    if v < 0 {
        return Ok(Signature::Ramified);
    }
    if v == 0 {
        return Ok(match decompose_char3(p.reduce(&c)?).shape() {
            Shape::Irreducible => Signature::Inert,
            Shape::ThreeDistinct => Signature::Split,
            Shape::LinTimesQuad => Signature::SplitInert,
            other => unreachable!("unit parameter gave {other:?}"),
        });
    }
    if v % 2 != 0 {
        return Ok(Signature::PartiallyRamified);
    }
    Ok(if (-p.unit_residue(&c)?).is_square() {
        Signature::Split
    } else {
        Signature::SplitInert
    })
}

/// Splitting of `P` in `L`.
pub fn signature(l: &Extension, p: &Place) -> Result<Signature, ArithError> {
    signature_of(l.family(), l.param(), p)
}

pub(crate) fn signature_of(family: Family, a: &RatFunc, p: &Place) -> Result<Signature, ArithError> {
    match family {
        Family::Pure => signature_pure(a, p),
        Family::DepressedTrace => signature_depressed(a, p),
        Family::Char3 => signature_char3(a, p),
    }
}
