// Galois test, purely cubic closure and isomorphism of generators.

use super::global::BaseField;
use super::local::signature_of;
use super::{genus, ArithError, Extension, Family, Signature};
use crate::canon::{CanonicalForm, FracLinear};
use crate::ffield::FieldElem;
use crate::places::{places_up_to, Place};
use crate::polyring::{Poly, RatFunc, Scalar};

/// Limits for the searches over `F_q(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest numerator/denominator degree tried for a witness.
    pub max_height: usize,
    /// Total number of candidate witnesses.
    pub max_candidates: usize,
    /// Places up to this degree are compared when no witness is found.
    pub max_place_degree: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_height: 6, max_candidates: 20_000, max_place_degree: 2 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<T> {
    /// `a1 = c^3 a2^j`.
    Pure { j: u8, c: T },
    /// `y1 = alpha y2^2 + beta y2 - 2 alpha` with `alpha^2 + a2 alpha beta + beta^2 = 1`.
    Depressed { alpha: T, beta: T },
    /// `a2 = (j a1^2 + w^3 + a1 w)^2 / a1^3`.
    Char3 { j: u8, w: T },
    /// Both generators are purely cubic: `L_i = K(u_i)`, `u_i^3 = c_i`, and
    /// `c1 = c^3 c2^j`.
    ViaPure { c1: T, c2: T, j: u8, c: T },
}

#[derive(Clone, Debug, PartialEq)]
pub enum NonIsomorphism {
    /// Pure parameters in different cube classes.
    CubeClass,
    /// Exactly one of the two extensions is purely cubic.
    PurityMismatch,
    /// Every candidate witness over a finite base was tried.
    Exhausted,
    /// A place with different splitting.
    Signature { place: Place, left: Signature, right: Signature },
    Genus(i64, i64),
    /// Forms that cannot generate the same field.
    FamilyMismatch,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsomResult<T> {
    Isomorphic(Witness<T>),
    NotIsomorphic(NonIsomorphism),
    Undetermined,
}

/// Base fields that support the witness searches.
pub trait SearchBase: BaseField {
    /// Candidate witnesses, and whether they exhaust the field.
    fn search_space(&self, budget: &SearchBudget) -> (Vec<Self>, bool);
    /// An invariant separating the two extensions, if one is found.
    fn distinguish(
        f1: &CanonicalForm<Self>,
        f2: &CanonicalForm<Self>,
        budget: &SearchBudget,
    ) -> Result<Option<NonIsomorphism>, ArithError>;
}

impl SearchBase for FieldElem {
    fn search_space(&self, _: &SearchBudget) -> (Vec<Self>, bool) {
        (self.field().elements().collect(), true)
    }
    fn distinguish(
        _: &CanonicalForm<Self>,
        _: &CanonicalForm<Self>,
        _: &SearchBudget,
    ) -> Result<Option<NonIsomorphism>, ArithError> {
        Ok(None)
    }
}

/// Rational functions of height exactly `h`, numerator first, in code order.
fn ratfuncs_of_height(base: crate::ffield::Field, h: usize, limit: usize, out: &mut Vec<RatFunc>) {
    let q = base.order();
    let poly_of = |mut code: u64, len: usize, monic: bool| {
        let mut v = Vec::with_capacity(len + 1);
        for _ in 0..len {
            v.push(base.elem((code % q) as u32));
            code /= q;
        }
        if monic {
            v.push(base.one());
        }
        Poly::new(v, base.zero())
    };
    let span = |k: usize| q.saturating_pow(k as u32);
    for dd in 0..=h {
        for dcode in 0..span(dd) {
            let den = poly_of(dcode, dd, true);
            for ncode in 0..span(h + 1) {
                let num = poly_of(ncode, h + 1, false);
                if num.deg().max(den.deg()) != h as i64 || !num.gcd(&den).is_one() && !num.is_zero() {
                    continue;
                }
                if num.is_zero() && h > 0 {
                    continue;
                }
                out.push(RatFunc::new(num, den.clone()));
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

impl SearchBase for RatFunc {
    fn search_space(&self, budget: &SearchBudget) -> (Vec<Self>, bool) {
        let mut out = Vec::new();
        for h in 0..=budget.max_height {
            ratfuncs_of_height(self.base_field(), h, budget.max_candidates, &mut out);
            if out.len() >= budget.max_candidates {
                break;
            }
        }
        (out, false)
    }

    fn distinguish(
        f1: &CanonicalForm<Self>,
        f2: &CanonicalForm<Self>,
        budget: &SearchBudget,
    ) -> Result<Option<NonIsomorphism>, ArithError> {
        let ext = |f: &CanonicalForm<RatFunc>| -> Result<Extension, ArithError> {
            let fam = match f {
                CanonicalForm::Pure(_) => Family::Pure,
                CanonicalForm::DepressedTrace(_) => Family::DepressedTrace,
                CanonicalForm::Char3(_) => Family::Char3,
                CanonicalForm::InseparablePure(_) => return Err(ArithError::Inseparable),
                CanonicalForm::Reducible { .. } => return Err(ArithError::Reducible),
            };
            Extension::new(fam, f.param().unwrap().clone())
        };
        let (l1, l2) = (ext(f1)?, ext(f2)?);
        if !l1.is_constant() && !l2.is_constant() {
            let (g1, g2) = (genus(&l1)?, genus(&l2)?);
            if g1 != g2 {
                return Ok(Some(NonIsomorphism::Genus(g1, g2)));
            }
        }
        for p in places_up_to(l1.base(), budget.max_place_degree)? {
            let s1 = signature_of(l1.family(), l1.param(), &p)?;
            let s2 = signature_of(l2.family(), l2.param(), &p)?;
            if s1 != s2 {
                return Ok(Some(NonIsomorphism::Signature { place: p, left: s1, right: s2 }));
            }
        }
        Ok(None)
    }
}

/// Whether the extension generated by the form is Galois.
pub fn is_galois<T: BaseField>(form: &CanonicalForm<T>) -> Result<bool, ArithError> {
    match form {
        CanonicalForm::Pure(a) => Ok(a.has_cube_roots_of_unity()),
        CanonicalForm::DepressedTrace(a) => {
            if a.characteristic() == 2 {
                let u = a.one_like() + (a.clone() * a.clone()).inv();
                Ok(u.artin_schreier2().is_some())
            } else {
                let four = a.from_int_like(4);
                let disc = a.from_int_like(-27) * (a.clone() * a.clone() - four);
                Ok(disc.square_root().is_some())
            }
        }
        CanonicalForm::Char3(a) => Ok((-a.clone()).square_root().is_some()),
        CanonicalForm::InseparablePure(_) => Err(ArithError::Inseparable),
        CanonicalForm::Reducible { .. } => Err(ArithError::Reducible),
    }
}

/// For a Galois `Char3{a}`: `b` with `b^2 = -a`, and the map `y -> -y/b`
/// taking a root of `X^3 + aX + a^2` to a root of `X^3 - X - b`.
pub fn artin_schreier_normalize<T: BaseField>(a: &T) -> Option<(T, FracLinear<T>)> {
    assert_eq!(a.characteristic(), 3, "Char3 parameters need p = 3");
    let b = (-a.clone()).square_root()?;
    let map = FracLinear::new(-a.one_like(), a.zero_like(), a.zero_like(), b.clone());
    Some((b, map))
}

/// A root `c` of `X^2 + aX + 1` in the base; when it exists, `X^3 - 3X - a`
/// and `X^3 - c` generate the same extension.
pub fn purely_cubic_root<T: BaseField>(a: &T) -> Option<T> {
    if a.characteristic() == 2 {
        if a.is_zero() {
            return Some(a.one_like());
        }
        let d = (a.clone() * a.clone()).inv().artin_schreier2()?;
        return Some(a.clone() * d);
    }
    let s = (a.clone() * a.clone() - a.from_int_like(4)).square_root()?;
    Some((s - a.clone()) / a.from_int_like(2))
}

/// `K(a1^(1/3)) = K(a2^(1/3))`, decided by cube classes.
pub fn isom_pure<T: BaseField>(a1: &T, a2: &T) -> IsomResult<T> {
    for j in 1..=2u8 {
        let ratio = a1.clone() / a2.pow_u(j as u64);
        if let Some(c) = ratio.cube_root() {
            return IsomResult::Isomorphic(Witness::Pure { j, c });
        }
    }
    IsomResult::NotIsomorphic(NonIsomorphism::CubeClass)
}

fn depressed_image<T: Scalar>(a2: &T, alpha: &T, beta: &T) -> T {
    let n = |k: i64| a2.from_int_like(k);
    let (al, be) = (alpha.clone(), beta.clone());
    n(-3) * a2.clone() * al.clone() * al.clone() * be.clone()
        + a2.clone() * be.pow_u(3)
        + n(6) * al.clone()
        + al.pow_u(3) * a2.clone() * a2.clone()
        - n(8) * al.pow_u(3)
}

// Over an infinite base the invariants are cheaper than the witness search,
// so they are compared first.
fn precheck<T: SearchBase>(
    f1: &CanonicalForm<T>,
    f2: &CanonicalForm<T>,
    complete: bool,
    budget: &SearchBudget,
) -> Result<Option<NonIsomorphism>, ArithError> {
    if complete {
        return Ok(None);
    }
    T::distinguish(f1, f2, budget)
}

fn after_search<T>(complete: bool) -> IsomResult<T> {
    if complete {
        IsomResult::NotIsomorphic(NonIsomorphism::Exhausted)
    } else {
        IsomResult::Undetermined
    }
}

/// Isomorphism of the extensions generated by `X^3 - 3X - a1` and `X^3 - 3X - a2`.
pub fn isom_depressed<T: SearchBase>(
    a1: &T,
    a2: &T,
    budget: &SearchBudget,
) -> Result<IsomResult<T>, ArithError> {
    match (purely_cubic_root(a1), purely_cubic_root(a2)) {
        (Some(c1), Some(c2)) => {
            return Ok(match isom_pure(&c1, &c2) {
                IsomResult::Isomorphic(Witness::Pure { j, c }) => {
                    IsomResult::Isomorphic(Witness::ViaPure { c1, c2, j, c })
                }
                other => other,
            })
        }
        (Some(_), None) | (None, Some(_)) => {
            return Ok(IsomResult::NotIsomorphic(NonIsomorphism::PurityMismatch))
        }
        (None, None) => {}
    }
    let one = a2.one_like();
    let zero = a2.zero_like();
    for beta in [one.clone(), -one.clone()] {
        if depressed_image(a2, &zero, &beta) == *a1 {
            return Ok(IsomResult::Isomorphic(Witness::Depressed { alpha: zero, beta }));
        }
    }
    let (f1, f2) = (CanonicalForm::DepressedTrace(a1.clone()), CanonicalForm::DepressedTrace(a2.clone()));
    let (space, complete) = a2.search_space(budget);
    if let Some(c) = precheck(&f1, &f2, complete, budget)? {
        return Ok(IsomResult::NotIsomorphic(c));
    }
    // points of the conic on the line beta = 1 + t alpha
    for t in space {
        let den = t.clone() * t.clone() + a2.clone() * t.clone() + one.clone();
        if den.is_zero() {
            continue;
        }
        let alpha = -(a2.clone() + a2.from_int_like(2) * t.clone()) / den;
        let beta = one.clone() + t * alpha.clone();
        if depressed_image(a2, &alpha, &beta) == *a1 {
            return Ok(IsomResult::Isomorphic(Witness::Depressed { alpha, beta }));
        }
    }
    Ok(after_search(complete))
}

/// `(j a1^2 + w^3 + a1 w)^2 / a1^3`.
pub fn char3_image<T: Scalar>(a1: &T, j: u8, w: &T) -> T {
    let num = a1.from_int_like(j as i64) * a1.clone() * a1.clone() + w.pow_u(3) + a1.clone() * w.clone();
    num.clone() * num / a1.pow_u(3)
}

/// Isomorphism of the extensions generated by `X^3 + a_i X + a_i^2`, `p = 3`.
pub fn isom_char3<T: SearchBase>(
    a1: &T,
    a2: &T,
    budget: &SearchBudget,
) -> Result<IsomResult<T>, ArithError> {
    let (space, complete) = a1.search_space(budget);
    let (f1, f2) = (CanonicalForm::Char3(a1.clone()), CanonicalForm::Char3(a2.clone()));
    if let Some(c) = precheck(&f1, &f2, complete, budget)? {
        return Ok(IsomResult::NotIsomorphic(c));
    }
    for w in std::iter::once(a1.zero_like()).chain(space) {
        for j in 1..=2u8 {
            if char3_image(a1, j, &w) == *a2 {
                return Ok(IsomResult::Isomorphic(Witness::Char3 { j, w }));
            }
        }
    }
    Ok(after_search(complete))
}

/// Dispatch on the pair of canonical forms.
pub fn isom_forms<T: SearchBase>(
    f1: &CanonicalForm<T>,
    f2: &CanonicalForm<T>,
    budget: &SearchBudget,
) -> Result<IsomResult<T>, ArithError> {
    use CanonicalForm::*;
    match (f1, f2) {
        (Reducible { .. }, _) | (_, Reducible { .. }) => Err(ArithError::Reducible),
        (InseparablePure(_), _) | (_, InseparablePure(_)) => Err(ArithError::Inseparable),
        (Pure(a), Pure(b)) => Ok(isom_pure(a, b)),
        (DepressedTrace(a), DepressedTrace(b)) => isom_depressed(a, b, budget),
        (Char3(a), Char3(b)) => isom_char3(a, b, budget),
        (Pure(a), DepressedTrace(b)) => Ok(match purely_cubic_root(b) {
            Some(c) => isom_pure(a, &c),
            None => IsomResult::NotIsomorphic(NonIsomorphism::PurityMismatch),
        }),
        (DepressedTrace(a), Pure(b)) => Ok(match purely_cubic_root(a) {
            Some(c) => match isom_pure(&c, b) {
                IsomResult::Isomorphic(Witness::Pure { j, c: w }) => {
                    IsomResult::Isomorphic(Witness::ViaPure { c1: c, c2: b.clone(), j, c: w })
                }
                other => other,
            },
            None => IsomResult::NotIsomorphic(NonIsomorphism::PurityMismatch),
        }),
        _ => Ok(IsomResult::NotIsomorphic(NonIsomorphism::FamilyMismatch)),
    }
}
