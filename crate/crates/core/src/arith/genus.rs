// Ramified places, differential exponents and the genus.

use std::collections::BTreeSet;

use super::local::{as_local_reduce, char3_local_form, signature_of};
use super::{ArithError, Extension, Family, Signature};
use crate::places::{divisor_of, Place};
use crate::polyring::{RatFunc, Scalar};

/// A ramified place with its differential exponent `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ramified {
    pub place: Place,
    pub d: u64,
}

/// Fully and partially ramified places of `L / K`, sorted by place.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RamificationReport {
    pub fully: Vec<Ramified>,
    pub partial: Vec<Ramified>,
}

impl RamificationReport {
    pub fn is_empty(&self) -> bool {
        self.fully.is_empty() && self.partial.is_empty()
    }

    /// `sum d(P) deg P` over all ramified places.
    pub fn different_degree(&self) -> i64 {
        self.fully.iter().chain(&self.partial).map(|r| r.d as i64 * r.place.degree() as i64).sum()
    }
}

fn zeros(f: &RatFunc) -> Result<Vec<Place>, ArithError> {
    Ok(divisor_of(f)?.into_iter().filter(|(_, v)| *v > 0).map(|(p, _)| p).collect())
}

pub(super) fn compute_report(family: Family, a: &RatFunc) -> Result<RamificationReport, ArithError> {
    let base = a.base_field();
    let div = divisor_of(a)?;
    let mut rep = RamificationReport::default();
    match family {
        Family::Pure => {
            for (p, v) in div {
                if v % 3 != 0 {
                    rep.fully.push(Ramified { place: p, d: 2 });
                }
            }
        }
        Family::DepressedTrace => {
            for (p, v) in &div {
                if *v < 0 && v % 3 != 0 {
                    rep.fully.push(Ramified { place: p.clone(), d: 2 });
                }
            }
            if base.p() == 2 {
                let u = (a.clone() * a.clone()).inv() + RatFunc::one(base);
                for p in zeros(a)? {
                    let (u, _) = as_local_reduce(&u, &p)?;
                    if let Some(m) = p.valuation(&u).filter(|m| *m < 0) {
                        rep.partial.push(Ramified { place: p, d: (1 - m) as u64 });
                    }
                }
            } else {
                let two = RatFunc::constant(base.from_int(2));
                let cands: BTreeSet<Place> = zeros(&(a.clone() - two.clone()))?
                    .into_iter()
                    .chain(zeros(&(a.clone() + two))?)
                    .collect();
                let disc = RatFunc::constant(base.from_int(-27))
                    * (a.clone() * a.clone() - RatFunc::constant(base.from_int(4)));
                for p in cands {
                    let v = p.valuation(&disc).ok_or(ArithError::Reducible)?;
                    if v % 2 != 0 {
                        rep.partial.push(Ramified { place: p, d: 1 });
                    }
                }
            }
        }
        Family::Char3 => {
            for p in div.into_keys() {
                let c = char3_local_form(a, &p)?;
                let v = p.valuation(&c).ok_or(ArithError::ZeroParameter)?;
                if v < 0 {
                    rep.fully.push(Ramified { place: p, d: (2 - v) as u64 });
                } else if v % 2 != 0 {
                    rep.partial.push(Ramified { place: p, d: 1 });
                }
            }
        }
    }
    rep.fully.sort_by(|x, y| x.place.cmp(&y.place));
    rep.partial.sort_by(|x, y| x.place.cmp(&y.place));
    Ok(rep)
}

pub fn ramification_report(l: &Extension) -> &RamificationReport {
    l.report()
}

/// Genus of a geometric `L`, from `2g - 2 = 3(-2) + sum d(P) deg P`.
pub fn genus(l: &Extension) -> Result<i64, ArithError> {
    if l.is_constant() {
        return Err(ArithError::ConstantExtension);
    }
    let sum = l.report().different_degree();
    if sum % 2 != 0 {
        return Err(ArithError::NonIntegralGenus(sum));
    }
    Ok(sum / 2 - 2)
}

/// Whether every pole of `a` is a finite place of even degree, as happens
/// for Galois parameters over `F_q`, `q = 2 mod 3`.
pub fn galois_denominator_check(a: &RatFunc) -> Result<bool, ArithError> {
    Ok(divisor_of(a)?
        .into_iter()
        .filter(|(_, v)| *v < 0)
        .all(|(p, _)| !p.is_infinite() && p.degree() % 2 == 0))
}

/// Places of degree at most `max_deg` whose signature is `sig`.
pub fn places_with_signature(
    l: &Extension,
    places: &[Place],
    sig: Signature,
) -> Result<Vec<Place>, ArithError> {
    let mut out = Vec::new();
    for p in places {
        if signature_of(l.family(), l.param(), p)? == sig {
            out.push(p.clone());
        }
    }
    Ok(out)
}
