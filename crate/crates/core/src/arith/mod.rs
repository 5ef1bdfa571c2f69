//! Cubic function fields `L = K(y)` over `K = F_q(x)`: splitting of places,
//! ramification, genus and isomorphism tests.

use std::fmt;

use thiserror::Error;

use crate::canon::{reduce_cubic, CanonicalForm, Cubic, Reduction};
use crate::ffield::{Field, FieldElem, FieldError};
use crate::places::{Place, PlaceError};
use crate::polyring::{RatFunc, Scalar};

mod genus;
mod global;
mod isom;
mod local;

pub use genus::{
    galois_denominator_check, genus, places_with_signature, ramification_report, Ramified,
    RamificationReport,
};
pub use global::{
    as_global_solve, global_cube_root, global_square_root, has_rational_root, BaseField,
};
pub use isom::{
    artin_schreier_normalize, char3_image, is_galois, isom_char3, isom_depressed, isom_forms, isom_pure, purely_cubic_root,
    IsomResult, NonIsomorphism, SearchBase, SearchBudget, Witness,
};
pub use local::{
    as_local_reduce, char3_local_form, pure_local_form, resolvent_place_behavior, signature,
    ResolventBehavior,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cubic is reducible over the base field")]
    Reducible,
    #[error("cubic is inseparable")]
    Inseparable,
    #[error("the {0} form does not exist in characteristic {1}")]
    WrongCharacteristic(&'static str, u32),
    #[error("canonical parameter must be nonzero")]
    ZeroParameter,
    #[error("extension is a constant field extension")]
    ConstantExtension,
    #[error("Riemann-Hurwitz sum {0} is odd")]
    NonIntegralGenus(i64),
    #[error("root search needs too many candidates ({0})")]
    SearchTooLarge(u64),
    #[error(transparent)]
    Place(#[from] PlaceError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Pure,
    DepressedTrace,
    Char3,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Pure => "pure",
            Family::DepressedTrace => "depressed",
            Family::Char3 => "char3",
        }
    }

    pub fn form<T: Clone>(&self, a: T) -> CanonicalForm<T> {
        match self {
            Family::Pure => CanonicalForm::Pure(a),
            Family::DepressedTrace => CanonicalForm::DepressedTrace(a),
            Family::Char3 => CanonicalForm::Char3(a),
        }
    }
}

/// Decomposition of a place of `K` in `L`, as `(e,f)` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    /// (1,1;1,1;1,1)
    Split,
    /// (1,1;1,2)
    SplitInert,
    /// (1,3)
    Inert,
    /// (3,1)
    Ramified,
    /// (2,1;1,1)
    PartiallyRamified,
}

impl Signature {
    pub fn as_str(&self) -> &'static str {
        match self {
            Signature::Split => "(1,1;1,1;1,1)",
            Signature::SplitInert => "(1,1;1,2)",
            Signature::Inert => "(1,3)",
            Signature::Ramified => "(3,1)",
            Signature::PartiallyRamified => "(2,1;1,1)",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether `L / K` only enlarges the constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantStatus {
    /// `L = F_{q^3} K`. For pure generators `a = u b^3` with `u` a non-cube
    /// constant, and `u` is recorded.
    Constant(Option<FieldElem>),
    /// Geometric, certified by a ramified place.
    Geometric(Place),
}

/// A separable cubic extension of `F_q(x)` given by a canonical generator,
/// certified irreducible.
#[derive(Clone, Debug)]
pub struct Extension {
    family: Family,
    a: RatFunc,
    report: RamificationReport,
}

impl Extension {
    /// Builds `L` from a canonical parameter; fails when the cubic has a root
    /// in `F_q(x)`.
    pub fn new(family: Family, a: RatFunc) -> Result<Extension, ArithError> {
        let p = a.characteristic();
        match family {
            Family::Char3 if p != 3 => return Err(ArithError::WrongCharacteristic("char3", p)),
            Family::Pure | Family::DepressedTrace if p == 3 => {
                return Err(ArithError::WrongCharacteristic(family.name(), p))
            }
            _ => {}
        }
        if a.is_zero() {
            return Err(ArithError::ZeroParameter);
        }
        let cubic = family.form(a.clone()).to_cubic();
        if has_rational_root(&cubic)?.is_some() {
            return Err(ArithError::Reducible);
        }
        let report = genus::compute_report(family, &a)?;
        Ok(Extension { family, a, report })
    }

    /// Reduces an arbitrary monic cubic over `F_q(x)` and builds `L`.
    pub fn from_cubic(c: &Cubic<RatFunc>) -> Result<(Extension, Reduction<RatFunc>), ArithError> {
        let red = reduce_cubic(c);
        let (family, a) = match &red.form {
            CanonicalForm::Pure(a) => (Family::Pure, a.clone()),
            CanonicalForm::DepressedTrace(a) => (Family::DepressedTrace, a.clone()),
            CanonicalForm::Char3(a) => (Family::Char3, a.clone()),
            CanonicalForm::InseparablePure(_) => return Err(ArithError::Inseparable),
            CanonicalForm::Reducible { .. } => return Err(ArithError::Reducible),
        };
        Ok((Extension::new(family, a)?, red))
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn param(&self) -> &RatFunc {
        &self.a
    }
    pub fn base(&self) -> Field {
        self.a.base_field()
    }
    pub fn form(&self) -> CanonicalForm<RatFunc> {
        self.family.form(self.a.clone())
    }
    pub fn report(&self) -> &RamificationReport {
        &self.report
    }

    pub fn is_constant(&self) -> bool {
        self.report.is_empty()
    }

    pub fn constant_status(&self) -> ConstantStatus {
        if let Some(r) = self.report.fully.first().or(self.report.partial.first()) {
            return ConstantStatus::Geometric(r.place.clone());
        }
        // every exponent of a pure parameter is 0 mod 3 here
        let u = (self.family == Family::Pure).then(|| self.a.num().lc());
        ConstantStatus::Constant(u)
    }
}

pub fn is_constant_extension(l: &Extension) -> ConstantStatus {
    l.constant_status()
}
