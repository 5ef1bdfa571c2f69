use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

use super::{wrap_if_compound, Poly, Scalar};
use crate::ffield::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("zero denominator")]
    ZeroDenominator,
}

/// An element of `F_q(x)`, kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<FieldElem>,
    den: Poly<FieldElem>,
}

impl RatFunc {
    /// Panics on a zero denominator; see [`RatFunc::try_new`].
    pub fn new(num: Poly<FieldElem>, den: Poly<FieldElem>) -> Self {
        RatFunc::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: Poly<FieldElem>, den: Poly<FieldElem>) -> Result<Self, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        if num.is_zero() {
            let one = Poly::one(den.zero_elem().clone());
            return Ok(RatFunc { num, den: one });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.lc();
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(num: Poly<FieldElem>) -> Self {
        let one = Poly::one(num.zero_elem().field().zero());
        RatFunc { num, den: one }
    }

    pub fn constant(c: FieldElem) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn zero(field: Field) -> Self {
        RatFunc::from_poly(Poly::zero(field.zero()))
    }

    pub fn one(field: Field) -> Self {
        RatFunc::constant(field.one())
    }

    /// The transcendental `x`.
    pub fn x(field: Field) -> Self {
        RatFunc::from_poly(Poly::x(field.zero()))
    }

    pub fn base_field(&self) -> Field {
        self.num.zero_elem().field()
    }

    pub fn num(&self) -> &Poly<FieldElem> {
        &self.num
    }

    pub fn den(&self) -> &Poly<FieldElem> {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<FieldElem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value at `x = c`, or `None` at a pole.
    pub fn eval(&self, c: &FieldElem) -> Option<FieldElem> {
        let d = self.den.eval(c);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(c) / d)
    }

    /// `deg(num) - deg(den)`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.num.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    /// Larger of the numerator and denominator degrees.
    pub fn height(&self) -> usize {
        self.num.deg().max(self.den.deg()).max(0) as usize
    }

    pub fn pow_i(&self, e: i64) -> RatFunc {
        let b = if e < 0 { self.inv() } else { self.clone() };
        RatFunc::new(b.num.pow(e.unsigned_abs()), b.den.pow(e.unsigned_abs()))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_var("x");
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let n = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({n})")
        } else {
            wrap_if_compound(&n)
        };
        let d = self.den.fmt_var("x");
        let d = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || d.contains('*')
        {
            format!("({d})")
        } else {
            d
        };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den);
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}
impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}
impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero(self.base_field());
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}
impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        self * o.inv()
    }
}
impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Scalar for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.base_field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.base_field())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_int_like(&self, n: i64) -> Self {
        RatFunc::constant(self.base_field().from_int(n))
    }
    fn characteristic(&self) -> u32 {
        self.base_field().p()
    }
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
