//! Reduction of a monic cubic to a canonical generator, and the Shanks and
//! Galois parametrizations.

use std::fmt;

use thiserror::Error;

use crate::polyring::{Poly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("A^2 + AB + B^2 vanishes")]
    DegenerateNorm,
    #[error("a^2 + 3a + 9 vanishes")]
    DegenerateShanks,
    #[error("polynomial is not a monic cubic")]
    NotMonicCubic,
}

/// `X^3 + e X^2 + f X + g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cubic<T> {
    pub e: T,
    pub f: T,
    pub g: T,
}

impl<T: Scalar> Cubic<T> {
    pub fn new(e: T, f: T, g: T) -> Self {
        Cubic { e, f, g }
    }

    pub fn from_poly(p: &Poly<T>) -> Result<Self, CanonError> {
        if p.degree() != Some(3) || !p.lc().is_one() {
            return Err(CanonError::NotMonicCubic);
        }
        Ok(Cubic { e: p.coeff(2), f: p.coeff(1), g: p.coeff(0) })
    }

    pub fn to_poly(&self) -> Poly<T> {
        let one = self.e.one_like();
        Poly::new(vec![self.g.clone(), self.f.clone(), self.e.clone(), one], self.e.zero_like())
    }

    pub fn eval(&self, y: &T) -> T {
        ((y.clone() + self.e.clone()) * y.clone() + self.f.clone()) * y.clone() + self.g.clone()
    }

    pub fn characteristic(&self) -> u32 {
        self.e.characteristic()
    }
}

/// Canonical generator of the cubic extension, or a reason it is not one.
#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalForm<T> {
    /// `X^3 - a`, `p != 3`.
    Pure(T),
    /// `X^3 - 3X - a`, `p != 3`.
    DepressedTrace(T),
    /// `X^3 + aX + a^2`, `p = 3`.
    Char3(T),
    /// `X^3 - a` in characteristic 3.
    InseparablePure(T),
    /// Linear factor `X - root` times `X^2 + b X + c`.
    Reducible { root: T, quadratic: (T, T) },
}

impl<T: Scalar> CanonicalForm<T> {
    pub fn param(&self) -> Option<&T> {
        match self {
            CanonicalForm::Pure(a)
            | CanonicalForm::DepressedTrace(a)
            | CanonicalForm::Char3(a)
            | CanonicalForm::InseparablePure(a) => Some(a),
            CanonicalForm::Reducible { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CanonicalForm::Pure(_) => "pure",
            CanonicalForm::DepressedTrace(_) => "depressed",
            CanonicalForm::Char3(_) => "char3",
            CanonicalForm::InseparablePure(_) => "inseparable",
            CanonicalForm::Reducible { .. } => "reducible",
        }
    }

    /// The monic cubic this form stands for.
    pub fn to_cubic(&self) -> Cubic<T> {
        match self {
            CanonicalForm::Pure(a) | CanonicalForm::InseparablePure(a) => {
                let z = a.zero_like();
                Cubic::new(z.clone(), z, -a.clone())
            }
            CanonicalForm::DepressedTrace(a) => {
                Cubic::new(a.zero_like(), a.from_int_like(-3), -a.clone())
            }
            CanonicalForm::Char3(a) => Cubic::new(a.zero_like(), a.clone(), a.clone() * a.clone()),
            CanonicalForm::Reducible { root, quadratic: (b, c) } => {
                // (X - r)(X^2 + bX + c)
                let r = root.clone();
                Cubic::new(b.clone() - r.clone(), c.clone() - r.clone() * b.clone(), -(r * c.clone()))
            }
        }
    }
}

/// `y -> (a y + b) / (c y + d)`; composition is the matrix product.
#[derive(Clone, Debug, PartialEq)]
pub struct FracLinear<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> FracLinear<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        FracLinear { a, b, c, d }
    }

    pub fn identity(one: &T) -> Self {
        let z = one.zero_like();
        FracLinear::new(one.clone(), z.clone(), z, one.clone())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// `None` at the pole.
    pub fn apply(&self, y: &T) -> Option<T> {
        let den = self.c.clone() * y.clone() + self.d.clone();
        if den.is_zero() {
            return None;
        }
        Some((self.a.clone() * y.clone() + self.b.clone()) / den)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&inner.a, &inner.b, &inner.c, &inner.d);
        FracLinear::new(
            a.clone() * e.clone() + b.clone() * g.clone(),
            a.clone() * f.clone() + b.clone() * h.clone(),
            c.clone() * e.clone() + d.clone() * g.clone(),
            c.clone() * f.clone() + d.clone() * h.clone(),
        )
    }

    pub fn invert(&self) -> Self {
        FracLinear::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    /// Numerator of `P(M(z))`, i.e. `sum p_i (a z + b)^i (c z + d)^(deg - i)`.
    pub fn pull_back(&self, p: &Poly<T>) -> Poly<T> {
        let zero = self.a.zero_like();
        let num = Poly::new(vec![self.b.clone(), self.a.clone()], zero.clone());
        let den = Poly::new(vec![self.d.clone(), self.c.clone()], zero.clone());
        let n = p.degree().unwrap_or(0);
        let mut acc = Poly::zero(zero);
        for (i, coef) in p.coeffs().iter().enumerate() {
            let term = &num.pow(i as u64) * &den.pow((n - i) as u64);
            acc = &acc + &term.scale(coef);
        }
        acc
    }
}

impl<T: Scalar> fmt::Display for FracLinear<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // scale so the denominator is monic
        let s = if self.c.is_zero() { self.d.inv() } else { self.c.inv() };
        let m = |v: &T, w: &T| Poly::new(vec![v.clone() * s.clone(), w.clone() * s.clone()], s.zero_like());
        let (num, den) = (m(&self.b, &self.a), m(&self.d, &self.c));
        let wrap = |p: &Poly<T>| {
            let t = p.fmt_var("z");
            if t.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^' || ch == '*') {
                t
            } else {
                format!("({t})")
            }
        };
        if den.is_one() {
            return write!(f, "{}", num.fmt_var("z"));
        }
        write!(f, "{}/{}", wrap(&num), wrap(&den))
    }
}

/// Canonical form plus the map sending a root of the canonical cubic to a
/// root of the input.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<T> {
    pub form: CanonicalForm<T>,
    pub map: FracLinear<T>,
}

impl<T: Scalar> Reduction<T> {
    /// Map from an input root to a canonical root.
    pub fn to_canonical(&self) -> FracLinear<T> {
        self.map.invert()
    }
}

fn reducible<T: Scalar>(c: &Cubic<T>, r: T) -> Reduction<T> {
    let b = c.e.clone() + r.clone();
    let cc = c.f.clone() + r.clone() * b.clone();
    let one = c.e.one_like();
    Reduction { form: CanonicalForm::Reducible { root: r, quadratic: (b, cc) }, map: FracLinear::identity(&one) }
}

/// Reduces `X^3 + eX^2 + fX + g` to a canonical generator.
pub fn reduce_cubic<T: Scalar>(cubic: &Cubic<T>) -> Reduction<T> {
    let (e, f, g) = (cubic.e.clone(), cubic.f.clone(), cubic.g.clone());
    let n = |k: i64| e.from_int_like(k);
    let one = n(1);
    if g.is_zero() {
        return reducible(cubic, e.zero_like());
    }
    if cubic.characteristic() == 3 {
        return reduce_char3(cubic);
    }
    if e.is_zero() && f == n(-3) {
        return Reduction { form: CanonicalForm::DepressedTrace(-g), map: FracLinear::identity(&one) };
    }
    let d = n(-27) * g.clone() * g.clone() - n(2) * f.clone().pow_u(3)
        + n(9) * e.clone() * f.clone() * g.clone();
    if d.is_zero() {
        return reducible(cubic, n(-3) * g / f);
    }
    let h = n(3) * e.clone() * g.clone() - f.clone() * f.clone();
    if h.is_zero() {
        let a = n(27) * g.clone().pow_u(3) / (f.clone().pow_u(3) - n(27) * g.clone() * g.clone());
        let map = FracLinear::new(n(3) * g.clone(), e.zero_like(), -f, n(3) * g);
        return Reduction { form: CanonicalForm::Pure(a), map };
    }
    let s = n(27) * g.clone() * g.clone() - n(9) * e.clone() * f.clone() * g.clone()
        + n(2) * f.clone().pow_u(3);
    let a = n(-2) - s.clone() * s / h.clone().pow_u(3);
    let map = FracLinear::new(
        n(-3) * g.clone() * h.clone(),
        n(3) * g.clone() * h.clone(),
        f.clone() * h,
        n(6) * e.clone() * f.clone() * g.clone() - f.pow_u(3) - n(27) * g.clone() * g,
    );
    Reduction { form: CanonicalForm::DepressedTrace(a), map }
}

fn reduce_char3<T: Scalar>(cubic: &Cubic<T>) -> Reduction<T> {
    let (e, f, g) = (cubic.e.clone(), cubic.f.clone(), cubic.g.clone());
    let one = e.one_like();
    if e.is_zero() {
        if f.is_zero() {
            return Reduction { form: CanonicalForm::InseparablePure(-g), map: FracLinear::identity(&one) };
        }
        let a = g.clone() * g.clone() / f.clone().pow_u(3);
        let map = FracLinear::new(f.clone() * f / g, e.zero_like(), e.zero_like(), one);
        return Reduction { form: CanonicalForm::Char3(a), map };
    }
    let k = -(f.clone() * f.clone() * e.clone() * e.clone()) + g * e.clone().pow_u(3) + f.clone().pow_u(3);
    if k.is_zero() {
        return reducible(cubic, f / e);
    }
    let a = k.clone() / e.clone().pow_u(6);
    let map = FracLinear::new(f * e.clone().pow_u(4), k, e.clone().pow_u(5), e.zero_like());
    Reduction { form: CanonicalForm::Char3(a), map }
}

/// For the Shanks cubic `X^3 + aX^2 - (a+3)X + 1`: the parameter `b` of the
/// equivalent `X^3 - 3X - b` and the map `y -> w` between their roots.
pub fn shanks_to_canonical<T: Scalar>(a: &T) -> Result<(T, FracLinear<T>), CanonError> {
    let n = |k: i64| a.from_int_like(k);
    let den = a.clone() * a.clone() + n(3) * a.clone() + n(9);
    if den.is_zero() {
        return Err(CanonError::DegenerateShanks);
    }
    let param = (n(2) * a.clone() * a.clone() + n(6) * a.clone() - n(9)) / den;
    let map = FracLinear::new(a.clone(), n(3), -(a.clone() + n(3)), n(3));
    Ok((param, map))
}

/// The Shanks cubic `X^3 + aX^2 - (a+3)X + 1`.
pub fn shanks_cubic<T: Scalar>(a: &T) -> Cubic<T> {
    Cubic::new(a.clone(), -(a.clone() + a.from_int_like(3)), a.one_like())
}

/// `(2A^2 + 2AB - B^2) / (A^2 + AB + B^2)`; `X^3 - 3X - a` is Galois (or
/// reducible) for every such `a`.
pub fn galois_param<T: Scalar>(a: &T, b: &T) -> Result<T, CanonError> {
    let n = |k: i64| a.from_int_like(k);
    let den = a.clone() * a.clone() + a.clone() * b.clone() + b.clone() * b.clone();
    if den.is_zero() {
        return Err(CanonError::DegenerateNorm);
    }
    Ok((n(2) * a.clone() * a.clone() + n(2) * a.clone() * b.clone() - b.clone() * b.clone()) / den)
}
