//! Places of `F_q(x)`: valuations, residue fields, reduction and lifting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::ffield::{Embedding, Field, FieldElem, FieldError, DEFAULT_MAX_ORDER};
use crate::polyring::{self, invert_matrix_mod_p, Poly, RatFunc};

type FPoly = Poly<FieldElem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaceError {
    #[error("not a monic irreducible polynomial")]
    NotIrreducible,
    #[error("function has a pole at the place")]
    Pole,
    #[error("valuation of zero")]
    ZeroFunction,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("too many places to enumerate ({0} candidates)")]
    TooMany(u64),
}

/// Residue field `k(P) = F_{q^d}` with the image of `F_q` and of `x`.
pub struct ResidueData {
    field: Field,
    embed: Embedding,
    root: FieldElem,
    // inverse of the map (c_ij) -> sum c_ij * t^j * root^i, over F_p
    lift_inv: Vec<Vec<u32>>,
    d: usize,
}

impl ResidueData {
    pub fn field(&self) -> Field {
        self.field
    }
    /// Image of a constant.
    pub fn embed(&self, c: FieldElem) -> FieldElem {
        self.embed.apply(c)
    }
    /// Image of `x`.
    pub fn root(&self) -> FieldElem {
        self.root
    }
    pub fn eval_poly(&self, f: &FPoly) -> FieldElem {
        let mut acc = self.field.zero();
        for c in f.coeffs().iter().rev() {
            acc = acc * self.root + self.embed(*c);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    /// A monic irreducible polynomial in `x`.
    Finite(FPoly),
    Infinite,
}

/// A place of `F_q(x)`. Equality and order ignore the cached residue data.
#[derive(Clone)]
pub struct Place {
    kind: PlaceKind,
    base: Field,
    residue: Arc<OnceLock<Result<Arc<ResidueData>, PlaceError>>>,
}

impl PartialEq for Place {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.kind == o.kind
    }
}
impl Eq for Place {}
impl Hash for Place {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state)
    }
}
impl PartialOrd for Place {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Place {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.kind, &o.kind) {
            (PlaceKind::Infinite, PlaceKind::Infinite) => Ordering::Equal,
            (PlaceKind::Infinite, _) => Ordering::Less,
            (_, PlaceKind::Infinite) => Ordering::Greater,
            (PlaceKind::Finite(a), PlaceKind::Finite(b)) => polyring_order(a, b),
        }
    }
}

fn polyring_order(a: &FPoly, b: &FPoly) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Infinite => write!(f, "infinity"),
            PlaceKind::Finite(p) => write!(f, "{}", p.fmt_var("x")),
        }
    }
}
impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Place {
    pub fn infinity(base: Field) -> Place {
        Place { kind: PlaceKind::Infinite, base, residue: Arc::default() }
    }

    /// The place of a monic irreducible polynomial.
    pub fn finite(pi: FPoly) -> Result<Place, PlaceError> {
        if !pi.is_monic() || !polyring::is_irreducible(&pi) {
            return Err(PlaceError::NotIrreducible);
        }
        Ok(Place::finite_unchecked(pi))
    }

    pub(crate) fn finite_unchecked(pi: FPoly) -> Place {
        let base = pi.zero_elem().field();
        Place { kind: PlaceKind::Finite(pi), base, residue: Arc::default() }
    }

    /// The place `x - c`.
    pub fn linear(c: FieldElem) -> Place {
        let f = c.field();
        Place::finite_unchecked(Poly::new(vec![-c, f.one()], f.zero()))
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }
    pub fn base(&self) -> Field {
        self.base
    }
    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinite)
    }
    pub fn carrier(&self) -> Option<&FPoly> {
        match &self.kind {
            PlaceKind::Finite(p) => Some(p),
            PlaceKind::Infinite => None,
        }
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite(p) => p.deg() as usize,
            PlaceKind::Infinite => 1,
        }
    }

    /// `|k(P)| = q^deg`, if it fits in a `u64`.
    pub fn residue_order(&self) -> u64 {
        self.base.order().pow(self.degree() as u32)
    }

    pub fn uniformizer(&self) -> RatFunc {
        match &self.kind {
            PlaceKind::Finite(p) => RatFunc::from_poly(p.clone()),
            PlaceKind::Infinite => RatFunc::one(self.base) / RatFunc::x(self.base),
        }
    }

    /// `pi^n` for integer `n`.
    pub fn uniformizer_pow(&self, n: i64) -> RatFunc {
        self.uniformizer().pow_i(n)
    }

    pub fn residue(&self) -> Result<Arc<ResidueData>, PlaceError> {
        self.residue.get_or_init(|| build_residue(self).map(Arc::new)).clone()
    }

    /// Valuation; `None` for the zero function.
    pub fn valuation(&self, f: &RatFunc) -> Option<i64> {
        if f.num().is_zero() {
            return None;
        }
        Some(match &self.kind {
            PlaceKind::Infinite => f.den().deg() - f.num().deg(),
            PlaceKind::Finite(p) => poly_valuation(f.num(), p) - poly_valuation(f.den(), p),
        })
    }

    /// Residue class of `f` at `P`; fails at a pole.
    pub fn reduce(&self, f: &RatFunc) -> Result<FieldElem, PlaceError> {
        let res = self.residue()?;
        let Some(v) = self.valuation(f) else {
            return Ok(res.field.zero());
        };
        if v < 0 {
            return Err(PlaceError::Pole);
        }
        if v > 0 {
            return Ok(res.field.zero());
        }
        match &self.kind {
            PlaceKind::Infinite => {
                Ok(res.embed(f.num().lc()) / res.embed(f.den().lc()))
            }
            PlaceKind::Finite(_) => Ok(res.eval_poly(f.num()) / res.eval_poly(f.den())),
        }
    }

    /// Residue of `f * pi^(-v_P(f))`, the leading coefficient of `f` at `P`.
    pub fn unit_residue(&self, f: &RatFunc) -> Result<FieldElem, PlaceError> {
        let v = self.valuation(f).ok_or(PlaceError::ZeroFunction)?;
        self.reduce(&(f.clone() * self.uniformizer_pow(-v)))
    }

    /// The polynomial of degree `< deg P` whose residue is `r`.
    pub fn lift(&self, r: FieldElem) -> Result<FPoly, PlaceError> {
        let res = self.residue()?;
        assert_eq!(r.field(), res.field, "lift of a foreign residue");
        let m = self.base.degree() as usize;
        let digits = r.digits();
        let p = self.base.p() as u64;
        let coords: Vec<u32> = res
            .lift_inv
            .iter()
            .map(|row| {
                (row.iter().zip(&digits).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p)
                    as u32
            })
            .collect();
        let coeffs = (0..res.d)
            .map(|i| self.base.from_digits(&coords[i * m..(i + 1) * m]))
            .collect();
        Ok(Poly::new(coeffs, self.base.zero()))
    }

    /// Lift of `r` as an element of `F_q(x)`; at infinity this is a constant.
    pub fn lift_ratfunc(&self, r: FieldElem) -> Result<RatFunc, PlaceError> {
        Ok(RatFunc::from_poly(self.lift(r)?))
    }
}

fn poly_valuation(f: &FPoly, p: &FPoly) -> i64 {
    let mut v = 0;
    let mut g = f.clone();
    loop {
        let (q, r) = g.divrem(p);
        if !r.is_zero() {
            return v;
        }
        g = q;
        v += 1;
    }
}

fn build_residue(place: &Place) -> Result<ResidueData, PlaceError> {
    let base = place.base;
    let d = place.degree();
    let m = base.degree();
    let field = Field::new(base.p() as u64, m * d as u32)?;
    let embed = base.embedding_into(field)?;
    let root = match &place.kind {
        PlaceKind::Infinite => field.zero(),
        PlaceKind::Finite(pi) => {
            let lifted = pi.map_coeffs(|c| embed.apply(*c));
            *polyring::roots(&lifted).first().ok_or(PlaceError::NotIrreducible)?
        }
    };
    // column (i, j) is the image of t^j x^i
    let n = m as usize * d;
    let mut cols = Vec::with_capacity(n);
    let mut xi = field.one();
    for _ in 0..d {
        let mut tj = base.one();
        for _ in 0..m {
            cols.push((embed.apply(tj) * xi).digits());
            tj = tj * base.gen();
        }
        xi = xi * root;
    }
    let rows: Vec<Vec<u32>> = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let lift_inv = invert_matrix_mod_p(&rows, base.p()).ok_or(PlaceError::NotIrreducible)?;
    Ok(ResidueData { field, embed, root, lift_inv, d })
}

/// Divisor of a nonzero function: places with nonzero valuation.
pub fn divisor_of(f: &RatFunc) -> Result<BTreeMap<Place, i64>, PlaceError> {
    if f.num().is_zero() {
        return Err(PlaceError::ZeroFunction);
    }
    let mut out = BTreeMap::new();
    let base = f.base_field();
    for (poly, sign) in [(f.num(), 1i64), (f.den(), -1)] {
        if poly.is_constant() {
            continue;
        }
        for (g, k) in polyring::factor(poly).1 {
            *out.entry(Place::finite_unchecked(g)).or_insert(0) += sign * k as i64;
        }
    }
    let vinf = f.den().deg() - f.num().deg();
    if vinf != 0 {
        out.insert(Place::infinity(base), vinf);
    }
    Ok(out)
}

/// Infinity followed by every finite place of degree `1..=max_deg`, sorted.
pub fn places_up_to(base: Field, max_deg: usize) -> Result<Vec<Place>, PlaceError> {
    let q = base.order();
    let total: u64 = (1..=max_deg as u32)
        .try_fold(0u64, |acc, k| q.checked_pow(k).map(|v| acc + v))
        .unwrap_or(u64::MAX);
    if total > DEFAULT_MAX_ORDER {
        return Err(PlaceError::TooMany(total));
    }
    let mut out = vec![Place::infinity(base)];
    out.extend(finite_places(base).take_while(|p| p.degree() <= max_deg));
    Ok(out)
}

/// Finite places by degree, then code order, without an upper limit.
pub fn finite_places(base: Field) -> impl Iterator<Item = Place> {
    let q = base.order();
    (1usize..).flat_map(move |k| {
        let span = q.checked_pow(k as u32).unwrap_or(u64::MAX);
        (0..span).filter_map(move |low| {
            let mut c = low;
            let mut v = Vec::with_capacity(k + 1);
            for _ in 0..k {
                v.push(base.elem((c % q) as u32));
                c /= q;
            }
            v.push(base.one());
            let pi = Poly::new(v, base.zero());
            (k == 1 || polyring::is_irreducible(&pi)).then(|| Place::finite_unchecked(pi))
        })
    })
}
