//! Factorization shape of cubics over a finite field `F_s`, decided from the
//! canonical parameter alone.

use std::fmt;

use crate::canon::{reduce_cubic, CanonicalForm, Cubic};
use crate::ffield::{quadratic_roots, solve_artin_schreier2, Field, FieldElem};
use crate::polyring::{self, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Irreducible,
    LinTimesQuad,
    ThreeDistinct,
    LinTimesSquare,
    Triple,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Irreducible => "irreducible",
            Shape::LinTimesQuad => "linear*quadratic",
            Shape::ThreeDistinct => "three-distinct",
            Shape::LinTimesSquare => "linear*square",
            Shape::Triple => "triple",
        })
    }
}

/// A factorization shape with its witness factors.
#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    Irreducible,
    /// `(X - root)(X^2 + bX + c)` with the quadratic irreducible.
    LinTimesQuad { root: FieldElem, quadratic: (FieldElem, FieldElem) },
    ThreeDistinct { roots: [FieldElem; 3] },
    /// `(X - simple)(X - double)^2`.
    LinTimesSquare { simple: FieldElem, double: FieldElem },
    Triple { root: FieldElem },
}

impl Decomposition {
    pub fn shape(&self) -> Shape {
        match self {
            Decomposition::Irreducible => Shape::Irreducible,
            Decomposition::LinTimesQuad { .. } => Shape::LinTimesQuad,
            Decomposition::ThreeDistinct { .. } => Shape::ThreeDistinct,
            Decomposition::LinTimesSquare { .. } => Shape::LinTimesSquare,
            Decomposition::Triple { .. } => Shape::Triple,
        }
    }

    /// Monic factors whose product is the decomposed cubic. Empty when irreducible.
    pub fn factors(&self) -> Vec<Poly<FieldElem>> {
        let lin = |r: &FieldElem| Poly::new(vec![-*r, r.field().one()], r.field().zero());
        match self {
            Decomposition::Irreducible => Vec::new(),
            Decomposition::LinTimesQuad { root, quadratic: (b, c) } => {
                vec![lin(root), Poly::new(vec![*c, *b, root.field().one()], root.field().zero())]
            }
            Decomposition::ThreeDistinct { roots } => roots.iter().map(lin).collect(),
            Decomposition::LinTimesSquare { simple, double } => {
                vec![lin(simple), lin(double), lin(double)]
            }
            Decomposition::Triple { root } => vec![lin(root); 3],
        }
    }

    pub fn roots(&self) -> Vec<FieldElem> {
        match self {
            Decomposition::Irreducible => Vec::new(),
            Decomposition::LinTimesQuad { root, .. } | Decomposition::Triple { root } => vec![*root],
            Decomposition::ThreeDistinct { roots } => roots.to_vec(),
            Decomposition::LinTimesSquare { simple, double } => vec![*simple, *double],
        }
    }
}

fn field_roots(c: &Cubic<FieldElem>) -> Vec<FieldElem> {
    polyring::roots(&c.to_poly())
}

/// Builds the decomposition of a cubic from one known root.
fn from_root(c: &Cubic<FieldElem>, r: FieldElem) -> Decomposition {
    let b = c.e + r;
    let cc = c.f + r * b;
    let qr = quadratic_roots(b, cc);
    match qr.as_slice() {
        [] => Decomposition::LinTimesQuad { root: r, quadratic: (b, cc) },
        [d] if *d == r => Decomposition::Triple { root: r },
        [d] => Decomposition::LinTimesSquare { simple: r, double: *d },
        [u, v] if *u == r => Decomposition::LinTimesSquare { simple: *v, double: r },
        [u, v] if *v == r => Decomposition::LinTimesSquare { simple: *u, double: r },
        [u, v] => {
            let mut roots = [r, *u, *v];
            roots.sort();
            Decomposition::ThreeDistinct { roots }
        }
        _ => unreachable!(),
    }
}

/// Decomposition of a cubic known to have a root; the witness comes from
/// root finding.
fn witness(c: &Cubic<FieldElem>) -> Decomposition {
    let r = field_roots(c);
    from_root(c, *r.first().expect("criterion promised a root"))
}

/// `X^3 - a`.
pub fn decompose_pure(a: FieldElem) -> Decomposition {
    let f = a.field();
    let s = f.order();
    if a.is_zero() {
        return Decomposition::Triple { root: a };
    }
    let c = Cubic::new(f.zero(), f.zero(), -a);
    match s % 3 {
        0 => Decomposition::Triple { root: a.cbrt().unwrap() },
        1 => {
            let r = a.cube_roots();
            if r.is_empty() {
                Decomposition::Irreducible
            } else {
                Decomposition::ThreeDistinct { roots: [r[0], r[1], r[2]] }
            }
        }
        _ => from_root(&c, a.cbrt().unwrap()),
    }
}

/// `Z^2 - aZ + 1` has a root `z`; the depressed cubic is irreducible exactly
/// when `z` is not a cube in the field generated by `z`.
fn quadratic_root_is_cube(a: FieldElem) -> bool {
    let f = a.field();
    let r = quadratic_roots(-a, f.one());
    if let Some(z) = r.first() {
        return z.is_cube();
    }
    let big = Field::new(f.p() as u64, 2 * f.degree()).expect("quadratic extension fits the bound");
    let emb = f.embedding_into(big).expect("degree divides");
    let r = quadratic_roots(-emb.apply(a), big.one());
    r.first().expect("roots exist in the quadratic extension").is_cube()
}

/// `X^3 - 3X - a`, `p != 3`.
pub fn decompose_depressed(a: FieldElem) -> Decomposition {
    let f = a.field();
    assert_ne!(f.p(), 3, "depressed trace form needs p != 3");
    let two = f.from_int(2);
    if a == two || a == -two {
        // X^3 - 3X -+ 2 = (X -+ 2)(X +- 1)^2
        let sign = if a == two { f.one() } else { -f.one() };
        return Decomposition::LinTimesSquare { simple: two * sign, double: -sign };
    }
    let c = Cubic::new(f.zero(), f.from_int(-3), -a);
    let galois = if f.p() == 2 {
        let inv2 = (a * a).inv();
        inv2.trace() == f.one().trace()
    } else {
        (f.from_int(-27) * (a * a - f.from_int(4))).is_square()
    };
    if !galois {
        return witness(&c);
    }
    if quadratic_root_is_cube(a) {
        witness(&c)
    } else {
        Decomposition::Irreducible
    }
}

/// `X^3 + aX + a^2`, `p = 3`.
pub fn decompose_char3(a: FieldElem) -> Decomposition {
    let f = a.field();
    assert_eq!(f.p(), 3, "this form lives in characteristic 3");
    if a.is_zero() {
        return Decomposition::Triple { root: a };
    }
    let c = Cubic::new(f.zero(), a, a * a);
    let Some(b) = (-a).sqrt() else {
        return witness(&c);
    };
    if b.trace().is_zero() {
        witness(&c)
    } else {
        Decomposition::Irreducible
    }
}

/// Decomposition of a canonical form over `F_s`.
pub fn decompose_form(form: &CanonicalForm<FieldElem>) -> Decomposition {
    match form {
        CanonicalForm::Pure(a) => decompose_pure(*a),
        CanonicalForm::DepressedTrace(a) => decompose_depressed(*a),
        CanonicalForm::Char3(a) => decompose_char3(*a),
        CanonicalForm::InseparablePure(a) => Decomposition::Triple { root: a.cbrt().unwrap() },
        CanonicalForm::Reducible { root, .. } => from_root(&form.to_cubic(), *root),
    }
}

/// Decomposition of any monic cubic: reduce, decide, and carry the witnesses
/// back through the root map.
pub fn decompose_any(c: &Cubic<FieldElem>) -> Decomposition {
    let red = reduce_cubic(c);
    let canon = decompose_form(&red.form);
    let back = |r: &FieldElem| red.map.apply(r).expect("canonical roots avoid the pole");
    match canon {
        Decomposition::Irreducible => Decomposition::Irreducible,
        Decomposition::LinTimesQuad { root, .. } => from_root(c, back(&root)),
        Decomposition::ThreeDistinct { roots } => {
            let mut r = [back(&roots[0]), back(&roots[1]), back(&roots[2])];
            r.sort();
            Decomposition::ThreeDistinct { roots: r }
        }
        Decomposition::LinTimesSquare { simple, double } => {
            Decomposition::LinTimesSquare { simple: back(&simple), double: back(&double) }
        }
        Decomposition::Triple { root } => Decomposition::Triple { root: back(&root) },
    }
}

/// Shape found by trying every element of the field.
pub fn brute_factor(c: &Cubic<FieldElem>) -> Decomposition {
    let f = c.e.field();
    let poly = c.to_poly();
    let mut roots: Vec<(FieldElem, usize)> = Vec::new();
    for x in f.elements() {
        let mut q = poly.clone();
        let lin = Poly::new(vec![-x, f.one()], f.zero());
        let mut k = 0;
        loop {
            let (d, r) = q.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            q = d;
            k += 1;
        }
        if k > 0 {
            roots.push((x, k));
        }
    }
    match roots.as_slice() {
        [] => Decomposition::Irreducible,
        [(r, 1)] => {
            let b = c.e + *r;
            Decomposition::LinTimesQuad { root: *r, quadratic: (b, c.f + *r * b) }
        }
        [(r, 3)] => Decomposition::Triple { root: *r },
        [(a, 1), (b, 2)] => Decomposition::LinTimesSquare { simple: *a, double: *b },
        [(a, 2), (b, 1)] => Decomposition::LinTimesSquare { simple: *b, double: *a },
        [(a, 1), (b, 1), (d, 1)] => Decomposition::ThreeDistinct { roots: [*a, *b, *d] },
        other => unreachable!("cubic with roots {other:?}"),
    }
}

/// Whether the cubic has a root in its coefficient field.
pub fn has_root(c: &Cubic<FieldElem>) -> bool {
    decompose_any(c).shape() != Shape::Irreducible
}

/// Artin-Schreier equation `Y^2 + Y = u` over `F_{2^m}`.
pub fn artin_schreier2(u: FieldElem) -> Option<FieldElem> {
    solve_artin_schreier2(u)
}
