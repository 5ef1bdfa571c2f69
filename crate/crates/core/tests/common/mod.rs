// Helpers and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cubic_ext::canon::Cubic;
use cubic_ext::ffcubic::Shape;
use cubic_ext::ffield::{Field, FieldElem};
use cubic_ext::polyring::{Poly, RatFunc, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type FPoly = Poly<FieldElem>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u64) -> Field {
    Field::from_spec(&q.to_string()).unwrap()
}

pub fn rand_elem(f: Field, r: &mut ChaCha8Rng) -> FieldElem {
    f.elem(r.gen_range(0..f.order()) as u32)
}

pub fn rand_nonzero(f: Field, r: &mut ChaCha8Rng) -> FieldElem {
    f.elem(r.gen_range(1..f.order()) as u32)
}

pub fn poly(f: Field, c: &[i64]) -> FPoly {
    Poly::new(c.iter().map(|&v| f.from_int(v)).collect(), f.zero())
}

/// Random polynomial of degree at most `d`.
pub fn rand_poly(f: Field, d: usize, r: &mut ChaCha8Rng) -> FPoly {
    Poly::new((0..=d).map(|_| rand_elem(f, r)).collect(), f.zero())
}

pub fn rand_monic(f: Field, d: usize, r: &mut ChaCha8Rng) -> FPoly {
    let mut c: Vec<FieldElem> = (0..d).map(|_| rand_elem(f, r)).collect();
    c.push(f.one());
    Poly::new(c, f.zero())
}

/// Random nonzero rational function with numerator and denominator degrees at most `h`.
pub fn rand_ratfunc(f: Field, h: usize, r: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let n = rand_poly(f, h, r);
        if n.is_zero() {
            continue;
        }
        let dd = r.gen_range(0..=h);
        return RatFunc::new(n, rand_monic(f, dd, r));
    }
}

pub fn is_squarefree(p: &FPoly) -> bool {
    p.deg() <= 0 || p.gcd(&p.derivative()).deg() == 0
}

/// Random squarefree monic polynomial of degree exactly `d`.
pub fn rand_squarefree(f: Field, d: usize, r: &mut ChaCha8Rng) -> FPoly {
    loop {
        let p = rand_monic(f, d, r);
        if is_squarefree(&p) {
            return p;
        }
    }
}

/// Genus of `u^3 = N/D`, `N, D` squarefree, coprime and not both constant,
/// over a field with cube roots of unity: every place with valuation prime
/// to 3 ramifies tamely with `d = 2`, and infinity ramifies iff
/// `3 ∤ deg N - deg D`.
pub fn kummer_genus_squarefree(n: &FPoly, d: &FPoly) -> i64 {
    let inf = ((n.deg() - d.deg()).rem_euclid(3) != 0) as i64;
    -2 + n.deg() + d.deg() + inf
}

/// Genus of `z^p - z = b` over `F_q(x)` when every pole order `m_P` of `b` is
/// prime to `p`: `g = (p-1)/2 (-2 + sum (m_P + 1) deg P)`.
pub fn artin_schreier_genus(p: u32, poles: &[(i64, usize)]) -> i64 {
    let s: i64 = poles.iter().map(|&(m, deg)| (m + 1) * deg as i64).sum();
    (p as i64 - 1) / 2 * (s - 2)
}

/// Whether `a1 = c^3 a2^j` for some `c` and `j ∈ {1,2}`, by enumeration.
pub fn brute_cube_class_equal(a1: FieldElem, a2: FieldElem) -> bool {
    let f = a1.field();
    f.elements().any(|c| {
        let c3 = c * c * c;
        c3 * a2 == a1 || c3 * a2 * a2 == a1
    })
}

/// Polynomials in `y` and `c` over `F_q(a)` reduced modulo `y^3 - 3y - a`
/// and `c^2 + ac + 1`.
#[derive(Clone, Debug)]
pub struct YC {
    pub a: RatFunc,
    pub terms: BTreeMap<(usize, usize), RatFunc>,
}

impl YC {
    pub fn constant(a: &RatFunc, v: RatFunc) -> YC {
        let mut t = BTreeMap::new();
        t.insert((0, 0), v);
        YC { a: a.clone(), terms: t }.cleaned()
    }
    pub fn y(a: &RatFunc) -> YC {
        let mut t = BTreeMap::new();
        t.insert((1, 0), RatFunc::one(a.base_field()));
        YC { a: a.clone(), terms: t }
    }
    pub fn c(a: &RatFunc) -> YC {
        let mut t = BTreeMap::new();
        t.insert((0, 1), RatFunc::one(a.base_field()));
        YC { a: a.clone(), terms: t }
    }

    fn cleaned(mut self) -> YC {
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    fn add_term(map: &mut BTreeMap<(usize, usize), RatFunc>, k: (usize, usize), v: RatFunc) {
        let e = map.entry(k).or_insert_with(|| RatFunc::zero(v.base_field()));
        *e = e.clone() + v;
    }

    /// Rewrites `y^3 = 3y + a` and `c^2 = -ac - 1` until all exponents are small.
    fn reduced(self) -> YC {
        let a = self.a.clone();
        let three = RatFunc::constant(a.base_field().from_int(3));
        let mut todo: Vec<((usize, usize), RatFunc)> = self.terms.into_iter().collect();
        let mut out = BTreeMap::new();
        while let Some(((i, j), v)) = todo.pop() {
            if i >= 3 {
                todo.push(((i - 2, j), v.clone() * three.clone()));
                todo.push(((i - 3, j), v * a.clone()));
            } else if j >= 2 {
                todo.push(((i, j - 1), -(v.clone() * a.clone())));
                todo.push(((i, j - 2), -v));
            } else {
                YC::add_term(&mut out, (i, j), v);
            }
        }
        YC { a, terms: out }.cleaned()
    }

    pub fn add(&self, o: &YC) -> YC {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            YC::add_term(&mut t, *k, v.clone());
        }
        YC { a: self.a.clone(), terms: t }.cleaned()
    }

    pub fn neg(&self) -> YC {
        let t = self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect();
        YC { a: self.a.clone(), terms: t }
    }

    pub fn mul(&self, o: &YC) -> YC {
        let mut t = BTreeMap::new();
        for ((i, j), v) in &self.terms {
            for ((k, l), w) in &o.terms {
                YC::add_term(&mut t, (i + k, j + l), v.clone() * w.clone());
            }
        }
        YC { a: self.a.clone(), terms: t }.reduced()
    }

    pub fn pow(&self, n: u32) -> YC {
        let mut acc = YC::constant(&self.a, RatFunc::one(self.a.base_field()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Multiplicity of `r` as a root of the monic cubic, by repeated synthetic division.
fn multiplicity(c: &Cubic<FieldElem>, r: FieldElem) -> usize {
    let mut coeffs = vec![r.field().one(), c.e, c.f, c.g];
    let mut m = 0;
    while coeffs.len() > 1 {
        let mut acc = r.field().zero();
        let mut quotient = Vec::with_capacity(coeffs.len() - 1);
        for k in &coeffs {
            acc = acc * r + *k;
            quotient.push(acc);
        }
        if !quotient.pop().unwrap().is_zero() {
            break;
        }
        m += 1;
        coeffs = quotient;
    }
    m
}

/// Factorization shape and distinct roots of a monic cubic over a finite
/// field, by evaluation at every element.
pub fn oracle_shape(c: &Cubic<FieldElem>) -> (Shape, Vec<FieldElem>) {
    let f = c.e.field();
    let roots: Vec<(FieldElem, usize)> = f
        .elements()
        .filter(|&y| ((y + c.e) * y + c.f) * y + c.g == f.zero())
        .map(|y| (y, multiplicity(c, y)))
        .collect();
    let mut mults: Vec<usize> = roots.iter().map(|r| r.1).collect();
    mults.sort();
    let shape = match mults.as_slice() {
        [] => Shape::Irreducible,
        [1] => Shape::LinTimesQuad,
        [1, 1, 1] => Shape::ThreeDistinct,
        [1, 2] => Shape::LinTimesSquare,
        [3] => Shape::Triple,
        other => panic!("impossible multiplicities {other:?}"),
    };
    (shape, roots.into_iter().map(|r| r.0).collect())
}
