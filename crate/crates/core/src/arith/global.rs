// Global tests in F_q(x): squares, cubes, Artin-Schreier equations, roots of cubics.

use super::local::as_local_reduce;
use super::ArithError;
use crate::canon::Cubic;
use crate::ffcubic;
use crate::ffield::{solve_artin_schreier2, FieldElem};
use crate::places::{divisor_of, finite_places, Place};
use crate::polyring::{self, Poly, RatFunc, Scalar};

type FPoly = Poly<FieldElem>;

/// Operations the isomorphism and Galois tests need from a base field.
pub trait BaseField: Scalar {
    fn has_cube_roots_of_unity(&self) -> bool;
    fn square_root(&self) -> Option<Self>;
    fn cube_root(&self) -> Option<Self>;
    /// A solution of `Y^2 + Y = self` (characteristic 2).
    fn artin_schreier2(&self) -> Option<Self>;
    fn cubic_root(c: &Cubic<Self>) -> Result<Option<Self>, ArithError>;
}

impl BaseField for FieldElem {
    fn has_cube_roots_of_unity(&self) -> bool {
        self.field().order() % 3 == 1
    }
    fn square_root(&self) -> Option<Self> {
        self.sqrt()
    }
    fn cube_root(&self) -> Option<Self> {
        self.cbrt()
    }
    fn artin_schreier2(&self) -> Option<Self> {
        solve_artin_schreier2(*self)
    }
    fn cubic_root(c: &Cubic<Self>) -> Result<Option<Self>, ArithError> {
        Ok(ffcubic::decompose_any(c).roots().first().copied())
    }
}

impl BaseField for RatFunc {
    fn has_cube_roots_of_unity(&self) -> bool {
        self.base_field().order() % 3 == 1
    }
    fn square_root(&self) -> Option<Self> {
        global_square_root(self)
    }
    fn cube_root(&self) -> Option<Self> {
        global_cube_root(self)
    }
    fn artin_schreier2(&self) -> Option<Self> {
        as_global_solve(self).ok().flatten()
    }
    fn cubic_root(c: &Cubic<Self>) -> Result<Option<Self>, ArithError> {
        has_rational_root(c)
    }
}

fn kth_root(a: &RatFunc, k: usize, lc_root: impl Fn(FieldElem) -> Option<FieldElem>) -> Option<RatFunc> {
    if a.is_zero() {
        return Some(a.clone());
    }
    let base = a.base_field();
    let c = lc_root(a.num().lc())?;
    let mut parts = [Poly::one(base.zero()), Poly::one(base.zero())];
    for (i, poly) in [a.num(), a.den()].into_iter().enumerate() {
        if poly.is_constant() {
            continue;
        }
        for (g, e) in polyring::factor(poly).1 {
            if e % k != 0 {
                return None;
            }
            parts[i] = &parts[i] * &g.pow((e / k) as u64);
        }
    }
    let [n, d] = parts;
    Some(RatFunc::new(n.scale(&c), d))
}

/// Square root in `F_q(x)`, if `a` is a square.
pub fn global_square_root(a: &RatFunc) -> Option<RatFunc> {
    kth_root(a, 2, |c| c.sqrt())
}

/// Cube root in `F_q(x)`, if `a` is a cube.
pub fn global_cube_root(a: &RatFunc) -> Option<RatFunc> {
    kth_root(a, 3, |c| c.cbrt())
}

/// Solves `d^2 + d = u` in `F_q(x)`, `q` even, by removing the even pole
/// orders of `u` place by place. `Ok(None)` when there is no solution.
pub fn as_global_solve(u: &RatFunc) -> Result<Option<RatFunc>, ArithError> {
    let base = u.base_field();
    assert_eq!(base.p(), 2, "Artin-Schreier equation of degree 2 needs p = 2");
    if u.is_zero() {
        return Ok(Some(u.clone()));
    }
    let poles: Vec<Place> =
        divisor_of(u)?.into_iter().filter(|(_, v)| *v < 0).map(|(p, _)| p).collect();
    let mut u = u.clone();
    let mut acc = RatFunc::zero(base);
    for p in poles {
        let (reduced, w) = as_local_reduce(&u, &p)?;
        if p.valuation(&reduced).is_some_and(|v| v < 0) {
            return Ok(None);
        }
        u = reduced;
        acc = acc + w;
    }
    let Some(c) = u.as_constant() else {
        unreachable!("a function without poles is constant");
    };
    Ok(solve_artin_schreier2(c).map(|d0| acc + RatFunc::constant(d0)))
}

const ROOT_SEARCH_PLACES: usize = 400;
const ROOT_SEARCH_COMBOS: u64 = 200_000;

/// A root in `F_q(x)` of a monic cubic over `F_q(x)`, if there is one.
///
/// With `D` the lcm of the denominators, `W = D y` is a root of a monic cubic
/// over `F_q[x]`, hence a polynomial of bounded degree. Its residues at a few
/// places are roots of the reduced cubic; the candidates are rebuilt by CRT.
pub fn has_rational_root(c: &Cubic<RatFunc>) -> Result<Option<RatFunc>, ArithError> {
    let base = c.e.base_field();
    let lcm = |a: &FPoly, b: &FPoly| (a * b).div_exact(&a.gcd(b));
    let d = lcm(&lcm(c.e.den(), c.f.den()), c.g.den());
    let dr = RatFunc::from_poly(d.clone());
    let to_poly = |r: RatFunc| {
        debug_assert!(r.is_polynomial());
        r.num().clone()
    };
    let c2 = to_poly(c.e.clone() * dr.clone());
    let c1 = to_poly(c.f.clone() * dr.clone() * dr.clone());
    let c0 = to_poly(c.g.clone() * dr.clone() * dr.clone() * dr.clone());
    if c0.is_zero() {
        return Ok(Some(RatFunc::zero(base)));
    }
    let bound = [c2.deg(), c1.deg() / 2, c0.deg() / 3].into_iter().max().unwrap().max(0) as usize;
    let is_root = |w: &FPoly| {
        let v = &(&(&(w + &c2) * w) + &c1) * w;
        (&v + &c0).is_zero()
    };

    let mut single: Vec<(Place, Vec<FieldElem>)> = Vec::new();
    let mut multi: Vec<(Place, Vec<FieldElem>)> = Vec::new();
    let mut single_deg = 0;
    for p in finite_places(base).take(ROOT_SEARCH_PLACES) {
        let Ok(res) = p.residue() else { break };
        let red = Cubic::new(res.eval_poly(&c2), res.eval_poly(&c1), res.eval_poly(&c0));
        let roots = polyring::roots(&red.to_poly());
        if roots.is_empty() {
            return Ok(None);
        }
        if roots.len() == 1 {
            single_deg += p.degree();
            single.push((p, roots));
            if single_deg > bound {
                break;
            }
        } else {
            multi.push((p, roots));
        }
    }
    let mut chosen = single;
    let mut total: usize = chosen.iter().map(|(p, _)| p.degree()).sum();
    multi.sort_by_key(|(p, r)| (r.len(), std::cmp::Reverse(p.degree())));
    let mut combos: u64 = 1;
    for item in multi {
        if total > bound {
            break;
        }
        total += item.0.degree();
        combos = combos.saturating_mul(item.1.len() as u64);
        chosen.push(item);
    }
    if total <= bound || combos > ROOT_SEARCH_COMBOS {
        return Err(ArithError::SearchTooLarge(combos));
    }

    // CRT data: modulus before each level and its inverse modulo that place
    let one = Poly::one(base.zero());
    let mut moduli = Vec::with_capacity(chosen.len());
    let mut m = one.clone();
    for (p, _) in &chosen {
        let pi = p.carrier().expect("finite place");
        let inv = m.inv_mod(pi).expect("distinct places are coprime");
        moduli.push((m.clone(), inv));
        m = &m * pi;
    }
    let lifts: Vec<Vec<FPoly>> = chosen
        .iter()
        .map(|(p, roots)| roots.iter().map(|r| p.lift(*r)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;

    let mut stack: Vec<(usize, FPoly)> = vec![(0, Poly::zero(base.zero()))];
    while let Some((level, w)) = stack.pop() {
        if level == chosen.len() {
            if w.deg() <= bound as i64 && is_root(&w) {
                return Ok(Some(RatFunc::new(w, d)));
            }
            continue;
        }
        let pi = chosen[level].0.carrier().unwrap();
        let (mlev, inv) = &moduli[level];
        for r in &lifts[level] {
            let t = (&(r - &w) * inv).rem(pi);
            stack.push((level + 1, &w + &(mlev * &t)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    fn rf(f: Field, num: &[i64], den: &[i64]) -> RatFunc {
        let p = |c: &[i64]| Poly::new(c.iter().map(|&x| f.from_int(x)).collect(), f.zero());
        RatFunc::new(p(num), p(den))
    }

    #[test]
    fn square_and_cube_roots() {
        let f = Field::new(7, 1).unwrap();
        let a = rf(f, &[1, 1], &[0, 1]);
        let sq = a.clone() * a.clone() * RatFunc::constant(f.from_int(2));
        assert_eq!(global_square_root(&sq).map(|r| r.clone() * r), Some(sq.clone()));
        assert!(global_square_root(&(sq.clone() * RatFunc::constant(f.from_int(3)))).is_none());
        let cu = a.clone() * a.clone() * a.clone();
        assert_eq!(global_cube_root(&cu).map(|r| r.clone() * r.clone() * r), Some(cu));
        assert!(global_cube_root(&a).is_none());
    }

    #[test]
    fn artin_schreier_global() {
        let f = Field::new(2, 1).unwrap();
        let x = RatFunc::x(f);
        let w = (x.clone() * x.clone() + RatFunc::one(f)) / (x.clone() + RatFunc::one(f)).pow_i(3);
        let u = w.clone() * w.clone() + w.clone();
        let d = as_global_solve(&u).unwrap().unwrap();
        assert_eq!(d.clone() * d.clone() + d, u);
        assert_eq!(as_global_solve(&x).unwrap(), None);
        assert_eq!(as_global_solve(&RatFunc::one(f)).unwrap(), None);
    }

    #[test]
    fn rational_roots_found() {
        for q in [2u64, 3, 5, 7] {
            let f = Field::from_spec(&q.to_string()).unwrap();
            let x = RatFunc::x(f);
            let r = (x.clone() * x.clone() + RatFunc::one(f)) / (x.clone() + RatFunc::constant(f.from_int(2)));
            let s = x.clone().pow_i(3) + RatFunc::one(f);
            let t = x.clone();
            // (X - r)(X - s)(X - t)
            let e = -(r.clone() + s.clone() + t.clone());
            let ff = r.clone() * s.clone() + r.clone() * t.clone() + s.clone() * t.clone();
            let g = -(r.clone() * s.clone() * t.clone());
            let c = Cubic::new(e, ff, g);
            let root = has_rational_root(&c).unwrap().unwrap();
            assert!(c.eval(&root).is_zero());
        }
        let f5 = Field::new(5, 1).unwrap();
        let x = RatFunc::x(f5);
        let c = Cubic::new(RatFunc::zero(f5), RatFunc::zero(f5), -x);
        assert_eq!(has_rational_root(&c).unwrap(), None);
    }
}
