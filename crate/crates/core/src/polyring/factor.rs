// Factorization over F_q: squarefree split, distinct degree, Cantor-Zassenhaus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::ffield::{Field, FieldElem};

type FPoly = Poly<FieldElem>;

const EDF_SEED: u64 = 0x00c0_ffee_5eed;

fn field_of(f: &FPoly) -> Field {
    f.zero_elem().field()
}

/// `a^(q^k) mod m` by repeated Frobenius.
fn frobenius_pow(a: &FPoly, k: usize, m: &FPoly) -> FPoly {
    let q = field_of(m).order();
    let mut r = a.rem(m);
    for _ in 0..k {
        r = r.powmod(q, m);
    }
    r
}

/// `f^(1/p)` for `f` with zero derivative.
fn pth_root(f: &FPoly) -> FPoly {
    let fld = field_of(f);
    let p = fld.p() as usize;
    let e = fld.order() / p as u64;
    let v = f.coeffs().iter().step_by(p).map(|c| c.pow(e)).collect();
    Poly::new(v, fld.zero())
}

/// Squarefree decomposition of a nonzero polynomial: pairs `(g, k)` with
/// `monic(f) = prod g^k`, each `g` squarefree and nonconstant.
pub fn squarefree(f: &FPoly) -> Vec<(FPoly, usize)> {
    assert!(!f.is_zero());
    let f = f.monic();
    if f.is_constant() {
        return Vec::new();
    }
    let p = field_of(&f).p() as usize;
    let d = f.derivative();
    if d.is_zero() {
        return squarefree(&pth_root(&f)).into_iter().map(|(g, k)| (g, k * p)).collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y);
        w = y;
    }
    if !c.is_constant() {
        out.extend(squarefree(&pth_root(&c)).into_iter().map(|(g, k)| (g, k * p)));
    }
    out
}

/// Distinct degree split of a monic squarefree polynomial: `(product of all
/// irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &FPoly) -> Vec<(FPoly, usize)> {
    let x = Poly::x(field_of(f).zero());
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d as i64 + 1) {
        d += 1;
        h = frobenius_pow(&h, 1, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg() as usize;
        out.push((rest, n));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles into its factors.
pub fn equal_degree(f: &FPoly, d: usize) -> Vec<FPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    edf_rec(&f.monic(), d, &mut rng, &mut out);
    out.sort_by(poly_order);
    out
}

fn edf_rec(f: &FPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FPoly>) {
    let n = f.deg() as usize;
    if n == d {
        out.push(f.clone());
        return;
    }
    let fld = field_of(f);
    let q = fld.order();
    loop {
        let a = Poly::new(
            (0..n).map(|_| fld.elem(rng.gen_range(0..q) as u32)).collect(),
            fld.zero(),
        );
        if a.is_constant() {
            continue;
        }
        let b = if fld.p() == 2 {
            // trace from F_{q^d} to F_2 of a
            let k = fld.degree() as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mulmod(&t, f);
                acc = &acc + &t;
            }
            acc
        } else {
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(q, f);
                norm = norm.mulmod(&t, f);
            }
            let e = norm.powmod((q - 1) / 2, f);
            &e - &Poly::one(fld.zero())
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n as i64 {
            let h = f.div_exact(&g);
            edf_rec(&g, d, rng, out);
            edf_rec(&h, d, rng, out);
            return;
        }
    }
}

/// Order on polynomials: by degree, then coefficients from the top down.
pub(crate) fn poly_order(a: &FPoly, b: &FPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Complete factorization: leading coefficient and sorted monic irreducible
/// factors with multiplicity.
pub fn factor(f: &FPoly) -> (FieldElem, Vec<(FPoly, usize)>) {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let mut out = Vec::new();
    for (g, k) in squarefree(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                out.push((irr, k));
            }
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    (f.lc(), out)
}

/// Distinct roots in the coefficient field, sorted by code.
pub fn roots(f: &FPoly) -> Vec<FieldElem> {
    if f.is_zero() {
        panic!("roots of the zero polynomial");
    }
    let fld = field_of(f);
    let f = f.monic();
    if f.deg() < 1 {
        return Vec::new();
    }
    let x = Poly::x(fld.zero());
    let g = (&frobenius_pow(&x, 1, &f) - &x).gcd(&f);
    if g.deg() < 1 {
        return Vec::new();
    }
    let mut r: Vec<FieldElem> = equal_degree(&g, 1).iter().map(|l| -l.coeff(0)).collect();
    r.sort();
    r
}

pub fn is_irreducible(f: &FPoly) -> bool {
    let n = f.deg();
    if n < 1 {
        return false;
    }
    let f = f.monic();
    let x = Poly::x(field_of(&f).zero());
    let n = n as usize;
    if frobenius_pow(&x, n, &f) != x.rem(&f) {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes
        .into_iter()
        .all(|l| (&frobenius_pow(&x, n / l, &f) - &x).gcd(&f).is_one())
}

/// The least monic irreducible of degree `m` over `prime` in code order: the
/// coefficients read as a base-`p` number, constant term least significant.
pub fn deterministic_irreducible(prime: Field, m: usize) -> FPoly {
    assert_eq!(prime.degree(), 1, "expects a prime field");
    let p = prime.p() as u64;
    let span = p.pow(m as u32);
    for low in 0..span {
        let mut c = low;
        let mut v = Vec::with_capacity(m + 1);
        for _ in 0..m {
            v.push(prime.elem((c % p) as u32));
            c /= p;
        }
        v.push(prime.one());
        let f = Poly::new(v, prime.zero());
        if is_irreducible(&f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
