//! Finite fields `F_{p^m}` with a deterministic defining polynomial.
//!
//! An element is stored as an integer code: the base-`p` digits of the code are
//! the coefficients of its representative polynomial in `t`, constant term
//! first. Fields are interned per `(p, m)` so that elements are `Copy`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::polyring::{self, Poly, Scalar};

/// Largest field order accepted unless a caller asks for more.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;
const HARD_MAX_ORDER: u64 = 1 << 31;
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the bound {bound}")]
    SizeExceeded { p: u64, m: u32, bound: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("code {code} out of range for a field of order {order}")]
    BadCode { code: u64, order: u64 },
    #[error("F_{small} does not embed in F_{large}")]
    NoEmbedding { small: u64, large: u64 },
}

struct Tables {
    log: Vec<u32>,
    // exp[i] = g^i for 0 <= i < 2(s-1)
    exp: Vec<u32>,
}

pub struct FieldData {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// Handle to an interned field. Cheap to copy, compared by identity.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.m).hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.m)
        }
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldData>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldData {
    fn digits(&self, mut c: u32) -> [u32; 32] {
        let mut d = [0u32; 32];
        for slot in d.iter_mut().take(self.m as usize) {
            *slot = c % self.p;
            c /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().take(self.m as usize).rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u32; 32];
        for i in 0..self.m as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.encode(&out)
    }

    fn neg(&self, a: u32) -> u32 {
        if a == 0 || self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return self.p - a;
        }
        let da = self.digits(a);
        let mut out = [0u32; 32];
        for i in 0..self.m as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.encode(&out)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.m == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let m = self.m as usize;
        if self.p == 2 {
            let mut prod: u64 = 0;
            for i in 0..m {
                if (b >> i) & 1 == 1 {
                    prod ^= (a as u64) << i;
                }
            }
            let modbits: u64 = self
                .modulus
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | ((c as u64) << i));
            for i in (m..2 * m - 1).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= modbits << (i - m);
                }
            }
            return prod as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 64];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let sub = c * self.modulus[j] as u64 % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
            prod[i] = 0;
        }
        let out: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
        self.encode(&out)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let n = (self.order - 1) as u64;
            let k = (t.log[a as usize] as u64 * (e % n)) % n;
            return t.exp[k as usize];
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            return t.exp[((n - t.log[a as usize]) % n) as usize];
        }
        self.pow(a, self.order as u64 - 2)
    }

    fn build_tables(&mut self) {
        let n = self.order as u64 - 1;
        if n == 0 {
            return;
        }
        let factors = prime_factors(n);
        let slow_pow = |fd: &FieldData, a: u32, mut e: u64| {
            let mut base = a;
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = fd.mul_slow(acc, base);
                }
                base = fd.mul_slow(base, base);
                e >>= 1;
            }
            acc
        };
        let g = (1..self.order)
            .find(|&g| factors.iter().all(|&l| slow_pow(self, g, n / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u32;
        for i in 0..n as usize {
            exp[i] = x;
            exp[i + n as usize] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        self.tables = Some(Tables { log, exp });
    }
}

impl Field {
    /// The field with `p^m` elements, using [`DEFAULT_MAX_ORDER`] as size bound.
    pub fn new(p: u64, m: u32) -> Result<Field, FieldError> {
        Field::with_bound(p, m, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(p: u64, m: u32, bound: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let bound = bound.min(HARD_MAX_ORDER);
        let order = p
            .checked_pow(m)
            .filter(|&o| o <= bound)
            .ok_or(FieldError::SizeExceeded { p, m, bound })?;
        let key = (p as u32, m);
        if let Some(f) = registry().lock().unwrap().get(&key) {
            return Ok(Field(f));
        }
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let prime = Field::new(p, 1)?;
            polyring::deterministic_irreducible(prime, m as usize)
                .coeffs()
                .iter()
                .map(|c| c.code())
                .collect()
        };
        let mut data = FieldData { p: p as u32, m, order: order as u32, modulus, tables: None };
        if order <= TABLE_LIMIT {
            data.build_tables();
        }
        let mut reg = registry().lock().unwrap();
        let f = *reg.entry(key).or_insert_with(|| Box::leak(Box::new(data)));
        Ok(Field(f))
    }

    /// Parses `"7"`, `"9"` (a prime power) or `"3^2"`.
    pub fn from_spec(spec: &str) -> Result<Field, FieldError> {
        let spec = spec.trim();
        if let Some((p, m)) = spec.split_once('^') {
            let p: u64 = p.trim().parse().map_err(|_| FieldError::NotPrime(0))?;
            let m: u32 = m.trim().parse().map_err(|_| FieldError::ZeroDegree)?;
            return Field::new(p, m);
        }
        let q: u64 = spec.parse().map_err(|_| FieldError::NotPrime(0))?;
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Field::new(p, m)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.m
    }
    pub fn order(&self) -> u64 {
        self.0.order as u64
    }
    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus_codes(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn modulus(&self) -> Poly<FieldElem> {
        let prime = self.prime_field();
        Poly::new(self.0.modulus.iter().map(|&c| prime.elem(c)).collect(), prime.zero())
    }

    pub fn prime_field(&self) -> Field {
        Field::new(self.0.p as u64, 1).expect("prime field always exists")
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { field: *self, code: 0 }
    }
    pub fn one(&self) -> FieldElem {
        FieldElem { field: *self, code: 1 }
    }
    /// The class of `t`, a root of the defining polynomial.
    pub fn gen(&self) -> FieldElem {
        if self.0.m == 1 {
            self.zero()
        } else {
            FieldElem { field: *self, code: self.0.p }
        }
    }

    /// Element with the given code. Panics when out of range.
    pub fn elem(&self, code: u32) -> FieldElem {
        assert!(code < self.0.order, "code {code} out of range for {self:?}");
        FieldElem { field: *self, code }
    }

    pub fn try_elem(&self, code: u64) -> Result<FieldElem, FieldError> {
        if code >= self.order() {
            return Err(FieldError::BadCode { code, order: self.order() });
        }
        Ok(FieldElem { field: *self, code: code as u32 })
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        let p = self.0.p as i64;
        FieldElem { field: *self, code: n.rem_euclid(p) as u32 }
    }

    pub fn from_digits(&self, d: &[u32]) -> FieldElem {
        let mut buf = [0u32; 32];
        for (i, &x) in d.iter().take(self.0.m as usize).enumerate() {
            buf[i] = x % self.0.p;
        }
        FieldElem { field: *self, code: self.0.encode(&buf) }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        let f = *self;
        (0..self.0.order).map(move |code| FieldElem { field: f, code })
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        self.elements().skip(1)
    }

    /// A primitive cube root of unity, when the field has one (`s = 1 mod 3`).
    pub fn primitive_cube_root(&self) -> Option<FieldElem> {
        let s = self.order();
        if s % 3 != 1 {
            return None;
        }
        let e = (s - 1) / 3;
        self.nonzero_elements().map(|g| g.pow(e)).find(|w| !w.is_one())
    }

    /// Least non-square, for odd characteristic.
    fn non_square(&self) -> FieldElem {
        let e = (self.order() - 1) / 2;
        self.nonzero_elements()
            .find(|x| !x.pow(e).is_one())
            .expect("odd order fields have non-squares")
    }

    /// The embedding of `self` into `target`, sending `t` to the least root of
    /// the defining polynomial of `self` in `target`.
    pub fn embedding_into(&self, target: Field) -> Result<Embedding, FieldError> {
        let no = || FieldError::NoEmbedding { small: self.order(), large: target.order() };
        if self.p() != target.p() || target.degree() % self.degree() != 0 {
            return Err(no());
        }
        let image = if self.degree() == 1 {
            target.zero()
        } else {
            let poly = self.modulus().map_coeffs(|c| target.from_int(c.code() as i64));
            let mut roots = polyring::roots(&poly);
            roots.sort();
            *roots.first().ok_or_else(no)?
        };
        let mut powers = Vec::with_capacity(self.degree() as usize);
        let mut x = target.one();
        for _ in 0..self.degree() {
            powers.push(x);
            x *= image;
        }
        Ok(Embedding { source: *self, target, powers })
    }
}

/// Splits `q` into `(p, m)` with `q = p^m`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

/// Field homomorphism `F_{p^m} -> F_{p^n}` with `m | n`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    powers: Vec<FieldElem>,
}

impl Embedding {
    pub fn source(&self) -> Field {
        self.source
    }
    pub fn target(&self) -> Field {
        self.target
    }
    /// Image of `t`.
    pub fn image_of_gen(&self) -> FieldElem {
        if self.powers.len() > 1 {
            self.powers[1]
        } else {
            self.target.zero()
        }
    }
    pub fn apply(&self, x: FieldElem) -> FieldElem {
        assert_eq!(x.field, self.source, "embedding applied to a foreign element");
        let d = x.digits();
        let mut acc = self.target.zero();
        for (i, &c) in d.iter().enumerate() {
            if c != 0 {
                acc += self.powers[i] * self.target.from_int(c as i64);
            }
        }
        acc
    }
}

/// An element of an interned finite field.
#[derive(Clone, Copy)]
pub struct FieldElem {
    field: Field,
    code: u32,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}
impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state)
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 || self.code == 0 {
            return write!(f, "{}", self.code);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.digits().iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl FieldElem {
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn code(&self) -> u32 {
        self.code
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
    pub fn is_one(&self) -> bool {
        self.code == 1
    }
    pub fn digits(&self) -> Vec<u32> {
        let d = self.field.0.digits(self.code);
        d[..self.field.degree() as usize].to_vec()
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        FieldElem { field: self.field, code: self.field.0.pow(self.code, e) }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        FieldElem { field: self.field, code: self.field.0.inv(self.code) }
    }

    pub fn checked_inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.inv())
    }

    fn check(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }
    pub fn checked_add(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(o)?;
        Ok(*self + *o)
    }
    pub fn checked_sub(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(o)?;
        Ok(*self - *o)
    }
    pub fn checked_mul(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(o)?;
        Ok(*self * *o)
    }
    pub fn checked_div(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(o)?;
        Ok(*self * o.checked_inv()?)
    }

    /// `x^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.field.p() as u64)
    }

    /// Absolute trace to the prime field, as an element of the prime field.
    pub fn trace(&self) -> FieldElem {
        let mut acc = *self;
        let mut x = *self;
        for _ in 1..self.field.degree() {
            x = x.frobenius();
            acc += x;
        }
        debug_assert!(acc.code < self.field.p());
        self.field.prime_field().elem(acc.code)
    }

    /// Trace to the subfield with `p^k` elements; the value is returned inside
    /// `self.field()`.
    pub fn trace_to_subfield(&self, k: u32) -> FieldElem {
        let m = self.field.degree();
        assert!(k > 0 && m % k == 0, "not a subfield degree");
        let q = (self.field.p() as u64).pow(k);
        let mut acc = *self;
        let mut x = *self;
        for _ in 1..m / k {
            x = x.pow(q);
            acc += x;
        }
        acc
    }

    pub fn is_square(&self) -> bool {
        if self.is_zero() || self.field.p() == 2 {
            return true;
        }
        self.pow((self.field.order() - 1) / 2).is_one()
    }

    /// A square root, if one exists. For odd `p` the root is found with
    /// Tonelli-Shanks; for `p = 2` it is `x^{s/2}`.
    pub fn sqrt(&self) -> Option<FieldElem> {
        let s = self.field.order();
        if self.is_zero() {
            return Some(*self);
        }
        if self.field.p() == 2 {
            return Some(self.pow(s / 2));
        }
        if !self.is_square() {
            return None;
        }
        let mut q = s - 1;
        let mut e = 0;
        while q % 2 == 0 {
            q /= 2;
            e += 1;
        }
        let z = self.field.non_square();
        let mut c = z.pow(q);
        let mut r = self.pow((q + 1) / 2);
        let mut t = self.pow(q);
        let mut m = e;
        while !t.is_one() {
            let mut i = 0;
            let mut tt = t;
            while !tt.is_one() {
                tt = tt * tt;
                i += 1;
            }
            let mut b = c;
            for _ in 0..m - i - 1 {
                b = b * b;
            }
            r *= b;
            c = b * b;
            t *= c;
            m = i;
        }
        Some(r)
    }

    /// Whether `x` is a cube.
    pub fn is_cube(&self) -> bool {
        let s = self.field.order();
        if self.is_zero() || s % 3 != 1 {
            return true;
        }
        self.pow((s - 1) / 3).is_one()
    }

    /// All cube roots of `x` in the field, sorted by code.
    pub fn cube_roots(&self) -> Vec<FieldElem> {
        let s = self.field.order();
        if self.is_zero() {
            return vec![*self];
        }
        if s % 3 == 0 {
            return vec![self.pow(s / 3)];
        }
        if s % 3 == 2 {
            return vec![self.pow((2 * s - 1) / 3)];
        }
        if !self.is_cube() {
            return Vec::new();
        }
        let f = self.field;
        let poly = Poly::new(vec![-*self, f.zero(), f.zero(), f.one()], f.zero());
        let mut r = polyring::roots(&poly);
        r.sort();
        r
    }

    pub fn cbrt(&self) -> Option<FieldElem> {
        self.cube_roots().first().copied()
    }
}

/// Roots of `X^2 + bX + c` in the field of `b`, sorted, repeated root listed once.
pub fn quadratic_roots(b: FieldElem, c: FieldElem) -> Vec<FieldElem> {
    let f = b.field();
    let mut out = if f.p() == 2 {
        if b.is_zero() {
            vec![c.sqrt().expect("squares exist in characteristic 2")]
        } else {
            // X = bY turns the equation into Y^2 + Y = c / b^2
            match solve_artin_schreier2(c / (b * b)) {
                Some(y) => vec![b * y, b * (y + f.one())],
                None => Vec::new(),
            }
        }
    } else {
        let disc = b * b - f.from_int(4) * c;
        match disc.sqrt() {
            Some(r) => {
                let half = f.from_int(2).inv();
                vec![(-b + r) * half, (-b - r) * half]
            }
            None => Vec::new(),
        }
    };
    out.sort();
    out.dedup();
    out
}

/// A solution of `Y^2 + Y = u` over a field of characteristic 2.
pub fn solve_artin_schreier2(u: FieldElem) -> Option<FieldElem> {
    let f = u.field();
    assert_eq!(f.p(), 2);
    if !u.trace().is_zero() {
        return None;
    }
    let m = f.degree();
    if m % 2 == 1 {
        // half trace
        let mut acc = u;
        let mut x = u;
        for _ in 0..(m - 1) / 2 {
            x = x.pow(4);
            acc += x;
        }
        return Some(acc);
    }
    // Y -> Y^2 + Y is F_2-linear; solve over the coordinates of t^i.
    let cols: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let b = f.elem(1 << i);
            (b * b + b).digits()
        })
        .collect();
    let rows: Vec<Vec<u32>> = (0..m as usize)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let sol = polyring::solve_linear_mod_p(&rows, &u.digits(), 2)?;
    Some(f.from_digits(&sol))
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, o: FieldElem) -> FieldElem {
        assert!(self.field == o.field, "field mismatch");
        FieldElem { field: self.field, code: self.field.0.add(self.code, o.code) }
    }
}
impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, o: FieldElem) -> FieldElem {
        assert!(self.field == o.field, "field mismatch");
        let n = self.field.0.neg(o.code);
        FieldElem { field: self.field, code: self.field.0.add(self.code, n) }
    }
}
impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, o: FieldElem) -> FieldElem {
        assert!(self.field == o.field, "field mismatch");
        FieldElem { field: self.field, code: self.field.0.mul(self.code, o.code) }
    }
}
impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, o: FieldElem) -> FieldElem {
        self * o.inv()
    }
}
impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { field: self.field, code: self.field.0.neg(self.code) }
    }
}
impl AddAssign for FieldElem {
    fn add_assign(&mut self, o: FieldElem) {
        *self = *self + o;
    }
}
impl SubAssign for FieldElem {
    fn sub_assign(&mut self, o: FieldElem) {
        *self = *self - o;
    }
}
impl MulAssign for FieldElem {
    fn mul_assign(&mut self, o: FieldElem) {
        *self = *self * o;
    }
}

impl Scalar for FieldElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        self.code == 0
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn characteristic(&self) -> u32 {
        self.field.p()
    }
    fn inv(&self) -> Self {
        FieldElem::inv(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
