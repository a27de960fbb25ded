//! Arithmetic in finite fields `GF(p^m)`.
//!
//! Elements are stored as canonical integer indices in `[0, q)`. For `m > 1`
//! the index is the base-`p` digit encoding of the residue polynomial, least
//! significant digit first, so `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` has index
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The constants `0..p` therefore keep
//! their integer values in every field.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field, which is what the census and construction loops spend their time on.
//!
//! ```
//! use rs_insdel::gf::Field;
//!
//! let f4 = Field::new(2, 2).unwrap();
//! assert_eq!(f4.modulus(), &[1, 1, 1]); // x^2 + x + 1
//! let x = f4.element(2).unwrap();
//! assert_eq!(f4.mul(x, x).value(), 3); // x * x = x + 1
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order the library will construct.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the ceiling {MAX_ORDER}")]
    TooLarge { p: u64, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("value {value} is not an element of GF({q})")]
    OutOfRange { value: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
}

/// A field element, identified by its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub(crate) fn from_index(v: u32) -> FieldElement {
        FieldElement(v)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `GF(p^m)` together with its arithmetic tables.
///
/// Construction is deterministic: the reduction polynomial is the least monic
/// irreducible of degree `m`, ordering candidates by the integer encoding of
/// their non-leading coefficients (constant term least significant).
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic reduction polynomial, low degree first, length `m + 1`.
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u64, m: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(GfError::TooLarge { p, m });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, m)
        };
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Field, GfError> {
        let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Field::new(p, m)
    }

    fn build_tables(&mut self) {
        let order = (self.q - 1) as u64;
        let prime_factors: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
        let generator = (1..self.q)
            .find(|&g| {
                prime_factors
                    .iter()
                    .all(|&r| self.pow_slow(g, order / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let n = self.q as usize - 1;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_slow(acc, generator);
        }
        for i in n..exp.len() {
            exp[i] = exp[i - n];
        }
        self.generator = generator;
        self.exp = exp;
        self.log = log;
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut d = vec![0; self.m as usize];
        for slot in d.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Schoolbook multiply-and-reduce; only used to bootstrap the tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.m as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m = self.m as usize;
        for deg in (m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (t, &mc) in self.modulus.iter().enumerate().take(m) {
                let idx = deg - m + t;
                prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
            }
            prod[deg] = 0;
        }
        let low: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.undigits(&low)
    }

    fn pow_slow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// Monic reduction polynomial, low degree first (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The generator used for the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, GfError> {
        if value < self.q as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(GfError::OutOfRange { value, q: self.q })
        }
    }

    /// The image of the integer `n` under `Z -> GF(q)`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x.0 < self.q && y.0 < self.q);
        if self.m == 1 {
            let s = x.0 + y.0;
            FieldElement(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            FieldElement(x.0 ^ y.0)
        } else {
            let (mut a, mut b) = (x.0, y.0);
            let (mut out, mut place) = (0, 1);
            while a > 0 || b > 0 {
                let d = (a % self.p + b % self.p) % self.p;
                out += d * place;
                place *= self.p;
                a /= self.p;
                b /= self.p;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if x.0 == 0 || self.p == 2 {
            return x;
        }
        if self.m == 1 {
            return FieldElement(self.p - x.0);
        }
        let mut a = x.0;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(x.0 < self.q && y.0 < self.q);
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let i = self.log[x.0 as usize] + self.log[y.0 as usize];
        FieldElement(self.exp[i as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        if x.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[x.0 as usize];
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % n)) % n) as usize])
    }

    /// Multiplicative order of a non-zero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Result<u64, GfError> {
        if x.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        Ok(n / gcd(n, l))
    }

    /// Every element whose multiplicative order is exactly `q - 1`, in index order.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        let n = (self.q - 1) as u64;
        (1..self.q)
            .filter(|&v| gcd(n, self.log[v as usize] as u64) == 1)
            .map(FieldElement)
            .collect()
    }

    /// Binds an element to this field for the checked operator API.
    pub fn bind(&self, x: FieldElement) -> Result<BoundElement<'_>, GfError> {
        self.element(x.0 as u64)?;
        Ok(BoundElement { field: self, elem: x })
    }

    pub fn label(&self) -> String {
        format!("GF({}^{})", self.p, self.m)
    }
}

/// An element paired with the field it lives in.
///
/// The operations here reject operands from different fields, which the
/// bare [`FieldElement`] index cannot detect.
#[derive(Clone, Copy, Debug)]
pub struct BoundElement<'f> {
    field: &'f Field,
    elem: FieldElement,
}

impl<'f> BoundElement<'f> {
    pub fn element(&self) -> FieldElement {
        self.elem
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    fn check(&self, other: &BoundElement<'_>) -> Result<(), GfError> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn wrap(&self, elem: FieldElement) -> BoundElement<'f> {
        BoundElement { field: self.field, elem }
    }

    pub fn add(&self, other: &BoundElement<'_>) -> Result<BoundElement<'f>, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.elem, other.elem)))
    }

    pub fn sub(&self, other: &BoundElement<'_>) -> Result<BoundElement<'f>, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &BoundElement<'_>) -> Result<BoundElement<'f>, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> BoundElement<'f> {
        self.wrap(self.field.neg(self.elem))
    }

    pub fn inv(&self) -> Result<BoundElement<'f>, GfError> {
        Ok(self.wrap(self.field.inv(self.elem)?))
    }

    pub fn pow(&self, e: u64) -> BoundElement<'f> {
        self.wrap(self.field.pow(self.elem, e))
    }
}

impl PartialEq for BoundElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elem == other.elem
    }
}

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|tail| {
            let mut poly = Vec::with_capacity(m as usize + 1);
            let mut t = tail;
            for _ in 0..m {
                poly.push((t % p as u64) as u32);
                t /= p as u64;
            }
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for tail in 0..(p as u64).pow(d as u32) {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut t = tail;
            for _ in 0..d {
                divisor.push((t % p as u64) as u32);
                t /= p as u64;
            }
            divisor.push(1);
            if remainder_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dd = monic_div.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (t, &dc) in monic_div.iter().enumerate() {
            let idx = top - dd + t;
            r[idx] = (r[idx] + (p - c) * dc as u64) % p;
        }
    }
    r[..dd].iter().all(|&c| c % p == 0)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, m)` when `q = p^m` with `p` prime and `m >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}
