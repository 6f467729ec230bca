//! Prime-power finite fields `GF(p^d)` in a polynomial basis over `GF(p)`.
//!
//! An element is stored as its coordinate vector packed into a single
//! integer, `index = c_0 + c_1 p + ... + c_{d-1} p^{d-1}`, where `c_i` is the
//! coefficient of `x^i` modulo the field's defining polynomial. The order on
//! indices is the "coordinate order" used for every deterministic scan in
//! this crate.
//!
//! The defining polynomial is the monic primitive polynomial whose lower
//! coefficients, packed the same way, form the smallest index.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// Fields up to this size get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// A field element, encoded as its packed coordinate vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    /// `exp[k] = g^k` for `0 <= k < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Gf {
    p: u32,
    degree: u32,
    size: u32,
    /// Monic defining polynomial, low degree first, `degree + 1` entries.
    modulus: Vec<u32>,
    /// The class of `x` (for `degree == 1`, the root of the linear modulus).
    generator: Elem,
    tables: Option<LogTables>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Gf {}

impl Gf {
    /// Builds `GF(p^degree)` with the smallest primitive defining polynomial.
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::InvalidParameter("field degree must be positive"));
        }
        let size = checked_pow(p as u64, degree)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, degree })?;
        let order = size - 1;
        let factors = prime_factors(order);
        let d = degree as usize;
        for low in 1..size {
            if low % p as u64 == 0 {
                // zero constant term: divisible by x
                continue;
            }
            let mut modulus = unpack(low, p, d);
            modulus.push(1);
            if x_is_primitive(&modulus, p, order, &factors) {
                return Ok(Self::with_modulus_unchecked(
                    p,
                    degree,
                    size as u32,
                    modulus,
                ));
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    fn with_modulus_unchecked(p: u32, degree: u32, size: u32, modulus: Vec<u32>) -> Self {
        let generator = if degree == 1 {
            Elem((p - modulus[0]) % p)
        } else {
            Elem(p)
        };
        let mut field = Gf {
            p,
            degree,
            size,
            modulus,
            generator,
            tables: None,
        };
        if (size as u64) <= TABLE_LIMIT {
            let order = (size - 1) as usize;
            let mut exp = vec![0u32; 2 * order.max(1)];
            let mut log = vec![0u32; size as usize];
            let mut cur = Elem::ONE;
            for (k, slot) in exp[..order].iter_mut().enumerate() {
                *slot = cur.0;
                log[cur.0 as usize] = k as u32;
                cur = field.mul_slow(cur, generator);
            }
            for k in order..2 * order {
                exp[k] = exp[k - order];
            }
            field.tables = Some(LogTables { exp, log });
        }
        field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Multiplicative generator: the class of `x`.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// Coordinates over the prime field, `degree` entries.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        unpack(a.0 as u64, self.p, self.degree as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.degree as usize {
            return Err(Error::LengthMismatch {
                expected: self.degree as usize,
                got: coords.len(),
            });
        }
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.p as u64 + (c % self.p) as u64;
        }
        Ok(Elem(idx as u32))
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x != 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let d = self.degree as usize;
        let x = unpack(a.0 as u64, self.p, d);
        let y = unpack(b.0 as u64, self.p, d);
        let r = poly_mulmod(&x, &y, &self.modulus, self.p);
        Elem(pack(&r, self.p) as u32)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let l = t.log[a.0 as usize];
                Some(Elem(t.exp[((order - l) % order) as usize]))
            }
            None => Some(self.pow(a, self.size as u64 - 2)),
        }
    }

    /// `a / b`; `None` when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.size - 1) as u64;
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            return Elem(t.exp[((l * (e % order)) % order) as usize]);
        }
        let mut e = e % order;
        let (mut base, mut acc) = (a, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^k` for a possibly negative exponent (zero stays zero).
    pub fn pow_signed(&self, a: Elem, e: i64) -> Elem {
        let order = (self.size - 1) as i64;
        if e >= 0 || a.is_zero() {
            return self.pow(a, e as u64);
        }
        self.pow(a, e.rem_euclid(order) as u64)
    }

    /// The absolute Frobenius applied `k` times: `a^(p^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let k = k % self.degree;
        if k == 0 || a.is_zero() {
            return a;
        }
        let order = (self.size - 1) as u64;
        let mut e = 1u64;
        for _ in 0..k {
            e = (e * self.p as u64) % order;
        }
        if e == 0 {
            e = order;
        }
        self.pow(a, e)
    }

    /// Discrete logarithm to the base of [`Gf::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() || !self.contains(a) {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize]);
        }
        let mut cur = Elem::ONE;
        for k in 0..self.size - 1 {
            if cur == a {
                return Some(k);
            }
            cur = self.mul_slow(cur, self.generator);
        }
        None
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> Elem {
        self.pow(self.generator, k)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut order = (self.size - 1) as u64;
        for q in prime_factors(order) {
            while order.is_multiple_of(q) && self.pow(a, order / q) == Elem::ONE {
                order /= q;
            }
        }
        Some(order)
    }

    pub fn is_primitive(&self, a: Elem) -> bool {
        self.mult_order(a) == Some((self.size - 1) as u64)
    }

    /// The primitive element with the smallest index.
    pub fn smallest_primitive(&self) -> Elem {
        self.elements()
            .skip(1)
            .find(|&a| self.is_primitive(a))
            .expect("multiplicative group is cyclic")
    }

    /// Evaluates a polynomial with prime-field coefficients (low degree first) at `a`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], a: Elem) -> Elem {
        coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| {
            self.add(self.mul(acc, a), Elem(c % self.p))
        })
    }
}

/// Rank over `GF(p)` of the coordinate vectors of `elems`.
pub fn prime_rank(field: &Gf, elems: impl IntoIterator<Item = Elem>) -> usize {
    if field.p == 2 {
        // xor basis keyed by leading bit
        let mut basis = [0u32; 32];
        let mut rank = 0;
        for e in elems {
            let mut v = e.0;
            while v != 0 {
                let top = 31 - v.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = v;
                    rank += 1;
                    break;
                }
                v ^= basis[top];
            }
        }
        return rank;
    }
    let p = field.p;
    let d = field.degree as usize;
    // basis[j] has pivot at coordinate j, normalised to 1
    let mut basis: Vec<Option<Vec<u32>>> = vec![None; d];
    let mut rank = 0;
    for e in elems {
        let mut v = field.coords(e);
        for j in (0..d).rev() {
            if v[j] == 0 {
                continue;
            }
            match &basis[j] {
                Some(b) => {
                    let c = v[j];
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = (*vi + p - (c * bi) % p) % p;
                    }
                }
                None => {
                    let inv = inv_mod(v[j], p);
                    for vi in v.iter_mut() {
                        *vi = (*vi * inv) % p;
                    }
                    basis[j] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
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

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is small; Fermat
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn unpack(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    out
}

fn pack(coords: &[u32], p: u32) -> u64 {
    coords
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// `a * b mod modulus` over GF(p); `modulus` monic of degree `d`, inputs of length `d`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * d.max(1) - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for top in (d..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        // x^top = -(m_0 + ... + m_{d-1} x^{d-1}) x^{top-d}
        for (k, &mk) in modulus[..d].iter().enumerate() {
            let idx = top - d + k;
            prod[idx] = (prod[idx] + (p64 - c) * mk as u64) % p64;
        }
        prod[top] = 0;
    }
    prod.truncate(d);
    prod.into_iter().map(|c| c as u32).collect()
}

fn x_is_primitive(modulus: &[u32], p: u32, order: u64, factors: &[u64]) -> bool {
    let d = modulus.len() - 1;
    let x: Vec<u32> = if d == 1 {
        vec![(p - modulus[0]) % p]
    } else {
        let mut v = vec![0; d];
        v[1] = 1;
        v
    };
    let pow = |e: u64| {
        let mut one = vec![0u32; d];
        one[0] = 1;
        let (mut base, mut acc, mut e) = (x.clone(), one, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, modulus, p);
            }
            base = poly_mulmod(&base, &base, modulus, p);
            e >>= 1;
        }
        acc
    };
    let is_one = |v: &[u32]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
    if x.iter().all(|&c| c == 0) || !is_one(&pow(order)) {
        return false;
    }
    factors.iter().all(|&q| !is_one(&pow(order / q)))
}
