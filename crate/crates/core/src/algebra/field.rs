//! Finite fields F_q, q = p^k.
//!
//! Elements are stored as integers in `0..q` whose base-p digits are the
//! coordinates relative to the power basis `1, a, a^2, ...` of the modulus.
//! Prime fields use plain modular arithmetic; extension fields multiply via
//! discrete log tables built once at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported extension-field order (log tables are `O(q)`).
const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// Description of F_q: characteristic, extension degree and modulus.
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over F_p, little-endian, length `k + 1`; empty for k = 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to a [`FieldSpec`]. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F{}", self.0.p)
        } else {
            write!(f, "F{}^{}", self.0.p, self.0.k)
        }
    }
}

impl std::ops::Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

fn is_prime(n: u64) -> bool {
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

/// Dense polynomial helpers over F_p used only while validating a modulus.
fn fp_poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let inv_lc = fp_inv(b[db], p);
    while a.len() > db {
        let lead = *a.last().unwrap();
        if lead != 0 {
            let factor = (lead as u64 * inv_lc as u64 % p as u64) as u32;
            let shift = a.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (factor as u64 * bi as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_pow(mut base: u64, mut e: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

fn fp_inv(a: u32, p: u32) -> u32 {
    fp_pow(a as u64, p as u64 - 2, p)
}

/// Trial division by every monic polynomial of degree `1..=k/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cand.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            cand.push(1);
            if fp_poly_rem(modulus.to_vec(), &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) || p >= (1 << 31) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field(Arc::new(FieldSpec {
            p,
            k: 1,
            q: p,
            modulus: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        })))
    }

    /// F_{p^k} = F_p[a]/(modulus). `modulus` is little-endian over F_p and
    /// must be irreducible of degree `k >= 2`; it is made monic.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut m: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have positive degree".into()));
        }
        let k = (m.len() - 1) as u32;
        if k == 1 {
            return Field::prime(p);
        }
        let q = (p as u64).pow(k);
        if q > MAX_EXTENSION_ORDER {
            return Err(Error::InvalidField(format!("field order {q} is too large")));
        }
        let inv_lc = fp_inv(*m.last().unwrap(), p);
        for c in m.iter_mut() {
            *c = (*c as u64 * inv_lc as u64 % p as u64) as u32;
        }
        if !is_irreducible(&m, p) {
            return Err(Error::InvalidField("modulus is not irreducible".into()));
        }
        let mut spec = FieldSpec { p, k, q: q as u32, modulus: m, exp: Vec::new(), log: Vec::new() };
        spec.build_log_tables();
        Ok(Field(Arc::new(spec)))
    }

    pub fn elem(&self, value: u32) -> FieldElem {
        assert!(value < self.q, "field element out of range");
        FieldElem { field: self.clone(), value }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let v = n.rem_euclid(self.p as i64) as u32;
        self.elem(v)
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// All q elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |v| self.elem(v))
    }
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients (little-endian); empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Encoding of the generator `a` (only meaningful when k > 1).
    pub(crate) fn gen_a(&self) -> u32 {
        self.p
    }

    pub(crate) fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub(crate) fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a as u64 + b as u64;
            (s % self.p as u64) as u32
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..self.k {
                let d = (a % self.p + b % self.p) % self.p;
                out += d * place;
                place = place.wrapping_mul(self.p);
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut a = a;
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..self.k {
                let d = (self.p - a % self.p) % self.p;
                out += d * place;
                place = place.wrapping_mul(self.p);
                a /= self.p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            (a as u64 * b as u64 % self.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let order = self.q - 1;
            let idx = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order as u64;
            self.exp[idx as usize]
        }
    }

    /// Multiplicative inverse; the caller guarantees `a != 0`.
    #[inline]
    pub(crate) fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        if self.k == 1 {
            fp_inv(a, self.p)
        } else {
            let order = self.q - 1;
            self.exp[((order - self.log[a as usize]) % order) as usize]
        }
    }

    /// Schoolbook product of coordinate polynomials reduced by the modulus.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut rem = fp_poly_rem(prod, &self.modulus, self.p);
        rem.resize(self.k as usize, 0);
        self.from_digits(&rem)
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = self.slow_mul(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }
}

/// An element of F_q together with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: Field,
    value: u32,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Integer encoding in `0..q`.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Coordinates over F_p relative to `1, a, ..., a^(k-1)`.
    pub fn coords(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.elem(self.field.inv(self.value)))
    }

    /// True if the element lies in the prime subfield F_p.
    pub fn in_prime_subfield(&self) -> bool {
        self.value < self.field.p
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    /// Integers for prime-subfield elements, otherwise a polynomial in `a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.in_prime_subfield() {
            return write!(f, "{}", self.value);
        }
        let digits = self.coords();
        let mut first = true;
        for (e, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (e, d) {
                (0, d) => write!(f, "{d}")?,
                (1, 1) => f.write_str("a")?,
                (1, d) => write!(f, "{d}a")?,
                (e, 1) => write!(f, "a^{e}")?,
                (e, d) => write!(f, "{d}a^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        // a^2 + a + 1
        Field::extension(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn prime_field_examples() {
        let f = Field::prime(3).unwrap();
        let two = f.from_int(2);
        assert_eq!(two.add(&two).unwrap(), f.one());
        assert_eq!(two.mul(&two).unwrap(), f.one());
        assert_eq!(two.inv().unwrap(), two);
        assert_eq!(f.one().inv().unwrap(), f.one());
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn f4_generator_squared() {
        let f = f4();
        let a = f.elem(f.gen_a());
        let a2 = a.mul(&a).unwrap();
        assert_eq!(a2.coords(), vec![1, 1]);
        assert_eq!(a2.to_string(), "a+1");
    }

    #[test]
    fn mismatch_is_reported() {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f3.one().add(&f5.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        // a^2 + 1 = (a+1)^2 over F2
        assert!(Field::extension(2, &[1, 0, 1]).is_err());
        // a^2 + 1 is irreducible over F3
        assert!(Field::extension(3, &[1, 0, 1]).is_ok());
    }

    fn exhaustive_axioms(f: &Field) {
        let elems: Vec<_> = f.elements().collect();
        for x in &elems {
            assert_eq!(x.add(&f.zero()).unwrap(), *x);
            assert_eq!(x.mul(&f.one()).unwrap(), *x);
            assert!(x.add(&x.neg()).unwrap().is_zero());
            if !x.is_zero() {
                assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
            }
            for y in &elems {
                assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
                assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
                for z in &elems {
                    let l = x.add(y).unwrap().add(z).unwrap();
                    let r = x.add(&y.add(z).unwrap()).unwrap();
                    assert_eq!(l, r);
                    let l = x.mul(y).unwrap().mul(z).unwrap();
                    let r = x.mul(&y.mul(z).unwrap()).unwrap();
                    assert_eq!(l, r);
                    let l = x.mul(&y.add(z).unwrap()).unwrap();
                    let r = x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_q() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap(), f4(), Field::prime(5).unwrap()] {
            exhaustive_axioms(&f);
        }
    }

    #[test]
    fn f9_and_f8_axioms() {
        exhaustive_axioms(&Field::extension(3, &[1, 0, 1]).unwrap());
        exhaustive_axioms(&Field::extension(2, &[1, 1, 0, 1]).unwrap());
    }
}
