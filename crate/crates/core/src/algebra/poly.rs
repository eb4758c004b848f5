//! Polynomials in `t` over F_q and the extended degree type.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// A degree in `Z ∪ {-inf, +inf}`, totally ordered.
///
/// `deg 0 = -inf` and `deg inf = +inf`, so inequalities between degrees stay
/// meaningful on triples containing 0 or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    /// Absolute value of a finite degree.
    pub fn abs(self) -> Option<u64> {
        self.finite().map(i64::unsigned_abs)
    }
}

impl From<i64> for Degree {
    fn from(n: i64) -> Self {
        Degree::Finite(n)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::PosInf => f.write_str("inf"),
        }
    }
}

/// A polynomial in `t` over F_q. Coefficients are little-endian with no
/// trailing zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Polynomial with the given coefficients, constant term first.
    pub fn new(field: &Field, coeffs: &[FieldElem]) -> Result<Poly> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            raw.push(c.value());
        }
        Ok(Poly::from_raw(field, raw))
    }

    /// Polynomial with integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        let raw = coeffs.iter().map(|&c| field.from_int(c).value()).collect();
        Poly::from_raw(field, raw)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::from_raw(field, vec![1])
    }

    pub fn constant(c: &FieldElem) -> Poly {
        Poly::from_raw(c.field(), vec![c.value()])
    }

    /// `t`.
    pub fn t(field: &Field) -> Poly {
        Poly::from_raw(field, vec![0, 1])
    }

    pub(crate) fn monomial_raw(field: &Field, c: u32, e: usize) -> Poly {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Poly::from_raw(field, coeffs)
    }

    /// `c * t^e`.
    pub fn monomial(c: &FieldElem, e: usize) -> Poly {
        Poly::monomial_raw(c.field(), c.value(), e)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    /// Degree as an index; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn lc_raw(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FieldElem {
        self.field.elem(self.lc_raw())
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.field.elem(self.coeff_raw(i))
    }

    /// Nonzero terms `(exponent, coefficient)` from the highest exponent down.
    pub fn terms(&self) -> impl Iterator<Item = (usize, FieldElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e, self.field.elem(c)))
    }

    fn same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        assert!(c.field() == &self.field, "scalar from a different field");
        self.scale_raw(c.value())
    }

    /// The associated monic polynomial (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => self.scale_raw(self.field.inv(lc)),
        }
    }

    /// Multiply by `t^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor);
        let db = divisor.deg().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(divisor.lc_raw());
        let mut quot = vec![0u32; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + db];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, inv_lc);
            quot[i] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(factor, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff_raw(i), rhs.coeff_raw(i))).collect();
        Poly::from_raw(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.same_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff_raw(i), rhs.coeff_raw(i))).collect();
        Poly::from_raw(f, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_raw(f, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
