//! Laurent polynomials and truncated expansions in `t^-1`.

use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FieldElem};
use super::poly::{Degree, Poly};
use crate::error::Result;

/// A finite Laurent polynomial `sum c_e t^e` with `e` possibly negative.
///
/// Stored as `t^low * (c_0 + c_1 t + ...)` with `c_0 != 0`; zero has no
/// coefficients and `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    low: i64,
    coeffs: Vec<u32>,
}

impl LaurentPoly {
    fn normalized(field: &Field, mut low: i64, mut coeffs: Vec<u32>) -> LaurentPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly::zero(field);
        }
        coeffs.drain(..lead_zeros);
        low += lead_zeros as i64;
        LaurentPoly { field: field.clone(), low, coeffs }
    }

    pub fn zero(field: &Field) -> LaurentPoly {
        LaurentPoly { field: field.clone(), low: 0, coeffs: Vec::new() }
    }

    pub fn from_poly(p: &Poly) -> LaurentPoly {
        LaurentPoly::normalized(p.field(), 0, p.raw().to_vec())
    }

    pub(crate) fn monomial_raw(field: &Field, c: u32, e: i64) -> LaurentPoly {
        LaurentPoly::normalized(field, e, vec![c])
    }

    /// `c * t^e`.
    pub fn monomial(c: &FieldElem, e: i64) -> LaurentPoly {
        LaurentPoly::monomial_raw(c.field(), c.value(), e)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(field: &Field, terms: &[(i64, FieldElem)]) -> LaurentPoly {
        terms
            .iter()
            .fold(LaurentPoly::zero(field), |acc, (e, c)| &acc + &LaurentPoly::monomial(c, *e))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Degree {
        if self.is_zero() {
            Degree::NegInf
        } else {
            Degree::Finite(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn low_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub(crate) fn coeff_raw(&self, e: i64) -> u32 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn coeff(&self, e: i64) -> FieldElem {
        self.field.elem(self.coeff_raw(e))
    }

    /// Nonzero terms from the highest exponent down.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FieldElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i64, self.field.elem(c)))
    }

    /// Keep only the terms with exponent `>= min_exp`.
    pub fn truncate_below(&self, min_exp: i64) -> LaurentPoly {
        if self.is_zero() || min_exp <= self.low {
            return self.clone();
        }
        let skip = (min_exp - self.low) as usize;
        if skip >= self.coeffs.len() {
            return LaurentPoly::zero(&self.field);
        }
        LaurentPoly::normalized(&self.field, min_exp, self.coeffs[skip..].to_vec())
    }

    /// Split as `t^shift * poly` with `shift <= 0` when there are negative
    /// exponents, so that `poly` is an honest polynomial.
    pub fn as_fraction(&self) -> (Poly, Poly) {
        let f = &self.field;
        if self.is_zero() {
            return (Poly::zero(f), Poly::one(f));
        }
        if self.low >= 0 {
            let num = Poly::from_raw(f, self.coeffs.clone()).shift(self.low as usize);
            (num, Poly::one(f))
        } else {
            let num = Poly::from_raw(f, self.coeffs.clone());
            let den = Poly::monomial_raw(f, 1, (-self.low) as usize);
            (num, den)
        }
    }

    /// The polynomial part: terms with exponent `>= 0`.
    pub fn poly_part(&self) -> Poly {
        let kept = self.truncate_below(0);
        kept.as_fraction().0
    }

    pub fn pow(&self, mut e: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::monomial_raw(&self.field, 1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn zip_with(&self, rhs: &LaurentPoly, op: impl Fn(u32, u32) -> u32) -> LaurentPoly {
        assert!(self.field == rhs.field, "Laurent polynomials over different fields");
        if self.is_zero() && rhs.is_zero() {
            return self.clone();
        }
        let lo = match (self.low_exponent(), rhs.low_exponent()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let hi = self.degree().max(rhs.degree()).finite().unwrap();
        let coeffs = (lo..=hi).map(|e| op(self.coeff_raw(e), rhs.coeff_raw(e))).collect();
        LaurentPoly::normalized(&self.field, lo, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let f = &self.field;
        LaurentPoly::normalized(f, self.low, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "Laurent polynomials over different fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(f);
        }
        let a = Poly::from_raw(f, self.coeffs.clone());
        let b = Poly::from_raw(f, rhs.coeffs.clone());
        LaurentPoly::normalized(f, self.low + rhs.low, (&a * &b).raw().to_vec())
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// The first `depth` coefficients of the `t^-1`-adic expansion of a rational
/// function, starting at its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    field: Field,
    top: i64,
    coeffs: Vec<FieldElem>,
    exact: bool,
}

impl LaurentExpansion {
    /// Exponent of the first listed coefficient (meaningless for zero).
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Coefficients for exponents `top, top-1, ...`.
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// True when the expansion terminates within the requested depth.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.is_zero() {
            Degree::NegInf
        } else {
            Degree::Finite(self.top)
        }
    }

    /// Leading coefficient, zero for the zero value.
    pub fn leading(&self) -> FieldElem {
        self.coeffs.first().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The truncation as a Laurent polynomial.
    pub fn to_laurent_poly(&self) -> LaurentPoly {
        let terms: Vec<_> =
            self.coeffs.iter().enumerate().map(|(i, c)| (self.top - i as i64, c.clone())).collect();
        LaurentPoly::from_terms(&self.field, &terms)
    }

    /// Terms with nonnegative exponent.
    pub fn poly_part(&self) -> Poly {
        self.to_laurent_poly().poly_part()
    }
}

/// Expand `num / den` to `depth` coefficients by long division in powers of
/// `t^-1`. `den` must be nonzero.
pub(crate) fn expand_fraction(num: &Poly, den: &Poly, depth: usize) -> Result<LaurentExpansion> {
    let field = num.field().clone();
    let den_deg = den.deg().ok_or(crate::error::Error::DivisionByZero)? as i64;
    let Some(num_deg) = num.deg() else {
        return Ok(LaurentExpansion { field, top: 0, coeffs: Vec::new(), exact: true });
    };
    let top = num_deg as i64 - den_deg;
    // Scale by t^m so that the wanted coefficients become the polynomial part
    // of num * t^m / den, with exponents depth-1 down to 0.
    let m = depth as i64 - 1 - top;
    let (n2, d2) = if m >= 0 {
        (num.shift(m as usize), den.clone())
    } else {
        (num.clone(), den.shift((-m) as usize))
    };
    let (quot, rem) = n2.divmod(&d2)?;
    let coeffs = (0..depth).map(|i| quot.coeff(depth - 1 - i)).collect();
    Ok(LaurentExpansion { field, top, coeffs, exact: rem.is_zero() })
}
