//! Points of P^1(F_q(t)) as reduced fractions, distinct ordered triples and
//! regular continued fractions.

use crate::algebra::{self, Degree, Field, FieldElem, LaurentExpansion, LaurentPoly, Poly};
use crate::error::{Error, Result};

/// A point of the projective line over F_q(t).
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and infinity stored as
/// `1/0`. Equality is equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    num: Poly,
    den: Poly,
}

impl ProjPoint {
    pub fn new(num: Poly, den: Poly) -> Result<ProjPoint> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::IndeterminatePoint);
        }
        Ok(ProjPoint::canonical(num, den))
    }

    /// Canonicalize a pair known not to be `(0, 0)`.
    pub(crate) fn canonical(num: Poly, den: Poly) -> ProjPoint {
        debug_assert!(!(num.is_zero() && den.is_zero()));
        let field = num.field().clone();
        if den.is_zero() {
            return ProjPoint::infinity(&field);
        }
        if num.is_zero() {
            return ProjPoint::zero(&field);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let lc = den.lc_raw();
        if lc != 1 {
            let inv = field.inv(lc);
            num = num.scale_raw(inv);
            den = den.scale_raw(inv);
        }
        ProjPoint { num, den }
    }

    pub fn from_poly(p: Poly) -> ProjPoint {
        let one = Poly::one(p.field());
        ProjPoint { num: p, den: one }
    }

    /// The rational value of a Laurent polynomial.
    pub fn from_laurent(l: &LaurentPoly) -> ProjPoint {
        let (num, den) = l.as_fraction();
        ProjPoint::canonical(num, den)
    }

    pub fn infinity(field: &Field) -> ProjPoint {
        ProjPoint { num: Poly::one(field), den: Poly::zero(field) }
    }

    pub fn zero(field: &Field) -> ProjPoint {
        ProjPoint { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Field) -> ProjPoint {
        ProjPoint::from_poly(Poly::one(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num - deg den`, with `deg 0 = -inf` and `deg inf = +inf`.
    pub fn degree(&self) -> Degree {
        match (self.num.degree(), self.den.degree()) {
            (_, Degree::NegInf) => Degree::PosInf,
            (Degree::NegInf, _) => Degree::NegInf,
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a - b),
            _ => unreachable!(),
        }
    }

    /// Leading coefficient of the expansion; zero for the zero point.
    pub fn leading(&self) -> Result<FieldElem> {
        if self.is_infinity() {
            return Err(Error::InfinityNotDecomposable);
        }
        // den is monic
        Ok(self.num.lc())
    }

    /// The polynomial part (Euclidean quotient).
    pub fn poly_part(&self) -> Result<Poly> {
        if self.is_infinity() {
            return Err(Error::InfinityNotDecomposable);
        }
        Ok(self.num.divmod(&self.den)?.0)
    }

    /// `deg(self - other)`; `-inf` exactly when the points coincide.
    pub fn diff_degree(&self, other: &ProjPoint) -> Result<Degree> {
        Ok(self.checked_sub(other)?.degree())
    }

    /// Level at which the rays from infinity towards the two ends separate:
    /// `deg(self - other)`, and `+inf` when either end is infinity.
    pub fn separation(&self, other: &ProjPoint) -> Degree {
        if self.is_infinity() || other.is_infinity() {
            Degree::PosInf
        } else {
            self.checked_sub(other).expect("finite points").degree()
        }
    }

    fn finite_pair(&self, other: &ProjPoint) -> Result<()> {
        if self.is_infinity() || other.is_infinity() {
            Err(Error::InfinityNotDecomposable)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &ProjPoint) -> Result<ProjPoint> {
        self.finite_pair(other)?;
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(ProjPoint::canonical(num, &self.den * &other.den))
    }

    pub fn checked_sub(&self, other: &ProjPoint) -> Result<ProjPoint> {
        self.finite_pair(other)?;
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        Ok(ProjPoint::canonical(num, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &ProjPoint) -> Result<ProjPoint> {
        self.finite_pair(other)?;
        Ok(ProjPoint::canonical(&self.num * &other.num, &self.den * &other.den))
    }

    /// Field division; dividing by zero is an error rather than infinity.
    pub fn checked_div(&self, other: &ProjPoint) -> Result<ProjPoint> {
        self.finite_pair(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ProjPoint::canonical(&self.num * &other.den, &self.den * &other.num))
    }

    /// `1/x` on the projective line (swaps 0 and infinity).
    pub fn recip(&self) -> ProjPoint {
        ProjPoint::canonical(self.den.clone(), self.num.clone())
    }

    pub fn neg(&self) -> ProjPoint {
        if self.is_infinity() {
            return self.clone();
        }
        ProjPoint { num: -&self.num, den: self.den.clone() }
    }

    pub fn laurent_expand(&self, depth: usize) -> Result<LaurentExpansion> {
        algebra::laurent_expand(self, depth)
    }

    pub fn cf_expand(&self) -> Result<ContinuedFraction> {
        cf_expand(self)
    }
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// A mutually distinct ordered triple of boundary points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    points: [ProjPoint; 3],
}

impl Triple {
    pub fn new(w1: ProjPoint, w2: ProjPoint, w3: ProjPoint) -> Result<Triple> {
        if w1 == w2 {
            return Err(Error::DistinctnessViolated(1, 2));
        }
        if w1 == w3 {
            return Err(Error::DistinctnessViolated(1, 3));
        }
        if w2 == w3 {
            return Err(Error::DistinctnessViolated(2, 3));
        }
        Ok(Triple { points: [w1, w2, w3] })
    }

    /// Caller guarantees distinctness (e.g. the image of a triple under a
    /// group element).
    pub(crate) fn new_unchecked(points: [ProjPoint; 3]) -> Triple {
        debug_assert!(points[0] != points[1] && points[0] != points[2] && points[1] != points[2]);
        Triple { points }
    }

    /// `(0, 1, inf)`.
    pub fn standard(field: &Field) -> Triple {
        Triple { points: [ProjPoint::zero(field), ProjPoint::one(field), ProjPoint::infinity(field)] }
    }

    pub fn w1(&self) -> &ProjPoint {
        &self.points[0]
    }

    pub fn w2(&self) -> &ProjPoint {
        &self.points[1]
    }

    pub fn w3(&self) -> &ProjPoint {
        &self.points[2]
    }

    pub fn points(&self) -> &[ProjPoint; 3] {
        &self.points
    }

    pub fn field(&self) -> &Field {
        self.points[0].field()
    }
}

impl std::fmt::Debug for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite regular continued fraction `[a0; a1, ..., am]` with every
/// partial quotient after the first nonconstant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContinuedFraction {
    quotients: Vec<Poly>,
}

impl ContinuedFraction {
    pub fn new(quotients: Vec<Poly>) -> Result<ContinuedFraction> {
        if quotients.is_empty() {
            return Err(Error::MalformedCF("empty continued fraction".into()));
        }
        if let Some(i) = quotients.iter().skip(1).position(|a| a.degree() < Degree::Finite(1)) {
            return Err(Error::MalformedCF(format!("partial quotient a{} is constant", i + 1)));
        }
        Ok(ContinuedFraction { quotients })
    }

    pub fn quotients(&self) -> &[Poly] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn assemble(&self) -> ProjPoint {
        cf_assemble(self)
    }
}

/// Regular continued fraction by iterated Euclidean division.
pub fn cf_expand(x: &ProjPoint) -> Result<ContinuedFraction> {
    if x.is_infinity() {
        return Err(Error::InfinityNotExpandable);
    }
    let mut quotients = Vec::new();
    let (mut n, mut d) = (x.num().clone(), x.den().clone());
    loop {
        let (q, r) = n.divmod(&d)?;
        quotients.push(q);
        if r.is_zero() {
            break;
        }
        n = d;
        d = r;
    }
    Ok(ContinuedFraction { quotients })
}

/// Evaluate a continued fraction bottom-up.
pub fn cf_assemble(cf: &ContinuedFraction) -> ProjPoint {
    let mut iter = cf.quotients.iter().rev();
    let last = iter.next().expect("nonempty continued fraction");
    let (mut num, mut den) = (last.clone(), Poly::one(last.field()));
    for a in iter {
        let next = &(a * &num) + &den;
        den = num;
        num = next;
    }
    ProjPoint::canonical(num, den)
}

/// Number of partial quotients, counting infinity as a single term.
pub(crate) fn cf_length(x: &ProjPoint) -> usize {
    cf_expand(x).map(|cf| cf.len()).unwrap_or(1)
}
