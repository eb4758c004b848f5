//! Exact arithmetic over F_q, F_q[t] and truncated Laurent expansions in `t^-1`.

mod field;
mod laurent;
mod poly;

pub use field::{Field, FieldElem, FieldSpec};
pub use laurent::{LaurentExpansion, LaurentPoly};
pub use poly::{Degree, Poly};

use crate::error::{Error, Result};
use crate::projective::ProjPoint;

/// The polynomial part, fractional-part degree, leading coefficient and
/// degree of a rational function viewed in F_q((t^-1)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub poly_part: Poly,
    pub frac_degree: Degree,
    pub leading: FieldElem,
    pub degree: Degree,
}

/// First `depth` coefficients of the expansion of a finite point.
pub fn laurent_expand(x: &ProjPoint, depth: usize) -> Result<LaurentExpansion> {
    if x.is_infinity() {
        return Err(Error::InfinityNotExpandable);
    }
    laurent::expand_fraction(x.num(), x.den(), depth)
}

/// Exact decomposition of a finite point from its reduced fraction.
///
/// The zero point has zero leading coefficient and degree `-inf`.
pub fn decompose(x: &ProjPoint) -> Result<Decomposition> {
    if x.is_infinity() {
        return Err(Error::InfinityNotDecomposable);
    }
    let (quot, rem) = x.num().divmod(x.den())?;
    let den_deg = x.den().degree().finite().expect("finite point has nonzero denominator");
    let frac_degree = match rem.degree() {
        Degree::Finite(r) => Degree::Finite(r - den_deg),
        other => other,
    };
    Ok(Decomposition {
        poly_part: quot,
        frac_degree,
        leading: x.leading()?,
        degree: x.degree(),
    })
}
