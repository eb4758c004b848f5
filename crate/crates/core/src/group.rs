//! Elements of PGL2 over F_q[t] (and F_q(t)) as canonical polynomial
//! matrices, the generators iota, sigma_c and u_f, Möbius actions, and the
//! bijection between group elements and distinct triples.

use crate::algebra::{Degree, Field, FieldElem, LaurentPoly, Poly};
use crate::error::{Error, Result};
use crate::projective::{ProjPoint, Triple};

/// A class in PGL2(F_q(t)) represented by a primitive polynomial matrix
/// `[[a, b], [c, d]]`.
///
/// Canonical form: the four entries have no common factor and the first
/// nonzero entry in row-major order is monic. The class lies in
/// `Gamma = PGL2(F_q[t])` exactly when the canonical determinant is a
/// nonzero constant (see [`GammaElem::is_gamma`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GammaElem {
    entries: [Poly; 4],
}

impl GammaElem {
    /// Canonical class of `[[a, b], [c, d]]`.
    pub fn from_entries(a: Poly, b: Poly, c: Poly, d: Poly) -> Result<GammaElem> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(GammaElem::canonical([a, b, c, d]))
    }

    /// Canonical class of a matrix with Laurent polynomial entries (powers of
    /// `t` in denominators are cleared first).
    pub fn from_laurent_entries(entries: [LaurentPoly; 4]) -> Result<GammaElem> {
        let shift = entries.iter().filter_map(|e| e.low_exponent()).min().unwrap_or(0).min(0);
        let field = entries[0].field().clone();
        let scale = LaurentPoly::monomial(&field.one(), -shift);
        let [a, b, c, d] = entries.map(|e| (&e * &scale).as_fraction().0);
        GammaElem::from_entries(a, b, c, d)
    }

    fn canonical(entries: [Poly; 4]) -> GammaElem {
        let content = entries.iter().fold(Poly::zero(entries[0].field()), |g, e| g.gcd(e));
        let mut entries = if content.is_one() {
            entries
        } else {
            entries.map(|e| e.div_exact(&content).expect("content divides every entry"))
        };
        let lead = entries.iter().find(|e| !e.is_zero()).expect("nonsingular").lc_raw();
        if lead != 1 {
            let inv = entries[0].field().inv(lead);
            entries = entries.map(|e| e.scale_raw(inv));
        }
        GammaElem { entries }
    }

    pub fn identity(field: &Field) -> GammaElem {
        let (z, o) = (Poly::zero(field), Poly::one(field));
        GammaElem { entries: [o.clone(), z.clone(), z, o] }
    }

    /// The diagonal element `h = [[t, 0], [0, 1]]`.
    pub fn h(field: &Field) -> GammaElem {
        let (z, o) = (Poly::zero(field), Poly::one(field));
        GammaElem { entries: [Poly::t(field), z.clone(), z, o] }
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    /// Entries `[a, b, c, d]` of the canonical representative.
    pub fn entries(&self) -> &[Poly; 4] {
        &self.entries
    }

    pub fn det(&self) -> Poly {
        let [a, b, c, d] = &self.entries;
        &(a * d) - &(b * c)
    }

    /// Membership in PGL2(F_q[t]): unit determinant after content removal.
    pub fn is_gamma(&self) -> bool {
        self.det().is_unit()
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.entries;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    /// Largest entry degree of the canonical representative.
    pub fn max_entry_degree(&self) -> Degree {
        self.entries.iter().map(Poly::degree).max().unwrap()
    }

    pub fn compose(&self, other: &GammaElem) -> GammaElem {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        GammaElem::canonical([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }

    pub fn inverse(&self) -> GammaElem {
        let [a, b, c, d] = &self.entries;
        GammaElem::canonical([d.clone(), -b, -c, a.clone()])
    }

    /// Möbius action `x -> (a x + b) / (c x + d)`, computed on homogeneous
    /// coordinates so that infinity needs no special case.
    pub fn act_point(&self, x: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.entries;
        let (n, m) = (x.num(), x.den());
        ProjPoint::canonical(&(a * n) + &(b * m), &(c * n) + &(d * m))
    }

    pub fn act_triple(&self, t: &Triple) -> Triple {
        let [w1, w2, w3] = t.points();
        Triple::new_unchecked([self.act_point(w1), self.act_point(w2), self.act_point(w3)])
    }
}

impl std::fmt::Debug for GammaElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// The generators used to build words in Gamma.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    /// `[[0, 1], [1, 0]]`: `x -> 1/x`.
    Iota,
    /// `[[c, 0], [0, 1]]`: `x -> c x`, `c` a nonzero constant.
    Sigma(FieldElem),
    /// `u_f = [[1, f], [0, 1]]`: `x -> x + f`.
    Translate(Poly),
    /// `u_{-f}`: `x -> x - f`, kept separate so words print as `u:-f`.
    Untranslate(Poly),
}

impl Generator {
    pub fn sigma(c: FieldElem) -> Result<Generator> {
        if c.is_zero() {
            return Err(Error::InvalidGenerator("sigma requires a nonzero constant".into()));
        }
        Ok(Generator::Sigma(c))
    }

    pub fn matrix(&self, field: &Field) -> GammaElem {
        let (z, o) = (Poly::zero(field), Poly::one(field));
        let entries = match self {
            Generator::Iota => [z.clone(), o.clone(), o, z],
            Generator::Sigma(c) => [Poly::constant(c), z.clone(), z, o],
            Generator::Translate(f) => [o.clone(), f.clone(), z, o],
            Generator::Untranslate(f) => [o.clone(), -f, z, o],
        };
        GammaElem::canonical(entries)
    }
}

/// Matrix of a generator; rejects `sigma(0)`.
pub fn generator(kind: &Generator, field: &Field) -> Result<GammaElem> {
    if let Generator::Sigma(c) = kind {
        if c.is_zero() {
            return Err(Error::InvalidGenerator("sigma requires a nonzero constant".into()));
        }
    }
    Ok(kind.matrix(field))
}

/// A product of generators, leftmost factor applied last, with its cached
/// matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    tokens: Vec<Generator>,
    product: GammaElem,
}

impl Word {
    pub fn identity(field: &Field) -> Word {
        Word { tokens: Vec::new(), product: GammaElem::identity(field) }
    }

    pub fn from_tokens(field: &Field, tokens: Vec<Generator>) -> Result<Word> {
        let mut product = GammaElem::identity(field);
        for tok in &tokens {
            product = product.compose(&generator(tok, field)?);
        }
        Ok(Word { tokens, product })
    }

    /// Tokens in product order: the word is `tokens[0] * tokens[1] * ...`.
    pub fn tokens(&self) -> &[Generator] {
        &self.tokens
    }

    pub fn matrix(&self) -> &GammaElem {
        &self.product
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Post-compose with `g` (i.e. `g` acts after the current word).
    pub(crate) fn push_outer(&mut self, g: Generator) {
        let m = g.matrix(self.product.field());
        self.product = m.compose(&self.product);
        self.tokens.insert(0, g);
    }
}

/// The element `M` with `M (0, 1, inf) = T`.
///
/// With homogeneous coordinates `v_i` of the three points the columns are
/// `det(v2, v1) v3` and `det(v3, v2) v1`; for finite points this is
/// `[[w3 (w2 - w1), w1 (w3 - w2)], [w2 - w1, w3 - w2]]` with denominators
/// cleared. The result lies in PGL2(F_q(t)) and need not be in Gamma.
pub fn phi_inverse(t: &Triple) -> GammaElem {
    let [w1, w2, w3] = t.points();
    let det = |u: &ProjPoint, v: &ProjPoint| &(u.num() * v.den()) - &(u.den() * v.num());
    let l3 = det(w2, w1);
    let l1 = det(w3, w2);
    GammaElem::canonical([&l3 * w3.num(), &l1 * w1.num(), &l3 * w3.den(), &l1 * w1.den()])
}

/// `g (0, 1, inf)`.
pub fn phi(g: &GammaElem) -> Triple {
    g.act_triple(&Triple::standard(g.field()))
}
