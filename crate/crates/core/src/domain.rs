//! The fundamental domain for PGL2(F_q[t]) acting on distinct boundary
//! triples: membership predicates, continued-fraction reduction and orbit
//! equivalence.
//!
//! The domain is `S = S0 ∩ S1 ∩ (S2 ∪ S3)` where
//!
//! * `S0`: the leading coefficient of `w2` is 1,
//! * `S1`: `deg w1 < 0 < deg w3`,
//! * `S2`: `deg w1 != deg w2 < deg w3`,
//! * `S3`: `deg w1 = deg w2 = deg(w1 - w2)`.
//!
//! Orbits in which `w2` sits at the cusp of the tripod center (for instance
//! `(1/t, 0, t)`) contain no point of `S`: every triple in them with
//! `S1 ∩ (S2 ∪ S3)` has `w2 = 0`, so `S0` cannot be arranged. For those
//! orbits the canonical representative is the unique triple with
//! `w2 = 0`, `S1`, and monic leading term of `w1`. [`MembershipMask::cusp`]
//! flags that normalization and [`MembershipMask::in_domain`] accepts both.

use crate::algebra::{Degree, Poly};
use crate::error::{Error, Result};
use crate::group::{GammaElem, Generator, Word};
use crate::projective::{cf_length, ProjPoint, Triple};

/// The four defining predicates of `S`, plus the cusp normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MembershipMask {
    pub s0: bool,
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    /// `w2 = 0`, `S1` holds and `w1` has leading coefficient 1.
    pub cusp: bool,
}

impl MembershipMask {
    /// `S0 ∧ S1 ∧ (S2 ∨ S3)`.
    pub fn in_s(&self) -> bool {
        self.s0 && self.s1 && (self.s2 || self.s3)
    }

    /// In `S` or cusp-normalized: the set of canonical representatives.
    pub fn in_domain(&self) -> bool {
        self.in_s() || self.cusp
    }
}

fn leading_is_one(x: &ProjPoint) -> bool {
    !x.is_infinity() && x.num().lc_raw() == 1 && !x.is_zero()
}

fn s1(t: &Triple) -> bool {
    t.w1().degree() < Degree::Finite(0) && Degree::Finite(0) < t.w3().degree()
}

fn s2(t: &Triple) -> bool {
    let d2 = t.w2().degree();
    t.w1().degree() != d2 && d2 < t.w3().degree()
}

fn s3(t: &Triple) -> bool {
    let (w1, w2) = (t.w1(), t.w2());
    if w1.is_infinity() || w2.is_infinity() {
        return false;
    }
    let d1 = w1.degree();
    d1 == w2.degree() && Ok(d1) == w1.diff_degree(w2)
}

pub fn membership(t: &Triple) -> MembershipMask {
    let s1 = s1(t);
    MembershipMask {
        s0: leading_is_one(t.w2()),
        s1,
        s2: s2(t),
        s3: s3(t),
        cusp: s1 && t.w2().is_zero() && leading_is_one(t.w1()),
    }
}

/// Output of [`reduce`]: `gamma · input = reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub gamma: Word,
    pub reduced: Triple,
    pub steps: usize,
}

struct Reducer {
    word: Word,
    cur: Triple,
    moves: usize,
    cap: usize,
}

impl Reducer {
    fn apply(&mut self, g: Generator) -> Result<()> {
        self.moves += 1;
        if self.moves > self.cap {
            return Err(Error::ReductionDiverged { cap: self.cap });
        }
        let field = self.cur.field().clone();
        self.cur = g.matrix(&field).act_triple(&self.cur);
        self.word.push_outer(g);
        Ok(())
    }

    fn w(&self, i: usize) -> &ProjPoint {
        &self.cur.points()[i]
    }

    /// Subtract the polynomial part `a` (no-op when zero).
    fn subtract(&mut self, a: Poly) -> Result<()> {
        if a.is_zero() {
            return Ok(());
        }
        self.apply(Generator::Untranslate(a))
    }

    /// Bring `w1` to `deg w1 < 0` (or `w1 = 0`).
    fn normalize_w1(&mut self) -> Result<()> {
        if self.w(0).is_infinity() {
            self.apply(Generator::Iota)?;
        }
        let a = self.w(0).poly_part()?;
        self.subtract(a)
    }

    fn run(&mut self) -> Result<()> {
        loop {
            self.normalize_w1()?;
            // Now deg w1 < 0; push w3 to positive degree.
            if self.w(2).degree() <= Degree::Finite(0) {
                let e = self.w(2).poly_part()?;
                if !e.is_zero() {
                    self.subtract(e)?;
                    self.apply(Generator::Iota)?;
                } else if self.w(0).is_zero() {
                    self.apply(Generator::Iota)?;
                    let a = self.w(2).poly_part()?;
                    self.subtract(a)?;
                    self.apply(Generator::Iota)?;
                } else {
                    self.apply(Generator::Iota)?;
                }
                continue;
            }
            let m = membership(&self.cur);
            debug_assert!(m.s1);
            if m.s2 || m.s3 {
                return Ok(());
            }
            if self.w(1).degree() >= self.w(2).degree() {
                let c0 = self.w(2).poly_part()?;
                self.subtract(c0)?;
                self.apply(Generator::Iota)?;
            } else {
                // deg w1 = deg w2 with cancelling leading terms
                self.apply(Generator::Iota)?;
            }
        }
    }

    /// Final scaling so that `w2` (or `w1` at a cusp) has leading term 1.
    fn scale(&mut self) -> Result<()> {
        let pivot = if self.w(1).is_zero() { self.w(0) } else { self.w(1) };
        let c = pivot.leading()?.inv()?;
        if !c.is_one() {
            self.apply(Generator::Sigma(c))?;
        }
        Ok(())
    }
}

/// Iteration cap for [`reduce`] on `t`.
pub fn reduction_cap(t: &Triple) -> usize {
    4 * t.points().iter().map(cf_length).sum::<usize>() + 16
}

/// Canonical representative of the orbit of `t` together with the element
/// of Gamma that reaches it.
///
/// The word is built by continued-fraction moves: `iota`, translations by
/// the negated polynomial part, and a final `sigma`. The result satisfies
/// `membership(reduced).in_domain()`, and `in_s()` unless the orbit is
/// cuspidal.
pub fn reduce(t: &Triple) -> Result<ReductionResult> {
    let mut r = Reducer { word: Word::identity(t.field()), cur: t.clone(), moves: 0, cap: reduction_cap(t) };
    r.run()?;
    r.scale()?;
    debug_assert_eq!(r.word.matrix().act_triple(t), r.cur);
    Ok(ReductionResult { steps: r.word.len(), gamma: r.word, reduced: r.cur })
}

/// An element `g` with `g · t1 = t2`, if the triples lie in one orbit.
pub fn orbit_equivalent(t1: &Triple, t2: &Triple) -> Result<Option<GammaElem>> {
    let r1 = reduce(t1)?;
    let r2 = reduce(t2)?;
    if r1.reduced != r2.reduced {
        return Ok(None);
    }
    let g = r2.gamma.matrix().inverse().compose(r1.gamma.matrix());
    debug_assert!(g.is_gamma());
    if g.act_triple(t1) != *t2 {
        return Ok(None);
    }
    Ok(Some(g))
}
