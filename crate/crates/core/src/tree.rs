//! The Bruhat-Tits tree of PGL2 over F_q((1/t)).
//!
//! A vertex is a pair `(n, f)` with `f` a Laurent polynomial whose exponents
//! are all `>= n + 1`; it stands for the lattice class of
//! `[[t^n, f], [0, 1]]`. The parent of `(n, f)` is `(n + 1, f)` with its
//! `t^(n+1)` term dropped and its children are `(n - 1, f + c t^n)`. Ends
//! other than infinity are points of F_q((1/t)); the ray from infinity to
//! `w` passes through `(n, w truncated below t^(n+1))` at every level `n`.

use std::collections::HashSet;

use crate::algebra::{self, Degree, Field, LaurentPoly};
use crate::domain::reduce;
use crate::error::{Error, Result};
use crate::group::GammaElem;
use crate::projective::{ProjPoint, Triple};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    level: i64,
    offset: LaurentPoly,
}

impl Vertex {
    pub fn new(level: i64, offset: LaurentPoly) -> Result<Vertex> {
        match offset.low_exponent() {
            Some(e) if e <= level => Err(Error::InvalidVertex(format!(
                "offset has a term t^{e} but level {level} requires exponents >= {}",
                level + 1
            ))),
            _ => Ok(Vertex { level, offset }),
        }
    }

    /// The standard vertex `o = (0, 0)`.
    pub fn origin(field: &Field) -> Vertex {
        Vertex::apartment(field, 0)
    }

    /// `x_i = (i, 0)`, on the geodesic from 0 to infinity.
    pub fn apartment(field: &Field, i: i64) -> Vertex {
        Vertex { level: i, offset: LaurentPoly::zero(field) }
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn offset(&self) -> &LaurentPoly {
        &self.offset
    }

    pub fn field(&self) -> &Field {
        self.offset.field()
    }

    pub fn parent(&self) -> Vertex {
        Vertex { level: self.level + 1, offset: self.offset.truncate_below(self.level + 2) }
    }

    /// The `q` children, ordered by the encoding of the new coefficient.
    pub fn children(&self) -> Vec<Vertex> {
        let f = self.field();
        f.elements()
            .map(|c| Vertex {
                level: self.level - 1,
                offset: &self.offset + &LaurentPoly::monomial(&c, self.level),
            })
            .collect()
    }

    /// Parent first, then the children.
    pub fn neighbors(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.field().q() as usize + 1);
        out.push(self.parent());
        out.extend(self.children());
        out
    }

    /// Ancestor at level `m >= self.level`.
    pub fn ancestor(&self, m: i64) -> Vertex {
        debug_assert!(m >= self.level);
        Vertex { level: m, offset: self.offset.truncate_below(m + 1) }
    }
}

impl std::fmt::Debug for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Level at which the two vertices' ancestor chains merge.
fn meeting_level(v: &Vertex, w: &Vertex) -> i64 {
    let diff = &v.offset - &w.offset;
    let e = diff.degree().finite().unwrap_or(i64::MIN);
    v.level.max(w.level).max(e)
}

pub fn distance(v: &Vertex, w: &Vertex) -> u64 {
    let m = meeting_level(v, w);
    ((m - v.level) + (m - w.level)) as u64
}

/// The vertices of the path from `v` to `w`, both included.
pub fn path(v: &Vertex, w: &Vertex) -> Vec<Vertex> {
    let m = meeting_level(v, w);
    let mut out: Vec<Vertex> = (v.level..=m).map(|k| v.ancestor(k)).collect();
    let down: Vec<Vertex> = (w.level..m).map(|k| w.ancestor(k)).collect();
    out.extend(down.into_iter().rev());
    out
}

/// The vertex at level `n` on the ray from infinity to the finite end `w`.
pub fn end_truncation(w: &ProjPoint, n: i64) -> Result<Vertex> {
    if w.is_infinity() {
        return Err(Error::InfinityNotExpandable);
    }
    let field = w.field();
    let offset = match w.degree() {
        Degree::Finite(d) if d > n => {
            let exp = algebra::laurent_expand(w, (d - n) as usize)?;
            exp.to_laurent_poly().truncate_below(n + 1)
        }
        _ => LaurentPoly::zero(field),
    };
    Ok(Vertex { level: n, offset })
}

fn sep(a: &ProjPoint, b: &ProjPoint) -> Degree {
    a.separation(b)
}

/// The median of three ends: the vertex where the geodesic between the
/// closest pair meets the path to the third end.
pub fn tripod_center(t: &Triple) -> Vertex {
    let [w1, w2, w3] = t.points();
    let pairs = [(sep(w1, w2), w1), (sep(w1, w3), w1), (sep(w2, w3), w2)];
    let (level, end) = pairs.iter().min_by_key(|(d, _)| *d).unwrap();
    let level = level.finite().expect("distinct ends separate at a finite level");
    end_truncation(end, level).expect("the closest pair has finite ends")
}

/// A bi-infinite geodesic from `w1` to `w3` with a marked vertex `l(0)`.
/// Indices increase toward `w3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamGeodesic {
    w1: ProjPoint,
    w3: ProjPoint,
    anchor: Vertex,
    /// Position of the anchor in the intrinsic coordinate of the geodesic.
    base: i64,
}

impl ParamGeodesic {
    pub fn new(w1: ProjPoint, w3: ProjPoint, anchor: Vertex) -> Result<ParamGeodesic> {
        if w1 == w3 {
            return Err(Error::DistinctnessViolated(1, 3));
        }
        let mut g = ParamGeodesic { w1, w3, anchor, base: 0 };
        g.base = g.position(&g.anchor).ok_or(Error::AnchorOffGeodesic)?;
        Ok(g)
    }

    pub fn w1(&self) -> &ProjPoint {
        &self.w1
    }

    pub fn w3(&self) -> &ProjPoint {
        &self.w3
    }

    pub fn anchor(&self) -> &Vertex {
        &self.anchor
    }

    // Intrinsic coordinate: with both ends finite the apex (level
    // deg(w1 - w3)) sits at 0; with w3 = inf it is the level, with w1 = inf
    // minus the level.
    fn at_position(&self, s: i64) -> Vertex {
        let trunc = |w: &ProjPoint, n: i64| end_truncation(w, n).expect("finite end");
        if self.w3.is_infinity() {
            trunc(&self.w1, s)
        } else if self.w1.is_infinity() {
            trunc(&self.w3, -s)
        } else {
            let apex = sep(&self.w1, &self.w3).finite().unwrap();
            if s <= 0 {
                trunc(&self.w1, apex + s)
            } else {
                trunc(&self.w3, apex - s)
            }
        }
    }

    fn position(&self, v: &Vertex) -> Option<i64> {
        let k = v.level;
        let on = |w: &ProjPoint| end_truncation(w, k).map(|u| u == *v).unwrap_or(false);
        if self.w3.is_infinity() {
            on(&self.w1).then_some(k)
        } else if self.w1.is_infinity() {
            on(&self.w3).then_some(-k)
        } else {
            let apex = sep(&self.w1, &self.w3).finite().unwrap();
            if k > apex {
                None
            } else if on(&self.w1) {
                Some(k - apex)
            } else if on(&self.w3) {
                Some(apex - k)
            } else {
                None
            }
        }
    }

    /// True if `v` lies on the unparametrized geodesic.
    pub fn contains(&self, v: &Vertex) -> bool {
        self.position(v).is_some()
    }

    /// `l(n)`.
    pub fn vertex_at(&self, n: i64) -> Vertex {
        self.at_position(self.base + n)
    }

    /// The geodesic `n -> l(n + k)`.
    pub fn flow_shift(&self, k: i64) -> ParamGeodesic {
        ParamGeodesic { w1: self.w1.clone(), w3: self.w3.clone(), anchor: self.vertex_at(k), base: self.base + k }
    }
}

/// The parametrized geodesic from `w1` to `w3` anchored at the tripod
/// center of `t`.
pub fn theta(t: &Triple) -> ParamGeodesic {
    ParamGeodesic::new(t.w1().clone(), t.w3().clone(), tripod_center(t)).expect("tripod center lies on (w1 w3)")
}

/// A triple whose tripod center is `v`: `(f, f + t^n, inf)`.
pub fn witness_triple(v: &Vertex) -> Triple {
    let f = ProjPoint::from_laurent(v.offset());
    let g = ProjPoint::from_laurent(&(v.offset() + &LaurentPoly::monomial_raw(v.field(), 1, v.level)));
    Triple::new(f, g, ProjPoint::infinity(v.field())).expect("distinct")
}

/// Image of a vertex under a group element.
pub fn act_vertex(g: &GammaElem, v: &Vertex) -> Vertex {
    tripod_center(&g.act_triple(&witness_triple(v)))
}

/// The index `i >= 0` with `v` in the orbit of `x_i`.
///
/// Computed as the absolute level of the tripod center of the canonical
/// representative of a triple centered at `v`.
pub fn vertex_class(v: &Vertex) -> Result<u64> {
    let r = reduce(&witness_triple(v))?;
    Ok(tripod_center(&r.reduced).level.unsigned_abs())
}

/// All vertices within distance `r` of `center`, in BFS order.
pub fn ball(center: &Vertex, r: u64) -> Vec<Vertex> {
    let mut seen: HashSet<Vertex> = HashSet::from([center.clone()]);
    let mut out = vec![center.clone()];
    let mut frontier = vec![center.clone()];
    for _ in 0..r {
        let mut next = Vec::new();
        for v in &frontier {
            for w in v.neighbors() {
                if seen.insert(w.clone()) {
                    next.push(w.clone());
                    out.push(w);
                }
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::varphi_h;
    use crate::oracle;
    use crate::text::{parse_point, parse_triple, parse_vertex};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn v(field: &Field, s: &str) -> Vertex {
        parse_vertex(field, s).unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let f2 = f(2);
        let o = Vertex::origin(&f2);
        assert_eq!(o.neighbors(), vec![v(&f2, "(1; 0)"), v(&f2, "(-1; 0)"), v(&f2, "(-1; 1)")]);
        let f3 = f(3);
        let n = Vertex::origin(&f3).neighbors();
        assert_eq!(n.len(), 4);
        assert_eq!(n[3], v(&f3, "(-1; 2)"));
        assert_eq!(v(&f2, "(-1; 1)").parent(), o);
        for w in v(&f3, "(-2; t^-1+t)").neighbors() {
            assert_eq!(distance(&w, &v(&f3, "(-2; t^-1+t)")), 1);
        }
    }

    #[test]
    fn distance_examples() {
        let f2 = f(2);
        assert_eq!(distance(&v(&f2, "(0; 0)"), &v(&f2, "(2; 0)")), 2);
        assert_eq!(distance(&v(&f2, "(-1; 1)"), &v(&f2, "(1; 0)")), 2);
        let x = v(&f2, "(-3; t^-2+t)");
        assert_eq!(distance(&x, &x), 0);
        let p = path(&v(&f2, "(-1; 1)"), &v(&f2, "(-2; t^-1)"));
        assert_eq!(p.len() as u64, distance(&v(&f2, "(-1; 1)"), &v(&f2, "(-2; t^-1)")) + 1);
        for w in p.windows(2) {
            assert_eq!(distance(&w[0], &w[1]), 1);
        }
    }

    #[test]
    fn truncation_examples() {
        let f3 = f(3);
        let p = |s: &str| parse_point(&f3, s).unwrap();
        assert_eq!(end_truncation(&p("t^-3"), -1).unwrap(), v(&f3, "(-1; 0)"));
        assert_eq!(end_truncation(&p("t^3"), 1).unwrap(), v(&f3, "(1; t^3)"));
        assert_eq!(end_truncation(&p("0"), 5).unwrap(), v(&f3, "(5; 0)"));
        assert_eq!(end_truncation(&p("t^2/(t^2+1)"), -3).unwrap(), v(&f3, "(-3; 1+2t^-2)"));
        assert_eq!(end_truncation(&p("inf"), 0), Err(Error::InfinityNotExpandable));
    }

    #[test]
    fn tripod_examples() {
        let f3 = f(3);
        let t = |s: &str| parse_triple(&f3, s).unwrap();
        assert_eq!(tripod_center(&t("(t^-3, t^-1, t^3)")), v(&f3, "(-1; 0)"));
        assert_eq!(tripod_center(&t("(t^-1, 2t^-1, t)")), v(&f3, "(-1; 0)"));
        assert_eq!(tripod_center(&Triple::standard(&f3)), Vertex::origin(&f3));
    }

    #[test]
    fn geodesic_examples() {
        let f3 = f(3);
        let l = theta(&Triple::standard(&f3));
        for n in -5..=5 {
            assert_eq!(l.vertex_at(n), Vertex::apartment(&f3, n));
        }
        let l = theta(&parse_triple(&f3, "(t^-3, t^-1, t^3)").unwrap());
        assert_eq!(l.vertex_at(0), v(&f3, "(-1; 0)"));
        assert_eq!(l.vertex_at(1), v(&f3, "(0; 0)"));
        assert_eq!(l.vertex_at(-2), v(&f3, "(-3; 0)"));
        assert_eq!(l.vertex_at(5), v(&f3, "(2; t^3)"));
        assert_eq!(theta(&Triple::standard(&f3)).flow_shift(1).anchor(), &v(&f3, "(1; 0)"));
        let bad = ParamGeodesic::new(ProjPoint::zero(&f3), ProjPoint::infinity(&f3), v(&f3, "(0; t)"));
        assert_eq!(bad, Err(Error::AnchorOffGeodesic));
    }

    #[test]
    fn vertex_class_examples() {
        let f3 = f(3);
        assert_eq!(vertex_class(&Vertex::origin(&f3)).unwrap(), 0);
        assert_eq!(vertex_class(&v(&f3, "(-2; 0)")).unwrap(), 2);
        assert_eq!(vertex_class(&v(&f3, "(3; 0)")).unwrap(), 3);
        for i in -4..=4 {
            assert_eq!(vertex_class(&Vertex::apartment(&f3, i)).unwrap(), i.unsigned_abs());
        }
    }

    #[test]
    fn act_vertex_is_an_isometry() {
        let f2 = f(2);
        let gball = oracle::enumerate_gamma_ball(&f2, 1).unwrap();
        let vs = ball(&Vertex::origin(&f2), 2);
        for g in gball.elements().iter().take(40) {
            for a in &vs {
                for b in &vs {
                    assert_eq!(distance(&act_vertex(g, a), &act_vertex(g, b)), distance(a, b));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn tripod_laws(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
            let field = f(p);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = oracle::random_triple(&field, 4, &mut rng);
            let [w1, w2, w3] = t.points();
            let mut d = [sep(w1, w2), sep(w1, w3), sep(w2, w3)];
            d.sort();
            prop_assert_eq!(d[1], d[2]);
            let c = tripod_center(&t);
            for (a, b) in [(w1, w3), (w1, w2), (w2, w3)] {
                let g = ParamGeodesic::new(a.clone(), b.clone(), c.clone());
                prop_assert!(g.is_ok());
            }
            let l = theta(&t);
            prop_assert_eq!(tripod_center(&varphi_h(&t)), l.vertex_at(1));
            prop_assert_eq!(distance(&l.vertex_at(-3), &l.vertex_at(4)), 7);
            prop_assert_eq!(l.flow_shift(2).vertex_at(-1), l.vertex_at(1));
        }

        #[test]
        fn distance_is_path_length(seed in any::<u64>()) {
            let field = f(3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = oracle::random_triple(&field, 3, &mut rng);
            let a = tripod_center(&t);
            let b = theta(&t).vertex_at(3).children().pop().unwrap();
            let p = path(&a, &b);
            prop_assert_eq!(p.len() as u64, distance(&a, &b) + 1);
            for w in p.windows(2) {
                prop_assert!(w[0].neighbors().contains(&w[1]));
            }
        }
    }
}
