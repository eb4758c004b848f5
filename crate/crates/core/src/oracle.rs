//! Brute-force machinery for cross-checking the main algorithms: exhaustive
//! windows into Gamma, materialized tree balls, search-based reduction,
//! random sampling and the rational formula for `varphi_h`.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Poly};
use crate::domain::membership;
use crate::error::{Error, Result};
use crate::group::{GammaElem, Generator};
use crate::projective::{ProjPoint, Triple};
use crate::tree::Vertex;

/// Upper bound on the number of raw coefficient tuples enumerated.
pub const MAX_RAW_TUPLES: u64 = 1 << 21;

/// All elements of Gamma whose canonical entries have degree `<= D`.
#[derive(Clone, Debug)]
pub struct GammaBall {
    degree: u32,
    elements: Vec<GammaElem>,
}

impl GammaBall {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn elements(&self) -> &[GammaElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn decode_poly(field: &Field, mut idx: u64, len: usize) -> (Poly, u64) {
    let q = field.q() as u64;
    let mut c = Vec::with_capacity(len);
    for _ in 0..len {
        c.push(field.elem((idx % q) as u32));
        idx /= q;
    }
    (Poly::new(field, &c).expect("coefficients from the field"), idx)
}

/// Enumerate every `[[a, b], [c, d]]` with entry degrees `<= D` and unit
/// determinant, deduplicated in PGL2.
pub fn enumerate_gamma_ball(field: &Field, d: u32) -> Result<GammaBall> {
    let q = field.q() as u64;
    let len = d as usize + 1;
    let total = q
        .checked_pow(4 * len as u32)
        .filter(|&n| n <= MAX_RAW_TUPLES)
        .ok_or_else(|| Error::BallTooLarge(format!("q = {q}, D = {d} needs q^{} raw tuples", 4 * len)))?;
    let set: HashSet<GammaElem> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let (a, idx) = decode_poly(field, idx, len);
            let (b, idx) = decode_poly(field, idx, len);
            let (c, idx) = decode_poly(field, idx, len);
            let (dd, _) = decode_poly(field, idx, len);
            let det = &(&a * &dd) - &(&b * &c);
            if !det.is_unit() {
                return None;
            }
            GammaElem::from_entries(a, b, c, dd).ok()
        })
        .collect();
    let mut elements: Vec<GammaElem> = set.into_iter().collect();
    elements.sort_by_cached_key(|g| g.to_string());
    Ok(GammaBall { degree: d, elements })
}

/// Every `g` in the ball with `g · t` in the fundamental domain `S`.
pub fn reduce_bruteforce(t: &Triple, ball: &GammaBall) -> Vec<(GammaElem, Triple)> {
    reduce_bruteforce_by(t, ball, |x| membership(x).in_s())
}

/// As [`reduce_bruteforce`] with an arbitrary target predicate.
pub fn reduce_bruteforce_by(
    t: &Triple,
    ball: &GammaBall,
    accept: impl Fn(&Triple) -> bool + Sync,
) -> Vec<(GammaElem, Triple)> {
    ball.elements
        .par_iter()
        .filter_map(|g| {
            let img = g.act_triple(t);
            accept(&img).then(|| (g.clone(), img))
        })
        .collect()
}

/// A ball in the tree materialized by breadth-first search.
#[derive(Clone, Debug)]
pub struct TreeBall {
    center: Vertex,
    radius: u64,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl TreeBall {
    pub fn center(&self) -> &Vertex {
        &self.center
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// In-ball neighbors of a vertex.
    pub fn adjacent(&self, v: &Vertex) -> Result<Vec<&Vertex>> {
        let i = *self.index.get(v).ok_or(Error::OutOfBall)?;
        Ok(self.adjacency[i].iter().map(|&j| &self.vertices[j]).collect())
    }

    /// Distance from the center, as recorded during the search.
    pub fn depth(&self, v: &Vertex) -> Result<u64> {
        bfs_distance(self, &self.center, v)
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }
}

pub fn bfs_ball(center: &Vertex, r: u64) -> TreeBall {
    let mut vertices = vec![center.clone()];
    let mut index = HashMap::from([(center.clone(), 0usize)]);
    let mut depth = vec![0u64];
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if depth[i] == r {
            continue;
        }
        for w in vertices[i].neighbors() {
            let j = match index.get(&w) {
                Some(&j) => j,
                None => {
                    let j = vertices.len();
                    index.insert(w.clone(), j);
                    vertices.push(w);
                    depth.push(depth[i] + 1);
                    adjacency.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            if !adjacency[i].contains(&j) {
                adjacency[i].push(j);
            }
            if !adjacency[j].contains(&i) {
                adjacency[j].push(i);
            }
        }
    }
    TreeBall { center: center.clone(), radius: r, vertices, index, adjacency }
}

/// Shortest-path length inside the materialized ball.
pub fn bfs_distance(ball: &TreeBall, v: &Vertex, w: &Vertex) -> Result<u64> {
    let s = *ball.index.get(v).ok_or(Error::OutOfBall)?;
    let goal = *ball.index.get(w).ok_or(Error::OutOfBall)?;
    let mut dist = vec![u64::MAX; ball.vertices.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(i) = queue.pop_front() {
        if i == goal {
            return Ok(dist[i]);
        }
        for &j in &ball.adjacency[i] {
            if dist[j] == u64::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    Err(Error::OutOfBall)
}

/// A random polynomial with degree `<= max_deg`, uniform over coefficients.
pub fn random_poly<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> Poly {
    let c: Vec<_> = (0..=max_deg).map(|_| field.elem(rng.gen_range(0..field.q()))).collect();
    Poly::new(field, &c).expect("coefficients from the field")
}

/// A random point `num/den` with both parts of degree `<= max_deg`
/// (infinity when `den = 0`).
pub fn random_point<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> ProjPoint {
    loop {
        let num = random_poly(field, max_deg, rng);
        let den = random_poly(field, max_deg, rng);
        if let Ok(p) = ProjPoint::new(num, den) {
            return p;
        }
    }
}

pub fn random_triple<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> Triple {
    loop {
        let pts = [0; 3].map(|_| random_point(field, max_deg, rng));
        let [a, b, c] = pts;
        if let Ok(t) = Triple::new(a, b, c) {
            return t;
        }
    }
}

/// A random product of `len` generators with translation degrees
/// `<= max_deg`.
pub fn random_gamma_word<R: Rng + ?Sized>(field: &Field, len: usize, max_deg: usize, rng: &mut R) -> GammaElem {
    let mut g = GammaElem::identity(field);
    for _ in 0..len {
        let gen = match rng.gen_range(0..3) {
            0 => Generator::Iota,
            1 => Generator::Sigma(field.elem(rng.gen_range(1..field.q()))),
            _ => Generator::Translate(random_poly(field, max_deg, rng)),
        };
        g = gen.matrix(field).compose(&g);
    }
    g
}

/// `varphi_h` from the rational formula
/// `w2' = ((w2 - w1) w3 t + (w3 - w2) w1) / ((w2 - w1) t + w3 - w2)`,
/// with its limits when one point is infinity:
/// `w3 = inf` gives `(w2 - w1) t + w1`, `w2 = inf` gives
/// `(w3 t - w1) / (t - 1)` and `w1 = inf` gives `w3 - (w3 - w2) / t`.
pub fn varphi_h_formula(t: &Triple) -> Triple {
    let [w1, w2, w3] = t.points();
    let field = t.field();
    let tt = ProjPoint::from_poly(Poly::t(field));
    let one = ProjPoint::one(field);
    let ok = |r: Result<ProjPoint>| r.expect("finite operands");
    // a / b on the projective line, b = 0 giving infinity
    let quotient = |a: &ProjPoint, b: &ProjPoint| {
        ProjPoint::new(a.num() * b.den(), a.den() * b.num()).expect("a and b are not both zero")
    };
    let w2p = if w3.is_infinity() {
        ok(ok(ok(w2.checked_sub(w1)).checked_mul(&tt)).checked_add(w1))
    } else if w2.is_infinity() {
        let num = ok(ok(w3.checked_mul(&tt)).checked_sub(w1));
        quotient(&num, &ok(tt.checked_sub(&one)))
    } else if w1.is_infinity() {
        ok(w3.checked_sub(&ok(ok(w3.checked_sub(w2)).checked_div(&tt))))
    } else {
        let d21 = ok(w2.checked_sub(w1));
        let d32 = ok(w3.checked_sub(w2));
        let num = ok(ok(ok(d21.checked_mul(w3)).checked_mul(&tt)).checked_add(&ok(d32.checked_mul(w1))));
        let den = ok(ok(d21.checked_mul(&tt)).checked_add(&d32));
        quotient(&num, &den)
    };
    Triple::new(w1.clone(), w2p, w3.clone()).expect("varphi_h preserves distinctness")
}

/// One line of a corpus file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub q: u32,
    pub triple: [String; 3],
}

impl CorpusEntry {
    pub fn new(t: &Triple) -> CorpusEntry {
        CorpusEntry { q: t.field().q(), triple: t.points().clone().map(|p| p.to_string()) }
    }
}
