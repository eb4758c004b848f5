//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use fqt_domain::oracle::{self, bfs_ball, bfs_distance, enumerate_gamma_ball, random_triple, varphi_h_formula};
use fqt_domain::text::{parse_matrix, parse_point, parse_triple, parse_vertex, parse_word};
use fqt_domain::tree::{act_vertex, distance, end_truncation, theta, tripod_center, vertex_class};
use fqt_domain::{
    membership, psi_h, reduce, varphi_h, Degree, Field, GammaElem, Generator, LaurentPoly, Poly, ProjPoint, Triple,
    Vertex, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn f(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn all_polys(field: &Field, max_deg: usize) -> Vec<Poly> {
    let q = field.q() as usize;
    (0..q.pow(max_deg as u32 + 1))
        .map(|mut idx| {
            let c: Vec<_> = (0..=max_deg)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    field.elem(d as u32)
                })
                .collect();
            Poly::new(field, &c).unwrap()
        })
        .collect()
}

fn c1_cf_round_trip() -> Verdict {
    let mut checked = 0usize;
    let mut bad = 0usize;
    for p in [2, 3] {
        let field = f(p);
        let polys = all_polys(&field, 3);
        for num in &polys {
            for den in polys.iter().filter(|d| !d.is_zero()) {
                let x = ProjPoint::new(num.clone(), den.clone()).unwrap();
                let cf = x.cf_expand().unwrap();
                checked += 1;
                let nonconst = cf.quotients().iter().skip(1).all(|a| a.degree() >= Degree::Finite(1));
                if cf.assemble() != x || !nonconst {
                    bad += 1;
                }
            }
        }
    }
    verdict(bad == 0, format!("{checked} fractions over F2, F3; {bad} failures"))
}

fn c2_soundness() -> Verdict {
    let mut lines = Vec::new();
    let mut all_sound = true;
    let mut all_in_s = true;
    for p in [2u32, 3, 5] {
        let field = f(p);
        let triples: Vec<Triple> = {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC2 + p as u64);
            (0..10_000).map(|_| random_triple(&field, 4, &mut rng)).collect()
        };
        let results: Vec<(bool, bool, bool)> = triples
            .par_iter()
            .map(|t| match reduce(t) {
                Ok(r) => {
                    let m = membership(&r.reduced);
                    let sound = r.gamma.matrix().is_gamma() && r.gamma.matrix().act_triple(t) == r.reduced;
                    (sound, m.in_s(), m.cusp)
                }
                Err(_) => (false, false, false),
            })
            .collect();
        let sound = results.iter().filter(|r| r.0).count();
        let in_s = results.iter().filter(|r| r.0 && r.1).count();
        let cusp = results.iter().filter(|r| r.0 && !r.1 && r.2).count();
        all_sound &= sound == results.len();
        all_in_s &= in_s == results.len();
        lines.push(format!("q={p}: terminated+sound {sound}/10000, in_S {in_s}, cusp-normalized {cusp}"));
    }
    verdict(all_sound && all_in_s, lines.join("; "))
}

fn c3_canonicality() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let field = f(p);
        let ball = enumerate_gamma_ball(&field, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC3 + p as u64);
        let triples: Vec<Triple> = (0..1000).map(|_| random_triple(&field, 4, &mut rng)).collect();
        let gammas: Vec<GammaElem> =
            (0..100).map(|_| ball.elements()[rng.gen_range(0..ball.len())].clone()).collect();
        let mismatches: usize = triples
            .par_iter()
            .map(|t| {
                let canon = reduce(t).unwrap().reduced;
                gammas.iter().filter(|g| reduce(&g.act_triple(t)).unwrap().reduced != canon).count()
            })
            .sum();
        ok &= mismatches == 0;
        lines.push(format!("q={p}: ball size {}, 100000 pairs, {mismatches} mismatches", ball.len()));
    }
    verdict(ok, lines.join("; "))
}

fn c4_uniqueness_window() -> Verdict {
    let field = f(2);
    let ball = enumerate_gamma_ball(&field, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let reduced: Vec<Triple> = (0..200).map(|_| reduce(&random_triple(&field, 4, &mut rng)).unwrap().reduced).collect();
    let mut into_s = 0usize;
    let mut into_domain = 0usize;
    for r in &reduced {
        for g in ball.elements().iter().filter(|g| !g.is_identity()) {
            let m = membership(&g.act_triple(r));
            into_s += m.in_s() as usize;
            into_domain += m.in_domain() as usize;
        }
    }
    verdict(
        into_s == 0 && into_domain == 0,
        format!(
            "{} non-identity elements x 200 reduced triples; {into_s} images in S, {into_domain} in S or cusp-normalized",
            ball.len() - 1
        ),
    )
}

fn c5_varphi_diagram() -> Verdict {
    let mut bad = 0;
    let mut degenerate = 0;
    for p in [2u32, 3, 5] {
        let field = f(p);
        let h = GammaElem::h(&field);
        let mut rng = ChaCha8Rng::seed_from_u64(0xC5 + p as u64);
        for _ in 0..1000 {
            let t = random_triple(&field, 4, &mut rng);
            let by_matrix = fqt_domain::group::phi_inverse(&t).compose(&h).act_triple(&Triple::standard(&field));
            degenerate += t.w3().is_infinity() as usize;
            if varphi_h_formula(&t) != by_matrix || varphi_h(&t) != by_matrix {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("3000 triples over F2, F3, F5 ({degenerate} with w3 = inf); {bad} mismatches"))
}

fn c6_flow_fixture() -> Verdict {
    let field = f(3);
    let mut cur = Triple::standard(&field);
    let mut ok = true;
    for n in 1..=10 {
        cur = psi_h(&cur).unwrap().post_reduced;
        ok &= cur == parse_triple(&field, &format!("(0, t^{n}, inf)")).unwrap();
    }
    let back = psi_h(&parse_triple(&field, "(0, t^-1, inf)").unwrap()).unwrap().post_reduced;
    ok &= back == Triple::standard(&field);
    verdict(ok, "psi_h^n(0,1,inf) = (0,t^n,inf) for n <= 10; psi_h(0,1/t,inf) = (0,1,inf)")
}

fn c7_tree_metric() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let field = f(p);
        let ball = bfs_ball(&Vertex::origin(&field), 4);
        let vs = ball.vertices();
        let regular = vs.iter().all(|v| {
            let n = v.neighbors();
            n.len() == p as usize + 1 && n.iter().collect::<HashSet<_>>().len() == n.len()
        });
        let mismatches: usize = vs
            .par_iter()
            .map(|v| vs.iter().filter(|w| bfs_distance(&ball, v, w).unwrap() != distance(v, w)).count())
            .sum();
        ok &= regular && mismatches == 0;
        lines.push(format!(
            "q={p}: {} vertices, regular={regular}, {} pairs, {mismatches} metric mismatches",
            vs.len(),
            vs.len() * vs.len()
        ));
    }
    verdict(ok, lines.join("; "))
}

fn c8_projection_fixtures() -> Verdict {
    let f3 = f(3);
    let x_m1 = Vertex::apartment(&f3, -1);
    let fig2 = tripod_center(&parse_triple(&f3, "(t^-3, t^-1, t^3)").unwrap()) == x_m1;
    let fig3 = tripod_center(&parse_triple(&f3, "(t^-1, 2t^-1, t)").unwrap()) == x_m1;
    let mut bad = 0;
    for p in [2u32, 3, 5] {
        let field = f(p);
        let mut rng = ChaCha8Rng::seed_from_u64(0xC8 + p as u64);
        for _ in 0..334 {
            let t = random_triple(&field, 4, &mut rng);
            let [a, b, c] = t.points();
            let mut d = [a.separation(b), a.separation(c), b.separation(c)];
            d.sort();
            let center = tripod_center(&t);
            // on the rays from infinity to both ends of the closest pair, and
            // on all three pairwise geodesics
            let pairs = [(a, b), (a, c), (b, c)];
            let (x, y) = pairs.iter().find(|(x, y)| x.separation(y) == d[0]).unwrap();
            let on_rays = [x, y].iter().all(|w| end_truncation(w, center.level()).unwrap() == center)
                && pairs.iter().all(|(x, y)| {
                    fqt_domain::ParamGeodesic::new((*x).clone(), (*y).clone(), center.clone()).is_ok()
                });
            if d[1] != d[2] || !on_rays {
                bad += 1;
            }
        }
    }
    verdict(fig2 && fig3 && bad == 0, format!("figure fixtures {fig2}/{fig3}; 1002 random triples, {bad} violations"))
}

fn c9_flow_diagram() -> Verdict {
    let mut bad = 0;
    for p in [2u32, 3, 5] {
        let field = f(p);
        let mut rng = ChaCha8Rng::seed_from_u64(0xC9 + p as u64);
        for _ in 0..334 {
            let t = random_triple(&field, 4, &mut rng);
            let l = theta(&t);
            let c = tripod_center(&varphi_h(&t));
            if c != l.vertex_at(1) || distance(&c, &tripod_center(&t)) != 1 {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("1002 random triples; {bad} mismatches"))
}

fn c10_double_cosets() -> Verdict {
    let f3 = f(3);
    let apartment_ok = (-4..=4).all(|i| vertex_class(&Vertex::apartment(&f3, i)).unwrap() == i.unsigned_abs());
    let f2 = f(2);
    let ball = enumerate_gamma_ball(&f2, 1).unwrap();
    let vs = bfs_ball(&Vertex::origin(&f2), 3);
    let mut bad = 0;
    for v in vs.vertices() {
        let c = vertex_class(v).unwrap();
        bad += ball.elements().iter().filter(|g| vertex_class(&act_vertex(g, v)).unwrap() != c).count();
    }
    verdict(
        apartment_ok && bad == 0,
        format!(
            "class(x_i) = |i| for -4..4: {apartment_ok}; {} vertices x {} elements, {bad} violations",
            vs.vertices().len(),
            ball.len()
        ),
    )
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fqt-domain")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn random_vertex(field: &Field, rng: &mut ChaCha8Rng) -> Vertex {
    let n = rng.gen_range(-6..=6);
    let terms: Vec<_> = (n + 1..n + 6).map(|e| (e, field.elem(rng.gen_range(0..field.q())))).collect();
    Vertex::new(n, LaurentPoly::from_terms(field, &terms)).unwrap()
}

fn random_word(field: &Field, rng: &mut ChaCha8Rng) -> Word {
    let tokens = (0..rng.gen_range(0..6))
        .map(|_| match rng.gen_range(0..4) {
            0 => Generator::Iota,
            1 => Generator::Sigma(field.elem(rng.gen_range(1..field.q()))),
            2 => Generator::Translate(oracle::random_poly(field, 3, rng)),
            _ => {
                let mut p = oracle::random_poly(field, 3, rng);
                if p.is_zero() {
                    p = Poly::one(field);
                }
                Generator::Untranslate(p)
            }
        })
        .collect();
    Word::from_tokens(field, tokens).unwrap()
}

fn c11_cli() -> Verdict {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let read = |name: &str| std::fs::read_to_string(golden.join(name)).unwrap();
    let g1 = run_bin(&["--q", "3", "reduce", "(t, t+1, t+2)", "--format", "json"]) == (0, read("reduce_q3.json"));
    let g2 = run_bin(&["--q", "3", "cf", "t^2/(t^2+1)"]) == (0, read("cf_q3.txt"));
    let g3 = run_bin(&["--q", "2", "tree-neighbors", "(0; 0)"]) == (0, read("tree_neighbors_q2.txt"));

    let mut rt_bad = 0;
    let mut rt_count = 0;
    let f4 = Field::extension(2, &[1, 1, 1]).unwrap();
    for field in [f(2), f(3), f(5), f4] {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC11 + field.q() as u64);
        for _ in 0..250 {
            let p = oracle::random_point(&field, 4, &mut rng);
            let t = random_triple(&field, 3, &mut rng);
            let g = oracle::random_gamma_word(&field, 5, 2, &mut rng);
            let v = random_vertex(&field, &mut rng);
            let w = random_word(&field, &mut rng);
            rt_count += 5;
            rt_bad += (parse_point(&field, &p.to_string()).ok() != Some(p)) as usize;
            rt_bad += (parse_triple(&field, &t.to_string()).ok() != Some(t)) as usize;
            rt_bad += (parse_matrix(&field, &g.to_string()).ok() != Some(g)) as usize;
            rt_bad += (parse_vertex(&field, &v.to_string()).ok() != Some(v)) as usize;
            rt_bad += (parse_word(&field, &w.to_string()).ok() != Some(w)) as usize;
        }
    }

    let codes = [
        (run_bin(&["--q", "3", "membership", "(0, 1, inf)"]).0, 0),
        (run_bin(&["--q", "3", "reduce", "(t, t, inf)"]).0, 1),
        (run_bin(&["--q", "3", "cf", "inf"]).0, 1),
        (run_bin(&["--q", "3", "reduce", "(t, t+"]).0, 2),
        (run_bin(&["--q", "4", "cf", "t"]).0, 2),
        (run_bin(&["--q", "3", "nonsense"]).0, 2),
    ];
    let codes_ok = codes.iter().all(|(got, want)| got == want);
    verdict(
        g1 && g2 && g3 && rt_bad == 0 && codes_ok,
        format!("goldens {g1}/{g2}/{g3}; {rt_count} round trips, {rt_bad} failures; exit codes ok: {codes_ok}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("CF round trip", c1_cf_round_trip),
        ("reduction soundness", c2_soundness),
        ("canonicality under the Gamma-ball", c3_canonicality),
        ("strong uniqueness window", c4_uniqueness_window),
        ("varphi_h formula = matrix route", c5_varphi_diagram),
        ("flow fixture", c6_flow_fixture),
        ("tree regularity and metric", c7_tree_metric),
        ("projection fixtures and ultrametric law", c8_projection_fixtures),
        ("flow/tree commutative diagram", c9_flow_diagram),
        ("double-coset classes", c10_double_cosets),
        ("CLI goldens, round trips, exit codes", c11_cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {name}: {} ({:.1}s)", i + 1, v.detail, start.elapsed().as_secs_f64());
        failed += !v.ok as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
