//! The `fqt-domain` command-line front end.
//!
//! [`run`] does all the work and returns the exit code with captured
//! output, so the binary is a thin wrapper and tests can drive it directly.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::algebra::Field;
use crate::domain::{membership, orbit_equivalent, reduce};
use crate::dynamics::flow_orbit;
use crate::error::{Error, Result};
use crate::group::GammaElem;
use crate::oracle::{self, CorpusEntry};
use crate::projective::Triple;
use crate::text::{parse_matrix, parse_point, parse_poly, parse_triple, parse_vertex, parse_word};
use crate::tree::{self, Vertex};

#[derive(Parser, Debug)]
#[command(name = "fqt-domain", version, about = "Canonical forms for PGL2(Fq[t]) acting on boundary triples")]
struct Cli {
    /// Field order: a prime p or p^k.
    #[arg(long, global = true)]
    q: Option<String>,

    /// Irreducible modulus in the symbol `a`, required when k > 1 (e.g. a^2+a+1).
    #[arg(long, global = true)]
    modulus: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for corpus generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regular continued fraction of a point.
    Cf { point: String },
    /// Canonical representative of a triple and the group element reaching it.
    Reduce { triple: String },
    /// Decide whether two triples lie in one orbit.
    OrbitEq { first: String, second: String },
    /// Apply a matrix `[[a,b],[c,d]]` or a word `iota.u:t` to a point or triple.
    Act { element: String, target: String },
    /// Evaluate the domain predicates on a triple.
    Membership { triple: String },
    /// Neighbors of a vertex `(n; f)`; with `--format dot`, the ball of the given radius.
    TreeNeighbors {
        vertex: String,
        #[arg(long, default_value_t = 1)]
        radius: u64,
    },
    /// Tripod center of a triple.
    TreeCenter { triple: String },
    /// Path between two vertices, or the stretch of the geodesic of a triple.
    TreePath {
        from: Option<String>,
        to: Option<String>,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        triple: Option<String>,
        #[arg(long, default_value_t = 3)]
        span: i64,
    },
    /// Orbit class of a vertex (its distance class along the quotient ray).
    TreeClass { vertex: String },
    /// Iterate the flow on a canonical representative.
    Flow {
        triple: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Emit random triples as JSON lines.
    GenCorpus {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Check reduction soundness on every triple of a corpus (file or stdin).
    VerifyCorpus { file: Option<String> },
}

impl Command {
    fn is_tree(&self) -> bool {
        matches!(self, Command::TreeNeighbors { .. } | Command::TreePath { .. })
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parse `--q` (and `--modulus`) into a field.
pub fn field_from_options(q: &str, modulus: Option<&str>) -> Result<Field> {
    let bad = || Error::InvalidField(format!("cannot read q = '{q}'; expected p or p^k"));
    let (p, k) = match q.split_once('^') {
        Some((p, k)) => (p.trim().parse::<u32>().map_err(|_| bad())?, k.trim().parse::<u32>().map_err(|_| bad())?),
        None => (q.trim().parse::<u32>().map_err(|_| bad())?, 1),
    };
    if k == 0 {
        return Err(bad());
    }
    let base = Field::prime(p)?;
    match (k, modulus) {
        (1, None) => Ok(base),
        (1, Some(_)) => Err(Error::InvalidField("--modulus is only meaningful for k > 1".into())),
        (_, None) => Err(Error::InvalidField(format!("q = {p}^{k} requires --modulus"))),
        (_, Some(m)) => {
            let poly = parse_poly(&base, &m.replace('a', "t"))
                .map_err(|e| Error::InvalidField(format!("cannot read modulus '{m}': {e}")))?;
            if poly.deg() != Some(k as usize) {
                return Err(Error::InvalidField(format!("modulus must have degree {k}")));
            }
            let raw: Vec<u32> = (0..=k as usize).map(|i| poly.coeff(i).value()).collect();
            Field::extension(p, &raw)
        }
    }
}

struct Ctx {
    field: Field,
    format: Format,
    seed: u64,
}

/// Output of a successful command: text and its exit code.
type CmdResult = Result<(String, i32)>;

#[derive(Serialize)]
struct ReduceJson {
    gamma: String,
    word: String,
    reduced: String,
    steps: usize,
}

#[derive(Serialize)]
struct MembershipJson {
    s0: bool,
    s1: bool,
    s2: bool,
    s3: bool,
    #[serde(rename = "in_S")]
    in_s: bool,
    cusp: bool,
    in_domain: bool,
}

#[derive(Serialize)]
struct FlowStepJson {
    pre: String,
    post_raw: String,
    post_reduced: String,
    gamma: String,
    matrix: String,
}

#[derive(Serialize)]
struct VerifyJson {
    checked: usize,
    passed: usize,
    failed: usize,
    in_s: usize,
    cusp: usize,
    failures: Vec<String>,
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn joined<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn dot_graph(edges: &[(Vertex, Vertex)], highlight: &[Vertex]) -> String {
    let mut s = String::from("graph tree {\n  node [shape=box, fontname=\"monospace\"];\n");
    for v in highlight {
        let _ = writeln!(s, "  \"{v}\" [style=bold];");
    }
    for (a, b) in edges {
        let _ = writeln!(s, "  \"{a}\" -- \"{b}\";");
    }
    s.push_str("}\n");
    s
}

impl Ctx {
    fn cf(&self, point: &str) -> CmdResult {
        let cf = parse_point(&self.field, point)?.cf_expand()?;
        Ok(match self.format {
            Format::Json => {
                let q: Vec<String> = cf.quotients().iter().map(ToString::to_string).collect();
                (json_line(&json!({ "cf": cf.to_string(), "quotients": q })), EXIT_OK)
            }
            _ => (format!("{cf}\n"), EXIT_OK),
        })
    }

    fn reduce(&self, triple: &str) -> CmdResult {
        let r = reduce(&parse_triple(&self.field, triple)?)?;
        let out = ReduceJson {
            gamma: r.gamma.matrix().to_string(),
            word: r.gamma.to_string(),
            reduced: r.reduced.to_string(),
            steps: r.steps,
        };
        Ok(match self.format {
            Format::Json => (json_line(&out), EXIT_OK),
            _ => (
                format!("gamma: {}\nword: {}\nreduced: {}\nsteps: {}\n", out.gamma, out.word, out.reduced, out.steps),
                EXIT_OK,
            ),
        })
    }

    fn orbit_eq(&self, a: &str, b: &str) -> CmdResult {
        let g = orbit_equivalent(&parse_triple(&self.field, a)?, &parse_triple(&self.field, b)?)?;
        Ok(match (self.format, g) {
            (Format::Json, g) => {
                (json_line(&json!({ "equivalent": g.is_some(), "gamma": g.map(|g| g.to_string()) })), EXIT_OK)
            }
            (_, Some(g)) => (format!("{g}\n"), EXIT_OK),
            (_, None) => ("not equivalent\n".to_string(), EXIT_OK),
        })
    }

    fn element(&self, s: &str) -> Result<GammaElem> {
        if s.trim_start().starts_with('[') {
            parse_matrix(&self.field, s)
        } else {
            Ok(parse_word(&self.field, s)?.matrix().clone())
        }
    }

    fn act(&self, element: &str, target: &str) -> CmdResult {
        let g = self.element(element)?;
        let image = if target.contains(',') {
            g.act_triple(&parse_triple(&self.field, target)?).to_string()
        } else {
            g.act_point(&parse_point(&self.field, target)?).to_string()
        };
        Ok(match self.format {
            Format::Json => (json_line(&json!({ "gamma": g.to_string(), "image": image })), EXIT_OK),
            _ => (format!("{image}\n"), EXIT_OK),
        })
    }

    fn membership(&self, triple: &str) -> CmdResult {
        let m = membership(&parse_triple(&self.field, triple)?);
        let out = MembershipJson {
            s0: m.s0,
            s1: m.s1,
            s2: m.s2,
            s3: m.s3,
            in_s: m.in_s(),
            cusp: m.cusp,
            in_domain: m.in_domain(),
        };
        Ok(match self.format {
            Format::Json => (json_line(&out), EXIT_OK),
            _ => (
                format!(
                    "s0={} s1={} s2={} s3={} in_S={} cusp={}\n",
                    out.s0, out.s1, out.s2, out.s3, out.in_s, out.cusp
                ),
                EXIT_OK,
            ),
        })
    }

    fn tree_neighbors(&self, vertex: &str, radius: u64) -> CmdResult {
        let v = parse_vertex(&self.field, vertex)?;
        Ok(match self.format {
            Format::Dot => {
                let ball = oracle::bfs_ball(&v, radius);
                let mut edges = Vec::new();
                for (i, a) in ball.vertices().iter().enumerate() {
                    for b in ball.adjacent(a)? {
                        if ball.vertices().iter().position(|x| x == b).unwrap() > i {
                            edges.push((a.clone(), b.clone()));
                        }
                    }
                }
                (dot_graph(&edges, &[v]), EXIT_OK)
            }
            Format::Json => {
                let n: Vec<String> = v.neighbors().iter().map(ToString::to_string).collect();
                (json_line(&json!({ "vertex": v.to_string(), "neighbors": n })), EXIT_OK)
            }
            Format::Text => (format!("{}\n", joined(&v.neighbors(), ", ")), EXIT_OK),
        })
    }

    fn tree_center(&self, triple: &str) -> CmdResult {
        let c = tree::tripod_center(&parse_triple(&self.field, triple)?);
        Ok(match self.format {
            Format::Json => (json_line(&json!({ "center": c.to_string(), "level": c.level() })), EXIT_OK),
            _ => (format!("{c}\n"), EXIT_OK),
        })
    }

    fn tree_path(&self, from: Option<&str>, to: Option<&str>, triple: Option<&str>, span: i64) -> CmdResult {
        let vertices = match (from, to, triple) {
            (Some(a), Some(b), None) => {
                tree::path(&parse_vertex(&self.field, a)?, &parse_vertex(&self.field, b)?)
            }
            (None, None, Some(t)) => {
                if span < 0 {
                    return Err(Error::InvalidField("--span must be nonnegative".into()));
                }
                let l = tree::theta(&parse_triple(&self.field, t)?);
                (-span..=span).map(|n| l.vertex_at(n)).collect()
            }
            _ => return Err(Error::parse(0, "tree-path takes two vertices or --triple")),
        };
        Ok(match self.format {
            Format::Dot => {
                let edges: Vec<_> = vertices.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
                let ends = [vertices[0].clone(), vertices[vertices.len() - 1].clone()];
                (dot_graph(&edges, &ends), EXIT_OK)
            }
            Format::Json => {
                let v: Vec<String> = vertices.iter().map(ToString::to_string).collect();
                (json_line(&json!({ "length": vertices.len() - 1, "path": v })), EXIT_OK)
            }
            Format::Text => (format!("{}\n", joined(&vertices, ", ")), EXIT_OK),
        })
    }

    fn tree_class(&self, vertex: &str) -> CmdResult {
        let v = parse_vertex(&self.field, vertex)?;
        let i = tree::vertex_class(&v)?;
        Ok(match self.format {
            Format::Json => (json_line(&json!({ "vertex": v.to_string(), "class": i })), EXIT_OK),
            _ => (format!("{i}\n"), EXIT_OK),
        })
    }

    fn flow(&self, triple: &str, steps: usize) -> CmdResult {
        let orbit = flow_orbit(&parse_triple(&self.field, triple)?, steps)?;
        let rows: Vec<FlowStepJson> = orbit
            .iter()
            .map(|s| FlowStepJson {
                pre: s.pre.to_string(),
                post_raw: s.post_raw.to_string(),
                post_reduced: s.post_reduced.to_string(),
                gamma: s.gamma.to_string(),
                matrix: s.gamma.matrix().to_string(),
            })
            .collect();
        Ok(match self.format {
            Format::Json => (json_line(&rows), EXIT_OK),
            _ => {
                let mut s = String::new();
                for (i, r) in rows.iter().enumerate() {
                    let _ = writeln!(s, "{}: {} -> {} => {} [{}]", i + 1, r.pre, r.post_raw, r.post_reduced, r.gamma);
                }
                (s, EXIT_OK)
            }
        })
    }

    fn gen_corpus(&self, count: usize, max_degree: usize) -> CmdResult {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut s = String::new();
        for _ in 0..count {
            let t = oracle::random_triple(&self.field, max_degree, &mut rng);
            s.push_str(&json_line(&CorpusEntry::new(&t)));
        }
        Ok((s, EXIT_OK))
    }

    fn verify_corpus(&self, input: &mut dyn Read) -> CmdResult {
        let mut lines = Vec::new();
        for (n, line) in BufReader::new(input).lines().enumerate() {
            let line = line.map_err(|e| Error::parse(0, format!("cannot read corpus: {e}")))?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: CorpusEntry = serde_json::from_str(&line)
                .map_err(|e| Error::parse(0, format!("line {}: {e}", n + 1)))?;
            if entry.q != self.field.q() {
                return Err(Error::InvalidField(format!(
                    "line {}: corpus entry has q = {} but --q gives {}",
                    n + 1,
                    entry.q,
                    self.field.q()
                )));
            }
            let [a, b, c] = &entry.triple;
            let t = parse_triple(&self.field, &format!("({a}, {b}, {c})"))
                .map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::parse(0, format!("line {}: {msg}", n + 1)),
                    other => other,
                })?;
            lines.push((n + 1, t));
        }
        let verdicts: Vec<(usize, Result<(bool, bool)>)> = lines
            .par_iter()
            .map(|(n, t)| (*n, check_soundness(t)))
            .collect();
        let mut out = VerifyJson { checked: verdicts.len(), passed: 0, failed: 0, in_s: 0, cusp: 0, failures: vec![] };
        for (n, v) in verdicts {
            match v {
                Ok((sound, in_s)) if sound => {
                    out.passed += 1;
                    if in_s {
                        out.in_s += 1;
                    } else {
                        out.cusp += 1;
                    }
                }
                Ok(_) => {
                    out.failed += 1;
                    out.failures.push(format!("line {n}: soundness check failed"));
                }
                Err(e) => {
                    out.failed += 1;
                    out.failures.push(format!("line {n}: {e}"));
                }
            }
        }
        let code = if out.failed == 0 { EXIT_OK } else { EXIT_DOMAIN };
        Ok(match self.format {
            Format::Json => (json_line(&out), code),
            _ => {
                let mut s = format!(
                    "checked {}, passed {}, failed {} (in S: {}, cusp-normalized: {})\n",
                    out.checked, out.passed, out.failed, out.in_s, out.cusp
                );
                for f in &out.failures {
                    let _ = writeln!(s, "{f}");
                }
                (s, code)
            }
        })
    }
}

/// Reduce `t` and check unit determinant, the action identity and domain
/// membership. Returns `(sound, in_s)`.
fn check_soundness(t: &Triple) -> Result<(bool, bool)> {
    let r = reduce(t)?;
    let m = membership(&r.reduced);
    let sound = r.gamma.matrix().is_gamma() && r.gamma.matrix().act_triple(t) == r.reduced && m.in_domain();
    Ok((sound, m.in_s()))
}

fn error_output(e: &Error, format: Format) -> Output {
    let code = if e.is_parse_or_config() { EXIT_USAGE } else { EXIT_DOMAIN };
    match format {
        Format::Json => Output {
            code,
            stdout: json_line(&json!({ "error": { "code": e.code(), "message": e.to_string() } })),
            stderr: String::new(),
        },
        _ => Output { code, stdout: String::new(), stderr: format!("error [{}]: {e}\n", e.code()) },
    }
}

/// Run one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let format = cli.format;
    if format == Format::Dot && !cli.command.is_tree() {
        let e = Error::InvalidField("--format dot is only available for tree-neighbors and tree-path".into());
        return error_output(&e, Format::Text);
    }
    let field = match cli.q.as_deref() {
        Some(q) => field_from_options(q, cli.modulus.as_deref()),
        None => Err(Error::InvalidField("missing --q".into())),
    };
    let field = match field {
        Ok(f) => f,
        Err(e) => return error_output(&e, format),
    };
    let ctx = Ctx { field, format, seed: cli.seed };
    let result = match &cli.command {
        Command::Cf { point } => ctx.cf(point),
        Command::Reduce { triple } => ctx.reduce(triple),
        Command::OrbitEq { first, second } => ctx.orbit_eq(first, second),
        Command::Act { element, target } => ctx.act(element, target),
        Command::Membership { triple } => ctx.membership(triple),
        Command::TreeNeighbors { vertex, radius } => ctx.tree_neighbors(vertex, *radius),
        Command::TreeCenter { triple } => ctx.tree_center(triple),
        Command::TreePath { from, to, triple, span } => {
            ctx.tree_path(from.as_deref(), to.as_deref(), triple.as_deref(), *span)
        }
        Command::TreeClass { vertex } => ctx.tree_class(vertex),
        Command::Flow { triple, steps } => ctx.flow(triple, *steps),
        Command::GenCorpus { count, max_degree } => ctx.gen_corpus(*count, *max_degree),
        Command::VerifyCorpus { file } => match file.as_deref() {
            None | Some("-") => ctx.verify_corpus(stdin),
            Some(path) => match std::fs::File::open(path) {
                Ok(mut f) => ctx.verify_corpus(&mut f),
                Err(e) => Err(Error::InvalidField(format!("cannot open {path}: {e}"))),
            },
        },
    };
    match result {
        Ok((stdout, code)) => Output { code, stdout, stderr: String::new() },
        Err(e) => error_output(&e, format),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        let mut argv = vec!["fqt-domain"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn field_options() {
        assert_eq!(field_from_options("3", None).unwrap().q(), 3);
        assert_eq!(field_from_options("2^2", Some("a^2+a+1")).unwrap().q(), 4);
        assert!(field_from_options("4", None).is_err());
        assert!(field_from_options("2^2", None).is_err());
        assert!(field_from_options("2^2", Some("a^2+1")).is_err());
        assert!(field_from_options("x", None).is_err());
    }

    #[test]
    fn documented_invocations() {
        let o = run_args(&["--q", "3", "cf", "t^2/(t^2+1)"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "[1; 2t^2+2]\n"));
        let o = run_args(&["--q", "2", "tree-neighbors", "(0; 0)"]);
        assert_eq!(o.stdout, "(1; 0), (-1; 0), (-1; 1)\n");
        let o = run_args(&["--q", "3", "reduce", "(t, t+1, t+2)", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["reduced"], "(0, 1, inf)");
        assert_eq!(v["word"], "u:-1.iota.u:-2.u:-t");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["--q", "3", "reduce", "(t, t, inf)"]).code, EXIT_DOMAIN);
        assert_eq!(run_args(&["--q", "3", "reduce", "(t, t+"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--q", "6", "cf", "t"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["cf", "t"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--q", "3", "cf", "inf"]).code, EXIT_DOMAIN);
        assert_eq!(run_args(&["--q", "3", "bogus"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--q", "3", "cf", "t", "--format", "dot"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--q", "3", "flow", "(0, 1, inf)", "--steps", "0"]).code, EXIT_DOMAIN);
        let o = run_args(&["--q", "3", "flow", "(t, t+1, t+2)", "--format", "json"]);
        assert_eq!(o.code, EXIT_DOMAIN);
        assert!(o.stdout.contains("NOT_IN_DOMAIN"));
    }

    #[test]
    fn corpus_round_trip() {
        let o = run_args(&["--q", "3", "--seed", "5", "gen-corpus", "--count", "20"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), 20);
        let again = run_args(&["--q", "3", "--seed", "5", "gen-corpus", "--count", "20"]);
        assert_eq!(o.stdout, again.stdout);
        let mut input = o.stdout.as_bytes();
        let v = run(["fqt-domain", "--q", "3", "verify-corpus"], &mut input);
        assert_eq!(v.code, 0, "{}", v.stdout);
        assert!(v.stdout.starts_with("checked 20, passed 20, failed 0"));
        let mut input = o.stdout.as_bytes();
        assert_eq!(run(["fqt-domain", "--q", "5", "verify-corpus"], &mut input).code, EXIT_USAGE);
    }

    #[test]
    fn dot_output() {
        let o = run_args(&["--q", "2", "tree-neighbors", "(0; 0)", "--radius", "2", "--format", "dot"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("graph tree {"));
        assert_eq!(o.stdout.matches(" -- ").count(), 9);
        let o = run_args(&["--q", "3", "tree-path", "--triple", "(0, 1, inf)", "--span", "2"]);
        assert_eq!(o.stdout, "(-2; 0), (-1; 0), (0; 0), (1; 0), (2; 0)\n");
    }
}
