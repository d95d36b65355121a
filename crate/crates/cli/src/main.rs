//! `ambitrop`: JSON in, JSON (or SVG) out.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use ambitropical::alcoved::AlcovedPoly;
use ambitropical::games::{CellOptions, MeanPayoffGame, DEFAULT_CELL_CAP, DEFAULT_HORIZON_CAP};
use ambitropical::homog::{self, is_lattice, to_bitstring, HypercubeLattice, DEFAULT_CUBE_CAP};
use ambitropical::io::{self as docs, Document, GameDoc, PointsDoc};
use ambitropical::minmax::{check_shapley_axioms, ShapleyOp, DEFAULT_NORMAL_FORM_CAP};
use ambitropical::plot::{plot_document, PlotOptions};
use ambitropical::retract::{geodesic, hyperconvexity_witness, AmbiCone, GeneratorSet, Side};
use ambitropical::scalar::parse_rat;
use ambitropical::tropical::{TropMat, TropVec};
use ambitropical::{selfcheck, Error, Ext, Rat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ambitrop", version, about = "Exact tropical and ambitropical computations over JSON documents")]
struct Cli {
    /// Worker threads for parallel steps (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input document; `-` reads standard input.
    #[arg(long = "in", short = 'i', value_name = "FILE")]
    input: String,
    /// Output file (default: standard output).
    #[arg(long, short = 'o', value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct OutOnly {
    #[arg(long, short = 'o', value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct PointArgs {
    /// A point as a JSON array, e.g. `[1,"1/2",0]`.
    #[arg(long, conflicts_with = "points")]
    point: Option<String>,
    /// A points document.
    #[arg(long, value_name = "FILE")]
    points: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    Pmax,
    Pmin,
    Qminus,
    Qplus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Retr {
    Minus,
    Plus,
}

impl From<Retr> for Side {
    fn from(r: Retr) -> Side {
        match r {
            Retr::Minus => Side::Minus,
            Retr::Plus => Side::Plus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Value,
    Cnf,
    Dnf,
    Pair,
    Recession,
    Flip,
    Derivative,
    Axioms,
}

#[derive(Subcommand)]
enum Command {
    /// Kleene star of a square matrix.
    Star(Io),
    /// Summary of an alcoved polyhedron, optionally with a point's projections.
    Alcoved {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        point: Option<String>,
    },
    /// Evaluate or transform a min-max operator.
    Eval {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        pts: PointArgs,
        #[arg(long, value_enum, default_value = "value")]
        form: Form,
        #[arg(long, default_value_t = DEFAULT_NORMAL_FORM_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Required for `--form axioms`.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Generators of the ambitropical hull of a points document.
    Hull(Io),
    /// Apply a projection or canonical retraction of a generator set.
    Project {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        pts: PointArgs,
        #[arg(long, value_enum, default_value = "qminus")]
        map: Map,
    },
    /// Best co-approximation interval `[P^max(z), P^min(z)]`.
    Interval {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        point: String,
    },
    /// Common point of sup-norm balls inside the cone.
    Witness {
        #[command(flatten)]
        io: Io,
        /// Points document of ball centers.
        #[arg(long, value_name = "FILE")]
        centers: String,
        /// Radii as a JSON array.
        #[arg(long)]
        radii: String,
        #[arg(long, value_enum, default_value = "minus")]
        retraction: Retr,
    },
    /// Retracted straight segment between two points of the cone.
    Geodesic {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 9)]
        samples: usize,
        #[arg(long, value_enum, default_value = "minus")]
        retraction: Retr,
    },
    /// Mean payoff games.
    #[command(subcommand)]
    Mpg(Mpg),
    /// Lattices of the Boolean cube.
    #[command(subcommand)]
    Lattice(Lattice),
    /// Fixed points of a homogeneous operator on the Boolean cube.
    Skeleton {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = DEFAULT_CUBE_CAP)]
        cap: usize,
    },
    /// Cell complex of the fixed-point set of an operator or game.
    Cells(CellArgs),
    /// SVG of a three-dimensional cone or complex.
    Plot {
        #[command(flatten)]
        io: Io,
        /// Hilbert radius of the drawn region.
        #[arg(long)]
        radius: Option<String>,
        #[arg(long, default_value_t = 480)]
        size: u32,
        #[arg(long, default_value_t = 48)]
        grid: usize,
    },
    /// Recompute the reference instances.
    Selfcheck(OutOnly),
}

#[derive(Args)]
struct CellArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    cap: usize,
    /// Stop after this many closed types; the result is then marked incomplete.
    #[arg(long)]
    max_cells: Option<usize>,
}

#[derive(Subcommand)]
enum Mpg {
    /// `T^k(0)` and `T^k(0)/k`.
    Value {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        horizon: usize,
    },
    /// An eigenpair `T(u) = λ + u`, with `max u = 0`.
    Eigen {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
    },
    /// Calibrated policies at an eigenvector, checked along all short plays.
    Calibrated {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        u: Option<String>,
        #[arg(long, requires = "u")]
        lambda: Option<String>,
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
    /// Cell complex of the fixed points of the re-centered game.
    Cells(CellArgs),
}

#[derive(Subcommand)]
enum Lattice {
    /// Lattice verdict with a witness.
    Check(Io),
    /// Operator whose skeleton is the lattice.
    ToOp(Io),
    /// Chains and their Weyl cells.
    Fan(Io),
    /// A random lattice.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutOnly,
    },
}

/// A failure and the exit code it maps to.
struct Failure {
    payload: Value,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure { payload: error_json(&e, None), code }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { payload: json!({"error": "Usage", "message": message.into()}), code: 2 }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn error_json(e: &Error, bits: Option<usize>) -> Value {
    let mut v = json!({"error": e.code(), "message": e.to_string()});
    let obj = v.as_object_mut().expect("object");
    match e {
        Error::PositiveCircuit { circuit, weight } | Error::EmptyPolyhedron { circuit, weight } => {
            obj.insert("witness".into(), json!(one_based(circuit)));
            obj.insert("weight".into(), json!(Ext::Fin(weight.clone())));
        }
        Error::NotALattice { reason, pair, bounds } => {
            let n = bits.unwrap_or(64);
            obj.insert("reason".into(), json!(reason));
            obj.insert("pair".into(), json!(pair.map(|(a, b)| [to_bitstring(a, n), to_bitstring(b, n)])));
            obj.insert("bounds".into(), json!(bounds.iter().map(|b| to_bitstring(*b, n)).collect::<Vec<_>>()));
        }
        Error::PairwiseConditionViolated { first, second } => {
            obj.insert("pair".into(), json!([first + 1, second + 1]));
        }
        _ => {}
    }
    v
}

fn read_text(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read standard input: {e}")))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    }
    Ok(s)
}

fn read_doc(path: &str) -> Result<Document, Failure> {
    Ok(docs::parse_document(&read_text(path)?)?)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("bad {what}: {e}")))
}

fn parse_point(text: &str) -> Result<Vec<Rat>, Failure> {
    let v: TropVec = parse_json(text, "point")?;
    Ok(docs::finite_point(&v)?)
}

fn parse_scalar(text: &str) -> Result<Rat, Failure> {
    parse_rat(text.trim().trim_matches('"')).map_err(|e| usage(e.to_string()))
}

fn read_points(pts: &PointArgs) -> Result<Vec<Vec<Rat>>, Failure> {
    match (&pts.point, &pts.points) {
        (Some(p), None) => Ok(vec![parse_point(p)?]),
        (None, Some(f)) => Ok(read_doc(f)?.into_points()?),
        _ => Err(usage("give --point or --points")),
    }
}

fn points_doc(points: &[Vec<Rat>]) -> Value {
    json!(Document::Points(PointsDoc { points: points.iter().map(|p| docs::point_vec(p)).collect() }))
}

fn vec_json(x: &[Rat]) -> Value {
    json!(docs::point_vec(x))
}

enum Output {
    Json(Value),
    Text(String),
}

fn cells(args: &CellArgs) -> Result<Output, Failure> {
    let game = read_doc(&args.io.input)?.into_game()?;
    let cx = game.enumerate_cells(&CellOptions { cap: args.cap, max_cells: args.max_cells, ..CellOptions::default() })?;
    Ok(Output::Json(json!(Document::Complex(docs::complex_doc(&cx)))))
}

fn lattice_of(io: &Io) -> Result<(usize, std::collections::BTreeSet<u64>), Failure> {
    Ok(read_doc(&io.input)?.into_bitset()?)
}

fn verified_lattice(io: &Io) -> Result<HypercubeLattice, Failure> {
    let (n, set) = lattice_of(io)?;
    HypercubeLattice::new(n, set).map_err(|e| Failure { payload: error_json(&e, Some(n)), code: 1 })
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    let json_out = |v: Value| Ok(Output::Json(v));
    match cmd {
        Command::Star(io) => {
            let m: TropMat = match read_doc(&io.input)? {
                Document::Alcoved(d) => d.m,
                other => return Err(usage(format!("expected a matrix, found a {} document", other.kind()))),
            };
            json_out(json!(Document::Alcoved(docs::AlcovedDoc { m: m.kleene_star()? })))
        }
        Command::Alcoved { io, point } => {
            let p = read_doc(&io.input)?.into_alcoved()?;
            let mut v = alcoved_summary(&p);
            if let Some(text) = point {
                let x = parse_point(text)?;
                let obj = v.as_object_mut().expect("object");
                obj.insert("contains".into(), json!(p.contains(&x)?));
                obj.insert("up".into(), vec_json(&p.project_up(&x)?));
                obj.insert("down".into(), vec_json(&p.project_down(&x)?));
            }
            json_out(v)
        }
        Command::Eval { io, pts, form, cap, trials, seed } => eval(io, pts, *form, *cap, *trials, *seed),
        Command::Hull(io) => {
            let pts = read_doc(&io.input)?.into_points()?;
            json_out(json!(Document::Generators(GeneratorSet::from_points(&pts)?)))
        }
        Command::Project { io, pts, map } => {
            let g = read_doc(&io.input)?.into_generators()?;
            let out = read_points(pts)?
                .iter()
                .map(|x| match map {
                    Map::Pmax => g.p_max(x),
                    Map::Pmin => g.p_min(x),
                    Map::Qminus => g.q_minus(x),
                    Map::Qplus => g.q_plus(x),
                })
                .collect::<ambitropical::Result<Vec<_>>>()?;
            json_out(points_doc(&out))
        }
        Command::Interval { io, point } => {
            let g = read_doc(&io.input)?.into_generators()?;
            let z = parse_point(point)?;
            let (lo, hi) = g.co_approximation_interval(&z)?;
            json_out(json!({"lower": vec_json(&lo), "upper": vec_json(&hi), "image": vec_json(&g.q_minus(&z)?)}))
        }
        Command::Witness { io, centers, radii, retraction } => {
            let cone = AmbiCone { gens: read_doc(&io.input)?.into_generators()?, side: (*retraction).into() };
            let centers = read_doc(centers)?.into_points()?;
            let radii: Vec<Ext> = parse_json(radii, "radii")?;
            let radii = radii
                .iter()
                .map(|r| r.finite().cloned().ok_or_else(|| usage("radii must be finite")))
                .collect::<Result<Vec<_>, _>>()?;
            let w = hyperconvexity_witness(&cone, &centers, &radii)?;
            json_out(json!({"witness": vec_json(&w)}))
        }
        Command::Geodesic { io, from, to, samples, retraction } => {
            let cone = AmbiCone { gens: read_doc(&io.input)?.into_generators()?, side: (*retraction).into() };
            let path = geodesic(&cone, &parse_point(from)?, &parse_point(to)?, *samples)?;
            json_out(points_doc(&path))
        }
        Command::Mpg(m) => mpg(m),
        Command::Lattice(l) => lattice(l),
        Command::Skeleton { io, cap } => {
            let op = read_doc(&io.input)?.into_operator()?;
            let sk = homog::skeleton(&op, *cap)?;
            let n = op.n_in();
            json_out(json!(Document::Lattice01(docs::LatticeDoc {
                n,
                elements: sk.iter().map(|v| to_bitstring(*v, n)).collect(),
            })))
        }
        Command::Cells(args) => cells(args),
        Command::Plot { io, radius, size, grid } => {
            let doc = read_doc(&io.input)?;
            let radius = radius.as_deref().map(parse_scalar).transpose()?;
            let svg = plot_document(&doc, &PlotOptions { radius, size: *size, grid: *grid })?;
            Ok(Output::Text(svg))
        }
        Command::Selfcheck(_) => {
            let checks = selfcheck::run();
            let passed = checks.iter().all(|c| c.passed);
            let v = json!({"passed": passed, "checks": checks});
            if passed {
                json_out(v)
            } else {
                Err(Failure { payload: v, code: 1 })
            }
        }
    }
}

fn alcoved_summary(p: &AlcovedPoly) -> Value {
    let classes: Vec<Vec<usize>> = p.critical_classes().iter().map(|c| one_based(c)).collect();
    json!({
        "dimension": p.dimension(),
        "bounded": p.is_hilbert_bounded(),
        "star": p.star(),
        "critical_classes": classes,
        "generators": p.generators(),
        "dual_generators": p.dual_generators(),
    })
}

fn operator_of(io: &Io) -> Result<ShapleyOp, Failure> {
    Ok(read_doc(&io.input)?.into_operator()?)
}

fn eval(io: &Io, pts: &PointArgs, form: Form, cap: usize, trials: usize, seed: Option<u64>) -> Result<Output, Failure> {
    let op = operator_of(io)?;
    let op_doc = |t: ShapleyOp| Ok(Output::Json(json!(Document::Operator(t))));
    let normal = |forms: Vec<ambitropical::minmax::NormalForm>| {
        ShapleyOp::new(op.n_in(), forms.iter().map(|f| f.to_term()).collect())
    };
    match form {
        Form::Value => {
            let out = read_points(pts)?.iter().map(|x| op.eval(x)).collect::<ambitropical::Result<Vec<_>>>()?;
            Ok(Output::Json(points_doc(&out)))
        }
        Form::Cnf => op_doc(normal(op.cnf(cap)?)?),
        Form::Dnf => op_doc(normal(op.dnf(cap)?)?),
        Form::Pair => {
            let pair = op.to_proper_pair_capped(cap)?;
            Ok(Output::Json(json!(Document::Game(GameDoc { a: pair.a().clone(), b: pair.b().clone() }))))
        }
        Form::Recession => op_doc(op.recession()),
        Form::Flip => op_doc(op.flip()),
        Form::Derivative => {
            let base = read_points(pts)?;
            let [u] = base.as_slice() else { return Err(usage("--form derivative takes one --point")) };
            op_doc(op.semiderivative(u)?)
        }
        Form::Axioms => {
            let seed = seed.ok_or_else(|| usage("--form axioms needs --seed"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = check_shapley_axioms(op.n_in(), |x| op.eval(x).expect("arity checked"), trials, &mut rng);
            Ok(Output::Json(json!(report)))
        }
    }
}

fn mpg(m: &Mpg) -> Result<Output, Failure> {
    let game = |io: &Io| -> Result<MeanPayoffGame, Failure> { Ok(read_doc(&io.input)?.into_game()?) };
    match m {
        Mpg::Value { io, horizon } => Ok(Output::Json(json!(game(io)?.value_iteration(*horizon)?))),
        Mpg::Eigen { io, max_iters } => {
            let (u, lambda) =
                game(io)?.find_eigen(*max_iters)?.ok_or(Error::NonConvergence { iterations: *max_iters })?;
            Ok(Output::Json(json!({"lambda": Ext::Fin(lambda), "u": docs::point_vec(&u)})))
        }
        Mpg::Calibrated { io, u, lambda, horizon } => {
            let g = game(io)?;
            let (u, lambda) = match (u, lambda) {
                (Some(u), Some(l)) => (parse_point(u)?, parse_scalar(l)?),
                (None, None) => g.find_eigen(10_000)?.ok_or(Error::NonConvergence { iterations: 10_000 })?,
                _ => return Err(usage("--u and --lambda go together")),
            };
            let policies = g.calibrated_policies(&u, &lambda)?;
            let violation = g.verify_calibrated(&u, &lambda, &policies, *horizon, DEFAULT_HORIZON_CAP)?;
            Ok(Output::Json(json!({
                "lambda": Ext::Fin(lambda),
                "u": docs::point_vec(&u),
                "policies": policies,
                "horizon": horizon,
                "violation": violation,
            })))
        }
        Mpg::Cells(args) => cells(args),
    }
}

fn lattice(l: &Lattice) -> Result<Output, Failure> {
    match l {
        Lattice::Check(io) => {
            let (n, set) = lattice_of(io)?;
            let v = is_lattice(n, &set);
            Ok(Output::Json(json!({
                "lattice": v.is_lattice,
                "reason": v.reason,
                "pair": v.pair.map(|(a, b)| [to_bitstring(a, n), to_bitstring(b, n)]),
                "bounds": v.bounds.iter().map(|b| to_bitstring(*b, n)).collect::<Vec<_>>(),
            })))
        }
        Lattice::ToOp(io) => Ok(Output::Json(json!(Document::Operator(verified_lattice(io)?.to_operator()?)))),
        Lattice::Fan(io) => {
            let lat = verified_lattice(io)?;
            let n = lat.n();
            let cells: Vec<Value> = lat
                .chains_to_fan()
                .iter()
                .map(|c| {
                    json!({
                        "chain": c.chain.iter().map(|v| to_bitstring(*v, n)).collect::<Vec<_>>(),
                        "blocks": c.partition.blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
                        "dimension": c.dimension,
                        "star": c.partition.weyl_cell(n).star(),
                    })
                })
                .collect();
            Ok(Output::Json(json!({"n": n, "maximal_chains": lat.maximal_chains().len(), "cells": cells})))
        }
        Lattice::Random { n, seed, .. } => {
            if *n == 0 || *n > DEFAULT_CUBE_CAP {
                return Err(Error::SizeCap { size: *n, cap: DEFAULT_CUBE_CAP }.into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok(Output::Json(json!(docs::lattice_doc(&homog::random_lattice(&mut rng, *n)))))
        }
    }
}

fn io(x: &Io) -> Option<&str> {
    x.out.as_deref()
}

fn out_path(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Star(x) | Command::Hull(x) => io(x),
        Command::Alcoved { io: x, .. }
        | Command::Eval { io: x, .. }
        | Command::Project { io: x, .. }
        | Command::Interval { io: x, .. }
        | Command::Witness { io: x, .. }
        | Command::Geodesic { io: x, .. }
        | Command::Skeleton { io: x, .. }
        | Command::Plot { io: x, .. } => io(x),
        Command::Cells(a) => io(&a.io),
        Command::Selfcheck(o) => o.out.as_deref(),
        Command::Mpg(m) => match m {
            Mpg::Value { io: x, .. } | Mpg::Eigen { io: x, .. } | Mpg::Calibrated { io: x, .. } => io(x),
            Mpg::Cells(a) => io(&a.io),
        },
        Command::Lattice(l) => match l {
            Lattice::Check(x) | Lattice::ToOp(x) | Lattice::Fan(x) => io(x),
            Lattice::Random { out, .. } => out.out.as_deref(),
        },
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("json");
    s.push('\n');
    s
}

fn emit(text: &str, path: Option<&str>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("ambitrop: {e}");
            return ExitCode::from(2);
        }
    }
    let path = out_path(&cli.command);
    let (text, code) = match run(&cli.command) {
        Ok(Output::Json(v)) => (render(&v, cli.pretty), 0),
        Ok(Output::Text(s)) => (s, 0),
        Err(f) => {
            if let Some(msg) = f.payload.get("message").and_then(Value::as_str) {
                eprintln!("ambitrop: {msg}");
            }
            (render(&f.payload, cli.pretty), f.code)
        }
    };
    if let Err(e) = emit(&text, path) {
        eprintln!("ambitrop: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
