//! Command-line front end.
//!
//! Machine output (graph6, JSON, DOT) goes to stdout or `--out`; summaries
//! go to stderr. Exit codes: 0 success, 1 failed verification, 2 usage or
//! input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::construct::{
    count_minimal_tifs, enumerate_minimal_tits, minimal_tifs, tifs_from_tits, tits_from_tifs, DesignatedGraph,
    StateMultiset,
};
use crate::enumgen::{self, search_minimal_tifs_with, SearchOptions, SearchSpec, Shard};
use crate::graph::format::{from_dot, from_graph6, from_json, serialize_with_contexts, to_graph6, Format};
use crate::graph::ExclusivityGraph;
use crate::nclogic::{classify_all_pairs, classify_pair, Certificate, Kind};
use crate::realize::{
    angle_between, build_minimal_tifs_realization, format_rays, graph_from_rays, min_angle_search,
    numeric_realization_search, parse_rays, verify, Realization,
};

#[derive(Parser, Debug)]
#[command(name = "tifs", version, about = "Search and verify true-implies-false sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Default, Clone)]
struct Opts {
    /// Vertex count (largest vertex count for `search`).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Dimension.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Clique-vertex states, e.g. `A,B,BOTH`.
    #[arg(long, global = true)]
    states: Option<String>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Run only part `i` of `k`, written `i/k`.
    #[arg(long, global = true)]
    shard: Option<String>,
    #[arg(long, global = true, value_enum)]
    emit: Option<Emit>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Graph6,
    Dot,
    Json,
}

impl From<Emit> for Format {
    fn from(e: Emit) -> Self {
        match e {
            Emit::Graph6 => Format::Graph6,
            Emit::Dot => Format::Dot,
            Emit::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Tifs,
    Tits,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nonisomorphic graphs on `--n` vertices; with `--d`, only those
    /// passing the dimension filters.
    Enumerate,
    /// Smallest vertex count carrying a realizable TIFS in dimension `--d`.
    Search {
        /// Checkpoint file prefix; one file per vertex count.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Random restarts for the numeric realizability check.
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
    /// Classifies designated pairs of each input graph.
    Classify {
        /// graph6, JSON, DOT or certificate text; a file path; `-` for stdin.
        input: String,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Fail unless the pair has this verdict.
        #[arg(long, value_enum)]
        expect: Option<KindArg>,
    },
    /// Builds a minimal TIFS or TITS from `--d` and `--states`.
    Construct {
        #[arg(value_enum)]
        family: Family,
    },
    /// Shrinks a TITS to the TIFS it was built from.
    Reduce {
        input: String,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
    },
    /// Number of minimal TIFS (or TITS) in dimension `--d`.
    Count {
        #[arg(long, value_enum, default_value = "tifs")]
        family: Family,
    },
    /// Checks a realization against a graph, or the parametric build for
    /// `--d`, `--states` and `--epsilon` when no input is given.
    VerifyRealization {
        /// Realization JSON or ray list.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Numeric descent for a realization of a graph in dimension `--d`.
    RealizeSearch {
        input: String,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
    },
    /// Angle between A and B for the parametric build, or the smallest one
    /// found by `--search` over three-dimensional bugs.
    Angle {
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
    },
    /// Orthogonality graph of a ray list.
    RaysToGraph { input: String },
    /// Re-encodes graphs in the `--emit` format.
    Export { input: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Tifs,
    Tits,
    TrueIffTrue,
    None,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Tifs => Kind::Tifs,
            KindArg::Tits => Kind::Tits,
            KindArg::TrueIffTrue => Kind::TrueIffTrue,
            KindArg::None => Kind::None,
        }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    dispatch_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`dispatch`] with explicit output streams.
pub fn dispatch_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = cli.opts.clone().with_config().and_then(|opts| {
        let mut buf = Vec::new();
        run(&cli.command, &opts, &mut buf, err)?;
        match &opts.out {
            Some(p) => fs::write(p, &buf)?,
            None => out.write_all(&buf)?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Check(m)) => {
            let _ = writeln!(err, "tifs: {m}");
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "tifs: {m}");
            2
        }
    }
}

impl Opts {
    /// Fills flags missing from the command line with values from `--config`.
    fn with_config(mut self) -> Result<Opts, Failure> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
            values.insert(k.trim().replace('_', "-"), (i + 1, v.trim().to_owned()));
        }
        for (key, (line, v)) in values {
            let bad = |e: &dyn std::fmt::Display| usage(format!("{}:{line}: {key}: {e}", path.display()));
            macro_rules! fill {
                ($field:ident) => {
                    if self.$field.is_none() {
                        self.$field = Some(v.parse().map_err(|e| bad(&e))?);
                    }
                };
            }
            match key.as_str() {
                "n" => fill!(n),
                "d" => fill!(d),
                "states" => fill!(states),
                "epsilon" => fill!(epsilon),
                "tolerance" => fill!(tolerance),
                "seed" => fill!(seed),
                "workers" => fill!(workers),
                "shard" => fill!(shard),
                "out" => fill!(out),
                "emit" => {
                    if self.emit.is_none() {
                        self.emit = Some(Emit::from_str(&v, true).map_err(|e| bad(&e))?);
                    }
                }
                _ => return Err(usage(format!("{}:{line}: unknown key `{key}`", path.display()))),
            }
        }
        Ok(self)
    }

    fn d(&self) -> Result<usize, Failure> {
        self.d.ok_or_else(|| usage("--d is required"))
    }

    fn n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| usage("--n is required"))
    }

    fn shard(&self) -> Result<Option<Shard>, Failure> {
        Ok(match &self.shard {
            Some(s) => Some(s.parse()?),
            None => None,
        })
    }

    fn emit(&self, default: Emit) -> Emit {
        self.emit.unwrap_or(default)
    }

    /// States from `--states`; all BOTH when absent.
    fn states(&self, d: usize) -> Result<StateMultiset, Failure> {
        match &self.states {
            Some(s) => Ok(s.parse()?),
            None => Ok(StateMultiset::new(0, 0, d.saturating_sub(3))),
        }
    }
}

fn read_text(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    let p = Path::new(input);
    if p.is_file() {
        return fs::read_to_string(p).map_err(|e| usage(format!("{input}: {e}")));
    }
    Ok(input.to_owned())
}

enum Input {
    Graphs(Vec<ExclusivityGraph>),
    Certificate(Certificate),
}

fn parse_input(text: &str) -> Result<Input, Failure> {
    let t = text.trim();
    if t.starts_with('{') {
        if let Ok(c) = Certificate::from_json(t) {
            return Ok(Input::Certificate(c));
        }
        return Ok(Input::Graphs(vec![from_json(t.as_bytes())?]));
    }
    if t.contains('{') {
        return Ok(Input::Graphs(vec![from_dot(t.as_bytes())?]));
    }
    let graphs = t
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| from_graph6(l.as_bytes()))
        .collect::<Result<Vec<_>, _>>()?;
    if graphs.is_empty() {
        return Err(usage("no graph in input"));
    }
    Ok(Input::Graphs(graphs))
}

fn read_graphs(input: &str) -> Result<Vec<ExclusivityGraph>, Failure> {
    match parse_input(&read_text(input)?)? {
        Input::Graphs(g) => Ok(g),
        Input::Certificate(c) => Ok(vec![c.parse_graph()?]),
    }
}

fn emit_graph(out: &mut Vec<u8>, g: &ExclusivityGraph, emit: Emit, d: Option<usize>) {
    out.extend(serialize_with_contexts(g, emit.into(), d));
    if out.last() != Some(&b'\n') {
        out.push(b'\n');
    }
}

fn emit_designated(out: &mut Vec<u8>, t: &DesignatedGraph, emit: Emit) -> Result<(), Failure> {
    match emit {
        Emit::Json => {
            out.extend(t.certificate()?.to_json().bytes());
            out.push(b'\n');
        }
        _ => emit_graph(out, &t.graph, emit, Some(t.d)),
    }
    Ok(())
}

fn json_line<T: serde::Serialize>(out: &mut Vec<u8>, v: &T) {
    out.extend(serde_json::to_vec(v).expect("serialisable"));
    out.push(b'\n');
}

fn run(cmd: &Command, o: &Opts, out: &mut Vec<u8>, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Enumerate => {
            let n = o.n()?;
            let mut spec = match o.d {
                Some(d) => SearchSpec::filtered(n, d),
                None => SearchSpec::unfiltered(n),
            };
            spec.shard = o.shard()?;
            let graphs = enumgen::generate_parallel(&spec, o.workers.unwrap_or(0))?;
            let emit = o.emit(Emit::Graph6);
            for g in &graphs {
                emit_graph(out, g, emit, o.d);
            }
            writeln!(err, "{} graphs", graphs.len())?;
        }
        Command::Search { checkpoint, restarts } => {
            let d = o.d()?;
            let opts = SearchOptions {
                workers: o.workers.unwrap_or(0),
                checkpoint_prefix: checkpoint.clone(),
                shard: o.shard()?,
                restarts: *restarts,
                seed: o.seed.unwrap_or(0),
                ..Default::default()
            };
            let report = search_minimal_tifs_with(d, o.n.unwrap_or(d + 6), &opts)?;
            match o.emit(Emit::Json) {
                Emit::Json => json_line(out, &report),
                emit => {
                    for h in &report.tifs_found {
                        emit_graph(out, &h.certificate.parse_graph()?, emit, Some(d));
                    }
                }
            }
            writeln!(
                err,
                "d = {d}: first hit {:?}, {} TIFS, {} refuted, {} unconfirmed, {:.2}s",
                report.first_hit,
                report.tifs_found.len(),
                report.rejected.len(),
                report.unconfirmed.len(),
                report.wall_seconds
            )?;
            if !report.complete {
                return Err(Failure::Check("search stopped before finishing".into()));
            }
        }
        Command::Classify { input, a, b, expect } => classify(input, *a, *b, *expect, o, out, err)?,
        Command::Construct { family } => {
            let d = o.d()?;
            let tifs = minimal_tifs(d, &o.states(d)?)?;
            let t = match family {
                Family::Tifs => tifs,
                Family::Tits => tits_from_tifs(&tifs)?,
            };
            emit_designated(out, &t, o.emit(Emit::Graph6))?;
            writeln!(err, "{} on {} vertices, a = {}, b = {}", t.kind, t.graph.n(), t.a, t.b_or_c)?;
        }
        Command::Reduce { input, a, c } => {
            let t = match parse_input(&read_text(input)?)? {
                Input::Certificate(cert) => DesignatedGraph {
                    graph: cert.parse_graph()?,
                    d: o.d.unwrap_or(cert.d),
                    a: a.unwrap_or(cert.a),
                    b_or_c: c.unwrap_or(cert.b_or_c),
                    kind: Kind::Tits,
                },
                Input::Graphs(gs) => DesignatedGraph {
                    graph: gs.into_iter().next().expect("nonempty"),
                    d: o.d()?,
                    a: a.ok_or_else(|| usage("--a is required"))?,
                    b_or_c: c.ok_or_else(|| usage("--c is required"))?,
                    kind: Kind::Tits,
                },
            };
            let found = tifs_from_tits(&t).map_err(|e| Failure::Check(e.to_string()))?;
            for r in &found {
                emit_designated(out, r, o.emit(Emit::Json))?;
            }
            writeln!(err, "{} TIFS recovered", found.len())?;
        }
        Command::Count { family } => {
            let d = o.d()?;
            let n = match family {
                Family::Tifs => count_minimal_tifs(d)?,
                Family::Tits => enumerate_minimal_tits(d)?.len() as u64,
            };
            writeln!(out, "{n}")?;
        }
        Command::VerifyRealization { input, graph } => {
            let (r, g) = match input {
                Some(path) => {
                    let text = read_text(path)?;
                    let mut r = if text.trim_start().starts_with('{') {
                        Realization::from_json(&text)?
                    } else {
                        Realization::new(parse_rays(&text)?, o.epsilon.unwrap_or(0.0), 1e-12)?
                    };
                    if let Some(t) = o.tolerance {
                        r.tolerance = t;
                    }
                    let g = match graph {
                        Some(gi) => read_graphs(gi)?.remove(0),
                        None => graph_from_rays(&r.vectors, r.tolerance)?,
                    };
                    (r, g)
                }
                None => {
                    let d = o.d()?;
                    let states = o.states(d)?;
                    let mut r = build_minimal_tifs_realization(d, &states, o.epsilon.unwrap_or(0.1))?;
                    r.tolerance = o.tolerance.unwrap_or(1e-12);
                    (r, minimal_tifs(d, &states)?.graph)
                }
            };
            let report = verify(&r, &g)?;
            json_line(out, &report);
            if !report.pass {
                return Err(Failure::Check(format!(
                    "realization fails: edge residual {:e}, smallest non-edge overlap {:?}",
                    report.max_edge_residual, report.min_nonedge_overlap
                )));
            }
        }
        Command::RealizeSearch { input, restarts } => {
            let g = read_graphs(input)?.remove(0);
            let r = numeric_realization_search(&g, o.d()?, *restarts, o.seed.unwrap_or(0))?;
            writeln!(err, "residual {:e}, converged {}", r.residual, r.converged())?;
            json_line(out, &r);
        }
        Command::Angle {
            search,
            trials,
            iterations,
        } => {
            if *search {
                let m = min_angle_search(*trials, *iterations, o.seed.unwrap_or(0))?;
                json_line(out, &m);
                writeln!(err, "smallest angle {:.12} rad at trial {}", m.angle, m.trial)?;
            } else {
                let d = o.d()?;
                let r = build_minimal_tifs_realization(d, &o.states(d)?, o.epsilon.unwrap_or(0.1))?;
                writeln!(out, "{:.15}", angle_between(&r, crate::construct::A, crate::construct::B))?;
            }
        }
        Command::RaysToGraph { input } => {
            let rays = parse_rays(&read_text(input)?)?;
            let g = graph_from_rays(&rays, o.tolerance.unwrap_or(1e-9))?;
            emit_graph(out, &g, o.emit(Emit::Graph6), o.d);
            if o.emit.is_none() {
                write!(err, "{}", format_rays(&rays))?;
            }
        }
        Command::Export { input } => {
            for g in read_graphs(input)? {
                emit_graph(out, &g, o.emit(Emit::Graph6), o.d);
            }
        }
    }
    Ok(())
}

fn classify(
    input: &str,
    a: Option<usize>,
    b: Option<usize>,
    expect: Option<KindArg>,
    o: &Opts,
    out: &mut Vec<u8>,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let (graphs, claim) = match parse_input(&read_text(input)?)? {
        Input::Graphs(g) => (g, None),
        Input::Certificate(c) => (vec![c.parse_graph()?], Some(c)),
    };
    let d = match (&claim, o.d) {
        (_, Some(d)) => d,
        (Some(c), None) => c.d,
        (None, None) => return Err(usage("--d is required")),
    };
    let pair = match (&claim, a, b) {
        (_, Some(a), Some(b)) => Some((a, b)),
        (Some(c), None, None) => Some((c.a, c.b_or_c)),
        (_, None, None) => None,
        _ => return Err(usage("--a and --b go together")),
    };
    let emit = o.emit(Emit::Json);
    let mut failed = Vec::new();
    for g in &graphs {
        let verdicts = match pair {
            Some((a, b)) => vec![classify_pair(g, d, a, b)?],
            None => classify_all_pairs(g, d)?,
        };
        if emit == Emit::Json {
            for v in &verdicts {
                out.extend(Certificate::new(g, d, v).to_json().bytes());
                out.push(b'\n');
            }
        } else if verdicts.iter().any(|v| v.kind == Kind::Tifs) {
            emit_graph(out, g, emit, Some(d));
        }
        if let Some(want) = expect.map(Kind::from).or(claim.as_ref().map(|c| c.kind)) {
            let seen = verdicts.iter().any(|v| v.kind == want) || (want == Kind::None && verdicts.is_empty());
            if !seen {
                failed.push(format!("{} is not {want}", to_graph6(g)));
            }
        }
        writeln!(err, "{}: {} positive pairs", to_graph6(g), verdicts.iter().filter(|v| v.kind != Kind::None).count())?;
    }
    if !failed.is_empty() {
        return Err(Failure::Check(failed.join("; ")));
    }
    Ok(())
}
