//! `qrd`: command-line front end.
//!
//! Every run prints one JSON report on stdout. Exit codes: 0 success,
//! 1 negative answer (invalid labeling, unsolvable instance), 2 bad input,
//! 3 budget or timeout, 4 violated precondition.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qrd::approx::{ds_approx, qrd_approx, Backend};
use qrd::classes::{
    build_family_f, build_family_fprime, eds_bounds, recognize_threshold, threshold_gamma4r, FamilyGraph,
};
use qrd::exact::{
    branch_and_bound_4r, brute_force_4r, domination_number, Budget, SolveReport, DEFAULT_BRUTE_FORCE_CAP,
    DEFAULT_DOMINATION_CAP,
};
use qrd::exact_cover::{solve_etc, EtcInstance};
use qrd::graph::{
    generate, is_dominating_set, random_connected, random_connected_bounded, random_gnp, random_threshold, Family,
};
use qrd::ilp::{build_model, Uniqueness};
use qrd::labeling::{is_valid, verify};
use qrd::reductions::{build_gadget, witness, GadgetKind};
use qrd::{Error, Graph, Labeling};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "qrd", version, about = "Quadruple Roman domination toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a labeling against a graph.
    Verify {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        labels: PathBuf,
    },
    /// Exact minimum weight.
    Solve(SolveArgs),
    /// Greedy labeling with its ratio bound.
    Approx {
        #[arg(short, long)]
        graph: PathBuf,
        /// Also compute the exact optimum by brute force (small graphs only).
        #[arg(long)]
        optimum: bool,
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Domination number, or a dominating set through the pendant construction with `--k`.
    Dom {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = BackendArg::Greedy)]
        backend: BackendArg,
        /// Seconds for the exact backend.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_DOMINATION_CAP)]
        cap: usize,
    },
    /// Threshold recognition and efficient-domination bounds.
    Classify {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// Build a reduction gadget from an exact-cover instance.
    Reduce {
        #[arg(long, value_enum)]
        gadget: GadgetArg,
        #[arg(long)]
        etc: PathBuf,
        /// Also write the threshold witness labeling (needs a solvable instance).
        #[arg(long)]
        witness: bool,
        /// Writes PREFIX.graph, PREFIX.json and, with --witness, PREFIX.labels.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build an extremal family member.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Export the ILP model in LP format.
    Ilp {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use `<= 1` uniqueness rows instead of `= 1`.
        #[arg(long)]
        as_printed: bool,
    },
    /// Generate a graph.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Bnb)]
    method: Method,
    /// Seconds (branch and bound only).
    #[arg(long)]
    timeout: Option<f64>,
    /// Search node limit (branch and bound only).
    #[arg(long)]
    node_limit: Option<u64>,
    /// Largest graph brute force accepts.
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    cap: usize,
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Graphs with γ4R = 4γ + 1.
    F {
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Graph attached to each x_i (default K1).
        #[arg(long)]
        h: Option<PathBuf>,
        /// Graph joined to w (default K2).
        #[arg(long)]
        gprime: Option<PathBuf>,
        /// Universal vertex of gprime.
        #[arg(long, default_value_t = 0)]
        y: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Graphs with γ4R = 5γ.
    Fprime {
        #[arg(long, default_value_t = 5)]
        r: usize,
        /// Base graph (default K2).
        #[arg(short, long)]
        graph: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Size parameters: n for most kinds, `a b` for complete-bipartite.
    params: Vec<usize>,
    /// Edge probability (gnp, connected) or probability of a dominating vertex (threshold).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Extra edge attempts for `bounded`.
    #[arg(long, default_value_t = 0)]
    extra: usize,
    /// Force a connected threshold graph.
    #[arg(long)]
    connected: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Bnb,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Greedy,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    Star,
    Comb,
    Split,
    Planar,
}

impl From<GadgetArg> for GadgetKind {
    fn from(g: GadgetArg) -> Self {
        match g {
            GadgetArg::Star => GadgetKind::Star,
            GadgetArg::Comb => GadgetKind::Comb,
            GadgetArg::Split => GadgetKind::Split,
            GadgetArg::Planar => GadgetKind::Planar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Path,
    Cycle,
    Star,
    Comb,
    Complete,
    CompleteBipartite,
    Gnp,
    Connected,
    Bounded,
    Threshold,
}

const NEGATIVE: u8 = 1;
const INPUT: u8 = 2;
const BUDGET: u8 = 3;
const PRECONDITION: u8 = 4;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) => PRECONDITION,
            Error::Budget(_) => BUDGET,
            _ => INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct ErrorInfo {
    code: u8,
    message: String,
}

#[derive(Serialize)]
struct RunReport {
    tool: &'static str,
    version: &'static str,
    command: Vec<String>,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    result: Value,
    error: Option<ErrorInfo>,
    exit_code: u8,
    timings: Timings,
}

#[derive(Serialize)]
struct Timings {
    total_ms: f64,
}

#[derive(Default)]
struct Io {
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Io {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure { code: INPUT, message: format!("{}: {e}", path.display()) })?;
        self.inputs.push(FileDigest { path: path.display().to_string(), sha256: digest(text.as_bytes()) });
        Ok(text)
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, Failure> {
        let text = self.read(path)?;
        Graph::parse(&text).map_err(|e| Failure { code: INPUT, message: format!("{}: {e}", path.display()) })
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<(), Failure> {
        fs::write(path, text).map_err(|e| Failure { code: INPUT, message: format!("{}: {e}", path.display()) })?;
        self.outputs.push(FileDigest { path: path.display().to_string(), sha256: digest(text.as_bytes()) });
        Ok(())
    }
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn budget(timeout: Option<f64>, nodes: Option<u64>) -> Result<Budget, Failure> {
    let time = match timeout {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return Err(Failure { code: INPUT, message: format!("timeout must be a nonnegative number, got {t}") })
        }
        t => t.map(Duration::from_secs_f64),
    };
    Ok(Budget { time, nodes })
}

fn solve_outcome(rep: &SolveReport) -> u8 {
    if rep.is_optimal() {
        0
    } else {
        BUDGET
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn run(cmd: Command, io: &mut Io) -> Result<(Value, u8), Failure> {
    match cmd {
        Command::Verify { graph, labels } => {
            let g = io.graph(&graph)?;
            let text = io.read(&labels)?;
            let f = Labeling::parse(&text, Some(g.n()))
                .map_err(|e| Failure { code: INPUT, message: format!("{}: {e}", labels.display()) })?;
            let rep = verify(&g, &f)?;
            let code = if rep.valid { 0 } else { NEGATIVE };
            Ok((to_value(&rep), code))
        }
        Command::Solve(a) => {
            let g = io.graph(&a.graph)?;
            let rep = match a.method {
                Method::Brute => brute_force_4r(&g, a.cap)?,
                Method::Bnb => branch_and_bound_4r(&g, budget(a.timeout, a.node_limit)?),
            };
            if let (Some(path), Some(f)) = (&a.witness_out, rep.labeling()) {
                io.write(path, &f.to_line())?;
            }
            let method = match a.method {
                Method::Brute => "brute",
                Method::Bnb => "bnb",
            };
            Ok((json!({ "method": method, "n": g.n(), "m": g.m(), "report": rep }), solve_outcome(&rep)))
        }
        Command::Approx { graph, optimum, cap, witness_out } => {
            let g = io.graph(&graph)?;
            let mut rep = qrd_approx(&g);
            let mut within = None;
            if optimum {
                let opt = brute_force_4r(&g, cap)?.optimum;
                within = Some(rep.within_bound(opt));
                rep = rep.with_optimum(opt);
            }
            if let Some(path) = &witness_out {
                io.write(path, &rep.labeling.to_line())?;
            }
            let valid = is_valid(&g, &rep.labeling)?;
            Ok((json!({ "report": rep, "valid": valid, "within_bound": within }), 0))
        }
        Command::Dom { graph, k, backend, timeout, cap } => {
            let g = io.graph(&graph)?;
            match k {
                None => {
                    let rep = domination_number(&g, cap)?;
                    Ok((json!({ "gamma": rep.optimum, "report": rep }), 0))
                }
                Some(k) => {
                    let be = match backend {
                        BackendArg::Greedy => Backend::Greedy,
                        BackendArg::Exact => Backend::Exact(budget(timeout, None)?),
                    };
                    let out = ds_approx(&g, k, be, cap)?;
                    let dominating = is_dominating_set(&g, &out.set);
                    Ok((json!({ "k": k, "size": out.set.len(), "dominating": dominating, "outcome": out }), 0))
                }
            }
        }
        Command::Classify { graph } => {
            let g = io.graph(&graph)?;
            let threshold = match recognize_threshold(&g) {
                None => json!({ "is_threshold": false }),
                Some(cert) => {
                    let labeling = threshold_gamma4r(&g, &cert).ok();
                    json!({
                        "is_threshold": true,
                        "certificate": cert,
                        "gamma4r": labeling.as_ref().map(Labeling::weight),
                        "labeling": labeling,
                    })
                }
            };
            Ok((json!({ "n": g.n(), "m": g.m(), "threshold": threshold, "eds": eds_bounds(&g) }), 0))
        }
        Command::Reduce { gadget, etc, witness: want_witness, output } => {
            let text = io.read(&etc)?;
            let inst = EtcInstance::parse(&text)
                .map_err(|e| Failure { code: INPUT, message: format!("{}: {e}", etc.display()) })?;
            let kind = GadgetKind::from(gadget);
            let gg = build_gadget(kind, &inst)?;
            if want_witness && kind == GadgetKind::Planar {
                return Err(witness(kind, &inst, &[]).unwrap_err().into());
            }
            io.write(&with_ext(&output, "graph"), &gg.graph.to_edge_list())?;
            let sidecar = serde_json::to_string_pretty(&gg.sidecar_json()).expect("sidecar serializes");
            io.write(&with_ext(&output, "json"), &(sidecar + "\n"))?;
            let mut result = json!({
                "kind": kind,
                "r": gg.r,
                "s": gg.s,
                "n": gg.graph.n(),
                "m": gg.graph.m(),
                "threshold": gg.threshold,
                "certificate_ok": gg.verify_structure()?,
            });
            let mut code = 0;
            if want_witness {
                let cover = solve_etc(&inst);
                result["cover"] = to_value(&cover);
                match cover {
                    None => code = NEGATIVE,
                    Some(cover) => {
                        let f = witness(kind, &inst, &cover)?;
                        io.write(&with_ext(&output, "labels"), &f.to_line())?;
                        result["witness_weight"] = json!(f.weight());
                        result["witness_valid"] = json!(is_valid(&gg.graph, &f)?);
                    }
                }
            }
            Ok((result, code))
        }
        Command::Family(fam) => {
            let (name, built, output) = match fam {
                FamilyCmd::F { t, h, gprime, y, output } => {
                    let h = match h {
                        Some(p) => io.graph(&p)?,
                        None => Graph::empty(1),
                    };
                    let gp = match gprime {
                        Some(p) => io.graph(&p)?,
                        None => generate(Family::Complete, &[2])?,
                    };
                    ("f", build_family_f(t, &h, &gp, y)?, output)
                }
                FamilyCmd::Fprime { r, graph, output } => {
                    let g = match graph {
                        Some(p) => io.graph(&p)?,
                        None => generate(Family::Complete, &[2])?,
                    };
                    ("fprime", build_family_fprime(&g, r)?, output)
                }
            };
            family_report(name, &built, output.as_deref(), io)
        }
        Command::Ilp { graph, output, as_printed } => {
            let g = io.graph(&graph)?;
            let uniq = if as_printed { Uniqueness::AtMostOne } else { Uniqueness::Exact };
            let model = build_model(&g, uniq);
            let lp = model.to_lp();
            let mut result = json!({
                "uniqueness": if as_printed { "at-most-one" } else { "exact" },
                "variables": model.num_vars(),
                "constraints": model.num_rows(),
            });
            match &output {
                Some(path) => io.write(path, &lp)?,
                None => result["lp"] = json!(lp),
            }
            Ok((result, 0))
        }
        Command::Gen(a) => {
            let g = gen_graph(&a)?;
            let text = g.to_edge_list();
            let mut result = json!({ "n": g.n(), "m": g.m(), "seed": a.seed });
            match &a.output {
                Some(path) => io.write(path, &text)?,
                None => result["graph"] = json!(text),
            }
            Ok((result, 0))
        }
    }
}

fn family_report(name: &str, fam: &FamilyGraph, output: Option<&Path>, io: &mut Io) -> Result<(Value, u8), Failure> {
    let mut result = json!({
        "family": name,
        "n": fam.graph.n(),
        "m": fam.graph.m(),
        "roles": fam.roles,
        "eds": fam.eds,
        "gamma": fam.eds.len(),
        "witness": fam.witness,
        "witness_weight": fam.witness.weight(),
        "witness_valid": is_valid(&fam.graph, &fam.witness)?,
    });
    match output {
        Some(prefix) => {
            io.write(&with_ext(prefix, "graph"), &fam.graph.to_edge_list())?;
            io.write(&with_ext(prefix, "labels"), &fam.witness.to_line())?;
        }
        None => result["graph"] = json!(fam.graph.to_edge_list()),
    }
    Ok((result, 0))
}

fn one_param(a: &GenArgs) -> Result<usize, Failure> {
    match a.params[..] {
        [n] => Ok(n),
        _ => Err(Failure { code: INPUT, message: format!("expected one size parameter, got {}", a.params.len()) }),
    }
}

fn gen_graph(a: &GenArgs) -> Result<Graph, Failure> {
    let fixed = |f: Family| generate(f, &a.params).map_err(Failure::from);
    if !(0.0..=1.0).contains(&a.p) {
        return Err(Failure { code: INPUT, message: format!("--p must lie in [0, 1], got {}", a.p) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    Ok(match a.kind {
        GenKind::Path => fixed(Family::Path)?,
        GenKind::Cycle => fixed(Family::Cycle)?,
        GenKind::Star => fixed(Family::Star)?,
        GenKind::Comb => fixed(Family::Comb)?,
        GenKind::Complete => fixed(Family::Complete)?,
        GenKind::CompleteBipartite => fixed(Family::CompleteBipartite)?,
        GenKind::Gnp => random_gnp(one_param(a)?, a.p, &mut rng),
        GenKind::Connected => random_connected(one_param(a)?, a.p, &mut rng),
        GenKind::Bounded => {
            let n = one_param(a)?;
            if a.max_degree < 2 && n > 2 {
                return Err(Failure {
                    code: PRECONDITION,
                    message: format!("a connected graph on {n} vertices needs max degree ≥ 2"),
                });
            }
            random_connected_bounded(n, a.max_degree, a.extra, &mut rng)
        }
        GenKind::Threshold => random_threshold(one_param(a)?, a.p, a.connected, &mut rng),
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mut io = Io::default();
    let (result, error, code) = match run(cli.command, &mut io) {
        Ok((result, code)) => (result, None, code),
        Err(f) => {
            eprintln!("qrd: {}", f.message);
            (Value::Null, Some(ErrorInfo { code: f.code, message: f.message }), f.code)
        }
    };
    let report = RunReport {
        tool: "qrd",
        version: env!("CARGO_PKG_VERSION"),
        command,
        inputs: io.inputs,
        outputs: io.outputs,
        result,
        error,
        exit_code: code,
        timings: Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 },
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // A closed pipe downstream is not our error.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
