//! Command definitions and dispatch.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use specrad_core::detect::{self, ForbiddenSpec};
use specrad_core::graph::{complete_bipartite, complete_split, friendship, Graph};
use specrad_core::graph6;
use specrad_core::search::{
    extremal_mu, scan_conjecture1, scan_conjecture2, verify_theorem1, verify_theorem2,
    verify_theorem3, ClaimVerdict, ResultStore, TheoremPart,
};
use specrad_core::spectral::{
    self, bound_c4_free, bound_edge_count, bound_min_degree_edges, deletion_bound_degree,
    deletion_bound_entry, min_entry_bound, spectral_radius, DEFAULT_MU_TOL,
};

use crate::output::{
    emit_bounds, emit_detect, emit_extremal, emit_mu, emit_verdicts, DetectRow, MuRow,
    OutputFormat,
};

pub const EXIT_DOMAIN_ERROR: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COUNTEREXAMPLE: u8 = 3;

/// Environment variable supplying the default worker thread count.
pub const THREADS_ENV: &str = "SPECRAD_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "specrad",
    version,
    about = "Spectral-radius workbench for graphs avoiding paths and cycles",
    after_help = "Exit codes: 0 ok, 1 domain error, 2 usage error, 3 counterexample to a verified claim."
)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Eigensolver residual tolerance (must be positive).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Worker threads; defaults to SPECRAD_THREADS or all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Complete split graph: k-clique joined to an independent set.
    Snk,
    /// Complete split graph plus one edge inside the independent set.
    SnkPlus,
    /// Triangles sharing a hub; order n = 2t+1 decides the count.
    Friendship,
    /// Complete bipartite graph with classes k and n-k.
    Kab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimArg {
    Th1a,
    Th1b,
    Th2,
    Th3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    A,
    B,
}

impl From<PartArg> for TheoremPart {
    fn from(p: PartArg) -> Self {
        match p {
            PartArg::A => TheoremPart::A,
            PartArg::B => TheoremPart::B,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a named construction as graph6.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Clique size (snk, snk-plus), first class size (kab); unused for
        /// friendship, where n = 2t+1 determines the triangle count.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Dominant adjacency eigenvalue with residual.
    #[command(group(ArgGroup::new("input").required(true).args(["g6", "stdin"])))]
    Mu {
        /// One graph6 string.
        #[arg(long)]
        g6: Option<String>,
        /// Read graph6 strings from stdin, one per line.
        #[arg(long)]
        stdin: bool,
    },
    /// All applicable spectral bound reports for one graph.
    Bounds {
        #[arg(long)]
        g6: String,
    },
    /// Forbidden-pattern presence for one graph.
    Detect {
        #[arg(long)]
        g6: String,
        /// Comma-separated patterns, e.g. "P5,C6,C>=6".
        #[arg(long)]
        forbid: String,
    },
    /// Exhaustive extremal sweep at one order.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        /// Restrict to connected graphs.
        #[arg(long)]
        connected: bool,
        /// Store directory for records and the run manifest.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Skip cells already present in the store.
        #[arg(long, requires = "output")]
        resume: bool,
    },
    /// Verify a claim over an order range.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        /// Restrict to connected graphs (path claims only).
        #[arg(long)]
        connected: bool,
    },
    /// Exploratory conjecture scan over an order range.
    Scan {
        /// 1 = forced cycles, 2 = forced trees.
        #[arg(long)]
        conjecture: u8,
        #[arg(long, value_enum)]
        part: PartArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
    },
}

/// Anything that ends the run with a nonzero status.
#[derive(Debug)]
pub enum RunError {
    Domain(String),
    Usage(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Domain(m) | RunError::Usage(m) => f.write_str(m),
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> RunError {
    RunError::Domain(e.to_string())
}

/// Executes a parsed command, writing reports to `out`. Returns whether a
/// counterexample verdict was produced.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<bool, RunError> {
    if let Some(t) = cli.tol {
        if t.is_nan() || t <= 0.0 {
            return Err(RunError::Usage(format!("tolerance must be positive, got {t}")));
        }
    }
    let threads = match cli.threads {
        Some(0) => return Err(RunError::Usage("thread count must be at least 1".to_string())),
        Some(t) => Some(t),
        None => std::env::var(THREADS_ENV)
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&t| t >= 1),
    };
    if let Some(t) = threads {
        // Ignore failure: the global pool can only be installed once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let tol = cli.tol.unwrap_or(DEFAULT_MU_TOL);

    let mut counterexample = false;
    match &cli.command {
        Command::Construct { family, n, k } => {
            let g = construct(*family, *n, *k)?;
            writeln!(out, "{}", graph6::encode(&g)).map_err(domain)?;
        }
        Command::Mu { g6, stdin } => {
            let mut rows = Vec::new();
            if let Some(text) = g6 {
                rows.push(mu_row(text, tol)?);
            } else if *stdin {
                let input = std::io::stdin();
                for line in input.lock().lines() {
                    let line = line.map_err(domain)?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    rows.push(mu_row(line.trim(), tol)?);
                }
            }
            write!(out, "{}", emit_mu(&rows, cli.format)).map_err(domain)?;
        }
        Command::Bounds { g6 } => {
            let g = graph6::decode(g6).map_err(domain)?;
            let reports = collect_bounds(&g)?;
            write!(out, "{}", emit_bounds(&reports, cli.format)).map_err(domain)?;
        }
        Command::Detect { g6, forbid } => {
            let g = graph6::decode(g6).map_err(domain)?;
            let spec: ForbiddenSpec = forbid.parse().map_err(domain)?;
            let rows: Vec<DetectRow> = spec
                .patterns()
                .iter()
                .map(|p| DetectRow {
                    pattern: p.to_string(),
                    present: detect::pattern_present(&g, *p),
                })
                .collect();
            let admissible = rows.iter().all(|r| !r.present);
            write!(out, "{}", emit_detect(g6, &rows, admissible, cli.format)).map_err(domain)?;
        }
        Command::Extremal { n, forbid, connected, output, resume } => {
            let spec: ForbiddenSpec = forbid.parse().map_err(domain)?;
            let mut store = match output {
                Some(dir) => Some(ResultStore::open(dir).map_err(domain)?),
                None => None,
            };
            let record = match (&store, resume) {
                (Some(s), true) if s.is_complete(*n, &spec, *connected) => s
                    .records()
                    .map_err(domain)?
                    .into_iter()
                    .find(|r| {
                        r.n == *n && r.forbid == spec && r.connected_only == *connected
                    })
                    .ok_or_else(|| {
                        RunError::Domain(
                            "manifest marks the cell complete but no record was found"
                                .to_string(),
                        )
                    })?,
                _ => {
                    let record = extremal_mu(*n, &spec, *connected).map_err(domain)?;
                    if let Some(s) = store.as_mut() {
                        s.append(&record).map_err(domain)?;
                    }
                    record
                }
            };
            write!(out, "{}", emit_extremal(&[record], cli.format)).map_err(domain)?;
        }
        Command::Verify { claim, k, n_from, n_to, connected } => {
            if *connected && matches!(claim, ClaimArg::Th2 | ClaimArg::Th3) {
                return Err(RunError::Usage(
                    "--connected applies to the path claims (th1a, th1b) only".to_string(),
                ));
            }
            let verdicts: Vec<ClaimVerdict> = match claim {
                ClaimArg::Th1a => {
                    verify_theorem1(TheoremPart::A, *k, *n_from, *n_to, *connected)
                }
                ClaimArg::Th1b => {
                    verify_theorem1(TheoremPart::B, *k, *n_from, *n_to, *connected)
                }
                ClaimArg::Th2 => verify_theorem2(*k, *n_from, *n_to),
                ClaimArg::Th3 => verify_theorem3(*k, *n_from, *n_to),
            }
            .map_err(domain)?;
            counterexample = verdicts.iter().any(|v| v.outcome.is_counterexample());
            write!(out, "{}", emit_verdicts(&verdicts, cli.format)).map_err(domain)?;
        }
        Command::Scan { conjecture, part, k, n_from, n_to } => {
            let verdicts = match conjecture {
                1 => scan_conjecture1((*part).into(), *k, *n_from, *n_to),
                2 => scan_conjecture2((*part).into(), *k, *n_from, *n_to),
                other => {
                    return Err(RunError::Usage(format!(
                        "unknown conjecture {other}; expected 1 or 2"
                    )))
                }
            }
            .map_err(domain)?;
            write!(out, "{}", emit_verdicts(&verdicts, cli.format)).map_err(domain)?;
        }
    }
    Ok(counterexample)
}

fn construct(family: Family, n: usize, k: Option<usize>) -> Result<Graph, RunError> {
    let need_k = || k.ok_or_else(|| RunError::Usage("this family requires --k".to_string()));
    match family {
        Family::Snk => complete_split(n, need_k()?, false).map_err(domain),
        Family::SnkPlus => complete_split(n, need_k()?, true).map_err(domain),
        Family::Friendship => {
            if n < 3 || n.is_multiple_of(2) {
                return Err(RunError::Domain(format!(
                    "friendship graphs have odd order 2t+1 >= 3, got {n}"
                )));
            }
            let t = (n - 1) / 2;
            if let Some(k) = k {
                if k != t {
                    return Err(RunError::Usage(format!(
                        "friendship derives t = (n-1)/2 = {t} from --n; got --k {k}"
                    )));
                }
            }
            friendship(t).map_err(domain)
        }
        Family::Kab => {
            let a = need_k()?;
            if a >= n {
                return Err(RunError::Domain(format!(
                    "first class size {a} must be below the order {n}"
                )));
            }
            complete_bipartite(a, n - a).map_err(domain)
        }
    }
}

fn mu_row(g6: &str, tol: f64) -> Result<MuRow, RunError> {
    let g = graph6::decode(g6).map_err(domain)?;
    let r = spectral_radius(&g, tol).map_err(domain)?;
    Ok(MuRow {
        g6: g6.to_string(),
        mu: r.mu,
        residual: r.residual,
        iterations: r.iterations as u64,
    })
}

fn collect_bounds(g: &Graph) -> Result<Vec<spectral::BoundReport>, RunError> {
    let mut reports = vec![
        bound_min_degree_edges(g).map_err(domain)?,
        bound_edge_count(g).map_err(domain)?,
    ];
    match bound_c4_free(g) {
        Ok(rep) => reports.push(rep),
        Err(spectral::SpectralError::ContainsC4) => {}
        Err(e) => return Err(domain(e)),
    }
    if g.order() >= 2 {
        reports.push(min_entry_bound(g).map_err(domain)?);
        let u = spectral_radius(g, DEFAULT_MU_TOL)
            .map_err(domain)?
            .min_entry_vertex();
        reports.push(deletion_bound_entry(g, u).map_err(domain)?);
        reports.push(deletion_bound_degree(g, u).map_err(domain)?);
    }
    Ok(reports)
}
