//! The `loom` command line: generate crystals, energy tables and embeddings,
//! run verification suites, and write JSON, DOT or plain summaries.
//!
//! Exit codes: 0 success, 1 a check failed (or an unexpected error), 2 invalid
//! configuration, 3 node cap exceeded. `LOOM_NODE_CAP` sets the node cap
//! when `--node-cap` is absent.

pub mod json;
pub mod literal;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use loom_core::audit::{self, Target};
use loom_core::crystal::{
    generate, Affinization, Affinized, CrystalGraph, FiniteCrystal, GenerateOptions, PathCrystal, Tensor,
    TensorCrystal, DEFAULT_NODE_CAP,
};
use loom_core::energy::{compatible_preorder, edge_rule_violations, energy_table};
use loom_core::loop_embed::{DecompositionCounts, LoopSetup};
use loom_core::report::Report;
use loom_core::sl2::lattice;
use loom_core::{Ambient, CartanData, Error, Path};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use literal::WeightLiteral;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NODE_CAP: i32 = 3;

pub const NODE_CAP_VAR: &str = "LOOM_NODE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(Error::NodeCap(_)) => EXIT_NODE_CAP,
            CliError::Core(
                Error::InvalidType(_)
                | Error::IndexOutOfRange { .. }
                | Error::BoundRequired
                | Error::Parse(_)
                | Error::Invalid(_)
                | Error::NonIntegral(_)
                | Error::AmbientMismatch,
            ) => EXIT_CONFIG,
            _ => EXIT_CHECK_FAILED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "loom", version, about = "Littelmann path crystals for untwisted affine types")]
pub struct Cli {
    /// Worker threads for parallel suites (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Affine Cartan data.
    Cartan(CommonArgs),
    /// Generate a crystal graph.
    Gen(GenArgs),
    /// Energy table of B(ϖ_i).
    Energy(CommonArgs),
    /// ψ on the affinized tensor power window.
    Embed(CommonArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmbientArg {
    Classical,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Normality,
    Weyl,
    Stretch,
    Concat,
    Xi,
    Energy,
    Maj,
    Psi,
    #[value(alias = "psi-decomposition")]
    Decompose,
    #[value(alias = "sl2-lemma")]
    Sl2,
    All,
}

impl Suite {
    const EVERY: [Suite; 10] = [
        Suite::Normality,
        Suite::Weyl,
        Suite::Stretch,
        Suite::Concat,
        Suite::Xi,
        Suite::Energy,
        Suite::Maj,
        Suite::Psi,
        Suite::Decompose,
        Suite::Sl2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normality => "normality",
            Suite::Weyl => "weyl",
            Suite::Stretch => "stretch",
            Suite::Concat => "concat",
            Suite::Xi => "xi",
            Suite::Energy => "energy",
            Suite::Maj => "maj",
            Suite::Psi => "psi",
            Suite::Decompose => "decompose",
            Suite::Sl2 => "sl2",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Affine type label: A, B, C, D, E, F or G.
    #[arg(long = "type")]
    pub type_label: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Fundamental index i (1 ≤ i ≤ rank).
    #[arg(long, default_value_t = 1)]
    pub i: usize,
    /// Tensor power m (default 1).
    #[arg(long, visible_alias = "m")]
    pub power: Option<usize>,
    /// Degree window |n| ≤ W for affine objects.
    #[arg(long)]
    pub window: Option<i64>,
    #[arg(long)]
    pub node_cap: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here (atomically) instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = AmbientArg::Classical)]
    pub ambient: AmbientArg,
    /// δ-degree n of the seed π_{mϖ_i + nδ} for `--ambient affine`.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub degree: i64,
    /// Generate from the straight-line path to `--weight`.
    #[arg(long)]
    pub ls: bool,
    /// Weight literal such as "2w1+1d".
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Affinize B(ϖ_i)^{⊗m} and keep degrees |n| ≤ W.
    #[arg(long)]
    pub affinize: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite_name: Option<Suite>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Shape (t1, t2) for the sl2 suite.
    #[arg(long, default_value_t = 1)]
    pub t1: u32,
    #[arg(long, default_value_t = 1)]
    pub t2: u32,
    /// Random visiting orders for the energy suite.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// Shorthand for `--format json`.
    #[arg(long)]
    pub json: bool,
}

/// A finished command: the artifact text and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

/// The validated parameters shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cartan: Option<CartanData>,
    pub i: usize,
    pub m: usize,
    pub window: Option<i64>,
    pub node_cap: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs, default_format: Format, env_cap: Option<String>) -> Result<Self, CliError> {
        let cartan = match (&a.type_label, a.rank) {
            (Some(t), Some(r)) => Some(CartanData::build(t, r).map_err(|e| CliError::Config(e.to_string()))?),
            (None, None) => None,
            _ => return Err(CliError::Config("--type and --rank go together".into())),
        };
        if let Some(c) = &cartan {
            if a.i == 0 || a.i > c.rank() {
                return Err(CliError::Config(format!("--i must lie in 1..={} for {}", c.rank(), c.cartan_type())));
            }
        }
        let m = a.power.unwrap_or(1);
        if m == 0 {
            return Err(CliError::Config("--power must be at least 1".into()));
        }
        let node_cap = match (a.node_cap, env_cap) {
            (Some(n), _) => n,
            (None, Some(v)) => {
                v.trim().parse().map_err(|_| CliError::Config(format!("{NODE_CAP_VAR}={v:?} is not a count")))?
            }
            (None, None) => DEFAULT_NODE_CAP,
        };
        if node_cap == 0 {
            return Err(CliError::Config("node cap must be positive".into()));
        }
        Ok(RunConfig {
            cartan,
            i: a.i,
            m,
            window: a.window,
            node_cap,
            format: a.format.unwrap_or(default_format),
            output: a.output.clone(),
        })
    }

    pub fn cartan(&self) -> Result<&CartanData, CliError> {
        self.cartan.as_ref().ok_or_else(|| CliError::Config("--type and --rank are required".into()))
    }

    /// The window, required to be at least 2.
    pub fn affine_window(&self, default: Option<i64>) -> Result<i64, CliError> {
        match self.window.or(default) {
            Some(w) if w >= 2 => Ok(w),
            Some(w) => Err(CliError::Config(format!("--window must be at least 2, got {w}"))),
            None => Err(CliError::Config("affine generation needs --window".into())),
        }
    }

    fn generate_options(&self, window: Option<i64>) -> GenerateOptions {
        GenerateOptions { window, node_cap: self.node_cap }
    }

    fn target(&self) -> Result<Target, CliError> {
        Ok(Target::new(self.cartan()?.clone(), self.i, self.m, self.node_cap)?)
    }

    fn loop_setup(&self) -> Result<LoopSetup, CliError> {
        Ok(LoopSetup::with_cap(self.cartan()?.clone(), self.i, self.m, self.node_cap)?)
    }

    fn fundamental(&self) -> Result<CrystalGraph<Path>, CliError> {
        let c = self.cartan()?;
        let seed = Path::linear(c.classical_fundamental(self.i)?)?;
        Ok(generate(&PathCrystal::new(c, Ambient::Classical), seed, self.generate_options(None))?)
    }

    fn describe(&self) -> String {
        match &self.cartan {
            Some(c) => format!("{} i={} m={}", c.cartan_type(), self.i, self.m),
            None => String::from("-"),
        }
    }
}

/// Parses `args` (including the program name), runs the command, writes the
/// artifact and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli, std::env::var(NODE_CAP_VAR).ok()) {
        Ok((outcome, output)) => match emit(&outcome.text, output.as_deref()) {
            Ok(()) if outcome.pass => EXIT_OK,
            Ok(()) => EXIT_CHECK_FAILED,
            Err(e) => {
                eprintln!("loom: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("loom: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command inside a pool of `--threads` workers and returns the
/// outcome with its destination.
pub fn execute(cli: &Cli, env_cap: Option<String>) -> Result<(Outcome, Option<PathBuf>), CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Config("--threads must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(&cli.command, env_cap))
        }
        None => dispatch(&cli.command, env_cap),
    }
}

fn dispatch(cmd: &Command, env_cap: Option<String>) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let (cfg, outcome) = match cmd {
        Command::Cartan(a) => {
            let cfg = RunConfig::from_args(a, Format::Json, env_cap)?;
            let out = cmd_cartan(&cfg)?;
            (cfg, out)
        }
        Command::Gen(a) => {
            let cfg = RunConfig::from_args(&a.common, Format::Json, env_cap)?;
            let out = cmd_gen(&cfg, a)?;
            (cfg, out)
        }
        Command::Energy(a) => {
            let cfg = RunConfig::from_args(a, Format::Json, env_cap)?;
            let out = cmd_energy(&cfg)?;
            (cfg, out)
        }
        Command::Embed(a) => {
            let cfg = RunConfig::from_args(a, Format::Json, env_cap)?;
            let out = cmd_embed(&cfg)?;
            (cfg, out)
        }
        Command::Verify(a) => {
            let mut cfg = RunConfig::from_args(&a.common, Format::Json, env_cap)?;
            if a.json {
                cfg.format = Format::Json;
            }
            let out = cmd_verify(&cfg, a)?;
            (cfg, out)
        }
    };
    Ok((outcome, cfg.output))
}

/// Writes to stdout, or to `path` through a temporary file in the same
/// directory that is renamed into place once complete.
pub fn emit(text: &str, path: Option<&FsPath>) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => FsPath::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(p).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}

fn no_dot(cfg: &RunConfig, what: &str) -> Result<(), CliError> {
    if cfg.format == Format::Dot {
        return Err(CliError::Config(format!("{what} has no DOT rendering")));
    }
    Ok(())
}

pub fn cmd_cartan(cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_dot(cfg, "cartan")?;
    let c = cfg.cartan()?;
    let report = audit::cartan_suite(c);
    let text = match cfg.format {
        Format::Summary => format!(
            "type: {}\nmarks: {:?}\ncomarks: {:?}\n{}",
            c.cartan_type(),
            c.marks(),
            c.comarks(),
            summary_lines(&report)
        ),
        _ => json::render(&json::cartan(c)),
    };
    Ok(Outcome { text, pass: report.all_pass() })
}

fn graph_output<E: json::Element>(cfg: &RunConfig, g: &CrystalGraph<E>, what: &str) -> Outcome {
    let text = match cfg.format {
        Format::Json => {
            let mut v = json::graph(g);
            v["crystal"] = json!(what);
            json::render(&v)
        }
        Format::Dot => json::dot(g),
        Format::Summary => {
            format!("crystal: {what}\nnodes: {}\nedges: {}\ntruncated: {}\n", g.len(), g.edges().len(), g.truncated())
        }
    };
    Outcome { text, pass: true }
}

pub fn cmd_gen(cfg: &RunConfig, a: &GenArgs) -> Result<Outcome, CliError> {
    let c = cfg.cartan()?;
    let (i, m) = (cfg.i, cfg.m);
    if a.weight.is_some() && !a.ls {
        return Err(CliError::Config("--weight needs --ls".into()));
    }
    if a.affinize && (a.ls || a.ambient == AmbientArg::Affine) {
        return Err(CliError::Config("--affinize cannot be combined with --ls or --ambient affine".into()));
    }
    if a.ls {
        let text = a.weight.as_deref().ok_or_else(|| CliError::Config("--ls needs --weight".into()))?;
        let lambda = WeightLiteral::parse(text)?.to_weight(c)?;
        let ambient = lambda.ambient();
        if a.ambient == AmbientArg::Affine && ambient == Ambient::Classical {
            return Err(CliError::Config("--ambient affine needs a d term in --weight".into()));
        }
        let window = match ambient {
            Ambient::Affine => Some(cfg.affine_window(None)?),
            Ambient::Classical => None,
        };
        let g = generate(&PathCrystal::new(c, ambient), Path::linear(lambda.clone())?, cfg.generate_options(window))?;
        return Ok(graph_output(cfg, &g, &format!("{} B({text})", c.cartan_type())));
    }
    let fundamental = cfg.fundamental()?;
    let seed = fundamental.node(fundamental.seed().expect("generated graphs have a seed")).clone();
    if a.ambient == AmbientArg::Affine {
        let window = cfg.affine_window(None)?;
        let lambda =
            seed.endpoint().scale(&loom_core::rational::int(m as i64)).with_delta(loom_core::rational::int(a.degree));
        let g =
            generate(&PathCrystal::new(c, Ambient::Affine), Path::linear(lambda)?, cfg.generate_options(Some(window)))?;
        return Ok(graph_output(cfg, &g, &format!("{} B({m}w{i}+{}d)", c.cartan_type(), a.degree)));
    }
    let tensor = TensorCrystal::new(FiniteCrystal::new(&fundamental)?);
    if a.affinize {
        let window = cfg.affine_window(None)?;
        let power = generate(&tensor, Tensor::new(vec![seed; m]), cfg.generate_options(None))?;
        let count = power.len() * (2 * window as usize + 1);
        if count > cfg.node_cap {
            return Err(Error::NodeCap(cfg.node_cap).into());
        }
        let elems: Vec<_> =
            power.nodes().iter().flat_map(|b| (-window..=window).map(move |n| Affinized::new(b.clone(), n))).collect();
        let g = CrystalGraph::from_elements(&Affinization::new(tensor), elems, Some(window))?;
        return Ok(graph_output(cfg, &g, &format!("{} B(w{i})^{m} affinized", c.cartan_type())));
    }
    if m == 1 {
        return Ok(graph_output(cfg, &fundamental, &format!("{} B(w{i})", c.cartan_type())));
    }
    let power = generate(&tensor, Tensor::new(vec![seed; m]), cfg.generate_options(None))?;
    Ok(graph_output(cfg, &power, &format!("{} B(w{i})^{m}", c.cartan_type())))
}

pub fn cmd_energy(cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_dot(cfg, "energy")?;
    let c = cfg.cartan()?;
    let g = cfg.fundamental()?;
    let table = energy_table(&g)?;
    let id = format!("{} B(w{})", c.cartan_type(), cfg.i);
    let violations = edge_rule_violations(&g, &table);
    let text = match cfg.format {
        Format::Summary => {
            let nonzero = table.values().iter().flatten().filter(|&&v| v != 0).count();
            format!(
                "crystal: {id}\nnodes: {}\nN: {}\nnonzero values: {nonzero}\ncompatible preorder: {}\nedge rule violations: {}\n",
                table.nodes().len(),
                table.grid(),
                compatible_preorder(&table).is_some(),
                violations.len()
            )
        }
        _ => json::render(&json::energy(&id, &table)),
    };
    Ok(Outcome { text, pass: violations.is_empty() })
}

pub fn cmd_embed(cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_dot(cfg, "embed")?;
    let c = cfg.cartan()?;
    let window = cfg.affine_window(None)?;
    let setup = cfg.loop_setup()?;
    let ps = setup.psi_side(window)?;
    let text = match cfg.format {
        Format::Summary => {
            let mut sizes = vec![0usize; cfg.m];
            for &s in &ps.classes {
                sizes[s] += 1;
            }
            format!(
                "crystal: {} B(w{})^{} window {window}\nnodes: {}\nclass sizes: {sizes:?}\n",
                c.cartan_type(),
                cfg.i,
                cfg.m,
                ps.graph.len()
            )
        }
        _ => {
            let mut v = json::embedding(&setup.fundamental, &ps);
            v["type"] = json!(c.type_label());
            v["rank"] = json!(c.rank());
            v["i"] = json!(cfg.i);
            v["m"] = json!(cfg.m);
            v["N"] = json!(setup.table.grid());
            json::render(&v)
        }
    };
    Ok(Outcome { text, pass: true })
}

/// One suite's checks plus any extra JSON fields it reports.
struct SuiteResult {
    report: Report,
    extra: Vec<(&'static str, Value)>,
}

impl From<Report> for SuiteResult {
    fn from(report: Report) -> Self {
        SuiteResult { report, extra: Vec::new() }
    }
}

fn run_suite(suite: Suite, cfg: &RunConfig, a: &VerifyArgs, target: Option<&Target>) -> Result<SuiteResult, CliError> {
    let target = || target.ok_or_else(|| CliError::Config("--type and --rank are required".into()));
    Ok(match suite {
        Suite::Normality => audit::normality_suite(target()?)?.into(),
        Suite::Weyl => audit::weyl_suite(target()?)?.into(),
        Suite::Stretch => audit::stretch_suite(target()?)?.into(),
        Suite::Concat => audit::concat_suite(target()?)?.into(),
        Suite::Energy => audit::energy_suite(target()?, a.seeds)?.into(),
        Suite::Maj => audit::maj_suite(target()?)?.into(),
        Suite::Xi => {
            let window = cfg.affine_window(Some(3))?;
            audit::xi_suite(cfg.cartan()?, cfg.i, cfg.m, window, cfg.node_cap)?.into()
        }
        Suite::Psi => {
            let window = cfg.affine_window(Some(3))?;
            audit::psi_suite(&cfg.loop_setup()?, window)?.into()
        }
        Suite::Decompose => {
            let window = cfg.affine_window(Some(3))?;
            let setup = cfg.loop_setup()?;
            let (ps, ds) = rayon::join(|| setup.psi_side(window), || setup.direct_side(window));
            let (ps, ds) = (ps?, ds?);
            let report = setup.compare(&ps, &ds)?;
            let counts = DecompositionCounts::of(&ps, &ds);
            SuiteResult { report, extra: vec![("counts", json!({"image": counts.image, "pieces": counts.pieces}))] }
        }
        Suite::Sl2 => {
            let (mut report, table) = lattice::verify_lemma(a.t1, a.t2)?;
            report.push_violations("sl2_relations", &lattice::relation_violations(&[a.t1, a.t2])?);
            SuiteResult { report, extra: vec![("table", json::limit_table(&table))] }
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

pub fn cmd_verify(cfg: &RunConfig, a: &VerifyArgs) -> Result<Outcome, CliError> {
    no_dot(cfg, "verify")?;
    let suite = match (a.suite_name, a.suite) {
        (Some(x), Some(y)) if x != y => return Err(CliError::Config("two different suites given".into())),
        (Some(x), _) | (None, Some(x)) => x,
        (None, None) => return Err(CliError::Config("name a suite, e.g. --suite normality".into())),
    };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EVERY.to_vec() } else { vec![suite] };
    let needs_target = suites.iter().any(|s| {
        matches!(s, Suite::Normality | Suite::Weyl | Suite::Stretch | Suite::Concat | Suite::Energy | Suite::Maj)
    });
    if suite != Suite::Sl2 {
        cfg.cartan()?;
    }
    let target = if needs_target { Some(cfg.target()?) } else { None };
    let results: Vec<Result<SuiteResult, CliError>> =
        suites.par_iter().map(|&s| run_suite(s, cfg, a, target.as_ref())).collect();

    let mut report = Report::new();
    let mut extra = serde_json::Map::new();
    for (s, r) in suites.iter().zip(results) {
        let r = r?;
        for mut check in r.report.checks {
            if suite == Suite::All {
                check.name = format!("{}/{}", s.name(), check.name);
            }
            report.checks.push(check);
        }
        for (k, v) in r.extra {
            let key = if suite == Suite::All { format!("{}/{k}", s.name()) } else { k.to_string() };
            extra.insert(key, v);
        }
    }
    let pass = report.all_pass();
    let text = match cfg.format {
        Format::Summary => format!("suite: {} ({})\n{}", suite.name(), cfg.describe(), summary_lines(&report)),
        _ => {
            let failures: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            let mut v = json!({
                "suite": suite.name(),
                "config": {
                    "type": cfg.cartan.as_ref().map(|c| c.type_label()),
                    "rank": cfg.cartan.as_ref().map(|c| c.rank()),
                    "i": cfg.i,
                    "m": cfg.m,
                    "window": cfg.window,
                    "t1": a.t1,
                    "t2": a.t2,
                    "seeds": a.seeds,
                },
                "checks": json::checks(&report),
                "failures": failures,
                "pass": pass,
            });
            for (k, x) in extra {
                v[k] = x;
            }
            json::render(&v)
        }
    };
    Ok(Outcome { text, pass })
}

fn summary_lines(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        if c.pass {
            out.push_str(&format!("PASS {}\n", c.name));
        } else {
            out.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
        }
    }
    let passed = r.checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", r.checks.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("loom").chain(args.iter().copied())).unwrap()
    }

    fn common(cli: &Cli) -> &CommonArgs {
        match &cli.command {
            Command::Cartan(a) | Command::Energy(a) | Command::Embed(a) => a,
            Command::Gen(g) => &g.common,
            Command::Verify(v) => &v.common,
        }
    }

    #[test]
    fn node_cap_precedence() {
        let cli = parse(&["cartan", "--type", "A", "--rank", "1"]);
        let cfg = RunConfig::from_args(common(&cli), Format::Json, Some("17".into())).unwrap();
        assert_eq!(cfg.node_cap, 17);
        let cli = parse(&["cartan", "--type", "A", "--rank", "1", "--node-cap", "5"]);
        let cfg = RunConfig::from_args(common(&cli), Format::Json, Some("17".into())).unwrap();
        assert_eq!(cfg.node_cap, 5);
        let err = RunConfig::from_args(common(&cli), Format::Json, None).map(|c| c.node_cap).unwrap();
        assert_eq!(err, 5);
        let cli = parse(&["cartan", "--type", "A", "--rank", "1"]);
        let err = RunConfig::from_args(common(&cli), Format::Json, Some("lots".into())).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn config_validation() {
        for args in [
            &["gen", "--type", "A", "--rank", "1", "--i", "2"][..],
            &["gen", "--type", "A"],
            &["gen", "--type", "Q", "--rank", "1"],
            &["gen", "--type", "A", "--rank", "1", "--power", "0"],
        ] {
            let cli = parse(args);
            let err = RunConfig::from_args(common(&cli), Format::Json, None).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_CONFIG, "{args:?}");
        }
    }

    #[test]
    fn suite_aliases() {
        let cli = parse(&["verify", "psi-decomposition"]);
        assert!(matches!(&cli.command, Command::Verify(v) if v.suite_name == Some(Suite::Decompose)));
        let cli = parse(&["verify", "--suite", "sl2-lemma"]);
        assert!(matches!(&cli.command, Command::Verify(v) if v.suite == Some(Suite::Sl2)));
        let cli = parse(&["verify", "--suite", "decompose", "--m", "2"]);
        assert_eq!(common(&cli).power, Some(2));
    }

    #[test]
    fn a1_fundamental_json_has_two_nodes() {
        let cli = parse(&["gen", "--type", "A", "--rank", "1", "--i", "1", "--ambient", "classical"]);
        let (out, _) = execute(&cli, None).unwrap();
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
        assert_eq!(v["edges"].as_array().unwrap().len(), 2);
    }
}
