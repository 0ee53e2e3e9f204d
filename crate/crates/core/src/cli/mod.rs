//! Command-line front end: argument validation, dispatch to the suites and
//! report emission.
//!
//! Exit codes: 0 when no check failed, 1 on a failed check, 2 on invalid
//! parameters or unparsable input, 3 on a pole obstruction.

mod expr;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::{build_module, check_module};
use crate::qfield::{verify_q_identities, FieldCtx};
use crate::qops::{
    build_q, check_lemma1, check_lemma2, check_nilpotency, conjecture_scan, diag_sector, n2_suite, plactic_compare,
};
use crate::qtensor::{
    check_adjacent_swaps, eps_contract_residual, explore_dynamical_ybe, verify_rmatrix_structure, AlphaChoice,
};
use crate::report::{Outcome, Report};
use crate::zmodes::{check_confluence_samples, check_genex, check_rmatrix_equivalence, Chirality, GenexPlacement};

pub use expr::{parse_expr, parse_expr_in};

/// Largest rank and height accepted; beyond these the cyclotomic field alone
/// gets impractically large.
pub const MAX_N: usize = 16;
pub const MAX_H: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Nilpotency,
    Lemma1,
    Lemma2,
    N2Suite,
    Relations,
    Rmatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sectors {
    Left,
    Right,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verb {
    Eval { expr: String, normal_form: bool, on_vacuum: bool },
    FockBuild { sectors: Sectors },
    Qcheck(Suite),
    Conjecture,
    Diag,
    Plactic,
    Identities,
}

impl Verb {
    pub fn name(&self) -> String {
        match self {
            Verb::Eval { .. } => "eval".into(),
            Verb::FockBuild { .. } => "fock build".into(),
            Verb::Qcheck(s) => format!("qcheck {}", s.to_possible_value().unwrap().get_name()),
            Verb::Conjecture => "conjecture".into(),
            Verb::Diag => "diag".into(),
            Verb::Plactic => "plactic".into(),
            Verb::Identities => "identities".into(),
        }
    }
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub h: usize,
    pub verb: Verb,
    pub max_depth: Option<usize>,
    pub max_len: Option<usize>,
    /// Sector for `eval` inputs that name no sector-specific symbol.
    pub chirality: Chirality,
    pub seed: u64,
    pub samples: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "qzero", version, about = "Exact zero-mode algebra computations at roots of unity")]
struct Cli {
    #[command(subcommand)]
    verb: CliVerb,
}

#[derive(Args, Debug)]
struct Common {
    /// Rank of the quantum matrix.
    #[arg(long)]
    n: usize,
    /// Height; q = exp(-i pi / h).
    #[arg(long)]
    h: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumeration depth of the vacuum modules (default n*h).
    #[arg(long)]
    max_depth: Option<usize>,
    /// Longest word examined by scans and symbolic suites.
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CliVerb {
    /// Parse an algebra element and print it, optionally normal ordered.
    Eval {
        expr: String,
        #[arg(long)]
        normal_form: bool,
        /// Also apply the element to the vacuum of its module.
        #[arg(long)]
        on_vacuum: bool,
        /// Sector for inputs without zero modes or weights.
        #[arg(long, default_value = "left")]
        chirality: Chirality,
        #[command(flatten)]
        common: Common,
    },
    /// Vacuum module construction.
    Fock {
        #[command(subcommand)]
        action: FockAction,
    },
    /// Run a verification suite.
    Qcheck {
        #[arg(value_enum)]
        suite: Suite,
        /// Random words per confluence sample set.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Scan off-diagonal-containing monomials on the vacuum.
    Conjecture {
        #[command(flatten)]
        common: Common,
    },
    /// Build the diagonal sector and its annihilated subspace.
    Diag {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the diagonal operators with the hopping relations.
    Plactic {
        #[command(flatten)]
        common: Common,
    },
    /// Symbolic q-number identities.
    Identities {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum FockAction {
    /// Build and check the vacuum modules.
    Build {
        #[arg(long, value_enum, default_value_t = Sectors::Both)]
        chirality: Sectors,
        #[command(flatten)]
        common: Common,
    },
}

impl RunConfig {
    /// Parses `argv` (including the program name); bounds are checked by [`RunConfig::validate`].
    pub fn from_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv)?;
        let mut chirality = Chirality::Left;
        let mut samples = 64;
        let (verb, c) = match cli.verb {
            CliVerb::Eval { expr, normal_form, on_vacuum, chirality: ch, common } => {
                chirality = ch;
                (Verb::Eval { expr, normal_form, on_vacuum }, common)
            }
            CliVerb::Fock { action: FockAction::Build { chirality: sectors, common } } => {
                (Verb::FockBuild { sectors }, common)
            }
            CliVerb::Qcheck { suite, samples: s, common } => {
                samples = s;
                (Verb::Qcheck(suite), common)
            }
            CliVerb::Conjecture { common } => (Verb::Conjecture, common),
            CliVerb::Diag { common } => (Verb::Diag, common),
            CliVerb::Plactic { common } => (Verb::Plactic, common),
            CliVerb::Identities { common } => (Verb::Identities, common),
        };
        Ok(RunConfig {
            n: c.n,
            h: c.h,
            verb,
            max_depth: c.max_depth,
            max_len: c.max_len,
            chirality,
            seed: c.seed,
            samples,
            out: c.out,
            format: c.format,
        })
    }

    /// Every bound is checked here, before any computation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let eval = matches!(self.verb, Verb::Eval { .. });
        if self.n == 0 || (self.n == 1 && !eval) {
            return bad(format!("n must be at least 2, got n = {} (n = 1 is accepted by eval only)", self.n));
        }
        if self.n > MAX_N {
            return bad(format!("n must be at most {MAX_N}, got n = {}", self.n));
        }
        if self.h <= self.n {
            return bad(format!("h must exceed n, got n = {}, h = {}", self.n, self.h));
        }
        if self.h > MAX_H {
            return bad(format!("h must be at most {MAX_H}, got h = {}", self.h));
        }
        if self.n == 1 && matches!(self.verb, Verb::Eval { on_vacuum: true, .. }) {
            return bad("--on-vacuum needs n >= 2".into());
        }
        if self.max_depth == Some(0) {
            return bad("max-depth must be positive".into());
        }
        if self.max_len == Some(0) {
            return bad("max-len must be positive".into());
        }
        if self.verb == Verb::Qcheck(Suite::N2Suite) && self.n != 2 {
            return bad(format!("n2-suite requires n = 2, got n = {}", self.n));
        }
        if self.verb == Verb::Qcheck(Suite::Relations) && self.samples == 0 {
            return bad("samples must be positive".into());
        }
        Ok(())
    }

    fn ctx(&self) -> &'static FieldCtx {
        FieldCtx::get(self.n as u32, self.h as u32)
    }
}

/// What one invocation produced.
#[derive(Debug)]
pub struct RunResult {
    pub code: i32,
    pub report: Option<Report>,
    /// Rendered report when it goes to stdout (`None` after writing `--out`).
    pub stdout: Option<String>,
    /// Diagnostic for stderr.
    pub message: Option<String>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::Parse { .. } | Error::ChiralityMix => 2,
        Error::PoleObstruction { .. } => 3,
        _ => 1,
    }
}

/// Sizes the global worker pool from `QZERO_THREADS` once per process.
fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("QZERO_THREADS") else {
        return Ok(());
    };
    let k: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::InvalidParams(format!("QZERO_THREADS must be a positive integer, got `{v}`")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    Ok(())
}

/// Parses `argv`, runs the verb and renders the report.
pub fn run<I, T>(argv: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let failed = |code, msg: String| RunResult { code, report: None, stdout: None, message: Some(msg) };
    let cfg = match RunConfig::from_args(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunResult { code: 0, report: None, stdout: Some(e.to_string()), message: None }
                }
                _ => failed(2, e.to_string()),
            };
        }
    };
    if let Err(e) = init_threads().and_then(|_| cfg.validate()) {
        return failed(exit_code(&e), format!("error: {e}"));
    }
    let (report, text) = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => return failed(exit_code(&e), format!("error: {e}")),
    };
    let rendered = match cfg.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => text.unwrap_or_else(|| report.to_text()),
    };
    let code = if report.passed() { 0 } else { 1 };
    let stdout = match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                return failed(1, format!("error: cannot write {}: {e}", path.display()));
            }
            None
        }
        None => Some(rendered),
    };
    let message = (code != 0).then(|| format!("{} check(s) failed", report.failures().len()));
    RunResult { code, report: Some(report), stdout, message }
}

/// Entry point for the binary: prints and returns the exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let r = run(argv);
    if let Some(s) = &r.stdout {
        print!("{s}");
    }
    if let Some(m) = &r.message {
        eprintln!("{}", m.trim_end());
    }
    r.code
}

/// The report, plus a verb-specific text rendering when one is nicer than
/// the generic check listing.
fn execute(cfg: &RunConfig) -> Result<(Report, Option<String>)> {
    let ctx = cfg.ctx();
    match &cfg.verb {
        Verb::Eval { expr, normal_form, on_vacuum } => eval(cfg, expr, *normal_form, *on_vacuum),
        Verb::FockBuild { sectors } => Ok((fock_build(cfg, *sectors)?, None)),
        Verb::Qcheck(suite) => Ok((qcheck(cfg, *suite)?, None)),
        Verb::Conjecture => {
            let space = build_q(ctx, cfg.max_depth)?;
            Ok((conjecture_scan(&space, cfg.max_len.unwrap_or(4))?, None))
        }
        Verb::Diag => {
            let space = build_q(ctx, cfg.max_depth)?;
            Ok((diag_sector(&space, cfg.max_len.unwrap_or(4))?.1, None))
        }
        Verb::Plactic => {
            let space = build_q(ctx, cfg.max_depth)?;
            Ok((plactic_compare(&space, cfg.max_len.unwrap_or(cfg.h))?, None))
        }
        Verb::Identities => Ok((verify_q_identities(ctx), None)),
    }
}

fn eval(cfg: &RunConfig, text: &str, normal_form: bool, on_vacuum: bool) -> Result<(Report, Option<String>)> {
    let ctx = cfg.ctx();
    let e = parse_expr_in(ctx, text, cfg.chirality)?;
    let mut rep = Report::new("eval")
        .param("n", cfg.n)
        .param("h", cfg.h)
        .param("expr", text)
        .param("normal_form", normal_form);
    let printed = e.to_string();
    rep.run("eval.parse", || {
        Outcome::info(json!({ "element": printed, "chirality": e.chirality().name(), "terms": e.len() }))
    });
    rep.run("eval.round_trip", || match parse_expr_in(ctx, &printed, e.chirality()) {
        Ok(back) if back == e => Outcome::pass(),
        Ok(back) => Outcome::fail(format!("`{printed}` reparses as `{back}`")),
        Err(err) => Outcome::fail(format!("`{printed}` does not reparse: {err}")),
    });
    let mut target = e.clone();
    if normal_form {
        target = e.normal_form();
        let s = target.to_string();
        rep.run("eval.normal_form", || Outcome::info(json!({ "normal_form": s, "terms": target.len() })));
    }
    let mut shown = target.to_string() + "\n";
    if on_vacuum {
        // as written: a normal form may carry poles that the plain product avoids
        let m = build_module(ctx, target.chirality(), cfg.max_depth)?;
        let v = m.eval_on(&target, &m.vacuum())?;
        let parts: Vec<String> = v.iter().map(|(&s, c)| format!("({c})*{}", m.basis().label(s))).collect();
        let state = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        rep.complete = m.basis().complete;
        let st = state.clone();
        rep.run("eval.on_vacuum", || {
            Outcome::info(json!({ "state": st, "nonzero_components": v.nnz(), "module_dimension": m.dim() }))
        });
        shown.push_str(&format!("on vacuum: {state}\n"));
    }
    Ok((rep, Some(shown)))
}

fn fock_build(cfg: &RunConfig, sectors: Sectors) -> Result<Report> {
    let ctx = cfg.ctx();
    let build = |chir: Chirality| -> Result<Report> {
        let m = build_module(ctx, chir, cfg.max_depth)?;
        let mut r = check_module(&m);
        // distinct names once both sectors share a report
        for c in &mut r.checks {
            if let Some(rest) = c.name.strip_prefix("fock.") {
                c.name = format!("fock.{}.{rest}", chir.name());
            }
        }
        Ok(r)
    };
    let mut rep = Report::new("fock build")
        .param("n", cfg.n)
        .param("h", cfg.h)
        .param("max_depth", cfg.max_depth.map_or(json!(null), |d| json!(d)));
    let parts = match sectors {
        Sectors::Left => vec![build(Chirality::Left)?],
        Sectors::Right => vec![build(Chirality::Right)?],
        Sectors::Both => {
            let (l, r) = rayon::join(|| build(Chirality::Left), || build(Chirality::Right));
            vec![l?, r?]
        }
    };
    for p in parts {
        rep.merge(p);
    }
    Ok(rep)
}

fn qcheck(cfg: &RunConfig, suite: Suite) -> Result<Report> {
    let ctx = cfg.ctx();
    match suite {
        Suite::Nilpotency => Ok(check_nilpotency(&build_q(ctx, cfg.max_depth)?)),
        Suite::Lemma1 => Ok(check_lemma1(&build_q(ctx, cfg.max_depth)?)),
        Suite::Lemma2 => check_lemma2(&build_q(ctx, cfg.max_depth)?),
        Suite::N2Suite => n2_suite(&build_q(ctx, cfg.max_depth)?),
        Suite::Relations => {
            let ms: Vec<usize> = (1..=cfg.max_len.unwrap_or(4)).collect();
            let mut rep = Report::new("qcheck relations")
                .param("n", cfg.n)
                .param("h", cfg.h)
                .param("seed", cfg.seed)
                .param("samples", cfg.samples)
                .param("max_len", ms.len());
            for chir in [Chirality::Left, Chirality::Right] {
                rep.merge(check_genex(ctx, &ms, chir, GenexPlacement::Left));
            }
            rep.merge(check_confluence_samples(ctx, cfg.samples, cfg.seed));
            rep.merge(check_rmatrix_equivalence(ctx));
            Ok(rep)
        }
        Suite::Rmatrix => {
            let mut rep = verify_rmatrix_structure(ctx);
            rep.run("eps.norm", || {
                let r = eps_contract_residual(ctx);
                Outcome::from_witness((!r.is_zero()).then(|| format!("contraction minus [n]! = {r}")))
            });
            rep.run("eps.adjacent_swaps", || {
                Outcome::from_witness(check_adjacent_swaps(ctx).map(|(t, k)| format!("tuple {t:?} at position {k}")))
            });
            rep.merge(check_rmatrix_equivalence(ctx));
            for choice in [AlphaChoice::Unit, AlphaChoice::Ratio] {
                rep.merge(explore_dynamical_ybe(ctx, choice));
            }
            Ok(rep)
        }
    }
}
