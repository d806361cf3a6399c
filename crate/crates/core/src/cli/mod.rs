//! The `steenrod-hit` command line.
//!
//! Every subcommand prints plain text by default.  With `--json` it prints a
//! single record `{command, inputs, status, data, timing}`; `timing` is null
//! unless `--timings` is given, so the output for fixed inputs and seed is
//! byte-identical across runs.
//!
//! Exit codes: 0 success or property holds, 1 property violation, 2 usage
//! error, 3 resource ceiling.

pub mod expr;

pub use expr::{eval_str, parse, EvalError, Expr, ParseError};

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dickson::{dickson_all, enumerate_dickson_monomials, DicksonSpec};
use crate::hitsolver::{BasisCache, HitAnswer, HitSolver, SolverConfig, SolverError};
use crate::verify::{all_passed, ReplayReport, Status, Suite, Verifier, VerifyError};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_CACHE_DIR: &str = ".steenrod-hit-cache";
pub const CACHE_ENV: &str = "STEENROD_HIT_CACHE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "steenrod-hit",
    version,
    about = "Steenrod squares, Dickson invariants and hit tests over F2"
)]
pub struct Cli {
    /// Number of polynomial variables x1..xN.  Never inferred.
    #[arg(long, global = true)]
    pub vars: Option<usize>,
    /// Print one JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest graded component (monomial count) the solver will reduce.
    #[arg(long, global = true)]
    pub limit_columns: Option<usize>,
    /// Largest number of generator images per component.
    #[arg(long, global = true)]
    pub limit_generators: Option<usize>,
    /// Largest degree the solver will touch.
    #[arg(long, global = true)]
    pub limit_degree: Option<u32>,
    /// Where reduced bases are persisted.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Keep bases in memory only.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Include wall times (output is then no longer reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression, e.g. `Sq(1){Q(2,1)}`.
    Eval { expr: String },
    /// Decide whether an expression is hit.
    Hit {
        expr: String,
        /// Print the preimages (i, u_i) when hit.
        #[arg(long, conflicts_with = "witness")]
        certificate: bool,
        /// Print the reduced residual when not hit.
        #[arg(long)]
        witness: bool,
        /// Only allow Sq^i with i <= K.
        #[arg(long, value_name = "K")]
        max_sq: Option<u32>,
    },
    /// Dickson invariants Q(n,s).
    Dickson {
        #[arg(long)]
        n: usize,
        /// List the Dickson monomials of this degree.
        #[arg(long, conflicts_with = "list")]
        degree: Option<u64>,
        /// List generators and degrees without expanding them.
        #[arg(long)]
        list: bool,
    },
    /// Run a named verification suite.
    Verify {
        /// sq-tables, v-identity, dickson-oracle, antipode, chi-trick, davis, cases or all
        suite: Suite,
    },
    /// Hit-test every Dickson monomial in n variables up to degree dmax.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dmax: u32,
    },
    /// Inspect or empty the on-disk basis cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CacheAction {
    Info,
    Clear,
}

/// What a subcommand produced before formatting.
struct Outcome {
    command: &'static str,
    inputs: Value,
    status: &'static str,
    data: Value,
    text: String,
    exit: i32,
}

#[derive(Serialize)]
struct Record<'a> {
    command: &'a str,
    inputs: &'a Value,
    status: &'a str,
    data: &'a Value,
    timing: Option<f64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Ceiling(String),
    Other(String),
}

impl Failure {
    fn exit(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Ceiling(_) => EXIT_CEILING,
            Failure::Other(_) => EXIT_VIOLATION,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage-error",
            Failure::Ceiling(_) => "ceiling",
            Failure::Other(_) => "error",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Ceiling(m) | Failure::Other(m) => m,
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        if e.is_ceiling() {
            Failure::Ceiling(e.to_string())
        } else {
            Failure::Other(e.to_string())
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Solver(s) => s.into(),
            VerifyError::OutOfRange(m) => Failure::Usage(m),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl Cli {
    pub fn solver_config(&self) -> SolverConfig {
        let mut c = SolverConfig::default();
        if let Some(v) = self.limit_columns {
            c.max_columns = v;
        }
        if let Some(v) = self.limit_generators {
            c.max_generators = v;
        }
        if let Some(v) = self.limit_degree {
            c.max_degree = v;
        }
        if !self.no_cache {
            c.cache_dir = Some(self.cache_path());
        }
        c
    }

    pub fn cache_path(&self) -> PathBuf {
        self.cache_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    fn need_vars(&self) -> Result<usize, Failure> {
        match self.vars {
            Some(0) => Err(Failure::Usage("--vars must be at least 1".into())),
            Some(n) => Ok(n),
            None => Err(Failure::Usage("this command needs --vars N".into())),
        }
    }
}

/// Run a parsed command line, writing results to `out` and diagnostics to
/// `err`.  Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let result = dispatch(cli);
    let timing = cli
        .timings
        .then(|| (start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
    let written = match result {
        Ok(o) => {
            let w = if cli.json {
                write_record(out, o.command, &o.inputs, o.status, &o.data, timing)
            } else {
                write!(out, "{}", o.text).and_then(|_| match timing {
                    Some(ms) => writeln!(out, "time: {ms} ms"),
                    None => Ok(()),
                })
            };
            w.map(|_| o.exit)
        }
        Err(f) => {
            let w = if cli.json {
                let data = json!({ "message": f.message() });
                write_record(
                    out,
                    command_name(&cli.command),
                    &Value::Null,
                    f.status(),
                    &data,
                    timing,
                )
            } else {
                writeln!(err, "error: {}", f.message())
            };
            w.map(|_| f.exit())
        }
    };
    written.unwrap_or(EXIT_VIOLATION)
}

/// Parse `args` (including the program name) and run.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            code
        }
    }
}

fn write_record(
    out: &mut dyn Write,
    command: &str,
    inputs: &Value,
    status: &str,
    data: &Value,
    timing: Option<f64>,
) -> std::io::Result<()> {
    let rec = Record {
        command,
        inputs,
        status,
        data,
        timing,
    };
    let text = serde_json::to_string_pretty(&rec).expect("records serialize");
    writeln!(out, "{text}")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Hit { .. } => "hit",
        Command::Dickson { .. } => "dickson",
        Command::Verify { .. } => "verify",
        Command::Scan { .. } => "scan",
        Command::Cache { .. } => "cache",
    }
}

fn parse_expr(text: &str) -> Result<Expr, Failure> {
    parse(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Eval { expr } => cmd_eval(cli, expr),
        Command::Hit {
            expr,
            certificate,
            witness,
            max_sq,
        } => cmd_hit(cli, expr, *certificate, *witness, *max_sq),
        Command::Dickson { n, degree, list } => cmd_dickson(*n, *degree, *list),
        Command::Verify { suite } => cmd_verify(cli, *suite),
        Command::Scan { n, dmax } => cmd_scan(cli, *n, *dmax),
        Command::Cache { action } => cmd_cache(cli, *action),
    }
}

fn cmd_eval(cli: &Cli, text: &str) -> Result<Outcome, Failure> {
    let nvars = cli.need_vars()?;
    let e = parse_expr(text)?;
    let p = e.eval(nvars).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Outcome {
        command: "eval",
        inputs: json!({ "expr": e.to_string(), "vars": nvars }),
        status: "ok",
        data: json!({
            "polynomial": p.to_string(),
            "terms": p.len(),
            "degree": p.max_degree(),
            "homogeneous": p.is_homogeneous(),
        }),
        text: format!("{p}\n"),
        exit: EXIT_OK,
    })
}

fn cmd_hit(
    cli: &Cli,
    text: &str,
    certificate: bool,
    witness: bool,
    max_sq: Option<u32>,
) -> Result<Outcome, Failure> {
    let nvars = cli.need_vars()?;
    let e = parse_expr(text)?;
    let f = e.eval(nvars).map_err(|e| Failure::Usage(e.to_string()))?;
    let solver = HitSolver::new(cli.solver_config());
    let answer = match max_sq {
        Some(k) => solver.is_hit_bounded(&f, k)?,
        None => solver.is_hit(&f)?,
    };
    let inputs = json!({ "expr": e.to_string(), "vars": nvars, "max_sq": max_sq });
    let mut text = String::new();
    let (status, data) = match &answer {
        HitAnswer::Hit(cert) => {
            let verified = cert.verify(&f);
            text.push_str("Hit\n");
            if certificate {
                for (i, u) in cert.terms() {
                    text.push_str(&format!("({i}, {u})\n"));
                }
            }
            let mut data = json!({ "answer": "Hit", "verified": verified });
            if certificate {
                data["certificate"] = serde_json::to_value(cert).expect("certificate");
            }
            (if verified { "hit" } else { "unverified" }, data)
        }
        HitAnswer::NotHit(w) => {
            text.push_str("NotHit\n");
            if witness {
                text.push_str(&format!(
                    "degree {}: residual {}\n",
                    w.degree, w.residual_poly
                ));
            }
            let mut data = json!({ "answer": "NotHit" });
            if witness {
                data["witness"] = json!({
                    "degree": w.degree,
                    "residual": w.residual_poly.to_string(),
                });
            }
            ("not-hit", data)
        }
    };
    let exit = if status == "unverified" {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        command: "hit",
        inputs,
        status,
        data,
        text,
        exit,
    })
}

/// `Q(n,0)^e0*Q(n,1)^e1*...`, or `1`.
pub fn dickson_monomial_syntax(spec: &DicksonSpec) -> String {
    let parts: Vec<String> = spec
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(s, &e)| match e {
            1 => format!("Q({},{s})", spec.n),
            _ => format!("Q({},{s})^{e}", spec.n),
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn cmd_dickson(n: usize, degree: Option<u64>, list: bool) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let inputs = json!({ "n": n, "degree": degree, "list": list });
    let mut text = String::new();
    let data = if let Some(d) = degree {
        let specs = enumerate_dickson_monomials(n, d);
        let names: Vec<String> = specs.iter().map(dickson_monomial_syntax).collect();
        for s in &names {
            text.push_str(s);
            text.push('\n');
        }
        json!({ "degree": d, "monomials": names })
    } else if list {
        let gens: Vec<Value> = (0..n)
            .map(|s| {
                let deg = (1u64 << n) - (1u64 << s);
                text.push_str(&format!("Q({n},{s})  degree {deg}\n"));
                json!({ "name": format!("Q({n},{s})"), "degree": deg })
            })
            .collect();
        json!({ "generators": gens })
    } else {
        let qs = dickson_all(n).map_err(|e| Failure::Usage(e.to_string()))?;
        let gens: Vec<Value> = qs
            .iter()
            .enumerate()
            .take(n)
            .map(|(s, q)| {
                text.push_str(&format!("Q({n},{s}) = {q}\n"));
                json!({ "name": format!("Q({n},{s})"), "degree": q.degree(), "polynomial": q.to_string() })
            })
            .collect();
        json!({ "generators": gens })
    };
    Ok(Outcome {
        command: "dickson",
        inputs,
        status: "ok",
        data,
        text,
        exit: EXIT_OK,
    })
}

fn verifier(cli: &Cli) -> Verifier {
    Verifier::with_config(cli.solver_config()).with_timings(cli.timings)
}

fn report_line(r: &ReplayReport) -> String {
    let mark = if r.passed { "ok  " } else { "FAIL" };
    let mut line = format!("{mark} {:<18} {} {}", r.case, r.params, r.status.as_str());
    for s in r.steps.iter().filter(|s| !s.passed()) {
        line.push_str(&format!("\n       {}: {}", s.name, s.status.as_str()));
        if let Some(d) = &s.difference {
            line.push_str(&format!(" (difference {d})"));
        }
        if let Some(d) = &s.detail {
            line.push_str(&format!(" ({d})"));
        }
    }
    line.push('\n');
    line
}

fn cmd_verify(cli: &Cli, suite: Suite) -> Result<Outcome, Failure> {
    let reports = verifier(cli).run_suite(suite, cli.seed)?;
    let passed = all_passed(&reports);
    let ceiling = reports
        .iter()
        .any(|r| !r.passed && r.steps.iter().all(|s| s.status != Status::Failed));
    let failed = reports.iter().filter(|r| !r.passed).count();
    let (status, exit) = if passed {
        ("passed", EXIT_OK)
    } else if ceiling
        && reports
            .iter()
            .all(|r| r.passed || r.status == Status::Ceiling)
    {
        ("ceiling", EXIT_CEILING)
    } else {
        ("failed", EXIT_VIOLATION)
    };
    let mut text: String = reports.iter().map(report_line).collect();
    text.push_str(&format!(
        "{suite}: {} checks, {} failed\n",
        reports.len(),
        failed
    ));
    Ok(Outcome {
        command: "verify",
        inputs: json!({ "suite": suite.to_string(), "seed": cli.seed }),
        status,
        data: json!({ "reports": reports, "checks": reports.len(), "failed": failed }),
        text,
        exit,
    })
}

fn cmd_scan(cli: &Cli, n: usize, dmax: u32) -> Result<Outcome, Failure> {
    let report = verifier(cli).main_theorem_scan(n, dmax)?;
    let mut text = String::new();
    for row in &report.degrees {
        text.push_str(&format!(
            "degree {:>3}: {:>3} monomials, {:>3} hit, {:>3} not hit",
            row.degree, row.monomials, row.hit, row.not_hit
        ));
        if row.ceiling > 0 {
            text.push_str(&format!(", {} past ceiling", row.ceiling));
        }
        if row.unverified > 0 {
            text.push_str(&format!(", {} unverified", row.unverified));
        }
        if let (Some(c), Some(r)) = (row.columns, row.rank) {
            text.push_str(&format!("  [dim {c}, hit rank {r}]"));
        }
        for e in &row.non_hit {
            let spec = DicksonSpec {
                n,
                a: 0,
                exps: e.clone(),
            };
            text.push_str(&format!(
                "\n    not hit: {}",
                dickson_monomial_syntax(&spec)
            ));
        }
        text.push('\n');
    }
    text.push_str(&format!(
        "total {}: {} hit, {} not hit, {} past ceiling, {} unverified\n",
        report.total, report.hit, report.not_hit, report.ceiling, report.unverified
    ));
    let (status, exit) = if report.all_hit {
        ("all-hit", EXIT_OK)
    } else if report.not_hit > 0 || report.unverified > 0 {
        ("not-all-hit", EXIT_VIOLATION)
    } else {
        ("ceiling", EXIT_CEILING)
    };
    Ok(Outcome {
        command: "scan",
        inputs: json!({ "n": n, "dmax": dmax }),
        status,
        data: serde_json::to_value(&report).expect("scan report"),
        text,
        exit,
    })
}

fn cmd_cache(cli: &Cli, action: CacheAction) -> Result<Outcome, Failure> {
    let cache = BasisCache::new(cli.cache_path());
    let fail = |e: crate::hitsolver::CacheError| Failure::Other(e.to_string());
    match action {
        CacheAction::Info => {
            let info = cache.info().map_err(fail)?;
            let bytes: u64 = info.entries.iter().map(|e| e.bytes).sum();
            let mut text = format!(
                "{}: {} files, {} bytes, format {}\n",
                info.dir.display(),
                info.entries.len(),
                bytes,
                info.format_version
            );
            for e in &info.entries {
                text.push_str(&format!("  {} ({} bytes)\n", e.file, e.bytes));
            }
            Ok(Outcome {
                command: "cache",
                inputs: json!({ "action": "info" }),
                status: "ok",
                data: serde_json::to_value(&info).expect("cache info"),
                text,
                exit: EXIT_OK,
            })
        }
        CacheAction::Clear => {
            let removed = cache.clear().map_err(fail)?;
            Ok(Outcome {
                command: "cache",
                inputs: json!({ "action": "clear" }),
                status: "ok",
                data: json!({ "dir": cache.dir(), "removed": removed }),
                text: format!("removed {removed} files from {}\n", cache.dir().display()),
                exit: EXIT_OK,
            })
        }
    }
}
