//! `rowdae`: convergence tables, tolerance sweeps, pendulum statistics,
//! tableau verification and stability scans as CSV.
//!
//! Every CSV starts with `#` lines echoing the full configuration as a
//! command line. Exit codes: 0 success, 1 usage error, 2 numerical failure.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use rowdae::conditions::{
    condition_residuals_for, r_infinity, simplifying_residuals, DEFAULT_TOLERANCE,
};
use rowdae::experiments::{
    order_test, pendulum_run, stability_scan, work_precision, ExperimentError, ProblemSpec,
};
use rowdae::golden::{builtin_golden, load_golden, reproduce};
use rowdae::problems::Pendulum;
use rowdae::tableau::{
    builtin, check_stiffly_accurate, load_tableau, RowTableau, TableauError, TableauKind,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Invalid(msg) => CliError::Usage(msg),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<TableauError> for CliError {
    fn from(e: TableauError) -> Self {
        CliError::Usage(format!("tableau: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rowdae",
    version,
    about = "Rosenbrock-type DAE integrators: experiments and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed-step errors and observed orders for main and embedded weights.
    OrderTest(OrderTestArgs),
    /// Adaptive runs over a list of tolerances.
    WorkPrecision(WorkPrecisionArgs),
    /// Adaptive run on the multi-pendulum.
    Pendulum(PendulumArgs),
    /// Order-condition residuals and structural checks of a tableau.
    VerifyTableau(VerifyArgs),
    /// |R(iy)| on a logarithmic grid and R(infinity).
    Stability(StabilityArgs),
    /// Recompute the golden tables and compare.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug, Clone)]
struct MethodArgs {
    /// Built-in method: tsit5da, li-euler or ros2.
    #[arg(long, conflicts_with = "tableau")]
    method: Option<String>,
    /// Tableau file to load instead of a built-in method.
    #[arg(long)]
    tableau: Option<PathBuf>,
}

impl MethodArgs {
    fn load(&self) -> Result<RowTableau, CliError> {
        match (&self.method, &self.tableau) {
            (_, Some(path)) => Ok(load_tableau(path)?),
            (Some(name), None) => Ok(builtin(name)?),
            (None, None) => Ok(builtin("tsit5da")?),
        }
    }

    fn echo(&self) -> String {
        match (&self.method, &self.tableau) {
            (_, Some(path)) => format!("--tableau {}", path.display()),
            (Some(name), None) => format!("--method {name}"),
            (None, None) => "--method tsit5da".into(),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct ProblemArgs {
    /// prob1, prothero-robinson, parabolic, hyperbolic or pendulum.
    #[arg(long, default_value = "prob1")]
    problem: String,
    /// Grid nodes of the PDE problems.
    #[arg(long, default_value_t = 250)]
    nx: usize,
    /// Number of pendulum masses.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Stiffness of the Prothero-Robinson problem.
    #[arg(long, default_value_t = 10.0)]
    lambda: f64,
    /// Final time; defaults to the problem's own interval.
    #[arg(long)]
    tend: Option<f64>,
    /// Run explicit-stage methods on the stiff PDE problems anyway.
    #[arg(long)]
    force: bool,
}

impl ProblemArgs {
    fn spec(&self) -> Result<ProblemSpec, CliError> {
        let spec: ProblemSpec = self.problem.parse().map_err(CliError::Usage)?;
        Ok(match spec {
            ProblemSpec::ProtheroRobinson { .. } => ProblemSpec::ProtheroRobinson {
                lambda: self.lambda,
            },
            ProblemSpec::Parabolic { .. } => ProblemSpec::Parabolic { nx: self.nx },
            ProblemSpec::Hyperbolic { .. } => ProblemSpec::Hyperbolic { nx: self.nx },
            ProblemSpec::Pendulum { .. } => ProblemSpec::Pendulum { n: self.n },
            other => other,
        })
    }

    /// Refuses explicit-stage methods on stiff problems unless forced.
    fn check_stiffness(&self, spec: &ProblemSpec, tab: &RowTableau) -> Result<(), CliError> {
        if spec.is_stiff_pde() && tab.kind() == TableauKind::HalfExplicit {
            if !self.force {
                return Err(CliError::Usage(format!(
                    "{} has explicit stages and {} is stiff; pass --force to run it anyway",
                    tab.name(),
                    spec.name()
                )));
            }
            eprintln!(
                "warning: {} on the stiff problem {} may need tiny steps or diverge",
                tab.name(),
                spec.name()
            );
        }
        Ok(())
    }

    fn echo(&self) -> String {
        let mut s = format!(
            "--problem {} --nx {} --n {} --lambda {:e}",
            self.problem, self.nx, self.n, self.lambda
        );
        if let Some(t) = self.tend {
            s.push_str(&format!(" --tend {t:e}"));
        }
        if self.force {
            s.push_str(" --force");
        }
        s
    }
}

#[derive(Args, Debug)]
struct OrderTestArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    problem: ProblemArgs,
    /// Largest step size; each level halves it.
    #[arg(long, default_value_t = 0.125)]
    h0: f64,
    #[arg(long, default_value_t = 5)]
    levels: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WorkPrecisionArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    problem: ProblemArgs,
    /// Comma-separated relative tolerances.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1e-3,1e-4,1e-5,1e-6,1e-7,1e-8"
    )]
    tols: Vec<f64>,
    /// Absolute tolerance as a multiple of the relative one.
    #[arg(long, default_value_t = 1.0)]
    atol_ratio: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PendulumArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 1e-7)]
    rtol: f64,
    /// Defaults to `rtol`.
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long, default_value_t = 100.0)]
    tend: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    method: MethodArgs,
    /// Required order; defaults to the declared order of the tableau.
    #[arg(long)]
    order: Option<u32>,
    /// Residual tolerance for a condition to count as satisfied.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[arg(long, default_value_t = 1e-2)]
    ymin: f64,
    #[arg(long, default_value_t = 1e6)]
    ymax: f64,
    #[arg(long, default_value_t = 161)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// Only the index-1 convergence table and the coefficient check.
    #[arg(long)]
    quick: bool,
    /// Golden CSV to compare against instead of the built-in one.
    #[arg(long)]
    golden: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.filter(|v| v.is_finite()).map(num).unwrap_or_default()
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn open(path: &Option<PathBuf>) -> Result<Self, CliError> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Self { sink })
    }

    fn header(&mut self, config: &str, extra: &[String]) -> Result<(), CliError> {
        writeln!(self.sink, "# rowdae {config}")?;
        for line in extra {
            writeln!(self.sink, "# {line}")?;
        }
        Ok(())
    }

    fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(&mut self.sink);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    fn text(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.sink, "{s}")?;
        Ok(())
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.sink.flush()?;
        Ok(())
    }
}

fn cmd_order_test(a: &OrderTestArgs) -> Result<(), CliError> {
    let tab = a.method.load()?;
    let spec = a.problem.spec()?;
    a.problem.check_stiffness(&spec, &tab)?;
    let problem = spec.build()?;
    if problem.exact(problem.t0()).is_none() {
        return Err(CliError::Usage(format!(
            "{} has no exact solution; order-test needs one",
            spec.name()
        )));
    }
    let rows = order_test(&tab, problem.as_ref(), a.h0, a.levels, a.problem.tend)?;
    let mut out = Output::open(&a.out)?;
    out.header(
        &format!(
            "order-test {} {} --h0 {:e} --levels {}",
            a.method.echo(),
            a.problem.echo(),
            a.h0,
            a.levels
        ),
        &[format!(
            "tableau {} ({}), problem {spec}",
            tab.name(),
            tab.kind()
        )],
    )?;
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                num(r.h),
                num(r.err_main),
                opt(r.order_main),
                opt(r.err_embedded),
                opt(r.order_embedded),
            ]
        })
        .collect();
    out.csv(
        &[
            "h",
            "err_main",
            "order_main",
            "err_embedded",
            "order_embedded",
        ],
        &body,
    )?;
    out.finish()
}

fn cmd_work_precision(a: &WorkPrecisionArgs) -> Result<(), CliError> {
    if a.tols.is_empty() || a.tols.iter().any(|t| t.is_nan() || *t <= 0.0) {
        return Err(CliError::Usage("--tols needs positive tolerances".into()));
    }
    let tab = a.method.load()?;
    let spec = a.problem.spec()?;
    a.problem.check_stiffness(&spec, &tab)?;
    let problem = spec.build()?;
    let rows = work_precision(
        &tab,
        problem.as_ref(),
        &a.tols,
        a.atol_ratio,
        a.problem.tend,
    )?;
    let tols: Vec<String> = a.tols.iter().map(|t| format!("{t:e}")).collect();
    let mut out = Output::open(&a.out)?;
    out.header(
        &format!(
            "work-precision {} {} --tols {} --atol-ratio {:e}",
            a.method.echo(),
            a.problem.echo(),
            tols.join(","),
            a.atol_ratio
        ),
        &[format!(
            "tableau {} ({}), problem {spec}",
            tab.name(),
            tab.kind()
        )],
    )?;
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| match &r.outcome {
            Ok(d) => vec![
                num(r.rtol),
                num(r.atol),
                opt(Some(d.err_l2)),
                opt(d.err_l2_interp),
                opt(Some(d.err_endpoint)),
                d.stats.nsucc.to_string(),
                d.stats.nfail.to_string(),
                d.stats.nf.to_string(),
                d.stats.ng.to_string(),
                d.stats.njac.to_string(),
                num(d.wall_seconds),
                "ok".into(),
            ],
            Err(msg) => {
                let mut row = vec![num(r.rtol), num(r.atol)];
                row.extend(std::iter::repeat_n(String::new(), 9));
                row.push(format!("failed: {msg}"));
                row
            }
        })
        .collect();
    out.csv(
        &[
            "rtol",
            "atol",
            "err_l2",
            "err_l2_interp",
            "err_endpoint",
            "nsucc",
            "nfail",
            "nf",
            "ng",
            "njac",
            "wall_seconds",
            "status",
        ],
        &body,
    )?;
    out.finish()?;
    if rows.iter().all(|r| r.outcome.is_err()) {
        return Err(CliError::Numerical("every tolerance failed".into()));
    }
    Ok(())
}

fn cmd_pendulum(a: &PendulumArgs) -> Result<(), CliError> {
    let tab = a.method.load()?;
    let atol = a.atol.unwrap_or(a.rtol);
    if !(a.rtol > 0.0 && atol > 0.0) {
        return Err(CliError::Usage("tolerances must be positive".into()));
    }
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let p = Pendulum::new(a.n)
        .map_err(|e| CliError::Numerical(e.to_string()))?
        .with_t_end(a.tend);
    let row = pendulum_run(&tab, &p, a.rtol, atol)?;
    let mut out = Output::open(&a.out)?;
    out.header(
        &format!(
            "pendulum {} --n {} --rtol {:e} --atol {:e} --tend {:e}",
            a.method.echo(),
            a.n,
            a.rtol,
            atol,
            a.tend
        ),
        &[],
    )?;
    out.csv(
        &[
            "method",
            "n",
            "rtol",
            "atol",
            "nsucc",
            "nfail",
            "nf",
            "ng",
            "njac",
            "nlu",
            "err_length",
            "initial_residual",
            "wall_seconds",
        ],
        &[vec![
            row.method,
            a.n.to_string(),
            num(row.rtol),
            num(row.atol),
            row.stats.nsucc.to_string(),
            row.stats.nfail.to_string(),
            row.stats.nf.to_string(),
            row.stats.ng.to_string(),
            row.stats.njac.to_string(),
            row.stats.nlu.to_string(),
            num(row.err_length),
            num(row.initial_residual),
            num(row.wall_seconds),
        ]],
    )?;
    out.finish()
}

fn linalg(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let tab = a.method.load()?;
    let main = condition_residuals_for(&tab, tab.b()).map_err(linalg)?;
    let attained = main.attained_order(a.tol);
    let required = a.order.or(tab.declared_order()).unwrap_or(attained);

    let mut lines = vec![format!(
        "tableau {} ({}), {} stages, gamma = {}",
        tab.name(),
        tab.kind(),
        tab.stages(),
        num(tab.gamma())
    )];
    lines.push(format!("main weights, {} conditions:", main.entries.len()));
    lines.extend(main.to_string().lines().map(|l| format!("  {l}")));
    lines.push(format!(
        "attained order {attained} (required {required}, tol {:e})",
        a.tol
    ));
    for f in main.failures(a.tol).take(10) {
        lines.push(format!(
            "  condition {} (order {}) residual {:.3e}",
            f.index, f.order, f.residual
        ));
    }
    if let Some(bhat) = tab.bhat() {
        let emb = condition_residuals_for(&tab, bhat).map_err(linalg)?;
        lines.push(format!(
            "embedded attained order {}",
            emb.attained_order(a.tol)
        ));
        if tab.kind() == TableauKind::HalfExplicit {
            lines.push(format!(
                "embedded attained order, conditions without W {}",
                emb.explicit_subset().attained_order(a.tol)
            ));
        }
        let failing: Vec<String> = emb
            .failures(a.tol)
            .filter(|f| f.order <= emb.attained_order(a.tol) + 1)
            .map(|f| f.index.to_string())
            .collect();
        if !failing.is_empty() {
            lines.push(format!(
                "embedded next-order failures: {}",
                failing.join(" ")
            ));
        }
    }
    let sa = check_stiffly_accurate(&tab);
    lines.push(format!(
        "stiffly accurate {} (main residual {:.3e}, embedded residual {})",
        if sa.holds { "yes" } else { "no" },
        sa.main_residual,
        sa.embedded_residual
            .map_or_else(|| "n/a".to_string(), |r| format!("{r:.3e}"))
    ));
    let simp = simplifying_residuals(&tab).map_err(linalg)?;
    lines.push(format!(
        "simplifying assumptions, max residual {:.3e} over {} stages",
        simp.iter().copied().fold(0.0, f64::max),
        simp.len()
    ));
    match r_infinity(&tab) {
        Ok(r) => lines.push(format!("|R(inf)| = {:.3e}", r)),
        Err(e) => lines.push(format!("|R(inf)| unavailable: {e}")),
    }

    let mut out = Output::open(&a.out)?;
    let order = a
        .order
        .map_or_else(String::new, |o| format!(" --order {o}"));
    out.header(
        &format!(
            "verify-tableau {}{order} --tol {:e}",
            a.method.echo(),
            a.tol
        ),
        &[],
    )?;
    for l in &lines {
        out.text(l)?;
    }
    out.text(if attained >= required { "PASS" } else { "FAIL" })?;
    out.finish()?;
    if attained < required {
        return Err(CliError::Numerical(format!(
            "attained order {attained} is below the required {required}"
        )));
    }
    Ok(())
}

fn cmd_stability(a: &StabilityArgs) -> Result<(), CliError> {
    let tab = a.method.load()?;
    let (rows, rinf) = stability_scan(&tab, a.ymin, a.ymax, a.points)?;
    let mut out = Output::open(&a.out)?;
    out.header(
        &format!(
            "stability {} --ymin {:e} --ymax {:e} --points {}",
            a.method.echo(),
            a.ymin,
            a.ymax,
            a.points
        ),
        &[],
    )?;
    let mut body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| match r.abs_r {
            Some(v) => vec![num(r.y), num(v), "ok".into()],
            None => vec![num(r.y), String::new(), "singular".into()],
        })
        .collect();
    body.push(vec!["inf".into(), num(rinf), "ok".into()]);
    out.csv(&["y", "abs_r", "status"], &body)?;
    out.finish()
}

fn cmd_reproduce(a: &ReproduceArgs) -> Result<(), CliError> {
    let cells = match &a.golden {
        Some(p) => load_golden(p).map_err(|e| CliError::Usage(format!("golden: {e}")))?,
        None => builtin_golden(),
    };
    let report = reproduce(&cells, a.quick)?;
    let mut out = Output::open(&a.out)?;
    let golden = a
        .golden
        .as_ref()
        .map_or_else(String::new, |p| format!(" --golden {}", p.display()));
    let quick = if a.quick { " --quick" } else { "" };
    out.header(&format!("reproduce{quick}{golden}"), &[])?;
    out.text(&report.to_string())?;
    out.finish()?;
    if !report.passed() {
        let cells: Vec<String> = report
            .failures()
            .map(|o| format!("{}[{}][{}]", o.cell.table, o.cell.row_key, o.cell.column))
            .collect();
        return Err(CliError::Numerical(format!(
            "golden mismatch in {}",
            cells.join(", ")
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::OrderTest(a) => cmd_order_test(a),
        Command::WorkPrecision(a) => cmd_work_precision(a),
        Command::Pendulum(a) => cmd_pendulum(a),
        Command::VerifyTableau(a) => cmd_verify(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (e.g. `| head`) is not a failure of the run.
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
