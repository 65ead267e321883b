use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use symbvd::audit::{audit, audit_cells, SymmetryType};
use symbvd::benchmarks::{BenchmarkName, BenchmarkSpec};
use symbvd::convergence::{convergence_study, DEFAULT_GRIDS};
use symbvd::dump::{DumpHeader, FieldDump, SelectionDump};
use symbvd::scalar::hex_float;
use symbvd::solver::{compute_rhs_with_labels, run, RunConfig, RunOutput, StepEvent};
use symbvd::state::{Axis, Variant};
use symbvd::{Error, Grid};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNPHYSICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "symbvd", version, about = "Symmetry-preserving BVD finite-volume Euler solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark and write snapshots, an audit and a conservation log.
    Run(RunArgs),
    /// Check a field dump for mirror symmetry.
    Audit(AuditArgs),
    /// Grid-refinement study on the periodic 1D smooth wave.
    Convergence(ConvergenceArgs),
    /// Write the per-cell reconstruction labels at a given time.
    SelectionMap(SelectionArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// riemann3, riemann12, rti, implosion or smoothwave
    #[arg(long)]
    bench: BenchmarkName,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long, default_value = "symmetric")]
    variant: Variant,
    #[arg(long, default_value_t = 0.6)]
    cfl: f64,
    /// Initial perturbation of the rti problem; defaults to --variant.
    #[arg(long)]
    rti_perturbation: Option<Variant>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// End time; defaults to the benchmark's.
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Interval between intermediate snapshots.
    #[arg(long)]
    snap_every: Option<f64>,
}

#[derive(Args)]
struct AuditArgs {
    file: PathBuf,
    /// x, y or diagonal; all applicable types when omitted.
    #[arg(long = "type")]
    kind: Option<SymmetryType>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long, value_delimiter = ',')]
    grids: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0.6)]
    cfl: f64,
    #[arg(long, default_value = "symmetric")]
    variant: Variant,
}

#[derive(Args)]
struct SelectionArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Time at which the labels are taken; defaults to the benchmark's end time.
    #[arg(long)]
    time: Option<f64>,
    /// Sweep whose labels are written.
    #[arg(long, default_value = "x", value_parser = parse_axis)]
    axis: Axis,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    match s {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        _ => Err(format!("unknown axis '{s}' (x|y)")),
    }
}

enum Failure {
    Usage(String),
    Unphysical(Error),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(m) => Failure::Usage(m),
            Error::UnphysicalState { .. }
            | Error::NonPositiveDensity { .. }
            | Error::NonPositivePressure { .. }
            | Error::ImaginarySoundSpeed { .. }
            | Error::DegenerateWaveFan { .. } => Failure::Unphysical(e),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Convergence(a) => cmd_convergence(a),
        Command::SelectionMap(a) => cmd_selection_map(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Unphysical(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_UNPHYSICAL)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

struct Problem {
    spec: BenchmarkSpec<f64>,
    grid: Grid,
    cfg: RunConfig<f64>,
}

fn setup(p: &ProblemArgs, t_end: Option<f64>) -> Result<Problem, Failure> {
    let spec = BenchmarkSpec::<f64>::new(p.bench);
    let nx = p.nx.unwrap_or(spec.resolution.0);
    let ny = p.ny.unwrap_or(spec.resolution.1);
    if nx == 0 || ny == 0 {
        return Err(Failure::Usage(format!("grid size must be positive, got {nx}x{ny}")));
    }
    let mut cfg = spec.run_config(p.variant);
    cfg.cfl = p.cfl;
    cfg.threads = p.threads;
    if let Some(t) = t_end {
        cfg.t_end = t;
    }
    cfg.validate()?;
    let grid = spec.initial_grid(nx, ny, p.rti_perturbation.unwrap_or(p.variant))?;
    Ok(Problem { spec, grid, cfg })
}

fn solve(
    problem: Problem,
    observer: &mut (dyn FnMut(&StepEvent<'_, f64>) -> symbvd::Result<()> + Send),
) -> Result<RunOutput<f64>, Failure> {
    Ok(run(problem.grid, &problem.cfg, observer)?)
}

fn applicable(grid_nx: usize, grid_ny: usize, dx: f64, dy: f64) -> Vec<(SymmetryType, bool)> {
    SymmetryType::ALL
        .iter()
        .map(|&k| (k, k != SymmetryType::Diagonal || (grid_nx == grid_ny && dx == dy)))
        .collect()
}

fn cmd_run(a: RunArgs) -> Result<u8, Failure> {
    if let Some(s) = a.snap_every {
        if !(s > 0.0) {
            return Err(Failure::Usage("--snap-every must be positive".into()));
        }
    }
    let mut problem = setup(&a.problem, a.t_end)?;
    problem.cfg.snapshot_every = a.snap_every;
    let bench = problem.spec.name.id();
    fs::create_dir_all(&a.out)?;

    let out_dir = a.out.clone();
    let mut observer = |ev: &StepEvent<'_, f64>| -> symbvd::Result<()> {
        if ev.output || ev.step == 0 {
            let path = out_dir.join(format!("{bench}_t{:.6}.sfv", ev.t));
            FieldDump::from_grid(ev.grid, ev.t).write(path)?;
        }
        Ok(())
    };
    let result = solve(problem, &mut observer)?;
    let g = &result.grid;

    let mut report = String::new();
    for (kind, ok) in applicable(g.nx, g.ny, g.dx, g.dy) {
        if ok {
            report.push_str(&audit(g, kind)?.to_text());
        } else {
            let _ = writeln!(report, "{kind} n/a (grid is not square with square cells)");
        }
    }
    fs::write(a.out.join(format!("{bench}_audit.txt")), &report)?;

    let mut csv = String::from("step,t,dt,sum_rho,sum_rho_u,sum_rho_v,sum_E\n");
    for r in &result.history {
        let [m, px, py, e] = r.totals;
        let _ = writeln!(csv, "{},{},{},{},{},{},{}", r.step, r.t, r.dt, m, px, py, e);
    }
    fs::write(a.out.join(format!("{bench}_conservation.csv")), csv)?;

    println!("{bench}: t={} after {} steps", result.t, result.steps);
    print!("{report}");
    Ok(0)
}

fn cmd_audit(a: AuditArgs) -> Result<u8, Failure> {
    let dump = match FieldDump::read(&a.file) {
        Ok(d) => d,
        Err(Error::MalformedDump(m)) => return Err(Failure::Usage(format!("{}: {m}", a.file.display()))),
        Err(e) => return Err(Failure::Usage(format!("{}: {e}", a.file.display()))),
    };
    let h = dump.header;
    let cells = dump.cells();
    let kinds: Vec<SymmetryType> = match a.kind {
        Some(k) => vec![k],
        None => applicable(h.nx, h.ny, h.dx, h.dy)
            .into_iter()
            .filter(|&(_, ok)| ok)
            .map(|(k, _)| k)
            .collect(),
    };
    let mut all = true;
    for kind in kinds {
        let r = audit_cells(h.nx, h.ny, h.dx == h.dy, &cells, kind).map_err(|e| Failure::Usage(e.to_string()))?;
        print!("{}", r.to_text());
        all &= r.bitexact();
    }
    Ok(if all { 0 } else { EXIT_FAIL })
}

fn cmd_convergence(a: ConvergenceArgs) -> Result<u8, Failure> {
    let grids = a.grids.unwrap_or_else(|| DEFAULT_GRIDS.to_vec());
    if grids.is_empty() || grids.contains(&0) {
        return Err(Failure::Usage("grid sizes must be positive".into()));
    }
    let rows = convergence_study(&grids, a.cfl, a.variant)?;
    println!("{:>6} {:>24} {:>8}", "n", "l1_error", "order");
    for r in &rows {
        let order = r.order.map(|o| format!("{o:.4}")).unwrap_or_default();
        println!("{:>6} {:>24} {:>8}   # {:.6e}", r.n, hex_float(r.l1_error), order, r.l1_error);
    }
    let ok = rows.last().and_then(|r| r.order).is_none_or(|o| o >= 4.5);
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn cmd_selection_map(a: SelectionArgs) -> Result<u8, Failure> {
    let problem = setup(&a.problem, a.time)?;
    let cfg = problem.cfg.clone();
    let result = solve(problem, &mut |_: &StepEvent<'_, f64>| Ok(()))?;
    let g = &result.grid;
    let (_, labels) = compute_rhs_with_labels(g, &cfg)?;
    let header = DumpHeader { nx: g.nx, ny: g.ny, time: result.t, dx: g.dx, dy: g.dy };
    SelectionDump::from_cells(header, labels.axis(a.axis))?.write(&a.out)?;
    println!("{}: labels at t={} written to {}", a.problem.bench, result.t, a.out.display());
    Ok(0)
}
