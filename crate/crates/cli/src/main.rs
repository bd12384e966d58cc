//! `bacbound`: bounds on the zero-error region of the binary adder channel,
//! curve export, lemma verification and small-n search.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use bacbound_core::bounds::{
    curve, main_bound, simple_bound, ul_bound, weldon_bound, OptimizerConfig,
};
use bacbound_core::families::{
    exhaustive_pair_search, format_family, soft_sauer_bound, SoftSauerParams,
};
use bacbound_core::systems::{is_valid_system, log3_construction, system_rates, UnionFreeSystem};
use bacbound_core::verify::{run_suite, CheckReport, Suite, DEFAULT_SEED};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bacbound", version, about)]
struct Cli {
    /// Machine-readable JSON instead of plain tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bounds on R2 at a given R1.
    Bound {
        #[arg(long)]
        r1: f64,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Grid points per scalar optimization.
        #[arg(long, default_value_t = OptimizerConfig::default().grid_points)]
        grid: usize,
    },
    /// CSV of the simple, Urbanke-Li and main bounds over an R1 range.
    Curve {
        #[arg(long, default_value_t = 0.9)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, default_value_t = OptimizerConfig::default().grid_points)]
        grid: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Soft Sauer-Perles-Shelah bound for ground size n, forbidden
    /// shattered size d and multiplicity k.
    Sauer {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u64,
    },
    /// Run verification checks; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also validate a system stored as JSON.
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Largest multiset-union-free pair on n elements.
    Search {
        #[arg(long)]
        n: u32,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
    },
    /// Rates and validity of the log 3 system construction.
    System {
        #[arg(long, required = true)]
        log3: bool,
        #[arg(long)]
        n: u32,
        /// Write the system as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Main,
    Ul,
    Simple,
    Weldon,
    All,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bacbound_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

fn io_err(path: &std::path::Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn optimizer(grid: usize) -> Result<OptimizerConfig, CliError> {
    let cfg = OptimizerConfig {
        grid_points: grid,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    writeln!(out, "{text}")
}

#[derive(Serialize)]
struct BoundRow {
    bound: &'static str,
    r2: f64,
}

fn run_bound(json: bool, r1: f64, which: Which, grid: usize) -> Result<bool, CliError> {
    if !(0.0..=1.0).contains(&r1) {
        return Err(CliError::Usage(format!(
            "--r1 must lie in [0, 1], got {r1}"
        )));
    }
    let cfg = optimizer(grid)?;
    let wanted: &[Which] = match which {
        Which::All => &[Which::Simple, Which::Weldon, Which::Ul, Which::Main],
        Which::Main => &[Which::Main],
        Which::Ul => &[Which::Ul],
        Which::Simple => &[Which::Simple],
        Which::Weldon => &[Which::Weldon],
    };
    let mut rows = Vec::new();
    for w in wanted {
        let (bound, r2) = match w {
            Which::Simple => ("simple", simple_bound(r1)?),
            Which::Weldon => ("weldon", weldon_bound(r1)?),
            Which::Ul => ("ul", ul_bound(r1, &cfg)?),
            Which::Main => ("main", main_bound(r1, &cfg)?),
            Which::All => unreachable!("expanded above"),
        };
        rows.push(BoundRow { bound, r2 });
    }
    let mut out = io::stdout().lock();
    let res = if json {
        #[derive(Serialize)]
        struct Doc {
            r1: f64,
            bounds: Vec<BoundRow>,
        }
        print_json(&mut out, &Doc { r1, bounds: rows })
    } else {
        (|| {
            writeln!(out, "r1 = {r1:.6}")?;
            for row in &rows {
                writeln!(out, "{:<8}{:.6}", row.bound, row.r2)?;
            }
            Ok(())
        })()
    };
    res.map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(true)
}

fn run_curve(
    from: f64,
    to: f64,
    steps: usize,
    grid: usize,
    out: Option<PathBuf>,
) -> Result<bool, CliError> {
    if !(0.0..=1.0).contains(&from) || !(0.0..=1.0).contains(&to) || from > to {
        return Err(CliError::Usage(format!(
            "need 0 <= --from <= --to <= 1, got {from} and {to}"
        )));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let c = curve(from, to, steps, &optimizer(grid)?)?;
    match out {
        Some(path) => {
            let file = fs::File::create(&path).map_err(io_err(&path))?;
            c.write_csv(io::BufWriter::new(file))?;
        }
        None => c.write_csv(io::stdout().lock())?,
    }
    Ok(true)
}

fn run_sauer(json: bool, n: u32, d: u32, k: u64) -> Result<bool, CliError> {
    let b = soft_sauer_bound(SoftSauerParams::new(n, d, k)?);
    let mut out = io::stdout().lock();
    let res = if json {
        #[derive(Serialize)]
        struct Doc {
            n: u32,
            d: u32,
            k: u64,
            t_star: u32,
            bound: String,
            approx: f64,
        }
        print_json(
            &mut out,
            &Doc {
                n,
                d,
                k,
                t_star: b.t_star,
                bound: b.bound.to_string(),
                approx: b.approx(),
            },
        )
    } else {
        writeln!(
            out,
            "t*      {}\nbound   {}\napprox  {:.6}",
            b.t_star,
            b.bound,
            b.approx()
        )
    };
    res.map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(true)
}

fn system_report(u: &UnionFreeSystem) -> Result<CheckReport, CliError> {
    let valid = is_valid_system(u)?;
    Ok(CheckReport {
        name: "systems/input_system_valid".into(),
        samples: u.m0() as u64,
        max_violation: if valid { 0.0 } else { 1.0 },
        passed: valid,
    })
}

fn run_verify(
    json: bool,
    suite: Suite,
    seed: u64,
    system: Option<PathBuf>,
) -> Result<bool, CliError> {
    let mut reports = run_suite(suite, seed);
    if let Some(path) = system {
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        reports.push(system_report(&UnionFreeSystem::from_json(&text)?)?);
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let mut out = io::stdout().lock();
    let res = if json {
        #[derive(Serialize)]
        struct Doc {
            suite: Suite,
            seed: u64,
            passed: bool,
            checks: Vec<CheckReport>,
        }
        print_json(
            &mut out,
            &Doc {
                suite,
                seed,
                passed: all_passed,
                checks: reports,
            },
        )
    } else {
        (|| {
            writeln!(out, "suite {suite}, seed {seed}")?;
            for r in &reports {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{mark}  {:<44}{:>8}  {:.3e}",
                    r.name, r.samples, r.max_violation
                )?;
            }
            Ok(())
        })()
    };
    res.map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(all_passed)
}

fn run_search(json: bool, n: u32, budget: f64) -> Result<bool, CliError> {
    if !(budget.is_finite() && budget >= 0.0) {
        return Err(CliError::Usage(format!(
            "--budget must be a nonnegative number, got {budget}"
        )));
    }
    let r = exhaustive_pair_search(n, Duration::from_secs_f64(budget))?;
    let mut out = io::stdout().lock();
    let res = if json {
        #[derive(Serialize)]
        struct Doc {
            n: u32,
            product: u64,
            exact: bool,
            f1: String,
            f2: String,
        }
        print_json(
            &mut out,
            &Doc {
                n,
                product: r.product,
                exact: r.exact,
                f1: format_family(&r.f1),
                f2: format_family(&r.f2),
            },
        )
    } else {
        write!(
            out,
            "n {n}\n|f1| {}\n|f2| {}\nproduct {}\nexact {}\n\n# f1\n{}\n# f2\n{}",
            r.f1.len(),
            r.f2.len(),
            r.product,
            r.exact,
            format_family(&r.f1),
            format_family(&r.f2)
        )
    };
    res.map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(true)
}

fn run_system(json: bool, n: u32, out_path: Option<PathBuf>) -> Result<bool, CliError> {
    let u = log3_construction(n)?;
    let valid = is_valid_system(&u)?;
    let rates = system_rates(&u);
    if let Some(path) = out_path {
        fs::write(&path, u.to_json()).map_err(io_err(&path))?;
    }
    let mut out = io::stdout().lock();
    let res = if json {
        #[derive(Serialize)]
        struct Doc {
            n: u32,
            m0: usize,
            m1: usize,
            m2: usize,
            r0: f64,
            r1: f64,
            r2: f64,
            sum: f64,
            valid: bool,
        }
        print_json(
            &mut out,
            &Doc {
                n,
                m0: u.m0(),
                m1: u.m1(),
                m2: u.m2(),
                r0: rates.r0,
                r1: rates.r1,
                r2: rates.r2,
                sum: rates.sum(),
                valid,
            },
        )
    } else {
        writeln!(
            out,
            "n      {n}\nm0     {}\nm1     {}\nm2     {}\nr0     {:.6}\nr1     {:.6}\nr2     {:.6}\nsum    {:.6}\nvalid  {valid}",
            u.m0(),
            u.m1(),
            u.m2(),
            rates.r0,
            rates.r1,
            rates.r2,
            rates.sum()
        )
    };
    res.map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(valid)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = match cli.command {
        Command::Bound { r1, which, grid } => run_bound(json, r1, which, grid),
        Command::Curve {
            from,
            to,
            steps,
            grid,
            out,
        } => run_curve(from, to, steps, grid, out),
        Command::Sauer { n, d, k } => run_sauer(json, n, d, k),
        Command::Verify {
            suite,
            seed,
            system,
        } => run_verify(json, suite, seed, system),
        Command::Search { n, budget } => run_search(json, n, budget),
        Command::System { log3: _, n, out } => run_system(json, n, out),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
