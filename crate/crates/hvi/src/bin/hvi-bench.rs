//! Benchmark harness CLI for the hierarchical VI solvers.
//!
//! Exit codes: 0 success, 2 configuration/schema error, 3 runtime
//! numerical error (the CSV written so far is flushed).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hvi::bench::{self, RunConfig, SeriesSet};
use hvi::problems::{Instance, InstanceKind};

#[derive(Parser)]
#[command(name = "hvi-bench", about = "Benchmark harness for hierarchical VI solvers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one configured run, writing a CSV trace (and optional SVG).
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Directory for outputs; relative output paths resolve under it.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Parse a config and report schedule diagnostics without running.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Render CSV traces into a chart per metric.
    Plot {
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in problem instances.
    ListProblems,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out_dir } => cmd_run(&config, &out_dir),
        Command::Validate { config } => cmd_validate(&config),
        Command::Plot { inputs, out } => cmd_plot(&inputs, &out),
        Command::ListProblems => cmd_list_problems(),
    }
}

fn load_config(path: &Path) -> Result<RunConfig, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    bench::parse_config(&bytes).map_err(|e| e.to_string())
}

fn resolve(out_dir: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        out_dir.join(p)
    }
}

fn cmd_run(config_path: &Path, out_dir: &Path) -> ExitCode {
    let config = match load_config(config_path) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    let output = match bench::execute(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    for w in &output.summary.schedule_warnings {
        eprintln!("schedule warning: {w}");
    }

    let csv_name = config.output.csv_path.clone().unwrap_or_else(|| {
        format!(
            "run_{}_{}_nu{}_seed{}.csv",
            config.algorithm.kind.label(),
            match config.problem.kind {
                bench::ProblemKind::EqSelection => "eq_selection",
                bench::ProblemKind::LinConstrained => "lin_constrained",
            },
            config.problem.nu,
            config.seed
        )
    });
    let csv_path = resolve(out_dir, &csv_name);
    if let Some(parent) = csv_path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    if let Err(e) = std::fs::write(&csv_path, bench::rows_to_csv(&output.rows)) {
        eprintln!("error: writing {}: {e}", csv_path.display());
        return ExitCode::from(EXIT_RUNTIME);
    }

    if let Some(svg_name) = &config.output.svg_path {
        let svg_path = resolve(out_dir, svg_name);
        let series = SeriesSet {
            name: config.algorithm.kind.label().to_string(),
            rows: output.rows.clone(),
        };
        match bench::emit_svg(&[series]) {
            Ok(svg) => {
                if let Err(e) = std::fs::write(&svg_path, svg) {
                    eprintln!("error: writing {}: {e}", svg_path.display());
                    return ExitCode::from(EXIT_RUNTIME);
                }
            }
            Err(e) => eprintln!("plot skipped: {e}"),
        }
    }

    let s = &output.summary;
    println!(
        "{}: {} iterations, {:.3} epochs, wall {:.3}s -> {}",
        s.algorithm.label(),
        s.iterations,
        s.total_epochs,
        s.wall_seconds,
        csv_path.display()
    );
    let gap = |name: &str, v: Option<f64>| {
        if let Some(v) = v {
            println!("  final ergodic {name}: {v:.6e}");
        }
    };
    gap("feasibility gap", s.final_feas_erg);
    gap("optimality gap", s.final_opt_erg);
    gap("distance", s.final_dist_erg);
    if let Some(r) = s.min_energy_residual {
        println!("  min pathwise energy residual: {r:.3e}");
    }

    if let Some(msg) = &output.aborted {
        eprintln!("error: {msg} (partial trace flushed)");
        return ExitCode::from(EXIT_RUNTIME);
    }
    ExitCode::SUCCESS
}

fn cmd_validate(config_path: &Path) -> ExitCode {
    match load_config(config_path) {
        Ok(config) => {
            let violations = config.schedule().validate();
            if violations.is_empty() {
                println!("ok: schedule satisfies all validity conditions");
            } else {
                println!("ok with warnings:");
                for v in violations {
                    println!("  {v}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn cmd_plot(inputs: &[PathBuf], out: &Path) -> ExitCode {
    let mut series = Vec::new();
    for path in inputs {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG);
            }
        };
        let rows = match bench::parse_csv(&text) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG);
            }
        };
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        series.push(SeriesSet { name, rows });
    }
    match bench::emit_svg(&series) {
        Ok(svg) => {
            if let Err(e) = std::fs::write(out, svg) {
                eprintln!("error: writing {}: {e}", out.display());
                return ExitCode::from(EXIT_RUNTIME);
            }
            println!("wrote {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn cmd_list_problems() -> ExitCode {
    for (kind, name) in [
        (InstanceKind::EqSelection, "eq_selection"),
        (InstanceKind::LinConstrained, "lin_constrained"),
    ] {
        let inst = Instance::build(kind, 2).expect("builtin");
        let (n, m) = inst.problem().dims();
        println!("{name}");
        match kind {
            InstanceKind::EqSelection => {
                println!("  minimal-norm Nash equilibrium of the matching-pennies game");
                println!("  metrics: feasibility gap (duality gap), distance to unique solution");
                println!("  algorithms: alg1, alg2_l1, alg2_l2, det_eg");
            }
            InstanceKind::LinConstrained => {
                println!("  Nash equilibrium subject to linear constraints Bx + Cy = d");
                println!("  metrics: optimality gap (duality gap), feasibility gap ||Bx+Cy-d||^2");
                println!("  algorithms: alg2_l1, alg2_l2, det_eg");
            }
        }
        println!("  dimensions at nu=2: n = {n}, m = {m} (n = m = 2 nu)");
    }
    ExitCode::SUCCESS
}
