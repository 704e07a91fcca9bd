use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use horizon_tangle::sweep::{
    emit_plot_script, parse_measures, run_figure, run_sweep, write_csv, CutoffPolicy, SweepConfig,
};
use horizon_tangle::{Error, FieldKind, StateKind};

/// Entanglement of Hawking-dressed W and GHZ states versus Hawking temperature.
#[derive(Debug, Parser)]
#[command(name = "horizon-tangle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the Hawking temperature and write one CSV row per measure and partition.
    Sweep(SweepArgs),
    /// Reproduce one of the preset figures as CSV plus a matplotlib script.
    Figures(FigureArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// w | ghz
    #[arg(long)]
    state: StateKind,
    /// fermion | boson
    #[arg(long)]
    field: FieldKind,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    #[arg(long, default_value_t = 101)]
    t_steps: usize,
    /// Comma-separated: gte, one-tangle, two-tangle, residual, all
    #[arg(long, default_value = "all")]
    measure: String,
    /// auto:TOL or fixed:N (bosonic runs only)
    #[arg(long, default_value = "auto:1e-10")]
    cutoff: CutoffPolicy,
    /// Attach closed-form values and fail if they disagree with the numerics.
    #[arg(long)]
    closed_forms: bool,
    #[arg(long)]
    out: PathBuf,
    /// Also write a plotting script for the CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    fig: u8,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn sweep(args: SweepArgs) -> Result<(), Error> {
    let config = SweepConfig {
        state: args.state,
        field: args.field,
        omega: args.omega,
        t_min: args.t_min,
        t_max: args.t_max,
        t_steps: args.t_steps,
        cutoff: args.cutoff,
        measures: parse_measures(&args.measure)?,
        include_closed_forms: args.closed_forms,
    };
    let rows = run_sweep(&config)?;
    write_csv(&rows, &args.out)?;
    eprintln!("wrote {} rows to {}", rows.len(), args.out.display());
    if let Some(plot) = args.plot {
        emit_plot_script(&rows, &args.out, &plot)?;
        eprintln!("wrote plot script {}", plot.display());
    }
    Ok(())
}

fn figures(args: FigureArgs) -> Result<(), Error> {
    let out = run_figure(args.fig, &args.out_dir)?;
    eprintln!(
        "wrote {} rows to {} and plot script {}",
        out.rows.len(),
        out.csv.display(),
        out.script.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Figures(args) => figures(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numeric() { 2 } else { 1 })
        }
    }
}
