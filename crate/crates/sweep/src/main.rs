use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dicke_sweep::output::sink_for;
use dicke_sweep::{convergence_report, load_config, run_sweep, ConvergenceReport, Mode, SweepError};

#[derive(Parser)]
#[command(name = "dicke-sweep", version, about = "Heat-flow and rectification sweeps for the anisotropic Dicke model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-size Dicke heat flow (mode dicke-flow)
    Flow(Common),
    /// Two-oscillator heat flow (mode oscillator-flow)
    OscFlow(Common),
    /// Closed-form thermodynamic-limit flow (mode analytic-flow)
    Analytic(Common),
    /// Rectification factor on a bias grid (mode rectification)
    Rect(Common),
    /// Rectification maximised over the bias grid (mode rect-max)
    RectMax(Common),
    /// Normal-mode frequencies (mode modes-scan)
    Modes(Common),
    /// Validate a config and run the truncation convergence check
    Check(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when omitted and the config names none
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, env = "DICKE_SWEEP_THREADS")]
    threads: Option<usize>,
    /// Dot-path override such as `sweep.lambda=[0.1,0.2]`; repeatable
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl Command {
    fn parts(&self) -> (Option<Mode>, &Common) {
        match self {
            Command::Flow(c) => (Some(Mode::DickeFlow), c),
            Command::OscFlow(c) => (Some(Mode::OscillatorFlow), c),
            Command::Analytic(c) => (Some(Mode::AnalyticFlow), c),
            Command::Rect(c) => (Some(Mode::Rectification), c),
            Command::RectMax(c) => (Some(Mode::RectMax), c),
            Command::Modes(c) => (Some(Mode::ModesScan), c),
            Command::Check(c) => (None, c),
        }
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<(Box<dyn Write>, String), SweepError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| SweepError::io(p, e))?;
            Ok((Box::new(BufWriter::new(f)), p.display().to_string()))
        }
        None => Ok((Box::new(std::io::stdout().lock()), "<stdout>".into())),
    }
}

fn print_report(rep: &ConvergenceReport, out: &mut dyn Write, label: &str) -> Result<(), SweepError> {
    let io = |e| SweepError::io(label, e);
    writeln!(out, "n_fock,j_q").map_err(io)?;
    for (n, j) in &rep.levels {
        writeln!(out, "{n},{j:?}").map_err(io)?;
    }
    out.flush().map_err(io)?;
    for note in &rep.notes {
        eprintln!("convergence: {note}");
    }
    match rep.point {
        Some(p) => eprintln!(
            "convergence: n_qubits={} gamma={} lambda={} tail={:e} drift={:e} {}",
            p.n_qubits,
            p.gamma,
            p.lambda,
            rep.tail_mass,
            rep.drift,
            if rep.passed { "PASS" } else { "FAIL" }
        ),
        None => eprintln!("convergence: nothing to check"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), SweepError> {
    let (mode, common) = cli.command.parts();
    let mut cfg = load_config(&common.config, &common.overrides)?;
    if let Some(mode) = mode {
        if mode != cfg.mode {
            return Err(SweepError::config(format!(
                "mode: config declares {}, subcommand expects {}",
                cfg.mode.name(),
                mode.name()
            )));
        }
    }
    if common.threads.is_some() {
        cfg.threads = common.threads;
    }
    if common.threads == Some(0) {
        return Err(SweepError::config("threads: must be >= 1"));
    }
    let out_path = common.output.clone().or_else(|| cfg.output.clone());
    let (writer, label) = open_output(out_path.as_ref())?;

    if mode.is_none() {
        let mut writer = writer;
        let rep = convergence_report(&cfg)?;
        print_report(&rep, &mut writer, &label)?;
        return Ok(());
    }

    let mut sink = sink_for(cfg.format, writer, &label);
    let summary = run_sweep(&cfg, sink.as_mut())?;
    drop(sink);
    eprintln!(
        "{}: {} rows, {} with warnings, {} errors",
        cfg.mode.name(),
        summary.rows,
        summary.warnings,
        summary.errors
    );
    if cfg.convergence_check {
        let rep = convergence_report(&cfg)?;
        print_report(&rep, &mut std::io::sink(), "<none>")?;
    }
    if summary.errors > 0 {
        return Err(SweepError::Solver {
            failed: summary.errors,
            total: summary.rows,
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
