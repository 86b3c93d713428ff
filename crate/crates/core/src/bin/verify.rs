use std::path::PathBuf;
use std::process::ExitCode;

use causalnet::cli::{
    explain, run_suite, ConfigError, RunConfig, Suite, EXIT_CONFIG, REGISTRY,
};
use clap::{Args, Parser, Subcommand};

/// Runs the causal-axiom verification suites and writes report.json plus
/// plot data.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    Geometry,
    Algebra,
    Lattice,
    Protocols,
    Net,
    All,
    /// Describe a check id; `explain --list` prints every id.
    Explain {
        id: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
struct Flags {
    /// geometry | algebra | lattice | protocols | net | all
    #[arg(long, global = true)]
    suite: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Geometry window half-extents as TxX, e.g. 8x8
    #[arg(long, global = true)]
    window: Option<String>,
    /// Geometry cell size
    #[arg(long, global = true)]
    h: Option<String>,
    /// Lattice sites N
    #[arg(long, global = true)]
    lattice_n: Option<String>,
    #[arg(long, global = true)]
    mass: Option<String>,
    /// Lattice spacing a
    #[arg(long, global = true)]
    spacing: Option<String>,
    /// Qubits in the circuit net
    #[arg(long, global = true)]
    qubits: Option<String>,
    /// Layers in the circuit net
    #[arg(long, global = true)]
    depth: Option<String>,
}

fn config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let f = &cli.flags;
    if let Some(path) = &f.config {
        cfg.apply_file(path)?;
    }
    let pairs = [
        ("suite", f.suite.clone()),
        ("seed", f.seed.clone()),
        ("out", f.out.as_ref().map(|p| p.display().to_string())),
        ("window", f.window.clone()),
        ("h", f.h.clone()),
        ("lattice_n", f.lattice_n.clone()),
        ("mass", f.mass.clone()),
        ("spacing", f.spacing.clone()),
        ("qubits", f.qubits.clone()),
        ("depth", f.depth.clone()),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    let sub = match cli.command {
        Some(Command::Geometry) => Some(Suite::Geometry),
        Some(Command::Algebra) => Some(Suite::Algebra),
        Some(Command::Lattice) => Some(Suite::Lattice),
        Some(Command::Protocols) => Some(Suite::Protocols),
        Some(Command::Net) => Some(Suite::Net),
        Some(Command::All) => Some(Suite::All),
        _ => None,
    };
    if let Some(s) = sub {
        if f.suite.is_some() && cfg.suite != s {
            return Err(ConfigError::Conflict(format!(
                "subcommand `{}` conflicts with --suite {}",
                s.name(),
                cfg.suite.name()
            )));
        }
        cfg.suite = s;
    }
    if let Some(out) = &f.out {
        cfg.out = out.clone();
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Some(Command::Explain { id, list }) = &cli.command {
        if *list {
            for (k, _) in REGISTRY {
                println!("{k}");
            }
            return ExitCode::SUCCESS;
        }
        let Some(id) = id else {
            eprintln!("explain: missing check id (see `verify explain --list`)");
            return ExitCode::from(EXIT_CONFIG as u8);
        };
        return match explain(id) {
            Some(text) => {
                println!("{id}\n\n{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("explain: unknown check id `{id}`");
                ExitCode::from(EXIT_CONFIG as u8)
            }
        };
    }
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    match run_suite(&cfg) {
        Ok(outcome) => {
            for c in &outcome.report.checks {
                let status = match (c.pass, c.kind) {
                    (true, _) => "pass",
                    (false, causalnet::cli::CheckKind::Control) => "FAIL (control)",
                    (false, _) => "FAIL",
                };
                println!("{:<36} {status}", c.id);
            }
            let s = &outcome.report.summary;
            println!(
                "{}/{} checks passed, {}/{} controls behaved; report in {}",
                s.checks_passed,
                s.checks,
                s.controls_passed,
                s.controls,
                cfg.out.display()
            );
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("config error: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
