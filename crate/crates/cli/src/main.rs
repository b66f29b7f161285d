use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kenum::harness::{
    run, Command, HarnessError, IdentityKind, RCheck, RunConfig, SpecKind, DEFAULT_SEED,
};
use kenum::lattice::DEFAULT_CLEARING_THRESHOLD;

#[derive(Parser)]
#[command(name = "kenum", version, about = "Exact checks of K-theoretic enumerative identities")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Seed for evaluation points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Estimated term count above which zero tests evaluate instead of clearing.
    #[arg(long, global = true, default_value_t = DEFAULT_CLEARING_THRESHOLD)]
    clearing_threshold: u64,
    /// Write the JSON report here as well as to stdout.
    #[arg(long, global = true, value_name = "PATH")]
    emit_json: Option<PathBuf>,
    /// Worker threads for fixed-point sums.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Plethystic exponential (or logarithm) of a polynomial in z.
    Pleth {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long)]
        log: bool,
    },
    /// Localization series of Hilb(C^3) against the plethystic formula.
    NekrasovCheck {
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Hilb(C^2) series against its closed form.
    Hilb2Series {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Coefficients of the star-product expansion.
    StarExtract {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Vanishing of fixed-point weights on t1 t2 = 1.
    Rigidity {
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Cohomological limit of the Hilb(C^3) series.
    CohLimit {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Transfer matrix against enumeration and the plethystic product.
    Macmahon {
        #[arg(long, default_value_t = 5)]
        cutoff: usize,
        #[arg(long, value_enum, default_value_t = Spec::Macmahon)]
        spec: Spec,
    },
    /// R-matrix of T*P^1 from stable envelopes.
    Rmatrix {
        #[arg(long, value_enum, default_value_t = Check::Entries)]
        check: Check,
    },
    /// q-binomial, spinor and M-theory character identities.
    Identities {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Byte-exact comparison against stored series.
    Golden {
        #[arg(long, default_value = "crates/core/tests/golden")]
        suite: PathBuf,
        #[arg(long)]
        update: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Spec {
    Macmahon,
    Refined,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Entries,
    Unitarity,
    Yb,
    Degree,
    Diag,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Qbinomial,
    QbinomialDiff,
    Spinor,
    Mtheory,
}

fn to_command(cmd: Cmd) -> Command {
    match cmd {
        Cmd::Pleth { expr, order, log } => Command::Pleth { expr, order, log },
        Cmd::NekrasovCheck { order } => Command::NekrasovCheck { order },
        Cmd::Hilb2Series { order } => Command::Hilb2Series { order },
        Cmd::StarExtract { order } => Command::StarExtract { order },
        Cmd::Rigidity { order, trials } => Command::Rigidity { order, trials },
        Cmd::CohLimit { order } => Command::CohLimit { order },
        Cmd::Macmahon { cutoff, spec } => Command::Macmahon {
            cutoff,
            spec: match spec {
                Spec::Macmahon => SpecKind::Macmahon,
                Spec::Refined => SpecKind::Refined,
                Spec::Generic => SpecKind::Generic,
            },
        },
        Cmd::Rmatrix { check } => Command::Rmatrix {
            check: match check {
                Check::Entries => RCheck::Entries,
                Check::Unitarity => RCheck::Unitarity,
                Check::Yb => RCheck::Yb,
                Check::Degree => RCheck::Degree,
                Check::Diag => RCheck::Diag,
            },
        },
        Cmd::Identities { which, order } => Command::Identities {
            which: match which {
                Which::Qbinomial => IdentityKind::Qbinomial,
                Which::QbinomialDiff => IdentityKind::QbinomialDiff,
                Which::Spinor => IdentityKind::Spinor,
                Which::Mtheory => IdentityKind::Mtheory,
            },
            order,
        },
        Cmd::Golden { suite, update } => Command::Golden { suite, update },
    }
}

fn execute(cli: Cli) -> Result<bool, HarnessError> {
    if let Some(n) = cli.threads {
        kenum::harness::configure_threads(n)?;
    }
    let config = RunConfig {
        command: to_command(cli.command),
        seed: cli.seed,
        clearing_threshold: cli.clearing_threshold,
        output: cli.emit_json,
    };
    let report = run(&config)?;
    let json = report.to_json();
    print!("{json}");
    if let Some(path) = &config.output {
        fs::write(path, &json)?;
    }
    Ok(report.all_true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
