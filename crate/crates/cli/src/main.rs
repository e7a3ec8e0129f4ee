use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gamma_sectors_cli::{exit_code, run, Command, Options, BUILTIN_SCENARIOS};

#[derive(Parser)]
#[command(
    name = "gspec",
    version,
    about = "Γ-sectors and Γ-spectra of quotient orbifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Γ-sector table and component totals.
    Sectors(Args),
    /// Sector spectra and their union up to the cutoff.
    Spectrum(Args),
    /// First disagreement between the members' Γ-spectra.
    Compare(Args),
    /// Leading heat coefficients and truncated heat traces.
    Heat(Args),
    /// Almost conjugacy and lowest singular strata.
    Sunada(Args),
    /// Sector bijection certifying Γ-isospectrality.
    Certify(Args),
    /// List the builtin scenarios.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(clap::Args)]
struct Args {
    /// Builtin scenario (see `gspec list`) or file:<path>.
    scenario: String,
    /// Z, Z^<l>, F<l>, Zp:<p>, D:<k>, trivial or file:<presentation.json>.
    #[arg(long)]
    gamma: Option<String>,
    /// Harmonic degree bounding sphere spectra.
    #[arg(long, default_value_t = 6)]
    cutoff_degree: usize,
    /// Bound on μ = |v|² for flat spectra (eigenvalue 4π²μ); rationals as p/q.
    #[arg(long, default_value = "4")]
    cutoff_mu: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cap on enumerated homomorphism candidates.
    #[arg(long)]
    budget: Option<u64>,
    /// Re-verify internal invariants after the run.
    #[arg(long)]
    seed_check: bool,
    /// Heat-trace times, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1,1")]
    t: Vec<f64>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
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
    let (command, args) = match cli.command {
        Cmd::Sectors(a) => (Command::Sectors, a),
        Cmd::Spectrum(a) => (Command::Spectrum, a),
        Cmd::Compare(a) => (Command::Compare, a),
        Cmd::Heat(a) => (Command::Heat, a),
        Cmd::Sunada(a) => (Command::Sunada, a),
        Cmd::Certify(a) => (Command::Certify, a),
        Cmd::List => {
            for s in BUILTIN_SCENARIOS {
                println!("{s}");
            }
            return ExitCode::SUCCESS;
        }
    };
    let mut opts = Options {
        gamma: args.gamma,
        cutoff_degree: args.cutoff_degree,
        cutoff_mu: args.cutoff_mu,
        seed_check: args.seed_check,
        times: args.t,
        timing: args.timing,
        ..Options::default()
    };
    if let Some(b) = args.budget {
        opts.budget = b;
    }
    match run(command, &args.scenario, &opts) {
        Ok(report) => {
            match args.format {
                Format::Table => print!("{}", report.to_table()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.degraded {
                ExitCode::from(5)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("gspec: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
