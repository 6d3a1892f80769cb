//! Command-line front end: parses arguments, dispatches to the command
//! layer, and prints text or JSON reports with deterministic seeding.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use wittkit::commands;
use wittkit::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "wittkit", about = "Witt ring, residue, and P^1 fibration calculations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for all sampled randomness; WITTKIT_SEED overrides the default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count for property-based commands.
    #[arg(long, global = true, default_value_t = 500)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exhaustive table of a finite Witt ring.
    WittTable { field: String },
    /// Canonical classification of a form literal "<...> over FIELD".
    Classify { form: String },
    /// Sign, square class, and nilpotent part of a Witt unit.
    UnitDecompose { form: String },
    /// Cardinalities of the unit-group pushout square.
    PushoutCheck { field: String },
    /// Second residue and specialization at a place.
    Residue {
        form: String,
        /// p-adic place of Q.
        #[arg(long)]
        p: Option<u64>,
        /// Monic irreducible place of k(T), as a polynomial in T.
        #[arg(long)]
        place: Option<String>,
        /// The place at infinity of k(T).
        #[arg(long, default_value_t = false)]
        infinity: bool,
        /// Run the units residue sequence check over this base instead.
        #[arg(long)]
        sequence_base: Option<String>,
        #[arg(long, default_value_t = 2)]
        support_size: usize,
    },
    /// Milnor sequence round-trip over degree-1 supports.
    MilnorCheck {
        base: String,
        #[arg(long, default_value_t = 3)]
        support_size: usize,
    },
    /// Assemble a Gersten complex and check its differential.
    Gersten {
        base: String,
        #[arg(long, default_value = "p1")]
        scheme: String,
        #[arg(long, default_value = "gw-units")]
        sheaf: String,
        /// Comma-separated support points, e.g. "(T),(T-1),infinity".
        #[arg(long, default_value = "(T)")]
        support: String,
    },
    /// H^1(P^1) cokernels, line bundle images, and the exact diagram.
    P1Fibrations { base: String },
    /// Sphere cohomology H^i(S^p wedge G_m^q, GW^x).
    SphereCohomology { base: String, p: u32, q: u32, i: u32 },
    /// Orientability of the tangent sphere bundle over P^n.
    Orientation { base: String, n: i64 },
    /// Bezout form of a rational self-map "A / B".
    Bezout {
        map: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Clutching class of the degree-3 T-family.
    Clutch {
        #[arg(long)]
        base: String,
        #[arg(long)]
        u: String,
    },
    /// Axiom property suites (A1)-(A3).
    Axioms {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 0)]
        point: i64,
    },
}

fn effective_seed(cli_seed: Option<u64>) -> u64 {
    if let Ok(s) = std::env::var("WITTKIT_SEED") {
        if let Ok(v) = s.parse() {
            return v;
        }
    }
    cli_seed.unwrap_or(0)
}

fn run(cli: &Cli) -> Result<Report, String> {
    let seed = effective_seed(cli.seed);
    let samples = cli.samples;
    match &cli.command {
        Command::WittTable { field } => commands::witt_table(field),
        Command::Classify { form } => commands::classify(form),
        Command::UnitDecompose { form } => commands::unit_decompose(form),
        Command::PushoutCheck { field } => commands::pushout_check(field),
        Command::Residue { form, p, place, infinity, sequence_base, support_size } => {
            match sequence_base {
                Some(base) => commands::residue_sequence(base, *support_size),
                None => commands::residue_cmd(form, *p, place.as_deref(), *infinity),
            }
        }
        Command::MilnorCheck { base, support_size } => {
            commands::milnor_check(base, *support_size, samples.min(50), seed)
        }
        Command::Gersten { base, scheme, sheaf, support } => {
            commands::gersten_cmd(base, scheme, sheaf, support, samples.min(25), seed)
        }
        Command::P1Fibrations { base } => commands::p1_fibrations(base, seed),
        Command::SphereCohomology { base, p, q, i } => {
            commands::sphere_cohomology(base, *p, *q, *i)
        }
        Command::Orientation { base, n } => commands::orientation(base, *n),
        Command::Bezout { map, field } => commands::bezout_cmd(map, field),
        Command::Clutch { base, u } => commands::clutch(base, u),
        Command::Axioms { scenario, base, p, point } => {
            commands::axioms(scenario, base.as_deref(), *p, *point, samples.min(200), seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis();
            match cli.output {
                Output::Json => println!("{}", report.to_json()),
                Output::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
