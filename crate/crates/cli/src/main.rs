use clap::{Parser, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use uqrs::cli::{run, Command, JobSpec, OutputFormat, Suite};
use uqrs::u0_characters::LatticeForm;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Matrices,
    Mults,
    HcImage,
    Product,
    PolyExpress,
    PairingGram,
    CentralElement,
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Matrices,
    Mults,
    Hc,
    Serre,
    Pairing,
    Relations,
    Central,
    Cache,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Exact computations for the centre of two-parameter quantum groups.
#[derive(Parser, Debug)]
#[command(name = "uqrs", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Cartan type letter (A-G).
    #[arg(long = "type")]
    type_tag: String,
    #[arg(long)]
    rank: usize,
    /// Comma-separated fundamental-weight coordinates; repeat for two weights.
    #[arg(long = "weight", allow_hyphen_values = true)]
    weights: Vec<String>,
    /// Read --weight in simple-root coordinates.
    #[arg(long)]
    alpha: bool,
    #[arg(long)]
    height_cutoff: Option<i64>,
    /// Defaults to $UQRS_CACHE_DIR when set.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Accepted for compatibility: output is always exact.
    #[arg(long)]
    exact_only: bool,
    #[arg(long, value_enum)]
    suite: Option<SuiteArg>,
    /// Use the root-lattice form instead of the weight-lattice form.
    #[arg(long)]
    root_form: bool,
    /// Allow module and central-element computations above rank 2.
    #[arg(long)]
    allow_large: bool,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let command = match a.command {
        Cmd::Matrices => Command::Matrices,
        Cmd::Mults => Command::Mults,
        Cmd::HcImage => Command::HcImage,
        Cmd::Product => Command::Product,
        Cmd::PolyExpress => Command::PolyExpress,
        Cmd::PairingGram => Command::PairingGram,
        Cmd::CentralElement => Command::CentralElement,
        Cmd::Verify => Command::Verify,
    };
    let mut job = JobSpec::new(command, &a.type_tag, a.rank);
    job.weights = a.weights;
    job.alpha_coords = a.alpha;
    job.height_cutoff = a.height_cutoff;
    job.cache_dir = a.cache_dir;
    job.output_format = match a.format {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    job.exact_only = a.exact_only;
    job.suite = a.suite.map(|s| match s {
        SuiteArg::Matrices => Suite::Matrices,
        SuiteArg::Mults => Suite::Mults,
        SuiteArg::Hc => Suite::Hc,
        SuiteArg::Serre => Suite::Serre,
        SuiteArg::Pairing => Suite::Pairing,
        SuiteArg::Relations => Suite::Relations,
        SuiteArg::Central => Suite::Central,
        SuiteArg::Cache => Suite::Cache,
        SuiteArg::All => Suite::All,
    });
    if a.root_form {
        job.form = LatticeForm::Root;
    }
    let out = run(&job);
    let res = if out.status == 2 {
        std::io::stderr().write_all(out.document.as_bytes())
    } else {
        std::io::stdout().write_all(out.document.as_bytes())
    };
    if res.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(out.status as u8)
}
