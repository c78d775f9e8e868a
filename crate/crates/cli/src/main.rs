use clap::{Parser, Subcommand, ValueEnum};
use isotropy_cli::document::GridSpec;
use isotropy_cli::{run_text, CliError, Command, Options};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "isotropy", version, about = "Exact checks for isotropic subbundles of TM ⊕ T*M")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Sample grid `lo..hi`, optionally followed by ` cap N`
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings (the report is then not reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand)]
enum Sub {
    Validate { file: PathBuf },
    Integrability { file: PathBuf },
    Canonical { file: PathBuf },
    Decomposable { file: PathBuf },
    Transversal { file: PathBuf },
    Reduce { file: PathBuf },
    ReportAll { file: PathBuf },
}

fn go(cli: Cli) -> Result<bool, CliError> {
    let (cmd, file) = match cli.command {
        Sub::Validate { file } => (Command::Validate, file),
        Sub::Integrability { file } => (Command::Integrability, file),
        Sub::Canonical { file } => (Command::Canonical, file),
        Sub::Decomposable { file } => (Command::Decomposable, file),
        Sub::Transversal { file } => (Command::Transversal, file),
        Sub::Reduce { file } => (Command::Reduce, file),
        Sub::ReportAll { file } => (Command::ReportAll, file),
    };
    let grid = cli.grid.as_deref().map(GridSpec::parse).transpose().map_err(CliError::Input)?;
    let opts = Options { seed: cli.seed, grid, timing: cli.timing };
    let text = std::fs::read_to_string(&file)?;
    let source = file.file_name().map_or_else(|| file.display().to_string(), |n| n.to_string_lossy().into_owned());
    let report = run_text(cmd, &text, &source, &opts)?;
    let Format::Json = cli.format;
    let out = report.to_json();
    match &cli.output {
        Some(p) => std::fs::write(p, out)?,
        None => print!("{out}"),
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    match go(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("isotropy: {e}");
            ExitCode::from(2)
        }
    }
}
