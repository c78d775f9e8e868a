//! Structure documents, reports and the subcommand pipelines behind the
//! `isotropy` binary.

pub mod commands;
pub mod document;
pub mod parse;
pub mod report;

pub use commands::{adapted_chart, build, foliation_data, run, submanifold_from_equations, CliError, Command, Options};
pub use document::{parse_document, StructureDocument};
pub use report::{Check, Report};

/// Parse and run in one step; used by the binary and the tests.
pub fn run_text(cmd: Command, text: &str, source: &str, opts: &Options) -> Result<Report, CliError> {
    let doc = parse_document(text)?;
    run(cmd, &doc, source, opts)
}
