//! Command-line front end: input documents, reports and their rendering.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;
pub mod text;

pub use commands::{analyze, connectivity, mixed_volume, monodromy, Options};
pub use document::{ConnectivityDocument, TupleDocument};
pub use error::{CliError, FailureKind};
pub use report::{Int, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text::render(report),
        Format::Json => report.to_json() + "\n",
    }
}
