//! File formats, report rendering and the command-line front end for
//! [`qltclab_core`].

pub mod alist;
pub mod bundle;
pub mod cli;
pub mod error;
pub mod output;

pub use alist::{parse_alist, read_alist, to_alist, write_alist, AlistError};
pub use bundle::{BundleError, BundleReport, CodeBundle, Matrices, Metadata, BUNDLE_HEADER};
pub use cli::run;
pub use error::CliError;
