//! JSON formats, the `loopspace` command line and the seeded verification
//! suites built on `loopspace-core`.

pub mod cli;
pub mod error;
pub mod json;
pub mod oracle;
pub mod verify;

pub use error::CliError;
