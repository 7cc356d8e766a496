//! Parsing, scenario execution, built-in examples and JSON documents.

pub mod app;
pub mod document;
pub mod examples;
pub mod parse;
pub mod scenario;

pub use app::{exit_code, run_cli};
pub use document::{AtlasDoc, MapDoc, PatchDoc};
pub use examples::{builtin_example, EXAMPLES};
pub use parse::parse_poly;
pub use scenario::{run_scenario, Command, Options, Outcome, Scenario};
