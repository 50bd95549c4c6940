//! Drivers behind the command-line tool: Monte Carlo decoding runs, counting
//! tables, code search on the constant-sum sphere and the worked-example
//! self-check.

mod enumerate;
mod examples;
mod search;
mod simulate;
mod source;

pub use enumerate::{enumerate_counts, CountsTable};
pub use examples::{default_examples, run_examples, ExampleOutcome, WorkedExample};
pub use search::{search, SearchStrategy, EXHAUSTIVE_SPHERE_LIMIT};
pub use simulate::{simulate, write_csv, DecoderKind, Outcome, Simulation, TrialReport, TrialRow};
pub use source::{CodeSource, ConstructionKind, InnerSource, LoadedCode};
