//! Instance files, suite orchestration and reports for the command-line tool.

mod instance;
mod report;
mod suite;

pub use instance::{parse_instance, parse_instance_str, Budgets, InstanceSpec, ParseError};
pub use report::{
    digest, emit_report, exit_code, outcome_of, CheckReport, Format, Report, SuiteReport, SCHEMA_VERSION,
};
pub use suite::{corpus_instances, run_corpus, run_suite, Suite};
