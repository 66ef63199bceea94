//! Experiment harness: TOML configs, the run grid and CSV/JSON outputs.

mod config;
mod experiment;
mod records;

pub use config::{ExperimentConfig, FILE_PLACEHOLDER, THREADS_ENV};
pub use experiment::{
    plan_jobs, run_experiment, summarize, summary_rows, write_outputs, ExperimentOutcome,
    FileSamples, Job, RunFailure, SkippedFile, SAMPLING_METHOD,
};
pub use records::{
    read_csv, read_csv_file, round3, write_csv, write_csv_file, ExhaustiveRow, RunRecord,
    SampleRow, SearchReport, SummaryRow, TraceRow, RECORDS_HEADER, SAMPLES_HEADER, SUMMARY_HEADER,
};
