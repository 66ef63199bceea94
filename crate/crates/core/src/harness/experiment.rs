use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::records::{
    round3, write_csv_file, write_csv_with_header, RunRecord, SampleRow, SummaryRow, TraceRow,
    RECORDS_HEADER, SAMPLES_HEADER, SUMMARY_HEADER,
};
use crate::error::{Error, Result};
use crate::init::{init_ordering, random_ordering, InitMethod};
use crate::neighborhood::NeighborhoodSpec;
use crate::search::{first_improvement_search, random_sampling, SampleStats, TracePoint};
use crate::stats::SummaryStats;
use crate::text::{load_text, Ordering, Text};

pub const SAMPLING_METHOD: &str = "sampling";

/// One search run of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub file_index: usize,
    /// Label written to the `init` column.
    pub init_label: String,
    pub init: InitMethod,
    pub spec: NeighborhoodSpec,
    /// Seed for the start ordering (random inits) and the neighbor shuffles.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedFile {
    pub file: PathBuf,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunFailure {
    pub file: String,
    pub init: String,
    pub spec: String,
    pub seed: u64,
    pub error: String,
}

/// Sampling results for one file.
#[derive(Debug, Clone, PartialEq)]
pub struct FileSamples {
    pub file: String,
    pub bytes: u64,
    pub stats: SampleStats,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    /// In grid order: file, init, start, spec.
    pub records: Vec<RunRecord>,
    /// Improvement traces, parallel to `records`.
    pub traces: Vec<Vec<TracePoint>>,
    pub samples: Vec<FileSamples>,
    pub summary: Vec<SummaryRow>,
    pub skipped: Vec<SkippedFile>,
    pub failures: Vec<RunFailure>,
}

struct LoadedFile {
    name: String,
    text: Text,
    inits: Vec<InitMethod>,
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn init_label(raw: &str, m: &InitMethod) -> String {
    match m {
        InitMethod::FromFile(p) => format!("file:{}", file_label(p)),
        InitMethod::Random(_) if raw != "random" => raw.to_string(),
        other => other.name().to_string(),
    }
}

/// Expands the config into the job list. `random` becomes
/// `random_starts` jobs seeded `master_seed + i`; every other init gets
/// seed `master_seed`.
pub fn plan_jobs(cfg: &ExperimentConfig, inits_per_file: &[Vec<InitMethod>]) -> Result<Vec<Job>> {
    let specs = cfg.neighborhood_specs()?;
    let mut jobs = Vec::new();
    for (file_index, inits) in inits_per_file.iter().enumerate() {
        for (raw, init) in cfg.inits.iter().zip(inits) {
            let label = init_label(raw, init);
            let starts: Vec<(InitMethod, u64)> = match init {
                InitMethod::Random(_) if raw == "random" => (0..cfg.random_starts as u64)
                    .map(|i| {
                        let s = cfg.master_seed.wrapping_add(i);
                        (InitMethod::Random(s), s)
                    })
                    .collect(),
                InitMethod::Random(s) => vec![(init.clone(), *s)],
                _ => vec![(init.clone(), cfg.master_seed)],
            };
            for (init, seed) in starts {
                for &spec in &specs {
                    jobs.push(Job {
                        file_index,
                        init_label: label.clone(),
                        init: init.clone(),
                        spec,
                        seed,
                    });
                }
            }
        }
    }
    Ok(jobs)
}

fn run_job(job: &Job, file: &LoadedFile, budget: u64) -> Result<(RunRecord, Vec<TracePoint>)> {
    let start = Instant::now();
    let t = &file.text;
    let init: Ordering = match &job.init {
        InitMethod::Random(s) => random_ordering(&t.alphabet(), *s),
        other => init_ordering(other, t)?,
    };
    let r = first_improvement_search(t, &init, job.spec, budget, job.seed)?;
    let bytes = t.len() as u64;
    let record = RunRecord {
        file: file.name.clone(),
        bytes,
        sigma: init.len(),
        init: job.init_label.clone(),
        spec: job.spec.to_string(),
        seed: job.seed,
        initial_c: r.initial_fitness.percent_change(bytes)?,
        final_c: r.best_fitness.percent_change(bytes)?,
        steps: r.steps,
        hitting_step: r.hitting_step,
        terminated: r.terminated,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok((record, r.trace))
}

/// Runs the grid described by `cfg` without writing anything.
///
/// Files whose bytes cover all 256 values (no end marker available) and
/// files that fail to load are skipped with a warning; failing runs are
/// collected and the rest of the grid continues. Records come back in grid
/// order regardless of the thread count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let policy = cfg.end_marker_policy()?;
    let mut files = Vec::new();
    let mut skipped = Vec::new();
    for path in &cfg.files {
        let name = file_label(path);
        match load_text(path, policy) {
            Ok(text) => {
                let inits = cfg.init_methods_for(&name)?;
                files.push(LoadedFile { name, text, inits });
            }
            Err(e) => {
                warn!("skipping {}: {e}", path.display());
                skipped.push(SkippedFile {
                    file: path.clone(),
                    reason: e.to_string(),
                });
            }
        }
    }

    let threads = cfg.effective_parallelism();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let inits: Vec<Vec<InitMethod>> = files.iter().map(|f| f.inits.clone()).collect();
    let jobs = plan_jobs(cfg, &inits)?;
    info!(
        "{} files, {} runs, {threads} threads",
        files.len(),
        jobs.len()
    );

    let (results, samples) = pool.install(|| {
        let results: Vec<Result<(RunRecord, Vec<TracePoint>)>> = jobs
            .par_iter()
            .map(|job| run_job(job, &files[job.file_index], cfg.budget))
            .collect();
        let samples: Result<Vec<FileSamples>> = if cfg.samples == 0 {
            Ok(Vec::new())
        } else {
            files
                .iter()
                .map(|f| {
                    Ok(FileSamples {
                        file: f.name.clone(),
                        bytes: f.text.len() as u64,
                        stats: random_sampling(&f.text, cfg.samples, cfg.master_seed)?,
                    })
                })
                .collect()
        };
        (results, samples)
    });
    let samples = samples?;

    let mut records = Vec::new();
    let mut traces = Vec::new();
    let mut failures = Vec::new();
    for (job, res) in jobs.iter().zip(results) {
        match res {
            Ok((rec, trace)) => {
                records.push(rec);
                traces.push(trace);
            }
            Err(e) => {
                let file = files[job.file_index].name.clone();
                warn!(
                    "run failed: {file} {} {} seed {}: {e}",
                    job.init_label, job.spec, job.seed
                );
                failures.push(RunFailure {
                    file,
                    init: job.init_label.clone(),
                    spec: job.spec.to_string(),
                    seed: job.seed,
                    error: e.to_string(),
                });
            }
        }
    }

    let mut summary = summary_rows(&records)?;
    for s in &samples {
        summary.push(summary_row(&s.file, SAMPLING_METHOD, &s.stats.summary));
    }

    Ok(ExperimentOutcome {
        records,
        traces,
        samples,
        summary,
        skipped,
        failures,
    })
}

/// Statistics of `final_c` over a group of records.
pub fn summarize(records: &[&RunRecord]) -> Result<SummaryStats> {
    let c: Vec<f64> = records.iter().map(|r| r.final_c).collect();
    SummaryStats::from_values(&c)
}

fn summary_row(file: &str, method: &str, s: &SummaryStats) -> SummaryRow {
    SummaryRow {
        file: file.to_string(),
        method: method.to_string(),
        min_c: round3(s.min),
        max_c: round3(s.max),
        mean_c: round3(s.mean),
        std_c: round3(s.std),
    }
}

/// One row per (file, init/spec) group, in order of first appearance.
pub fn summary_rows(records: &[RunRecord]) -> Result<Vec<SummaryRow>> {
    let mut keys: Vec<(String, String)> = Vec::new();
    for r in records {
        let k = (r.file.clone(), r.method());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.iter()
        .map(|(file, method)| {
            let group: Vec<&RunRecord> = records
                .iter()
                .filter(|r| &r.file == file && &r.method() == method)
                .collect();
            Ok(summary_row(file, method, &summarize(&group)?))
        })
        .collect()
}

#[derive(Serialize)]
struct Metadata<'a> {
    tool: &'static str,
    version: &'static str,
    std_convention: &'static str,
    random_order_policy: &'static str,
    step_counting: &'static str,
    random_start_seeds: &'static str,
    threads: usize,
    runs: usize,
    config: &'a ExperimentConfig,
    skipped: &'a [SkippedFile],
    failures: &'a [RunFailure],
}

fn trace_file_name(r: &RunRecord) -> String {
    let clean = |s: &str| {
        s.chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                    c
                } else {
                    '_'
                }
            })
            .collect::<String>()
    };
    format!(
        "{}__{}__{}__{}.csv",
        clean(&r.file),
        clean(&r.init),
        r.seed,
        clean(&r.spec)
    )
}

/// Writes `records.csv`, `summary.csv`, `samples.csv` (when sampling ran
/// and `write_samples` is set), `metadata.json` and optional traces.
pub fn write_outputs(cfg: &ExperimentConfig, out: &ExperimentOutcome) -> Result<()> {
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_csv_with_header(&out.records, &RECORDS_HEADER, &dir.join("records.csv"))?;
    write_csv_with_header(&out.summary, &SUMMARY_HEADER, &dir.join("summary.csv"))?;

    if cfg.samples > 0 && cfg.write_samples {
        let rows: Vec<SampleRow> = out
            .samples
            .iter()
            .flat_map(|s| {
                s.stats
                    .fitness
                    .iter()
                    .zip(&s.stats.c)
                    .enumerate()
                    .map(|(i, (f, c))| SampleRow {
                        file: s.file.clone(),
                        sample_index: i,
                        fitness: f.bytes(),
                        c: *c,
                    })
            })
            .collect();
        write_csv_with_header(&rows, &SAMPLES_HEADER, &dir.join("samples.csv"))?;
    }

    if cfg.write_traces {
        let tdir = dir.join("traces");
        std::fs::create_dir_all(&tdir).map_err(|e| Error::io(&tdir, e))?;
        for (r, trace) in out.records.iter().zip(&out.traces) {
            let rows = TraceRow::from_trace(trace, r.bytes)?;
            write_csv_file(&rows, &tdir.join(trace_file_name(r)))?;
        }
    }

    let meta = Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        std_convention: "population (divide by N)",
        random_order_policy: "random neighbor order is reshuffled after every accepted move",
        step_counting: "steps counts every fitness evaluation including the initial one; \
                        hitting_step is the evaluation that produced the final ordering",
        random_start_seeds: "random start i uses seed master_seed + i for both the start \
                             ordering and the neighbor shuffles",
        threads: cfg.effective_parallelism(),
        runs: out.records.len(),
        config: cfg,
        skipped: &out.skipped,
        failures: &out.failures,
    };
    let path = dir.join("metadata.json");
    let json = serde_json::to_string_pretty(&meta)?;
    std::fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Termination;

    fn write(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, bytes).unwrap();
        p
    }

    fn small_config(dir: &Path, files: Vec<PathBuf>) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::for_files(files);
        cfg.inits = vec!["random".into(), "ascii".into(), "most-frequent".into()];
        cfg.specs = vec!["swap:lex".into(), "insert:random".into()];
        cfg.budget = 50;
        cfg.random_starts = 3;
        cfg.master_seed = 11;
        cfg.output_dir = dir.join("out");
        cfg.parallelism = Some(1);
        cfg
    }

    #[test]
    fn plan_expands_random_starts() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = small_config(dir.path(), vec!["x".into()]);
        let inits = vec![cfg.init_methods_for("x").unwrap()];
        let jobs = plan_jobs(&cfg, &inits).unwrap();
        assert_eq!(jobs.len(), (3 + 1 + 1) * 2);
        let seeds: Vec<u64> = jobs.iter().map(|j| j.seed).collect();
        assert_eq!(seeds, [11, 11, 12, 12, 13, 13, 11, 11, 11, 11]);
        assert_eq!(jobs[2].init, InitMethod::Random(12));
        assert_eq!(jobs[6].init_label, "ascii");
    }

    #[test]
    fn explicit_random_seed_is_a_single_start() {
        let mut cfg = ExperimentConfig::for_files(vec!["x".into()]);
        cfg.inits = vec!["random:99".into()];
        cfg.specs = vec!["swap".into()];
        let jobs = plan_jobs(&cfg, &[cfg.init_methods_for("x").unwrap()]).unwrap();
        assert_eq!(jobs.len(), 1);
        assert_eq!(jobs[0].seed, 99);
        assert_eq!(jobs[0].init_label, "random:99");
    }

    #[test]
    fn runs_grid_skips_full_alphabet_and_writes_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(
            dir.path(),
            "a.txt",
            b"the quick brown fox jumps over the lazy dog, again and again",
        );
        let all: Vec<u8> = (0..=255u8).collect();
        let full = write(dir.path(), "full.bin", &all);
        let mut cfg = small_config(dir.path(), vec![a, full]);
        cfg.samples = 40;
        cfg.write_traces = true;
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.skipped.len(), 1);
        assert!(out.failures.is_empty());
        assert_eq!(out.records.len(), 10);
        for r in &out.records {
            assert!(r.final_c <= r.initial_c);
            assert!(r.steps <= 50);
            assert!(r.hitting_step <= r.steps);
            if r.terminated == Termination::Budget {
                assert_eq!(r.steps, 50);
            }
        }
        assert_eq!(out.samples.len(), 1);
        // 3 groups per spec (random, ascii, most-frequent) plus sampling
        assert_eq!(out.summary.len(), 7);
        assert_eq!(out.summary.last().unwrap().method, SAMPLING_METHOD);

        write_outputs(&cfg, &out).unwrap();
        let od = &cfg.output_dir;
        for f in ["records.csv", "summary.csv", "samples.csv", "metadata.json"] {
            assert!(od.join(f).exists(), "{f}");
        }
        assert_eq!(std::fs::read_dir(od.join("traces")).unwrap().count(), 10);
        let back: Vec<RunRecord> =
            super::super::records::read_csv_file(&od.join("records.csv")).unwrap();
        assert_eq!(back, out.records);
        let meta: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(od.join("metadata.json")).unwrap())
                .unwrap();
        assert_eq!(meta["skipped"].as_array().unwrap().len(), 1);
        assert!(meta["std_convention"]
            .as_str()
            .unwrap()
            .starts_with("population"));
    }

    #[test]
    fn missing_ordering_file_is_a_recorded_failure() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(dir.path(), "a.txt", b"abracadabra");
        let mut cfg = small_config(dir.path(), vec![a]);
        cfg.inits = vec!["ascii".into(), "file:nope/{file}".into()];
        cfg.specs = vec!["swap".into()];
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.failures.len(), 1);
        assert_eq!(out.failures[0].init, "file:a.txt");
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(
            dir.path(),
            "a.txt",
            b"she sells sea shells by the sea shore; the shells she sells",
        );
        let mut cfg = small_config(dir.path(), vec![a]);
        cfg.samples = 30;
        let one = run_experiment(&cfg).unwrap();
        cfg.parallelism = Some(3);
        let three = run_experiment(&cfg).unwrap();
        let strip = |o: &ExperimentOutcome| {
            o.records
                .iter()
                .map(|r| RunRecord {
                    wall_ms: 0,
                    ..r.clone()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&one), strip(&three));
        assert_eq!(one.samples, three.samples);
        assert_eq!(one.summary, three.summary);
    }

    #[test]
    fn summarize_empty_group() {
        assert!(matches!(summarize(&[]), Err(Error::EmptyGroup)));
    }
}
