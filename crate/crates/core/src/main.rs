use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rlbwt_order::harness::{
    self, write_csv, write_csv_file, ExhaustiveRow, ExperimentConfig, RunRecord, SampleRow,
    SearchReport, TraceRow,
};
use rlbwt_order::init::init_ordering;
use rlbwt_order::rle::{rle_decode, rle_encode, RleEncoding};
use rlbwt_order::search::{
    exhaustive_search, first_improvement_search, harmonic_bound, random_sampling, DEFAULT_BUDGET,
    DEFAULT_SIGMA_CAP,
};
use rlbwt_order::text::load_text;
use rlbwt_order::transform::bwt;
use rlbwt_order::{
    fitness, EndMarkerPolicy, Error, InitMethod, NeighborhoodSpec, Ordering, Result, Text,
};

#[derive(Parser, Debug)]
#[command(
    name = "rlbwt-order",
    version,
    about = "Search alphabet orderings that shrink the run-length encoded BWT"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the BWT of a file (end marker included) under an ordering.
    Bwt {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        ordering: OrderingArgs,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Byte-pair run-length encoding.
    Rle {
        #[command(subcommand)]
        op: RleOp,
    },
    /// Print the RLBWT size f and the percentage change C.
    Fitness {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        ordering: OrderingArgs,
    },
    /// Evaluate uniformly random orderings.
    Sample {
        #[command(flatten)]
        file: FileArg,
        #[arg(short = 'n', long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        end_marker: EndMarkerPolicy,
        /// Write every sample to this CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// First-Improvement local search from one initial ordering.
    Search {
        #[command(flatten)]
        file: FileArg,
        #[command(flatten)]
        ordering: OrderingArgs,
        /// Neighborhood as `operators:order`, e.g. `swap:lex`, `insert-then-swap:random`.
        #[arg(long, default_value = "swap:lex")]
        spec: NeighborhoodSpec,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the improvement trace CSV here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Evaluate every ordering of a small alphabet.
    Exhaustive {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = DEFAULT_SIGMA_CAP)]
        max_sigma: usize,
        #[arg(long, default_value = "auto")]
        end_marker: EndMarkerPolicy,
        /// Output CSV; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an experiment grid from a TOML config.
    Experiment {
        #[arg(short, long)]
        config: PathBuf,
        /// Override the output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Override the worker count.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum RleOp {
    Encode {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Decode {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct FileArg {
    /// Input file.
    #[arg(
        value_name = "FILE",
        required_unless_present = "file",
        conflicts_with = "file"
    )]
    path: Option<PathBuf>,
    /// Input file, as an alternative to the positional argument.
    #[arg(long = "file", value_name = "FILE")]
    file: Option<PathBuf>,
}

impl FileArg {
    fn get(&self) -> &Path {
        self.path
            .as_deref()
            .or(self.file.as_deref())
            .expect("clap enforces one input file")
    }
}

#[derive(Args, Debug)]
struct OrderingArgs {
    /// ascii, random, random:<seed>, first-appearance, least-frequent,
    /// most-frequent, chapin-tate, inv-chapin-tate, vowels or file:<path>.
    #[arg(long, visible_alias = "init", default_value = "ascii")]
    ordering: InitMethod,
    /// Ordering file (one decimal byte per line); overrides --ordering.
    #[arg(long)]
    ordering_file: Option<PathBuf>,
    /// Seed for `random` and for the random neighbor order.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `auto`, a decimal byte value or a single character.
    #[arg(long, default_value = "auto")]
    end_marker: EndMarkerPolicy,
}

impl OrderingArgs {
    fn method(&self) -> InitMethod {
        match (&self.ordering_file, &self.ordering) {
            (Some(p), _) => InitMethod::FromFile(p.clone()),
            (None, InitMethod::Random(0)) => InitMethod::Random(self.seed),
            (None, m) => m.clone(),
        }
    }

    fn resolve(&self, file: &Path) -> Result<(Text, InitMethod, Ordering)> {
        let t = load_text(file, self.end_marker)?;
        let m = self.method();
        let o = init_ordering(&m, &t)?;
        Ok((t, m, o))
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p).map_err(
            |e| Error::Io {
                path: p.to_path_buf(),
                source: e,
            },
        )?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_all(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    let mut w = output(path)?;
    let name = path.map_or(PathBuf::from("<stdout>"), Path::to_path_buf);
    w.write_all(bytes)
        .and_then(|_| w.flush())
        .map_err(|e| Error::Io {
            path: name,
            source: e,
        })
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn file_label(p: &Path) -> String {
    p.file_name().map_or_else(
        || p.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bwt {
            file: file_arg,
            ordering,
            output,
        } => {
            let file = file_arg.get();
            let (t, _, o) = ordering.resolve(file)?;
            let b = bwt(&t, &o)?;
            eprintln!(
                "length={} end_marker={} runs={}",
                b.len(),
                t.end_marker(),
                b.runs()
            );
            write_all(output.as_deref(), &b.bytes)
        }
        Command::Rle { op } => match op {
            RleOp::Encode { input, output } => {
                let e = rle_encode(&read(&input)?);
                write_all(output.as_deref(), &e.to_bytes())
            }
            RleOp::Decode { input, output } => {
                let e = RleEncoding::from_bytes(&read(&input)?)?;
                write_all(output.as_deref(), &rle_decode(&e)?)
            }
        },
        Command::Fitness {
            file: file_arg,
            ordering,
        } => {
            let file = file_arg.get();
            let (t, m, o) = ordering.resolve(file)?;
            let f = fitness(&t, &o)?;
            let c = f.percent_change(t.len() as u64)?;
            println!(
                "file={} bytes={} sigma={} init={} f={} C={:+.3}",
                file_label(file),
                t.len(),
                o.len(),
                m,
                f.bytes(),
                c
            );
            Ok(())
        }
        Command::Sample {
            file: file_arg,
            samples,
            seed,
            end_marker,
            csv,
        } => {
            let file = file_arg.get();
            let t = load_text(file, end_marker)?;
            let s = random_sampling(&t, samples, seed)?;
            let ascii =
                fitness(&t, &Ordering::ascii(&t.alphabet()))?.percent_change(t.len() as u64)?;
            println!(
                "file={} samples={} min_c={:.3} max_c={:.3} mean_c={:.3} std_c={:.3} ascii_c={:.3} \
                 improvements={} harmonic_bound={:.3}",
                file_label(file),
                s.samples,
                s.summary.min,
                s.summary.max,
                s.summary.mean,
                s.summary.std,
                ascii,
                s.improvements,
                harmonic_bound(s.samples as u64)
            );
            if let Some(p) = csv {
                let name = file_label(file);
                let rows: Vec<SampleRow> = s
                    .fitness
                    .iter()
                    .zip(&s.c)
                    .enumerate()
                    .map(|(i, (f, c))| SampleRow {
                        file: name.clone(),
                        sample_index: i,
                        fitness: f.bytes(),
                        c: *c,
                    })
                    .collect();
                write_csv_file(&rows, &p)?;
            }
            Ok(())
        }
        Command::Search {
            file: file_arg,
            ordering,
            spec,
            budget,
            json,
            trace,
        } => {
            let file = file_arg.get();
            let start = std::time::Instant::now();
            let (t, m, o) = ordering.resolve(file)?;
            let r = first_improvement_search(&t, &o, spec, budget, ordering.seed)?;
            let bytes = t.len() as u64;
            let rows = TraceRow::from_trace(&r.trace, bytes)?;
            let init = match &m {
                InitMethod::FromFile(p) => format!("file:{}", file_label(p)),
                other => other.name().to_string(),
            };
            let report = SearchReport {
                record: RunRecord {
                    file: file_label(file),
                    bytes,
                    sigma: o.len(),
                    init,
                    spec: spec.to_string(),
                    seed: ordering.seed,
                    initial_c: r.initial_fitness.percent_change(bytes)?,
                    final_c: r.best_fitness.percent_change(bytes)?,
                    steps: r.steps,
                    hitting_step: r.hitting_step,
                    terminated: r.terminated,
                    wall_ms: start.elapsed().as_millis() as u64,
                },
                end_marker: t.end_marker(),
                initial_fitness: r.initial_fitness.bytes(),
                final_fitness: r.best_fitness.bytes(),
                final_ordering: r.best_ordering.perm().to_vec(),
                trace: rows.clone(),
            };
            if let Some(p) = trace {
                write_csv_file(&rows, &p)?;
            }
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            write_all(json.as_deref(), text.as_bytes())
        }
        Command::Exhaustive {
            file: file_arg,
            max_sigma,
            end_marker,
            output: out,
        } => {
            let file = file_arg.get();
            let t = load_text(file, end_marker)?;
            let ex = exhaustive_search(&t, max_sigma)?;
            let rows: Vec<ExhaustiveRow> = ex
                .results
                .iter()
                .map(|(o, f, c)| ExhaustiveRow {
                    ordering: o.to_escaped(),
                    fitness: f.bytes(),
                    c: *c,
                })
                .collect();
            eprintln!(
                "orderings={} best={} ({:+.3}) worst={} ({:+.3})",
                rows.len(),
                ex.best().0.to_escaped(),
                ex.best().2,
                ex.worst().0.to_escaped(),
                ex.worst().2
            );
            write_csv(&rows, output(out.as_deref())?)
        }
        Command::Experiment {
            config,
            output_dir,
            threads,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(d) = output_dir {
                cfg.output_dir = d;
            }
            if threads.is_some() {
                cfg.parallelism = threads;
            }
            let out = harness::run_experiment(&cfg)?;
            harness::write_outputs(&cfg, &out)?;
            println!(
                "runs={} failures={} skipped={} output={}",
                out.records.len(),
                out.failures.len(),
                out.skipped.len(),
                cfg.output_dir.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
