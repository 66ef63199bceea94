use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::init::InitMethod;
use crate::neighborhood::NeighborhoodSpec;
use crate::text::EndMarkerPolicy;

/// Environment variable that overrides the configured worker count.
pub const THREADS_ENV: &str = "RLBWT_ORDER_THREADS";

/// Placeholder in `file:` init paths, replaced by each input's file name.
pub const FILE_PLACEHOLDER: &str = "{file}";

/// Experiment grid as written in a TOML config file.
///
/// Relative paths are resolved against the config file's directory by
/// [`ExperimentConfig::load`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub files: Vec<PathBuf>,
    #[serde(default = "default_inits")]
    pub inits: Vec<String>,
    #[serde(default = "default_specs")]
    pub specs: Vec<String>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Random-sampling draws per file; 0 disables sampling.
    #[serde(default)]
    pub samples: usize,
    /// How many fixed random starts a `random` init expands into.
    #[serde(default = "default_random_starts")]
    pub random_starts: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub parallelism: Option<usize>,
    #[serde(default = "default_end_marker")]
    pub end_marker: String,
    /// Write one trace CSV per search run under `output_dir/traces`.
    #[serde(default)]
    pub write_traces: bool,
    /// Write every sampled fitness to `samples.csv`.
    #[serde(default = "default_true")]
    pub write_samples: bool,
}

fn default_inits() -> Vec<String> {
    std::iter::once("random".to_string())
        .chain(
            InitMethod::deterministic()
                .iter()
                .map(|m| m.name().to_string()),
        )
        .collect()
}

fn default_specs() -> Vec<String> {
    NeighborhoodSpec::all()
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn default_budget() -> u64 {
    crate::search::DEFAULT_BUDGET
}

fn default_random_starts() -> usize {
    20
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_end_marker() -> String {
    "auto".into()
}

fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    /// Config with defaults for everything but the input files.
    pub fn for_files(files: Vec<PathBuf>) -> Self {
        ExperimentConfig {
            files,
            inits: default_inits(),
            specs: default_specs(),
            budget: default_budget(),
            samples: 0,
            random_starts: default_random_starts(),
            master_seed: 0,
            output_dir: default_output_dir(),
            parallelism: None,
            end_marker: default_end_marker(),
            write_traces: false,
            write_samples: true,
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(src).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = ExperimentConfig::parse(&src)?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_relative_to(base);
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn resolve_relative_to(&mut self, base: &Path) {
        let fix = |p: &Path| {
            if p.is_relative() {
                base.join(p)
            } else {
                p.to_path_buf()
            }
        };
        for f in &mut self.files {
            *f = fix(f);
        }
        self.output_dir = fix(&self.output_dir);
        for init in &mut self.inits {
            if let Some(rest) = init.strip_prefix("file:") {
                *init = format!("file:{}", fix(Path::new(rest)).display());
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.files.is_empty() {
            return Err(Error::Config("`files` must not be empty".into()));
        }
        if self.budget == 0 {
            return Err(Error::Config("`budget` must be at least 1".into()));
        }
        if self.specs.is_empty() && self.samples == 0 {
            return Err(Error::Config(
                "nothing to run: `specs` is empty and `samples` is 0".into(),
            ));
        }
        if !self.specs.is_empty() && self.inits.is_empty() {
            return Err(Error::Config(
                "`inits` must not be empty when `specs` is set".into(),
            ));
        }
        self.neighborhood_specs()?;
        for i in &self.inits {
            i.parse::<InitMethod>()?;
        }
        self.end_marker_policy()?;
        Ok(())
    }

    pub fn neighborhood_specs(&self) -> Result<Vec<NeighborhoodSpec>> {
        self.specs.iter().map(|s| s.parse()).collect()
    }

    /// Init methods for one input file, `{file}` substituted.
    pub fn init_methods_for(&self, file_name: &str) -> Result<Vec<InitMethod>> {
        self.inits
            .iter()
            .map(|s| s.replace(FILE_PLACEHOLDER, file_name).parse())
            .collect()
    }

    pub fn end_marker_policy(&self) -> Result<EndMarkerPolicy> {
        self.end_marker.parse()
    }

    /// Worker count: the environment override, then the config, then the
    /// machine's available parallelism.
    pub fn effective_parallelism(&self) -> usize {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .or(self.parallelism.filter(|&n| n > 0))
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = ExperimentConfig::parse("files = [\"a.txt\"]\n").unwrap();
        assert_eq!(cfg.inits.len(), 8);
        assert_eq!(cfg.specs.len(), 12);
        assert_eq!(cfg.budget, 10_000_000);
        assert_eq!(cfg.random_starts, 20);
        assert_eq!(cfg.samples, 0);
        assert_eq!(cfg.end_marker_policy().unwrap(), EndMarkerPolicy::Auto);
    }

    #[test]
    fn full_config() {
        let src = r#"
files = ["grammar.lsp"]
inits = ["random", "ascii", "file:fda/{file}.order"]
specs = ["swap:lex", "insert-then-swap:random"]
budget = 1000
samples = 50
master_seed = 7
output_dir = "out"
parallelism = 2
end_marker = "$"
write_traces = true
"#;
        let cfg = ExperimentConfig::parse(src).unwrap();
        assert_eq!(cfg.neighborhood_specs().unwrap().len(), 2);
        let inits = cfg.init_methods_for("grammar.lsp").unwrap();
        assert_eq!(
            inits[2],
            InitMethod::FromFile("fda/grammar.lsp.order".into())
        );
        assert_eq!(ExperimentConfig::parse(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn invalid_configs() {
        for src in [
            "files = []",
            "files = [\"a\"]\nbudget = 0",
            "files = [\"a\"]\nspecs = []",
            "files = [\"a\"]\nspecs = [\"twist:lex\"]",
            "files = [\"a\"]\ninits = [\"alphabetical\"]",
            "files = [\"a\"]\nmystery = 3",
            "files = [\"a\"]\nend_marker = \"two\"",
        ] {
            assert!(
                matches!(
                    ExperimentConfig::parse(src),
                    Err(Error::Config(_) | Error::Parse(_))
                ),
                "{src}"
            );
        }
        // sampling-only is fine
        ExperimentConfig::parse("files = [\"a\"]\nspecs = []\nsamples = 10").unwrap();
    }

    #[test]
    fn relative_paths_follow_config_location() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exp.toml");
        std::fs::write(&path, "files = [\"x.txt\"]\ninits = [\"file:o/{file}\"]\n").unwrap();
        let cfg = ExperimentConfig::load(&path).unwrap();
        assert_eq!(cfg.files[0], dir.path().join("x.txt"));
        assert_eq!(cfg.output_dir, dir.path().join("results"));
        assert_eq!(
            cfg.init_methods_for("x.txt").unwrap()[0],
            InitMethod::FromFile(dir.path().join("o/x.txt"))
        );
    }
}
