use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hhlab::config::Config;
use hhlab::radialcore::{smooth_bump, RadialFunction, RadialGrid};
use hhlab::{Error, ProblemParams};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    /// Exit 1: unreadable files, malformed input, numerical breakdown.
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }

    /// Exit 2: the requested computation is outside its hypotheses.
    pub fn precondition(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Precondition(reason) => CliError::precondition(reason),
            Error::Infeasible(_) | Error::NonContraction { .. } => CliError::precondition(e.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::usage(format!("I/O: {e}"))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GridFlags {
    pub nodes: Option<usize>,
    pub rmin: Option<f64>,
    pub rmax: Option<f64>,
}

#[derive(Serialize)]
struct OutputEntry {
    file: String,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    tool_version: &'a str,
    seed: u64,
    config: &'a BTreeMap<String, String>,
    flags: &'a BTreeMap<String, String>,
    outputs: Vec<OutputEntry>,
}

/// Everything a subcommand needs: the parsed config, the command-line
/// overrides and the list of files written so far.
pub struct Context {
    pub command: &'static str,
    pub config: Config,
    pub out: PathBuf,
    pub grid_flags: GridFlags,
    pub tgrid: Option<usize>,
    pub seed: u64,
    config_echo: BTreeMap<String, String>,
    flags: BTreeMap<String, String>,
    written: Vec<PathBuf>,
}

impl Context {
    pub fn load(
        command: &'static str,
        path: &Path,
        out: PathBuf,
        grid_flags: GridFlags,
        tgrid: Option<usize>,
        seed: u64,
    ) -> Result<Context, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        let config = Config::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let config_echo = config.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let mut flags = BTreeMap::new();
        if let Some(n) = grid_flags.nodes {
            flags.insert("nodes".into(), n.to_string());
        }
        if let Some(r) = grid_flags.rmin {
            flags.insert("rmin".into(), r.to_string());
        }
        if let Some(r) = grid_flags.rmax {
            flags.insert("rmax".into(), r.to_string());
        }
        if let Some(t) = tgrid {
            flags.insert("tgrid".into(), t.to_string());
        }
        fs::create_dir_all(&out).map_err(|e| CliError::usage(format!("cannot create {}: {e}", out.display())))?;
        Ok(Context { command, config, out, grid_flags, tgrid, seed, config_echo, flags, written: Vec::new() })
    }

    pub fn params(&self) -> Result<ProblemParams, CliError> {
        Ok(ProblemParams::from_config(&self.config)?)
    }

    /// Grid from the flags, falling back to the given defaults.
    pub fn grid(&self, r_min: f64, r_max: f64, nodes: usize) -> Result<Arc<RadialGrid>, CliError> {
        let g = self.grid_flags;
        Ok(RadialGrid::new(g.rmin.unwrap_or(r_min), g.rmax.unwrap_or(r_max), g.nodes.unwrap_or(nodes))?)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.config.f64_or(key, default)?)
    }

    pub fn tgrid_or(&self, default: usize) -> Result<usize, CliError> {
        match self.tgrid.unwrap_or(default) {
            0 => Err(CliError::usage("--tgrid must be positive")),
            n => Ok(n),
        }
    }

    /// Initial data from the keys `data` (`gaussian`, `bump` or `power`),
    /// `amplitude`, `width` and `beta`.
    pub fn data(&self, grid: &Arc<RadialGrid>) -> Result<RadialFunction, CliError> {
        let amp = self.f64_or("amplitude", 1.0)?;
        let width = self.f64_or("width", 1.0)?;
        if !(width > 0.0) {
            return Err(CliError::usage(format!("width must be positive, got {width}")));
        }
        let kind = self.config.str("data").unwrap_or("gaussian");
        let f = match kind {
            "gaussian" => RadialFunction::from_fn(grid.clone(), |r| amp * (-(r / width).powi(2)).exp())?,
            "bump" => RadialFunction::from_fn(grid.clone(), |r| amp * smooth_bump(r / width))?,
            "power" => {
                let beta = self.f64_or("beta", 1.0)?;
                RadialFunction::from_fn(grid.clone(), |r| if r <= width { amp * r.powf(-beta) } else { 0.0 })?
            }
            other => return Err(CliError::usage(format!("unknown data `{other}` (use gaussian, bump or power)"))),
        };
        Ok(f)
    }

    /// Path inside the output directory; the file is recorded for the
    /// manifest once written through [`Context::record`].
    pub fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn record(&mut self, path: PathBuf) {
        self.written.push(path);
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.path(name);
        fs::write(&path, contents).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
        self.record(path);
        Ok(())
    }

    /// Writes `manifest.json` listing every output with its SHA-256.
    pub fn finish(self) -> Result<(), CliError> {
        let mut outputs = Vec::with_capacity(self.written.len());
        for path in &self.written {
            let bytes = fs::read(path)?;
            let name = path.strip_prefix(&self.out).unwrap_or(path).to_string_lossy().into_owned();
            outputs.push(OutputEntry { file: name, sha256: hex::encode(Sha256::digest(&bytes)) });
        }
        let manifest = Manifest {
            command: self.command,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed: self.seed,
            config: &self.config_echo,
            flags: &self.flags,
            outputs,
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(self.out.join("manifest.json"), text + "\n")?;
        Ok(())
    }
}
