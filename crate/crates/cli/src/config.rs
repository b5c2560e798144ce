//! Command-line options and the optional `key=value` config file.
//!
//! Keys in the file are the long flag names without the dashes. A value
//! given on the command line always wins over the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use chyp::Tolerances;
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => bail!("unknown format {s:?}, expected csv or json"),
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// key=value file supplying defaults for any of the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub psi: Option<f64>,
    /// `r` of the tetrahedron normal form.
    #[arg(long, global = true)]
    pub r: Option<f64>,
    /// Argument of λ_A in radians.
    #[arg(long = "lambda-a", global = true, allow_hyphen_values = true)]
    pub lambda_a: Option<f64>,
    /// Argument of λ_B in radians.
    #[arg(long = "lambda-b", global = true, allow_hyphen_values = true)]
    pub lambda_b: Option<f64>,

    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Slice heights for `slices`; repeat or separate with commas.
    #[arg(long = "psi-slice", global = true, value_delimiter = ',')]
    pub psi_slice: Vec<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Family for `family`: finite, ideal-triangle, modular1, modular2, bending.
    #[arg(long, global = true)]
    pub kind: Option<String>,

    #[arg(long = "tol-null", global = true)]
    pub tol_null: Option<f64>,
    #[arg(long = "tol-fix", global = true)]
    pub tol_fix: Option<f64>,
    #[arg(long = "tol-form", global = true)]
    pub tol_form: Option<f64>,
    #[arg(long = "tol-det", global = true)]
    pub tol_det: Option<f64>,
    #[arg(long = "tol-f", global = true)]
    pub tol_f: Option<f64>,
    #[arg(long = "tol-rank", global = true)]
    pub tol_rank: Option<f64>,
    #[arg(long = "tol-bal", global = true)]
    pub tol_bal: Option<f64>,
    #[arg(long = "tol-proj", global = true)]
    pub tol_proj: Option<f64>,
    #[arg(long = "tol-angle", global = true)]
    pub tol_angle: Option<f64>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| anyhow::anyhow!("config key {key}: {e}"))
}

fn fill<T: FromStr>(slot: &mut Option<T>, key: &str, value: &str) -> Result<()>
where
    T::Err: std::fmt::Display,
{
    if slot.is_none() {
        *slot = Some(parse(key, value)?);
    }
    Ok(())
}

/// Reads `key=value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), n + 1);
        };
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl Opts {
    /// Fills unset options from the config file, if one was given.
    pub fn merge_config(&mut self) -> Result<()> {
        let Some(path) = self.config.clone() else {
            return Ok(());
        };
        for (k, v) in read_config(&path)? {
            let v = v.as_str();
            match k.as_str() {
                "out" => {
                    if self.out.is_none() {
                        self.out = Some(PathBuf::from(v));
                    }
                }
                "format" => fill(&mut self.format, &k, v)?,
                "seed" => fill(&mut self.seed, &k, v)?,
                "theta" => fill(&mut self.theta, &k, v)?,
                "phi" => fill(&mut self.phi, &k, v)?,
                "psi" => fill(&mut self.psi, &k, v)?,
                "r" => fill(&mut self.r, &k, v)?,
                "lambda-a" => fill(&mut self.lambda_a, &k, v)?,
                "lambda-b" => fill(&mut self.lambda_b, &k, v)?,
                "resolution" => fill(&mut self.resolution, &k, v)?,
                "samples" => fill(&mut self.samples, &k, v)?,
                "kind" => fill(&mut self.kind, &k, v)?,
                "psi-slice" => {
                    if self.psi_slice.is_empty() {
                        self.psi_slice =
                            v.split(',').map(|s| parse(&k, s.trim())).collect::<Result<_>>()?;
                    }
                }
                "tol-null" => fill(&mut self.tol_null, &k, v)?,
                "tol-fix" => fill(&mut self.tol_fix, &k, v)?,
                "tol-form" => fill(&mut self.tol_form, &k, v)?,
                "tol-det" => fill(&mut self.tol_det, &k, v)?,
                "tol-f" => fill(&mut self.tol_f, &k, v)?,
                "tol-rank" => fill(&mut self.tol_rank, &k, v)?,
                "tol-bal" => fill(&mut self.tol_bal, &k, v)?,
                "tol-proj" => fill(&mut self.tol_proj, &k, v)?,
                "tol-angle" => fill(&mut self.tol_angle, &k, v)?,
                _ => bail!("unknown config key {k:?}"),
            }
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Result<Tolerances> {
        let mut t = Tolerances::default();
        for (slot, value, name) in [
            (&mut t.null, self.tol_null, "tol-null"),
            (&mut t.fix, self.tol_fix, "tol-fix"),
            (&mut t.form, self.tol_form, "tol-form"),
            (&mut t.det, self.tol_det, "tol-det"),
            (&mut t.trace_f, self.tol_f, "tol-f"),
            (&mut t.rank, self.tol_rank, "tol-rank"),
            (&mut t.balanced, self.tol_bal, "tol-bal"),
            (&mut t.proj_dist, self.tol_proj, "tol-proj"),
            (&mut t.angle, self.tol_angle, "tol-angle"),
        ] {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    bail!("{name} must be positive, got {v}");
                }
                *slot = v;
            }
        }
        Ok(t)
    }

    pub fn resolution_or(&self, default: usize) -> Result<usize> {
        let n = self.resolution.unwrap_or(default);
        if n < 2 {
            bail!("resolution must be at least 2, got {n}");
        }
        Ok(n)
    }

    pub fn samples_or(&self, default: usize) -> Result<usize> {
        let n = self.samples.unwrap_or(default);
        if n < 2 {
            bail!("samples must be at least 2, got {n}");
        }
        Ok(n)
    }

    pub fn angles(&self) -> Result<(f64, f64, f64)> {
        match (self.theta, self.phi, self.psi) {
            (Some(t), Some(p), Some(s)) => Ok((t, p, s)),
            _ => bail!("--theta, --phi and --psi are required"),
        }
    }
}
