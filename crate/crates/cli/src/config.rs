//! Scenario configuration: a TOML file plus flag overrides, flags winning.
//!
//! Complex numbers are always two-field `{ re, im }` records and angles are
//! always radians.

use std::path::{Path, PathBuf};

use beamsplit::{required_cutoff, CaseId, CatSign, CoherentSpec, Mode};
use num_complex::Complex64;
use serde::Deserialize;

use crate::AppError;

pub const DEFAULT_THETA: f64 = std::f64::consts::FRAC_PI_8;

/// Output format for reports and sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Jsonl,
}

impl OutputFormat {
    fn parse(name: &str) -> Result<Self, AppError> {
        match name {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" | "json-lines" => Ok(OutputFormat::Jsonl),
            other => Err(AppError::config(format!(
                "format: unknown value '{other}' (expected table, csv, or jsonl)"
            ))),
        }
    }
}

/// Sweep over the splitter angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.stop - self.start;
        let denominator = (self.steps - 1) as f64;
        (0..self.steps).map(move |i| self.start + span * i as f64 / denominator)
    }

    fn parse(text: &str) -> Result<Self, AppError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(AppError::config(format!(
                "sweep: expected start:stop:steps, got '{text}'"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| AppError::config(format!("sweep: bad start '{}'", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| AppError::config(format!("sweep: bad stop '{}'", parts[1])))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| AppError::config(format!("sweep: bad steps '{}'", parts[2])))?;
        Ok(Sweep { start, stop, steps })
    }
}

/// Input state of a custom circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    Fock { n: usize, m: usize },
    Coherent { alpha: Complex64, mode: Mode },
    Cat { mode: Mode },
}

/// One element of a custom circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementSpec {
    Splitter { theta: f64 },
    Phase { mode: Mode, phi: f64 },
    Mirror,
}

/// Fully resolved scenario, after merging file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub case: Option<CaseId>,
    pub custom_input: Option<InputSpec>,
    pub custom_elements: Vec<ElementSpec>,
    pub theta: f64,
    pub theta2: Option<f64>,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub sign: CatSign,
    pub phi: Option<f64>,
    pub cutoff: Option<usize>,
    pub sweep: Option<Sweep>,
    pub format: OutputFormat,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// TOML file schema
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileComplex {
    re: f64,
    im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSweep {
    start: f64,
    stop: f64,
    steps: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "lowercase")]
enum FileInput {
    Fock { n: usize, m: usize },
    Coherent { re: f64, im: f64, mode: String },
    Cat { mode: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "lowercase")]
enum FileElement {
    Splitter { theta: f64 },
    Phase { mode: String, phi: f64 },
    Mirror,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    case: Option<String>,
    theta: Option<f64>,
    theta2: Option<f64>,
    alpha: Option<FileComplex>,
    beta: Option<FileComplex>,
    sign: Option<String>,
    phi: Option<f64>,
    cutoff: Option<usize>,
    sweep: Option<FileSweep>,
    format: Option<String>,
    seed: Option<u64>,
    input: Option<FileInput>,
    #[serde(default)]
    element: Vec<FileElement>,
}

fn parse_mode(name: &str, field: &str) -> Result<Mode, AppError> {
    match name {
        "a" | "A" => Ok(Mode::A),
        "b" | "B" => Ok(Mode::B),
        other => Err(AppError::config(format!(
            "{field}: unknown mode '{other}' (expected a or b)"
        ))),
    }
}

fn parse_sign(text: &str) -> Result<CatSign, AppError> {
    match text {
        "+" | "+1" | "plus" => Ok(CatSign::Plus),
        "-" | "-1" | "minus" => Ok(CatSign::Minus),
        other => Err(AppError::config(format!(
            "sign: unknown value '{other}' (expected +1 or -1)"
        ))),
    }
}

/// Command-line flags for `run`; every field overrides the config file.
#[derive(Debug, Default, clap::Args)]
pub struct RunFlags {
    /// Scenario file (TOML); flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Case name (see `list-cases`)
    #[arg(long)]
    pub case: Option<String>,
    /// First splitter angle, radians
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Second splitter angle, radians (defaults to --theta)
    #[arg(long, allow_negative_numbers = true)]
    pub theta2: Option<f64>,
    /// Coherent amplitude, real part
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_re: Option<f64>,
    /// Coherent amplitude, imaginary part
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_im: Option<f64>,
    /// Second superposition component, real part
    #[arg(long, allow_negative_numbers = true)]
    pub beta_re: Option<f64>,
    /// Second superposition component, imaginary part
    #[arg(long, allow_negative_numbers = true)]
    pub beta_im: Option<f64>,
    /// Relative sign of the superposition: +1 or -1
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Internal phase shift on mode a between the two splitters, radians
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Photon-number cutoff per mode (chosen automatically when omitted)
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Sweep the angle: start:stop:steps
    #[arg(long)]
    pub sweep: Option<String>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed recorded in the report header
    #[arg(long)]
    pub seed: Option<u64>,
}

impl ScenarioConfig {
    /// Loads the optional file, applies flag overrides, validates.
    pub fn resolve(flags: &RunFlags) -> Result<Self, AppError> {
        let file = match &flags.config {
            Some(path) => load_file(path)?,
            None => FileConfig::default(),
        };

        let case_name = flags.case.clone().or(file.case);
        let case = match &case_name {
            Some(name) => Some(CaseId::parse(name).ok_or_else(|| {
                AppError::config(format!(
                    "case: unknown case '{name}' (see `beamsplit list-cases`)"
                ))
            })?),
            None => None,
        };

        let custom_input = match file.input {
            Some(FileInput::Fock { n, m }) => Some(InputSpec::Fock { n, m }),
            Some(FileInput::Coherent { re, im, mode }) => Some(InputSpec::Coherent {
                alpha: Complex64::new(re, im),
                mode: parse_mode(&mode, "input.mode")?,
            }),
            Some(FileInput::Cat { mode }) => Some(InputSpec::Cat {
                mode: parse_mode(&mode, "input.mode")?,
            }),
            None => None,
        };

        let mut custom_elements = Vec::new();
        for element in file.element {
            custom_elements.push(match element {
                FileElement::Splitter { theta } => ElementSpec::Splitter { theta },
                FileElement::Phase { mode, phi } => ElementSpec::Phase {
                    mode: parse_mode(&mode, "element.mode")?,
                    phi,
                },
                FileElement::Mirror => ElementSpec::Mirror,
            });
        }

        let sign = match flags.sign.clone().or(file.sign) {
            Some(text) => parse_sign(&text)?,
            None => CatSign::Plus,
        };

        let format = match flags.format {
            Some(f) => f,
            None => match file.format {
                Some(name) => OutputFormat::parse(&name)?,
                None => OutputFormat::Table,
            },
        };

        let sweep = match &flags.sweep {
            Some(text) => Some(Sweep::parse(text)?),
            None => file.sweep.map(|s| Sweep {
                start: s.start,
                stop: s.stop,
                steps: s.steps,
            }),
        };

        let file_alpha = file.alpha.map(|c| Complex64::new(c.re, c.im));
        let file_beta = file.beta.map(|c| Complex64::new(c.re, c.im));
        let alpha = Complex64::new(
            flags
                .alpha_re
                .unwrap_or_else(|| file_alpha.map_or(1.0, |a| a.re)),
            flags
                .alpha_im
                .unwrap_or_else(|| file_alpha.map_or(0.0, |a| a.im)),
        );
        let beta = Complex64::new(
            flags
                .beta_re
                .unwrap_or_else(|| file_beta.map_or(-1.0, |b| b.re)),
            flags
                .beta_im
                .unwrap_or_else(|| file_beta.map_or(0.0, |b| b.im)),
        );

        let config = ScenarioConfig {
            case,
            custom_input,
            custom_elements,
            theta: flags.theta.or(file.theta).unwrap_or(DEFAULT_THETA),
            theta2: flags.theta2.or(file.theta2),
            alpha,
            beta,
            sign,
            phi: flags.phi.or(file.phi),
            cutoff: flags.cutoff.or(file.cutoff),
            sweep,
            format,
            seed: flags.seed.or(file.seed),
            out: flags.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), AppError> {
        if self.case.is_none() && self.custom_elements.is_empty() {
            return Err(AppError::config(
                "case: no case selected and no custom circuit elements given".to_string(),
            ));
        }
        if self.case.is_some() && !self.custom_elements.is_empty() {
            return Err(AppError::config(
                "case: choose either a named case or a custom circuit, not both".to_string(),
            ));
        }
        if self.custom_elements.is_empty() && self.custom_input.is_some() {
            return Err(AppError::config(
                "input: a custom input needs custom circuit elements".to_string(),
            ));
        }
        for (name, value) in [
            ("theta", self.theta),
            ("theta2", self.theta2.unwrap_or(0.0)),
            ("phi", self.phi.unwrap_or(0.0)),
        ] {
            if !value.is_finite() {
                return Err(AppError::config(format!("{name}: must be finite")));
            }
        }
        if !self.alpha.re.is_finite()
            || !self.alpha.im.is_finite()
            || !self.beta.re.is_finite()
            || !self.beta.im.is_finite()
        {
            return Err(AppError::config(
                "alpha/beta: components must be finite".to_string(),
            ));
        }
        if let Some(cutoff) = self.cutoff {
            if cutoff < 1 {
                return Err(AppError::config("cutoff: must be at least 1".to_string()));
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.steps < 2 {
                return Err(AppError::config(
                    "sweep.steps: must be at least 2".to_string(),
                ));
            }
            if !sweep.start.is_finite() || !sweep.stop.is_finite() {
                return Err(AppError::config(
                    "sweep: start and stop must be finite".to_string(),
                ));
            }
        }
        if let Some(case) = self.case {
            if self.phi.is_some() && !case.is_mach_zehnder() {
                return Err(AppError::config(
                    "phi: the internal phase shifter needs a two-splitter case".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Cutoff to run at: explicit, or the smallest adequate one for the
    /// scenario's inputs (with headroom for coherent tails).
    pub fn effective_cutoff(&self) -> usize {
        if let Some(cutoff) = self.cutoff {
            return cutoff;
        }
        let coherent_floor =
            |alpha: Complex64| required_cutoff(alpha, CoherentSpec::DEFAULT_TAIL).saturating_add(5);
        let auto = match self.case {
            Some(CaseId::Case2CoherentOneBs) | Some(CaseId::Case7CoherentMz) => {
                coherent_floor(self.alpha)
            }
            Some(CaseId::Case8CatMz) => coherent_floor(self.alpha).max(coherent_floor(self.beta)),
            Some(_) => 8,
            None => match &self.custom_input {
                Some(InputSpec::Coherent { alpha, .. }) => coherent_floor(*alpha),
                Some(InputSpec::Cat { .. }) => {
                    coherent_floor(self.alpha).max(coherent_floor(self.beta))
                }
                _ => 8,
            },
        };
        auto.max(8)
    }
}

fn load_file(path: &Path) -> Result<FileConfig, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::config(format!("config: cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| AppError::config(format!("config: {}: {e}", path.display())))
}
