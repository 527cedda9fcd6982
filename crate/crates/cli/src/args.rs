// Copyright 2026 The coherentqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Flags and TOML configuration.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "coherentqec", version, about = "Effective logical channels of stabilizer codes")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "COHERENTQEC_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Effective logical channel, its polynomial map or its conditional channels.
    Channel(RunArgs),
    /// Logical-to-physical diamond distance ratio over rotation axes.
    Sweep(RunArgs),
    /// Concatenation thresholds and level-1 pseudothresholds.
    Threshold(RunArgs),
    /// Basin of attraction of the noiseless fixed point over (p, theta).
    Basin(RunArgs),
    /// Permutation automorphisms and syndrome orbits.
    Orbits(RunArgs),
    /// Syndrome to correction lookup table.
    DecoderDump(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Channel(_) => "channel",
            Command::Sweep(_) => "sweep",
            Command::Threshold(_) => "threshold",
            Command::Basin(_) => "basin",
            Command::Orbits(_) => "orbits",
            Command::DecoderDump(_) => "decoder-dump",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Channel(a)
            | Command::Sweep(a)
            | Command::Threshold(a)
            | Command::Basin(a)
            | Command::Orbits(a)
            | Command::DecoderDump(a) => a,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// TOML file with default settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog code name (five_qubit, steane, shor, bare_7_1_3, surface_9_1_3, surface_16_1_4, repetitionN).
    #[arg(long)]
    pub code: Option<String>,
    /// Code file: header `n k d name`, then `S`, `X` and `Z` lines.
    #[arg(long)]
    pub code_file: Option<PathBuf>,
    /// symmetric, z-only or symmetry-preserving.
    #[arg(long)]
    pub decoder: Option<String>,
    /// Z-family noise, e.g. `p=0.01,theta=0.1`.
    #[arg(long, conflicts_with_all = ["unitary", "per_qubit"])]
    pub model: Option<String>,
    /// Unitary rotation angle.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "per_qubit")]
    pub unitary: Option<f64>,
    /// Rotation axis `ax,ay,az` (normalized; default Z).
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    /// TOML file with `noise = [ ... ]`, one block per qubit.
    #[arg(long)]
    pub per_qubit: Option<PathBuf>,
    /// Exact polynomial map instead of a numeric channel.
    #[arg(long)]
    pub symbolic: bool,
    /// Per-syndrome channels.
    #[arg(long)]
    pub conditional: bool,
    /// Axis grid `NU,NV` for sweeps.
    #[arg(long)]
    pub sweep_grid: Option<String>,
    /// coherent or incoherent (default: both).
    #[arg(long)]
    pub family: Option<String>,
    /// Basin grid `NP,NT`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json or csv.
    #[arg(long)]
    pub format: Option<String>,
    /// Seed of the diamond-distance optimizer restarts.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// One noise block of a configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NoiseBlock {
    Model {
        p: f64,
        theta: f64,
    },
    Unitary {
        theta: f64,
        #[serde(default = "z_axis")]
        axis: [f64; 3],
    },
}

fn z_axis() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NoiseConfig {
    Uniform(NoiseBlock),
    PerQubit(Vec<NoiseBlock>),
}

/// Settings shared by every subcommand; the resolved form is written next
/// to every result.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub code: Option<String>,
    pub code_file: Option<PathBuf>,
    pub decoder: Option<String>,
    pub noise: Option<NoiseConfig>,
    pub symbolic: Option<bool>,
    pub conditional: Option<bool>,
    pub sweep_grid: Option<[usize; 2]>,
    pub family: Option<String>,
    pub grid: Option<[usize; 2]>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PerQubitFile {
    noise: Vec<NoiseBlock>,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn parse_pair(flag: &str, text: &str) -> CliResult<[usize; 2]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Validation(format!("--{flag} expects two positive integers `A,B`, got {text:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: usize = parts[0].parse().map_err(|_| bad())?;
    let b: usize = parts[1].parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok([a, b])
}

fn parse_axis(text: &str) -> CliResult<[f64; 3]> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Validation(format!("--axis expects `ax,ay,az`, got {text:?}")))?;
    v.try_into().map_err(|_| CliError::Validation(format!("--axis expects three components, got {text:?}")))
}

/// Parses `p=..,theta=..` (either key may be omitted and defaults to 0).
pub fn parse_model(text: &str) -> CliResult<NoiseBlock> {
    let (mut p, mut theta) = (0.0, 0.0);
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Validation(format!("--model entry {part:?} is not `key=value`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("--model value {v:?} is not a number")))?;
        match k.trim() {
            "p" => p = v,
            "theta" => theta = v,
            other => return Err(CliError::Validation(format!("--model key {other:?} is not p or theta"))),
        }
    }
    Ok(NoiseBlock::Model { p, theta })
}

impl RunConfig {
    /// Reads the optional TOML file and lets flags override it.
    pub fn resolve(args: &RunArgs) -> CliResult<Self> {
        let mut cfg = match &args.config {
            Some(path) => toml::from_str::<RunConfig>(&read(path)?)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?,
            None => RunConfig::default(),
        };
        if args.code.is_some() || args.code_file.is_some() {
            cfg.code = args.code.clone();
            cfg.code_file = args.code_file.clone();
        }
        set(&mut cfg.decoder, args.decoder.clone());
        if let Some(m) = &args.model {
            cfg.noise = Some(NoiseConfig::Uniform(parse_model(m)?));
        }
        if let Some(theta) = args.unitary {
            let axis = args.axis.as_deref().map(parse_axis).transpose()?.unwrap_or_else(z_axis);
            cfg.noise = Some(NoiseConfig::Uniform(NoiseBlock::Unitary { theta, axis }));
        } else if args.axis.is_some() {
            match &mut cfg.noise {
                Some(NoiseConfig::Uniform(NoiseBlock::Unitary { axis, .. })) => {
                    *axis = parse_axis(args.axis.as_deref().unwrap_or_default())?;
                }
                _ => return Err(CliError::Validation("--axis needs --unitary".into())),
            }
        }
        if let Some(path) = &args.per_qubit {
            let file: PerQubitFile =
                toml::from_str(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            cfg.noise = Some(NoiseConfig::PerQubit(file.noise));
        }
        if args.symbolic {
            cfg.symbolic = Some(true);
        }
        if args.conditional {
            cfg.conditional = Some(true);
        }
        set(&mut cfg.sweep_grid, args.sweep_grid.as_deref().map(|t| parse_pair("sweep-grid", t)).transpose()?);
        set(&mut cfg.family, args.family.clone());
        set(&mut cfg.grid, args.grid.as_deref().map(|t| parse_pair("grid", t)).transpose()?);
        set(&mut cfg.out, args.out.clone());
        set(&mut cfg.format, args.format.clone());
        set(&mut cfg.seed, args.seed);
        if cfg.code.is_some() && cfg.code_file.is_some() {
            return Err(CliError::Validation("give either a code name or a code file, not both".into()));
        }
        Ok(cfg)
    }
}

fn set<T>(slot: &mut Option<T>, flag: Option<T>) {
    if flag.is_some() {
        *slot = flag;
    }
}
