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

//! Subcommand implementations.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use coherentqec::channel::{CssPlan, KrausPlan};
use coherentqec::concat::{basin, linspace, threshold, Family};
use coherentqec::metrics::{diamond_distance_optimized, fit_model, infidelity, OptimizerOptions};
use coherentqec::symmetry::{find_automorphisms, syndrome_orbits, verify_orbit_channels};
use coherentqec::{
    effective_model_numeric, effective_model_symbolic, effective_unitary, DecoderTable, LogicalChannel, LogicalLabel,
    ModelChannel, NoiseSpec, StabilizerCode, Strategy, Syndrome, UnitaryNoise,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::args::{NoiseBlock, NoiseConfig, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::Output;

pub const DEFAULT_SWEEP_THETA: f64 = 0.01;
pub const DEFAULT_SWEEP_GRID: [usize; 2] = [19, 36];
pub const DEFAULT_BASIN_GRID: [usize; 2] = [201, 201];
const DISTINCT_TOL: f64 = 1e-12;

pub fn load_code(cfg: &RunConfig) -> CliResult<StabilizerCode> {
    match (&cfg.code, &cfg.code_file) {
        (Some(name), None) => Ok(StabilizerCode::catalog(name)?),
        (None, Some(path)) => Ok(StabilizerCode::from_file(path)?),
        _ => Err(CliError::Validation("a code is required (--code or --code-file)".into())),
    }
}

/// Repetition codes only detect Z errors, so they default to z-only.
pub fn strategy(cfg: &RunConfig, code: &StabilizerCode, default: Strategy) -> CliResult<Strategy> {
    match &cfg.decoder {
        None if code.name().starts_with("repetition") => Ok(Strategy::ZOnly),
        None => Ok(default),
        Some(s) => s.parse().map_err(|_| {
            CliError::Validation(format!("--decoder {s:?} is not symmetric, z-only or symmetry-preserving"))
        }),
    }
}

fn to_spec(noise: &NoiseConfig) -> CliResult<NoiseSpec<f64>> {
    let blocks: Vec<NoiseBlock> = match noise {
        NoiseConfig::Uniform(b) => vec![b.clone()],
        NoiseConfig::PerQubit(v) => v.clone(),
    };
    if blocks.is_empty() {
        return Err(CliError::Validation("empty noise list".into()));
    }
    let models: Option<Vec<ModelChannel<f64>>> = blocks
        .iter()
        .map(|b| match b {
            NoiseBlock::Model { p, theta } => Some(ModelChannel::from_p_theta(*p, *theta)),
            NoiseBlock::Unitary { .. } => None,
        })
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().collect::<coherentqec::Result<Vec<_>>>())
        .transpose()?;
    if let Some(m) = models {
        return Ok(NoiseSpec::Model(m));
    }
    let unitaries: Option<Vec<UnitaryNoise<f64>>> = blocks
        .iter()
        .map(|b| match b {
            NoiseBlock::Unitary { theta, axis } => Some(UnitaryNoise::new(*theta, *axis)),
            NoiseBlock::Model { .. } => None,
        })
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().collect::<coherentqec::Result<Vec<_>>>())
        .transpose()?;
    unitaries
        .map(NoiseSpec::Unitary)
        .ok_or_else(|| CliError::Validation("per-qubit noise mixes model and unitary blocks".into()))
}

fn c(v: Complex64) -> Value {
    json!([v.re, v.im])
}

fn labels(k: usize) -> Vec<String> {
    (0..1u32 << (2 * k)).map(|l| LogicalLabel(l).name(k)).collect()
}

fn matrix_json(coeffs: &[Complex64], dim: usize) -> Value {
    Value::Array(coeffs.chunks(dim).map(|row| Value::Array(row.iter().copied().map(c).collect())).collect())
}

fn optimizer_options(cfg: &RunConfig) -> OptimizerOptions {
    let mut o = OptimizerOptions::default();
    if let Some(seed) = cfg.seed {
        o.seed = seed;
    }
    o
}

/// Diamond distance of a one-qubit channel: closed form on the model family,
/// seeded optimization otherwise.
fn diamond(ch: &LogicalChannel<f64>, cfg: &RunConfig) -> CliResult<Value> {
    let fit = fit_model(ch)?;
    if fit.in_family {
        return Ok(json!({
            "d_diamond": fit.x.hypot(fit.y),
            "r_infidelity": infidelity(ch),
            "method": "closed_form",
        }));
    }
    let rep = diamond_distance_optimized(ch, optimizer_options(cfg))?;
    Ok(serde_json::to_value(rep)?)
}

fn channel_json(ch: &LogicalChannel<f64>, cfg: &RunConfig) -> CliResult<Value> {
    let mut v = json!({
        "k": ch.k(),
        "labels": labels(ch.k()),
        "r": matrix_json(ch.coeffs(), ch.dim()),
        "trace": c(ch.trace()),
    });
    if ch.k() == 1 {
        let fit = fit_model(ch)?;
        v["fit"] = serde_json::to_value(fit)?;
        v["metrics"] = diamond(ch, cfg)?;
    }
    Ok(v)
}

fn distinct(vectors: &[&Vec<Complex64>]) -> usize {
    let mut reps: Vec<&Vec<Complex64>> = Vec::new();
    for v in vectors {
        let same = |r: &&Vec<Complex64>| r.iter().zip(v.iter()).all(|(a, b)| (a - b).norm() <= DISTINCT_TOL);
        if !reps.iter().any(same) {
            reps.push(v);
        }
    }
    reps.len()
}

pub fn channel(cfg: &RunConfig) -> CliResult<Output> {
    let code = load_code(cfg)?;
    let table = DecoderTable::build(&code, strategy(cfg, &code, Strategy::Symmetric)?)?;
    if cfg.symbolic == Some(true) {
        let map = effective_model_symbolic(&code, &table, false)?;
        if !map.residual_ok {
            eprintln!("warning: effective channel leaves the model family");
        }
        return Ok(Output::Json(json!({
            "kind": "polymap",
            "code": code.name(),
            "decoder": table.strategy().to_string(),
            "residual_ok": map.residual_ok,
            "x_prime": map.x,
            "y_prime": map.y,
            "x_prime_text": map.x.to_string(),
            "y_prime_text": map.y.to_string(),
        })));
    }
    let noise = cfg.noise.as_ref().ok_or_else(|| CliError::Validation("noise is required (--model, --unitary or --per-qubit)".into()))?;
    let spec = to_spec(noise)?;
    let ch = match &spec {
        NoiseSpec::Unitary(_) => effective_unitary(&code, &table, &spec)?,
        NoiseSpec::Model(_) => effective_model_numeric(&code, &table, &spec.models(code.n())?)?,
    };
    let mut out = json!({
        "kind": "channel",
        "code": code.name(),
        "decoder": table.strategy().to_string(),
        "channel": channel_json(&ch.averaged(), cfg)?,
    });
    if cfg.conditional == Some(true) {
        let k = ch.k();
        let dim = ch.dim();
        let d = 1usize << k;
        let mixed: Vec<Complex64> =
            (0..d * d).map(|i| if i % (d + 1) == 0 { Complex64::new(1.0 / d as f64, 0.0) } else { Complex64::new(0.0, 0.0) }).collect();
        let mut rows = Vec::new();
        for s in 0..code.num_syndromes() {
            let cond = ch.conditional(Syndrome(s as u32))?;
            if cond.coeffs.iter().all(|v| v.norm() == 0.0) {
                continue;
            }
            let mut row = json!({
                "syndrome": Syndrome(s as u32).to_bitstring(code.r()),
                "correction": table.correction(Syndrome(s as u32))?.to_string(),
                "probability_mixed": cond.probability(&mixed),
                "r": matrix_json(&cond.coeffs, dim),
            });
            if let Some(kr) = ch.kraus() {
                row["kraus"] = Value::Array(kr[s].iter().copied().map(c).collect());
            }
            if k == 1 {
                let (xbar, x, y) = cond.model_triple();
                row["model_triple"] = json!({ "xbar": xbar, "x": x, "y": y });
            }
            rows.push(row);
        }
        out["conditional"] = Value::Array(rows);
        if let Some(kr) = ch.kraus() {
            let nonzero: Vec<&Vec<Complex64>> = kr.iter().filter(|v| v.iter().any(|a| a.norm() > 0.0)).collect();
            out["distinct_kraus"] = json!(distinct(&nonzero));
        }
    }
    Ok(Output::Json(out))
}

pub fn sweep(cfg: &RunConfig) -> CliResult<Output> {
    let code = load_code(cfg)?;
    let table = DecoderTable::build(&code, strategy(cfg, &code, Strategy::Symmetric)?)?;
    let theta = match &cfg.noise {
        None => DEFAULT_SWEEP_THETA,
        Some(NoiseConfig::Uniform(NoiseBlock::Unitary { theta, .. })) => *theta,
        Some(_) => return Err(CliError::Validation("sweep takes a uniform --unitary angle".into())),
    };
    let [nu, nv] = cfg.sweep_grid.unwrap_or(DEFAULT_SWEEP_GRID);
    let n = code.n();
    let css = code.css_view().map(|_| CssPlan::new(&code, &table)).transpose()?;
    let plan = if css.is_none() { Some(KrausPlan::new(&code, &table)?) } else { None };
    let d_physical = theta.sin().abs();
    let us = linspace(0.0, PI, nu);
    let mut rows = Vec::with_capacity(nu * nv);
    for &u in &us {
        for j in 0..nv {
            let v = TAU * j as f64 / nv as f64;
            let noise = vec![UnitaryNoise::from_spherical(theta, u, v); n];
            let ch = match (&css, &plan) {
                (Some(p), _) => p.evaluate(&noise)?,
                (None, Some(p)) => p.evaluate(&noise)?,
                _ => unreachable!("one engine is always built"),
            };
            let metrics = diamond(&ch.averaged(), cfg)?;
            let d_logical = metrics["d_diamond"].as_f64().unwrap_or(f64::NAN);
            let ratio = d_logical / d_physical.powi(code.d() as i32);
            rows.push(vec![json!(u), json!(v), json!(d_logical), json!(d_physical), json!(ratio)]);
        }
    }
    Ok(Output::Table { header: vec!["u", "v", "d_logical", "d_physical", "ratio"], rows })
}

fn families(cfg: &RunConfig) -> CliResult<Vec<Family>> {
    match &cfg.family {
        None => Ok(vec![Family::Incoherent, Family::Coherent]),
        Some(f) => Ok(vec![f.parse().map_err(|_| CliError::Validation(format!("--family {f:?} is not coherent or incoherent")))?]),
    }
}

pub fn threshold_cmd(cfg: &RunConfig) -> CliResult<Output> {
    let code = load_code(cfg)?;
    let table = DecoderTable::build(&code, strategy(cfg, &code, Strategy::ZOnly)?)?;
    let map = effective_model_symbolic(&code, &table, false)?;
    let results = families(cfg)?
        .into_iter()
        .map(|f| threshold(&map, f).map_err(CliError::from).and_then(|r| Ok(serde_json::to_value(r)?)))
        .collect::<CliResult<Vec<Value>>>()?;
    Ok(Output::Json(json!({
        "code": code.name(),
        "decoder": table.strategy().to_string(),
        "thresholds": results,
    })))
}

pub fn basin_cmd(cfg: &RunConfig) -> CliResult<Output> {
    let code = load_code(cfg)?;
    let table = DecoderTable::build(&code, strategy(cfg, &code, Strategy::ZOnly)?)?;
    let map = effective_model_symbolic(&code, &table, false)?;
    map.require_in_family()?;
    let [np, nt] = cfg.grid.unwrap_or(DEFAULT_BASIN_GRID);
    let cells = basin(&map, &linspace(0.0, 0.5, np), &linspace(0.0, FRAC_PI_4, nt))?;
    let rows = cells
        .iter()
        .map(|c| vec![json!(c.p), json!(c.theta), json!(c.x0), json!(c.y0), json!(c.verdict.to_string()), json!(c.iters)])
        .collect();
    Ok(Output::Table { header: vec!["p", "theta", "x0", "y0", "verdict", "iters"], rows })
}

pub fn orbits(cfg: &RunConfig) -> CliResult<Output> {
    let code = load_code(cfg)?;
    let table = DecoderTable::build(&code, strategy(cfg, &code, Strategy::Symmetric)?)?;
    let report = find_automorphisms(&code)?;
    let orbits = syndrome_orbits(&code, &table, &report.group)?;
    let r = code.r();
    let orbit_json: Vec<Value> = orbits
        .iter()
        .map(|o| {
            json!({
                "representative": o.representative.to_bitstring(r),
                "correction": o.correction.to_string(),
                "size": o.members.len(),
                "members": o.members.iter().map(|s| s.to_bitstring(r)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = json!({
        "code": code.name(),
        "decoder": table.strategy().to_string(),
        "group_order": report.group.order(),
        "generators": report.group.generators(),
        "weak_group_order": report.weak_group.as_ref().map(|g| g.order()),
        "orbits": orbit_json,
    });
    if let Some(noise) = &cfg.noise {
        match to_spec(noise)? {
            NoiseSpec::Unitary(v) if v.len() == 1 => {
                let rep = verify_orbit_channels(&code, &table, &report.group, &v[0], DISTINCT_TOL)?;
                out["channels"] = serde_json::to_value(rep)?;
            }
            _ => return Err(CliError::Validation("orbit channel check takes a uniform --unitary noise".into())),
        }
    }
    Ok(Output::Json(out))
}

pub fn decoder_dump(cfg: &RunConfig) -> CliResult<Output> {
    let code = load_code(cfg)?;
    let table = DecoderTable::build(&code, strategy(cfg, &code, Strategy::Symmetric)?)?;
    let rows = table
        .corrections()
        .iter()
        .enumerate()
        .map(|(s, e)| vec![json!(Syndrome(s as u32).to_bitstring(code.r())), json!(e.to_string()), json!(e.weight())])
        .collect();
    Ok(Output::Table { header: vec!["syndrome", "correction", "weight"], rows })
}
