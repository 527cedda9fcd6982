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

//! Diamond distance, average gate infidelity and model-family fitting.

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use nalgebra::{Complex as NComplex, Matrix4};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{logical_pauli_matrix, LogicalChannel};
use crate::code::LogicalLabel;
use crate::error::{Error, Result};
use crate::noise::ModelChannel;
use crate::scalar::Real;

/// Absolute part of the model-family membership tolerance.
pub const FIT_ABS_TOL: f64 = 1e-13;
/// Relative part of the model-family membership tolerance.
pub const FIT_REL_TOL: f64 = 1e-10;
/// Restart spread above which the optimizer is reported as unreliable.
pub const SPREAD_TOL: f64 = 1e-7;

/// Result of projecting a one-qubit channel onto the model family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelFit<T> {
    pub x: T,
    pub y: T,
    /// Largest coefficient outside the family.
    pub residual: T,
    pub in_family: bool,
}

impl<T: Real> ModelFit<T> {
    pub fn model(&self) -> Result<ModelChannel<T>> {
        if self.in_family {
            Ok(ModelChannel { x: self.x, y: self.y })
        } else {
            Err(Error::LeavesModelFamily(self.residual.to_f64().unwrap_or(f64::NAN)))
        }
    }
}

/// Reads `x` from the `Zbar rho Zbar` coefficient and `y` from the
/// coherences; everything else counts towards the residual.
pub fn fit_model<T: Real>(ch: &LogicalChannel<T>) -> Result<ModelFit<T>> {
    if ch.k() != 1 {
        return Err(Error::Unsupported("model fit needs one logical qubit".into()));
    }
    let (i, z) = (LogicalLabel::I, LogicalLabel::Z);
    let x = ch.r(z, z).re;
    let zi = ch.r(z, i);
    let iz = ch.r(i, z);
    let y = (iz.im - zi.im) * T::lit(0.5);
    let mut residual = ch.r(z, z).im.abs();
    residual = residual.max((ch.r(i, i) - Complex::new(T::one() - x, T::zero())).norm());
    residual = residual.max(zi.re.abs()).max(iz.re.abs());
    residual = residual.max((zi.im + y).abs()).max((iz.im - y).abs());
    for l in 0..4u32 {
        for lp in 0..4u32 {
            let (a, b) = (LogicalLabel(l), LogicalLabel(lp));
            if [a, b].iter().any(|v| *v == LogicalLabel::X || *v == LogicalLabel::Y) {
                residual = residual.max(ch.r(a, b).norm());
            }
        }
    }
    let tol = T::lit(FIT_REL_TOL) * x.abs().max(y.abs()) + T::lit(FIT_ABS_TOL).max(T::epsilon() * T::lit(100.0));
    Ok(ModelFit { x, y, residual, in_family: residual <= tol })
}

/// Average gate infidelity `d (1 - r_00) / (d + 1)`.
pub fn infidelity<T: Real>(ch: &LogicalChannel<T>) -> T {
    let d = T::lit((1u64 << ch.k()) as f64);
    let off: T = (1..ch.dim()).map(|l| ch.r(LogicalLabel(l as u32), LogicalLabel(l as u32)).re).fold(T::zero(), |a, b| a + b);
    d * off / (d + T::one())
}

/// How a diamond distance was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    PurestateOpt,
}

/// Restart statistics of the pure-state maximization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerReport {
    pub starts: usize,
    pub best: f64,
    /// Gap between the best value and the top-quartile value across restarts.
    pub spread: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricReport {
    pub d_diamond: f64,
    pub r_infidelity: f64,
    pub method: Method,
    pub optimizer: Option<OptimizerReport>,
}

/// Settings of the pure-state maximization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerOptions {
    pub starts: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_iters: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions { starts: 24, seed: 0x5eed, tolerance: 1e-11, max_iters: 4000 }
    }
}

/// Diamond distance to the identity of a one-qubit channel: closed form on
/// the model family, pure-state optimization otherwise.
pub fn diamond_distance<T: Real>(ch: &LogicalChannel<T>) -> Result<MetricReport> {
    let fit = fit_model(ch)?;
    let r_infidelity = infidelity(ch).to_f64().unwrap_or(f64::NAN);
    if fit.in_family {
        let d = fit.x.hypot(fit.y).to_f64().unwrap_or(f64::NAN);
        return Ok(MetricReport { d_diamond: d, r_infidelity, method: Method::ClosedForm, optimizer: None });
    }
    diamond_distance_optimized(ch, OptimizerOptions::default())
}

/// `(1/2) || sum_{l,l'} c_{l,l'} (L_l x I) psi psi^dagger (L_l' x I)^dagger ||_1`.
struct Objective {
    coeffs: [[NComplex<f64>; 4]; 4],
    paulis: [Matrix4<NComplex<f64>>; 4],
}

impl Objective {
    fn state(p: &[f64]) -> [NComplex<f64>; 4] {
        let (a, b, c) = (p[0], p[1], p[2]);
        let mags = [a.cos(), a.sin() * b.cos(), a.sin() * b.sin() * c.cos(), a.sin() * b.sin() * c.sin()];
        let ph = [0.0, p[3], p[4], p[5]];
        let mut out = [NComplex::new(0.0, 0.0); 4];
        for i in 0..4 {
            out[i] = NComplex::from_polar(mags[i], ph[i]);
        }
        out
    }

    fn value(&self, p: &[f64]) -> f64 {
        let psi = Self::state(p);
        let v = nalgebra::Vector4::from_row_slice(&psi);
        let w: Vec<nalgebra::Vector4<NComplex<f64>>> = self.paulis.iter().map(|m| m * v).collect();
        let mut out = Matrix4::<NComplex<f64>>::zeros();
        for l in 0..4 {
            for lp in 0..4 {
                let c = self.coeffs[l][lp];
                if c.norm() == 0.0 {
                    continue;
                }
                out += (w[l] * w[lp].adjoint()) * c;
            }
        }
        let h = (out + out.adjoint()) * NComplex::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().map(|e| e.abs()).sum::<f64>() * 0.5
    }
}

impl CostFunction for Objective {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok(-self.value(p))
    }
}

/// Pure-state maximization over two-qubit inputs, whatever the channel.
pub fn diamond_distance_optimized<T: Real>(ch: &LogicalChannel<T>, opts: OptimizerOptions) -> Result<MetricReport> {
    if ch.k() != 1 {
        return Err(Error::Unsupported("diamond distance needs one logical qubit".into()));
    }
    let tol = T::lit(100.0 * T::CP_TOL);
    if ch.trace_preservation_error() > tol || ch.hermiticity_error() > tol || ch.min_eigenvalue() < -tol {
        return Err(Error::NotCptp("diamond distance input is not CPTP".into()));
    }
    let f = |v: Complex<T>| NComplex::new(v.re.to_f64().unwrap(), v.im.to_f64().unwrap());
    let mut coeffs = [[NComplex::new(0.0, 0.0); 4]; 4];
    for (l, row) in coeffs.iter_mut().enumerate() {
        for (lp, c) in row.iter_mut().enumerate() {
            *c = f(ch.r(LogicalLabel(l as u32), LogicalLabel(lp as u32)));
        }
    }
    coeffs[0][0] = NComplex::new(-(1..4).map(|l| coeffs[l][l].re).sum::<f64>(), coeffs[0][0].im);
    let scale = coeffs.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    let r_infidelity = infidelity(ch).to_f64().unwrap_or(f64::NAN);
    if scale == 0.0 {
        return Ok(MetricReport {
            d_diamond: 0.0,
            r_infidelity,
            method: Method::PurestateOpt,
            optimizer: Some(OptimizerReport { starts: 0, best: 0.0, spread: 0.0, converged: true }),
        });
    }
    for c in coeffs.iter_mut().flatten() {
        *c /= scale;
    }
    let paulis = std::array::from_fn(|l| {
        let m = logical_pauli_matrix::<f64>(LogicalLabel(l as u32), 1);
        let mut out = Matrix4::<NComplex<f64>>::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    out[(2 * i + a, 2 * j + a)] = NComplex::new(m[2 * i + j].re, m[2 * i + j].im);
                }
            }
        }
        out
    });
    let obj = Objective { coeffs, paulis };
    let mut values: Vec<f64> = (0..opts.starts)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
            let start: Vec<f64> = (0..6).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            let mut simplex = vec![start.clone()];
            for d in 0..6 {
                let mut v = start.clone();
                v[d] += 0.4;
                simplex.push(v);
            }
            let solver = NelderMead::new(simplex)
                .with_sd_tolerance(opts.tolerance)
                .map_err(|e| Error::Invariant(format!("optimizer: {e}")))?;
            let obj = Objective { coeffs: obj.coeffs, paulis: obj.paulis };
            let res = Executor::new(obj, solver)
                .configure(|s| s.max_iters(opts.max_iters))
                .run()
                .map_err(|e| Error::Invariant(format!("optimizer: {e}")))?;
            Ok(-res.state().get_best_cost())
        })
        .collect::<Result<Vec<_>>>()?;
    values.sort_by(|a, b| b.total_cmp(a));
    let best = values[0];
    let quart = values[(values.len() / 4).min(values.len() - 1)];
    let spread = (best - quart) * scale;
    let report = OptimizerReport { starts: opts.starts, best: best * scale, spread, converged: spread <= SPREAD_TOL };
    Ok(MetricReport { d_diamond: best * scale, r_infidelity, method: Method::PurestateOpt, optimizer: Some(report) })
}
