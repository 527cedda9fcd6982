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

//! Concatenation as iteration of the one-level map, thresholds and basins.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::PolyMap;
use crate::error::{Error, Result};
use crate::noise::ModelChannel;

pub const MAX_LEVELS: usize = 200;
pub const CONVERGED_BELOW: f64 = 1e-12;
pub const DIVERGED_FLOOR: f64 = 0.999;
pub const DIVERGED_PERSISTENCE: usize = 10;
pub const SCAN_POINTS: usize = 200;
pub const BRACKET_WIDTH: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConvergedToZero,
    Diverged,
    MaxIter,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConvergedToZero => "converged_to_zero",
            Verdict::Diverged => "diverged",
            Verdict::MaxIter => "max_iter",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Level {
    pub x: f64,
    pub y: f64,
    pub d_diamond: f64,
}

impl Level {
    fn new(x: f64, y: f64) -> Self {
        Level { x, y, d_diamond: x.hypot(y) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationTrace {
    pub levels: Vec<Level>,
    pub verdict: Verdict,
}

impl IterationTrace {
    /// Number of map applications performed.
    pub fn iterations(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Applies `map` up to `max_levels` times starting from `(x0, y0)`.
pub fn iterate(map: &PolyMap, x0: f64, y0: f64, max_levels: usize) -> Result<IterationTrace> {
    ModelChannel::new(x0, y0)?;
    if max_levels == 0 {
        return Err(Error::InvalidNoise("at least one level is required".into()));
    }
    let mut levels = vec![Level::new(x0, y0)];
    if levels[0].d_diamond < CONVERGED_BELOW {
        return Ok(IterationTrace { levels, verdict: Verdict::ConvergedToZero });
    }
    let bound = levels[0].d_diamond.max(DIVERGED_FLOOR);
    let mut above = 0;
    let (mut x, mut y) = (x0, y0);
    for _ in 0..max_levels {
        let (nx, ny) = (map.x.eval_f64(x, y), map.y.eval_f64(x, y));
        x = nx;
        y = ny;
        let l = Level::new(x, y);
        levels.push(l);
        if l.d_diamond < CONVERGED_BELOW {
            return Ok(IterationTrace { levels, verdict: Verdict::ConvergedToZero });
        }
        above = if l.d_diamond > bound { above + 1 } else { 0 };
        if above >= DIVERGED_PERSISTENCE {
            return Ok(IterationTrace { levels, verdict: Verdict::Diverged });
        }
    }
    Ok(IterationTrace { levels, verdict: Verdict::MaxIter })
}

/// One-parameter noise family probed for thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Unitary Z rotation by `theta`, no dephasing.
    Coherent,
    /// Dephasing with probability `p`, no rotation.
    Incoherent,
}

impl Family {
    /// Upper end of the probe range.
    pub fn range_end(self) -> f64 {
        match self {
            Family::Coherent => std::f64::consts::FRAC_PI_2,
            Family::Incoherent => 0.5,
        }
    }

    /// Initial `(x, y)` of the family at parameter `t`.
    pub fn point(self, t: f64) -> (f64, f64) {
        match self {
            Family::Coherent => {
                let (s, c) = t.sin_cos();
                (s * s, s * c)
            }
            Family::Incoherent => (t, 0.0),
        }
    }

    /// Physical diamond distance at parameter `t`.
    pub fn d_diamond(self, t: f64) -> f64 {
        match self {
            Family::Coherent => t.sin().abs(),
            Family::Incoherent => t,
        }
    }

    /// Physical average gate infidelity at parameter `t`.
    pub fn infidelity(self, t: f64) -> f64 {
        2.0 * self.point(t).0 / 3.0
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Coherent => "coherent",
            Family::Incoherent => "incoherent",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" => Ok(Family::Coherent),
            "incoherent" => Ok(Family::Incoherent),
            _ => Err(Error::Unsupported(format!("noise family {s:?}"))),
        }
    }
}

/// A parameter value expressed in all three units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdPoint {
    pub parameter: f64,
    pub d_diamond: f64,
    pub r_infidelity: f64,
}

impl ThresholdPoint {
    fn new(family: Family, t: f64) -> Self {
        ThresholdPoint { parameter: t, d_diamond: family.d_diamond(t), r_infidelity: family.infidelity(t) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub family: Family,
    pub threshold: ThresholdPoint,
    pub pseudothreshold: ThresholdPoint,
    pub bracket_width: f64,
    /// Convergence reappears beyond the threshold within the probe range.
    pub reentrant: bool,
}

fn converges(map: &PolyMap, family: Family, t: f64) -> Result<bool> {
    let (x, y) = family.point(t);
    Ok(iterate(map, x, y, MAX_LEVELS)?.verdict == Verdict::ConvergedToZero)
}

fn bisect(mut lo: f64, mut hi: f64, mut below: impl FnMut(f64) -> Result<bool>) -> Result<(f64, f64)> {
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if below(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn scan(family: Family) -> Vec<f64> {
    let end = family.range_end();
    (1..=SCAN_POINTS).map(|j| end * j as f64 / SCAN_POINTS as f64).collect()
}

/// Boundary `(lo, hi)` of the converging interval that contains zero, and
/// whether convergence reappears further along the probe range.
pub fn threshold_only(map: &PolyMap, family: Family) -> Result<((f64, f64), bool)> {
    map.require_in_family()?;
    let ts = scan(family);
    let verdicts = ts.par_iter().map(|&t| converges(map, family, t)).collect::<Result<Vec<bool>>>()?;
    let Some(j) = verdicts.iter().position(|v| !v) else {
        return Err(Error::NoThreshold(format!("every {family} probe up to {} converges", family.range_end())));
    };
    if j == 0 {
        return Err(Error::NoThreshold(format!("no {family} probe converges")));
    }
    let reentrant = verdicts[j..].iter().any(|v| *v);
    let (lo, hi) = bisect(ts[j - 1], ts[j], |t| converges(map, family, t))?;
    if !converges(map, family, lo)? || converges(map, family, hi)? {
        return Err(Error::NoThreshold("bisection bracket failed re-verification".into()));
    }
    Ok(((lo, hi), reentrant))
}

/// First parameter where one level stops helping: `D' - D` turns non-negative.
pub fn pseudothreshold(map: &PolyMap, family: Family) -> Result<(f64, f64)> {
    map.require_in_family()?;
    let gain = |t: f64| {
        let (x, y) = family.point(t);
        map.x.eval_f64(x, y).hypot(map.y.eval_f64(x, y)) - x.hypot(y)
    };
    let ts = scan(family);
    let j = ts
        .iter()
        .position(|&t| gain(t) >= 0.0)
        .ok_or_else(|| Error::NoThreshold(format!("one {family} level always helps")))?;
    if j == 0 {
        return Err(Error::NoThreshold(format!("one {family} level never helps")));
    }
    bisect(ts[j - 1], ts[j], |t| Ok(gain(t) < 0.0))
}

/// Threshold and level-1 pseudothreshold of `map` along `family`.
pub fn threshold(map: &PolyMap, family: Family) -> Result<ThresholdResult> {
    let ((lo, hi), reentrant) = threshold_only(map, family)?;
    let (plo, phi) = pseudothreshold(map, family)?;
    let t = 0.5 * (lo + hi);
    let pt = 0.5 * (plo + phi);
    Ok(ThresholdResult {
        family,
        threshold: ThresholdPoint::new(family, t),
        pseudothreshold: ThresholdPoint::new(family, pt),
        bracket_width: (hi - lo).max(phi - plo),
        reentrant,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasinCell {
    pub p: f64,
    pub theta: f64,
    pub x0: f64,
    pub y0: f64,
    pub verdict: Verdict,
    pub iters: usize,
}

/// Evenly spaced grid of `points` values covering `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}

/// Verdicts over a `p x theta` grid in row-major order (`p` outer).
pub fn basin(map: &PolyMap, p_grid: &[f64], theta_grid: &[f64]) -> Result<Vec<BasinCell>> {
    let cells: Vec<(f64, f64)> = p_grid.iter().flat_map(|&p| theta_grid.iter().map(move |&t| (p, t))).collect();
    cells
        .par_iter()
        .map(|&(p, theta)| {
            let m = ModelChannel::from_p_theta(p, theta)?;
            let tr = iterate(map, m.x, m.y, MAX_LEVELS)?;
            Ok(BasinCell { p, theta, x0: m.x, y0: m.y, verdict: tr.verdict, iters: tr.iterations() })
        })
        .collect()
}
