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

//! Z-family engines: exact polynomial maps and numeric evaluation.

use num_bigint::BigInt;
use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use super::{czero, LogicalChannel};
use crate::code::{LogicalLabel, StabilizerCode};
use crate::decoder::DecoderTable;
use crate::error::{Error, Result};
use crate::noise::ModelChannel;
use crate::pauli::{PauliWord, Phase};
use crate::poly::{binomial_row, Poly};
use crate::scalar::{Real, Ring};

/// Largest code handled by the pair-enumeration engines.
pub const MODEL_MAX_QUBITS: usize = 16;

/// Exact map `(x, y) -> (x', y')` of the Z-family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyMap {
    pub x: Poly,
    pub y: Poly,
    /// Every coefficient outside the model family vanished identically.
    pub residual_ok: bool,
    /// Nonzero `(l, l', Re, Im)` coefficient polynomials.
    #[serde(skip)]
    pub slots: Vec<(LogicalLabel, LogicalLabel, Poly, Poly)>,
}

impl PolyMap {
    pub fn eval<T: Ring>(&self, x: &T, y: &T) -> (T, T) {
        (self.x.eval(x, y), self.y.eval(x, y))
    }

    /// Fails when the map leaves the model family.
    pub fn require_in_family(&self) -> Result<&Self> {
        if self.residual_ok {
            Ok(self)
        } else {
            Err(Error::LeavesModelFamily(f64::NAN))
        }
    }
}

/// Normal form `(syndrome, label, eta)` of every Z-word.
fn z_word_frames(code: &StabilizerCode, table: &DecoderTable, restrict_to_z: bool) -> Result<Vec<(u32, u32, u32)>> {
    let n = code.n();
    if n > MODEL_MAX_QUBITS {
        return Err(Error::TooManyQubits { what: "Z-family pair enumeration", n, max: MODEL_MAX_QUBITS });
    }
    if table.n() != n || table.len() != code.num_syndromes() {
        return Err(Error::Dimension(table.len(), code.num_syndromes()));
    }
    (0..1u32 << n)
        .into_par_iter()
        .map(|b| {
            let w = PauliWord::z_word(n, b);
            let s = code.syndrome(&w);
            let e = table.correction(s)?;
            if restrict_to_z && e.x() != 0 {
                return Err(Error::Unsupported(format!(
                    "correction {e} for syndrome {} is not Z-type",
                    s.0
                )));
            }
            let (l, _, eta) = code.decompose_normalizer(&e.mul_word(&w))?;
            Ok((s.0, l.0, eta.exponent()))
        })
        .collect()
}

/// Z-words grouped by syndrome, each with its label and phase.
fn classes(frames: &[(u32, u32, u32)], r: usize) -> Vec<Vec<(u32, u32, u32)>> {
    let mut out = vec![Vec::new(); 1 << r];
    for (b, &(s, l, eta)) in frames.iter().enumerate() {
        out[s as usize].push((b as u32, l, eta));
    }
    out.retain(|c| !c.is_empty());
    out
}

/// Exact integer polynomial map of the Z-family under `table`.
pub fn effective_model_symbolic(code: &StabilizerCode, table: &DecoderTable, restrict_to_z: bool) -> Result<PolyMap> {
    let n = code.n();
    let k = code.k();
    let dim = 1usize << (2 * k);
    let frames = z_word_frames(code, table, restrict_to_z)?;
    let groups = classes(&frames, code.r());
    let np = n + 1;
    // hist[((slot * 4 + phase) * np + n11) * np + ypow]
    let hsize = dim * dim * 4 * np * np;
    let hist: Vec<u64> = groups
        .par_iter()
        .map(|g| {
            let mut h = vec![0u64; hsize];
            for &(b, l, eb) in g {
                for &(bp, lp, ebp) in g {
                    let n11 = (b & bp).count_ones() as usize;
                    let n01 = (!b & bp).count_ones() as usize;
                    let n10 = (b & !bp).count_ones() as usize;
                    let phase = (eb + 4 - ebp + n01 as u32 + 3 * n10 as u32) % 4;
                    let slot = l as usize * dim + lp as usize;
                    h[((slot * 4 + phase as usize) * np + n11) * np + n01 + n10] += 1;
                }
            }
            h
        })
        .reduce(
            || vec![0u64; hsize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let rows: Vec<Vec<BigInt>> = (0..=n as u32).map(binomial_row).collect();
    let mut re = vec![Poly::zero(); dim * dim];
    let mut im = vec![Poly::zero(); dim * dim];
    for slot in 0..dim * dim {
        for phase in 0..4 {
            for n11 in 0..np {
                for ypow in 0..np - n11 {
                    let c = hist[((slot * 4 + phase) * np + n11) * np + ypow];
                    if c == 0 {
                        continue;
                    }
                    let n00 = n - n11 - ypow;
                    let mut coeff = BigInt::from(c);
                    if phase >= 2 {
                        coeff = -coeff;
                    }
                    let target = if phase % 2 == 0 { &mut re[slot] } else { &mut im[slot] };
                    target.add_binomial_monomial(&coeff, n00 as u32, n11 as u32, ypow as u32, &rows[n00]);
                }
            }
        }
    }
    let idx = |l: LogicalLabel, lp: LogicalLabel| l.index() * dim + lp.index();
    let mut residual_ok = k == 1;
    let mut slots = Vec::new();
    for l in 0..dim {
        for lp in 0..dim {
            let s = l * dim + lp;
            if re[s].is_zero() && im[s].is_zero() {
                continue;
            }
            let (ll, llp) = (LogicalLabel(l as u32), LogicalLabel(lp as u32));
            let model = |a: LogicalLabel| a == LogicalLabel::I || a == LogicalLabel::Z;
            if !model(ll) || !model(llp) {
                residual_ok = false;
            }
            slots.push((ll, llp, re[s].clone(), im[s].clone()));
        }
    }
    if k == 1 {
        let zz = idx(LogicalLabel::Z, LogicalLabel::Z);
        let zi = idx(LogicalLabel::Z, LogicalLabel::I);
        let iz = idx(LogicalLabel::I, LogicalLabel::Z);
        let ii = idx(LogicalLabel::I, LogicalLabel::I);
        residual_ok &= im[zz].is_zero() && im[ii].is_zero() && re[zi].is_zero() && re[iz].is_zero();
        // y' = Re(i r_ZI) = -Im(r_ZI)
        Ok(PolyMap { x: re[zz].clone(), y: -&im[zi], residual_ok, slots })
    } else {
        Ok(PolyMap { x: Poly::zero(), y: Poly::zero(), residual_ok: false, slots })
    }
}

/// Interleaves the bits of `v` into even positions.
fn spread(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Products of per-qubit coefficients indexed by `2 b_q + b'_q` per qubit.
fn pair_table<T: Real>(cs: &[[[Complex<T>; 2]; 2]]) -> Vec<Complex<T>> {
    let mut t = vec![Complex::new(T::one(), T::zero())];
    for (q, c) in cs.iter().enumerate() {
        let mut next = vec![czero(); t.len() * 4];
        for (i, v) in t.iter().enumerate() {
            for p in 0..4 {
                next[i | (p << (2 * q))] = *v * c[p >> 1][p & 1];
            }
        }
        t = next;
    }
    t
}

/// Numeric channel for per-qubit Z-family noise, with one conditional
/// coefficient matrix per syndrome.
pub fn effective_model_numeric<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    models: &[ModelChannel<T>],
) -> Result<LogicalChannel<T>> {
    let n = code.n();
    if models.len() != n {
        return Err(Error::Dimension(models.len(), n));
    }
    let k = code.k();
    let dim = 1usize << (2 * k);
    let frames = z_word_frames(code, table, false)?;
    let groups = classes(&frames, code.r());
    let h = n / 2;
    let cs: Vec<[[Complex<T>; 2]; 2]> = models.iter().map(ModelChannel::coefficient_matrix).collect();
    let lo = pair_table(&cs[..h]);
    let hi = pair_table(&cs[h..]);
    let lo_mask = (1u64 << (2 * h)) - 1;
    let phases: [Complex<T>; 4] = [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I].map(Phase::to_complex);
    let per_class: Vec<(u32, Vec<Complex<T>>)> = groups
        .par_iter()
        .map(|g| {
            let mut acc = vec![czero(); dim * dim];
            for &(b, l, eb) in g {
                for &(bp, lp, ebp) in g {
                    let idx = (spread(b) << 1) | spread(bp);
                    let c = lo[(idx & lo_mask) as usize] * hi[(idx >> (2 * h)) as usize];
                    acc[l as usize * dim + lp as usize] += c * phases[((eb + 4 - ebp) % 4) as usize];
                }
            }
            (frames[g[0].0 as usize].0, acc)
        })
        .collect();
    let mut conditionals = vec![vec![czero(); dim * dim]; code.num_syndromes()];
    for (s, acc) in per_class {
        conditionals[s as usize] = acc;
    }
    Ok(LogicalChannel::from_conditionals(k, conditionals))
}
