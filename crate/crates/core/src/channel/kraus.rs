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

//! Kraus engines for product unitary noise.

use num_complex::Complex;
use rayon::prelude::*;

use super::{czero, LogicalChannel};
use crate::code::{solve_gf2, CssView, LogicalLabel, StabilizerCode};
use crate::decoder::DecoderTable;
use crate::error::{Error, Result};
use crate::noise::UnitaryNoise;
use crate::pauli::{Pauli, PauliWord, Phase, Syndrome};
use crate::scalar::Real;

/// Largest code handled by full Pauli enumeration.
pub const ENUMERATION_MAX_QUBITS: usize = 12;

/// Largest code handled by the CSS state-vector engine.
pub const CSS_MAX_QUBITS: usize = 24;

const CHUNKS: usize = 64;

fn check_table(code: &StabilizerCode, table: &DecoderTable) -> Result<()> {
    if table.n() != code.n() || table.len() != code.num_syndromes() {
        return Err(Error::Dimension(table.len(), code.num_syndromes()));
    }
    Ok(())
}

fn word_of_index(n: usize, idx: u64) -> PauliWord {
    let (mut x, mut z) = (0u32, 0u32);
    for q in 0..n {
        let (bx, bz) = Pauli::from_index(((idx >> (2 * q)) & 3) as usize).bits();
        x |= (bx as u32) << q;
        z |= (bz as u32) << q;
    }
    PauliWord::hermitian(n, x, z)
}

/// Products of per-qubit amplitudes for every word on a block of qubits.
fn amplitude_table<T: Real>(us: &[UnitaryNoise<T>]) -> Vec<Complex<T>> {
    let mut t = vec![Complex::new(T::one(), T::zero())];
    for (q, u) in us.iter().enumerate() {
        let a = u.amplitudes();
        let mut next = vec![czero(); t.len() * 4];
        for (i, v) in t.iter().enumerate() {
            for (p, ap) in a.iter().enumerate() {
                next[i | (p << (2 * q))] = *v * *ap;
            }
        }
        t = next;
    }
    t
}

/// Precomputed normal forms of all `4^n` Pauli words.
///
/// Entry `idx` packs `(syndrome << (2k + 2)) | (label << 2) | eta`.
#[derive(Clone, Debug)]
pub struct KrausPlan {
    n: usize,
    k: usize,
    r: usize,
    entries: Vec<u32>,
}

impl KrausPlan {
    pub fn new(code: &StabilizerCode, table: &DecoderTable) -> Result<Self> {
        let n = code.n();
        if n > ENUMERATION_MAX_QUBITS {
            return Err(Error::TooManyQubits { what: "Pauli enumeration", n, max: ENUMERATION_MAX_QUBITS });
        }
        check_table(code, table)?;
        let k = code.k();
        let entries = (0..1u64 << (2 * n))
            .into_par_iter()
            .map(|idx| {
                let b = word_of_index(n, idx);
                let s = code.syndrome(&b);
                let e = table.correction(s)?;
                let (l, _, eta) = code.decompose_normalizer(&e.mul_word(&b))?;
                Ok((s.0 << (2 * k + 2)) | (l.0 << 2) | eta.exponent())
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(KrausPlan { n, k, r: code.r(), entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Normal form `(syndrome, label, eta)` of the word with base-4 index `idx`.
    pub fn entry(&self, idx: usize) -> (Syndrome, LogicalLabel, Phase) {
        let e = self.entries[idx];
        let lmask = (1u32 << (2 * self.k)) - 1;
        (Syndrome(e >> (2 * self.k + 2)), LogicalLabel((e >> 2) & lmask), Phase::new(e & 3))
    }

    pub fn evaluate<T: Real>(&self, us: &[UnitaryNoise<T>]) -> Result<LogicalChannel<T>> {
        if us.len() != self.n {
            return Err(Error::Dimension(us.len(), self.n));
        }
        let h = self.n / 2;
        let lo = amplitude_table(&us[..h]);
        let hi = amplitude_table(&us[h..]);
        let lo_mask = (1usize << (2 * h)) - 1;
        let dim = 1usize << (2 * self.k);
        let size = (1usize << self.r) * dim;
        let total = self.entries.len();
        let chunk = total.div_ceil(CHUNKS).max(1);
        let phases: [Complex<T>; 4] = [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I].map(Phase::to_complex);
        let shift = 2 * self.k + 2;
        let partials: Vec<Vec<Complex<T>>> = self
            .entries
            .par_chunks(chunk)
            .enumerate()
            .map(|(c, block)| {
                let mut acc = vec![czero(); size];
                let base = c * chunk;
                for (off, &e) in block.iter().enumerate() {
                    let idx = base + off;
                    let amp = lo[idx & lo_mask] * hi[idx >> (2 * h)];
                    if amp == czero() {
                        continue;
                    }
                    let slot = ((e >> shift) as usize) * dim + ((e >> 2) as usize & (dim - 1));
                    acc[slot] += amp * phases[(e & 3) as usize];
                }
                acc
            })
            .collect();
        let mut kr = vec![czero(); size];
        for p in partials {
            for (a, v) in kr.iter_mut().zip(p) {
                *a += v;
            }
        }
        Ok(LogicalChannel::from_kraus(self.k, kr.chunks(dim).map(<[_]>::to_vec).collect()))
    }
}

/// Kraus channel by enumerating every Pauli word.
pub fn effective_unitary_enumerate<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    us: &[UnitaryNoise<T>],
) -> Result<LogicalChannel<T>> {
    KrausPlan::new(code, table)?.evaluate(us)
}

/// Precomputed data for the CSS state-vector engine.
#[derive(Clone, Debug)]
pub struct CssPlan {
    n: usize,
    view: CssView,
    /// Span of the X checks, indexed by the coefficient vector.
    span: Vec<u32>,
    /// Z-type destabilizer of each X-check bit pattern.
    e_of_u: Vec<u32>,
    /// X-type destabilizer of each Z-check bit pattern.
    d_of_w: Vec<u32>,
    /// Per syndrome: logical label and phase of `E_s D_s^dagger`.
    frames: Vec<(LogicalLabel, Phase)>,
}

fn parity(v: u32) -> bool {
    v.count_ones() % 2 == 1
}

/// Basis `v_i` with `<checks_j, v_i> = delta_ij` and `<logical, v_i> = 0`.
fn dual_basis(checks: &[u32], logical: u32) -> Result<Vec<u32>> {
    let mut rows: Vec<u64> = checks.iter().map(|&c| c as u64).collect();
    rows.push(logical as u64);
    (0..checks.len())
        .map(|i| {
            let rhs: Vec<bool> = (0..rows.len()).map(|j| j == i).collect();
            solve_gf2(&rows, &rhs)
                .map(|v| v as u32)
                .ok_or_else(|| Error::InvalidCode("dependent CSS checks".into()))
        })
        .collect()
}

fn span_of(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; 1 << basis.len()];
    for a in 1..out.len() {
        let i = a.trailing_zeros() as usize;
        out[a] = out[a & (a - 1)] ^ basis[i];
    }
    out
}

impl CssPlan {
    pub fn new(code: &StabilizerCode, table: &DecoderTable) -> Result<Self> {
        let n = code.n();
        if n > CSS_MAX_QUBITS {
            return Err(Error::TooManyQubits { what: "CSS state vector", n, max: CSS_MAX_QUBITS });
        }
        check_table(code, table)?;
        let view = code
            .css_view()
            .ok_or_else(|| Error::Unsupported(format!("{} is not a CSS code", code.name())))?;
        let hx: Vec<u32> = view.x_checks.iter().map(|c| c.1).collect();
        let hz: Vec<u32> = view.z_checks.iter().map(|c| c.1).collect();
        let e_basis = dual_basis(&hx, view.logical_x)?;
        let d_basis = dual_basis(&hz, view.logical_z)?;
        let e_of_u = span_of(&e_basis);
        let d_of_w = span_of(&d_basis);
        let frames = (0..code.num_syndromes() as u32)
            .map(|s| {
                let s = Syndrome(s);
                let (u, w) = split_syndrome(&view, s);
                let ds = destabilizer(n, d_of_w[w], e_of_u[u]);
                let q = table.correction(s)?.mul_word(&ds.adjoint());
                let (l, _, zeta) = code.decompose_normalizer(&q)?;
                Ok((l, zeta))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CssPlan { n, span: span_of(&hx), view, e_of_u, d_of_w, frames })
    }

    pub fn evaluate<T: Real>(&self, us: &[UnitaryNoise<T>]) -> Result<LogicalChannel<T>> {
        let n = self.n;
        if us.len() != n {
            return Err(Error::Dimension(us.len(), n));
        }
        let mx = self.view.x_checks.len();
        let mz = self.view.z_checks.len();
        let xl = self.view.logical_x;
        let norm = T::lit((-(mx as f64) / 2.0).exp2());
        let mats: Vec<[[Complex<T>; 2]; 2]> = us.iter().map(UnitaryNoise::matrix).collect();
        let states: Vec<Vec<Complex<T>>> = (0..2)
            .map(|j| {
                let mut v = vec![czero(); 1 << n];
                for &a in &self.span {
                    v[(a ^ if j == 1 { xl } else { 0 }) as usize] = Complex::new(norm, T::zero());
                }
                apply_product(&mut v, &mats);
                v
            })
            .collect();
        // f[w][i][j][u] = sum_alpha (-1)^{u.alpha} v_j(a(alpha) ^ i xl ^ d(w))
        let blocks: Vec<[[Vec<Complex<T>>; 2]; 2]> = (0..1usize << mz)
            .into_par_iter()
            .map(|w| {
                let d = self.d_of_w[w];
                let make = |i: usize, j: usize| {
                    let off = d ^ if i == 1 { xl } else { 0 };
                    let mut f: Vec<Complex<T>> =
                        self.span.iter().map(|&a| states[j][(a ^ off) as usize]).collect();
                    walsh_hadamard(&mut f);
                    f
                };
                [[make(0, 0), make(0, 1)], [make(1, 0), make(1, 1)]]
            })
            .collect();
        let pauli_mats = logical_matrices::<T>();
        let half = T::lit(0.5);
        let ii = Complex::new(T::zero(), T::one());
        let kraus: Vec<Vec<Complex<T>>> = (0..self.frames.len())
            .map(|s| {
                let (u, w) = split_syndrome(&self.view, Syndrome(s as u32));
                let sign = if parity(self.e_of_u[u] & self.d_of_w[w]) { -norm } else { norm };
                let (lam, zeta) = self.frames[s];
                let z = zeta.to_complex::<T>() * sign;
                let lm = &pauli_mats[lam.index()];
                let f = &blocks[w];
                let mut m = [[czero(); 2]; 2];
                for (a, row) in m.iter_mut().enumerate() {
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell = z * (lm[a][0] * f[0][j][u] + lm[a][1] * f[1][j][u]);
                    }
                }
                vec![
                    (m[0][0] + m[1][1]) * half,
                    (m[0][1] + m[1][0]) * half,
                    ii * (m[0][1] - m[1][0]) * half,
                    (m[0][0] - m[1][1]) * half,
                ]
            })
            .collect();
        Ok(LogicalChannel::from_kraus(1, kraus))
    }
}

/// `X^d Z^e` as a word.
fn destabilizer(n: usize, d: u32, e: u32) -> PauliWord {
    let ph = (4 - (d & e).count_ones() % 4) % 4;
    PauliWord::new(n, d, e, Phase::new(ph)).expect("n checked")
}

/// Splits a syndrome into X-check bits `u` and Z-check bits `w`.
fn split_syndrome(view: &CssView, s: Syndrome) -> (usize, usize) {
    let mut u = 0usize;
    for (k, &(g, _)) in view.x_checks.iter().enumerate() {
        if s.bit(g) {
            u |= 1 << k;
        }
    }
    let mut w = 0usize;
    for (k, &(g, _)) in view.z_checks.iter().enumerate() {
        if s.bit(g) {
            w |= 1 << k;
        }
    }
    (u, w)
}

fn logical_matrices<T: Real>() -> [[[Complex<T>; 2]; 2]; 4] {
    let (o, z) = (T::one(), T::zero());
    let c = |re: T, im: T| Complex::new(re, im);
    [
        [[c(o, z), c(z, z)], [c(z, z), c(o, z)]],
        [[c(z, z), c(o, z)], [c(o, z), c(z, z)]],
        [[c(z, z), c(z, -o)], [c(z, o), c(z, z)]],
        [[c(o, z), c(z, z)], [c(z, z), c(-o, z)]],
    ]
}

/// Applies `U_0 (x) ... (x) U_{n-1}` to a state indexed with qubit `q` at bit `q`.
fn apply_product<T: Real>(v: &mut [Complex<T>], mats: &[[[Complex<T>; 2]; 2]]) {
    for (q, m) in mats.iter().enumerate() {
        let bit = 1usize << q;
        for i in 0..v.len() {
            if i & bit == 0 {
                let (a, b) = (v[i], v[i | bit]);
                v[i] = m[0][0] * a + m[0][1] * b;
                v[i | bit] = m[1][0] * a + m[1][1] * b;
            }
        }
    }
}

fn walsh_hadamard<T: Real>(f: &mut [Complex<T>]) {
    let mut h = 1;
    while h < f.len() {
        for i in (0..f.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (f[j], f[j + h]);
                f[j] = a + b;
                f[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Kraus channel of a CSS code from encoded state vectors.
pub fn effective_unitary_css<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    us: &[UnitaryNoise<T>],
) -> Result<LogicalChannel<T>> {
    CssPlan::new(code, table)?.evaluate(us)
}
