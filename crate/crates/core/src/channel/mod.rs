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

//! Effective logical channels.
//!
//! A channel on `k` logical qubits is stored through its coefficient matrix
//! `r_{l,l'}` over logical Pauli labels, `rho -> sum r_{l,l'} L_l rho L_l'^dagger`.

mod kraus;
mod model;
mod repetition;

use num_complex::Complex;
use serde::Serialize;

use crate::code::{LogicalLabel, StabilizerCode};
use crate::decoder::DecoderTable;
use crate::error::{Error, Result};
use crate::noise::NoiseSpec;
use crate::pauli::{Pauli, PauliWord, Syndrome};
use crate::scalar::Real;

pub use kraus::{
    effective_unitary_css, effective_unitary_enumerate, CssPlan, KrausPlan, CSS_MAX_QUBITS, ENUMERATION_MAX_QUBITS,
};
pub use model::{effective_model_numeric, effective_model_symbolic, PolyMap, MODEL_MAX_QUBITS};
pub use repetition::{
    repetition_conditional, repetition_conditional_nonuniform, repetition_correction, repetition_oracle,
    RepetitionConditional,
    RepetitionMap,
};

pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Dense `2^k x 2^k` matrix of the logical Pauli `l`, row-major.
pub fn logical_pauli_matrix<T: Real>(l: LogicalLabel, k: usize) -> Vec<Complex<T>> {
    let symbols: Vec<Pauli> = (0..k).map(|m| l.pauli(m, k)).collect();
    PauliWord::from_symbols(&symbols).expect("k <= 32").to_dense()
}

pub(crate) fn matmul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], d: usize) -> Vec<Complex<T>> {
    let mut c = vec![czero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == czero() {
                continue;
            }
            for j in 0..d {
                c[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    c
}

pub(crate) fn adjoint<T: Real>(a: &[Complex<T>], d: usize) -> Vec<Complex<T>> {
    let mut c = vec![czero(); d * d];
    for i in 0..d {
        for j in 0..d {
            c[j * d + i] = a[i * d + j].conj();
        }
    }
    c
}

/// Applies `sum r_{l,l'} L_l rho L_l'^dagger` for a `dim x dim` coefficient
/// matrix on `k` logical qubits.
fn apply_coeffs<T: Real>(coeffs: &[Complex<T>], k: usize, rho: &[Complex<T>]) -> Vec<Complex<T>> {
    let dim = 1usize << (2 * k);
    let d = 1usize << k;
    let mats: Vec<Vec<Complex<T>>> =
        (0..dim).map(|l| logical_pauli_matrix(LogicalLabel(l as u32), k)).collect();
    let left: Vec<Vec<Complex<T>>> = mats.iter().map(|m| matmul(m, rho, d)).collect();
    let mut out = vec![czero(); d * d];
    for l in 0..dim {
        for lp in 0..dim {
            let c = coeffs[l * dim + lp];
            if c == czero() {
                continue;
            }
            let t = matmul(&left[l], &mats[lp], d);
            for (o, v) in out.iter_mut().zip(t) {
                *o += c * v;
            }
        }
    }
    out
}

/// Averaged effective channel, optionally with one Kraus operator per
/// syndrome (unitary noise) or one conditional coefficient matrix per
/// syndrome (mixed noise).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogicalChannel<T> {
    k: usize,
    coeffs: Vec<Complex<T>>,
    kraus: Option<Vec<Vec<Complex<T>>>>,
    conditionals: Option<Vec<Vec<Complex<T>>>>,
}

impl<T: Real> LogicalChannel<T> {
    pub fn identity(k: usize) -> Self {
        let dim = 1usize << (2 * k);
        let mut coeffs = vec![czero(); dim * dim];
        coeffs[0] = Complex::new(T::one(), T::zero());
        LogicalChannel { k, coeffs, kraus: None, conditionals: None }
    }

    /// Channel from a `4^k x 4^k` row-major coefficient matrix.
    pub fn from_coeffs(k: usize, coeffs: Vec<Complex<T>>) -> Result<Self> {
        let dim = 1usize << (2 * k);
        if coeffs.len() != dim * dim {
            return Err(Error::Dimension(coeffs.len(), dim * dim));
        }
        Ok(LogicalChannel { k, coeffs, kraus: None, conditionals: None })
    }

    /// Channel `sum_s K_s rho K_s^dagger` from per-syndrome coefficient vectors.
    pub fn from_kraus(k: usize, kraus: Vec<Vec<Complex<T>>>) -> Self {
        let dim = 1usize << (2 * k);
        let mut coeffs = vec![czero(); dim * dim];
        for ks in &kraus {
            for l in 0..dim {
                if ks[l] == czero() {
                    continue;
                }
                for lp in 0..dim {
                    coeffs[l * dim + lp] += ks[l] * ks[lp].conj();
                }
            }
        }
        LogicalChannel { k, coeffs, kraus: Some(kraus), conditionals: None }
    }

    /// Channel from per-syndrome conditional coefficient matrices.
    pub fn from_conditionals(k: usize, conditionals: Vec<Vec<Complex<T>>>) -> Self {
        let dim = 1usize << (2 * k);
        let mut coeffs = vec![czero(); dim * dim];
        for c in &conditionals {
            for (o, v) in coeffs.iter_mut().zip(c) {
                *o += *v;
            }
        }
        LogicalChannel { k, coeffs, kraus: None, conditionals: Some(conditionals) }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of logical Pauli labels, `4^k`.
    pub fn dim(&self) -> usize {
        1 << (2 * self.k)
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn r(&self, l: LogicalLabel, lp: LogicalLabel) -> Complex<T> {
        self.coeffs[l.index() * self.dim() + lp.index()]
    }

    pub fn kraus(&self) -> Option<&[Vec<Complex<T>>]> {
        self.kraus.as_deref()
    }

    pub fn num_syndromes(&self) -> Option<usize> {
        self.kraus.as_ref().or(self.conditionals.as_ref()).map(Vec::len)
    }

    /// Conditional channel for syndrome `s`, when per-syndrome data exists.
    pub fn conditional(&self, s: Syndrome) -> Result<ConditionalChannel<T>> {
        let dim = self.dim();
        let coeffs = if let Some(kr) = &self.kraus {
            let ks = kr.get(s.index()).ok_or(Error::Syndrome(s.0 as u64))?;
            let mut c = vec![czero(); dim * dim];
            for l in 0..dim {
                for lp in 0..dim {
                    c[l * dim + lp] = ks[l] * ks[lp].conj();
                }
            }
            c
        } else if let Some(cs) = &self.conditionals {
            cs.get(s.index()).ok_or(Error::Syndrome(s.0 as u64))?.clone()
        } else {
            return Err(Error::Unsupported("channel carries no per-syndrome data".into()));
        };
        Ok(ConditionalChannel { syndrome: s, k: self.k, coeffs })
    }

    /// Drops the per-syndrome data.
    pub fn averaged(&self) -> Self {
        LogicalChannel { k: self.k, coeffs: self.coeffs.clone(), kraus: None, conditionals: None }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim()).map(|l| self.coeffs[l * self.dim() + l]).fold(czero(), |a, b| a + b)
    }

    /// Largest `|r_{l,l'} - conj(r_{l',l})|`.
    pub fn hermiticity_error(&self) -> T {
        let d = self.dim();
        let mut e = T::zero();
        for i in 0..d {
            for j in 0..d {
                e = e.max((self.coeffs[i * d + j] - self.coeffs[j * d + i].conj()).norm());
            }
        }
        e
    }

    /// Largest entry of `sum r_{l,l'} L_l'^dagger L_l - I`.
    pub fn trace_preservation_error(&self) -> T {
        let (dim, d) = (self.dim(), 1usize << self.k);
        let mats: Vec<Vec<Complex<T>>> =
            (0..dim).map(|l| logical_pauli_matrix(LogicalLabel(l as u32), self.k)).collect();
        let mut acc = vec![czero(); d * d];
        for l in 0..dim {
            for lp in 0..dim {
                let c = self.coeffs[l * dim + lp];
                if c == czero() {
                    continue;
                }
                let m = matmul(&adjoint(&mats[lp], d), &mats[l], d);
                for (a, v) in acc.iter_mut().zip(m) {
                    *a += c * v;
                }
            }
        }
        for i in 0..d {
            acc[i * d + i] -= Complex::new(T::one(), T::zero());
        }
        acc.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// Smallest eigenvalue of the (Hermitian part of the) coefficient matrix.
    pub fn min_eigenvalue(&self) -> T {
        let d = self.dim();
        let m = nalgebra::DMatrix::from_fn(d, d, |i, j| {
            let a = self.coeffs[i * d + j];
            let b = self.coeffs[j * d + i].conj();
            let h = (a + b) * T::lit(0.5);
            nalgebra::Complex::new(h.re.to_f64().unwrap(), h.im.to_f64().unwrap())
        });
        let ev = m.symmetric_eigenvalues();
        T::lit(ev.iter().cloned().fold(f64::INFINITY, f64::min))
    }

    /// Checks Hermiticity, trace preservation and positivity within `tol`.
    pub fn check_cptp(&self, tol: T) -> Result<()> {
        let h = self.hermiticity_error();
        if h > tol {
            return Err(Error::NotCptp(format!("coefficient matrix not Hermitian ({h:e})")));
        }
        let t = self.trace_preservation_error();
        if t > tol {
            return Err(Error::NotCptp(format!("not trace preserving ({t:e})")));
        }
        let e = self.min_eigenvalue();
        if e < -tol {
            return Err(Error::NotCptp(format!("negative eigenvalue {e:e}")));
        }
        Ok(())
    }

    /// Output state for a `2^k x 2^k` input density matrix.
    pub fn apply(&self, rho: &[Complex<T>]) -> Vec<Complex<T>> {
        apply_coeffs(&self.coeffs, self.k, rho)
    }

    pub fn cast<U: Real>(&self) -> LogicalChannel<U> {
        let c = |v: &Complex<T>| Complex::new(U::lit(v.re.to_f64().unwrap()), U::lit(v.im.to_f64().unwrap()));
        let cv = |v: &Vec<Complex<T>>| v.iter().map(c).collect::<Vec<_>>();
        LogicalChannel {
            k: self.k,
            coeffs: cv(&self.coeffs),
            kraus: self.kraus.as_ref().map(|k| k.iter().map(cv).collect()),
            conditionals: self.conditionals.as_ref().map(|k| k.iter().map(cv).collect()),
        }
    }
}

/// Unnormalized channel given one syndrome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionalChannel<T> {
    pub syndrome: Syndrome,
    pub k: usize,
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> ConditionalChannel<T> {
    fn dim(&self) -> usize {
        1 << (2 * self.k)
    }

    pub fn r(&self, l: LogicalLabel, lp: LogicalLabel) -> Complex<T> {
        self.coeffs[l.index() * self.dim() + lp.index()]
    }

    /// Syndrome probability for a logical input state.
    pub fn probability(&self, rho: &[Complex<T>]) -> T {
        let out = apply_coeffs(&self.coeffs, self.k, rho);
        let d = 1usize << self.k;
        (0..d).map(|i| out[i * d + i].re).fold(T::zero(), |a, b| a + b)
    }

    /// `(xbar, x, y)` with `xbar = r_II`, `x = r_ZZ`, `y = Re(i r_ZI)`
    /// for one logical qubit.
    pub fn model_triple(&self) -> (T, T, T) {
        let i = Complex::new(T::zero(), T::one());
        (
            self.r(LogicalLabel::I, LogicalLabel::I).re,
            self.r(LogicalLabel::Z, LogicalLabel::Z).re,
            (i * self.r(LogicalLabel::Z, LogicalLabel::I)).re,
        )
    }

    /// Output state for a logical input.
    pub fn apply(&self, rho: &[Complex<T>]) -> Vec<Complex<T>> {
        apply_coeffs(&self.coeffs, self.k, rho)
    }

    /// Same channel scaled to unit trace on `rho`.
    pub fn normalized(&self, rho: &[Complex<T>]) -> LogicalChannel<T> {
        let p = self.probability(rho);
        LogicalChannel {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| *c / p).collect(),
            kraus: None,
            conditionals: None,
        }
    }
}

/// Effective channel for any supported noise: unitary noise goes through
/// the Kraus engines, model noise through the Z-family engine.
pub fn effective_channel<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    spec: &NoiseSpec<T>,
) -> Result<LogicalChannel<T>> {
    match spec {
        NoiseSpec::Unitary(_) => effective_unitary(code, table, spec),
        NoiseSpec::Model(_) => effective_model_numeric(code, table, &spec.models(code.n())?),
    }
}

/// Kraus construction for unitary noise. CSS codes use the state-vector
/// engine; other codes enumerate all `4^n` Pauli words.
pub fn effective_unitary<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    spec: &NoiseSpec<T>,
) -> Result<LogicalChannel<T>> {
    let us = spec.unitaries(code.n())?;
    if code.css_view().is_some() {
        effective_unitary_css(code, table, &us)
    } else {
        effective_unitary_enumerate(code, table, &us)
    }
}

/// Conditional channel of syndrome `s` and its probability on `rho`.
pub fn conditional<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    spec: &NoiseSpec<T>,
    s: Syndrome,
    rho: &[Complex<T>],
) -> Result<(ConditionalChannel<T>, T)> {
    if s.index() >= code.num_syndromes() {
        return Err(Error::Syndrome(s.0 as u64));
    }
    let ch = effective_channel(code, table, spec)?;
    let c = ch.conditional(s)?;
    let p = c.probability(rho);
    Ok((c, p))
}

/// Density matrix `|psi><psi|`.
pub fn pure_state<T: Real>(psi: &[Complex<T>]) -> Vec<Complex<T>> {
    let d = psi.len();
    let mut m = vec![czero(); d * d];
    for i in 0..d {
        for j in 0..d {
            m[i * d + j] = psi[i] * psi[j].conj();
        }
    }
    m
}
