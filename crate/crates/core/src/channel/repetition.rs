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

//! Closed forms for repetition codes under Z-family noise.

use num_bigint::BigInt;
use serde::Serialize;

use crate::poly::binomial_row;
use crate::scalar::Ring;

/// Averaged repetition-code map `(x', y')`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepetitionMap<T> {
    pub x: T,
    pub y: T,
}

/// Unnormalized channel after one syndrome:
/// `xbar rho + x Z rho Z + c Z rho + conj(c) rho Z` with `c = zbias - i y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepetitionConditional<T> {
    /// Support of the applied correction.
    pub correction: u32,
    pub xbar: T,
    pub x: T,
    pub y: T,
    pub zbias: T,
}

impl<T: Ring> RepetitionConditional<T> {
    /// Syndrome probability for a logical state with `<Zbar> = z`.
    pub fn probability(&self, z: &T) -> T {
        let two = T::from_int(2);
        self.xbar.clone() + self.x.clone() + two * self.zbias.clone() * z.clone()
    }
}

fn pow<T: Ring>(v: &T, e: usize) -> T {
    (0..e).fold(T::one(), |a, _| a * v.clone())
}

/// Closed-form map of the `n`-qubit repetition code for uniform noise.
pub fn repetition_oracle<T: Ring>(n: usize, x: &T, y: &T) -> RepetitionMap<T> {
    assert!(n >= 1, "repetition code needs a qubit");
    let row = binomial_row(n as u32);
    let c = |v: &BigInt| T::from_bigint(v);
    let om = T::one() - x.clone();
    let mut xp = T::zero();
    for w in n / 2 + 1..=n {
        xp = xp + c(&row[w]) * pow(x, w) * pow(&om, n - w);
    }
    if n % 2 == 0 {
        let t = n / 2;
        let half = c(&(&row[t] / BigInt::from(2)));
        xp = xp + half * pow(x, t) * pow(&om, t);
        RepetitionMap { x: xp, y: T::zero() }
    } else {
        let t = n / 2;
        let central = binomial_row(2 * t as u32)[t].clone();
        RepetitionMap { x: xp, y: c(&central) * pow(y, n) }
    }
}

/// Conditional channel for a correction supported on `correction`, with
/// per-qubit parameters.
pub fn repetition_conditional_nonuniform<T: Ring>(xs: &[T], ys: &[T], correction: u32) -> RepetitionConditional<T> {
    let n = xs.len();
    assert_eq!(ys.len(), n, "parameter lists differ in length");
    let (mut xbar, mut x, mut prod_y) = (T::one(), T::one(), T::one());
    for q in 0..n {
        let om = T::one() - xs[q].clone();
        if (correction >> q) & 1 == 1 {
            xbar = xbar * xs[q].clone();
            x = x * om;
        } else {
            xbar = xbar * om;
            x = x * xs[q].clone();
        }
        prod_y = prod_y * ys[q].clone();
    }
    // r_ZI = i^(3n + 2|E|) prod y
    let w = correction.count_ones() as usize;
    let e = (3 * n + 2 * w) % 4;
    let neg = |v: T| T::zero() - v;
    let (re, imv) = match e {
        0 => (prod_y, T::zero()),
        1 => (T::zero(), prod_y),
        2 => (neg(prod_y), T::zero()),
        _ => (T::zero(), neg(prod_y)),
    };
    // y = Re(i r_ZI) = -Im(r_ZI)
    RepetitionConditional { correction, xbar, x, y: neg(imv), zbias: re }
}

/// Correction of the `n`-qubit repetition code for syndrome `s`, where bit
/// `i` of `s` flags a mismatch between qubits `i` and `i + 1`. Ties go to
/// the word that leaves qubit 0 untouched.
pub fn repetition_correction(n: usize, s: u32) -> u32 {
    let mut b = 0u32;
    for i in 0..n.saturating_sub(1) {
        let bit = ((b >> i) & 1) ^ ((s >> i) & 1);
        b |= bit << (i + 1);
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let comp = b ^ full;
    if comp.count_ones() < b.count_ones() {
        comp
    } else {
        b
    }
}

/// Conditional channels for every syndrome under uniform noise.
pub fn repetition_conditional<T: Ring>(n: usize, x: &T, y: &T) -> Vec<RepetitionConditional<T>> {
    let xs = vec![x.clone(); n];
    let ys = vec![y.clone(); n];
    (0..1u32 << (n - 1))
        .map(|s| repetition_conditional_nonuniform(&xs, &ys, repetition_correction(n, s)))
        .collect()
}
