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

//! Single-qubit noise: the Z-rotation plus dephasing family parameterized
//! by `(x, y)`, and unitary rotations about arbitrary axes.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Ring};

/// `rho -> (1-x) rho + x Z rho Z - i y (Z rho - rho Z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelChannel<T> {
    pub x: T,
    pub y: T,
}

impl<T: Ring> ModelChannel<T> {
    /// Checks `0 <= x <= 1` and `y^2 <= x (1 - x)`.
    pub fn new(x: T, y: T) -> Result<Self> {
        let tol = T::tolerance();
        let one = T::one();
        let zero = T::zero();
        if x.clone() < zero.clone() - tol.clone() || x.clone() > one.clone() + tol.clone() {
            return Err(Error::InvalidNoise(format!("x = {x:?} outside [0, 1]")));
        }
        let lhs = y.clone() * y.clone();
        let rhs = x.clone() * (one - x.clone());
        if lhs > rhs + tol {
            return Err(Error::InvalidNoise(format!(
                "(x, y) = ({x:?}, {y:?}) violates y^2 <= x (1 - x)"
            )));
        }
        Ok(ModelChannel { x, y })
    }

    pub fn identity() -> Self {
        ModelChannel { x: T::zero(), y: T::zero() }
    }

    /// Pauli twirl: drops the coherent part.
    pub fn pta(&self) -> Self {
        ModelChannel { x: self.x.clone(), y: T::zero() }
    }

    pub fn is_unitary(&self) -> bool {
        self.y.clone() * self.y.clone() == self.x.clone() * (T::one() - self.x.clone())
    }
}

impl<T: Real> ModelChannel<T> {
    /// `x = p cos^2 t + (1-p) sin^2 t`, `y = (1-2p) cos t sin t`.
    pub fn from_p_theta(p: T, theta: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::InvalidNoise(format!("p = {p} outside [0, 1]")));
        }
        let (s, c) = theta.sin_cos();
        let two = T::lit(2.0);
        let x = p * c * c + (T::one() - p) * s * s;
        let y = (T::one() - two * p) * c * s;
        Ok(ModelChannel { x, y })
    }

    /// Unitary rotation `exp(-i theta Z)`.
    pub fn unitary(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        ModelChannel { x: s * s, y: s * c }
    }

    /// Inverse of [`ModelChannel::from_p_theta`] with `p <= 1/2`.
    pub fn to_p_theta(&self) -> (T, T) {
        let two = T::lit(2.0);
        let a = T::one() - two * self.x;
        let b = two * self.y;
        let p = (T::one() - a.hypot(b)) / two;
        let theta = b.atan2(a) / two;
        (p, theta)
    }

    pub fn diamond(&self) -> T {
        self.x.hypot(self.y)
    }

    pub fn infidelity(&self) -> T {
        T::lit(2.0) * self.x / T::lit(3.0)
    }

    /// Coefficients `n_{PP'}` over `{I, Z}`: `[[1-x, iy], [-iy, x]]`.
    pub fn coefficient_matrix(&self) -> [[Complex<T>; 2]; 2] {
        let z = T::zero();
        [
            [Complex::new(T::one() - self.x, z), Complex::new(z, self.y)],
            [Complex::new(z, -self.y), Complex::new(self.x, z)],
        ]
    }

    pub fn cast<U: Real>(&self) -> ModelChannel<U> {
        ModelChannel { x: U::lit(self.x.to_f64().unwrap()), y: U::lit(self.y.to_f64().unwrap()) }
    }
}

/// `exp(-i theta (ax X + ay Y + az Z))` with a unit axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryNoise<T> {
    pub theta: T,
    pub axis: [T; 3],
}

impl<T: Real> UnitaryNoise<T> {
    /// Normalizes any nonzero axis.
    pub fn new(theta: T, axis: [T; 3]) -> Result<Self> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if !(norm > T::lit(1e-12)) || !theta.is_finite() {
            return Err(Error::InvalidNoise(format!("axis {axis:?} cannot be normalized")));
        }
        Ok(UnitaryNoise { theta, axis: [axis[0] / norm, axis[1] / norm, axis[2] / norm] })
    }

    /// Axis from polar angle `u` and azimuth `v`.
    pub fn from_spherical(theta: T, u: T, v: T) -> Self {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        UnitaryNoise { theta, axis: [su * cv, su * sv, cu] }
    }

    pub fn z_axis(theta: T) -> Self {
        UnitaryNoise { theta, axis: [T::zero(), T::zero(), T::one()] }
    }

    /// Amplitudes over `(I, X, Y, Z)`: `(cos t, -i sin t ax, -i sin t ay, -i sin t az)`.
    pub fn amplitudes(&self) -> [Complex<T>; 4] {
        let (s, c) = self.theta.sin_cos();
        let z = T::zero();
        [
            Complex::new(c, z),
            Complex::new(z, -s * self.axis[0]),
            Complex::new(z, -s * self.axis[1]),
            Complex::new(z, -s * self.axis[2]),
        ]
    }

    /// Rank-one coefficient matrix `u u^dagger` over `(I, X, Y, Z)`.
    pub fn coefficient_matrix(&self) -> [[Complex<T>; 4]; 4] {
        let u = self.amplitudes();
        let mut m = [[Complex::new(T::zero(), T::zero()); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = u[i] * u[j].conj();
            }
        }
        m
    }

    /// 2x2 unitary matrix in the computational basis, row-major.
    pub fn matrix(&self) -> [[Complex<T>; 2]; 2] {
        let u = self.amplitudes();
        let i = Complex::new(T::zero(), T::one());
        [[u[0] + u[3], u[1] - i * u[2]], [u[1] + i * u[2], u[0] - u[3]]]
    }

    pub fn diamond(&self) -> T {
        self.theta.sin().abs()
    }

    /// Whether the axis is Z up to sign.
    pub fn is_z_axis(&self) -> bool {
        self.axis[0] == T::zero() && self.axis[1] == T::zero()
    }
}

/// Per-qubit noise. A single entry is broadcast to every qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "entries", rename_all = "lowercase")]
pub enum NoiseSpec<T> {
    Model(Vec<ModelChannel<T>>),
    Unitary(Vec<UnitaryNoise<T>>),
}

impl<T: Real> NoiseSpec<T> {
    pub fn uniform_model(c: ModelChannel<T>) -> Self {
        NoiseSpec::Model(vec![c])
    }

    pub fn uniform_unitary(u: UnitaryNoise<T>) -> Self {
        NoiseSpec::Unitary(vec![u])
    }

    pub fn len(&self) -> usize {
        match self {
            NoiseSpec::Model(v) => v.len(),
            NoiseSpec::Unitary(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_uniform(&self) -> bool {
        match self {
            NoiseSpec::Model(v) => v.windows(2).all(|w| w[0] == w[1]),
            NoiseSpec::Unitary(v) => v.windows(2).all(|w| w[0] == w[1]),
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        let l = self.len();
        if l == 1 || l == n {
            Ok(())
        } else {
            Err(Error::InvalidNoise(format!("{l} noise entries for {n} qubits")))
        }
    }

    /// Per-qubit unitaries for `n` qubits.
    pub fn unitaries(&self, n: usize) -> Result<Vec<UnitaryNoise<T>>> {
        self.check_len(n)?;
        match self {
            NoiseSpec::Unitary(v) if v.len() == 1 => Ok(vec![v[0]; n]),
            NoiseSpec::Unitary(v) => Ok(v.clone()),
            NoiseSpec::Model(_) => Err(Error::InvalidNoise("expected unitary noise".into())),
        }
    }

    /// Per-qubit model channels for `n` qubits.
    pub fn models(&self, n: usize) -> Result<Vec<ModelChannel<T>>> {
        self.check_len(n)?;
        match self {
            NoiseSpec::Model(v) if v.len() == 1 => Ok(vec![v[0].clone(); n]),
            NoiseSpec::Model(v) => Ok(v.clone()),
            NoiseSpec::Unitary(_) => Err(Error::InvalidNoise("expected model noise".into())),
        }
    }

    /// Largest single-qubit diamond distance.
    pub fn max_diamond(&self) -> T {
        match self {
            NoiseSpec::Model(v) => v.iter().map(|c| c.diamond()).fold(T::zero(), T::max),
            NoiseSpec::Unitary(v) => v.iter().map(|u| u.diamond()).fold(T::zero(), T::max),
        }
    }
}
