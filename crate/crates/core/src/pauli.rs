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

//! Binary-symplectic Pauli words with exact phase tracking.
//!
//! A word on `n <= 32` qubits stores its X and Z supports as bit masks (bit
//! `q` is qubit `q`, printed left to right) and a power of `i` relative to the
//! Hermitian tensor product `P_b = i^{|bx & bz|} X^bx Z^bz`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 32;

/// Single-qubit Pauli symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Position in the order I < X < Y < Z.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i & 3]
    }

    pub fn symbol(self) -> char {
        ['I', 'X', 'Y', 'Z'][self.index()]
    }
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exponent: u32) -> Self {
        Phase((exponent & 3) as u8)
    }

    pub fn exponent(self) -> u32 {
        self.0 as u32
    }

    pub fn conj(self) -> Self {
        Phase::new(4 - self.exponent())
    }

    pub fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        let (o, z) = (T::one(), T::zero());
        match self.0 {
            0 => Complex::new(o, z),
            1 => Complex::new(z, o),
            2 => Complex::new(-o, z),
            _ => Complex::new(z, -o),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::new(self.exponent() + rhs.exponent())
    }
}

/// Bit-vector syndrome; bit `i` is the commutation parity with generator `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syndrome(pub u32);

impl Syndrome {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bit(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// Bit string with generator 0 first.
    pub fn to_bitstring(self, len: usize) -> String {
        (0..len).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }
}

/// Symplectic form on `n` qubits; the block matrix is never materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub n: usize,
}

impl SymplecticForm {
    /// `|a_x . b_z| - |a_z . b_x|` modulo 4.
    pub fn product(&self, a: &PauliWord, b: &PauliWord) -> Result<u32> {
        check_dims(a, b)?;
        Ok(symplectic_raw(a, b))
    }
}

fn symplectic_raw(a: &PauliWord, b: &PauliWord) -> u32 {
    let p = (a.x & b.z).count_ones();
    let m = (a.z & b.x).count_ones();
    (p + 4 * 32 - m) & 3
}

fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_dims(a: &PauliWord, b: &PauliWord) -> Result<()> {
    if a.n != b.n {
        return Err(Error::Dimension(a.n as usize, b.n as usize));
    }
    Ok(())
}

/// An `n`-qubit Pauli operator with phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliWord {
    n: u8,
    x: u32,
    z: u32,
    phase: Phase,
}

impl PauliWord {
    pub fn new(n: usize, x: u32, z: u32, phase: Phase) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { what: "Pauli word", n, max: MAX_QUBITS });
        }
        if (x | z) & !mask(n) != 0 {
            return Err(Error::ParsePauli(format!("support exceeds {n} qubits")));
        }
        Ok(PauliWord { n: n as u8, x, z, phase })
    }

    /// Hermitian canonical word `P_b`. Bits outside `n` are discarded.
    pub fn hermitian(n: usize, x: u32, z: u32) -> Self {
        debug_assert!(n <= MAX_QUBITS);
        let m = mask(n);
        PauliWord { n: n as u8, x: x & m, z: z & m, phase: Phase::ONE }
    }

    pub fn identity(n: usize) -> Self {
        Self::hermitian(n, 0, 0)
    }

    pub fn z_word(n: usize, bits: u32) -> Self {
        Self::hermitian(n, 0, bits)
    }

    pub fn x_word(n: usize, bits: u32) -> Self {
        Self::hermitian(n, bits, 0)
    }

    /// `p` acting on qubit `q`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let (x, z) = p.bits();
        Self::hermitian(n, (x as u32) << q, (z as u32) << q)
    }

    pub fn from_symbols(symbols: &[Pauli]) -> Result<Self> {
        let n = symbols.len();
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { what: "Pauli word", n, max: MAX_QUBITS });
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (q, p) in symbols.iter().enumerate() {
            let (bx, bz) = p.bits();
            x |= (bx as u32) << q;
            z |= (bz as u32) << q;
        }
        Ok(Self::hermitian(n, x, z))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Same support, phase +1.
    pub fn canonical(self) -> Self {
        self.with_phase(Phase::ONE)
    }

    pub fn scaled(mut self, phase: Phase) -> Self {
        self.phase = self.phase * phase;
        self
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    pub fn same_support(&self, other: &PauliWord) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase == Phase::ONE
    }

    /// Symbol on qubit `q`.
    pub fn symbol(&self, q: usize) -> Pauli {
        Pauli::from_bits((self.x >> q) & 1 == 1, (self.z >> q) & 1 == 1)
    }

    pub fn symbols(&self) -> Vec<Pauli> {
        (0..self.n()).map(|q| self.symbol(q)).collect()
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Counts of X, Y and Z factors.
    pub fn xyz_counts(&self) -> (u32, u32, u32) {
        let y = (self.x & self.z).count_ones();
        (self.x.count_ones() - y, y, self.z.count_ones() - y)
    }

    /// Exact product `self * rhs`. Panics in debug builds on mismatched sizes.
    pub fn mul_word(&self, rhs: &PauliWord) -> PauliWord {
        debug_assert_eq!(self.n, rhs.n);
        let k = self.phase.exponent()
            + (self.x & self.z).count_ones()
            + rhs.phase.exponent()
            + (rhs.x & rhs.z).count_ones()
            + 2 * (self.z & rhs.x).count_ones();
        let x = self.x ^ rhs.x;
        let z = self.z ^ rhs.z;
        let ph = k + 4 * 32 - (x & z).count_ones();
        PauliWord { n: self.n, x, z, phase: Phase::new(ph) }
    }

    pub fn try_mul(&self, rhs: &PauliWord) -> Result<PauliWord> {
        check_dims(self, rhs)?;
        Ok(self.mul_word(rhs))
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) & 1 == 0
    }

    pub fn adjoint(&self) -> PauliWord {
        self.with_phase(self.phase.conj())
    }

    /// Moves the factor on qubit `q` to qubit `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliWord {
        let (mut x, mut z) = (0u32, 0u32);
        for (q, &t) in perm.iter().enumerate() {
            x |= ((self.x >> q) & 1) << t;
            z |= ((self.z >> q) & 1) << t;
        }
        PauliWord { n: self.n, x, z, phase: self.phase }
    }

    /// Base-4 key with I<X<Y<Z and qubit 0 most significant.
    pub fn lex_key(&self) -> u64 {
        let n = self.n();
        (0..n).fold(0u64, |acc, q| (acc << 2) | self.symbol(q).index() as u64)
    }

    /// Dense `2^n x 2^n` matrix, row-major; qubit 0 is the most significant
    /// tensor factor. Intended for small `n` in tests.
    pub fn to_dense<T: Real>(&self) -> Vec<Complex<T>> {
        let n = self.n();
        let dim = 1usize << n;
        let mut m = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        let scale = Phase::new(self.phase.exponent() + (self.x & self.z).count_ones()).to_complex::<T>();
        let xs = reverse_bits(self.x, n) as usize;
        let zs = reverse_bits(self.z, n) as usize;
        for col in 0..dim {
            let row = col ^ xs;
            let sign = if (col & zs).count_ones() & 1 == 1 { -T::one() } else { T::one() };
            m[row * dim + col] = scale * sign;
        }
        m
    }
}

fn reverse_bits(v: u32, n: usize) -> u32 {
    (0..n).fold(0, |acc, q| acc | (((v >> q) & 1) << (n - 1 - q)))
}

impl Mul for PauliWord {
    type Output = PauliWord;
    fn mul(self, rhs: PauliWord) -> PauliWord {
        assert_eq!(self.n, rhs.n, "Pauli words of different length");
        self.mul_word(&rhs)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.phase.exponent() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(sign)?;
        for q in 0..self.n() {
            write!(f, "{}", self.symbol(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('\u{2212}', "-");
        let (phase, body) = if let Some(r) = t.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = t.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = t.strip_prefix('i') {
            (Phase::I, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::ONE, t.as_str())
        };
        if body.is_empty() {
            return Err(Error::ParsePauli(s.to_string()));
        }
        let symbols = body
            .chars()
            .map(|c| match c {
                'I' | '_' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::ParsePauli(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliWord::from_symbols(&symbols)?.with_phase(phase))
    }
}

/// Exact product of two words.
pub fn pauli_mul(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    a.try_mul(b)
}

/// Whether two words commute.
pub fn commutes(a: &PauliWord, b: &PauliWord) -> Result<bool> {
    check_dims(a, b)?;
    Ok(a.commutes_with(b))
}

/// Syndrome of `b` with respect to `generators`.
pub fn syndrome(generators: &[PauliWord], b: &PauliWord) -> Result<Syndrome> {
    let mut s = 0u32;
    for (i, g) in generators.iter().enumerate() {
        check_dims(g, b)?;
        if !g.commutes_with(b) {
            s |= 1 << i;
        }
    }
    Ok(Syndrome(s))
}
