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

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} qubits")]
    Dimension(usize, usize),
    #[error("{what}: {n} qubits exceeds the supported limit of {max}")]
    TooManyQubits { what: &'static str, n: usize, max: usize },
    #[error("invalid Pauli string {0:?}")]
    ParsePauli(String),
    #[error("code description, line {line}: {msg}")]
    ParseCode { line: usize, msg: String },
    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("invalid noise: {0}")]
    InvalidNoise(String),
    #[error("channel is not completely positive and trace preserving: {0}")]
    NotCptp(String),
    #[error("effective channel leaves the model family (residual {0:e})")]
    LeavesModelFamily(f64),
    #[error("syndrome {0} out of range")]
    Syndrome(u64),
    #[error("diamond-norm optimizer did not converge: restart spread {0:e}")]
    NoConvergence(f64),
    #[error("no threshold in probe range {0}")]
    NoThreshold(String),
    #[error("decoder is not symmetric under permutation {0:?}")]
    AsymmetricDecoder(Vec<usize>),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
