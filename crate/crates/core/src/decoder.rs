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

//! Syndrome lookup decoders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::{for_each_word_of_weight, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::{PauliWord, Syndrome};

/// Largest code handled by the weight-ordered enumeration.
pub const SYMMETRIC_MAX_QUBITS: usize = 16;
/// Largest code handled by the Z-word enumeration.
pub const Z_ONLY_MAX_QUBITS: usize = 24;

/// How corrections are chosen for each syndrome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Minimum weight, then lexicographic order.
    Symmetric,
    /// Minimum-weight product of Z operators; symmetric fallback for
    /// syndromes no Z word reaches.
    ZOnly,
    /// Minimum weight, then fewest Y factors, then lexicographic order.
    SymmetryPreserving,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Symmetric => "symmetric",
            Strategy::ZOnly => "z-only",
            Strategy::SymmetryPreserving => "symmetry-preserving",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "symmetric" => Ok(Strategy::Symmetric),
            "z-only" | "zonly" => Ok(Strategy::ZOnly),
            "symmetry-preserving" => Ok(Strategy::SymmetryPreserving),
            _ => Err(Error::Unsupported(format!("decoder strategy {s:?}"))),
        }
    }
}

/// Frozen syndrome -> correction table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderTable {
    code_name: String,
    n: usize,
    r: usize,
    strategy: Strategy,
    corrections: Vec<PauliWord>,
}

type Key = (u32, u32, u64);

fn key(p: &PauliWord, strategy: Strategy) -> Key {
    let aux = match strategy {
        Strategy::SymmetryPreserving => p.xyz_counts().1,
        _ => 0,
    };
    (p.weight(), aux, p.lex_key())
}

impl DecoderTable {
    pub fn build(code: &StabilizerCode, strategy: Strategy) -> Result<Self> {
        let n = code.n();
        let size = code.num_syndromes();
        let mut slots: Vec<Option<(Key, PauliWord)>> = vec![None; size];
        if strategy == Strategy::ZOnly {
            if n > Z_ONLY_MAX_QUBITS {
                return Err(Error::TooManyQubits { what: "z-only decoder", n, max: Z_ONLY_MAX_QUBITS });
            }
            let cols: Vec<u32> =
                (0..n).map(|q| code.syndrome(&PauliWord::z_word(n, 1 << q)).0).collect();
            let mut syn = vec![0u32; 1 << n];
            for b in 1u32..(1 << n) {
                let q = b.trailing_zeros() as usize;
                syn[b as usize] = syn[(b & (b - 1)) as usize] ^ cols[q];
            }
            for (b, &s) in syn.iter().enumerate() {
                let w = PauliWord::z_word(n, b as u32);
                let k = key(&w, strategy);
                let slot = &mut slots[s as usize];
                if slot.map_or(true, |(old, _)| k < old) {
                    *slot = Some((k, w));
                }
            }
        }
        if slots.iter().any(Option::is_none) {
            if n > SYMMETRIC_MAX_QUBITS {
                return Err(Error::TooManyQubits {
                    what: "weight-ordered decoder",
                    n,
                    max: SYMMETRIC_MAX_QUBITS,
                });
            }
            fill_by_weight(code, strategy, &mut slots);
        }
        let corrections = slots
            .into_iter()
            .enumerate()
            .map(|(s, e)| {
                e.map(|(_, w)| w)
                    .ok_or_else(|| Error::Invariant(format!("syndrome {s} unreachable")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DecoderTable {
            code_name: code.name().to_string(),
            n,
            r: code.r(),
            strategy,
            corrections,
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn code_name(&self) -> &str {
        &self.code_name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of syndrome bits.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.corrections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corrections.is_empty()
    }

    pub fn correction(&self, s: Syndrome) -> Result<PauliWord> {
        self.corrections.get(s.index()).copied().ok_or(Error::Syndrome(s.0 as u64))
    }

    pub fn corrections(&self) -> &[PauliWord] {
        &self.corrections
    }

    pub fn weight(&self, s: Syndrome) -> Result<u32> {
        Ok(self.correction(s)?.weight())
    }
}

fn fill_by_weight(code: &StabilizerCode, strategy: Strategy, slots: &mut [Option<(Key, PauliWord)>]) {
    let n = code.n();
    let mut open: Vec<bool> = slots.iter().map(Option::is_none).collect();
    let mut remaining = open.iter().filter(|&&o| o).count();
    for w in 0..=n {
        if remaining == 0 {
            break;
        }
        for_each_word_of_weight(n, w, |p| {
            let s = code.syndrome(&p).index();
            if !open[s] {
                return;
            }
            let k = key(&p, strategy);
            if slots[s].map_or(true, |(old, _)| k < old) {
                slots[s] = Some((k, p));
            }
        });
        for (s, o) in open.iter_mut().enumerate() {
            if *o && slots[s].is_some() {
                *o = false;
                remaining -= 1;
            }
        }
    }
}
