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

//! Exact effective logical channels of stabilizer codes under coherent
//! (unitary) and dephasing noise.
//!
//! The pipeline is: a [`StabilizerCode`] with a symplectic frame, a
//! [`DecoderTable`] mapping syndromes to corrections, a [`NoiseSpec`] of
//! per-qubit noise, and an engine in [`channel`] producing a
//! [`LogicalChannel`] or an exact [`PolyMap`]. [`metrics`], [`concat`] and
//! [`symmetry`] analyse the results.
//!
//! ```
//! use coherentqec::{effective_model_symbolic, DecoderTable, StabilizerCode, Strategy};
//!
//! let code = StabilizerCode::catalog("repetition3").unwrap();
//! let table = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
//! let map = effective_model_symbolic(&code, &table, true).unwrap();
//! assert_eq!(map.x.to_string(), "3 x^2 - 2 x^3");
//! assert_eq!(map.y.to_string(), "2 y^3");
//! ```

pub mod channel;
pub mod code;
pub mod concat;
pub mod decoder;
pub mod error;
pub mod metrics;
pub mod noise;
pub mod pauli;
pub mod poly;
pub mod scalar;
pub mod symmetry;

pub use channel::{
    conditional, effective_channel, effective_model_numeric, effective_model_symbolic, effective_unitary,
    repetition_oracle, ConditionalChannel, LogicalChannel, PolyMap,
};
pub use code::{LogicalLabel, NormalForm, StabilizerCode};
pub use concat::{basin, iterate, threshold, Family, IterationTrace, ThresholdResult, Verdict};
pub use decoder::{DecoderTable, Strategy};
pub use error::{Error, Result};
pub use metrics::{diamond_distance, fit_model, infidelity, MetricReport};
pub use noise::{ModelChannel, NoiseSpec, UnitaryNoise};
pub use pauli::{Pauli, PauliWord, Phase, Syndrome};
pub use poly::Poly;
pub use scalar::{Real, Ring};
pub use symmetry::{find_automorphisms, syndrome_orbits, verify_orbit_channels, PermutationGroup};

pub type Complex64 = num_complex::Complex<f64>;
pub type LogicalChannel64 = LogicalChannel<f64>;
pub type LogicalChannel32 = LogicalChannel<f32>;
pub type ModelChannel64 = ModelChannel<f64>;
pub type ModelChannel32 = ModelChannel<f32>;
/// Exact rational model channel, used with the polynomial maps.
pub type ModelChannelQ = ModelChannel<num_rational::BigRational>;
pub type UnitaryNoise64 = UnitaryNoise<f64>;
pub type NoiseSpec64 = NoiseSpec<f64>;
