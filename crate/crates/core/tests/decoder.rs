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

use coherentqec::decoder::{SYMMETRIC_MAX_QUBITS, Z_ONLY_MAX_QUBITS};
use coherentqec::{DecoderTable, Error, PauliWord, StabilizerCode, Strategy, Syndrome};

const STRATEGIES: [Strategy; 3] = [Strategy::Symmetric, Strategy::ZOnly, Strategy::SymmetryPreserving];

fn codes() -> Vec<StabilizerCode> {
    let mut v: Vec<_> = ["five_qubit", "steane", "shor", "bare_7_1_3", "surface_9_1_3"]
        .iter()
        .map(|n| StabilizerCode::catalog(n).unwrap())
        .collect();
    v.extend((2..=7).map(|n| StabilizerCode::repetition(n).unwrap()));
    v
}

#[test]
fn corrections_reproduce_their_syndrome() {
    for code in codes() {
        for st in STRATEGIES {
            let t = DecoderTable::build(&code, st).unwrap();
            assert_eq!(t.len(), code.num_syndromes());
            for (s, e) in t.corrections().iter().enumerate() {
                assert_eq!(code.syndrome(e), Syndrome(s as u32), "{} {st}", code.name());
                assert!(e.is_hermitian());
            }
            assert!(t.correction(Syndrome(0)).unwrap().is_identity());
        }
    }
}

/// Brute force over all 4^n words.
fn min_weights(code: &StabilizerCode, z_only: bool) -> Vec<Option<u32>> {
    let n = code.n();
    let mut best = vec![None::<u32>; code.num_syndromes()];
    for x in 0u32..(1 << n) {
        if z_only && x != 0 {
            break;
        }
        for z in 0u32..(1 << n) {
            let w = PauliWord::hermitian(n, x, z);
            let s = code.syndrome(&w).index();
            let wt = w.weight();
            if best[s].map_or(true, |b| wt < b) {
                best[s] = Some(wt);
            }
        }
    }
    best
}

#[test]
fn symmetric_corrections_have_minimum_weight() {
    for code in codes().into_iter().filter(|c| c.n() <= 7) {
        let best = min_weights(&code, false);
        for st in [Strategy::Symmetric, Strategy::SymmetryPreserving] {
            let t = DecoderTable::build(&code, st).unwrap();
            for (s, e) in t.corrections().iter().enumerate() {
                assert_eq!(Some(e.weight()), best[s], "{} {st} s={s}", code.name());
            }
        }
    }
}

#[test]
fn z_only_corrections_are_minimal_z_words() {
    for code in codes() {
        let best = min_weights(&code, true);
        let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
        for (s, e) in t.corrections().iter().enumerate() {
            if let Some(b) = best[s] {
                assert_eq!(e.x(), 0, "{} s={s}", code.name());
                assert_eq!(e.weight(), b);
            }
        }
    }
}

#[test]
fn symmetry_preserving_prefers_fewer_y() {
    let code = StabilizerCode::catalog("steane").unwrap();
    let t = DecoderTable::build(&code, Strategy::SymmetryPreserving).unwrap();
    let weight2 = t.corrections().iter().filter(|e| e.weight() == 2).collect::<Vec<_>>();
    let xz = weight2.iter().filter(|e| e.xyz_counts().1 == 0 && e.x() != 0 && e.z() != 0).count();
    assert_eq!(xz, 42);
    let single = t.corrections().iter().filter(|e| e.weight() == 1).count();
    assert_eq!(single, 21);
    assert!(t.corrections().iter().all(|e| e.xyz_counts().1 == 0 || e.weight() == 1));
}

#[test]
fn even_repetition_ties() {
    let code = StabilizerCode::repetition(4).unwrap();
    let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
    let s = code.syndrome(&"ZZII".parse().unwrap());
    let e = t.correction(s).unwrap();
    assert_eq!(e.weight(), 2);
    assert_eq!(e, "IIZZ".parse().unwrap());
}

#[test]
fn strategies_parse() {
    for st in STRATEGIES {
        assert_eq!(st.to_string().parse::<Strategy>().unwrap(), st);
    }
    assert_eq!("z_only".parse::<Strategy>().unwrap(), Strategy::ZOnly);
    assert!("greedy".parse::<Strategy>().is_err());
}

#[test]
fn size_caps() {
    assert!(SYMMETRIC_MAX_QUBITS <= Z_ONLY_MAX_QUBITS);
    let code = StabilizerCode::repetition(20).unwrap();
    assert!(DecoderTable::build(&code, Strategy::ZOnly).is_ok());
    assert!(matches!(
        DecoderTable::build(&code, Strategy::Symmetric),
        Err(Error::TooManyQubits { n: 20, .. })
    ));
    let t = DecoderTable::build(&StabilizerCode::repetition(3).unwrap(), Strategy::ZOnly).unwrap();
    assert!(matches!(t.correction(Syndrome(4)), Err(Error::Syndrome(4))));
}
