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

//! Qubit-permutation symmetries of codes and the syndrome orbits they induce.

use std::collections::HashSet;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::effective_unitary;
use crate::code::StabilizerCode;
use crate::decoder::DecoderTable;
use crate::error::{Error, Result};
use crate::noise::{NoiseSpec, UnitaryNoise};
use crate::pauli::{PauliWord, Phase, Syndrome};
use crate::scalar::Real;

pub const AUTOMORPHISM_MAX_QUBITS: usize = 9;

/// How strictly a permutation has to fix the logical operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogicalMatch {
    /// Logical representatives are mapped to themselves.
    Exact,
    /// Logical representatives are mapped to themselves times a stabilizer.
    UpToStabilizer,
}

/// A permutation group on qubits, stored by its elements in lexicographic
/// order. Element `p` sends qubit `q` to `p[q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationGroup {
    pub n: usize,
    pub logical_match: LogicalMatch,
    elements: Vec<Vec<usize>>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&q| a[q]).collect()
}

impl PermutationGroup {
    pub fn trivial(n: usize) -> Self {
        PermutationGroup { n, logical_match: LogicalMatch::Exact, elements: vec![(0..n).collect()] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// A generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.n).collect();
        let mut closure: HashSet<Vec<usize>> = HashSet::from([id]);
        let mut gens = Vec::new();
        for e in &self.elements {
            if closure.contains(e) {
                continue;
            }
            gens.push(e.clone());
            let mut frontier: Vec<Vec<usize>> = closure.iter().cloned().collect();
            while let Some(a) = frontier.pop() {
                for g in &gens {
                    let c = compose(g, &a);
                    if closure.insert(c.clone()) {
                        frontier.push(c);
                    }
                }
            }
        }
        gens
    }
}

fn preserves(code: &StabilizerCode, perm: &[usize], logical_match: LogicalMatch) -> bool {
    let gens_ok = code
        .generators()
        .iter()
        .all(|g| code.stabilizer_phase(&g.permuted(perm)) == Some(Phase::ONE));
    if !gens_ok {
        return false;
    }
    let fixed = |w: &PauliWord| {
        let p = w.permuted(perm);
        match logical_match {
            LogicalMatch::Exact => p == *w,
            LogicalMatch::UpToStabilizer => code.stabilizer_phase(&p.mul_word(w)) == Some(Phase::ONE),
        }
    };
    code.logical_x().iter().chain(code.logical_z()).all(fixed)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All qubit permutations preserving the stabilizer group and the logicals.
pub fn automorphisms(code: &StabilizerCode, logical_match: LogicalMatch) -> Result<PermutationGroup> {
    let n = code.n();
    if n > AUTOMORPHISM_MAX_QUBITS {
        return Err(Error::TooManyQubits { what: "automorphism search", n, max: AUTOMORPHISM_MAX_QUBITS });
    }
    let elements: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut rest: Vec<usize> = (0..n).filter(|&q| q != first).collect();
            let mut found = Vec::new();
            loop {
                let mut perm = Vec::with_capacity(n);
                perm.push(first);
                perm.extend_from_slice(&rest);
                if preserves(code, &perm, logical_match) {
                    found.push(perm);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            found
        })
        .collect();
    Ok(PermutationGroup { n, logical_match, elements })
}

/// Result of an automorphism search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub group: PermutationGroup,
    /// Group with logicals fixed up to stabilizers, when the exact group is trivial.
    pub weak_group: Option<PermutationGroup>,
}

/// Exact automorphism group, plus the weaker one for diagnosis when the exact
/// group is trivial.
pub fn find_automorphisms(code: &StabilizerCode) -> Result<SymmetryReport> {
    let group = automorphisms(code, LogicalMatch::Exact)?;
    let weak_group = if group.is_trivial() { Some(automorphisms(code, LogicalMatch::UpToStabilizer)?) } else { None };
    Ok(SymmetryReport { group, weak_group })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Syndrome,
    pub correction: PauliWord,
    pub members: Vec<Syndrome>,
}

/// Partition of the syndromes into orbits of `group`, after checking that
/// the decoder commutes with every group element.
pub fn syndrome_orbits(code: &StabilizerCode, table: &DecoderTable, group: &PermutationGroup) -> Result<Vec<Orbit>> {
    let size = code.num_syndromes();
    if table.len() != size || group.n != code.n() {
        return Err(Error::Dimension(table.len(), size));
    }
    let mut image = vec![vec![0u32; size]; group.order()];
    for (gi, perm) in group.elements().iter().enumerate() {
        for s in 0..size {
            let e = table.correction(Syndrome(s as u32))?;
            let pe = e.permuted(perm);
            let sp = code.syndrome(&pe);
            if table.correction(sp)? != pe {
                return Err(Error::AsymmetricDecoder(perm.clone()));
            }
            image[gi][s] = sp.0;
        }
    }
    let mut seen = vec![false; size];
    let mut orbits = Vec::new();
    for s in 0..size {
        if seen[s] {
            continue;
        }
        let mut members: Vec<u32> = image.iter().map(|img| img[s]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m as usize] = true;
        }
        let key = |m: &u32| {
            let c = table.correction(Syndrome(*m)).expect("in range");
            (c.weight(), c.lex_key())
        };
        let rep = *members.iter().min_by_key(|m| key(m)).expect("nonempty");
        orbits.push(Orbit {
            representative: Syndrome(rep),
            correction: table.correction(Syndrome(rep))?,
            members: members.into_iter().map(Syndrome).collect(),
        });
    }
    orbits.sort_by_key(|o| (o.correction.weight(), o.correction.lex_key()));
    Ok(orbits)
}

/// Outcome of comparing Kraus operators within orbits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitChannelReport {
    pub orbits: usize,
    /// Largest entrywise Kraus difference inside an orbit.
    pub max_deviation: f64,
    /// Number of distinct conditional channels across orbit representatives.
    pub distinct_channels: usize,
}

fn conditional_coeffs<T: Real>(k: &[Complex<T>]) -> Vec<Complex<T>> {
    k.iter().flat_map(|a| k.iter().map(move |b| *a * b.conj())).collect()
}

/// Checks `K_s = K_s'` within every orbit and counts distinct conditional
/// channels across orbits.
pub fn verify_orbit_channels<T: Real>(
    code: &StabilizerCode,
    table: &DecoderTable,
    group: &PermutationGroup,
    noise: &UnitaryNoise<T>,
    tol: T,
) -> Result<OrbitChannelReport> {
    let orbits = syndrome_orbits(code, table, group)?;
    let ch = effective_unitary(code, table, &NoiseSpec::uniform_unitary(*noise))?;
    let kraus = ch.kraus().ok_or_else(|| Error::Invariant("Kraus list missing".into()))?;
    let mut max_dev = T::zero();
    for o in &orbits {
        let k0 = &kraus[o.representative.index()];
        for m in &o.members {
            let dev = kraus[m.index()].iter().zip(k0).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max);
            if dev > tol {
                return Err(Error::Invariant(format!(
                    "Kraus operators of syndromes {} and {} in one orbit differ by {dev:e}",
                    o.representative.0, m.0
                )));
            }
            max_dev = max_dev.max(dev);
        }
    }
    let mut distinct: Vec<Vec<Complex<T>>> = Vec::new();
    for o in &orbits {
        let c = conditional_coeffs(&kraus[o.representative.index()]);
        let same = |d: &Vec<Complex<T>>| d.iter().zip(&c).all(|(a, b)| (*a - *b).norm() <= tol);
        if !distinct.iter().any(same) {
            distinct.push(c);
        }
    }
    Ok(OrbitChannelReport {
        orbits: orbits.len(),
        max_deviation: max_dev.to_f64().unwrap_or(f64::NAN),
        distinct_channels: distinct.len(),
    })
}
