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

//! Stabilizer codes, the built-in catalog and the normal form
//! `P_b = eta * E_s * L_l * S_t`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decoder::DecoderTable;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliWord, Phase, Syndrome};

/// Label of a logical Pauli: one base-4 digit (I, X, Y, Z) per logical
/// qubit, logical qubit 0 most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LogicalLabel(pub u32);

impl LogicalLabel {
    pub const I: LogicalLabel = LogicalLabel(0);
    pub const X: LogicalLabel = LogicalLabel(1);
    pub const Y: LogicalLabel = LogicalLabel(2);
    pub const Z: LogicalLabel = LogicalLabel(3);

    pub fn from_bits(lx: u32, lz: u32, k: usize) -> Self {
        let mut v = 0;
        for m in 0..k {
            let p = Pauli::from_bits((lx >> m) & 1 == 1, (lz >> m) & 1 == 1);
            v = (v << 2) | p.index() as u32;
        }
        LogicalLabel(v)
    }

    /// Pauli on logical qubit `m`.
    pub fn pauli(self, m: usize, k: usize) -> Pauli {
        Pauli::from_index((self.0 >> (2 * (k - 1 - m))) as usize)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self, k: usize) -> String {
        (0..k).map(|m| self.pauli(m, k).symbol()).collect()
    }
}

/// Result of decomposing a word as `eta * E_s * L_l * S_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub syndrome: Syndrome,
    pub logical: LogicalLabel,
    /// Bit `i` selects generator `i`.
    pub stabilizer: u32,
    pub eta: Phase,
}

/// First violated code invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    NonHermitianGenerator(usize),
    AnticommutingGenerators(usize, usize),
    DependentGenerators,
    LogicalOutsideNormalizer { logical: String, generator: usize },
    LogicalPairing { x: usize, z: usize },
    LogicalInStabilizer(String),
    Distance { claimed: u32, found: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(m) => write!(f, "{m}"),
            Violation::NonHermitianGenerator(i) => write!(f, "generator {i} is not Hermitian"),
            Violation::AnticommutingGenerators(i, j) => {
                write!(f, "generators {i} and {j} anticommute")
            }
            Violation::DependentGenerators => write!(f, "generators are not independent"),
            Violation::LogicalOutsideNormalizer { logical, generator } => {
                write!(f, "logical {logical} anticommutes with generator {generator}")
            }
            Violation::LogicalPairing { x, z } => {
                write!(f, "logical X{x} and Z{z} have the wrong commutation relation")
            }
            Violation::LogicalInStabilizer(l) => write!(f, "logical {l} lies in the stabilizer group"),
            Violation::Distance { claimed, found } => {
                write!(f, "claimed distance {claimed} but found a logical of weight {found}")
            }
        }
    }
}

/// Packs a word as `x | z << 32`.
fn pack(w: &PauliWord) -> u64 {
    w.x() as u64 | ((w.z() as u64) << 32)
}

/// Functional `v -> <v, w>` as a bit row.
fn functional(w: &PauliWord) -> u64 {
    w.z() as u64 | ((w.x() as u64) << 32)
}

/// Solves `rows[j] . v = rhs[j]` over GF(2).
pub(crate) fn solve_gf2(rows: &[u64], rhs: &[bool]) -> Option<u64> {
    let mut a: Vec<(u64, bool)> = rows.iter().copied().zip(rhs.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..64 {
        let bit = 1u64 << col;
        let Some(p) = (r..a.len()).find(|&i| a[i].0 & bit != 0) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i].0 & bit != 0 {
                a[i].0 ^= a[r].0;
                a[i].1 ^= a[r].1;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|&(_, b)| b) {
        return None;
    }
    let mut v = 0u64;
    for (i, &col) in pivots.iter().enumerate() {
        if a[i].1 {
            v |= 1 << col;
        }
    }
    Some(v)
}

fn gf2_rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in rows {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A validated stabilizer code with a symplectic frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    k: usize,
    d: u32,
    generators: Vec<PauliWord>,
    logical_x: Vec<PauliWord>,
    logical_z: Vec<PauliWord>,
    destabilizers: Vec<PauliWord>,
}

/// Supports of a CSS code with positive generators and pure logicals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssView {
    /// (generator index, X support) of X-type checks.
    pub x_checks: Vec<(usize, u32)>,
    /// (generator index, Z support) of Z-type checks.
    pub z_checks: Vec<(usize, u32)>,
    pub logical_x: u32,
    pub logical_z: u32,
}

const CATALOG: &[(&str, &str)] = &[
    ("five_qubit", include_str!("../codes/five_qubit.code")),
    ("steane", include_str!("../codes/steane.code")),
    ("shor", include_str!("../codes/shor.code")),
    ("bare_7_1_3", include_str!("../codes/bare_7_1_3.code")),
    ("surface_9_1_3", include_str!("../codes/surface_9_1_3.code")),
    ("surface_16_1_4", include_str!("../codes/surface_16_1_4.code")),
];

impl StabilizerCode {
    pub fn new(
        name: impl Into<String>,
        d: u32,
        generators: Vec<PauliWord>,
        logical_x: Vec<PauliWord>,
        logical_z: Vec<PauliWord>,
    ) -> Result<Self> {
        let n = generators
            .first()
            .or(logical_x.first())
            .map(|g| g.n())
            .ok_or_else(|| Error::InvalidCode("empty code".into()))?;
        let k = logical_x.len();
        let mut code = StabilizerCode {
            name: name.into(),
            n,
            k,
            d,
            generators,
            logical_x,
            logical_z,
            destabilizers: Vec::new(),
        };
        code.validate().map_err(|v| Error::InvalidCode(v.to_string()))?;
        code.destabilizers = code.build_destabilizers()?;
        Ok(code)
    }

    /// Parses the text format: header `n k d name`, then `S`, `X`, `Z` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::ParseCode { line: 0, msg: "empty input".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::ParseCode { line: hl, msg: "expected header `n k d name`".into() });
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::ParseCode { line: hl, msg: format!("bad integer {s:?}") })
        };
        let (n, k, d) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
        let (mut gens, mut lx, mut lz) = (Vec::new(), Vec::new(), Vec::new());
        for (ln, l) in lines {
            let (tag, word) = l
                .split_once(char::is_whitespace)
                .ok_or(Error::ParseCode { line: ln, msg: "expected `<tag> <pauli>`".into() })?;
            let w: PauliWord = word
                .trim()
                .parse()
                .map_err(|_| Error::ParseCode { line: ln, msg: format!("bad Pauli {word:?}") })?;
            if w.n() != n {
                return Err(Error::ParseCode { line: ln, msg: format!("expected {n} qubits") });
            }
            match tag {
                "S" => gens.push(w),
                "X" => lx.push(w),
                "Z" => lz.push(w),
                _ => return Err(Error::ParseCode { line: ln, msg: format!("unknown tag {tag:?}") }),
            }
        }
        if gens.len() + k != n || lx.len() != k || lz.len() != k {
            return Err(Error::ParseCode {
                line: hl,
                msg: format!(
                    "expected {} generators and {k} logical pairs, found {} and {}/{}",
                    n.saturating_sub(k),
                    gens.len(),
                    lx.len(),
                    lz.len()
                ),
            });
        }
        Self::new(fields[3], d as u32, gens, lx, lz)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::ParseCode {
            line: 0,
            msg: format!("{}: {e}", path.as_ref().display()),
        })?;
        Self::parse(&text)
    }

    /// Serializes to the text format accepted by [`StabilizerCode::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {} {}\n", self.n, self.k, self.d, self.name);
        for g in &self.generators {
            s += &format!("S {g}\n");
        }
        for x in &self.logical_x {
            s += &format!("X {x}\n");
        }
        for z in &self.logical_z {
            s += &format!("Z {z}\n");
        }
        s
    }

    /// Repetition code protecting against Z errors: checks `X_i X_{i+1}`,
    /// `Zbar = Z...Z`, `Xbar = X...X` for odd `n` and `XI...I` for even `n`.
    pub fn repetition(n: usize) -> Result<Self> {
        if !(2..=crate::pauli::MAX_QUBITS).contains(&n) {
            return Err(Error::UnknownCode(format!("repetition({n})")));
        }
        let all = ((1u64 << n) - 1) as u32;
        let gens = (0..n - 1).map(|i| PauliWord::x_word(n, 0b11 << i)).collect();
        let lx = if n % 2 == 1 { PauliWord::x_word(n, all) } else { PauliWord::x_word(n, 1) };
        Self::new(format!("repetition{n}"), 1, gens, vec![lx], vec![PauliWord::z_word(n, all)])
    }

    /// Built-in code by name; `repetition(n)`, `repetitionN` and
    /// `repetition_N` select repetition codes.
    pub fn catalog(name: &str) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase().replace('-', "_");
        if let Some(rest) = key.strip_prefix("repetition") {
            let digits = rest.trim_matches(|c| c == '(' || c == ')' || c == '_');
            let n = digits.parse().map_err(|_| Error::UnknownCode(name.to_string()))?;
            return Self::repetition(n);
        }
        let alias = match key.as_str() {
            "five" | "5qubit" | "five_qubit" | "laflamme" => "five_qubit",
            "bare" | "bare_7_1_3" => "bare_7_1_3",
            "surface9" | "surface_9" | "surface_9_1_3" => "surface_9_1_3",
            "surface16" | "surface_16" | "surface_16_1_4" => "surface_16_1_4",
            other => other,
        };
        CATALOG
            .iter()
            .find(|(n, _)| *n == alias)
            .map(|(_, text)| Self::parse(text))
            .unwrap_or_else(|| Err(Error::UnknownCode(name.to_string())))
    }

    /// Names of the fixed catalog entries (repetition codes excluded).
    pub fn catalog_names() -> Vec<&'static str> {
        CATALOG.iter().map(|(n, _)| *n).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of generators, `n - k`.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    pub fn num_syndromes(&self) -> usize {
        1usize << self.r()
    }

    pub fn generators(&self) -> &[PauliWord] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliWord] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliWord] {
        &self.logical_z
    }

    pub fn destabilizers(&self) -> &[PauliWord] {
        &self.destabilizers
    }

    /// Returns the first violated invariant.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let (n, k) = (self.n, self.k);
        if k > n || self.generators.len() != n - k {
            return Err(Violation::Shape(format!(
                "{} generators for n={n}, k={k}",
                self.generators.len()
            )));
        }
        if self.logical_x.len() != k || self.logical_z.len() != k {
            return Err(Violation::Shape("logical operator count differs from k".into()));
        }
        let all = self.generators.iter().chain(&self.logical_x).chain(&self.logical_z);
        if all.clone().any(|w| w.n() != n) {
            return Err(Violation::Shape("operators act on different qubit counts".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if !g.is_hermitian() {
                return Err(Violation::NonHermitianGenerator(i));
            }
            for (j, h) in self.generators.iter().enumerate().skip(i + 1) {
                if !g.commutes_with(h) {
                    return Err(Violation::AnticommutingGenerators(i, j));
                }
            }
        }
        let packed: Vec<u64> = self.generators.iter().map(pack).collect();
        if gf2_rank(&packed) != n - k {
            return Err(Violation::DependentGenerators);
        }
        for (name, ls) in [("X", &self.logical_x), ("Z", &self.logical_z)] {
            for (m, l) in ls.iter().enumerate() {
                if let Some(i) = self.generators.iter().position(|g| !g.commutes_with(l)) {
                    return Err(Violation::LogicalOutsideNormalizer {
                        logical: format!("{name}{m}"),
                        generator: i,
                    });
                }
            }
        }
        for (i, x) in self.logical_x.iter().enumerate() {
            for (j, z) in self.logical_z.iter().enumerate() {
                if x.commutes_with(z) == (i == j) {
                    return Err(Violation::LogicalPairing { x: i, z: j });
                }
            }
            for (j, x2) in self.logical_x.iter().enumerate() {
                if !x.commutes_with(x2) {
                    return Err(Violation::LogicalPairing { x: i, z: j });
                }
            }
        }
        for (i, z) in self.logical_z.iter().enumerate() {
            for (j, z2) in self.logical_z.iter().enumerate() {
                if !z.commutes_with(z2) {
                    return Err(Violation::LogicalPairing { x: j, z: i });
                }
            }
        }
        let mut rows = packed.clone();
        rows.extend(self.logical_x.iter().chain(&self.logical_z).map(pack));
        if gf2_rank(&rows) != n + k {
            return Err(Violation::LogicalInStabilizer("X/Z".into()));
        }
        if let Some(found) = self.min_logical_weight(self.d) {
            if found < self.d {
                return Err(Violation::Distance { claimed: self.d, found });
            }
        }
        Ok(())
    }

    /// Smallest weight `<= limit` of a nontrivial logical, or `None` when
    /// there is none up to `limit` or the search would be too large.
    pub fn min_logical_weight(&self, limit: u32) -> Option<u32> {
        let n = self.n;
        let mut budget: f64 = 0.0;
        for w in 1..=limit.min(n as u32) {
            budget += binomial_f64(n, w as usize) * 3f64.powi(w as i32);
        }
        if budget > 2e7 {
            return None;
        }
        let mut found = None;
        for w in 1..=limit.min(n as u32) {
            for_each_word_of_weight(n, w as usize, |p| {
                if found.is_none()
                    && self.generators.iter().all(|g| g.commutes_with(&p))
                    && self.logical_x.iter().chain(&self.logical_z).any(|l| !l.commutes_with(&p))
                {
                    found = Some(w);
                }
            });
            if found.is_some() {
                break;
            }
        }
        found
    }

    fn build_destabilizers(&self) -> Result<Vec<PauliWord>> {
        let r = self.r();
        let mut rows: Vec<u64> = self.generators.iter().map(functional).collect();
        rows.extend(self.logical_x.iter().chain(&self.logical_z).map(functional));
        let mut out: Vec<PauliWord> = Vec::with_capacity(r);
        for i in 0..r {
            let rhs: Vec<bool> = (0..rows.len()).map(|j| j == i).collect();
            let v = solve_gf2(&rows, &rhs)
                .ok_or_else(|| Error::Invariant(format!("no destabilizer for generator {i}")))?;
            let mut d = PauliWord::hermitian(self.n, v as u32, (v >> 32) as u32);
            for (j, dj) in out.iter().enumerate() {
                if !d.commutes_with(dj) {
                    d = d.mul_word(&self.generators[j]).canonical();
                }
            }
            out.push(d);
        }
        Ok(out)
    }

    pub fn syndrome(&self, b: &PauliWord) -> Syndrome {
        let mut s = 0u32;
        for (i, g) in self.generators.iter().enumerate() {
            if !g.commutes_with(b) {
                s |= 1 << i;
            }
        }
        Syndrome(s)
    }

    /// Logical label of a word read off from commutation with the logicals.
    pub fn logical_label(&self, w: &PauliWord) -> LogicalLabel {
        let (mut lx, mut lz) = (0u32, 0u32);
        for m in 0..self.k {
            if !w.commutes_with(&self.logical_z[m]) {
                lx |= 1 << m;
            }
            if !w.commutes_with(&self.logical_x[m]) {
                lz |= 1 << m;
            }
        }
        LogicalLabel::from_bits(lx, lz, self.k)
    }

    /// Hermitian logical `L_l` with `Ybar = i Xbar Zbar`.
    pub fn logical_operator(&self, l: LogicalLabel) -> PauliWord {
        let mut w = PauliWord::identity(self.n);
        for m in 0..self.k {
            let op = match l.pauli(m, self.k) {
                Pauli::I => continue,
                Pauli::X => self.logical_x[m],
                Pauli::Z => self.logical_z[m],
                Pauli::Y => self.logical_x[m].mul_word(&self.logical_z[m]).scaled(Phase::I),
            };
            w = w.mul_word(&op);
        }
        w
    }

    /// Stabilizer coordinates `t` of a word in the normalizer.
    pub fn stabilizer_coords(&self, w: &PauliWord) -> u32 {
        let mut t = 0u32;
        for (i, d) in self.destabilizers.iter().enumerate() {
            if !d.commutes_with(w) {
                t |= 1 << i;
            }
        }
        t
    }

    /// `S_t`, the ordered product of the selected generators.
    pub fn stabilizer_element(&self, t: u32) -> PauliWord {
        let mut w = PauliWord::identity(self.n);
        for (i, g) in self.generators.iter().enumerate() {
            if (t >> i) & 1 == 1 {
                w = w.mul_word(g);
            }
        }
        w
    }

    /// Writes a zero-syndrome word as `eta * L_l * S_t`.
    pub fn decompose_normalizer(&self, w: &PauliWord) -> Result<(LogicalLabel, u32, Phase)> {
        if self.syndrome(w).0 != 0 {
            return Err(Error::Invariant(format!("{w} is not in the normalizer")));
        }
        let l = self.logical_label(w);
        let t = self.stabilizer_coords(w);
        let prod = self.logical_operator(l).mul_word(&self.stabilizer_element(t));
        if !prod.same_support(w) {
            return Err(Error::Invariant(format!("frame decomposition of {w} failed")));
        }
        Ok((l, t, w.phase() * prod.phase().conj()))
    }

    /// Normal form of `b` relative to the corrections of `table`.
    pub fn decompose(&self, table: &DecoderTable, b: &PauliWord) -> Result<NormalForm> {
        if b.n() != self.n {
            return Err(Error::Dimension(b.n(), self.n));
        }
        let s = self.syndrome(b);
        let e = table.correction(s)?;
        let (logical, stabilizer, eta) = self.decompose_normalizer(&e.mul_word(b))?;
        Ok(NormalForm { syndrome: s, logical, stabilizer, eta })
    }

    /// `Some(eta)` when `w = eta * S_t` for some stabilizer element.
    pub fn stabilizer_phase(&self, w: &PauliWord) -> Option<Phase> {
        match self.decompose_normalizer(w) {
            Ok((l, _, eta)) if l == LogicalLabel::I => Some(eta),
            _ => None,
        }
    }

    /// Code with qubit `q` moved to `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let p = |ws: &[PauliWord]| ws.iter().map(|w| w.permuted(perm)).collect::<Vec<_>>();
        Self::new(
            self.name.clone(),
            self.d,
            p(&self.generators),
            p(&self.logical_x),
            p(&self.logical_z),
        )
    }

    /// CSS structure, when every generator is a positive pure-X or pure-Z
    /// word and the single logical pair is pure.
    pub fn css_view(&self) -> Option<CssView> {
        if self.k != 1 {
            return None;
        }
        let (mut xs, mut zs) = (Vec::new(), Vec::new());
        for (i, g) in self.generators.iter().enumerate() {
            if g.phase() != Phase::ONE {
                return None;
            }
            match (g.x() != 0, g.z() != 0) {
                (true, false) => xs.push((i, g.x())),
                (false, true) => zs.push((i, g.z())),
                _ => return None,
            }
        }
        let (lx, lz) = (self.logical_x[0], self.logical_z[0]);
        if lx.z() != 0 || lz.x() != 0 || lx.phase() != Phase::ONE || lz.phase() != Phase::ONE {
            return None;
        }
        Some(CssView { x_checks: xs, z_checks: zs, logical_x: lx.x(), logical_z: lz.z() })
    }
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Calls `f` for every Hermitian word of weight `w`.
pub(crate) fn for_each_word_of_weight(n: usize, w: usize, mut f: impl FnMut(PauliWord)) {
    let mut support: Vec<usize> = (0..w).collect();
    if w > n {
        return;
    }
    loop {
        let total = 3usize.pow(w as u32);
        for code in 0..total {
            let (mut x, mut z, mut c) = (0u32, 0u32, code);
            for &q in &support {
                let (bx, bz) = Pauli::from_index(c % 3 + 1).bits();
                x |= (bx as u32) << q;
                z |= (bz as u32) << q;
                c /= 3;
            }
            f(PauliWord::hermitian(n, x, z));
        }
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if support[i] < n - w + i {
                support[i] += 1;
                for j in i + 1..w {
                    support[j] = support[j - 1] + 1;
                }
                break;
            }
        }
        if w == 0 {
            return;
        }
    }
}
