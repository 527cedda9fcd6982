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

mod common;

use coherentqec::code::Violation;
use coherentqec::{DecoderTable, Error, LogicalLabel, PauliWord, Phase, StabilizerCode, Strategy as Decoding, Syndrome};
use common::CATALOG;
use proptest::prelude::*;
use std::sync::OnceLock;

fn all_codes() -> Vec<StabilizerCode> {
    let mut v: Vec<_> = CATALOG.iter().map(|n| StabilizerCode::catalog(n).unwrap()).collect();
    v.extend((2..=9).map(|n| StabilizerCode::repetition(n).unwrap()));
    v
}

#[test]
fn catalog_parameters() {
    let expect = [
        ("five_qubit", 5, 3),
        ("steane", 7, 3),
        ("shor", 9, 3),
        ("bare_7_1_3", 7, 3),
        ("surface_9_1_3", 9, 3),
        ("surface_16_1_4", 16, 4),
    ];
    for (name, n, d) in expect {
        let c = StabilizerCode::catalog(name).unwrap();
        assert_eq!((c.n(), c.k(), c.d()), (n, 1, d), "{name}");
        assert!(c.validate().is_ok());
        assert_eq!(c.num_syndromes(), 1 << (n - 1));
    }
    assert_eq!(StabilizerCode::catalog_names().len(), 6);
}

#[test]
fn distances_are_attained() {
    for c in all_codes() {
        if c.n() > 9 {
            continue;
        }
        assert_eq!(c.min_logical_weight(c.d()), Some(c.d()), "{}", c.name());
    }
}

#[test]
fn text_round_trip() {
    for c in all_codes() {
        let back = StabilizerCode::parse(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn destabilizer_frame() {
    for c in all_codes() {
        let (g, d) = (c.generators(), c.destabilizers());
        assert_eq!(d.len(), c.r());
        for i in 0..c.r() {
            for j in 0..c.r() {
                assert_eq!(g[i].commutes_with(&d[j]), i != j, "{} {i} {j}", c.name());
                assert!(d[i].commutes_with(&d[j]));
            }
            for l in c.logical_x().iter().chain(c.logical_z()) {
                assert!(l.commutes_with(&d[i]));
            }
            assert!(d[i].is_hermitian());
        }
    }
}

#[test]
fn logical_y_convention() {
    for c in all_codes() {
        let y = c.logical_operator(LogicalLabel::Y);
        let xz = c.logical_x()[0] * c.logical_z()[0];
        assert_eq!(y, xz.scaled(Phase::I));
        assert!(y.is_hermitian());
    }
}

fn code_and_word() -> impl Strategy<Value = (usize, PauliWord)> {
    (0usize..CATALOG.len() + 3).prop_flat_map(|i| {
        let n = if i < CATALOG.len() { StabilizerCode::catalog(CATALOG[i]).unwrap().n() } else { i - CATALOG.len() + 3 };
        let mask = ((1u64 << n) - 1) as u32;
        (Just(i), (any::<u32>(), any::<u32>(), 0u32..4).prop_map(move |(x, z, p)| {
            PauliWord::new(n, x & mask, z & mask, Phase::new(p)).unwrap()
        }))
    })
}

fn tables() -> &'static Vec<(StabilizerCode, [DecoderTable; 2])> {
    static T: OnceLock<Vec<(StabilizerCode, [DecoderTable; 2])>> = OnceLock::new();
    T.get_or_init(|| {
        (0..CATALOG.len() + 3)
            .map(|i| {
                let c = code_at(i);
                let t = [Decoding::Symmetric, Decoding::ZOnly].map(|st| DecoderTable::build(&c, st).unwrap());
                (c, t)
            })
            .collect()
    })
}

fn code_at(i: usize) -> StabilizerCode {
    if i < CATALOG.len() {
        StabilizerCode::catalog(CATALOG[i]).unwrap()
    } else {
        StabilizerCode::repetition(i - CATALOG.len() + 3).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_reconstructs_word((i, b) in code_and_word()) {
        let (code, ts) = &tables()[i];
        for table in ts {
            let nf = code.decompose(&table, &b).unwrap();
            let e = table.correction(nf.syndrome).unwrap();
            let rebuilt = (e * code.logical_operator(nf.logical) * code.stabilizer_element(nf.stabilizer)).scaled(nf.eta);
            prop_assert_eq!(rebuilt, b);
            prop_assert_eq!(nf.syndrome, code.syndrome(&b));
        }
    }

    #[test]
    fn permuted_code_is_valid((i, b) in code_and_word(), seed in any::<u64>()) {
        let code = code_at(i);
        let n = code.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            perm.swap(k, (s % (k as u64 + 1)) as usize);
            s /= k as u64 + 1;
        }
        let pc = code.permuted(&perm).unwrap();
        prop_assert_eq!(pc.syndrome(&b.permuted(&perm)), code.syndrome(&b));
    }
}

#[test]
fn repetition3_worked_example() {
    let code = StabilizerCode::repetition(3).unwrap();
    let table = DecoderTable::build(&code, Decoding::ZOnly).unwrap();
    let b: PauliWord = "ZZI".parse().unwrap();
    let nf = code.decompose(&table, &b).unwrap();
    assert_eq!(nf.syndrome, Syndrome(0b10));
    assert_eq!(table.correction(nf.syndrome).unwrap(), "IIZ".parse().unwrap());
    assert_eq!(nf.logical, LogicalLabel::Z);
    assert_eq!(nf.stabilizer, 0);
    assert_eq!(nf.eta, Phase::ONE);
}

#[test]
fn css_views() {
    for name in ["steane", "shor", "surface_9_1_3", "surface_16_1_4"] {
        let v = StabilizerCode::catalog(name).unwrap().css_view();
        assert!(v.is_some(), "{name}");
        let v = v.unwrap();
        assert_eq!(v.x_checks.len() + v.z_checks.len(), StabilizerCode::catalog(name).unwrap().r());
    }
    assert!(StabilizerCode::catalog("five_qubit").unwrap().css_view().is_none());
    assert!(StabilizerCode::catalog("bare_7_1_3").unwrap().css_view().is_none());
    assert!(StabilizerCode::repetition(5).unwrap().css_view().is_some());
}

#[test]
fn invalid_codes_are_rejected() {
    let w = |s: &str| s.parse::<PauliWord>().unwrap();
    let bad = |r: Result<StabilizerCode, Error>| assert!(matches!(r, Err(Error::InvalidCode(_))), "{r:?}");
    bad(StabilizerCode::new("anti", 1, vec![w("XX"), w("ZI")], vec![], vec![]));
    bad(StabilizerCode::new("dep", 1, vec![w("XXI"), w("IXX"), w("XIX")], vec![], vec![]));
    bad(StabilizerCode::new("nonherm", 1, vec![w("iXX"), w("IXX")], vec![w("ZZZ")], vec![w("XXX")]));
    bad(StabilizerCode::new("pair", 1, vec![w("XXI"), w("IXX")], vec![w("XXX")], vec![w("XXX")]));
    bad(StabilizerCode::new("dist", 3, vec![w("XXI"), w("IXX")], vec![w("XXX")], vec![w("ZZZ")]));
    let code = StabilizerCode::new("bitflip", 1, vec![w("XXI"), w("IXX")], vec![w("XXX")], vec![w("ZZZ")]);
    assert!(code.is_ok());
    assert!(matches!(
        StabilizerCode::new("dist", 3, vec![w("XXI"), w("IXX")], vec![w("XXX")], vec![w("ZZZ")]).unwrap_err(),
        Error::InvalidCode(m) if m.contains(&Violation::Distance { claimed: 3, found: 1 }.to_string())
    ));
}

#[test]
fn parse_errors_carry_lines() {
    let err = StabilizerCode::parse("3 1 1 r\nS XXI\nS IXQ\nX XXX\nZ ZZZ\n").unwrap_err();
    assert!(matches!(err, Error::ParseCode { line: 3, .. }), "{err:?}");
    let err = StabilizerCode::parse("3 1 r\n").unwrap_err();
    assert!(matches!(err, Error::ParseCode { line: 1, .. }));
    let err = StabilizerCode::parse("3 1 1 r\nS XXI\nX XXX\nZ ZZZ\n").unwrap_err();
    assert!(matches!(err, Error::ParseCode { .. }));
    let ok = StabilizerCode::parse("# comment\n3 1 1 r\n\nS XXI\nS IXX\nX XXX\nZ ZZZ\n").unwrap();
    assert_eq!(ok.name(), "r");
    assert!(matches!(StabilizerCode::catalog("golay"), Err(Error::UnknownCode(_))));
    assert!(matches!(StabilizerCode::repetition(1), Err(Error::UnknownCode(_))));
    assert_eq!(StabilizerCode::catalog("repetition(4)").unwrap().n(), 4);
}

#[test]
fn decompose_rejects_wrong_length() {
    let code = StabilizerCode::catalog("steane").unwrap();
    let table = DecoderTable::build(&code, Decoding::Symmetric).unwrap();
    assert!(matches!(code.decompose(&table, &"XX".parse().unwrap()), Err(Error::Dimension(2, 7))));
}
