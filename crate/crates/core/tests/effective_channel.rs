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

use coherentqec::channel::{
    effective_unitary_css, effective_unitary_enumerate, repetition_conditional, repetition_conditional_nonuniform,
    repetition_correction, CssPlan, KrausPlan,
};
use coherentqec::{
    conditional, effective_channel, effective_model_numeric, effective_model_symbolic, effective_unitary,
    repetition_oracle, DecoderTable, LogicalChannel, LogicalLabel, ModelChannel, NoiseSpec, StabilizerCode, Strategy,
    Syndrome, UnitaryNoise,
};
use common::{max_dev, random_axis, rational_cp_point, rng, to_f64, CATALOG};
use num_complex::Complex64 as C;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

fn setup(name: &str, st: Strategy) -> (StabilizerCode, DecoderTable) {
    let code = StabilizerCode::catalog(name).unwrap();
    let t = DecoderTable::build(&code, st).unwrap();
    (code, t)
}

fn unitary(theta: f64, axis: [f64; 3]) -> NoiseSpec<f64> {
    NoiseSpec::uniform_unitary(UnitaryNoise::new(theta, axis).unwrap())
}

fn f(n: i32, theta: f64, w: i32) -> C {
    C::new(0.0, -theta.sin()).powi(w) * theta.cos().powi(n - w)
}

#[test]
fn zero_rotation_is_identity() {
    for name in CATALOG {
        let (code, t) = setup(name, Strategy::Symmetric);
        if code.n() > 12 && code.css_view().is_none() {
            continue;
        }
        let ch = effective_unitary(&code, &t, &unitary(0.0, [0.3, -0.2, 0.9])).unwrap();
        assert!(max_dev(ch.coeffs(), LogicalChannel::<f64>::identity(1).coeffs()) < 1e-14, "{name}");
        let kraus = ch.kraus().unwrap();
        assert!((kraus[0][0] - C::new(1.0, 0.0)).norm() < 1e-14);
        assert!(kraus[1..].iter().flatten().all(|c| c.norm() < 1e-14));
        let m = effective_model_numeric(&code, &t, &vec![ModelChannel::identity(); code.n()]).unwrap();
        assert!(max_dev(m.coeffs(), LogicalChannel::<f64>::identity(1).coeffs()) < 1e-14);
    }
}

#[test]
fn state_vector_engine_matches_enumeration() {
    let mut r = rng(7);
    for name in ["steane", "shor", "surface_9_1_3"] {
        for st in [Strategy::Symmetric, Strategy::ZOnly] {
            let (code, t) = setup(name, st);
            let (css, en) = (CssPlan::new(&code, &t).unwrap(), KrausPlan::new(&code, &t).unwrap());
            for _ in 0..3 {
                let us: Vec<_> =
                    (0..code.n()).map(|_| UnitaryNoise::new(r.gen_range(-1.0..1.0), random_axis(&mut r)).unwrap()).collect();
                let a = css.evaluate(&us).unwrap();
                let b = en.evaluate(&us).unwrap();
                assert!(max_dev(a.coeffs(), b.coeffs()) < 1e-13, "{name} {st}");
                for (ka, kb) in a.kraus().unwrap().iter().zip(b.kraus().unwrap()) {
                    assert!(max_dev(ka, kb) < 1e-13);
                }
            }
        }
    }
    let (code, t) = setup("five_qubit", Strategy::Symmetric);
    assert!(effective_unitary_css(&code, &t, &[UnitaryNoise::z_axis(0.1); 5]).is_err());
    let code = StabilizerCode::repetition(7).unwrap();
    let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
    let us = vec![UnitaryNoise::new(0.3, [0.1, 0.2, 1.0]).unwrap(); 7];
    let a = effective_unitary_css(&code, &t, &us).unwrap();
    let b = effective_unitary_enumerate(&code, &t, &us).unwrap();
    assert!(max_dev(a.coeffs(), b.coeffs()) < 1e-13);
}

#[test]
fn channels_are_cptp() {
    let mut r = rng(11);
    for name in CATALOG.iter().take(5) {
        let (code, t) = setup(name, Strategy::Symmetric);
        for _ in 0..3 {
            let th = r.gen_range(-1.6..1.6);
            let ch = effective_unitary(&code, &t, &unitary(th, random_axis(&mut r))).unwrap();
            ch.check_cptp(1e-10).unwrap();
            let models: Vec<_> = (0..code.n())
                .map(|_| ModelChannel::from_p_theta(r.gen_range(0.0..1.0), r.gen_range(-2.0..2.0)).unwrap())
                .collect();
            let m = effective_model_numeric(&code, &t, &models).unwrap();
            m.check_cptp(1e-10).unwrap();
            assert_eq!(m.num_syndromes(), Some(code.num_syndromes()));
        }
    }
}

#[test]
fn unitary_and_model_engines_agree_on_z_rotations() {
    for name in ["five_qubit", "steane", "bare_7_1_3", "surface_9_1_3"] {
        let (code, t) = setup(name, Strategy::Symmetric);
        let th = 0.37;
        let a = effective_unitary(&code, &t, &unitary(th, [0.0, 0.0, 1.0])).unwrap();
        let b = effective_channel(&code, &t, &NoiseSpec::uniform_model(ModelChannel::unitary(th))).unwrap();
        assert!(max_dev(a.coeffs(), b.coeffs()) < 1e-13, "{name}");
        for s in 0..code.num_syndromes() {
            let s = Syndrome(s as u32);
            assert!(max_dev(&a.conditional(s).unwrap().coeffs, &b.conditional(s).unwrap().coeffs) < 1e-13);
        }
    }
}

fn symbolic_vs_numeric(name: &str, st: Strategy, points: usize) {
    let (code, t) = setup(name, st);
    let map = effective_model_symbolic(&code, &t, false).unwrap();
    let mut r = rng(3);
    for _ in 0..points {
        let (x, y) = rational_cp_point(&mut r, 1000);
        let (xf, yf) = (to_f64(&x), to_f64(&y));
        let ch = effective_model_numeric(&code, &t, &vec![ModelChannel::new(xf, yf).unwrap(); code.n()]).unwrap();
        for (l, lp, re, im) in &map.slots {
            let v = C::new(re.eval_f64(xf, yf), im.eval_f64(xf, yf));
            assert!((ch.r(*l, *lp) - v).norm() < 1e-12, "{name} {st} slot {l:?},{lp:?}");
        }
        let (xp, yp) = map.eval(&x, &y);
        if map.residual_ok {
            assert!((ch.r(LogicalLabel::Z, LogicalLabel::Z).re - to_f64(&xp)).abs() < 1e-12);
            assert!((ch.r(LogicalLabel::Z, LogicalLabel::I).im + to_f64(&yp)).abs() < 1e-12);
        }
    }
}

#[test]
fn symbolic_matches_numeric() {
    for name in ["five_qubit", "steane", "shor", "bare_7_1_3", "surface_9_1_3"] {
        symbolic_vs_numeric(name, Strategy::ZOnly, 5);
        symbolic_vs_numeric(name, Strategy::Symmetric, 2);
    }
}

#[test]
fn z_only_maps_have_definite_y_parity() {
    for name in CATALOG.iter().take(5) {
        let (code, t) = setup(name, Strategy::ZOnly);
        let map = effective_model_symbolic(&code, &t, true).unwrap();
        assert!(map.residual_ok, "{name}");
        assert_eq!(map.x.y_parity(), Some(0), "{name}");
        assert!(map.y.is_zero() || map.y.y_parity() == Some(1), "{name}");
        assert!(map.x.degree() <= code.n() as u32);
    }
}

#[test]
fn repetition_oracle_is_exact() {
    let mut r = rng(99);
    for n in 2..=9 {
        let code = StabilizerCode::repetition(n).unwrap();
        let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
        let map = effective_model_symbolic(&code, &t, true).unwrap();
        assert!(map.residual_ok);
        if n % 2 == 0 {
            assert!(map.y.is_zero(), "n={n}");
        }
        for _ in 0..20 {
            let (x, y) = rational_cp_point(&mut r, 997);
            let (xp, yp) = map.eval(&x, &y);
            let o = repetition_oracle::<BigRational>(n, &x, &y);
            assert_eq!((xp, yp), (o.x.clone(), o.y.clone()), "n={n}");
            let (xf, yf) = (to_f64(&x), to_f64(&y));
            let ch = effective_model_numeric(&code, &t, &vec![ModelChannel::new(xf, yf).unwrap(); n]).unwrap();
            assert!((ch.r(LogicalLabel::Z, LogicalLabel::Z).re - to_f64(&o.x)).abs() < 1e-12);
            assert!((-ch.r(LogicalLabel::Z, LogicalLabel::I).im - to_f64(&o.y)).abs() < 1e-12);
        }
    }
}

#[test]
fn repetition_conditionals_match_closed_form() {
    let mut r = rng(5);
    for n in 2..=8 {
        let code = StabilizerCode::repetition(n).unwrap();
        let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
        for s in 0..code.num_syndromes() as u32 {
            let c = t.correction(Syndrome(s)).unwrap();
            if c.weight() * 2 != n as u32 {
                assert_eq!(c.z(), repetition_correction(n, s), "n={n} s={s}");
            }
        }
        let models: Vec<ModelChannel<f64>> = (0..n)
            .map(|_| ModelChannel::from_p_theta(r.gen_range(0.0..0.5), r.gen_range(-0.8..0.8)).unwrap())
            .collect();
        let xs: Vec<f64> = models.iter().map(|m| m.x).collect();
        let ys: Vec<f64> = models.iter().map(|m| m.y).collect();
        let ch = effective_model_numeric(&code, &t, &models).unwrap();
        for s in 0..code.num_syndromes() as u32 {
            let corr = t.correction(Syndrome(s)).unwrap().z();
            let o = repetition_conditional_nonuniform(&xs, &ys, corr);
            let cc = ch.conditional(Syndrome(s)).unwrap();
            let (xbar, x, y) = cc.model_triple();
            assert!((xbar - o.xbar).abs() < 1e-14 && (x - o.x).abs() < 1e-14 && (y - o.y).abs() < 1e-14, "n={n} s={s}");
            assert!((cc.r(LogicalLabel::Z, LogicalLabel::I).re - o.zbias).abs() < 1e-14);
            for z in [-1.0, -0.3, 0.0, 0.6, 1.0] {
                let rho = [C::new((1.0 + z) / 2.0, 0.0), C::new(0.2, 0.1), C::new(0.2, -0.1), C::new((1.0 - z) / 2.0, 0.0)];
                assert!((cc.probability(&rho) - o.probability(&z)).abs() < 1e-14);
            }
            if n % 2 == 1 {
                assert_eq!(o.zbias, 0.0);
            }
        }
    }
}

#[test]
fn uniform_conditionals_sum_to_oracle() {
    let (x, y) = (0.1f64, 0.25f64);
    for n in 3..=8 {
        let conds = repetition_conditional(n, &x, &y);
        let total_x: f64 = conds.iter().map(|c| c.x).sum();
        let total_y: f64 = conds.iter().map(|c| c.y).sum();
        let o = repetition_oracle(n, &x, &y);
        assert!((total_x - o.x).abs() < 1e-14, "n={n}");
        assert!((total_y - o.y).abs() < 1e-14, "n={n}");
    }
}

#[test]
fn odd_repetition_kraus_are_scaled_unitaries() {
    let n = 5;
    let code = StabilizerCode::repetition(n).unwrap();
    let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
    let th = 0.3;
    let ch = effective_unitary(&code, &t, &unitary(th, [0.0, 0.0, 1.0])).unwrap();
    for (s, k) in ch.kraus().unwrap().iter().enumerate() {
        let w = t.correction(Syndrome(s as u32)).unwrap().weight() as i32;
        let (a, d) = (k[0], k[3]);
        assert!(k[1].norm() < 1e-15 && k[2].norm() < 1e-15);
        assert!((a - f(n as i32, th, w)).norm() < 1e-14, "s={s}");
        assert!((d - f(n as i32, th, n as i32 - w)).norm() < 1e-14, "s={s}");
        let norm = a.norm_sqr() + d.norm_sqr();
        assert!((norm - (f(5, th, w).norm_sqr() + f(5, th, 5 - w).norm_sqr())).abs() < 1e-15);
        let cc = ch.conditional(Syndrome(s as u32)).unwrap();
        let p0 = cc.probability(&[C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)]);
        let p1 = cc.probability(&[C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        assert!((p0 - p1).abs() < 1e-15);
    }
}

#[test]
fn even_repetition_ties_give_projective_kraus() {
    let n = 4;
    let code = StabilizerCode::repetition(n).unwrap();
    let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
    let th = 0.4;
    let ch = effective_unitary(&code, &t, &unitary(th, [0.0, 0.0, 1.0])).unwrap();
    let mut ties = 0;
    for (s, k) in ch.kraus().unwrap().iter().enumerate() {
        if t.correction(Syndrome(s as u32)).unwrap().weight() == 2 {
            ties += 1;
            assert!((k[0] - f(4, th, 2)).norm() < 1e-14);
            assert!((k[3] - k[0]).norm() < 1e-14 || (k[3] + k[0]).norm() < 1e-14);
        }
    }
    assert_eq!(ties, 3);
}

#[test]
fn conditional_api_checks_syndrome() {
    let (code, t) = setup("steane", Strategy::Symmetric);
    let rho = [C::new(0.5, 0.0), C::new(0.5, 0.0), C::new(0.5, 0.0), C::new(0.5, 0.0)];
    let spec = unitary(0.2, [1.0, 0.0, 0.0]);
    assert!(conditional(&code, &t, &spec, Syndrome(64), &rho).is_err());
    let total: f64 =
        (0..64).map(|s| conditional(&code, &t, &spec, Syndrome(s), &rho).unwrap().1).sum();
    assert!((total - 1.0).abs() < 1e-13);
    let (c, p) = conditional(&code, &t, &spec, Syndrome(0), &rho).unwrap();
    let normed = c.normalized(&rho);
    let out = normed.apply(&rho);
    assert!((out[0] + out[3] - C::new(1.0, 0.0)).norm() < 1e-13);
    assert!(p > 0.5 && p < 1.0);
}

#[test]
fn five_qubit_z_axis_kraus_classes() {
    let (code, t) = setup("five_qubit", Strategy::Symmetric);
    let th = 0.1;
    let ch = effective_unitary(&code, &t, &unitary(th, [0.0, 0.0, 1.0])).unwrap();
    let fw = |w| f(5, th, w);
    let z = C::new(0.0, 0.0);
    let i = C::new(0.0, 1.0);
    let k0 = [fw(0), z, z, fw(5)];
    let kz = [fw(1), z, z, fw(4)];
    let ky = [z, -i * fw(3), -fw(2), z];
    let kx = [z, -fw(2), i * fw(3), z];
    let mut counts = [0; 4];
    for (s, k) in ch.kraus().unwrap().iter().enumerate() {
        let e = t.correction(Syndrome(s as u32)).unwrap();
        let (nx, ny, nz) = e.xyz_counts();
        let (idx, want) = match (nx, ny, nz) {
            (0, 0, 0) => (0, k0),
            (0, 0, 1) => (1, kz),
            (0, 1, 0) => (2, ky),
            (1, 0, 0) => (3, kx),
            _ => panic!("unexpected correction {e}"),
        };
        counts[idx] += 1;
        assert!(max_dev(k, &want) < 1e-15, "s={s} {e}");
    }
    assert_eq!(counts, [1, 5, 5, 5]);
}

#[test]
fn five_qubit_diagonal_axis_kraus() {
    let (code, t) = setup("five_qubit", Strategy::Symmetric);
    let th = 0.1;
    let ch = effective_unitary(&code, &t, &unitary(th, [1.0, 1.0, 1.0])).unwrap();
    let g = |w: i32| f(5, th, w) / 3f64.sqrt().powi(w);
    let (a0, b0) = (g(0) + 15.0 * g(4), -(10.0 * g(3) - 6.0 * g(5)));
    let (a1, b1) = (g(1) + 4.0 * g(3) + 3.0 * g(5), -(2.0 * g(2) + 2.0 * g(4)));
    let kraus = ch.kraus().unwrap();
    assert!(max_dev(&kraus[0], &[a0, b0, b0, b0]) < 1e-15);
    for k in &kraus[1..] {
        assert!(max_dev(k, &[a1, b1, b1, b1]) < 1e-15);
    }
}

#[test]
fn f32_channels_track_f64() {
    let (code, t) = setup("steane", Strategy::Symmetric);
    let a = effective_unitary(&code, &t, &unitary(0.3, [0.2, 0.5, 0.8])).unwrap();
    let spec32 = NoiseSpec::uniform_unitary(UnitaryNoise::<f32>::new(0.3, [0.2, 0.5, 0.8]).unwrap());
    let b = effective_unitary(&code, &t, &spec32).unwrap().cast::<f64>();
    assert!(max_dev(a.coeffs(), b.coeffs()) < 1e-5);
}

#[test]
fn automorphism_covariance_with_nonuniform_noise() {
    let (code, t) = setup("five_qubit", Strategy::Symmetric);
    let mut r = rng(21);
    let us: Vec<_> = (0..5).map(|_| UnitaryNoise::new(r.gen_range(-0.5..0.5), random_axis(&mut r)).unwrap()).collect();
    let base = effective_unitary(&code, &t, &NoiseSpec::Unitary(us.clone())).unwrap();
    let mut shifted = us.clone();
    shifted.rotate_left(1);
    let moved = effective_unitary(&code, &t, &NoiseSpec::Unitary(shifted)).unwrap();
    assert!(max_dev(base.coeffs(), moved.coeffs()) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_qubits_is_covariant(seed in any::<u64>(), th in -1.0f64..1.0) {
        let n = 7;
        let code = StabilizerCode::repetition(n).unwrap();
        let mut r = rng(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let pc = code.permuted(&perm).unwrap();
        let (t, pt) = (DecoderTable::build(&code, Strategy::ZOnly).unwrap(), DecoderTable::build(&pc, Strategy::ZOnly).unwrap());
        prop_assert!(t.corrections().iter().all(|e| pt.correction(pc.syndrome(&e.permuted(&perm))).unwrap() == e.permuted(&perm)));
        let us: Vec<_> = (0..n).map(|_| UnitaryNoise::new(th, random_axis(&mut r)).unwrap()).collect();
        let mut pus = us.clone();
        for (q, &p) in perm.iter().enumerate() {
            pus[p] = us[q];
        }
        let a = effective_unitary(&code, &t, &NoiseSpec::Unitary(us)).unwrap();
        let b = effective_unitary(&pc, &pt, &NoiseSpec::Unitary(pus)).unwrap();
        prop_assert!(max_dev(a.coeffs(), b.coeffs()) < 1e-13);
    }

    #[test]
    fn model_channel_trace_preserving(p in 0.0f64..1.0, th in -3.2f64..3.2) {
        let code = StabilizerCode::repetition(5).unwrap();
        let t = DecoderTable::build(&code, Strategy::ZOnly).unwrap();
        let ch = effective_model_numeric(&code, &t, &vec![ModelChannel::from_p_theta(p, th).unwrap(); 5]).unwrap();
        prop_assert!(ch.trace_preservation_error() < 1e-13);
        prop_assert!(ch.hermiticity_error() < 1e-13);
    }
}
