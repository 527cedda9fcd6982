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

use coherentqec::{Error, LogicalChannel, ModelChannel, ModelChannelQ, NoiseSpec, UnitaryNoise};
use common::{matmul, max_dev, random_axis, rng};
use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn pauli(i: usize) -> [C; 4] {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match i {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, c(0.0, -1.0), c(0.0, 1.0), z],
        _ => [o, z, z, -o],
    }
}

fn dagger(m: &[C]) -> Vec<C> {
    vec![m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()]
}

fn conjugate(u: &[C], rho: &[C]) -> Vec<C> {
    matmul(&matmul(u, rho, 2), &dagger(u), 2)
}

fn random_state(seed: u64) -> Vec<C> {
    use rand::Rng;
    let mut r = rng(seed);
    let v = random_axis(&mut r);
    let s = r.gen_range(0.0..1.0);
    vec![c((1.0 + s * v[2]) / 2.0, 0.0), c(s * v[0] / 2.0, -s * v[1] / 2.0), c(s * v[0] / 2.0, s * v[1] / 2.0), c((1.0 - s * v[2]) / 2.0, 0.0)]
}

fn embed_model(m: &ModelChannel<f64>) -> LogicalChannel<f64> {
    let cm = m.coefficient_matrix();
    let mut coeffs = vec![c(0.0, 0.0); 16];
    for (a, la) in [(0, 0), (1, 3)] {
        for (b, lb) in [(0, 0), (1, 3)] {
            coeffs[la * 4 + lb] = cm[a][b];
        }
    }
    LogicalChannel::from_coeffs(1, coeffs).unwrap()
}

proptest! {
    #[test]
    fn p_theta_round_trip(p in 0.0f64..0.5, th in -0.78f64..0.78) {
        let m = ModelChannel::from_p_theta(p, th).unwrap();
        let (p2, t2) = m.to_p_theta();
        prop_assert!((p - p2).abs() < 1e-9);
        prop_assert!((th - t2).abs() < 1e-9 || p > 0.4999);
        prop_assert!(ModelChannel::new(m.x, m.y).is_ok());
    }

    #[test]
    fn model_channel_is_rotation_then_dephasing(p in 0.0f64..1.0, th in -3.2f64..3.2, seed in any::<u64>()) {
        let m = ModelChannel::from_p_theta(p, th).unwrap();
        let rho = random_state(seed);
        let u = UnitaryNoise::z_axis(th).matrix();
        let u: Vec<C> = u.iter().flatten().copied().collect();
        let zu = matmul(&pauli(3), &u, 2);
        let want: Vec<C> = conjugate(&u, &rho).iter().zip(conjugate(&zu, &rho)).map(|(a, b)| a * (1.0 - p) + b * p).collect();
        prop_assert!(max_dev(&embed_model(&m).apply(&rho), &want) < 1e-14);
        prop_assert!((m.diamond() - m.x.hypot(m.y)).abs() < 1e-15);
    }

    #[test]
    fn unitary_noise_matches_exponential(th in -3.2f64..3.2, seed in any::<u64>()) {
        let mut r = rng(seed);
        let axis = random_axis(&mut r);
        let u = UnitaryNoise::new(th, axis).unwrap();
        let m: Vec<C> = u.matrix().iter().flatten().copied().collect();
        let mut want = vec![c(0.0, 0.0); 4];
        for (i, w) in want.iter_mut().enumerate() {
            *w = pauli(0)[i] * th.cos();
            for a in 0..3 {
                *w += pauli(a + 1)[i] * c(0.0, -th.sin() * axis[a]);
            }
        }
        prop_assert!(max_dev(&m, &want) < 1e-14);
        prop_assert!(max_dev(&matmul(&m, &dagger(&m), 2), &pauli(0)) < 1e-14);
        let cm = u.coefficient_matrix();
        let coeffs: Vec<C> = cm.iter().flatten().copied().collect();
        let ch = LogicalChannel::from_coeffs(1, coeffs).unwrap();
        let rho = random_state(seed ^ 1);
        prop_assert!(max_dev(&ch.apply(&rho), &conjugate(&m, &rho)) < 1e-14);
    }

    #[test]
    fn z_unitary_is_pure_model(th in -3.2f64..3.2) {
        let a = ModelChannel::unitary(th);
        let b = ModelChannel::from_p_theta(0.0, th).unwrap();
        prop_assert!((a.x - b.x).abs() < 1e-15 && (a.y - b.y).abs() < 1e-15);
        prop_assert!((a.y * a.y - a.x * (1.0 - a.x)).abs() < 1e-15);
        let u = UnitaryNoise::z_axis(th);
        let cm = u.coefficient_matrix();
        let mm = a.coefficient_matrix();
        prop_assert!((cm[3][0] - mm[1][0]).norm() < 1e-15 && (cm[0][3] - mm[0][1]).norm() < 1e-15);
    }
}

#[test]
fn spherical_axis() {
    let u = UnitaryNoise::from_spherical(0.2, 0.0, 1.0);
    assert!(u.is_z_axis());
    let v = UnitaryNoise::from_spherical(0.2, std::f64::consts::FRAC_PI_2, 0.0);
    assert!((v.axis[0] - 1.0f64).abs() < 1e-15);
    assert!((v.diamond() - 0.2f64.sin()).abs() < 1e-15);
}

#[test]
fn exact_cp_boundary() {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    assert!(ModelChannelQ::new(q(1, 2), q(1, 2)).is_ok());
    assert!(ModelChannelQ::new(q(1, 2), q(1, 2)).unwrap().is_unitary());
    assert!(matches!(ModelChannelQ::new(q(1, 2), q(501, 1000)), Err(Error::InvalidNoise(_))));
    assert!(matches!(ModelChannelQ::new(q(-1, 1000), q(0, 1)), Err(Error::InvalidNoise(_))));
    assert_eq!(ModelChannelQ::new(q(1, 3), q(1, 5)).unwrap().pta().y, q(0, 1));
}

#[test]
fn invalid_parameters() {
    assert!(ModelChannel::from_p_theta(1.5, 0.1).is_err());
    assert!(ModelChannel::from_p_theta(f64::NAN, 0.1).is_err());
    assert!(ModelChannel::new(0.5, 0.6).is_err());
    assert!(ModelChannel::new(1.2, 0.0).is_err());
    assert!(UnitaryNoise::new(0.1, [0.0, 0.0, 0.0]).is_err());
    assert!(UnitaryNoise::new(f64::INFINITY, [0.0, 0.0, 1.0]).is_err());
    assert!(ModelChannel::<f32>::new(0.25, 0.433).is_ok());
}

#[test]
fn noise_spec_broadcast() {
    let u = UnitaryNoise::z_axis(0.1);
    let spec = NoiseSpec::uniform_unitary(u);
    assert_eq!(spec.unitaries(4).unwrap(), vec![u; 4]);
    assert!(spec.models(4).is_err());
    assert!(spec.is_uniform());
    let list = NoiseSpec::Unitary(vec![u, UnitaryNoise::z_axis(0.3), u]);
    assert!(!list.is_uniform());
    assert!(matches!(list.unitaries(4), Err(Error::InvalidNoise(_))));
    assert!((list.max_diamond() - 0.3f64.sin()).abs() < 1e-15);
    let m = NoiseSpec::uniform_model(ModelChannel::from_p_theta(0.1f64, 0.0).unwrap());
    assert_eq!(m.models(3).unwrap().len(), 3);
    assert!((m.max_diamond() - 0.1).abs() < 1e-15);
}
