#![allow(clippy::needless_range_loop)]

use spinorq::linalg::{c, pauli, vec_max_abs_diff, Mat2, I, ONE, ZERO};
use spinorq::spinor::*;
use spinorq::tetrad::*;
use spinorq::{sample, Error};

/// `u.v` by polarization of `det V = (v0^2 - |v|^2) / 2`.
fn det_form(u: &WorldVector, v: &WorldVector) -> f64 {
    let sum = WorldVector(std::array::from_fn(|k| u.0[k] + v.0[k]));
    (sum.to_matrix().det() - u.to_matrix().det() - v.to_matrix().det()).re
}

#[test]
fn hermitian_matrix_layout() {
    let v = WorldVector::new(1.0, 2.0, 3.0, 4.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let expected = Mat2::new(c(5.0 * r, 0.0), c(2.0 * r, -3.0 * r), c(2.0 * r, 3.0 * r), c(-3.0 * r, 0.0));
    assert!(v.to_matrix().max_abs_diff(&expected) < 1e-15);
    assert!((v.to_matrix().det().re - 0.5 * (1.0 - 4.0 - 9.0 - 16.0)).abs() < 1e-14);
}

#[test]
fn all_metric_constructions_agree_with_determinant_form() {
    let mut rng = sample::rng(1);
    for _ in 0..50 {
        let frame = sample::frame(&mut rng);
        let metrics = [
            metric_from_minkowski(&minkowski_tetrad(&frame).unwrap()).unwrap(),
            metric_from_null(&null_tetrad(&frame).unwrap()).unwrap(),
            metric_from_epsilon(&frame).unwrap(),
        ];
        let u = WorldVector(std::array::from_fn(|k| [0.3, -1.2, 0.8, 2.0][k]));
        let v = WorldVector(std::array::from_fn(|k| [1.1, 0.4, -0.6, 0.2][k]));
        for g in &metrics {
            assert!(g.max_abs_diff(&MetricTensor::minkowski()) < 1e-12);
            assert!((g.eval(&u, &v) - det_form(&u, &v)).abs() < 1e-12);
            assert_eq!(g.signature(), (1, 3));
        }
    }
}

/// Explicit 4x4 boost along z and rotation about z.
#[test]
fn sl2c_matches_explicit_lorentz_matrices() {
    let v = WorldVector::new(1.5, 0.3, -0.7, 0.2);
    let eta: f64 = 0.8;
    let b = Sl2c::boost([0.0, 0.0, 1.0], eta).apply_world(&v);
    let expected = [
        eta.cosh() * v.0[0] + eta.sinh() * v.0[3],
        v.0[1],
        v.0[2],
        eta.sinh() * v.0[0] + eta.cosh() * v.0[3],
    ];
    assert!(b.max_abs_diff(&WorldVector(expected)) < 1e-14);

    let theta: f64 = 0.6;
    let r = Sl2c::rotation([0.0, 0.0, 1.0], theta).apply_world(&v);
    let expected = [
        v.0[0],
        theta.cos() * v.0[1] - theta.sin() * v.0[2],
        theta.sin() * v.0[1] + theta.cos() * v.0[2],
        v.0[3],
    ];
    assert!(r.max_abs_diff(&WorldVector(expected)) < 1e-14);
}

#[test]
fn standard_frame_tetrad_values() {
    let tet = minkowski_tetrad(&SpinFrame::standard()).unwrap();
    assert!(tet.t.max_abs_diff(&WorldVector::new(1.0, 0.0, 0.0, 0.0)) < 1e-15);
    assert!(tet.x.max_abs_diff(&WorldVector::new(0.0, 1.0, 0.0, 0.0)) < 1e-15);
    assert!(tet.y.max_abs_diff(&WorldVector::new(0.0, 0.0, -1.0, 0.0)) < 1e-15);
    assert!(tet.z.max_abs_diff(&WorldVector::new(0.0, 0.0, 0.0, 1.0)) < 1e-15);
    let null = null_tetrad(&SpinFrame::standard()).unwrap();
    assert_eq!(null.m, Mat2::new(ZERO, ONE, ZERO, ZERO));
    assert!(null.l_vector().unwrap().max_abs_diff(&WorldVector::new(0.5f64.sqrt(), 0.0, 0.0, 0.5f64.sqrt())) < 1e-15);
}

#[test]
fn gram_matrices_on_random_frames() {
    let mut rng = sample::rng(2);
    let pattern = null_gram_pattern();
    for _ in 0..50 {
        let frame = sample::frame(&mut rng);
        let tet = minkowski_tetrad(&frame).unwrap();
        let g = tet.gram();
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { [1.0, -1.0, -1.0, -1.0][i] } else { 0.0 };
                assert!((g[i][j] - e).abs() < 1e-12);
            }
        }
        let ng = null_tetrad(&frame).unwrap().gram();
        for i in 0..4 {
            for j in 0..4 {
                assert!((ng[i][j] - c(pattern[i][j], 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn contraction_reference_value() {
    // (1, 2)_A (3, 4)^A with phi_A = (-phi^1, phi^0)
    let phi = Spinor::upper(c(1.0, 0.0), c(2.0, 0.0)).lower().unwrap();
    let psi = Spinor::upper(c(3.0, 0.0), c(4.0, 0.0));
    assert_eq!(phi.contract(&psi).unwrap(), c(-2.0, 0.0));
    assert!(matches!(psi.contract(&psi), Err(Error::Variance { .. })));
}

#[test]
fn epsilon_is_the_frame_bivector() {
    let mut rng = sample::rng(8);
    for _ in 0..20 {
        let frame = sample::frame(&mut rng);
        assert!(epsilon_upper(&frame).unwrap().max_abs_diff(&epsilon()) < 1e-12);
    }
}

#[test]
fn infeld_van_der_waerden_symbols_are_orthogonal() {
    // tr(sigma_mu sigma_nu) = 2 delta
    let s = [Mat2::identity(), pauli(1), pauli(2), pauli(3)];
    for i in 0..4 {
        for j in 0..4 {
            let t = (s[i] * s[j]).trace();
            assert!((t - c(if i == j { 2.0 } else { 0.0 }, 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn antisymmetry_identity_for_random_vectors() {
    let mut rng = sample::rng(13);
    for _ in 0..50 {
        let f = WorldVector(std::array::from_fn(|_| 2.0 * sample::complex(&mut rng).re));
        let phi = sample::spinor(&mut rng);
        assert!(antisymmetry_identity_check(&f, &phi).unwrap() < 1e-12);
    }
}

#[test]
fn transformed_spinors_keep_contractions() {
    let l = Sl2c::boost([0.0, 1.0, 0.0], 0.7) * Sl2c::rotation([1.0, 1.0, 0.0], 1.2);
    let (a, b) = ([c(0.1, 0.2), I], [c(-1.0, 0.5), c(0.3, 0.0)]);
    let la = l.matrix().apply(a);
    let lb = l.matrix().apply(b);
    assert!((bracket(la, lb) - bracket(a, b)).norm() < 1e-14);
    assert!(vec_max_abs_diff(raise_components(lower_components(a)), a) == 0.0);
}
