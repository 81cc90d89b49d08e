use proptest::prelude::*;

use spinorq::experiment::{build_packet, boost_packet, entropy, reduce, ExperimentConfig, ReducedDensityMatrix};
use spinorq::linalg::{c, vec_norm, Mat2};
use spinorq::relativistic::*;
use spinorq::spinor::*;
use spinorq::teleport::{expected_scalar, teleport, Formalism, Qubit};
use spinorq::tetrad::*;
use spinorq::{Complex64, Error};

fn cplx() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| c(a, b))
}

fn spinor2() -> impl Strategy<Value = [Complex64; 2]> {
    [cplx(), cplx()].prop_filter("non-zero", |v| vec_norm(*v) > 1e-2)
}

fn sl2c() -> impl Strategy<Value = Sl2c> {
    [cplx(), cplx(), cplx(), cplx()]
        .prop_filter_map("well conditioned", |[a, b, cc, d]| {
            let m = Mat2::new(a, b, cc, d);
            if m.det().norm() < 0.1 {
                return None;
            }
            Sl2c::normalized(m).ok().filter(|l| l.matrix().max_abs() < 4.0)
        })
}

fn frame() -> impl Strategy<Value = SpinFrame> {
    sl2c().prop_map(|l| SpinFrame::standard().transformed(&l).unwrap())
}

fn world() -> impl Strategy<Value = WorldVector> {
    [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64].prop_map(WorldVector)
}

fn momentum() -> impl Strategy<Value = FourMomentum> {
    (prop_oneof![Just(0.0), Just(0.1), Just(1.0), Just(10.0)], [-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64])
        .prop_filter_map("non-zero null momentum", |(m, k)| {
            if m == 0.0 && k.iter().map(|x| x * x).sum::<f64>() < 1e-2 {
                return None;
            }
            FourMomentum::on_shell(m, k).ok()
        })
}

/// Frames from a reference spinor, skipping the measure-zero degenerate set.
fn pnd_frame() -> impl Strategy<Value = (Spinor, MomentumSpinFrame)> {
    (spinor2(), momentum()).prop_filter_map("non-degenerate", |(nu, p)| {
        let nu = Spinor::upper(nu[0], nu[1]);
        spin_frame_from_nu(&nu, &p).ok().map(|f| (nu, f))
    })
}

proptest! {
    #[test]
    fn lowering_round_trips(v in spinor2()) {
        prop_assert_eq!(raise_components(lower_components(v)), v);
        prop_assert_eq!(lower_components(raise_components(v)), v);
    }

    #[test]
    fn bracket_is_antisymmetric_and_invariant(a in spinor2(), b in spinor2(), l in sl2c()) {
        prop_assert!((bracket(a, b) + bracket(b, a)).norm() == 0.0);
        prop_assert!(bracket(a, a).norm() == 0.0);
        let (la, lb) = (l.matrix().apply(a), l.matrix().apply(b));
        prop_assert!((bracket(la, lb) - bracket(a, b)).norm() < 1e-12);
    }

    #[test]
    fn world_vectors_round_trip(v in world()) {
        let back = WorldVector::from_matrix(&v.to_matrix()).unwrap();
        prop_assert!(back.max_abs_diff(&v) < 1e-14 * 4.0);
    }

    #[test]
    fn lorentz_transformations_preserve_the_metric(u in world(), v in world(), l in sl2c()) {
        let (lu, lv) = (l.apply_world(&u), l.apply_world(&v));
        let scale = 1.0 + lu.0.iter().chain(&lv.0).fold(0.0f64, |a, x| a.max(x.abs())).powi(2);
        prop_assert!((minkowski_dot(&lu, &lv) - minkowski_dot(&u, &v)).abs() < 1e-12 * scale);
    }

    #[test]
    fn frames_stay_normalized(f in frame(), l in sl2c()) {
        prop_assert!(f.normalization_defect() < 1e-12);
        let g = f.transformed(&l).unwrap();
        prop_assert!(g.normalization_defect() < 1e-10);
        prop_assert!(epsilon_upper(&f).unwrap().max_abs_diff(&epsilon()) < 1e-12);
    }

    #[test]
    fn tetrads_are_orthonormal(f in frame()) {
        prop_assert!(minkowski_tetrad(&f).unwrap().orthonormality_defect() < 1e-12);
        let null = null_tetrad(&f).unwrap();
        prop_assert!(null.gram_defect() < 1e-12);
        prop_assert!(null.conjugation_defect() < 1e-12);
    }

    #[test]
    fn three_metric_constructions_agree(f in frame()) {
        let gm = metric_from_minkowski(&minkowski_tetrad(&f).unwrap()).unwrap();
        let gn = metric_from_null(&null_tetrad(&f).unwrap()).unwrap();
        let ge = metric_from_epsilon(&f).unwrap();
        prop_assert!(gm.max_abs_diff(&gn) < 1e-12);
        prop_assert!(gm.max_abs_diff(&ge) < 1e-12);
        prop_assert!(gm.max_abs_diff(&MetricTensor::minkowski()) < 1e-12);
    }

    #[test]
    fn antisymmetry_identity_holds(v in world(), phi in spinor2()) {
        prop_assert!(antisymmetry_identity_check(&v, &Spinor::upper(phi[0], phi[1])).unwrap() < 1e-12);
    }

    #[test]
    fn teleportation_is_faithful(phi in spinor2(), f in frame()) {
        let q = Qubit::new(phi[0], phi[1]).unwrap();
        for formalism in [Formalism::Hilbert, Formalism::Spacetime, Formalism::TwoSpinor] {
            let run = teleport(&q, formalism, &f).unwrap();
            prop_assert!(run.proportionality_residual() < 1e-12);
            prop_assert!((run.assembled_scalar - c(expected_scalar(formalism), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn spin_frames_decompose_momentum((_nu, f) in pnd_frame()) {
        prop_assert!(f.normalization_defect() < 1e-10);
        prop_assert!(f.decomposition_residual() < 1e-10);
        prop_assert!(pauli_lubanski_eigen_residual(&f) < 1e-12);
    }

    #[test]
    fn helicity_frames_decompose_momentum(p in momentum()) {
        let f = helicity_frame(&p).unwrap();
        prop_assert!(f.normalization_defect() < 1e-10);
        prop_assert!(f.decomposition_residual() < 1e-10);
    }

    #[test]
    fn wigner_matrices_are_su2((nu, f) in pnd_frame(), l in sl2c(), l2 in sl2c()) {
        let p = f.momentum;
        let fam = FrameFamily::Pnd { nu };
        let w = wigner_matrix_in(&fam, &l, &p);
        prop_assume!(w.is_ok());
        let w = w.unwrap();
        prop_assert!(w.unitarity_defect() < 1e-12);
        prop_assert!(w.det_defect() < 1e-12);
        if p.mass == 0.0 {
            prop_assert!(w.is_diagonal(1e-12));
        }
        let q = p.transformed(&l2.inverse()).unwrap();
        if let (Ok(whole), Ok(outer), Ok(inner)) = (
            wigner_matrix_in(&fam, &(l2 * l), &p),
            wigner_matrix_in(&fam, &l2, &p),
            wigner_matrix_in(&fam, &l, &q),
        ) {
            prop_assert!(whole.0.max_abs_diff(&(outer.0 * inner.0)) < 1e-10);
        }
    }

    #[test]
    fn pnd_phase_is_momentum_independent(
        s in sl2c(),
        modulus in 0.3..3.0f64,
        arg in -3.0..3.0f64,
        ps in proptest::collection::vec(momentum(), 1..8),
    ) {
        let lambda = Complex64::from_polar(modulus, arg);
        let l = s * Sl2c::new(Mat2::diag(lambda, lambda.inv())).unwrap() * s.inverse();
        let v = s.matrix().apply([c(1.0, 0.0), c(0.0, 0.0)]);
        let nu = Spinor::upper(v[0], v[1]);
        match pnd_phase(&l, &nu, &ps) {
            Ok(r) => {
                prop_assert!((r.phase - arg).abs() < 1e-10);
                prop_assert!(r.max_matrix_deviation < 1e-10);
                prop_assert!(r.phase_spread < 1e-10);
            }
            Err(e) => prop_assert!(matches!(e, Error::DegenerateDirection(_)), "{e}"),
        }
    }

    #[test]
    fn dirac_basis_is_consistent(p in momentum(), l in sl2c()) {
        prop_assert!(dirac_basis_consistency(&FrameFamily::Helicity, &l, &p).unwrap() < 1e-10);
    }

    #[test]
    fn entropy_is_bounded(a in [cplx(), cplx(), cplx(), cplx()]) {
        let m = Mat2::new(a[0], a[1], a[2], a[3]);
        let rho = m * m.adjoint();
        let tr = rho.trace().re;
        prop_assume!(tr > 1e-6);
        let rho = rho * (1.0 / tr);
        let rho = ReducedDensityMatrix::new((rho + rho.adjoint()) * 0.5).unwrap();
        let s = entropy(&rho);
        prop_assert!((0.0..=1.0).contains(&s));
        let [lo, hi] = rho.eigenvalues();
        prop_assert!(lo >= -1e-12 && hi <= 1.0 + 1e-12);
    }

    #[test]
    fn boosts_conserve_packet_norm(l in sl2c(), spread in 0.1..2.0f64) {
        let cfg = ExperimentConfig { spread, grid_size: 9, ..Default::default() };
        let packet = build_packet(&cfg).unwrap();
        let moved = boost_packet(&packet, &l, &FrameFamily::Helicity).unwrap();
        prop_assert!((moved.total_norm() - 1.0).abs() < 1e-12);
        let s = entropy(&reduce(&moved).unwrap());
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn single_point_packets_stay_pure(l in sl2c(), pol in spinor2()) {
        let cfg = ExperimentConfig { grid_size: 1, polarization: pol, ..Default::default() };
        let packet = build_packet(&cfg).unwrap();
        for basis in [FrameFamily::Helicity, FrameFamily::Pnd { nu: Spinor::upper(c(1.0, 0.0), c(0.0, 0.0)) }] {
            let moved = boost_packet(&packet, &l, &basis).unwrap();
            prop_assert!(entropy(&reduce(&moved).unwrap()) < 1e-9);
        }
    }
}
