//! Seeded identity suite over every module. Each named check records the
//! largest residual seen across the trials against its tolerance; the report
//! is a pure function of the options.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiment::{error_correction_sweep, ExperimentConfig};
use crate::linalg::{c, vec_max_abs_diff, vec_norm, Mat2};
use crate::relativistic::{
    dirac_basis_consistency, frame_covariance_check, pauli_lubanski, pauli_lubanski_eigen_residual,
    pnd_phase, w_diagonal_check, wigner_matrix_in, FrameFamily,
};
use crate::sample;
use crate::spinor::{
    bracket, epsilon, epsilon_upper, lower_components, raise_components, minkowski_dot, Spinor,
    WorldVector,
};
use crate::teleport::{
    common_proportionality, expected_scalar, null_branches, reconstruction_residual,
    spacetime_direct, spacetime_full, teleport, tele2_residual, twospinor_concise,
    twospinor_teleport, bell_metric_residual, bell_tetrad, Formalism, PROPORTIONALITY_TOL,
};
use crate::tetrad::{
    antisymmetry_identity_check, metric_from_minkowski, metric_from_null, epsilon_product_metric,
    minkowski_tetrad, null_tetrad, Leg,
};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Test hook: use `eps_{AB} = -eps^{AB}` as the reference epsilon.
    pub corrupt_epsilon: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 42, trials: 100, corrupt_epsilon: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// `None` when a computation failed; see `error`.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub corrupt_epsilon: bool,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn record(&mut self, name: &str, tolerance: f64, value: Result<f64>) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckResult {
                    name: name.to_string(),
                    max_residual: Some(0.0),
                    tolerance,
                    passed: true,
                    error: None,
                });
                self.checks.len() - 1
            }
        };
        let check = &mut self.checks[idx];
        match value {
            Ok(r) => {
                if let Some(m) = check.max_residual.as_mut() {
                    if r.is_nan() || r > *m {
                        *m = r;
                    }
                    check.passed = m.is_finite() && *m <= tolerance;
                    if !m.is_finite() {
                        check.max_residual = None;
                        check.error.get_or_insert_with(|| "non-finite residual".into());
                    }
                }
            }
            Err(e) => {
                check.max_residual = None;
                check.passed = false;
                check.error.get_or_insert_with(|| e.to_string());
            }
        }
    }
}

fn world<R: Rng>(rng: &mut R) -> WorldVector {
    WorldVector(std::array::from_fn(|_| rng.random_range(-2.0..2.0)))
}

const MASSES: [f64; 4] = [0.0, 0.1, 1.0, 10.0];

pub fn run(options: &VerifyOptions) -> VerifyReport {
    let mut rng = sample::rng(options.seed);
    let mut rec = Recorder::default();
    let eps = if options.corrupt_epsilon { epsilon().transpose() } else { epsilon() };
    let trials = options.trials.max(1);

    for _ in 0..trials {
        let phi = sample::spinor(&mut rng).components();
        let psi = sample::spinor(&mut rng).components();
        let l = sample::sl2c(&mut rng);
        let frame = sample::frame(&mut rng);

        rec.record(
            "spinor.lower_raise_round_trip",
            tol::ROUND_TRIP,
            Ok(vec_max_abs_diff(raise_components(lower_components(phi)), phi)),
        );
        rec.record(
            "spinor.bracket_antisymmetry",
            tol::ROUND_TRIP,
            Ok((bracket(phi, psi) + bracket(psi, phi)).norm()),
        );
        rec.record(
            "spinor.bracket_is_epsilon_form",
            tol::CONSTRUCTION,
            Ok((bracket(phi, psi) - eps.apply_left(phi)[0] * psi[0] - eps.apply_left(phi)[1] * psi[1]).norm()),
        );
        rec.record(
            "spinor.epsilon_frame_independent",
            tol::CONSTRUCTION,
            epsilon_upper(&frame).map(|e| e.max_abs_diff(&eps)),
        );
        let lphi = l.matrix().apply(phi);
        let lpsi = l.matrix().apply(psi);
        rec.record(
            "spinor.sl2c_invariance",
            tol::CONSTRUCTION,
            Ok((bracket(lphi, lpsi) - bracket(phi, psi)).norm()),
        );

        let v = world(&mut rng);
        let w = world(&mut rng);
        rec.record(
            "world.matrix_round_trip",
            tol::CONSTRUCTION,
            WorldVector::from_matrix(&v.to_matrix()).map(|back| back.max_abs_diff(&v)),
        );
        let (lv, lw) = (l.apply_world(&v), l.apply_world(&w));
        let scale = 1.0 + lv.0.iter().chain(&lw.0).fold(0.0f64, |a, x| a.max(x.abs())).powi(2);
        rec.record(
            "world.lorentz_invariance",
            tol::CONSTRUCTION,
            Ok((minkowski_dot(&lv, &lw) - minkowski_dot(&v, &w)).abs() / scale),
        );

        rec.record(
            "tetrad.minkowski_gram",
            tol::CONSTRUCTION,
            minkowski_tetrad(&frame).map(|t| t.orthonormality_defect()),
        );
        rec.record("tetrad.null_gram", tol::CONSTRUCTION, null_tetrad(&frame).map(|t| t.gram_defect()));
        let triple = (|| {
            let gm = metric_from_minkowski(&minkowski_tetrad(&frame)?)?;
            let gn = metric_from_null(&null_tetrad(&frame)?)?;
            let ge = epsilon_product_metric(&eps, &eps.conj())?;
            Ok(gm.max_abs_diff(&gn).max(gm.max_abs_diff(&ge)))
        })();
        rec.record("tetrad.metric_triple_equality", tol::CONSTRUCTION, triple);
        rec.record(
            "tetrad.antisymmetry_identity",
            tol::CHAINED,
            antisymmetry_identity_check(&v, &Spinor::upper(phi[0], phi[1])),
        );

        let q = sample::qubit(&mut rng);
        for formalism in [Formalism::Hilbert, Formalism::Spacetime, Formalism::TwoSpinor] {
            let name = match formalism {
                Formalism::Hilbert => "teleport.hilbert",
                Formalism::Spacetime => "teleport.spacetime",
                Formalism::TwoSpinor => "teleport.twospinor",
            };
            rec.record(
                name,
                tol::CONSTRUCTION,
                teleport(&q, formalism, &frame).map(|run| {
                    let target = vec_norm(run.target).max(1.0);
                    let scalar = (run.assembled_scalar - c(expected_scalar(formalism), 0.0)).norm();
                    (run.proportionality_residual() / target).max(scalar)
                }),
            );
        }
        rec.record("teleport.hilbert_reconstruction", tol::CONSTRUCTION, Ok(reconstruction_residual(&q)));
        rec.record(
            "teleport.spacetime_direct_route",
            tol::CONSTRUCTION,
            spacetime_full(&q, &frame)
                .and_then(|a| Ok(a.max_abs_diff(&spacetime_direct(&q, &frame)?))),
        );
        rec.record(
            "teleport.twospinor_concise",
            tol::CONSTRUCTION,
            twospinor_teleport(&q, &frame)
                .and_then(|run| Ok(vec_max_abs_diff(run.assembled, twospinor_concise(&q, &frame)?.components()))),
        );
        let tele2 = Leg::ALL
            .iter()
            .map(|&leg| tele2_residual(&q, &frame, leg))
            .try_fold(0.0f64, |a, r| r.map(|r| a.max(r)));
        rec.record("teleport.branch_identity", tol::CONSTRUCTION, tele2);
        rec.record(
            "teleport.bell_tetrad_metric",
            tol::CONSTRUCTION,
            bell_tetrad(&frame).and_then(|t| bell_metric_residual(&t, &frame)),
        );
    }

    // Null-tetrad analogue: the fraction of inputs whose corrected branches
    // are all parallel must stay below 1%.
    let mut parallel = 0usize;
    let mut null_err = None;
    for _ in 0..trials {
        let q = sample::qubit(&mut rng);
        let frame = sample::frame(&mut rng);
        match null_branches(&q, &frame) {
            Ok(b) => parallel += usize::from(common_proportionality(&b, PROPORTIONALITY_TOL)),
            Err(e) => null_err = Some(e),
        }
    }
    rec.record(
        "teleport.null_branches_parallel_fraction",
        0.01,
        match null_err {
            Some(e) => Err(e),
            None => Ok(parallel as f64 / trials as f64),
        },
    );

    for i in 0..trials {
        let mass = MASSES[i % MASSES.len()];
        let p = sample::momentum(&mut rng, mass);
        let nu = sample::spinor(&mut rng);
        let l = sample::sl2c(&mut rng);
        let l2 = sample::sl2c(&mut rng);
        for family in [FrameFamily::Pnd { nu }, FrameFamily::Helicity] {
            let frame = family.frame_at(&p);
            rec.record(
                "relativistic.spin_frame_normalization",
                tol::CHAINED,
                frame.as_ref().map(|f| f.normalization_defect()).map_err(Clone::clone),
            );
            rec.record(
                "relativistic.spin_frame_decomposition",
                tol::CHAINED,
                frame.as_ref().map(|f| f.decomposition_residual()).map_err(Clone::clone),
            );
            rec.record(
                "relativistic.pauli_lubanski_spectrum",
                tol::CONSTRUCTION,
                frame.as_ref().map(pl_spectrum_residual).map_err(Clone::clone),
            );
            rec.record(
                "relativistic.pauli_lubanski_eigenvectors",
                tol::CONSTRUCTION,
                frame.as_ref().map(pauli_lubanski_eigen_residual).map_err(Clone::clone),
            );
            if mass > 0.0 {
                rec.record(
                    "relativistic.pauli_lubanski_amplitude_basis",
                    tol::CHAINED,
                    frame.as_ref().map(w_diagonal_check).map_err(Clone::clone),
                );
            }
            let wm = wigner_matrix_in(&family, &l, &p);
            rec.record(
                "relativistic.wigner_unitarity",
                tol::CONSTRUCTION,
                wm.as_ref().map(|w| w.unitarity_defect().max(w.det_defect())).map_err(Clone::clone),
            );
            if mass == 0.0 {
                rec.record(
                    "relativistic.wigner_massless_diagonal",
                    tol::CONSTRUCTION,
                    wm.as_ref()
                        .map(|w| w.off_diagonal().max(w.diagonal_modulus_defect()))
                        .map_err(Clone::clone),
                );
            }
            let cocycle = (|| {
                let whole = wigner_matrix_in(&family, &(l2 * l), &p)?;
                let outer = wigner_matrix_in(&family, &l2, &p)?;
                let inner = wigner_matrix_in(&family, &l, &p.transformed(&l2.inverse())?)?;
                Ok(whole.0.max_abs_diff(&(outer.0 * inner.0)))
            })();
            rec.record("relativistic.wigner_cocycle", tol::CHAINED, cocycle);
            rec.record(
                "relativistic.dirac_basis_consistency",
                tol::CHAINED,
                dirac_basis_consistency(&family, &l, &p),
            );
        }
        rec.record("relativistic.frame_covariance", tol::CHAINED, frame_covariance_check(&l, &nu, &p));
    }

    for _ in 0..trials.div_ceil(5) {
        let (l, nu) = sample::with_eigen_spinor(&mut rng);
        let momenta: Vec<_> = (0..5)
            .map(|i| sample::momentum(&mut rng, MASSES[i % MASSES.len()]))
            .collect();
        rec.record(
            "relativistic.pnd_phase_constancy",
            tol::CHAINED,
            pnd_phase(&l, &nu, &momenta).map(|r| r.max_matrix_deviation.max(r.phase_spread)),
        );
    }

    let cfg = ExperimentConfig { grid_size: 16, ..Default::default() };
    let sweep = error_correction_sweep(&cfg);
    rec.record(
        "experiment.pnd_entropy_constancy",
        crate::experiment::PND_CONSTANCY_TOL,
        sweep.as_ref().map(|s| s.pnd_entropy_spread).map_err(Clone::clone),
    );
    rec.record(
        "experiment.entropy_bounds",
        0.0,
        sweep.map(|s| {
            s.rows
                .iter()
                .map(|r| (-r.entropy_bits).max(r.entropy_bits - 1.0).max(0.0))
                .fold(0.0, f64::max)
        }),
    );

    let passed = rec.checks.iter().all(|c| c.passed);
    VerifyReport {
        seed: options.seed,
        trials,
        corrupt_epsilon: options.corrupt_epsilon,
        checks: rec.checks,
        passed,
    }
}

/// Distance of the spectra of `W` and `W'` from `{-1/2, 1/2}`.
fn pl_spectrum_residual(frame: &crate::relativistic::MomentumSpinFrame) -> f64 {
    let (w, wp) = pauli_lubanski(frame);
    let target = [c(-0.5, 0.0), c(0.5, 0.0)];
    let spectrum = |m: &Mat2| {
        let ev = m.eigenvalues();
        vec_max_abs_diff(ev, target)
    };
    spectrum(&w).max(spectrum(&wp))
}
