//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use spinorq::experiment::{error_correction_sweep, ExperimentConfig};
use spinorq::linalg::{c, Mat2, ONE, ZERO};
use spinorq::relativistic::*;
use spinorq::teleport::*;
use spinorq::tetrad::*;
use spinorq::{sample, Complex64, Sl2c, Spinor};

/// Helicity entropies of the reference packet at rapidities 0, 0.5, 1, 2,
/// recorded on the first run.
const HELICITY_REFERENCE: [f64; 4] = [0.0, 0.05323440980760547, 0.1461811376845187, 0.2983229099892611];

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn teleportation_fidelity() -> Verdict {
    let start = Instant::now();
    let mut rng = sample::rng(1001);
    let qubits: Vec<Qubit> = (0..1000).map(|_| sample::qubit(&mut rng)).collect();
    let frames: Vec<_> = (0..100).map(|_| sample::frame(&mut rng)).collect();
    let mut worst: f64 = 0.0;
    for frame in &frames {
        for q in &qubits {
            for f in [Formalism::Hilbert, Formalism::Spacetime, Formalism::TwoSpinor] {
                let run = teleport(q, f, frame).unwrap();
                worst = worst
                    .max(run.proportionality_residual())
                    .max((run.assembled_scalar - c(expected_scalar(f), 0.0)).norm());
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-12 && elapsed < Duration::from_secs(10),
        format!("max residual {worst:.2e}, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn metric_triple_equality() -> Verdict {
    let mut rng = sample::rng(1002);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let frame = sample::frame(&mut rng);
        let gm = metric_from_minkowski(&minkowski_tetrad(&frame).unwrap()).unwrap();
        let gn = metric_from_null(&null_tetrad(&frame).unwrap()).unwrap();
        let ge = metric_from_epsilon(&frame).unwrap();
        worst = worst.max(gm.max_abs_diff(&gn)).max(gm.max_abs_diff(&ge)).max(gn.max_abs_diff(&ge));
    }
    verdict(worst <= 1e-12, format!("max elementwise difference {worst:.2e}"))
}

fn tetrad_gram() -> Verdict {
    let mut rng = sample::rng(1003);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let frame = sample::frame(&mut rng);
        worst = worst
            .max(minkowski_tetrad(&frame).unwrap().orthonormality_defect())
            .max(null_tetrad(&frame).unwrap().gram_defect());
    }
    verdict(worst <= 1e-12, format!("max Gram defect {worst:.2e}"))
}

fn spin_frame_contract() -> Verdict {
    let mut rng = sample::rng(1004);
    let (mut norm, mut decomp): (f64, f64) = (0.0, 0.0);
    for i in 0..1000 {
        let p = sample::momentum(&mut rng, [0.0, 0.1, 1.0, 10.0][i % 4]);
        let nu = sample::spinor(&mut rng);
        let f = spin_frame_from_nu(&nu, &p).unwrap();
        norm = norm.max(f.normalization_defect());
        decomp = decomp.max(f.decomposition_residual());
    }
    verdict(
        norm <= 1e-10 && decomp <= 1e-10,
        format!("normalization {norm:.2e}, decomposition {decomp:.2e}"),
    )
}

fn pauli_lubanski_spectrum() -> Verdict {
    let mut rng = sample::rng(1005);
    let (mut spectrum, mut vecs): (f64, f64) = (0.0, 0.0);
    let target = [c(-0.5, 0.0), c(0.5, 0.0)];
    for i in 0..1000 {
        let p = sample::momentum(&mut rng, [0.0, 0.1, 1.0, 10.0][i % 4]);
        let f = spin_frame_from_nu(&sample::spinor(&mut rng), &p).unwrap();
        let (w, wp) = pauli_lubanski(&f);
        for m in [w, wp] {
            let ev = m.eigenvalues();
            spectrum = spectrum.max((ev[0] - target[0]).norm()).max((ev[1] - target[1]).norm());
        }
        vecs = vecs.max(pauli_lubanski_eigen_residual(&f));
    }
    verdict(
        spectrum <= 1e-12 && vecs <= 1e-12,
        format!("eigenvalues {spectrum:.2e}, eigenvectors {vecs:.2e}"),
    )
}

fn wigner_matrix_properties() -> Verdict {
    let mut rng = sample::rng(1006);
    let (mut unit, mut diag, mut cocycle): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..1000 {
        let mass = [0.0, 0.1, 1.0, 10.0][i % 4];
        let p = sample::momentum(&mut rng, mass);
        let l = sample::sl2c(&mut rng);
        let l2 = sample::sl2c(&mut rng);
        let nu = sample::spinor(&mut rng);
        for family in [FrameFamily::Pnd { nu }, FrameFamily::Helicity] {
            let w = wigner_matrix_in(&family, &l, &p).unwrap();
            unit = unit.max(w.unitarity_defect()).max(w.det_defect());
            if mass == 0.0 {
                diag = diag.max(w.off_diagonal()).max(w.diagonal_modulus_defect());
            }
            let whole = wigner_matrix_in(&family, &(l2 * l), &p).unwrap();
            let outer = wigner_matrix_in(&family, &l2, &p).unwrap();
            let inner = wigner_matrix_in(&family, &l, &p.transformed(&l2.inverse()).unwrap()).unwrap();
            cocycle = cocycle.max(whole.0.max_abs_diff(&(outer.0 * inner.0)));
        }
    }
    verdict(
        unit <= 1e-12 && diag <= 1e-12 && cocycle <= 1e-10,
        format!("unitarity/det {unit:.2e}, massless off-diagonal {diag:.2e}, cocycle {cocycle:.2e}"),
    )
}

fn pnd_phase_constancy() -> Verdict {
    let mut rng = sample::rng(1007);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (l, nu) = sample::with_eigen_spinor(&mut rng);
        let momenta: Vec<_> = (0..100).map(|i| sample::momentum(&mut rng, [0.0, 0.1, 1.0, 10.0][i % 4])).collect();
        let r = pnd_phase(&l, &nu, &momenta).unwrap();
        worst = worst.max(r.phase_spread).max(r.max_matrix_deviation);
    }
    let nu = Spinor::upper(ONE, ZERO);
    let probe = [
        FourMomentum::on_shell(1.0, [0.3, -0.4, 0.2]).unwrap(),
        FourMomentum::on_shell(0.0, [1.0, 0.5, 0.0]).unwrap(),
    ];
    let mut analytic: f64 = 0.0;
    for eta in [0.5, 1.0, 2.0] {
        analytic = analytic.max(pnd_phase(&Sl2c::boost([0.0, 0.0, 1.0], eta), &nu, &probe).unwrap().phase.abs());
    }
    for theta in [0.4, 1.3, 2.9] {
        let l = Sl2c::new(Mat2::diag(
            Complex64::from_polar(1.0, theta / 2.0),
            Complex64::from_polar(1.0, -theta / 2.0),
        ))
        .unwrap();
        analytic = analytic.max((pnd_phase(&l, &nu, &probe).unwrap().phase - theta / 2.0).abs());
    }
    verdict(
        worst <= 1e-10 && analytic <= 1e-12,
        format!("phase spread/deviation {worst:.2e}, analytic phases {analytic:.2e}"),
    )
}

fn depolarization() -> Verdict {
    let start = Instant::now();
    let cfg = ExperimentConfig::default();
    let report = error_correction_sweep(&cfg).unwrap();
    let elapsed = start.elapsed();
    let hel = report.entropies("helicity");
    let pnd = report.entropies("pnd");
    let increasing = hel.windows(2).all(|w| w[1] > w[0]);
    let starts_at_zero = hel[0].abs() <= 1e-12;
    let regression = hel.iter().zip(HELICITY_REFERENCE).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let passed = cfg.grid_size == 64
        && cfg.rapidities == [0.0, 0.5, 1.0, 2.0]
        && increasing
        && starts_at_zero
        && hel[3] > 0.01
        && regression <= 1e-6
        && report.pnd_entropy_spread <= 1e-10
        && pnd.len() == 4
        && elapsed < Duration::from_secs(30);
    verdict(
        passed,
        format!(
            "helicity {:?}, pnd spread {:.2e}, regression drift {regression:.2e}, {:.3} s",
            hel.iter().map(|s| format!("{s:.6}")).collect::<Vec<_>>(),
            report.pnd_entropy_spread,
            elapsed.as_secs_f64()
        ),
    )
}

fn null_negative_result() -> Verdict {
    let mut rng = sample::rng(1009);
    let trials = 1000;
    let mut failing = 0;
    for _ in 0..trials {
        let q = sample::qubit(&mut rng);
        let frame = sample::frame(&mut rng);
        let branches = null_branches(&q, &frame).unwrap();
        failing += usize::from(!common_proportionality(&branches, PROPORTIONALITY_TOL));
    }
    let fraction = failing as f64 / trials as f64;
    verdict(fraction >= 0.99, format!("{:.1}% of inputs not proportional", 100.0 * fraction))
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_spinorq");
    let run = || Command::new(bin).args(["verify", "--seed", "42"]).output().expect("binary runs");
    let (a, b) = (run(), run());
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    verdict(
        identical && a.status.success() && b.status.success(),
        format!("{} bytes, identical: {identical}, exit {:?}", a.stdout.len(), a.status.code()),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        ("teleportation fidelity", teleportation_fidelity),
        ("metric triple equality", metric_triple_equality),
        ("tetrad Gram matrices", tetrad_gram),
        ("spin-frame contract", spin_frame_contract),
        ("Pauli-Lubanski spectrum", pauli_lubanski_spectrum),
        ("Wigner matrix", wigner_matrix_properties),
        ("PND phase constancy", pnd_phase_constancy),
        ("depolarization demonstration", depolarization),
        ("null-basis negative result", null_negative_result),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {:2} {tag} {name}: {}", i + 1, v.detail);
        failures += usize::from(!v.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
