//! `spinorq`: batch driver for the identity suite, teleportation traces,
//! Wigner matrices and the depolarization sweep.
//!
//! Exit status: 0 when every reported residual is within tolerance, 1 on a
//! tolerance failure, 2 on usage or configuration errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use spinorq::experiment::{error_correction_sweep, ExperimentConfig};
use spinorq::relativistic::{eigenvalue, pnd_phase, wigner_matrix_in, FourMomentum, FrameFamily};
use spinorq::teleport::{expected_scalar, teleport, Formalism, Qubit};
use spinorq::verify::{self, VerifyOptions};
use spinorq::{Mat2, Sl2c, SpinFrame, Spinor};

const TELEPORT_TOL: f64 = 1e-12;
const WIGNER_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "spinorq", version, about = "Two-spinor qubits: identity checks, teleportation, Wigner matrices")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of random trials per identity.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    Pnd,
    Helicity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every identity suite and report the largest residual of each.
    Verify {
        #[arg(long, hide = true)]
        corrupt_epsilon: bool,
    },
    /// Trace the four branches of a teleportation protocol.
    Teleport {
        /// First amplitude as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        phi0: String,
        /// Second amplitude as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        phi1: String,
        #[arg(long, value_enum, default_value = "hilbert")]
        formalism: FormalismArg,
    },
    /// Wigner matrix of an SL(2,C) element at one momentum.
    Wigner {
        /// Row-major entries `a,b,c,d`, each as `re,im` (eight numbers). Defaults to the identity.
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
        /// Reference spinor `re0,im0,re1,im1`.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0")]
        nu: String,
        /// Four-momentum `p0,p1,p2,p3`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        mass: f64,
        #[arg(long, value_enum, default_value = "pnd")]
        basis: Basis,
    },
    /// Entropy sweep of a boosted wave packet in the helicity and PND bases.
    Depolarize {
        /// Overrides the configured rapidities, e.g. `0,0.5,1`.
        #[arg(long, allow_hyphen_values = true)]
        rapidities: Option<String>,
        #[arg(long)]
        grid_size: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormalismArg {
    Hilbert,
    Spacetime,
    Twospinor,
}

impl From<FormalismArg> for Formalism {
    fn from(f: FormalismArg) -> Self {
        match f {
            FormalismArg::Hilbert => Formalism::Hilbert,
            FormalismArg::Spacetime => Formalism::Spacetime,
            FormalismArg::Twospinor => Formalism::TwoSpinor,
        }
    }
}

/// A report plus whether all its tolerances held.
struct Outcome {
    body: String,
    passed: bool,
}

struct UsageError(String);

impl From<spinorq::Error> for UsageError {
    fn from(e: spinorq::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn numbers(what: &str, s: &str, n: usize) -> Result<Vec<f64>, UsageError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError(format!("{what}: cannot parse '{s}'")))?;
    if v.len() != n || v.iter().any(|x| !x.is_finite()) {
        return Err(UsageError(format!("{what}: expected {n} finite comma-separated numbers")));
    }
    Ok(v)
}

/// `re,im` or a bare real number.
fn complex(what: &str, s: &str) -> Result<Complex64, UsageError> {
    let n = s.split(',').count();
    let v = numbers(what, s, if n == 1 { 1 } else { 2 })?;
    Ok(Complex64::new(v[0], v.get(1).copied().unwrap_or(0.0)))
}

fn cx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn mat_json(m: &Mat2) -> Value {
    json!([[cx(m.get(0, 0)), cx(m.get(0, 1))], [cx(m.get(1, 0)), cx(m.get(1, 1))]])
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn cmd_verify(cli: &Cli, corrupt_epsilon: bool) -> Result<Outcome, UsageError> {
    if cli.trials == 0 {
        return Err(UsageError("--trials must be at least 1".into()));
    }
    let report = verify::run(&VerifyOptions { seed: cli.seed, trials: cli.trials, corrupt_epsilon });
    let body = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&report),
        Format::Csv => {
            let mut s = String::from("check,max_residual,tolerance,passed\n");
            for c in &report.checks {
                let r = c.max_residual.map(|r| format!("{r:e}")).unwrap_or_else(|| "nan".into());
                s.push_str(&format!("{},{},{:e},{}\n", c.name, r, c.tolerance, c.passed));
            }
            s
        }
    };
    Ok(Outcome { body, passed: report.passed })
}

fn cmd_teleport(cli: &Cli, phi0: &str, phi1: &str, formalism: Formalism) -> Result<Outcome, UsageError> {
    let phi = Qubit::new(complex("--phi0", phi0)?, complex("--phi1", phi1)?)?;
    let run = teleport(&phi, formalism, &SpinFrame::standard())?;
    let scale = run.target.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let residual = (run.proportionality_residual() / scale)
        .max((run.assembled_scalar - Complex64::new(expected_scalar(formalism), 0.0)).norm());
    let passed = residual <= TELEPORT_TOL;
    let body = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = serde_json::to_value(&run).expect("run serializes");
            v["residual"] = json!(residual);
            v["tolerance"] = json!(TELEPORT_TOL);
            v["passed"] = json!(passed);
            pretty(&v)
        }
        Format::Csv => {
            let mut s = String::from("branch,final0_re,final0_im,final1_re,final1_im,scalar_re,scalar_im\n");
            let rows = run
                .branches
                .iter()
                .map(|b| (b.branch.as_str(), b.final_state, b.scalar))
                .chain([("assembled", run.assembled, run.assembled_scalar)]);
            for (name, f, k) in rows {
                s.push_str(&format!(
                    "{name},{},{},{},{},{},{}\n",
                    f[0].re, f[0].im, f[1].re, f[1].im, k.re, k.im
                ));
            }
            s
        }
    };
    Ok(Outcome { body, passed })
}

fn cmd_wigner(
    cli: &Cli,
    l: Option<&str>,
    nu: &str,
    p: &str,
    mass: f64,
    basis: Basis,
) -> Result<Outcome, UsageError> {
    if cli.format == Some(Format::Csv) {
        return Err(UsageError("wigner reports are JSON only".into()));
    }
    let l = match l {
        None => Sl2c::identity(),
        Some(s) => {
            let v = numbers("--l", s, 8)?;
            let z = |k: usize| Complex64::new(v[2 * k], v[2 * k + 1]);
            Sl2c::new(Mat2::new(z(0), z(1), z(2), z(3)))?
        }
    };
    let nv = numbers("--nu", nu, 4)?;
    let nu = Spinor::upper(Complex64::new(nv[0], nv[1]), Complex64::new(nv[2], nv[3]));
    let pv = numbers("--p", p, 4)?;
    let p = FourMomentum::new([pv[0], pv[1], pv[2], pv[3]], mass)?;
    let family = match basis {
        Basis::Pnd => FrameFamily::Pnd { nu },
        Basis::Helicity => FrameFamily::Helicity,
    };
    let w = wigner_matrix_in(&family, &l, &p)?;
    let (unitarity, det) = (w.unitarity_defect(), w.det_defect());
    let mut passed = unitarity <= WIGNER_TOL && det <= WIGNER_TOL;
    let mut report = json!({
        "basis": family.label(),
        "mass": mass,
        "momentum": p.p,
        "matrix": mat_json(&w.0),
        "unitarity_defect": unitarity,
        "det_defect": det,
        "diagonal": w.is_diagonal(WIGNER_TOL),
    });
    if basis == Basis::Pnd && eigenvalue(&l, &nu).is_ok() {
        let r = pnd_phase(&l, &nu, &[p])?;
        passed &= r.max_matrix_deviation <= WIGNER_TOL;
        report["pnd_phase"] = json!({
            "eigenvalue": cx(r.eigenvalue),
            "phase": r.phase,
            "max_matrix_deviation": r.max_matrix_deviation,
        });
    }
    report["passed"] = json!(passed);
    Ok(Outcome { body: pretty(&report), passed })
}

fn cmd_depolarize(cli: &Cli, rapidities: Option<&str>, grid_size: Option<usize>) -> Result<Outcome, UsageError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(r) = rapidities {
        cfg.rapidities = r
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| UsageError(format!("--rapidities: cannot parse '{r}'")))?;
    }
    if let Some(n) = grid_size {
        cfg.grid_size = n;
    }
    cfg.validate()?;
    let report = error_correction_sweep(&cfg)?;
    let body = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => report.to_csv(),
        Format::Json => pretty(&report),
    };
    Ok(Outcome { body, passed: report.pnd_constant })
}

fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    match &cli.command {
        Command::Verify { corrupt_epsilon } => cmd_verify(cli, *corrupt_epsilon),
        Command::Teleport { phi0, phi1, formalism } => cmd_teleport(cli, phi0, phi1, (*formalism).into()),
        Command::Wigner { l, nu, p, mass, basis } => cmd_wigner(cli, l.as_deref(), nu, p, *mass, *basis),
        Command::Depolarize { rapidities, grid_size } => cmd_depolarize(cli, rapidities.as_deref(), *grid_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.is_some() && !matches!(cli.command, Command::Depolarize { .. }) {
        eprintln!("error: --config only applies to depolarize");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.body),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("tolerance check failed");
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
