//! Depolarization of a boosted wave packet: trace out momentum, measure the
//! von Neumann entropy of the spin density matrix, and compare the helicity
//! basis with a basis adapted to a principal null direction of the boost.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, Mat2, ONE, ZERO};
use crate::relativistic::{
    apply_wigner, AmplitudeSample, BargmannAmplitudes, FourMomentum, FrameFamily,
};
use crate::spinor::{Sl2c, Spinor};
use crate::tol;

/// Tolerance on the PND entropy constancy over a sweep.
pub const PND_CONSTANCY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mass: f64,
    pub mean_momentum: [f64; 3],
    /// Gaussian width of `|phi|^2` along `spread_axis`.
    pub spread: f64,
    pub spread_axis: [f64; 3],
    pub grid_size: usize,
    pub boost_axis: [f64; 3],
    pub rapidities: Vec<f64>,
    pub bases: Vec<FrameFamily>,
    /// Spin state common to every momentum component, in basis coordinates.
    pub polarization: [Complex64; 2],
}

impl Default for ExperimentConfig {
    /// Unit-mass packet at rest, spread along x, boosted along z, linearly
    /// polarized `(1, 1)/sqrt2`.
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ExperimentConfig {
            mass: 1.0,
            mean_momentum: [0.0; 3],
            spread: 1.0,
            spread_axis: [1.0, 0.0, 0.0],
            grid_size: 64,
            boost_axis: [0.0, 0.0, 1.0],
            rapidities: vec![0.0, 0.5, 1.0, 2.0],
            bases: vec![FrameFamily::Helicity, FrameFamily::Pnd { nu: Spinor::upper(ONE, ZERO) }],
            polarization: [c(h, 0.0), c(h, 0.0)],
        }
    }
}

fn parse_floats(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            f64::from_str(s).map_err(|_| Error::Config(format!("{key}: cannot parse '{s}' as a number")))
        })
        .collect()
}

fn parse_vec3(key: &str, value: &str) -> Result<[f64; 3]> {
    let v = parse_floats(key, value)?;
    v.try_into()
        .map_err(|_| Error::Config(format!("{key}: expected three comma-separated numbers")))
}

/// `re0, im0, re1, im1`.
fn parse_spinor(key: &str, value: &str) -> Result<[Complex64; 2]> {
    let v = parse_floats(key, value)?;
    if v.len() != 4 {
        return Err(Error::Config(format!("{key}: expected re0,im0,re1,im1")));
    }
    Ok([c(v[0], v[1]), c(v[2], v[3])])
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl ExperimentConfig {
    /// Parse a flat `key = value` file; unknown keys are errors, missing keys
    /// keep their defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut nu = [ONE, ZERO];
        let mut bases: Option<Vec<String>> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "mass" => cfg.mass = single(key, value)?,
                "spread" => cfg.spread = single(key, value)?,
                "mean_momentum" => cfg.mean_momentum = parse_vec3(key, value)?,
                "spread_axis" => cfg.spread_axis = parse_vec3(key, value)?,
                "boost_axis" => cfg.boost_axis = parse_vec3(key, value)?,
                "grid_size" => {
                    cfg.grid_size = value
                        .parse()
                        .map_err(|_| Error::Config(format!("grid_size: cannot parse '{value}'")))?
                }
                "rapidities" => cfg.rapidities = parse_floats(key, value)?,
                "polarization" => cfg.polarization = parse_spinor(key, value)?,
                "nu" => nu = parse_spinor(key, value)?,
                "bases" => bases = Some(value.split(',').map(|s| s.trim().to_string()).collect()),
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }
        let names = bases.unwrap_or_else(|| vec!["helicity".into(), "pnd".into()]);
        cfg.bases = names
            .iter()
            .map(|n| match n.as_str() {
                "helicity" => Ok(FrameFamily::Helicity),
                "pnd" => Ok(FrameFamily::Pnd { nu: Spinor::upper(nu[0], nu[1]) }),
                other => Err(Error::Config(format!("unknown basis '{other}'"))),
            })
            .collect::<Result<_>>()?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::Config(format!("mass must be positive, got {}", self.mass)));
        }
        if !(self.spread.is_finite() && self.spread > 0.0) {
            return Err(Error::Config(format!("spread must be positive, got {}", self.spread)));
        }
        if self.grid_size == 0 {
            return Err(Error::Config("grid_size must be at least 1".into()));
        }
        if self.rapidities.is_empty() || self.rapidities.iter().any(|r| !r.is_finite()) {
            return Err(Error::Config("rapidities must be a non-empty list of finite numbers".into()));
        }
        if self.bases.is_empty() {
            return Err(Error::Config("at least one basis is required".into()));
        }
        if !self.mean_momentum.iter().all(|x| x.is_finite()) {
            return Err(Error::Config("mean_momentum must be finite".into()));
        }
        for (name, axis) in [("spread_axis", self.spread_axis), ("boost_axis", self.boost_axis)] {
            let n = norm3(axis);
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::Config(format!("{name} must be a non-zero vector")));
            }
        }
        let [a, b] = self.polarization;
        if !(a.is_finite() && b.is_finite()) || a.norm_sqr() + b.norm_sqr() == 0.0 {
            return Err(Error::Config("polarization must be a non-zero spinor".into()));
        }
        Ok(())
    }
}

fn single(key: &str, value: &str) -> Result<f64> {
    match parse_floats(key, value)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::Config(format!("{key}: expected a single number"))),
    }
}

/// Discretized packet: `sum_i w_i |phi(p_i)|^2 = 1` with `w_i` quadrature
/// weights of the invariant measure `d^3p / ((2 pi)^3 2 p0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavePacket {
    pub mass: f64,
    pub weights: Vec<f64>,
    pub amplitudes: BargmannAmplitudes,
}

impl WavePacket {
    pub fn new(mass: f64, weights: Vec<f64>, amplitudes: BargmannAmplitudes) -> Result<Self> {
        if weights.len() != amplitudes.samples.len() || weights.is_empty() {
            return Err(Error::Config("weights and samples must have equal, non-zero length".into()));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Config("weights must be positive".into()));
        }
        for s in &amplitudes.samples {
            FourMomentum::new(s.momentum.p, mass)?;
        }
        Ok(WavePacket { mass, weights, amplitudes })
    }

    pub fn total_norm(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.amplitudes.samples)
            .map(|(w, s)| w * (s.amplitude[0].norm_sqr() + s.amplitude[1].norm_sqr()))
            .sum()
    }

    /// Rescale the amplitudes so that the total norm is one.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.total_norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::UnnormalizedPacket(n));
        }
        let s = c(n.sqrt().recip(), 0.0);
        for sample in &mut self.amplitudes.samples {
            sample.amplitude = [sample.amplitude[0] * s, sample.amplitude[1] * s];
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Gaussian packet on a uniform grid over `mean +- 4 spread` along the spread
/// axis, every component carrying the configured polarization.
pub fn build_packet(config: &ExperimentConfig) -> Result<WavePacket> {
    config.validate()?;
    let n = config.grid_size;
    let axis = {
        let a = config.spread_axis;
        let k = norm3(a);
        [a[0] / k, a[1] / k, a[2] / k]
    };
    let half = 4.0 * config.spread;
    let step = if n > 1 { 2.0 * half / (n - 1) as f64 } else { 1.0 };
    let mut weights = Vec::with_capacity(n);
    let mut samples = Vec::with_capacity(n);
    let measure = (2.0 * std::f64::consts::PI).powi(3);
    for i in 0..n {
        let s = if n > 1 { -half + step * i as f64 } else { 0.0 };
        let k = std::array::from_fn(|j| config.mean_momentum[j] + s * axis[j]);
        let p = FourMomentum::on_shell(config.mass, k)?;
        // |g|^2 is a normal density of width `spread`.
        let g = (-s * s / (4.0 * config.spread * config.spread)).exp();
        weights.push(step / (measure * 2.0 * p.energy()));
        let pol = config.polarization;
        samples.push(AmplitudeSample { momentum: p, amplitude: [pol[0] * g, pol[1] * g] });
    }
    WavePacket::new(config.mass, weights, BargmannAmplitudes::new(samples)?)?.normalized()
}

/// Spin density matrix with momentum traced out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedDensityMatrix(pub Mat2);

impl ReducedDensityMatrix {
    pub fn new(rho: Mat2) -> Result<Self> {
        let herm = rho.hermiticity_defect();
        if herm > tol::HERMITIAN {
            return Err(Error::InvalidDensity(format!("hermiticity defect {herm:e}")));
        }
        let tr = (rho.trace() - ONE).norm();
        if tr > tol::CONSTRUCTION {
            return Err(Error::InvalidDensity(format!("trace defect {tr:e}")));
        }
        let rho = ReducedDensityMatrix(rho);
        let [lo, _] = rho.eigenvalues();
        if lo < -tol::CONSTRUCTION {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {lo:e}")));
        }
        Ok(rho)
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = &self.0;
        let (a, d) = (m.get(0, 0).re, m.get(1, 1).re);
        let b = m.get(0, 1);
        let disc = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt();
        [(a + d - disc) / 2.0, (a + d + disc) / 2.0]
    }

    pub fn purity(&self) -> f64 {
        let [a, b] = self.eigenvalues();
        a * a + b * b
    }
}

/// `rho_AB = sum_i w_i phi_A(p_i) conj(phi_B(p_i))`, summed in grid order.
pub fn reduce(packet: &WavePacket) -> Result<ReducedDensityMatrix> {
    let n = packet.total_norm();
    if (n - 1.0).abs() > tol::CONSTRUCTION {
        return Err(Error::UnnormalizedPacket(n));
    }
    let mut rho = Mat2::zero();
    for (w, s) in packet.weights.iter().zip(&packet.amplitudes.samples) {
        let a = s.amplitude;
        rho = rho + Mat2::outer(a, [a[0].conj(), a[1].conj()]) * *w;
    }
    // exact Hermitian symmetrization of the accumulated rounding
    rho = (rho + rho.adjoint()) * 0.5;
    ReducedDensityMatrix::new(rho)
}

/// Von Neumann entropy in bits, with `0 log 0 = 0`.
pub fn entropy(rho: &ReducedDensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    // `+ 0.0` turns a -0 from `1 * log2(1)` into 0
    s.clamp(0.0, 1.0) + 0.0
}

/// Boost the packet (image grid, unchanged invariant weights), trace out
/// momentum and measure the entropy.
pub fn boost_and_measure(
    packet: &WavePacket,
    l: &Sl2c,
    basis: &FrameFamily,
) -> Result<(ReducedDensityMatrix, f64)> {
    let moved = boost_packet(packet, l, basis)?;
    let rho = reduce(&moved)?;
    let s = entropy(&rho);
    Ok((rho, s))
}

pub fn boost_packet(packet: &WavePacket, l: &Sl2c, basis: &FrameFamily) -> Result<WavePacket> {
    let amplitudes = apply_wigner(l, &packet.amplitudes, basis)?;
    Ok(WavePacket { mass: packet.mass, weights: packet.weights.clone(), amplitudes })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub rapidity: f64,
    pub basis: String,
    pub entropy_bits: f64,
    pub purity: f64,
    pub rho: ReducedDensityMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Largest entropy difference within the PND rows (0 if none).
    pub pnd_entropy_spread: f64,
    pub pnd_constant: bool,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rapidity,basis,entropy_bits,purity\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{:.15e},{:.15e}", r.rapidity, r.basis, r.entropy_bits, r.purity);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep report serializes")
    }

    /// Entropies of one basis in sweep order.
    pub fn entropies(&self, basis: &str) -> Vec<f64> {
        self.rows.iter().filter(|r| r.basis == basis).map(|r| r.entropy_bits).collect()
    }
}

pub fn error_correction_sweep(config: &ExperimentConfig) -> Result<SweepReport> {
    let packet = build_packet(config)?;
    let mut rows = Vec::new();
    for basis in &config.bases {
        for &eta in &config.rapidities {
            let l = Sl2c::boost(config.boost_axis, eta);
            let (rho, s) = boost_and_measure(&packet, &l, basis)?;
            rows.push(SweepRow {
                rapidity: eta,
                basis: basis.label().to_string(),
                entropy_bits: s,
                purity: rho.purity(),
                rho,
            });
        }
    }
    let pnd: Vec<f64> = rows.iter().filter(|r| r.basis == "pnd").map(|r| r.entropy_bits).collect();
    let pnd_entropy_spread = match pnd.first() {
        Some(&first) => pnd.iter().map(|s| (s - first).abs()).fold(0.0, f64::max),
        None => 0.0,
    };
    Ok(SweepReport { rows, pnd_entropy_spread, pnd_constant: pnd_entropy_spread <= PND_CONSTANCY_TOL })
}
