//! Seeded random inputs for property checks, the verification suite and benches.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::linalg::{c, Mat2};
use crate::relativistic::FourMomentum;
use crate::spinor::{Sl2c, SpinFrame, Spinor};
use crate::teleport::Qubit;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn spinor<R: Rng>(rng: &mut R) -> Spinor {
    loop {
        let s = Spinor::upper(complex(rng), complex(rng));
        if s.norm() > 1e-3 {
            return s;
        }
    }
}

pub fn qubit<R: Rng>(rng: &mut R) -> Qubit {
    let s = spinor(rng);
    Qubit::new(s.c0, s.c1).expect("sampled spinors are non-zero")
}

pub fn unit_axis<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// A rotation followed by a boost of rapidity at most `max_rapidity`.
pub fn lorentz<R: Rng>(rng: &mut R, max_rapidity: f64) -> Sl2c {
    let rot = Sl2c::rotation(unit_axis(rng), rng.random_range(0.0..std::f64::consts::TAU));
    let boost = Sl2c::boost(unit_axis(rng), rng.random_range(0.0..max_rapidity));
    boost * rot
}

/// A generic unimodular matrix with moderately conditioned entries.
pub fn sl2c<R: Rng>(rng: &mut R) -> Sl2c {
    loop {
        let m = Mat2::new(complex(rng), complex(rng), complex(rng), complex(rng));
        let d = m.det().norm();
        if d > 0.1 {
            if let Ok(l) = Sl2c::normalized(m) {
                if l.matrix().max_abs() < 4.0 {
                    return l;
                }
            }
        }
    }
}

/// The standard frame carried by a random unimodular transformation.
pub fn frame<R: Rng>(rng: &mut R) -> SpinFrame {
    let l = sl2c(rng);
    SpinFrame::standard()
        .transformed(&l)
        .expect("unimodular image of the standard frame is normalized")
}

pub fn three_momentum<R: Rng>(rng: &mut R, scale: f64) -> [f64; 3] {
    [
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    ]
}

pub fn massive_momentum<R: Rng>(rng: &mut R, mass: f64) -> FourMomentum {
    FourMomentum::on_shell(mass, three_momentum(rng, 3.0)).expect("positive mass is on-shell")
}

pub fn null_momentum<R: Rng>(rng: &mut R) -> FourMomentum {
    loop {
        let k = three_momentum(rng, 3.0);
        if k.iter().map(|x| x * x).sum::<f64>() > 1e-2 {
            return FourMomentum::on_shell(0.0, k).expect("non-zero null momentum");
        }
    }
}

pub fn momentum<R: Rng>(rng: &mut R, mass: f64) -> FourMomentum {
    if mass == 0.0 {
        null_momentum(rng)
    } else {
        massive_momentum(rng, mass)
    }
}

/// A transformation `S diag(lambda, 1/lambda) S^{-1}` together with its
/// eigen-spinor `S (1, 0)`.
pub fn with_eigen_spinor<R: Rng>(rng: &mut R) -> (Sl2c, Spinor) {
    let s = sl2c(rng);
    let lambda = Complex64::from_polar(
        rng.random_range(0.3..3.0),
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
    );
    let d = Sl2c::new(Mat2::diag(lambda, lambda.inv())).expect("diagonal with unit determinant");
    let l = s * d * s.inverse();
    let nu = s.matrix().apply([c(1.0, 0.0), c(0.0, 0.0)]);
    (l, Spinor::upper(nu[0], nu[1]))
}
