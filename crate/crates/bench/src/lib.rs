//! Seeded inputs shared by the benchmarks.

use spinorq::relativistic::FourMomentum;
use spinorq::{sample, Sl2c, SpinFrame, Spinor};
use spinorq::teleport::Qubit;

pub struct Fixtures {
    pub qubits: Vec<Qubit>,
    pub frames: Vec<SpinFrame>,
    pub transforms: Vec<Sl2c>,
    pub spinors: Vec<Spinor>,
    pub momenta: Vec<FourMomentum>,
}

impl Fixtures {
    pub fn new(seed: u64, n: usize) -> Self {
        let mut rng = sample::rng(seed);
        Fixtures {
            qubits: (0..n).map(|_| sample::qubit(&mut rng)).collect(),
            frames: (0..n).map(|_| sample::frame(&mut rng)).collect(),
            transforms: (0..n).map(|_| sample::sl2c(&mut rng)).collect(),
            spinors: (0..n).map(|_| sample::spinor(&mut rng)).collect(),
            momenta: (0..n).map(|i| sample::momentum(&mut rng, [0.0, 1.0][i % 2])).collect(),
        }
    }
}
