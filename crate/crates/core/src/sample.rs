//! Seeded random instances: small rationals, matrices, gauges and cochains.
//!
//! Everything is drawn from a ChaCha8 stream, so a seed determines the
//! output on every platform.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{CochainPair, OneCochain};
use crate::deformation::GaugeTransform;
use crate::linalg::RationalMatrix;
use crate::scalar::{ratio, Scalar};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Numerator in `−3..=3`, denominator in `1..=2`.
    pub fn scalar(&mut self) -> Scalar {
        ratio(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=2))
    }

    /// Like [`Self::scalar`], but zero with probability about one half.
    pub fn sparse_scalar(&mut self) -> Scalar {
        if self.rng.gen_bool(0.5) {
            Scalar::zero()
        } else {
            self.scalar()
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> RationalMatrix {
        let data = (0..rows * cols).map(|_| self.sparse_scalar()).collect();
        RationalMatrix::from_vec(rows, cols, data).expect("shape matches")
    }

    /// A random matrix, redrawn until it is invertible.
    pub fn invertible(&mut self, n: usize) -> RationalMatrix {
        loop {
            let data = (0..n * n).map(|_| self.scalar()).collect();
            let m = RationalMatrix::from_vec(n, n, data).expect("shape matches");
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    /// `1 + tφ_1 + … + t^Nφ_N` with random `φ_i`.
    pub fn gauge(&mut self, dim: usize, order: usize) -> GaugeTransform {
        let phis = (0..order).map(|_| self.matrix(dim, dim)).collect();
        GaugeTransform::new(dim, phis).expect("square coefficients")
    }

    pub fn one_cochain(&mut self, dim_t: usize, dim_v: usize) -> OneCochain {
        OneCochain(self.matrix(dim_v, dim_t))
    }

    /// A random alternating pair in `C^{2p} × C^{2p+1}`.
    pub fn pair(&mut self, level: usize, dim_t: usize, dim_v: usize) -> CochainPair {
        let coords: Vec<Scalar> =
            (0..CochainPair::space_dim(level, dim_t, dim_v)).map(|_| self.sparse_scalar()).collect();
        CochainPair::from_coordinates(level, dim_t, dim_v, &coords).expect("coordinate length")
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}
