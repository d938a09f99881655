//! Seeded random sampling: complex Gaussian matrices and Haar isometries.
//!
//! Every sampler takes its randomness from a ChaCha8 stream keyed by an
//! explicit seed, so outputs are reproducible across runs and platforms.
//! Samples are drawn in `f64` and narrowed, which keeps the `f32` and `f64`
//! streams identical up to rounding.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::eigen::orthonormalize_columns;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counter-based child seed: stream `index` of `master`, reproducible in
/// isolation (SplitMix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn standard_complex<T: Real>(rng: &mut Rng) -> Complex<T> {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex::new(T::lit(re), T::lit(im))
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix<T: Real>(rows: usize, cols: usize, rng: &mut Rng) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

pub fn gaussian_vector<T: Real>(len: usize, rng: &mut Rng) -> Vec<Complex<T>> {
    (0..len).map(|_| standard_complex(rng)).collect()
}

/// Haar-distributed isometry drawn from an explicit RNG stream.
pub fn haar_isometry_from<T: Real>(rows: usize, cols: usize, rng: &mut Rng) -> Result<ComplexMatrix<T>> {
    if rows < cols || cols == 0 {
        return Err(Error::InvalidParameter(format!(
            "isometry needs rows >= cols >= 1, got {rows}x{cols}"
        )));
    }
    // Gram-Schmidt is QR with a positive diagonal in R, which fixes the phase
    // freedom and makes the Q factor Haar distributed. Dependence has
    // probability zero; redraw if it happens anyway.
    loop {
        if let Some(q) = orthonormalize_columns(&gaussian_matrix(rows, cols, rng)) {
            return Ok(q);
        }
    }
}

/// Haar-random isometry `V` (`n_rows x n_cols`, `V^dagger V = I`).
pub fn haar_isometry<T: Real>(n_rows: usize, n_cols: usize, seed: u64) -> Result<ComplexMatrix<T>> {
    haar_isometry_from(n_rows, n_cols, &mut rng_from_seed(seed))
}
