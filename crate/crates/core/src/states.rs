//! Multipartite states (pure vectors or density operators with explicit
//! subsystem dimensions) and the named families used throughout.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::random::{gaussian_vector, rng_from_seed};
use crate::linalg::{eigh, partial_trace, vec_norm, ComplexMatrix, Dims};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateKind {
    Pure,
    Density,
}

#[derive(Clone, Debug)]
pub enum State<T: Real> {
    Pure {
        amplitudes: Vec<Complex<T>>,
        dims: Dims,
    },
    Density {
        rho: ComplexMatrix<T>,
        dims: Dims,
    },
}

impl<T: Real> State<T> {
    /// Pure state; rejects vectors whose norm differs from 1 by more than
    /// `NORM_TOL` or whose length does not match `dims`.
    pub fn pure(amplitudes: Vec<Complex<T>>, dims: Dims) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dimensions {dims}",
                amplitudes.len()
            )));
        }
        let norm = vec_norm(&amplitudes);
        if (norm - T::one()).abs().as_f64() > T::NORM_TOL {
            return Err(Error::NotNormalized { value: norm.as_f64() });
        }
        Ok(State::Pure { amplitudes, dims })
    }

    /// Normalizes `amplitudes` first; rejects the zero vector.
    pub fn pure_normalized(mut amplitudes: Vec<Complex<T>>, dims: Dims) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if norm.is_zero() {
            return Err(Error::NotNormalized { value: 0.0 });
        }
        for a in amplitudes.iter_mut() {
            *a = a.unscale(norm);
        }
        Self::pure(amplitudes, dims)
    }

    /// Density operator; must be Hermitian, PSD and of unit trace.
    pub fn density(rho: ComplexMatrix<T>, dims: Dims) -> Result<Self> {
        validate_density(&rho, &dims)?;
        Ok(State::Density { rho, dims })
    }

    pub fn dims(&self) -> &Dims {
        match self {
            State::Pure { dims, .. } | State::Density { dims, .. } => dims,
        }
    }

    pub fn kind(&self) -> StateKind {
        match self {
            State::Pure { .. } => StateKind::Pure,
            State::Density { .. } => StateKind::Density,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.kind() == StateKind::Pure
    }

    pub fn amplitudes(&self) -> Option<&[Complex<T>]> {
        match self {
            State::Pure { amplitudes, .. } => Some(amplitudes),
            State::Density { .. } => None,
        }
    }

    pub fn to_density_matrix(&self) -> ComplexMatrix<T> {
        match self {
            State::Pure { amplitudes, .. } => ComplexMatrix::projector(amplitudes),
            State::Density { rho, .. } => rho.clone(),
        }
    }

    pub fn into_density(self) -> Self {
        match self {
            State::Pure { amplitudes, dims } => State::Density {
                rho: ComplexMatrix::projector(&amplitudes),
                dims,
            },
            d => d,
        }
    }

    /// Reduced density operator on the subsystems in `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<ComplexMatrix<T>> {
        partial_trace(&self.to_density_matrix(), self.dims(), keep)
    }

    /// `Tr(rho^2)`
    pub fn purity(&self) -> T {
        match self {
            State::Pure { .. } => T::one(),
            State::Density { rho, .. } => rho.as_slice().iter().map(|z| z.norm_sqr()).sum(),
        }
    }
}

pub(crate) fn validate_density<T: Real>(rho: &ComplexMatrix<T>, dims: &Dims) -> Result<()> {
    if !rho.is_square() || rho.rows() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator for dimensions {dims}",
            rho.rows(),
            rho.cols()
        )));
    }
    rho.ensure_hermitian()?;
    let tr = rho.trace().re;
    if (tr - T::one()).abs().as_f64() > T::NORM_TOL {
        return Err(Error::NotNormalized { value: tr.as_f64() });
    }
    let min = eigh(rho)?.values[0];
    if min.as_f64() < -T::PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min.as_f64(),
        });
    }
    Ok(())
}

fn qubits(n: usize) -> Dims {
    Dims::new(vec![2; n]).expect("positive dims")
}

/// Computational basis vector `|index>` in the space described by `dims`.
pub fn basis_state<T: Real>(dims: &Dims, index: usize) -> Result<State<T>> {
    if index >= dims.total() {
        return Err(Error::InvalidParameter(format!("basis index {index} outside {dims}")));
    }
    let mut v = vec![Complex::zero(); dims.total()];
    v[index] = Complex::new(T::one(), T::zero());
    State::pure(v, dims.clone())
}

/// `alpha|000> + sqrt(1 - |alpha|^2)|111>`
pub fn generalized_ghz<T: Real>(alpha: Complex<T>) -> Result<State<T>> {
    let a2 = alpha.norm_sqr();
    if a2.as_f64() > 1.0 + T::NORM_TOL {
        return Err(Error::InvalidParameter(format!(
            "|alpha| = {} exceeds 1",
            alpha.norm()
        )));
    }
    let mut v = vec![Complex::zero(); 8];
    v[0] = alpha;
    v[7] = Complex::new((T::one() - a2).max(T::zero()).sqrt(), T::zero());
    State::pure(v, qubits(3))
}

pub fn ghz<T: Real>() -> State<T> {
    generalized_ghz(Complex::new(T::FRAC_1_SQRT_2(), T::zero())).expect("valid amplitude")
}

/// `(|001> + |010> + |100>) / sqrt(3)`
pub fn w_state<T: Real>() -> State<T> {
    let a = Complex::new(T::one() / T::lit(3.0).sqrt(), T::zero());
    let mut v = vec![Complex::zero(); 8];
    for i in [1, 2, 4] {
        v[i] = a;
    }
    State::pure(v, qubits(3)).expect("normalized")
}

/// `sum_i |ii> / sqrt(d)` on `d x d`.
pub fn maximally_entangled<T: Real>(d: usize) -> Result<State<T>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("maximally entangled state needs d >= 2, got {d}")));
    }
    let a = Complex::new(T::one() / T::lit(d as f64).sqrt(), T::zero());
    let mut v = vec![Complex::zero(); d * d];
    for i in 0..d {
        v[i * d + i] = a;
    }
    State::pure(v, Dims::new(vec![d, d])?)
}

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn random_pure<T: Real>(dims: &Dims, seed: u64) -> State<T> {
    let mut rng = rng_from_seed(seed);
    State::pure_normalized(gaussian_vector(dims.total(), &mut rng), dims.clone())
        .expect("Gaussian vector is nonzero")
}

/// Convex mixture `sum_k w_k |psi_k><psi_k|` of pure states sharing `dims`.
pub fn mixture<T: Real>(members: &[(T, State<T>)]) -> Result<State<T>> {
    let first = members
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
    let dims = first.1.dims().clone();
    let mut rho = ComplexMatrix::zeros(dims.total(), dims.total());
    for (w, s) in members {
        if s.dims() != &dims {
            return Err(Error::DimensionMismatch(format!(
                "mixture members have dims {dims} and {}",
                s.dims()
            )));
        }
        rho = &rho + &s.to_density_matrix().scale_real(*w);
    }
    State::density(rho, dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn ghz_family_edge_cases() {
        let s = generalized_ghz(c(1.0)).unwrap();
        assert_eq!(s.amplitudes().unwrap()[0], c(1.0));
        assert_eq!(s.amplitudes().unwrap()[7], c(0.0));
        let g: State<f64> = ghz();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.amplitudes().unwrap()[7].re - r).abs() < 1e-15);
        assert!(generalized_ghz(c(1.1)).is_err());
        // Complex amplitude of unit modulus is allowed.
        assert!(generalized_ghz(Complex::new(0.6, 0.8)).is_ok());
    }

    #[test]
    fn w_marginal_and_norm() {
        let w: State<f64> = w_state();
        assert!((vec_norm(w.amplitudes().unwrap()) - 1.0).abs() < 1e-15);
        let ra = w.reduced(&[0]).unwrap();
        assert!(ra.max_abs_diff(&ComplexMatrix::diag_real(&[2.0 / 3.0, 1.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn maximally_entangled_marginal() {
        for d in 2..5 {
            let chi: State<f64> = maximally_entangled(d).unwrap();
            let ra = chi.reduced(&[0]).unwrap();
            let id = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
            assert!(ra.max_abs_diff(&id) < 1e-15);
        }
        assert!(maximally_entangled::<f64>(1).is_err());
    }

    #[test]
    fn random_pure_is_deterministic_and_normalized() {
        let dims = Dims::new(vec![2, 2, 3]).unwrap();
        let a = random_pure::<f64>(&dims, 11);
        let b = random_pure::<f64>(&dims, 11);
        assert_eq!(a.amplitudes(), b.amplitudes());
        assert_eq!(a.amplitudes().unwrap().len(), 12);
        for seed in 0..100 {
            let s = random_pure::<f64>(&dims, seed);
            assert!((vec_norm(s.amplitudes().unwrap()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn density_validation() {
        let dims = Dims::new(vec![2]).unwrap();
        assert!(State::density(ComplexMatrix::<f64>::diag_real(&[0.5, 0.5]), dims.clone()).is_ok());
        assert!(matches!(
            State::density(ComplexMatrix::<f64>::diag_real(&[0.7, 0.5]), dims.clone()),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            State::density(ComplexMatrix::<f64>::diag_real(&[1.1, -0.1]), dims.clone()),
            Err(Error::NotPsd { .. })
        ));
        let m = ComplexMatrix::<f64>::from_real_rows(&[&[0.5, 0.2], &[0.0, 0.5]]);
        assert!(matches!(State::density(m, dims), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn pure_rejects_unnormalized() {
        let dims = Dims::new(vec![2]).unwrap();
        assert!(State::pure(vec![c(1.0), c(1.0)], dims.clone()).is_err());
        assert!(State::pure(vec![c(1.0)], dims).is_err());
    }
}
