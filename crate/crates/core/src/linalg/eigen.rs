//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus the
//! decompositions built on it.
//!
//! Jacobi is slow asymptotically but every operator in this crate lives on a
//! space of dimension at most a few dozen, where it is accurate to a few ulps
//! of the matrix norm and needs no external LAPACK.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Eigen-decomposition `h = V diag(w) V^dagger` with `w` ascending.
#[derive(Clone, Debug)]
pub struct Eigh<T: Real> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Eigh<T> {
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| {
                acc + v[(i, k)] * v[(j, k)].conj() * self.values[k]
            })
        })
    }
}

/// Jacobi parameters `(c, s)` annihilating a real off-diagonal `apq` between
/// diagonal entries `app`, `aqq`.
#[inline]
fn rotation<T: Real>(app: T, aqq: T, apq: T) -> (T, T) {
    let theta = (aqq - app) / (apq + apq);
    let t = if theta.is_zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    (c, t * c)
}

#[inline]
fn rotate_columns<T: Real>(m: &mut ComplexMatrix<T>, p: usize, q: usize, c: T, s: T) {
    for k in 0..m.rows() {
        let (mp, mq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mp.scale(c) - mq.scale(s);
        m[(k, q)] = mp.scale(s) + mq.scale(c);
    }
}

#[inline]
fn scale_column<T: Real>(m: &mut ComplexMatrix<T>, q: usize, z: Complex<T>) {
    for k in 0..m.rows() {
        m[(k, q)] = m[(k, q)] * z;
    }
}

/// Hermitian eigendecomposition; rejects inputs that are not Hermitian
/// within the scalar's tolerance.
pub fn eigh<T: Real>(h: &ComplexMatrix<T>) -> Result<Eigh<T>> {
    h.ensure_hermitian()?;
    Ok(eigh_unchecked(h))
}

/// Eigendecomposition of the Hermitian part of `h` without validation.
pub(crate) fn eigh_unchecked<T: Real>(h: &ComplexMatrix<T>) -> Eigh<T> {
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = T::epsilon() * scale * T::lit(0.1);

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= target || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag.is_zero() {
                    continue;
                }
                // Rotate the phase of column/row q so that a[p][q] becomes real.
                let phase = apq.unscale(mag);
                let back = phase.conj();
                scale_column(&mut a, q, back);
                for k in 0..n {
                    a[(q, k)] = a[(q, k)] * phase;
                }
                scale_column(&mut v, q, back);

                let (c, s) = rotation(a[(p, p)].re, a[(q, q)].re, mag);
                rotate_columns(&mut a, p, q, c, s);
                for k in 0..n {
                    let (rp, rq) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = rp.scale(c) - rq.scale(s);
                    a[(q, k)] = rp.scale(s) + rq.scale(c);
                }
                rotate_columns(&mut v, p, q, c, s);
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Eigh { values, vectors }
}

/// Eigenvalues only, ascending.
pub fn eigvalsh<T: Real>(h: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(eigh(h)?.values)
}

/// Hermitian PSD square root via `eigh`, clamping eigenvalues above
/// `-PSD_TOL` to zero.
pub fn psd_sqrt<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let e = eigh(m)?;
    let min = e.values.first().copied().unwrap_or_else(T::zero);
    if min.as_f64() < -T::PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min.as_f64(),
        });
    }
    let roots: Vec<T> = e.values.iter().map(|&w| w.max(T::zero()).sqrt()).collect();
    Ok(Eigh {
        values: roots,
        vectors: e.vectors,
    }
    .reconstruct())
}

/// Rank-revealing factor `X` (n x r) with `X X^dagger = m` for PSD `m`;
/// eigenvalues below `RANK_REL_TOL` times the largest are dropped.
pub(crate) fn psd_factor<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let e = eigh_unchecked(m);
    let n = m.rows();
    let top = e.values.last().copied().unwrap_or_else(T::zero);
    if top <= T::zero() {
        return ComplexMatrix::zeros(n, 1);
    }
    let cut = top * T::lit(T::RANK_REL_TOL);
    let kept: Vec<usize> = (0..n).rev().filter(|&k| e.values[k] > cut).collect();
    ComplexMatrix::from_fn(n, kept.len(), |i, j| {
        e.vectors[(i, kept[j])].scale(e.values[kept[j]].sqrt())
    })
}

/// Singular values (descending) by one-sided Jacobi; small singular values
/// come out with absolute accuracy of order `eps * ||m||`.
pub fn singular_values<T: Real>(m: &ComplexMatrix<T>) -> Vec<T> {
    let mut u = m.clone();
    let cols = u.cols();
    let tol = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), Complex::<T>::zero());
                for k in 0..u.rows() {
                    let (up, uq) = (u[(k, p)], u[(k, q)]);
                    alpha = alpha + up.norm_sqr();
                    beta = beta + uq.norm_sqr();
                    gamma = gamma + up.conj() * uq;
                }
                let mag = gamma.norm();
                if mag <= tol * (alpha * beta).sqrt() || mag.is_zero() {
                    continue;
                }
                rotated = true;
                scale_column(&mut u, q, gamma.unscale(mag).conj());
                let (c, s) = rotation(alpha, beta, mag);
                rotate_columns(&mut u, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = (0..cols)
        .map(|j| (0..u.rows()).map(|k| u[(k, j)].norm_sqr()).sum::<T>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    sv.truncate(u.rows().min(cols));
    sv
}

/// `sum |w_i|` over the eigenvalues of a Hermitian matrix.
pub fn hermitian_trace_norm<T: Real>(h: &ComplexMatrix<T>) -> T {
    eigh_unchecked(h).values.iter().map(|w| w.abs()).sum()
}

/// Modified Gram-Schmidt applied twice to the columns; the triangular
/// factor comes out with a positive real diagonal. Returns `None` when the
/// columns are numerically dependent.
pub fn orthonormalize_columns<T: Real>(m: &ComplexMatrix<T>) -> Option<ComplexMatrix<T>> {
    let mut q = m.clone();
    let (rows, cols) = (q.rows(), q.cols());
    for j in 0..cols {
        for _ in 0..2 {
            for i in 0..j {
                let mut proj = Complex::zero();
                for k in 0..rows {
                    proj = proj + q[(k, i)].conj() * q[(k, j)];
                }
                for k in 0..rows {
                    let qi = q[(k, i)];
                    q[(k, j)] = q[(k, j)] - qi * proj;
                }
            }
        }
        let norm = (0..rows).map(|k| q[(k, j)].norm_sqr()).sum::<T>().sqrt();
        if norm <= T::epsilon() * T::lit(1e3) {
            return None;
        }
        scale_column(&mut q, j, Complex::new(T::one() / norm, T::zero()));
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{gaussian_matrix, rng_from_seed};

    type M = ComplexMatrix<f64>;

    fn random_hermitian(n: usize, seed: u64) -> M {
        let g = gaussian_matrix::<f64>(n, n, &mut rng_from_seed(seed));
        (&g + &g.adjoint()).scale_real(0.5)
    }

    fn random_psd(n: usize, rank: usize, seed: u64) -> M {
        let g = gaussian_matrix::<f64>(n, rank, &mut rng_from_seed(seed));
        &g * &g.adjoint()
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let e = eigh(&M::diag_real(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0, 0.5, 0.5]);
    }

    #[test]
    fn pauli_y_spectrum() {
        let y = M::from_rows(&[
            vec![Complex::zero(), Complex::new(0., -1.)],
            vec![Complex::new(0., 1.), Complex::zero()],
        ]);
        let w = eigvalsh(&y).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pure_state_spectrum() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [Complex::new(s, 0.), Complex::zero(), Complex::zero(), Complex::new(s, 0.)];
        let w = eigvalsh(&M::projector(&phi)).unwrap();
        assert!(w[..3].iter().all(|x| x.abs() < 1e-15));
        assert!((w[3] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = M::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn reconstructs_random_hermitian() {
        for n in 1..=12 {
            for seed in 0..5 {
                let h = random_hermitian(n, 100 * n as u64 + seed);
                let e = eigh(&h).unwrap();
                assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10, "n={n} seed={seed}");
                assert!(e.vectors.isometry_residual() <= 1e-10);
                assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn sqrt_of_scalar_and_diagonal() {
        let q = psd_sqrt(&M::identity(4).scale_real(0.25)).unwrap();
        assert!(q.max_abs_diff(&M::identity(4).scale_real(0.5)) < 1e-15);
        let d = psd_sqrt(&M::diag_real(&[0.25, 0.0, 0.0, 0.25])).unwrap();
        assert!(d.max_abs_diff(&M::diag_real(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
        let g = psd_sqrt(&M::diag_real(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(g.max_abs_diff(&M::diag_real(&[r, 0.0, 0.0, r])) < 1e-15);
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        let m = M::diag_real(&[1.0, -1e-6]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NotPsd { .. })));
        // Within the clamp tolerance it is accepted.
        assert!(psd_sqrt(&M::diag_real(&[1.0, -1e-12])).is_ok());
    }

    #[test]
    fn sqrt_squares_back() {
        for seed in 0..20 {
            let m = random_psd(6, 1 + (seed as usize % 6), seed);
            let r = psd_sqrt(&m).unwrap();
            assert!((&r * &r).max_abs_diff(&m) <= 1e-9);
        }
    }

    #[test]
    fn factor_reproduces_low_rank() {
        let m = random_psd(5, 2, 9);
        let x = psd_factor(&m);
        assert_eq!(x.cols(), 2);
        assert!((&x * &x.adjoint()).max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn singular_values_match_gram_spectrum() {
        let g = gaussian_matrix::<f64>(4, 3, &mut rng_from_seed(5));
        let sv = singular_values(&g);
        let mut w = eigvalsh(&(&g.adjoint() * &g)).unwrap();
        w.reverse();
        for (s, l) in sv.iter().zip(&w) {
            assert!((s * s - l).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_values_resolve_tiny_values() {
        let m = M::diag_real(&[1.0, 1e-12]);
        let u = orthonormalize_columns(&gaussian_matrix::<f64>(2, 2, &mut rng_from_seed(3))).unwrap();
        let sv = singular_values(&(&(&u * &m) * &u.adjoint()));
        assert!((sv[1] - 1e-12).abs() < 1e-15);
    }

    #[test]
    fn gram_schmidt_flags_dependence() {
        let m = M::from_real_rows(&[&[1.0, 2.0], &[1.0, 2.0]]);
        assert!(orthonormalize_columns(&m).is_none());
    }

    #[test]
    fn f32_eigh_reconstructs() {
        let h = random_hermitian(5, 77).cast::<f32>();
        let e = eigh(&h).unwrap();
        assert!(e.reconstruct().max_abs_diff(&h) < 1e-4);
    }
}
