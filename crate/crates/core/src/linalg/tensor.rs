//! Tensor-product structure: Kronecker products, partial traces and
//! single-subsystem operator embedding.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::{ComplexMatrix, Dims};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Kronecker product of two vectors.
pub fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Row-major digits of `index` in the mixed radix `dims`.
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn compose(digits: &[usize], dims: &[usize], pick: &[usize]) -> usize {
    pick.iter().fold(0, |acc, &k| acc * dims[k] + digits[k])
}

fn check_square(m: &ComplexMatrix<impl Real>, dims: &Dims) -> Result<()> {
    if !m.is_square() || m.rows() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator does not match subsystem dimensions {dims}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Reduced operator on the subsystems listed in `keep` (kept in ascending order).
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &Dims,
    keep: &[usize],
) -> Result<ComplexMatrix<T>> {
    check_square(m, dims)?;
    let d = dims.as_slice();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.iter().any(|&k| k >= d.len()) {
        return Err(Error::DimensionMismatch(format!(
            "keep set {keep:?} out of range for {dims}"
        )));
    }
    let traced: Vec<usize> = (0..d.len()).filter(|k| !keep.contains(k)).collect();
    let out_dim: usize = keep.iter().map(|&k| d[k]).product();
    let n = m.rows();
    let table: Vec<(usize, usize)> = {
        let mut dig = vec![0; d.len()];
        (0..n)
            .map(|i| {
                digits(i, d, &mut dig);
                (compose(&dig, d, &keep), compose(&dig, d, &traced))
            })
            .collect()
    };
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for r in 0..n {
        let (rk, rt) = table[r];
        for c in 0..n {
            let (ck, ct) = table[c];
            if rt == ct {
                out[(rk, ck)] = out[(rk, ck)] + m[(r, c)];
            }
        }
    }
    Ok(out)
}

/// Partial transpose on subsystem `sys`.
pub fn partial_transpose<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &Dims,
    sys: usize,
) -> Result<ComplexMatrix<T>> {
    check_square(m, dims)?;
    let d = dims.as_slice();
    if sys >= d.len() {
        return Err(Error::DimensionMismatch(format!("no subsystem {sys} in {dims}")));
    }
    let n = m.rows();
    let all: Vec<usize> = (0..d.len()).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    let (mut dr, mut dc) = (vec![0; d.len()], vec![0; d.len()]);
    for r in 0..n {
        digits(r, d, &mut dr);
        for c in 0..n {
            digits(c, d, &mut dc);
            std::mem::swap(&mut dr[sys], &mut dc[sys]);
            out[(compose(&dr, d, &all), compose(&dc, d, &all))] = m[(r, c)];
            std::mem::swap(&mut dr[sys], &mut dc[sys]);
        }
    }
    Ok(out)
}

/// `1 ⊗ … ⊗ op ⊗ … ⊗ 1` with `op` acting on subsystem `sys`; `op` may be
/// rectangular (`out_dim x dims[sys]`).
pub fn embed<T: Real>(op: &ComplexMatrix<T>, dims: &Dims, sys: usize) -> Result<ComplexMatrix<T>> {
    if sys >= dims.len() || op.cols() != dims[sys] {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator cannot act on subsystem {sys} of {dims}",
            op.rows(),
            op.cols()
        )));
    }
    let left: usize = dims.as_slice()[..sys].iter().product();
    let right: usize = dims.as_slice()[sys + 1..].iter().product();
    Ok(kron(
        &kron(&ComplexMatrix::identity(left), op),
        &ComplexMatrix::identity(right),
    ))
}

/// Applies `op` on subsystem `sys` of a state vector without forming the
/// embedded operator.
pub fn apply_local<T: Real>(
    op: &ComplexMatrix<T>,
    psi: &[Complex<T>],
    dims: &Dims,
    sys: usize,
) -> Result<Vec<Complex<T>>> {
    if sys >= dims.len() || op.cols() != dims[sys] || psi.len() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator cannot act on subsystem {sys} of a {}-vector with dims {dims}",
            op.rows(),
            op.cols(),
            psi.len()
        )));
    }
    let left: usize = dims.as_slice()[..sys].iter().product();
    let right: usize = dims.as_slice()[sys + 1..].iter().product();
    let (din, dout) = (op.cols(), op.rows());
    let mut out = vec![Complex::zero(); left * dout * right];
    for l in 0..left {
        for o in 0..dout {
            for i in 0..din {
                let a = op[(o, i)];
                if a.is_zero() {
                    continue;
                }
                for r in 0..right {
                    out[(l * dout + o) * right + r] =
                        out[(l * dout + o) * right + r] + a * psi[(l * din + i) * right + r];
                }
            }
        }
    }
    Ok(out)
}
