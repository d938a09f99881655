//! Entanglement measures: spin flip, Wootters concurrence, the closed-form
//! concurrence of assistance, and I-concurrence in generator and purity form.
//!
//! The `λ` spectrum shared by the Wootters concurrence and the concurrence of
//! assistance is the set of square roots of the eigenvalues of `ρ ρ̃`. It is
//! computed as the singular values of `Xᵀ (σy⊗σy) X` for a factor
//! `ρ = X X†`: those singular values are exactly the `λᵢ`, and a one-sided
//! Jacobi SVD resolves small `λᵢ` to absolute accuracy `ε‖ρ‖` instead of the
//! `√ε` lost by taking square roots of clamped eigenvalues.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    eigh, eigh_unchecked, hermitian_trace_norm, kron, partial_trace, partial_transpose, psd_factor,
    psd_sqrt, singular_values, vec_norm, ComplexMatrix, Dims,
};
use crate::scalar::Real;
use crate::states::{validate_density, State};

/// `σy ⊗ σy` in the basis `|00>, |01>, |10>, |11>`; real and symmetric.
fn yy_entry<T: Real>(i: usize, j: usize) -> T {
    match (i, j) {
        (0, 3) | (3, 0) => -T::one(),
        (1, 2) | (2, 1) => T::one(),
        _ => T::zero(),
    }
}

pub fn sigma_y_pair<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(4, 4, |i, j| Complex::new(yy_entry(i, j), T::zero()))
}

fn two_qubit_dims() -> Dims {
    Dims::new(vec![2, 2]).expect("positive")
}

fn ensure_4x4<T: Real>(rho: &ComplexMatrix<T>) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit operator must be 4x4, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(())
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`
pub fn spin_flip<T: Real>(rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    ensure_4x4(rho)?;
    let y = sigma_y_pair::<T>();
    Ok(&(&y * &rho.conj()) * &y)
}

/// Descending `λ` spectrum of a two-qubit PSD operator of any trace; the
/// result scales linearly with `ρ`.
pub(crate) fn lambdas_unchecked<T: Real>(rho: &ComplexMatrix<T>) -> [T; 4] {
    lambdas_from_factor(&psd_factor(rho))
}

/// `λ` spectrum from a factor `X` (4 x r) with `ρ = X X†`.
pub(crate) fn lambdas_from_factor<T: Real>(x: &ComplexMatrix<T>) -> [T; 4] {
    let r = x.cols();
    // Y X: row swap with signs, since σy⊗σy only pairs 0<->3 and 1<->2.
    let yx = ComplexMatrix::from_fn(4, r, |i, j| match i {
        0 => -x[(3, j)],
        1 => x[(2, j)],
        2 => x[(1, j)],
        _ => -x[(0, j)],
    });
    let t = ComplexMatrix::from_fn(r, r, |j, k| {
        (0..4).fold(Complex::zero(), |acc, a| acc + x[(a, j)] * yx[(a, k)])
    });
    let sv = singular_values(&t);
    let mut out = [T::zero(); 4];
    for (o, s) in out.iter_mut().zip(sv) {
        *o = s;
    }
    out
}

/// Wootters combination `max(0, λ1 - λ2 - λ3 - λ4)`.
pub(crate) fn wootters_from_lambdas<T: Real>(l: &[T; 4]) -> T {
    (l[0] - l[1] - l[2] - l[3]).max(T::zero())
}

/// Descending `λ` spectrum of a validated two-qubit density.
pub fn concurrence_lambdas<T: Real>(rho: &ComplexMatrix<T>) -> Result<[T; 4]> {
    ensure_4x4(rho)?;
    validate_density(rho, &two_qubit_dims())?;
    Ok(lambdas_unchecked(rho))
}

/// Same spectrum via the Hermitian proxy `√ρ ρ̃ √ρ`: square roots of its
/// eigenvalues, clamped at zero. Loses about `√ε` on vanishing `λ`s; kept as
/// an independent cross-check of [`concurrence_lambdas`].
pub fn concurrence_lambdas_proxy<T: Real>(rho: &ComplexMatrix<T>) -> Result<[T; 4]> {
    ensure_4x4(rho)?;
    validate_density(rho, &two_qubit_dims())?;
    let root = psd_sqrt(rho)?;
    let proxy = &(&root * &spin_flip(rho)?) * &root;
    let mut w: Vec<T> = eigh_unchecked(&proxy)
        .values
        .iter()
        .map(|&x| x.max(T::zero()).sqrt())
        .collect();
    w.reverse();
    Ok([w[0], w[1], w[2], w[3]])
}

/// `max(0, λ1 - λ2 - λ3 - λ4)`
pub fn wootters_concurrence<T: Real>(rho: &ComplexMatrix<T>) -> Result<T> {
    Ok(wootters_from_lambdas(&concurrence_lambdas(rho)?))
}

/// Concurrence of assistance `Σ λᵢ` of a two-qubit density.
pub fn coa<T: Real>(rho: &ComplexMatrix<T>) -> Result<T> {
    Ok(concurrence_lambdas(rho)?.iter().copied().sum())
}

fn ensure_unit<T: Real>(psi: &[Complex<T>], dims: &Dims) -> Result<()> {
    if psi.len() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes for dimensions {dims}",
            psi.len()
        )));
    }
    let norm = vec_norm(psi);
    if (norm - T::one()).abs().as_f64() > T::NORM_TOL {
        return Err(Error::NotNormalized { value: norm.as_f64() });
    }
    Ok(())
}

/// `2 (1 - Tr ρ_part²)` for a unit vector, cut between `part` and the rest.
pub fn pure_concurrence_sq_cut<T: Real>(psi: &[Complex<T>], dims: &Dims, part: &[usize]) -> Result<T> {
    ensure_unit(psi, dims)?;
    let reduced = partial_trace(&ComplexMatrix::projector(psi), dims, part)?;
    let purity: T = reduced.as_slice().iter().map(|z| z.norm_sqr()).sum();
    Ok(((T::one() - purity) * T::lit(2.0)).max(T::zero()))
}

/// `√(2 (1 - Tr ρ_A²))` with `A` the first tensor factor.
pub fn pure_concurrence<T: Real>(psi: &[Complex<T>], dims: &Dims) -> Result<T> {
    Ok(pure_concurrence_sq_cut(psi, dims, &[0])?.sqrt())
}

/// I-concurrence of an unnormalized bipartite vector scaled by its weight:
/// `‖χ‖² C(χ/‖χ‖) = √(2 (‖χ‖⁴ - Tr ρ_A²))`. Evaluated as
/// `2 √(Σ |2x2 minors of χ|²)` (Cauchy-Binet), which avoids the
/// cancellation of the purity difference near product vectors.
pub(crate) fn weighted_pure_i_concurrence<T: Real>(chi: &[Complex<T>], da: usize, db: usize) -> T {
    let mut sum = T::zero();
    for a in 0..da {
        for a2 in a + 1..da {
            for b in 0..db {
                for b2 in b + 1..db {
                    let m = chi[a * db + b] * chi[a2 * db + b2] - chi[a * db + b2] * chi[a2 * db + b];
                    sum = sum + m.norm_sqr();
                }
            }
        }
    }
    sum.sqrt() * T::lit(2.0)
}

/// The `d(d-1)/2` real antisymmetric generators `E_ab - E_ba` (`a < b`) of SO(d).
#[derive(Clone, Debug)]
pub struct SoGenerators<T: Real> {
    d: usize,
    generators: Vec<ComplexMatrix<T>>,
}

impl<T: Real> SoGenerators<T> {
    pub fn new(d: usize) -> Self {
        let mut generators = Vec::with_capacity(d * d.saturating_sub(1) / 2);
        for a in 0..d {
            for b in a + 1..d {
                let mut l = ComplexMatrix::zeros(d, d);
                l[(a, b)] = Complex::new(T::one(), T::zero());
                l[(b, a)] = Complex::new(-T::one(), T::zero());
                generators.push(l);
            }
        }
        Self { d, generators }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[ComplexMatrix<T>] {
        &self.generators
    }
}

/// `√(Σ_mn |<φ*| L_m ⊗ L_n |φ>|²)` for a unit vector on `d x d`.
pub fn i_concurrence_generators<T: Real>(psi: &[Complex<T>], dims: &Dims) -> Result<T> {
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::DimensionMismatch(format!(
            "generator form needs equal local dimensions, got {dims}"
        )));
    }
    ensure_unit(psi, dims)?;
    let so = SoGenerators::<T>::new(dims[0]);
    let mut total = T::zero();
    for lm in so.generators() {
        for ln in so.generators() {
            let s = kron(lm, ln);
            let sp = s.mul_vec(psi)?;
            // <φ*| S |φ> = φᵀ S φ
            let v = psi.iter().zip(&sp).fold(Complex::zero(), |acc, (a, b)| acc + a * b);
            total = total + v.norm_sqr();
        }
    }
    Ok(total.sqrt())
}

/// I-concurrence in purity form, `√(2(1 - Tr ρ_A²))`; equal local
/// dimensions are not required.
pub fn i_concurrence_purity<T: Real>(psi: &[Complex<T>], dims: &Dims) -> Result<T> {
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch(format!("bipartite dims expected, got {dims}")));
    }
    pure_concurrence(psi, dims)
}

/// Entanglement of assistance of a pure `2 x 2 x n3` state: the closed-form
/// concurrence of assistance of its AB marginal.
pub fn eoa_pure_tripartite<T: Real>(state: &State<T>) -> Result<T> {
    let dims = state.dims();
    if !state.is_pure() {
        return Err(Error::Unsupported("closed form needs a pure tripartite state".into()));
    }
    if dims.len() != 3 || dims[0] != 2 || dims[1] != 2 {
        return Err(Error::DimensionMismatch(format!(
            "closed-form EOA needs dims (2,2,n3), got {dims}"
        )));
    }
    coa(&state.reduced(&[0, 1])?)
}

/// `λ` spectrum from any factor `X` (4 x J). Wide factors are first folded
/// into `X X†` and re-factored so the SVD stays at most 4 x 4.
pub(crate) fn lambdas_from_columns<T: Real>(x: &ComplexMatrix<T>) -> [T; 4] {
    if x.cols() <= 4 {
        lambdas_from_factor(x)
    } else {
        lambdas_unchecked(&(x * &x.adjoint()))
    }
}

/// Concurrence (equivalently I-concurrence) of `σ = X X†` on `da x db`
/// when both local supports are at most two-dimensional: each side is
/// compressed onto its support, leaving an exact two-qubit problem.
/// Returns `None` if either local support is larger. Homogeneous of degree
/// one in `σ`.
pub(crate) fn rank_two_factor_concurrence<T: Real>(x: &ComplexMatrix<T>, da: usize, db: usize) -> Option<T> {
    let cols = x.cols();
    // Local marginals straight from the factor.
    let marginal = |side_a: bool| -> ComplexMatrix<T> {
        let (d, other) = if side_a { (da, db) } else { (db, da) };
        let idx = |k: usize, o: usize| if side_a { k * db + o } else { o * db + k };
        ComplexMatrix::from_fn(d, d, |k, l| {
            let mut s = Complex::zero();
            for o in 0..other {
                for j in 0..cols {
                    s = s + x[(idx(k, o), j)] * x[(idx(l, o), j)].conj();
                }
            }
            s
        })
    };
    let support = |side_a: bool, d: usize| -> Option<ComplexMatrix<T>> {
        if d == 2 {
            return Some(ComplexMatrix::identity(2));
        }
        let e = eigh_unchecked(&marginal(side_a));
        if d == 1 {
            return Some(ComplexMatrix::from_fn(1, 2, |_, j| {
                if j == 0 { Complex::new(T::one(), T::zero()) } else { Complex::zero() }
            }));
        }
        let top = e.values[d - 1].max(T::zero());
        if e.values[d - 3] > top * T::lit(T::RANK_REL_TOL) {
            return None;
        }
        Some(ComplexMatrix::from_fn(d, 2, |i, j| e.vectors[(i, d - 1 - j)]))
    };
    let (pa, pb) = (support(true, da)?, support(false, db)?);
    let compressed = if da == 2 && db == 2 {
        x.clone()
    } else {
        &kron(&pa, &pb).adjoint() * x
    };
    Some(wootters_from_lambdas(&lambdas_from_columns(&compressed)))
}

/// [`rank_two_factor_concurrence`] on an explicit PSD operator.
#[cfg(test)]
pub(crate) fn rank_two_support_concurrence<T: Real>(sigma: &ComplexMatrix<T>, dims: &Dims) -> Option<T> {
    rank_two_factor_concurrence(&psd_factor(sigma), dims[0], dims[1])
}

/// Lower bound on the I-concurrence of a (possibly unnormalized) `da x db`
/// operator from the partial-transpose trace norm:
/// `√(2 / (m(m-1))) · max(0, ‖σ^{T_B}‖₁ - Tr σ)` with `m = min(da, db)`.
pub(crate) fn negativity_bound<T: Real>(sigma: &ComplexMatrix<T>, dims: &Dims) -> T {
    let m = dims[0].min(dims[1]) as f64;
    let pt = partial_transpose(sigma, dims, 1).expect("square operator");
    let excess = hermitian_trace_norm(&pt) - sigma.trace().re;
    (T::lit(2.0 / (m * (m - 1.0)))).sqrt() * excess.max(T::zero())
}

/// Lower bound on the I-concurrence of a bipartite density (validated).
pub fn i_concurrence_lower_bound<T: Real>(rho: &ComplexMatrix<T>, dims: &Dims) -> Result<T> {
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch(format!("bipartite dims expected, got {dims}")));
    }
    validate_density(rho, dims)?;
    Ok(negativity_bound(rho, dims))
}

/// Purity-form I-concurrence of a bipartite state, or `None` when the state
/// is mixed beyond `tol` (largest eigenvalue below `1 - tol`).
pub fn pure_part_concurrence<T: Real>(rho: &ComplexMatrix<T>, dims: &Dims, tol: f64) -> Result<Option<T>> {
    let e = eigh(rho)?;
    let n = e.values.len();
    if (T::one() - e.values[n - 1]).as_f64() > tol {
        return Ok(None);
    }
    let psi = e.vectors.column(n - 1);
    Ok(Some(pure_concurrence(&psi, dims)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_channel, KrausChannel};
    use crate::linalg::random::{gaussian_matrix, rng_from_seed};
    use crate::linalg::{haar_isometry, kron_vec};
    use crate::states::{generalized_ghz, ghz, maximally_entangled, random_pure, w_state};

    type M = ComplexMatrix<f64>;

    fn bell() -> M {
        maximally_entangled::<f64>(2).unwrap().to_density_matrix()
    }

    fn werner(p: f64) -> M {
        &bell().scale_real(p) + &M::identity(4).scale_real((1.0 - p) / 4.0)
    }

    fn random_density(n: usize, rank: usize, seed: u64) -> M {
        let g = gaussian_matrix::<f64>(n, rank, &mut rng_from_seed(seed));
        let m = &g * &g.adjoint();
        let tr = m.trace().re;
        m.scale_real(1.0 / tr)
    }

    #[test]
    fn spin_flip_fixed_points_and_reversal() {
        assert!(spin_flip(&bell()).unwrap().max_abs_diff(&bell()) < 1e-15);
        let d = M::diag_real(&[0.1, 0.2, 0.3, 0.4]);
        assert!(spin_flip(&d).unwrap().max_abs_diff(&M::diag_real(&[0.4, 0.3, 0.2, 0.1])) < 1e-15);
        assert!(spin_flip(&M::identity(2)).is_err());
    }

    #[test]
    fn spin_flip_is_involution() {
        for seed in 0..100 {
            let rho = random_density(4, 1 + seed as usize % 4, seed);
            let twice = spin_flip(&spin_flip(&rho).unwrap()).unwrap();
            assert!(twice.max_abs_diff(&rho) <= 1e-12);
        }
    }

    #[test]
    fn wootters_reference_values() {
        assert!((wootters_concurrence(&bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!(wootters_concurrence(&M::identity(4).scale_real(0.25)).unwrap().abs() < 1e-12);
        // Werner spectrum by hand: λ = ((1+3p)/4, (1-p)/4 x3) -> (3p-1)/2.
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let expect = ((3.0 * p - 1.0) / 2.0f64).max(0.0);
            assert!((wootters_concurrence(&werner(p)).unwrap() - expect).abs() < 1e-12);
        }
        assert!((wootters_concurrence(&werner(0.8)).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn coa_reference_values() {
        let ghz_ab = ghz::<f64>().reduced(&[0, 1]).unwrap();
        assert!((coa(&ghz_ab).unwrap() - 1.0).abs() < 1e-12);
        let w_ab = w_state::<f64>().reduced(&[0, 1]).unwrap();
        assert!((coa(&w_ab).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let mut prod = vec![Complex::zero(); 8];
        prod[0] = Complex::new(1.0, 0.0);
        assert!(coa(&M::projector(&prod[..4])).unwrap().abs() < 1e-12);
    }

    #[test]
    fn proxy_route_agrees() {
        for seed in 0..200 {
            let rho = random_density(4, 1 + seed as usize % 4, 1000 + seed);
            let a = concurrence_lambdas(&rho).unwrap();
            let b = concurrence_lambdas_proxy(&rho).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-7, "seed {seed}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn invalid_density_rejected() {
        assert!(wootters_concurrence(&M::diag_real(&[0.5, 0.5, 0.5, 0.5])).is_err());
        assert!(coa(&M::identity(3).scale_real(1.0 / 3.0)).is_err());
    }

    #[test]
    fn pure_concurrence_examples() {
        let dims = Dims::new(vec![2, 2]).unwrap();
        let phi = maximally_entangled::<f64>(2).unwrap();
        assert!((pure_concurrence(phi.amplitudes().unwrap(), &dims).unwrap() - 1.0).abs() < 1e-12);
        let prod = kron_vec::<f64>(&[Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)], &[
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
        ]);
        assert!(pure_concurrence(&prod, &dims).unwrap().abs() < 1e-7);
        let chi = maximally_entangled::<f64>(3).unwrap();
        let d3 = Dims::new(vec![3, 3]).unwrap();
        let c = pure_concurrence(chi.amplitudes().unwrap(), &d3).unwrap();
        assert!((c - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((c - 1.154700538379).abs() < 1e-11);
        let unnorm = vec![Complex::new(1.0, 0.0); 4];
        assert!(pure_concurrence(&unnorm, &dims).is_err());
    }

    #[test]
    fn generator_form_examples() {
        let d2 = Dims::new(vec![2, 2]).unwrap();
        let phi = maximally_entangled::<f64>(2).unwrap();
        assert!((i_concurrence_generators(phi.amplitudes().unwrap(), &d2).unwrap() - 1.0).abs() < 1e-12);
        let d3 = Dims::new(vec![3, 3]).unwrap();
        let chi = maximally_entangled::<f64>(3).unwrap();
        let g = i_concurrence_generators(chi.amplitudes().unwrap(), &d3).unwrap();
        assert!((g - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        let e0: [Complex<f64>; 3] = [Complex::new(1.0, 0.0), Complex::zero(), Complex::zero()];
        let prod = kron_vec(&e0, &e0);
        assert!(i_concurrence_generators(&prod, &d3).unwrap().abs() < 1e-15);
        assert!(i_concurrence_generators(&[Complex::new(1.0, 0.0); 6], &Dims::new(vec![2, 3]).unwrap()).is_err());
        assert_eq!(SoGenerators::<f64>::new(4).generators().len(), 6);
    }

    #[test]
    fn generator_form_matches_purity_form() {
        for d in 2..=4 {
            let dims = Dims::new(vec![d, d]).unwrap();
            for seed in 0..30 {
                let s = random_pure::<f64>(&dims, seed);
                let psi = s.amplitudes().unwrap();
                let g = i_concurrence_generators(psi, &dims).unwrap();
                let p = i_concurrence_purity(psi, &dims).unwrap();
                assert!((g - p).abs() <= 1e-10, "d={d} seed={seed}");
            }
        }
    }

    #[test]
    fn eoa_pure_tripartite_examples() {
        assert!((eoa_pure_tripartite(&ghz::<f64>()).unwrap() - 1.0).abs() < 1e-12);
        assert!((eoa_pure_tripartite(&w_state::<f64>()).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        for a in [0.0f64, 0.1, 0.5, 0.9, 1.0] {
            let s = generalized_ghz(Complex::new(a, 0.0)).unwrap();
            let expect = 2.0 * a * (1.0 - a * a).sqrt();
            assert!((eoa_pure_tripartite(&s).unwrap() - expect).abs() < 1e-12);
        }
        let s = generalized_ghz(Complex::new(0.5, 0.0)).unwrap();
        assert!((eoa_pure_tripartite(&s).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let d = Dims::new(vec![3, 2, 2]).unwrap();
        assert!(eoa_pure_tripartite(&random_pure::<f64>(&d, 1)).is_err());
        assert!(eoa_pure_tripartite(&ghz::<f64>().into_density()).is_err());
    }

    #[test]
    fn rank_two_compression_matches_wootters_on_qubits() {
        let dims = Dims::new(vec![2, 2]).unwrap();
        for seed in 0..20 {
            let rho = random_density(4, 2, seed);
            let a = rank_two_support_concurrence(&rho, &dims).unwrap();
            assert!((a - wootters_concurrence(&rho).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_two_compression_on_qutrit_embedding() {
        // Embed a two-qubit density into 3 x 2 through a random isometry on A.
        let dims = Dims::new(vec![3, 2]).unwrap();
        for seed in 0..20 {
            let rho = random_density(4, 3, 50 + seed);
            let v = haar_isometry::<f64>(3, 2, seed).unwrap();
            let big = kron(&v, &M::identity(2));
            let embedded = &(&big * &rho) * &big.adjoint();
            let c = rank_two_support_concurrence(&embedded, &dims).unwrap();
            assert!((c - wootters_concurrence(&rho).unwrap()).abs() < 1e-10);
        }
        let full = random_density(6, 6, 3);
        assert!(rank_two_support_concurrence(&full, &dims).is_none());
    }

    #[test]
    fn negativity_bound_is_tight_on_maximally_entangled() {
        for d in 2..=4 {
            let dims = Dims::new(vec![d, d]).unwrap();
            let chi = maximally_entangled::<f64>(d).unwrap().to_density_matrix();
            let lb = i_concurrence_lower_bound(&chi, &dims).unwrap();
            assert!((lb - (2.0 * (d as f64 - 1.0) / d as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn negativity_bound_below_pure_value() {
        let dims = Dims::new(vec![3, 3]).unwrap();
        for seed in 0..30 {
            let s = random_pure::<f64>(&dims, seed);
            let lb = i_concurrence_lower_bound(&s.to_density_matrix(), &dims).unwrap();
            let c = i_concurrence_purity(s.amplitudes().unwrap(), &dims).unwrap();
            assert!(lb <= c + 1e-12);
        }
    }

    #[test]
    fn minor_form_matches_purity_form() {
        for (da, db) in [(2, 2), (3, 2), (2, 4), (3, 3), (4, 3)] {
            let dims = Dims::new(vec![da, db]).unwrap();
            for seed in 0..20 {
                let s = random_pure::<f64>(&dims, seed);
                let psi = s.amplitudes().unwrap();
                let c = pure_concurrence(psi, &dims).unwrap();
                assert!((weighted_pure_i_concurrence(psi, da, db) - c).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn weighted_i_concurrence_is_homogeneous() {
        let dims = Dims::new(vec![3, 2]).unwrap();
        let s = random_pure::<f64>(&dims, 4);
        let psi = s.amplitudes().unwrap();
        let c = pure_concurrence(psi, &dims).unwrap();
        let scaled: Vec<_> = psi.iter().map(|z| z * 0.5).collect();
        assert!((weighted_pure_i_concurrence(&scaled, 3, 2) - 0.25 * c).abs() < 1e-14);
    }

    #[test]
    fn pure_part_detection() {
        let dims = Dims::new(vec![2, 2]).unwrap();
        let c = pure_part_concurrence(&bell(), &dims, 1e-10).unwrap();
        assert!((c.unwrap() - 1.0).abs() < 1e-12);
        let mixed = apply_channel(
            &maximally_entangled::<f64>(2).unwrap(),
            &KrausChannel::phase_damping(0.5).unwrap(),
            1,
        )
        .unwrap();
        assert!(pure_part_concurrence(&mixed.to_density_matrix(), &dims, 1e-10).unwrap().is_none());
    }
}
