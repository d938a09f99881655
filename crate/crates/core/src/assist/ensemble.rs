//! Pure-state decompositions of a density operator through unitary mixing
//! of its eigen-ensemble, and the decomposition-based concurrence oracles.

use num_complex::Complex;
use num_traits::Zero;

use super::optimizer::{maximize_isometry, OptimizerConfig};
use crate::error::{Error, Result};
use crate::linalg::{eigh, vec_norm, ComplexMatrix, Dims};
use crate::measures::weighted_pure_i_concurrence;
use crate::scalar::Real;
use crate::states::validate_density;

/// Weighted pure states whose mixture is a parent density.
#[derive(Clone, Debug)]
pub struct Ensemble<T: Real> {
    pub members: Vec<(T, Vec<Complex<T>>)>,
    pub dims: Dims,
}

impl<T: Real> Ensemble<T> {
    pub fn total_weight(&self) -> T {
        self.members.iter().map(|(w, _)| *w).sum()
    }

    /// `Σ wᵢ |φᵢ><φᵢ|`
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.dims.total();
        self.members.iter().fold(ComplexMatrix::zeros(n, n), |acc, (w, v)| {
            &acc + &ComplexMatrix::projector(v).scale_real(*w)
        })
    }

    /// Average pure-state I-concurrence `Σ wᵢ C(φᵢ)` for a bipartite ensemble.
    pub fn average_concurrence(&self) -> T {
        let (da, db) = (self.dims[0], self.dims[1]);
        self.members
            .iter()
            .map(|(w, v)| {
                let scaled: Vec<_> = v.iter().map(|z| z.scale(w.sqrt())).collect();
                weighted_pure_i_concurrence(&scaled, da, db)
            })
            .sum()
    }
}

/// Eigen-ensemble as a factor: columns `√μⱼ |eⱼ>` for `μⱼ > PSD_TOL`.
pub(crate) fn eigen_factor<T: Real>(rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let e = eigh(rho)?;
    let n = rho.rows();
    let kept: Vec<usize> = (0..n).rev().filter(|&k| e.values[k].as_f64() > T::PSD_TOL).collect();
    if kept.is_empty() {
        return Err(Error::InvalidParameter("operator has no support".into()));
    }
    Ok(ComplexMatrix::from_fn(n, kept.len(), |i, j| {
        e.vectors[(i, kept[j])].scale(e.values[kept[j]].sqrt())
    }))
}

/// Unnormalized members `Σⱼ mixᵢⱼ √μⱼ |eⱼ>`, one per row of `mix`.
fn mixed_members<T: Real>(factor: &ComplexMatrix<T>, mix: &ComplexMatrix<T>) -> Vec<Vec<Complex<T>>> {
    let n = factor.rows();
    (0..mix.rows())
        .map(|i| {
            (0..n)
                .map(|a| (0..factor.cols()).fold(Complex::zero(), |acc, j| acc + mix[(i, j)] * factor[(a, j)]))
                .collect()
        })
        .collect()
}

/// Decomposition of `rho` obtained by mixing its eigen-ensemble with the
/// `K x r` isometry `mix` (`r` = number of eigenvalues above `PSD_TOL`).
/// Members of vanishing weight are dropped.
pub fn hjw_ensemble<T: Real>(rho: &ComplexMatrix<T>, dims: &Dims, mix: &ComplexMatrix<T>) -> Result<Ensemble<T>> {
    validate_density(rho, dims)?;
    let factor = eigen_factor(rho)?;
    if mix.cols() != factor.cols() {
        return Err(Error::DimensionMismatch(format!(
            "mix has {} columns but rank is {}",
            mix.cols(),
            factor.cols()
        )));
    }
    mix.ensure_isometry()?;
    let members = mixed_members(&factor, mix)
        .into_iter()
        .filter_map(|v| {
            let norm = vec_norm(&v);
            let w = norm * norm;
            (w.as_f64() > T::PROB_FLOOR).then(|| (w, v.iter().map(|z| z.unscale(norm)).collect()))
        })
        .collect();
    Ok(Ensemble { members, dims: dims.clone() })
}

fn decomposition_average<T: Real>(factor: &ComplexMatrix<T>, mix: &ComplexMatrix<T>, da: usize, db: usize) -> T {
    mixed_members(factor, mix)
        .iter()
        .map(|v| weighted_pure_i_concurrence(v, da, db))
        .sum()
}

/// Best average pure-state concurrence over decompositions of a two-qubit
/// density with up to `2r` members, found by ascent over the mixing
/// isometry. Never exceeds the true maximum; an independent oracle for the
/// closed-form concurrence of assistance.
pub fn coa_convex_max<T: Real>(rho: &ComplexMatrix<T>, cfg: &OptimizerConfig) -> Result<T> {
    let dims = Dims::new(vec![2, 2])?;
    validate_density(rho, &dims)?;
    let factor = eigen_factor(rho)?;
    let r = factor.cols();
    if r == 1 {
        return Ok(decomposition_average(&factor, &ComplexMatrix::identity(1), 2, 2));
    }
    let opt = maximize_isometry(2 * r, r, cfg, None, |w| decomposition_average(&factor, w, 2, 2))?;
    Ok(opt.value)
}

/// Smallest average pure-state I-concurrence found over decompositions of
/// a bipartite density: an upper bound on its convex-roof I-concurrence.
/// Exact (single member) for pure inputs.
pub fn convex_roof_upper<T: Real>(rho: &ComplexMatrix<T>, dims: &Dims, cfg: &OptimizerConfig) -> Result<T> {
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch(format!("bipartite dims expected, got {dims}")));
    }
    validate_density(rho, dims)?;
    let factor = eigen_factor(rho)?;
    let r = factor.cols();
    let (da, db) = (dims[0], dims[1]);
    let eigen = decomposition_average(&factor, &ComplexMatrix::identity(r), da, db);
    if r == 1 {
        return Ok(eigen);
    }
    let opt = maximize_isometry(2 * r, r, cfg, None, |w| -decomposition_average(&factor, w, da, db))?;
    Ok(eigen.min(-opt.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_isometry;
    use crate::measures::{coa, wootters_concurrence};
    use crate::states::{ghz, maximally_entangled, w_state};

    type M = ComplexMatrix<f64>;

    fn quick() -> OptimizerConfig {
        OptimizerConfig { restarts: 8, max_iters: 500, ..OptimizerConfig::default() }
    }

    #[test]
    fn identity_mix_is_eigen_ensemble() {
        let rho = M::diag_real(&[0.5, 0.25, 0.25, 0.0]);
        let dims = Dims::new(vec![2, 2]).unwrap();
        let ens = hjw_ensemble(&rho, &dims, &M::identity(3)).unwrap();
        let weights: Vec<f64> = ens.members.iter().map(|(w, _)| *w).collect();
        assert_eq!(weights.len(), 3);
        assert!((weights[0] - 0.5).abs() < 1e-15);
        assert!(ens.reconstruct().max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn hadamard_mix_on_ghz_marginal_gives_bell_pair() {
        let rho = ghz::<f64>().reduced(&[0, 1]).unwrap();
        let dims = Dims::new(vec![2, 2]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mix = M::from_real_rows(&[&[h, h], &[h, -h]]);
        let ens = hjw_ensemble(&rho, &dims, &mix).unwrap();
        assert_eq!(ens.members.len(), 2);
        for (w, v) in &ens.members {
            assert!((w - 0.5).abs() < 1e-12);
            let c = wootters_concurrence(&M::projector(v)).unwrap();
            assert!((c - 1.0).abs() < 1e-12);
        }
        assert!((ens.average_concurrence() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn any_mix_reconstructs_parent() {
        let rho = w_state::<f64>().reduced(&[0, 1]).unwrap();
        let dims = Dims::new(vec![2, 2]).unwrap();
        for seed in 0..50 {
            let mix = haar_isometry::<f64>(5, 2, seed).unwrap();
            let ens = hjw_ensemble(&rho, &dims, &mix).unwrap();
            assert!(ens.reconstruct().max_abs_diff(&rho) < 1e-9);
            assert!((ens.total_weight() - 1.0).abs() < 1e-10);
        }
        let not_iso = M::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(hjw_ensemble(&rho, &dims, &not_iso).is_err());
        assert!(hjw_ensemble(&rho, &dims, &M::identity(3)).is_err());
    }

    #[test]
    fn convex_max_reaches_closed_form() {
        let ghz_ab = ghz::<f64>().reduced(&[0, 1]).unwrap();
        assert!((coa_convex_max(&ghz_ab, &quick()).unwrap() - 1.0).abs() < 1e-4);
        let w_ab = w_state::<f64>().reduced(&[0, 1]).unwrap();
        let v = coa_convex_max(&w_ab, &quick()).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-4, "{v}");
        assert!(v <= coa(&w_ab).unwrap() + 1e-9, "{v} {}", coa(&w_ab).unwrap());
    }

    #[test]
    fn convex_max_of_pure_input_is_its_concurrence() {
        let bell = maximally_entangled::<f64>(2).unwrap().to_density_matrix();
        assert!((coa_convex_max(&bell, &quick()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn convex_roof_upper_bounds_wootters() {
        let rho = w_state::<f64>().reduced(&[0, 1]).unwrap();
        let dims = Dims::new(vec![2, 2]).unwrap();
        let up = convex_roof_upper(&rho, &dims, &quick()).unwrap();
        let exact = wootters_concurrence(&rho).unwrap();
        assert!(up >= exact - 1e-12, "{up} {exact}");
        assert!(up - exact < 1e-3, "{up} vs {exact}");
    }
}
