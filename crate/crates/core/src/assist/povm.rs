//! Charlie's assistance: rank-1 POVMs on the third subsystem, the average
//! concurrence they leave between the first two, and its maximization.
//!
//! Everything works on a factor `F` of the tripartite operator
//! (`ρ = F F†`, one column for a pure state). Outcome `i` of the POVM with
//! isometry `V` leaves the unnormalized conditional `σᵢ = Xᵢ Xᵢ†` with
//! `Xᵢ[ab, j] = Σ_c V_ic F[abc, j]`, so no conditional density is formed
//! explicitly and the weight `pᵢ = ‖Xᵢ‖²` comes for free.

use num_complex::Complex;
use num_traits::Zero;

use super::optimizer::{maximize_isometry, Optimum, OptimizerConfig};
use crate::error::{Error, Result};
use crate::linalg::{psd_factor, ComplexMatrix, Dims};
use crate::measures::{negativity_bound, rank_two_factor_concurrence, weighted_pure_i_concurrence};
use crate::scalar::Real;
use crate::states::{validate_density, State};

/// Rank-1 POVM `Eᵢ = |uᵢ><uᵢ|` with `Σ Eᵢ = I`.
#[derive(Clone, Debug)]
pub struct Povm<T: Real> {
    vectors: Vec<Vec<Complex<T>>>,
}

impl<T: Real> Povm<T> {
    pub fn arity(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn elements(&self) -> Vec<ComplexMatrix<T>> {
        self.vectors.iter().map(|u| ComplexMatrix::projector(u)).collect()
    }

    /// `max |Σ Eᵢ - I|`
    pub fn completeness_residual(&self) -> T {
        let n = self.dim();
        let sum = self
            .elements()
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, e| &acc + e);
        sum.max_abs_diff(&ComplexMatrix::identity(n))
    }

    /// The isometry `V` with `V_ic = conj(uᵢ[c])`.
    fn isometry(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.arity(), self.dim(), |i, c| self.vectors[i][c].conj())
    }
}

/// POVM whose `i`-th element is `v† |i><i| v`; `v` must be a `K x n3` isometry.
pub fn povm_from_isometry<T: Real>(v: &ComplexMatrix<T>) -> Result<Povm<T>> {
    v.ensure_isometry()?;
    let vectors = (0..v.rows()).map(|i| v.row(i).iter().map(|z| z.conj()).collect()).collect();
    Ok(Povm { vectors })
}

/// How the concurrence of a mixed conditional state is evaluated. Every
/// variant returns a lower bound on the true (convex-roof) value, so the
/// optimized averages stay lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerBound {
    /// Exact when both local supports are at most two-dimensional (always
    /// for two qubits, and for every conditional of a `d x 2` evolved pure
    /// state); 0 otherwise.
    RankTwoSupport,
    /// Partial-transpose trace-norm bound; for `d x d` with `d > 2`.
    Negativity,
}

impl InnerBound {
    pub fn for_dims(da: usize, db: usize) -> Self {
        if da.min(db) <= 2 {
            InnerBound::RankTwoSupport
        } else {
            InnerBound::Negativity
        }
    }
}

/// Assistance problem for a fixed tripartite state: the factor and the
/// local dimensions it lives on.
#[derive(Clone, Debug)]
pub struct Assistance<T: Real> {
    factor: ComplexMatrix<T>,
    da: usize,
    db: usize,
    n3: usize,
    inner: InnerBound,
}

impl<T: Real> Assistance<T> {
    pub fn new(state: &State<T>) -> Result<Self> {
        let dims = state.dims();
        Self::with_inner(state, InnerBound::for_dims(dims[0].max(1), dims.as_slice().get(1).copied().unwrap_or(1)))
    }

    pub fn with_inner(state: &State<T>, inner: InnerBound) -> Result<Self> {
        let dims = state.dims();
        if dims.len() != 3 {
            return Err(Error::DimensionMismatch(format!("tripartite dims expected, got {dims}")));
        }
        let factor = match state {
            State::Pure { amplitudes, .. } => ComplexMatrix::column_vector(amplitudes),
            State::Density { rho, .. } => {
                validate_density(rho, dims)?;
                psd_factor(rho)
            }
        };
        Ok(Self {
            factor,
            da: dims[0],
            db: dims[1],
            n3: dims[2],
            inner,
        })
    }

    pub fn n3(&self) -> usize {
        self.n3
    }

    /// Unnormalized conditional factor for outcome `i` of isometry `v`.
    fn conditional(&self, v: &ComplexMatrix<T>, i: usize) -> ComplexMatrix<T> {
        let n3 = self.n3;
        ComplexMatrix::from_fn(self.da * self.db, self.factor.cols(), |ab, j| {
            (0..n3).fold(Complex::zero(), |acc, c| acc + v[(i, c)] * self.factor[(ab * n3 + c, j)])
        })
    }

    /// `pᵢ · C(σᵢ / pᵢ)` with the configured inner bound.
    fn weighted_inner(&self, x: &ComplexMatrix<T>) -> T {
        let weight: T = x.as_slice().iter().map(|z| z.norm_sqr()).sum();
        if weight.as_f64() < T::PROB_FLOOR {
            return T::zero();
        }
        if x.cols() == 1 {
            return weighted_pure_i_concurrence(x.as_slice(), self.da, self.db);
        }
        match self.inner {
            InnerBound::RankTwoSupport => rank_two_factor_concurrence(x, self.da, self.db).unwrap_or_else(T::zero),
            InnerBound::Negativity => {
                let dims = Dims::new(vec![self.da, self.db]).expect("positive");
                negativity_bound(&(x * &x.adjoint()), &dims)
            }
        }
    }

    /// `Σᵢ pᵢ C(ρ_AB|i)` for the POVM with isometry `v` (`K x n3`).
    pub fn average(&self, v: &ComplexMatrix<T>) -> T {
        (0..v.rows()).map(|i| self.weighted_inner(&self.conditional(v, i))).sum()
    }

    /// Optimized POVM of arity `k`, optionally warm-started.
    pub fn optimize(&self, k: usize, cfg: &OptimizerConfig, warm: Option<&ComplexMatrix<T>>) -> Result<Optimum<T>> {
        if k < self.n3 {
            return Err(Error::InvalidParameter(format!(
                "POVM arity {k} below the measured dimension {}",
                self.n3
            )));
        }
        maximize_isometry(k, self.n3, cfg, warm, |v| self.average(v))
    }
}

/// Average concurrence left between the first two parties after the POVM
/// on the third; outcomes with `pᵢ < PROB_FLOOR` contribute 0.
pub fn assisted_average<T: Real>(state: &State<T>, povm: &Povm<T>) -> Result<T> {
    let problem = Assistance::new(state)?;
    if povm.dim() != problem.n3 {
        return Err(Error::DimensionMismatch(format!(
            "POVM acts on dimension {}, third subsystem has {}",
            povm.dim(),
            problem.n3
        )));
    }
    Ok(problem.average(&povm.isometry()))
}

/// Lower bound on the entanglement of assistance by POVM optimization at
/// arity `k` (default `2 n3`).
pub fn eoa_lower_bound<T: Real>(state: &State<T>, cfg: &OptimizerConfig, k: Option<usize>) -> Result<T> {
    let problem = Assistance::new(state)?;
    let k = k.unwrap_or(2 * problem.n3);
    Ok(problem.optimize(k, cfg, None)?.value)
}

/// Bounds at increasing arities; each arity starts one restart from the
/// previous optimum padded with zero rows, so the sequence never decreases.
pub fn eoa_lower_bound_sweep<T: Real>(state: &State<T>, cfg: &OptimizerConfig, arities: &[usize]) -> Result<Vec<T>> {
    let problem = Assistance::new(state)?;
    let mut out = Vec::with_capacity(arities.len());
    let mut prev: Option<ComplexMatrix<T>> = None;
    for &k in arities {
        let warm = match &prev {
            Some(p) if p.rows() <= k => Some(ComplexMatrix::from_fn(k, problem.n3, |i, c| {
                if i < p.rows() { p[(i, c)] } else { Complex::zero() }
            })),
            Some(_) => {
                return Err(Error::InvalidParameter("arities must be non-decreasing".into()));
            }
            None => None,
        };
        let opt = problem.optimize(k, cfg, warm.as_ref())?;
        out.push(opt.value);
        prev = Some(opt.argmax);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_channel, KrausChannel};
    use crate::linalg::haar_isometry;
    use crate::measures::{coa, eoa_pure_tripartite};
    use crate::states::{generalized_ghz, ghz, random_pure, w_state};

    type M = ComplexMatrix<f64>;

    fn cfg() -> OptimizerConfig {
        OptimizerConfig::default().with_seed(3)
    }

    fn hadamard() -> M {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        M::from_real_rows(&[&[h, h], &[h, -h]])
    }

    #[test]
    fn povm_shapes() {
        let p = povm_from_isometry(&M::identity(3)).unwrap();
        assert_eq!(p.arity(), 3);
        assert!(p.elements()[1].max_abs_diff(&M::diag_real(&[0.0, 1.0, 0.0])) < 1e-15);
        let x = povm_from_isometry(&hadamard()).unwrap();
        assert!(x.elements()[0].max_abs_diff(&M::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])) < 1e-15);
        for seed in 0..20 {
            let v = haar_isometry::<f64>(5, 3, seed).unwrap();
            assert!(povm_from_isometry(&v).unwrap().completeness_residual() < 1e-10);
        }
        assert!(povm_from_isometry(&M::from_real_rows(&[&[1.0, 1.0]])).is_err());
    }

    #[test]
    fn ghz_assistance_depends_on_basis() {
        let g = ghz::<f64>();
        let z = povm_from_isometry(&M::identity(2)).unwrap();
        assert!(assisted_average(&g, &z).unwrap().abs() < 1e-12);
        let x = povm_from_isometry(&hadamard()).unwrap();
        assert!((assisted_average(&g, &x).unwrap() - 1.0).abs() < 1e-12);
        // Same numbers through the density route.
        let gd = g.clone().into_density();
        assert!((assisted_average(&gd, &x).unwrap() - 1.0).abs() < 1e-10);
        let wrong = povm_from_isometry(&M::identity(3)).unwrap();
        assert!(assisted_average(&g, &wrong).is_err());
    }

    #[test]
    fn any_povm_is_below_coa() {
        let dims = Dims::new(vec![2, 2, 3]).unwrap();
        for seed in 0..30 {
            let s = random_pure::<f64>(&dims, seed);
            let ch = KrausChannel::random(2, 3, seed).unwrap();
            let ev = apply_channel(&s, &ch, 1).unwrap();
            let up = coa(&ev.reduced(&[0, 1]).unwrap()).unwrap();
            let p = povm_from_isometry(&haar_isometry::<f64>(6, 3, seed).unwrap()).unwrap();
            assert!(assisted_average(&ev, &p).unwrap() <= up + 1e-9);
        }
    }

    #[test]
    fn lower_bound_reaches_closed_form_on_pure_inputs() {
        let v = eoa_lower_bound(&ghz::<f64>(), &cfg(), None).unwrap();
        assert!((v - 1.0).abs() < 1e-4, "{v}");
        let s = generalized_ghz(Complex::new(0.5, 0.0)).unwrap();
        let v = eoa_lower_bound(&s, &cfg(), None).unwrap();
        assert!((v - 3f64.sqrt() / 2.0).abs() < 1e-4, "{v}");
        let v = eoa_lower_bound(&w_state::<f64>(), &cfg(), None).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn identity_channel_keeps_the_bound() {
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let s = random_pure::<f64>(&dims, 9);
        let ev = apply_channel(&s, &KrausChannel::identity(2), 1).unwrap();
        let v = eoa_lower_bound(&ev, &cfg(), None).unwrap();
        assert!((v - eoa_pure_tripartite(&s).unwrap()).abs() < 1e-4);
    }

    #[test]
    fn arity_sweep_is_monotone() {
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let s = random_pure::<f64>(&dims, 4);
        let ev = apply_channel(&s, &KrausChannel::random(2, 2, 4).unwrap(), 1).unwrap();
        let small = OptimizerConfig { restarts: 2, max_iters: 60, ..cfg() };
        let vals = eoa_lower_bound_sweep(&ev, &small, &[2, 3, 4, 6]).unwrap();
        for w in vals.windows(2) {
            assert!(w[1] >= w[0], "{vals:?}");
        }
        assert!(eoa_lower_bound_sweep(&ev, &small, &[4, 2]).is_err());
        assert!(eoa_lower_bound(&ev, &small, Some(1)).is_err());
    }
}
