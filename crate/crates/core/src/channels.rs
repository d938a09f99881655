//! Kraus channels, the damping families and their action on one subsystem
//! of a multipartite state.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{apply_local, embed, haar_isometry, ComplexMatrix};
use crate::scalar::Real;
use crate::states::State;

/// Completely positive trace-preserving map `rho -> sum_j K_j rho K_j^dagger`.
#[derive(Clone, Debug)]
pub struct KrausChannel<T: Real> {
    kraus: Vec<ComplexMatrix<T>>,
    in_dim: usize,
    out_dim: usize,
    label: String,
}

impl<T: Real> KrausChannel<T> {
    /// Validated constructor: all operators share one shape and
    /// `sum K^dagger K = I` within `ISOMETRY_TOL`.
    pub fn new(kraus: Vec<ComplexMatrix<T>>, label: impl Into<String>) -> Result<Self> {
        let ch = Self::unchecked(kraus, label)?;
        let residual = ch.completeness_residual();
        if residual.as_f64() > T::ISOMETRY_TOL {
            return Err(Error::IncompleteChannel {
                residual: residual.as_f64(),
            });
        }
        Ok(ch)
    }

    /// Shape-checked but not completeness-checked; for building deliberately
    /// defective channels in diagnostics.
    pub fn unchecked(kraus: Vec<ComplexMatrix<T>>, label: impl Into<String>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidParameter("channel needs at least one Kraus operator".into()))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if kraus.iter().any(|k| k.rows() != out_dim || k.cols() != in_dim) {
            return Err(Error::DimensionMismatch("Kraus operators differ in shape".into()));
        }
        Ok(Self {
            kraus,
            in_dim,
            out_dim,
            label: label.into(),
        })
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `|| sum_j K_j^dagger K_j - I ||_max`
    pub fn completeness_residual(&self) -> T {
        let mut acc = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            acc = &acc + &(&k.adjoint() * k);
        }
        acc.max_abs_diff(&ComplexMatrix::identity(self.in_dim))
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(d)], "identity").expect("identity is complete")
    }

    pub fn unitary(u: ComplexMatrix<T>) -> Result<Self> {
        Self::new(vec![u], "unitary")
    }

    /// Phase damping with `nu = exp(-gamma_t)`, `omega = sqrt(1 - nu^2)`:
    /// `M0 = diag(1, nu)`, `M1 = diag(0, omega)`.
    pub fn phase_damping(gamma_t: T) -> Result<Self> {
        let (nu, omega) = decay(gamma_t)?;
        Self::new(
            vec![
                ComplexMatrix::diag_real(&[T::one(), nu]),
                ComplexMatrix::diag_real(&[T::zero(), omega]),
            ],
            "phase-damping",
        )
    }

    /// Generalized amplitude damping at environment population `p`:
    /// `sqrt(p) diag(1, nu)`, `sqrt(p) [[0, omega], [0, 0]]`,
    /// `sqrt(1-p) diag(nu, 1)`, `sqrt(1-p) [[0, 0], [omega, 0]]`.
    pub fn generalized_amplitude_damping(gamma_t: T, p: T) -> Result<Self> {
        let (nu, omega) = decay(gamma_t)?;
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
        }
        let (sp, sq) = (p.sqrt(), (T::one() - p).sqrt());
        let z = T::zero();
        let m = |a: T, b: T, c: T, d: T| {
            ComplexMatrix::from_fn(2, 2, |i, j| Complex::new([[a, b], [c, d]][i][j], z))
        };
        Self::new(
            vec![
                m(sp, z, z, sp * nu),
                m(z, sp * omega, z, z),
                m(sq * nu, z, z, sq),
                m(z, z, sq * omega, z),
            ],
            "gad",
        )
    }

    /// Stinespring construction: a Haar isometry of shape
    /// `(d * kraus_count) x d` cut into `kraus_count` blocks of `d` rows.
    pub fn random(d: usize, kraus_count: usize, seed: u64) -> Result<Self> {
        if kraus_count == 0 || d == 0 {
            return Err(Error::InvalidParameter("random channel needs d, kraus_count >= 1".into()));
        }
        let v = haar_isometry::<T>(d * kraus_count, d, seed)?;
        let kraus = (0..kraus_count)
            .map(|j| ComplexMatrix::from_fn(d, d, |r, c| v[(j * d + r, c)]))
            .collect();
        Self::new(kraus, format!("random-{kraus_count}"))
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.out_dim != other.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}->{} with {}->{}",
                self.in_dim, self.out_dim, other.in_dim, other.out_dim
            )));
        }
        let kraus = other
            .kraus
            .iter()
            .flat_map(|b| self.kraus.iter().map(move |a| b * a))
            .collect();
        Self::unchecked(kraus, format!("{}∘{}", other.label, self.label))
    }

    pub fn cast<U: Real>(&self) -> KrausChannel<U> {
        KrausChannel {
            kraus: self.kraus.iter().map(|k| k.cast()).collect(),
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            label: self.label.clone(),
        }
    }

    /// Channel output on a bare operator.
    pub fn apply_operator(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        let mut out = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out = &out + &(&k.matmul(rho)? * &k.adjoint());
        }
        Ok(out)
    }

    /// Pure-state branches `(1 ⊗ K_j ⊗ 1)|psi>` whose projectors sum to the
    /// channel output.
    pub fn branches(&self, state: &State<T>, subsystem: usize) -> Result<Vec<Vec<Complex<T>>>> {
        let psi = state
            .amplitudes()
            .ok_or_else(|| Error::Unsupported("branches need a pure input".into()))?;
        self.kraus
            .iter()
            .map(|k| apply_local(k, psi, state.dims(), subsystem))
            .collect()
    }
}

fn decay<T: Real>(gamma_t: T) -> Result<(T, T)> {
    if !(gamma_t >= T::zero()) {
        return Err(Error::InvalidParameter(format!("gamma_t = {gamma_t} must be >= 0")));
    }
    let nu = (-gamma_t).exp();
    Ok((nu, (T::one() - nu * nu).max(T::zero()).sqrt()))
}

/// `rho' = sum_j (1 ⊗ K_j ⊗ 1) rho (1 ⊗ K_j^dagger ⊗ 1)` on `subsystem`.
pub fn apply_channel<T: Real>(
    state: &State<T>,
    channel: &KrausChannel<T>,
    subsystem: usize,
) -> Result<State<T>> {
    let dims = state.dims();
    if subsystem >= dims.len() || dims[subsystem] != channel.in_dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel on dimension {} cannot act on subsystem {subsystem} of {dims}",
            channel.in_dim()
        )));
    }
    let out_dims = dims.with(subsystem, channel.out_dim());
    let n = out_dims.total();
    let mut rho = ComplexMatrix::zeros(n, n);
    match state {
        State::Pure { .. } => {
            for b in channel.branches(state, subsystem)? {
                rho = &rho + &ComplexMatrix::projector(&b);
            }
        }
        State::Density { rho: input, .. } => {
            for k in channel.kraus() {
                let big = embed(k, dims, subsystem)?;
                rho = &rho + &(&(&big * input) * &big.adjoint());
            }
        }
    }
    Ok(State::Density { rho, dims: out_dims })
}

type FamilyBuilder = Arc<dyn Fn(f64) -> Result<KrausChannel<f64>> + Send + Sync>;

/// One-parameter channel family indexed by the dimensionless time `Γt`.
#[derive(Clone)]
pub enum ChannelFamily {
    PhaseDamping,
    GeneralizedAmplitudeDamping { p: f64 },
    Identity { d: usize },
    Custom { name: String, build: FamilyBuilder },
}

impl ChannelFamily {
    pub fn custom(
        name: impl Into<String>,
        build: impl Fn(f64) -> Result<KrausChannel<f64>> + Send + Sync + 'static,
    ) -> Self {
        ChannelFamily::Custom {
            name: name.into(),
            build: Arc::new(build),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            ChannelFamily::PhaseDamping => "phase-damping",
            ChannelFamily::GeneralizedAmplitudeDamping { .. } => "gad",
            ChannelFamily::Identity { .. } => "identity",
            ChannelFamily::Custom { name, .. } => name,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ChannelFamily::Identity { d } => *d,
            _ => 2,
        }
    }

    pub fn at<T: Real>(&self, gamma_t: f64) -> Result<KrausChannel<T>> {
        if !(gamma_t >= 0.0) {
            return Err(Error::InvalidParameter(format!("gamma_t = {gamma_t} must be >= 0")));
        }
        match self {
            ChannelFamily::PhaseDamping => KrausChannel::phase_damping(T::lit(gamma_t)),
            ChannelFamily::GeneralizedAmplitudeDamping { p } => {
                KrausChannel::generalized_amplitude_damping(T::lit(gamma_t), T::lit(*p))
            }
            ChannelFamily::Identity { d } => Ok(KrausChannel::identity(*d)),
            ChannelFamily::Custom { build, .. } => Ok(build(gamma_t)?.cast()),
        }
    }
}

impl fmt::Debug for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelFamily::GeneralizedAmplitudeDamping { p } => write!(f, "gad(p={p})"),
            ChannelFamily::Identity { d } => write!(f, "identity(d={d})"),
            other => f.write_str(other.name()),
        }
    }
}
