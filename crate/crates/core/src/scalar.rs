//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type backing the complex linear algebra.
///
/// The tolerance constants are the thresholds used by the validators; they
/// are expressed per precision so that `f32` builds remain usable for the
/// algebraic routines even though the verification tolerances only make
/// sense in double precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Entrywise bound on `|M - M^dagger|` for a matrix to count as Hermitian.
    const HERMITIAN_TOL: f64;
    /// Most negative eigenvalue tolerated before a matrix is rejected as not PSD.
    const PSD_TOL: f64;
    /// Residual bound for `V^dagger V = I` and Kraus completeness.
    const ISOMETRY_TOL: f64;
    /// Bound on `|Tr(rho) - 1|` and `| ||psi|| - 1 |`.
    const NORM_TOL: f64;
    /// Eigenvalues below this fraction of the largest are treated as zero when
    /// factoring a PSD matrix.
    const RANK_REL_TOL: f64;
    /// Outcome probabilities below this contribute nothing.
    const PROB_FLOOR: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl Real for f64 {
    const HERMITIAN_TOL: f64 = 1e-12;
    const PSD_TOL: f64 = 1e-10;
    const ISOMETRY_TOL: f64 = 1e-10;
    const NORM_TOL: f64 = 1e-12;
    const RANK_REL_TOL: f64 = 1e-13;
    const PROB_FLOOR: f64 = 1e-12;
}

impl Real for f32 {
    const HERMITIAN_TOL: f64 = 1e-5;
    const PSD_TOL: f64 = 1e-5;
    const ISOMETRY_TOL: f64 = 1e-5;
    const NORM_TOL: f64 = 1e-5;
    const RANK_REL_TOL: f64 = 1e-6;
    const PROB_FLOOR: f64 = 1e-7;
}
