//! Dense complex linear algebra: the substrate for states, channels and
//! measurements.

mod eigen;
mod matrix;
pub mod random;
mod tensor;

pub use eigen::{eigh, eigvalsh, hermitian_trace_norm, orthonormalize_columns, psd_sqrt, singular_values, Eigh};
pub(crate) use eigen::{eigh_unchecked, psd_factor};
pub use matrix::{inner, vec_norm, ComplexMatrix, Dims};
pub use random::{derive_seed, haar_isometry, rng_from_seed};
pub use tensor::{apply_local, embed, kron, kron_vec, partial_trace, partial_transpose};
