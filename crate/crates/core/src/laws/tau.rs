//! Residual tripartite quantity `τ = C_a²(AB) + C_a²(AC) - C²(A|BC)` and its
//! evolution under a qubit channel on the first party.

use super::dynamics::{channel_factor_on, Side};
use super::record::{Bound, Law, LawConfig, VerificationRecord};
use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::measures::{coa, pure_concurrence_sq_cut, rank_two_factor_concurrence};
use crate::states::State;

fn require_three_qubits(psi: &State<f64>) -> Result<&[num_complex::Complex<f64>]> {
    let dims = psi.dims();
    if dims.as_slice() != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!("three qubits required, got {dims}")));
    }
    psi.amplitudes()
        .ok_or_else(|| Error::Unsupported("the cut term needs a pure state".into()))
}

/// `τ` of a pure three-qubit state.
pub fn tau(psi: &State<f64>) -> Result<f64> {
    let amps = require_three_qubits(psi)?;
    let ab = coa(&psi.reduced(&[0, 1])?)?;
    let ac = coa(&psi.reduced(&[0, 2])?)?;
    let cut = pure_concurrence_sq_cut(amps, psi.dims(), &[0])?;
    Ok(ab * ab + ac * ac - cut)
}

/// Terms of `τ` after a channel on the first party.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauEvolution {
    pub factor: f64,
    /// Assistance of each pair, which scales by the factor.
    pub coa_ab: f64,
    pub coa_ac: f64,
    /// Concurrence of the evolved state across `A|BC`, computed directly.
    pub cut: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Evaluates both sides of `τ(ρ') = f² τ(ψ)`. The pair terms follow the
/// factorization law; the cut term is computed from the evolved state
/// itself: its `BC` support stays inside the two-dimensional Schmidt
/// support of `ψ`, so compressing to two qubits makes it exact.
pub fn tau_evolution(psi: &State<f64>, channel: &KrausChannel<f64>) -> Result<TauEvolution> {
    require_three_qubits(psi)?;
    if channel.in_dim() != 2 || channel.out_dim() != 2 {
        return Err(Error::DimensionMismatch("qubit channel required".into()));
    }
    let factor = channel_factor_on(channel, 2, Side::A, &Default::default())?.value;
    let coa_ab = coa(&psi.reduced(&[0, 1])?)? * factor;
    let coa_ac = coa(&psi.reduced(&[0, 2])?)? * factor;
    let branches = channel.branches(psi, 0)?;
    let x = ComplexMatrix::from_fn(8, branches.len(), |i, j| branches[j][i]);
    let cut = rank_two_factor_concurrence(&x, 2, 4)
        .ok_or_else(|| Error::Unsupported("cut support exceeds two dimensions".into()))?;
    let lhs = coa_ab * coa_ab + coa_ac * coa_ac - cut * cut;
    Ok(TauEvolution {
        factor,
        coa_ab,
        coa_ac,
        cut,
        lhs,
        rhs: factor * factor * tau(psi)?,
    })
}

/// Equality record and positivity record for one instance.
pub fn verify_tau_evolution(
    psi: &State<f64>,
    channel: &KrausChannel<f64>,
    cfg: &LawConfig,
) -> Result<(VerificationRecord, VerificationRecord)> {
    let ev = tau_evolution(psi, channel)?;
    let mut eq = VerificationRecord::new(Law::TauEvolution, Bound::exact(ev.lhs), Bound::exact(ev.rhs), cfg);
    eq.gap = (ev.lhs - ev.rhs).abs();
    eq.pass = eq.gap <= cfg.alg_tol;
    eq.certified = true;
    let mut pos = VerificationRecord::new(Law::TauPositivity, Bound::exact(0.0), Bound::exact(ev.lhs), cfg)
        .inequality(cfg.alg_tol);
    pos.certified = true;
    let dims = psi.dims().as_slice().to_vec();
    Ok((
        eq.described(&dims, &[channel.label()]),
        pos.described(&dims, &[channel.label()]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Dims;
    use crate::states::{basis_state, ghz, random_pure, w_state};

    #[test]
    fn reference_values() {
        assert!((tau(&ghz::<f64>()).unwrap() - 1.0).abs() < 1e-12);
        assert!(tau(&w_state::<f64>()).unwrap().abs() < 1e-12);
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        assert!(tau(&basis_state::<f64>(&dims, 0).unwrap()).unwrap().abs() < 1e-12);
        assert!(tau(&ghz::<f64>().into_density()).is_err());
        assert!(tau(&random_pure::<f64>(&Dims::new(vec![2, 2, 3]).unwrap(), 0)).is_err());
    }

    #[test]
    fn w_state_terms_by_hand() {
        let w = w_state::<f64>();
        let ab = coa(&w.reduced(&[0, 1]).unwrap()).unwrap();
        assert!((ab - 2.0 / 3.0).abs() < 1e-12);
        let cut = pure_concurrence_sq_cut(w.amplitudes().unwrap(), w.dims(), &[0]).unwrap();
        // Purity of the single-qubit marginal is 5/9.
        assert!((cut - 2.0 * (1.0 - 5.0 / 9.0)).abs() < 1e-12);
    }

    #[test]
    fn ghz_under_dephasing() {
        let t = 0.8;
        let ev = tau_evolution(&ghz::<f64>(), &KrausChannel::phase_damping(t).unwrap()).unwrap();
        let nu2 = (-2.0 * t as f64).exp();
        assert!((ev.lhs - nu2).abs() < 1e-12 && (ev.rhs - nu2).abs() < 1e-12);
        assert!((ev.cut - (-t as f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn identity_channel_keeps_tau() {
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let psi = random_pure::<f64>(&dims, 3);
        let ev = tau_evolution(&psi, &KrausChannel::identity(2)).unwrap();
        let t = tau(&psi).unwrap();
        assert!((ev.lhs - t).abs() < 1e-12 && (ev.rhs - t).abs() < 1e-12);
    }

    #[test]
    fn random_channels_satisfy_equality() {
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let cfg = LawConfig::default();
        for seed in 0..50 {
            let psi = random_pure::<f64>(&dims, seed);
            let ch = KrausChannel::random(2, 1 + seed as usize % 4, 100 + seed).unwrap();
            let (eq, pos) = verify_tau_evolution(&psi, &ch, &cfg).unwrap();
            assert!(eq.pass, "{eq:?}");
            assert!(pos.pass, "{pos:?}");
        }
    }
}
