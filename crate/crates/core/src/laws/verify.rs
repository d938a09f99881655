//! Evolution laws as executable checks. Smaller sides of inequalities are
//! always lower bounds and larger sides upper bounds, so a failing certified
//! record is a genuine counterexample rather than an optimizer artifact.

use super::dynamics::{channel_factor, channel_factor_on, qubit_factor, Side};
use super::record::{Bound, Law, LawConfig, VerificationRecord};
use crate::assist::{Assistance, InnerBound};
use crate::channels::{apply_channel, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix};
use crate::measures::{coa, eoa_pure_tripartite, wootters_concurrence};
use crate::states::State;

fn require_dims(state: &State<f64>, pred: impl Fn(&[usize]) -> bool, what: &str) -> Result<()> {
    let dims = state.dims();
    if !pred(dims.as_slice()) {
        return Err(Error::DimensionMismatch(format!("{what} required, got {dims}")));
    }
    Ok(())
}

fn require_pure(state: &State<f64>) -> Result<()> {
    if !state.is_pure() {
        return Err(Error::Unsupported("pure initial state required".into()));
    }
    Ok(())
}

fn require_qubit_channel(ch: &KrausChannel<f64>) -> Result<()> {
    if ch.in_dim() != 2 || ch.out_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "qubit channel required, got {} -> {}",
            ch.in_dim(),
            ch.out_dim()
        )));
    }
    Ok(())
}

fn optimized_eoa(state: &State<f64>, inner: InnerBound, cfg: &LawConfig) -> Result<f64> {
    let problem = Assistance::with_inner(state, inner)?;
    let k = cfg.arity.unwrap_or(2 * problem.n3());
    Ok(problem.optimize(k, &cfg.optimizer, None)?.value)
}

/// `√(2 (1 - Tr ρ²))` of a normalized local marginal: by concavity it
/// bounds every average pure-state I-concurrence across that cut.
fn marginal_concurrence_bound(m: &ComplexMatrix<f64>) -> f64 {
    let purity: f64 = m.as_slice().iter().map(|z| z.norm_sqr()).sum();
    (2.0 * (1.0 - purity)).max(0.0).sqrt()
}

/// Factorization law for a pure `2 x 2 x n3` state and a qubit channel on
/// the second party, checked as a sandwich around the exact product.
pub fn verify_theorem1(psi: &State<f64>, channel: &KrausChannel<f64>, cfg: &LawConfig) -> Result<VerificationRecord> {
    require_pure(psi)?;
    require_dims(psi, |d| d.len() == 3 && d[0] == 2 && d[1] == 2, "dims (2,2,n3)")?;
    require_qubit_channel(channel)?;
    let rhs = eoa_pure_tripartite(psi)? * qubit_factor(channel)?;
    let evolved = apply_channel(psi, channel, 1)?;
    let lower = optimized_eoa(&evolved, InnerBound::RankTwoSupport, cfg)?;
    let upper = coa(&evolved.reduced(&[0, 1])?)?;
    Ok(VerificationRecord::new(Law::Theorem1, Bound::lower(lower), Bound::exact(rhs), cfg)
        .sandwich(Bound::upper(upper), cfg)
        .described(psi.dims().as_slice(), &[channel.label()]))
}

/// One-sided channel on a mixed `2 x 2 x n3` state: the evolved assistance
/// never exceeds the initial one times the factor.
pub fn verify_corollary1(rho0: &State<f64>, channel: &KrausChannel<f64>, cfg: &LawConfig) -> Result<VerificationRecord> {
    require_dims(rho0, |d| d.len() == 3 && d[0] == 2 && d[1] == 2, "dims (2,2,n3)")?;
    require_qubit_channel(channel)?;
    let rhs = coa(&rho0.reduced(&[0, 1])?)? * qubit_factor(channel)?;
    let evolved = apply_channel(rho0, channel, 1)?;
    let lhs = optimized_eoa(&evolved, InnerBound::RankTwoSupport, cfg)?;
    Ok(VerificationRecord::new(Law::Corollary1, Bound::lower(lhs), Bound::upper(rhs), cfg)
        .inequality(cfg.alg_tol)
        .described(rho0.dims().as_slice(), &[channel.label()]))
}

/// Channels on both the first and second parties; two factors on the right.
pub fn verify_corollary2(
    rho0: &State<f64>,
    ch_a: &KrausChannel<f64>,
    ch_b: &KrausChannel<f64>,
    cfg: &LawConfig,
) -> Result<VerificationRecord> {
    require_dims(rho0, |d| d.len() == 3 && d[0] == 2 && d[1] == 2, "dims (2,2,n3)")?;
    require_qubit_channel(ch_a)?;
    require_qubit_channel(ch_b)?;
    let f_a = channel_factor_on(ch_a, 2, Side::A, &cfg.optimizer)?.value;
    let f_b = qubit_factor(ch_b)?;
    let rhs = coa(&rho0.reduced(&[0, 1])?)? * f_a * f_b;
    let evolved = apply_channel(&apply_channel(rho0, ch_a, 0)?, ch_b, 1)?;
    let lhs = optimized_eoa(&evolved, InnerBound::RankTwoSupport, cfg)?;
    Ok(VerificationRecord::new(Law::Corollary2, Bound::lower(lhs), Bound::upper(rhs), cfg)
        .inequality(cfg.alg_tol)
        .described(rho0.dims().as_slice(), &[ch_a.label(), ch_b.label()]))
}

/// `d x d x n3` generalization with prefactor `d/2`. For `d = 2` this is the
/// one-sided corollary verbatim. For `d > 2` the record is advisory: the
/// left side uses a partial-transpose bound on each conditional and the
/// right side bounds the initial assistance by the marginal purity and the
/// factor by the best decomposition found.
pub fn verify_theorem2(rho: &State<f64>, channel: &KrausChannel<f64>, cfg: &LawConfig) -> Result<VerificationRecord> {
    require_dims(rho, |d| d.len() == 3 && d[0] == d[1] && d[0] >= 2, "dims (d,d,n3)")?;
    let d = rho.dims()[0];
    if d == 2 {
        let mut r = verify_corollary1(rho, channel, cfg)?;
        r.law = Law::Theorem2;
        return Ok(r);
    }
    if channel.in_dim() != d || channel.out_dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "channel must map dimension {d} to itself, got {} -> {}",
            channel.in_dim(),
            channel.out_dim()
        )));
    }
    let factor = channel_factor(channel, d, &cfg.optimizer)?;
    let ea_upper = marginal_concurrence_bound(&rho.reduced(&[0])?);
    let rhs = d as f64 / 2.0 * ea_upper * factor.value;
    let evolved = apply_channel(rho, channel, 1)?;
    let lhs = optimized_eoa(&evolved, InnerBound::Negativity, cfg)?;
    let mut r = VerificationRecord::new(Law::Theorem2, Bound::lower(lhs), Bound::upper(rhs), cfg)
        .inequality(cfg.alg_tol)
        .described(rho.dims().as_slice(), &[channel.label()])
        .with_note(if factor.exact {
            "advisory: d > 2"
        } else {
            "advisory: d > 2, factor from best decomposition found"
        });
    r.certified = false;
    Ok(r)
}

/// Pure `d x 2 x n3` states: the factorization holds with the initial
/// assistance found by POVM optimization (pure conditionals, exact inner
/// value). For `d = 2` this is the factorization law itself.
pub fn verify_remark_d2(psi: &State<f64>, channel: &KrausChannel<f64>, cfg: &LawConfig) -> Result<VerificationRecord> {
    require_pure(psi)?;
    require_dims(psi, |d| d.len() == 3 && d[1] == 2, "dims (d,2,n3)")?;
    require_qubit_channel(channel)?;
    if psi.dims()[0] == 2 {
        let mut r = verify_theorem1(psi, channel, cfg)?;
        r.law = Law::RemarkD2;
        return Ok(r);
    }
    let initial = optimized_eoa(psi, InnerBound::RankTwoSupport, cfg)?;
    let rhs = initial * qubit_factor(channel)?;
    let evolved = apply_channel(psi, channel, 1)?;
    // Every conditional of the evolved state keeps the at most
    // two-dimensional first-party support of the pure conditional it came
    // from, so the rank-two inner value is exact.
    let lower = optimized_eoa(&evolved, InnerBound::RankTwoSupport, cfg)?;
    let upper = marginal_concurrence_bound(&evolved.reduced(&[0])?)
        .min(marginal_concurrence_bound(&evolved.reduced(&[1])?));
    Ok(VerificationRecord::new(Law::RemarkD2, Bound::lower(lower), Bound::lower(rhs), cfg)
        .sandwich(Bound::upper(upper), cfg)
        .described(psi.dims().as_slice(), &[channel.label()]))
}

/// A channel on the assisting party cannot push assistance below the
/// unassisted concurrence of the first two parties.
pub fn verify_remark_lowerbound(
    rho: &State<f64>,
    channel: &KrausChannel<f64>,
    cfg: &LawConfig,
) -> Result<VerificationRecord> {
    require_dims(rho, |d| d.len() == 3 && d[0] == 2 && d[1] == 2, "dims (2,2,n3)")?;
    let rhs = wootters_concurrence(&partial_trace(&rho.to_density_matrix(), rho.dims(), &[0, 1])?)?;
    let evolved = apply_channel(rho, channel, 2)?;
    let lhs = optimized_eoa(&evolved, InnerBound::RankTwoSupport, cfg)?;
    let mut r = VerificationRecord::new(Law::RemarkLowerbound, Bound::lower(lhs), Bound::exact(rhs), cfg);
    // Claimed direction is lhs ≥ rhs.
    r.gap = rhs - lhs;
    r.tolerance = cfg.opt_tol;
    r.pass = r.gap <= cfg.opt_tol;
    r.certified = true;
    Ok(r.described(rho.dims().as_slice(), &[channel.label()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assist::OptimizerConfig;
    use crate::linalg::Dims;
    use crate::states::{generalized_ghz, ghz, mixture, random_pure, w_state};
    use num_complex::Complex;

    fn cfg() -> LawConfig {
        LawConfig {
            optimizer: OptimizerConfig { restarts: 8, ..OptimizerConfig::default() },
            ..LawConfig::default()
        }
    }

    #[test]
    fn theorem1_closed_forms() {
        for (a, t) in [(0.5, 0.0), (0.5, 1.0), (0.3, 0.4)] {
            let psi = generalized_ghz(Complex::new(a, 0.0)).unwrap();
            let r = verify_theorem1(&psi, &KrausChannel::phase_damping(t).unwrap(), &cfg()).unwrap();
            let expect = 2.0 * (-t as f64).exp() * a * (1.0 - a * a).sqrt();
            assert!((r.rhs.value - expect).abs() < 1e-12);
            assert!(r.pass && r.certified, "{r:?}");
            let r = verify_theorem1(&psi, &KrausChannel::generalized_amplitude_damping(t, 0.5).unwrap(), &cfg()).unwrap();
            let nu = (-t as f64).exp();
            let expect = (a * (1.0 - a * a).sqrt() * (nu * nu + 2.0 * nu - 1.0)).max(0.0);
            assert!((r.rhs.value - expect).abs() < 1e-12);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn theorem1_identity_channel_is_tight() {
        let dims = Dims::new(vec![2, 2, 3]).unwrap();
        let psi = random_pure::<f64>(&dims, 12);
        let r = verify_theorem1(&psi, &KrausChannel::identity(2), &cfg()).unwrap();
        assert!((r.rhs.value - eoa_pure_tripartite(&psi).unwrap()).abs() < 1e-12);
        assert!(r.gap.abs() < 1e-4 && r.pass);
    }

    #[test]
    fn theorem1_rejects_bad_shapes() {
        let dims = Dims::new(vec![3, 2, 2]).unwrap();
        let psi = random_pure::<f64>(&dims, 1);
        assert!(verify_theorem1(&psi, &KrausChannel::identity(2), &cfg()).is_err());
        assert!(verify_theorem1(&ghz::<f64>().into_density(), &KrausChannel::identity(2), &cfg()).is_err());
        assert!(verify_theorem1(&ghz::<f64>(), &KrausChannel::identity(3), &cfg()).is_err());
    }

    #[test]
    fn corollaries_on_mixed_states() {
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let rho = mixture(&[(0.6, random_pure(&dims, 1)), (0.4, random_pure(&dims, 2))]).unwrap();
        let ch = KrausChannel::random(2, 2, 3).unwrap();
        let r = verify_corollary1(&rho, &ch, &cfg()).unwrap();
        assert!(r.pass && r.certified, "{r:?}");
        let r = verify_corollary1(&rho, &KrausChannel::identity(2), &cfg()).unwrap();
        assert!(r.pass);
        let r = verify_corollary2(&rho, &ch, &KrausChannel::random(2, 3, 4).unwrap(), &cfg()).unwrap();
        assert!(r.pass && r.certified, "{r:?}");
    }

    #[test]
    fn corollary2_on_ghz_with_dephasing() {
        let t = 0.7;
        let ch = KrausChannel::phase_damping(t).unwrap();
        let r = verify_corollary2(&ghz::<f64>(), &ch, &ch, &cfg()).unwrap();
        assert!((r.rhs.value - (-2.0 * t as f64).exp()).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn theorem2_reduces_for_qubits() {
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let rho = mixture(&[(0.5, random_pure(&dims, 5)), (0.5, random_pure(&dims, 6))]).unwrap();
        let ch = KrausChannel::random(2, 2, 7).unwrap();
        let a = verify_theorem2(&rho, &ch, &cfg()).unwrap();
        let b = verify_corollary1(&rho, &ch, &cfg()).unwrap();
        assert_eq!(a.law, Law::Theorem2);
        assert_eq!((a.pass, a.certified, a.lhs, a.rhs), (b.pass, b.certified, b.lhs, b.rhs));
    }

    #[test]
    fn theorem2_qutrits_is_advisory() {
        let dims = Dims::new(vec![3, 3, 2]).unwrap();
        let psi = random_pure::<f64>(&dims, 8);
        let r = verify_theorem2(&psi, &KrausChannel::random(3, 2, 9).unwrap(), &cfg()).unwrap();
        assert!(!r.certified && r.pass, "{r:?}");
        let u = KrausChannel::random(3, 1, 10).unwrap();
        let r = verify_theorem2(&psi, &u, &cfg()).unwrap();
        assert!(r.pass && r.note.as_deref() == Some("advisory: d > 2"));
    }

    #[test]
    fn remark_d2_on_qutrit_party() {
        let dims = Dims::new(vec![3, 2, 2]).unwrap();
        let psi = random_pure::<f64>(&dims, 11);
        let r = verify_remark_d2(&psi, &KrausChannel::identity(2), &cfg()).unwrap();
        assert!(r.gap.abs() < 1e-6, "{r:?}");
        let r = verify_remark_d2(&psi, &KrausChannel::phase_damping(0.6).unwrap(), &cfg()).unwrap();
        assert!(r.pass && r.gap.abs() <= 1e-3, "{r:?}");
        let r = verify_remark_d2(&ghz::<f64>(), &KrausChannel::phase_damping(0.6).unwrap(), &cfg()).unwrap();
        assert_eq!(r.law, Law::RemarkD2);
        assert!(r.pass);
    }

    #[test]
    fn remark_lowerbound_cases() {
        let full_dephasing = KrausChannel::phase_damping(f64::INFINITY).unwrap();
        let r = verify_remark_lowerbound(&w_state::<f64>(), &full_dephasing, &cfg()).unwrap();
        assert!((r.rhs.value - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.pass, "{r:?}");
        let r = verify_remark_lowerbound(&ghz::<f64>(), &KrausChannel::random(2, 3, 1).unwrap(), &cfg()).unwrap();
        assert!(r.rhs.value.abs() < 1e-12 && r.pass);
        let dims = Dims::new(vec![2, 2, 2]).unwrap();
        let psi = random_pure::<f64>(&dims, 13);
        let r = verify_remark_lowerbound(&psi, &KrausChannel::identity(2), &cfg()).unwrap();
        assert!(r.lhs.value >= eoa_pure_tripartite(&psi).unwrap() - 1e-4);
    }
}
