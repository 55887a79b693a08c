//! Two-site stellar state.
//!
//! Conventions: quadrature order `(q_A, p_A, q_B, p_B)`, vacuum variance 1, and
//! symplectic form `Ω = ⊕ [[0, 1], [-1, 0]]`. The weak-source density matrix
//! lives on `{|00⟩, |01⟩, |10⟩}` (photon number at A, B).

use std::f64::consts::TAU;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_non_negative, Error, Result};

/// Mean photon number above which the weak-source expansion is flagged.
pub const WEAK_SOURCE_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SourceParams {
    /// Mean photon number per time bin.
    pub epsilon: f64,
    /// Visibility modulus, in [0, 1].
    pub gamma: f64,
    /// Visibility phase, normalized into [0, 2π).
    pub phi: f64,
}

impl SourceParams {
    pub fn new(epsilon: f64, gamma: f64, phi: f64) -> Result<Self> {
        ensure_non_negative("epsilon", epsilon)?;
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::param("gamma", gamma, "must lie in [0, 1]"));
        }
        if !phi.is_finite() {
            return Err(Error::param("phi", phi, "must be finite"));
        }
        Ok(Self { epsilon, gamma, phi: wrap_phase(phi) })
    }
}

/// Wraps an angle into [0, 2π).
pub fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoModeCovariance {
    pub sigma: [[f64; 4]; 4],
    pub mean: [f64; 4],
}

impl TwoModeCovariance {
    /// Symplectic eigenvalues `(ν₋, ν₊)` from the two-mode invariants.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let s = &self.sigma;
        let det2 = |r: usize, c: usize| s[r][c] * s[r + 1][c + 1] - s[r][c + 1] * s[r + 1][c];
        let seralian = det2(0, 0) + det2(2, 2) + 2.0 * det2(0, 2);
        let det = nalgebra::Matrix4::from_fn(|r, c| s[r][c]).determinant();
        let disc = (seralian * seralian - 4.0 * det).max(0.0).sqrt();
        let minus = ((seralian - disc) / 2.0).max(0.0).sqrt();
        let plus = ((seralian + disc) / 2.0).sqrt();
        (minus, plus)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|r| (0..4).all(|c| self.sigma[r][c] == self.sigma[c][r]))
    }

    /// Mean photon number of one mode: (variance − 1)/2 with this convention.
    pub fn single_mode_photons(&self, mode: usize) -> f64 {
        let k = 2 * mode;
        (self.sigma[k][k] + self.sigma[k + 1][k + 1] - 2.0) / 4.0
    }
}

pub fn covariance(params: &SourceParams) -> TwoModeCovariance {
    let SourceParams { epsilon, gamma, phi } = *params;
    let d = epsilon + 1.0;
    let c = gamma * epsilon * phi.cos();
    let s = gamma * epsilon * phi.sin();
    TwoModeCovariance { sigma: [[d, 0.0, c, -s], [0.0, d, s, c], [c, s, d, 0.0], [-s, c, 0.0, d]], mean: [0.0; 4] }
}

/// Mixture of vacuum and the two single-photon states |ψ±⟩ = (|10⟩ ± e^{iφ}|01⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakSourceState {
    pub p_vac: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub phi: f64,
}

impl WeakSourceState {
    pub fn epsilon(&self) -> f64 {
        self.p_plus + self.p_minus
    }

    /// Visibility modulus recovered from the mixture weights (0 for vacuum).
    pub fn gamma(&self) -> f64 {
        let eps = self.epsilon();
        if eps > 0.0 {
            (self.p_plus - self.p_minus) / eps
        } else {
            0.0
        }
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.epsilon()
    }

    /// Density matrix in the basis `{|00⟩, |01⟩, |10⟩}`.
    pub fn density_matrix(&self) -> Matrix3<Complex64> {
        let half_sum = 0.5 * (self.p_plus + self.p_minus);
        let coherence = Complex64::from_polar(0.5 * (self.p_plus - self.p_minus), -self.phi);
        let zero = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        // ⟨10|ρ|01⟩ = (p₊ − p₋) e^{−iφ}/2.
        Matrix3::new(re(self.p_vac), zero, zero, zero, re(half_sum), coherence.conj(), zero, coherence, re(half_sum))
    }
}

/// Weak-source state. Rejects ε > 1 and logs a warning above [`WEAK_SOURCE_LIMIT`].
pub fn weak_state(params: &SourceParams) -> Result<WeakSourceState> {
    weak_state_with_limit(params, false)
}

/// As [`weak_state`]; with `strict` the soft limit ε ≤ 0.1 becomes an error.
pub fn weak_state_with_limit(params: &SourceParams, strict: bool) -> Result<WeakSourceState> {
    let SourceParams { epsilon, gamma, phi } = *params;
    if epsilon > 1.0 {
        return Err(Error::param("epsilon", epsilon, "weak-source expansion needs epsilon <= 1"));
    }
    if epsilon > WEAK_SOURCE_LIMIT {
        if strict {
            return Err(Error::param("epsilon", epsilon, "exceeds weak-source limit 0.1"));
        }
        log::warn!("epsilon = {epsilon} exceeds the weak-source limit {WEAK_SOURCE_LIMIT}");
    }
    Ok(WeakSourceState {
        p_vac: 1.0 - epsilon,
        p_plus: epsilon * (1.0 + gamma) / 2.0,
        p_minus: epsilon * (1.0 - gamma) / 2.0,
        phi,
    })
}

/// Bose–Einstein occupation probability εⁿ/(1+ε)ⁿ⁺¹.
pub fn thermal_pmf(epsilon: f64, n: u64) -> Result<f64> {
    ensure_non_negative("epsilon", epsilon)?;
    if epsilon == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let ln_ratio = (epsilon / (1.0 + epsilon)).ln();
    Ok((n as f64 * ln_ratio - epsilon.ln_1p()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Matrix4;
    use proptest::prelude::*;

    /// Smallest eigenvalue of the Hermitian matrix σ + iΩ.
    fn min_eig_sigma_plus_i_omega(cov: &TwoModeCovariance) -> f64 {
        let omega = Matrix4::new(0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0);
        let m = Matrix4::from_fn(|r, c| Complex64::new(cov.sigma[r][c], omega[(r, c)]));
        m.symmetric_eigenvalues().min()
    }

    #[test]
    fn vacuum_covariance_is_identity() {
        let cov = covariance(&SourceParams::new(0.0, 0.7, 1.0).unwrap());
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(cov.sigma[r][c], if r == c { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(cov.mean, [0.0; 4]);
    }

    #[test]
    fn covariance_blocks() {
        let cov = covariance(&SourceParams::new(0.2, 1.0, 0.0).unwrap());
        assert_eq!(cov.sigma[0][0], 1.2);
        assert_eq!(cov.sigma[0][2], 0.2);
        assert_eq!(cov.sigma[1][3], 0.2);
        assert_eq!(cov.sigma[0][3], 0.0);
        assert_eq!(cov.sigma[1][2], 0.0);
    }

    #[test]
    fn params_validation() {
        assert!(SourceParams::new(-1e-3, 0.5, 0.0).is_err());
        assert!(SourceParams::new(1e-3, 1.5, 0.0).is_err());
        let p = SourceParams::new(1e-3, 0.5, -0.5).unwrap();
        assert_relative_eq!(p.phi, TAU - 0.5, max_relative = 1e-15);
        assert_eq!(wrap_phase(-1e-18), 0.0);
    }

    #[test]
    fn weak_state_examples() {
        let s = weak_state(&SourceParams::new(1e-7, 1.0, 0.3).unwrap()).unwrap();
        assert_eq!(s.p_minus, 0.0);
        assert_eq!(s.p_plus, 1e-7);

        let s = weak_state(&SourceParams::new(1e-2, 0.5, 0.0).unwrap()).unwrap();
        assert_relative_eq!(s.p_vac, 0.99, max_relative = 1e-15);
        assert_relative_eq!(s.p_plus, 0.0075, max_relative = 1e-14);
        assert_relative_eq!(s.p_minus, 0.0025, max_relative = 1e-14);

        let s = weak_state(&SourceParams::new(0.0, 0.4, 0.0).unwrap()).unwrap();
        assert_eq!((s.p_vac, s.p_plus, s.p_minus), (1.0, 0.0, 0.0));
    }

    #[test]
    fn weak_state_limits() {
        assert!(weak_state(&SourceParams::new(1.5, 0.5, 0.0).unwrap()).is_err());
        assert!(weak_state(&SourceParams::new(0.5, 0.5, 0.0).unwrap()).is_ok());
        assert!(weak_state_with_limit(&SourceParams::new(0.5, 0.5, 0.0).unwrap(), true).is_err());
    }

    #[test]
    fn density_matrix_trace_and_coherence() {
        let s = weak_state(&SourceParams::new(0.05, 0.6, 1.1).unwrap()).unwrap();
        let rho = s.density_matrix();
        assert_relative_eq!(rho.trace().re, 1.0, max_relative = 1e-15);
        // Build from the projectors directly.
        let (c, sn) = (1.1f64.cos(), 1.1f64.sin());
        let e = Complex64::new(c, sn);
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let one = Complex64::new(r2, 0.0);
        let plus = nalgebra::Vector3::new(Complex64::new(0.0, 0.0), e * r2, one);
        let minus = nalgebra::Vector3::new(Complex64::new(0.0, 0.0), -e * r2, one);
        let mut expected = plus * plus.adjoint() * Complex64::new(s.p_plus, 0.0)
            + minus * minus.adjoint() * Complex64::new(s.p_minus, 0.0);
        expected[(0, 0)] += s.p_vac;
        assert!((rho - expected).norm() < 1e-15);
    }

    #[test]
    fn thermal_pmf_values() {
        let eps = 0.37;
        assert_relative_eq!(thermal_pmf(eps, 0).unwrap(), 1.0 / (1.0 + eps), max_relative = 1e-14);
        assert_relative_eq!(thermal_pmf(eps, 1).unwrap(), eps / ((1.0 + eps) * (1.0 + eps)), max_relative = 1e-14);
        assert_relative_eq!(thermal_pmf(1.0, 2).unwrap(), 0.125, max_relative = 1e-14);
        assert_eq!(thermal_pmf(0.0, 0).unwrap(), 1.0);
        assert_eq!(thermal_pmf(0.0, 3).unwrap(), 0.0);
        assert!(thermal_pmf(-0.1, 0).is_err());
    }

    #[test]
    fn thermal_pmf_normalized() {
        for eps in [1e-7, 1e-3, 0.5, 1.0, 3.0, 12.0] {
            let n_max = (40.0 * f64::max(eps, 1.0)).ceil() as u64;
            let total: f64 = (0..=n_max).map(|n| thermal_pmf(eps, n).unwrap()).sum();
            assert!((1.0 - total).abs() < 1e-12, "eps {eps}: tail {}", 1.0 - total);
            let mean: f64 = (0..=n_max).map(|n| n as f64 * thermal_pmf(eps, n).unwrap()).sum();
            assert_relative_eq!(mean, eps, max_relative = 1e-9);
        }
    }

    proptest! {
        #[test]
        fn covariance_is_bona_fide(eps in 0.0f64..5.0, gamma in 0.0f64..=1.0, phi in 0.0f64..TAU) {
            let cov = covariance(&SourceParams::new(eps, gamma, phi).unwrap());
            prop_assert!(cov.is_symmetric());
            prop_assert!(min_eig_sigma_plus_i_omega(&cov) >= -1e-9 * (1.0 + eps));
            let (nu_minus, _) = cov.symplectic_eigenvalues();
            prop_assert!(nu_minus >= 1.0 - 1e-9 * (1.0 + eps));
        }

        #[test]
        fn single_mode_marginals(eps in 0.0f64..5.0, gamma in 0.0f64..=1.0, phi in 0.0f64..TAU) {
            let cov = covariance(&SourceParams::new(eps, gamma, phi).unwrap());
            for mode in 0..2 {
                prop_assert_eq!(cov.sigma[2 * mode][2 * mode], eps + 1.0);
                prop_assert!((cov.single_mode_photons(mode) - eps / 2.0).abs() < 1e-12);
            }
        }

        #[test]
        fn weak_state_moments(eps in 0.0f64..0.1, gamma in 0.0f64..=1.0, phi in 0.0f64..TAU) {
            let p = SourceParams::new(eps, gamma, phi).unwrap();
            let s = weak_state(&p).unwrap();
            prop_assert!((s.p_vac + s.p_plus + s.p_minus - 1.0).abs() < 1e-15);
            prop_assert!(s.p_plus >= 0.0 && s.p_minus >= 0.0 && s.p_vac >= 0.0);
            prop_assert!((s.p_plus - s.p_minus - eps * gamma).abs() < 1e-15);
            prop_assert!((s.mean_photon_number() - eps).abs() < 1e-15);
            // Total photons agree with the Gaussian description (ε/2 per mode).
            let cov = covariance(&p);
            let gaussian_total = cov.single_mode_photons(0) + cov.single_mode_photons(1);
            prop_assert!((gaussian_total - s.mean_photon_number()).abs() < 1e-12);
        }
    }
}
