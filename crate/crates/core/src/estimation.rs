//! Fisher information and Cramér–Rao bounds for the visibility (φ, γ).
//!
//! Parameter order is always (φ, γ). The analytic QFI matrix is diagonal; the
//! numerical oracle in [`qfi_numerical`] recomputes each diagonal entry from the
//! symmetric logarithmic derivative of the weak-source density matrix.

use nalgebra::{Matrix3, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::source::{SourceParams, WeakSourceState, WEAK_SOURCE_LIMIT};

/// Central finite-difference step for the numerical oracle.
pub const FD_STEP: f64 = 1e-6;
/// Eigenvalue pairs with λ_j + λ_k below this are dropped from the SLD sum.
pub const SLD_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Phi,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QfiMatrix {
    pub j_phi: f64,
    /// `+∞` when γ = 1; see [`QfiMatrix::gamma_divergent`].
    pub j_gamma: f64,
    pub j_cross: f64,
    pub gamma_divergent: bool,
}

pub fn qfi_matrix(params: &SourceParams) -> QfiMatrix {
    let SourceParams { epsilon: e, gamma: g, .. } = *params;
    let one_minus_g2 = 1.0 - g * g;
    let j_phi = 2.0 * g * g * e / (2.0 + e * one_minus_g2);
    let (j_gamma, gamma_divergent) = if one_minus_g2 <= 0.0 {
        (f64::INFINITY, true)
    } else {
        let num = 2.0 * e * (2.0 + e + e * g * g);
        let den = one_minus_g2 * (4.0 + 4.0 * e + e * e * one_minus_g2);
        (num / den, false)
    };
    QfiMatrix { j_phi, j_gamma, j_cross: 0.0, gamma_divergent }
}

/// QFI of one parameter from the SLD of the weak-source density matrix.
///
/// `∂ρ` is taken by central differences of step [`FD_STEP`]; the QFI is
/// `2 Σ |⟨j|∂ρ|k⟩|² / (λ_j + λ_k)` over eigenpairs above [`SLD_CUTOFF`].
pub fn qfi_numerical(state: &WeakSourceState, which: Parameter) -> Result<f64> {
    let epsilon = state.epsilon();
    if epsilon > WEAK_SOURCE_LIMIT {
        return Err(Error::param("epsilon", epsilon, "oracle requires epsilon <= 0.1"));
    }
    if epsilon == 0.0 {
        return Ok(0.0);
    }
    let gamma = state.gamma().clamp(0.0, 1.0);
    let rho_at = |gamma: f64, phi: f64| -> Matrix3<Complex64> {
        // Perturbed copies may step outside [0, 1] in γ; only the matrix is needed.
        let p_plus = epsilon * (1.0 + gamma) / 2.0;
        let p_minus = epsilon * (1.0 - gamma) / 2.0;
        WeakSourceState { p_vac: 1.0 - epsilon, p_plus, p_minus, phi }.density_matrix()
    };
    let h = FD_STEP;
    let scale = Complex64::new(1.0 / (2.0 * h), 0.0);
    let d_rho = match which {
        Parameter::Phi => (rho_at(gamma, state.phi + h) - rho_at(gamma, state.phi - h)) * scale,
        Parameter::Gamma => (rho_at(gamma + h, state.phi) - rho_at(gamma - h, state.phi)) * scale,
    };
    Ok(sld_qfi(&rho_at(gamma, state.phi), &d_rho))
}

fn sld_qfi(rho: &Matrix3<Complex64>, d_rho: &Matrix3<Complex64>) -> f64 {
    let eig = SymmetricEigen::new(*rho);
    let v = &eig.eigenvectors;
    let d_eig = v.adjoint() * d_rho * v;
    let mut total = 0.0;
    for j in 0..3 {
        for k in 0..3 {
            let denom = eig.eigenvalues[j] + eig.eigenvalues[k];
            if denom > SLD_CUTOFF {
                total += d_eig[(j, k)].norm_sqr() / denom;
            }
        }
    }
    2.0 * total
}

/// Rank-one Fisher information matrix of direct detection at reference phase δ.
///
/// Stored in spectral form: eigenvalue `λ` along `(cos δ, sin δ)`, zero along the
/// orthogonal direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiMatrix {
    pub eigenvalue: f64,
    pub delta: f64,
    pub divergent: bool,
}

impl FiMatrix {
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.delta.sin_cos();
        let l = self.eigenvalue;
        [[l * c * c, l * s * c], [l * s * c, l * s * s]]
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        (0.0, self.eigenvalue)
    }

    pub fn determinant(&self) -> f64 {
        let (a, b) = self.eigenvalues();
        a * b
    }

    pub fn trace_norm(&self) -> f64 {
        let (a, b) = self.eigenvalues();
        a.abs() + b.abs()
    }

    /// Information from `m` independent repetitions.
    pub fn repeated(&self, m: u64) -> FiMatrix {
        FiMatrix { eigenvalue: self.eigenvalue * m as f64, ..*self }
    }
}

pub fn local_fi(params: &SourceParams, delta: f64) -> Result<FiMatrix> {
    if !delta.is_finite() {
        return Err(Error::param("delta", delta, "must be finite"));
    }
    let re = params.gamma * (params.phi - delta).cos();
    let denom = 1.0 - re * re;
    let (eigenvalue, divergent) = if denom <= 0.0 { (f64::INFINITY, true) } else { (params.epsilon / denom, false) };
    Ok(FiMatrix { eigenvalue, delta, divergent })
}

/// Lower bound on the variance of one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum VarianceBound {
    Finite(f64),
    /// Divergent information: the bound collapses to zero.
    SingularLimit,
    /// No information about this parameter.
    Unidentifiable,
}

impl VarianceBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            VarianceBound::Finite(v) => Some(*v),
            VarianceBound::SingularLimit => Some(0.0),
            VarianceBound::Unidentifiable => None,
        }
    }
}

/// Per-parameter bounds in (φ, γ) order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrbResult {
    pub phi: VarianceBound,
    pub gamma: VarianceBound,
}

/// Scalar bound `1/(N J)`.
pub fn crb_scalar(info: f64, n_copies: u64) -> Result<VarianceBound> {
    if n_copies == 0 {
        return Err(Error::InvalidInput("n_copies must be >= 1".into()));
    }
    if info.is_nan() || info < 0.0 {
        return Err(Error::param("information", info, "must be >= 0"));
    }
    Ok(if info == f64::INFINITY {
        VarianceBound::SingularLimit
    } else if info == 0.0 {
        VarianceBound::Unidentifiable
    } else {
        VarianceBound::Finite(1.0 / (n_copies as f64 * info))
    })
}

pub fn crb_qfi(info: &QfiMatrix, n_copies: u64) -> Result<CrbResult> {
    if info.j_cross != 0.0 {
        return crb_matrix([[info.j_phi, info.j_cross], [info.j_cross, info.j_gamma]], n_copies);
    }
    Ok(CrbResult { phi: crb_scalar(info.j_phi, n_copies)?, gamma: crb_scalar(info.j_gamma, n_copies)? })
}

/// Bounds from the rank-one direct-detection matrix. A parameter is identifiable
/// only when the information direction is aligned with its axis.
pub fn crb_fi(info: &FiMatrix, n_copies: u64) -> Result<CrbResult> {
    let [[a, _], [_, d]] = info.matrix();
    let (s, c) = info.delta.sin_cos();
    let aligned = |x: f64| x.abs() <= 1e-12;
    let bound = |diag: f64, other_axis: f64| -> Result<VarianceBound> {
        if aligned(other_axis) {
            crb_scalar(if info.divergent { f64::INFINITY } else { diag }, n_copies)
        } else {
            Ok(VarianceBound::Unidentifiable)
        }
    };
    Ok(CrbResult { phi: bound(a, s)?, gamma: bound(d, c)? })
}

/// General symmetric 2×2 information matrix: `J⁻¹/N` when nonsingular.
pub fn crb_matrix(j: [[f64; 2]; 2], n_copies: u64) -> Result<CrbResult> {
    if n_copies == 0 {
        return Err(Error::InvalidInput("n_copies must be >= 1".into()));
    }
    let [[a, b], [b2, d]] = j;
    if b != b2 || a < 0.0 || d < 0.0 || a * d < b * b - 1e-15 * (a * d).abs() {
        return Err(Error::InvalidInput("information matrix must be symmetric PSD".into()));
    }
    let det = a * d - b * b;
    let n = n_copies as f64;
    if det > 1e-14 * (a + d) * (a + d) {
        return Ok(CrbResult {
            phi: VarianceBound::Finite(d / (det * n)),
            gamma: VarianceBound::Finite(a / (det * n)),
        });
    }
    // Singular: only axes decoupled from the null direction keep a bound.
    let single = |diag: f64| -> Result<VarianceBound> {
        if b == 0.0 {
            crb_scalar(diag, n_copies)
        } else {
            Ok(VarianceBound::Unidentifiable)
        }
    };
    Ok(CrbResult { phi: single(a)?, gamma: single(d)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::weak_state;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn p(e: f64, g: f64, phi: f64) -> SourceParams {
        SourceParams::new(e, g, phi).unwrap()
    }

    #[test]
    fn zero_visibility_hides_phase() {
        assert_eq!(qfi_matrix(&p(1e-7, 0.0, 1.0)).j_phi, 0.0);
        let s = weak_state(&p(1e-3, 0.0, 2.0)).unwrap();
        assert_eq!(qfi_numerical(&s, Parameter::Phi).unwrap(), 0.0);
    }

    #[test]
    fn analytic_values() {
        let q = qfi_matrix(&p(1e-7, 0.5, 0.0));
        assert_relative_eq!(q.j_phi, 2.5e-8, max_relative = 1e-6);
        assert_relative_eq!(q.j_gamma, 1.333_333e-7, max_relative = 1e-5);
        assert_eq!(q.j_cross, 0.0);
        assert!(!q.gamma_divergent);
    }

    #[test]
    fn weak_source_series_limit() {
        for g in [0.0, 0.2, 0.5, 0.9] {
            let q = qfi_matrix(&p(1e-9, g, 0.0));
            assert_relative_eq!(q.j_phi / 1e-9, g * g, epsilon = 1e-8);
            assert_relative_eq!(q.j_gamma / 1e-9, 1.0 / (1.0 - g * g), max_relative = 1e-8);
        }
    }

    #[test]
    fn gamma_one_diverges() {
        let q = qfi_matrix(&p(1e-4, 1.0, 0.0));
        assert!(q.gamma_divergent);
        assert_eq!(q.j_gamma, f64::INFINITY);
        let crb = crb_qfi(&q, 10).unwrap();
        assert_eq!(crb.gamma, VarianceBound::SingularLimit);
        assert_eq!(crb.gamma.value(), Some(0.0));
    }

    #[test]
    fn numerical_oracle_leading_order() {
        let s = weak_state(&p(1e-3, 0.5, 0.7)).unwrap();
        let jp = qfi_numerical(&s, Parameter::Phi).unwrap();
        let jg = qfi_numerical(&s, Parameter::Gamma).unwrap();
        assert_relative_eq!(jp, 2.5e-4, max_relative = 5e-3);
        assert_relative_eq!(jg, 1.0e-3 / 0.75, max_relative = 5e-3);
    }

    #[test]
    fn oracle_rejects_strong_source() {
        let s = weak_state(&p(0.5, 0.5, 0.0)).unwrap();
        assert!(qfi_numerical(&s, Parameter::Phi).is_err());
    }

    #[test]
    fn qfi_is_phase_independent() {
        let base = qfi_matrix(&p(3e-3, 0.8, 0.0));
        for phi in [0.1, 1.0, 3.0, 6.0] {
            assert_eq!(qfi_matrix(&p(3e-3, 0.8, phi)), base);
        }
    }

    #[test]
    fn phase_information_bounded_by_epsilon_and_gamma_information_grows() {
        for e in [1e-7, 1e-3, 0.1, 1.0, 10.0] {
            let mut last = 0.0;
            for i in 0..100 {
                let g = i as f64 / 100.0;
                let q = qfi_matrix(&p(e, g, 0.0));
                assert!(q.j_phi / e <= 1.0 + 1e-15);
                assert!(q.j_gamma / e > last);
                last = q.j_gamma / e;
            }
        }
    }

    #[test]
    fn local_fi_examples() {
        let e = 2e-6;
        let fi = local_fi(&p(e, 0.9, 0.0), FRAC_PI_2).unwrap();
        assert_relative_eq!(fi.eigenvalue, e, max_relative = 1e-12);
        let fi = local_fi(&p(e, 0.8, 0.0), 0.0).unwrap();
        assert_relative_eq!(fi.eigenvalue, e / 0.36, max_relative = 1e-12);
        assert_relative_eq!(fi.eigenvalue / e, 2.778, max_relative = 1e-3);
        let m = 1000;
        assert!(fi.repeated(m).trace_norm() >= m as f64 * e);
        assert_relative_eq!(fi.repeated(m).trace_norm(), m as f64 * fi.trace_norm(), max_relative = 1e-15);
    }

    #[test]
    fn local_fi_rank_one() {
        for (g, phi, d) in [(0.3, 0.2, 1.0), (0.99, 2.0, 0.4), (0.0, 0.0, 2.5)] {
            let fi = local_fi(&p(1e-3, g, phi), d).unwrap();
            assert_eq!(fi.determinant(), 0.0);
            let m = fi.matrix();
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert!(det.abs() <= 1e-15 * fi.eigenvalue * fi.eigenvalue);
            let tr = m[0][0] + m[1][1];
            assert_relative_eq!(tr, fi.eigenvalue, max_relative = 1e-14);
            assert!(fi.trace_norm() >= 1e-3);
        }
    }

    #[test]
    fn local_fi_divergence_flag() {
        let fi = local_fi(&p(1e-3, 1.0, 0.0), 0.0).unwrap();
        assert!(fi.divergent);
        assert_eq!(fi.eigenvalue, f64::INFINITY);
        let fi = local_fi(&p(1e-3, 1.0, 0.0), PI).unwrap();
        assert!(fi.divergent);
    }

    #[test]
    fn crb_diagonal_and_scaling() {
        let q = qfi_matrix(&p(1e-3, 0.5, 0.0));
        let b = crb_qfi(&q, 100).unwrap();
        assert_relative_eq!(b.phi.value().unwrap(), 1.0 / (100.0 * q.j_phi), max_relative = 1e-15);
        assert_relative_eq!(b.gamma.value().unwrap(), 1.0 / (100.0 * q.j_gamma), max_relative = 1e-15);
        assert_eq!(crb_scalar(1.0, 1).unwrap(), VarianceBound::Finite(1.0));
        assert_eq!(crb_scalar(1.0, 100).unwrap(), VarianceBound::Finite(0.01));
        assert!(crb_scalar(1.0, 0).is_err());
    }

    #[test]
    fn crb_unidentifiable_phase() {
        let b = crb_qfi(&qfi_matrix(&p(1e-3, 0.0, 0.0)), 10).unwrap();
        assert_eq!(b.phi, VarianceBound::Unidentifiable);
        assert!(matches!(b.gamma, VarianceBound::Finite(_)));
    }

    #[test]
    fn crb_rank_one_matrix() {
        let fi = local_fi(&p(1e-3, 0.5, 0.0), 0.7).unwrap();
        let b = crb_fi(&fi, 5).unwrap();
        assert_eq!(b.phi, VarianceBound::Unidentifiable);
        assert_eq!(b.gamma, VarianceBound::Unidentifiable);
        let fi = local_fi(&p(1e-3, 0.5, 0.0), 0.0).unwrap();
        let b = crb_fi(&fi, 5).unwrap();
        assert_relative_eq!(b.phi.value().unwrap(), 1.0 / (5.0 * fi.eigenvalue), max_relative = 1e-14);
        assert_eq!(b.gamma, VarianceBound::Unidentifiable);
        let s = crb_matrix(fi.matrix(), 5).unwrap();
        assert_eq!(s.gamma, VarianceBound::Unidentifiable);
    }

    #[test]
    fn crb_full_matrix_inverse() {
        let b = crb_matrix([[2.0, 1.0], [1.0, 3.0]], 2).unwrap();
        assert_relative_eq!(b.phi.value().unwrap(), 3.0 / 10.0, max_relative = 1e-15);
        assert_relative_eq!(b.gamma.value().unwrap(), 2.0 / 10.0, max_relative = 1e-15);
        assert!(crb_matrix([[1.0, 2.0], [2.0, 1.0]], 1).is_err());
    }
}
