//! Reference tables and curves regenerated from the library, each row paired
//! with the published value and a tolerance verdict.

use serde::Serialize;

use crate::astro::angular_separation;
use crate::cavity::{stirap_simulate, StirapConfig, StirapTrajectory};
use crate::error::Result;
use crate::estimation::{qfi_matrix, qfi_numerical, Parameter};
use crate::photometry::{evaluate, Bandwidth, PhotometrySpec};
use crate::protocols::{consumption_rate, multiphoton_fidelity};
use crate::source::{weak_state, SourceParams};

pub const EXOPLANET_TABLE: &str = "Table I (exoplanet angular separation)";
pub const CONSUMPTION_TABLE: &str = "Table III (entanglement consumption rate)";
pub const PHOTON_BUDGET_TABLE: &str = "Table V (photon budget per band)";
pub const C_FACTOR_FIGURE: &str = "Fig. c-factor";
pub const STIRAP_FIGURE: &str = "Fig. population transfer";

pub const SEPARATION_TOLERANCE: f64 = 0.001;
pub const RATE_TOLERANCE: f64 = 0.02;
pub const EPSILON_TOLERANCE: f64 = 0.10;
pub const CONSUMPTION_TOLERANCE: f64 = 0.15;
pub const C_FACTOR_TOLERANCE: f64 = 1e-4;

/// Brightness ratio assumed between planet and host star.
pub const PLANET_CONTRAST: f64 = 1e-9;

pub const COLLECTING_AREA: f64 = 10.0;

fn relative(computed: f64, published: f64) -> f64 {
    (computed - published).abs() / published.abs()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationRow {
    pub provenance: &'static str,
    pub planet: &'static str,
    pub semi_major_au: f64,
    pub distance_pc: f64,
    pub separation_arcsec: f64,
    pub published_value: f64,
    pub pass: bool,
}

const EXOPLANETS: [(&str, f64, f64, f64); 5] = [
    ("Proxima Centauri b", 0.0485, 1.301, 0.037),
    ("Barnard's Star b", 0.0406, 1.834, 0.022),
    ("Ross 128 b", 0.0496, 3.374, 0.015),
    ("Luyten's Star b", 0.0911, 3.785, 0.024),
    ("Wolf 1061 c", 0.084, 4.287, 0.020),
];

pub fn exoplanet_table() -> Result<Vec<SeparationRow>> {
    EXOPLANETS
        .iter()
        .map(|&(planet, a, d, published)| {
            let s = angular_separation(a, d)?;
            Ok(SeparationRow {
                provenance: EXOPLANET_TABLE,
                planet,
                semi_major_au: a,
                distance_pc: d,
                separation_arcsec: s,
                published_value: published,
                pass: (s - published).abs() <= SEPARATION_TOLERANCE,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsumptionRow {
    pub provenance: &'static str,
    pub lambda_nm: f64,
    pub delta_nu_hz: f64,
    pub delta_lambda_nm: f64,
    pub epsilon: f64,
    pub rate: f64,
    pub published_value: f64,
    pub relative_deviation: f64,
    /// Computed and printed values differ by more than the tolerance.
    pub discrepancy: bool,
    /// The printed entry is known not to follow Δν·ε·log₂(1/ε).
    pub known_inconsistent: bool,
    pub pass: bool,
}

const CONSUMPTION: [(f64, f64, f64, f64, bool); 9] = [
    (555.0, 1e12, 1e-7, 2e6, false),
    (555.0, 1e12, 1e-10, 3e3, false),
    (555.0, 1e12, 1e-11, 40.0, true),
    (760.0, 500e9, 1e-7, 1.2e6, false),
    (760.0, 500e9, 1e-10, 1.2e3, true),
    (760.0, 500e9, 1e-12, 20.0, false),
    (1650.0, 110e9, 1e-7, 2.5e5, false),
    (1650.0, 110e9, 1e-10, 3.6e2, false),
    (1650.0, 110e9, 1e-12, 4.4, false),
];

/// Consumption rates from the tabulated bandwidths. Inconsistent entries pass
/// only when they are flagged.
pub fn consumption_table() -> Result<Vec<ConsumptionRow>> {
    CONSUMPTION
        .iter()
        .map(|&(lambda_nm, delta_nu, epsilon, published, known)| {
            let rate = consumption_rate(delta_nu, epsilon)?;
            let deviation = (rate - published).abs() / rate;
            let discrepancy = deviation > CONSUMPTION_TOLERANCE;
            Ok(ConsumptionRow {
                provenance: CONSUMPTION_TABLE,
                lambda_nm,
                delta_nu_hz: delta_nu,
                delta_lambda_nm: 1.0,
                epsilon,
                rate,
                published_value: published,
                relative_deviation: deviation,
                discrepancy,
                known_inconsistent: known,
                pass: discrepancy == known,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhotonBudgetRow {
    pub provenance: &'static str,
    pub m_ab: f64,
    pub lambda_nm: f64,
    pub delta_lambda_nm: f64,
    pub delta_nu_hz: f64,
    pub published_delta_nu_hz: f64,
    pub photon_rate: f64,
    pub published_photon_rate: f64,
    pub coherence_time_s: f64,
    pub published_coherence_time_s: f64,
    pub epsilon_star: f64,
    pub published_epsilon_star: f64,
    pub epsilon_planet: f64,
    pub rate_pass: bool,
    pub epsilon_pass: bool,
    pub pass: bool,
}

// (m_AB, λ nm, Δλ nm, Δν, rate, τ_c, ε star) as printed.
const PHOTON_BUDGET: [(f64, f64, f64, f64, f64, f64, f64); 8] = [
    (9.0, 760.0, 1.0, 500e9, 181106.0, 2e-12, 3.5e-7),
    (9.0, 1650.0, 1.0, 100e9, 83418.0, 1e-12, 7.5e-7),
    (11.0, 760.0, 10.0, 5e12, 287035.0, 2e-13, 5.5e-8),
    (11.0, 1650.0, 10.0, 1.1e12, 132210.0, 1e-12, 1.2e-7),
    (11.0, 760.0, 1.0, 500e9, 28703.0, 2e-12, 5.5e-8),
    (11.0, 1650.0, 1.0, 100e9, 13221.0, 1e-11, 1.2e-7),
    (13.0, 760.0, 1.0, 500e9, 4549.0, 2e-12, 9e-9),
    (13.0, 1650.0, 1.0, 100e9, 2095.0, 1e-12, 1.9e-8),
];

/// Photon budget over a 10 m² collecting area. Only rates and ε are graded;
/// the printed Δν and τ_c are rounded and reported for comparison.
pub fn photon_budget_table() -> Result<Vec<PhotonBudgetRow>> {
    PHOTON_BUDGET
        .iter()
        .map(|&(m, lambda_nm, dl_nm, published_nu, published_rate, published_tau, published_eps)| {
            let spec = PhotometrySpec::new(m, lambda_nm * 1e-9, Bandwidth::Wavelength(dl_nm * 1e-9), COLLECTING_AREA)?;
            let r = evaluate(&spec);
            let rate_pass = relative(r.photon_rate, published_rate) <= RATE_TOLERANCE;
            let epsilon_pass = relative(r.epsilon, published_eps) <= EPSILON_TOLERANCE;
            Ok(PhotonBudgetRow {
                provenance: PHOTON_BUDGET_TABLE,
                m_ab: m,
                lambda_nm,
                delta_lambda_nm: dl_nm,
                delta_nu_hz: spec.delta_nu(),
                published_delta_nu_hz: published_nu,
                photon_rate: r.photon_rate,
                published_photon_rate: published_rate,
                coherence_time_s: r.coherence_time,
                published_coherence_time_s: published_tau,
                epsilon_star: r.epsilon,
                published_epsilon_star: published_eps,
                epsilon_planet: r.epsilon * PLANET_CONTRAST,
                rate_pass,
                epsilon_pass,
                pass: rate_pass && epsilon_pass,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CFactorPoint {
    pub provenance: &'static str,
    pub m_epsilon: f64,
    pub epsilon: f64,
    pub bins: u64,
    pub c: f64,
    /// Large-M limit Mε / (e^{Mε} − 1).
    pub plateau: f64,
}

/// ε at which the plateau is checked.
pub const PLATEAU_EPSILON: f64 = 1e-7;

/// c(ε) at fixed Mε on a log grid from 10⁻⁹ to 10⁻¹, four points per decade.
pub fn c_factor_curve(m_epsilon: f64) -> Result<Vec<CFactorPoint>> {
    let plateau = m_epsilon / m_epsilon.exp_m1();
    (0..=32)
        .map(|k| {
            let epsilon = 10f64.powf(-9.0 + k as f64 / 4.0);
            let bins = ((m_epsilon / epsilon).round() as u64).max(1);
            Ok(CFactorPoint {
                provenance: C_FACTOR_FIGURE,
                m_epsilon,
                epsilon,
                bins,
                c: multiphoton_fidelity(bins, epsilon)?,
                plateau,
            })
        })
        .collect()
}

/// |c − plateau| at ε = 10⁻⁷ for the given Mε.
pub fn c_factor_plateau_error(m_epsilon: f64) -> Result<f64> {
    let bins = (m_epsilon / PLATEAU_EPSILON).round() as u64;
    let c = multiphoton_fidelity(bins, PLATEAU_EPSILON)?;
    Ok((c - m_epsilon / m_epsilon.exp_m1()).abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QfiSweepRow {
    pub epsilon: f64,
    pub gamma: f64,
    pub phi: f64,
    pub j_phi: f64,
    pub j_phi_numerical: f64,
    pub j_gamma: f64,
    pub j_gamma_numerical: f64,
    /// Allowed relative error 5ε + 10⁻⁶.
    pub tolerance: f64,
    pub pass: bool,
}

pub const QFI_EPSILONS: [f64; 3] = [1e-4, 1e-3, 1e-2];
pub const QFI_GAMMAS: [f64; 4] = [0.0, 0.3, 0.7, 0.99];
pub const QFI_PHASES: [f64; 5] = [0.0, 1.0, 3.0, 4.5, 6.0];

fn within(numerical: f64, analytic: f64, tolerance: f64) -> bool {
    (numerical - analytic).abs() <= tolerance * analytic.abs()
}

/// Analytic against numerical SLD information on the 60-point reference grid.
pub fn qfi_sweep() -> Result<Vec<QfiSweepRow>> {
    let mut rows = Vec::with_capacity(60);
    for &epsilon in &QFI_EPSILONS {
        for &gamma in &QFI_GAMMAS {
            for &phi in &QFI_PHASES {
                let params = SourceParams::new(epsilon, gamma, phi)?;
                let state = weak_state(&params)?;
                let analytic = qfi_matrix(&params);
                let j_phi_numerical = qfi_numerical(&state, Parameter::Phi)?;
                let j_gamma_numerical = qfi_numerical(&state, Parameter::Gamma)?;
                let tolerance = 5.0 * epsilon + 1e-6;
                rows.push(QfiSweepRow {
                    epsilon,
                    gamma,
                    phi,
                    j_phi: analytic.j_phi,
                    j_phi_numerical,
                    j_gamma: analytic.j_gamma,
                    j_gamma_numerical,
                    tolerance,
                    pass: within(j_phi_numerical, analytic.j_phi, tolerance)
                        && within(j_gamma_numerical, analytic.j_gamma, tolerance),
                });
            }
        }
    }
    Ok(rows)
}

pub const STIRAP_MIN_TRANSFER: f64 = 0.999;
pub const STIRAP_MAX_EXCITED: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StirapSample {
    pub provenance: &'static str,
    pub t: f64,
    pub p_0r: f64,
    pub p_e: f64,
    pub p_1r: f64,
}

pub fn stirap_samples(traj: &StirapTrajectory) -> Vec<StirapSample> {
    traj.times
        .iter()
        .zip(&traj.populations)
        .map(|(&t, p)| StirapSample { provenance: STIRAP_FIGURE, t, p_0r: p[0], p_e: p[1], p_1r: p[2] })
        .collect()
}

pub fn stirap_reference() -> Result<(StirapTrajectory, bool)> {
    let traj = stirap_simulate(&StirapConfig::rubidium())?;
    let pass = traj.final_transfer >= STIRAP_MIN_TRANSFER && traj.max_excited <= STIRAP_MAX_EXCITED;
    Ok((traj, pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exoplanets_within_tolerance() {
        let rows = exoplanet_table().unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.pass), "{rows:#?}");
    }

    #[test]
    fn consumption_flags_exactly_the_inconsistent_rows() {
        let rows = consumption_table().unwrap();
        let flagged: Vec<(f64, f64)> =
            rows.iter().filter(|r| r.discrepancy).map(|r| (r.lambda_nm, r.epsilon)).collect();
        assert_eq!(flagged, vec![(555.0, 1e-11), (760.0, 1e-10)]);
        assert!(rows.iter().all(|r| r.pass));
        assert!((rows[0].rate - 2.325e6).abs() / 2.325e6 < 1e-3);
    }

    #[test]
    fn photon_budget_within_tolerance() {
        let rows = photon_budget_table().unwrap();
        assert_eq!(rows.len(), 8);
        for r in &rows {
            assert!(r.pass, "{r:#?}");
        }
    }

    #[test]
    fn qfi_grid_agrees() {
        let rows = qfi_sweep().unwrap();
        assert_eq!(rows.len(), 60);
        for r in &rows {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn c_factor_plateaus() {
        assert!(c_factor_plateau_error(1.0).unwrap() < C_FACTOR_TOLERANCE);
        assert!(c_factor_plateau_error(0.1).unwrap() < C_FACTOR_TOLERANCE);
        let curve = c_factor_curve(1.0).unwrap();
        assert_eq!(curve.len(), 33);
        assert!(curve.iter().all(|p| p.c > 0.0 && p.c <= 1.0));
        assert!((curve[8].c - curve[8].plateau).abs() < C_FACTOR_TOLERANCE);
    }
}
