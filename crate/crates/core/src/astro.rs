//! Target calculators: exoplanet separations, relativistic precession and
//! baseline scaling.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{ARCSEC, AU, GRAVITATIONAL, MICROARCSEC, SOLAR_MASS, SPEED_OF_LIGHT};
use crate::error::{ensure_positive, Error, Result};

/// Angular separation in arcseconds of an orbit of `a` AU seen from `d` parsec.
pub fn angular_separation(a_au: f64, d_pc: f64) -> Result<f64> {
    ensure_positive("semi_major_axis", a_au)?;
    ensure_positive("distance", d_pc)?;
    Ok(a_au / d_pc)
}

pub fn arcsec_to_microarcsec(arcsec: f64) -> f64 {
    arcsec * ARCSEC / MICROARCSEC
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitSpec {
    /// kg
    pub central_mass: f64,
    /// m
    pub semi_major: f64,
    pub eccentricity: f64,
    /// Dimensionless spin χ of the central body.
    pub spin: f64,
}

impl OrbitSpec {
    pub fn new(central_mass: f64, semi_major: f64, eccentricity: f64, spin: f64) -> Result<Self> {
        ensure_positive("central_mass", central_mass)?;
        ensure_positive("semi_major", semi_major)?;
        if !(0.0..1.0).contains(&eccentricity) {
            return Err(Error::param(
                "eccentricity",
                eccentricity,
                "must lie in [0, 1); the orbit is unbound at e >= 1",
            ));
        }
        if !(0.0..=1.0).contains(&spin) {
            return Err(Error::param("spin", spin, "must lie in [0, 1]"));
        }
        Ok(Self { central_mass, semi_major, eccentricity, spin })
    }

    pub fn mercury() -> Self {
        Self::new(SOLAR_MASS, 5.79e10, 0.2056, 0.0).expect("valid constants")
    }

    /// S2 around Sgr A*: 4.3×10⁶ M☉, a = 1031 AU, e = 0.8847, maximal spin.
    pub fn s2() -> Self {
        Self::new(4.3e6 * SOLAR_MASS, 1031.0 * AU, 0.8847, 1.0).expect("valid constants")
    }

    pub fn schwarzschild_radius(&self) -> f64 {
        2.0 * GRAVITATIONAL * self.central_mass / SPEED_OF_LIGHT.powi(2)
    }

    /// Semi-latus rectum a(1 − e²).
    fn semi_latus(&self) -> f64 {
        self.semi_major * (1.0 - self.eccentricity.powi(2))
    }
}

/// ΔΦ = 6πGM / (a(1−e²)c²) per orbit, rad.
pub fn schwarzschild_precession(orbit: &OrbitSpec) -> f64 {
    6.0 * PI * GRAVITATIONAL * orbit.central_mass / (orbit.semi_latus() * SPEED_OF_LIGHT.powi(2))
}

/// ΔΦ_LT = 2χ (R_S / (a(1−e²)))^{3/2} per orbit, rad.
pub fn lense_thirring_precession(orbit: &OrbitSpec) -> f64 {
    2.0 * orbit.spin * (orbit.schwarzschild_radius() / orbit.semi_latus()).powf(1.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Precession {
    pub schwarzschild_rad: f64,
    pub lense_thirring_rad: f64,
    pub schwarzschild_arcsec: f64,
    pub lense_thirring_arcsec: f64,
    /// Schwarzschild over Lense–Thirring; infinite for a non-spinning mass.
    pub ratio: f64,
}

pub fn precession(orbit: &OrbitSpec) -> Precession {
    let s = schwarzschild_precession(orbit);
    let lt = lense_thirring_precession(orbit);
    Precession {
        schwarzschild_rad: s,
        lense_thirring_rad: lt,
        schwarzschild_arcsec: s / ARCSEC,
        lense_thirring_arcsec: lt / ARCSEC,
        ratio: s / lt,
    }
}

pub fn required_baseline(reference_baseline: f64, resolution_ratio: f64) -> Result<f64> {
    ensure_positive("reference_baseline", reference_baseline)?;
    ensure_positive("resolution_ratio", resolution_ratio)?;
    Ok(reference_baseline * resolution_ratio)
}

/// Baseline at `lambda` giving the resolution of `reference_baseline` at `reference_lambda`.
pub fn wavelength_scaled_baseline(reference_baseline: f64, reference_lambda: f64, lambda: f64) -> Result<f64> {
    ensure_positive("reference_lambda", reference_lambda)?;
    ensure_positive("lambda", lambda)?;
    required_baseline(reference_baseline, lambda / reference_lambda)
}

/// Event Horizon Telescope reference point: an Earth-sized baseline at millimetre wavelength.
pub const EHT_BASELINE: f64 = 12_000e3;
pub const EHT_WAVELENGTH: f64 = 3e-3;
