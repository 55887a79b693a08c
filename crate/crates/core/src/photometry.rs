//! AB magnitudes to photon rates, coherence times and per-bin mean photon number.
//!
//! The spectrum is taken as flat across the band, which holds for the narrow
//! (nm-scale) bandwidths of interest. Collection area is folded into the photon
//! rate exactly once; `epsilon = photon_rate * coherence_time`.

use serde::Serialize;

use crate::constants::{PLANCK, SPEED_OF_LIGHT};
use crate::error::{ensure_positive, Error, Result};

/// Optical bandwidth, given either in wavelength or in frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Bandwidth {
    /// Δλ in metres.
    Wavelength(f64),
    /// Δν in hertz.
    Frequency(f64),
}

impl Bandwidth {
    /// Accepts exactly one of Δλ or Δν.
    pub fn from_options(delta_lambda: Option<f64>, delta_nu: Option<f64>) -> Result<Self> {
        match (delta_lambda, delta_nu) {
            (Some(dl), None) => Ok(Bandwidth::Wavelength(dl)),
            (None, Some(dn)) => Ok(Bandwidth::Frequency(dn)),
            (Some(_), Some(_)) => Err(Error::InvalidInput(
                "bandwidth given both as wavelength and as frequency; supply exactly one".into(),
            )),
            (None, None) => {
                Err(Error::InvalidInput("no bandwidth given; supply a wavelength or a frequency bandwidth".into()))
            }
        }
    }

    fn value(self) -> f64 {
        match self {
            Bandwidth::Wavelength(v) | Bandwidth::Frequency(v) => v,
        }
    }

    /// Δν in Hz at centre wavelength `lambda`.
    pub fn frequency(self, lambda: f64) -> Result<f64> {
        match self {
            Bandwidth::Frequency(dn) => ensure_positive("delta_nu", dn),
            w @ Bandwidth::Wavelength(_) => Ok(bandwidth_convert(lambda, w)?.value()),
        }
    }

    /// Δλ in m at centre wavelength `lambda`.
    pub fn wavelength(self, lambda: f64) -> Result<f64> {
        match self {
            Bandwidth::Wavelength(dl) => ensure_positive("delta_lambda", dl),
            f @ Bandwidth::Frequency(_) => Ok(bandwidth_convert(lambda, f)?.value()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotometrySpec {
    pub m_ab: f64,
    /// Centre wavelength, m.
    pub lambda: f64,
    pub bandwidth: Bandwidth,
    /// Collection area, m².
    pub area: f64,
}

impl PhotometrySpec {
    pub fn new(m_ab: f64, lambda: f64, bandwidth: Bandwidth, area: f64) -> Result<Self> {
        if !m_ab.is_finite() {
            return Err(Error::param("m_ab", m_ab, "must be finite"));
        }
        ensure_positive("lambda", lambda)?;
        ensure_positive("bandwidth", bandwidth.value())?;
        ensure_positive("area", area)?;
        Ok(Self { m_ab, lambda, bandwidth, area })
    }

    pub fn delta_nu(&self) -> f64 {
        // Validated at construction.
        self.bandwidth.frequency(self.lambda).unwrap_or(f64::NAN)
    }

    pub fn delta_lambda(&self) -> f64 {
        self.bandwidth.wavelength(self.lambda).unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotometryResult {
    /// Spectral flux density, W m⁻² Hz⁻¹.
    pub flux_nu: f64,
    /// Photons per second over the full band and collection area.
    pub photon_rate: f64,
    /// Coherence time τ_c = 1/Δν, s.
    #[serde(rename = "coherence_time_s")]
    pub coherence_time: f64,
    /// Mean photon number per time bin.
    pub epsilon: f64,
}

/// Spectral flux density of an AB magnitude in W m⁻² Hz⁻¹.
pub fn flux_from_magnitude(m_ab: f64) -> f64 {
    // 10^(-0.4 (m + 48.6)) erg s⁻¹ cm⁻² Hz⁻¹, times 1e-3 for SI.
    10f64.powf(-0.4 * (m_ab + 48.6)) * 1e-3
}

/// Converts Δλ ↔ Δν at centre wavelength `lambda`, returning the other representation.
pub fn bandwidth_convert(lambda: f64, delta: Bandwidth) -> Result<Bandwidth> {
    ensure_positive("lambda", lambda)?;
    match delta {
        Bandwidth::Wavelength(dl) => {
            ensure_positive("delta_lambda", dl)?;
            Ok(Bandwidth::Frequency(dl * SPEED_OF_LIGHT / (lambda * lambda)))
        }
        Bandwidth::Frequency(dn) => {
            ensure_positive("delta_nu", dn)?;
            Ok(Bandwidth::Wavelength(dn * lambda * lambda / SPEED_OF_LIGHT))
        }
    }
}

/// τ_c = 1/Δν.
pub fn coherence_time(delta_nu: f64) -> Result<f64> {
    ensure_positive("delta_nu", delta_nu)?;
    Ok(1.0 / delta_nu)
}

/// Photons per second: F_ν/(hλ) · Δλ · area.
pub fn photon_rate(spec: &PhotometrySpec) -> f64 {
    let photon_flux_density = flux_from_magnitude(spec.m_ab) / (PLANCK * spec.lambda);
    photon_flux_density * spec.delta_lambda() * spec.area
}

pub fn epsilon_per_bin(spec: &PhotometrySpec) -> f64 {
    evaluate(spec).epsilon
}

pub fn evaluate(spec: &PhotometrySpec) -> PhotometryResult {
    let photon_rate = photon_rate(spec);
    let coherence_time = 1.0 / spec.delta_nu();
    PhotometryResult {
        flux_nu: flux_from_magnitude(spec.m_ab),
        photon_rate,
        coherence_time,
        epsilon: photon_rate * coherence_time,
    }
}
