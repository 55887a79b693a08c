//! Multiphoton contamination, entanglement consumption and memory sizing.

use serde::Serialize;

use super::readout::codeword_width;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Post-selected single-photon fraction `c = Mε / [((1+ε)^M − 1)(1+ε)]`.
pub fn multiphoton_fidelity(bins: u64, epsilon: f64) -> Result<f64> {
    if bins == 0 {
        return Err(Error::InvalidInput("need at least one time bin".into()));
    }
    ensure_positive("epsilon", epsilon)?;
    let m = bins as f64;
    let growth = (m * epsilon.ln_1p()).exp_m1();
    Ok(m * epsilon / (growth * (1.0 + epsilon)))
}

/// Block-level outcome probabilities after decoding `M` thermal bins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trinomial {
    pub p_vac: f64,
    pub p_single: f64,
    pub p_multi: f64,
}

pub fn trinomial_decode(bins: u64, epsilon: f64) -> Result<Trinomial> {
    if bins == 0 {
        return Err(Error::InvalidInput("need at least one time bin".into()));
    }
    ensure_non_negative("epsilon", epsilon)?;
    let m = bins as f64;
    let log_q = -epsilon.ln_1p();
    let p_vac = (m * log_q).exp();
    let p_single = m * epsilon * ((m + 1.0) * log_q).exp();
    // 1 − p_vac − p_single without cancellation for small Mε.
    let p_multi = (-(m * log_q).exp_m1() - p_single).max(0.0);
    Ok(Trinomial { p_vac, p_single, p_multi })
}

/// Bell pairs per second, `Δν · ε · log₂(1/ε)`.
pub fn consumption_rate(delta_nu: f64, epsilon: f64) -> Result<f64> {
    ensure_positive("delta_nu", delta_nu)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::param("epsilon", epsilon, "must lie in (0, 1)"));
    }
    Ok(delta_nu * epsilon * (1.0 / epsilon).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MemoryScheme {
    Unary,
    Binary,
    /// Binary registers replicated across `R` frequency bands.
    BroadbandBinary,
}

/// Memory qubits per site for a block of `M` bins over `R` bands.
pub fn memory_requirements(bins: u64, bands: u64, scheme: MemoryScheme) -> Result<u64> {
    if bins == 0 || bands == 0 {
        return Err(Error::InvalidInput("bins and bands must be >= 1".into()));
    }
    let width = codeword_width(bins as usize) as u64;
    Ok(match scheme {
        MemoryScheme::Unary => bins,
        MemoryScheme::Binary => width,
        MemoryScheme::BroadbandBinary => bands * width,
    })
}
