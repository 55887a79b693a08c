//! Baseline geometry, fringe phase and baseline precision.
//!
//! Phases carry the 2π of a full fringe: φ = 2π B sinθ / λ, and the baseline
//! bound is ΔB = λ Δφ / (2π sinθ √n). θ is the source elevation above the plane
//! normal to the baseline, so sinθ = B̂·ŝ.

use std::f64::consts::{PI, TAU};

use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{ensure_positive, Error, Result};
use crate::rng::lane_rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaselineGeometry {
    /// Baseline vector r₂ − r₁, m.
    pub baseline: [f64; 3],
    /// Unit vector towards the source.
    pub source_dir: [f64; 3],
    /// Observing wavelength, m.
    pub lambda: f64,
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl BaselineGeometry {
    pub fn new(baseline: [f64; 3], source_dir: [f64; 3], lambda: f64) -> Result<Self> {
        ensure_positive("lambda", lambda)?;
        let norm = dot(source_dir, source_dir).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::param("source_dir", norm, "must be a unit vector"));
        }
        if baseline.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("baseline must be finite".into()));
        }
        Ok(Self { baseline, source_dir, lambda })
    }

    pub fn baseline_length(&self) -> f64 {
        dot(self.baseline, self.baseline).sqrt()
    }

    /// Source elevation relative to the plane normal to the baseline.
    pub fn theta(&self) -> f64 {
        let len = self.baseline_length();
        if len == 0.0 {
            return 0.0;
        }
        (dot(self.baseline, self.source_dir) / len).clamp(-1.0, 1.0).asin()
    }

    pub fn phase(&self) -> f64 {
        fringe_phase(dot(self.baseline, self.source_dir) / self.lambda)
    }
}

/// τ = −(B·s)/c.
pub fn geometric_delay(geom: &BaselineGeometry) -> f64 {
    -dot(geom.baseline, geom.source_dir) / SPEED_OF_LIGHT
}

fn fringe_phase(fringes: f64) -> f64 {
    let frac = fringes - fringes.floor();
    let phi = TAU * frac;
    if phi >= TAU {
        0.0
    } else {
        phi
    }
}

/// φ = 2π B sinθ / λ, wrapped to [0, 2π).
pub fn phase_from_baseline(baseline: f64, theta: f64, lambda: f64) -> Result<f64> {
    ensure_positive("lambda", lambda)?;
    Ok(fringe_phase(baseline * theta.sin() / lambda))
}

/// Baseline precision ΔB = λ Δφ / (2π sinθ √n).
pub fn baseline_crb(theta: f64, lambda: f64, n_photons: u64, delta_phi: f64) -> Result<f64> {
    ensure_positive("lambda", lambda)?;
    ensure_positive("delta_phi", delta_phi)?;
    if n_photons == 0 {
        return Err(Error::InvalidInput("need at least one detected photon".into()));
    }
    let s = theta.sin();
    if s.abs() < 1e-15 {
        return Err(Error::Unidentifiable("baseline (sin theta = 0)"));
    }
    Ok(lambda * (delta_phi / (TAU * s.abs() * (n_photons as f64).sqrt())))
}

/// Click probability of the single-photon interferometer at reference phase δ.
pub fn click_probability(phi: f64, delta: f64) -> f64 {
    0.5 * (1.0 + (phi - delta).cos())
}

/// Photons per setting when `n` photons are dealt round-robin over `settings`.
pub fn photons_per_setting(n: u64, settings: usize) -> Vec<u64> {
    let k = settings as u64;
    (0..k).map(|j| n / k + u64::from(j < n % k)).collect()
}

fn log_likelihood(phi: f64, deltas: &[f64], trials: &[u64], clicks: &[u64]) -> f64 {
    let term = |count: u64, p: f64| if count == 0 { 0.0 } else { count as f64 * p.max(1e-300).ln() };
    deltas
        .iter()
        .zip(trials.iter().zip(clicks))
        .map(|(&d, (&n, &k))| {
            let p = click_probability(phi, d);
            term(k, p) + term(n - k, 1.0 - p)
        })
        .sum()
}

pub const MLE_GRID: usize = 4096;

/// Maximum-likelihood phase from per-setting click counts: grid search then
/// golden-section refinement around the best grid point.
pub fn mle_phase(deltas: &[f64], trials: &[u64], clicks: &[u64]) -> f64 {
    let ll = |phi: f64| log_likelihood(phi, deltas, trials, clicks);
    let step = TAU / MLE_GRID as f64;
    let best = (0..MLE_GRID)
        .map(|i| i as f64 * step)
        .map(|phi| (phi, ll(phi)))
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (ll(c), ll(d));
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = ll(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = ll(d);
        }
    }
    crate::source::wrap_phase(0.5 * (a + b))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseMcResult {
    pub phi_true: f64,
    pub n_photons: u64,
    pub estimates: Vec<f64>,
    pub mean: f64,
    /// Sample variance of the wrapped estimation error.
    pub variance: f64,
    /// Cramér–Rao variance 1/n for unit per-photon information.
    pub crb_variance: f64,
}

impl PhaseMcResult {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn std_error_of_mean(&self) -> f64 {
        (self.variance / self.estimates.len() as f64).sqrt()
    }
}

/// Repeated single-photon phase estimation. Shot `i` draws from seed lane `i`.
pub fn phase_mc(phi_true: f64, n_photons: u64, deltas: &[f64], shots: usize, seed: u64) -> Result<PhaseMcResult> {
    if n_photons < 100 {
        return Err(Error::InvalidInput("need at least 100 photons per shot".into()));
    }
    if shots < 2 {
        return Err(Error::InvalidInput("need at least two shots".into()));
    }
    let distinct = deltas.iter().any(|&d| {
        (crate::source::wrap_phase(d - deltas[0])).min(TAU - crate::source::wrap_phase(d - deltas[0])) > 1e-9
    });
    if deltas.len() < 2 || !distinct {
        return Err(Error::InvalidInput(
            "need at least two distinct reference phases to resolve the sign ambiguity".into(),
        ));
    }
    let trials = photons_per_setting(n_photons, deltas.len());
    let probs: Vec<f64> = deltas.iter().map(|&d| click_probability(phi_true, d)).collect();
    let mut estimates = Vec::with_capacity(shots);
    for shot in 0..shots {
        let mut rng = lane_rng(seed, shot as u64);
        let clicks: Vec<u64> = trials
            .iter()
            .zip(&probs)
            .map(|(&n, &p)| {
                Binomial::new(n, p.clamp(0.0, 1.0))
                    .map(|b| b.sample(&mut rng))
                    .map_err(|e| Error::InvalidInput(e.to_string()))
            })
            .collect::<Result<_>>()?;
        estimates.push(mle_phase(deltas, &trials, &clicks));
    }
    let errors: Vec<f64> = estimates.iter().map(|&e| wrap_signed(e - phi_true)).collect();
    let k = errors.len() as f64;
    let mean_err = errors.iter().sum::<f64>() / k;
    let variance = errors.iter().map(|e| (e - mean_err).powi(2)).sum::<f64>() / (k - 1.0);
    Ok(PhaseMcResult {
        phi_true,
        n_photons,
        estimates,
        mean: phi_true + mean_err,
        variance,
        crb_variance: 1.0 / n_photons as f64,
    })
}

fn wrap_signed(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}
