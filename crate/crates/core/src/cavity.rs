//! Cavity figures of merit and three-level STIRAP transfer into a memory state.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavitySpec {
    /// Transition wavelength, m.
    pub lambda: f64,
    pub finesse: f64,
    /// Cavity mode waist, m.
    pub waist: f64,
    /// Cavity length, m.
    pub length: f64,
    /// Atomic linewidth, angular Hz.
    pub gamma_atom: f64,
}

impl CavitySpec {
    pub fn new(lambda: f64, finesse: f64, waist: f64, length: f64, gamma_atom: f64) -> Result<Self> {
        ensure_positive("lambda", lambda)?;
        ensure_positive("finesse", finesse)?;
        ensure_positive("waist", waist)?;
        ensure_positive("length", length)?;
        ensure_positive("gamma_atom", gamma_atom)?;
        Ok(Self { lambda, finesse, waist, length, gamma_atom })
    }

    /// Rubidium D2 line in a 40 µm fiber cavity.
    pub fn rubidium_fiber() -> Self {
        Self { lambda: 780e-9, finesse: 2e5, waist: 2e-6, length: 40e-6, gamma_atom: 2.0 * PI * 6e6 }
    }
}

/// C = 3λ²F / (2π³ w²).
pub fn cooperativity(spec: &CavitySpec) -> f64 {
    3.0 * spec.lambda.powi(2) * spec.finesse / (2.0 * PI.powi(3) * spec.waist.powi(2))
}

/// Field decay rate κ = πc / (L F), angular Hz.
pub fn cavity_kappa(length: f64, finesse: f64) -> Result<f64> {
    ensure_positive("length", length)?;
    ensure_positive("finesse", finesse)?;
    Ok(PI * SPEED_OF_LIGHT / (length * finesse))
}

/// Coupling implied by C = g²/(κγ).
pub fn coupling_from_cooperativity(c: f64, kappa: f64, gamma: f64) -> Result<f64> {
    ensure_non_negative("cooperativity", c)?;
    ensure_non_negative("kappa", kappa)?;
    ensure_non_negative("gamma", gamma)?;
    Ok((c * kappa * gamma).sqrt())
}

/// F = exp(−Tκ/2) for a transfer of duration `t` seconds.
pub fn decay_fidelity(t: f64, kappa: f64) -> Result<f64> {
    ensure_non_negative("t", t)?;
    ensure_non_negative("kappa", kappa)?;
    Ok((-t * kappa / 2.0).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityReport {
    pub cooperativity: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub g: f64,
    pub gamma_over_kappa: f64,
}

pub fn cavity_report(spec: &CavitySpec) -> Result<CavityReport> {
    let c = cooperativity(spec);
    let kappa = cavity_kappa(spec.length, spec.finesse)?;
    Ok(CavityReport {
        cooperativity: c,
        kappa,
        gamma: spec.gamma_atom,
        g: coupling_from_cooperativity(c, kappa, spec.gamma_atom)?,
        gamma_over_kappa: spec.gamma_atom / kappa,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetuningModel {
    /// Δ(t) = (G(t)² + Ω(t)²)/g.
    Scaled,
    /// Δ(t) = G(t)² + Ω(t)² taken numerically in angular Hz.
    Raw,
    Off,
}

/// Pulse and integration settings. Times and widths are in units of 1/g,
/// rates in angular Hz.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StirapConfig {
    pub g: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub omega_peak: f64,
    pub omega_center: f64,
    pub coupling_center: f64,
    pub width: f64,
    /// Multiplier on the cavity-coupling envelope; 0 decouples the photon.
    pub coupling_scale: f64,
    pub total_time: f64,
    pub dt: f64,
    pub include_decay: bool,
    pub detuning: DetuningModel,
    /// Keep every n-th step in the returned trajectory.
    pub record_every: usize,
}

impl StirapConfig {
    pub fn new(g: f64, kappa: f64, gamma: f64) -> Result<Self> {
        ensure_positive("g", g)?;
        ensure_non_negative("kappa", kappa)?;
        ensure_non_negative("gamma", gamma)?;
        let total_time = 50.0;
        Ok(Self {
            g,
            kappa,
            gamma,
            omega_peak: 2.0 * g,
            omega_center: 0.3 * total_time,
            coupling_center: 0.6 * total_time,
            width: 9.0,
            coupling_scale: 1.0,
            total_time,
            dt: total_time / 1e5,
            include_decay: false,
            detuning: DetuningModel::Scaled,
            record_every: 100,
        })
    }

    /// g = 2π×400 MHz, κ = 2π×20 MHz, γ = 2π×6 MHz.
    pub fn rubidium() -> Self {
        Self::new(2.0 * PI * 400e6, 2.0 * PI * 20e6, 2.0 * PI * 6e6).expect("valid constants")
    }

    pub fn steps(&self) -> usize {
        (self.total_time / self.dt).round() as usize
    }

    /// Physical duration of the transfer, s.
    pub fn duration(&self) -> f64 {
        self.total_time / self.g
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("g", self.g)?;
        ensure_positive("total_time", self.total_time)?;
        ensure_positive("dt", self.dt)?;
        ensure_positive("width", self.width)?;
        ensure_non_negative("omega_peak", self.omega_peak)?;
        ensure_non_negative("coupling_scale", self.coupling_scale)?;
        ensure_non_negative("kappa", self.kappa)?;
        ensure_non_negative("gamma", self.gamma)?;
        if self.dt > self.total_time / 1e4 * (1.0 + 1e-12) {
            return Err(Error::param("dt", self.dt, "must not exceed total_time / 1e4"));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidInput("record_every must be >= 1".into()));
        }
        Ok(())
    }

    fn envelope(&self, t: f64, center: f64) -> f64 {
        (-(t - center).powi(2) / (2.0 * self.width.powi(2))).exp()
    }

    /// Cavity coupling G(t)/g.
    pub fn coupling(&self, t: f64) -> f64 {
        self.coupling_scale * self.envelope(t, self.coupling_center)
    }

    /// Drive Ω(t)/g.
    pub fn drive(&self, t: f64) -> f64 {
        self.omega_peak / self.g * self.envelope(t, self.omega_center)
    }

    /// Δ(t)/g.
    pub fn detuning_at(&self, t: f64) -> f64 {
        let (c, d) = (self.coupling(t), self.drive(t));
        match self.detuning {
            DetuningModel::Scaled => c * c + d * d,
            DetuningModel::Raw => self.g * (c * c + d * d),
            DetuningModel::Off => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StirapTrajectory {
    /// Sample times in units of 1/g.
    pub times: Vec<f64>,
    /// (P_0R, P_e, P_1R) at each sample time.
    pub populations: Vec<[f64; 3]>,
    pub final_transfer: f64,
    pub norm_loss: f64,
    /// Largest excited-state population over every integration step.
    pub max_excited: f64,
}

type State = [Complex64; 3];

fn derivative(cfg: &StirapConfig, t: f64, psi: &State) -> State {
    let i = Complex64::i();
    let (c, d, delta) = (cfg.coupling(t), cfg.drive(t), cfg.detuning_at(t));
    let (loss_a, loss_e) =
        if cfg.include_decay { (cfg.kappa / cfg.g / 2.0, cfg.gamma / cfg.g / 2.0) } else { (0.0, 0.0) };
    let h0 = Complex64::new(0.0, -loss_a) * psi[0] + c * psi[1];
    let h1 = c * psi[0] + Complex64::new(delta, -loss_e) * psi[1] + d * psi[2];
    let h2 = d * psi[1];
    [-i * h0, -i * h1, -i * h2]
}

fn axpy(psi: &State, k: &State, h: f64) -> State {
    [psi[0] + k[0] * h, psi[1] + k[1] * h, psi[2] + k[2] * h]
}

fn rk4_step(cfg: &StirapConfig, t: f64, dt: f64, psi: &State) -> State {
    let k1 = derivative(cfg, t, psi);
    let k2 = derivative(cfg, t + dt / 2.0, &axpy(psi, &k1, dt / 2.0));
    let k3 = derivative(cfg, t + dt / 2.0, &axpy(psi, &k2, dt / 2.0));
    let k4 = derivative(cfg, t + dt, &axpy(psi, &k3, dt));
    std::array::from_fn(|j| psi[j] + (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (dt / 6.0))
}

fn populations(psi: &State) -> [f64; 3] {
    [psi[0].norm_sqr(), psi[1].norm_sqr(), psi[2].norm_sqr()]
}

pub const NORM_DRIFT_PER_TIME: f64 = 1e-6;

/// Integrates the photon-atom-memory amplitudes from |0_R, photon⟩ with a
/// fixed-step RK4 scheme.
pub fn stirap_simulate(cfg: &StirapConfig) -> Result<StirapTrajectory> {
    cfg.validate()?;
    let steps = cfg.steps();
    let dt = cfg.total_time / steps as f64;
    let mut psi: State = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    let mut times = vec![0.0];
    let mut pops = vec![populations(&psi)];
    let mut max_excited = 0.0f64;
    for n in 0..steps {
        let t = n as f64 * dt;
        psi = rk4_step(cfg, t, dt, &psi);
        let p = populations(&psi);
        max_excited = max_excited.max(p[1]);
        if (n + 1) % cfg.record_every == 0 || n + 1 == steps {
            times.push((n + 1) as f64 * dt);
            pops.push(p);
        }
    }
    let last = *pops.last().expect("at least the initial sample");
    let norm_loss = 1.0 - last.iter().sum::<f64>();
    if !cfg.include_decay {
        let drift = norm_loss.abs() / cfg.total_time;
        if drift.is_nan() || drift > NORM_DRIFT_PER_TIME {
            return Err(Error::IntegratorDrift { drift, limit: NORM_DRIFT_PER_TIME });
        }
    }
    Ok(StirapTrajectory { times, populations: pops, final_transfer: last[2], norm_loss, max_excited })
}
