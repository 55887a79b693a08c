//! Ground-photon interferometry: a shared single photon is interfered with the
//! stellar photon at each site on a 50:50 beam splitter, and two-site
//! coincidences are recorded.

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::Serialize;

use super::fock::FockState;
use crate::error::{Error, Result};
use crate::rng::lane_rng;

/// Correlated and anticorrelated coincidence probabilities
/// `½(1 + Re[γ e^{−i(φ−δ)}])` and `½(1 − Re[γ e^{−i(φ+δ)}])`.
///
/// The two expressions use different phase combinations and do not sum to one
/// for general (φ, δ); [`gottesman_oracle`] reproduces each from a full
/// Fock-space calculation under the matching ground-photon convention.
pub fn gottesman_probs(phi: f64, delta: f64, gamma: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    let correlated = 0.5 * (1.0 + gamma * (phi - delta).cos());
    let anticorrelated = 0.5 * (1.0 - gamma * (phi + delta).cos());
    Ok((correlated, anticorrelated))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::param("gamma", gamma, "must lie in [0, 1]"))
    }
}

/// Where the controllable phase δ sits in the shared ground photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundPhase {
    /// `(|0⟩_A|1⟩_B + e^{iδ}|1⟩_A|0⟩_B)/√2`; coincidences depend on φ + δ.
    OnA,
    /// `(|1⟩_A|0⟩_B + e^{iδ}|0⟩_A|1⟩_B)/√2`; coincidences depend on φ − δ.
    OnB,
}

/// Detection-pattern probabilities after both beam splitters. `c`/`d` label the
/// two output ports at a site; `bunched_*` collects both photons at one site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoincidenceDistribution {
    pub cc: f64,
    pub cd: f64,
    pub dc: f64,
    pub dd: f64,
    pub bunched_a: f64,
    pub bunched_b: f64,
}

impl CoincidenceDistribution {
    pub fn total(&self) -> f64 {
        self.cc + self.cd + self.dc + self.dd + self.bunched_a + self.bunched_b
    }

    pub fn coincidences(&self) -> f64 {
        self.cc + self.cd + self.dc + self.dd
    }

    /// Same-port coincidences, conditioned on one photon per site.
    pub fn correlated(&self) -> f64 {
        (self.cc + self.dd) / self.coincidences()
    }

    pub fn anticorrelated(&self) -> f64 {
        (self.cd + self.dc) / self.coincidences()
    }

    fn weights(&self) -> [f64; 6] {
        [self.cc, self.cd, self.dc, self.dd, self.bunched_a, self.bunched_b]
    }

    /// Detection counts over `shots` independent trials drawn from seed lane `lane`.
    pub fn sample_counts(&self, shots: u64, seed: u64, lane: u64) -> Result<CoincidenceCounts> {
        let index = WeightedIndex::new(self.weights()).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let mut rng = lane_rng(seed, lane);
        let mut n = [0u64; 6];
        for _ in 0..shots {
            n[index.sample(&mut rng)] += 1;
        }
        Ok(CoincidenceCounts { cc: n[0], cd: n[1], dc: n[2], dd: n[3], bunched_a: n[4], bunched_b: n[5] })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoincidenceCounts {
    pub cc: u64,
    pub cd: u64,
    pub dc: u64,
    pub dd: u64,
    pub bunched_a: u64,
    pub bunched_b: u64,
}

// Mode layout: stellar A, stellar B, ground A, ground B. After the beam
// splitters the same indices hold output ports c_A, c_B, d_A, d_B.
const STAR_A: usize = 0;
const STAR_B: usize = 1;
const GROUND_A: usize = 2;
const GROUND_B: usize = 3;

fn beam_splitters() -> Vec<Vec<Complex64>> {
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    // a† → (c† + d†)/√2, a'† → (c† − d†)/√2 at each site.
    let mut u = vec![vec![z; 4]; 4];
    for (star, ground) in [(STAR_A, GROUND_A), (STAR_B, GROUND_B)] {
        let (c, d) = (star, ground);
        u[c][star] = r;
        u[d][star] = r;
        u[c][ground] = r;
        u[d][ground] = -r;
    }
    u
}

fn single_photon_pair(first: [u8; 2], second: [u8; 2], relative_phase: f64) -> FockState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut s = FockState::new(2);
    s.add(first.to_vec(), Complex64::new(r, 0.0));
    s.add(second.to_vec(), Complex64::from_polar(r, relative_phase));
    s
}

/// Full outcome distribution from the stellar single-photon sector and the
/// ground photon, computed by explicit two-photon propagation.
pub fn gottesman_oracle(phi: f64, delta: f64, gamma: f64, convention: GroundPhase) -> Result<CoincidenceDistribution> {
    check_gamma(gamma)?;
    let ground = match convention {
        GroundPhase::OnA => single_photon_pair([0, 1], [1, 0], delta),
        GroundPhase::OnB => single_photon_pair([1, 0], [0, 1], delta),
    };
    let u = beam_splitters();
    let mut dist = CoincidenceDistribution { cc: 0.0, cd: 0.0, dc: 0.0, dd: 0.0, bunched_a: 0.0, bunched_b: 0.0 };
    // ψ± = (|1⟩_A|0⟩_B ± e^{iφ}|0⟩_A|1⟩_B)/√2 with weights (1 ± γ)/2.
    for (weight, sign_phase) in [((1.0 + gamma) / 2.0, 0.0), ((1.0 - gamma) / 2.0, std::f64::consts::PI)] {
        if weight == 0.0 {
            continue;
        }
        let star = single_photon_pair([1, 0], [0, 1], phi + sign_phase);
        let out = star.tensor(&ground).apply(&u);
        for (occ, amp) in out.amplitudes() {
            let p = weight * amp.norm_sqr();
            let at_a = occ[STAR_A] + occ[GROUND_A];
            let at_b = occ[STAR_B] + occ[GROUND_B];
            match (at_a, at_b) {
                (2, 0) => dist.bunched_a += p,
                (0, 2) => dist.bunched_b += p,
                (1, 1) => match (occ[STAR_A] == 1, occ[STAR_B] == 1) {
                    (true, true) => dist.cc += p,
                    (true, false) => dist.cd += p,
                    (false, true) => dist.dc += p,
                    (false, false) => dist.dd += p,
                },
                _ => unreachable!("two photons in total"),
            }
        }
    }
    Ok(dist)
}
