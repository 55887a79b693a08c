use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::Serialize;

use crate::error::{ensure_non_negative, Error, Result};
use crate::rng::lane_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Photon content of one time bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BinState {
    Vacuum,
    /// One photon in |ψ±^φ⟩.
    Shared {
        sign: Sign,
        phase: f64,
    },
    /// Two or more photons. Absorbing: the stored information is lost.
    Multi,
}

impl BinState {
    pub fn is_vacuum(&self) -> bool {
        matches!(self, BinState::Vacuum)
    }
}

/// A block of `M` time bins. Only non-vacuum bins are stored; indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrivalTrace {
    len: usize,
    occupied: Vec<(usize, BinState)>,
    pub epsilon: f64,
    pub seed: Option<u64>,
}

impl ArrivalTrace {
    /// Builds a trace from an explicit list of bins.
    pub fn from_bins(bins: &[BinState]) -> Self {
        let occupied = bins.iter().enumerate().filter(|(_, b)| !b.is_vacuum()).map(|(i, b)| (i + 1, *b)).collect();
        Self { len: bins.len(), occupied, epsilon: f64::NAN, seed: None }
    }

    /// All-vacuum trace of `len` bins except the listed `(index, state)` pairs.
    pub fn sparse(len: usize, mut occupied: Vec<(usize, BinState)>) -> Result<Self> {
        occupied.retain(|(_, b)| !b.is_vacuum());
        occupied.sort_by_key(|(i, _)| *i);
        for w in occupied.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidInput(format!("bin {} listed twice", w[0].0)));
            }
        }
        if let Some((i, _)) = occupied.iter().find(|(i, _)| *i == 0 || *i > len) {
            return Err(Error::InvalidInput(format!("bin index {i} outside 1..={len}")));
        }
        Ok(Self { len, occupied, epsilon: f64::NAN, seed: None })
    }

    /// Single shared photon with sign + in bin `index` (1-based).
    pub fn single_photon(len: usize, index: usize, phase: f64) -> Result<Self> {
        Self::sparse(len, vec![(index, BinState::Shared { sign: Sign::Plus, phase })])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Non-vacuum bins in increasing index order.
    pub fn occupied(&self) -> &[(usize, BinState)] {
        &self.occupied
    }

    /// State of bin `index` (1-based).
    pub fn bin(&self, index: usize) -> BinState {
        match self.occupied.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.occupied[k].1,
            Err(_) => BinState::Vacuum,
        }
    }

    pub fn bins(&self) -> impl Iterator<Item = BinState> + '_ {
        (1..=self.len).map(move |i| self.bin(i))
    }

    /// Number of non-vacuum bins in `lo..=hi`.
    pub fn occupied_in(&self, lo: usize, hi: usize) -> usize {
        let start = self.occupied.partition_point(|(i, _)| *i < lo);
        let end = self.occupied.partition_point(|(i, _)| *i <= hi);
        end.saturating_sub(start)
    }
}

/// Thermal arrival sampler with a private ChaCha stream.
///
/// Vacuum runs are drawn as geometric gaps, so sampling cost scales with the
/// number of photons rather than the number of bins.
pub struct ArrivalSampler {
    epsilon: f64,
    gamma: f64,
    phi: f64,
    seed: u64,
    gap: Option<Geometric>,
    rng: ChaCha8Rng,
}

impl ArrivalSampler {
    pub fn new(epsilon: f64, gamma: f64, phi: f64, seed: u64, lane: u64) -> Result<Self> {
        ensure_non_negative("epsilon", epsilon)?;
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::param("gamma", gamma, "must lie in [0, 1]"));
        }
        // Probability that a bin is not vacuum: 1 − 1/(1+ε).
        let p_occupied = epsilon / (1.0 + epsilon);
        let gap = if p_occupied > 0.0 {
            Some(Geometric::new(p_occupied).map_err(|e| Error::InvalidInput(e.to_string()))?)
        } else {
            None
        };
        Ok(Self { epsilon, gamma, phi, seed, gap, rng: lane_rng(seed, lane) })
    }

    pub fn sample(&mut self, bins: usize) -> ArrivalTrace {
        let mut occupied = Vec::new();
        if let Some(gap) = self.gap {
            // Given occupancy, one photon w.p. p₁/(1−p₀) = 1/(1+ε).
            let p_single = 1.0 / (1.0 + self.epsilon);
            let p_plus = (1.0 + self.gamma) / 2.0;
            let mut next = 0u64;
            loop {
                next = next.saturating_add(gap.sample(&mut self.rng)).saturating_add(1);
                if next > bins as u64 {
                    break;
                }
                let state = if self.rng.random::<f64>() < p_single {
                    let sign = if self.rng.random::<f64>() < p_plus { Sign::Plus } else { Sign::Minus };
                    BinState::Shared { sign, phase: self.phi }
                } else {
                    BinState::Multi
                };
                occupied.push((next as usize, state));
            }
        }
        ArrivalTrace { len: bins, occupied, epsilon: self.epsilon, seed: Some(self.seed) }
    }
}

/// Samples `bins` independent thermal time bins.
pub fn sample_arrivals(epsilon: f64, bins: usize, gamma: f64, phi: f64, seed: u64) -> Result<ArrivalTrace> {
    if bins == 0 {
        return Err(Error::InvalidInput("need at least one time bin".into()));
    }
    Ok(ArrivalSampler::new(epsilon, gamma, phi, seed, 0)?.sample(bins))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_light_no_photons() {
        let t = sample_arrivals(0.0, 1000, 0.5, 0.0, 3).unwrap();
        assert!(t.occupied().is_empty());
        assert!(t.bins().all(|b| b.is_vacuum()));
    }

    #[test]
    fn bose_einstein_bin_frequencies() {
        // ε = 1: p₀ = 1/2, p₁ = 1/4, p_multi = 1/4.
        let m = 1_000_000usize;
        let t = sample_arrivals(1.0, m, 0.3, 0.0, 11).unwrap();
        let shared = t.occupied().iter().filter(|(_, b)| matches!(b, BinState::Shared { .. })).count();
        let multi = t.occupied().iter().filter(|(_, b)| matches!(b, BinState::Multi)).count();
        let vac = m - shared - multi;
        for (count, p) in [(vac, 0.5), (shared, 0.25), (multi, 0.25)] {
            let sigma = (m as f64 * p * (1.0 - p)).sqrt();
            assert!((count as f64 - m as f64 * p).abs() < 3.0 * sigma, "{count} vs {p}");
        }
    }

    #[test]
    fn full_visibility_never_gives_minus() {
        let t = sample_arrivals(0.5, 100_000, 1.0, 0.2, 5).unwrap();
        assert!(t.occupied().iter().all(|(_, b)| !matches!(b, BinState::Shared { sign: Sign::Minus, .. })));
    }

    #[test]
    fn sign_frequency_follows_visibility() {
        let gamma = 0.4;
        let t = sample_arrivals(1.0, 400_000, gamma, 0.0, 9).unwrap();
        let (mut plus, mut total) = (0usize, 0usize);
        for (_, b) in t.occupied() {
            if let BinState::Shared { sign, .. } = b {
                total += 1;
                plus += (*sign == Sign::Plus) as usize;
            }
        }
        let p = (1.0 + gamma) / 2.0;
        let sigma = (total as f64 * p * (1.0 - p)).sqrt();
        assert!((plus as f64 - total as f64 * p).abs() < 3.0 * sigma);
    }

    #[test]
    fn reproducible_from_seed() {
        let a = sample_arrivals(0.01, 50_000, 0.7, 1.0, 77).unwrap();
        let b = sample_arrivals(0.01, 50_000, 0.7, 1.0, 77).unwrap();
        let c = sample_arrivals(0.01, 50_000, 0.7, 1.0, 78).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sparse_accessors() {
        let t = ArrivalTrace::sparse(10, vec![(7, BinState::Multi), (2, BinState::Multi)]).unwrap();
        assert_eq!(t.occupied()[0].0, 2);
        assert_eq!(t.bin(7), BinState::Multi);
        assert_eq!(t.bin(3), BinState::Vacuum);
        assert_eq!(t.occupied_in(1, 2), 1);
        assert_eq!(t.occupied_in(3, 6), 0);
        assert_eq!(t.occupied_in(1, 10), 2);
        assert_eq!(t.bins().count(), 10);
        assert!(ArrivalTrace::sparse(4, vec![(5, BinState::Multi)]).is_err());
        assert!(ArrivalTrace::sparse(4, vec![(0, BinState::Multi)]).is_err());
        assert!(ArrivalTrace::sparse(4, vec![(1, BinState::Multi), (1, BinState::Multi)]).is_err());
    }

    #[test]
    fn from_bins_round_trip() {
        let bins =
            [BinState::Vacuum, BinState::Multi, BinState::Vacuum, BinState::Shared { sign: Sign::Minus, phase: 0.5 }];
        let t = ArrivalTrace::from_bins(&bins);
        assert_eq!(t.bins().collect::<Vec<_>>(), bins);
    }
}
