//! Brute-force linear optics on a few photons.
//!
//! States are sums over occupation-number vectors. A passive mode unitary `U`
//! acts on creation operators as `a_i† → Σ_o U[o][i] a_o†`; every photon is
//! expanded over all output modes, which is exponential in photon number and
//! only meant for the two-photon checks in this crate.

use std::collections::BTreeMap;

use num_complex::Complex64;

pub type Occupation = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockState {
    modes: usize,
    amplitudes: BTreeMap<Occupation, Complex64>,
}

fn factorial(n: u8) -> f64 {
    (1..=n as u32).map(f64::from).product()
}

impl FockState {
    pub fn new(modes: usize) -> Self {
        Self { modes, amplitudes: BTreeMap::new() }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Adds `amplitude · |n⟩` for the normalized Fock state with occupations `n`.
    pub fn add(&mut self, occupation: Occupation, amplitude: Complex64) {
        assert_eq!(occupation.len(), self.modes, "occupation length");
        *self.amplitudes.entry(occupation).or_default() += amplitude;
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// Tensor product; modes of `other` follow the modes of `self`.
    pub fn tensor(&self, other: &FockState) -> FockState {
        let mut out = FockState::new(self.modes + other.modes);
        for (n, a) in &self.amplitudes {
            for (m, b) in &other.amplitudes {
                let mut occ = n.clone();
                occ.extend_from_slice(m);
                out.add(occ, a * b);
            }
        }
        out
    }

    /// Applies the passive linear-optical transformation `u` (row = output mode).
    pub fn apply(&self, u: &[Vec<Complex64>]) -> FockState {
        assert_eq!(u.len(), self.modes);
        let mut out = FockState::new(self.modes);
        for (occ, amp) in &self.amplitudes {
            let inputs: Vec<usize> =
                occ.iter().enumerate().flat_map(|(mode, &n)| std::iter::repeat_n(mode, n as usize)).collect();
            let input_norm: f64 = occ.iter().map(|&n| factorial(n)).product::<f64>().sqrt();
            let photons = inputs.len();
            let terms = self.modes.pow(photons as u32);
            for t in 0..terms {
                let mut code = t;
                let mut coeff = *amp / input_norm;
                let mut out_occ = vec![0u8; self.modes];
                for &mode_in in &inputs {
                    let mode_out = code % self.modes;
                    code /= self.modes;
                    coeff *= u[mode_out][mode_in];
                    out_occ[mode_out] += 1;
                }
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let out_norm: f64 = out_occ.iter().map(|&n| factorial(n)).product::<f64>().sqrt();
                out.add(out_occ, coeff * out_norm);
            }
        }
        out
    }
}
