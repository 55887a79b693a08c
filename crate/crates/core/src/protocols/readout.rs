//! Parity-check readout schemes and binary memory encoding.

use serde::Serialize;

use super::arrivals::{ArrivalTrace, BinState, Sign};
use crate::error::{Error, Result};

/// Outcome of one Bell-pair parity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    /// Bell pair left in Φ⁺: no photon in the checked bins.
    PhiPlus,
    /// Bell pair flipped to Φ⁻: odd photon parity in the checked bins.
    PhiMinus,
}

impl Parity {
    pub fn flipped(self) -> bool {
        self == Parity::PhiMinus
    }
}

/// Append-only record of consumed Bell pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BellLedger {
    outcomes: Vec<Parity>,
}

impl BellLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn consume(&mut self, outcome: Parity) {
        self.outcomes.push(outcome);
    }

    pub fn consumed(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcomes(&self) -> &[Parity] {
        &self.outcomes
    }
}

/// Parity check of a group of bins against one Bell pair.
fn parity_check(ledger: &mut BellLedger, photons_in_group: usize) -> Parity {
    let outcome = if photons_in_group % 2 == 1 { Parity::PhiMinus } else { Parity::PhiPlus };
    ledger.consume(outcome);
    outcome
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnaryOutcome {
    /// 1-based indices of bins whose parity check flipped.
    pub located: Vec<usize>,
    pub ledger: BellLedger,
}

/// One memory qubit and one Bell pair per bin.
///
/// Multiphoton bins are treated as depolarized memories and flip the check like
/// a single photon.
pub fn unary_run(trace: &ArrivalTrace) -> UnaryOutcome {
    let mut ledger = BellLedger::new();
    let mut located = Vec::new();
    for (i, bin) in trace.bins().enumerate() {
        let occupied = usize::from(!bin.is_vacuum());
        if parity_check(&mut ledger, occupied).flipped() {
            located.push(i + 1);
        }
    }
    UnaryOutcome { located, ledger }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    /// 1-based bin holding the photon.
    pub index: usize,
    pub ledger: BellLedger,
}

/// Number of halving rounds for a block of `bins`: ⌈log₂ M⌉.
pub fn search_rounds(bins: usize) -> u32 {
    bins.max(1).next_power_of_two().trailing_zeros()
}

/// Locates a single shared photon by repeated halving.
///
/// The block is padded with empty bins up to the next power of two so that the
/// left half is never smaller than the right and every run uses exactly
/// ⌈log₂ M⌉ parity checks. Each round checks the left half of the current block.
pub fn binary_search_run(trace: &ArrivalTrace) -> Result<SearchOutcome> {
    let occupied = trace.occupied();
    let valid = occupied.len() == 1 && matches!(occupied[0].1, BinState::Shared { .. });
    if !valid || trace.is_empty() {
        return Err(Error::SearchPrecondition { occupied: occupied.len() });
    }
    let mut ledger = BellLedger::new();
    let mut lo = 1usize;
    let mut size = trace.len().next_power_of_two();
    while size > 1 {
        let half = size / 2;
        let hi = (lo + half - 1).min(trace.len());
        let photons = if lo <= hi { trace.occupied_in(lo, hi) } else { 0 };
        if !parity_check(&mut ledger, photons).flipped() {
            lo += half;
        }
        size = half;
    }
    Ok(SearchOutcome { index: lo, ledger })
}

/// Register width for the binary code: ⌈log₂(M+1)⌉, reserving all-zeros for vacuum.
pub fn codeword_width(bins: usize) -> u32 {
    usize::BITS - bins.leading_zeros()
}

/// Logical memory pair after binary encoding of one block.
///
/// A single stored photon leaves the two registers in the superposition
/// `|0̄, 1̄_m⟩ ± e^{iφ} |1̄_m, 0̄⟩`; `codeword` holds `m` (0 for vacuum).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogicalMemory {
    pub width: u32,
    pub codeword: u64,
    pub sign: Option<Sign>,
    pub phase: Option<f64>,
    /// More than one photon landed in the block.
    pub depolarized: bool,
}

impl LogicalMemory {
    /// Register contents `(A, B)` in each branch of the stored superposition.
    pub fn branches(&self) -> [(u64, u64); 2] {
        [(0, self.codeword), (self.codeword, 0)]
    }

    /// Codeword bits, least significant first, padded to the register width.
    pub fn bit_string(&self, value: u64) -> String {
        (0..self.width).map(|k| if (value >> k) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// Encodes a block with logical CNOTs: a photon in bin `m` XORs codeword `m`
/// into the registers; vacuum bins leave them untouched.
pub fn binary_encode(trace: &ArrivalTrace) -> LogicalMemory {
    let mut codeword = 0u64;
    let mut photons = 0usize;
    let mut multi = false;
    let mut sign = None;
    let mut phase = None;
    for &(m, bin) in trace.occupied() {
        match bin {
            BinState::Vacuum => {}
            BinState::Shared { sign: s, phase: p } => {
                photons += 1;
                codeword ^= m as u64;
                sign = Some(s);
                phase = Some(p);
            }
            BinState::Multi => {
                multi = true;
                codeword ^= m as u64;
            }
        }
    }
    let depolarized = multi || photons > 1;
    if depolarized {
        sign = None;
        phase = None;
    }
    LogicalMemory { width: codeword_width(trace.len()), codeword, sign, phase, depolarized }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::arrivals::sample_arrivals;

    #[test]
    fn unary_photon_in_fifth_bin() {
        let trace = ArrivalTrace::single_photon(6, 5, 0.3).unwrap();
        let out = unary_run(&trace);
        use Parity::*;
        assert_eq!(out.ledger.outcomes(), &[PhiPlus, PhiPlus, PhiPlus, PhiPlus, PhiMinus, PhiPlus]);
        assert_eq!(out.ledger.consumed(), 6);
        assert_eq!(out.located, vec![5]);
    }

    #[test]
    fn unary_all_vacuum() {
        let out = unary_run(&ArrivalTrace::from_bins(&[BinState::Vacuum; 9]));
        assert_eq!(out.ledger.consumed(), 9);
        assert!(out.ledger.outcomes().iter().all(|p| *p == Parity::PhiPlus));
        assert!(out.located.is_empty());
    }

    #[test]
    fn unary_flips_exactly_on_occupied_bins() {
        let trace = sample_arrivals(0.2, 5000, 0.5, 0.0, 4).unwrap();
        let out = unary_run(&trace);
        let occupied: Vec<usize> = trace.occupied().iter().map(|(i, _)| *i).collect();
        assert_eq!(out.located, occupied);
    }

    #[test]
    fn search_four_bins_photon_in_second() {
        let out = binary_search_run(&ArrivalTrace::single_photon(4, 2, 0.0).unwrap()).unwrap();
        assert_eq!(out.index, 2);
        assert_eq!(out.ledger.consumed(), 2);
        assert_eq!(out.ledger.outcomes(), &[Parity::PhiMinus, Parity::PhiPlus]);
    }

    #[test]
    fn search_eight_bins() {
        let out = binary_search_run(&ArrivalTrace::single_photon(8, 6, 0.0).unwrap()).unwrap();
        assert_eq!((out.index, out.ledger.consumed()), (6, 3));
    }

    #[test]
    fn search_every_position_small_blocks() {
        for m in 1..=70 {
            for pos in 1..=m {
                let out = binary_search_run(&ArrivalTrace::single_photon(m, pos, 0.0).unwrap()).unwrap();
                assert_eq!(out.index, pos);
                assert_eq!(out.ledger.consumed() as u32, search_rounds(m));
            }
        }
        assert_eq!(search_rounds(1), 0);
        assert_eq!(search_rounds(1024), 10);
        assert_eq!(search_rounds(1025), 11);
    }

    #[test]
    fn search_precondition() {
        let empty = ArrivalTrace::from_bins(&[BinState::Vacuum; 4]);
        assert_eq!(binary_search_run(&empty), Err(Error::SearchPrecondition { occupied: 0 }));
        let two = ArrivalTrace::sparse(
            8,
            vec![
                (1, BinState::Shared { sign: Sign::Plus, phase: 0.0 }),
                (5, BinState::Shared { sign: Sign::Plus, phase: 0.0 }),
            ],
        )
        .unwrap();
        assert!(matches!(binary_search_run(&two), Err(Error::SearchPrecondition { occupied: 2 })));
        let multi = ArrivalTrace::sparse(8, vec![(3, BinState::Multi)]).unwrap();
        assert!(binary_search_run(&multi).is_err());
    }

    #[test]
    fn fifth_bin_codeword() {
        let mem = binary_encode(&ArrivalTrace::single_photon(16, 5, 0.4).unwrap());
        assert_eq!(mem.codeword, 5);
        assert!(mem.bit_string(mem.codeword).starts_with("101"));
        assert_eq!(mem.bit_string(mem.codeword), "10100");
        assert_eq!(mem.branches(), [(0, 5), (5, 0)]);
        assert_eq!(mem.phase, Some(0.4));
        assert!(!mem.depolarized);
    }

    #[test]
    fn vacuum_leaves_registers_zero() {
        let mem = binary_encode(&ArrivalTrace::from_bins(&[BinState::Vacuum; 7]));
        assert_eq!(mem.codeword, 0);
        assert_eq!(mem.bit_string(0), "000");
        assert!(!mem.depolarized);
    }

    #[test]
    fn two_photons_depolarize() {
        let shared = BinState::Shared { sign: Sign::Plus, phase: 0.0 };
        let t = ArrivalTrace::sparse(16, vec![(3, shared), (9, shared)]).unwrap();
        assert!(binary_encode(&t).depolarized);
        let t = ArrivalTrace::sparse(16, vec![(3, BinState::Multi)]).unwrap();
        assert!(binary_encode(&t).depolarized);
    }

    #[test]
    fn widths() {
        assert_eq!(codeword_width(1), 1);
        assert_eq!(codeword_width(7), 3);
        assert_eq!(codeword_width(8), 4);
        assert_eq!(codeword_width(10_000_000), 24);
    }
}
