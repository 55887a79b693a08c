//! Entanglement-assisted readout of weak stellar light.
//!
//! Time bins are simulated symbolically: every bin is vacuum, one photon shared
//! between the sites, or a multiphoton event. The states the readout schemes
//! produce never leave this sector, so the Bell-pair bookkeeping is exact. Full
//! Fock-space interference is only needed for the ground-photon scheme, see
//! [`gottesman`].

pub mod arrivals;
pub mod fock;
pub mod gottesman;
pub mod readout;
pub mod resources;

pub use arrivals::{sample_arrivals, ArrivalSampler, ArrivalTrace, BinState, Sign};
pub use gottesman::{gottesman_oracle, gottesman_probs, CoincidenceCounts, CoincidenceDistribution, GroundPhase};
pub use readout::{
    binary_encode, binary_search_run, codeword_width, search_rounds, unary_run, BellLedger, LogicalMemory, Parity,
    SearchOutcome, UnaryOutcome,
};
pub use resources::{
    consumption_rate, memory_requirements, multiphoton_fidelity, trinomial_decode, MemoryScheme, Trinomial,
};
