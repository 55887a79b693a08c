use proptest::prelude::*;
use qvlbi_core::protocols::{
    binary_encode, binary_search_run, sample_arrivals, search_rounds, trinomial_decode, unary_run, ArrivalSampler,
    ArrivalTrace, BinState,
};

const MAX_BINS: usize = 1 << 14;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn resource_accounting(bins in 1..=MAX_BINS, frac in 0.0f64..1.0) {
        let pos = 1 + ((bins as f64 * frac) as usize).min(bins - 1);
        let trace = ArrivalTrace::single_photon(bins, pos, 0.25).unwrap();
        let unary = unary_run(&trace);
        prop_assert_eq!(unary.ledger.consumed(), bins);
        prop_assert_eq!(unary.located, vec![pos]);
        let search = binary_search_run(&trace).unwrap();
        prop_assert_eq!(search.index, pos);
        prop_assert_eq!(search.ledger.consumed() as u32, search_rounds(bins));
        let mem = binary_encode(&trace);
        prop_assert_eq!(mem.codeword, pos as u64);
        prop_assert!(!mem.depolarized);
    }
}

#[test]
fn sampling_is_reproducible() {
    let a = sample_arrivals(1e-3, 50_000, 0.7, 1.2, 99).unwrap();
    let b = sample_arrivals(1e-3, 50_000, 0.7, 1.2, 99).unwrap();
    assert_eq!(a, b);
    let c = sample_arrivals(1e-3, 50_000, 0.7, 1.2, 100).unwrap();
    assert_ne!(a.occupied(), c.occupied());
}

#[test]
fn lanes_are_independent_of_evaluation_order() {
    let forward: Vec<_> =
        (0..8).map(|lane| ArrivalSampler::new(0.01, 1.0, 0.0, 5, lane).unwrap().sample(2000)).collect();
    let backward: Vec<_> =
        (0..8).rev().map(|lane| ArrivalSampler::new(0.01, 1.0, 0.0, 5, lane).unwrap().sample(2000)).collect();
    assert!(forward.iter().eq(backward.iter().rev()));
}

fn classify(trace: &ArrivalTrace) -> usize {
    match trace.occupied() {
        [] => 0,
        [(_, BinState::Shared { .. })] => 1,
        _ => 2,
    }
}

#[test]
fn trinomial_matches_sampling() {
    let (bins, eps, trials) = (2_000usize, 2e-4, 200_000usize);
    let expected = trinomial_decode(bins as u64, eps).unwrap();
    let mut sampler = ArrivalSampler::new(eps, 1.0, 0.0, 2024, 0).unwrap();
    let mut counts = [0usize; 3];
    for _ in 0..trials {
        counts[classify(&sampler.sample(bins))] += 1;
    }
    let n = trials as f64;
    for (k, p) in counts.iter().zip([expected.p_vac, expected.p_single, expected.p_multi]) {
        let sigma = (n * p * (1.0 - p)).sqrt();
        assert!((*k as f64 - n * p).abs() <= 3.0 * sigma, "{k} vs {}", n * p);
    }
}
