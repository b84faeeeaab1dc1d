#![allow(dead_code)]

use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplex_core::electric::{electric_rmap, ResidueColorSet};
use simplex_core::relation::RMap;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Seed for randomized tests; override with `SIMPLEX_TEST_SEED`.
pub fn seed() -> u64 {
    std::env::var("SIMPLEX_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn z25() -> (ResidueColorSet, RMap) {
    let cs = ResidueColorSet::new(5, 2, Some(2)).unwrap();
    let r = electric_rmap(&cs).unwrap();
    (cs, r)
}

pub fn z8() -> (ResidueColorSet, RMap) {
    let cs = ResidueColorSet::new(2, 3, None).unwrap();
    let r = electric_rmap(&cs).unwrap();
    (cs, r)
}

/// `σ⁻¹ ∘ R ∘ σ` for a color permutation σ applied componentwise; solutions
/// stay solutions.
pub fn conjugate(r: &RMap, sigma: &[u32]) -> RMap {
    let mut inverse = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inverse[s as usize] = i as u32;
    }
    RMap::from_fn(r.arity(), r.colors(), |t| {
        let moved: Vec<u32> = t.iter().map(|&c| sigma[c as usize]).collect();
        r.apply(&moved).iter().map(|&c| inverse[c as usize]).collect()
    })
    .unwrap()
}
