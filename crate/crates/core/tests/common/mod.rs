//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use planesing::conslaw::ConsLawProblem;
use planesing::poly::Term;
use planesing::PolySpec;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod oracles;

const DEFAULT_SEED: u64 = 0x5eed_2017;

/// `PLANESING_SEED` if set, else a fixed default.
pub fn seed() -> u64 {
    std::env::var("PLANESING_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Independent stream per test, keyed by `salt`.
pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn proptest_config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed()), failure_persistence: None, ..Config::default() }
}

/// Dense bivariate polynomial of total degree ≤ `deg`, coefficients in `[-r, r]`.
pub fn random_poly2(rng: &mut impl Rng, deg: u32, r: f64) -> PolySpec {
    let mut terms = Vec::new();
    for d in 0..=deg {
        for j in 0..=d {
            terms.push(Term { c: rng.gen_range(-r..=r), e: vec![d - j, j] });
        }
    }
    PolySpec::new(2, terms).unwrap()
}

pub fn random_poly1(rng: &mut impl Rng, deg: u32, r: f64) -> PolySpec {
    let c: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-r..=r)).collect();
    PolySpec::univariate(&c).unwrap()
}

/// Polynomial diffeo of degree ≤ 3 fixing the origin, with linear part of
/// determinant in `[0.5, 2]`.
pub fn random_diffeo(rng: &mut impl Rng) -> [PolySpec; 2] {
    let a = loop {
        let a: [[f64; 2]; 2] = [
            [rng.gen_range(-1.5..=1.5), rng.gen_range(-1.5..=1.5)],
            [rng.gen_range(-1.5..=1.5), rng.gen_range(-1.5..=1.5)],
        ];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if (0.5..=2.0).contains(&det) {
            break a;
        }
    };
    let mut comp = |row: [f64; 2]| {
        let mut terms = vec![Term { c: row[0], e: vec![1, 0] }, Term { c: row[1], e: vec![0, 1] }];
        for d in 2..=3u32 {
            for j in 0..=d {
                terms.push(Term { c: rng.gen_range(-0.5..=0.5), e: vec![d - j, j] });
            }
        }
        PolySpec::new(2, terms).unwrap()
    };
    [comp(a[0]), comp(a[1])]
}

/// Coefficients uniform in `[-1, 1]`; flux degree ≤ 5, data degree ≤ 4.
pub fn random_problem(rng: &mut impl Rng) -> ConsLawProblem {
    ConsLawProblem::new(random_poly1(rng, 5, 1.0), random_poly1(rng, 5, 1.0), random_poly2(rng, 4, 1.0)).unwrap()
}

/// Burgers-like problem whose `trace C` has a strict interior minimum near the
/// origin, perturbed by random higher-order terms.
pub fn interior_min_problem(rng: &mut impl Rng) -> ConsLawProblem {
    let mut f1 = vec![0.0, 0.0, 0.5];
    f1.extend((0..3).map(|_| rng.gen_range(-0.05..=0.05)));
    let f2: Vec<f64> = (0..=4).map(|k| if k < 2 { 0.0 } else { rng.gen_range(-0.1..=0.1) }).collect();
    let mut phi = vec![
        Term { c: -rng.gen_range(0.5..=1.5), e: vec![1, 0] },
        Term { c: rng.gen_range(-0.3..=0.3), e: vec![0, 1] },
        Term { c: rng.gen_range(0.5..=2.0), e: vec![3, 0] },
        Term { c: rng.gen_range(0.5..=2.0), e: vec![1, 2] },
    ];
    for (i, j) in [(2, 0), (1, 1), (0, 2), (2, 1), (0, 3), (4, 0), (3, 1), (2, 2), (1, 3), (0, 4)] {
        phi.push(Term { c: rng.gen_range(-0.15..=0.15), e: vec![i, j] });
    }
    ConsLawProblem::new(
        PolySpec::univariate(&f1).unwrap(),
        PolySpec::univariate(&f2).unwrap(),
        PolySpec::new(2, phi).unwrap(),
    )
    .unwrap()
}

/// `|a - b| ≤ rel·max(|a|, |b|)` or `≤ abs`.
pub fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    let d = (a - b).abs();
    d <= abs || d <= rel * a.abs().max(b.abs())
}
