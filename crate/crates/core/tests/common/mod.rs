#![allow(dead_code, clippy::needless_range_loop)]

pub mod checks;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use toric_gtc::lattice::{IntMatrix, IntVector};
use toric_gtc::monoid::{Cone, ToricMonoid};

/// Seed from `TORIC_GTC_SEED`, fixed by default.
pub fn seed() -> u64 {
    std::env::var("TORIC_GTC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x70_71c)
}

pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

pub fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    if let Err(e) = runner(cases).run(&strategy, test) {
        panic!("seed {}: {e}", seed());
    }
}

pub fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64(x)
}

pub fn matrix(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(range, rows * cols).prop_map(move |d| {
        let rows_v: Vec<IntVector> = d.chunks(cols.max(1)).take(rows).map(IntVector::from_i64).collect();
        IntMatrix::from_rows(&rows_v, cols)
    })
}

/// Pointed full-dimensional cones in rank 2 or 3 from small generators.
pub fn cone() -> impl Strategy<Value = Cone> {
    (2usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), n..=n + 2).prop_map(move |g| (n, g)))
        .prop_filter_map("pointed and full-dimensional", |(n, g)| {
            let gens: Vec<IntVector> = g.iter().map(|x| IntVector::from_i64(x)).collect();
            Cone::new(n, &gens).ok().filter(Cone::is_full_dimensional)
        })
}

/// Sharp toric monoids `σ^∨ ∩ Z^n` over the cones of [`cone`].
pub fn monoid() -> impl Strategy<Value = ToricMonoid> {
    cone().prop_map(|c| ToricMonoid::from_cone(&c))
}

/// Elementary row operations with a sign flip; their product is in `GL_2(Z)`.
pub fn unimodular2() -> impl Strategy<Value = [[i64; 2]; 2]> {
    (proptest::collection::vec((0usize..2, -2i64..=2), 1..6), any::<bool>()).prop_map(|(ops, flip)| {
        let mut m = [[1, 0], [0, 1]];
        for (i, k) in ops {
            let j = 1 - i;
            for c in 0..2 {
                m[i][c] += k * m[j][c];
            }
        }
        if flip {
            m[0] = [-m[0][0], -m[0][1]];
        }
        m
    })
}

pub fn apply2(m: &[[i64; 2]; 2], p: [i64; 2], t: [i64; 2]) -> [i64; 2] {
    [m[0][0] * p[0] + m[0][1] * p[1] + t[0], m[1][0] * p[0] + m[1][1] * p[1] + t[1]]
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Cones over lattice polygons at height one; these are Gorenstein with
/// `ρ = (0, 0, 1)`.
pub fn polygon_cone() -> impl Strategy<Value = Cone> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), 3..=5).prop_filter_map("full-dimensional polygon", |pts| {
        let gens: Vec<IntVector> = pts.iter().map(|&(x, y)| IntVector::from_i64(&[x, y, 1])).collect();
        Cone::new(3, &gens).ok().filter(Cone::is_full_dimensional)
    })
}

/// One centred representative of each reflexive polygon class.
pub fn reflexive_polygons() -> Vec<toric_gtc::polytope::LatticePolytope> {
    use toric_gtc::polygon;
    polygon::classes(&polygon::one_point_polygons(2))
        .iter()
        .map(|h| {
            let f = polygon::normal_form(h);
            let c = polygon::interior_points(&f)[0];
            let pts: Vec<[i64; 2]> = f.iter().map(|p| [p[0] - c[0], p[1] - c[1]]).collect();
            toric_gtc::polytope::LatticePolytope::new(2, &polygon::to_vectors(&pts)).unwrap()
        })
        .collect()
}
