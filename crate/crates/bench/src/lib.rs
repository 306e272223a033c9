//! Seeded inputs shared by the criterion benchmarks.

use eigencoin::harness::generic;
use eigencoin::sampling::SampleBounds;
use eigencoin::{AlgebraContext, ExactMatrix, Kind};

/// A context together with one reproducible random element of it.
pub struct Fixture {
    pub ctx: AlgebraContext,
    pub x: ExactMatrix,
}

pub fn fixture(kind: Kind, n: usize, seed: u64) -> Fixture {
    let ctx = AlgebraContext::new(kind, n).expect("supported size");
    let x = generic(&ctx, seed, SampleBounds::default());
    Fixture { ctx, x }
}
