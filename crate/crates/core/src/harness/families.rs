//! Seeded sample families for the verification suites.
//!
//! Each family is a pure function of `(ctx, seed, bounds)`. The mixed sampler
//! deliberately includes degenerate families (sparse small integers, nilpotent
//! cones, Borel and parabolic slices) so that both sides of every equivalence
//! are exercised.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactScalar};
use crate::invariants::{coincidence_count, level_coincidence};
use crate::korbits::{
    borel_plus, conjugate, sample_k, sample_nilfibre, sample_xi, stable_parabolic, xi_max, OrbitTable, XiPattern,
};
use crate::liealg::{AlgebraContext, Kind};
use crate::sampling::{self, SampleBounds, SeededRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Generic,
    Sparse,
    Borel,
    Parabolic,
    Xi,
    Nilfibre,
    Arrowhead,
    Nilpotent,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Sparse => "sparse",
            Family::Borel => "borel",
            Family::Parabolic => "parabolic",
            Family::Xi => "xi",
            Family::Nilfibre => "nilfibre",
            Family::Arrowhead => "arrowhead",
            Family::Nilpotent => "nilpotent",
        }
    }

    /// The families drawn by [`mixed_sample`] for this algebra.
    pub fn for_kind(kind: Kind) -> &'static [Family] {
        match kind {
            Kind::GL => &[
                Family::Generic,
                Family::Sparse,
                Family::Borel,
                Family::Parabolic,
                Family::Arrowhead,
                Family::Nilpotent,
            ],
            Kind::SO => &[
                Family::Generic,
                Family::Sparse,
                Family::Borel,
                Family::Parabolic,
                Family::Xi,
                Family::Nilfibre,
            ],
        }
    }
}

fn combination(rng: &mut SeededRng, basis: &[ExactMatrix], bounds: SampleBounds) -> ExactMatrix {
    let n = basis[0].rows();
    let mut out = ExactMatrix::zeros(n, n);
    for b in basis {
        let c = sampling::random_rational(rng, bounds);
        if !c.is_zero() {
            out = out.add(&b.scale(&c));
        }
    }
    out
}

/// A random element of g with rational coordinates.
pub fn generic(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> ExactMatrix {
    let mut rng = sampling::rng(seed);
    combination(&mut rng, ctx.basis(), bounds)
}

/// Coordinates in {−1, 0, 1}, mostly zero.
pub fn sparse(ctx: &AlgebraContext, seed: u64) -> ExactMatrix {
    let mut rng = sampling::rng(seed);
    let n = ctx.n();
    let mut out = ExactMatrix::zeros(n, n);
    for b in ctx.basis() {
        match sampling::pick(&mut rng, 6) {
            0 => out = out.add(b),
            1 => out = out.sub(b),
            _ => {}
        }
    }
    out
}

fn k_conjugate(ctx: &AlgebraContext, seed: u64, x: &ExactMatrix) -> Result<ExactMatrix> {
    let k = sample_k(ctx, sampling::derive_seed(seed, "family/k", 0), SampleBounds::small())?;
    conjugate(ctx, &k, x)
}

/// Ad(k)y for y a random element of the standard Borel subalgebra.
pub fn borel(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let mut rng = sampling::rng(seed);
    let b = match ctx.kind() {
        Kind::SO => borel_plus(ctx),
        Kind::GL => upper_basis(ctx.n(), true),
    };
    let y = combination(&mut rng, &b, bounds);
    k_conjugate(ctx, seed, &y)
}

fn upper_basis(n: usize, with_diagonal: bool) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if j > i || with_diagonal {
                out.push(ExactMatrix::unit(n, n, i, j));
            }
        }
    }
    out
}

/// Ad(k)y for y in a random θ-stable parabolic (so) or a random block upper
/// triangular parabolic (gl).
pub fn parabolic(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let mut rng = sampling::rng(seed);
    let basis = match ctx.kind() {
        Kind::SO => {
            let (lo, hi) = if ctx.is_type_b() {
                (0, ctx.rank())
            } else {
                (1, ctx.rank())
            };
            let i = lo + sampling::pick(&mut rng, hi - lo);
            stable_parabolic(ctx, i)?.r_basis
        }
        Kind::GL => {
            let n = ctx.n();
            let cut = 1 + sampling::pick(&mut rng, n - 1);
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i <= j || (i < cut && j < cut) || (i >= cut && j >= cut))
                .map(|(i, j)| ExactMatrix::unit(n, n, i, j))
                .collect()
        }
    };
    let y = combination(&mut rng, &basis, bounds);
    k_conjugate(ctx, seed, &y)
}

/// gl(n): x_k diagonal with the last row and column random.
pub fn arrowhead(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> ExactMatrix {
    let mut rng = sampling::rng(seed);
    let n = ctx.n();
    let mut x = ExactMatrix::zeros(n, n);
    for i in 0..n {
        x.set(i, i, sampling::random_rational(&mut rng, bounds));
        if i + 1 < n {
            x.set(i, n - 1, sampling::random_rational(&mut rng, bounds));
            x.set(n - 1, i, sampling::random_rational(&mut rng, bounds));
        }
    }
    x
}

/// gl(n): Ad(k) of a strictly upper triangular matrix.
pub fn nilpotent(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let mut rng = sampling::rng(seed);
    let y = combination(&mut rng, &upper_basis(ctx.n(), false), bounds);
    k_conjugate(ctx, seed, &y)
}

/// so(n): a Ξ element with a random admissible pattern.
pub fn xi(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let mut rng = sampling::rng(seed);
    let i = sampling::pick(&mut rng, xi_max(ctx) + 1);
    let patterns = XiPattern::all(i);
    let p = &patterns[sampling::pick(&mut rng, patterns.len())];
    Ok(sample_xi(ctx, p, sampling::derive_seed(seed, "family/xi", 0), bounds)?.matrix)
}

/// so(n): Ad(k)n for the nilradical of a random closed orbit.
pub fn nilfibre(ctx: &AlgebraContext, table: &OrbitTable, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let mut rng = sampling::rng(seed);
    let closed: Vec<_> = table.closed().collect();
    let q = closed[sampling::pick(&mut rng, closed.len())];
    sample_nilfibre(ctx, q, sampling::derive_seed(seed, "family/nil", 0), bounds)
}

pub fn sample_family(
    ctx: &AlgebraContext,
    table: Option<&OrbitTable>,
    family: Family,
    seed: u64,
    bounds: SampleBounds,
) -> Result<ExactMatrix> {
    match family {
        Family::Generic => Ok(generic(ctx, seed, bounds)),
        Family::Sparse => Ok(sparse(ctx, seed)),
        Family::Borel => borel(ctx, seed, bounds),
        Family::Parabolic => parabolic(ctx, seed, bounds),
        Family::Arrowhead => Ok(arrowhead(ctx, seed, bounds)),
        Family::Nilpotent => nilpotent(ctx, seed, bounds),
        Family::Xi => xi(ctx, seed, bounds),
        Family::Nilfibre => {
            let table = table.ok_or_else(|| Error::Usage("nilfibre samples need the orbit table".into()))?;
            nilfibre(ctx, table, seed, bounds)
        }
    }
}

/// One draw from a family picked uniformly by the seed.
pub fn mixed_sample(
    ctx: &AlgebraContext,
    table: Option<&OrbitTable>,
    seed: u64,
    bounds: SampleBounds,
) -> Result<(Family, ExactMatrix)> {
    let families = Family::for_kind(ctx.kind());
    let mut rng = sampling::rng(sampling::derive_seed(seed, "family/pick", 0));
    let family = families[sampling::pick(&mut rng, families.len())];
    let x = sample_family(ctx, table, family, seed, bounds)?;
    Ok((family, x))
}

const REJECTION_LIMIT: u64 = 64;

/// A sample with no eigenvalue coincidences between x and x_k, by rejection
/// over the generic, Ξ (so) and arrowhead (gl) families.
pub fn g0_sample(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    for attempt in 0..REJECTION_LIMIT {
        let s = sampling::derive_seed(seed, "g0", attempt);
        let x = match (ctx.kind(), attempt % 3) {
            (Kind::SO, 1) => xi(ctx, s, bounds)?,
            (Kind::GL, 1) => arrowhead(ctx, s, bounds),
            (_, 2) => borel(ctx, s, bounds)?,
            _ => generic(ctx, s, bounds),
        };
        if coincidence_count(ctx, &x) == 0 {
            return Ok(x);
        }
    }
    Err(Error::Sampling(format!(
        "no coincidence-free sample in {REJECTION_LIMIT} draws"
    )))
}

/// Levels m whose spectrum is compared with level m − 1 for the chain set:
/// every consecutive pair for gl, pairs from so(2) ⊂ so(3) upwards for so.
pub fn theta_levels(ctx: &AlgebraContext) -> std::ops::RangeInclusive<usize> {
    (ctx.kind().chain_start() + 1)..=ctx.n()
}

/// No coincidences between any two consecutive levels of the chain.
pub fn in_theta_set(ctx: &AlgebraContext, x: &ExactMatrix) -> bool {
    theta_levels(ctx).all(|m| level_coincidence(ctx, x, m).is_ok_and(|c| c == 0))
}

/// A sample from the chain set by rejection over the mixed families.
pub fn theta_sample(
    ctx: &AlgebraContext,
    table: Option<&OrbitTable>,
    seed: u64,
    bounds: SampleBounds,
) -> Result<ExactMatrix> {
    for attempt in 0..REJECTION_LIMIT {
        let s = sampling::derive_seed(seed, "theta", attempt);
        let x = if attempt % 2 == 0 {
            generic(ctx, s, bounds)
        } else {
            mixed_sample(ctx, table, s, bounds)?.1
        };
        if in_theta_set(ctx, &x) {
            return Ok(x);
        }
    }
    Err(Error::Sampling(format!(
        "no chain-generic sample in {REJECTION_LIMIT} draws"
    )))
}

/// Scalar helper for tests and reports.
pub fn scalar_strings(v: &[ExactScalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
