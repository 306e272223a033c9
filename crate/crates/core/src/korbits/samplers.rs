use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::orbits::{conjugate_all, in_k, require_so, simple_roots, OrbitDescriptor};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactScalar};
use crate::liealg::{group_inverse, is_group_member, weyl_representative, AlgebraContext, Root};
use crate::sampling::{self, SampleBounds, SeededRng};

const CAYLEY_RETRIES: usize = 16;

fn random_combination(rng: &mut SeededRng, basis: &[ExactMatrix], bounds: SampleBounds) -> ExactMatrix {
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

/// A random element (I − A)(I + A)⁻¹ of K, for A a seeded random element of k.
pub fn sample_k(ctx: &AlgebraContext, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let mut rng = sampling::rng(seed);
    let id = ExactMatrix::identity(ctx.n());
    for _ in 0..CAYLEY_RETRIES {
        let a = random_combination(&mut rng, ctx.k_basis(), bounds);
        let Ok(inv) = id.add(&a).inverse() else { continue };
        let num = id.sub(&a);
        if num.det()?.is_zero() {
            continue;
        }
        let k = num.mul(&inv);
        if !in_k(ctx, &k) {
            return Err(Error::Sampling("Cayley transform left K".into()));
        }
        return Ok(k);
    }
    Err(Error::Sampling(format!("I ± A singular in {CAYLEY_RETRIES} draws")))
}

/// Ad(g)x.
pub fn conjugate(ctx: &AlgebraContext, g: &ExactMatrix, x: &ExactMatrix) -> Result<ExactMatrix> {
    Ok(g.mul(x).mul(&group_inverse(ctx, g)?))
}

/// Ad(k)y for k ∈ K and y a random element of the representative Borel of Q.
pub fn sample_yq(ctx: &AlgebraContext, q: &OrbitDescriptor, seed: u64, bounds: SampleBounds) -> Result<ExactMatrix> {
    let k = sample_k(ctx, sampling::derive_seed(seed, "yq/k", 0), SampleBounds::small())?;
    let mut rng = sampling::rng(sampling::derive_seed(seed, "yq/b", 0));
    let y = random_combination(&mut rng, &q.rep_borel, bounds);
    conjugate(ctx, &k, &y)
}

/// The nilradical of the representative Borel of a closed orbit.
pub fn nilradical(ctx: &AlgebraContext, q: &OrbitDescriptor) -> Result<Vec<ExactMatrix>> {
    if !q.closed {
        return Err(Error::Usage(format!("orbit {} is not closed", q.id)));
    }
    let pos: Vec<ExactMatrix> = ctx
        .positive_roots()
        .iter()
        .map(|r| ctx.root_vector(r).cloned())
        .collect::<Result<_>>()?;
    conjugate_all(ctx, &q.conjugator, &pos)
}

/// Ad(k)x for k ∈ K and x a random element of the nilradical of a closed orbit.
pub fn sample_nilfibre(
    ctx: &AlgebraContext,
    q: &OrbitDescriptor,
    seed: u64,
    bounds: SampleBounds,
) -> Result<ExactMatrix> {
    let nil = nilradical(ctx, q)?;
    let k = sample_k(ctx, sampling::derive_seed(seed, "nil/k", 0), SampleBounds::small())?;
    let mut rng = sampling::rng(sampling::derive_seed(seed, "nil/x", 0));
    let x = random_combination(&mut rng, &nil, bounds);
    conjugate(ctx, &k, &x)
}

/// One slot of a Ξ pattern: U keeps the upper coordinate u_j, L the lower v_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    U,
    L,
}

/// A word over {U, L}, written like "ULU".
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct XiPattern(pub Vec<Slot>);

impl XiPattern {
    pub fn all_upper(i: usize) -> Self {
        XiPattern(vec![Slot::U; i])
    }

    /// All 2^i patterns of length i, in binary order with U < L.
    pub fn all(i: usize) -> Vec<XiPattern> {
        (0u32..(1 << i))
            .map(|mask| {
                XiPattern(
                    (0..i)
                        .map(|k| {
                            if mask & (1 << (i - 1 - k)) != 0 {
                                Slot::L
                            } else {
                                Slot::U
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for XiPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Slot::U => "U",
                Slot::L => "L",
            })?;
        }
        Ok(())
    }
}

impl FromStr for XiPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(Slot::U),
                'L' => Ok(Slot::L),
                other => Err(Error::parse("pattern", format!("unexpected {other:?}; use U and L"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(XiPattern)
    }
}

/// Coordinates (a, u, v) of an element of the Ξ slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiCoords {
    pub a: Vec<ExactScalar>,
    pub u: Vec<ExactScalar>,
    pub v: Vec<ExactScalar>,
}

impl XiCoords {
    /// Slots 1..=i carry the pattern: v_j = 0 for U, u_j = 0 for L.
    pub fn satisfies(&self, pattern: &XiPattern) -> bool {
        pattern.0.iter().enumerate().all(|(j, s)| match s {
            Slot::U => self.v[j].is_zero(),
            Slot::L => self.u[j].is_zero(),
        })
    }
}

/// Number of (u_j, v_j) slots: l for so(2l+1), l − 1 for so(2l).
pub fn xi_slots(ctx: &AlgebraContext) -> usize {
    if ctx.is_type_b() {
        ctx.rank()
    } else {
        ctx.rank() - 1
    }
}

fn root(l: usize, terms: &[(usize, i64)]) -> Root {
    let mut c = vec![0; l];
    for &(i, s) in terms {
        c[i] += s;
    }
    Root::from_coords(c)
}

/// The two basis vectors (e_j, e_{−j}) of slot j (0-based).
pub fn xi_vectors(ctx: &AlgebraContext, j: usize) -> Result<(ExactMatrix, ExactMatrix)> {
    let l = ctx.rank();
    if ctx.is_type_b() {
        let up = ctx.root_vector(&root(l, &[(j, 1)]))?.clone();
        let down = ctx.root_vector(&root(l, &[(j, -1)]))?.clone();
        Ok((up, down))
    } else {
        let last = l - 1;
        let e = |terms: &[(usize, i64)]| ctx.root_vector(&root(l, terms)).cloned();
        let up = e(&[(j, 1), (last, -1)])?.sub(&e(&[(j, 1), (last, 1)])?);
        let down = e(&[(j, -1), (last, 1)])?.sub(&e(&[(j, -1), (last, -1)])?);
        Ok((up, down))
    }
}

/// diag(a) + Σ u_j e_j + Σ v_j e_{−j}.
pub fn xi_element(ctx: &AlgebraContext, xi: &XiCoords) -> Result<ExactMatrix> {
    require_so(ctx)?;
    let slots = xi_slots(ctx);
    if xi.a.len() != ctx.rank() || xi.u.len() != slots || xi.v.len() != slots {
        return Err(Error::Dimension(format!(
            "Ξ coordinates need {} diagonal entries and {slots} slots",
            ctx.rank()
        )));
    }
    let mut x = ctx.cartan_element(&xi.a);
    for j in 0..slots {
        let (up, down) = xi_vectors(ctx, j)?;
        x = x.add(&up.scale(&xi.u[j])).add(&down.scale(&xi.v[j]));
    }
    Ok(x)
}

/// Read (a, u, v) back from a matrix, or `None` if it is not in the Ξ slice.
pub fn xi_coordinates(ctx: &AlgebraContext, x: &ExactMatrix) -> Option<XiCoords> {
    if !ctx.is_member(x) {
        return None;
    }
    let n = ctx.n();
    let a = ctx.cartan_coordinates(x);
    let slots = xi_slots(ctx);
    let mut u = Vec::with_capacity(slots);
    let mut v = Vec::with_capacity(slots);
    let mut rebuilt = ctx.cartan_element(&a);
    for j in 0..slots {
        let (up, down) = xi_vectors(ctx, j).ok()?;
        let pick = |e: &ExactMatrix| {
            let (p, q) = (0..n * n)
                .map(|k| (k / n, k % n))
                .find(|&(p, q)| !e.get(p, q).is_zero())
                .expect("nonzero vector");
            x.get(p, q).checked_div(e.get(p, q)).expect("nonzero entry")
        };
        let (cu, cv) = (pick(&up), pick(&down));
        rebuilt = rebuilt.add(&up.scale(&cu)).add(&down.scale(&cv));
        u.push(cu);
        v.push(cv);
    }
    (rebuilt == *x).then_some(XiCoords { a, u, v })
}

/// A sampled element of Ξ_pattern together with its coordinates.
#[derive(Clone, Debug)]
pub struct XiSample {
    pub matrix: ExactMatrix,
    pub coords: XiCoords,
    pub pattern: XiPattern,
}

/// Largest admissible i for Ξ: l for so(2l+1), l − 1 for so(2l).
pub fn xi_max(ctx: &AlgebraContext) -> usize {
    xi_slots(ctx)
}

/// A random element of Ξ_{j_1…j_i}: distinct nonzero integer a_j with a_j ≠ ±a_k,
/// nonzero rational u_j, v_j, and the pattern imposed on slots 1..=i.
pub fn sample_xi(ctx: &AlgebraContext, pattern: &XiPattern, seed: u64, bounds: SampleBounds) -> Result<XiSample> {
    require_so(ctx)?;
    let i = pattern.len();
    if i > xi_max(ctx) {
        return Err(Error::Usage(format!(
            "pattern length {i} exceeds {} for {}",
            xi_max(ctx),
            ctx.label()
        )));
    }
    let mut rng = sampling::rng(seed);
    let l = ctx.rank();
    let a: Vec<ExactScalar> = sampling::distinct_nonzero_ints(&mut rng, l, 3 * l as i64 + 3)
        .into_iter()
        .map(ExactScalar::from_int)
        .collect();
    let slots = xi_slots(ctx);
    let mut u = Vec::with_capacity(slots);
    let mut v = Vec::with_capacity(slots);
    for j in 0..slots {
        let cu = sampling::random_nonzero(&mut rng, bounds);
        let cv = sampling::random_nonzero(&mut rng, bounds);
        match pattern.0.get(j) {
            Some(Slot::U) => {
                u.push(cu);
                v.push(ExactScalar::zero());
            }
            Some(Slot::L) => {
                u.push(ExactScalar::zero());
                v.push(cv);
            }
            None => {
                u.push(cu);
                v.push(cv);
            }
        }
    }
    let coords = XiCoords { a, u, v };
    Ok(XiSample {
        matrix: xi_element(ctx, &coords)?,
        coords,
        pattern: pattern.clone(),
    })
}

/// The group element that flips slot j (0-based) from L to U: ṡ_{ε_j} for
/// so(2l+1) and ẇ_j = ṡ_{ε_j−ε_{l−1}} ṡ_{α_{l−1}} ṡ_{α_l} ṡ_{ε_j−ε_{l−1}} for so(2l).
pub fn flip_element(ctx: &AlgebraContext, j: usize) -> Result<ExactMatrix> {
    require_so(ctx)?;
    let l = ctx.rank();
    if j >= xi_slots(ctx) {
        return Err(Error::OutOfRange(format!(
            "slot {} outside 1..={}",
            j + 1,
            xi_slots(ctx)
        )));
    }
    if ctx.is_type_b() {
        return weyl_representative(ctx, &root(l, &[(j, 1)]));
    }
    let simple = simple_roots(ctx);
    let core = weyl_representative(ctx, &simple[l - 2])?.mul(&weyl_representative(ctx, &simple[l - 1])?);
    if j == l - 2 {
        return Ok(core);
    }
    let outer = weyl_representative(ctx, &root(l, &[(j, 1), (l - 2, -1)]))?;
    Ok(outer.mul(&core).mul(&outer))
}

/// Expected diagonal after the flip of slot j: a_j ↦ −a_j (and a_l ↦ −a_l for so(2l)).
pub fn flipped_diagonal(ctx: &AlgebraContext, a: &[ExactScalar], j: usize) -> Vec<ExactScalar> {
    let mut out = a.to_vec();
    out[j] = -&out[j];
    if ctx.is_type_d() {
        let last = out.len() - 1;
        out[last] = -&out[last];
    }
    out
}

/// The l-component of x ∈ r (the limit of Ad(exp tz)x along a dominant z).
pub fn degenerate_to_levi(ctx: &AlgebraContext, x: &ExactMatrix, par: &super::ParabolicData) -> Result<ExactMatrix> {
    par.levi_component(ctx, x)
}

/// True when g is in G (a convenience re-export for samplers' callers).
pub fn is_in_group(ctx: &AlgebraContext, g: &ExactMatrix) -> bool {
    is_group_member(ctx, g)
}
