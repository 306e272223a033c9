use serde::Serialize;

use super::orbits::{borel_plus, k_intersection_dim, require_so, simple_roots};
use crate::error::{Error, Result};
use crate::exactfield::{span_dim, ExactMatrix, ExactScalar};
use crate::liealg::{AlgebraContext, Root};

/// A standard parabolic r = l ⊕ u ⊃ b_+ with Levi l = z ⊕ l_ss.
///
/// All bases are subsets of the fixed basis of g (plus coroot combinations
/// for the Cartan part of l_ss), so membership tests reduce to coordinates.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    /// Index in the family this parabolic was built from.
    pub index: usize,
    /// 0-based indices of the simple roots of the Levi factor.
    pub levi_simple: Vec<usize>,
    pub r_basis: Vec<ExactMatrix>,
    pub z_basis: Vec<ExactMatrix>,
    pub lss_basis: Vec<ExactMatrix>,
    pub nilrad: Vec<ExactMatrix>,
    /// l_ss ≅ so(lss_size).
    pub lss_size: usize,
    pub levi_iso: String,
    /// Indices j (0-based) of the Cartan coordinates spanning z.
    pub z_coords: Vec<usize>,
    /// g-basis indices of r, and of the nilradical u.
    r_indices: Vec<usize>,
    u_indices: Vec<usize>,
}

/// Integer coefficients of a root in the basis of simple roots.
pub fn simple_coefficients(ctx: &AlgebraContext, alpha: &Root) -> Result<Vec<i64>> {
    let simple = simple_roots(ctx);
    let l = simple.len();
    let m = ExactMatrix::from_fn(l, l, |i, j| ExactScalar::from_int(simple[j].coords[i]));
    let rhs = ExactMatrix::from_fn(l, 1, |i, _| ExactScalar::from_int(alpha.coords[i]));
    let sol = m.inverse()?.mul(&rhs);
    (0..l)
        .map(|i| sol.get(i, 0).to_i64().ok_or_else(|| Error::NotARoot(alpha.label())))
        .collect()
}

impl ParabolicData {
    pub fn dim(&self) -> usize {
        self.r_basis.len()
    }

    pub fn levi_dim(&self) -> usize {
        self.z_basis.len() + self.lss_basis.len()
    }

    /// x ∈ r, decided on g-coordinates.
    pub fn contains(&self, ctx: &AlgebraContext, x: &ExactMatrix) -> bool {
        match ctx.coords(x) {
            Some(c) => c
                .iter()
                .enumerate()
                .all(|(i, v)| v.is_zero() || self.r_indices.contains(&i)),
            None => false,
        }
    }

    pub fn contains_all(&self, ctx: &AlgebraContext, xs: &[ExactMatrix]) -> bool {
        xs.iter().all(|x| self.contains(ctx, x))
    }

    /// The l-component of x ∈ r along r = l ⊕ u.
    pub fn levi_component(&self, ctx: &AlgebraContext, x: &ExactMatrix) -> Result<ExactMatrix> {
        if !self.contains(ctx, x) {
            return Err(Error::Membership {
                algebra: ctx.kind().tag().into(),
                n: ctx.n(),
                detail: "element does not lie in the parabolic subalgebra".into(),
            });
        }
        let mut c = ctx.coords_of(x);
        for &i in &self.u_indices {
            c[i] = ExactScalar::zero();
        }
        Ok(ctx.from_coords(&c))
    }

    /// Coordinates of the z-part of an element of l (its diagonal entries at the z positions).
    pub fn z_coordinates(&self, x_l: &ExactMatrix) -> Vec<ExactScalar> {
        self.z_coords.iter().map(|&j| x_l.get(j, j).clone()).collect()
    }
}

/// The standard parabolic whose Levi factor has the given simple roots.
pub fn standard_parabolic(ctx: &AlgebraContext, index: usize, levi_simple: &[usize]) -> Result<ParabolicData> {
    require_so(ctx)?;
    let simple = simple_roots(ctx);
    let l = ctx.rank();
    if levi_simple.iter().any(|&a| a >= simple.len()) {
        return Err(Error::OutOfRange("simple root index".into()));
    }
    let cartan = ctx.cartan_basis().len();
    let mut r_indices: Vec<usize> = (0..cartan).collect();
    let mut u_indices = Vec::new();
    let mut levi_root_vectors = Vec::new();
    for (idx, r) in ctx.roots().iter().enumerate() {
        let coeffs = if r.positive {
            simple_coefficients(ctx, r)?
        } else {
            simple_coefficients(ctx, &r.neg())?
        };
        let in_levi = coeffs
            .iter()
            .enumerate()
            .all(|(a, &c)| c == 0 || levi_simple.contains(&a));
        let basis_idx = cartan + idx;
        if in_levi {
            r_indices.push(basis_idx);
            levi_root_vectors.push(ctx.basis()[basis_idx].clone());
        } else if r.positive {
            r_indices.push(basis_idx);
            u_indices.push(basis_idx);
        }
    }
    r_indices.sort_unstable();
    let mut support = vec![false; l];
    for &a in levi_simple {
        for (j, &c) in simple[a].coords.iter().enumerate() {
            if c != 0 {
                support[j] = true;
            }
        }
    }
    let z_coords: Vec<usize> = (0..l).filter(|&j| !support[j]).collect();
    let z_basis: Vec<ExactMatrix> = z_coords.iter().map(|&j| ctx.cartan_basis()[j].clone()).collect();
    let mut lss_basis: Vec<ExactMatrix> = levi_simple
        .iter()
        .map(|&a| {
            let c: Vec<ExactScalar> = simple[a].coords.iter().map(|&v| ExactScalar::from_int(v)).collect();
            ctx.cartan_element(&c)
        })
        .collect();
    lss_basis.extend(levi_root_vectors);
    let supp = support.iter().filter(|&&s| s).count();
    let lss_size = 2 * supp + usize::from(ctx.is_type_b());
    let levi_iso = if lss_size <= 1 {
        "0".to_string()
    } else {
        format!("so({lss_size})")
    };
    Ok(ParabolicData {
        index,
        levi_simple: levi_simple.to_vec(),
        r_basis: r_indices.iter().map(|&i| ctx.basis()[i].clone()).collect(),
        z_basis,
        lss_basis,
        nilrad: u_indices.iter().map(|&i| ctx.basis()[i].clone()).collect(),
        lss_size,
        levi_iso,
        z_coords,
        r_indices,
        u_indices,
    })
}

/// The θ-stable parabolic attached to the non-closed orbits: generated by b_+
/// and g_{−α_l}, …, g_{−α_{i+1}} for so(2l+1) with 0 ≤ i < l, and by b_+ and
/// g_{−α_l}, …, g_{−α_i} for so(2l) with 1 ≤ i ≤ l − 1.
pub fn stable_parabolic(ctx: &AlgebraContext, i: usize) -> Result<ParabolicData> {
    require_so(ctx)?;
    let l = ctx.rank();
    let first = if ctx.is_type_b() {
        if i >= l {
            return Err(Error::OutOfRange(format!("parabolic index {i} outside 0..{l}")));
        }
        i
    } else {
        if i == 0 || i >= l {
            return Err(Error::OutOfRange(format!("parabolic index {i} outside 1..{l}")));
        }
        i - 1
    };
    let levi: Vec<usize> = (first..l).collect();
    standard_parabolic(ctx, i, &levi)
}

/// b_+ as a (degenerate) parabolic.
pub fn borel_parabolic(ctx: &AlgebraContext, index: usize) -> Result<ParabolicData> {
    standard_parabolic(ctx, index, &[])
}

/// The parabolic carrying the orbits of codimension c: the stable parabolic
/// below the closed codimension, b_+ at it.
pub fn parabolic_for_codim(ctx: &AlgebraContext, c: usize) -> Result<ParabolicData> {
    require_so(ctx)?;
    let l = ctx.rank();
    if ctx.is_type_b() {
        match c {
            c if c < l => stable_parabolic(ctx, c),
            c if c == l => borel_parabolic(ctx, c),
            _ => Err(Error::OutOfRange(format!("codimension {c} exceeds {l}"))),
        }
    } else {
        match c {
            c if c + 2 <= l => stable_parabolic(ctx, c + 1),
            c if c + 1 == l => borel_parabolic(ctx, c),
            _ => Err(Error::OutOfRange(format!("codimension {c} exceeds {}", l - 1))),
        }
    }
}

/// Exact structural checks on a parabolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicChecks {
    pub theta_stable: bool,
    pub z_in_k: bool,
    pub levi_dim_ok: bool,
    pub lss_dim_ok: bool,
    pub z_dim: usize,
    pub contains_borel: bool,
    pub k_part_is_parabolic: bool,
}

impl ParabolicChecks {
    pub fn all(&self) -> bool {
        self.theta_stable
            && self.z_in_k
            && self.levi_dim_ok
            && self.lss_dim_ok
            && self.contains_borel
            && self.k_part_is_parabolic
    }
}

pub fn verify_parabolic(ctx: &AlgebraContext, par: &ParabolicData) -> ParabolicChecks {
    let coords = |xs: &[ExactMatrix]| -> Vec<Vec<crate::ExactScalar>> { xs.iter().map(|x| ctx.coords_of(x)).collect() };
    // θ is invertible, so θ(r) ⊂ r already gives θ(r) = r.
    let theta_stable = par.r_basis.iter().all(|x| par.contains(ctx, &ctx.theta_apply(x)));
    let z_in_k = par.z_basis.iter().all(|z| ctx.k_space().contains(&ctx.coords_of(z)));
    let levi_dim = span_dim(&coords(&[par.z_basis.clone(), par.lss_basis.clone()].concat()));
    let levi_dim_ok = levi_dim == par.levi_dim() && levi_dim + par.nilrad.len() == par.dim();
    let lss_dim_ok = span_dim(&coords(&par.lss_basis)) == crate::Kind::SO.dim_of(par.lss_size);
    let contains_borel = par.contains_all(ctx, &borel_plus(ctx));
    // k ∩ r contains the Borel k ∩ b_+ of k.
    let k_borel = k_intersection_dim(ctx, &borel_plus(ctx));
    let k_level = ctx.kind().rank_of(ctx.n() - 1);
    let k_borel_expected = k_level + (ctx.k_space().dim() - k_level) / 2;
    let k_part_is_parabolic = k_borel == k_borel_expected && k_intersection_dim(ctx, &par.r_basis) >= k_borel;
    ParabolicChecks {
        theta_stable,
        z_in_k,
        levi_dim_ok,
        lss_dim_ok,
        z_dim: par.z_basis.len(),
        contains_borel,
        k_part_is_parabolic,
    }
}
