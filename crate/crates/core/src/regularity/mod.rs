//! Centralizers and the regularity tests built from them.
//!
//! All centralizers are exact nullspaces of stacked commutator maps written
//! in the basis of the ambient subalgebra. Differentials of invariants are
//! computed with first-order jets, one direction per basis vector of g, so
//! Jacobians always live in g-coordinates.

use serde::{Deserialize, Serialize};

use crate::exactfield::{ExactMatrix, ExactScalar, Jet, Mat};
use crate::invariants::{full_kw_at, full_len, partial_kw_with, partial_len, EvenTop};
use crate::liealg::AlgebraContext;

/// Where a centralizer is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    G,
    K,
    /// g_m of the chain.
    Level(usize),
}

impl Ambient {
    fn level_index(self, ctx: &AlgebraContext) -> usize {
        match self {
            Ambient::G => ctx.n(),
            Ambient::K => ctx.n() - 1,
            Ambient::Level(m) => m,
        }
    }

    pub fn tag(self, ctx: &AlgebraContext) -> String {
        match self {
            Ambient::K => "k".into(),
            _ if self.level_index(ctx) == ctx.n() => "g".into(),
            Ambient::Level(m) => format!("g_{m}"),
            Ambient::G => unreachable!(),
        }
    }
}

/// A basis of a centralizer inside an ambient subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerBasis {
    pub ambient: String,
    pub ambient_dim: usize,
    pub vectors: Vec<ExactMatrix>,
}

impl CentralizerBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn ambient_basis(ctx: &AlgebraContext, ambient: Ambient) -> &[ExactMatrix] {
    let m = ambient.level_index(ctx);
    if m == ctx.n() {
        ctx.basis()
    } else {
        &ctx.level(m).expect("ambient level in range").basis
    }
}

/// Elements of the ambient algebra commuting with every matrix in `elements`.
pub fn joint_centralizer(ctx: &AlgebraContext, elements: &[ExactMatrix], ambient: Ambient) -> CentralizerBasis {
    let basis = ambient_basis(ctx, ambient);
    let n2 = ctx.n() * ctx.n();
    let rows = n2 * elements.len();
    let mut map = ExactMatrix::zeros(rows, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (e, x) in elements.iter().enumerate() {
            for (r, v) in b.bracket(x).to_vec().into_iter().enumerate() {
                if !v.is_zero() {
                    map.set(e * n2 + r, j, v);
                }
            }
        }
    }
    let vectors = if rows == 0 {
        basis.to_vec()
    } else {
        map.nullspace_vectors()
            .into_iter()
            .map(|c| combine(basis, &c))
            .collect()
    };
    CentralizerBasis {
        ambient: ambient.tag(ctx),
        ambient_dim: basis.len(),
        vectors,
    }
}

fn combine(basis: &[ExactMatrix], c: &[ExactScalar]) -> ExactMatrix {
    let n = basis[0].rows();
    let mut out = ExactMatrix::zeros(n, n);
    for (b, a) in basis.iter().zip(c) {
        if !a.is_zero() {
            out = out.add(&b.scale(a));
        }
    }
    out
}

/// z_{g_m}(x_m), where g_m is the ambient and x_m the projection of x into it.
pub fn centralizer(ctx: &AlgebraContext, x: &ExactMatrix, ambient: Ambient) -> CentralizerBasis {
    let m = ambient.level_index(ctx);
    let xm = if m == ctx.n() {
        x.clone()
    } else {
        ctx.project_to_subalgebra(x, m).expect("ambient level in range")
    };
    joint_centralizer(ctx, &[xm], ambient)
}

/// z_k(x_k) ∩ z_g(x) as a subspace of k.
pub fn nsreg_intersection(ctx: &AlgebraContext, x: &ExactMatrix) -> CentralizerBasis {
    let (xk, _) = ctx.theta_decompose(x);
    joint_centralizer(ctx, &[xk, x.clone()], Ambient::K)
}

/// x_m is regular in g_m.
pub fn is_regular(ctx: &AlgebraContext, x: &ExactMatrix, m: usize) -> bool {
    let rank = ctx.kind().rank_of(m);
    centralizer(ctx, x, Ambient::Level(m)).dim() == rank
}

pub fn is_nsreg(ctx: &AlgebraContext, x: &ExactMatrix) -> bool {
    nsreg_intersection(ctx, x).is_trivial()
}

/// dim(z_k(x_k) ∩ z_k(x)); zero exactly when K·x has dimension dim K.
pub fn stabilizer_dim(ctx: &AlgebraContext, x: &ExactMatrix) -> usize {
    let (xk, _) = ctx.theta_decompose(x);
    joint_centralizer(ctx, &[xk, x.clone()], Ambient::K).dim()
}

fn jet_matrix(x: &ExactMatrix, direction: &ExactMatrix) -> Mat<Jet> {
    Mat::from_fn(x.rows(), x.cols(), |i, j| {
        Jet::new(x.get(i, j).clone(), direction.get(i, j).clone())
    })
}

/// Rows are gradients of `f` at x, columns the basis directions of g.
fn jacobian(ctx: &AlgebraContext, x: &ExactMatrix, len: usize, f: impl Fn(&Mat<Jet>) -> Vec<Jet>) -> ExactMatrix {
    let mut jac = ExactMatrix::zeros(len, ctx.dim());
    for (j, b) in ctx.basis().iter().enumerate() {
        let values = f(&jet_matrix(x, b));
        debug_assert_eq!(values.len(), len);
        for (i, v) in values.into_iter().enumerate() {
            jac.set(i, j, v.derivative);
        }
    }
    jac
}

/// Jacobian of the partial Kostant–Wallach map at x, in g-coordinates.
pub fn kostant_jacobian(ctx: &AlgebraContext, x: &ExactMatrix) -> ExactMatrix {
    kostant_jacobian_with(ctx, x, EvenTop::Pfaffian)
}

pub fn kostant_jacobian_with(ctx: &AlgebraContext, x: &ExactMatrix, top: EvenTop) -> ExactMatrix {
    jacobian(ctx, x, partial_len(ctx), |y| partial_kw_with(ctx, y, top))
}

pub fn kostant_jacobian_rank(ctx: &AlgebraContext, x: &ExactMatrix) -> usize {
    kostant_jacobian(ctx, x).rank()
}

pub fn kostant_jacobian_rank_with(ctx: &AlgebraContext, x: &ExactMatrix, top: EvenTop) -> usize {
    kostant_jacobian_with(ctx, x, top).rank()
}

/// Rank of the Jacobian of the full chain map.
pub fn full_jacobian_rank(ctx: &AlgebraContext, x: &ExactMatrix) -> usize {
    jacobian(ctx, x, full_len(ctx), |y| full_kw_at(ctx, y)).rank()
}

/// Per-step status of the chain conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConditions {
    /// x_m regular in g_m, for every level of the chain.
    pub regular: Vec<bool>,
    /// z_{g_i}(x_i) ∩ z_{g_{i+1}}(x_{i+1}) = 0, for every consecutive pair.
    pub disjoint: Vec<bool>,
}

impl ChainConditions {
    pub fn all_regular(&self) -> bool {
        self.regular.iter().all(|&b| b)
    }

    pub fn all_disjoint(&self) -> bool {
        self.disjoint.iter().all(|&b| b)
    }
}

/// Dimension of z_{g_i}(x_i) ∩ z_{g_{i+1}}(x_{i+1}), computed inside g_i.
pub fn chain_step_intersection(ctx: &AlgebraContext, x: &ExactMatrix, i: usize) -> usize {
    let xi = ctx.project_to_subalgebra(x, i).expect("level in range");
    let xi1 = ctx.project_to_subalgebra(x, i + 1).expect("level in range");
    joint_centralizer(ctx, &[xi, xi1], Ambient::Level(i)).dim()
}

pub fn chain_conditions(ctx: &AlgebraContext, x: &ExactMatrix) -> ChainConditions {
    let start = ctx.kind().chain_start();
    let n = ctx.n();
    ChainConditions {
        regular: (start..=n).map(|m| is_regular(ctx, x, m)).collect(),
        disjoint: (start..n).map(|i| chain_step_intersection(ctx, x, i) == 0).collect(),
    }
}

/// Strong regularity for the whole chain.
pub fn is_sreg(ctx: &AlgebraContext, x: &ExactMatrix) -> bool {
    let start = ctx.kind().chain_start();
    (start..ctx.n()).all(|i| chain_step_intersection(ctx, x, i) == 0)
}

/// Dimensions of z_{g_m}(x_m) along the chain, from the bottom up.
pub fn centralizer_dims(ctx: &AlgebraContext, x: &ExactMatrix) -> Vec<usize> {
    (ctx.kind().chain_start()..=ctx.n())
        .map(|m| centralizer(ctx, x, Ambient::Level(m)).dim())
        .collect()
}

/// The number of independent partial-map generators, r_{n−1} + r_n.
pub fn kostant_target(ctx: &AlgebraContext) -> usize {
    partial_len(ctx)
}

/// The number of independent full-chain generators.
pub fn chain_target(ctx: &AlgebraContext) -> usize {
    full_len(ctx)
}

/// Local fibre dimension certified by a full-rank partial-map Jacobian.
pub fn fibre_dimension(ctx: &AlgebraContext) -> usize {
    ctx.dim() - partial_len(ctx)
}
