//! Exact arithmetic over the Gaussian rationals ℚ(i): scalars, polynomials,
//! dense matrices with rank and nullspace, subspaces with coordinate maps,
//! and first-order jets for exact differentiation.

mod jet;
mod matrix;
mod poly;
mod ring;
mod scalar;
mod subspace;

pub use jet::Jet;
pub use matrix::{matrix_rank, nullspace, ExactMatrix, Mat};
pub use poly::{poly_gcd, ExactPoly};
pub use ring::Ring;
pub use scalar::ExactScalar;
pub use subspace::{echelon_basis, span_dim, Subspace};

/// Apply a binary field operation by name; the error path covers division by zero.
pub fn field_op(op: FieldOp, a: &ExactScalar, b: &ExactScalar) -> crate::Result<ExactScalar> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}
