//! Realisations of gl(n) and so(n).
//!
//! so(n) is the algebra of matrices Z with ZᵀS + SZ = 0 for the anti-diagonal
//! form S. Positions 1..l carry the weights ε_1..ε_l, the mirrored positions
//! carry −ε_l..−ε_1, and odd n has a weight-zero middle position e_0. The
//! Cartan subalgebra is diagonal, positive root vectors are strictly upper
//! triangular, and every root vector is normalised so that its first nonzero
//! entry in row-major order is +1.
//!
//! The involution θ is conjugation by an explicit matrix T with T² = I:
//! a diagonal sign matrix fixing only e_0 for odd n, and the permutation
//! swapping e_l and e_{−l} for even n. For gl(n) it is conjugation by
//! diag(1, …, 1, −1) while k is taken to be the gl(n−1) corner.

mod context;
mod group;
mod io;
mod roots;

pub use context::{antidiagonal_form, make_algebra, AlgebraContext, Kind, Level, LieElement};
pub use group::{
    adjoint, cayley_element, exp_nilpotent, group_inverse, is_group_member, poly_of_matrix, sl2_triple,
    weyl_representative, Sl2Triple,
};
pub use io::MatrixDocument;
pub use roots::{gl_roots, so_roots, so_simple_roots, Root};
