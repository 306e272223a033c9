//! Exact computations for the symmetric pairs (gl(n), gl(n−1)) and
//! (so(n), so(n−1)) over the Gaussian rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactfield`]: scalars, polynomials, matrices and jets over ℚ(i);
//! * [`liealg`]: realisations of gl(n) and so(n), roots, the involution θ,
//!   the subalgebra chain, Weyl representatives and the Cayley element;
//! * [`invariants`]: characteristic polynomials, Pfaffians, the partial and
//!   full Kostant–Wallach maps and eigenvalue coincidence counting;
//! * [`regularity`]: centralizers, regularity, n-strong and strong regularity;
//! * [`korbits`]: K-orbits on the flag variety, θ-stable parabolics and
//!   the samplers built on them;
//! * [`harness`]: seeded verification suites, reports and I/O documents.

pub mod error;
pub mod exactfield;
pub mod harness;
pub mod invariants;
pub mod korbits;
pub mod liealg;
pub mod regularity;
pub mod sampling;

pub use error::{Error, Result};
pub use exactfield::{ExactMatrix, ExactPoly, ExactScalar, Jet, Mat, Ring, Subspace};
pub use harness::{Report, SuiteConfig};
pub use invariants::{InvariantVector, ReducedCharPoly};
pub use korbits::{OrbitDescriptor, ParabolicData};
pub use liealg::{AlgebraContext, Kind, LieElement, Root};
pub use regularity::CentralizerBasis;
