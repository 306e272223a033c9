//! Invariant polynomials along the chain g_2 ⊂ … ⊂ g_n (g_1 ⊂ … for gl).
//!
//! Coefficient convention: det(λI − x) = λ^m − f_1 λ^{m−1} + f_2 λ^{m−2} − …,
//! so f_j is the j-th elementary symmetric function of the eigenvalues.
//! For so(m) the characteristic polynomial is q(λ²) (m even) or λ·q(λ²)
//! (m odd), and the generators are the coefficients of q with the same
//! alternating signs. For even m the constant coefficient is replaced by the
//! Pfaffian Pf(S·x), whose square it is up to the sign (−1)^{m/2}.

mod kernels;

use serde::{Deserialize, Serialize};

pub use kernels::{berkowitz, char_poly, pfaffian_antisymmetric, pfaffian_so};

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactPoly, ExactScalar, Mat, Ring};
use crate::liealg::{AlgebraContext, Kind};

/// A value of the partial or the full Kostant–Wallach map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantVector {
    pub algebra: Kind,
    pub n: usize,
    /// true for the partial map (levels n−1 and n), false for the full chain.
    #[serde(skip)]
    pub partial: bool,
    pub values: Vec<ExactScalar>,
}

#[derive(Serialize, Deserialize)]
struct InvariantDocument {
    algebra: Kind,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial: Option<Vec<ExactScalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    full: Option<Vec<ExactScalar>>,
}

impl InvariantVector {
    /// `{ "algebra", "n", "partial"|"full": [scalar, …] }`
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = InvariantDocument {
            algebra: self.algebra,
            n: self.n,
            partial: self.partial.then(|| self.values.clone()),
            full: (!self.partial).then(|| self.values.clone()),
        };
        serde_json::to_value(doc).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InvariantDocument =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))?;
        match (doc.partial, doc.full) {
            (Some(values), None) => Ok(InvariantVector {
                algebra: doc.algebra,
                n: doc.n,
                partial: true,
                values,
            }),
            (None, Some(values)) => Ok(InvariantVector {
                algebra: doc.algebra,
                n: doc.n,
                partial: false,
                values,
            }),
            _ => Err(Error::parse(
                "document",
                "exactly one of \"partial\" or \"full\" is required",
            )),
        }
    }
}

/// The reduced characteristic polynomial of an element of g_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCharPoly {
    pub kind: Kind,
    pub m: usize,
    /// q in μ = λ² for so, q = char for gl.
    pub q: ExactPoly,
}

impl ReducedCharPoly {
    /// The full characteristic polynomial in λ.
    pub fn char_poly(&self) -> ExactPoly {
        match self.kind {
            Kind::GL => self.q.clone(),
            Kind::SO => {
                let sq = self.q.compose_square();
                if self.m % 2 == 1 {
                    sq.mul(&ExactPoly::monomial(ExactScalar::one(), 1))
                } else {
                    sq
                }
            }
        }
    }
}

/// Number of generators of ℂ[g_m]^{G_m}.
pub fn generator_count(kind: Kind, m: usize) -> usize {
    kind.rank_of(m)
}

fn alternate<R: Ring>(j: usize, c: &R) -> R {
    if j % 2 == 0 {
        c.clone()
    } else {
        c.negated()
    }
}

/// Which function closes the generator list of so(2k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EvenTop {
    #[default]
    Pfaffian,
    /// det = ±Pf², which generates a strictly smaller ring.
    Determinant,
}

/// Generators f_{m,1..r_m} of an m×m matrix `y` expressed in the level-m basis
/// of V_m (whose form is S_m when m is even).
pub fn generators_of_block<R: Ring>(kind: Kind, y: &Mat<R>) -> Vec<R> {
    generators_of_block_with(kind, y, EvenTop::Pfaffian)
}

pub fn generators_of_block_with<R: Ring>(kind: Kind, y: &Mat<R>, top: EvenTop) -> Vec<R> {
    let m = y.rows();
    let c = berkowitz(y);
    match kind {
        Kind::GL => (1..=m).map(|j| alternate(j, &c[j])).collect(),
        Kind::SO => {
            let k = m / 2;
            if m % 2 == 1 {
                (1..=k).map(|j| alternate(j, &c[2 * j])).collect()
            } else {
                let mut out: Vec<R> = (1..k).map(|j| alternate(j, &c[2 * j])).collect();
                out.push(match top {
                    EvenTop::Pfaffian => pfaffian_so(y),
                    EvenTop::Determinant => c[m].clone(),
                });
                out
            }
        }
    }
}

/// f_{m,j}(x_m), generic over the ring (used with jets for differentials).
pub fn generators_at<R: Ring>(ctx: &AlgebraContext, x: &Mat<R>, m: usize) -> Result<Vec<R>> {
    let level = ctx.level(m)?;
    Ok(generators_of_block(ctx.kind(), &level.restrict(x)))
}

/// The values f_{m,1}(x_m), …, f_{m,r_m}(x_m).
pub fn evaluate_generators(ctx: &AlgebraContext, x: &ExactMatrix, m: usize) -> Result<Vec<ExactScalar>> {
    generators_at(ctx, x, m)
}

/// Partial-map generator values, generic over the ring.
pub fn partial_kw_at<R: Ring>(ctx: &AlgebraContext, x: &Mat<R>) -> Vec<R> {
    partial_kw_with(ctx, x, EvenTop::Pfaffian)
}

pub fn partial_kw_with<R: Ring>(ctx: &AlgebraContext, x: &Mat<R>, top: EvenTop) -> Vec<R> {
    let n = ctx.n();
    let kind = ctx.kind();
    let sub = ctx.level(n - 1).expect("n − 1 is in the chain").restrict(x);
    let mut out = generators_of_block_with(kind, &sub, top);
    out.extend(generators_of_block_with(kind, x, top));
    out
}

/// Full-chain generator values, generic over the ring.
pub fn full_kw_at<R: Ring>(ctx: &AlgebraContext, x: &Mat<R>) -> Vec<R> {
    (ctx.kind().chain_start()..=ctx.n())
        .flat_map(|m| generators_at(ctx, x, m).expect("m is in the chain"))
        .collect()
}

/// Φ_n(x) = (χ_{n−1}(x_k), χ_n(x)).
pub fn partial_kw(ctx: &AlgebraContext, x: &ExactMatrix) -> InvariantVector {
    InvariantVector {
        algebra: ctx.kind(),
        n: ctx.n(),
        partial: true,
        values: partial_kw_at(ctx, x),
    }
}

/// Φ(x) = (f_{m,j}(x_m)) over the whole chain.
pub fn full_kw(ctx: &AlgebraContext, x: &ExactMatrix) -> InvariantVector {
    InvariantVector {
        algebra: ctx.kind(),
        n: ctx.n(),
        partial: false,
        values: full_kw_at(ctx, x),
    }
}

/// Length of the partial map: r_{n−1} + r_n.
pub fn partial_len(ctx: &AlgebraContext) -> usize {
    ctx.kind().rank_of(ctx.n() - 1) + ctx.rank()
}

/// Length of the full map: the sum of r_m over the chain.
pub fn full_len(ctx: &AlgebraContext) -> usize {
    (ctx.kind().chain_start()..=ctx.n())
        .map(|m| ctx.kind().rank_of(m))
        .sum()
}

/// Pf(S·x) for x ∈ so(2l).
pub fn pfaffian(ctx: &AlgebraContext, x: &ExactMatrix) -> Result<ExactScalar> {
    if ctx.kind() != Kind::SO || ctx.n() % 2 == 1 {
        return Err(Error::Unsupported("the Pfaffian is defined for so(2l) only".into()));
    }
    Ok(pfaffian_so(x))
}

/// The reduced characteristic polynomial of x_m.
pub fn reduced_char_poly(ctx: &AlgebraContext, x: &ExactMatrix, m: usize) -> Result<ReducedCharPoly> {
    let level = ctx.level(m)?;
    let block = level.restrict(x);
    let mut c = berkowitz(&block);
    let q = match ctx.kind() {
        Kind::GL => {
            c.reverse();
            ExactPoly::new(c)
        }
        Kind::SO => {
            let k = m / 2;
            // q(μ) = Σ_j c_{2j} μ^{k−j}
            ExactPoly::new((0..=k).map(|i| c[2 * (k - i)].clone()).collect())
        }
    };
    Ok(ReducedCharPoly { kind: ctx.kind(), m, q })
}

/// Reduced polynomial rebuilt from generator values at level m.
pub fn reduced_from_generators(kind: Kind, m: usize, f: &[ExactScalar]) -> Result<ExactPoly> {
    let r = kind.rank_of(m);
    if f.len() != r {
        return Err(Error::Dimension(format!(
            "level {m} expects {r} generator values, got {}",
            f.len()
        )));
    }
    match kind {
        Kind::GL => {
            let mut coeffs = vec![ExactScalar::zero(); m + 1];
            coeffs[m] = ExactScalar::one();
            for (j, v) in f.iter().enumerate() {
                coeffs[m - (j + 1)] = alternate(j + 1, v);
            }
            Ok(ExactPoly::new(coeffs))
        }
        Kind::SO => {
            let k = r;
            let mut coeffs = vec![ExactScalar::zero(); k + 1];
            coeffs[k] = ExactScalar::one();
            if m % 2 == 1 {
                for (j, v) in f.iter().enumerate() {
                    coeffs[k - (j + 1)] = alternate(j + 1, v);
                }
            } else {
                for (j, v) in f[..k - 1].iter().enumerate() {
                    coeffs[k - (j + 1)] = alternate(j + 1, v);
                }
                let pf = &f[k - 1];
                let sq = pf * pf;
                coeffs[0] = if k % 2 == 0 { sq } else { -sq };
            }
            Ok(ExactPoly::new(coeffs))
        }
    }
}

fn gcd_degree(a: &ExactPoly, b: &ExactPoly) -> usize {
    a.gcd(b).degree().unwrap_or(0)
}

/// Number of eigenvalue coincidences between x and x_k (±-pairs for so), via
/// the degree of a polynomial gcd.
pub fn coincidence_count(ctx: &AlgebraContext, x: &ExactMatrix) -> usize {
    let n = ctx.n();
    let top = reduced_char_poly(ctx, x, n).expect("level n");
    let sub = reduced_char_poly(ctx, x, n - 1).expect("level n − 1");
    gcd_degree(&top.q, &sub.q)
}

/// Coincidences between consecutive levels m − 1 and m of the chain.
pub fn level_coincidence(ctx: &AlgebraContext, x: &ExactMatrix, m: usize) -> Result<usize> {
    let top = reduced_char_poly(ctx, x, m)?;
    let sub = reduced_char_poly(ctx, x, m - 1)?;
    Ok(gcd_degree(&top.q, &sub.q))
}

/// The coincidence stratum of a point of the partial-map image.
pub fn stratum_of_value(ctx: &AlgebraContext, c: &InvariantVector) -> Result<usize> {
    let n = ctx.n();
    let kind = ctx.kind();
    let r_sub = kind.rank_of(n - 1);
    if c.values.len() != partial_len(ctx) {
        return Err(Error::Dimension(format!(
            "partial-map vector of {}({n}) has length {}, got {}",
            kind,
            partial_len(ctx),
            c.values.len()
        )));
    }
    let sub = reduced_from_generators(kind, n - 1, &c.values[..r_sub])?;
    let top = reduced_from_generators(kind, n, &c.values[r_sub..])?;
    Ok(gcd_degree(&top, &sub))
}
