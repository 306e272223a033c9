//! Distinguished group elements: exponentials of nilpotents, Weyl group
//! representatives and the Cayley element of a noncompact short root.

use super::{AlgebraContext, Kind, Root};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactPoly, ExactScalar};

/// exp(N) for nilpotent N; errors if N is not nilpotent.
pub fn exp_nilpotent(nil: &ExactMatrix) -> Result<ExactMatrix> {
    let n = nil.rows();
    let mut term = ExactMatrix::identity(n);
    let mut sum = ExactMatrix::identity(n);
    for k in 1..=n {
        let inv_k = ExactScalar::from_frac(1, k as i64)?;
        term = term.mul(nil).scale(&inv_k);
        if term.is_zero() {
            return Ok(sum);
        }
        sum = sum.add(&term);
    }
    if term.mul(nil).is_zero() {
        Ok(sum)
    } else {
        Err(Error::Unsupported("exponential of a non-nilpotent matrix".into()))
    }
}

/// An sl(2)-triple (e, f, h) with [e, f] = h, [h, e] = 2e, [h, f] = −2f,
/// built from the root vectors of ±α.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: ExactMatrix,
    pub f: ExactMatrix,
    pub h: ExactMatrix,
}

pub fn sl2_triple(ctx: &AlgebraContext, alpha: &Root) -> Result<Sl2Triple> {
    let e = ctx.root_vector(alpha)?.clone();
    let e_neg = ctx.root_vector(&alpha.neg())?.clone();
    let h0 = e.bracket(&e_neg);
    let a = ctx.cartan_coordinates(&h0);
    let kappa = alpha.coords.iter().zip(&a).fold(ExactScalar::zero(), |acc, (c, x)| {
        &acc + &(x * &ExactScalar::from_int(*c))
    });
    let scale = ExactScalar::from_int(2).checked_div(&kappa)?;
    let f = e_neg.scale(&scale);
    let h = h0.scale(&scale);
    Ok(Sl2Triple { e, f, h })
}

/// ṡ_α = exp(e)·exp(−f)·exp(e): normalises the Cartan and acts on it as s_α.
pub fn weyl_representative(ctx: &AlgebraContext, alpha: &Root) -> Result<ExactMatrix> {
    let t = sl2_triple(ctx, alpha)?;
    let ee = exp_nilpotent(&t.e)?;
    let ef = exp_nilpotent(&t.f.neg())?;
    Ok(ee.mul(&ef).mul(&ee))
}

/// Integer eigenvalues of h (which is diagonal).
fn diagonal_integers(h: &ExactMatrix) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..h.rows() {
        let v = h
            .get(i, i)
            .to_i64()
            .ok_or_else(|| Error::Unsupported("coroot with non-integral weights".into()))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// u_α = exp(iπ/4·(e + f)), the image of (1/√2)[[1, i], [i, 1]] ∈ SL(2).
///
/// e + f is semisimple with the eigenvalues of h. The entries of u_α lie in ℚ(i)
/// exactly when every such eigenvalue is even, which for the algebras here
/// singles out the short roots ε_k of so(2l+1).
pub fn cayley_element(ctx: &AlgebraContext, alpha: &Root) -> Result<ExactMatrix> {
    if ctx.kind() != Kind::SO || ctx.n() % 2 == 0 {
        return Err(Error::Unsupported(
            "the Cayley element is defined here for so(2l+1) only".into(),
        ));
    }
    let t = sl2_triple(ctx, alpha)?;
    let eigen = diagonal_integers(&t.h)?;
    if eigen.iter().any(|v| v % 2 != 0) {
        return Err(Error::Unsupported(format!(
            "root {} has odd coroot weights; its Cayley element is not Gaussian-rational",
            alpha.label()
        )));
    }
    let n = ctx.n();
    let nmat = t.e.add(&t.f);
    let id = ExactMatrix::identity(n);
    let shift = |mu: i64| nmat.sub(&id.scale(&ExactScalar::from_int(mu)));
    // The minimal polynomial of e + f splits with simple roots `eigen`.
    let min_poly = eigen.iter().fold(id.clone(), |acc, &mu| acc.mul(&shift(mu)));
    if !min_poly.is_zero() {
        return Err(Error::Unsupported("e + f is not semisimple".into()));
    }
    let mut out = ExactMatrix::zeros(n, n);
    for &lam in &eigen {
        // exp(iπλ/4) = i^(λ/2) for even λ.
        let phase = match (lam / 2).rem_euclid(4) {
            0 => ExactScalar::one(),
            1 => ExactScalar::i(),
            2 => -ExactScalar::one(),
            _ => -ExactScalar::i(),
        };
        let mut term = id.scale(&phase);
        for &mu in eigen.iter().filter(|&&mu| mu != lam) {
            let denom = ExactScalar::from_int(lam - mu).inv()?;
            term = term.mul(&shift(mu)).scale(&denom);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// True when `g` is in SO(n) (gᵀSg = S, det g = 1) resp. GL(n) (det g ≠ 0).
pub fn is_group_member(ctx: &AlgebraContext, g: &ExactMatrix) -> bool {
    if g.rows() != ctx.n() || g.cols() != ctx.n() {
        return false;
    }
    match ctx.kind() {
        Kind::GL => g.det().is_ok_and(|d| !d.is_zero()),
        Kind::SO => {
            g.transpose().mul(ctx.form()).mul(g) == *ctx.form() && g.det().is_ok_and(|d| d == ExactScalar::one())
        }
    }
}

/// g⁻¹, using g⁻¹ = S·gᵀ·S for orthogonal g.
pub fn group_inverse(ctx: &AlgebraContext, g: &ExactMatrix) -> Result<ExactMatrix> {
    match ctx.kind() {
        Kind::SO => {
            let s = ctx.form();
            let inv = s.mul(&g.transpose()).mul(s);
            if inv.mul(g) == ExactMatrix::identity(ctx.n()) {
                Ok(inv)
            } else {
                g.inverse()
            }
        }
        Kind::GL => g.inverse(),
    }
}

/// Ad(g)x = g·x·g⁻¹.
pub fn adjoint(ctx: &AlgebraContext, g: &ExactMatrix, x: &ExactMatrix) -> Result<ExactMatrix> {
    Ok(g.mul(x).mul(&group_inverse(ctx, g)?))
}

/// Minimal check that a polynomial in a matrix vanishes (used in tests).
pub fn poly_of_matrix(p: &ExactPoly, m: &ExactMatrix) -> ExactMatrix {
    let n = m.rows();
    let mut acc = ExactMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&ExactMatrix::identity(n).scale(c));
    }
    acc
}
