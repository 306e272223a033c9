use std::fmt;

use super::ExactScalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial over ℚ(i), coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<ExactScalar>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExactPoly::default()
    }

    pub fn one() -> Self {
        ExactPoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        ExactPoly::new(vec![c])
    }

    /// The monomial `c·λ^k`.
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = c;
        ExactPoly::new(coeffs)
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        ExactPoly::new(coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    /// ∏ (λ − r) over the given roots.
    pub fn from_roots(roots: &[ExactScalar]) -> Self {
        roots.iter().fold(ExactPoly::one(), |acc, r| {
            acc.mul(&ExactPoly::new(vec![-r, ExactScalar::one()]))
        })
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficient of λ^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.is_zero() || other.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ExactPoly::new(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Quotient and remainder; errors when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
        let lead_inv = divisor.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let mut quot = vec![ExactScalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((ExactPoly::new(quot), ExactPoly::new(rem)))
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> ExactPoly {
        match self.leading() {
            None => ExactPoly::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient of a nonzero polynomial");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(p, 0) = monic(p)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Substitute λ ↦ λ² (used to pass between μ = λ² and λ).
    pub fn compose_square(&self) -> ExactPoly {
        let mut coeffs = vec![ExactScalar::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        ExactPoly::new(coeffs)
    }
}

/// Greatest common divisor of two polynomials; see [`ExactPoly::gcd`].
pub fn poly_gcd(p: &ExactPoly, q: &ExactPoly) -> ExactPoly {
    p.gcd(q)
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
