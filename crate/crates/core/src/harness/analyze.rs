use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactfield::ExactMatrix;
use crate::invariants::{coincidence_count, full_kw, partial_kw, InvariantVector};
use crate::liealg::{AlgebraContext, MatrixDocument};
use crate::regularity::{
    centralizer_dims, chain_conditions, is_nsreg, is_regular, is_sreg, kostant_jacobian_rank, kostant_target,
    stabilizer_dim,
};

/// Everything the command line reports about a single element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Analysis {
    pub algebra: String,
    pub n: usize,
    pub coincidence: usize,
    pub regular: bool,
    pub regular_k: bool,
    pub nsreg: bool,
    pub sreg: bool,
    pub jacobian_rank: usize,
    pub jacobian_target: usize,
    pub stabilizer_dim: usize,
    pub centralizer_dims: Vec<usize>,
    pub chain_regular: Vec<bool>,
    pub chain_disjoint: Vec<bool>,
    #[serde(skip)]
    pub partial: InvariantVector,
    #[serde(skip)]
    pub full: InvariantVector,
}

impl Analysis {
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("analysis serialises");
        v["partial"] = self.partial.to_json_value();
        v["full"] = self.full.to_json_value();
        v
    }

    pub fn to_text(&self) -> String {
        let values = |iv: &InvariantVector| iv.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let flags = |b: &[bool]| b.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>();
        format!(
            "algebra          {}({})\n\
             coincidence      {}\n\
             regular          {} (x_k: {})\n\
             nsreg            {}\n\
             sreg             {}\n\
             jacobian_rank    {} of {}\n\
             stabilizer_dim   {}\n\
             centralizer_dims {:?}\n\
             chain_regular    {}\n\
             chain_disjoint   {}\n\
             partial          [{}]\n\
             full             [{}]\n",
            self.algebra,
            self.n,
            self.coincidence,
            self.regular,
            self.regular_k,
            self.nsreg,
            self.sreg,
            self.jacobian_rank,
            self.jacobian_target,
            self.stabilizer_dim,
            self.centralizer_dims,
            flags(&self.chain_regular),
            flags(&self.chain_disjoint),
            values(&self.partial),
            values(&self.full),
        )
    }
}

pub fn analyze_matrix(ctx: &AlgebraContext, x: &ExactMatrix) -> Result<Analysis> {
    if !ctx.membership_check(x)? {
        return Err(Error::Membership {
            algebra: ctx.kind().tag().into(),
            n: ctx.n(),
            detail: "the matrix does not satisfy the defining equations".into(),
        });
    }
    let n = ctx.n();
    let chain = chain_conditions(ctx, x);
    Ok(Analysis {
        algebra: ctx.kind().tag().into(),
        n,
        coincidence: coincidence_count(ctx, x),
        regular: is_regular(ctx, x, n),
        regular_k: is_regular(ctx, x, n - 1),
        nsreg: is_nsreg(ctx, x),
        sreg: is_sreg(ctx, x),
        jacobian_rank: kostant_jacobian_rank(ctx, x),
        jacobian_target: kostant_target(ctx),
        stabilizer_dim: stabilizer_dim(ctx, x),
        centralizer_dims: centralizer_dims(ctx, x),
        chain_regular: chain.regular,
        chain_disjoint: chain.disjoint,
        partial: partial_kw(ctx, x),
        full: full_kw(ctx, x),
    })
}

/// Parse a matrix document and analyse it.
pub fn analyze_document(text: &str) -> Result<Analysis> {
    let doc = MatrixDocument::parse(text)?;
    let ctx = AlgebraContext::new(doc.algebra, doc.n)?;
    analyze_matrix(&ctx, &doc.matrix()?)
}

/// A matrix document with extra descriptive fields, as emitted by samplers.
pub fn sample_document(doc: &MatrixDocument, extra: Value) -> Value {
    let mut v = serde_json::to_value(doc).expect("documents serialise");
    if let Value::Object(map) = extra {
        for (k, val) in map {
            v[k] = val;
        }
    }
    v
}
