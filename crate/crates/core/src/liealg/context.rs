use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::roots::{gl_roots, so_roots, Root};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactScalar, Subspace};

/// Which classical family a context realises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[serde(rename = "gl")]
    GL,
    #[serde(rename = "so")]
    SO,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::GL => "gl",
            Kind::SO => "so",
        }
    }

    pub fn parse(text: &str) -> Result<Kind> {
        match text.to_ascii_lowercase().as_str() {
            "gl" => Ok(Kind::GL),
            "so" => Ok(Kind::SO),
            other => Err(Error::Usage(format!(
                "unknown algebra kind {other:?} (expected gl or so)"
            ))),
        }
    }

    /// Rank of the m-th member of the chain.
    pub fn rank_of(self, m: usize) -> usize {
        match self {
            Kind::GL => m,
            Kind::SO => m / 2,
        }
    }

    /// First index of the subalgebra chain g_start ⊂ … ⊂ g_n.
    pub fn chain_start(self) -> usize {
        match self {
            Kind::GL => 1,
            Kind::SO => 2,
        }
    }

    pub fn dim_of(self, m: usize) -> usize {
        match self {
            Kind::GL => m * m,
            Kind::SO => m * m.saturating_sub(1) / 2,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One member g_m of the subalgebra chain, realised as the endomorphisms of a
/// nondegenerate subspace V_m ⊂ ℂⁿ that vanish on its orthogonal complement.
#[derive(Clone, Debug)]
pub struct Level {
    pub m: usize,
    pub rank: usize,
    /// n×m matrix whose columns span V_m.
    pub embed: ExactMatrix,
    /// m×n matrix with `reader·embed = I` and `reader` zero on V_m^⊥.
    pub reader: ExactMatrix,
    /// Orthogonal projection ℂⁿ → V_m.
    pub projector: ExactMatrix,
    /// g_m as a subspace of g, in the coordinates of the g-basis.
    pub space: Subspace,
    pub basis: Vec<ExactMatrix>,
    /// Coordinate positions spanning V_m when V_m is a coordinate subspace
    /// (all GL levels and even SO levels).
    pub block: Option<Vec<usize>>,
}

impl Level {
    /// x restricted to V_m, as an m×m matrix.
    pub fn restrict<R: crate::Ring>(&self, x: &crate::Mat<R>) -> crate::Mat<R> {
        match &self.block {
            Some(idx) => x.submatrix(idx, idx),
            None => self.reader.lift::<R>().mul(x).mul(&self.embed.lift::<R>()),
        }
    }

    pub fn compress(&self, x: &ExactMatrix) -> ExactMatrix {
        self.projector.mul(x).mul(&self.projector)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// A realised Lie algebra gl(n) or so(n) with all the data threaded through
/// the rest of the crate.
#[derive(Clone)]
pub struct AlgebraContext {
    kind: Kind,
    n: usize,
    rank: usize,
    form: ExactMatrix,
    basis: Vec<ExactMatrix>,
    roots: Vec<Root>,
    coords: Subspace,
    theta_conj: ExactMatrix,
    /// T as a signed permutation: row i of T has the entry theta_sign[i] in
    /// column theta_perm[i].
    theta_perm: Vec<usize>,
    theta_sign: Vec<bool>,
    theta_coords: ExactMatrix,
    chain: Vec<Level>,
}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

fn flatten(m: &ExactMatrix) -> Vec<ExactScalar> {
    m.to_vec()
}

/// Anti-diagonal form S_n.
pub fn antidiagonal_form(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        if i + j + 1 == n {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
}

/// Matrix position weights in the ε-basis: position p carries ε_{p+1} for
/// p < l, 0 at the middle of odd n, and −ε_{n−p} for p ≥ n − l.
pub(crate) fn so_weight(n: usize, p: usize) -> Vec<i64> {
    let l = n / 2;
    let mut w = vec![0; l];
    if p < l {
        w[p] = 1;
    } else if p >= n - l {
        w[n - 1 - p] = -1;
    }
    w
}

fn so_root_vector(n: usize, root: &[i64]) -> Option<ExactMatrix> {
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let wp = so_weight(n, p);
            let wq = so_weight(n, q);
            let diff: Vec<i64> = wp.iter().zip(&wq).map(|(a, b)| a - b).collect();
            if diff != root {
                continue;
            }
            let (qb, pb) = (n - 1 - q, n - 1 - p);
            if (qb, pb) == (p, q) {
                continue;
            }
            let mut z = ExactMatrix::unit(n, n, p, q);
            z.set(qb, pb, -ExactScalar::one());
            // Canonical sign: the first nonzero entry in row-major order is +1.
            let first = z.data().iter().find(|x| !x.is_zero()).cloned()?;
            if first != ExactScalar::one() {
                z = z.neg();
            }
            return Some(z);
        }
    }
    None
}

impl AlgebraContext {
    /// Build gl(n) (n ≥ 2) or so(n) (n ≥ 3) with its chain, involution and roots.
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        match kind {
            Kind::GL if n < 2 => return Err(Error::Usage("gl(n) requires n ≥ 2".into())),
            Kind::SO if n < 3 => return Err(Error::Usage("so(n) requires n ≥ 3".into())),
            _ => {}
        }
        if n > 16 {
            return Err(Error::Usage(format!("n = {n} is beyond the supported range (≤ 16)")));
        }
        let rank = kind.rank_of(n);
        let (form, basis, roots, theta_conj) = match kind {
            Kind::GL => {
                let roots = gl_roots(n);
                let mut basis: Vec<ExactMatrix> = (0..n).map(|i| ExactMatrix::unit(n, n, i, i)).collect();
                for r in &roots {
                    let i = r.coords.iter().position(|&c| c == 1).expect("ε_i − ε_j");
                    let j = r.coords.iter().position(|&c| c == -1).expect("ε_i − ε_j");
                    basis.push(ExactMatrix::unit(n, n, i, j));
                }
                let mut t = ExactMatrix::identity(n);
                t.set(n - 1, n - 1, -ExactScalar::one());
                (ExactMatrix::identity(n), basis, roots, t)
            }
            Kind::SO => {
                let l = rank;
                let roots = so_roots(n);
                let mut basis: Vec<ExactMatrix> = (0..l)
                    .map(|i| {
                        let mut h = ExactMatrix::unit(n, n, i, i);
                        h.set(n - 1 - i, n - 1 - i, -ExactScalar::one());
                        h
                    })
                    .collect();
                for r in &roots {
                    basis.push(so_root_vector(n, &r.coords).ok_or_else(|| Error::NotARoot(r.label()))?);
                }
                let theta = if n % 2 == 1 {
                    let mut d = vec![-ExactScalar::one(); n];
                    d[l] = ExactScalar::one();
                    ExactMatrix::diagonal(&d)
                } else {
                    let mut p = ExactMatrix::identity(n);
                    let (a, b) = (l - 1, n - l);
                    p.set(a, a, ExactScalar::zero());
                    p.set(b, b, ExactScalar::zero());
                    p.set(a, b, ExactScalar::one());
                    p.set(b, a, ExactScalar::one());
                    p
                };
                (antidiagonal_form(n), basis, roots, theta)
            }
        };
        // T is a symmetric signed permutation in every realisation.
        let (theta_perm, theta_sign): (Vec<usize>, Vec<bool>) = (0..n)
            .map(|i| {
                let j = (0..n)
                    .find(|&j| !theta_conj.get(i, j).is_zero())
                    .expect("T is invertible");
                (j, theta_conj.get(i, j) == &ExactScalar::one())
            })
            .unzip();
        let coords = Subspace::new(n * n, basis.iter().map(flatten).collect())?;
        let dim = basis.len();
        let mut theta_coords = ExactMatrix::zeros(dim, dim);
        for (j, b) in basis.iter().enumerate() {
            let img = theta_conj.mul(b).mul(&theta_conj);
            let c = coords.coords(&flatten(&img)).ok_or_else(|| Error::Membership {
                algebra: kind.tag().into(),
                n,
                detail: "θ does not preserve the algebra".into(),
            })?;
            for (i, v) in c.into_iter().enumerate() {
                theta_coords.set(i, j, v);
            }
        }
        let mut ctx = AlgebraContext {
            kind,
            n,
            rank,
            form,
            basis,
            roots,
            coords,
            theta_perm,
            theta_sign,
            theta_conj,
            theta_coords,
            chain: Vec::new(),
        };
        ctx.chain = (kind.chain_start()..=n)
            .map(|m| ctx.build_level(m))
            .collect::<Result<_>>()?;
        Ok(ctx)
    }

    /// Shared handle, convenient for documents and samplers.
    pub fn shared(kind: Kind, n: usize) -> Result<Arc<Self>> {
        AlgebraContext::new(kind, n).map(Arc::new)
    }

    fn level_vectors(&self, m: usize) -> (Vec<Vec<ExactScalar>>, Option<Vec<usize>>) {
        let n = self.n;
        let e = |p: usize| {
            let mut v = vec![ExactScalar::zero(); n];
            v[p] = ExactScalar::one();
            v
        };
        match self.kind {
            Kind::GL => ((0..m).map(e).collect(), Some((0..m).collect())),
            Kind::SO => {
                let k = m / 2;
                let head: Vec<usize> = (0..k).collect();
                let tail: Vec<usize> = (n - k..n).collect();
                if m % 2 == 0 {
                    let idx: Vec<usize> = head.iter().chain(&tail).copied().collect();
                    (idx.iter().map(|&p| e(p)).collect(), Some(idx))
                } else if m == n {
                    ((0..n).map(e).collect(), Some((0..n).collect()))
                } else {
                    let mut c = e(k);
                    c[n - 1 - k] = ExactScalar::one();
                    let mut vs: Vec<Vec<ExactScalar>> = head.iter().map(|&p| e(p)).collect();
                    vs.push(c);
                    vs.extend(tail.iter().map(|&p| e(p)));
                    (vs, None)
                }
            }
        }
    }

    fn build_level(&self, m: usize) -> Result<Level> {
        let n = self.n;
        let (vectors, block) = self.level_vectors(m);
        let embed = ExactMatrix::from_fn(n, m, |i, j| vectors[j][i].clone());
        let reader = match self.kind {
            Kind::GL => embed.transpose(),
            Kind::SO => {
                let bt_s = embed.transpose().mul(&self.form);
                let gram = bt_s.mul(&embed);
                gram.inverse()?.mul(&bt_s)
            }
        };
        let projector = embed.mul(&reader);
        let space = if m == n {
            Subspace::new(self.dim(), identity_vectors(self.dim()))?
        } else {
            let images: Vec<Vec<ExactScalar>> = self
                .basis
                .iter()
                .map(|b| {
                    let c = projector.mul(b).mul(&projector);
                    self.coords
                        .coords(&flatten(&c))
                        .expect("compression stays in the algebra")
                })
                .collect();
            Subspace::span(self.dim(), &images)?
        };
        let basis = space.basis().iter().map(|c| self.from_coords(c)).collect();
        Ok(Level {
            m,
            rank: self.kind.rank_of(m),
            embed,
            reader,
            projector,
            space,
            basis,
            block,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// r_n: n for gl(n), ⌊n/2⌋ for so(n).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn form(&self) -> &ExactMatrix {
        &self.form
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    /// Basis of the standard diagonal Cartan subalgebra h.
    pub fn cartan_basis(&self) -> &[ExactMatrix] {
        &self.basis[..self.cartan_len()]
    }

    fn cartan_len(&self) -> usize {
        match self.kind {
            Kind::GL => self.n,
            Kind::SO => self.rank,
        }
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots.iter().filter(|r| r.positive).cloned().collect()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        self.roots.iter().filter(|r| r.simple).cloned().collect()
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == coords)
    }

    /// Index of the basis element spanning g_α.
    pub fn root_basis_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index(coords).map(|i| self.cartan_len() + i)
    }

    pub fn root_vector(&self, alpha: &Root) -> Result<&ExactMatrix> {
        self.root_basis_index(&alpha.coords)
            .map(|i| &self.basis[i])
            .ok_or_else(|| Error::NotARoot(alpha.label()))
    }

    pub fn root_vector_by_coords(&self, coords: &[i64]) -> Result<&ExactMatrix> {
        self.root_basis_index(coords)
            .map(|i| &self.basis[i])
            .ok_or_else(|| Error::NotARoot(format!("{coords:?}")))
    }

    /// Diagonal coordinates (a_1, …) of a Cartan element.
    pub fn cartan_coordinates(&self, h: &ExactMatrix) -> Vec<ExactScalar> {
        (0..self.cartan_len()).map(|i| h.get(i, i).clone()).collect()
    }

    /// The Cartan element with the given diagonal coordinates.
    pub fn cartan_element(&self, a: &[ExactScalar]) -> ExactMatrix {
        let mut h = ExactMatrix::zeros(self.n, self.n);
        for (i, c) in a.iter().enumerate() {
            h.set(i, i, c.clone());
            if self.kind == Kind::SO {
                h.set(self.n - 1 - i, self.n - 1 - i, -c);
            }
        }
        h
    }

    pub fn is_member(&self, m: &ExactMatrix) -> bool {
        if m.rows() != self.n || m.cols() != self.n {
            return false;
        }
        match self.kind {
            Kind::GL => true,
            Kind::SO => m.transpose().mul(&self.form).add(&self.form.mul(m)).is_zero(),
        }
    }

    /// Membership test with a size check that reports a usage error.
    pub fn membership_check(&self, m: &ExactMatrix) -> Result<bool> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Dimension(format!(
                "expected a {n}×{n} matrix, got {}×{}",
                m.rows(),
                m.cols(),
                n = self.n
            )));
        }
        Ok(self.is_member(m))
    }

    /// Coordinates in the fixed basis; `None` when `m` is not in the algebra.
    pub fn coords(&self, m: &ExactMatrix) -> Option<Vec<ExactScalar>> {
        self.coords.coords(&flatten(m))
    }

    /// Coordinates of an element already known to lie in the algebra.
    pub fn coords_of(&self, m: &ExactMatrix) -> Vec<ExactScalar> {
        self.coords.coords_unchecked(&flatten(m))
    }

    pub fn from_coords(&self, c: &[ExactScalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.n, self.n);
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                out = out.add(&b.scale(ci));
            }
        }
        out
    }

    /// The matrix T with θ(x) = T·x·T (T² = I).
    pub fn theta_matrix(&self) -> &ExactMatrix {
        &self.theta_conj
    }

    /// θ as a linear map on basis coordinates.
    pub fn theta_on_coords(&self) -> &ExactMatrix {
        &self.theta_coords
    }

    pub fn theta_apply(&self, x: &ExactMatrix) -> ExactMatrix {
        let n = self.n;
        ExactMatrix::from_fn(n, n, |i, j| {
            let v = x.get(self.theta_perm[i], self.theta_perm[j]);
            if self.theta_sign[i] == self.theta_sign[j] {
                v.clone()
            } else {
                -v
            }
        })
    }

    /// (x_k, x_p): for so(n), x_k = (x + θx)/2; for gl(n), x_k is the upper-left
    /// (n−1)×(n−1) block and x_p the remainder.
    pub fn theta_decompose(&self, x: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
        match self.kind {
            Kind::SO => {
                let half = ExactScalar::from_frac(1, 2).expect("nonzero");
                let tx = self.theta_apply(x);
                (x.add(&tx).scale(&half), x.sub(&tx).scale(&half))
            }
            Kind::GL => {
                let xk = self.k_level().compress(x);
                let xp = x.sub(&xk);
                (xk, xp)
            }
        }
    }

    pub fn chain(&self) -> &[Level] {
        &self.chain
    }

    pub fn level(&self, m: usize) -> Result<&Level> {
        let start = self.kind.chain_start();
        if m < start || m > self.n {
            return Err(Error::OutOfRange(format!(
                "chain index {m} outside {start}..={}",
                self.n
            )));
        }
        Ok(&self.chain[m - start])
    }

    /// The symmetric subalgebra k = g_{n−1}.
    pub fn k_level(&self) -> &Level {
        &self.chain[self.n - 1 - self.kind.chain_start()]
    }

    pub fn k_basis(&self) -> &[ExactMatrix] {
        &self.k_level().basis
    }

    pub fn k_space(&self) -> &Subspace {
        &self.k_level().space
    }

    /// x_m: the image of x in g_m under the chain projection.
    pub fn project_to_subalgebra(&self, x: &ExactMatrix, m: usize) -> Result<ExactMatrix> {
        Ok(self.level(m)?.compress(x))
    }

    /// Dimension of the flag variety (number of positive roots).
    pub fn flag_dim(&self) -> usize {
        self.roots.len() / 2
    }

    /// Member of the algebra with the given matrix, checked.
    pub fn element(self: &Arc<Self>, mat: ExactMatrix) -> Result<LieElement> {
        LieElement::new(self.clone(), mat)
    }

    /// l = ⌊n/2⌋ for so(n); type B when n is odd.
    pub fn is_type_b(&self) -> bool {
        self.kind == Kind::SO && self.n % 2 == 1
    }

    pub fn is_type_d(&self) -> bool {
        self.kind == Kind::SO && self.n % 2 == 0
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.kind, self.n)
    }
}

fn identity_vectors(d: usize) -> Vec<Vec<ExactScalar>> {
    (0..d)
        .map(|i| {
            let mut v = vec![ExactScalar::zero(); d];
            v[i] = ExactScalar::one();
            v
        })
        .collect()
}

/// Build a context (free-function form).
pub fn make_algebra(kind: Kind, n: usize) -> Result<AlgebraContext> {
    AlgebraContext::new(kind, n)
}

/// An exact matrix together with the algebra it belongs to.
#[derive(Clone)]
pub struct LieElement {
    ctx: Arc<AlgebraContext>,
    mat: ExactMatrix,
}

impl LieElement {
    pub fn new(ctx: Arc<AlgebraContext>, mat: ExactMatrix) -> Result<Self> {
        if !ctx.membership_check(&mat)? {
            return Err(Error::Membership {
                algebra: ctx.kind.tag().into(),
                n: ctx.n,
                detail: "the form equation MᵀS + SM = 0 fails".into(),
            });
        }
        Ok(LieElement { ctx, mat })
    }

    pub fn ctx(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn mat(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ExactMatrix {
        self.mat
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ∋ {:?}", self.ctx, self.mat)
    }
}
