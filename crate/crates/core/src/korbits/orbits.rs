use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::weyl::{fixed_cosets, CosetData, SignedPerm};
use crate::error::{Error, Result};
use crate::exactfield::{span_dim, ExactMatrix, ExactScalar};
use crate::liealg::{
    cayley_element, group_inverse, is_group_member, so_simple_roots, weyl_representative, AlgebraContext, Kind, Root,
};

/// Type of a root with respect to an involution preserving the Cartan subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootType {
    Real,
    CompactImaginary,
    NoncompactImaginary,
    ComplexStable,
    ComplexUnstable,
}

impl RootType {
    pub fn tag(self) -> &'static str {
        match self {
            RootType::Real => "real",
            RootType::CompactImaginary => "compact",
            RootType::NoncompactImaginary => "noncompact",
            RootType::ComplexStable => "complex-stable",
            RootType::ComplexUnstable => "complex-unstable",
        }
    }

    /// The monoidal action moves the orbit only for these two types.
    pub fn raises(self) -> bool {
        matches!(self, RootType::NoncompactImaginary | RootType::ComplexStable)
    }
}

/// θ_Q on root data: its action on ε-coordinates, and for every imaginary
/// positive root whether it is compact (`Some(true)`) or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRecord {
    pub action: SignedPerm,
    pub compact: Vec<Option<bool>>,
}

impl ThetaRecord {
    pub fn image(&self, alpha: &Root) -> Root {
        Root::from_coords(self.action.transpose().apply(&alpha.coords))
    }

    pub fn action_rows(&self) -> Vec<Vec<i64>> {
        let l = self.action.rank();
        (0..l)
            .map(|i| (0..l).map(|j| self.action.get(i, j)).collect())
            .collect()
    }
}

/// Label of a closed orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Base {
    #[serde(rename = "Q+")]
    Plus,
    #[serde(rename = "Q-")]
    Minus,
}

impl Base {
    pub fn label(self) -> &'static str {
        match self {
            Base::Plus => "Q+",
            Base::Minus => "Q-",
        }
    }
}

/// One K-orbit Q = K·b on the flag variety, with b = Ad(v)b_+.
#[derive(Clone, Debug)]
pub struct OrbitDescriptor {
    pub id: String,
    pub base: Base,
    /// Simple-root indices (0-based) applied by the monoidal action, in order.
    pub word: Vec<usize>,
    pub codim: usize,
    pub closed: bool,
    pub theta_q: ThetaRecord,
    /// The matrix v⁻¹·T·v whose conjugation action is θ_Q.
    pub theta_matrix: ExactMatrix,
    pub simple_types: Vec<RootType>,
    pub rep_borel: Vec<ExactMatrix>,
    pub conjugator: ExactMatrix,
}

impl OrbitDescriptor {
    /// dim(K·b) = dim B − codim.
    pub fn dim(&self, ctx: &AlgebraContext) -> usize {
        ctx.flag_dim() - self.codim
    }
}

pub(crate) fn require_so(ctx: &AlgebraContext) -> Result<()> {
    if ctx.kind() != Kind::SO {
        return Err(Error::Unsupported(
            "K-orbit machinery is implemented for (so(n), so(n−1)) only".into(),
        ));
    }
    Ok(())
}

/// Simple roots α_1, …, α_l in the standard order.
pub fn simple_roots(ctx: &AlgebraContext) -> Vec<Root> {
    so_simple_roots(ctx.n())
        .into_iter()
        .map(|c| {
            let mut r = Root::from_coords(c);
            r.simple = true;
            r
        })
        .collect()
}

/// Basis of the standard Borel subalgebra b_+: h, then positive root vectors.
pub fn borel_plus(ctx: &AlgebraContext) -> Vec<ExactMatrix> {
    let mut out = ctx.cartan_basis().to_vec();
    for r in ctx.positive_roots() {
        out.push(ctx.root_vector(&r).expect("own root").clone());
    }
    out
}

pub(crate) fn conjugate_all(ctx: &AlgebraContext, v: &ExactMatrix, xs: &[ExactMatrix]) -> Result<Vec<ExactMatrix>> {
    let vinv = group_inverse(ctx, v)?;
    Ok(xs.iter().map(|x| v.mul(x).mul(&vinv)).collect())
}

fn coords_list(ctx: &AlgebraContext, xs: &[ExactMatrix]) -> Vec<Vec<ExactScalar>> {
    xs.iter().map(|x| ctx.coords_of(x)).collect()
}

/// dim(k ∩ s) for a subspace s of g given by a spanning list, as the
/// dimension of the kernel of θ − 1 on s.
pub fn k_intersection_dim(ctx: &AlgebraContext, xs: &[ExactMatrix]) -> usize {
    let s = coords_list(ctx, xs);
    let moved: Vec<Vec<ExactScalar>> = xs.iter().map(|x| ctx.coords_of(&ctx.theta_apply(x).sub(x))).collect();
    span_dim(&s) - span_dim(&moved)
}

/// True when g lies in the identity component K of G^θ.
pub fn in_k(ctx: &AlgebraContext, g: &ExactMatrix) -> bool {
    let t = ctx.theta_matrix();
    if g.rows() != ctx.n() || g.mul(t) != t.mul(g) {
        return false;
    }
    let n = ctx.n();
    let l = ctx.rank();
    let component = match ctx.kind() {
        Kind::GL => g.get(n - 1, n - 1) == &ExactScalar::one(),
        Kind::SO if n % 2 == 1 => g.get(l, l) == &ExactScalar::one(),
        Kind::SO => {
            // g fixes e_l − e_{−l}, the (−1)-eigenvector of T.
            let (a, b) = (l - 1, n - l);
            (0..n).all(|i| {
                let expect = if i == a {
                    ExactScalar::one()
                } else if i == b {
                    -ExactScalar::one()
                } else {
                    ExactScalar::zero()
                };
                g.get(i, a) - g.get(i, b) == expect
            })
        }
    };
    component && is_group_member(ctx, g)
}

fn theta_data(ctx: &AlgebraContext, v: &ExactMatrix) -> Result<(ExactMatrix, ThetaRecord)> {
    let vinv = group_inverse(ctx, v)?;
    let m = vinv.mul(ctx.theta_matrix()).mul(v);
    let n = ctx.n();
    for i in 0..n {
        if (0..n).filter(|&j| !m.get(i, j).is_zero()).count() != 1 {
            return Err(Error::Unsupported(
                "θ_Q does not normalise the standard Cartan subalgebra".into(),
            ));
        }
    }
    let l = ctx.rank();
    let mut action = vec![0i64; l * l];
    for (j, h) in ctx.cartan_basis().iter().enumerate() {
        let img = m.mul(h).mul(&m);
        let c = ctx.cartan_coordinates(&img);
        if ctx.cartan_element(&c) != img {
            return Err(Error::Unsupported("θ_Q does not preserve h".into()));
        }
        for (i, ci) in c.iter().enumerate() {
            action[i * l + j] = ci
                .to_i64()
                .ok_or_else(|| Error::Unsupported("θ_Q acts on h by a non-integral matrix".into()))?;
        }
    }
    let action = SignedPerm::from_matrix(l, &action)
        .ok_or_else(|| Error::Unsupported("θ_Q acts on h by a non-signed permutation".into()))?;
    let mut compact = Vec::new();
    for r in ctx.positive_roots() {
        let img = Root::from_coords(action.transpose().apply(&r.coords));
        if img.coords != r.coords {
            compact.push(None);
            continue;
        }
        let e = ctx.root_vector(&r)?;
        let te = m.mul(e).mul(&m);
        if &te == e {
            compact.push(Some(true));
        } else if te == e.neg() {
            compact.push(Some(false));
        } else {
            return Err(Error::Unsupported(format!(
                "θ_Q does not act on g_{} by a sign",
                r.label()
            )));
        }
    }
    Ok((m, ThetaRecord { action, compact }))
}

/// Type of the positive root α with respect to θ_Q.
pub fn classify_root_type(ctx: &AlgebraContext, theta_q: &ThetaRecord, alpha: &Root) -> Result<RootType> {
    let img = theta_q.image(alpha);
    if img.coords == alpha.coords {
        let idx = ctx
            .positive_roots()
            .iter()
            .position(|r| r.coords == alpha.coords)
            .ok_or_else(|| Error::NotARoot(alpha.label()))?;
        return Ok(match theta_q.compact[idx] {
            Some(true) => RootType::CompactImaginary,
            _ => RootType::NoncompactImaginary,
        });
    }
    if img.coords == alpha.neg().coords {
        return Ok(RootType::Real);
    }
    Ok(if img.positive {
        RootType::ComplexStable
    } else {
        RootType::ComplexUnstable
    })
}

/// Assemble the descriptor of K·Ad(v)b_+.
pub fn describe(
    ctx: &AlgebraContext,
    v: ExactMatrix,
    base: Base,
    word: Vec<usize>,
    closed: bool,
) -> Result<OrbitDescriptor> {
    require_so(ctx)?;
    let (theta_matrix, theta_q) = theta_data(ctx, &v)?;
    let simple_types = simple_roots(ctx)
        .iter()
        .map(|a| classify_root_type(ctx, &theta_q, a))
        .collect::<Result<Vec<_>>>()?;
    let rep_borel = conjugate_all(ctx, &v, &borel_plus(ctx))?;
    let dim_orbit = ctx.k_space().dim() - k_intersection_dim(ctx, &rep_borel);
    let codim = ctx
        .flag_dim()
        .checked_sub(dim_orbit)
        .ok_or_else(|| Error::Unsupported("orbit dimension exceeds the flag variety".into()))?;
    // Q_i carries the parabolic of index i: codim i for so(2l+1), i − 1 for so(2l).
    let id = if closed {
        base.label().to_string()
    } else if ctx.is_type_d() {
        format!("Q{}", codim + 1)
    } else {
        format!("Q{codim}")
    };
    Ok(OrbitDescriptor {
        id,
        base,
        word,
        codim,
        closed,
        theta_q,
        theta_matrix,
        simple_types,
        rep_borel,
        conjugator: v,
    })
}

fn identity_record(ctx: &AlgebraContext) -> Result<ThetaRecord> {
    Ok(theta_data(ctx, &ExactMatrix::identity(ctx.n()))?.1)
}

fn k_weyl_generators(ctx: &AlgebraContext, theta: &ThetaRecord) -> Result<Vec<SignedPerm>> {
    let mut gens = Vec::new();
    for r in ctx.positive_roots() {
        match classify_root_type(ctx, theta, &r)? {
            RootType::CompactImaginary => gens.push(SignedPerm::reflection(&r)),
            RootType::ComplexStable | RootType::ComplexUnstable => {
                let img = theta.image(&r);
                if r.inner(&img) == 0 {
                    gens.push(SignedPerm::reflection(&r).compose(&SignedPerm::reflection(&img)));
                }
            }
            _ => {}
        }
    }
    Ok(gens)
}

/// The cosets W^θ / W_K, which index the closed K-orbits.
pub fn closed_orbit_cosets(ctx: &AlgebraContext) -> Result<CosetData> {
    require_so(ctx)?;
    let theta = identity_record(ctx)?;
    let gens = k_weyl_generators(ctx, &theta)?;
    Ok(fixed_cosets(&simple_roots(ctx), &theta.action, &gens))
}

pub fn closed_orbit_count(ctx: &AlgebraContext) -> Result<usize> {
    Ok(closed_orbit_cosets(ctx)?.index())
}

/// ṡ for the product of simple reflections in `word`, left to right.
pub fn word_representative(ctx: &AlgebraContext, word: &[usize]) -> Result<ExactMatrix> {
    let simple = simple_roots(ctx);
    let mut g = ExactMatrix::identity(ctx.n());
    for &a in word {
        let alpha = simple
            .get(a)
            .ok_or_else(|| Error::OutOfRange(format!("simple root index {}", a + 1)))?;
        g = g.mul(&weyl_representative(ctx, alpha)?);
    }
    Ok(g)
}

/// The closed orbits K·w⁻¹(b_+), one per coset wW_K.
pub fn closed_orbits(ctx: &AlgebraContext) -> Result<Vec<OrbitDescriptor>> {
    let cosets = closed_orbit_cosets(ctx)?;
    if cosets.index() > 2 {
        return Err(Error::Unsupported("more than two closed orbits".into()));
    }
    let bases = [Base::Plus, Base::Minus];
    cosets
        .representatives
        .iter()
        .zip(bases)
        .map(|(word, base)| {
            let inverse: Vec<usize> = word.iter().rev().copied().collect();
            let v = word_representative(ctx, &inverse)?;
            describe(ctx, v, base, Vec::new(), true)
        })
        .collect()
}

/// m(s_α)·Q for the simple root α_{a+1}; returns Q itself when the action is trivial.
pub fn monoid_action(ctx: &AlgebraContext, q: &OrbitDescriptor, a: usize) -> Result<OrbitDescriptor> {
    let simple = simple_roots(ctx);
    let alpha = simple
        .get(a)
        .ok_or_else(|| Error::NotARoot(format!("α_{} is not a simple root", a + 1)))?;
    let s = SignedPerm::reflection(alpha);
    let (step, expected) = match q.simple_types[a] {
        RootType::ComplexStable => (
            weyl_representative(ctx, alpha)?,
            s.compose(&q.theta_q.action).compose(&s),
        ),
        RootType::NoncompactImaginary => (cayley_element(ctx, alpha)?, s.compose(&q.theta_q.action)),
        _ => return Ok(q.clone()),
    };
    let mut word = q.word.clone();
    word.push(a);
    let next = describe(ctx, q.conjugator.mul(&step), q.base, word, false)?;
    if next.theta_q.action != expected {
        return Err(Error::Unsupported(format!(
            "θ_Q of m(s_{}) disagrees with the combinatorial update",
            a + 1
        )));
    }
    if next.codim + 1 != q.codim {
        return Err(Error::Unsupported(format!(
            "m(s_{}) changed the codimension from {} to {}",
            a + 1,
            q.codim,
            next.codim
        )));
    }
    Ok(next)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEdge {
    pub from: String,
    pub to: String,
    /// 1-based simple root index.
    pub root: usize,
    pub root_label: String,
    pub root_type: RootType,
}

/// Two monoidal-action paths that land in the same orbit, with an element
/// k ∈ K carrying one representative Borel to the other when one was found.
#[derive(Clone, Debug)]
pub struct OrbitMerge {
    pub orbit: String,
    pub existing_word: Vec<usize>,
    pub existing_base: Base,
    pub new_word: Vec<usize>,
    pub new_base: Base,
    pub witness: Option<ExactMatrix>,
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub label: String,
    pub flag_dim: usize,
    pub orbits: Vec<OrbitDescriptor>,
    pub edges: Vec<OrbitEdge>,
    pub merges: Vec<OrbitMerge>,
    pub cosets: CosetData,
    /// Named identities about the chosen Weyl representatives.
    pub representative_checks: Vec<(String, bool)>,
}

impl OrbitTable {
    pub fn closed(&self) -> impl Iterator<Item = &OrbitDescriptor> {
        self.orbits.iter().filter(|q| q.closed)
    }

    pub fn get(&self, id: &str) -> Option<&OrbitDescriptor> {
        self.orbits.iter().find(|q| q.id == id)
    }

    pub fn codims(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.orbits.iter().map(|q| q.codim).collect();
        c.sort_unstable_by(|a, b| b.cmp(a));
        c
    }
}

fn is_upper_triangular(g: &ExactMatrix) -> bool {
    (0..g.rows()).all(|i| (0..i).all(|j| g.get(i, j).is_zero()))
}

fn torus_signs(ctx: &AlgebraContext) -> Vec<ExactMatrix> {
    let n = ctx.n();
    let l = ctx.rank();
    (0u32..(1 << l))
        .map(|mask| {
            let mut d = vec![ExactScalar::one(); n];
            for j in 0..l {
                if mask & (1 << j) != 0 {
                    d[j] = -ExactScalar::one();
                    d[n - 1 - j] = -ExactScalar::one();
                }
            }
            ExactMatrix::diagonal(&d)
        })
        .collect()
}

/// Search for k ∈ K with Ad(k)·Ad(v_from)b_+ = Ad(v_to)b_+ among products of
/// at most two simple reflection representatives and sign elements of the torus.
/// The test is v_to⁻¹·k·v_from ∈ B_+, the upper triangular part of G.
pub fn conjugacy_witness(
    ctx: &AlgebraContext,
    v_from: &ExactMatrix,
    v_to: &ExactMatrix,
) -> Result<Option<ExactMatrix>> {
    let to_inv = group_inverse(ctx, v_to)?;
    let simple = simple_roots(ctx);
    let reps = simple
        .iter()
        .map(|a| weyl_representative(ctx, a))
        .collect::<Result<Vec<_>>>()?;
    let mut bases = vec![ExactMatrix::identity(ctx.n())];
    bases.extend(reps.iter().cloned());
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            if i != j {
                bases.push(a.mul(b));
            }
        }
    }
    let signs = torus_signs(ctx);
    for base in &bases {
        for t in &signs {
            let k = base.mul(t);
            if !in_k(ctx, &k) {
                continue;
            }
            if is_upper_triangular(&to_inv.mul(&k).mul(v_from)) {
                return Ok(Some(k));
            }
        }
    }
    Ok(None)
}

fn representative_checks(ctx: &AlgebraContext) -> Result<Vec<(String, bool)>> {
    let simple = simple_roots(ctx);
    let l = simple.len();
    let mut out = Vec::new();
    if ctx.is_type_d() && l >= 2 {
        let a = weyl_representative(ctx, &simple[l - 2])?;
        let b = weyl_representative(ctx, &simple[l - 1])?;
        out.push(("theta(s_{l-1}) = s_l".to_string(), ctx.theta_apply(&a) == b));
        out.push(("s_{l-1} s_l = s_l s_{l-1}".to_string(), a.mul(&b) == b.mul(&a)));
        out.push(("s_l s_{l-1} in K".to_string(), in_k(ctx, &b.mul(&a))));
    }
    if ctx.is_type_b() {
        let u = cayley_element(ctx, &simple[l - 1])?;
        out.push(("u_{a_l} in G".to_string(), is_group_member(ctx, &u)));
    }
    Ok(out)
}

/// All K-orbits on the flag variety: the closed orbits and their closure
/// under the monoidal action, with the action graph.
pub fn enumerate_orbits(ctx: &AlgebraContext) -> Result<OrbitTable> {
    require_so(ctx)?;
    let cosets = closed_orbit_cosets(ctx)?;
    let mut orbits = closed_orbits(ctx)?;
    let simple = simple_roots(ctx);
    let mut edges = Vec::new();
    let mut merges = Vec::new();
    let mut cursor = 0;
    while cursor < orbits.len() {
        let q = orbits[cursor].clone();
        cursor += 1;
        for (a, alpha) in simple.iter().enumerate() {
            let next = monoid_action(ctx, &q, a)?;
            if next.codim == q.codim {
                continue;
            }
            let existing = orbits
                .iter()
                .position(|o| !o.closed && o.codim == next.codim && o.theta_q == next.theta_q);
            let to = match existing {
                Some(j) => {
                    let old = &orbits[j];
                    let witness = conjugacy_witness(ctx, &next.conjugator, &old.conjugator)?;
                    merges.push(OrbitMerge {
                        orbit: old.id.clone(),
                        existing_word: old.word.clone(),
                        existing_base: old.base,
                        new_word: next.word.clone(),
                        new_base: next.base,
                        witness,
                    });
                    old.id.clone()
                }
                None => {
                    let mut fresh = next;
                    if orbits.iter().any(|o| o.id == fresh.id) {
                        fresh.id = format!("{}#{}", fresh.id, orbits.len());
                    }
                    let id = fresh.id.clone();
                    orbits.push(fresh);
                    id
                }
            };
            edges.push(OrbitEdge {
                from: q.id.clone(),
                to,
                root: a + 1,
                root_label: alpha.label(),
                root_type: q.simple_types[a],
            });
        }
    }
    Ok(OrbitTable {
        label: ctx.label(),
        flag_dim: ctx.flag_dim(),
        orbits,
        edges,
        merges,
        cosets,
        representative_checks: representative_checks(ctx)?,
    })
}

fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

/// Plain-text graph: one `node` line per orbit and one `edge` line per move.
pub fn orbit_graph_text(table: &OrbitTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} flag_dim={}", table.label, table.flag_dim);
    for q in &table.orbits {
        let word: Vec<String> = q.word.iter().map(|a| format!("s{}", a + 1)).collect();
        let _ = writeln!(
            out,
            "node {} codim={}{} base={} word=[{}]",
            q.id,
            q.codim,
            if q.closed { " closed" } else { "" },
            q.base.label(),
            word.join(" ")
        );
    }
    for e in &table.edges {
        let _ = writeln!(
            out,
            "edge {} -> {} root=a{} ({}) type={}",
            e.from,
            e.to,
            e.root,
            e.root_label,
            e.root_type.tag()
        );
    }
    out
}

/// Structured form of the same graph.
pub fn orbit_graph_json(table: &OrbitTable) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = table
        .orbits
        .iter()
        .map(|q| {
            json!({
                "id": q.id,
                "codim": q.codim,
                "closed": q.closed,
                "base": q.base,
                "word": q.word.iter().map(|a| a + 1).collect::<Vec<_>>(),
                "theta_action": q.theta_q.action_rows(),
                "simple_types": q.simple_types,
                "conjugator": matrix_strings(&q.conjugator),
            })
        })
        .collect();
    let merges: Vec<serde_json::Value> = table
        .merges
        .iter()
        .map(|m| {
            json!({
                "orbit": m.orbit,
                "paths": [
                    { "base": m.existing_base, "word": m.existing_word.iter().map(|a| a + 1).collect::<Vec<_>>() },
                    { "base": m.new_base, "word": m.new_word.iter().map(|a| a + 1).collect::<Vec<_>>() },
                ],
                "witness": m.witness.as_ref().map(matrix_strings),
            })
        })
        .collect();
    json!({
        "algebra": table.label,
        "flag_dim": table.flag_dim,
        "closed_orbit_count": table.cosets.index(),
        "nodes": nodes,
        "edges": table.edges,
        "merges": merges,
    })
}
