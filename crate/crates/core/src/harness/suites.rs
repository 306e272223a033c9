use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use super::families::{g0_sample, mixed_sample, theta_sample};
use super::report::{witness, ClaimResult, Failure, PassRule};
use super::SuiteConfig;
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactScalar, Subspace};
use crate::invariants::{coincidence_count, partial_kw, partial_len, reduced_char_poly};
use crate::korbits::{
    borel_plus, closed_orbit_count, conjugate, degenerate_to_levi, enumerate_orbits, flip_element, flipped_diagonal,
    in_k, nilradical, parabolic_for_codim, sample_nilfibre, sample_xi, sample_yq, stable_parabolic, verify_parabolic,
    word_representative, xi_coordinates, xi_max, xi_slots, Base, OrbitTable, Slot, XiPattern,
};
use crate::liealg::{AlgebraContext, Kind, MatrixDocument, Root};
use crate::regularity::{
    chain_conditions, chain_target, fibre_dimension, full_jacobian_rank, is_nsreg, is_regular, is_sreg,
    joint_centralizer, kostant_jacobian_rank, kostant_target, stabilizer_dim, Ambient,
};
use crate::sampling::{self, SampleBounds};

/// One predicate evaluated on one trial; `None` means "not applicable".
pub(super) struct Check {
    ok: bool,
    detail: String,
    input: Option<ExactMatrix>,
}

fn check(ok: bool, detail: impl Into<String>) -> Option<Check> {
    Some(Check {
        ok,
        detail: detail.into(),
        input: None,
    })
}

fn check_on(ok: bool, x: &ExactMatrix, detail: impl Into<String>) -> Option<Check> {
    Some(Check {
        ok,
        detail: detail.into(),
        input: Some(x.clone()),
    })
}

/// What one trial produced: checks aligned with the claim list, the element
/// under test, and named counters added to the first claim's metrics.
#[derive(Default)]
pub(super) struct Trial {
    input: Option<ExactMatrix>,
    checks: Vec<Option<Check>>,
    counters: Vec<String>,
}

/// (id, anchor, rule) for one claim.
type ClaimTemplate = (&'static str, &'static str, PassRule);

fn new_claims(templates: &[ClaimTemplate], algebra: &str, suffix: &str) -> Vec<ClaimResult> {
    templates
        .iter()
        .map(|(id, anchor, rule)| ClaimResult::new(format!("{id}{suffix}"), *anchor, algebra, *rule))
        .collect()
}

/// Run `trials` seeded trials in parallel and fold them into the claims.
fn run_trials<F>(claims: &mut [ClaimResult], kind: Kind, trials: usize, seed: u64, label: &str, f: F)
where
    F: Fn(u64) -> Result<Trial> + Sync,
{
    let outcomes: Vec<(u64, Result<Trial>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = sampling::derive_seed(seed, label, t as u64);
            (s, f(s))
        })
        .collect();
    let mut counters: BTreeMap<String, u64> = BTreeMap::new();
    for (t, (s, outcome)) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(trial) => {
                for key in &trial.counters {
                    *counters.entry(key.clone()).or_default() += 1;
                }
                for (claim, c) in claims.iter_mut().zip(trial.checks) {
                    let Some(c) = c else { continue };
                    let input = c.input.as_ref().or(trial.input.as_ref());
                    claim.record(c.ok, || Failure {
                        trial: t,
                        seed: s,
                        input: input.and_then(|x| witness(kind, x)),
                        detail: c.detail.clone(),
                    });
                }
            }
            Err(e) => {
                for claim in claims.iter_mut() {
                    claim.record(false, || Failure {
                        trial: t,
                        seed: s,
                        input: None,
                        detail: format!("trial aborted: {e}"),
                    });
                }
            }
        }
    }
    if let Some(first) = claims.first_mut() {
        for (k, v) in counters {
            first.metric(&k, v);
        }
    }
}

/// A claim decided once, outside the trial loop.
fn single(id: &str, anchor: &str, algebra: &str, ok: bool, detail: impl Into<String>) -> ClaimResult {
    let mut c = ClaimResult::new(id, anchor, algebra, PassRule::All);
    let detail = detail.into();
    c.record(ok, || Failure {
        trial: 0,
        seed: 0,
        input: None,
        detail,
    });
    c
}

fn context(kind: Kind, n: usize) -> Result<AlgebraContext> {
    AlgebraContext::new(kind, n)
}

/// Run a per-algebra suite body over all sizes in parallel, keeping order.
fn per_algebra<F>(sizes: &[(Kind, usize)], f: F) -> Result<Vec<ClaimResult>>
where
    F: Fn(&AlgebraContext) -> Result<Vec<ClaimResult>> + Sync,
{
    let parts: Vec<Result<Vec<ClaimResult>>> = sizes.par_iter().map(|&(kind, n)| f(&context(kind, n)?)).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// orbit-tables

pub(super) fn orbit_tables(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::SO, 3, 12)], 3);
    per_algebra(&sizes, |ctx| {
        let table = enumerate_orbits(ctx)?;
        Ok(orbit_table_claims(ctx, &table))
    })
}

fn orbit_table_claims(ctx: &AlgebraContext, table: &OrbitTable) -> Vec<ClaimResult> {
    let alg = ctx.label();
    let l = ctx.rank();
    let b = ctx.is_type_b();
    let mut out = Vec::new();

    let expected_count = if b { l + 2 } else { l };
    out.push(single(
        "orbit-tables/orbit-count",
        "l + 2 orbits for so(2l+1), l orbits for so(2l)",
        &alg,
        table.orbits.len() == expected_count,
        format!("found {}, expected {expected_count}", table.orbits.len()),
    ));

    let mut expected_codims: Vec<usize> = if b {
        std::iter::once(l).chain((0..=l).rev()).collect()
    } else {
        (0..l).rev().collect()
    };
    expected_codims.sort_unstable_by(|x, y| y.cmp(x));
    out.push(single(
        "orbit-tables/codimensions",
        "codimension multiset {l, l, l−1, …, 0} resp. {l−1, …, 0}",
        &alg,
        table.codims() == expected_codims,
        format!("found {:?}, expected {expected_codims:?}", table.codims()),
    ));

    let closed: Vec<_> = table.closed().collect();
    let expected_closed = if b { 2 } else { 1 };
    let coset_count = closed_orbit_count(ctx).unwrap_or(usize::MAX);
    out.push(single(
        "orbit-tables/closed-count",
        "closed orbits correspond to W^θ/W_K: 2 for so(2l+1), 1 for so(2l)",
        &alg,
        closed.len() == expected_closed && coset_count == expected_closed,
        format!("closed {}, coset index {coset_count}", closed.len()),
    ));

    let k_flag = (ctx.k_basis().len() - ctx.kind().rank_of(ctx.n() - 1)) / 2;
    out.push(single(
        "orbit-tables/closed-dimension",
        "closed orbits have the dimension of the flag variety of K",
        &alg,
        closed.iter().all(|q| ctx.flag_dim() - q.codim == k_flag),
        format!("flag variety of K has dimension {k_flag}"),
    ));

    let graph_ok = table
        .edges
        .iter()
        .all(|e| match (table.get(&e.from), table.get(&e.to)) {
            (Some(f), Some(t)) => f.codim == t.codim + 1,
            _ => false,
        })
        && table
            .orbits
            .iter()
            .all(|q| q.closed || table.edges.iter().any(|e| e.to == q.id));
    out.push(single(
        "orbit-tables/action-graph",
        "every move of the monoidal action lowers the codimension by one and reaches every orbit",
        &alg,
        graph_ok,
        "edge with codimension jump or unreachable orbit",
    ));

    out.push(single(
        "orbit-tables/merge-witnesses",
        "paths that land in one orbit are K-conjugate (explicit element of K)",
        &alg,
        table
            .merges
            .iter()
            .all(|m| m.witness.as_ref().is_some_and(|k| in_k(ctx, k))),
        format!("{} merges", table.merges.len()),
    ));

    let failing: Vec<&str> = table
        .representative_checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name.as_str())
        .collect();
    out.push(single(
        "orbit-tables/representative-identities",
        "chosen Weyl and Cayley representatives satisfy the required identities",
        &alg,
        failing.is_empty(),
        format!("failing: {failing:?}"),
    ));

    out.push(representative_borels(ctx, table));

    let dims_ok = table.orbits.iter().all(|q| {
        let dim_b = borel_plus(ctx).len();
        let orbit = q.dim(ctx);
        dim_b + orbit == ctx.dim() - q.codim
    });
    out.push(single(
        "orbit-tables/yq-dimension",
        "dim b + dim K·b = dim g − codim Q",
        &alg,
        dims_ok,
        "dimension mismatch",
    ));

    out.push(parabolic_claim(ctx, table));
    out
}

fn representative_borels(ctx: &AlgebraContext, table: &OrbitTable) -> ClaimResult {
    let alg = ctx.label();
    let l = ctx.rank();
    let mut problems = Vec::new();
    for q in &table.orbits {
        if q.closed {
            let expect = match q.base {
                Base::Plus => Some(ExactMatrix::identity(ctx.n())),
                Base::Minus => word_representative(ctx, &[l - 1]).ok(),
            };
            if expect.as_ref() != Some(&q.conjugator) {
                problems.push(format!("{} conjugator", q.id));
            }
            continue;
        }
        // Words: α_l, α_{l−1}, …, α_{i+1} for so(2l+1); α_{l−1}, …, α_i for so(2l).
        let start = if ctx.is_type_b() { l - 1 } else { l - 2 };
        let expected_word: Vec<usize> = (0..q.word.len()).map(|k| start - k).collect();
        let index = if ctx.is_type_b() { q.codim } else { q.codim + 1 };
        if q.word != expected_word || q.id != format!("Q{index}") {
            problems.push(format!("{} word {:?}", q.id, q.word));
        }
    }
    single(
        "orbit-tables/representative-borels",
        "b_i = Ad(u_{α_l}) s_{α_{l−1}}⋯s_{α_{i+1}} b_+ resp. s_{α_{l−1}}⋯s_{α_i} b_+, and b_− = s_{α_l} b_+",
        &alg,
        problems.is_empty(),
        problems.join("; "),
    )
}

fn parabolic_claim(ctx: &AlgebraContext, table: &OrbitTable) -> ClaimResult {
    let alg = ctx.label();
    let l = ctx.rank();
    let indices: Vec<usize> = if ctx.is_type_b() {
        (0..l).collect()
    } else {
        (1..l).collect()
    };
    let mut problems = Vec::new();
    for &i in &indices {
        let par = match stable_parabolic(ctx, i) {
            Ok(p) => p,
            Err(e) => {
                problems.push(format!("r_{i}: {e}"));
                continue;
            }
        };
        let checks = verify_parabolic(ctx, &par);
        let (size, z) = if ctx.is_type_b() {
            (2 * (l - i) + 1, i)
        } else {
            (2 * (l - i) + 2, i - 1)
        };
        if !checks.all() || par.lss_size != size || checks.z_dim != z {
            problems.push(format!(
                "r_{i}: {checks:?}, l_ss = so({}), dim z = {}",
                par.lss_size, checks.z_dim
            ));
        }
        if let Some(q) = table.get(&format!("Q{i}")) {
            if !par.contains_all(ctx, &q.rep_borel) {
                problems.push(format!("b_{i} ⊄ r_{i}"));
            }
        } else {
            problems.push(format!("no orbit Q{i}"));
        }
    }
    single(
        "orbit-tables/stable-parabolics",
        "r_i is θ-stable, z ⊂ k, l_ss ≅ so(2(l−i)+1) resp. so(2(l−i)+2), and b_i ⊂ r_i",
        &alg,
        problems.is_empty(),
        problems.join("; "),
    )
}

// ---------------------------------------------------------------------------
// kostant-equivalence

const KOSTANT_CLAIMS: &[ClaimTemplate] = &[
    (
        "kostant-equivalence/nsreg-iff-full-rank",
        "z_k(x_k) ∩ z_g(x) = 0 exactly when the partial-map differentials are independent",
        PassRule::All,
    ),
    (
        "kostant-equivalence/nsreg-implies-regular",
        "n-strongly regular x has x and x_k regular",
        PassRule::All,
    ),
    (
        "kostant-equivalence/fibre-dimension",
        "full rank certifies local fibre dimension dim g − r_n − r_{n−1}",
        PassRule::All,
    ),
];

fn default_pairs() -> [(Kind, usize, usize); 2] {
    [(Kind::GL, 3, 5), (Kind::SO, 4, 7)]
}

pub(super) fn kostant_equivalence(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&default_pairs(), 3);
    let trials = cfg.trials.unwrap_or(200);
    per_algebra(&sizes, |ctx| {
        let table = orbit_table_if_so(ctx)?;
        let mut claims = new_claims(KOSTANT_CLAIMS, &ctx.label(), "");
        let target = kostant_target(ctx);
        run_trials(
            &mut claims,
            ctx.kind(),
            trials,
            cfg.seed,
            &format!("kostant/{}", ctx.label()),
            |s| {
                let (family, x) = mixed_sample(ctx, table.as_ref(), s, cfg.bounds)?;
                let ns = is_nsreg(ctx, &x);
                let rank = kostant_jacobian_rank(ctx, &x);
                let n = ctx.n();
                let mut counters = vec![format!("family.{}", family.tag())];
                if ns {
                    counters.push("nsreg".into());
                }
                Ok(Trial {
                    input: Some(x.clone()),
                    checks: vec![
                        check(ns == (rank == target), format!("nsreg = {ns}, rank {rank} of {target}")),
                        if ns {
                            check(
                                is_regular(ctx, &x, n) && is_regular(ctx, &x, n - 1),
                                "x or x_k not regular",
                            )
                        } else {
                            None
                        },
                        if ns {
                            check(
                                rank == target && ctx.dim() - rank == fibre_dimension(ctx),
                                format!("rank {rank}, fibre dimension {}", fibre_dimension(ctx)),
                            )
                        } else {
                            None
                        },
                    ],
                    counters,
                })
            },
        );
        Ok(claims)
    })
}

fn orbit_table_if_so(ctx: &AlgebraContext) -> Result<Option<OrbitTable>> {
    match ctx.kind() {
        Kind::SO => enumerate_orbits(ctx).map(Some),
        Kind::GL => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// gzero-nsreg

const GZERO_CLAIMS: &[ClaimTemplate] = &[
    (
        "gzero-nsreg/nsreg",
        "σ(x) ∩ σ(x_k) = ∅ implies x is n-strongly regular",
        PassRule::All,
    ),
    (
        "gzero-nsreg/trivial-stabilizer",
        "z_k(x_k) ∩ z_k(x) = 0, so dim K·x = dim K",
        PassRule::All,
    ),
    ("gzero-nsreg/regular-pair", "x and x_k are both regular", PassRule::All),
];

pub(super) fn gzero_nsreg(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&default_pairs(), 3);
    let trials = cfg.trials.unwrap_or(100);
    per_algebra(&sizes, |ctx| {
        let mut claims = new_claims(GZERO_CLAIMS, &ctx.label(), "");
        run_trials(
            &mut claims,
            ctx.kind(),
            trials,
            cfg.seed,
            &format!("gzero/{}", ctx.label()),
            |s| {
                let x = g0_sample(ctx, s, cfg.bounds)?;
                let n = ctx.n();
                let stab = stabilizer_dim(ctx, &x);
                Ok(Trial {
                    input: Some(x.clone()),
                    checks: vec![
                        check(is_nsreg(ctx, &x), "not n-strongly regular"),
                        check(stab == 0, format!("stabilizer dimension {stab}")),
                        check(
                            is_regular(ctx, &x, n) && is_regular(ctx, &x, n - 1),
                            "x or x_k not regular",
                        ),
                    ],
                    counters: Vec::new(),
                })
            },
        );
        Ok(claims)
    })
}

// ---------------------------------------------------------------------------
// yq-strata

const YQ_CLAIMS: &[ClaimTemplate] = &[
    ("yq-strata/membership", "Ad(k)y lies in g", PassRule::All),
    ("yq-strata/lower-bound", "Y_Q ⊂ g(≥ codim Q)", PassRule::All),
    (
        "yq-strata/exact-majority",
        "generic points of Y_Q have exactly codim Q coincidences",
        PassRule::Majority,
    ),
];

pub(super) fn yq_strata(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::SO, 5, 7)], 3);
    let trials = cfg.trials.unwrap_or(50);
    per_algebra(&sizes, |ctx| {
        let table = enumerate_orbits(ctx)?;
        let mut out = Vec::new();
        for q in &table.orbits {
            let mut claims = new_claims(YQ_CLAIMS, &ctx.label(), &format!("[{}]", q.id));
            let label = format!("yq/{}/{}", ctx.label(), q.id);
            run_trials(&mut claims, ctx.kind(), trials, cfg.seed, &label, |s| {
                let x = sample_yq(ctx, q, s, cfg.bounds)?;
                let c = coincidence_count(ctx, &x);
                Ok(Trial {
                    input: Some(x.clone()),
                    checks: vec![
                        check(ctx.is_member(&x), "not in g"),
                        check(c >= q.codim, format!("coincidence {c} < codim {}", q.codim)),
                        check(c == q.codim, format!("coincidence {c}")),
                    ],
                    counters: Vec::new(),
                })
            });
            claims[0].metric("codim", q.codim as u64);
            out.extend(claims);
        }
        Ok(out)
    })
}

// ---------------------------------------------------------------------------
// xi-families

const XI_CLAIMS: &[ClaimTemplate] = &[
    (
        "xi-families/shape",
        "sample has the Ξ shape with the requested pattern",
        PassRule::All,
    ),
    (
        "xi-families/parabolic-membership",
        "Ξ_{U…U} lies in the stable parabolic r",
        PassRule::All,
    ),
    (
        "xi-families/l-to-u",
        "conjugating an L slot by the flip representative gives the U slot with the flipped diagonal",
        PassRule::All,
    ),
    (
        "xi-families/flip-preserves-coincidence",
        "the flip does not change the coincidence count",
        PassRule::All,
    ),
    ("xi-families/lower-bound", "Ξ_{j_1…j_i} ⊂ g(≥ i)", PassRule::All),
    (
        "xi-families/exact-majority",
        "generic Ξ_{j_1…j_i} elements have exactly i coincidences",
        PassRule::Majority,
    ),
    (
        "xi-families/levi-fibre",
        "the Levi component of x ∈ r has the same partial-map value and coincidence count",
        PassRule::All,
    ),
    (
        "xi-families/z-spectrum",
        "z-coordinates of the Levi component lie in σ(x) ∩ σ(x_k)",
        PassRule::All,
    ),
];

pub(super) fn xi_families(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::SO, 5, 6)], 3);
    let trials = cfg.trials.unwrap_or(6);
    per_algebra(&sizes, |ctx| {
        let mut out = Vec::new();
        let flips_in_k: Vec<bool> = (0..xi_slots(ctx))
            .map(|j| flip_element(ctx, j).is_ok_and(|w| in_k(ctx, &w)))
            .collect();
        for i in 0..=xi_max(ctx) {
            let par = parabolic_for_codim(ctx, i)?;
            let mut claims = new_claims(XI_CLAIMS, &ctx.label(), &format!("[i={i}]"));
            for pattern in XiPattern::all(i) {
                let label = format!("xi/{}/{pattern}", ctx.label());
                run_trials(&mut claims, ctx.kind(), trials, cfg.seed, &label, |s| {
                    xi_trial(ctx, &par, &pattern, s, cfg.bounds)
                });
            }
            claims[0].metric("patterns", 1u64 << i);
            claims[2].metric("flip_in_k", json!(flips_in_k));
            out.extend(claims);
        }
        Ok(out)
    })
}

fn xi_trial(
    ctx: &AlgebraContext,
    par: &crate::korbits::ParabolicData,
    pattern: &XiPattern,
    seed: u64,
    bounds: SampleBounds,
) -> Result<Trial> {
    let i = pattern.len();
    let sample = sample_xi(ctx, pattern, seed, bounds)?;
    let x = &sample.matrix;
    let c = coincidence_count(ctx, x);
    let shape_ok = xi_coordinates(ctx, x).is_some_and(|co| co == sample.coords && co.satisfies(pattern));
    let all_upper = pattern.0.iter().all(|s| *s == Slot::U);

    let mut flip_ok = true;
    let mut flip_coin = true;
    let mut flip_detail = Vec::new();
    let mut any_l = false;
    for (j, slot) in pattern.0.iter().enumerate() {
        if *slot != Slot::L {
            continue;
        }
        any_l = true;
        let w = flip_element(ctx, j)?;
        let y = conjugate(ctx, &w, x)?;
        let good = xi_coordinates(ctx, &y).is_some_and(|co| {
            co.a == flipped_diagonal(ctx, &sample.coords.a, j)
                && co.v[j].is_zero()
                && !co.u[j].is_zero()
                && (0..xi_slots(ctx)).filter(|&m| m != j).all(|m| {
                    co.u[m].is_zero() == sample.coords.u[m].is_zero()
                        && co.v[m].is_zero() == sample.coords.v[m].is_zero()
                })
        });
        if !good {
            flip_ok = false;
            flip_detail.push(format!("slot {}", j + 1));
        }
        if coincidence_count(ctx, &y) != c {
            flip_coin = false;
        }
    }

    let (levi, zspec) = if all_upper && par.contains(ctx, x) {
        let xl = degenerate_to_levi(ctx, x, par)?;
        let same = partial_kw(ctx, &xl) == partial_kw(ctx, x) && coincidence_count(ctx, &xl) == c;
        let top = reduced_char_poly(ctx, x, ctx.n())?.char_poly();
        let sub = reduced_char_poly(ctx, x, ctx.n() - 1)?.char_poly();
        // Only centre directions inside k can be shared with x_k.
        let cartan = ctx.cartan_basis();
        let z_ok = par
            .z_coordinates(&xl)
            .iter()
            .zip(&par.z_coords)
            .filter(|(_, &j)| ctx.k_space().contains(&ctx.coords_of(&cartan[j])))
            .all(|(z, _)| top.eval(z).is_zero() && sub.eval(z).is_zero());
        (
            check(same, "Levi component changes the fibre"),
            check(z_ok, "z-coordinate outside a spectrum"),
        )
    } else if all_upper {
        (check(false, "x ∉ r"), check(false, "x ∉ r"))
    } else {
        (None, None)
    };

    Ok(Trial {
        input: Some(x.clone()),
        checks: vec![
            check(shape_ok, "coordinates do not round-trip"),
            if all_upper {
                check(par.contains(ctx, x), format!("not in r (pattern {pattern})"))
            } else {
                None
            },
            if any_l {
                check(flip_ok, format!("pattern {pattern}: {}", flip_detail.join(", ")))
            } else {
                None
            },
            if any_l {
                check(flip_coin, "coincidence changed")
            } else {
                None
            },
            check(c >= i, format!("coincidence {c} < {i}")),
            check(c == i, format!("coincidence {c}")),
            levi,
            zspec,
        ],
        counters: Vec::new(),
    })
}

// ---------------------------------------------------------------------------
// nilfibre

const NIL_CLAIMS: &[ClaimTemplate] = &[
    (
        "nilfibre/partial-map-zero",
        "Ad(K)n_± lies in the zero fibre of the partial map",
        PassRule::All,
    ),
    (
        "nilfibre/not-nsreg",
        "the zero fibre contains no n-strongly regular element (n > 3)",
        PassRule::All,
    ),
    (
        "nilfibre/not-sreg",
        "the zero fibre contains no strongly regular element (n > 3)",
        PassRule::All,
    ),
];

pub(super) fn nilfibre(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::SO, 3, 8)], 3);
    let trials = cfg.trials.unwrap_or(50);
    per_algebra(&sizes, |ctx| {
        let table = enumerate_orbits(ctx)?;
        let mut out = Vec::new();
        let low = ctx.n() == 3;
        for q in table.closed() {
            let mut claims = new_claims(NIL_CLAIMS, &ctx.label(), &format!("[{}]", q.id));
            let label = format!("nil/{}/{}", ctx.label(), q.id);
            run_trials(&mut claims, ctx.kind(), trials, cfg.seed, &label, |s| {
                let x = sample_nilfibre(ctx, q, s, cfg.bounds)?;
                let zero = partial_kw(ctx, &x).values.iter().all(ExactScalar::is_zero);
                Ok(Trial {
                    input: Some(x.clone()),
                    checks: vec![
                        check(zero, "nonzero partial-map value"),
                        if low {
                            None
                        } else {
                            check(!is_nsreg(ctx, &x), "n-strongly regular")
                        },
                        if low {
                            None
                        } else {
                            check(!is_sreg(ctx, &x), "strongly regular")
                        },
                    ],
                    counters: Vec::new(),
                })
            });
            out.extend(claims);
        }
        if low {
            out.push(lowdim_witness_claim(ctx, &table, cfg.seed)?);
        }
        Ok(out)
    })
}

/// Search bounded nilfibre samples of so(3) for a strongly regular element.
pub fn lowdim_sreg_witness(
    ctx: &AlgebraContext,
    table: &OrbitTable,
    seed: u64,
    attempts: u64,
) -> Result<Option<ExactMatrix>> {
    for t in 0..attempts {
        for q in table.closed() {
            let s = sampling::derive_seed(seed, "lowdim", t);
            let x = sample_nilfibre(ctx, q, s, SampleBounds::small())?;
            if partial_kw(ctx, &x).values.iter().all(ExactScalar::is_zero) && is_sreg(ctx, &x) {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

fn lowdim_witness_claim(ctx: &AlgebraContext, table: &OrbitTable, seed: u64) -> Result<ClaimResult> {
    let found = lowdim_sreg_witness(ctx, table, seed, 200)?;
    let mut c = single(
        "nilfibre/lowdim-sreg-witness",
        "the zero fibre of so(3) contains strongly regular elements",
        &ctx.label(),
        found.is_some(),
        "no strongly regular element in 200 bounded draws",
    );
    if let Some(x) = found {
        c.metric(
            "witness",
            serde_json::to_value(MatrixDocument::from_matrix(ctx.kind(), &x)).expect("serialises"),
        );
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// overlaps

pub(super) fn overlaps(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::SO, 4, 8)], 4);
    per_algebra(&sizes, |ctx| {
        let table = enumerate_orbits(ctx)?;
        let mut out = Vec::new();
        for q in table.closed() {
            let (dim, contains, detail) = overlap_data(ctx, &q.conjugator, &nilradical(ctx, q)?)?;
            let mut a = single(
                &format!("overlaps/nonzero[{}]", q.id),
                "z_k(n ∩ k) ∩ z_g(n) ≠ 0",
                &ctx.label(),
                dim > 0,
                format!("dimension {dim}"),
            );
            a.metric("dim", dim as u64);
            out.push(a);
            out.push(single(
                &format!("overlaps/highest-root[{}]", q.id),
                "the θ-fixed part of g_φ ⊕ g_{θφ} lies in the overlap",
                &ctx.label(),
                contains,
                detail,
            ));
        }
        Ok(out)
    })
}

/// (dim overlap, contains the θ-fixed highest-root vector, detail).
pub fn overlap_data(ctx: &AlgebraContext, v: &ExactMatrix, nil: &[ExactMatrix]) -> Result<(usize, bool, String)> {
    let dim = ctx.dim();
    let coords = |xs: &[ExactMatrix]| -> Vec<Vec<ExactScalar>> { xs.iter().map(|x| ctx.coords_of(x)).collect() };
    // n ∩ k as the kernel of θ − 1 on n.
    let moved = ExactMatrix::from_fn(dim, nil.len(), |r, c| {
        ctx.coords_of(&ctx.theta_apply(&nil[c]).sub(&nil[c]))[r].clone()
    });
    let nk: Vec<ExactMatrix> = moved
        .nullspace_vectors()
        .into_iter()
        .map(|c| {
            nil.iter()
                .zip(&c)
                .fold(ExactMatrix::zeros(ctx.n(), ctx.n()), |acc, (b, a)| acc.add(&b.scale(a)))
        })
        .collect();
    let zk = joint_centralizer(ctx, &nk, Ambient::K);
    let zg = joint_centralizer(ctx, nil, Ambient::G);
    let a = Subspace::span(dim, &coords(&zk.vectors))?;
    let b = Subspace::span(dim, &coords(&zg.vectors))?;
    let mut both = a.basis().to_vec();
    both.extend(b.basis().iter().cloned());
    let sum = crate::exactfield::span_dim(&both);
    let overlap = a.dim() + b.dim() - sum;

    let l = ctx.rank();
    let mut phi = vec![0i64; l];
    phi[0] = 1;
    phi[1] = 1;
    let e = conjugate(ctx, v, ctx.root_vector(&Root::from_coords(phi))?)?;
    let fixed = e.add(&ctx.theta_apply(&e));
    let c = ctx.coords_of(&fixed);
    let contains = !fixed.is_zero() && a.contains(&c) && b.contains(&c);
    Ok((overlap, contains, format!("overlap dimension {overlap}")))
}

// ---------------------------------------------------------------------------
// dimension-identities

pub(super) fn dimension_identities(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::GL, 2, 12), (Kind::SO, 3, 12)], 2);
    let trials = cfg.trials.unwrap_or(4);
    per_algebra(&sizes, |ctx| {
        let alg = ctx.label();
        let n = ctx.n();
        let kind = ctx.kind();
        let (rn, rk) = (kind.rank_of(n), kind.rank_of(n - 1));
        let dim_k = ctx.k_basis().len();
        let flag_g = ctx.flag_dim();
        let flag_k = (dim_k - rk) / 2;
        let mut out = vec![
            single(
                "dimension-identities/flag-varieties",
                "dim B_g + dim B_k = dim g − r_n − r_{n−1}",
                &alg,
                flag_g + flag_k + rn + rk == ctx.dim(),
                format!("{flag_g} + {flag_k} vs {} − {rn} − {rk}", ctx.dim()),
            ),
            single(
                "dimension-identities/quotient",
                "dim g − r_n − r_{n−1} = dim K",
                &alg,
                ctx.dim() - rn - rk == dim_k && dim_k == kind.dim_of(n - 1),
                format!("dim k = {dim_k}"),
            ),
            single(
                "dimension-identities/generator-count",
                "the partial map has r_n + r_{n−1} components",
                &alg,
                partial_len(ctx) == rn + rk,
                format!("{} components", partial_len(ctx)),
            ),
        ];
        if n <= 7 {
            let mut c = new_claims(
                &[(
                    "dimension-identities/fibre-certificate",
                    "a full-rank point certifies fibre dimension dim g − r_n − r_{n−1} = dim K",
                    PassRule::All,
                )],
                &alg,
                "",
            );
            run_trials(&mut c, kind, trials, cfg.seed, &format!("fibre/{alg}"), |s| {
                let x = g0_sample(ctx, s, cfg.bounds)?;
                let rank = kostant_jacobian_rank(ctx, &x);
                Ok(Trial {
                    input: Some(x),
                    checks: vec![check(
                        rank == rn + rk && ctx.dim() - rank == dim_k,
                        format!("rank {rank}"),
                    )],
                    counters: Vec::new(),
                })
            });
            out.extend(c);
        }
        Ok(out)
    })
}

// ---------------------------------------------------------------------------
// sreg-chain

const SREG_CLAIMS: &[ClaimTemplate] = &[
    (
        "sreg-chain/theta-sreg",
        "elements with no coincidences between consecutive levels are strongly regular",
        PassRule::All,
    ),
    (
        "sreg-chain/theta-full-rank",
        "on the chain set the full-chain differentials are independent",
        PassRule::All,
    ),
    (
        "sreg-chain/disjoint-implies-regular",
        "z_{g_i}(x_i) ∩ z_{g_{i+1}}(x_{i+1}) = 0 for all i forces every x_i regular",
        PassRule::All,
    ),
    (
        "sreg-chain/sreg-iff-full-rank",
        "strong regularity is independence of the full-chain differentials",
        PassRule::All,
    ),
];

pub(super) fn sreg_chain(cfg: &SuiteConfig) -> Result<Vec<ClaimResult>> {
    let sizes = cfg.sizes(&[(Kind::GL, 2, 6), (Kind::SO, 3, 6)], 2);
    let trials = cfg.trials.unwrap_or(100);
    per_algebra(&sizes, |ctx| {
        let table = orbit_table_if_so(ctx)?;
        let mut claims = new_claims(SREG_CLAIMS, &ctx.label(), "");
        let target = chain_target(ctx);
        run_trials(
            &mut claims,
            ctx.kind(),
            trials,
            cfg.seed,
            &format!("sreg/{}", ctx.label()),
            |s| {
                let x = theta_sample(ctx, table.as_ref(), s, cfg.bounds)?;
                let sreg = is_sreg(ctx, &x);
                let rank = full_jacobian_rank(ctx, &x);
                let (family, y) =
                    mixed_sample(ctx, table.as_ref(), sampling::derive_seed(s, "general", 0), cfg.bounds)?;
                let cond = chain_conditions(ctx, &y);
                let y_sreg = cond.all_disjoint();
                let y_rank = full_jacobian_rank(ctx, &y);
                let mut counters = vec![format!("general.{}", family.tag())];
                if y_sreg {
                    counters.push("general.sreg".into());
                }
                Ok(Trial {
                    input: Some(x.clone()),
                    checks: vec![
                        check(sreg, "not strongly regular"),
                        check(rank == target, format!("rank {rank} of {target}")),
                        check_on(
                            !y_sreg || cond.all_regular(),
                            &y,
                            format!("regular flags {:?}", cond.regular),
                        ),
                        check_on(
                            y_sreg == (y_rank == target),
                            &y,
                            format!("sreg = {y_sreg}, rank {y_rank} of {target}"),
                        ),
                    ],
                    counters,
                })
            },
        );
        Ok(claims)
    })
}

pub(super) fn unknown(name: &str) -> Error {
    Error::Usage(format!(
        "unknown suite {name:?}; expected one of {} or all",
        super::SUITES.join(", ")
    ))
}
