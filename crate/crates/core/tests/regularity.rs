use eigencoin::exactfield::{matrix_rank, ExactMatrix, ExactScalar};
use eigencoin::harness::{arrowhead, g0_sample, mixed_sample, theta_sample};
use eigencoin::korbits::{enumerate_orbits, nilradical, sample_nilfibre};
use eigencoin::liealg::{make_algebra, AlgebraContext, Kind};
use eigencoin::regularity::{
    centralizer, chain_conditions, chain_target, full_jacobian_rank, is_nsreg, is_regular, is_sreg, joint_centralizer,
    kostant_jacobian_rank, kostant_target, nsreg_intersection, stabilizer_dim, Ambient,
};
use eigencoin::sampling::SampleBounds;
use proptest::prelude::*;

fn ctx(kind: Kind, n: usize) -> AlgebraContext {
    make_algebra(kind, n).unwrap()
}

fn ints(v: &[i64]) -> Vec<ExactScalar> {
    v.iter().map(|&x| ExactScalar::from_int(x)).collect()
}

fn span_rank(ctx: &AlgebraContext, ms: &[ExactMatrix]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    matrix_rank(&ExactMatrix::from_rows(ms.iter().map(|m| ctx.coords_of(m)).collect()).unwrap())
}

fn jordan_block(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
}

#[test]
fn centralizer_examples() {
    let gl3 = ctx(Kind::GL, 3);
    assert_eq!(
        centralizer(&gl3, &ExactMatrix::diagonal(&ints(&[1, 2, 3])), Ambient::G).dim(),
        3
    );

    let x = jordan_block(3);
    let z = centralizer(&gl3, &x, Ambient::G);
    assert_eq!(z.dim(), 3);
    let powers = [ExactMatrix::identity(3), x.clone(), x.mul(&x)];
    assert_eq!(span_rank(&gl3, &[z.vectors.clone(), powers.to_vec()].concat()), 3);

    for g in [ctx(Kind::GL, 4), ctx(Kind::SO, 6), ctx(Kind::SO, 7)] {
        let zero = ExactMatrix::zeros(g.n(), g.n());
        assert_eq!(centralizer(&g, &zero, Ambient::G).dim(), g.dim());
        assert_eq!(centralizer(&g, &zero, Ambient::K).dim(), g.k_level().dim());
        let start = g.kind().chain_start();
        for m in start..=g.n() {
            assert_eq!(centralizer(&g, &zero, Ambient::Level(m)).dim(), g.kind().dim_of(m));
        }
        assert_eq!(joint_centralizer(&g, &[], Ambient::G).dim(), g.dim());
    }
}

#[test]
fn regularity_examples() {
    for n in 2..=6 {
        assert!(is_regular(&ctx(Kind::GL, n), &jordan_block(n), n));
    }
    let gl3 = ctx(Kind::GL, 3);
    assert!(!is_regular(&gl3, &ExactMatrix::diagonal(&ints(&[1, 1, 2])), 3));
    assert!(is_regular(&gl3, &ExactMatrix::diagonal(&ints(&[1, 5, 2])), 3));

    let gl2 = ctx(Kind::GL, 2);
    let e = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]);
    assert!(nsreg_intersection(&gl2, &e).is_trivial());
    assert!(is_nsreg(&gl2, &e));
}

#[test]
fn generic_nilradical_elements_are_not_nsreg() {
    for n in 4..=7 {
        let g = ctx(Kind::SO, n);
        let mut x = ExactMatrix::zeros(n, n);
        for (i, r) in g.positive_roots().iter().enumerate() {
            x = x.add(
                &g.root_vector(r)
                    .unwrap()
                    .scale(&ExactScalar::from_int(2 * i as i64 + 1)),
            );
        }
        let inter = nsreg_intersection(&g, &x);
        assert!(!inter.is_trivial(), "so({n})");
        let (xk, _) = g.theta_decompose(&x);
        for y in &inter.vectors {
            assert!(y.bracket(&x).is_zero() && y.bracket(&xk).is_zero());
            assert!(g.k_space().contains(&g.coords_of(y)));
        }
    }
}

#[test]
fn coincidence_free_samples_are_nsreg() {
    for (kind, n) in [
        (Kind::GL, 3),
        (Kind::GL, 5),
        (Kind::SO, 4),
        (Kind::SO, 5),
        (Kind::SO, 6),
    ] {
        let g = ctx(kind, n);
        for seed in 0..10 {
            let x = g0_sample(&g, seed, SampleBounds::default()).unwrap();
            assert!(is_nsreg(&g, &x), "{} seed {seed}", g.label());
            assert!(is_regular(&g, &x, n) && is_regular(&g, &x, n - 1));
            assert_eq!(stabilizer_dim(&g, &x), 0);
        }
    }
}

#[test]
fn jacobian_rank_at_zero() {
    // Only linear generators survive at 0: the two traces for gl, and the
    // so(2) Pfaffian when k = so(2).
    for (kind, n) in [
        (Kind::GL, 2),
        (Kind::GL, 4),
        (Kind::SO, 3),
        (Kind::SO, 4),
        (Kind::SO, 6),
        (Kind::SO, 7),
    ] {
        let g = ctx(kind, n);
        let expected = match (kind, n) {
            (Kind::GL, _) => 2,
            (Kind::SO, 3) => 1,
            _ => 0,
        };
        assert_eq!(
            kostant_jacobian_rank(&g, &ExactMatrix::zeros(n, n)),
            expected,
            "{}",
            g.label()
        );
    }
}

/// For a gl(n) arrowhead whose corner has distinct diagonal entries d_i, the
/// intersection z_k(x_k) ∩ z_g(x) is spanned by diagonal E_ii with both
/// x_{i,n} and x_{n,i} zero.
#[test]
fn arrowheads_match_the_closed_form() {
    for n in 3..=6 {
        let g = ctx(Kind::GL, n);
        let mut checked = 0;
        for seed in 0..60 {
            let x = arrowhead(&g, seed, SampleBounds::small());
            let d: Vec<&ExactScalar> = (0..n - 1).map(|i| x.get(i, i)).collect();
            if (0..d.len()).any(|i| (0..i).any(|j| d[i] == d[j])) {
                continue;
            }
            let free = (0..n - 1)
                .filter(|&i| x.get(i, n - 1).is_zero() && x.get(n - 1, i).is_zero())
                .count();
            assert_eq!(nsreg_intersection(&g, &x).dim(), free, "gl({n}) seed {seed}");
            assert_eq!(is_nsreg(&g, &x), free == 0);
            checked += 1;
        }
        assert!(checked >= 10, "gl({n}): {checked}");
    }
}

#[test]
fn chain_set_samples_are_strongly_regular() {
    for (kind, n) in [
        (Kind::GL, 3),
        (Kind::GL, 4),
        (Kind::GL, 5),
        (Kind::SO, 4),
        (Kind::SO, 5),
        (Kind::SO, 6),
    ] {
        let g = ctx(kind, n);
        let table = (kind == Kind::SO).then(|| enumerate_orbits(&g).unwrap());
        for seed in 0..6 {
            let x = theta_sample(&g, table.as_ref(), seed, SampleBounds::default()).unwrap();
            assert!(is_sreg(&g, &x), "{} seed {seed}", g.label());
            assert_eq!(full_jacobian_rank(&g, &x), chain_target(&g));
            if kind == Kind::GL {
                // Independent route: each corner pair is n-strongly regular in its own gl(i + 1).
                for i in 1..n {
                    let sub = ctx(Kind::GL, i + 1);
                    let block = ExactMatrix::from_fn(i + 1, i + 1, |a, b| x.get(a, b).clone());
                    assert!(is_nsreg(&sub, &block), "gl({n}) seed {seed} step {i}");
                }
            }
        }
    }
}

#[test]
fn nilfibre_elements_are_not_strongly_regular() {
    for n in 4..=7 {
        let g = ctx(Kind::SO, n);
        let table = enumerate_orbits(&g).unwrap();
        for q in table.closed() {
            for seed in 0..3 {
                let x = sample_nilfibre(&g, q, seed, SampleBounds::default()).unwrap();
                assert!(!is_sreg(&g, &x), "so({n}) {} seed {seed}", q.id);
                assert!(!is_nsreg(&g, &x));
            }
        }
    }
}

#[test]
fn closed_orbit_nilradicals_have_common_centralizers() {
    for n in 4..=8 {
        let g = ctx(Kind::SO, n);
        let table = enumerate_orbits(&g).unwrap();
        for q in table.closed() {
            let nil = nilradical(&g, q).unwrap();
            let z = joint_centralizer(&g, &nil, Ambient::K);
            assert!(z.dim() > 0, "so({n}) {}", q.id);
        }
        let plus = table.get("Q+").unwrap();
        let nil = nilradical(&g, plus).unwrap();
        let z = joint_centralizer(&g, &nil, Ambient::K);
        let mut phi = vec![0; g.rank()];
        phi[0] = 1;
        phi[1] = 1;
        let e = g.root_vector_by_coords(&phi).unwrap();
        let target = e.add(&g.theta_apply(e));
        let with = [z.vectors.clone(), vec![target]].concat();
        assert_eq!(span_rank(&g, &with), z.dim(), "so({n})");
        if n > 4 {
            assert_eq!(g.theta_apply(e), *e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn centralizer_dimension_matches_ad_rank(n in 3usize..=6, gl in any::<bool>(), seed in 0u64..10_000) {
        let g = ctx(if gl { Kind::GL } else { Kind::SO }, n);
        let table = (!gl).then(|| enumerate_orbits(&g).unwrap());
        let (_, x) = mixed_sample(&g, table.as_ref(), seed, SampleBounds::small()).unwrap();
        let z = centralizer(&g, &x, Ambient::G);
        let images: Vec<ExactMatrix> = g.basis().iter().map(|b| b.bracket(&x)).collect();
        prop_assert_eq!(z.dim(), g.dim() - span_rank(&g, &images));
        prop_assert!(z.vectors.iter().all(|y| y.bracket(&x).is_zero()));
    }

    #[test]
    fn nsreg_criteria_agree(n in 3usize..=6, gl in any::<bool>(), seed in 0u64..10_000) {
        let g = ctx(if gl { Kind::GL } else { Kind::SO }, n);
        let table = (!gl).then(|| enumerate_orbits(&g).unwrap());
        let (_, x) = mixed_sample(&g, table.as_ref(), seed, SampleBounds::default()).unwrap();
        let nsreg = is_nsreg(&g, &x);
        let rank = kostant_jacobian_rank(&g, &x);
        prop_assert_eq!(nsreg, rank == kostant_target(&g));
        prop_assert_eq!(kostant_jacobian_rank(&g, &x.scale(&ExactScalar::from_int(2))), rank);
        if nsreg {
            prop_assert!(is_regular(&g, &x, n) && is_regular(&g, &x, n - 1));
            prop_assert_eq!(stabilizer_dim(&g, &x), 0);
        }
        let chain = chain_conditions(&g, &x);
        if chain.all_disjoint() {
            prop_assert!(chain.all_regular());
        }
        prop_assert_eq!(is_sreg(&g, &x), chain.all_disjoint());
    }

    #[test]
    fn strong_regularity_matches_full_jacobian(n in 3usize..=5, gl in any::<bool>(), seed in 0u64..10_000) {
        let g = ctx(if gl { Kind::GL } else { Kind::SO }, n);
        let table = (!gl).then(|| enumerate_orbits(&g).unwrap());
        let (_, x) = mixed_sample(&g, table.as_ref(), seed, SampleBounds::default()).unwrap();
        prop_assert_eq!(is_sreg(&g, &x), full_jacobian_rank(&g, &x) == chain_target(&g));
    }
}
