use std::collections::BTreeSet;

use eigencoin::exactfield::{ExactMatrix, ExactPoly, ExactScalar};
use eigencoin::harness::mixed_sample;
use eigencoin::invariants::{
    char_poly, coincidence_count, evaluate_generators, full_kw, full_len, generator_count, partial_kw, partial_len,
    pfaffian, stratum_of_value, EvenTop, InvariantVector,
};
use eigencoin::korbits::{enumerate_orbits, sample_k, xi_element, XiCoords};
use eigencoin::liealg::{adjoint, make_algebra, AlgebraContext, Kind};
use eigencoin::regularity::kostant_jacobian_rank_with;
use eigencoin::sampling::SampleBounds;
use proptest::prelude::*;

fn ctx(kind: Kind, n: usize) -> AlgebraContext {
    make_algebra(kind, n).unwrap()
}

fn ints(v: &[i64]) -> Vec<ExactScalar> {
    v.iter().map(|&x| ExactScalar::from_int(x)).collect()
}

fn element_from(ctx: &AlgebraContext, seed: &[i64]) -> ExactMatrix {
    let c: Vec<ExactScalar> = (0..ctx.dim())
        .map(|i| ExactScalar::from_int(seed[i % seed.len()] - (i as i64 % 4)))
        .collect();
    ctx.from_coords(&c)
}

/// Cayley transform (I − A)⁻¹(I + A) of an element A of g_m; lies in G_m.
fn group_element(ctx: &AlgebraContext, m: usize, seed: &[i64]) -> Option<ExactMatrix> {
    let level = ctx.level(m).unwrap();
    let mut a = ExactMatrix::zeros(ctx.n(), ctx.n());
    for (i, b) in level.basis.iter().enumerate() {
        let c = ExactScalar::from_frac(seed[i % seed.len()], 1 + (i as i64 % 3)).unwrap();
        a = a.add(&b.scale(&c));
    }
    let id = ExactMatrix::identity(ctx.n());
    let inv = id.sub(&a).inverse().ok()?;
    let g = inv.mul(&id.add(&a));
    (!g.det().ok()?.is_zero()).then_some(g)
}

fn linear(root: &ExactScalar) -> ExactPoly {
    ExactPoly::new(vec![-root, ExactScalar::one()])
}

fn multiplicity(p: &ExactPoly, root: &ExactScalar) -> usize {
    let mut p = p.clone();
    let mut k = 0;
    while !p.is_zero() && p.eval(root).is_zero() {
        p = p.div_rem(&linear(root)).unwrap().0;
        k += 1;
    }
    k
}

/// All roots of p among small rationals, or None when p does not split over
/// that candidate set.
fn small_rational_roots(p: &ExactPoly) -> Option<Vec<(ExactScalar, usize)>> {
    let mut found = Vec::new();
    let mut total = 0;
    for den in 1..=12i64 {
        for num in -60..=60i64 {
            let r = ExactScalar::from_frac(num, den).unwrap();
            if found.iter().any(|(s, _)| *s == r) {
                continue;
            }
            let k = multiplicity(p, &r);
            if k > 0 {
                found.push((r, k));
                total += k;
            }
        }
    }
    (total == p.degree().unwrap()).then_some(found)
}

/// Matching count between the spectra of x and x_k, read off from explicit
/// roots of the two characteristic polynomials.
fn matching_oracle(ctx: &AlgebraContext, x: &ExactMatrix) -> Option<usize> {
    let n = ctx.n();
    let big = char_poly(x);
    let small = char_poly(&ctx.k_level().restrict(x));
    let roots = small_rational_roots(&big)?;
    match ctx.kind() {
        Kind::GL => Some(roots.iter().map(|(r, k)| (*k).min(multiplicity(&small, r))).sum()),
        Kind::SO => {
            let zero_pairs = |p: &ExactPoly, m: usize| (multiplicity(p, &ExactScalar::zero()) - m % 2) / 2;
            let mut count = zero_pairs(&big, n).min(zero_pairs(&small, n - 1));
            let mut seen: Vec<ExactScalar> = Vec::new();
            for (r, k) in &roots {
                if r.is_zero() || seen.contains(&(r * r)) {
                    continue;
                }
                seen.push(r * r);
                count += (*k).min(multiplicity(&small, r));
            }
            Some(count)
        }
    }
}

#[test]
fn char_poly_examples() {
    assert_eq!(
        char_poly(&ExactMatrix::zeros(3, 3)),
        ExactPoly::from_ints(&[0, 0, 0, 1])
    );
    assert_eq!(
        char_poly(&ExactMatrix::diagonal(&ints(&[2, 0, -2]))),
        ExactPoly::from_ints(&[0, -4, 0, 1])
    );
    assert_eq!(
        char_poly(&ExactMatrix::from_ints(&[&[1, 2], &[3, 4]])),
        ExactPoly::from_ints(&[-2, -5, 1])
    );
}

#[test]
fn pfaffian_examples() {
    let so4 = ctx(Kind::SO, 4);
    assert!(pfaffian(&so4, &ExactMatrix::zeros(4, 4)).unwrap().is_zero());
    assert!(pfaffian(&ctx(Kind::SO, 5), &ExactMatrix::zeros(5, 5)).is_err());
    assert!(pfaffian(&ctx(Kind::GL, 4), &ExactMatrix::zeros(4, 4)).is_err());
    for seed in [[1, 2, -3], [4, 0, 1], [-2, 5, 7]] {
        let x = element_from(&so4, &seed);
        let pf = pfaffian(&so4, &x).unwrap();
        let c = char_poly(&x);
        assert_eq!(c.coeff(0), &pf * &pf);
        assert_eq!(c.coeff(1), ExactScalar::zero());
    }
}

#[test]
fn generator_examples() {
    assert_eq!(generator_count(Kind::SO, 4), 2);
    assert_eq!(generator_count(Kind::SO, 7), 3);
    assert_eq!(generator_count(Kind::GL, 5), 5);
    let gl3 = ctx(Kind::GL, 3);
    let x = ExactMatrix::diagonal(&ints(&[1, 2, 3]));
    assert_eq!(evaluate_generators(&gl3, &x, 3).unwrap(), ints(&[6, 11, 6]));
    for (kind, n) in [(Kind::GL, 4), (Kind::SO, 6), (Kind::SO, 7)] {
        let g = ctx(kind, n);
        for m in kind.chain_start()..=n {
            let v = evaluate_generators(&g, &ExactMatrix::zeros(n, n), m).unwrap();
            assert_eq!(v.len(), kind.rank_of(m));
            assert!(v.iter().all(ExactScalar::is_zero));
        }
        assert!(evaluate_generators(&g, &ExactMatrix::zeros(n, n), n + 1).is_err());
    }
}

#[test]
fn map_lengths_and_consistency() {
    for (kind, range) in [(Kind::GL, 2..=6), (Kind::SO, 3..=9)] {
        for n in range {
            let g = ctx(kind, n);
            let x = element_from(&g, &[2, -1, 3, 5]);
            let p = partial_kw(&g, &x);
            let f = full_kw(&g, &x);
            assert_eq!(p.values.len(), kind.rank_of(n - 1) + kind.rank_of(n));
            assert_eq!(p.values.len(), partial_len(&g));
            let start = kind.chain_start();
            assert_eq!(f.values.len(), (start..=n).map(|m| kind.rank_of(m)).sum::<usize>());
            assert_eq!(f.values.len(), full_len(&g));
            assert_eq!(&f.values[f.values.len() - p.values.len()..], &p.values[..]);
            let zero = full_kw(&g, &ExactMatrix::zeros(n, n));
            assert!(zero.values.iter().all(ExactScalar::is_zero));
        }
    }
}

#[test]
fn nilpotent_upper_triangular_elements_map_to_zero() {
    for n in [4, 5, 6, 8] {
        let g = ctx(Kind::SO, n);
        let mut x = ExactMatrix::zeros(n, n);
        for (i, r) in g.positive_roots().iter().enumerate() {
            x = x.add(&g.root_vector(r).unwrap().scale(&ExactScalar::from_int(i as i64 + 1)));
        }
        assert!(partial_kw(&g, &x).values.iter().all(ExactScalar::is_zero), "so({n})");
        assert_eq!(coincidence_count(&g, &x), g.kind().rank_of(n - 1));
    }
    let gl3 = ctx(Kind::GL, 3);
    let x = ExactMatrix::from_ints(&[&[0, 4, -1], &[0, 0, 7], &[0, 0, 0]]);
    assert!(full_kw(&gl3, &x).values.iter().all(ExactScalar::is_zero));
}

#[test]
fn cartan_values_use_the_same_coordinates_in_type_b() {
    let g = ctx(Kind::SO, 7);
    let h = g.cartan_element(&ints(&[1, 2, 3]));
    let v = partial_kw(&g, &h).values;
    // Both halves come from e_j(1, 4, 9) since h already lies in k; the k-half
    // ends with a Pfaffian, a square root of 36.
    assert_eq!(&v[..2], &ints(&[14, 49])[..]);
    assert_eq!(&v[2] * &v[2], ExactScalar::from_int(36));
    assert_eq!(&v[3..], &ints(&[14, 49, 36])[..]);
}

#[test]
fn coincidence_examples() {
    let gl3 = ctx(Kind::GL, 3);
    let x = ExactMatrix::from_ints(&[&[1, 3, -2], &[0, 2, 5], &[0, 0, 5]]);
    assert_eq!(coincidence_count(&gl3, &x), 2);

    let so5 = ctx(Kind::SO, 5);
    let xi = XiCoords {
        a: ints(&[1, 2]),
        u: ints(&[0, 0]),
        v: ints(&[3, 4]),
    };
    let x = xi_element(&so5, &xi).unwrap();
    assert_eq!(coincidence_count(&so5, &x), 2);
    assert_eq!(matching_oracle(&so5, &x), Some(2));

    let so4 = ctx(Kind::SO, 4);
    for seed in [[3, -7, 2, 11], [5, 1, -4, 9]] {
        assert_eq!(coincidence_count(&so4, &element_from(&so4, &seed)), 0);
    }
}

#[test]
fn coincidence_count_matches_spectral_matching() {
    let mut observed = BTreeSet::new();
    for (kind, n) in [
        (Kind::GL, 3),
        (Kind::GL, 4),
        (Kind::SO, 4),
        (Kind::SO, 5),
        (Kind::SO, 6),
        (Kind::SO, 7),
    ] {
        let g = ctx(kind, n);
        let table = (kind == Kind::SO).then(|| enumerate_orbits(&g).unwrap());
        let mut tested = 0;
        for seed in 0..80 {
            let (family, x) = mixed_sample(&g, table.as_ref(), seed, SampleBounds::small()).unwrap();
            if let Some(expected) = matching_oracle(&g, &x) {
                assert_eq!(
                    coincidence_count(&g, &x),
                    expected,
                    "{} {:?} seed {seed}",
                    g.label(),
                    family
                );
                tested += 1;
                observed.insert(expected);
            }
        }
        assert!(tested >= 20, "{}: only {tested} samples split", g.label());
    }
    assert!(observed.len() >= 3, "no variety in {observed:?}");
}

#[test]
fn stratum_of_value_examples() {
    for (kind, n) in [(Kind::GL, 4), (Kind::SO, 5), (Kind::SO, 6)] {
        let g = ctx(kind, n);
        let zero = partial_kw(&g, &ExactMatrix::zeros(n, n));
        assert_eq!(stratum_of_value(&g, &zero).unwrap(), kind.rank_of(n - 1));
        let mut short = zero.clone();
        short.values.pop();
        assert!(stratum_of_value(&g, &short).is_err());
        let table = (kind == Kind::SO).then(|| enumerate_orbits(&g).unwrap());
        for seed in 0..100 {
            let (_, x) = mixed_sample(&g, table.as_ref(), seed, SampleBounds::default()).unwrap();
            assert_eq!(
                stratum_of_value(&g, &partial_kw(&g, &x)).unwrap(),
                coincidence_count(&g, &x)
            );
        }
    }
}

#[test]
fn invariant_vectors_serialise() {
    let g = ctx(Kind::SO, 6);
    let x = element_from(&g, &[1, -2, 3]);
    for v in [partial_kw(&g, &x), full_kw(&g, &x)] {
        let text = v.to_json_value().to_string();
        assert_eq!(InvariantVector::from_json(&text).unwrap(), v);
    }
    assert!(InvariantVector::from_json(r#"{"algebra":"so","n":4}"#).is_err());
}

/// First so(4) element with coordinates in {−1, 0, 1} whose Jacobian rank
/// drops when the Pfaffian generator is replaced by the determinant.
fn pfaffian_witness_search(g: &AlgebraContext) -> Option<ExactMatrix> {
    (0..3usize.pow(g.dim() as u32)).find_map(|code| {
        let c: Vec<ExactScalar> = (0..g.dim())
            .map(|i| ExactScalar::from_int((code / 3usize.pow(i as u32) % 3) as i64 - 1))
            .collect();
        let x = g.from_coords(&c);
        let pf = kostant_jacobian_rank_with(g, &x, EvenTop::Pfaffian);
        let det = kostant_jacobian_rank_with(g, &x, EvenTop::Determinant);
        (pf != det).then_some(x)
    })
}

#[test]
fn pfaffian_is_needed_as_a_generator() {
    let g = ctx(Kind::SO, 4);
    let text = include_str!("fixtures/pfaffian_witness.json");
    let doc = eigencoin::liealg::MatrixDocument::parse(text).unwrap();
    let x = doc.matrix().unwrap();
    assert!(g.is_member(&x));
    let pf = kostant_jacobian_rank_with(&g, &x, EvenTop::Pfaffian);
    let det = kostant_jacobian_rank_with(&g, &x, EvenTop::Determinant);
    assert!(pf > det, "ranks {pf} and {det}");
    assert_eq!(pfaffian(&g, &x).unwrap(), ExactScalar::zero());
    assert_eq!(pfaffian_witness_search(&g), Some(x));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pfaffian_squares_to_the_determinant(l in 2usize..=4, seed in prop::collection::vec(-6i64..=6, 1..10)) {
        let g = ctx(Kind::SO, 2 * l);
        let x = element_from(&g, &seed);
        let pf = pfaffian(&g, &x).unwrap();
        prop_assert_eq!(&pf * &pf, g.form().mul(&x).det().unwrap());
    }

    #[test]
    fn spectra_are_symmetric(n in 3usize..=9, seed in prop::collection::vec(-6i64..=6, 1..10)) {
        let g = ctx(Kind::SO, n);
        let x = element_from(&g, &seed);
        let c = char_poly(&x);
        for j in 0..=n {
            if (n - j) % 2 == 1 {
                prop_assert!(c.coeff(j).is_zero());
            }
        }
    }

    #[test]
    fn generators_are_group_invariant(
        n in 3usize..=7,
        gl in any::<bool>(),
        seed in prop::collection::vec(-4i64..=4, 1..8),
        gseed in prop::collection::vec(-3i64..=3, 1..8),
    ) {
        let kind = if gl { Kind::GL } else { Kind::SO };
        let g = ctx(kind, n);
        let x = element_from(&g, &seed);
        for m in kind.chain_start().max(2)..=n {
            let Some(h) = group_element(&g, m, &gseed) else { continue };
            let y = adjoint(&g, &h, &x).unwrap();
            for j in m..=n {
                prop_assert_eq!(evaluate_generators(&g, &y, j).unwrap(), evaluate_generators(&g, &x, j).unwrap());
            }
        }
    }

    #[test]
    fn partial_map_is_k_invariant(n in 3usize..=8, seed in prop::collection::vec(-5i64..=5, 1..8), kseed in 0u64..1000) {
        let g = ctx(Kind::SO, n);
        let x = element_from(&g, &seed);
        let k = sample_k(&g, kseed, SampleBounds::small()).unwrap();
        let y = adjoint(&g, &k, &x).unwrap();
        prop_assert_eq!(partial_kw(&g, &y), partial_kw(&g, &x));
        prop_assert_eq!(coincidence_count(&g, &y), coincidence_count(&g, &x));
    }
}
