use eigencoin::exactfield::{matrix_rank, ExactMatrix, ExactPoly, ExactScalar};
use eigencoin::invariants::{char_poly, coincidence_count, partial_kw};
use eigencoin::korbits::{
    borel_plus, classify_root_type, closed_orbit_count, conjugate, degenerate_to_levi, enumerate_orbits, flip_element,
    flipped_diagonal, in_k, monoid_action, nilradical, orbit_graph_json, orbit_graph_text, parabolic_for_codim,
    sample_k, sample_nilfibre, sample_xi, sample_yq, simple_roots, stable_parabolic, verify_parabolic, xi_coordinates,
    xi_element, xi_max, xi_slots, RootType, XiCoords, XiPattern,
};
use eigencoin::liealg::{is_group_member, make_algebra, weyl_representative, AlgebraContext, Kind, Root};
use eigencoin::sampling::{self, SampleBounds};
use proptest::prelude::*;

fn so(n: usize) -> AlgebraContext {
    make_algebra(Kind::SO, n).unwrap()
}

fn span_rank(ctx: &AlgebraContext, ms: &[ExactMatrix]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    matrix_rank(&ExactMatrix::from_rows(ms.iter().map(|m| ctx.coords_of(m)).collect()).unwrap())
}

fn same_span(ctx: &AlgebraContext, a: &[ExactMatrix], b: &[ExactMatrix]) -> bool {
    let r = span_rank(ctx, a);
    r == span_rank(ctx, b) && r == span_rank(ctx, &[a.to_vec(), b.to_vec()].concat())
}

fn combination(rng: &mut sampling::SeededRng, basis: &[ExactMatrix]) -> ExactMatrix {
    let n = basis[0].rows();
    basis.iter().fold(ExactMatrix::zeros(n, n), |acc, b| {
        acc.add(&b.scale(&sampling::random_rational(rng, SampleBounds::default())))
    })
}

fn root(l: usize, terms: &[(usize, i64)]) -> Root {
    let mut c = vec![0; l];
    for &(i, s) in terms {
        c[i] += s;
    }
    Root::from_coords(c)
}

#[test]
fn orbit_counts_and_codimensions() {
    assert_eq!(enumerate_orbits(&so(7)).unwrap().codims(), vec![3, 3, 2, 1, 0]);
    assert_eq!(enumerate_orbits(&so(6)).unwrap().codims(), vec![2, 1, 0]);
    assert_eq!(enumerate_orbits(&so(3)).unwrap().orbits.len(), 3);
    for n in 3..=12 {
        let g = so(n);
        let l = g.rank();
        let table = enumerate_orbits(&g).unwrap();
        let (count, closed, closed_codim) = if n % 2 == 1 { (l + 2, 2, l) } else { (l, 1, l - 1) };
        assert_eq!(table.orbits.len(), count, "so({n})");
        assert_eq!(table.closed().count(), closed);
        assert_eq!(closed_orbit_count(&g).unwrap(), closed);
        let mut expected: Vec<usize> = (0..closed_codim).collect();
        expected.extend(std::iter::repeat_n(closed_codim, closed));
        expected.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(table.codims(), expected);
        // Closed orbits have the dimension of the flag variety of k.
        let m = (n - 1) / 2;
        let k_flag = if n % 2 == 0 { m * m } else { m * (m.max(1) - 1) };
        assert!(table.closed().all(|q| q.dim(&g) == k_flag));
    }
    assert!(enumerate_orbits(&make_algebra(Kind::GL, 4).unwrap()).is_err());
}

#[test]
fn codimension_recomputed_from_representatives() {
    for n in 4..=9 {
        let g = so(n);
        let k = g.k_basis().to_vec();
        for q in &enumerate_orbits(&g).unwrap().orbits {
            assert!(is_group_member(&g, &q.conjugator));
            let b = &q.rep_borel;
            assert_eq!(span_rank(&g, b), borel_plus(&g).len());
            let k_cap_b = span_rank(&g, b) + k.len() - span_rank(&g, &[b.clone(), k.clone()].concat());
            let orbit_dim = k.len() - k_cap_b;
            assert_eq!(q.codim, g.flag_dim() - orbit_dim, "so({n}) {}", q.id);
            // dim b + dim K·b = dim g − codim
            assert_eq!(b.len() + orbit_dim, g.dim() - q.codim);
        }
    }
}

#[test]
fn orbit_graphs_are_stable() {
    for (n, nodes, golden) in [
        (5, 4, include_str!("fixtures/so5_orbits.txt")),
        (4, 2, include_str!("fixtures/so4_orbits.txt")),
    ] {
        let table = enumerate_orbits(&so(n)).unwrap();
        let text = orbit_graph_text(&table);
        assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), nodes);
        assert_eq!(text, golden);
        assert_eq!(text, orbit_graph_text(&enumerate_orbits(&so(n)).unwrap()));
        let json = orbit_graph_json(&table);
        assert_eq!(json["nodes"].as_array().unwrap().len(), nodes);
        assert_eq!(
            json.to_string(),
            orbit_graph_json(&enumerate_orbits(&so(n)).unwrap()).to_string()
        );
    }
}

#[test]
fn root_types_for_the_standard_borel() {
    for l in 2..=4 {
        let g = so(2 * l + 1);
        let table = enumerate_orbits(&g).unwrap();
        let theta = &table.get("Q+").unwrap().theta_q;
        for alpha in g.positive_roots() {
            let t = classify_root_type(&g, theta, &alpha).unwrap();
            let short = alpha.coords.iter().filter(|c| **c != 0).count() == 1;
            let want = if short {
                RootType::NoncompactImaginary
            } else {
                RootType::CompactImaginary
            };
            assert_eq!(t, want, "so({}) {}", 2 * l + 1, alpha.label());
        }

        let g = so(2 * l);
        let table = enumerate_orbits(&g).unwrap();
        let theta = &table.get("Q+").unwrap().theta_q;
        for i in 0..l - 1 {
            let alpha = root(l, &[(i, 1), (l - 1, -1)]);
            assert_eq!(classify_root_type(&g, theta, &alpha).unwrap(), RootType::ComplexStable);
            assert_eq!(theta.image(&alpha).coords, root(l, &[(i, 1), (l - 1, 1)]).coords);
        }
    }
}

#[test]
fn monoidal_action_examples() {
    for l in 2..=4 {
        let g = so(2 * l + 1);
        let table = enumerate_orbits(&g).unwrap();
        let plus = table.get("Q+").unwrap();
        let up = monoid_action(&g, plus, l - 1).unwrap();
        assert_eq!(up.codim, l - 1);
        assert_eq!(up.id, table.get(&format!("Q{}", l - 1)).unwrap().id);
        let same = monoid_action(&g, plus, 0).unwrap();
        assert_eq!((same.codim, same.word.len()), (plus.codim, plus.word.len()));

        let g = so(2 * l);
        let table = enumerate_orbits(&g).unwrap();
        let plus = table.get("Q+").unwrap();
        let a = monoid_action(&g, plus, l - 2).unwrap();
        let b = monoid_action(&g, plus, l - 1).unwrap();
        assert_eq!((a.codim, b.codim), (l - 2, l - 2));
        assert_eq!(a.id, b.id);
        assert_eq!(a.theta_q, b.theta_q);
    }
}

#[test]
fn minus_borel_is_the_reflected_plus_borel() {
    for l in 1..=4 {
        let g = so(2 * l + 1);
        let table = enumerate_orbits(&g).unwrap();
        let minus = table.get("Q-").unwrap();
        let s = weyl_representative(&g, &simple_roots(&g)[l - 1]).unwrap();
        let reflected: Vec<ExactMatrix> = borel_plus(&g).iter().map(|x| conjugate(&g, &s, x).unwrap()).collect();
        assert!(same_span(&g, &minus.rep_borel, &reflected), "so({})", 2 * l + 1);
    }
}

#[test]
fn k_samples() {
    for n in [3, 4, 5, 8] {
        let g = so(n);
        for seed in 0..5 {
            let k = sample_k(&g, seed, SampleBounds::default()).unwrap();
            assert!(in_k(&g, &k));
            assert_eq!(k.transpose().mul(g.form()).mul(&k), *g.form());
            assert_eq!(k.det().unwrap(), ExactScalar::one());
            let x = g.from_coords(
                &(0..g.dim())
                    .map(|i| ExactScalar::from_int(i as i64 - 2))
                    .collect::<Vec<_>>(),
            );
            assert!(g.is_member(&conjugate(&g, &k, &x).unwrap()));
        }
        assert_eq!(
            sample_k(&g, 3, SampleBounds::default()).unwrap(),
            sample_k(&g, 3, SampleBounds::default()).unwrap()
        );
    }
}

#[test]
fn stratum_samples_respect_the_lower_bound() {
    for n in 4..=7 {
        let g = so(n);
        let table = enumerate_orbits(&g).unwrap();
        for q in &table.orbits {
            for seed in 0..5 {
                let x = sample_yq(&g, q, seed, SampleBounds::default()).unwrap();
                assert!(g.membership_check(&x).unwrap());
                assert!(coincidence_count(&g, &x) >= q.codim, "so({n}) {} seed {seed}", q.id);
            }
        }
    }
}

#[test]
fn nilfibre_samples() {
    for n in 3..=7 {
        let g = so(n);
        let table = enumerate_orbits(&g).unwrap();
        for q in table.closed() {
            assert_eq!(nilradical(&g, q).unwrap().len(), g.flag_dim());
            for seed in 0..4 {
                let x = sample_nilfibre(&g, q, seed, SampleBounds::default()).unwrap();
                assert!(partial_kw(&g, &x).values.iter().all(ExactScalar::is_zero));
            }
        }
        if let Some(open) = table.orbits.iter().find(|q| !q.closed) {
            assert!(nilradical(&g, open).is_err());
        }
    }
}

#[test]
fn stable_parabolics() {
    let g = so(5);
    let p = stable_parabolic(&g, 1).unwrap();
    assert_eq!((p.lss_size, p.z_basis.len()), (3, 1));
    for n in 3..=10 {
        let g = so(n);
        let l = g.rank();
        let range = if n % 2 == 1 { 0..l } else { 1..l };
        for i in range.clone() {
            let p = stable_parabolic(&g, i).unwrap();
            let checks = verify_parabolic(&g, &p);
            assert!(checks.all(), "so({n}) i={i}: {checks:?}");
            let z = if n % 2 == 1 { i } else { i - 1 };
            assert_eq!(checks.z_dim, z);
            assert_eq!(p.lss_size, if n % 2 == 1 { 2 * (l - i) + 1 } else { 2 * (l - i) + 2 });
            // The theta image of r spans r.
            let image: Vec<ExactMatrix> = p.r_basis.iter().map(|x| g.theta_apply(x)).collect();
            assert!(same_span(&g, &p.r_basis, &image));
        }
        assert!(stable_parabolic(&g, range.end).is_err());
    }
}

#[test]
fn degeneration_to_the_levi_factor() {
    for n in [5, 6, 7, 8] {
        let g = so(n);
        let l = g.rank();
        let range = if n % 2 == 1 { 0..l } else { 1..l };
        for i in range {
            let p = stable_parabolic(&g, i).unwrap();
            let levi = [p.z_basis.clone(), p.lss_basis.clone()].concat();
            let mut rng = sampling::rng(sampling::derive_seed(n as u64, "levi", i as u64));
            let y = combination(&mut rng, &levi);
            assert_eq!(degenerate_to_levi(&g, &y, &p).unwrap(), y);
            for t in 0..3 {
                let mut rng = sampling::rng(sampling::derive_seed(n as u64, "r", (10 * i + t) as u64));
                let x = combination(&mut rng, &p.r_basis);
                let xl = degenerate_to_levi(&g, &x, &p).unwrap();
                assert_eq!(partial_kw(&g, &xl), partial_kw(&g, &x));
                assert_eq!(coincidence_count(&g, &xl), coincidence_count(&g, &x));
                // z-coordinates of x_l are eigenvalues of both x and x_k.
                let chi = char_poly(&x);
                let chi_k = char_poly(&g.k_level().restrict(&x));
                for c in p.z_coordinates(&xl) {
                    assert!(chi.eval(&c).is_zero() && chi_k.eval(&c).is_zero(), "so({n}) i={i}");
                }
            }
            let outside = g.root_vector(&simple_roots(&g)[0].neg()).unwrap();
            if !p.contains(&g, outside) {
                assert!(degenerate_to_levi(&g, outside, &p).is_err());
            }
        }
    }
}

#[test]
fn upper_xi_slices_lie_in_the_parabolic() {
    for n in 5..=9 {
        let g = so(n);
        for i in 0..=xi_max(&g) {
            let p = parabolic_for_codim(&g, i).unwrap();
            for seed in 0..3 {
                let s = sample_xi(&g, &XiPattern::all_upper(i), seed, SampleBounds::default()).unwrap();
                assert!(p.contains(&g, &s.matrix), "so({n}) i={i}");
                assert!(coincidence_count(&g, &s.matrix) >= i);
            }
        }
    }
    assert!(sample_xi(&so(5), &XiPattern::all_upper(3), 0, SampleBounds::default()).is_err());
}

#[test]
fn flips_turn_lower_slots_into_upper_slots() {
    for n in 5..=9 {
        let g = so(n);
        let slots = xi_slots(&g);
        for j in 0..slots {
            let w = flip_element(&g, j).unwrap();
            assert!(is_group_member(&g, &w));
            if g.is_type_d() {
                assert!(in_k(&g, &w), "so({n}) slot {j}");
            }
            let mut pattern = vec!['U'; slots];
            pattern[j] = 'L';
            let pattern: XiPattern = pattern.iter().collect::<String>().parse().unwrap();
            for seed in 0..3 {
                let s = sample_xi(&g, &pattern, seed, SampleBounds::default()).unwrap();
                let moved = conjugate(&g, &w, &s.matrix).unwrap();
                let c = xi_coordinates(&g, &moved).expect("stays in the slice");
                assert_eq!(c.a, flipped_diagonal(&g, &s.coords.a, j));
                assert!(c.v[j].is_zero() && !c.u[j].is_zero(), "so({n}) slot {j}");
                assert_eq!(coincidence_count(&g, &moved), coincidence_count(&g, &s.matrix));
            }
        }
    }
}

/// Xi coordinates with |a_j| distinct and nonzero.
fn xi_coords(g: &AlgebraContext, a_seed: &[i64], uv: &[i64]) -> XiCoords {
    let l = g.rank();
    let slots = xi_slots(g);
    let a: Vec<ExactScalar> = (0..l)
        .map(|j| ExactScalar::from_int((j as i64 + 1) * if a_seed[j % a_seed.len()] < 0 { -1 } else { 1 }))
        .collect();
    let u = (0..slots)
        .map(|j| ExactScalar::from_int(uv[(2 * j) % uv.len()]))
        .collect();
    let v = (0..slots)
        .map(|j| ExactScalar::from_int(uv[(2 * j + 1) % uv.len()]))
        .collect();
    XiCoords { a, u, v }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Each slot contributes one coincidence exactly when u_j v_j = 0.
    #[test]
    fn xi_coincidences_count_vanishing_products(
        n in 4usize..=9,
        a_seed in prop::collection::vec(-1i64..=1, 1..5),
        uv in prop::collection::vec(-3i64..=3, 1..10),
    ) {
        let g = so(n);
        let c = xi_coords(&g, &a_seed, &uv);
        let x = xi_element(&g, &c).unwrap();
        prop_assert_eq!(xi_coordinates(&g, &x), Some(c.clone()));
        let zeros = (0..xi_slots(&g)).filter(|&j| (&c.u[j] * &c.v[j]).is_zero()).count();
        prop_assert_eq!(coincidence_count(&g, &x), zeros);
    }

    /// For so(2l+1): λ⁻¹χ(λ) = P(μ) − κ Σ u_j v_j P(μ)/(μ − a_j²) with P = Π (μ − a_j²).
    #[test]
    fn odd_xi_characteristic_polynomial(
        l in 1usize..=4,
        a_seed in prop::collection::vec(-1i64..=1, 1..5),
        uv in prop::collection::vec(-3i64..=3, 1..10),
    ) {
        let g = so(2 * l + 1);
        let c = xi_coords(&g, &a_seed, &uv);
        let x = xi_element(&g, &c).unwrap();
        let sq: Vec<ExactScalar> = c.a.iter().map(|a| a * a).collect();
        let full = ExactPoly::from_roots(&sq);
        let mut correction = ExactPoly::zero();
        for j in 0..l {
            let others: Vec<ExactScalar> = (0..l).filter(|&k| k != j).map(|k| sq[k].clone()).collect();
            correction = correction.add(&ExactPoly::from_roots(&others).scale(&(&c.u[j] * &c.v[j])));
        }
        let chi = char_poly(&x);
        let q = ExactPoly::new((0..=l).map(|i| chi.coeff(2 * i + 1)).collect());
        let matches = [-2i64, -1, 1, 2].iter().any(|&kappa| {
            q == full.sub(&correction.scale(&ExactScalar::from_int(kappa)))
        });
        prop_assert!(matches, "{:?}", q);
    }
}
