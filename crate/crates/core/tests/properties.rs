use std::collections::BTreeSet;

use monocomp::bounds::{
    best_provable_bound, check_main_inequality, evaluate_weighting, min_fractional_cover, round_weighting,
    z_lower_bound, BoundQuery, Weighting,
};
use monocomp::coloring::EdgeColoring;
use monocomp::components::{decompose, ComponentDecomposition};
use monocomp::constructions::{blow_up, gyarfas_coloring, two_color_extremal};
use monocomp::quadratic::QuadIrrational;
use monocomp::search::{exact_m, random_coloring, SearchConfig, Symmetry};
use monocomp::structure::{classify_r3, detect_disjoint_pair, find_spanning_cover, R3Case};
use monocomp::Rational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..len).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

/// `(color, vertex set, edge count)` of every component.
fn signature(d: &ComponentDecomposition) -> BTreeSet<(usize, Vec<usize>, u64)> {
    d.components()
        .iter()
        .map(|c| (c.color, c.vertices.clone(), c.edge_count))
        .collect()
}

fn all_colorings(n: usize, r: usize) -> impl Iterator<Item = EdgeColoring> {
    let m = pair_count(n);
    (0..(r as u64).pow(m as u32)).map(move |mut i| {
        let colors = (0..m)
            .map(|_| {
                let c = (i % r as u64) as u8;
                i /= r as u64;
                c
            })
            .collect();
        EdgeColoring::new(n, r, colors).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn component_identities(n in 1usize..=64, r in 1usize..=6, seed: u64) {
        let d = decompose(&random_coloring(n, r, seed).unwrap());
        prop_assert_eq!(d.total_vertex_incidences(), r * n);
        prop_assert_eq!(d.total_edges(), pair_count(n) as u64);
        for v in 0..n {
            prop_assert_eq!(d.components_containing(v).len(), r);
        }
    }

    #[test]
    fn vertex_relabeling_permutes_components(n in 2usize..=24, r in 1usize..=5, seed: u64) {
        let coloring = random_coloring(n, r, seed).unwrap();
        let perm = shuffled(n, seed ^ 1);
        let moved = decompose(&coloring.permute_vertices(&perm).unwrap());
        let expected: BTreeSet<_> = decompose(&coloring)
            .components()
            .iter()
            .map(|c| {
                let mut vs: Vec<usize> = c.vertices.iter().map(|&v| perm[v]).collect();
                vs.sort_unstable();
                (c.color, vs, c.edge_count)
            })
            .collect();
        prop_assert_eq!(signature(&moved), expected);
    }

    #[test]
    fn color_relabeling_permutes_components(n in 2usize..=24, r in 1usize..=5, seed: u64) {
        let coloring = random_coloring(n, r, seed).unwrap();
        let perm = shuffled(r, seed ^ 2);
        let moved = decompose(&coloring.permute_colors(&perm).unwrap());
        let expected: BTreeSet<_> = signature(&decompose(&coloring))
            .into_iter()
            .map(|(c, vs, e)| (perm[c], vs, e))
            .collect();
        prop_assert_eq!(signature(&moved), expected);
    }

    #[test]
    fn max_fraction_at_least_one_over_r_squared(n in 2usize..=40, r in 1usize..=6, seed: u64) {
        let z = decompose(&random_coloring(n, r, seed).unwrap()).max_edge_fraction().unwrap();
        prop_assert!(z * Rational::from_integer((r * r).into()) >= q(1, 1));
    }

    #[test]
    fn equivalent_vertices_share_every_color(n in 2usize..=16, r in 1usize..=4, seed: u64) {
        let d = decompose(&random_coloring(n, r, seed).unwrap());
        for class in d.equivalence_classes() {
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    prop_assert_eq!(d.shared_components(u, v).unwrap(), r);
                }
            }
        }
        for (u, v) in d.biconnected_pairs() {
            prop_assert_eq!(d.shared_components(u, v).unwrap(), 2);
        }
    }

    #[test]
    fn bound_monotone_in_x_and_gamma(
        r in 1usize..=6,
        g in 0i64..=60,
        x1 in 1i64..=40,
        dx in 0i64..=40,
        dg in 0i64..=60,
    ) {
        let gamma = q(g.min(10 * r as i64), 10);
        let gamma2 = q((g + dg).min(10 * r as i64), 10);
        let at = |gm: &Rational, x: i64| z_lower_bound(&BoundQuery::new(r, gm.clone(), q(x, 4)).unwrap()).unwrap();
        prop_assert!(at(&gamma, x1) >= at(&gamma, x1 + dx));
        prop_assert!(at(&gamma, x1) <= at(&gamma2, x1));
    }

    #[test]
    fn closed_forms_agree(r in 1usize..=6, g in 0i64..=60, xn in 1i64..=80) {
        // root of the quadratic versus the rationalized reciprocal form
        let gamma = q(g.min(10 * r as i64), 10);
        let x = q(xn, 4);
        let d = Rational::from_integer(r.into()) - &gamma;
        let a = &d * &d + q(2, 1) * &x;
        let b = &a * &a - q(4, 1) * &x * &x;
        let z = z_lower_bound(&BoundQuery::new(r, gamma.clone(), x.clone()).unwrap()).unwrap();
        let reciprocal_form = QuadIrrational::new(a.clone(), q(1, 1), b.clone()).recip().scale(&q(2, 1));
        prop_assert_eq!(&z, &reciprocal_form);
        let (af, bf) = (num_f64(&a), num_f64(&b));
        prop_assert!((z.to_f64() - 2.0 / (af + bf.sqrt())).abs() < 1e-12);
        // z solves the main inequality with equality: z·d² = (1 - x z)²
        let lhs = z.scale(&(&d * &d));
        let one_minus = QuadIrrational::from_rational(q(1, 1)).sub(&z.scale(&x));
        prop_assert_eq!(lhs, one_minus.mul(&one_minus));
    }

    #[test]
    fn rounding_never_increases_objective(n in 3usize..=12, r in 2usize..=4, seed: u64, den in 1i64..=5) {
        let coloring = random_coloring(n, r, seed).unwrap();
        let d = decompose(&coloring);
        let z = d.max_edge_fraction().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights: Vec<Rational> = (0..d.len())
            .map(|_| q(rand::Rng::gen_range(&mut rng, 0..=den), den))
            .collect();
        let w = Weighting::new(weights);
        if let Ok(rounded) = round_weighting(&d, &w, &z) {
            prop_assert!(rounded.objective <= rounded.input_objective);
            let stats = evaluate_weighting(&d, &Weighting::indicator(d.len(), &rounded.components)).unwrap();
            prop_assert_eq!(stats.x, rounded.x);
            prop_assert_eq!(stats.gamma_total, rounded.gamma);
        }
    }

    #[test]
    fn lp_duality_and_convexity(n in 2usize..=10, r in 1usize..=4, seed: u64, a in 0i64..=40, b in 0i64..=40) {
        let d = decompose(&random_coloring(n, r, seed).unwrap());
        let top = 10 * r as i64;
        let (g1, g2) = (q(a.min(top), 10), q(b.min(top), 10));
        let mid = (&g1 + &g2) / q(2, 1);
        let s1 = min_fractional_cover(&d, &g1).unwrap();
        let s2 = min_fractional_cover(&d, &g2).unwrap();
        let sm = min_fractional_cover(&d, &mid).unwrap();
        for s in [&s1, &s2, &sm] {
            s.verify(&d).unwrap();
            prop_assert_eq!(s.dual_objective(&d), s.optimum.clone());
        }
        prop_assert!(sm.optimum.clone() * q(2, 1) <= &s1.optimum + &s2.optimum);
    }

    #[test]
    fn best_bound_is_sound(n in 2usize..=9, r in 1usize..=4, seed: u64) {
        let d = decompose(&random_coloring(n, r, seed).unwrap());
        let best = best_provable_bound(&d).unwrap();
        prop_assert!(best.z <= QuadIrrational::from_rational(d.max_edge_fraction().unwrap()));
    }
}

fn num_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

#[test]
fn max_fraction_floor_exhaustive() {
    for n in 2..=5 {
        for r in 1..=3 {
            for coloring in all_colorings(n, r) {
                let z = decompose(&coloring).max_edge_fraction().unwrap();
                assert!(z * Rational::from_integer((r * r).into()) >= q(1, 1));
            }
        }
    }
}

#[test]
fn main_inequality_rejects_below_floor() {
    assert!(!check_main_inequality(&BoundQuery::integers(4, 0, 0).unwrap(), &q(1, 17)).unwrap());
    assert!(check_main_inequality(&BoundQuery::integers(2, 0, 0).unwrap(), &q(1, 4)).unwrap());
}

#[test]
fn blow_up_components_are_blob_expansions() {
    for base in [gyarfas_coloring(3).unwrap(), gyarfas_coloring(4).unwrap(), two_color_extremal(4).unwrap()] {
        for k in 1..=3 {
            let blown = decompose(&blow_up(&base, k).unwrap());
            let expected: BTreeSet<(usize, Vec<usize>)> = decompose(&base)
                .components()
                .iter()
                .map(|c| {
                    let vs = c.vertices.iter().flat_map(|&b| b * k..(b + 1) * k).collect();
                    (c.color, vs)
                })
                .collect();
            // base components of size 1 may split into pieces inside a blob,
            // so compare only components with at least two base vertices
            let got: BTreeSet<(usize, Vec<usize>)> = blown
                .components()
                .iter()
                .filter(|c| c.vertices.iter().map(|v| v / k).collect::<BTreeSet<_>>().len() > 1)
                .map(|c| (c.color, c.vertices.clone()))
                .collect();
            let big: BTreeSet<_> = expected.into_iter().filter(|(_, vs)| vs.len() > k).collect();
            assert_eq!(got, big, "k = {k}");
        }
    }
}

#[test]
fn blow_up_of_gyarfas_has_nine_classes() {
    for k in [2, 3, 4] {
        let d = decompose(&blow_up(&gyarfas_coloring(4).unwrap(), k).unwrap());
        let classes = d.equivalence_classes();
        assert_eq!(classes.len(), 9);
        assert!(classes.iter().all(|c| c.len() == k));
    }
}

#[test]
fn some_k4_four_coloring_has_a_biconnected_pair() {
    let found = all_colorings(4, 4).find_map(|c| {
        let d = decompose(&c);
        d.biconnected_pairs().first().copied().map(|p| (c, p))
    });
    let (coloring, (u, v)) = found.expect("a pair sharing two components");
    let d = decompose(&coloring);
    assert_eq!(d.shared_components(u, v).unwrap(), 2);
}

#[test]
fn search_symmetry_modes_agree() {
    for n in 2..=4 {
        for r in 1..=3 {
            let values: Vec<u64> = [Symmetry::None, Symmetry::Vertex, Symmetry::VertexColor]
                .into_iter()
                .map(|s| exact_m(&SearchConfig::new(n, r).with_symmetry(s)).unwrap().value)
                .collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]), "n = {n}, r = {r}: {values:?}");
        }
    }
}

#[test]
fn search_cutoff_is_admissible() {
    for (n, r) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
        let mut plain = SearchConfig::new(n, r).with_symmetry(Symmetry::None);
        plain.cutoff = false;
        let with = SearchConfig::new(n, r).with_symmetry(Symmetry::VertexColor);
        assert_eq!(exact_m(&plain).unwrap().value, exact_m(&with).unwrap().value);
    }
}

#[test]
fn two_color_values_monotone_and_above_lower_bound() {
    let mut previous = 0;
    for n in 2..=8 {
        let res = exact_m(&SearchConfig::new(n, 2).with_symmetry(Symmetry::VertexColor)).unwrap();
        let lower = (2 * n * n - n - 1).div_ceil(9) as u64;
        assert!(res.value >= lower, "n = {n}");
        assert!(res.value >= previous, "n = {n}");
        assert_eq!(decompose(&res.witness).max_edges(), res.value);
        previous = res.value;
    }
    for n in 2..=5 {
        let a = exact_m(&SearchConfig::new(n, 3)).unwrap().value;
        let b = exact_m(&SearchConfig::new(n + 1, 3).with_symmetry(Symmetry::VertexColor)).unwrap().value;
        assert!(a <= b, "n = {n}");
    }
}

#[test]
fn random_colors_are_balanced() {
    let (n, r, samples) = (8usize, 3usize, 10_000u64);
    let m = pair_count(n) as f64;
    let mut sums = vec![0u64; r];
    for seed in 0..samples {
        for (c, count) in random_coloring(n, r, seed).unwrap().color_counts().into_iter().enumerate() {
            sums[c] += count as u64;
        }
    }
    let p = 1.0 / r as f64;
    let sigma = (m * p * (1.0 - p) / samples as f64).sqrt();
    for s in sums {
        let mean = s as f64 / samples as f64;
        assert!((mean - m * p).abs() < 3.0 * sigma, "mean {mean} vs {}", m * p);
    }
}

#[test]
fn sweep_on_monochromatic_matches_grid_oracle() {
    let d = decompose(&EdgeColoring::monochromatic(5, 2).unwrap());
    let best = best_provable_bound(&d).unwrap();
    let golden_ratio_bound = QuadIrrational::new(q(3, 1), q(1, 1), q(5, 1)).recip().scale(&q(2, 1));
    assert_eq!(best.z, golden_ratio_bound);
    assert_eq!(best.gamma, q(1, 1));
    let mut grid_best = 0.0f64;
    for step in 0..=2000 {
        let gamma = q(step, 1000);
        let x = min_fractional_cover(&d, &gamma).unwrap().optimum;
        if let Ok(z) = z_lower_bound(&BoundQuery::new(2, gamma, x).unwrap()) {
            grid_best = grid_best.max(z.to_f64());
        }
    }
    assert!((grid_best - best.z.to_f64()).abs() < 1e-12);
}

#[test]
fn two_color_sweep_beats_hand_weighting() {
    let d = decompose(&two_color_extremal(7).unwrap());
    // big red clique and the blue component at weight 1
    let chosen: Vec<usize> = d
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.edge_count > 1)
        .map(|(i, _)| i)
        .collect();
    let stats = evaluate_weighting(&d, &Weighting::indicator(d.len(), &chosen)).unwrap();
    let hand = z_lower_bound(&BoundQuery::new(2, stats.gamma_min.clone(), stats.x.clone()).unwrap()).unwrap();
    let best = best_provable_bound(&d).unwrap();
    assert!(best.z >= hand);
    assert!(best.z <= QuadIrrational::from_rational(q(10, 21)));
}

#[test]
fn two_color_extremal_lifted_has_single_spanning_component() {
    let d = decompose(&two_color_extremal(7).unwrap().with_color_count(4).unwrap());
    let cover = find_spanning_cover(&d, 1).expect("one spanning component");
    assert_eq!(d.component(cover[0]).len(), 7);
    assert!(find_spanning_cover(&d, 2).is_some());
}

#[test]
fn lifted_coloring_has_disjoint_pair_of_unused_colors() {
    let d = decompose(&EdgeColoring::monochromatic(4, 4).unwrap());
    let (a, b) = detect_disjoint_pair(&d).expect("isolated vertices of unused colors");
    assert_ne!(d.component(a).color, d.component(b).color);
    assert!(d.component(a).vertices.iter().all(|v| !d.component(b).contains(*v)));
    assert!(detect_disjoint_pair(&decompose(&gyarfas_coloring(4).unwrap())).is_none());
}

#[test]
fn affine_three_coloring_has_two_components_per_color() {
    let d = decompose(&gyarfas_coloring(3).unwrap());
    assert_eq!(classify_r3(&d).unwrap(), R3Case::TwoEach);
}

#[test]
fn every_small_three_coloring_is_classified() {
    for n in 2..=5 {
        for coloring in all_colorings(n, 3) {
            let case = classify_r3(&decompose(&coloring)).unwrap();
            assert_ne!(case, R3Case::Unclassified, "{}", coloring.to_text());
        }
    }
}
