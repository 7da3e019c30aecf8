use bethe_spectra::bethe::{
    char_poly_expanded, char_poly_factored, critical_factor, g_polynomials, level_multiplicities,
    smallest_eigenvalue, DegreeSequence,
};
use bethe_spectra::graphs::{
    build_bethe_tree, line_graph, random_rooted_tree, recognize_bethe_tree, Graph,
};
use bethe_spectra::oracle::{adjacency_matrix, char_poly_of_graph, eigenvalues_numeric};
use bethe_spectra::poly::{
    isolate_smallest_root, parse_rational, rational_to_decimal, BigRational, IntPoly, SturmChain,
};
use bethe_spectra::schwenk::{
    attach_complete, attach_to_all, coalesce, complete_char_poly, RootedCharPair,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_strategy(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 0..=max_len).prop_map(|c| IntPoly::from_i64s(&c))
}

fn degrees_strategy() -> impl Strategy<Value = DegreeSequence> {
    (prop::collection::vec(2usize..=4, 0..=3), 1usize..=5).prop_map(|(inner, dk)| {
        let mut d = vec![1];
        d.extend(inner);
        d.push(dk);
        DegreeSequence::new(d).unwrap()
    })
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(i.into())
}

proptest! {
    #[test]
    fn ring_laws(a in poly_strategy(6), b in poly_strategy(6), c in poly_strategy(6)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn exact_div_inverts_multiplication(a in poly_strategy(6), b in poly_strategy(5)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(5), b in poly_strategy(5), c in poly_strategy(3)) {
        prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = ac.gcd(&bc);
        prop_assert!(ac.exact_div(&g).is_ok());
        prop_assert!(bc.exact_div(&g).is_ok());
        prop_assert!(g.degree() >= c.degree());
    }

    #[test]
    fn polynomial_json_round_trip(a in poly_strategy(8)) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), a);
    }

    #[test]
    fn sturm_counts_integer_roots(roots in prop::collection::vec(-6i64..=6, 1..=6), lo in -8i64..=8, w in 0i64..=8) {
        let p = roots.iter().fold(IntPoly::one(), |acc, &r| &acc * &IntPoly::x_plus(-r));
        let hi = lo + w;
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let expected = distinct.iter().filter(|&&r| lo < r && r <= hi).count();
        let chain = SturmChain::new(&p).unwrap();
        prop_assert_eq!(chain.count_half_open(&rat(lo), &rat(hi)), expected);
        prop_assert_eq!(chain.distinct_real_roots(), distinct.len());
        let iv = isolate_smallest_root(&p, &parse_rational("1/1024").unwrap()).unwrap();
        prop_assert!(iv.is_point());
        prop_assert_eq!(iv.lo, rat(distinct[0]));
    }

    #[test]
    fn decimal_rendering_parses_back(n in -1_000_000i64..1_000_000, places in 0usize..8) {
        let r = BigRational::new(n.into(), BigInt::from(10u32).pow(places as u32));
        prop_assert_eq!(parse_rational(&rational_to_decimal(&r, places)).unwrap(), r);
    }

    #[test]
    fn char_poly_has_graph_shape(d in degrees_strategy()) {
        let chi = char_poly_expanded(&d).unwrap();
        let edges = level_multiplicities(&d).edge_count() as usize;
        prop_assert_eq!(chi.degree(), Some(edges));
        prop_assert_eq!(char_poly_factored(&d).expanded_degree() as usize, edges);
        prop_assert!(chi.is_monic());
        // trace 0, and -coefficient of λ^(n-2) counts the edges of L(B)
        prop_assert_eq!(chi.coeff(edges - 1), BigInt::from(0));
        prop_assume!(edges >= 2);
        let line = line_graph(&build_bethe_tree(&d).graph);
        prop_assert_eq!(chi.coeff(edges - 2), -BigInt::from(line.edge_count()));
    }

    #[test]
    fn critical_factor_and_root_at_minus_two(d in degrees_strategy()) {
        let g = g_polynomials(&d);
        let k = d.k();
        prop_assert_eq!(g.get(k).sign_at(&rat(-2)), 0);
        prop_assert_eq!(critical_factor(&d), &IntPoly::x_plus(2) * g.get(k - 1));
    }

    #[test]
    fn line_graph_spectrum_stays_above_minus_two(d in degrees_strategy()) {
        let chi = char_poly_expanded(&d).unwrap();
        let chain = SturmChain::new(&chi).unwrap();
        prop_assert_eq!(chain.count_at_most(&rat(-2)), 0);
        if d.dk() >= 2 {
            let iv = smallest_eigenvalue(&d, &parse_rational("1/1000000").unwrap()).unwrap();
            // the only root of χ at or below iv.hi is the one iv isolates
            prop_assert_eq!(chain.count_at_most(&iv.hi), 1);
            prop_assert_eq!(chain.count_in(&iv), 1);
        }
    }

    #[test]
    fn recognized_trees_have_the_same_line_graph(d in degrees_strategy()) {
        let tree = build_bethe_tree(&d).graph;
        prop_assert_eq!(tree.vertex_count(), tree.edge_count() + 1);
        let (found, _) = recognize_bethe_tree(&tree).expect("a Bethe tree is recognized");
        prop_assert_eq!(char_poly_expanded(&found).unwrap(), char_poly_expanded(&d).unwrap());
    }

    #[test]
    fn coalesce_is_symmetric(seed in any::<u64>(), n1 in 1usize..=9, n2 in 1usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = RootedCharPair::of_graph(&random_rooted_tree(n1, &mut rng));
        let b = RootedCharPair::of_graph(&random_rooted_tree(n2, &mut rng));
        prop_assert_eq!(coalesce(&a, &b), coalesce(&b, &a));
        prop_assert_eq!(coalesce(&a, &b).degree(), Some(n1 + n2 - 1));
    }

    #[test]
    fn attach_complete_agrees_with_attach_to_all(seed in any::<u64>(), n in 1usize..=9, s in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = RootedCharPair::of_graph(&random_rooted_tree(n, &mut rng));
        prop_assert_eq!(
            attach_complete(&h, s).unwrap().product(),
            attach_to_all(&complete_char_poly(s), s, &h).unwrap()
        );
    }

    #[test]
    fn oracle_matches_numeric_spectrum(seed in any::<u64>(), n in 1usize..=12, p in 0.1f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = bethe_spectra::graphs::random_graph(n, p, &mut rng);
        let chi = char_poly_of_graph(&g);
        let vals = eigenvalues_numeric(&adjacency_matrix(&g), 1e-10).unwrap();
        prop_assert!(vals.iter().sum::<f64>().abs() < 1e-8 * n as f64);
        let chain = SturmChain::new(&chi).unwrap();
        // each unit window holds as many distinct exact roots as numeric clusters
        for x in -12i64..12 {
            let (lo, hi) = (x as f64 + 0.5, x as f64 + 1.5);
            let mut inside: Vec<f64> = vals.iter().copied().filter(|&v| lo < v && v <= hi).collect();
            inside.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
            prop_assert_eq!(chain.count_half_open(&BigRational::from_float(lo).unwrap(), &BigRational::from_float(hi).unwrap()), inside.len());
        }
    }
}

/// Smallest root of `(χ_H - (s-1)χ_{H-v}) (χ_H + χ_{H-v})^{s-1}` is the
/// smallest root of `χ_H + χ_{H-v}`: either `factor_a`'s roots all lie
/// strictly above it, or the two factors share that root.
#[test]
fn smallest_root_comes_from_the_sum_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let eps = parse_rational("1/1024").unwrap();
    let mut parities = [0usize; 2];
    let (mut separated, mut shared) = (0, 0);
    for n in (1..=10).cycle().take(120) {
        let h = random_rooted_tree(n, &mut rng);
        parities[n % 2] += 1;
        let pair = RootedCharPair::of_graph(&h);
        for s in 2..=5 {
            let split = attach_complete(&pair, s).unwrap();
            let b_chain = SturmChain::new(&split.factor_b).unwrap();
            let a_chain = SturmChain::new(&split.factor_a).unwrap();
            let mut b_min = b_chain.isolate_smallest(&eps).unwrap();
            let product = SturmChain::new(&split.product()).unwrap();
            assert_eq!(
                product.count_at_most(&b_min.hi),
                1,
                "root of the product below χ_H + χ_(H-v)"
            );

            let common = split.factor_a.gcd(&split.factor_b);
            let common_here =
                common.degree() > Some(0) && SturmChain::new(&common).unwrap().count_in(&b_min) > 0;
            if common_here {
                shared += 1;
                continue;
            }
            let mut rounds = 0;
            while a_chain.count_at_most(&b_min.hi) > 0 {
                rounds += 1;
                assert!(
                    rounds < 200,
                    "factor_a's smallest root not above factor_b's for {h:?}, s={s}"
                );
                let half = b_min.width() / rat(2);
                b_min = b_chain.refine(&b_min, &half).unwrap();
            }
            separated += 1;
        }
    }
    assert!(parities[0] > 0 && parities[1] > 0);
    assert!(separated > 0);
    // shared roots are legitimate but rare; they are counted, not required
    println!("separated {separated}, shared {shared}");
}

/// `det(λI - A)` by cofactor expansion over polynomial entries; only
/// viable for tiny graphs but shares nothing with the library's methods.
fn brute_force_char_poly(g: &Graph) -> IntPoly {
    let n = g.vertex_count();
    let adj = g.neighbors();
    let entry = |i: usize, j: usize| -> IntPoly {
        if i == j {
            IntPoly::x()
        } else if adj[i].contains(&j) {
            IntPoly::from_i64s(&[-1])
        } else {
            IntPoly::zero()
        }
    };
    fn det(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> IntPoly) -> IntPoly {
        if rows.is_empty() {
            return IntPoly::one();
        }
        let mut acc = IntPoly::zero();
        for (c, &col) in cols.iter().enumerate() {
            let e = entry(rows[0], col);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != col).collect();
            let minor = &e * &det(&rows[1..], &rest, entry);
            acc = if c % 2 == 0 {
                &acc + &minor
            } else {
                &acc - &minor
            };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    det(&idx, &idx, &entry)
}

#[test]
fn oracle_agrees_with_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=7 {
        for _ in 0..4 {
            let g = bethe_spectra::graphs::random_graph(n, 0.5, &mut rng);
            assert_eq!(char_poly_of_graph(&g), brute_force_char_poly(&g), "{g:?}");
        }
    }
    for d in [[1, 2, 2], [1, 2, 3], [1, 3, 1]] {
        let d = DegreeSequence::new(d.to_vec()).unwrap();
        let line = line_graph(&build_bethe_tree(&d).graph);
        assert!(line.vertex_count() <= 9);
        assert_eq!(
            char_poly_expanded(&d).unwrap(),
            brute_force_char_poly(&line)
        );
    }
}
