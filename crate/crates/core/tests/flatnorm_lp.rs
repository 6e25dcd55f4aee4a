use flatnorm::lp::compare_with_oracle;
use flatnorm::{exhaustive_oracle, flatnorm_lp, Chain, GridComplex64, Method, Topology};
use proptest::prelude::*;

fn topology() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::Cubical), Just(Topology::RightTriangulated)]
}

fn complex_and_edges(max_side: usize, coeff: i64) -> impl Strategy<Value = (GridComplex64, Vec<i64>)> {
    (1..=max_side, 1..=max_side, topology()).prop_flat_map(move |(w, h, t)| {
        let k = GridComplex64::new(w, h, 1.0, t).unwrap();
        let n = k.num_edges();
        (Just(k), prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -coeff..=coeff], n))
    })
}

fn complex_and_faces(max_side: usize) -> impl Strategy<Value = (GridComplex64, Vec<i64>)> {
    (1..=max_side, 1..=max_side, topology()).prop_flat_map(|(w, h, t)| {
        let k = GridComplex64::new(w, h, 1.0, t).unwrap();
        let n = k.num_faces();
        (Just(k), prop::collection::vec(prop_oneof![Just(0i64), -2i64..=2], n))
    })
}

fn lambda() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.1), Just(0.5), Just(1.0), Just(3.0), Just(10.0)]
}

/// `M(T − ∂S) + λM(S)` evaluated from scratch for a candidate `S`.
fn objective(k: &GridComplex64, t: &Chain, s: &Chain, lambda: f64) -> f64 {
    let r = t.sub(&k.boundary(s).unwrap()).unwrap();
    k.mass(&r).unwrap() + lambda * k.mass(s).unwrap()
}

#[test]
fn zero_input_short_circuits() {
    let k = GridComplex64::cubical(4, 4, 1.0).unwrap();
    let r = flatnorm_lp(&k, &Chain::zero(&k, 1).unwrap(), 1.0).unwrap();
    assert_eq!(r.value, 0.0);
    assert_eq!(r.diagnostics.iterations, 0);
    assert!(r.s_chain.is_zero() && r.residual_chain.is_zero());
}

#[test]
fn rejects_bad_arguments() {
    let k = GridComplex64::cubical(2, 2, 1.0).unwrap();
    let other = GridComplex64::cubical(2, 2, 1.0).unwrap();
    let t = Chain::cell(&k, 1, 0, 1).unwrap();
    assert!(flatnorm_lp(&k, &t, 0.0).is_err());
    assert!(flatnorm_lp(&k, &t, f64::NAN).is_err());
    assert!(flatnorm_lp(&other, &t, 1.0).is_err());
    assert!(flatnorm_lp(&k, &Chain::cell(&k, 2, 0, 1).unwrap(), 1.0).is_err());
}

#[test]
fn pixel_square_in_l1() {
    for a in [2usize, 4] {
        let k = GridComplex64::cubical(a + 2, a + 2, 1.0).unwrap();
        let cells: Vec<(usize, i64)> =
            (1..=a).flat_map(|y| (1..=a).map(move |x| (x, y))).map(|(x, y)| (k.pixel_faces(x, y)[0], 1)).collect();
        let square = Chain::from_cells(&k, 2, cells).unwrap();
        let t = k.boundary(&square).unwrap();
        let af = a as f64;
        for lambda in [0.5 / af, 1.0 / af, 4.0 / af, 16.0 / af] {
            let r = flatnorm_lp(&k, &t, lambda).unwrap();
            let expected = (4.0 * af).min(lambda * af * af);
            assert!((r.value - expected).abs() < 1e-6, "a={a} lambda={lambda}: {}", r.value);
        }
    }
}

#[test]
fn loop_with_a_spike_keeps_the_spike() {
    // an isolated edge has no cheaper filling; a unit square loop is filled
    let k = GridComplex64::cubical(3, 3, 1.0).unwrap();
    let face = Chain::cell(&k, 2, 4, 1).unwrap();
    let lonely = Chain::cell(&k, 1, 0, 2).unwrap();
    let t = k.boundary(&face).unwrap().add(&lonely).unwrap();
    let r = flatnorm_lp(&k, &t, 1.0).unwrap();
    assert!((r.value - 3.0).abs() < 1e-9);
    assert_eq!(r.s_chain, face);
    assert_eq!(r.residual_chain, lonely);
}

#[test]
fn triangulated_oracle_sample() {
    let k = GridComplex64::triangulated(2, 2, 1.0).unwrap();
    let t = Chain::from_cells(&k, 1, [(0, 1), (3, -1), (7, 1), (10, 1), (12, -1)]).unwrap();
    for lambda in [0.1, 1.0, 2.0, 10.0] {
        let lp = flatnorm_lp(&k, &t, lambda).unwrap();
        let oracle = exhaustive_oracle(&k, &t, lambda, 2).unwrap();
        assert_eq!(oracle.method, Method::Exhaustive);
        let cmp = compare_with_oracle(&lp, &oracle, 2);
        assert!(!cmp.lp_exceeds_range);
        assert!(cmp.agrees(1e-7), "lambda {lambda}: {cmp:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn optimum_is_integral((k, dense) in complex_and_edges(8, 2), lambda in lambda()) {
        let t = Chain::from_dense(&k, 1, &dense).unwrap();
        let r = flatnorm_lp(&k, &t, lambda).unwrap();
        prop_assert!(r.diagnostics.integral, "{:?}", r.diagnostics.fractional_s);
        prop_assert!(r.diagnostics.fractional_s.is_none());
        prop_assert_eq!(r.input_chain(&k).unwrap(), t);
    }

    #[test]
    fn reported_value_is_the_objective((k, dense) in complex_and_edges(6, 2), lambda in lambda()) {
        let t = Chain::from_dense(&k, 1, &dense).unwrap();
        let r = flatnorm_lp(&k, &t, lambda).unwrap();
        let direct = objective(&k, &t, &r.s_chain, lambda);
        prop_assert!((r.value - direct).abs() <= 1e-9);
        prop_assert!((r.mass_residual + lambda * r.mass_s - r.value).abs() <= 1e-9);
        prop_assert!((k.mass(&r.residual_chain).unwrap() - r.mass_residual).abs() <= 1e-9);
    }

    #[test]
    fn feasibility_bound((k, faces) in complex_and_faces(6), lambda in lambda()) {
        let a = Chain::from_dense(&k, 2, &faces).unwrap();
        let t = k.boundary(&a).unwrap();
        let r = flatnorm_lp(&k, &t, lambda).unwrap();
        let bound = k.mass(&t).unwrap().min(lambda * k.mass(&a).unwrap());
        prop_assert!(r.value <= bound + 1e-9);
    }

    #[test]
    fn matches_exhaustive_oracle((k, dense) in complex_and_edges(2, 1), lambda in lambda()) {
        prop_assume!(k.num_faces() <= 8);
        let t = Chain::from_dense(&k, 1, &dense).unwrap();
        let lp = flatnorm_lp(&k, &t, lambda).unwrap();
        let range = lp.s_chain.max_abs_coefficient().max(1) as u32;
        let oracle = exhaustive_oracle(&k, &t, lambda, range).unwrap();
        let cmp = compare_with_oracle(&lp, &oracle, range);
        prop_assert!(cmp.agrees(1e-7), "{:?}", cmp);
        // no candidate in the box beats the LP, and the oracle's own S is honest
        prop_assert!((objective(&k, &t, &oracle.s_chain, lambda) - oracle.value).abs() <= 1e-9);
    }

    #[test]
    fn subadditive_and_homogeneous(
        (k, a) in complex_and_edges(5, 2),
        seed in any::<u64>(),
        m in -3i64..=3,
        lambda in lambda(),
    ) {
        // second chain on the same complex, drawn from the seed
        let b: Vec<i64> = (0..k.num_edges())
            .map(|i| ((seed.rotate_left(i as u32 % 64) ^ i as u64) % 5) as i64 - 2)
            .collect();
        let a = Chain::from_dense(&k, 1, &a).unwrap();
        let b = Chain::from_dense(&k, 1, &b).unwrap();
        let f = |t: &Chain| flatnorm_lp(&k, t, lambda).unwrap().value;
        let (fa, fb) = (f(&a), f(&b));
        prop_assert!(f(&a.add(&b).unwrap()) <= fa + fb + 1e-7);
        prop_assert!((f(&a.scale(m).unwrap()) - m.abs() as f64 * fa).abs() <= 1e-7);
        prop_assert!(fa <= k.mass(&a).unwrap() + 1e-9);
    }
}
