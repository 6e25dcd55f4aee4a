use flatnorm::analysis::disk_flatnorm;
use flatnorm::graphcut::GraphCutSolver;
use flatnorm::shape_io::{rasterize, rasterize_onto};
use flatnorm::{flatnorm_graphcut, flatnorm_lp, BinaryShape, Chain, Frame, Method, NeighborhoodStencil, Region, Shape64};
use proptest::prelude::*;

const STENCILS: [NeighborhoodStencil; 3] = [NeighborhoodStencil::N4, NeighborhoodStencil::N8, NeighborhoodStencil::N16];

fn shape(w: usize, h: usize, bits: Vec<bool>) -> Shape64 {
    BinaryShape::from_bits(Frame::new(w, h, 1.0, (0.0, 0.0)).unwrap(), bits).unwrap()
}

fn shapes(max_side: usize) -> impl Strategy<Value = Shape64> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(w, h)| {
        prop::collection::vec(any::<bool>(), w * h).prop_map(move |bits| shape(w, h, bits))
    })
}

/// Every `Σ` on the grid, scored with the stencil perimeter.
fn brute_force(solver: &GraphCutSolver<'_, f64>, omega: &Shape64, lambda: f64) -> (f64, Vec<Vec<bool>>) {
    let n = omega.width() * omega.height();
    let mut best = f64::INFINITY;
    let mut scored = Vec::new();
    for mask in 0u32..(1 << n) {
        let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let sigma = shape(omega.width(), omega.height(), bits.clone());
        let changed = bits.iter().zip(omega.bits()).filter(|(a, b)| a != b).count() as f64;
        let cost = solver.perimeter(&sigma) + lambda * changed;
        best = best.min(cost);
        scored.push((cost, bits));
    }
    let minimizers = scored.into_iter().filter(|(c, _)| *c <= best + 1e-9).map(|(_, b)| b).collect();
    (best, minimizers)
}

#[test]
fn n4_perimeter_is_boundary_mass() {
    let s = shape(4, 3, [1, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0].iter().map(|&b| b == 1).collect());
    let k = s.cubical_complex().unwrap();
    let mass = k.mass(&s.boundary_chain(&k).unwrap()).unwrap();
    let per = GraphCutSolver::new(&s, NeighborhoodStencil::N4).perimeter(&s);
    assert!((per - mass).abs() < 1e-12);
}

#[test]
fn stencil_perimeters_of_a_disk() {
    // large disk: the finer stencils are close to 2π, N4 is near 8
    let d: Shape64 = rasterize(&Region::disk((0.0, 0.0), 1.0).unwrap(), 128.0).unwrap();
    let per = |st| GraphCutSolver::new(&d, st).perimeter(&d);
    let tau = 2.0 * std::f64::consts::PI;
    assert!((per(NeighborhoodStencil::N4) - 8.0).abs() < 0.05);
    assert!((per(NeighborhoodStencil::N8) - tau).abs() / tau < 0.05);
    assert!((per(NeighborhoodStencil::N16) - tau).abs() / tau < 0.01);
}

#[test]
fn empty_and_full_limits() {
    let empty = shape(3, 3, vec![false; 9]);
    let r = flatnorm_graphcut(&empty, 1.0, NeighborhoodStencil::N16).unwrap();
    assert_eq!(r.value, 0.0);
    let sq: Shape64 = rasterize(&Region::square((0.0, 0.0), 1.0).unwrap(), 8.0).unwrap();
    // tiny λ: erase everything, cost λ·area
    let r = flatnorm_graphcut(&sq, 0.01, NeighborhoodStencil::N8).unwrap();
    assert!((r.value - 0.01 * sq.area()).abs() < 1e-12);
    assert!(r.residual_chain.is_zero());
    // huge λ: keep Ω as is
    let r = flatnorm_graphcut(&sq, 1e6, NeighborhoodStencil::N8).unwrap();
    assert_eq!(r.mass_s, 0.0);
    assert_eq!(r.method, Method::GraphCut);
    assert_eq!(r.stencil, Some(NeighborhoodStencil::N8));
}

#[test]
fn disk_at_moderate_resolution() {
    let d: Shape64 = rasterize(&Region::disk((0.0, 0.0), 1.0).unwrap(), 128.0).unwrap();
    for lambda in [1.0, 3.0] {
        let r = flatnorm_graphcut(&d, lambda, NeighborhoodStencil::N16).unwrap();
        let exact = disk_flatnorm(1.0, lambda).unwrap();
        assert!((r.value - exact).abs() / exact < 0.03, "lambda {lambda}: {}", r.value);
    }
}

#[test]
fn canonical_sigma_is_repeatable() {
    let frame: Frame<f64> = Frame::new(40, 40, 1.0 / 16.0, (-1.25, -1.25)).unwrap();
    let d: Shape64 = rasterize_onto(&Region::disk((0.0, 0.0), 1.0).unwrap(), &frame);
    let solver = GraphCutSolver::new(&d, NeighborhoodStencil::N16);
    // λ = 2/R is the tie between keeping and erasing the disk
    let a = solver.solve(2.0).unwrap();
    let b = GraphCutSolver::new(&d, NeighborhoodStencil::N16).solve(2.0).unwrap();
    assert_eq!(a.sigma.bits(), b.sigma.bits());
    assert!((a.value - (a.perimeter + 2.0 * a.area_change)).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cut_matches_brute_force(
        omega in shapes(3),
        lambda in prop_oneof![Just(0.3), Just(1.0), Just(2.0), Just(4.0), Just(9.0)],
        st in 0usize..3,
    ) {
        let solver = GraphCutSolver::new(&omega, STENCILS[st]);
        let sol = solver.solve(lambda).unwrap();
        let (best, minimizers) = brute_force(&solver, &omega, lambda);
        prop_assert!((sol.perimeter + lambda * sol.area_change - best).abs() <= 1e-9);
        prop_assert!((sol.value - best).abs() <= 1e-9);
        // the reported Σ lies inside every minimizer
        for m in &minimizers {
            prop_assert!(sol.sigma.bits().iter().zip(m).all(|(&s, &b)| !s || b));
        }
        prop_assert!(minimizers.iter().any(|m| m.as_slice() == sol.sigma.bits()));
    }

    #[test]
    fn n4_cut_equals_lp(omega in shapes(16), lambda in prop_oneof![Just(0.25), Just(0.5), Just(1.0), Just(2.0), Just(4.0)]) {
        let k = omega.cubical_complex().unwrap();
        let lp = flatnorm_lp(&k, &omega.boundary_chain(&k).unwrap(), lambda).unwrap();
        let gc = flatnorm_graphcut(&omega, lambda, NeighborhoodStencil::N4).unwrap();
        prop_assert!((lp.value - gc.value).abs() <= 1e-6, "lp {} gc {}", lp.value, gc.value);
        // the cut decomposition is an honest one on the same complex
        let on_k = |c: &Chain| Chain::from_cells(&k, c.dim(), c.cells().iter().copied()).unwrap();
        let (s, r) = (on_k(&gc.s_chain), on_k(&gc.residual_chain));
        prop_assert_eq!(r.add(&k.boundary(&s).unwrap()).unwrap(), omega.boundary_chain(&k).unwrap());
        prop_assert!((k.mass(&r).unwrap() - gc.mass_residual).abs() <= 1e-9);
    }

    #[test]
    fn value_is_nondecreasing_in_lambda(omega in shapes(8), st in 0usize..3) {
        let solver = GraphCutSolver::new(&omega, STENCILS[st]);
        let mut last = 0.0;
        for lambda in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let s = solver.solve(lambda).unwrap();
            let v = s.perimeter + lambda * s.area_change;
            prop_assert!(v >= last - 1e-9);
            last = v;
        }
    }
}
