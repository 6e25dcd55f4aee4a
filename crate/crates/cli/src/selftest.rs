//! Randomized invariant suites. Every case has its own RNG stream derived
//! from the seed, so reports do not depend on the thread count.

use std::fmt::Write as _;

use flatnorm::lp::{compare_with_oracle, MAX_ORACLE_CANDIDATES};
use flatnorm::{
    exhaustive_oracle, flat_distance, flatnorm_graphcut, flatnorm_lp, BinaryShape, Chain, Frame, GridComplex64,
    Method, NeighborhoodStencil, Shape64, Topology,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Case = Result<(), String>;

struct Suite {
    name: &'static str,
    run: fn(&mut ChaCha8Rng) -> Case,
}

const SUITES: &[Suite] = &[
    Suite { name: "boundary_of_boundary", run: boundary_of_boundary },
    Suite { name: "lp_integrality", run: lp_integrality },
    Suite { name: "lp_matches_oracle", run: lp_matches_oracle },
    Suite { name: "n4_cut_matches_lp", run: n4_cut_matches_lp },
    Suite { name: "norm_axioms", run: norm_axioms },
    Suite { name: "distance_symmetry", run: distance_symmetry },
];

pub struct Report {
    pub text: String,
    pub passed: bool,
}

pub fn run(seed: u64, cases: usize) -> Report {
    let results: Vec<Vec<Case>> = SUITES
        .iter()
        .enumerate()
        .map(|(i, suite)| {
            (0..cases)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(((i as u64) << 32) | k as u64);
                    (suite.run)(&mut rng)
                })
                .collect()
        })
        .collect();

    let mut text = String::new();
    let _ = writeln!(text, "flatnorm selftest seed={seed} cases={cases}");
    let _ = writeln!(text, "{:<22} {:>6} {:>9}  status", "suite", "cases", "failures");
    let mut passed = true;
    let mut details = String::new();
    for (suite, outcomes) in SUITES.iter().zip(&results) {
        let failures: Vec<(usize, &String)> = outcomes
            .iter()
            .enumerate()
            .filter_map(|(k, r)| r.as_ref().err().map(|e| (k, e)))
            .collect();
        let status = if failures.is_empty() { "pass" } else { "FAIL" };
        passed &= failures.is_empty();
        let _ = writeln!(text, "{:<22} {:>6} {:>9}  {status}", suite.name, outcomes.len(), failures.len());
        if let Some((k, e)) = failures.first() {
            let _ = writeln!(details, "{} case {k}: {e}", suite.name);
        }
    }
    text.push_str(&details);
    let _ = writeln!(text, "overall: {}", if passed { "pass" } else { "FAIL" });
    Report { text, passed }
}

fn complex(rng: &mut ChaCha8Rng, max_side: usize) -> GridComplex64 {
    let (w, h) = (rng.random_range(1..=max_side), rng.random_range(1..=max_side));
    let topology = if rng.random_bool(0.5) { Topology::Cubical } else { Topology::RightTriangulated };
    GridComplex64::new(w, h, 1.0, topology).expect("positive dimensions")
}

fn random_chain(rng: &mut ChaCha8Rng, k: &GridComplex64, dim: usize, density: f64, max_coeff: i64) -> Chain {
    let cells: Vec<(usize, i64)> = (0..k.num_cells(dim))
        .filter_map(|c| {
            if !rng.random_bool(density) {
                return None;
            }
            let v = rng.random_range(-max_coeff..=max_coeff);
            (v != 0).then_some((c, v))
        })
        .collect();
    Chain::from_cells(k, dim, cells).expect("valid cells")
}

fn random_shape(rng: &mut ChaCha8Rng, w: usize, h: usize) -> Shape64 {
    let mut s = BinaryShape::empty(Frame::new(w, h, 1.0, (0.0, 0.0)).expect("positive dimensions"));
    for _ in 0..rng.random_range(1..=3) {
        let (x0, y0) = (rng.random_range(0..w), rng.random_range(0..h));
        let (x1, y1) = (rng.random_range(x0..w), rng.random_range(y0..h));
        for y in y0..=y1 {
            for x in x0..=x1 {
                s.set(x, y, true);
            }
        }
    }
    for _ in 0..rng.random_range(0..=3) {
        let (x, y) = (rng.random_range(0..w), rng.random_range(0..h));
        let v = s.get(x, y);
        s.set(x, y, !v);
    }
    s
}

fn pick(rng: &mut ChaCha8Rng, lambdas: &[f64]) -> f64 {
    lambdas[rng.random_range(0..lambdas.len())]
}

fn err(e: flatnorm::Error) -> String {
    e.to_string()
}

fn boundary_of_boundary(rng: &mut ChaCha8Rng) -> Case {
    let k = complex(rng, 16);
    let s = random_chain(rng, &k, 2, 0.5, 3);
    let bb = k.boundary(&k.boundary(&s).map_err(err)?).map_err(err)?;
    if bb.is_zero() {
        Ok(())
    } else {
        Err(format!("{} vertices with nonzero coefficient", bb.support_len()))
    }
}

fn lp_integrality(rng: &mut ChaCha8Rng) -> Case {
    let k = complex(rng, 6);
    let t = random_chain(rng, &k, 1, 0.4, 2);
    let lambda = pick(rng, &[0.1, 1.0, 10.0]);
    let r = flatnorm_lp(&k, &t, lambda).map_err(err)?;
    let mass = k.mass(&t).map_err(err)?;
    if !r.diagnostics.integral {
        return Err(format!("fractional optimum at lambda {lambda}"));
    }
    if r.value > mass + 1e-9 {
        return Err(format!("value {} exceeds input mass {mass}", r.value));
    }
    if r.input_chain(&k).map_err(err)? != t {
        return Err("decomposition does not sum to the input".into());
    }
    Ok(())
}

fn lp_matches_oracle(rng: &mut ChaCha8Rng) -> Case {
    let k = if rng.random_bool(0.5) {
        GridComplex64::cubical(rng.random_range(1..=3), rng.random_range(1..=3), 1.0)
    } else {
        GridComplex64::triangulated(rng.random_range(1..=2), rng.random_range(1..=2), 1.0)
    }
    .map_err(err)?;
    let t = random_chain(rng, &k, 1, 0.5, 1);
    let lambda = pick(rng, &[0.1, 0.5, 1.0, 2.0, 10.0]);
    let lp = flatnorm_lp(&k, &t, lambda).map_err(err)?;
    let range = lp.s_chain.max_abs_coefficient().max(1) as u32;
    let base = 2 * range as u64 + 1;
    if base.checked_pow(k.num_faces() as u32).is_none_or(|c| c > MAX_ORACLE_CANDIDATES) {
        return Err(format!("LP optimum needs range {range}, too large to enumerate"));
    }
    let oracle = exhaustive_oracle(&k, &t, lambda, range).map_err(err)?;
    let cmp = compare_with_oracle(&lp, &oracle, range);
    if cmp.agrees(1e-7) {
        Ok(())
    } else {
        Err(format!("lp {} oracle {}", cmp.lp_value, cmp.oracle_value))
    }
}

fn n4_cut_matches_lp(rng: &mut ChaCha8Rng) -> Case {
    let s = random_shape(rng, 8, 8);
    let lambda = pick(rng, &[0.25, 0.5, 1.0, 2.0, 4.0]);
    let k = s.cubical_complex().map_err(err)?;
    let lp = flatnorm_lp(&k, &s.boundary_chain(&k).map_err(err)?, lambda).map_err(err)?;
    let gc = flatnorm_graphcut(&s, lambda, NeighborhoodStencil::N4).map_err(err)?;
    if (lp.value - gc.value).abs() <= 1e-6 {
        Ok(())
    } else {
        Err(format!("lp {} graphcut {} at lambda {lambda}", lp.value, gc.value))
    }
}

fn norm_axioms(rng: &mut ChaCha8Rng) -> Case {
    let k = complex(rng, 4);
    let a = random_chain(rng, &k, 1, 0.4, 2);
    let b = random_chain(rng, &k, 1, 0.4, 2);
    let lambda = pick(rng, &[0.1, 1.0, 10.0]);
    let f = |t: &Chain| flatnorm_lp(&k, t, lambda).map(|r| r.value).map_err(err);
    let (fa, fb) = (f(&a)?, f(&b)?);
    let fab = f(&a.add(&b).map_err(err)?)?;
    if fab > fa + fb + 1e-6 {
        return Err(format!("F(a+b) = {fab} > F(a) + F(b) = {}", fa + fb));
    }
    let m = rng.random_range(-3..=3i64);
    let fm = f(&a.scale(m).map_err(err)?)?;
    if (fm - m.abs() as f64 * fa).abs() > 1e-6 {
        return Err(format!("F({m}a) = {fm}, |{m}| F(a) = {}", m.abs() as f64 * fa));
    }
    Ok(())
}

fn distance_symmetry(rng: &mut ChaCha8Rng) -> Case {
    let a = random_shape(rng, 6, 6);
    let b = random_shape(rng, 6, 6);
    let lambda = pick(rng, &[0.5, 1.0, 2.0]);
    let d = |x: &Shape64, y: &Shape64| {
        flat_distance(x, y, lambda, Method::Lp, NeighborhoodStencil::N4)
            .map(|r| r.value)
            .map_err(err)
    };
    let (ab, ba) = (d(&a, &b)?, d(&b, &a)?);
    if (ab - ba).abs() <= 1e-7 {
        Ok(())
    } else {
        Err(format!("d(a,b) = {ab}, d(b,a) = {ba}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_reproducible() {
        let a = run(3, 4);
        assert!(a.passed, "{}", a.text);
        assert_eq!(a.text, run(3, 4).text);
        assert!(a.text.ends_with("overall: pass\n"));
    }
}
