use flatnorm::shape_io::{encode_pgm, format_sig12, rasterize, result_to_json, result_to_svg};
use flatnorm::{
    flat_distance, flatnorm_graphcut, flatnorm_lp, lambda_sweep, FlatNorm64, Method, NeighborhoodStencil, Region,
    SweepInput,
};

use crate::args::{ComputeArgs, DistanceArgs, MethodArg, RasterizeArgs, SweepArgs, SweepFormat, SweepMethodArg};
use crate::io::{
    check, emit, grid_problems, lambda_problem, load_input, load_shape, output_problems, parse_pair,
    placement_comment, CliError, CliResult, Input, Output,
};
use crate::lambdas::parse_lambdas;
use crate::plot::sweep_svg;

/// LP and graph-cut values closer than this count as agreeing.
pub const AGREEMENT_TOLERANCE: f64 = 1e-6;

fn path_str(p: &Option<std::path::PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

fn indent(json: &str) -> String {
    json.replace('\n', "\n  ")
}

/// Both results side by side plus how far apart their values are.
fn agreement_json(lp: &FlatNorm64, gc: &FlatNorm64) -> CliResult<String> {
    let delta = (lp.value - gc.value).abs();
    Ok(format!(
        "{{\n  \"lp\": {},\n  \"graphcut\": {},\n  \"agreement\": {{\"lp_value\": {}, \"graphcut_value\": {}, \"delta\": {}, \"tolerance\": {}, \"agree\": {}}}\n}}\n",
        indent(&result_to_json(lp)?),
        indent(&result_to_json(gc)?),
        format_sig12(lp.value),
        format_sig12(gc.value),
        format_sig12(delta),
        format_sig12(AGREEMENT_TOLERANCE),
        delta <= AGREEMENT_TOLERANCE
    ))
}

/// JSON for one or both results, plus the SVG of the first.
fn result_outputs(results: &[FlatNorm64], out: &str, svg: Option<String>) -> CliResult<Vec<Output>> {
    let json = match results {
        [one] => result_to_json(one)? + "\n",
        [lp, gc] => {
            log::info!("lp {} graphcut {}", format_sig12(lp.value), format_sig12(gc.value));
            agreement_json(lp, gc)?
        }
        _ => unreachable!("one or two results"),
    };
    let mut outputs = vec![Output::new(out, json)];
    if let Some(svg) = svg {
        outputs.push(Output::new(svg, result_to_svg(&results[0])?));
    }
    Ok(outputs)
}

pub fn compute(args: &ComputeArgs) -> CliResult<()> {
    let svg = path_str(&args.svg);
    let mut problems = grid_problems(&args.grid);
    problems.extend(lambda_problem(args.lambda));
    problems.extend(output_problems(&[("--out", Some(&args.out)), ("--svg", svg.as_deref())]));
    check(problems)?;

    let stencil: NeighborhoodStencil = args.stencil.into();
    let lambda = args.lambda;
    let results = match load_input(&args.input, &args.grid)? {
        Input::Chain(complex, t) => {
            if args.method != MethodArg::Lp {
                return Err(CliError::invalid(
                    "chain inputs support only --method lp; graph cuts need a PGM shape",
                ));
            }
            vec![flatnorm_lp(&complex, &t, lambda)?]
        }
        Input::Shape(shape) => {
            let lp = || -> CliResult<FlatNorm64> {
                let complex = shape.cubical_complex()?;
                let t = shape.boundary_chain(&complex)?;
                Ok(flatnorm_lp(&complex, &t, lambda)?)
            };
            match args.method {
                MethodArg::Lp => vec![lp()?],
                MethodArg::Graphcut => vec![flatnorm_graphcut(&shape, lambda, stencil)?],
                MethodArg::Both => vec![lp()?, flatnorm_graphcut(&shape, lambda, stencil)?],
            }
        }
    };
    log::info!("value {}", format_sig12(results[0].value));
    emit(&result_outputs(&results, &args.out, svg)?)
}

pub fn distance(args: &DistanceArgs) -> CliResult<()> {
    let svg = path_str(&args.svg);
    let mut problems = grid_problems(&args.grid);
    problems.extend(lambda_problem(args.lambda));
    problems.extend(output_problems(&[("--out", Some(&args.out)), ("--svg", svg.as_deref())]));
    check(problems)?;

    let a = load_shape(&args.a, &args.grid)?;
    let b = load_shape(&args.b, &args.grid)?;
    let stencil: NeighborhoodStencil = args.stencil.into();
    let run = |m| flat_distance(&a, &b, args.lambda, m, stencil);
    let results = match args.method {
        MethodArg::Lp => vec![run(Method::Lp)?],
        MethodArg::Graphcut => vec![run(Method::GraphCut)?],
        MethodArg::Both => vec![run(Method::Lp)?, run(Method::GraphCut)?],
    };
    log::info!("distance {}", format_sig12(results[0].value));
    emit(&result_outputs(&results, &args.out, svg)?)
}

pub fn sweep(args: &SweepArgs) -> CliResult<()> {
    let plot = path_str(&args.plot);
    let mut problems = grid_problems(&args.grid);
    let lambdas = parse_lambdas(&args.lambdas).map_err(|e| problems.push(format!("--lambdas: {e}")));
    if let Ok(l) = &lambdas {
        if let Some(bad) = l.iter().find(|&&v| !(v > 0.0)) {
            problems.push(format!("--lambdas must all be positive, got {bad}"));
        }
        if let Some(w) = l.windows(2).find(|w| !(w[1] > w[0])) {
            problems.push(format!("--lambdas must be strictly increasing, got {} then {}", w[0], w[1]));
        }
    }
    problems.extend(output_problems(&[("--out", Some(&args.out)), ("--plot", plot.as_deref())]));
    check(problems)?;
    let lambdas = lambdas.expect("checked above");

    let method = match args.method {
        SweepMethodArg::Lp => Method::Lp,
        SweepMethodArg::Graphcut => Method::GraphCut,
    };
    let input = load_input(&args.input, &args.grid)?;
    let sweep_input = match &input {
        Input::Shape(s) => SweepInput::Shape(s),
        Input::Chain(_, _) if method == Method::GraphCut => {
            return Err(CliError::invalid(
                "chain inputs support only --method lp; graph cuts need a PGM shape",
            ))
        }
        Input::Chain(k, c) => SweepInput::Chain(k, c),
    };
    let curve = lambda_sweep(sweep_input, &lambdas, method, args.stencil.into())?;
    if !curve.is_nondecreasing(1e-7) || !curve.is_concave(1e-7) {
        log::warn!(
            "curve is not concave nondecreasing: max decrease {}, max second difference {}",
            format_sig12(curve.max_decrease()),
            format_sig12(curve.max_second_difference())
        );
    }
    let text = match args.format {
        SweepFormat::Csv => curve.to_csv(),
        SweepFormat::Json => curve.to_json(),
    };
    let mut outputs = vec![Output::new(&args.out, text)];
    if let Some(p) = plot {
        outputs.push(Output::new(p, sweep_svg(&curve)));
    }
    emit(&outputs)
}

fn parse_numbers(s: &str, n: usize, flag: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(|| format!("{flag}: expected {n} comma-separated numbers, got {s:?}"))?;
    if v.len() != n {
        return Err(format!("{flag}: expected {n} comma-separated numbers, got {s:?}"));
    }
    Ok(v)
}

fn region(args: &RasterizeArgs, problems: &mut Vec<String>) -> Option<Region<f64>> {
    let given = [args.disk.is_some(), args.square.is_some(), args.polygon.is_some()];
    match given.iter().filter(|&&g| g).count() {
        0 => problems.push("one of --disk, --square or --polygon is required".into()),
        1 => {}
        _ => problems.push("--disk, --square and --polygon are mutually exclusive".into()),
    }
    let build = |r: Result<Region<f64>, String>, problems: &mut Vec<String>| match r {
        Ok(r) => Some(r),
        Err(e) => {
            problems.push(e);
            None
        }
    };
    if let Some(d) = &args.disk {
        let r = parse_numbers(d, 3, "--disk")
            .and_then(|v| Region::disk((v[0], v[1]), v[2]).map_err(|e| format!("--disk: {e}")));
        return build(r, problems);
    }
    if let Some(s) = &args.square {
        let r = parse_numbers(s, 3, "--square")
            .and_then(|v| Region::square((v[0], v[1]), v[2]).map_err(|e| format!("--square: {e}")));
        return build(r, problems);
    }
    if let Some(p) = &args.polygon {
        let r = p
            .split(';')
            .map(|v| parse_pair(v).map_err(|e| format!("--polygon: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|v| Region::polygon(v).map_err(|e| format!("--polygon: {e}")));
        return build(r, problems);
    }
    None
}

pub fn rasterize_cmd(args: &RasterizeArgs) -> CliResult<()> {
    let mut problems = Vec::new();
    let region = region(args, &mut problems);
    if !(args.resolution > 0.0 && args.resolution.is_finite()) {
        problems.push(format!("--resolution must be positive, got {}", args.resolution));
    }
    check(problems)?;
    let shape = rasterize(&region.expect("checked above"), args.resolution)?;
    let pgm = encode_pgm(&shape, !args.plain);
    // the magic number line stays first
    let split = pgm.iter().position(|&b| b == b'\n').expect("PGM header line") + 1;
    let mut bytes = pgm[..split].to_vec();
    bytes.extend(placement_comment(shape.spacing(), shape.origin()).bytes());
    bytes.extend_from_slice(&pgm[split..]);
    log::info!(
        "{}x{} pixels, {} foreground, spacing {}",
        shape.width(),
        shape.height(),
        shape.count(),
        shape.spacing()
    );
    emit(&[Output::new(&args.out, bytes)])
}
