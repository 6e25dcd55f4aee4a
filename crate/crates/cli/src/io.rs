use std::io::Write as _;
use std::path::Path;

use flatnorm::shape_io::{parse_pgm, write_atomic, PgmOptions};
use flatnorm::{Chain, ChainDocument, GridComplex64, Shape64};

use crate::args::GridArgs;

/// Everything that ends a run early, with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Every problem found in the flags at once.
    Invalid(Vec<String>),
    Core(flatnorm::Error),
    SuiteFailed,
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(vec![msg.into()])
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Core(flatnorm::Error::Resource(_)) => 3,
            CliError::Core(_) => 2,
            CliError::SuiteFailed => 1,
        }
    }

    pub fn report(&self) -> String {
        match self {
            CliError::Invalid(problems) if problems.len() == 1 => format!("error: {}", problems[0]),
            CliError::Invalid(problems) => {
                let mut s = format!("error: {} problems with the arguments:", problems.len());
                for p in problems {
                    s.push_str("\n  - ");
                    s.push_str(p);
                }
                s
            }
            CliError::Core(e) => format!("error: {e}"),
            CliError::SuiteFailed => "error: self-test suites failed".to_string(),
        }
    }
}

impl From<flatnorm::Error> for CliError {
    fn from(e: flatnorm::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Fails with all collected problems, if any.
pub fn check(problems: Vec<String>) -> CliResult<()> {
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invalid(problems))
    }
}

/// Comment line that `rasterize` writes so the placement survives the PGM.
pub const PLACEMENT_TAG: &str = "# flatnorm";

pub fn placement_comment(spacing: f64, origin: (f64, f64)) -> String {
    format!("{PLACEMENT_TAG} spacing={spacing} origin={},{}\n", origin.0, origin.1)
}

/// Placement recorded in a PGM header comment, if any.
fn recorded_placement(data: &[u8]) -> Option<(f64, (f64, f64))> {
    // the header is short; stop at the first non-comment line after the magic
    let text = String::from_utf8_lossy(&data[..data.len().min(4096)]);
    for line in text.lines().skip(1) {
        let Some(rest) = line.strip_prefix(PLACEMENT_TAG) else {
            if line.starts_with('#') {
                continue;
            }
            break;
        };
        let mut spacing = None;
        let mut origin = None;
        for field in rest.split_whitespace() {
            if let Some(v) = field.strip_prefix("spacing=") {
                spacing = v.parse().ok();
            } else if let Some(v) = field.strip_prefix("origin=") {
                origin = parse_pair(v).ok();
            }
        }
        return Some((spacing?, origin?));
    }
    None
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let nums: Vec<f64> = parts.iter().filter_map(|p| p.trim().parse().ok()).collect();
    match nums.as_slice() {
        [x, y] if parts.len() == 2 && x.is_finite() && y.is_finite() => Ok((*x, *y)),
        _ => Err(format!("expected `x,y`, got {s:?}")),
    }
}

/// Problems with the grid flags, without touching any file.
pub fn grid_problems(grid: &GridArgs) -> Vec<String> {
    let mut problems = Vec::new();
    if grid.spacing.is_some() && grid.resolution.is_some() {
        problems.push("--spacing and --resolution are mutually exclusive".to_string());
    }
    if let Some(h) = grid.spacing {
        if !(h > 0.0 && h.is_finite()) {
            problems.push(format!("--spacing must be positive, got {h}"));
        }
    }
    if let Some(r) = grid.resolution {
        if !(r > 0.0 && r.is_finite()) {
            problems.push(format!("--resolution must be positive, got {r}"));
        }
    }
    if let Some(o) = &grid.origin {
        if let Err(e) = parse_pair(o) {
            problems.push(format!("--origin: {e}"));
        }
    }
    if grid.threshold > 256 {
        problems.push(format!("--threshold must be at most 256, got {}", grid.threshold));
    }
    problems
}

pub fn lambda_problem(lambda: f64) -> Option<String> {
    (!(lambda > 0.0 && lambda.is_finite())).then(|| format!("--lambda must be positive, got {lambda}"))
}

/// Two outputs must not land in the same place.
pub fn output_problems(outputs: &[(&str, Option<&str>)]) -> Vec<String> {
    let mut problems = Vec::new();
    let given: Vec<(&str, &str)> = outputs.iter().filter_map(|(f, p)| p.map(|p| (*f, p))).collect();
    for (i, (fa, pa)) in given.iter().enumerate() {
        for (fb, pb) in &given[i + 1..] {
            if pa == pb {
                let what = if *pa == "-" { "stdout".to_string() } else { format!("{pa:?}") };
                problems.push(format!("{fa} and {fb} both write to {what}"));
            }
        }
    }
    problems
}

pub enum Input {
    Shape(Shape64),
    Chain(GridComplex64, Chain),
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| {
        CliError::Core(flatnorm::Error::Io {
            path: path.to_path_buf(),
            source: e,
        })
    })
}

fn shape_from_pgm(data: &[u8], grid: &GridArgs) -> CliResult<Shape64> {
    let recorded = recorded_placement(data);
    let spacing = grid
        .spacing
        .or(grid.resolution.map(|r| 1.0 / r))
        .or(recorded.map(|r| r.0))
        .unwrap_or(1.0);
    let origin = match &grid.origin {
        Some(o) => parse_pair(o).map_err(CliError::invalid)?,
        None => recorded.map(|r| r.1).unwrap_or((0.0, 0.0)),
    };
    let options = PgmOptions {
        spacing,
        origin,
        threshold: grid.threshold,
    };
    Ok(parse_pgm(data, &options)?)
}

pub fn load_shape(path: &Path, grid: &GridArgs) -> CliResult<Shape64> {
    let data = read(path)?;
    shape_from_pgm(&data, grid)
}

/// A PGM image or a chain JSON document, told apart by the first bytes.
pub fn load_input(path: &Path, grid: &GridArgs) -> CliResult<Input> {
    let data = read(path)?;
    if data.starts_with(b"P2") || data.starts_with(b"P5") {
        return Ok(Input::Shape(shape_from_pgm(&data, grid)?));
    }
    let text = std::str::from_utf8(&data)
        .map_err(|_| CliError::invalid(format!("{}: neither PGM nor UTF-8 JSON", path.display())))?;
    if !text.trim_start().starts_with('{') {
        return Err(CliError::invalid(format!("{}: neither PGM nor chain JSON", path.display())));
    }
    let doc = ChainDocument::from_json(text)?;
    let (complex, chain) = doc.into_complex_and_chain()?;
    Ok(Input::Chain(complex, chain))
}

/// Pending output; nothing is written until every result is ready.
pub struct Output {
    pub dest: String,
    pub bytes: Vec<u8>,
}

impl Output {
    pub fn new(dest: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        Output {
            dest: dest.into(),
            bytes: bytes.into(),
        }
    }
}

/// Files go through a temporary sibling and a rename; `-` is stdout.
pub fn emit(outputs: &[Output]) -> CliResult<()> {
    for o in outputs {
        if o.dest == "-" {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&o.bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Core(flatnorm::Error::Io {
                    path: "<stdout>".into(),
                    source: e,
                }))?;
        } else {
            write_atomic(&o.dest, &o.bytes)?;
            log::info!("wrote {}", o.dest);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placement_round_trip() {
        let mut pgm = b"P2\n".to_vec();
        pgm.extend(placement_comment(0.00390625, (-1.0078125, 0.1)).bytes());
        pgm.extend(b"1 1\n255\n255\n");
        assert_eq!(recorded_placement(&pgm), Some((0.00390625, (-1.0078125, 0.1))));
        assert_eq!(recorded_placement(b"P2\n1 1\n255\n0\n"), None);
    }

    #[test]
    fn conflicting_outputs() {
        let p = output_problems(&[("--out", Some("-")), ("--svg", Some("-")), ("--plot", None)]);
        assert_eq!(p, vec!["--out and --svg both write to stdout".to_string()]);
    }

    #[test]
    fn grid_flags_aggregate() {
        let g = GridArgs {
            spacing: Some(-1.0),
            resolution: Some(0.0),
            origin: Some("1".into()),
            threshold: 300,
        };
        assert_eq!(grid_problems(&g).len(), 5);
    }
}
