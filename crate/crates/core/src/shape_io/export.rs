//! Deterministic JSON and SVG renderings of flat norm decompositions.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::complex::{Chain, GridComplex2, Topology};
use crate::error::{Error, Result};
use crate::result::FlatNormResult;
use crate::Real;

/// Formats a float with 12 significant digits, `%.12g` style.
pub fn format_sig12(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.11e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if x < 0.0 { "-" } else { "" };
    if !(-5..12).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        format!("{sign}{digits}{}", "0".repeat(int_len - digits.len()))
    } else {
        let (i, f) = digits.split_at(int_len);
        format!("{sign}{i}.{f}")
    }
}

/// Writes `bytes` to a temporary sibling of `path` and renames it into place.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.flush().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn chain_json<T: Real>(chain: &Chain, complex: &GridComplex2<T>) -> Result<String> {
    Ok(chain.to_document(complex)?.to_json())
}

/// The complex a result lives on, with the result's chains moved onto it.
fn host<T: Real>(result: &FlatNormResult<T>) -> Result<(GridComplex2<T>, Chain, Chain)> {
    let complex = GridComplex2::from_params(&result.complex)?;
    let s = result.s_chain.rehost(&complex)?;
    let r = result.residual_chain.rehost(&complex)?;
    Ok((complex, s, r))
}

/// Result JSON with the fixed key order
/// `lambda, value, mass_residual, mass_s, s_chain, residual_chain, method,
/// stencil, layered, integral, iterations, augmentations`.
pub fn result_to_json<T: Real>(result: &FlatNormResult<T>) -> Result<String> {
    let (complex, s, r) = host(result)?;
    let f = |x: T| format_sig12(x.as_f64());
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"lambda\": {},", f(result.lambda));
    let _ = writeln!(out, "  \"value\": {},", f(result.value));
    let _ = writeln!(out, "  \"mass_residual\": {},", f(result.mass_residual));
    let _ = writeln!(out, "  \"mass_s\": {},", f(result.mass_s));
    let _ = writeln!(out, "  \"s_chain\": {},", chain_json(&s, &complex)?);
    let _ = writeln!(out, "  \"residual_chain\": {},", chain_json(&r, &complex)?);
    let _ = writeln!(out, "  \"method\": \"{}\",", result.method.as_str());
    let _ = writeln!(out, "  \"stencil\": \"{}\",", result.stencil_label());
    let _ = writeln!(out, "  \"layered\": {},", result.layered);
    let _ = writeln!(out, "  \"integral\": {},", result.diagnostics.integral);
    let _ = writeln!(out, "  \"iterations\": {},", result.diagnostics.iterations);
    let _ = writeln!(out, "  \"augmentations\": {}", result.diagnostics.augmentations);
    out.push('}');
    Ok(out)
}

pub fn export_json<T: Real>(result: &FlatNormResult<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut text = result_to_json(result)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

const SVG_MAX_SIDE_PX: f64 = 800.0;

fn coord(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn edge_path<T: Real>(complex: &GridComplex2<T>, chain: &Chain, height: f64) -> String {
    let mut d = String::new();
    for &(e, _) in chain.cells() {
        let (a, b) = complex.edge_endpoints(e);
        let (ax, ay) = complex.vertex_position(a);
        let (bx, by) = complex.vertex_position(b);
        let _ = write!(
            d,
            "M{} {}L{} {}",
            coord(ax.as_f64()),
            coord(height - ay.as_f64()),
            coord(bx.as_f64()),
            coord(height - by.as_f64())
        );
    }
    d
}

fn opacity(c: i64) -> String {
    coord((0.3 * c.unsigned_abs() as f64).min(1.0))
}

fn s_layer<T: Real>(complex: &GridComplex2<T>, s: &Chain, height: f64, out: &mut String) {
    let h = complex.spacing().as_f64();
    let class = |c: i64| if c > 0 { "s-pos" } else { "s-neg" };
    match complex.topology() {
        Topology::Cubical => {
            // coalesce horizontal runs of equal coefficient
            let cells = s.cells();
            let mut k = 0;
            while k < cells.len() {
                let (f, c) = cells[k];
                let mut run = 1;
                while k + run < cells.len()
                    && cells[k + run] == (f + run, c)
                    && (f + run) % complex.width() != 0
                {
                    run += 1;
                }
                let (i, j) = complex.face_pixel(f);
                let _ = writeln!(
                    out,
                    "<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill-opacity=\"{}\"/>",
                    class(c),
                    coord(i as f64 * h),
                    coord(height - (j + 1) as f64 * h),
                    coord(run as f64 * h),
                    coord(h),
                    opacity(c)
                );
                k += run;
            }
        }
        Topology::RightTriangulated => {
            for &(f, c) in s.cells() {
                let pts: Vec<String> = complex
                    .face_vertices(f)
                    .iter()
                    .map(|&v| {
                        let (x, y) = complex.vertex_position(v);
                        format!("{},{}", coord(x.as_f64()), coord(height - y.as_f64()))
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "<polygon class=\"{}\" points=\"{}\" fill-opacity=\"{}\"/>",
                    class(c),
                    pts.join(" "),
                    opacity(c)
                );
            }
        }
    }
}

/// SVG with a background, the filled `S` layer, the input `T` and the
/// residual `T - ∂S`. Identical results give byte-identical documents.
pub fn result_to_svg<T: Real>(result: &FlatNormResult<T>) -> Result<String> {
    let (complex, s, r) = host(result)?;
    let t = r.add(&complex.boundary(&s)?)?;
    let h = complex.spacing().as_f64();
    let width = complex.width() as f64 * h;
    let height = complex.height() as f64 * h;
    let scale = SVG_MAX_SIDE_PX / width.max(height);
    let stroke = coord(h * 0.2);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        coord((width * scale).round()),
        coord((height * scale).round()),
        coord(width),
        coord(height)
    );
    let _ = writeln!(
        out,
        "<title>flat norm decomposition: lambda={} value={} method={} stencil={}</title>",
        format_sig12(result.lambda.as_f64()),
        format_sig12(result.value.as_f64()),
        result.method.as_str(),
        result.stencil_label()
    );
    let _ = writeln!(
        out,
        "<style>.background{{fill:#ffffff}}.s-pos{{fill:#2e8b57}}.s-neg{{fill:#8e44ad}}\
.t{{fill:none;stroke:#1f4e99;stroke-width:{stroke}}}\
.residual{{fill:none;stroke:#c0392b;stroke-width:{stroke};stroke-dasharray:{} {}}}</style>",
        coord(h * 0.5),
        coord(h * 0.25)
    );
    let _ = writeln!(
        out,
        "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\"/>",
        coord(width),
        coord(height)
    );
    out.push_str("<g id=\"s\">\n");
    s_layer(&complex, &s, height, &mut out);
    out.push_str("</g>\n<g id=\"t\">\n");
    if !t.is_zero() {
        let _ = writeln!(out, "<path class=\"t\" d=\"{}\"/>", edge_path(&complex, &t, height));
    }
    out.push_str("</g>\n<g id=\"residual\">\n");
    if !r.is_zero() {
        let _ = writeln!(
            out,
            "<path class=\"residual\" d=\"{}\"/>",
            edge_path(&complex, &r, height)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn export_svg<T: Real>(result: &FlatNormResult<T>, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path, result_to_svg(result)?.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(32.0), "32");
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig12(-0.25), "-0.25");
        assert_eq!(format_sig12(1e-7), "1e-7");
        assert_eq!(format_sig12(1.5e-7), "1.5e-7");
        assert_eq!(format_sig12(0.0001234), "0.0001234");
        assert_eq!(format_sig12(123456789012.0), "123456789012");
        assert_eq!(format_sig12(1.23456789012345e15), "1.23456789012e15");
        assert_eq!(format_sig12(9.9999999999996), "10");
        assert_eq!(format_sig12(f64::NAN), "null");
    }

    #[test]
    fn coords_trim() {
        assert_eq!(coord(1.5), "1.5");
        assert_eq!(coord(2.0), "2");
        assert_eq!(coord(-0.0000001), "0");
    }
}
