use std::fmt::Write as _;

use flatnorm::shape_io::format_sig12;
use flatnorm::Sweep64;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn c(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() { "0".into() } else { s.into() }
}

/// Value against λ as a polyline with labeled axis extents.
pub fn sweep_svg(curve: &Sweep64) -> String {
    let pts = &curve.points;
    let (l0, l1) = (pts.first().map_or(0.0, |p| p.0), pts.last().map_or(1.0, |p| p.0));
    let vmax = pts.iter().map(|p| p.1).fold(0.0, f64::max);
    let lspan = if l1 > l0 { l1 - l0 } else { 1.0 };
    let vspan = if vmax > 0.0 { vmax } else { 1.0 };
    let px = |l: f64| MARGIN + (l - l0) / lspan * (WIDTH - 2.0 * MARGIN);
    let py = |v: f64| HEIGHT - MARGIN - v / vspan * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        s,
        "<path d=\"M{} {} H{} M{} {} V{}\" stroke=\"black\" fill=\"none\"/>",
        c(x0), c(y0), c(x1), c(x0), c(y0), c(y1)
    );
    let text = |s: &mut String, x: f64, y: f64, anchor: &str, t: &str| {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"{anchor}\">{t}</text>",
            c(x), c(y)
        );
    };
    text(&mut s, x0, y0 + 18.0, "middle", &format_sig12(l0));
    text(&mut s, x1, y0 + 18.0, "middle", &format_sig12(l1));
    text(&mut s, x0 - 6.0, y0 + 4.0, "end", "0");
    text(&mut s, x0 - 6.0, y1 + 4.0, "end", &format_sig12(vmax));
    text(&mut s, (x0 + x1) / 2.0, HEIGHT - 12.0, "middle", "lambda");
    let label = format!("{} {}", curve.method, curve.stencil.map_or("", |s| s.as_str()));
    text(&mut s, (x0 + x1) / 2.0, 24.0, "middle", label.trim());
    let line: Vec<String> = pts.iter().map(|&(l, v)| format!("{},{}", c(px(l)), c(py(v)))).collect();
    let _ = writeln!(
        s,
        "<polyline points=\"{}\" stroke=\"#1f5fa8\" stroke-width=\"2\" fill=\"none\"/>",
        line.join(" ")
    );
    for &(l, v) in pts {
        let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1f5fa8\"/>", c(px(l)), c(py(v)));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use flatnorm::Method;

    #[test]
    fn one_marker_per_point() {
        let curve = Sweep64 {
            points: vec![(0.5, 1.0), (1.0, 2.0), (2.0, 2.5)],
            method: Method::Lp,
            stencil: None,
            digest: String::new(),
        };
        let svg = sweep_svg(&curve);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("points=\"50,230 "));
        assert_eq!(svg, sweep_svg(&curve));
    }
}
