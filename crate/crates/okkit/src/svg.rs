//! Static SVG renderings of bodies with optional sample scatter.

use std::fmt::Write;

use okkit_core::algebra::rational_to_f64;
use okkit_core::okounkov::OkounkovBody;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const BODY_FILL: &str = "#c6dbef";
const BODY_STROKE: &str = "#2171b5";
const POINT_FILL: &str = "#d94801";

/// Coordinate pair of largest vertex variance, in index order.
pub fn projection_axes(vertices: &[Vec<f64>]) -> (usize, usize) {
    let n = vertices.first().map_or(0, Vec::len);
    if n <= 2 {
        return (0, 1.min(n.saturating_sub(1)));
    }
    let var = |i: usize| {
        let m = vertices.iter().map(|v| v[i]).sum::<f64>() / vertices.len() as f64;
        vertices.iter().map(|v| (v[i] - m).powi(2)).sum::<f64>()
    };
    let mut idx: Vec<usize> = (0..n).collect();
    // stable: ties keep the lower index first
    idx.sort_by(|&a, &b| var(b).partial_cmp(&var(a)).unwrap_or(std::cmp::Ordering::Equal));
    let (a, b) = (idx[0], idx[1]);
    (a.min(b), a.max(b))
}

/// Counter-clockwise convex hull (monotone chain); collinear points dropped.
pub fn hull_2d(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p: Vec<(f64, f64)> = points.to_vec();
    p.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of a simple polygon.
pub fn polygon_area(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum::<f64>()
        .abs()
        / 2.0
}

struct Frame {
    lo: (f64, f64),
    scale: f64,
    height: f64,
}

impl Frame {
    fn new(pts: &[(f64, f64)], height: f64) -> Frame {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for &(x, y) in pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if !lo.0.is_finite() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let (w, h) = ((hi.0 - lo.0).max(1e-9), hi.1 - lo.1);
        let (inner_w, inner_h) = (SIZE - 2.0 * MARGIN, height - 2.0 * MARGIN);
        let scale = if h > 1e-12 { (inner_w / w).min(inner_h / h) } else { inner_w / w };
        // centre both extents
        let lo = (lo.0 - (inner_w / scale - w) / 2.0, lo.1 - (inner_h / scale - h) / 2.0);
        Frame { lo, scale, height }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.lo.0) * self.scale, self.height - MARGIN - (y - self.lo.1) * self.scale)
    }
}

/// Renders `Δ` with the given sample points on top.
///
/// Intervals are drawn as segments and polygons as filled paths; bodies in
/// three dimensions are projected onto their largest-variance coordinate pair.
pub fn render_body(body: &OkounkovBody, title: &str, points: &[Vec<f64>]) -> String {
    let verts: Vec<Vec<f64>> = body.vertices().iter().map(|v| v.iter().map(rational_to_f64).collect()).collect();
    let one_d = body.dim() == 1;
    let (a, b) = projection_axes(&verts);
    let proj = |v: &[f64]| -> (f64, f64) {
        if one_d {
            (v[0], 0.0)
        } else {
            (v[a], v[b])
        }
    };
    let pv: Vec<(f64, f64)> = verts.iter().map(|v| proj(v)).collect();
    let pp: Vec<(f64, f64)> = points.iter().filter(|p| p.len() == body.dim()).map(|p| proj(p)).collect();
    let height = if one_d { 160.0 } else { SIZE };
    let mut all = pv.clone();
    all.extend(&pp);
    let fr = Frame::new(&all, height);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let hull = hull_2d(&pv);
    match hull.len() {
        0 => {}
        1 => {
            let (x, y) = fr.map(hull[0]);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="{BODY_STROKE}"/>"#);
        }
        2 => {
            let ((x1, y1), (x2, y2)) = (fr.map(hull[0]), fr.map(hull[1]));
            let _ = writeln!(
                s,
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{BODY_STROKE}" stroke-width="4"/>"#
            );
        }
        _ => {
            let mut d = String::new();
            for (i, &q) in hull.iter().enumerate() {
                let (x, y) = fr.map(q);
                let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
            }
            d.push('Z');
            let _ = writeln!(
                s,
                r#"<path d="{d}" fill="{BODY_FILL}" stroke="{BODY_STROKE}" stroke-width="2"/>"#
            );
        }
    }
    for (v, &q) in verts.iter().zip(&pv) {
        let (x, y) = fr.map(q);
        let label: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{BODY_STROKE}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">({})</text>"#,
            x + 5.0,
            y + if one_d { 18.0 } else { -5.0 },
            label.join(", ")
        );
    }
    for &q in &pp {
        let (x, y) = fr.map(q);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2" fill="{POINT_FILL}" fill-opacity="0.6"/>"#);
    }
    if body.dim() > 2 {
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{:.0}" font-family="sans-serif" font-size="11">projection onto coordinates {} and {}</text>"#,
            height - 10.0,
            a + 1,
            b + 1
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_and_area() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5), (0.5, 0.0)];
        let h = hull_2d(&sq);
        assert_eq!(h.len(), 4);
        assert_eq!(polygon_area(&h), 1.0);
        assert_eq!(hull_2d(&[(1.0, 1.0), (1.0, 1.0)]), vec![(1.0, 1.0)]);
    }

    #[test]
    fn axes_by_variance() {
        let v = vec![vec![0.0, 0.0, 0.0], vec![0.0, 5.0, 1.0], vec![0.1, 0.0, 2.0]];
        assert_eq!(projection_axes(&v), (1, 2));
    }
}
