//! Dependency-free static SVG charts: multi-series line plots and heatmaps.
//!
//! Output is a pure function of the input data, so identical data always
//! renders to identical bytes.

use std::fmt::Write;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const DASHES: [&str; 3] = ["", "8 4", "2 3"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Finite data range, widened when degenerate.
fn data_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

/// Roughly `target` round-numbered ticks covering `[lo, hi]`.
fn nice_ticks(lo: f64, hi: f64, target: usize) -> (Vec<f64>, usize) {
    let raw = (hi - lo) / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let decimals =
        (-step.log10().floor()).max(0.0) as usize + usize::from((step / mag - 2.5).abs() < 1e-9);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    let ticks = (first..=last).map(|k| k as f64 * step).collect();
    (ticks, decimals)
}

fn tick_label(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn plot_w() -> f64 {
        WIDTH - LEFT - RIGHT
    }

    fn plot_h() -> f64 {
        HEIGHT - TOP - BOTTOM
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * Self::plot_w()
    }

    fn py(&self, y: f64) -> f64 {
        TOP + Self::plot_h() - (y - self.y0) / (self.y1 - self.y0) * Self::plot_h()
    }

    fn axes(&self, svg: &mut String, title: &str, x_label: &str, y_label: &str) {
        let (pw, ph) = (Self::plot_w(), Self::plot_h());
        let _ = writeln!(
            svg,
            r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
        );
        let (xt, xd) = nice_ticks(self.x0, self.x1, 8);
        for t in xt {
            let x = self.px(t);
            let yb = TOP + ph;
            let _ = writeln!(
                svg,
                r#"<line x1="{x:.2}" y1="{yb:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="12">{}</text>"#,
                yb + 5.0,
                yb + 20.0,
                tick_label(t, xd)
            );
        }
        let (yt, yd) = nice_ticks(self.y0, self.y1, 6);
        for t in yt {
            let y = self.py(t);
            let _ = writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end" font-size="12">{}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                y + 4.0,
                tick_label(t, yd)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
            LEFT + pw / 2.0,
            escape(title)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 15.0,
            escape(x_label)
        );
        let cy = TOP + ph / 2.0;
        let _ = writeln!(
            svg,
            r#"<text x="20" y="{cy:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 {cy:.2})">{}</text>"#,
            escape(y_label)
        );
    }
}

fn open_svg() -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg
}

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl LineChart {
    pub fn to_svg(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter());
        let (x0, x1) = data_range(all().map(|p| p.0));
        let (y0, y1) = data_range(all().map(|p| p.1));
        let pad = 0.05 * (y1 - y0);
        let frame = Frame {
            x0,
            x1,
            y0: y0 - pad,
            y1: y1 + pad,
        };
        let mut svg = open_svg();
        frame.axes(&mut svg, &self.title, &self.x_label, &self.y_label);

        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let dash = DASHES[i % DASHES.len()];
            let dash_attr = if dash.is_empty() {
                String::new()
            } else {
                format!(r#" stroke-dasharray="{dash}""#)
            };
            // Non-finite samples split the curve.
            let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
            for &(x, y) in &s.points {
                if x.is_finite() && y.is_finite() {
                    segments
                        .last_mut()
                        .expect("non-empty")
                        .push((frame.px(x), frame.py(y)));
                } else if !segments.last().expect("non-empty").is_empty() {
                    segments.push(Vec::new());
                }
            }
            for seg in segments.iter().filter(|s| !s.is_empty()) {
                let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{}"/>"#,
                    pts.join(" ")
                );
            }
            let ly = TOP + 15.0 + 22.0 * i as f64;
            let lx = WIDTH - RIGHT + 15.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash_attr}/><text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
                lx + 30.0,
                lx + 36.0,
                ly + 4.0,
                escape(&s.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Values on a rectangular grid: `values[j][i]` sits at `(xs[i], ys[j])`.
#[derive(Clone, Debug)]
pub struct Heatmap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub value_label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

const VIRIDIS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn colormap(u: f64) -> String {
    if !u.is_finite() {
        return "#808080".into();
    }
    let u = u.clamp(0.0, 1.0) * (VIRIDIS.len() - 1) as f64;
    let i = (u.floor() as usize).min(VIRIDIS.len() - 2);
    let f = u - i as f64;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    let mix = |x: f64, y: f64| (x + f * (y - x)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(a.0, b.0),
        mix(a.1, b.1),
        mix(a.2, b.2)
    )
}

/// Cell boundaries around sorted centers.
fn cell_edges(centers: &[f64]) -> Vec<f64> {
    let n = centers.len();
    if n == 1 {
        return vec![centers[0] - 0.5, centers[0] + 0.5];
    }
    let mut edges = Vec::with_capacity(n + 1);
    edges.push(centers[0] - 0.5 * (centers[1] - centers[0]));
    for w in centers.windows(2) {
        edges.push(0.5 * (w[0] + w[1]));
    }
    edges.push(centers[n - 1] + 0.5 * (centers[n - 1] - centers[n - 2]));
    edges
}

fn sorted_order(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    idx
}

impl Heatmap {
    pub fn to_svg(&self) -> String {
        let xo = sorted_order(&self.xs);
        let yo = sorted_order(&self.ys);
        let xs: Vec<f64> = xo.iter().map(|&i| self.xs[i]).collect();
        let ys: Vec<f64> = yo.iter().map(|&j| self.ys[j]).collect();
        let xe = cell_edges(&xs);
        let ye = cell_edges(&ys);
        let frame = Frame {
            x0: xe[0],
            x1: xe[xe.len() - 1],
            y0: ye[0],
            y1: ye[ye.len() - 1],
        };
        let (v0, v1) = data_range(self.values.iter().flatten().copied());

        let mut svg = open_svg();
        for (jj, &j) in yo.iter().enumerate() {
            let (ya, yb) = (frame.py(ye[jj + 1]), frame.py(ye[jj]));
            for (ii, &i) in xo.iter().enumerate() {
                let (xa, xb) = (frame.px(xe[ii]), frame.px(xe[ii + 1]));
                let v = self.values[j][i];
                let _ = writeln!(
                    svg,
                    r#"<rect x="{xa:.2}" y="{ya:.2}" width="{:.2}" height="{:.2}" fill="{}" shape-rendering="crispEdges"/>"#,
                    xb - xa,
                    yb - ya,
                    colormap((v - v0) / (v1 - v0))
                );
            }
        }
        frame.axes(&mut svg, &self.title, &self.x_label, &self.y_label);

        // colorbar
        let bx = WIDTH - RIGHT + 30.0;
        let bh = Frame::plot_h();
        let steps = 64;
        for k in 0..steps {
            let u = k as f64 / (steps - 1) as f64;
            let y = TOP + bh - (k + 1) as f64 * bh / steps as f64;
            let _ = writeln!(
                svg,
                r#"<rect x="{bx:.2}" y="{y:.2}" width="20" height="{:.2}" fill="{}"/>"#,
                bh / steps as f64 + 0.5,
                colormap(u)
            );
        }
        let _ = writeln!(
            svg,
            r#"<rect x="{bx:.2}" y="{TOP:.2}" width="20" height="{bh:.2}" fill="none" stroke="black"/>"#
        );
        let (ticks, d) = nice_ticks(v0, v1, 5);
        for t in ticks {
            let y = TOP + bh - (t - v0) / (v1 - v0) * bh;
            let _ = writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
                bx + 20.0,
                bx + 25.0,
                bx + 28.0,
                y + 4.0,
                tick_label(t, d)
            );
        }
        let cy = TOP + bh / 2.0;
        let lx = bx + 90.0;
        let _ = writeln!(
            svg,
            r#"<text x="{lx:.2}" y="{cy:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 {lx:.2} {cy:.2})">{}</text>"#,
            escape(&self.value_label)
        );
        svg.push_str("</svg>\n");
        svg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round() {
        let (t, d) = nice_ticks(0.0, 20.0, 8);
        assert_eq!(t, vec![0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0]);
        assert_eq!(d, 1);
        let (t, d) = nice_ticks(0.0, 1.0, 5);
        assert_eq!(t.len(), 6);
        assert_eq!(d, 1);
    }

    #[test]
    fn constant_series_has_no_nan() {
        let chart = LineChart {
            title: "flat".into(),
            x_label: "t".into(),
            y_label: "I".into(),
            series: vec![Series {
                label: "I".into(),
                points: (0..5).map(|i| (i as f64, 0.0)).collect(),
            }],
        };
        let svg = chart.to_svg();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        // all polyline y-coordinates equal
        let pts = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        let ys: Vec<&str> = pts
            .split(' ')
            .map(|p| p.split(',').nth(1).unwrap())
            .collect();
        assert!(ys.iter().all(|y| *y == ys[0]));
    }

    #[test]
    fn nan_breaks_polyline() {
        let chart = LineChart {
            title: "gap".into(),
            x_label: "t".into(),
            y_label: "I".into(),
            series: vec![Series {
                label: "I".into(),
                points: vec![
                    (0.0, 0.0),
                    (1.0, 1.0),
                    (2.0, f64::NAN),
                    (3.0, 1.0),
                    (4.0, 0.0),
                ],
            }],
        };
        let svg = chart.to_svg();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn heatmap_cell_count() {
        let h = Heatmap {
            title: "h".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            value_label: "v".into(),
            xs: vec![0.0, 1.0, 2.0],
            ys: vec![5.0, 1.0],
            values: vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]],
        };
        let svg = h.to_svg();
        // 64 colorbar bands plus the outline
        assert_eq!(svg.matches(r#"width="20" height"#).count(), 65);
        assert!(svg.starts_with("<svg"));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn labels_escaped() {
        assert_eq!(escape("a<b & c>"), "a&lt;b &amp; c&gt;");
    }
}
