//! Minimal SVG line plots and heatmaps. Output depends only on the input
//! numbers, so identical data gives identical bytes.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

/// Viridis sampled at nine equally spaced points, dark to bright.
pub const VIRIDIS: [(u8, u8, u8); 9] = [
    (0x44, 0x01, 0x54),
    (0x47, 0x2d, 0x7b),
    (0x3b, 0x52, 0x8b),
    (0x2c, 0x72, 0x8e),
    (0x21, 0x91, 0x8c),
    (0x28, 0xae, 0x80),
    (0x5e, 0xc9, 0x62),
    (0xad, 0xdc, 0x30),
    (0xfd, 0xe7, 0x25),
];

const MISSING: &str = "#bbbbbb";

/// Colour for `t ∈ [0, 1]`, linearly interpolated between ramp stops.
pub fn ramp(t: f64) -> String {
    let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
    let x = t * (VIRIDIS.len() - 1) as f64;
    let k = (x.floor() as usize).min(VIRIDIS.len() - 2);
    let f = x - k as f64;
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (VIRIDIS[k], VIRIDIS[k + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

impl Scale {
    fn map(self, v: f64) -> Option<f64> {
        match self {
            Scale::Linear => v.is_finite().then_some(v),
            Scale::Log => (v > 0.0 && v.is_finite()).then(|| v.log10()),
        }
    }
}

fn label(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-2..1e4).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Tick positions (in mapped coordinates) and their labels.
fn ticks(scale: Scale, lo: f64, hi: f64) -> Vec<(f64, String)> {
    match scale {
        Scale::Log if hi - lo >= 1.0 => {
            let (a, b) = (lo.ceil() as i32, hi.floor() as i32);
            (a..=b).map(|e| (e as f64, label(10f64.powi(e)))).collect()
        }
        _ => (0..=4)
            .map(|k| {
                let m = lo + (hi - lo) * k as f64 / 4.0;
                let v = if scale == Scale::Log { 10f64.powf(m) } else { m };
                (m, label(v))
            })
            .collect(),
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + (WIDTH - LEFT - RIGHT) / 2.0,
        escape(title)
    );
}

fn axis_labels(out: &mut String, x_label: &str, y_label: &str) {
    let cx = LEFT + (WIDTH - LEFT - RIGHT) / 2.0;
    let cy = TOP + (HEIGHT - TOP - BOTTOM) / 2.0;
    let _ = writeln!(
        out,
        r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{cy:.1}" text-anchor="middle" transform="rotate(-90 20 {cy:.1})">{}</text>"#,
        escape(y_label)
    );
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series: Vec<Series>,
}

impl LinePlot {
    fn mapped(&self) -> Vec<Vec<(f64, f64)>> {
        self.series
            .iter()
            .map(|s| {
                s.points
                    .iter()
                    .filter_map(|&(x, y)| Some((self.x_scale.map(x)?, self.y_scale.map(y)?)))
                    .collect()
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mapped = self.mapped();
        let bounds = |pick: fn(&(f64, f64)) -> f64| {
            let (lo, hi) = mapped
                .iter()
                .flatten()
                .map(pick)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        };
        let (x0, x1) = bounds(|p| p.0);
        let (y0, y1) = bounds(|p| p.1);
        let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
        let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let py = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

        let mut out = String::new();
        header(&mut out, &self.title);
        let _ = writeln!(
            out,
            r##"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>"##
        );
        for (m, text) in ticks(self.x_scale, x0, x1) {
            let x = px(m);
            let _ = writeln!(
                out,
                r##"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="#333"/><text x="{x:.3}" y="{:.3}" text-anchor="middle">{text}</text>"##,
                TOP + ph,
                TOP + ph + 5.0,
                TOP + ph + 20.0
            );
        }
        for (m, text) in ticks(self.y_scale, y0, y1) {
            let y = py(m);
            let _ = writeln!(
                out,
                r##"<line x1="{:.3}" y1="{y:.3}" x2="{LEFT}" y2="{y:.3}" stroke="#333"/><text x="{:.3}" y="{:.3}" text-anchor="end">{text}</text>"##,
                LEFT - 5.0,
                LEFT - 8.0,
                y + 4.0
            );
        }
        axis_labels(&mut out, &self.x_label, &self.y_label);
        for (k, (series, points)) in self.series.iter().zip(&mapped).enumerate() {
            let coords: Vec<String> = points
                .iter()
                .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
                series.color,
                coords.join(" ")
            );
            let ly = TOP + 10.0 + 18.0 * k as f64;
            let lx = WIDTH - RIGHT + 15.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                lx + 20.0,
                series.color,
                lx + 25.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Colour map over a rectangular grid: `values[i][j]` sits at row
/// `y_values[i]` (drawn bottom to top) and column `x_values[j]`. Cells are
/// equally sized regardless of axis spacing; non-finite cells are grey.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl Heatmap {
    pub fn render(&self) -> String {
        let (lo, hi) = self
            .values
            .iter()
            .flatten()
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        let span = if hi > lo { hi - lo } else { 1.0 };
        let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
        let rows = self.y_values.len().max(1);
        let cols = self.x_values.len().max(1);
        let (cw, ch) = (pw / cols as f64, ph / rows as f64);

        let mut out = String::new();
        header(&mut out, &self.title);
        for (i, row) in self.values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let fill = if v.is_finite() {
                    ramp((v - lo) / span)
                } else {
                    MISSING.to_string()
                };
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
                    LEFT + j as f64 * cw,
                    TOP + ph - (i + 1) as f64 * ch,
                    cw,
                    ch
                );
            }
        }
        let picks = |n: usize| -> Vec<usize> {
            let mut v = vec![0, n / 2, n.saturating_sub(1)];
            v.dedup();
            v
        };
        for j in picks(self.x_values.len()) {
            let x = LEFT + (j as f64 + 0.5) * cw;
            let _ = writeln!(
                out,
                r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
                TOP + ph + 18.0,
                label(self.x_values[j])
            );
        }
        for i in picks(self.y_values.len()) {
            let y = TOP + ph - (i as f64 + 0.5) * ch;
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                label(self.y_values[i])
            );
        }
        axis_labels(&mut out, &self.x_label, &self.y_label);

        // colour bar
        let bx = WIDTH - RIGHT + 30.0;
        let steps = 64;
        let sh = ph / steps as f64;
        for k in 0..steps {
            let _ = writeln!(
                out,
                r#"<rect x="{bx:.1}" y="{:.3}" width="20" height="{:.3}" fill="{}"/>"#,
                TOP + ph - (k + 1) as f64 * sh,
                sh + 0.5,
                ramp((k as f64 + 0.5) / steps as f64)
            );
        }
        if lo.is_finite() {
            for (v, y) in [(hi, TOP + 4.0), (lo, TOP + ph + 4.0)] {
                let _ = writeln!(out, r#"<text x="{:.1}" y="{y:.1}">{}</text>"#, bx + 26.0, label(v));
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
