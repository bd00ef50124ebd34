//! Minimal two-panel SVG: the bounds around arctan on top, their relative
//! errors and envelopes below. Written by hand so no plotting stack is needed.

use std::fmt::Write;

use crate::sweep::SweepRow;

const WIDTH: f64 = 720.0;
const PANEL_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const GAP: f64 = 60.0;
const TICKS: usize = 5;

struct Series<'a> {
    label: &'a str,
    color: &'a str,
    dashed: bool,
    value: fn(&SweepRow) -> f64,
}

struct Panel<'a> {
    title: &'a str,
    top: f64,
    series: Vec<Series<'a>>,
}

pub fn render(rows: &[SweepRow], log_x: bool) -> String {
    let log_x = log_x && rows.iter().all(|r| r.x > 0.0);
    let xmap = |x: f64| if log_x { x.log10() } else { x };

    let panels = [
        Panel {
            title: "f(x) <= arctan(x) <= h(x)",
            top: MARGIN_TOP,
            series: vec![
                Series {
                    label: "f (lower)",
                    color: "#1f77b4",
                    dashed: false,
                    value: |r| r.f,
                },
                Series {
                    label: "arctan",
                    color: "#000000",
                    dashed: true,
                    value: |r| r.g,
                },
                Series {
                    label: "h (upper)",
                    color: "#d62728",
                    dashed: false,
                    value: |r| r.h,
                },
            ],
        },
        Panel {
            title: "relative errors",
            top: MARGIN_TOP + PANEL_HEIGHT + GAP,
            series: vec![
                Series {
                    label: "r_f",
                    color: "#1f77b4",
                    dashed: false,
                    value: |r| r.r_f,
                },
                Series {
                    label: "r_h",
                    color: "#d62728",
                    dashed: false,
                    value: |r| r.r_h,
                },
                Series {
                    label: "env_max",
                    color: "#7f7f7f",
                    dashed: true,
                    value: |r| r.env_max,
                },
                Series {
                    label: "env_min",
                    color: "#bcbd22",
                    dashed: true,
                    value: |r| r.env_min,
                },
            ],
        },
    ];

    let height = MARGIN_TOP + 2.0 * PANEL_HEIGHT + GAP + 40.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let (x_lo, x_hi) = range(rows.iter().map(|r| xmap(r.x)));
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    for panel in &panels {
        let (y_lo, y_hi) = range(
            panel
                .series
                .iter()
                .flat_map(|s| rows.iter().map(move |r| (s.value)(r))),
        );
        let sx = |x: f64| MARGIN_LEFT + (xmap(x) - x_lo) / (x_hi - x_lo) * plot_w;
        let sy = |y: f64| panel.top + PANEL_HEIGHT - (y - y_lo) / (y_hi - y_lo) * PANEL_HEIGHT;

        let _ = writeln!(
            svg,
            r#"<rect x="{MARGIN_LEFT}" y="{}" width="{plot_w}" height="{PANEL_HEIGHT}" fill="none" stroke="black"/>"#,
            panel.top
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            panel.top - 8.0,
            escape(panel.title)
        );
        for i in 0..=TICKS {
            let t = i as f64 / TICKS as f64;
            let yv = y_lo + t * (y_hi - y_lo);
            let py = sy(yv);
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                MARGIN_LEFT - 4.0,
                MARGIN_LEFT - 6.0,
                py + 4.0,
                tick_label(yv)
            );
            let xv = x_lo + t * (x_hi - x_lo);
            let px = MARGIN_LEFT + t * plot_w;
            let bottom = panel.top + PANEL_HEIGHT;
            let label = if log_x {
                format!("1e{xv:.1}")
            } else {
                tick_label(xv)
            };
            let _ = writeln!(
                svg,
                r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{label}</text>"#,
                bottom + 4.0,
                bottom + 16.0
            );
        }
        for (k, s) in panel.series.iter().enumerate() {
            let points: Vec<String> = rows
                .iter()
                .map(|r| (r.x, (s.value)(r)))
                .filter(|(_, y)| y.is_finite())
                .map(|(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let dash = if s.dashed {
                r#" stroke-dasharray="5,3""#
            } else {
                ""
            };
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                s.color,
                points.join(" ")
            );
            let ly = panel.top + 14.0 + 16.0 * k as f64;
            let lx = WIDTH - MARGIN_RIGHT + 12.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"{dash}/><text x="{}" y="{}">{}</text>"#,
                lx + 24.0,
                s.color,
                lx + 30.0,
                ly + 4.0,
                escape(s.label)
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">x{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        height - 6.0,
        if log_x { " (log scale)" } else { "" }
    );
    svg.push_str("</svg>\n");
    svg
}

/// Finite min and max, widened when degenerate.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * hi.abs().max(1e-300) {
        let pad = lo.abs().max(1.0) * 0.5;
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() < 1e-2 || v.abs() >= 1e4 {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
