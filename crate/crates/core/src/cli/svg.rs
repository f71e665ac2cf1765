//! Minimal SVG line plots: axes, ticks, labels and a legend.

use std::fmt::Write as _;

use super::table::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 160.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// Plot every column after the first against the first.
pub fn line_plot(table: &Table, x_label: &str, y_label: &str, x_scale: Scale) -> String {
    let xs: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
    let tx = |x: f64| match x_scale {
        Scale::Linear => x,
        Scale::Log => x.log10(),
    };
    let (x0, x1) = min_max(xs.iter().map(|&x| tx(x)));
    let (mut y0, mut y1) = min_max(
        table
            .rows
            .iter()
            .flat_map(|r| r[1..].iter().copied())
            .filter(|v| v.is_finite()),
    );
    if y1 - y0 < 1e-12 {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let pw = WIDTH - MARGIN_L - MARGIN_R;
    let ph = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (tx(x) - x0) / (x1 - x0).max(1e-300) * pw;
    let py = |y: f64| MARGIN_T + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    )
    .unwrap();

    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let xv = x0 + f * (x1 - x0);
        let xpix = MARGIN_L + f * pw;
        let label = match x_scale {
            Scale::Linear => format!("{xv:.3}"),
            Scale::Log => format!("1e{xv:.1}"),
        };
        writeln!(
            s,
            r#"<line x1="{xpix:.2}" y1="{yb:.2}" x2="{xpix:.2}" y2="{yt:.2}" stroke="black"/><text x="{xpix:.2}" y="{yl:.2}" text-anchor="middle">{label}</text>"#,
            yb = MARGIN_T + ph,
            yt = MARGIN_T + ph - 5.0,
            yl = MARGIN_T + ph + 18.0
        )
        .unwrap();
        let yv = y0 + f * (y1 - y0);
        let ypix = py(yv);
        writeln!(
            s,
            r#"<line x1="{MARGIN_L}" y1="{ypix:.2}" x2="{xr:.2}" y2="{ypix:.2}" stroke="black"/><text x="{xl:.2}" y="{yt:.2}" text-anchor="end">{yv:.3}</text>"#,
            xr = MARGIN_L + 5.0,
            xl = MARGIN_L - 8.0,
            yt = ypix + 4.0
        )
        .unwrap();
    }
    if y0 < 0.0 && y1 > 0.0 {
        writeln!(
            s,
            r##"<line x1="{MARGIN_L}" y1="{z:.2}" x2="{xr:.2}" y2="{z:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
            z = py(0.0),
            xr = MARGIN_L + pw
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_L + 0.5 * pw,
        HEIGHT - 10.0,
        escape(x_label)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="15" y="{y:.2}" text-anchor="middle" transform="rotate(-90 15 {y:.2})">{}</text>"#,
        escape(y_label),
        y = MARGIN_T + 0.5 * ph
    )
    .unwrap();

    for (k, name) in table.columns.iter().enumerate().skip(1) {
        let color = COLORS[(k - 1) % COLORS.len()];
        let mut path = String::new();
        let mut pen_down = false;
        for r in &table.rows {
            let (x, y) = (r[0], r[k]);
            if !y.is_finite() || (x_scale == Scale::Log && x <= 0.0) {
                pen_down = false;
                continue;
            }
            let cmd = if pen_down { 'L' } else { 'M' };
            write!(path, "{cmd}{:.2} {:.2} ", px(x), py(y)).unwrap();
            pen_down = true;
        }
        writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.trim_end()
        )
        .unwrap();
        let ly = MARGIN_T + 10.0 + 18.0 * (k - 1) as f64;
        let lx = MARGIN_L + pw + 10.0;
        writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 25.0,
            ly + 4.0,
            escape(name)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
