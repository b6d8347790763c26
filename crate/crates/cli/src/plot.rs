//! Static SVG line plots of sweep results: value against one axis of the
//! sweep, one polyline per series.

use crate::quantity::Params;
use crate::sweep::{Row, RowSpec};
use anyhow::bail;
use oscspread::StateSpec;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotConfig {
    /// One of nr, l, m, D, omega, k, q, n.
    pub x_axis: String,
    pub file: String,
    #[serde(default)]
    pub log_x: bool,
    #[serde(default)]
    pub log_y: bool,
}

fn axis_value(axis: &str, state: &StateSpec, p: &Params) -> anyhow::Result<f64> {
    let hyper = || match state {
        StateSpec::Hyper(h) => Ok(h),
        StateSpec::Cartesian(_) => bail!("plot axis '{axis}' needs hyperspherical states"),
    };
    Ok(match axis {
        "nr" => hyper()?.n_r as f64,
        "l" => hyper()?.l() as f64,
        "m" => hyper()?.m() as f64,
        "D" => state.spec().dim as f64,
        "omega" => state.spec().omega,
        "k" => p.k,
        "q" => p.q,
        "n" => p.n as f64,
        other => bail!("unknown plot axis '{other}' (nr, l, m, D, omega, k, q, n)"),
    })
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

pub fn render(cfg: &PlotConfig, specs: &[RowSpec], rows: &[Row]) -> anyhow::Result<String> {
    let kinds: std::collections::BTreeSet<_> = rows.iter().map(|r| (r.quantity, r.space)).collect();
    let params: std::collections::BTreeSet<_> =
        rows.iter().map(|r| (r.k.map(f64::to_bits), r.q.map(f64::to_bits), r.n)).collect();
    let label = |r: &Row| {
        let mut parts = Vec::new();
        if kinds.len() > 1 {
            parts.push(format!("{} {}", r.quantity, r.space));
        }
        if params.len() > 1 {
            let p = [r.k.map(|v| format!("k={v}")), r.q.map(|v| format!("q={v}")), r.n.map(|v| format!("n={v}"))];
            parts.extend(p.into_iter().flatten());
        }
        parts.push(r.series.clone());
        parts.join(" ")
    };
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (s, r) in specs.iter().zip(rows) {
        let Some(v) = r.value else { continue };
        let x = axis_value(&cfg.x_axis, &s.state, &s.params)?;
        let (x, y) = (tx(x, cfg.log_x), tx(v, cfg.log_y));
        if !(x.is_finite() && y.is_finite()) {
            continue;
        }
        series.entry(label(r)).or_default().push((x, y));
    }
    if series.is_empty() {
        bail!("nothing to plot: no successful rows");
    }
    for pts in series.values_mut() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    let all = series.values().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#)?;
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#)?;
    writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#)?;
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (gx, gy) = (px(xv), py(yv));
        writeln!(s, r#"<line x1="{gx:.2}" y1="{:.2}" x2="{gx:.2}" y2="{:.2}" stroke="black"/>"#, TOP + ph, TOP + ph + 5.0)?;
        writeln!(s, r#"<text x="{gx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, tick(xv, cfg.log_x))?;
        writeln!(s, r#"<line x1="{:.2}" y1="{gy:.2}" x2="{LEFT}" y2="{gy:.2}" stroke="black"/>"#, LEFT - 5.0)?;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, gy + 4.0, tick(yv, cfg.log_y))?;
    }
    let xl = if cfg.log_x { format!("log10 {}", cfg.x_axis) } else { cfg.x_axis.clone() };
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, H - 10.0, esc(&xl))?;
    let yl = if cfg.log_y { "log10 value" } else { "value" };
    writeln!(s, r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{yl}</text>"#, TOP + ph / 2.0, TOP + ph / 2.0)?;
    for (i, (name, pts)) in series.iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        writeln!(s, r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#, path.join(" "))?;
        for &(x, y) in pts {
            writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{c}"/>"#, px(x), py(y))?;
        }
        let ly = TOP + 10.0 + 16.0 * i as f64;
        writeln!(s, r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{c}" stroke-width="2"/>"#, W - RIGHT + 12.0, W - RIGHT + 32.0)?;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, W - RIGHT + 38.0, ly + 4.0, esc(name))?;
    }
    writeln!(s, "</svg>")?;
    Ok(s)
}

fn tx(v: f64, log: bool) -> f64 {
    if log {
        if v > 0.0 {
            v.log10()
        } else {
            f64::NAN
        }
    } else {
        v
    }
}

fn tick(v: f64, log: bool) -> String {
    if log {
        format!("{v:.2}")
    } else {
        format!("{v:.4}")
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_rows, SweepConfig};

    #[test]
    fn renders_one_polyline_per_series() {
        let c = SweepConfig::parse(
            r#"{"states":[{"kind":"hyper","D":3,"omega":1,"nr":[10,20,40]}],
                "quantities":["moment"],"k":[1,2],"engines":["closed","asymptotic"]}"#,
        )
        .unwrap();
        let specs = c.rows().unwrap();
        let rows = run_rows(&specs, 1e-10);
        let cfg = PlotConfig { x_axis: "nr".into(), file: String::new(), log_x: true, log_y: false };
        let svg = render(&cfg, &specs, &rows).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert!(svg.contains("k=2 asymptotic:rydberg"));
        assert!(render(&PlotConfig { x_axis: "zz".into(), ..cfg }, &specs, &rows).is_err());
    }
}
