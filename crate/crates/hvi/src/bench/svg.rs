//! Static SVG charts of benchmark traces: one log-log chart per metric,
//! solid lines for ergodic series, dashed lines for the outer-iterate
//! series. Output is a standalone SVG 1.1 document with no external assets
//! and is byte-deterministic for identical input.

use crate::error::{Error, Result};

use super::runner::MetricsRow;

/// One input trace with the name used in legends.
pub struct SeriesSet {
    pub name: String,
    pub rows: Vec<MetricsRow>,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
const CHART_W: f64 = 470.0;
const CHART_H: f64 = 360.0;
const MARGIN_L: f64 = 62.0;
const MARGIN_R: f64 = 18.0;
const MARGIN_T: f64 = 34.0;
const MARGIN_B: f64 = 46.0;

struct Series {
    label: String,
    color: &'static str,
    dashed: bool,
    /// `(epochs, value)` pairs, both strictly positive.
    points: Vec<(f64, f64)>,
}

struct Chart {
    title: &'static str,
    series: Vec<Series>,
    notes: Vec<String>,
}

fn collect_chart(
    inputs: &[SeriesSet],
    title: &'static str,
    erg: impl Fn(&MetricsRow) -> Option<f64>,
    last_w: impl Fn(&MetricsRow) -> Option<f64>,
) -> Chart {
    let mut series = Vec::new();
    let mut notes = Vec::new();
    for (idx, input) in inputs.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let grab = |f: &dyn Fn(&MetricsRow) -> Option<f64>| -> Vec<(f64, f64)> {
            input
                .rows
                .iter()
                .filter_map(|r| f(r).map(|v| (r.epochs, v)))
                .filter(|&(e, v)| e > 0.0 && v > 0.0 && v.is_finite())
                .collect()
        };
        let erg_points = grab(&erg);
        if erg_points.is_empty() {
            notes.push(format!("{} (ergodic): omitted, no data", input.name));
        } else {
            series.push(Series {
                label: format!("{} (ergodic)", input.name),
                color,
                dashed: false,
                points: erg_points,
            });
        }
        let w_points = grab(&last_w);
        if w_points.is_empty() {
            notes.push(format!("{} (outer iterate): omitted, no data", input.name));
        } else {
            series.push(Series {
                label: format!("{} (outer iterate)", input.name),
                color,
                dashed: true,
                points: w_points,
            });
        }
    }
    Chart { title, series, notes }
}

fn axis_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let (mut lo, mut hi) = (lo.log10(), hi.log10());
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if (hi - lo).abs() < 1e-9 {
        lo -= 0.5;
        hi += 0.5;
    }
    (lo, hi)
}

fn render_chart(out: &mut String, chart: &Chart, x_off: f64) {
    let plot_w = CHART_W - MARGIN_L - MARGIN_R;
    let plot_h = CHART_H - MARGIN_T - MARGIN_B;
    let (x_lo, x_hi) = axis_range(chart.series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y_lo, y_hi) = axis_range(chart.series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let sx = |e: f64| x_off + MARGIN_L + (e.log10() - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |v: f64| MARGIN_T + (y_hi - v.log10()) / (y_hi - y_lo) * plot_h;

    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"20\" font-size=\"14\" font-family=\"sans-serif\">{}</text>\n",
        x_off + MARGIN_L,
        chart.title
    ));
    out.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#333\"/>\n",
        x_off + MARGIN_L,
        MARGIN_T,
        plot_w,
        plot_h
    ));

    // Decade ticks on both log axes.
    let mut p = x_lo.ceil() as i64;
    while (p as f64) <= x_hi {
        let x = x_off + MARGIN_L + (p as f64 - x_lo) / (x_hi - x_lo) * plot_w;
        out.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#ccc\"/>\n",
            MARGIN_T,
            MARGIN_T + plot_h
        ));
        out.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"middle\">1e{p}</text>\n",
            MARGIN_T + plot_h + 14.0
        ));
        p += 1;
    }
    let mut p = y_lo.ceil() as i64;
    while (p as f64) <= y_hi {
        let y = MARGIN_T + (y_hi - p as f64) / (y_hi - y_lo) * plot_h;
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ccc\"/>\n",
            x_off + MARGIN_L,
            x_off + MARGIN_L + plot_w
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"end\">1e{p}</text>\n",
            x_off + MARGIN_L - 4.0,
            y + 3.0
        ));
        p += 1;
    }
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"middle\">epochs</text>\n",
        x_off + MARGIN_L + plot_w / 2.0,
        MARGIN_T + plot_h + 32.0
    ));

    for s in &chart.series {
        let dash = if s.dashed { " stroke-dasharray=\"6,4\"" } else { "" };
        let pts: Vec<String> =
            s.points.iter().map(|&(e, v)| format!("{:.2},{:.2}", sx(e), sy(v))).collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\"{} stroke-width=\"1.5\" points=\"{}\"/>\n",
            s.color,
            dash,
            pts.join(" ")
        ));
    }

    // Legend and omission notes, below the axis label.
    let mut ly = MARGIN_T + 8.0;
    for s in &chart.series {
        let dash = if s.dashed { " stroke-dasharray=\"6,4\"" } else { "" };
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\"{} stroke-width=\"1.5\"/>\n",
            x_off + MARGIN_L + 8.0,
            x_off + MARGIN_L + 30.0,
            s.color,
            dash
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"sans-serif\">{}</text>\n",
            x_off + MARGIN_L + 34.0,
            ly + 3.0,
            xml_escape(&s.label)
        ));
        ly += 13.0;
    }
    for note in &chart.notes {
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"sans-serif\" fill=\"#888\" class=\"note\">note: {}</text>\n",
            x_off + MARGIN_L + 8.0,
            ly + 3.0,
            xml_escape(note)
        ));
        ly += 13.0;
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the charts for a set of parsed traces. Fails if no metric has
/// any plottable data.
pub fn emit_svg(inputs: &[SeriesSet]) -> Result<String> {
    if inputs.is_empty() {
        return Err(Error::config("no input traces to plot"));
    }
    let charts: Vec<Chart> = [
        collect_chart(inputs, "feasibility gap", |r| r.feas_erg, |r| r.feas_w),
        collect_chart(inputs, "optimality gap", |r| r.opt_erg, |r| r.opt_w),
        collect_chart(inputs, "distance to solution", |r| r.dist_erg, |r| r.dist_w),
    ]
    .into_iter()
    .filter(|c| !c.series.is_empty())
    .collect();
    if charts.is_empty() {
        return Err(Error::config("no plottable series in any metric column"));
    }

    let total_w = CHART_W * charts.len() as f64;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n",
        total_w, CHART_H, total_w, CHART_H
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, chart) in charts.iter().enumerate() {
        render_chart(&mut out, chart, CHART_W * i as f64);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
