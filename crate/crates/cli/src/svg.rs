//! Minimal standalone SVG line plots, one polyline per column.

use crate::trajectory::Trajectory;
use anyhow::Result;
use std::io::Write;
use std::path::Path;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
];

pub fn emit_svg_lineplot(
    traj: &Trajectory,
    columns: &[&str],
    out: &mut dyn Write,
) -> Result<()> {
    let t = traj.column("t")?;
    let series: Vec<(&str, &[f64])> = columns
        .iter()
        .map(|name| traj.column(name).map(|c| (*name, c)))
        .collect::<Result<_>>()?;

    let (xmin, xmax) = padded_range(t);
    let all: Vec<f64> = series.iter().flat_map(|(_, c)| c.iter().copied()).collect();
    let (ymin, ymax) = padded_range(&all);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x = |v: f64| MARGIN_LEFT + (v - xmin) / (xmax - xmin) * plot_w;
    let y = |v: f64| MARGIN_TOP + (1.0 - (v - ymin) / (ymax - ymin)) * plot_h;

    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    )?;
    writeln!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>")?;

    // Axes with five ticks each.
    let x0 = MARGIN_LEFT;
    let x1 = MARGIN_LEFT + plot_w;
    let y0 = MARGIN_TOP + plot_h;
    let y1 = MARGIN_TOP;
    writeln!(out, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>")?;
    writeln!(out, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>")?;
    for i in 0..=4 {
        let frac = f64::from(i) / 4.0;
        let xv = xmin + frac * (xmax - xmin);
        let xp = x(xv);
        writeln!(out, "<line x1=\"{xp:.2}\" y1=\"{y0}\" x2=\"{xp:.2}\" y2=\"{}\" stroke=\"black\"/>", y0 + 5.0)?;
        writeln!(
            out,
            "<text x=\"{xp:.2}\" y=\"{}\" text-anchor=\"middle\">{xv:.0}</text>",
            y0 + 20.0
        )?;
        let yv = ymin + frac * (ymax - ymin);
        let yp = y(yv);
        writeln!(out, "<line x1=\"{}\" y1=\"{yp:.2}\" x2=\"{x0}\" y2=\"{yp:.2}\" stroke=\"black\"/>", x0 - 5.0)?;
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{yv:.3}</text>",
            x0 - 9.0,
            yp + 4.0
        )?;
    }
    writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">t</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    )?;

    for (idx, (name, values)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        if values.len() == 1 {
            writeln!(
                out,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>",
                x(t[0]),
                y(values[0])
            )?;
        } else {
            let points: Vec<String> = t
                .iter()
                .zip(values.iter())
                .map(|(tv, v)| format!("{:.2},{:.2}", x(*tv), y(*v)))
                .collect();
            writeln!(
                out,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                points.join(" ")
            )?;
        }
        let ly = MARGIN_TOP + 16.0 * idx as f64 + 8.0;
        let lx = MARGIN_LEFT + plot_w + 12.0;
        writeln!(
            out,
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 18.0
        )?;
        writeln!(out, "<text x=\"{}\" y=\"{}\">{name}</text>", lx + 24.0, ly + 4.0)?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

pub fn emit_svg_path(traj: &Trajectory, columns: &[&str], path: &Path) -> Result<()> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
    emit_svg_lineplot(traj, columns, &mut file)
}

fn padded_range(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        // Constant or single-point series: widen so scaling never
        // divides by zero.
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}
