//! Self-contained SVG rendering of sweep results: peak probability and peak
//! step versus grid side, one line per weight preset. No dependencies — the
//! markup is assembled directly so output is deterministic byte for byte.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::region::WeightPreset;
use crate::sweep::SweepRecord;

const WIDTH: f64 = 760.0;
const PANEL_HEIGHT: f64 = 280.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 52.0;
const FONT: &str = "font-family=\"Helvetica, Arial, sans-serif\"";

fn preset_color(preset: WeightPreset) -> &'static str {
    match preset {
        WeightPreset::Zero => "#6b7280",
        WeightPreset::WongSingle => "#d62728",
        WeightPreset::QuarterInverse => "#1f77b4",
        WeightPreset::Proposed => "#2ca02c",
    }
}

fn preset_order(preset: WeightPreset) -> usize {
    WeightPreset::ALL
        .iter()
        .position(|&p| p == preset)
        .expect("every preset is in ALL")
}

/// Linear map from data coordinates to pixel coordinates.
struct Scale {
    domain: (f64, f64),
    range: (f64, f64),
}

impl Scale {
    fn apply(&self, value: f64) -> f64 {
        let (d0, d1) = self.domain;
        let (r0, r1) = self.range;
        if (d1 - d0).abs() < f64::EPSILON {
            return (r0 + r1) / 2.0;
        }
        r0 + (value - d0) / (d1 - d0) * (r1 - r0)
    }
}

fn fmt(value: f64) -> String {
    // Two decimals is plenty for pixel positions and keeps files small.
    format!("{value:.2}")
}

/// Per-preset line series keyed by canonical preset order: each entry maps to
/// the preset and its `(side, value)` points sorted by side.
type SeriesMap = BTreeMap<usize, (WeightPreset, Vec<(usize, f64)>)>;

struct Panel<'a> {
    top: f64,
    title: &'a str,
    y_label: &'a str,
    y_max: f64,
    y_ticks: Vec<f64>,
    y_tick_label: fn(f64) -> String,
}

fn render_panel(
    out: &mut String,
    panel: &Panel,
    sides: &[usize],
    series: &SeriesMap,
) {
    let x_scale = Scale {
        domain: (sides[0] as f64, sides[sides.len() - 1] as f64),
        range: (MARGIN_LEFT, WIDTH - MARGIN_RIGHT),
    };
    let y_scale = Scale {
        domain: (0.0, panel.y_max),
        range: (panel.top + PANEL_HEIGHT - MARGIN_BOTTOM, panel.top + MARGIN_TOP),
    };
    let floor = panel.top + PANEL_HEIGHT - MARGIN_BOTTOM;

    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"15\" font-weight=\"bold\">{}</text>\n",
        fmt(MARGIN_LEFT),
        fmt(panel.top + 22.0),
        panel.title
    ));

    // Gridlines and y tick labels.
    for &tick in &panel.y_ticks {
        let y = y_scale.apply(tick);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#e5e7eb\" stroke-width=\"1\"/>\n",
            fmt(MARGIN_LEFT),
            fmt(y),
            fmt(WIDTH - MARGIN_RIGHT),
            fmt(y)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            fmt(MARGIN_LEFT - 8.0),
            fmt(y + 4.0),
            (panel.y_tick_label)(tick)
        ));
    }

    // Axes.
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#111827\" stroke-width=\"1.5\"/>\n",
        fmt(MARGIN_LEFT),
        fmt(panel.top + MARGIN_TOP),
        fmt(MARGIN_LEFT),
        fmt(floor)
    ));
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#111827\" stroke-width=\"1.5\"/>\n",
        fmt(MARGIN_LEFT),
        fmt(floor),
        fmt(WIDTH - MARGIN_RIGHT),
        fmt(floor)
    ));

    // X ticks at every side present in the data.
    for &side in sides {
        let x = x_scale.apply(side as f64);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#111827\" stroke-width=\"1\"/>\n",
            fmt(x),
            fmt(floor),
            fmt(x),
            fmt(floor + 5.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"11\" text-anchor=\"middle\">{side}</text>\n",
            fmt(x),
            fmt(floor + 18.0)
        ));
    }

    // Axis labels.
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"12\" text-anchor=\"middle\">grid side &#8730;N</text>\n",
        fmt((MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2.0),
        fmt(floor + 38.0)
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{}</text>\n",
        fmt(MARGIN_LEFT - 48.0),
        fmt((panel.top + MARGIN_TOP + floor) / 2.0),
        fmt(MARGIN_LEFT - 48.0),
        fmt((panel.top + MARGIN_TOP + floor) / 2.0),
        panel.y_label
    ));

    // One polyline plus markers per preset.
    for (preset, points) in series.values() {
        let color = preset_color(*preset);
        let coords: Vec<String> = points
            .iter()
            .map(|&(side, value)| {
                format!("{},{}", fmt(x_scale.apply(side as f64)), fmt(y_scale.apply(value)))
            })
            .collect();
        if coords.len() > 1 {
            out.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                coords.join(" ")
            ));
        }
        for &(side, value) in points {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3.2\" fill=\"{color}\"/>\n",
                fmt(x_scale.apply(side as f64)),
                fmt(y_scale.apply(value))
            ));
        }
    }
}

/// Render the two-panel summary figure as an SVG document.
pub fn render_svg(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }

    let mut sides: Vec<usize> = records.iter().map(|r| r.side).collect();
    sides.sort_unstable();
    sides.dedup();

    // Group records into per-preset series ordered by the canonical preset
    // order, points ordered by side.
    let mut prob_series = SeriesMap::new();
    let mut step_series = SeriesMap::new();
    let mut sorted: Vec<&SweepRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (preset_order(r.preset), r.side));
    for record in sorted {
        let order = preset_order(record.preset);
        prob_series
            .entry(order)
            .or_insert_with(|| (record.preset, Vec::new()))
            .1
            .push((record.side, record.peak_probability));
        step_series
            .entry(order)
            .or_insert_with(|| (record.preset, Vec::new()))
            .1
            .push((record.side, record.peak_step as f64));
    }

    let max_step = records
        .iter()
        .map(|r| r.peak_step)
        .max()
        .expect("records is nonempty");
    // Round the step axis up to a friendly multiple.
    let step_unit = ((max_step / 5).max(1)).next_power_of_two() as f64;
    let step_top = (max_step as f64 / step_unit).ceil() * step_unit;
    let step_ticks: Vec<f64> = (0..=5).map(|i| step_top * i as f64 / 5.0).collect();

    let total_height = 2.0 * PANEL_HEIGHT + 16.0;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(WIDTH),
        fmt(total_height),
        fmt(WIDTH),
        fmt(total_height)
    );
    out.push_str(&format!(
        "<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
        fmt(WIDTH),
        fmt(total_height)
    ));

    let k = records[0].k;
    render_panel(
        &mut out,
        &Panel {
            top: 0.0,
            title: &format!("Peak success probability vs grid side (k = {k})"),
            y_label: "peak probability",
            y_max: 1.0,
            y_ticks: vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            y_tick_label: |t| format!("{t:.1}"),
        },
        &sides,
        &prob_series,
    );
    render_panel(
        &mut out,
        &Panel {
            top: PANEL_HEIGHT + 16.0,
            title: "Steps to the peak vs grid side",
            y_label: "peak step",
            y_max: step_top,
            y_ticks: step_ticks,
            y_tick_label: |t| format!("{t:.0}"),
        },
        &sides,
        &step_series,
    );

    // Legend in the top panel's upper-right corner.
    let mut legend_y = MARGIN_TOP + 6.0;
    for (preset, _) in prob_series.values() {
        let color = preset_color(*preset);
        let x = WIDTH - MARGIN_RIGHT - 150.0;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2.5\"/>\n",
            fmt(x),
            fmt(legend_y),
            fmt(x + 22.0),
            fmt(legend_y)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" {FONT} font-size=\"12\">{preset}</text>\n",
            fmt(x + 28.0),
            fmt(legend_y + 4.0)
        ));
        legend_y += 17.0;
    }

    out.push_str("</svg>\n");
    Ok(out)
}

/// Write the summary figure to a file.
pub fn emit_plot(records: &[SweepRecord], path: &std::path::Path) -> Result<()> {
    let svg = render_svg(records)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path.display().to_string(), e))
}
