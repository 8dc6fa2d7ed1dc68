//! SVG figures for sweep results and band structures.

use std::path::Path;

use super::config::{AxisName, PlotKind};
use super::run::SweepResult;
use crate::error::{Error, Result};
use crate::model::BandStructure;
use crate::plot::{Heatmap, LineChart, Series};

fn short(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn single_axis(
    res: &SweepResult,
    expected: &'static str,
    allow_none: bool,
) -> Result<Option<AxisName>> {
    let varied = res.axes.varied();
    match varied.len() {
        0 if allow_none => Ok(None),
        1 => Ok(Some(varied[0])),
        n => Err(Error::PlotArity {
            expected,
            got: n + 1,
        }),
    }
}

/// `I(t)` with one curve per value of the single varied parameter. A result
/// without any varied parameter gives one curve.
pub fn lines_chart(res: &SweepResult) -> Result<LineChart> {
    let axis = single_axis(res, "time plus at most one parameter axis", true)?;
    let series = res
        .trajectories()
        .map(|rows| {
            let label = match axis {
                Some(a) => format!("{} = {}", a.label(), short(rows[0].point.value(a))),
                None => "I".to_string(),
            };
            Series {
                label,
                points: rows.iter().map(|r| (r.record.t, r.record.mutual)).collect(),
            }
        })
        .collect();
    Ok(LineChart {
        title: res.title.clone(),
        x_label: "scaled time t".into(),
        y_label: "mutual entropy I (bits)".into(),
        series,
    })
}

/// `I` over time and the single varied parameter.
pub fn heatmap_chart(res: &SweepResult) -> Result<Heatmap> {
    let axis = single_axis(res, "time plus exactly one parameter axis", false)?
        .expect("a varied axis is required");
    let values = res
        .trajectories()
        .map(|rows| rows.iter().map(|r| r.record.mutual).collect())
        .collect();
    Ok(Heatmap {
        title: res.title.clone(),
        x_label: "scaled time t".into(),
        y_label: axis.label().into(),
        value_label: "I (bits)".into(),
        xs: res.times.clone(),
        ys: res.axes.values(axis).to_vec(),
        values,
    })
}

pub fn sweep_svg(res: &SweepResult, kind: PlotKind) -> Result<String> {
    Ok(match kind {
        PlotKind::Lines => lines_chart(res)?.to_svg(),
        PlotKind::Heatmap => heatmap_chart(res)?.to_svg(),
    })
}

pub fn render_svg(res: &SweepResult, kind: PlotKind, path: &Path) -> Result<()> {
    let svg = sweep_svg(res, kind)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

pub fn bands_chart(bands: &BandStructure, title: &str) -> LineChart {
    let series = (0..bands.levels())
        .map(|k| Series {
            label: format!("E_{k}"),
            points: bands
                .n_g_grid
                .iter()
                .zip(&bands.bands)
                .map(|(&ng, levels)| (ng, levels[k]))
                .collect(),
        })
        .collect();
    LineChart {
        title: title.to_string(),
        x_label: "gate charge n_g1 = n_g2".into(),
        y_label: "energy".into(),
        series,
    }
}

pub fn render_bands_svg(bands: &BandStructure, title: &str, path: &Path) -> Result<()> {
    std::fs::write(path, bands_chart(bands, title).to_svg()).map_err(|e| Error::io(path, e))
}
