//! Radar-chart SVG rendering: 18 radial axes in registry display order,
//! the baseline polygon anchored at half radius, and every other model
//! scaled per axis relative to the baseline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::data::REGISTRY_SIZE;
use crate::{Error, Result};

/// Number of radial axes; fixed by the benchmark registry.
pub const RADAR_AXES: usize = REGISTRY_SIZE;

/// Default stroke palette for model polygons, in series order.
pub const MODEL_PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Baseline polygon stroke (always dash-stroked).
pub const BASELINE_STROKE: &str = "#444444";
const BASELINE_DASH: &str = "5 4";

/// How a model score maps to a radial distance relative to the baseline.
///
/// `Ratio` (default): `r = (R/2) * score / baseline`, so equal performance
/// lands on the baseline ring and double lands on the rim. `Additive`:
/// `r = (R/2) * (1 + score - baseline)`, a unit score difference spanning
/// half the radius. Both clamp to `[0, R]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingMode {
    Ratio,
    Additive,
}

impl std::str::FromStr for ScalingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(ScalingMode::Ratio),
            "additive" => Ok(ScalingMode::Additive),
            other => Err(Error::InvalidArgument(format!("unknown scaling mode `{other}`"))),
        }
    }
}

/// One plotted model: name, per-axis scores, and an optional stroke color
/// (palette order applies otherwise).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSeries {
    pub name: String,
    pub scores: BTreeMap<String, f64>,
    pub stroke: Option<String>,
}

impl ModelSeries {
    pub fn new(name: impl Into<String>, scores: BTreeMap<String, f64>) -> Self {
        ModelSeries { name: name.into(), scores, stroke: None }
    }
}

/// Full chart specification.
#[derive(Debug, Clone, PartialEq)]
pub struct RadarSpec {
    /// Exactly 18 axis labels in registry display order.
    pub axes: Vec<String>,
    pub baseline_name: String,
    pub baseline: BTreeMap<String, f64>,
    pub models: Vec<ModelSeries>,
    /// Chart area radius in drawing units.
    pub radius: f64,
    /// Canvas (width, height).
    pub size: (u32, u32),
    pub mode: ScalingMode,
    pub title: Option<String>,
}

impl RadarSpec {
    pub fn new(
        baseline_name: impl Into<String>,
        baseline: BTreeMap<String, f64>,
        models: Vec<ModelSeries>,
    ) -> Self {
        RadarSpec {
            axes: registry_axis_labels(),
            baseline_name: baseline_name.into(),
            baseline,
            models,
            radius: 300.0,
            size: (960, 900),
            mode: ScalingMode::Ratio,
            title: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.len() != RADAR_AXES {
            return Err(Error::InvalidArgument(format!(
                "radar charts need exactly {RADAR_AXES} axes, got {}",
                self.axes.len()
            )));
        }
        if !(self.radius > 0.0) {
            return Err(Error::InvalidArgument("radius must be > 0".into()));
        }
        if self.size.0 == 0 || self.size.1 == 0 {
            return Err(Error::InvalidArgument("canvas size must be nonzero".into()));
        }
        let check = |name: &str, scores: &BTreeMap<String, f64>| -> Result<()> {
            for axis in &self.axes {
                match scores.get(axis) {
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "series `{name}` has no score for axis `{axis}`"
                        )))
                    }
                    Some(s) if *s < 0.0 => {
                        return Err(Error::InvalidArgument(format!(
                            "series `{name}` has negative score {s} on `{axis}`"
                        )))
                    }
                    _ => {}
                }
            }
            Ok(())
        };
        check(&self.baseline_name, &self.baseline)?;
        for model in &self.models {
            check(&model.name, &model.scores)?;
        }
        Ok(())
    }
}

/// The 18 registry dataset names in display order.
pub fn registry_axis_labels() -> Vec<String> {
    crate::data::registry().iter().map(|d| d.name.to_string()).collect()
}

/// Radial distance for one score against the baseline score of its axis.
/// The baseline itself maps to exactly `radius / 2`; the degenerate zero
/// baseline puts zero scores on the baseline ring and anything positive on
/// the rim.
pub fn radar_radius(score: f64, baseline_score: f64, radius: f64, mode: ScalingMode) -> Result<f64> {
    Ok(scaled_radius(score, baseline_score, radius, mode)?.0)
}

/// As [`radar_radius`], also reporting whether the value was clamped at
/// the rim (information loss worth annotating on the chart).
fn scaled_radius(
    score: f64,
    baseline_score: f64,
    radius: f64,
    mode: ScalingMode,
) -> Result<(f64, bool)> {
    if score < 0.0 || baseline_score < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "radar scores must be non-negative, got {score} vs baseline {baseline_score}"
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument("radius must be > 0".into()));
    }
    let raw = match mode {
        ScalingMode::Ratio if baseline_score == 0.0 => {
            if score == 0.0 {
                radius / 2.0
            } else {
                radius
            }
        }
        ScalingMode::Ratio => radius / 2.0 * (score / baseline_score),
        ScalingMode::Additive => radius / 2.0 * (1.0 + (score - baseline_score)),
    };
    Ok((raw.clamp(0.0, radius), raw > radius))
}

/// Axis angle in radians: axis 0 points up, subsequent axes proceed
/// clockwise in 20-degree steps.
fn axis_angle(i: usize) -> f64 {
    (90.0 - i as f64 * 360.0 / RADAR_AXES as f64).to_radians()
}

fn vertex(cx: f64, cy: f64, angle: f64, r: f64) -> (f64, f64) {
    (cx + r * angle.cos(), cy - r * angle.sin())
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

fn escape_xml(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '&' => "&amp;".to_string(),
            '<' => "&lt;".to_string(),
            '>' => "&gt;".to_string(),
            '"' => "&quot;".to_string(),
            '\'' => "&apos;".to_string(),
            c => c.to_string(),
        })
        .collect()
}

/// Renders the chart as standalone SVG 1.1 text. Output is a pure function
/// of the spec: the same spec always yields byte-identical SVG.
pub fn render_radar(spec: &RadarSpec) -> Result<String> {
    spec.validate()?;
    let (w, h) = (spec.size.0 as f64, spec.size.1 as f64);
    let (cx, cy) = (w / 2.0, h / 2.0);
    let r = spec.radius;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        spec.size.0, spec.size.1, spec.size.0, spec.size.1
    ));
    svg.push_str(&format!("  <rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", spec.size.0, spec.size.1));
    if let Some(title) = &spec.title {
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
            fmt(cx),
            escape_xml(title)
        ));
    }

    // Rings: the rim and the half-radius baseline anchor.
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#dddddd\"/>\n",
        fmt(cx),
        fmt(cy),
        fmt(r)
    ));
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#eeeeee\"/>\n",
        fmt(cx),
        fmt(cy),
        fmt(r / 2.0)
    ));

    // Axis spokes and labels.
    for (i, axis) in spec.axes.iter().enumerate() {
        let angle = axis_angle(i);
        let (x, y) = vertex(cx, cy, angle, r);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#eeeeee\"/>\n",
            fmt(cx),
            fmt(cy),
            fmt(x),
            fmt(y)
        ));
        let (lx, ly) = vertex(cx, cy, angle, r + 14.0);
        let anchor = if angle.cos() > 0.3 {
            "start"
        } else if angle.cos() < -0.3 {
            "end"
        } else {
            "middle"
        };
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"{anchor}\">{}</text>\n",
            fmt(lx),
            fmt(ly + 4.0),
            escape_xml(axis)
        ));
    }

    // Baseline polygon: every vertex sits on the half-radius ring.
    let baseline_points: Vec<(f64, f64)> = (0..spec.axes.len())
        .map(|i| vertex(cx, cy, axis_angle(i), r / 2.0))
        .collect();
    svg.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"{BASELINE_STROKE}\" stroke-dasharray=\"{BASELINE_DASH}\" stroke-width=\"1.5\"/>\n",
        points_attr(&baseline_points)
    ));

    // Model polygons plus rim ticks wherever a vertex was clamped.
    for (m, model) in spec.models.iter().enumerate() {
        let stroke = model
            .stroke
            .clone()
            .unwrap_or_else(|| MODEL_PALETTE[m % MODEL_PALETTE.len()].to_string());
        let mut points = Vec::with_capacity(spec.axes.len());
        let mut ticks = String::new();
        for (i, axis) in spec.axes.iter().enumerate() {
            let angle = axis_angle(i);
            let (radius_i, clamped) =
                scaled_radius(model.scores[axis], spec.baseline[axis], r, spec.mode)?;
            points.push(vertex(cx, cy, angle, radius_i));
            if clamped {
                let (x1, y1) = vertex(cx, cy, angle, r - 7.0);
                let (x2, y2) = vertex(cx, cy, angle, r + 7.0);
                ticks.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"3\"/>\n",
                    fmt(x1),
                    fmt(y1),
                    fmt(x2),
                    fmt(y2)
                ));
            }
        }
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"{stroke}\" fill-opacity=\"0.06\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>\n",
            points_attr(&points)
        ));
        svg.push_str(&ticks);
    }

    // Legend.
    let mut ly = 20.0;
    let legend_entry = |svg: &mut String, y: f64, stroke: &str, dash: Option<&str>, label: &str| {
        let dash_attr = dash.map(|d| format!(" stroke-dasharray=\"{d}\"")).unwrap_or_default();
        svg.push_str(&format!(
            "  <line x1=\"16\" y1=\"{}\" x2=\"44\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"2\"{dash_attr}/>\n",
            fmt(y),
            fmt(y)
        ));
        svg.push_str(&format!(
            "  <text x=\"50\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            fmt(y + 4.0),
            escape_xml(label)
        ));
    };
    legend_entry(&mut svg, ly, BASELINE_STROKE, Some(BASELINE_DASH), &spec.baseline_name);
    for (m, model) in spec.models.iter().enumerate() {
        ly += 18.0;
        let stroke = model
            .stroke
            .as_deref()
            .unwrap_or(MODEL_PALETTE[m % MODEL_PALETTE.len()]);
        legend_entry(&mut svg, ly, stroke, None, &model.name);
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn points_attr(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
        .collect::<Vec<_>>()
        .join(" ")
}
