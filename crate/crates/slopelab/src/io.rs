//! File formats: JSON map and measure specs, CSV tables.
//!
//! Every scalar travels as a string in the exact grammar (`p/q` or
//! `a+b*sqrt(d)`), so files round-trip without loss and outputs are
//! byte-identical across runs.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use slopelab_core::map::PiecewiseAffineMap;
use slopelab_core::measure::{Extent, StepDensityMeasure};
use slopelab_core::scalar::ExactScalar;
use slopelab_core::subdivision::{ProbeRow, SubdivisionStats};

/// Parses one scalar in the exact grammar with a friendly error.
pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    ExactScalar::parse(text).with_context(|| format!("cannot parse scalar {text:?}"))
}

fn parse_scalars(texts: &[String]) -> Result<Vec<ExactScalar>> {
    texts.iter().map(|t| parse_scalar(t)).collect()
}

/// JSON schema for maps, mirroring the value-list constructors.
///
/// `kind` is `"interval"` or `"lift"`. For continuous maps `values`
/// holds one value per breakpoint; otherwise one pair of one-sided
/// values per cell, flattened.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapSpec {
    pub kind: String,
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
    pub continuous: bool,
}

impl MapSpec {
    pub fn build(&self) -> Result<PiecewiseAffineMap> {
        let breakpoints = parse_scalars(&self.breakpoints)?;
        let values = parse_scalars(&self.values)?;
        let map = match self.kind.as_str() {
            "interval" => {
                PiecewiseAffineMap::interval_from_values(breakpoints, values, self.continuous)
            }
            "lift" => PiecewiseAffineMap::lift_from_values(breakpoints, values, self.continuous),
            other => bail!("unknown map kind {other:?}, expected \"interval\" or \"lift\""),
        };
        map.map_err(|e| anyhow::anyhow!("invalid map spec: {e}"))
    }
}

/// Reads a [`MapSpec`] JSON file and builds the map.
pub fn read_map(path: &Path) -> Result<PiecewiseAffineMap> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: MapSpec =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    spec.build()
}

/// JSON schema for step-density measures. `extent` is `"window"` or
/// `"periodic"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub breakpoints: Vec<String>,
    pub densities: Vec<String>,
    pub extent: String,
}

impl MeasureSpec {
    pub fn build(&self) -> Result<StepDensityMeasure> {
        let breakpoints = parse_scalars(&self.breakpoints)?;
        let densities = parse_scalars(&self.densities)?;
        let measure = match self.extent.as_str() {
            "window" => StepDensityMeasure::window(breakpoints, densities),
            "periodic" => StepDensityMeasure::periodic(breakpoints, densities),
            other => bail!("unknown extent {other:?}, expected \"window\" or \"periodic\""),
        };
        measure.map_err(|e| anyhow::anyhow!("invalid measure spec: {e}"))
    }
}

/// Reads a [`MeasureSpec`] JSON file and builds the measure.
pub fn read_measure(path: &Path) -> Result<StepDensityMeasure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: MeasureSpec =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    spec.build()
}

/// Serializable description of a built map: exact breakpoints plus the
/// slope and intercept of every branch law.
#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub kind: String,
    pub breakpoints: Vec<String>,
    pub slopes: Vec<String>,
    pub intercepts: Vec<String>,
    pub continuous: bool,
}

impl MapReport {
    pub fn of(map: &PiecewiseAffineMap) -> MapReport {
        let kind = match map.kind() {
            slopelab_core::map::MapKind::Interval => "interval",
            slopelab_core::map::MapKind::CircleLift => "lift",
        };
        MapReport {
            kind: kind.to_string(),
            breakpoints: map.breakpoints().iter().map(|b| b.to_string()).collect(),
            slopes: map.laws().iter().map(|l| l.slope().to_string()).collect(),
            intercepts: map.laws().iter().map(|l| l.intercept().to_string()).collect(),
            continuous: map.is_continuous(),
        }
    }
}

/// Serializable measure description with exact strings.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureReport {
    pub breakpoints: Vec<String>,
    pub densities: Vec<String>,
    pub extent: String,
}

impl MeasureReport {
    pub fn of(mu: &StepDensityMeasure) -> MeasureReport {
        MeasureReport {
            breakpoints: mu.breakpoints().iter().map(|b| b.to_string()).collect(),
            densities: mu.densities().iter().map(|d| d.to_string()).collect(),
            extent: match mu.extent() {
                Extent::Window => "window".to_string(),
                Extent::Periodic => "periodic".to_string(),
            },
        }
    }
}

/// CSV table of a subdivision run: `stage,count,bad_measure,bound,ok`.
pub fn subdivision_csv(stats: &SubdivisionStats) -> String {
    let mut out = String::from("stage,count,bad_measure,bound,ok\n");
    for row in &stats.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.stage, row.count, row.bad_measure, row.bound, row.ok
        ));
    }
    out
}

/// CSV table of a mass-escape probe: `step,central,retained`.
pub fn probe_csv(rows: &[ProbeRow]) -> String {
    let mut out = String::from("step,central,retained\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", row.step, row.central, row.retained));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_spec_round_trips_a_tent() {
        let spec = MapSpec {
            kind: "interval".into(),
            breakpoints: vec!["0".into(), "1/2".into(), "1".into()],
            values: vec!["0".into(), "1".into(), "0".into()],
            continuous: true,
        };
        let map = spec.build().unwrap();
        assert_eq!(map.is_constant_slope(), Some(parse_scalar("2").unwrap()));
        let report = MapReport::of(&map);
        assert_eq!(report.slopes, vec!["2", "-2"]);
        assert!(report.continuous);
    }

    #[test]
    fn measure_spec_rejects_bad_extent() {
        let spec = MeasureSpec {
            breakpoints: vec!["0".into(), "1".into()],
            densities: vec!["1".into()],
            extent: "weekly".into(),
        };
        assert!(spec.build().is_err());
    }

    #[test]
    fn scalar_strings_never_contain_commas() {
        for text in ["132/25", "2+1*sqrt(5)", "-1+1/2*sqrt(6)"] {
            let s = parse_scalar(text).unwrap();
            assert!(!s.to_string().contains(','));
        }
    }
}
