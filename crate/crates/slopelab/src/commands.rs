//! Subcommand definitions and their runners.
//!
//! Every runner returns the full stdout payload as a string, so outputs
//! are byte-identical for identical configurations. Scalar flags use the
//! exact grammar; JSON outputs embed the exact parameters they ran with.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slopelab_core::coding::{
    classify_markov, find_lambda_by_bisection, find_lambda_for_itinerary, BlockChoices, Itinerary,
    MarkovClass, Symbol,
};
use slopelab_core::lift::{transitivity_check, LambdaFamilyMap, Transitivity};
use slopelab_core::map::MapKind;
use slopelab_core::markov::{entropy_of_slope, markov_semiconjugacy, TransitionMatrix};
use slopelab_core::measure::{eigen_residual, StepDensityMeasure};
use slopelab_core::scalar::ExactScalar;
use slopelab_core::subdivision::{
    basic_cells, check_maint_hypotheses, mass_escape_probe, run_subdivision,
};

use crate::io::{self, MapReport, MeasureReport};
use crate::svg::render_family_svg;
use crate::threads::ordered_map;

/// Exact dynamics of piecewise affine interval maps and circle lifts.
#[derive(Parser, Debug)]
#[command(name = "slopelab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family lift and report its exact constants.
    Family(FamilyArgs),
    /// Run the diagonal-crossing transitivity certificate.
    Transitive(TransitiveArgs),
    /// Compare constant slope against the Lebesgue eigen relation.
    Slopecheck(SlopecheckArgs),
    /// Build the constant-slope model of a finite Markov map.
    Semiconj(SemiconjArgs),
    /// Run the good/bad subdivision and print its stage table.
    Subdivide(SubdivideArgs),
    /// Check the no-probability-eigen-measure hypotheses and run the
    /// mass-escape probe.
    Maint(MaintArgs),
    /// Find and classify parameters with prescribed turning itineraries.
    Markov(MarkovArgs),
    /// Render the family lift figure as SVG.
    Figure1(Figure1Args),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Slope parameter in the exact grammar, e.g. 132/25 or 2+1*sqrt(5).
    #[arg(long)]
    pub lambda: String,
    /// Allow parameters below the certified threshold.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Args, Debug)]
pub struct TransitiveArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub relaxed: bool,
    /// json for the verdict, svg for the annotated figure.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SlopecheckArgs {
    /// Path to a map spec JSON file.
    #[arg(long, conflicts_with = "lambda")]
    pub map: Option<PathBuf>,
    /// Family shortcut: check the lift with this parameter.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Args, Debug)]
pub struct SemiconjArgs {
    /// Path to a map spec JSON file for a finite Markov interval map.
    #[arg(long)]
    pub map: PathBuf,
    /// Markov partition points, comma separated; defaults to the map's
    /// own breakpoints.
    #[arg(long)]
    pub partition: Option<String>,
    /// Enclosure width for the spectral radius when it is not exactly
    /// representable.
    #[arg(long, default_value = "1/1000000000000")]
    pub width: String,
}

#[derive(Args, Debug)]
pub struct SubdivideArgs {
    #[arg(long)]
    pub lambda: String,
    /// Starting refinement order.
    #[arg(long = "N")]
    pub exponent: u32,
    #[arg(long)]
    pub stages: usize,
    /// Mass threshold; defaults to the smaller partition gap 1 - b.
    #[arg(long)]
    pub delta: Option<String>,
    /// Left endpoint of the starting basic interval.
    #[arg(long, requires = "start_hi")]
    pub start_lo: Option<String>,
    /// Right endpoint of the starting basic interval. Without an
    /// explicit start the cell with the smallest image mass is used.
    #[arg(long, requires = "start_lo")]
    pub start_hi: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MaintArgs {
    #[arg(long)]
    pub lambda: String,
    /// Mass threshold; defaults to the smaller partition gap 1 - b.
    #[arg(long)]
    pub delta: Option<String>,
    /// Half-width of the probe window [-k, k].
    #[arg(long, default_value_t = 1)]
    pub probe_window: u32,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// json for the full report, csv for the probe series alone.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MarkovArgs {
    /// Sweep interval index: the parameter is searched in [2n+1, 2n+3].
    #[arg(long)]
    pub n: u32,
    /// Itinerary: 0^inf, 1^inf, blocks:n|n+1|..., or a finite 0/1 word.
    #[arg(long)]
    pub itinerary: String,
    /// Enclosure width for bisection searches.
    #[arg(long, default_value = "1/1000000000000")]
    pub width: String,
    /// Force bisection even when a quadratic solution exists.
    #[arg(long)]
    pub bisect: bool,
    /// Orbit length for the Markov classification.
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
}

#[derive(Args, Debug)]
pub struct Figure1Args {
    #[arg(long, default_value = "132/25")]
    pub lambda: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses the command-line itinerary grammar.
pub fn parse_itinerary(text: &str) -> Result<Itinerary> {
    match text {
        "0^inf" => return Ok(Itinerary::constant(Symbol::L)),
        "1^inf" => return Ok(Itinerary::constant(Symbol::R)),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("blocks:") {
        let mut longs = Vec::new();
        for token in rest.split('|') {
            match token {
                "n" => longs.push(false),
                "n+1" => longs.push(true),
                other => bail!("block token {other:?} is not \"n\" or \"n+1\""),
            }
        }
        return Ok(Itinerary::Blocks(BlockChoices::Explicit(longs)));
    }
    if !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') {
        let word = text
            .chars()
            .map(|c| if c == '0' { Symbol::L } else { Symbol::R })
            .collect();
        return Ok(Itinerary::Finite(word));
    }
    bail!("cannot parse itinerary {text:?}: expected 0^inf, 1^inf, blocks:n|n+1|..., or a 0/1 word")
}

fn scalar(text: &str) -> Result<ExactScalar> {
    io::parse_scalar(text)
}

fn strings(items: &[ExactScalar]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

fn family_from(lambda: &ExactScalar, relaxed: bool) -> Result<LambdaFamilyMap> {
    let family = if relaxed {
        LambdaFamilyMap::make_relaxed(lambda)
    } else {
        LambdaFamilyMap::make(lambda)
    };
    family.map_err(|e| anyhow!("{e}"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn deliver(out: &Option<PathBuf>, payload: String) -> Result<String> {
    match out {
        Some(path) => {
            fs::write(path, payload).with_context(|| format!("writing {}", path.display()))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(payload),
    }
}

#[derive(Serialize)]
struct FamilyParams {
    lambda: String,
    relaxed: bool,
}

#[derive(Serialize)]
struct FamilyOutput {
    command: &'static str,
    params: FamilyParams,
    b: String,
    c: String,
    slopes: Vec<String>,
    integer_displacement: String,
    margin: String,
    margin_nonnegative: bool,
    threshold: String,
    entropy_nats: String,
    map: MapReport,
}

pub fn run_family(args: &FamilyArgs) -> Result<String> {
    let lambda = scalar(&args.lambda)?;
    let family = family_from(&lambda, args.relaxed)?;
    let map = family.map();
    let displacement = map
        .evaluate(&ExactScalar::zero())
        .map_err(|e| anyhow!("{e}"))?;
    let entropy = entropy_of_slope(&lambda)
        .and_then(|e| e.decimal(6))
        .map_err(|e| anyhow!("{e}"))?;
    let output = FamilyOutput {
        command: "family",
        params: FamilyParams {
            lambda: lambda.to_string(),
            relaxed: args.relaxed,
        },
        b: family.b().to_string(),
        c: family.c().to_string(),
        slopes: map.laws().iter().map(|l| l.slope().to_string()).collect(),
        integer_displacement: displacement.to_string(),
        margin: family.margin().to_string(),
        margin_nonnegative: !family.margin().is_negative(),
        threshold: slopelab_core::lift::family_threshold().to_string(),
        entropy_nats: entropy,
        map: MapReport::of(map),
    };
    to_json(&output)
}

#[derive(Serialize)]
struct WitnessReport {
    branch: usize,
    down: String,
    up: String,
}

#[derive(Serialize)]
struct TransitiveOutput {
    command: &'static str,
    params: FamilyParams,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed_branch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    missed_diagonal: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extreme_displacement: Option<String>,
}

pub fn run_transitive(args: &TransitiveArgs) -> Result<String> {
    let lambda = scalar(&args.lambda)?;
    let family = family_from(&lambda, args.relaxed)?;
    let verdict = transitivity_check(family.map()).map_err(|e| anyhow!("{e}"))?;
    let payload = match args.format {
        Format::Svg => {
            let witnesses = match &verdict {
                Transitivity::Certified { witnesses } => witnesses.clone(),
                Transitivity::HypothesisFails { .. } => Vec::new(),
            };
            render_family_svg(&family, &witnesses)
        }
        Format::Json => {
            let output = match verdict {
                Transitivity::Certified { witnesses } => TransitiveOutput {
                    command: "transitive",
                    params: FamilyParams {
                        lambda: lambda.to_string(),
                        relaxed: args.relaxed,
                    },
                    verdict: "certified",
                    witnesses: witnesses
                        .iter()
                        .map(|w| WitnessReport {
                            branch: w.branch,
                            down: w.down.to_string(),
                            up: w.up.to_string(),
                        })
                        .collect(),
                    failed_branch: None,
                    missed_diagonal: None,
                    extreme_displacement: None,
                },
                Transitivity::HypothesisFails {
                    branch,
                    wanted,
                    extreme,
                } => TransitiveOutput {
                    command: "transitive",
                    params: FamilyParams {
                        lambda: lambda.to_string(),
                        relaxed: args.relaxed,
                    },
                    verdict: "hypothesis-fails",
                    witnesses: Vec::new(),
                    failed_branch: Some(branch),
                    missed_diagonal: Some(wanted),
                    extreme_displacement: Some(extreme.to_string()),
                },
            };
            to_json(&output)?
        }
        Format::Csv => bail!("transitive emits json or svg, not csv"),
    };
    deliver(&args.out, payload)
}

#[derive(Serialize)]
struct SlopeCandidate {
    lambda: String,
    residual: String,
    lebesgue_is_eigen: bool,
    is_the_constant_slope: bool,
}

#[derive(Serialize)]
struct SlopecheckOutput {
    command: &'static str,
    params: serde_json::Value,
    constant_slope: Option<String>,
    candidates: Vec<SlopeCandidate>,
    equivalence_holds: bool,
}

pub fn run_slopecheck(args: &SlopecheckArgs) -> Result<String> {
    let (map, params) = match (&args.map, &args.lambda) {
        (Some(path), None) => (
            io::read_map(path)?,
            serde_json::json!({ "map": path.display().to_string() }),
        ),
        (None, Some(text)) => {
            let lambda = scalar(text)?;
            let family = family_from(&lambda, true)?;
            (
                family.map().clone(),
                serde_json::json!({ "lambda": lambda.to_string() }),
            )
        }
        _ => bail!("pass exactly one of --map or --lambda"),
    };
    let lebesgue = match map.kind() {
        MapKind::CircleLift => StepDensityMeasure::lebesgue(),
        MapKind::Interval => {
            let breaks = map.breakpoints();
            StepDensityMeasure::lebesgue_on(breaks[0].clone(), breaks[breaks.len() - 1].clone())
                .map_err(|e| anyhow!("{e}"))?
        }
    };
    let constant = map.is_constant_slope();
    let mut candidates = Vec::new();
    let mut magnitudes: Vec<ExactScalar> = map.laws().iter().map(|l| l.slope().abs()).collect();
    slopelab_core::scalar::sort_dedup(&mut magnitudes);
    let mut equivalence = true;
    for lambda in &magnitudes {
        let residual = eigen_residual(&map, &lebesgue, lambda).map_err(|e| anyhow!("{e}"))?;
        let is_eigen = residual.is_zero();
        let is_constant = constant.as_ref() == Some(lambda);
        equivalence = equivalence && (is_eigen == is_constant);
        candidates.push(SlopeCandidate {
            lambda: lambda.to_string(),
            residual: residual.to_string(),
            lebesgue_is_eigen: is_eigen,
            is_the_constant_slope: is_constant,
        });
    }
    let output = SlopecheckOutput {
        command: "slopecheck",
        params,
        constant_slope: constant.map(|s| s.to_string()),
        candidates,
        equivalence_holds: equivalence,
    };
    to_json(&output)
}

#[derive(Serialize)]
struct EnclosureReport {
    lo: String,
    hi: String,
}

#[derive(Serialize)]
struct SemiconjOutput {
    command: &'static str,
    params: serde_json::Value,
    transition_matrix: Vec<Vec<u8>>,
    irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_enclosure: Option<EnclosureReport>,
    masses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigen_measure: Option<MeasureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_breakpoints: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_values: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor: Option<MapReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor_constant_slope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    collapsed_cells: Option<Vec<[String; 2]>>,
    verdict: &'static str,
}

pub fn run_semiconj(args: &SemiconjArgs) -> Result<String> {
    let map = io::read_map(&args.map)?;
    let partition: Vec<ExactScalar> = match &args.partition {
        Some(text) => text
            .split(',')
            .map(|t| scalar(t.trim()))
            .collect::<Result<_>>()?,
        None => map.breakpoints().to_vec(),
    };
    let width = scalar(&args.width)?;
    let params = serde_json::json!({
        "map": args.map.display().to_string(),
        "partition": partition.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "width": width.to_string(),
    });
    let matrix = TransitionMatrix::from_map(&map, &partition).map_err(|e| anyhow!("{e}"))?;
    let entries = matrix.entries().to_vec();
    let irreducible = matrix.is_irreducible();
    match markov_semiconjugacy(&map, &partition) {
        Ok(model) => {
            let semi = &model.semiconjugacy;
            let output = SemiconjOutput {
                command: "semiconj",
                params,
                transition_matrix: entries,
                irreducible,
                lambda: Some(model.perron.lambda.to_string()),
                lambda_enclosure: None,
                masses: strings(&model.perron.masses),
                eigen_measure: Some(MeasureReport::of(&model.measure)),
                phi_breakpoints: Some(strings(semi.phi().breakpoints())),
                phi_values: Some(strings(semi.phi().values())),
                factor: Some(MapReport::of(semi.factor())),
                factor_constant_slope: semi
                    .factor()
                    .is_constant_slope()
                    .map(|s| s.to_string()),
                collapsed_cells: Some(
                    semi.collapsed_cells()
                        .iter()
                        .map(|(a, b)| [a.to_string(), b.to_string()])
                        .collect(),
                ),
                verdict: "exact",
            };
            to_json(&output)
        }
        Err(slopelab_core::Error::InvalidParameter(_)) => {
            // The spectral radius is beyond quadratic; fall back to the
            // rigorous enclosure.
            let data = matrix.perron_enclosure(&width).map_err(|e| anyhow!("{e}"))?;
            let output = SemiconjOutput {
                command: "semiconj",
                params,
                transition_matrix: entries,
                irreducible,
                lambda: None,
                lambda_enclosure: Some(EnclosureReport {
                    lo: data.enclosure.lo().to_string(),
                    hi: data.enclosure.hi().to_string(),
                }),
                masses: strings(&data.masses),
                eigen_measure: None,
                phi_breakpoints: None,
                phi_values: None,
                factor: None,
                factor_constant_slope: None,
                collapsed_cells: None,
                verdict: "enclosure-only",
            };
            to_json(&output)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

#[derive(Serialize)]
struct SubdivideRowReport {
    stage: usize,
    count: usize,
    bad_measure: String,
    bound: String,
    ok: bool,
}

#[derive(Serialize)]
struct SubdivideOutput {
    command: &'static str,
    params: serde_json::Value,
    good_start: bool,
    all_ok: bool,
    rows: Vec<SubdivideRowReport>,
}

pub fn run_subdivide(args: &SubdivideArgs) -> Result<String> {
    let lambda = scalar(&args.lambda)?;
    let family = family_from(&lambda, false)?;
    let map = family.map();
    let mu = StepDensityMeasure::lebesgue();
    let delta = match &args.delta {
        Some(text) => scalar(text)?,
        None => &ExactScalar::one() - family.b(),
    };
    let (j_lo, j_hi) = match (&args.start_lo, &args.start_hi) {
        (Some(lo), Some(hi)) => (scalar(lo)?, scalar(hi)?),
        _ => {
            // Deterministic default: the order-N cell whose image mass is
            // smallest, leftmost on ties.
            let cells = basic_cells(map, args.exponent, &ExactScalar::zero(), &ExactScalar::one())
                .map_err(|e| anyhow!("{e}"))?;
            let masses = ordered_map(&cells, |cell| {
                let (u, v) = cell.image();
                mu.measure_of(&u, &v).expect("image mass")
            });
            let best = masses
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| a.cmp(b))
                .map(|(i, _)| i)
                .ok_or_else(|| anyhow!("no basic cells in the fundamental domain"))?;
            (cells[best].lo.clone(), cells[best].hi.clone())
        }
    };
    let stats = run_subdivision(map, &mu, &delta, args.exponent, args.stages, &j_lo, &j_hi)
        .map_err(|e| anyhow!("{e}"))?;
    if !stats.all_ok() {
        bail!("a subdivision stage violated its bound");
    }
    let payload = match args.format {
        Format::Csv => io::subdivision_csv(&stats),
        Format::Json => {
            let output = SubdivideOutput {
                command: "subdivide",
                params: serde_json::json!({
                    "lambda": lambda.to_string(),
                    "N": args.exponent,
                    "stages": args.stages,
                    "delta": delta.to_string(),
                    "start": [j_lo.to_string(), j_hi.to_string()],
                }),
                good_start: stats.good_start,
                all_ok: stats.all_ok(),
                rows: stats
                    .rows
                    .iter()
                    .map(|r| SubdivideRowReport {
                        stage: r.stage,
                        count: r.count,
                        bad_measure: r.bad_measure.to_string(),
                        bound: r.bound.to_string(),
                        ok: r.ok,
                    })
                    .collect(),
            };
            to_json(&output)?
        }
        Format::Svg => bail!("subdivide emits csv or json, not svg"),
    };
    deliver(&args.out, payload)
}

#[derive(Serialize)]
struct CheckReport {
    name: &'static str,
    pass: bool,
    witness: String,
}

#[derive(Serialize)]
struct ProbeRowReport {
    step: usize,
    central: String,
    retained: String,
}

#[derive(Serialize)]
struct MaintOutput {
    command: &'static str,
    params: serde_json::Value,
    checks: Vec<CheckReport>,
    all_pass: bool,
    probe: Vec<ProbeRowReport>,
}

pub fn run_maint(args: &MaintArgs) -> Result<String> {
    let lambda = scalar(&args.lambda)?;
    let family = family_from(&lambda, false)?;
    let map = family.map();
    let mu = StepDensityMeasure::lebesgue();
    let delta = match &args.delta {
        Some(text) => scalar(text)?,
        None => &ExactScalar::one() - family.b(),
    };
    let report = check_maint_hypotheses(map, &mu, &lambda, &delta);
    let probe =
        mass_escape_probe(map, args.probe_window, &lambda, args.steps).map_err(|e| anyhow!("{e}"))?;
    match args.format {
        Format::Csv => Ok(io::probe_csv(&probe)),
        Format::Json => to_json(&MaintOutput {
            command: "maint",
            params: serde_json::json!({
                "lambda": lambda.to_string(),
                "delta": delta.to_string(),
                "probe_window": args.probe_window,
                "steps": args.steps,
            }),
            checks: report
                .checks
                .iter()
                .map(|c| CheckReport {
                    name: c.name,
                    pass: c.pass,
                    witness: c.witness.clone(),
                })
                .collect(),
            all_pass: report.all_pass(),
            probe: probe
                .iter()
                .map(|r| ProbeRowReport {
                    step: r.step,
                    central: r.central.to_string(),
                    retained: r.retained.to_string(),
                })
                .collect(),
        }),
        Format::Svg => bail!("maint emits json or csv, not svg"),
    }
}

#[derive(Serialize)]
struct MarkovOutput {
    command: &'static str,
    params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    enclosure: Option<EnclosureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    preperiod: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complete_blocks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distinct: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    orbit: Vec<String>,
}

pub fn run_markov(args: &MarkovArgs) -> Result<String> {
    let itinerary = parse_itinerary(&args.itinerary)?;
    let width = scalar(&args.width)?;
    let params = serde_json::json!({
        "n": args.n,
        "itinerary": args.itinerary,
        "width": width.to_string(),
        "bisect": args.bisect,
        "depth": args.depth,
    });
    let found = if args.bisect {
        find_lambda_by_bisection(args.n, &itinerary, &width)
    } else {
        find_lambda_for_itinerary(args.n, &itinerary, &width)
    }
    .map_err(|e| anyhow!("{e}"))?;
    let mut output = MarkovOutput {
        command: "markov",
        params,
        enclosure: None,
        lambda: None,
        verdict: "enclosure",
        preperiod: None,
        period: None,
        complete_blocks: None,
        distinct: None,
        orbit: Vec::new(),
    };
    if found.is_point() {
        let lambda = found.lo().clone();
        output.lambda = Some(lambda.to_string());
        match classify_markov(&lambda, args.depth).map_err(|e| anyhow!("{e}"))? {
            MarkovClass::MarkovCertificate {
                preperiod,
                period,
                orbit,
            } => {
                output.verdict = "markov";
                output.preperiod = Some(preperiod);
                output.period = Some(period);
                output.orbit = strings(&orbit);
            }
            MarkovClass::NonMarkovEvidence {
                complete_blocks,
                orbit,
            } => {
                output.verdict = "nonmarkov-evidence";
                output.complete_blocks = Some(complete_blocks);
                output.orbit = strings(&orbit);
            }
            MarkovClass::Unknown { distinct, orbit } => {
                output.verdict = "unknown";
                output.distinct = Some(distinct);
                output.orbit = strings(&orbit);
            }
        }
    } else {
        output.enclosure = Some(EnclosureReport {
            lo: found.lo().to_string(),
            hi: found.hi().to_string(),
        });
    }
    to_json(&output)
}

pub fn run_figure1(args: &Figure1Args) -> Result<String> {
    let lambda = scalar(&args.lambda)?;
    let family = family_from(&lambda, false)?;
    let witnesses = match transitivity_check(family.map()).map_err(|e| anyhow!("{e}"))? {
        Transitivity::Certified { witnesses } => witnesses,
        Transitivity::HypothesisFails { .. } => Vec::new(),
    };
    deliver(&args.out, render_family_svg(&family, &witnesses))
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Family(args) => run_family(args),
        Command::Transitive(args) => run_transitive(args),
        Command::Slopecheck(args) => run_slopecheck(args),
        Command::Semiconj(args) => run_semiconj(args),
        Command::Subdivide(args) => run_subdivide(args),
        Command::Maint(args) => run_maint(args),
        Command::Markov(args) => run_markov(args),
        Command::Figure1(args) => run_figure1(args),
    }
}
