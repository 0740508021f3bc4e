//! Run configuration, pipeline orchestration and deterministic reports.
//!
//! A run resolves its truncation cutoff (`"auto"` means the safe exactness
//! cutoff), optionally enumerates the tropical curve tables, assembles the
//! potential, lifts all six leading roots co-solving the bulk parameter,
//! re-verifies each solution against a freshly assembled potential, and
//! emits the verdict.
//!
//! Reports are deterministic byte-for-byte for a fixed config and seed: all
//! tables iterate sorted maps, rationals serialize as `"p/q"` strings, and
//! wall-clock timing is kept out of the serialized document (it goes to
//! stderr instead).

use serde::{Deserialize, Serialize};

use crate::critical::{lift, solve_leading, verdict, verify_critical, SolutionRecord, Verdict};
use crate::laurent::{LaurentPoly, PolyTermRecord};
use crate::novikov::NovikovError;
use crate::potential::{
    assemble, safe_cutoff, sample_admissible_tail, BulkParams, ModelParams, PotentialError,
};
use crate::rat::Rat;
use crate::tropical::{
    curve_record, enumerate_type1, enumerate_type2, validate_balancing, CurveRecord,
    TropicalConfig, TropicalCurve, TropicalError,
};

/// Exit-code classes for the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("config error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("computation error: {0}")]
    Computation(String),
}

impl From<PotentialError> for PipelineError {
    fn from(e: PotentialError) -> Self {
        PipelineError::Domain(e.to_string())
    }
}

impl From<TropicalError> for PipelineError {
    fn from(e: TropicalError) -> Self {
        PipelineError::Domain(e.to_string())
    }
}

impl From<crate::critical::CriticalError> for PipelineError {
    fn from(e: crate::critical::CriticalError) -> Self {
        PipelineError::Computation(e.to_string())
    }
}

impl From<NovikovError> for PipelineError {
    fn from(e: NovikovError) -> Self {
        PipelineError::Computation(e.to_string())
    }
}

/// `"auto"` or an explicit rational truncation level.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum CutoffSpec {
    #[default]
    Auto,
    Value(Rat),
}

impl Serialize for CutoffSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CutoffSpec::Auto => s.serialize_str("auto"),
            CutoffSpec::Value(v) => v.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for CutoffSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        if raw.trim() == "auto" {
            return Ok(CutoffSpec::Auto);
        }
        raw.parse::<Rat>()
            .map(CutoffSpec::Value)
            .map_err(serde::de::Error::custom)
    }
}

/// Full run configuration, read from a JSON document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    #[serde(default)]
    pub cutoff: CutoffSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tropical: Option<TropicalConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification_level: Option<Rat>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        serde_json::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))
    }

    /// Resolve `"auto"` to the safe exactness cutoff.
    pub fn resolved_cutoff(&self) -> Result<Rat, PipelineError> {
        let safe = safe_cutoff(&self.params)?;
        match self.cutoff {
            CutoffSpec::Auto => Ok(safe),
            CutoffSpec::Value(v) => {
                if v < safe {
                    Err(PipelineError::Domain(
                        PotentialError::CutoffBelowSafe { cutoff: v, safe }.to_string(),
                    ))
                } else {
                    Ok(v)
                }
            }
        }
    }
}

/// Serialized run output.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub config: RunConfig,
    pub resolved_cutoff: Rat,
    pub certification_level: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tropical_curves: Option<Vec<CurveRecord>>,
    pub potential_terms: Vec<PolyTermRecord>,
    pub solutions: Vec<SolutionRecord>,
    pub verdict: Verdict,
    /// Wall-clock milliseconds; excluded from serialization so identical
    /// configurations produce byte-identical reports.
    #[serde(skip)]
    pub timing_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail") + "\n"
    }
}

/// Enumerate and validate the tropical tables for a configured run.
pub fn tropical_tables(
    cfg: &TropicalConfig,
    params: &ModelParams,
) -> Result<(Vec<TropicalCurve>, Vec<CurveRecord>), PipelineError> {
    let mut curves = enumerate_type1(cfg)?;
    curves.extend(enumerate_type2(cfg)?);
    let anchors = [cfg.p_prime, cfg.p_dprime];
    for c in &curves {
        if !validate_balancing(c, &anchors) {
            return Err(PipelineError::Computation(
                "enumerated curve fails the balancing check".into(),
            ));
        }
    }
    let records = curves
        .iter()
        .map(|c| curve_record(c, cfg, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((curves, records))
}

/// Execute the full pipeline for one configuration.
pub fn run_pipeline(config: &RunConfig) -> Result<Report, PipelineError> {
    let start_time = std::time::Instant::now();
    let params = config.params;
    params.validate()?;

    let cutoff = config.resolved_cutoff()?;
    let level = config.certification_level.unwrap_or(cutoff);
    if level > cutoff {
        return Err(PipelineError::Config(format!(
            "certification level {level} exceeds the resolved cutoff {cutoff}"
        )));
    }

    let tropical_curves = match &config.tropical {
        Some(tc) => Some(tropical_tables(tc, &params)?.1),
        None => None,
    };

    let tail = match config.tail_seed {
        Some(seed) => sample_admissible_tail(&params, cutoff, seed)?,
        None => LaurentPoly::zero(cutoff),
    };

    // Reported potential: default bulk, truncated at the resolved cutoff.
    let bulk0 = BulkParams::standard(&params, cutoff);
    let w_report = assemble(&params, &bulk0, &tail, cutoff)?;
    let potential_terms = w_report.to_records();

    // Lift all six leading roots; re-verify each against a fresh assembly at
    // working precision, and certify the weaker of the two measurements.
    let work = cutoff + params.b;
    let mut solutions = Vec::with_capacity(6);
    let mut records = Vec::with_capacity(6);
    for root in solve_leading(&params) {
        let mut sol = lift(root, &params, &tail, cutoff)?;
        let bulk = BulkParams::with_b1(&params, sol.b1.with_cutoff(work))?;
        let w_work = assemble(&params, &bulk, &tail.with_cutoff(work), work)?;
        let verified = verify_critical(&w_work, &params, &sol)?;
        if verified < sol.residual_valuation {
            sol.residual_valuation = verified;
        }
        records.push(sol.to_record());
        solutions.push(sol);
    }

    let verdict = verdict(&solutions, level);
    Ok(Report {
        config: config.clone(),
        resolved_cutoff: cutoff,
        certification_level: level,
        tropical_curves,
        potential_terms,
        solutions: records,
        verdict,
        timing_ms: start_time.elapsed().as_secs_f64() * 1e3,
    })
}
