//! Browser bindings: three interactive views over the engine.
//!
//! Every function takes plain strings/numbers and returns a JSON string, so
//! the page needs no serde glue on the JS side. Errors come back as
//! `{"error": "..."}` rather than thrown exceptions, which keeps the demo
//! page logic to a few lines.

use wasm_bindgen::prelude::*;

use laglink::conformal::{check_table, AnnulusConfig};
use laglink::pipeline::{run_pipeline, tropical_tables, CutoffSpec, RunConfig};
use laglink::potential::{AnnulusSign, ModelParams};
use laglink::rat::Rat;
use laglink::svg::svg_string;
use laglink::tropical::{genericity_check, QPoint, TropicalConfig};

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn parse_rat(s: &str, name: &str) -> Result<Rat, String> {
    s.parse::<Rat>().map_err(|e| format!("{name}: {e}"))
}

/// Enumerate the Maslov-2 tropical curves for anchors given as exact
/// fractions, and render them. Returns `{slope, svg, curves}` or `{error}`.
#[wasm_bindgen]
pub fn tropical_view(
    p_prime_x: &str,
    p_prime_y: &str,
    p_dprime_x: &str,
    p_dprime_y: &str,
    weight_bound: u32,
) -> String {
    let inner = || -> Result<String, String> {
        let cfg = TropicalConfig::new(
            QPoint::new(parse_rat(p_prime_x, "p' x")?, parse_rat(p_prime_y, "p' y")?),
            QPoint::new(
                parse_rat(p_dprime_x, "p'' x")?,
                parse_rat(p_dprime_y, "p'' y")?,
            ),
            weight_bound,
        )
        .map_err(|e| e.to_string())?;
        let slope = genericity_check(&cfg).map_err(|e| e.to_string())?;
        // Any valid area parameters label the table; the classes and areas
        // shown use the reference configuration below.
        let params = ModelParams::new(
            Rat::from_int(5),
            Rat::from_int(1),
            Rat::from_int(2),
            AnnulusSign::Plus,
        )
        .expect("reference parameters");
        let (curves, records) = tropical_tables(&cfg, &params).map_err(|e| e.to_string())?;
        let svg = svg_string(&curves, &cfg).map_err(|e| e.to_string())?;
        Ok(serde_json::json!({
            "slope": slope,
            "svg": svg,
            "curves": records,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Run the full solve pipeline for link areas `(B, C, a)` and return the
/// report JSON (or `{error}`).
#[wasm_bindgen]
pub fn solve_view(b: &str, c: &str, a: &str, sign_plus: bool, cutoff: &str, seed: u32) -> String {
    let inner = || -> Result<String, String> {
        let params = ModelParams::new(
            parse_rat(b, "B")?,
            parse_rat(c, "C")?,
            parse_rat(a, "a")?,
            if sign_plus {
                AnnulusSign::Plus
            } else {
                AnnulusSign::Minus
            },
        )
        .map_err(|e| e.to_string())?;
        let cutoff = if cutoff.trim() == "auto" {
            CutoffSpec::Auto
        } else {
            CutoffSpec::Value(parse_rat(cutoff, "cutoff")?)
        };
        let config = RunConfig {
            params,
            cutoff,
            tail_seed: Some(seed as u64),
            tropical: None,
            certification_level: None,
        };
        let report = run_pipeline(&config).map_err(|e| e.to_string())?;
        Ok(report.to_json())
    };
    inner().unwrap_or_else(err_json)
}

/// Annulus invariant checks for `(r1, |a|, r0)`; returns the check table.
#[wasm_bindgen]
pub fn annulus_view(r1: f64, a_abs: f64, r0: f64) -> String {
    let inner = || -> Result<String, String> {
        let cfg = AnnulusConfig::new(r1, num_complex::Complex64::new(a_abs, 0.0), r0)
            .map_err(|e| e.to_string())?;
        let table = check_table(&cfg, 1e-9).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&table).map_err(|e| e.to_string())
    };
    inner().unwrap_or_else(err_json)
}
