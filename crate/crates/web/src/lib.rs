//! Browser bindings for the discounting demo in `www/`.
//!
//! Each exported function takes and returns JSON text. The `*_json`
//! functions hold the logic and are plain Rust so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use credal::doc::{parse_contexts, parse_decay, parse_mass};
use credal::{
    alphas_from_kappa, contextual_alphas_from_kappa, contextual_discount, kappa_at,
    raw_contextual_alphas, AlphaMode, DecaySpec, Frame, MassFunction, Scheme, Subset,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Row {
    label: String,
    bits: u32,
    input: f64,
    conservative: f64,
    proportional: f64,
    optimistic: f64,
    contextual: f64,
}

#[derive(Serialize)]
struct Comparison {
    frame: Vec<String>,
    rows: Vec<Row>,
}

fn rows_for(frame: &Frame, columns: &[&MassFunction]) -> Vec<Subset> {
    let mut rows: Vec<Subset> = columns
        .iter()
        .flat_map(|m| m.focal().map(|(s, _)| s))
        .chain([Subset::EMPTY, frame.full()])
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// All four operators side by side on one context vector.
pub fn compare_schemes_json(mass: &str, contexts: &str) -> Result<String, String> {
    let m = parse_mass(mass).map_err(|e| format!("mass: {e}"))?;
    let ctx = parse_contexts(contexts, m.frame()).map_err(|e| format!("contexts: {e}"))?;
    let c = Scheme::Conservative
        .apply(&m, &ctx)
        .map_err(|e| e.to_string())?;
    let p = Scheme::Proportional
        .apply(&m, &ctx)
        .map_err(|e| e.to_string())?;
    let o = Scheme::Optimistic
        .apply(&m, &ctx)
        .map_err(|e| e.to_string())?;
    let x = contextual_discount(&m, &ctx).map_err(|e| e.to_string())?;
    let frame = m.frame();
    let rows = rows_for(frame, &[&m, &c, &p, &o, &x])
        .into_iter()
        .map(|s| Row {
            label: frame.display(s),
            bits: s.bits(),
            input: m.mass(s),
            conservative: c.mass(s),
            proportional: p.mass(s),
            optimistic: o.mass(s),
            contextual: x.mass(s),
        })
        .collect();
    let out = Comparison {
        frame: frame.labels().to_vec(),
        rows,
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[derive(Serialize)]
struct Series {
    label: String,
    /// `null` where the scheme is undefined, e.g. infeasible contextual rates.
    values: Vec<Option<f64>>,
}

#[derive(Serialize)]
struct Curves {
    times: Vec<f64>,
    scheme: String,
    series: Vec<Series>,
}

/// Mass of every subset over `steps + 1` ages evenly spaced in `[0, t_max]`.
/// `scheme` is one of the rescaling schemes or `contextual`.
pub fn decay_curves_json(
    mass: &str,
    decay: &str,
    t_max: f64,
    steps: usize,
    scheme: &str,
    alpha_mode: &str,
) -> Result<String, String> {
    if !t_max.is_finite() || t_max <= 0.0 || steps == 0 || steps > 2000 {
        return Err("need t_max > 0 and 1 <= steps <= 2000".into());
    }
    let m = parse_mass(mass).map_err(|e| format!("mass: {e}"))?;
    let spec = parse_decay(decay, m.frame()).map_err(|e| format!("decay: {e}"))?;
    let mode: AlphaMode = alpha_mode
        .parse()
        .map_err(|e: credal::Error| e.to_string())?;
    let contextual = scheme == "contextual";
    let rescale: Option<Scheme> = if contextual {
        None
    } else {
        Some(scheme.parse().map_err(|e: credal::Error| e.to_string())?)
    };

    let times: Vec<f64> = (0..=steps)
        .map(|i| t_max * i as f64 / steps as f64)
        .collect();
    let mut outputs: Vec<Option<MassFunction>> = Vec::with_capacity(times.len());
    for &t in &times {
        let kappa = kappa_at(&spec, t).map_err(|e| e.to_string())?;
        let out = match rescale {
            Some(s) => {
                let ctx = alphas_from_kappa(&kappa, mode).map_err(|e| e.to_string())?;
                Some(s.apply(&m, &ctx).map_err(|e| e.to_string())?)
            }
            None => match contextual_alphas_from_kappa(&kappa) {
                Ok(ctx) => Some(contextual_discount(&m, &ctx).map_err(|e| e.to_string())?),
                Err(credal::Error::Infeasible { .. }) => None,
                Err(e) => return Err(e.to_string()),
            },
        };
        outputs.push(out);
    }

    let frame = m.frame();
    let present: Vec<&MassFunction> = outputs.iter().flatten().collect();
    let series = rows_for(frame, &present)
        .into_iter()
        .map(|s| Series {
            label: frame.display(s),
            values: outputs
                .iter()
                .map(|o| o.as_ref().map(|m| m.mass(s)))
                .collect(),
        })
        .collect();
    let out = Curves {
        times,
        scheme: scheme.to_string(),
        series,
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[derive(Serialize)]
struct Rates {
    lambda: Vec<f64>,
    kappa: Vec<f64>,
    alpha: Vec<f64>,
    feasible: bool,
}

/// Rates that make contextual discounting age each class by its half-life.
/// `half_lives` is a JSON array of seconds, one per class.
pub fn contextual_rates_json(half_lives: &str, t: f64) -> Result<String, String> {
    let half_lives: Vec<f64> = serde_json::from_str(half_lives).map_err(|e| e.to_string())?;
    let frame = Frame::numbered(half_lives.len()).map_err(|e| e.to_string())?;
    let spec = DecaySpec::from_half_lives(frame, &half_lives).map_err(|e| e.to_string())?;
    let kappa = kappa_at(&spec, t).map_err(|e| e.to_string())?;
    let alpha = raw_contextual_alphas(&kappa).map_err(|e| e.to_string())?;
    let out = Rates {
        lambda: spec.lambdas(),
        kappa: kappa.values(),
        feasible: alpha.iter().all(|a| (0.0..=1.0).contains(a)),
        alpha,
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[wasm_bindgen(js_name = compareSchemes)]
pub fn compare_schemes(mass: &str, contexts: &str) -> Result<String, JsError> {
    compare_schemes_json(mass, contexts).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = decayCurves)]
pub fn decay_curves(
    mass: &str,
    decay: &str,
    t_max: f64,
    steps: usize,
    scheme: &str,
    alpha_mode: &str,
) -> Result<String, JsError> {
    decay_curves_json(mass, decay, t_max, steps, scheme, alpha_mode).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = contextualRates)]
pub fn contextual_rates(half_lives: &str, t: f64) -> Result<String, JsError> {
    contextual_rates_json(half_lives, t).map_err(|e| JsError::new(&e))
}
