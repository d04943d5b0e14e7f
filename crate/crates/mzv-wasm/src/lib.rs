//! Browser bindings for the demo page: shuffle products, reciprocity
//! reports, and central-gap tables, each returned as one JSON string.
//!
//! Every entry point takes plain strings and numbers, never panics on
//! user input, and answers `{"ok": false, "error": "..."}` when a value
//! cannot be parsed or a bound is exceeded. All arithmetic is exact; the
//! only floating-point numbers are the `approx` conveniences added for
//! plotting.
//!
//! The crate also builds natively so the bindings stay testable without
//! a browser; `wasm-pack build --target web` produces the `pkg/` module
//! the demo page imports.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use mzv_core::identities::{Evaluator, RatioOrientation};
use mzv_core::rational::{approximate, binomial, parse_rational};
use mzv_core::words::shuffle_compositions;
use mzv_core::zeta::WeightedComposition;
use mzv_core::{Composition, Rational};

/// Largest combined weight the shuffle panel accepts; beyond this the
/// expansion has thousands of terms and stops being a demo.
const MAX_SHUFFLE_WEIGHT: u32 = 14;
/// Largest horizon the reciprocity panel accepts.
const MAX_HORIZON: usize = 500;
/// Largest split parameter and reference horizon for the gap panel.
const MAX_GAP_N: u32 = 100;
const MAX_GAP_HORIZON: u32 = 2000;

fn parse_composition(text: &str) -> Result<Composition, String> {
    text.trim()
        .parse::<Composition>()
        .map_err(|error| error.to_string())
}

/// Empty text means "unweighted"; otherwise one weight per index.
fn parse_weights(text: &str, depth: usize, name: &str) -> Result<Option<Vec<Rational>>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(None);
    }
    let weights: Vec<Rational> = text
        .split(',')
        .map(|piece| parse_rational(piece.trim()).map_err(|error| error.to_string()))
        .collect::<Result<_, _>>()?;
    if weights.len() != depth {
        return Err(format!(
            "{name} lists {} weights but the composition has {depth} indices",
            weights.len()
        ));
    }
    Ok(Some(weights))
}

fn answer(result: Result<Value, String>) -> String {
    match result {
        Ok(mut value) => {
            value["ok"] = Value::Bool(true);
            value.to_string()
        }
        Err(message) => json!({ "ok": false, "error": message }).to_string(),
    }
}

fn shuffle_value(a: &str, b: &str) -> Result<Value, String> {
    let a = parse_composition(a)?;
    let b = parse_composition(b)?;
    if a.weight() + b.weight() > MAX_SHUFFLE_WEIGHT {
        return Err(format!(
            "combined weight {} exceeds the demo bound {MAX_SHUFFLE_WEIGHT}",
            a.weight() + b.weight()
        ));
    }
    let terms = shuffle_compositions(&a, &b);
    let mass = Rational::from_integer(binomial(
        (a.weight() + b.weight()) as u64,
        a.weight() as u64,
    ));
    let rows: Vec<Value> = terms
        .iter()
        .map(|(coefficient, composition)| {
            json!({
                "coefficient": coefficient.to_string(),
                "composition": composition.to_string(),
                "word": mzv_core::words::composition_to_word(composition).to_string(),
            })
        })
        .collect();
    Ok(json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "distinct": rows.len(),
        "mass": mass.to_string(),
        "terms": rows,
    }))
}

/// Shuffle the codes of two compositions (e.g. `"2"` and `"2,1"`) and
/// return the expansion as JSON.
#[wasm_bindgen]
pub fn shuffle_product(a: &str, b: &str) -> String {
    answer(shuffle_value(a, b))
}

fn reciprocity_value(
    n: u32,
    j: u32,
    a: &str,
    b: &str,
    sigma: &str,
    tau: &str,
) -> Result<Value, String> {
    let n = n as usize;
    let j = j as usize;
    if n > MAX_HORIZON {
        return Err(format!("N={n} exceeds the demo bound {MAX_HORIZON}"));
    }
    let a = parse_composition(a)?;
    let b = parse_composition(b)?;
    let sigma = parse_weights(sigma, a.depth(), "sigma")?;
    let tau = parse_weights(tau, b.depth(), "tau")?;
    let eval = Evaluator::new();

    let unweighted = sigma.is_none() && tau.is_none();
    let aw = match sigma {
        Some(weights) => {
            WeightedComposition::new(a.clone(), weights).map_err(|error| error.to_string())?
        }
        None => WeightedComposition::unweighted(a.clone()),
    };
    let bw = match tau {
        Some(weights) => {
            WeightedComposition::new(b.clone(), weights).map_err(|error| error.to_string())?
        }
        None => WeightedComposition::unweighted(b.clone()),
    };

    let report = eval
        .check_weighted_reciprocity(n, j, &aw, &bw)
        .map_err(|error| error.to_string())?;

    let mut routes = json!({
        "direct": eval.r_weighted_direct(n, &aw, &bw).to_string(),
        "recurrence": eval
            .r_weighted_recurrence(n, &aw, &bw, RatioOrientation::OwnOverOther)
            .to_string(),
    });
    let mut doc = json!({
        "report": report.to_json(),
        "identity_holds": report.ok(),
    });
    if unweighted {
        routes["shuffle"] = Value::String(eval.r_shuffle(n, &a, &b).to_string());
        routes["series"] = Value::String(
            eval.r_via_series(n, &a, &b)
                .map_err(|error| error.to_string())?
                .to_string(),
        );
        let complementary = eval
            .check_complementary(n, j, &a, &b)
            .map_err(|error| error.to_string())?;
        doc["complementary"] = complementary.to_json();
    }
    doc["routes"] = routes;
    Ok(doc)
}

/// Check the split reciprocity identity at horizon `n` and split `j` for
/// compositions `a` and `b` (strings like `"2,1"`). Empty `sigma`/`tau`
/// mean unweighted; otherwise they list one rational weight per index,
/// e.g. `"-1,1/2"`. The JSON carries the exact left side, right side,
/// residual, and every route to the cross sum that applies.
#[wasm_bindgen]
pub fn reciprocity_report(n: u32, j: u32, a: &str, b: &str, sigma: &str, tau: &str) -> String {
    answer(reciprocity_value(n, j, a, b, sigma, tau))
}

fn gaps_value(a: &str, b: &str, max_n: u32, horizon: u32) -> Result<Value, String> {
    if max_n == 0 || max_n > MAX_GAP_N {
        return Err(format!("max n must be between 1 and {MAX_GAP_N}"));
    }
    if horizon > MAX_GAP_HORIZON {
        return Err(format!("horizon exceeds the demo bound {MAX_GAP_HORIZON}"));
    }
    let a = parse_composition(a)?;
    let b = parse_composition(b)?;
    let eval = Evaluator::new();
    let mut rows = Vec::new();
    for n in 1..=max_n as usize {
        let gap = eval
            .asymptotic_gap(n, &a, &b, horizon as usize)
            .map_err(|error| error.to_string())?;
        rows.push(json!({
            "n": n,
            "window": 2 * n + 1,
            "gap": gap.to_string(),
            "approx": approximate(&gap),
        }));
    }
    Ok(json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "horizon": horizon,
        "rows": rows,
    }))
}

/// Exact central-split gaps |S_n(a;b) - 2 zeta_M(a) zeta_M(b)| for
/// n = 1..=max_n against the reference horizon M. Both leading exponents
/// must be at least 2, and M must cover the largest window 2n+1.
#[wasm_bindgen]
pub fn convergence_gaps(a: &str, b: &str, max_n: u32, horizon: u32) -> String {
    answer(gaps_value(a, b, max_n, horizon))
}
