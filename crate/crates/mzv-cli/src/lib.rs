//! Grid sweeps and rendering behind the `mzv` command line.
//!
//! A sweep picks an identity, walks a grid of compositions, horizons,
//! split points, and (where relevant) geometric weights, and emits one
//! record per checked case with every value as an exact rational string.
//! Identities that hold produce `ok` on every line; the process exit code
//! is 0 only when no case failed, so sweeps compose with shell scripts
//! and CI jobs.

use clap::ValueEnum;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use mzv_core::identities::{
    partial_fraction_terms, reciprocal_pole_product, Evaluator, RatioOrientation,
};
use mzv_core::rational::parse_rational;
use mzv_core::series::{check_polylog_shuffle, r_via_series_table, PolylogShuffleCheck};
use mzv_core::words::compositions_up_to_weight;
use mzv_core::zeta::WeightedComposition;
use mzv_core::{Composition, Rational};

/// Which identity or agreement a `verify` run sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Selector {
    /// Split reciprocity: two partial sums against the closed right side.
    Reciprocity,
    /// Complementary split plus the recombination of both splits.
    Complementary,
    /// Split reciprocity with a geometric weight on every index.
    Weighted,
    /// Direct, recurrence, series, and shuffle routes to the cross sum.
    ShuffleAgreement,
    /// Polylogarithm products against their shuffle decompositions.
    PolylogShuffle,
    /// Partial-fraction splits of the two-pole kernel.
    PartialFraction,
}

impl Selector {
    pub fn name(self) -> &'static str {
        match self {
            Selector::Reciprocity => "reciprocity",
            Selector::Complementary => "complementary",
            Selector::Weighted => "weighted",
            Selector::ShuffleAgreement => "shuffle-agreement",
            Selector::PolylogShuffle => "polylog-shuffle",
            Selector::PartialFraction => "partial-fraction",
        }
    }

    fn uses_pool(self) -> bool {
        matches!(self, Selector::Weighted)
    }
}

/// Bounds for one verification sweep. `max_n` is the largest horizon (and
/// doubles as the truncation order for the series selector), `max_weight`
/// bounds the combined weight of each composition pair (or the pole
/// exponents for the kernel selector), `max_depth` optionally caps the
/// number of indices per composition, and `pool` lists the geometric
/// weights the weighted sweep draws from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationGrid {
    pub max_n: usize,
    pub max_weight: u32,
    pub max_depth: Option<usize>,
    pub pool: Vec<Rational>,
}

fn default_pool() -> Vec<Rational> {
    vec![
        Rational::from_integer((-1).into()),
        Rational::from_integer(1.into()),
        Rational::from_integer(2.into()),
        Rational::new(1.into(), 2.into()),
    ]
}

impl VerificationGrid {
    /// The default grid for each selector, sized so a sweep finishes in
    /// seconds while still covering every shape of composition the
    /// identity distinguishes.
    pub fn defaults(selector: Selector) -> Self {
        let (max_n, max_weight, max_depth) = match selector {
            Selector::Reciprocity | Selector::Complementary => (25, 5, None),
            Selector::Weighted => (12, 3, None),
            Selector::ShuffleAgreement => (30, 6, Some(3)),
            Selector::PolylogShuffle => (20, 6, None),
            Selector::PartialFraction => (20, 5, None),
        };
        VerificationGrid {
            max_n,
            max_weight,
            max_depth,
            pool: default_pool(),
        }
    }

    /// Parses overrides like `N=10,weight=4,depth=3,pool=-1;1;2;1/2` on
    /// top of the selector's defaults. Unknown keys are rejected rather
    /// than ignored.
    pub fn with_overrides(selector: Selector, text: &str) -> Result<Self, String> {
        let mut grid = VerificationGrid::defaults(selector);
        for entry in text.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let Some((key, value)) = entry.split_once('=') else {
                return Err(format!("grid entry `{entry}` is not of the form key=value"));
            };
            match key {
                "N" => {
                    grid.max_n = value
                        .parse()
                        .map_err(|_| format!("N must be a positive integer, got `{value}`"))?;
                    if grid.max_n == 0 {
                        return Err("N must be at least 1".to_string());
                    }
                }
                "weight" => {
                    grid.max_weight = value.parse().map_err(|_| {
                        format!("weight must be a positive integer, got `{value}`")
                    })?;
                    if grid.max_weight == 0 {
                        return Err("weight must be at least 1".to_string());
                    }
                }
                "depth" => {
                    let depth: usize = value
                        .parse()
                        .map_err(|_| format!("depth must be a positive integer, got `{value}`"))?;
                    if depth == 0 {
                        return Err("depth must be at least 1".to_string());
                    }
                    grid.max_depth = Some(depth);
                }
                "pool" => {
                    let mut pool = Vec::new();
                    for piece in value.split(';') {
                        let weight = parse_rational(piece)
                            .map_err(|error| format!("bad pool entry `{piece}`: {error}"))?;
                        if weight.is_zero() {
                            return Err("pool weights must be nonzero".to_string());
                        }
                        pool.push(weight);
                    }
                    if pool.is_empty() {
                        return Err("pool must list at least one weight".to_string());
                    }
                    grid.pool = pool;
                }
                other => {
                    return Err(format!(
                        "unknown grid key `{other}` (expected N, weight, depth, or pool)"
                    ));
                }
            }
        }
        Ok(grid)
    }

    /// One-line description for summary output.
    pub fn describe(&self, selector: Selector) -> String {
        let mut text = format!("N<={}, weight<={}", self.max_n, self.max_weight);
        if let Some(depth) = self.max_depth {
            text.push_str(&format!(", depth<={depth}"));
        }
        if selector.uses_pool() {
            let pool: Vec<String> = self.pool.iter().map(ToString::to_string).collect();
            text.push_str(&format!(", pool={{{}}}", pool.join(",")));
        }
        text
    }

    fn to_json(&self, selector: Selector) -> Value {
        let mut grid = json!({
            "N": self.max_n,
            "weight": self.max_weight,
            "depth": self.max_depth,
        });
        if selector.uses_pool() {
            let pool: Vec<String> = self.pool.iter().map(ToString::to_string).collect();
            grid["pool"] = json!(pool);
        }
        grid
    }
}

/// All ordered pairs of nonempty compositions whose weights sum to at
/// most `max_total_weight`, optionally capping the depth of each side.
/// The order is deterministic: by weight, then by the binary code of the
/// composition, the left side varying slowest.
pub fn composition_pairs(
    max_total_weight: u32,
    max_depth: Option<usize>,
) -> Vec<(Composition, Composition)> {
    if max_total_weight < 2 {
        return Vec::new();
    }
    let singles = compositions_up_to_weight(max_total_weight - 1, max_depth);
    let mut pairs = Vec::new();
    for a in &singles {
        for b in &singles {
            if a.weight() + b.weight() <= max_total_weight {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

/// Every way to pick one weight from `pool` for each of `depth` indices,
/// in mixed-radix order with the first index varying fastest.
pub fn weight_assignments(pool: &[Rational], depth: usize) -> Vec<Vec<Rational>> {
    let total = pool.len().pow(depth as u32);
    let mut all = Vec::with_capacity(total);
    for mut index in 0..total {
        let mut assignment = Vec::with_capacity(depth);
        for _ in 0..depth {
            assignment.push(pool[index % pool.len()].clone());
            index /= pool.len();
        }
        all.push(assignment);
    }
    all
}

/// The result of one sweep: every case record plus the failure count.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub selector: Selector,
    pub grid: VerificationGrid,
    pub cases: Vec<Value>,
    pub failures: usize,
}

impl VerifyOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} cases, {} failures ({})",
            self.selector.name(),
            self.cases.len(),
            self.failures,
            self.grid.describe(self.selector)
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.selector.name(),
            "grid": self.grid.to_json(self.selector),
            "summary": { "cases": self.cases.len(), "failures": self.failures },
            "cases": self.cases,
        })
    }
}

/// Runs the sweep for one selector over one grid.
pub fn run_verify(selector: Selector, grid: &VerificationGrid) -> VerifyOutcome {
    let (cases, failures) = match selector {
        Selector::Reciprocity => run_reciprocity(grid),
        Selector::Complementary => run_complementary(grid),
        Selector::Weighted => run_weighted(grid),
        Selector::ShuffleAgreement => run_shuffle_agreement(grid),
        Selector::PolylogShuffle => run_polylog_shuffle(grid),
        Selector::PartialFraction => run_partial_fraction(grid),
    };
    VerifyOutcome {
        selector,
        grid: grid.clone(),
        cases,
        failures,
    }
}

fn tag_pair(record: &mut Value, a: &Composition, b: &Composition) {
    record["a"] = Value::String(a.to_string());
    record["b"] = Value::String(b.to_string());
}

fn run_reciprocity(grid: &VerificationGrid) -> (Vec<Value>, usize) {
    let eval = Evaluator::new();
    let mut cases = Vec::new();
    let mut failures = 0;
    for (a, b) in composition_pairs(grid.max_weight, grid.max_depth) {
        // Touch the largest horizon first so every smaller lookup reuses
        // the cached tables.
        eval.check_reciprocity(grid.max_n, 1, &a, &b)
            .expect("1 <= j <= N");
        for n in 1..=grid.max_n {
            for j in 1..=n {
                let report = eval.check_reciprocity(n, j, &a, &b).expect("1 <= j <= N");
                if !report.ok() {
                    failures += 1;
                }
                let mut record = report.to_json();
                tag_pair(&mut record, &a, &b);
                cases.push(record);
            }
        }
    }
    (cases, failures)
}

fn run_complementary(grid: &VerificationGrid) -> (Vec<Value>, usize) {
    let eval = Evaluator::new();
    let mut cases = Vec::new();
    let mut failures = 0;
    for (a, b) in composition_pairs(grid.max_weight, grid.max_depth) {
        eval.check_complementary(grid.max_n, 1, &a, &b)
            .expect("1 <= j <= N");
        for n in 1..=grid.max_n {
            for j in 1..=n {
                let complementary =
                    eval.check_complementary(n, j, &a, &b).expect("1 <= j <= N");
                let recombination =
                    eval.check_recombination(n, j, &a, &b).expect("1 <= j <= N");
                let ok = complementary.ok() && recombination.ok();
                if !ok {
                    failures += 1;
                }
                let mut record = complementary.to_json();
                record["recombination_residual"] =
                    Value::String(recombination.residual.to_string());
                record["ok"] = Value::Bool(ok);
                tag_pair(&mut record, &a, &b);
                cases.push(record);
            }
        }
    }
    (cases, failures)
}

fn join_weights(weights: &[Rational]) -> String {
    let parts: Vec<String> = weights.iter().map(ToString::to_string).collect();
    parts.join(";")
}

fn run_weighted(grid: &VerificationGrid) -> (Vec<Value>, usize) {
    let eval = Evaluator::new();
    let mut cases = Vec::new();
    let mut failures = 0;
    for (a, b) in composition_pairs(grid.max_weight, grid.max_depth) {
        for sigma in weight_assignments(&grid.pool, a.depth()) {
            let aw = WeightedComposition::new(a.clone(), sigma.clone())
                .expect("pool entries are nonzero");
            for tau in weight_assignments(&grid.pool, b.depth()) {
                let bw = WeightedComposition::new(b.clone(), tau.clone())
                    .expect("pool entries are nonzero");
                eval.check_weighted_reciprocity(grid.max_n, 1, &aw, &bw)
                    .expect("1 <= j <= N");
                for n in 1..=grid.max_n {
                    for j in 1..=n {
                        let report = eval
                            .check_weighted_reciprocity(n, j, &aw, &bw)
                            .expect("1 <= j <= N");
                        if !report.ok() {
                            failures += 1;
                        }
                        let mut record = report.to_json();
                        tag_pair(&mut record, &a, &b);
                        record["sigma"] = Value::String(join_weights(&sigma));
                        record["tau"] = Value::String(join_weights(&tau));
                        cases.push(record);
                    }
                }
            }
        }
    }
    (cases, failures)
}

fn run_shuffle_agreement(grid: &VerificationGrid) -> (Vec<Value>, usize) {
    let eval = Evaluator::new();
    let mut cases = Vec::new();
    let mut failures = 0;
    for (a, b) in composition_pairs(grid.max_weight, grid.max_depth) {
        let aw = WeightedComposition::unweighted(a.clone());
        let bw = WeightedComposition::unweighted(b.clone());
        let direct = eval.r_weighted_direct_table(grid.max_n, &aw, &bw);
        let recurrence = eval.r_weighted_recurrence_table(
            grid.max_n,
            &aw,
            &bw,
            RatioOrientation::OwnOverOther,
        );
        let series =
            r_via_series_table(grid.max_n, &a, &b).expect("compositions are nonempty");
        for n in 0..=grid.max_n {
            let shuffle = eval.r_shuffle(n, &a, &b);
            let ok =
                direct[n] == recurrence[n] && direct[n] == series[n] && direct[n] == shuffle;
            if !ok {
                failures += 1;
            }
            let mut record = json!({
                "N": n,
                "direct": direct[n].to_string(),
                "recurrence": recurrence[n].to_string(),
                "series": series[n].to_string(),
                "shuffle": shuffle.to_string(),
                "ok": ok,
            });
            tag_pair(&mut record, &a, &b);
            cases.push(record);
        }
    }
    (cases, failures)
}

fn run_polylog_shuffle(grid: &VerificationGrid) -> (Vec<Value>, usize) {
    let mut cases = Vec::new();
    let mut failures = 0;
    for (a, b) in composition_pairs(grid.max_weight, grid.max_depth) {
        let check =
            check_polylog_shuffle(&a, &b, grid.max_n).expect("compositions are nonempty");
        let (ok, detail) = match check {
            PolylogShuffleCheck::Verified { order } => (true, format!("verified to z^{order}")),
            PolylogShuffleCheck::Mismatch {
                exponent,
                product,
                combination,
            } => (
                false,
                format!("z^{exponent}: product {product} vs combination {combination}"),
            ),
        };
        if !ok {
            failures += 1;
        }
        let mut record = json!({
            "order": grid.max_n,
            "ok": ok,
            "detail": detail,
        });
        tag_pair(&mut record, &a, &b);
        cases.push(record);
    }
    (cases, failures)
}

fn run_partial_fraction(grid: &VerificationGrid) -> (Vec<Value>, usize) {
    let mut cases = Vec::new();
    let mut failures = 0;
    for a in 1..=grid.max_weight {
        for b in 1..=grid.max_weight {
            let terms = partial_fraction_terms(a, b).expect("exponents are positive");
            for n in 2..=grid.max_n as u64 {
                for k in 1..n {
                    let split = terms.evaluate(n, k);
                    let kernel = reciprocal_pole_product(a, b, n, k);
                    let ok = split == kernel;
                    if !ok {
                        failures += 1;
                    }
                    cases.push(json!({
                        "N": n,
                        "a": a,
                        "b": b,
                        "k": k,
                        "kernel": kernel.to_string(),
                        "ok": ok,
                        "split": split.to_string(),
                    }));
                }
            }
        }
    }
    (cases, failures)
}

/// How `verify` prints its records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

/// Rendered output, split by stream so the summary never pollutes
/// machine-readable stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
}

/// Exact value fields that a passing human line omits; failures print
/// everything.
const VERBOSE_KEYS: [&str; 9] = [
    "lhs",
    "rhs",
    "direct",
    "recurrence",
    "series",
    "shuffle",
    "split",
    "kernel",
    "detail",
];

fn scalar_to_string(value: &Value) -> String {
    match value {
        Value::String(text) => text.clone(),
        other => other.to_string(),
    }
}

fn human_line(record: &Value) -> String {
    let record = record.as_object().expect("case records are objects");
    let ok = record
        .get("ok")
        .and_then(Value::as_bool)
        .unwrap_or(false);
    let mut line = String::from(if ok { "ok  " } else { "FAIL" });
    for (key, value) in record {
        if key == "ok" || (ok && VERBOSE_KEYS.contains(&key.as_str())) {
            continue;
        }
        line.push(' ');
        line.push_str(key);
        line.push('=');
        line.push_str(&scalar_to_string(value));
    }
    line
}

fn csv_field(value: &Value) -> String {
    let raw = scalar_to_string(value);
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn render_csv(cases: &[Value]) -> String {
    let mut out = String::new();
    let Some(first) = cases.first() else {
        return out;
    };
    let keys: Vec<String> = first
        .as_object()
        .expect("case records are objects")
        .keys()
        .cloned()
        .collect();
    out.push_str(&keys.join(","));
    out.push('\n');
    for case in cases {
        let record: &Map<String, Value> = case.as_object().expect("case records are objects");
        let row: Vec<String> = keys
            .iter()
            .map(|key| record.get(key).map(csv_field).unwrap_or_default())
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Renders a sweep outcome for one output format. Human mode prints one
/// line per case plus a summary on stdout; JSON mode prints a single
/// document on stdout; CSV mode prints records on stdout and the summary
/// on stderr.
pub fn render(outcome: &VerifyOutcome, format: OutputFormat) -> Rendered {
    match format {
        OutputFormat::Human => {
            let mut stdout = String::new();
            for case in &outcome.cases {
                stdout.push_str(&human_line(case));
                stdout.push('\n');
            }
            stdout.push_str(&outcome.summary_line());
            stdout.push('\n');
            Rendered {
                stdout,
                stderr: String::new(),
            }
        }
        OutputFormat::Json => {
            let mut stdout = serde_json::to_string_pretty(&outcome.to_json())
                .expect("records serialize");
            stdout.push('\n');
            Rendered {
                stdout,
                stderr: String::new(),
            }
        }
        OutputFormat::Csv => Rendered {
            stdout: render_csv(&outcome.cases),
            stderr: outcome.summary_line() + "\n",
        },
    }
}

/// Maps a failure count to the process exit code: 0 when every case
/// passed, 1 otherwise. (Usage errors exit with 2 via the argument
/// parser.)
pub fn exit_code(failures: usize) -> u8 {
    if failures == 0 {
        0
    } else {
        1
    }
}
