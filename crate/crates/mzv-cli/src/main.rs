//! `mzv`: exact finite multiple zeta sums, shuffle products, cross sums,
//! identity sweeps, and central-split gaps from the command line.
//!
//! Every value is computed in exact rational arithmetic and printed in
//! lowest terms; nothing is floating point except the convenience
//! approximations next to gap output. Exit codes: 0 on success, 1 when a
//! `verify` sweep finds a failing case, 2 on usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mzv_cli::{exit_code, render, run_verify, OutputFormat, Selector, VerificationGrid};
use mzv_core::identities::Evaluator;
use mzv_core::rational::{approximate, parse_rational};
use mzv_core::series::polylog_series;
use mzv_core::words::{composition_to_word, shuffle_compositions, shuffle_recursive};
use mzv_core::zeta::{zeta_finite, zeta_weighted, WeightedComposition};
use mzv_core::{Composition, Rational};

#[derive(Parser)]
#[command(
    name = "mzv",
    version,
    about = "Exact finite multiple zeta sums and their reciprocity laws"
)]
struct Cli {
    /// Accepted for script compatibility; every computation here is exact
    /// and deterministic, so the seed changes nothing.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate zeta_N(a): the sum of 1/(n1^a1 ... nr^ar) over
    /// N >= n1 > ... > nr >= 1, exactly.
    Zeta {
        /// Truncation horizon N.
        n: usize,
        /// Composition, e.g. `2,1`.
        a: String,
        /// Geometric weights, one per index, e.g. `-1,1/2`; the weight
        /// sigma on index n_i contributes an extra factor 1/sigma^(n_i).
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Shuffle the binary codes of two compositions.
    Shuffle {
        /// Left composition, e.g. `2`.
        a: String,
        /// Right composition, e.g. `1,1`.
        b: String,
        /// Print composition terms or raw binary words.
        #[arg(long = "as", value_enum, default_value = "compositions")]
        output: ShuffleOutput,
    },
    /// Cross sum R_N(a; b) = sum_{k=1}^{N} zeta_{N-k}(b) zeta_{k-1}(a2,...) / k^a1.
    R {
        /// Truncation horizon N.
        n: usize,
        /// Left composition, e.g. `2,1`.
        a: String,
        /// Right composition, e.g. `3`.
        b: String,
        /// Which of the four equivalent routes computes it.
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
    },
    /// Sweep one identity over a grid of cases and report each one.
    Verify {
        /// The identity or agreement to sweep.
        #[arg(value_enum)]
        identity: Selector,
        /// Grid overrides, e.g. `N=10,weight=4,depth=3,pool=-1;1;2;1/2`;
        /// omitted keys keep the identity's default bounds.
        #[arg(long)]
        grid: Option<String>,
        /// Emit one JSON document instead of human-readable lines.
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit CSV records on stdout (the summary moves to stderr).
        #[arg(long)]
        csv: bool,
    },
    /// Print the truncated polylogarithm series Li_a(z) as a JSON array
    /// of exact coefficients, index = exponent.
    Polylog {
        /// Composition, e.g. `2,1`.
        a: String,
        /// Truncation order; coefficients of z^0 through z^order print.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Central-split gaps |S_n(a;b) - 2 zeta_M(a) zeta_M(b)|, which
    /// shrink as n grows when both leading exponents are at least 2.
    Gap {
        /// Left composition; its first exponent must be at least 2.
        a: String,
        /// Right composition; its first exponent must be at least 2.
        b: String,
        /// Comma-separated split parameters; each n compares the window
        /// N = 2n+1 at its central split j = n+1.
        #[arg(long, default_value = "10,20,40")]
        n: String,
        /// Reference horizon M for the limiting product; must be at least
        /// the largest window 2n+1.
        #[arg(long, visible_alias = "M", default_value_t = 500)]
        horizon: usize,
        /// Emit one JSON document instead of human-readable lines.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShuffleOutput {
    Compositions,
    Words,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Recurrence,
    Shuffle,
    Series,
}

fn parse_composition(text: &str) -> Result<Composition, String> {
    text.parse::<Composition>().map_err(|error| error.to_string())
}

fn parse_weights(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|piece| parse_rational(piece.trim()).map_err(|error| error.to_string()))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Zeta { n, a, weights } => {
            let a = parse_composition(&a)?;
            let value = match weights {
                Some(text) => {
                    let weights = parse_weights(&text)?;
                    let argument = WeightedComposition::new(a, weights)
                        .map_err(|error| error.to_string())?;
                    zeta_weighted(n, &argument)
                }
                None => zeta_finite(n, &a),
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Shuffle { a, b, output } => {
            let a = parse_composition(&a)?;
            let b = parse_composition(&b)?;
            match output {
                ShuffleOutput::Compositions => {
                    let terms: Vec<String> = shuffle_compositions(&a, &b)
                        .iter()
                        .map(|(coefficient, composition)| format!("{coefficient}*{composition}"))
                        .collect();
                    println!("{}", terms.join(" + "));
                }
                ShuffleOutput::Words => {
                    let product =
                        shuffle_recursive(&composition_to_word(&a), &composition_to_word(&b));
                    println!("{product}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::R { n, a, b, method } => {
            let a = parse_composition(&a)?;
            let b = parse_composition(&b)?;
            let eval = Evaluator::new();
            let value = match method {
                Method::Direct => eval.r_direct(n, &a, &b),
                Method::Recurrence => eval.r_recurrence(n, &a, &b),
                Method::Shuffle => eval.r_shuffle(n, &a, &b),
                Method::Series => eval
                    .r_via_series(n, &a, &b)
                    .map_err(|error| error.to_string())?,
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            identity,
            grid,
            json,
            csv,
        } => {
            let grid = match grid {
                Some(text) => VerificationGrid::with_overrides(identity, &text)?,
                None => VerificationGrid::defaults(identity),
            };
            let outcome = run_verify(identity, &grid);
            let format = if json {
                OutputFormat::Json
            } else if csv {
                OutputFormat::Csv
            } else {
                OutputFormat::Human
            };
            let rendered = render(&outcome, format);
            print!("{}", rendered.stdout);
            eprint!("{}", rendered.stderr);
            Ok(ExitCode::from(exit_code(outcome.failures)))
        }
        Command::Polylog { a, order } => {
            let a = parse_composition(&a)?;
            let series = polylog_series(&a, order).map_err(|error| error.to_string())?;
            let coefficients: Vec<String> = series
                .coefficients()
                .iter()
                .map(Rational::to_string)
                .collect();
            println!(
                "{}",
                serde_json::to_string(&coefficients).expect("coefficient strings serialize")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Gap {
            a,
            b,
            n,
            horizon,
            json: as_json,
        } => {
            let a = parse_composition(&a)?;
            let b = parse_composition(&b)?;
            let mut splits = Vec::new();
            for piece in n.split(',') {
                let value: usize = piece
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad split parameter `{piece}`"))?;
                splits.push(value);
            }
            let eval = Evaluator::new();
            let mut rows = Vec::new();
            for n in splits {
                let gap = eval
                    .asymptotic_gap(n, &a, &b, horizon)
                    .map_err(|error| error.to_string())?;
                rows.push((n, gap));
            }
            if as_json {
                let gaps: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(n, gap)| {
                        json!({
                            "n": n,
                            "window": 2 * n + 1,
                            "gap": gap.to_string(),
                            "approx": approximate(gap),
                        })
                    })
                    .collect();
                let doc = json!({
                    "a": a.to_string(),
                    "b": b.to_string(),
                    "horizon": horizon,
                    "gaps": gaps,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("gap rows serialize")
                );
            } else {
                for (n, gap) in &rows {
                    println!(
                        "n={n} window={} gap={gap} ~{:.6e}",
                        2 * n + 1,
                        approximate(gap)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
