//! Command line front end for the pair calculus.
//!
//! Every subcommand takes permutations in cycle notation, prints
//! `key: value` lines by default and a JSON document with `--json`.
//! Exit codes: 0 on success, 1 when verification finds a failure or a
//! runtime error occurs, 2 for unusable input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dessin_core::oracle::{self, VerificationReport, VerifyOptions};
use dessin_core::reroute::{self, Row};
use dessin_core::{graph, notation};
use dessin_core::{ElementLabel, PermutationPair, TypeClass};

#[derive(Parser)]
#[command(
    name = "dessin",
    version,
    about = "Permutation pairs as bicolored graphs: invariants, reroute surgery and brute-force verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants of a pair
    Analyze {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify marked pairs and predict what rerouting does to them
    Classify {
        #[command(flatten)]
        pair: PairArgs,
        /// First marked edge; with --b, restricts the table to one mark
        #[arg(long, requires = "b")]
        a: Option<String>,
        /// Second marked edge
        #[arg(long, requires = "a")]
        b: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cut edge a in two and rewire the loose ends towards b
    Reroute {
        #[command(flatten)]
        pair: PairArgs,
        /// Edge that is split into its white and black halves
        #[arg(long)]
        a: String,
        /// Edge the new white half is routed to
        #[arg(long)]
        b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Conjugate the white permutation by the transposition (a b)
    Conjugate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the whole check suite over one degree
    Verify {
        /// Ground set size to sweep
        #[arg(long)]
        degree: u32,
        /// Largest degree swept exhaustively; beyond it tuples are sampled
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        /// Sample count for degrees beyond --max-degree
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        /// Seed for the sampled sweep
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the bicolored graph model as Graphviz dot
    ExportDot {
        #[command(flatten)]
        pair: PairArgs,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PairArgs {
    /// White permutation in cycle notation, e.g. "(1, 2, 5, 3)(4)"
    #[arg(long)]
    white: String,
    /// Black permutation in cycle notation
    #[arg(long)]
    black: String,
    /// Number of edges when it exceeds the largest index mentioned
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit a JSON document instead of key: value lines
    #[arg(long)]
    json: bool,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// One finished answer in both renderings.
struct Document {
    human: String,
    value: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            // bad input gets the usage exit code, anything else is a runtime failure
            if err.downcast_ref::<dessin_core::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Analyze { pair, output } => {
            let pair = parse(&pair)?;
            let (lines, map) = pair_facts(&pair);
            emit(&output, &Document { human: lines.join("\n"), value: Value::Object(map) })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { pair, a, b, output } => {
            let pair = parse(&pair)?;
            let marks = match (a, b) {
                (Some(a), Some(b)) => {
                    vec![(notation::parse_label(&a)?, notation::parse_label(&b)?)]
                }
                // clap enforces that --a and --b come together
                _ => {
                    let mut all = Vec::new();
                    for a in pair.ground().iter() {
                        for b in pair.ground().iter() {
                            if a != b {
                                all.push((a, b));
                            }
                        }
                    }
                    all
                }
            };
            let doc = classify_document(&pair, &marks)?;
            emit(&output, &doc)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reroute { pair, a, b, output } => {
            let pair = parse(&pair)?;
            let a = notation::parse_label(&a)?;
            let b = notation::parse_label(&b)?;
            let result = reroute::reroute(&pair, a, b)?;
            let (facts, mut map) = pair_facts(&result.pair);
            let mut lines = vec![
                format!("a: {a}"),
                format!("b: {b}"),
                format!("a_white: {}", result.a_white),
                format!("a_black: {}", result.a_black),
            ];
            // the surgered permutations are the point, so rename their keys
            for line in facts {
                match line.split_once(": ") {
                    Some(("white", rest)) => lines.push(format!("rerouted_white: {rest}")),
                    Some(("black", rest)) => lines.push(format!("rerouted_black: {rest}")),
                    _ => lines.push(line),
                }
            }
            let white = map.remove("white").expect("white fact");
            let black = map.remove("black").expect("black fact");
            map.insert("rerouted_white".into(), white);
            map.insert("rerouted_black".into(), black);
            map.insert("a".into(), json!(a.to_string()));
            map.insert("b".into(), json!(b.to_string()));
            map.insert("a_white".into(), json!(result.a_white.to_string()));
            map.insert("a_black".into(), json!(result.a_black.to_string()));
            emit(&output, &Document { human: lines.join("\n"), value: Value::Object(map) })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Conjugate { pair, a, b, output } => {
            let pair = parse(&pair)?;
            let a = notation::parse_label(&a)?;
            let b = notation::parse_label(&b)?;
            let conjugated = reroute::conjugate_by_transposition(&pair, a, b)?;
            let (facts, mut map) = pair_facts(&conjugated);
            let mut lines = vec![format!("a: {a}"), format!("b: {b}")];
            lines.extend(facts);
            map.insert("a".into(), json!(a.to_string()));
            map.insert("b".into(), json!(b.to_string()));
            emit(&output, &Document { human: lines.join("\n"), value: Value::Object(map) })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { degree, max_degree, samples, seed, threads, output } => {
            let report = run_verify(degree, max_degree, samples, seed, threads.max(1))?;
            let doc = verify_document(&report);
            emit(&output, &doc)?;
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ExportDot { pair, out } => {
            let pair = parse(&pair)?;
            write_out(&out, &graph::export_dot(&pair))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse(args: &PairArgs) -> anyhow::Result<PermutationPair> {
    Ok(notation::parse_pair(&args.white, &args.black, args.degree)?)
}

/// Invariant lines and JSON fields shared by every pair-shaped answer.
///
/// The permutation strings round-trip: feeding them back through the
/// same cycle notation parser reproduces the pair.
fn pair_facts(pair: &PermutationPair) -> (Vec<String>, serde_json::Map<String, Value>) {
    let report = pair.report();
    let white = pair.white().to_string();
    let black = pair.black().to_string();
    let product = pair.product().to_string();
    let lines = vec![
        format!("white: {white}"),
        format!("black: {black}"),
        format!("product: {product}"),
        format!("nu_white: {}", report.nu_white),
        format!("nu_black: {}", report.nu_black),
        format!("nu_product: {}", report.nu_product),
        format!("chi: {}", report.chi),
        format!("genus: {}", report.genus),
        format!("transitive: {}", report.transitive),
    ];
    let Value::Object(map) = json!({
        "white": white,
        "black": black,
        "product": product,
        "nu_white": report.nu_white,
        "nu_black": report.nu_black,
        "nu_product": report.nu_product,
        "chi": report.chi,
        "genus": report.genus,
        "transitive": report.transitive,
    }) else {
        unreachable!()
    };
    (lines, map)
}

fn classify_document(
    pair: &PermutationPair,
    marks: &[(ElementLabel, ElementLabel)],
) -> anyhow::Result<Document> {
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for &(a, b) in marks {
        let ty = pair.classify_type(a, b)?;
        let exceptional = pair.classify_exceptional(a, b)?;
        let effect = pair.genus_effect(a, b)?;
        let prediction = reroute::predict_branch_type(pair, a, b)?;
        let transitive = reroute::conjugate_by_transposition(pair, a, b)?.is_transitive();
        lines.push(format!(
            "a={a} b={b}: type={ty} exceptional={exceptional} effect={effect} branch={}->{} conjugate_transitive={transitive}",
            prediction.rule, prediction.predicted
        ));
        rows.push(json!({
            "a": a.to_string(),
            "b": b.to_string(),
            "type": ty.to_string(),
            "exceptional": exceptional.to_string(),
            "effect": effect.to_string(),
            "branch_rule": prediction.rule.to_string(),
            "branch_predicted": prediction.predicted.to_string(),
            "conjugate_transitive": transitive,
        }));
    }
    let value = json!({
        "white": pair.white().to_string(),
        "black": pair.black().to_string(),
        "marks": rows,
    });
    Ok(Document { human: lines.join("\n"), value })
}

/// Splits one degree's sweep over worker threads and merges the chunks.
///
/// Degrees up to `max_degree` enumerate every tuple; beyond that a
/// seeded sample is drawn, so the answer is deterministic either way.
fn run_verify(
    degree: u32,
    max_degree: u32,
    samples: u64,
    seed: u64,
    workers: usize,
) -> anyhow::Result<VerificationReport> {
    let options = VerifyOptions::default();
    let chunks: Result<Vec<VerificationReport>, dessin_core::Error> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|worker| {
                    scope.spawn(move || {
                        if degree <= max_degree {
                            oracle::verify_chunk(degree, worker, workers, options)
                        } else {
                            oracle::verify_sampled(degree, samples, seed, worker, workers, options)
                        }
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|handle| handle.join().expect("verify worker panicked"))
                .collect()
        });
    Ok(oracle::merge_reports(&chunks?))
}

fn verify_document(report: &VerificationReport) -> Document {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|check| {
            json!({
                "name": check.name,
                "checked": check.checked,
                "failed": check.failed,
                "first": check.first.as_ref().map(|first| json!({
                    "white": first.white,
                    "black": first.black,
                    "a": first.a,
                    "b": first.b,
                    "expected": first.expected,
                    "actual": first.actual,
                })),
            })
        })
        .collect();
    let mut coverage = serde_json::Map::new();
    for (i, ty) in TypeClass::ALL.iter().enumerate() {
        for (j, row) in Row::ALL.iter().enumerate() {
            coverage.insert(format!("{ty}.{row}"), json!(report.branch_row_coverage[i][j]));
        }
    }
    let value = json!({
        "degree": report.degree,
        "cases": report.cases_checked,
        "sampled": report.sampled,
        "passed": report.all_passed(),
        "checks": checks,
        "branch_row_coverage": coverage,
        "tame_conjugations": {
            "transitive": report.tame_conj_transitive,
            "split": report.tame_conj_split,
        },
    });
    Document { human: report.to_string(), value }
}

fn emit(output: &OutputArgs, doc: &Document) -> anyhow::Result<()> {
    let mut text = if output.json {
        serde_json::to_string_pretty(&doc.value).expect("serializable document")
    } else {
        doc.human.clone()
    };
    text.push('\n');
    write_out(&output.out, &text)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
