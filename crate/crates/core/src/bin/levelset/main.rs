//! Command-line front end: parse measures, run analyses, emit reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use levelset_core::constructions::{builtin_example, geometric, select_blocks, ExampleId,
    ExampleMeasure};
use levelset_core::error::Error;
use levelset_core::measure::{parse_candidate_json, parse_measure_json, MeasureInput};
use levelset_core::rational::{parse_rational, Rational};
use levelset_core::report::{
    analyze, bullies_report, check_document, range_report, relations_report, AnalysisOptions,
    AnalysisReport, BulliesReport, CheckDocument, CheckMode, Part, RangeReport, RangeSummary,
    RelationsReport,
};
use levelset_core::{EnumerationConfig, Result};

mod selftest;

const EXIT_OK: u8 = 0;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_RESOURCE_LIMIT: u8 = 3;
const EXIT_NON_UNIQUE: u8 = 10;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "levelset",
    version,
    about = "Range, bully, and level-set uniqueness analysis for finite atomic measures",
    after_help = "Measures are JSON: {\"atoms\":[\"1\",\"2\",\"5/3\"],\"kappa\":\"0\"} or \
{\"signed_atoms\":[\"2/3\",\"-2/3\"]}. Rationals are strings \"p/q\" or plain integers.\n\
Exit codes: 0 unique/pass, 10 non-unique/fail, 2 bad input, 3 resource limit, 70 internal."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Emit JSON instead of human-readable text
    #[arg(long)]
    json: bool,
    /// Write the report to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Cap the number of atoms enumerations will touch
    /// (overrides the LEVELSET_MAX_N environment variable)
    #[arg(long, value_name = "N")]
    limit_n: Option<usize>,
    /// Enumeration strategy: auto, direct, or mitm
    #[arg(long, default_value = "auto", value_name = "KIND")]
    strategy: String,
    /// Recompute along brute-force paths; any disagreement aborts
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct MeasureArg {
    /// Measure as inline JSON (starts with '{') or a path to a JSON file
    #[arg(value_name = "MEASURE", conflicts_with = "example")]
    measure: Option<String>,
    /// Analyze a built-in example instead: ex1, ex2-mu, ex2-mu-prime,
    /// ex3-mu, ex3-mu-prime, or "ex4:<depth>"
    #[arg(long, value_name = "ID")]
    example: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: range, bullies, and the uniqueness certificate
    Analyze {
        #[command(flatten)]
        measure: MeasureArg,
        /// Candidate to check alongside: {"atoms":[...],"slope":"p/q"}
        /// (inline JSON or a file path)
        #[arg(long, value_name = "CANDIDATE")]
        candidate: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check a candidate measure against the input's level sets
    Check {
        #[command(flatten)]
        measure: MeasureArg,
        /// Candidate: {"atoms":[...],"slope":"p/q"} (inline or file)
        #[arg(long, value_name = "CANDIDATE")]
        candidate: String,
        /// L: equal measures force equal values; O: ordering too
        #[arg(long, default_value = "L", value_name = "L|O")]
        mode: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Range of the measure: subset sums, fused with the nonatomic part
    Range {
        #[command(flatten)]
        measure: MeasureArg,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Bully atoms: atoms heavier than everything strictly smaller
    Bullies {
        #[command(flatten)]
        measure: MeasureArg,
        /// For signed measures: abs (default), positive, or negative
        #[arg(long, value_name = "PART")]
        part: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Enumerate the sign-vector relation set with rank and basis
    Relations {
        #[command(flatten)]
        measure: MeasureArg,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print a built-in example measure as JSON
    Example {
        /// ex1, ex2-mu, ex2-mu-prime, ex3-mu, ex3-mu-prime, "ex4:<depth>"
        id: String,
    },
    /// Generate measures and block selections
    Construct {
        #[command(subcommand)]
        kind: ConstructCommand,
    },
    /// Run the built-in example regression suite
    Selftest {
        /// Emit JSON instead of one line per check
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// The geometric measure r, r^2, ..., r^count
    Geometric {
        #[arg(long, value_name = "P/Q")]
        ratio: String,
        #[arg(long, value_name = "N")]
        count: usize,
        /// Multiply every atom by this factor
        #[arg(long, value_name = "P/Q")]
        scale: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Extract dyadic blocks from a non-increasing mass list
    Lemma31 {
        /// File of whitespace-separated rationals (or a JSON array)
        #[arg(long, value_name = "FILE")]
        masses: PathBuf,
        /// The leading block is the shortest prefix with sum above this
        #[arg(long, value_name = "P/Q")]
        target: String,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) | Error::InsufficientMass { .. } => EXIT_INVALID_INPUT,
                Error::ResourceLimit { .. } => EXIT_RESOURCE_LIMIT,
                Error::LevelConflict(_) => EXIT_INVALID_INPUT,
                Error::Internal(_) => EXIT_INTERNAL,
            })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze {
            measure,
            candidate,
            common,
        } => {
            let input = load_measure(&measure)?;
            let opts = AnalysisOptions {
                config: build_config(&common)?,
                oracle: common.oracle,
                candidate: candidate.as_deref().map(load_candidate).transpose()?,
            };
            let started = Instant::now();
            let mut report = analyze(&input, &opts)?;
            report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
            let code = if report.certificate.verdict == "unique" {
                EXIT_OK
            } else {
                EXIT_NON_UNIQUE
            };
            emit(&common, &report, render_analysis(&report))?;
            Ok(code)
        }
        Command::Check {
            measure,
            candidate,
            mode,
            common,
        } => {
            let input = load_measure(&measure)?;
            let mode: CheckMode = mode.parse()?;
            let opts = AnalysisOptions {
                config: build_config(&common)?,
                oracle: common.oracle,
                candidate: None,
            };
            let nu = load_candidate(&candidate)?;
            let doc = check_document(&input, &nu, mode, &opts)?;
            let code = if doc.check.holds { EXIT_OK } else { EXIT_NON_UNIQUE };
            emit(&common, &doc, render_check(&doc))?;
            Ok(code)
        }
        Command::Range { measure, common } => {
            let input = load_measure(&measure)?;
            let report = range_report(&input, &build_config(&common)?)?;
            emit(&common, &report, render_range(&report))?;
            Ok(EXIT_OK)
        }
        Command::Bullies {
            measure,
            part,
            common,
        } => {
            let input = load_measure(&measure)?;
            let part: Option<Part> = part.as_deref().map(str::parse).transpose()?;
            let report = bullies_report(&input, part)?;
            emit(&common, &report, render_bullies(&report))?;
            Ok(EXIT_OK)
        }
        Command::Relations { measure, common } => {
            let input = load_measure(&measure)?;
            let report = relations_report(&input, &build_config(&common)?)?;
            emit(&common, &report, render_relations(&report))?;
            Ok(EXIT_OK)
        }
        Command::Example { id } => {
            let id: ExampleId = id.parse()?;
            println!("{}", measure_json(&to_input(builtin_example(id))));
            Ok(EXIT_OK)
        }
        Command::Construct { kind } => run_construct(kind),
        Command::Selftest { json } => selftest::run(json),
    }
}

fn run_construct(kind: ConstructCommand) -> Result<u8> {
    match kind {
        ConstructCommand::Geometric {
            ratio,
            count,
            scale,
            json,
            out,
        } => {
            let r = parse_rational(&ratio)?;
            let mut m = geometric(&r, count)?;
            if let Some(s) = scale {
                m = m.scaled(&parse_rational(&s)?)?;
            }
            let input = MeasureInput::Positive(m);
            let text = if json {
                measure_json(&input)
            } else {
                let MeasureInput::Positive(m) = &input else { unreachable!() };
                format!(
                    "geometric measure, {} atoms:\n{}",
                    m.atom_count(),
                    measure_json(&input)
                )
            };
            write_out(&out, text)?;
            Ok(EXIT_OK)
        }
        ConstructCommand::Lemma31 {
            masses,
            target,
            json,
            out,
        } => {
            let content = std::fs::read_to_string(&masses).map_err(|e| {
                Error::invalid_input(format!("cannot read {}: {e}", masses.display()))
            })?;
            let values = parse_mass_list(&content)?;
            let t = parse_rational(&target)?;
            let selection = select_blocks(&values, &t)?;
            #[derive(Serialize)]
            struct BlocksJson {
                blocks: Vec<Vec<usize>>,
                block_sums: Vec<String>,
                selected: usize,
            }
            let doc = BlocksJson {
                block_sums: (0..selection.blocks.len())
                    .map(|j| selection.block_sum(j).to_string())
                    .collect(),
                selected: selection.blocks.iter().map(Vec::len).sum(),
                blocks: selection.blocks.clone(),
            };
            let text = if json {
                serde_json::to_string_pretty(&doc).expect("serializable")
            } else {
                let mut lines = Vec::new();
                for (j, block) in doc.blocks.iter().enumerate() {
                    lines.push(format!(
                        "block {j}: {} indices [{}..{}], sum {}",
                        block.len(),
                        block.first().copied().unwrap_or(0),
                        block.last().copied().unwrap_or(0),
                        doc.block_sums[j]
                    ));
                }
                lines.push(format!("selected {} of {} masses", doc.selected, values.len()));
                lines.join("\n")
            };
            write_out(&out, text)?;
            Ok(EXIT_OK)
        }
    }
}

fn build_config(common: &CommonOpts) -> Result<EnumerationConfig> {
    let mut cfg = EnumerationConfig::default();
    if let Ok(text) = std::env::var("LEVELSET_MAX_N") {
        cfg.max_atoms = text.trim().parse().map_err(|_| {
            Error::invalid_input(format!("LEVELSET_MAX_N must be an integer, got '{text}'"))
        })?;
    }
    if let Some(n) = common.limit_n {
        cfg.max_atoms = n;
    }
    cfg.strategy = common.strategy.parse()?;
    Ok(cfg)
}

fn load_measure(arg: &MeasureArg) -> Result<MeasureInput> {
    match (&arg.measure, &arg.example) {
        (Some(text), None) => parse_measure_json(&inline_or_file(text)?),
        (None, Some(id)) => Ok(to_input(builtin_example(id.parse()?))),
        (None, None) => Err(Error::invalid_input(
            "provide a measure (inline JSON or file path) or --example <id>",
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn load_candidate(text: &str) -> Result<levelset_core::measure::CandidateMeasure> {
    parse_candidate_json(&inline_or_file(text)?)
}

fn inline_or_file(text: &str) -> Result<String> {
    if text.trim_start().starts_with('{') {
        Ok(text.to_string())
    } else {
        std::fs::read_to_string(text)
            .map_err(|e| Error::invalid_input(format!("cannot read {text}: {e}")))
    }
}

fn to_input(example: ExampleMeasure) -> MeasureInput {
    match example {
        ExampleMeasure::Positive(m) => MeasureInput::Positive(m),
        ExampleMeasure::Signed(m) => MeasureInput::Signed(m),
    }
}

fn measure_json(input: &MeasureInput) -> String {
    let quote = |values: &[Rational]| -> Vec<serde_json::Value> {
        values
            .iter()
            .map(|v| serde_json::Value::String(v.to_string()))
            .collect()
    };
    let doc = match input {
        MeasureInput::Positive(m) => serde_json::json!({
            "atoms": quote(m.atoms()),
            "kappa": m.kappa().to_string(),
        }),
        MeasureInput::Signed(m) => serde_json::json!({
            "signed_atoms": quote(m.atoms()),
        }),
    };
    doc.to_string()
}

fn parse_mass_list(content: &str) -> Result<Vec<Rational>> {
    let trimmed = content.trim_start();
    if trimmed.starts_with('[') {
        let texts: Vec<String> = serde_json::from_str(trimmed)
            .map_err(|e| Error::invalid_input(format!("bad mass array: {e}")))?;
        texts.iter().map(|t| parse_rational(t)).collect()
    } else {
        content
            .split_whitespace()
            .map(parse_rational)
            .collect()
    }
}

fn emit<T: Serialize>(common: &CommonOpts, doc: &T, human: String) -> Result<()> {
    let text = if common.json {
        serde_json::to_string_pretty(doc).expect("reports serialize")
    } else {
        human
    };
    write_out(&common.out, text)
}

fn write_out(out: &Option<PathBuf>, text: String) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::invalid_input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn points_line(points: &[String]) -> String {
    if points.len() <= 40 {
        format!("{{{}}}", points.join(", "))
    } else {
        format!(
            "{{{}, ...}} ({} values)",
            points[..8].join(", "),
            points.len()
        )
    }
}

fn render_range_lines(range: &RangeSummary, lines: &mut Vec<String>) {
    lines.push(format!("total: {}", range.total));
    if let Some(points) = &range.points {
        lines.push(format!("range points: {}", points_line(points)));
    }
    if let Some(intervals) = &range.intervals {
        let parts: Vec<String> = intervals
            .iter()
            .map(|[lo, hi]| format!("[{lo}, {hi}]"))
            .collect();
        lines.push(format!("range intervals: {}", parts.join(" u ")));
    }
    lines.push(format!(
        "arithmetic progression: {}",
        yes_no(range.is_arithmetic_progression)
    ));
    if let Some(b) = &range.bullies {
        lines.push(format!(
            "bullies: {} (no-bullies criterion: {})",
            index_list(b),
            yes_no(range.no_bullies.unwrap_or(b.is_empty()))
        ));
    }
    if let (Some(p), Some(n)) = (&range.bullies_positive_part, &range.bullies_negative_part) {
        lines.push(format!(
            "bullies: positive part {}, negative part {}",
            index_list(p),
            index_list(n)
        ));
    }
}

fn render_analysis(report: &AnalysisReport) -> String {
    let mut lines = Vec::new();
    lines.push(render_input(&report.input));
    render_range_lines(&report.range, &mut lines);
    let c = &report.certificate;
    lines.push(format!(
        "verdict: {} (rank {} of required {}, {} criterion)",
        c.verdict, c.rank, c.required_rank, c.criterion
    ));
    if !c.basis.is_empty() {
        lines.push(format!("basis: {}", c.basis.join(" ")));
        if let Some(defects) = &c.basis_defects {
            lines.push(format!("basis defects: {}", defects.join(" ")));
        }
    }
    if let Some(w) = &c.witness {
        lines.push(format!(
            "witness: atoms [{}], slope {}",
            w.atoms.join(", "),
            w.slope
        ));
        if let Some(positive) = c.witness_positive {
            let o = match c.witness_satisfies_o {
                Some(true) => "yes",
                Some(false) => "no",
                None => "not checked",
            };
            lines.push(format!(
                "witness strictly positive: {}, satisfies order condition: {o}",
                yes_no(positive)
            ));
        }
    }
    for check in &report.checks {
        lines.push(render_check_line(check));
    }
    lines.push(format!(
        "strategy: {}, max atoms: {}{}",
        report.meta.strategy,
        report.meta.max_atoms,
        if report.meta.oracle { ", oracle-verified" } else { "" }
    ));
    if let Some(ms) = report.elapsed_ms {
        lines.push(format!("elapsed: {ms} ms"));
    }
    lines.join("\n")
}

fn render_input(input: &levelset_core::report::InputEcho) -> String {
    if let (Some(atoms), Some(kappa)) = (&input.atoms, &input.kappa) {
        format!("measure: atoms [{}], kappa {kappa}", atoms.join(", "))
    } else if let Some(signed) = &input.signed_atoms {
        format!(
            "measure: signed atoms [{}], positive part {:?}, negative part {:?}",
            signed.join(", "),
            input.hahn_positive.as_deref().unwrap_or(&[]),
            input.hahn_negative.as_deref().unwrap_or(&[])
        )
    } else {
        "measure: (empty)".into()
    }
}

fn render_check_line(check: &levelset_core::report::CheckReport) -> String {
    match (&check.violation, check.holds) {
        (_, true) => format!("check {}: holds", check.mode),
        (Some(v), false) => format!(
            "check {}: fails on atoms {:?} (+{} nonatomic) vs atoms {:?} (+{} nonatomic): \
mu {} vs {}, candidate {} vs {}",
            check.mode, v.set_a, v.kappa_a, v.set_b, v.kappa_b, v.mu_a, v.mu_b, v.nu_a, v.nu_b
        ),
        (None, false) => format!("check {}: fails", check.mode),
    }
}

fn render_check(doc: &CheckDocument) -> String {
    let mut lines = vec![
        render_input(&doc.input),
        format!(
            "candidate: atoms [{}], slope {}",
            doc.candidate.atoms.join(", "),
            doc.candidate.slope
        ),
        render_check_line(&doc.check),
    ];
    if doc.input.note.is_some() {
        lines.push("note: candidate checked against the total-variation measure".into());
    }
    lines.join("\n")
}

fn render_range(report: &RangeReport) -> String {
    let mut lines = vec![render_input(&report.input)];
    render_range_lines(&report.range, &mut lines);
    lines.join("\n")
}

fn render_bullies(report: &BulliesReport) -> String {
    let mut lines = vec![render_input(&report.input)];
    if let Some(part) = &report.part {
        lines.push(format!("part: {part}"));
    }
    lines.push(format!("atoms: [{}]", report.atoms.join(", ")));
    lines.push(format!(
        "bullies: {} (no-bullies criterion: {})",
        index_list(&report.bullies),
        yes_no(report.no_bullies)
    ));
    lines.join("\n")
}

fn render_relations(report: &RelationsReport) -> String {
    let mut lines = vec![render_input(&report.input)];
    lines.push(format!("relations: {}", report.count));
    if report.count <= 64 {
        for (i, r) in report.relations.iter().enumerate() {
            match report.defects.as_ref() {
                Some(d) => lines.push(format!("  {r}  (defect {})", d[i])),
                None => lines.push(format!("  {r}")),
            }
        }
    }
    lines.push(format!("rank: {}", report.basis.rank));
    lines.push(format!("basis: {}", report.basis.vectors.join(" ")));
    lines.join("\n")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn index_list(indices: &[usize]) -> String {
    if indices.is_empty() {
        "none".into()
    } else {
        format!("{indices:?}")
    }
}
