//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code together with everything that would be printed, so the binary is a
//! thin wrapper and tests can drive the CLI in-process.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::diagnostics::{
    build_report, DstHypothesis, DstOutcome, FocalMass, FusionReport, HypothesisAssessment,
    Recommendation, ReportOptions, SourceWeight, WeightPolicy,
};
use crate::evidence::SUM_TOLERANCE;
use crate::render::{number, table};
use crate::scenario::{parse_scenario_with, NamedWeights, Rule, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CONFLICT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "evfuse",
    version,
    about = "Fuse uncertain evidence and report conflict instead of hiding it"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Tolerance for mass sums.
    #[arg(long, default_value_t = SUM_TOLERANCE, global = true)]
    tolerance: f64,
    /// Contradiction threshold.
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Consistency floor below which the sources are in hard conflict.
    #[arg(long = "h-min", global = true)]
    h_min: Option<f64>,
    /// Necessity needed to recommend a hypothesis.
    #[arg(long, global = true)]
    nu: Option<f64>,
    /// Exit with status 2 when the verdict is HARD_CONFLICT.
    #[arg(long, global = true)]
    fail_on_conflict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a scenario file.
    Validate { file: PathBuf },
    /// Combine the sources with one rule.
    Fuse {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long, value_enum)]
        weights: Option<NamedWeights>,
        file: PathBuf,
    },
    /// Full fusion report.
    Report { file: PathBuf },
    /// Dempster-Shafer result next to each source's possibility/necessity.
    Compare { file: PathBuf },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Runs the CLI on `args`; the first item is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(message) => Outcome::invalid(message),
    }
}

struct Loaded {
    scenario: Scenario,
    options: ReportOptions,
    report: FusionReport,
}

fn load(
    cli: &Cli,
    file: &PathBuf,
    weights: Option<NamedWeights>,
    rule: Option<Rule>,
) -> Result<Loaded, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let scenario = parse_scenario_with(&text, cli.tolerance)
        .map_err(|e| format!("{}: {e}", file.display()))?;
    let sources = scenario
        .build_sources(cli.tolerance)
        .map_err(|e| e.to_string())?;
    let mut options = scenario.report_options().map_err(|e| e.to_string())?;
    for (flag, value, slot) in [
        ("--tau", cli.tau, &mut options.tau),
        ("--h-min", cli.h_min, &mut options.h_min),
        ("--nu", cli.nu, &mut options.nu),
    ] {
        if let Some(v) = value {
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{flag} must lie in [0, 1], got {v}"));
            }
            *slot = v;
        }
    }
    match weights {
        Some(NamedWeights::Uniform) => options.weights = WeightPolicy::Uniform,
        Some(NamedWeights::Adaptive) => options.weights = WeightPolicy::Adaptive,
        None => {}
    }
    if let Some(rule) = rule.filter(|r| *r != Rule::Dempster) {
        options.mode = rule.fusion_mode();
    }
    let report = build_report(&sources, &options).map_err(|e| e.to_string())?;
    Ok(Loaded {
        scenario,
        options,
        report,
    })
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    let (loaded, stdout) = match &cli.command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let scenario = parse_scenario_with(&text, cli.tolerance)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            return Ok(Outcome::ok(render_validate(cli.format, &scenario)));
        }
        Command::Fuse {
            rule,
            weights,
            file,
        } => {
            let loaded = load(cli, file, *weights, Some(*rule))?;
            let out = render_fuse(cli.format, *rule, &loaded);
            (loaded, out)
        }
        Command::Report { file } => {
            let loaded = load(cli, file, None, None)?;
            let out = render_report(cli.format, &loaded);
            (loaded, out)
        }
        Command::Compare { file } => {
            let loaded = load(cli, file, None, None)?;
            let out = render_compare(cli.format, &loaded);
            (loaded, out)
        }
    };
    let code =
        if cli.fail_on_conflict && loaded.report.recommendation == Recommendation::HardConflict {
            EXIT_CONFLICT
        } else {
            EXIT_OK
        };
    Ok(Outcome {
        code,
        stdout,
        stderr: String::new(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn set_expr(labels: &[String]) -> String {
    labels.join("|")
}

fn bool_word(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

#[derive(Serialize)]
struct ValidateDoc<'a> {
    valid: bool,
    scenario: &'a str,
    frame: &'a [String],
    sources: Vec<SourceSummary<'a>>,
}

#[derive(Serialize)]
struct SourceSummary<'a> {
    id: &'a str,
    kind: crate::scenario::SourceKind,
}

fn render_validate(format: Format, scenario: &Scenario) -> String {
    match format {
        Format::Json => to_json(&ValidateDoc {
            valid: true,
            scenario: &scenario.name,
            frame: &scenario.frame,
            sources: scenario
                .sources
                .iter()
                .map(|s| SourceSummary {
                    id: &s.id,
                    kind: s.kind,
                })
                .collect(),
        }),
        Format::Table => {
            let kinds: Vec<String> = scenario
                .sources
                .iter()
                .map(|s| {
                    format!(
                        "{} ({})",
                        s.id,
                        serde_json::to_value(s.kind).unwrap().as_str().unwrap()
                    )
                })
                .collect();
            format!(
                "ok: scenario {}\nframe: {}\nsources: {}\n",
                scenario.name,
                scenario.frame.join(", "),
                kinds.join(", ")
            )
        }
    }
}

#[derive(Serialize)]
struct DempsterDoc<'a> {
    scenario: &'a str,
    rule: Rule,
    #[serde(flatten)]
    dst: &'a DstOutcome,
    recommendation: &'a Recommendation,
}

#[derive(Serialize)]
struct PossibilisticDoc<'a> {
    scenario: &'a str,
    rule: Rule,
    weights: &'a [SourceWeight],
    consistency: f64,
    normal: Option<bool>,
    distribution: Option<&'a [crate::diagnostics::HypothesisValue]>,
    hypotheses: &'a [HypothesisAssessment],
    recommendation: &'a Recommendation,
}

#[derive(Serialize)]
struct UnavailableDoc<'a> {
    scenario: &'a str,
    rule: Rule,
    unavailable: &'a str,
    recommendation: &'a Recommendation,
}

fn render_fuse(format: Format, rule: Rule, loaded: &Loaded) -> String {
    let report = &loaded.report;
    let name = loaded.scenario.name.as_str();
    if rule == Rule::Dempster {
        let Some(dst) = &report.dst else {
            let reason = report.dst_unavailable.as_deref().unwrap_or("unavailable");
            return match format {
                Format::Json => to_json(&UnavailableDoc {
                    scenario: name,
                    rule,
                    unavailable: reason,
                    recommendation: &report.recommendation,
                }),
                Format::Table => format!(
                    "scenario: {name}\nrule: dempster\nDempster path unavailable: {reason}\nrecommendation: {}\n",
                    report.recommendation
                ),
            };
        };
        return match format {
            Format::Json => to_json(&DempsterDoc {
                scenario: name,
                rule,
                dst,
                recommendation: &report.recommendation,
            }),
            Format::Table => {
                let mut out = format!("scenario: {name}\nrule: dempster\n");
                out += &render_dst(dst);
                out += &format!("recommendation: {}\n", report.recommendation);
                out
            }
        };
    }

    let p = &report.possibilistic;
    let normal = p.distribution.as_ref().map(|d| {
        let height = d.iter().map(|h| h.value).fold(0.0, f64::max);
        (height - 1.0).abs() <= SUM_TOLERANCE
    });
    match format {
        Format::Json => to_json(&PossibilisticDoc {
            scenario: name,
            rule,
            weights: &p.weights,
            consistency: p.consistency,
            normal,
            distribution: p.distribution.as_deref(),
            hypotheses: &p.hypotheses,
            recommendation: &report.recommendation,
        }),
        Format::Table => {
            let mut out = format!("scenario: {name}\nrule: {}\n", p.mode);
            out += &format!(
                "weights: {}\n",
                render_weights(loaded.options.weights.name(), &p.weights)
            );
            out += &format!("h = {}", number(p.consistency));
            if normal == Some(false) {
                out += " (subnormal)";
            }
            out.push('\n');
            if let Some(d) = &p.distribution {
                let cells: Vec<String> = d
                    .iter()
                    .map(|h| format!("{}:{}", h.hypothesis, number(h.value)))
                    .collect();
                out += &format!("fused π = {{{}}}\n", cells.join(", "));
            }
            out += &assessment_table(&p.hypotheses);
            out += &format!("recommendation: {}\n", report.recommendation);
            out
        }
    }
}

fn render_weights(policy: &str, weights: &[SourceWeight]) -> String {
    let parts: Vec<String> = weights
        .iter()
        .map(|w| format!("{} {}", w.source, number(w.weight)))
        .collect();
    format!("{policy} ({})", parts.join(", "))
}

fn render_dst(dst: &DstOutcome) -> String {
    let mut out = format!("K = {}\n", number(dst.conflict));
    if dst.total_conflict {
        out += "total conflict: Dempster's rule is undefined\n";
        return out;
    }
    if let Some(combined) = &dst.combined {
        for FocalMass { set, mass } in combined {
            out += &format!("m({}) = {}\n", set_expr(set), number(*mass));
        }
    }
    if let Some(hyps) = &dst.hypotheses {
        let rows: Vec<Vec<String>> = hyps
            .iter()
            .map(|h: &DstHypothesis| {
                vec![
                    h.hypothesis.clone(),
                    number(h.mass),
                    number(h.belief),
                    number(h.plausibility),
                ]
            })
            .collect();
        out += &table(
            &[
                "hypothesis".into(),
                "mass".into(),
                "Bel".into(),
                "Pl".into(),
            ],
            &rows,
        );
    }
    out
}

fn assessment_table(hyps: &[HypothesisAssessment]) -> String {
    let rows: Vec<Vec<String>> = hyps
        .iter()
        .map(|h| {
            vec![
                h.hypothesis.clone(),
                number(h.necessity),
                number(h.possibility),
                number(h.width),
                bool_word(h.consistent),
            ]
        })
        .collect();
    table(
        &[
            "hypothesis".into(),
            "Nec".into(),
            "Pos".into(),
            "width".into(),
            "consistent".into(),
        ],
        &rows,
    )
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    scenario: &'a str,
    #[serde(flatten)]
    report: &'a FusionReport,
}

fn render_report(format: Format, loaded: &Loaded) -> String {
    let report = &loaded.report;
    let name = loaded.scenario.name.as_str();
    if format == Format::Json {
        return to_json(&ReportDoc {
            scenario: name,
            report,
        });
    }
    let s = &report.settings;
    let mut out = format!(
        "scenario: {name}\nframe: {}\nsettings: mode {}, tau {}, h_min {}, nu {}, weights {}\n",
        report.frame.join(", "),
        s.mode,
        number(s.tau),
        number(s.h_min),
        number(s.nu),
        s.weights
    );
    for src in &report.per_source {
        out += &format!("\nsource {} ({})\n", src.id, src.kind);
        out += &assessment_table(&src.hypotheses);
    }
    out += "\nDempster-Shafer\n";
    match (&report.dst, &report.dst_unavailable) {
        (Some(dst), _) => out += &render_dst(dst),
        (None, reason) => out += &format!("unavailable: {}\n", reason.as_deref().unwrap_or("")),
    }
    let p = &report.possibilistic;
    out += &format!("\npossibilistic ({})\n", p.mode);
    out += &format!("weights: {}\n", render_weights(s.weights, &p.weights));
    out += &format!("h = {}\n", number(p.consistency));
    if let Some(d) = &p.distribution {
        let cells: Vec<String> = d
            .iter()
            .map(|h| format!("{}:{}", h.hypothesis, number(h.value)))
            .collect();
        out += &format!("fused π = {{{}}}\n", cells.join(", "));
    }
    out += &assessment_table(&p.hypotheses);
    out += "\ncontradictions\n";
    if report.contradictions.is_empty() {
        out += "none\n";
    }
    for c in &report.contradictions {
        out += &format!("{}: {}\n", c.hypothesis, c.description);
    }
    out += &format!("\nrecommendation: {}\n", report.recommendation);
    out
}

#[derive(Debug, Serialize)]
pub struct ComparisonRow {
    pub hypothesis: String,
    pub dst_mass: Option<f64>,
    pub dst_belief: Option<f64>,
    pub dst_plausibility: Option<f64>,
    pub sources: Vec<SourceCell>,
}

#[derive(Debug, Serialize)]
pub struct SourceCell {
    pub source: String,
    pub possibility: f64,
    pub necessity: f64,
}

#[derive(Serialize)]
struct CompareDoc<'a> {
    scenario: &'a str,
    conflict: Option<f64>,
    total_conflict: bool,
    consistency: f64,
    rows: Vec<ComparisonRow>,
    contradictions: usize,
    recommendation: &'a Recommendation,
}

fn comparison_rows(report: &FusionReport) -> Vec<ComparisonRow> {
    report
        .frame
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let dst = report
                .dst
                .as_ref()
                .and_then(|d| d.hypotheses.as_ref())
                .map(|h| &h[i]);
            ComparisonRow {
                hypothesis: label.clone(),
                dst_mass: dst.map(|h| h.mass),
                dst_belief: dst.map(|h| h.belief),
                dst_plausibility: dst.map(|h| h.plausibility),
                sources: report
                    .per_source
                    .iter()
                    .map(|s| SourceCell {
                        source: s.id.clone(),
                        possibility: s.hypotheses[i].possibility,
                        necessity: s.hypotheses[i].necessity,
                    })
                    .collect(),
            }
        })
        .collect()
}

fn render_compare(format: Format, loaded: &Loaded) -> String {
    let report = &loaded.report;
    let rows = comparison_rows(report);
    let conflict = report.dst.as_ref().map(|d| d.conflict);
    let total_conflict = report.dst.as_ref().is_some_and(|d| d.total_conflict);
    if format == Format::Json {
        return to_json(&CompareDoc {
            scenario: &loaded.scenario.name,
            conflict,
            total_conflict,
            consistency: report.possibilistic.consistency,
            rows,
            contradictions: report.contradictions.len(),
            recommendation: &report.recommendation,
        });
    }
    let mut header = vec![
        "hypothesis".to_string(),
        "DS mass".to_string(),
        "DS Bel".to_string(),
        "DS Pl".to_string(),
    ];
    for s in &report.per_source {
        header.push(format!("Pos ({})", s.id));
        header.push(format!("Nec ({})", s.id));
    }
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), number);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![
                r.hypothesis.clone(),
                opt(r.dst_mass),
                opt(r.dst_belief),
                opt(r.dst_plausibility),
            ];
            for c in &r.sources {
                row.push(number(c.possibility));
                row.push(number(c.necessity));
            }
            row
        })
        .collect();
    let mut out = format!("scenario: {}\n", loaded.scenario.name);
    out += &table(&header, &cells);
    out += &match (conflict, total_conflict) {
        (Some(k), true) => format!("K = {} (total conflict)\n", number(k)),
        (Some(k), false) => format!("K = {}\n", number(k)),
        (None, _) => format!(
            "K unavailable: {}\n",
            report.dst_unavailable.as_deref().unwrap_or("")
        ),
    };
    out += &format!("h = {}\n", number(report.possibilistic.consistency));
    out += &format!("contradictions: {}\n", report.contradictions.len());
    out += &format!("recommendation: {}\n", report.recommendation);
    out
}
