//! Subcommand bodies. Each returns the text written to stdout, so output is
//! assembled in one place and in a fixed order.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use subshift_core::orbit::{empirical_class, radius_series, EvidenceReport};
use subshift_core::pairs::PairClass;
use subshift_core::tower::{verify_scrambled_s, ScrambledReport};
use subshift_core::Substitution;

use crate::error::CliError;
use crate::format::parse_substitution;
use crate::point::{read_literal, PointLiteral};
use crate::report::{self, analysis_text, Budgets, Tool};

pub fn read_substitution(path: &Path) -> Result<Substitution, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_substitution(&text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn source_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn analyze(
    path: &Path,
    json: bool,
    budgets: &Budgets,
    period_bound: Option<usize>,
) -> Result<String, CliError> {
    let s = read_substitution(path)?;
    let r = report::analyze(&source_name(path), &s, budgets, period_bound)?;
    Ok(if json { to_json(&r) } else { analysis_text(&r) })
}

pub fn reduce(path: &Path, json: bool) -> Result<String, CliError> {
    let s = read_substitution(path)?;
    let r = report::reduce(&source_name(path), &s);
    if json {
        return Ok(to_json(&r));
    }
    let mut out = String::new();
    for [from, to] in &r.one_to_one_reduction.letter_map {
        writeln!(out, "{from} => {to}").unwrap();
    }
    for rule in &r.one_to_one_reduction.rules {
        writeln!(out, "{} -> {}", rule.letter, rule.image).unwrap();
    }
    Ok(out)
}

pub fn decide(path: &Path, json: bool, budgets: &Budgets) -> Result<String, CliError> {
    let s = read_substitution(path)?;
    let r = report::decide(&source_name(path), &s, budgets)?;
    if json {
        return Ok(to_json(&r));
    }
    let mut out = format!(
        "infinite subshift: {}\nelementary: {}\n",
        r.x_tau_infinite, r.is_elementary
    );
    for step in &r.decision_trace {
        writeln!(out, "step: {}", serde_json::to_string(step).unwrap()).unwrap();
    }
    Ok(out)
}

pub fn classify(
    path: &Path,
    x: &str,
    y: &str,
    json: bool,
    budgets: &Budgets,
    window: usize,
) -> Result<String, CliError> {
    let system = report::point_system(&read_substitution(path)?)?;
    let px = read_literal(x)?.to_point(&system)?;
    let py = read_literal(y)?.to_point(&system)?;
    let r = report::classify(&px, &py, budgets, window)?;
    if json {
        return Ok(to_json(&r));
    }
    let v = &r.verdict;
    let e = &v.evidence;
    Ok(format!(
        "class: {:?}\nrule: {}\nstrong: {}\nevidence: horizon {} window {}: {} proximality, {} separation events, consistent {}\n",
        v.class,
        v.rule.tag(),
        v.strong.map_or("undetermined".to_string(), |b| b.to_string()),
        e.horizon,
        e.window,
        e.proximality_events,
        e.separation_events,
        e.consistent
    ))
}

#[derive(Serialize)]
struct SimulateReport {
    tool: Tool,
    x: PointLiteral,
    y: PointLiteral,
    evidence: EvidenceReport,
}

#[allow(clippy::too_many_arguments)]
pub fn simulate(
    path: &Path,
    x: &str,
    y: &str,
    json: bool,
    budgets: &Budgets,
    window: usize,
    csv_path: Option<&Path>,
) -> Result<String, CliError> {
    let system = report::point_system(&read_substitution(path)?)?;
    let px = read_literal(x)?.to_point(&system)?;
    let py = read_literal(y)?.to_point(&system)?;
    let horizon = budgets.horizon_for(system.p());
    budgets.check_word(2 * (horizon + window) as u128 + 1)?;
    let evidence = empirical_class(&px, &py, horizon, window)?;
    if let Some(csv_path) = csv_path {
        let io = |source| CliError::Io {
            path: csv_path.display().to_string(),
            source,
        };
        let mut w = csv::Writer::from_path(csv_path).map_err(|e| io(e.into()))?;
        w.write_record(["n", "radius"]).map_err(|e| io(e.into()))?;
        for (n, r) in radius_series(&px, &py, horizon, window)?.iter().enumerate() {
            w.serialize((n, r)).map_err(|e| io(e.into()))?;
        }
        w.flush().map_err(io)?;
    }
    if json {
        return Ok(to_json(&SimulateReport {
            tool: Tool {
                name: report::TOOL_NAME,
                version: report::TOOL_VERSION,
            },
            x: PointLiteral::of_point(&px),
            y: PointLiteral::of_point(&py),
            evidence,
        }));
    }
    Ok(format!(
        "horizon: {}\nwindow: {}\nproximality events: {}\nseparation events: {}\nlast separation: {}\nmin distance: {}\nmax distance: {}\n",
        evidence.horizon,
        evidence.window,
        evidence.proximality_events.len(),
        evidence.separation_events.len(),
        evidence
            .max_last_difference
            .map_or("none".to_string(), |n| n.to_string()),
        evidence.min_distance,
        evidence.max_distance
    ))
}

fn class_cell(class: PairClass) -> &'static str {
    match class {
        PairClass::Distal => "D",
        PairClass::Asymptotic => "A",
        PairClass::LiYorke => "LY",
    }
}

/// The verdict matrix as an aligned table: one row per pair `(s_i, s_j)`,
/// one column per level; `!` marks an entry that differs from the predicted
/// pattern or whose evidence disagrees.
pub fn tower_table(r: &ScrambledReport) -> String {
    let mut out = String::new();
    write!(out, "{:<8}", "pair").unwrap();
    for level in 1..=r.max_level {
        write!(out, "{:>5}", format!("L{level}")).unwrap();
    }
    out.push('\n');
    for pair in &r.pairs {
        write!(out, "{:<8}", format!("s{},s{}", pair.i, pair.j)).unwrap();
        for row in &pair.levels {
            let ok = row.verdict.class == row.expected && row.consistent;
            let cell = format!(
                "{}{}",
                class_cell(row.verdict.class),
                if ok { "" } else { "!" }
            );
            write!(out, "{cell:>5}").unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "horizon {}; distal entries {}; mismatches {}",
        r.horizon, r.distal_entries, r.mismatches
    )
    .unwrap();
    out
}

pub fn tower(depth: usize, horizon: usize, json: bool) -> Result<String, CliError> {
    let r = verify_scrambled_s(depth, horizon)?;
    Ok(if json { to_json(&r) } else { tower_table(&r) })
}

#[derive(Serialize)]
struct LanguageReport {
    n: usize,
    count: usize,
    words: Vec<String>,
}

pub fn language(path: &Path, n: usize, json: bool) -> Result<String, CliError> {
    let s = read_substitution(path)?;
    if !s.is_primitive() {
        return Err(subshift_core::Error::NotPrimitive.into());
    }
    let words: Vec<String> = s.language(n)?.iter().map(|w| s.render(w)).collect();
    if json {
        return Ok(to_json(&LanguageReport {
            n,
            count: words.len(),
            words,
        }));
    }
    Ok(words.iter().map(|w| format!("{w}\n")).collect())
}
