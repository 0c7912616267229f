//! Serializable reports. Letters are written by name, words in the text
//! format's token syntax, and every list is in alphabet order.

use std::sync::Arc;

use serde::Serialize;
use subshift_core::orbit::{default_horizon, empirical_class, EvidenceReport, DEFAULT_WINDOW};
use subshift_core::pairs::{
    classify_pair, coincidence_class, enumerate_ly_orbits, has_ly_pairs, has_strong_ly,
    has_uncountable_ly, ly_certificate, uncountable_certificate, CoincidenceKind, PairClass,
    PairVerdict, Rule, DEFAULT_ENUMERATION_BUDGET,
};
use subshift_core::reduction::{
    decide_infinite_with_budget, is_simplifiable_with_budget, one_to_one_reduction, DecisionStep,
    ReductionResult, DEFAULT_SEARCH_BUDGET,
};
use subshift_core::tower::evidence_consistent;
use subshift_core::{Error, RepresentedPoint, Substitution, System, DEFAULT_MAX_WORD};

use crate::error::CliError;
use crate::format::render_rules;
use crate::point::PointLiteral;

pub const TOOL_NAME: &str = "subshift";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Budgets shared by the subcommands, defaulting to the owning modules'
/// constants.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// Largest expanded word, in symbols.
    pub max_word: usize,
    /// Simulator horizon; `None` means the per-system default.
    pub horizon: Option<usize>,
    /// Digit words scanned by the orbit enumeration.
    pub brute_bound: u64,
    /// Candidates visited by the simplification search.
    pub search_budget: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_word: DEFAULT_MAX_WORD,
            horizon: None,
            brute_bound: DEFAULT_ENUMERATION_BUDGET,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Budgets {
    pub fn horizon_for(&self, p: usize) -> usize {
        self.horizon.unwrap_or_else(|| default_horizon(p))
    }

    /// Refuses expansions of more than `max_word` symbols.
    pub fn check_word(&self, len: u128) -> Result<(), CliError> {
        if len > self.max_word as u128 {
            Err(Error::Budget {
                needed: len,
                cap: self.max_word,
            }
            .into())
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    fn current() -> Self {
        Tool {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RuleText {
    pub letter: String,
    pub image: String,
}

fn rules(s: &Substitution) -> Vec<RuleText> {
    render_rules(s)
        .into_iter()
        .map(|(letter, image)| RuleText { letter, image })
        .collect()
}

fn alphabet(s: &Substitution) -> Vec<String> {
    s.names().to_vec()
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub alphabet: Vec<String>,
    pub rules: Vec<RuleText>,
}

#[derive(Debug, Serialize)]
pub struct Validation {
    pub alphabet_size: usize,
    pub constant_length: Option<usize>,
    pub one_to_one: bool,
    pub primitive: bool,
}

fn validation(s: &Substitution) -> Validation {
    Validation {
        alphabet_size: s.len(),
        constant_length: s.constant_length(),
        one_to_one: s.is_one_to_one(),
        primitive: s.is_primitive(),
    }
}

#[derive(Debug, Serialize)]
pub struct ReductionSummary {
    pub alphabet: Vec<String>,
    pub rules: Vec<RuleText>,
    /// `[letter, representative]` for every original letter.
    pub letter_map: Vec<[String; 2]>,
    pub steps: usize,
}

fn reduction_summary(s: &Substitution, r: &ReductionResult) -> ReductionSummary {
    ReductionSummary {
        alphabet: alphabet(&r.reduced),
        rules: rules(&r.reduced),
        letter_map: s
            .letters()
            .map(|a| {
                [
                    s.name(a).to_string(),
                    r.reduced.name(r.letter_map[a as usize]).to_string(),
                ]
            })
            .collect(),
        steps: r.chain.len(),
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TraceStep {
    /// `τ = g∘f` through a smaller alphabet; the decision continues with
    /// `f∘g`.
    Simplified {
        from_size: usize,
        to_size: usize,
        f: Vec<RuleText>,
        g: Vec<RuleText>,
        next: Vec<RuleText>,
    },
    Elementary {
        size: usize,
        biprolongeable: Option<String>,
    },
    SingleLetter,
}

fn trace(s: &Substitution, steps: &[DecisionStep]) -> Vec<TraceStep> {
    let mut current = s.clone();
    let mut out = Vec::new();
    for step in steps {
        match step {
            DecisionStep::Simplified {
                from_size,
                simplification,
                next,
            } => {
                let f = current
                    .letters()
                    .map(|a| RuleText {
                        letter: current.render(&[a]),
                        image: next.render(&simplification.f[a as usize]),
                    })
                    .collect();
                let g = next
                    .letters()
                    .map(|b| RuleText {
                        letter: next.render(&[b]),
                        image: current.render(&simplification.g[b as usize]),
                    })
                    .collect();
                out.push(TraceStep::Simplified {
                    from_size: *from_size,
                    to_size: simplification.target_size,
                    f,
                    g,
                    next: rules(next),
                });
                current = next.clone();
            }
            DecisionStep::Elementary {
                size,
                biprolongeable,
            } => out.push(TraceStep::Elementary {
                size: *size,
                biprolongeable: biprolongeable.map(|a| current.name(a).to_string()),
            }),
            DecisionStep::SingleLetter => out.push(TraceStep::SingleLetter),
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct PairCoincidences {
    pub a: String,
    pub b: String,
    pub coincidences: Vec<usize>,
    pub differences: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct CoincidenceSummary {
    pub kind: CoincidenceKind,
    pub pairs: Vec<PairCoincidences>,
}

#[derive(Debug, Serialize)]
pub struct LyCertificateOut {
    pub m: usize,
    pub a: String,
    pub b: String,
    pub position: u128,
    pub u: String,
    pub v: String,
    pub u2: String,
    pub v2: String,
}

#[derive(Debug, Serialize)]
pub struct UncountableCertificateOut {
    pub m: usize,
    pub a: String,
    pub b: String,
    pub first: u128,
    pub second: u128,
}

#[derive(Debug, Serialize)]
pub struct EvidenceSummary {
    pub horizon: usize,
    pub window: usize,
    pub proximality_events: usize,
    pub separation_events: usize,
    pub last_separation: Option<usize>,
    pub min_distance: f64,
    pub max_distance: f64,
    /// The evidence does not contradict the exact class.
    pub consistent: bool,
}

impl EvidenceSummary {
    pub fn new(class: PairClass, r: &EvidenceReport) -> Self {
        EvidenceSummary {
            horizon: r.horizon,
            window: r.window,
            proximality_events: r.proximality_events.len(),
            separation_events: r.separation_events.len(),
            last_separation: r.max_last_difference,
            min_distance: r.min_distance,
            max_distance: r.max_distance,
            consistent: evidence_consistent(class, r),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictOut {
    pub class: PairClass,
    pub rule: Rule,
    pub strong: Option<bool>,
    pub evidence: EvidenceSummary,
}

#[derive(Debug, Serialize)]
pub struct PairOut {
    pub x: PointLiteral,
    pub y: PointLiteral,
    pub verdict: VerdictOut,
}

/// Exact verdict plus simulator evidence for one pair.
pub fn verdict_with_evidence(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    budgets: &Budgets,
    window: usize,
) -> Result<VerdictOut, CliError> {
    let verdict: PairVerdict = classify_pair(x, y)?;
    let horizon = budgets.horizon_for(x.system().p());
    budgets.check_word(2 * (horizon + window) as u128 + 1)?;
    let evidence = empirical_class(x, y, horizon, window)?;
    Ok(VerdictOut {
        class: verdict.class,
        rule: verdict.rule,
        strong: verdict.strong,
        evidence: EvidenceSummary::new(verdict.class, &evidence),
    })
}

/// The `analyze` report. Fields that need an infinite subshift are absent
/// when it is finite; the Li–Yorke fields refer to the one-to-one reduction,
/// which is conjugate to the input.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub tool: Tool,
    pub input: InputEcho,
    pub validation: Validation,
    pub primitive: bool,
    pub constant_length: usize,
    pub x_tau_infinite: bool,
    pub is_elementary: bool,
    pub decision_trace: Vec<TraceStep>,
    pub one_to_one_reduction: ReductionSummary,
    pub coincidence_class: CoincidenceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_li_yorke: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub li_yorke_certificate: Option<LyCertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncountable_li_yorke: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncountable_certificate: Option<UncountableCertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_li_yorke: Option<bool>,
    /// Present when Li–Yorke pairs exist and are countably many.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_representatives: Option<Vec<PairOut>>,
}

/// Checks the analysis preconditions: primitive and of constant length
/// `p ≥ 2`.
fn require_analyzable(s: &Substitution) -> Result<usize, CliError> {
    let p = s.require_constant()?;
    if p < 2 {
        return Err(Error::LengthTooShort(p).into());
    }
    if !s.is_primitive() {
        return Err(Error::NotPrimitive.into());
    }
    Ok(p)
}

pub fn analyze(
    source: &str,
    s: &Substitution,
    budgets: &Budgets,
    period_bound: Option<usize>,
) -> Result<AnalysisReport, CliError> {
    let p = require_analyzable(s)?;
    let decision = decide_infinite_with_budget(s, budgets.search_budget)?;
    let is_elementary = is_simplifiable_with_budget(s, budgets.search_budget)?.is_none();
    let reduction = one_to_one_reduction(s);
    let reduced = &reduction.reduced;
    let coincidences = coincidence_class(reduced)?;
    let mut report = AnalysisReport {
        tool: Tool::current(),
        input: InputEcho {
            source: source.to_string(),
            alphabet: alphabet(s),
            rules: rules(s),
        },
        validation: validation(s),
        primitive: true,
        constant_length: p,
        x_tau_infinite: decision.infinite,
        is_elementary,
        decision_trace: trace(s, &decision.trace),
        one_to_one_reduction: reduction_summary(s, &reduction),
        coincidence_class: CoincidenceSummary {
            kind: coincidences.kind,
            pairs: coincidences
                .table
                .iter()
                .map(|w| PairCoincidences {
                    a: reduced.name(w.a).to_string(),
                    b: reduced.name(w.b).to_string(),
                    coincidences: w.coincidences.clone(),
                    differences: w.differences.clone(),
                })
                .collect(),
        },
        fiber_bound: None,
        has_li_yorke: None,
        li_yorke_certificate: None,
        uncountable_li_yorke: None,
        uncountable_certificate: None,
        strong_li_yorke: None,
        orbit_representatives: None,
    };
    if !decision.infinite {
        return Ok(report);
    }
    let system = System::new(reduced.clone())?;
    report.fiber_bound = Some(system.fiber_bound());
    let ly = has_ly_pairs(&system)?;
    let uncountable = has_uncountable_ly(&system)?;
    report.has_li_yorke = Some(ly);
    report.uncountable_li_yorke = Some(uncountable);
    report.strong_li_yorke = Some(has_strong_ly(&system)?);
    if let Some(c) = ly_certificate(&system)? {
        budgets.check_word((p as u128).saturating_pow(c.m as u32))?;
        report.li_yorke_certificate = Some(LyCertificateOut {
            m: c.m,
            a: reduced.name(c.a).to_string(),
            b: reduced.name(c.b).to_string(),
            position: c.position,
            u: reduced.render(&c.u),
            v: reduced.render(&c.v),
            u2: reduced.render(&c.u2),
            v2: reduced.render(&c.v2),
        });
    }
    if let Some(c) = uncountable_certificate(&system)? {
        report.uncountable_certificate = Some(UncountableCertificateOut {
            m: c.m,
            a: reduced.name(c.a).to_string(),
            b: reduced.name(c.b).to_string(),
            first: c.first,
            second: c.second,
        });
    }
    if ly && !uncountable {
        report.orbit_representatives = Some(orbit_representatives(&system, budgets, period_bound)?);
    }
    Ok(report)
}

fn orbit_representatives(
    system: &Arc<System>,
    budgets: &Budgets,
    period_bound: Option<usize>,
) -> Result<Vec<PairOut>, CliError> {
    enumerate_ly_orbits(system, period_bound, budgets.brute_bound)?
        .iter()
        .map(|(x, y)| {
            Ok(PairOut {
                x: PointLiteral::of_point(x),
                y: PointLiteral::of_point(y),
                verdict: verdict_with_evidence(x, y, budgets, DEFAULT_WINDOW)?,
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub tool: Tool,
    pub input: InputEcho,
    pub one_to_one: bool,
    pub one_to_one_reduction: ReductionSummary,
}

pub fn reduce(source: &str, s: &Substitution) -> ReduceReport {
    let reduction = one_to_one_reduction(s);
    ReduceReport {
        tool: Tool::current(),
        input: InputEcho {
            source: source.to_string(),
            alphabet: alphabet(s),
            rules: rules(s),
        },
        one_to_one: s.is_one_to_one(),
        one_to_one_reduction: reduction_summary(s, &reduction),
    }
}

#[derive(Debug, Serialize)]
pub struct DecideReport {
    pub tool: Tool,
    pub input: InputEcho,
    pub validation: Validation,
    pub x_tau_infinite: bool,
    pub is_elementary: bool,
    pub decision_trace: Vec<TraceStep>,
}

pub fn decide(source: &str, s: &Substitution, budgets: &Budgets) -> Result<DecideReport, CliError> {
    if !s.is_primitive() {
        return Err(Error::NotPrimitive.into());
    }
    let decision = decide_infinite_with_budget(s, budgets.search_budget)?;
    Ok(DecideReport {
        tool: Tool::current(),
        input: InputEcho {
            source: source.to_string(),
            alphabet: alphabet(s),
            rules: rules(s),
        },
        validation: validation(s),
        x_tau_infinite: decision.infinite,
        is_elementary: is_simplifiable_with_budget(s, budgets.search_budget)?.is_none(),
        decision_trace: trace(s, &decision.trace),
    })
}

/// The system of an input for point-level commands: primitive, constant
/// length, infinite subshift, one-to-one.
pub fn point_system(s: &Substitution) -> Result<Arc<System>, CliError> {
    require_analyzable(s)?;
    if !s.is_one_to_one() {
        return Err(Error::NotOneToOne.into());
    }
    Ok(System::new(s.clone())?)
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub tool: Tool,
    pub x: PointLiteral,
    pub y: PointLiteral,
    pub verdict: VerdictOut,
}

pub fn classify(
    x: &RepresentedPoint,
    y: &RepresentedPoint,
    budgets: &Budgets,
    window: usize,
) -> Result<ClassifyReport, CliError> {
    Ok(ClassifyReport {
        tool: Tool::current(),
        x: PointLiteral::of_point(x),
        y: PointLiteral::of_point(y),
        verdict: verdict_with_evidence(x, y, budgets, window)?,
    })
}

/// Plain-text rendering of an analysis report: one `key: value` per line.
pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<24} {v}\n"));
    line("source", r.input.source.clone());
    line("alphabet", r.input.alphabet.join(" "));
    for rule in &r.input.rules {
        line("rule", format!("{} -> {}", rule.letter, rule.image));
    }
    line("primitive", r.primitive.to_string());
    line("constant length", r.constant_length.to_string());
    line("one-to-one", r.validation.one_to_one.to_string());
    line("elementary", r.is_elementary.to_string());
    line("infinite subshift", r.x_tau_infinite.to_string());
    line(
        "reduction",
        r.one_to_one_reduction
            .rules
            .iter()
            .map(|x| format!("{} -> {}", x.letter, x.image))
            .collect::<Vec<_>>()
            .join(", "),
    );
    line("coincidences", format!("{:?}", r.coincidence_class.kind));
    if let Some(k) = r.fiber_bound {
        line("fiber bound", k.to_string());
    }
    if let Some(b) = r.has_li_yorke {
        line("li-yorke pairs", b.to_string());
    }
    if let Some(c) = &r.li_yorke_certificate {
        line(
            "li-yorke certificate",
            format!("m={} ({},{}) at {}", c.m, c.a, c.b, c.position),
        );
    }
    if let Some(b) = r.uncountable_li_yorke {
        line("uncountable li-yorke", b.to_string());
    }
    if let Some(b) = r.strong_li_yorke {
        line("strong li-yorke", b.to_string());
    }
    if let Some(list) = &r.orbit_representatives {
        line("orbit representatives", list.len().to_string());
    }
    out
}
