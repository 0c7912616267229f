//! Point literals.
//!
//! `{"kind":"fixed_point","left":"1","right":"0"}` is the two-sided limit
//! with `x_{-1} = left`, `x_0 = right`. A stream lists desubstitution
//! entries as `[prefix, center, suffix]` triples:
//! `{"kind":"stream","preperiod":[...],"period":[...],"left_seed":null,"right_seed":null}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use subshift_core::{Letter, RepresentedPoint, StreamEntry, Substitution, System};

use crate::error::CliError;
use crate::format::parse_word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointLiteral {
    FixedPoint {
        left: String,
        right: String,
    },
    Stream {
        preperiod: Vec<[String; 3]>,
        period: Vec<[String; 3]>,
        left_seed: Option<String>,
        right_seed: Option<String>,
    },
}

fn letter(s: &Substitution, text: &str) -> Result<Letter, CliError> {
    match parse_word(s, text)?.as_slice() {
        [a] => Ok(*a),
        _ => Err(CliError::Parse {
            message: format!("`{text}` is not a single letter"),
            line: None,
            column: None,
        }),
    }
}

fn entry(
    s: &Substitution,
    [prefix, center, suffix]: &[String; 3],
) -> Result<StreamEntry, CliError> {
    Ok(StreamEntry {
        prefix: parse_word(s, prefix)?,
        center: letter(s, center)?,
        suffix: parse_word(s, suffix)?,
    })
}

impl PointLiteral {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            message: format!("point literal: {e}"),
            line: Some(e.line()),
            column: Some(e.column()),
        })
    }

    pub fn to_point(&self, system: &Arc<System>) -> Result<RepresentedPoint, CliError> {
        let s = system.substitution();
        match self {
            PointLiteral::FixedPoint { left, right } => Ok(RepresentedPoint::fixed_point(
                system,
                letter(s, left)?,
                letter(s, right)?,
            )?),
            PointLiteral::Stream {
                preperiod,
                period,
                left_seed,
                right_seed,
            } => {
                let entries = |list: &[[String; 3]]| {
                    list.iter()
                        .map(|t| entry(s, t))
                        .collect::<Result<Vec<_>, _>>()
                };
                let seed = |l: &Option<String>| l.as_deref().map(|t| letter(s, t)).transpose();
                Ok(RepresentedPoint::from_entries(
                    system,
                    entries(preperiod)?,
                    entries(period)?,
                    seed(left_seed)?,
                    seed(right_seed)?,
                )?)
            }
        }
    }

    /// The canonical stream literal of a point.
    pub fn of_point(x: &RepresentedPoint) -> Self {
        let s = x.system().substitution();
        let stream = x.stream();
        let triple = |e: &StreamEntry| {
            [
                s.render(&e.prefix),
                s.render(&[e.center]),
                s.render(&e.suffix),
            ]
        };
        PointLiteral::Stream {
            preperiod: stream.preperiod.iter().map(triple).collect(),
            period: stream.period.iter().map(triple).collect(),
            left_seed: stream.left_seed.map(|c| s.render(&[c])),
            right_seed: stream.right_seed.map(|d| s.render(&[d])),
        }
    }
}

/// A literal given inline or as `@path`.
pub fn read_literal(arg: &str) -> Result<PointLiteral, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_string(),
                source,
            })?;
            PointLiteral::parse(&text)
        }
        None => PointLiteral::parse(arg),
    }
}
