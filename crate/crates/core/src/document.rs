//! Line-oriented scenario files.
//!
//! ```text
//! # comment
//! actor TLA A at 0 state e
//! actor MIRROR R at -2 state g
//! actor TLA B at -1 state g path +
//! emit from A at 0 dir -
//! horizon 6
//! ```
//!
//! The optional `path <+|->` suffix restricts an actor to photons travelling in
//! that direction.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kinematics::parse_real;
use crate::scenario::{ActorSpec, Coupling, EmissionSpec, Scenario, ScenarioError};
use crate::worldline::{ActorKind, Direction, StateLabel};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> DocumentError {
        DocumentError::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn get(&self, index: usize, what: &str) -> Result<&Token<'a>, DocumentError> {
        self.tokens
            .get(index)
            .ok_or_else(|| self.error(self.end_column, format!("expected {what}")))
    }

    fn keyword(&self, index: usize, keyword: &str) -> Result<(), DocumentError> {
        let tok = self.get(index, &format!("`{keyword}`"))?;
        if tok.text == keyword {
            Ok(())
        } else {
            Err(self.error(tok.column, format!("expected `{keyword}`, found `{}`", tok.text)))
        }
    }

    fn number(&self, index: usize) -> Result<f64, DocumentError> {
        let tok = self.get(index, "a number")?;
        parse_real(tok.text)
            .map_err(|_| self.error(tok.column, format!("`{}` is not a number", tok.text)))
    }

    fn direction(&self, index: usize) -> Result<Direction, DocumentError> {
        let tok = self.get(index, "a direction `+` or `-`")?;
        match tok.text {
            "+" => Ok(Direction::Plus),
            "-" => Ok(Direction::Minus),
            other => Err(self.error(tok.column, format!("expected `+` or `-`, found `{other}`"))),
        }
    }

    fn finish(&self, index: usize) -> Result<(), DocumentError> {
        match self.tokens.get(index) {
            None => Ok(()),
            Some(tok) => Err(self.error(tok.column, format!("unexpected `{}`", tok.text))),
        }
    }
}

fn tokenize(number: usize, raw: &str) -> Line<'_> {
    let content = raw.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut offset = 0;
    for piece in content.split_whitespace() {
        let at = content[offset..].find(piece).unwrap() + offset;
        tokens.push(Token {
            text: piece,
            column: content[..at].chars().count() + 1,
        });
        offset = at + piece.len();
    }
    Line {
        number,
        tokens,
        end_column: content.trim_end().chars().count() + 1,
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, DocumentError> {
    let mut actors: Vec<ActorSpec> = Vec::new();
    let mut emissions = Vec::new();
    let mut horizon: Option<f64> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = tokenize(i + 1, raw);
        let Some(head) = line.tokens.first() else {
            continue;
        };
        match head.text {
            "actor" => {
                let kind_tok = line.get(1, "`TLA` or `MIRROR`")?;
                let kind = match kind_tok.text {
                    "TLA" => ActorKind::Tla,
                    "MIRROR" => ActorKind::Mirror,
                    other => {
                        return Err(line.error(
                            kind_tok.column,
                            format!("expected `TLA` or `MIRROR`, found `{other}`"),
                        ))
                    }
                };
                let id = line.get(2, "an actor id")?.text.to_string();
                line.keyword(3, "at")?;
                let position = line.number(4)?;
                line.keyword(5, "state")?;
                let state_tok = line.get(6, "`g` or `e`")?;
                let initial = match state_tok.text {
                    "g" => StateLabel::G,
                    "e" => StateLabel::E,
                    other => {
                        return Err(line.error(
                            state_tok.column,
                            format!("expected `g` or `e`, found `{other}`"),
                        ))
                    }
                };
                let coupling = if line.tokens.len() > 7 {
                    line.keyword(7, "path")?;
                    let d = line.direction(8)?;
                    line.finish(9)?;
                    Coupling::Only(d)
                } else {
                    Coupling::Both
                };
                if actors.iter().any(|a| a.id == id) {
                    return Err(DocumentError::Semantic(format!("duplicate actor id `{id}`")));
                }
                actors.push(ActorSpec {
                    id,
                    kind,
                    position,
                    initial,
                    coupling,
                });
            }
            "emit" => {
                line.keyword(1, "from")?;
                let id = line.get(2, "an actor id")?.text.to_string();
                line.keyword(3, "at")?;
                let time = line.number(4)?;
                line.keyword(5, "dir")?;
                let direction = line.direction(6)?;
                line.finish(7)?;
                emissions.push(EmissionSpec {
                    actor_id: id,
                    time,
                    direction,
                });
            }
            "horizon" => {
                let value = line.number(1)?;
                line.finish(2)?;
                if horizon.replace(value).is_some() {
                    return Err(DocumentError::Semantic("horizon given more than once".into()));
                }
            }
            other => {
                return Err(line.error(head.column, format!("unknown statement `{other}`")));
            }
        }
    }

    let horizon = horizon.ok_or_else(|| DocumentError::Semantic("missing horizon".into()))?;
    for e in &emissions {
        match actors.iter().find(|a| a.id == e.actor_id) {
            None => {
                return Err(DocumentError::Semantic(format!(
                    "emission from undeclared actor `{}`",
                    e.actor_id
                )))
            }
            Some(a) if a.kind == ActorKind::Tla && a.initial != StateLabel::E => {
                return Err(DocumentError::Semantic(format!(
                    "emitter `{}` is not excited (state g)",
                    e.actor_id
                )))
            }
            Some(_) => {}
        }
    }
    Scenario::new(actors, emissions, horizon).map_err(|err| match err {
        ScenarioError::InvalidScenario(msg) => DocumentError::Semantic(msg),
        other => DocumentError::Semantic(other.to_string()),
    })
}

/// Shortest round-tripping decimal, with `-0` printed as `0`.
fn number(value: f64) -> String {
    if value == 0.0 {
        "0".into()
    } else {
        value.to_string()
    }
}

/// Canonical text of a scenario: actors, emissions, horizon, one per line.
pub fn serialize_scenario(scenario: &Scenario) -> String {
    let mut out = String::new();
    for a in scenario.actors() {
        let _ = write!(
            out,
            "actor {} {} at {} state {}",
            a.kind.as_str(),
            a.id,
            number(a.position),
            a.initial
        );
        if let Coupling::Only(d) = a.coupling {
            let _ = write!(out, " path {d}");
        }
        out.push('\n');
    }
    for e in scenario.emissions() {
        let _ = writeln!(
            out,
            "emit from {} at {} dir {}",
            e.actor_id,
            number(e.time),
            e.direction
        );
    }
    let _ = writeln!(out, "horizon {}", number(scenario.horizon()));
    out
}
