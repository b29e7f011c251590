//! Job files: a ring declaration, named bindings and commands, executed in
//! order. A command without arguments applies to every binding of the
//! current ring in definition order.

use std::collections::HashMap;
use std::io::Write;

use serde_json::json;

use germkit::coeff::Field;
use germkit::parse::{parse_job, AnyRing, RingDeclaration, StatementKind};
use germkit::ring::{Polynomial, Ring};
use germkit::Error;

use crate::commands::{compute, Command};
use crate::config::JobConfig;
use crate::{emit, meta, Failure};

struct Session<F: Field> {
    ring: Ring<F>,
    order: Vec<String>,
    values: HashMap<String, Polynomial<F>>,
}

impl<F: Field> Session<F> {
    fn new(ring: Ring<F>) -> Self {
        Session {
            ring,
            order: Vec::new(),
            values: HashMap::new(),
        }
    }

    fn bind(&mut self, name: &str, expr: &germkit::parse::Expr) -> germkit::Result<()> {
        let v = expr.eval(&self.ring, &self.values)?;
        if self.values.insert(name.to_string(), v).is_none() {
            self.order.push(name.to_string());
        }
        Ok(())
    }

    fn operands(&self, args: &[String], line: usize, source: &str) -> germkit::Result<Vec<Polynomial<F>>> {
        if args.is_empty() {
            return Ok(self.order.iter().map(|n| self.values[n].clone()).collect());
        }
        args.iter()
            .map(|a| {
                self.values.get(a).cloned().ok_or_else(|| Error::UnknownVariable {
                    name: a.clone(),
                    line,
                    column: arg_column(source, a),
                })
            })
            .collect()
    }
}

/// 1-based column of `name` inside the argument list of `line`.
fn arg_column(line: &str, name: &str) -> usize {
    let open = line.find('(').unwrap_or(0);
    let mut from = open;
    while let Some(pos) = line[from..].find(name) {
        let at = from + pos;
        let before = line[..at].chars().last();
        let after = line[at + name.len()..].chars().next();
        let ident = |c: Option<char>| c.is_some_and(|c| c.is_alphanumeric() || c == '_');
        if !ident(before) && !ident(after) {
            return line[..at].chars().count() + 1;
        }
        from = at + name.len();
    }
    1
}

enum AnySession {
    Rational(Session<germkit::coeff::Rationals>),
    Prime(Session<germkit::coeff::PrimeField>),
}

pub fn run_jobfile(path: &str, cfg: &JobConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    run_job_text(&text, cfg, out)
}

pub fn run_job_text(text: &str, cfg: &JobConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let statements = parse_job(text).map_err(|error| match &error {
        Error::Syntax { line, .. } | Error::UnknownVariable { line, .. } => Failure::Job { line: *line, error },
        _ => Failure::Compute(error),
    })?;
    let lines: Vec<&str> = text.lines().collect();
    let mut session: Option<(AnySession, RingDeclaration)> = None;
    for st in statements {
        let line = st.line;
        let at = |error: Error| Failure::Job { line, error };
        match &st.kind {
            StatementKind::Ring(decl) => {
                let (decl, _) = cfg.resolve_ring(decl, 0)?;
                let ring = decl.build_any().map_err(at)?;
                let s = match ring {
                    AnyRing::Rational(r) => AnySession::Rational(Session::new(r)),
                    AnyRing::Prime(r) => AnySession::Prime(Session::new(r)),
                };
                session = Some((s, decl));
            }
            StatementKind::Bind { name, expr } => {
                let (s, _) = session.as_mut().ok_or_else(|| at(no_ring()))?;
                match s {
                    AnySession::Rational(s) => s.bind(name, expr),
                    AnySession::Prime(s) => s.bind(name, expr),
                }
                .map_err(at)?;
            }
            StatementKind::Command { name, args } => {
                let cmd = Command::from_name(name)
                    .ok_or_else(|| at(Error::ParameterOutOfRange(format!("unknown command `{name}`"))))?;
                let (s, decl) = session.as_ref().ok_or_else(|| at(no_ring()))?;
                let source = lines.get(line - 1).copied().unwrap_or("");
                let outcome = match s {
                    AnySession::Rational(s) => s.operands(args, line, source).and_then(|p| compute(cmd, &p, cfg)),
                    AnySession::Prime(s) => s.operands(args, line, source).and_then(|p| compute(cmd, &p, cfg)),
                }
                .map_err(at)?;
                let mut m = meta(decl, cfg, false);
                m.insert("line".into(), json!(line));
                m.insert("command".into(), json!(name));
                emit(&outcome, &m, cfg.format, out)?;
            }
        }
    }
    Ok(())
}

fn no_ring() -> Error {
    Error::InvalidRing("no ring declared before this statement".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_columns() {
        assert_eq!(arg_column("milnor(f, g)", "g"), 11);
        assert_eq!(arg_column("milnor(ff, f)", "f"), 12);
        assert_eq!(arg_column("std", "h"), 1);
    }
}
