use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use valgroups::json::SCHEMA_VERSION;
use valgroups::laws::{self, Law, LawReport, ALL_LAWS};
use valgroups::nilpotent::{solve_nilpotent, FreeNilAlgebra, NilElement};
use valgroups::series::{fmt_coefficient, parse_coefficient};
use valgroups::solver::{solve_parabolic, SolveTrace};
use valgroups::terms::{eval, parse_term, SymbolTable, Term};
use valgroups::{
    parse_series, Coefficient, DerivationElement, Error, Parabolic, TruncatedSeries, ValuedElement,
};

use crate::args::{NilOp, Op, DEFAULT_ORDER};
use crate::error::CliError;

/// A value bound with `let`.
#[derive(Clone, Debug)]
pub enum Binding {
    Series(TruncatedSeries),
    Coords(Vec<Coefficient>),
}

/// Evaluation state shared by the statements of a script.
#[derive(Debug)]
pub struct Session {
    order: u32,
    order_set: bool,
    pub seed: u64,
    pub json: bool,
    gens: usize,
    class: usize,
    bindings: BTreeMap<String, Binding>,
}

const RESERVED: [&str; 4] = ["t", "y", "inv", "O"];

impl Session {
    pub fn new(order: Option<u32>, seed: u64, json: bool) -> Self {
        Session {
            order: order.unwrap_or(DEFAULT_ORDER),
            order_set: order.is_some(),
            seed,
            json,
            gens: 2,
            class: 2,
            bindings: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let parse = |what: &str| -> Result<u64, CliError> {
            value
                .parse()
                .map_err(|_| CliError::user(format!("`set {key}` expects a {what}, got `{value}`")))
        };
        match key {
            "order" => {
                if !self.bindings.is_empty() {
                    return Err(CliError::user(
                        "the order is fixed once an identifier has been bound",
                    ));
                }
                let n = parse("positive integer")?;
                if n == 0 || n > u32::MAX as u64 {
                    return Err(CliError::user("order must be positive"));
                }
                self.order = n as u32;
                self.order_set = true;
            }
            "seed" => self.seed = parse("non-negative integer")?,
            "gens" => self.gens = parse("positive integer")? as usize,
            "class" => self.class = parse("positive integer")? as usize,
            _ => {
                return Err(CliError::user(format!(
                    "unknown setting `{key}` (expected order, seed, gens or class)"
                )))
            }
        }
        Ok(())
    }

    /// Binds `name` to a series literal or to `[c1, c2, ...]` coordinates.
    pub fn bind(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        check_identifier(name)?;
        if self.bindings.contains_key(name) {
            return Err(
                Error::from(valgroups::error::EvalError::AlreadyBound(name.to_string())).into(),
            );
        }
        let value = self.parse_binding(text)?;
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    fn parse_binding(&self, text: &str) -> Result<Binding, CliError> {
        let text = text.trim();
        if text.starts_with('[') {
            return Ok(Binding::Coords(parse_coords(text)?));
        }
        if let Some(b) = self.bindings.get(text) {
            return Ok(b.clone());
        }
        Ok(Binding::Series(self.series(text)?))
    }

    pub fn execute(&self, op: &Op, out: &mut dyn Write) -> Result<(), CliError> {
        let (text, value) = self.run(op)?;
        let result = if self.json {
            let mut doc = Map::new();
            doc.insert("schema".into(), json!(SCHEMA_VERSION));
            doc.insert("command".into(), json!(op.name()));
            if let Value::Object(fields) = value {
                doc.extend(fields);
            }
            writeln!(out, "{}", Value::Object(doc))
        } else {
            writeln!(out, "{text}")
        };
        result.map_err(|e| CliError::user(format!("cannot write output: {e}")))
    }

    /// Text output and the JSON fields of one command.
    fn run(&self, op: &Op) -> Result<(String, Value), CliError> {
        match op {
            Op::Eval { term, at, bind } => {
                let term = parse_term(&term.join(" ")).map_err(Error::from)?;
                let tab = self.parabolic_table(&term, bind)?;
                let f = self.parabolic(at)?;
                let v = eval(&term, &f, &tab).map_err(Error::from)?;
                Ok(parabolic_out(&v))
            }
            Op::Solve { term, bind } => {
                let term = parse_term(&term.join(" ")).map_err(Error::from)?;
                let tab = self.parabolic_table(&term, bind)?;
                let trace = solve_parabolic(&term, &tab, self.order).map_err(Error::from)?;
                Ok(solve_out(
                    &trace,
                    trace.solution.to_string(),
                    trace.solution.to_json(),
                ))
            }
            Op::Compose { f, g } => {
                let (f, g) = (self.parabolic(f)?, self.parabolic(g)?);
                Ok(parabolic_out(&f.compose(&g)))
            }
            Op::Invert { f } => Ok(parabolic_out(&self.parabolic(&f.join(" "))?.inverse())),
            Op::Flow { f, mu } => {
                let f = self.parabolic(f)?;
                Ok(parabolic_out(&f.flow(&coefficient(mu)?)))
            }
            Op::Root { f, n } => {
                let f = self.parabolic(f)?;
                Ok(parabolic_out(&f.nth_root(*n).map_err(Error::from)?))
            }
            Op::Log { f } => {
                let f = self.parabolic(&f.join(" "))?;
                Ok(derivation_out(&DerivationElement::log(&f)))
            }
            Op::Exp { u } => Ok(parabolic_out(&self.derivation(&u.join(" "))?.exp())),
            Op::Bch { u, w } => {
                let (u, w) = (self.derivation(u)?, self.derivation(w)?);
                Ok(derivation_out(&u.bch(&w)))
            }
            Op::Decompose { f } => {
                let f = self.parabolic(&f.join(" "))?;
                let factors = f.decompose();
                let text = if factors.is_empty() {
                    "identity".to_string()
                } else {
                    factors
                        .iter()
                        .map(|(rho, mu)| format!("(t + t^{rho})^{}", paren(mu)))
                        .collect::<Vec<_>>()
                        .join(" o ")
                };
                let json = json!({
                    "factors": factors
                        .iter()
                        .map(|(rho, mu)| json!([rho, fmt_coefficient(mu)]))
                        .collect::<Vec<_>>(),
                    "order": f.order(),
                });
                Ok((text, json))
            }
            Op::Laws {
                model,
                law,
                samples,
            } => self.laws(model, law.as_deref(), *samples),
            Op::Nil { gens, class, op } => {
                let alg =
                    FreeNilAlgebra::new(gens.unwrap_or(self.gens), class.unwrap_or(self.class))
                        .map_err(Error::from)?;
                self.nil(&alg, op)
            }
        }
    }

    fn laws(
        &self,
        model: &str,
        law: Option<&str>,
        samples: usize,
    ) -> Result<(String, Value), CliError> {
        let order = self.order_set.then_some(self.order);
        if model == "list" {
            let models = laws::builtin_models_at(order);
            let text = models
                .iter()
                .map(|m| format!("{:<18} {}", m.name(), m.description()))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "models": models
                    .iter()
                    .map(|m| json!({"name": m.name(), "description": m.description()}))
                    .collect::<Vec<_>>()
            });
            return Ok((text, json));
        }
        let runner = laws::model_at_order(model, order).ok_or_else(|| {
            Error::from(valgroups::error::LawError::UnknownModel(model.to_string()))
        })?;
        if let Some(id) = law {
            let law: Law = id.parse().map_err(Error::from)?;
            let report = runner.check(law, samples, self.seed).map_err(Error::from)?;
            return Ok((report.summary(), json!({ "reports": [report.to_json()] })));
        }
        let reports: Vec<(Law, Option<LawReport>)> = ALL_LAWS
            .iter()
            .map(|l| (*l, runner.check(*l, samples, self.seed).ok()))
            .collect();
        let mut lines = Vec::new();
        let mut counts = BTreeMap::new();
        for (law, report) in &reports {
            let verdict = match report {
                Some(r) => {
                    lines.push(r.summary());
                    r.verdict.name()
                }
                None => {
                    lines.push(format!("{} {} n/a", runner.name(), law.id()));
                    "n/a"
                }
            };
            *counts.entry(verdict).or_insert(0usize) += 1;
        }
        let tally = counts
            .iter()
            .map(|(k, v)| format!("{v} {k}"))
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!("{}: {tally}", runner.name()));
        let json = json!({
            "model": runner.name(),
            "samples": samples,
            "seed": self.seed,
            "reports": reports
                .iter()
                .map(|(law, r)| match r {
                    Some(r) => r.to_json(),
                    None => json!({"law": law.id(), "model": runner.name(), "verdict": "n/a"}),
                })
                .collect::<Vec<_>>(),
        });
        Ok((lines.join("\n"), json))
    }

    fn nil(&self, alg: &Arc<FreeNilAlgebra>, op: &NilOp) -> Result<(String, Value), CliError> {
        let el = |text: &str| self.nil_element(alg, text);
        let out = |e: NilElement| (e.to_string(), json!({ "result": e.to_json() }));
        Ok(match op {
            NilOp::Basis => {
                let text = (0..alg.dimension())
                    .map(|i| format!("{} {}", alg.name(i), alg.weight(i)))
                    .collect::<Vec<_>>()
                    .join("\n");
                let weights: Vec<usize> = (0..alg.dimension()).map(|i| alg.weight(i)).collect();
                (text, json!({ "basis": alg.names(), "weights": weights }))
            }
            NilOp::Mul { a, b } => out(el(a)?.mul(&el(b)?).map_err(Error::from)?),
            NilOp::Pow { a, q } => out(el(a)?.scale(&coefficient(q)?)),
            NilOp::Bracket { a, b } => out(el(a)?.lie_bracket(&el(b)?).map_err(Error::from)?),
            NilOp::Val { a } => match el(a)?.lc_val() {
                Some(w) => (w.to_string(), json!({ "val": w })),
                None => ("identity".to_string(), json!({ "val": null })),
            },
            NilOp::Res { a } => out(el(a)?.res().map_err(Error::from)?),
            NilOp::Solve { term, bind } => {
                let term = parse_term(&term.join(" ")).map_err(Error::from)?;
                let mut tab = SymbolTable::new();
                let local = local_bindings(bind)?;
                for name in term.constants() {
                    let text = match local.get(name) {
                        Some(t) => t.as_str(),
                        None => name,
                    };
                    tab.bind(name, el(text)?).map_err(Error::from)?;
                }
                let trace = solve_nilpotent(&term, &tab, alg).map_err(Error::from)?;
                solve_out(&trace, trace.solution.to_string(), trace.solution.to_json())
            }
        })
    }

    fn nil_element(&self, alg: &Arc<FreeNilAlgebra>, text: &str) -> Result<NilElement, CliError> {
        let text = text.trim();
        let coords = match self.bindings.get(text) {
            Some(Binding::Coords(c)) => c.clone(),
            Some(Binding::Series(_)) => {
                return Err(CliError::user(format!(
                    "`{text}` is bound to a series, not coordinates"
                )))
            }
            None if is_identifier(text) => return Err(unbound(text)),
            None => parse_coords(text)?,
        };
        Ok(NilElement::from_coords(alg, &coords).map_err(Error::from)?)
    }

    /// A series literal or a bound identifier, at the session order.
    fn series(&self, text: &str) -> Result<TruncatedSeries, CliError> {
        let text = text.trim();
        match self.bindings.get(text) {
            Some(Binding::Series(s)) => Ok(s.clone()),
            Some(Binding::Coords(_)) => Err(CliError::user(format!(
                "`{text}` is bound to coordinates, not a series"
            ))),
            None if is_identifier(text) && !RESERVED.contains(&text) => Err(unbound(text)),
            None => Ok(parse_series(text, self.order).map_err(Error::from)?),
        }
    }

    fn parabolic(&self, text: &str) -> Result<Parabolic, CliError> {
        Ok(Parabolic::new(self.series(text)?).map_err(Error::from)?)
    }

    /// Derivations are read two orders lower so that `exp` lands at the
    /// session order.
    fn derivation(&self, text: &str) -> Result<DerivationElement, CliError> {
        if self.order < 3 {
            return Err(CliError::user("derivations need order at least 3"));
        }
        Ok(DerivationElement::new(
            self.series(text)?.truncate(self.order - 2),
        ))
    }

    fn parabolic_table(
        &self,
        term: &Term,
        bind: &[String],
    ) -> Result<SymbolTable<Parabolic>, CliError> {
        let local = local_bindings(bind)?;
        let mut tab = SymbolTable::new();
        for name in term.constants() {
            let f = match local.get(name) {
                Some(text) => self.parabolic(text)?,
                None => self.parabolic(name)?,
            };
            tab.bind(name, f).map_err(Error::from)?;
        }
        Ok(tab)
    }
}

fn parabolic_out(f: &Parabolic) -> (String, Value) {
    (
        f.to_string(),
        json!({
            "result": f.to_json(),
            "text": f.to_string(),
            "val": f.val().to_string(),
            "res": f.res().to_string(),
        }),
    )
}

fn derivation_out(u: &DerivationElement) -> (String, Value) {
    (
        u.to_string(),
        json!({ "result": u.to_json(), "text": u.to_string() }),
    )
}

fn solve_out<G: ValuedElement>(
    trace: &SolveTrace<G>,
    text: String,
    result: Value,
) -> (String, Value) {
    let json = json!({
        "result": result,
        "text": text,
        "iterations": trace.iterations,
        "trace": trace.trace_json(),
    });
    (text, json)
}

fn paren(c: &Coefficient) -> String {
    let s = fmt_coefficient(c);
    if c.is_integer() && !s.starts_with('-') {
        s
    } else {
        format!("({s})")
    }
}

fn coefficient(text: &str) -> Result<Coefficient, CliError> {
    parse_coefficient(text)
        .ok_or_else(|| CliError::user(format!("expected a rational number, got `{text}`")))
}

/// `[1, 0, 1/2]`, with or without the brackets.
fn parse_coords(text: &str) -> Result<Vec<Coefficient>, CliError> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(inner)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|c| coefficient(c.trim())).collect()
}

/// `--bind name=value` pairs.
fn local_bindings(bind: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for b in bind {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| CliError::user(format!("--bind expects NAME=VALUE, got `{b}`")))?;
        let name = name.trim();
        check_identifier(name)?;
        if out
            .insert(name.to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(
                Error::from(valgroups::error::EvalError::AlreadyBound(name.to_string())).into(),
            );
        }
    }
    Ok(out)
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_identifier(name: &str) -> Result<(), CliError> {
    if !is_identifier(name) {
        return Err(CliError::user(format!(
            "`{name}` is not a valid identifier"
        )));
    }
    if RESERVED.contains(&name) {
        return Err(Error::from(valgroups::error::EvalError::Reserved(name.to_string())).into());
    }
    Ok(())
}

fn unbound(name: &str) -> CliError {
    CliError::user(format!("unbound identifier `{name}`"))
}
