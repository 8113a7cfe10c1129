//! The `check` report: the model/labelling table plus suite verdicts.

use std::io::IsTerminal;

use serde_json::{json, Value};
use setaflp_core::mappings::{check_equivalence, EquivalenceReport, ProgramMapping};
use setaflp_core::{Error, Limits};

use crate::propcheck::{Group, Instance, Suite, Verdict, SUITES};
use crate::textio::{interpretation_json, labelling_json, print_interpretation, print_program, print_setaf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorChoice {
    #[default]
    Auto,
    Never,
    Always,
}

impl ColorChoice {
    /// Reads `SETAFLP_COLOR`; unknown values fall back to `auto`.
    pub fn from_env() -> Self {
        match std::env::var("SETAFLP_COLOR").as_deref() {
            Ok("never") => ColorChoice::Never,
            Ok("always") => ColorChoice::Always,
            _ => ColorChoice::Auto,
        }
    }

    pub fn enabled(self) -> bool {
        match self {
            ColorChoice::Never => false,
            ColorChoice::Always => true,
            ColorChoice::Auto => std::io::stdout().is_terminal(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub instance: Instance,
    /// Present for program instances when the equivalence group ran.
    pub table: Option<EquivalenceReport>,
    pub verdicts: Vec<(&'static Suite, Verdict)>,
}

impl CheckReport {
    pub fn failed(&self) -> bool {
        self.table.as_ref().is_some_and(|t| !t.holds()) || self.verdicts.iter().any(|(_, v)| v.is_fail())
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(t) = &self.table {
            if let Some(row) = t.rows.iter().find(|r| !r.holds()) {
                return row.counterexample.clone();
            }
        }
        self.verdicts.iter().find_map(|(s, v)| match v {
            Verdict::Fail(why) => Some(format!("{}: {why}", s.name)),
            _ => None,
        })
    }
}

/// Runs every suite of the selected groups on `instance`.
pub fn run_check(instance: &Instance, groups: &[Group], limits: &Limits) -> Result<CheckReport, Error> {
    let table = match instance {
        Instance::Program(p) if groups.contains(&Group::Equivalence) => Some(check_equivalence(p, limits)?),
        _ => None,
    };
    let mut verdicts = Vec::new();
    for suite in SUITES.iter().filter(|s| groups.contains(&s.group)) {
        verdicts.push((suite, suite.run(instance, limits)?));
    }
    Ok(CheckReport {
        instance: instance.clone(),
        table,
        verdicts,
    })
}

fn paint(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_owned()
    }
}

pub fn render_text(report: &CheckReport, color: bool) -> String {
    let mut out = String::new();
    if let Some(table) = &report.table {
        let mapping = ProgramMapping::new(&table.program, &table.setaf);
        let u = table.program.universe();
        for row in &table.rows {
            let status = if row.holds() {
                paint("match", "32", color)
            } else {
                paint("MISMATCH", "31", color)
            };
            out.push_str(&format!(
                "{} models: {} | {} labellings: {} | {status}\n",
                row.pair.model_name(),
                row.models.len(),
                row.pair.labelling_name(),
                row.labellings.len()
            ));
            if row.models.is_empty() && row.labellings.is_empty() {
                out.push_str("  none\n");
            }
            for l in &row.labellings {
                let i = mapping.l2i(l).map(|i| print_interpretation(&i, u));
                out.push_str(&format!("  {} <-> {l}\n", i.unwrap_or_else(|e| e.to_string())));
            }
            for m in &row.models {
                if !row.labellings.iter().any(|l| mapping.l2i(l).ok().as_ref() == Some(m)) {
                    out.push_str(&format!("  {} <-> (no labelling)\n", print_interpretation(m, u)));
                }
            }
        }
    }
    let (mut pass, mut na, mut fail) = (0, 0, 0);
    for (suite, verdict) in &report.verdicts {
        let tag = match verdict {
            Verdict::Pass => {
                pass += 1;
                paint("pass", "32", color)
            }
            Verdict::NotApplicable(_) => {
                na += 1;
                paint("n/a ", "33", color)
            }
            Verdict::Fail(_) => {
                fail += 1;
                paint("FAIL", "31", color)
            }
        };
        out.push_str(&format!("{tag} {}", suite.name));
        match verdict {
            Verdict::Pass => {}
            Verdict::NotApplicable(why) | Verdict::Fail(why) => out.push_str(&format!(": {why}")),
        }
        out.push('\n');
    }
    out.push_str(&format!("suites: {pass} pass, {na} n/a, {fail} fail\n"));
    if report.failed() {
        out.push_str("counterexample instance:\n");
        out.push_str(&report.instance.dump());
        if let Instance::Program(_) = &report.instance {
            if let Some(t) = &report.table {
                out.push_str("associated SETAF:\n");
                out.push_str(&print_setaf(&t.setaf));
            }
        }
    }
    out
}

pub fn render_json(report: &CheckReport) -> Value {
    let table = report.table.as_ref().map(|t| {
        let u = t.program.universe();
        Value::from(
            t.rows
                .iter()
                .map(|row| {
                    json!({
                        "models_semantics": row.pair.model_name(),
                        "labellings_semantics": row.pair.labelling_name(),
                        "models": row.models.iter().map(|m| interpretation_json(m, u)).collect::<Vec<_>>(),
                        "labellings": row.labellings.iter().map(labelling_json).collect::<Vec<_>>(),
                        "holds": row.holds(),
                        "counterexample": row.counterexample,
                    })
                })
                .collect::<Vec<_>>(),
        )
    });
    let suites: Vec<Value> = report
        .verdicts
        .iter()
        .map(|(s, v)| {
            let (verdict, detail) = match v {
                Verdict::Pass => ("pass", None),
                Verdict::NotApplicable(why) => ("n/a", Some(why.clone())),
                Verdict::Fail(why) => ("fail", Some(why.clone())),
            };
            json!({ "suite": s.name, "group": s.group.name(), "verdict": verdict, "detail": detail })
        })
        .collect();
    let instance = match &report.instance {
        Instance::Program(p) => json!({ "program": print_program(p) }),
        Instance::Setaf(s) => json!({ "setaf": print_setaf(s) }),
    };
    json!({
        "instance": instance,
        "table": table,
        "suites": suites,
        "failed": report.failed(),
    })
}
