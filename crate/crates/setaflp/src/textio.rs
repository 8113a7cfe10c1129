//! Text formats: `.lp` programs, `.setaf` frameworks, model and labelling
//! lines, Graphviz DOT and JSON.

use std::fmt;

use serde_json::{json, Value};
use setaflp_core::atom::{braced, UNDEFINED_CONSTANT};
use setaflp_core::lp::describe;
use setaflp_core::transform::{Trace, TransformStep};
use setaflp_core::{Atom, AtomSet, Attack, Interpretation, Labelling, Program, Rule, Setaf};
use thiserror::Error;

/// Location of the offending token. Line and column are 1-based; `start`
/// and `end` are byte offsets into the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { message: String, span: SourceSpan },

    #[error("{span}: `{}` is reserved for the undefined constant", UNDEFINED_CONSTANT)]
    ReservedAtom { span: SourceSpan },

    #[error(transparent)]
    Invalid(#[from] setaflp_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Directive(&'a str),
    ColonDash,
    Comma,
    Dot,
    Arrow,
    Newline,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Directive(s) => write!(f, "`#{s}`"),
            Tok::ColonDash => f.write_str("`:-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Newline => f.write_str("end of line"),
        }
    }
}

fn is_word(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str, newlines: bool) -> Result<Vec<(Tok<'_>, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut line_start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let span = |end: usize| SourceSpan {
            line,
            column: text[line_start..i].chars().count() + 1,
            start: i,
            end,
        };
        match c {
            '\n' => {
                if newlines {
                    out.push((Tok::Newline, span(i + 1)));
                }
                line += 1;
                line_start = i + 1;
            }
            c if c.is_whitespace() => {}
            '%' => {
                while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                    chars.next();
                }
            }
            ',' => out.push((Tok::Comma, span(i + 1))),
            '.' => out.push((Tok::Dot, span(i + 1))),
            ':' if chars.peek().is_some_and(|&(_, c)| c == '-') => {
                chars.next();
                out.push((Tok::ColonDash, span(i + 2)));
            }
            '-' if chars.peek().is_some_and(|&(_, c)| c == '>') => {
                chars.next();
                out.push((Tok::Arrow, span(i + 2)));
            }
            '#' => {
                let mut end = i + 1;
                while let Some(&(j, c)) = chars.peek() {
                    if !is_word(c) {
                        break;
                    }
                    end = j + c.len_utf8();
                    chars.next();
                }
                out.push((Tok::Directive(&text[i + 1..end]), span(end)));
            }
            c if is_word(c) => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, c)) = chars.peek() {
                    if !is_word(c) {
                        break;
                    }
                    end = j + c.len_utf8();
                    chars.next();
                }
                out.push((Tok::Ident(&text[i..end]), span(end)));
            }
            other => {
                return Err(ParseError::Syntax {
                    message: format!("unexpected character `{other}`"),
                    span: span(i + other.len_utf8()),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok<'a>, SourceSpan)>,
    pos: usize,
    eof: SourceSpan,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, newlines: bool) -> Result<Self, ParseError> {
        let line = text.matches('\n').count() + 1;
        let last = text.rfind('\n').map_or(0, |i| i + 1);
        let eof = SourceSpan {
            line,
            column: text[last..].chars().count() + 1,
            start: text.len(),
            end: text.len(),
        };
        Ok(Parser {
            toks: lex(text, newlines)?,
            pos: 0,
            eof,
        })
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.0)
    }

    fn peek_at(&self, k: usize) -> Option<Tok<'a>> {
        self.toks.get(self.pos + k).map(|t| t.0)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map_or(self.eof, |t| t.1)
    }

    fn next(&mut self) -> Option<(Tok<'a>, SourceSpan)> {
        let t = self.toks.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => String::from("end of input"),
        };
        Err(ParseError::Syntax {
            message: format!("expected {expected}, found {found}"),
            span: self.span(),
        })
    }

    fn expect(&mut self, tok: Tok<'_>, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(expected)
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let span = self.span();
                self.pos += 1;
                atom_at(name, span)
            }
            _ => self.error("an atom"),
        }
    }

    fn atom_list(&mut self) -> Result<Vec<Atom>, ParseError> {
        let mut atoms = vec![self.atom()?];
        while self.peek() == Some(Tok::Comma) {
            self.pos += 1;
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }
}

fn atom_at(name: &str, span: SourceSpan) -> Result<Atom, ParseError> {
    if name == UNDEFINED_CONSTANT {
        return Err(ParseError::ReservedAtom { span });
    }
    Atom::new(name).map_err(|_| ParseError::Syntax {
        message: format!("invalid atom name `{name}`"),
        span,
    })
}

/// Parses the `.lp` format: facts `a.`, rules `a :- b, not c.`, `%`
/// comments, and `#universe a, b.` to add atoms no rule mentions.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(text, false)?;
    let mut rules = Vec::new();
    let mut extra = AtomSet::new();
    while let Some(tok) = p.peek() {
        match tok {
            Tok::Directive("universe") => {
                p.pos += 1;
                extra.extend(p.atom_list()?);
                p.expect(Tok::Dot, "`.`")?;
            }
            Tok::Directive(other) => {
                return Err(ParseError::Syntax {
                    message: format!("unknown directive `#{other}`"),
                    span: p.span(),
                })
            }
            Tok::Ident(_) => rules.push(parse_rule(&mut p)?),
            _ => return p.error("a rule"),
        }
    }
    Ok(Program::with_universe(rules, extra))
}

fn parse_rule(p: &mut Parser<'_>) -> Result<Rule, ParseError> {
    let head = p.atom()?;
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    match p.peek() {
        Some(Tok::Dot) => {}
        Some(Tok::ColonDash) => {
            p.pos += 1;
            loop {
                match (p.peek(), p.peek_at(1)) {
                    (Some(Tok::Ident("not")), Some(Tok::Ident(_))) => {
                        p.pos += 1;
                        neg.push(p.atom()?);
                    }
                    (Some(Tok::Ident(_)), _) => pos.push(p.atom()?),
                    _ => return p.error("a literal"),
                }
                if p.peek() != Some(Tok::Comma) {
                    break;
                }
                p.pos += 1;
            }
        }
        _ => return p.error("`:-` or `.`"),
    }
    p.expect(Tok::Dot, "`,` or `.`")?;
    Ok(Rule::new(head, pos, neg))
}

/// How `parse_setaf` treats an attack whose source strictly contains another
/// source on the same target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AttackMode {
    #[default]
    Reject,
    Minimize,
}

/// Parses the `.setaf` format: one `arg a` or `att a,b -> c` per line.
pub fn parse_setaf(text: &str, mode: AttackMode) -> Result<Setaf, ParseError> {
    let mut p = Parser::new(text, true)?;
    let mut arguments = AtomSet::new();
    let mut attacks = Vec::new();
    while let Some(tok) = p.peek() {
        match tok {
            Tok::Newline => {
                p.pos += 1;
                continue;
            }
            Tok::Ident("arg") => {
                p.pos += 1;
                arguments.insert(p.atom()?);
            }
            Tok::Ident("att") => {
                p.pos += 1;
                let source = p.atom_list()?;
                p.expect(Tok::Arrow, "`,` or `->`")?;
                attacks.push(Attack::new(source, p.atom()?));
            }
            _ => return p.error("`arg` or `att`"),
        }
        match p.next() {
            None | Some((Tok::Newline, _)) => {}
            Some(_) => {
                p.pos -= 1;
                return p.error("end of line");
            }
        }
    }
    Ok(match mode {
        AttackMode::Reject => Setaf::new(arguments, attacks)?,
        AttackMode::Minimize => Setaf::minimized(arguments, attacks)?,
    })
}

pub fn print_program(p: &Program) -> String {
    p.to_string()
}

pub fn print_setaf(s: &Setaf) -> String {
    let mut out = String::new();
    for a in s.arguments() {
        out.push_str(&format!("arg {a}\n"));
    }
    for att in s.attacks() {
        out.push_str(&format!("att {} -> {}\n", names(&att.source, ","), att.target));
    }
    out
}

/// `T={..} F={..} U={..}` over `universe`.
pub fn print_interpretation(i: &Interpretation, universe: &AtomSet) -> String {
    describe(i, universe)
}

/// `in={..} out={..} undec={..}`.
pub fn print_labelling(l: &Labelling) -> String {
    l.to_string()
}

/// One line per step: index, kind, rule, auxiliary datum, digest.
pub fn print_trace(t: &Trace) -> String {
    t.to_string()
}

fn names(set: &AtomSet, sep: &str) -> String {
    set.iter().map(Atom::as_str).collect::<Vec<_>>().join(sep)
}

/// Graphviz rendering. A collective attack gets its own point-shaped
/// junction node; singleton attacks are plain edges.
pub fn export_dot(s: &Setaf) -> String {
    let mut out = String::from("digraph setaf {\n");
    for a in s.arguments() {
        out.push_str(&format!("  \"{a}\";\n"));
    }
    let mut junctions = 0;
    for att in s.attacks() {
        if att.source.len() == 1 {
            let src = att.source.first().unwrap();
            out.push_str(&format!("  \"{src}\" -> \"{}\";\n", att.target));
            continue;
        }
        let j = format!("_j{junctions}");
        junctions += 1;
        out.push_str(&format!("  \"{j}\" [shape=point, label=\"\"];\n"));
        for src in &att.source {
            out.push_str(&format!("  \"{src}\" -> \"{j}\" [arrowhead=none];\n"));
        }
        out.push_str(&format!("  \"{j}\" -> \"{}\";\n", att.target));
    }
    out.push_str("}\n");
    out
}

fn set_json(set: &AtomSet) -> Value {
    Value::from(set.iter().map(|a| a.as_str().to_owned()).collect::<Vec<_>>())
}

pub fn rule_json(r: &Rule) -> Value {
    json!({
        "head": r.head().as_str(),
        "pos": set_json(r.body_pos()),
        "neg": set_json(r.body_neg()),
    })
}

pub fn program_json(p: &Program) -> Value {
    json!({
        "universe": set_json(p.universe()),
        "rules": p.rules().iter().map(rule_json).collect::<Vec<_>>(),
    })
}

pub fn setaf_json(s: &Setaf) -> Value {
    json!({
        "arguments": set_json(s.arguments()),
        "attacks": s.attacks().iter().map(|a| json!({
            "source": set_json(&a.source),
            "target": a.target.as_str(),
        })).collect::<Vec<_>>(),
    })
}

pub fn interpretation_json(i: &Interpretation, universe: &AtomSet) -> Value {
    json!({
        "true": set_json(i.true_atoms()),
        "false": set_json(i.false_atoms()),
        "undefined": set_json(&i.undefined(universe)),
    })
}

pub fn labelling_json(l: &Labelling) -> Value {
    json!({
        "in": set_json(l.in_set()),
        "out": set_json(l.out_set()),
        "undec": set_json(l.undec_set()),
    })
}

pub fn step_json(step: &TransformStep) -> Value {
    let mut v = json!({ "kind": step.kind(), "rule": step.rule().to_string() });
    match step {
        TransformStep::Unfold { atom, .. } | TransformStep::PositiveReduction { atom, .. } => {
            v["atom"] = Value::from(atom.as_str());
        }
        TransformStep::NonMinimal { witness, .. } => v["witness"] = Value::from(witness.to_string()),
        TransformStep::Tautology { .. } => {}
    }
    v
}

pub fn trace_json(t: &Trace) -> Value {
    Value::from(
        t.entries
            .iter()
            .map(|e| {
                let mut v = step_json(&e.step);
                v["digest"] = Value::from(e.digest.to_string());
                v
            })
            .collect::<Vec<_>>(),
    )
}

/// Pretty-printed JSON; object keys come out sorted.
pub fn export_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// `{a,b}` notation used in messages.
pub fn brace(set: &AtomSet) -> String {
    braced(set)
}
