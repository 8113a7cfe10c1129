//! Unfolding, tautology elimination, positive reduction and elimination of
//! non-minimal rules, plus fair normalisation to an atomic program.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{Program, Rule};

/// One rewrite step. Ordering is kind, then subject rule, then the
/// auxiliary atom or rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransformStep {
    /// Replace `rule` by splicing in each rule defining `atom`.
    Unfold { rule: Rule, atom: Atom },
    /// Remove `rule`, whose head occurs in its positive body.
    Tautology { rule: Rule },
    /// Drop `not atom` from `rule`; `atom` heads no rule.
    PositiveReduction { rule: Rule, atom: Atom },
    /// Remove `rule`, subsumed by `witness`.
    NonMinimal { rule: Rule, witness: Rule },
}

impl TransformStep {
    pub fn kind(&self) -> &'static str {
        match self {
            TransformStep::Unfold { .. } => "unfold",
            TransformStep::Tautology { .. } => "tautology",
            TransformStep::PositiveReduction { .. } => "positive-reduction",
            TransformStep::NonMinimal { .. } => "non-minimal",
        }
    }

    pub fn rule(&self) -> &Rule {
        match self {
            TransformStep::Unfold { rule, .. }
            | TransformStep::Tautology { rule }
            | TransformStep::PositiveReduction { rule, .. }
            | TransformStep::NonMinimal { rule, .. } => rule,
        }
    }
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformStep::Unfold { rule, atom } | TransformStep::PositiveReduction { rule, atom } => {
                write!(f, "{} [{rule}] {atom}", self.kind())
            }
            TransformStep::Tautology { rule } => write!(f, "{} [{rule}]", self.kind()),
            TransformStep::NonMinimal { rule, witness } => {
                write!(f, "{} [{rule}] [{witness}]", self.kind())
            }
        }
    }
}

/// Every applicable step, canonically ordered.
pub fn applicable_steps(program: &Program) -> Vec<TransformStep> {
    let mut steps = Vec::new();
    steps.extend(unfold_steps(program));
    steps.extend(tautology_steps(program));
    steps.extend(positive_reduction_steps(program));
    steps.extend(non_minimal_steps(program));
    steps
}

fn unfold_steps(program: &Program) -> impl Iterator<Item = TransformStep> + '_ {
    program.rules().iter().flat_map(|r| {
        r.body_pos().iter().map(move |a| TransformStep::Unfold {
            rule: r.clone(),
            atom: a.clone(),
        })
    })
}

fn tautology_steps(program: &Program) -> impl Iterator<Item = TransformStep> + '_ {
    program
        .rules()
        .iter()
        .filter(|r| r.is_tautology())
        .map(|r| TransformStep::Tautology { rule: r.clone() })
}

fn positive_reduction_steps(program: &Program) -> Vec<TransformStep> {
    let heads = program.heads();
    program
        .rules()
        .iter()
        .flat_map(|r| {
            r.body_neg()
                .iter()
                .filter(|b| !heads.contains(*b))
                .map(move |b| TransformStep::PositiveReduction {
                    rule: r.clone(),
                    atom: b.clone(),
                })
        })
        .collect()
}

fn subsumes(witness: &Rule, rule: &Rule) -> bool {
    witness != rule
        && witness.head() == rule.head()
        && witness.body_pos().is_subset(rule.body_pos())
        && witness.body_neg().is_subset(rule.body_neg())
}

fn non_minimal_steps(program: &Program) -> impl Iterator<Item = TransformStep> + '_ {
    program.rules().iter().flat_map(move |r| {
        program
            .rules_for(r.head())
            .filter(move |w| subsumes(w, r))
            .map(move |w| TransformStep::NonMinimal {
                rule: r.clone(),
                witness: w.clone(),
            })
    })
}

/// Applies one step, keeping the universe.
pub fn apply(program: &Program, step: &TransformStep) -> Result<Program> {
    let not_applicable = |why: &str| Err(Error::StepNotApplicable(format!("{step}: {why}")));
    let rule = step.rule();
    if !program.contains(rule) {
        return not_applicable("rule is not in the program");
    }
    let mut rules = program.rules().clone();
    rules.remove(rule);
    match step {
        TransformStep::Unfold { atom, .. } => {
            if !rule.body_pos().contains(atom) {
                return not_applicable("atom is not in the positive body");
            }
            let rest: Vec<Atom> = rule.body_pos().iter().filter(|b| *b != atom).cloned().collect();
            for d in program.rules_for(atom) {
                rules.insert(Rule::new(
                    rule.head().clone(),
                    rest.iter().chain(d.body_pos()).cloned(),
                    rule.body_neg().iter().chain(d.body_neg()).cloned(),
                ));
            }
        }
        TransformStep::Tautology { .. } => {
            if !rule.is_tautology() {
                return not_applicable("head is not in the positive body");
            }
        }
        TransformStep::PositiveReduction { atom, .. } => {
            if !rule.body_neg().contains(atom) {
                return not_applicable("atom is not in the negative body");
            }
            if program.rules_for(atom).next().is_some() {
                return not_applicable("atom heads a rule");
            }
            rules.insert(Rule::new(
                rule.head().clone(),
                rule.body_pos().iter().cloned(),
                rule.body_neg().iter().filter(|b| *b != atom).cloned(),
            ));
        }
        TransformStep::NonMinimal { witness, .. } => {
            if !program.contains(witness) || !subsumes(witness, rule) {
                return not_applicable("witness does not subsume the rule");
            }
        }
    }
    Ok(program.with_rules(rules))
}

pub fn is_irreducible(program: &Program) -> bool {
    applicable_steps(program).is_empty()
}

/// Order in which fair normalisation picks atoms and steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Smallest atom of the first rule with a positive body; earliest step first.
    #[default]
    Lex,
    /// Largest atom of the last rule with a positive body; latest step first.
    ReverseLex,
}

/// First 8 bytes of the SHA-256 of a program's canonical text.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProgramDigest(pub [u8; 8]);

impl ProgramDigest {
    pub fn of(program: &Program) -> Self {
        let hash = Sha256::digest(format!("{program}").as_bytes());
        let mut out = [0u8; 8];
        out.copy_from_slice(&hash[..8]);
        ProgramDigest(out)
    }
}

impl fmt::Display for ProgramDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ProgramDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: TransformStep,
    /// Digest of the program after the step.
    pub digest: ProgramDigest,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn steps(&self) -> impl Iterator<Item = &TransformStep> {
        self.entries.iter().map(|e| &e.step)
    }

    /// Re-applies every step from `start`, checking each digest. Returns all
    /// intermediate programs, `start` first.
    pub fn replay(&self, start: &Program) -> Result<Vec<Program>> {
        let mut programs = Vec::with_capacity(self.entries.len() + 1);
        programs.push(start.clone());
        for (i, e) in self.entries.iter().enumerate() {
            let next = apply(programs.last().unwrap(), &e.step)?;
            let got = ProgramDigest::of(&next);
            if got != e.digest {
                return Err(Error::InternalInvariantViolation(format!(
                    "trace step {i} produced digest {got}, recorded {}",
                    e.digest
                )));
            }
            programs.push(next);
        }
        Ok(programs)
    }
}

/// One line per step: index, kind, rule, auxiliary atom or rule, digest.
impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            let aux = match &e.step {
                TransformStep::Unfold { atom, .. } | TransformStep::PositiveReduction { atom, .. } => {
                    format!("{atom}")
                }
                TransformStep::Tautology { .. } => String::from("-"),
                TransformStep::NonMinimal { witness, .. } => format!("{witness}"),
            };
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}",
                i + 1,
                e.step.kind(),
                e.step.rule(),
                aux,
                e.digest
            )?;
        }
        Ok(())
    }
}

struct Normalizer<'l> {
    program: Program,
    trace: Trace,
    limits: &'l Limits,
}

impl Normalizer<'_> {
    fn step(&mut self, step: TransformStep) -> Result<()> {
        if self.trace.len() >= self.limits.max_steps {
            return Err(Error::StepCapExceeded {
                cap: self.limits.max_steps,
            });
        }
        let next = apply(&self.program, &step)?;
        if next.len() > self.limits.max_statements {
            return Err(Error::BlowupCap {
                cap: self.limits.max_statements,
            });
        }
        self.trace.entries.push(TraceEntry {
            digest: ProgramDigest::of(&next),
            step,
        });
        self.program = next;
        Ok(())
    }

    fn pick<I: DoubleEndedIterator<Item = T>, T>(strategy: Strategy, mut it: I) -> Option<T> {
        match strategy {
            Strategy::Lex => it.next(),
            Strategy::ReverseLex => it.next_back(),
        }
    }

    fn next_unfold_atom(&self, strategy: Strategy) -> Option<Atom> {
        let with_pos = self.program.rules().iter().filter(|r| !r.body_pos().is_empty());
        let rule = Self::pick(strategy, with_pos)?;
        Self::pick(strategy, rule.body_pos().iter()).cloned()
    }
}

/// Normalises `program` to an irreducible atomic program.
///
/// Each round removes every tautology, then picks one atom (per `strategy`)
/// and unfolds all its positive occurrences. Once no positive body is left,
/// non-minimal rules and positive reductions are applied until none remain.
pub fn fair_normalize(program: &Program, strategy: Strategy, limits: &Limits) -> Result<(Program, Trace)> {
    let mut n = Normalizer {
        program: program.clone(),
        trace: Trace::default(),
        limits,
    };
    loop {
        while let Some(rule) = n.program.rules().iter().find(|r| r.is_tautology()).cloned() {
            n.step(TransformStep::Tautology { rule })?;
        }
        let Some(atom) = n.next_unfold_atom(strategy) else {
            break;
        };
        loop {
            let occurrences = n.program.rules().iter().filter(|r| r.body_pos().contains(&atom));
            let Some(rule) = Normalizer::pick(strategy, occurrences).cloned() else {
                break;
            };
            n.step(TransformStep::Unfold {
                rule,
                atom: atom.clone(),
            })?;
        }
    }
    loop {
        let mut steps = positive_reduction_steps(&n.program);
        steps.extend(non_minimal_steps(&n.program));
        let Some(step) = Normalizer::pick(strategy, steps.into_iter()) else {
            break;
        };
        n.step(step)?;
    }
    debug_assert!(is_irreducible(&n.program));
    Ok((n.program, n.trace))
}
