//! Translations between normal logic programs and SETAFs.
//!
//! Program to SETAF: build every statement (tree-shaped derivation) of the
//! program, group their vulnerability sets by conclusion, and let the
//! minimal transversals of each group attack that conclusion.
//!
//! SETAF to program: every minimal transversal of the attackers of `a`
//! becomes one atomic rule `a :- not b1, ..., not bn`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{Program, Rule};
use crate::setaf::{Attack, Setaf};

/// One derivation of `conc`. `subs` holds the indices (into the list
/// returned by [`statements`]) of one witness sub-statement per positive
/// body atom of the root rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub conc: Atom,
    pub rules: BTreeSet<Rule>,
    pub vul: AtomSet,
    pub subs: Vec<usize>,
}

/// Vulnerability sets of every argument, keyed by conclusion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VulFamily(pub BTreeMap<Atom, BTreeSet<AtomSet>>);

impl VulFamily {
    pub fn get(&self, a: &Atom) -> Option<&BTreeSet<AtomSet>> {
        self.0.get(a)
    }

    pub fn arguments(&self) -> AtomSet {
        self.0.keys().cloned().collect()
    }
}

/// Set of rule indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct RuleMask(Vec<u64>);

impl RuleMask {
    fn single(words: usize, i: usize) -> Self {
        let mut m = RuleMask(vec![0; words]);
        m.0[i / 64] |= 1 << (i % 64);
        m
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn union(&self, other: &RuleMask) -> RuleMask {
        RuleMask(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, bits)| (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b))
    }
}

type Key = (Atom, RuleMask);

/// Worklist fixpoint over `(conclusion, rule set)` pairs.
///
/// The vulnerability set of a statement is the union of the negated atoms of
/// its rules, so deduplicating by `(conc, rules)` is the same as by the
/// triple `(conc, rules, vul)`.
struct StatementBuilder<'p> {
    rules: Vec<&'p Rule>,
    found: BTreeMap<Atom, BTreeSet<RuleMask>>,
    witness: BTreeMap<Key, Vec<Key>>,
    count: usize,
}

impl<'p> StatementBuilder<'p> {
    fn run(program: &'p Program, limits: &Limits) -> Result<Self> {
        let rules: Vec<&Rule> = program.rules().iter().collect();
        let words = rules.len().div_ceil(64).max(1);
        let mut b = StatementBuilder {
            rules,
            found: BTreeMap::new(),
            witness: BTreeMap::new(),
            count: 0,
        };
        let cap = limits.max_statements;
        loop {
            let mut changed = false;
            for i in 0..b.rules.len() {
                let rule = b.rules[i];
                let mut partial: BTreeMap<RuleMask, Vec<Key>> = BTreeMap::new();
                partial.insert(RuleMask::single(words, i), Vec::new());
                for a in rule.body_pos() {
                    let Some(cands) = b.found.get(a) else {
                        partial.clear();
                        break;
                    };
                    let mut next = BTreeMap::new();
                    for (acc, kids) in &partial {
                        // the root rule may not already occur in a child
                        for m in cands.iter().filter(|m| !m.contains(i)) {
                            next.entry(acc.union(m)).or_insert_with(|| {
                                let mut k = kids.clone();
                                k.push((a.clone(), m.clone()));
                                k
                            });
                        }
                    }
                    if next.len() > cap {
                        return Err(Error::BlowupCap { cap });
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (mask, kids) in partial {
                    let entry = b.found.entry(rule.head().clone()).or_default();
                    if entry.insert(mask.clone()) {
                        changed = true;
                        b.count += 1;
                        if b.count > cap {
                            return Err(Error::BlowupCap { cap });
                        }
                        b.witness.insert((rule.head().clone(), mask), kids);
                    }
                }
            }
            if !changed {
                return Ok(b);
            }
        }
    }

    fn vul(&self, mask: &RuleMask) -> AtomSet {
        mask.indices()
            .flat_map(|i| self.rules[i].body_neg().iter().cloned())
            .collect()
    }

    fn rule_set(&self, mask: &RuleMask) -> BTreeSet<Rule> {
        mask.indices().map(|i| self.rules[i].clone()).collect()
    }
}

/// All statements of the program, sorted by `(conc, vul, rules)`.
pub fn statements(program: &Program, limits: &Limits) -> Result<Vec<Statement>> {
    let b = StatementBuilder::run(program, limits)?;
    let mut keyed: Vec<(Atom, AtomSet, BTreeSet<Rule>, RuleMask)> = b
        .found
        .iter()
        .flat_map(|(conc, masks)| masks.iter().map(|m| (conc.clone(), b.vul(m), b.rule_set(m), m.clone())))
        .collect();
    keyed.sort_by(|x, y| (&x.0, &x.1, &x.2).cmp(&(&y.0, &y.1, &y.2)));
    let position: BTreeMap<Key, usize> = keyed
        .iter()
        .enumerate()
        .map(|(i, (c, _, _, m))| ((c.clone(), m.clone()), i))
        .collect();
    Ok(keyed
        .into_iter()
        .map(|(conc, vul, rules, mask)| {
            let subs = b.witness[&(conc.clone(), mask)].iter().map(|k| position[k]).collect();
            Statement { conc, rules, vul, subs }
        })
        .collect())
}

/// Conclusions of the statements.
pub fn arguments(program: &Program, limits: &Limits) -> Result<AtomSet> {
    Ok(vul_family(program, limits)?.arguments())
}

pub fn vul_family(program: &Program, limits: &Limits) -> Result<VulFamily> {
    let b = StatementBuilder::run(program, limits)?;
    Ok(VulFamily(
        b.found
            .iter()
            .map(|(conc, masks)| (conc.clone(), masks.iter().map(|m| b.vul(m)).collect()))
            .collect(),
    ))
}

/// ⊆-minimal members of a family.
pub fn minimal_members<T: Ord + Clone>(family: &BTreeSet<BTreeSet<T>>) -> BTreeSet<BTreeSet<T>> {
    family
        .iter()
        .filter(|s| !family.iter().any(|o| o != *s && o.is_subset(s)))
        .cloned()
        .collect()
}

/// All ⊆-minimal sets that intersect every member of `family`.
///
/// Berge's incremental scheme: transversals of the first `k` edges are
/// extended edge by edge and pruned back to an antichain after each step.
/// `{∅}` is returned for the empty family and `∅` when the family contains
/// the empty set.
pub fn minimal_transversals<T: Ord + Clone>(family: &BTreeSet<BTreeSet<T>>) -> BTreeSet<BTreeSet<T>> {
    let mut edges: Vec<BTreeSet<T>> = minimal_members(family).into_iter().collect();
    edges.sort_by_key(|e| e.len());
    let mut current: BTreeSet<BTreeSet<T>> = BTreeSet::new();
    current.insert(BTreeSet::new());
    for edge in &edges {
        let mut next = BTreeSet::new();
        for t in &current {
            if !t.is_disjoint(edge) {
                next.insert(t.clone());
            } else {
                for x in edge {
                    let mut grown = t.clone();
                    grown.insert(x.clone());
                    next.insert(grown);
                }
            }
        }
        current = minimal_members(&next);
    }
    current
}

/// The SETAF associated with a program.
pub fn nlp_to_setaf(program: &Program, limits: &Limits) -> Result<Setaf> {
    let family = vul_family(program, limits)?;
    Ok(setaf_from_vul(&family))
}

/// Attacks from vulnerability families. Attackers must be arguments, so each
/// vulnerability set is first restricted to the argument set.
pub fn setaf_from_vul(family: &VulFamily) -> Setaf {
    let args = family.arguments();
    let mut attacks = BTreeSet::new();
    for (target, vuls) in &family.0 {
        let restricted: BTreeSet<AtomSet> = vuls.iter().map(|v| v.intersection(&args).cloned().collect()).collect();
        for source in minimal_transversals(&restricted) {
            attacks.insert(Attack {
                source,
                target: target.clone(),
            });
        }
    }
    Setaf::from_parts_unchecked(args, attacks)
}

/// The program associated with a SETAF; its universe is the argument set.
pub fn setaf_to_nlp(setaf: &Setaf) -> Program {
    let mut rules = Vec::new();
    for a in setaf.arguments() {
        let attackers: BTreeSet<AtomSet> = setaf.attackers(a).cloned().collect();
        for v in minimal_transversals(&attackers) {
            rules.push(Rule::atomic(a.clone(), v));
        }
    }
    Program::with_universe(rules, setaf.arguments().clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RfalpViolation {
    NotAtomic(Rule),
    HeadlessAtom(Atom),
    NonMinimal { rule: Rule, subsumed_by: Rule },
}

impl fmt::Display for RfalpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RfalpViolation::NotAtomic(r) => write!(f, "rule `{r}` has a positive body"),
            RfalpViolation::HeadlessAtom(a) => write!(f, "atom `{a}` heads no rule"),
            RfalpViolation::NonMinimal { rule, subsumed_by } => {
                write!(f, "rule `{rule}` is subsumed by `{subsumed_by}`")
            }
        }
    }
}

/// Every clause of the RFALP definition the program breaks.
///
/// The atoms checked for having a defining rule are those occurring in the
/// rules; atoms only carried by the universe are not part of the rule set.
pub fn rfalp_violations(program: &Program) -> Vec<RfalpViolation> {
    let mut out = Vec::new();
    for r in program.rules() {
        if !r.is_atomic() {
            out.push(RfalpViolation::NotAtomic(r.clone()));
        }
    }
    let heads = program.heads();
    for a in program.occurring_atoms() {
        if !heads.contains(&a) {
            out.push(RfalpViolation::HeadlessAtom(a));
        }
    }
    for r in program.rules() {
        if let Some(o) = program
            .rules_for(r.head())
            .find(|o| *o != r && o.body_neg().is_subset(r.body_neg()) && o.body_pos().is_subset(r.body_pos()))
        {
            if r.is_atomic() && o.is_atomic() {
                out.push(RfalpViolation::NonMinimal {
                    rule: r.clone(),
                    subsumed_by: o.clone(),
                });
            }
        }
    }
    out
}

pub fn is_rfalp(program: &Program) -> bool {
    rfalp_violations(program).is_empty()
}
