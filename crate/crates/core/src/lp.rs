//! Normal logic programs, three-valued interpretations, the reduct and the
//! least-model operator.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::atom::{braced, Atom, AtomSet};
use crate::error::{Error, Result};

/// `head :- pos..., not neg...`. A fact has both bodies empty.
///
/// The two body parts are sets and may overlap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: Atom,
    pos: AtomSet,
    neg: AtomSet,
}

impl Rule {
    pub fn new<P, N>(head: Atom, pos: P, neg: N) -> Self
    where
        P: IntoIterator<Item = Atom>,
        N: IntoIterator<Item = Atom>,
    {
        Rule {
            head,
            pos: pos.into_iter().collect(),
            neg: neg.into_iter().collect(),
        }
    }

    pub fn fact(head: Atom) -> Self {
        Rule {
            head,
            pos: AtomSet::new(),
            neg: AtomSet::new(),
        }
    }

    /// Atomic rule `head :- not neg...`.
    pub fn atomic<N: IntoIterator<Item = Atom>>(head: Atom, neg: N) -> Self {
        Rule::new(head, [], neg)
    }

    pub fn head(&self) -> &Atom {
        &self.head
    }

    pub fn body_pos(&self) -> &AtomSet {
        &self.pos
    }

    pub fn body_neg(&self) -> &AtomSet {
        &self.neg
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_atomic(&self) -> bool {
        self.pos.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.pos.contains(&self.head)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        core::iter::once(&self.head)
            .chain(self.pos.iter())
            .chain(self.neg.iter())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if self.is_fact() {
            return f.write_str(".");
        }
        f.write_str(" :- ")?;
        let pos = self.pos.iter().map(|a| (false, a));
        let neg = self.neg.iter().map(|a| (true, a));
        for (i, (negated, a)) in pos.chain(neg).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if negated {
                f.write_str("not ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(".")
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of rules over an explicit universe (Herbrand base).
///
/// The universe always contains every atom occurring in the rules; it may
/// contain more, which is how transformations keep atoms that no longer
/// occur.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Program {
    rules: BTreeSet<Rule>,
    universe: AtomSet,
}

impl Program {
    /// Program whose universe is exactly the atoms occurring in `rules`.
    pub fn new<I: IntoIterator<Item = Rule>>(rules: I) -> Self {
        Program::with_universe(rules, AtomSet::new())
    }

    /// Program whose universe is `extra` plus the atoms occurring in `rules`.
    pub fn with_universe<I: IntoIterator<Item = Rule>>(rules: I, extra: AtomSet) -> Self {
        let rules: BTreeSet<Rule> = rules.into_iter().collect();
        let mut universe = extra;
        for r in &rules {
            universe.extend(r.atoms().cloned());
        }
        Program { rules, universe }
    }

    pub fn rules(&self) -> &BTreeSet<Rule> {
        &self.rules
    }

    pub fn universe(&self) -> &AtomSet {
        &self.universe
    }

    /// The Herbrand base, i.e. the carried universe.
    pub fn herbrand_base(&self) -> &AtomSet {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.rules.iter().all(|r| r.neg.is_empty())
    }

    pub fn heads(&self) -> AtomSet {
        self.rules.iter().map(|r| r.head.clone()).collect()
    }

    pub fn occurring_atoms(&self) -> AtomSet {
        self.rules.iter().flat_map(|r| r.atoms().cloned()).collect()
    }

    pub fn rules_for<'a>(&'a self, head: &'a Atom) -> impl Iterator<Item = &'a Rule> + 'a {
        self.rules.iter().filter(move |r| &r.head == head)
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    /// Same rule set, ignoring atoms that only the universe carries.
    pub fn same_rules(&self, other: &Program) -> bool {
        self.rules == other.rules
    }

    /// Replaces the rule set while keeping the universe.
    pub(crate) fn with_rules(&self, rules: BTreeSet<Rule>) -> Program {
        debug_assert!(rules.iter().flat_map(|r| r.atoms()).all(|a| self.universe.contains(a)));
        Program {
            rules,
            universe: self.universe.clone(),
        }
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program::new(iter)
    }
}

/// Canonical text: an optional `#universe` line listing atoms that occur in
/// no rule, then one rule per line in canonical order.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let occurring = self.occurring_atoms();
        let extra: AtomSet = self.universe.difference(&occurring).cloned().collect();
        if !extra.is_empty() {
            f.write_str("#universe ")?;
            for (i, a) in extra.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(".\n")?;
        }
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truth {
    True,
    False,
    Undefined,
}

/// Three-valued interpretation `<T, F>`; everything else is undefined.
///
/// Canonical order compares the sorted `T` first, then the sorted `F`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation {
    t: AtomSet,
    f: AtomSet,
}

impl Interpretation {
    pub fn new(t: AtomSet, f: AtomSet) -> Result<Self> {
        if let Some(a) = t.intersection(&f).next() {
            return Err(Error::OverlappingInterpretation(a.clone()));
        }
        Ok(Interpretation { t, f })
    }

    pub(crate) fn from_disjoint(t: AtomSet, f: AtomSet) -> Self {
        debug_assert!(t.is_disjoint(&f));
        Interpretation { t, f }
    }

    pub fn empty() -> Self {
        Interpretation::default()
    }

    pub fn true_atoms(&self) -> &AtomSet {
        &self.t
    }

    pub fn false_atoms(&self) -> &AtomSet {
        &self.f
    }

    pub fn undefined(&self, universe: &AtomSet) -> AtomSet {
        universe
            .iter()
            .filter(|a| !self.t.contains(*a) && !self.f.contains(*a))
            .cloned()
            .collect()
    }

    /// `T ∪ F`.
    pub fn decided(&self) -> AtomSet {
        self.t.union(&self.f).cloned().collect()
    }

    pub fn value(&self, atom: &Atom) -> Truth {
        if self.t.contains(atom) {
            Truth::True
        } else if self.f.contains(atom) {
            Truth::False
        } else {
            Truth::Undefined
        }
    }

    pub fn check_over(&self, universe: &AtomSet) -> Result<()> {
        match self.t.iter().chain(self.f.iter()).find(|a| !universe.contains(*a)) {
            Some(a) => Err(Error::OutsideUniverse(a.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", braced(&self.t), braced(&self.f))
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rule of a reduct: positive body atoms plus a number of occurrences of the
/// undefined constant `u`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveRule {
    pub head: Atom,
    pub body: AtomSet,
    pub undefined: usize,
}

impl fmt::Display for PositiveRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if self.body.is_empty() && self.undefined == 0 {
            return f.write_str(".");
        }
        f.write_str(" :- ")?;
        let mut parts = self.body.iter().map(Atom::as_str).collect::<alloc::vec::Vec<_>>();
        parts.extend(core::iter::repeat_n("u", self.undefined));
        write!(f, "{}.", parts.join(", "))
    }
}

impl fmt::Debug for PositiveRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PositiveProgram {
    pub rules: BTreeSet<PositiveRule>,
    pub universe: AtomSet,
}

/// `P / I`: drop rules with a negated atom in `T`, erase negated atoms in
/// `F`, and replace every remaining negative literal by `u`.
pub fn reduct(program: &Program, interp: &Interpretation) -> PositiveProgram {
    let rules = program
        .rules
        .iter()
        .filter(|r| r.neg.is_disjoint(&interp.t))
        .map(|r| PositiveRule {
            head: r.head.clone(),
            body: r.pos.clone(),
            undefined: r.neg.iter().filter(|b| !interp.f.contains(*b)).count(),
        })
        .collect();
    PositiveProgram {
        rules,
        universe: program.universe.clone(),
    }
}

/// One application of the three-valued immediate-consequence operator Ψ.
pub fn psi_step(program: &PositiveProgram, j: &Interpretation) -> Interpretation {
    let mut t = AtomSet::new();
    let mut not_false = AtomSet::new();
    for r in &program.rules {
        if r.undefined == 0 && r.body.is_subset(&j.t) {
            t.insert(r.head.clone());
        }
        // `u` is never false, so only a false body atom blocks the rule.
        if r.body.is_disjoint(&j.f) {
            not_false.insert(r.head.clone());
        }
    }
    t.retain(|a| program.universe.contains(a));
    let f = program.universe.difference(&not_false).cloned().collect();
    Interpretation::from_disjoint(t, f)
}

/// Least fixpoint of Ψ starting from `<∅, universe>`.
///
/// Returns the model together with the number of Ψ applications it took.
pub fn least_model_with_iterations(program: &PositiveProgram) -> (Interpretation, usize) {
    let mut cur = Interpretation::from_disjoint(AtomSet::new(), program.universe.clone());
    let mut iterations = 0;
    loop {
        let next = psi_step(program, &cur);
        iterations += 1;
        if next == cur {
            return (cur, iterations);
        }
        cur = next;
    }
}

pub fn least_model(program: &PositiveProgram) -> Interpretation {
    least_model_with_iterations(program).0
}

/// Ω(I): the least three-valued model of `P / I`.
pub fn omega(program: &Program, interp: &Interpretation) -> Interpretation {
    least_model(&reduct(program, interp))
}

/// `T={..} F={..} U={..}`, with `U` taken relative to `universe`.
pub fn describe(i: &Interpretation, universe: &AtomSet) -> String {
    format!(
        "T={} F={} U={}",
        braced(&i.t),
        braced(&i.f),
        braced(&i.undefined(universe))
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn a(n: &str) -> Atom {
        Atom::new(n).unwrap()
    }

    fn set(names: &[&str]) -> AtomSet {
        atom_set(names.iter().copied()).unwrap()
    }

    fn rule(head: &str, pos: &[&str], neg: &[&str]) -> Rule {
        Rule::new(a(head), set(pos), set(neg))
    }

    fn interp(t: &[&str], f: &[&str]) -> Interpretation {
        Interpretation::new(set(t), set(f)).unwrap()
    }

    fn example2() -> Program {
        Program::new(vec![
            rule("a", &[], &["b"]),
            rule("b", &[], &["a"]),
            rule("c", &[], &["a", "c"]),
            rule("c", &[], &["c", "d"]),
            rule("d", &[], &["d"]),
            rule("e", &[], &["b", "e"]),
        ])
    }

    fn pos_rule(head: &str, body: &[&str], undefined: usize) -> PositiveRule {
        PositiveRule {
            head: a(head),
            body: set(body),
            undefined,
        }
    }

    #[test]
    fn herbrand_base() {
        assert!(Program::default().herbrand_base().is_empty());
        assert_eq!(Program::new([Rule::fact(a("a"))]).herbrand_base(), &set(&["a"]));
        let extra = Program::with_universe([Rule::fact(a("a"))], set(&["z"]));
        assert_eq!(extra.herbrand_base(), &set(&["a", "z"]));
    }

    #[test]
    fn duplicate_rules_collapse() {
        let p = Program::new([rule("a", &["b"], &[]), rule("a", &["b"], &[])]);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn overlapping_interpretation_rejected() {
        assert_eq!(
            Interpretation::new(set(&["a"]), set(&["a"])),
            Err(Error::OverlappingInterpretation(a("a")))
        );
        let i = interp(&["a"], &[]);
        assert_eq!(i.check_over(&set(&["b"])), Err(Error::OutsideUniverse(a("a"))));
    }

    #[test]
    fn reduct_replaces_undefined_negation() {
        let p = Program::new([rule("a", &[], &["b"])]);
        let q = reduct(&p, &Interpretation::empty());
        assert_eq!(q.rules.iter().cloned().collect::<Vec<_>>(), vec![pos_rule("a", &[], 1)]);
        assert_eq!(q.universe, set(&["a", "b"]));
    }

    #[test]
    fn reduct_of_example_two() {
        let q = reduct(&example2(), &interp(&["b"], &["a", "e"]));
        let expected: BTreeSet<_> = [
            pos_rule("b", &[], 0),
            pos_rule("c", &[], 1),
            pos_rule("c", &[], 2),
            pos_rule("d", &[], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(q.rules, expected);
        assert_eq!(least_model(&q), interp(&["b"], &["a", "e"]));
    }

    #[test]
    fn reduct_erases_false_negation() {
        let p = Program::new([rule("c", &[], &["c"])]);
        let q = reduct(&p, &interp(&[], &["c"]));
        assert_eq!(q.rules.iter().cloned().collect::<Vec<_>>(), vec![pos_rule("c", &[], 0)]);
    }

    #[test]
    fn psi_examples() {
        let q = PositiveProgram {
            rules: [pos_rule("c", &[], 0)].into_iter().collect(),
            universe: set(&["c", "d"]),
        };
        assert_eq!(psi_step(&q, &interp(&[], &["c", "d"])), interp(&["c"], &["d"]));

        let q = PositiveProgram {
            rules: [pos_rule("c", &[], 1)].into_iter().collect(),
            universe: set(&["c"]),
        };
        assert_eq!(psi_step(&q, &interp(&[], &["c"])), interp(&[], &[]));

        let q = PositiveProgram {
            rules: [pos_rule("b", &[], 0), pos_rule("a", &["b"], 0)].into_iter().collect(),
            universe: set(&["a", "b"]),
        };
        assert_eq!(psi_step(&q, &interp(&["b"], &[])), interp(&["a", "b"], &[]));
    }

    #[test]
    fn least_model_examples() {
        let q = PositiveProgram {
            rules: [pos_rule("c", &[], 0)].into_iter().collect(),
            universe: set(&["c"]),
        };
        assert_eq!(least_model(&q), interp(&["c"], &[]));
        let q = PositiveProgram {
            rules: [pos_rule("c", &[], 1)].into_iter().collect(),
            universe: set(&["c"]),
        };
        assert_eq!(least_model(&q), interp(&[], &[]));
    }

    #[test]
    fn omega_examples() {
        let p = example2();
        assert_eq!(omega(&p, &interp(&["b"], &["a", "e"])), interp(&["b"], &["a", "e"]));
        assert_eq!(omega(&p, &Interpretation::empty()), Interpretation::empty());
        let p = Program::new([Rule::fact(a("a"))]);
        assert_eq!(omega(&p, &interp(&[], &["a"])), interp(&["a"], &[]));
    }

    #[test]
    fn display() {
        assert_eq!(rule("a", &["b"], &["c", "d"]).to_string(), "a :- b, not c, not d.");
        assert_eq!(Rule::fact(a("a")).to_string(), "a.");
        let p = Program::with_universe([rule("c", &[], &["c"])], set(&["a", "b"]));
        assert_eq!(p.to_string(), "#universe a, b.\nc :- not c.\n");
        assert_eq!(pos_rule("c", &["a"], 2).to_string(), "c :- a, u, u.");
        assert_eq!(
            describe(&interp(&["b"], &["a", "e"]), &set(&["a", "b", "c", "d", "e"])),
            "T={b} F={a,e} U={c,d}"
        );
    }
}
