//! SETAFs (frameworks with collective attacks) and their labelling semantics.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{braced, Atom, AtomSet};
use crate::bits::{submasks, AtomIndex, Mask};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semantics::check_cap;

/// `source -> target`; the source is a non-empty set of arguments.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attack {
    pub source: AtomSet,
    pub target: Atom,
}

impl Attack {
    pub fn new<I: IntoIterator<Item = Atom>>(source: I, target: Atom) -> Self {
        Attack {
            source: source.into_iter().collect(),
            target,
        }
    }
}

impl fmt::Debug for Attack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", braced(&self.source), self.target)
    }
}

/// Arguments plus subset-minimal collective attacks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Setaf {
    arguments: AtomSet,
    attacks: BTreeSet<Attack>,
}

impl Setaf {
    /// Validates the framework, rejecting non-minimal attacks.
    pub fn new<I: IntoIterator<Item = Attack>>(arguments: AtomSet, attacks: I) -> Result<Self> {
        let attacks: BTreeSet<Attack> = attacks.into_iter().collect();
        check_shape(&arguments, &attacks)?;
        for att in &attacks {
            if let Some(smaller) = attacks
                .iter()
                .find(|o| o.target == att.target && o.source != att.source && o.source.is_subset(&att.source))
            {
                return Err(Error::NonMinimalAttack {
                    source_set: braced(&att.source),
                    smaller: braced(&smaller.source),
                    target: att.target.clone(),
                });
            }
        }
        Ok(Setaf { arguments, attacks })
    }

    /// Validates the framework, dropping every attack whose source strictly
    /// contains another source on the same target.
    pub fn minimized<I: IntoIterator<Item = Attack>>(arguments: AtomSet, attacks: I) -> Result<Self> {
        let attacks: BTreeSet<Attack> = attacks.into_iter().collect();
        check_shape(&arguments, &attacks)?;
        let kept = attacks
            .iter()
            .filter(|att| {
                !attacks
                    .iter()
                    .any(|o| o.target == att.target && o.source != att.source && o.source.is_subset(&att.source))
            })
            .cloned()
            .collect();
        Ok(Setaf {
            arguments,
            attacks: kept,
        })
    }

    pub(crate) fn from_parts_unchecked(arguments: AtomSet, attacks: BTreeSet<Attack>) -> Self {
        debug_assert!(Setaf::new(arguments.clone(), attacks.iter().cloned()).is_ok());
        Setaf { arguments, attacks }
    }

    pub fn arguments(&self) -> &AtomSet {
        &self.arguments
    }

    pub fn attacks(&self) -> &BTreeSet<Attack> {
        &self.attacks
    }

    /// `Att(a)`: the sources of all attacks on `a`.
    pub fn attackers<'a>(&'a self, target: &'a Atom) -> impl Iterator<Item = &'a AtomSet> + 'a {
        self.attacks
            .iter()
            .filter(move |att| &att.target == target)
            .map(|att| &att.source)
    }
}

fn check_shape(arguments: &AtomSet, attacks: &BTreeSet<Attack>) -> Result<()> {
    for att in attacks {
        if att.source.is_empty() {
            return Err(Error::EmptyAttackSource(att.target.clone()));
        }
        if let Some(a) = att
            .source
            .iter()
            .chain(core::iter::once(&att.target))
            .find(|a| !arguments.contains(*a))
        {
            return Err(Error::DanglingArgument(a.clone()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    In,
    Out,
    Undec,
}

/// Total labelling, stored as its `(in, out, undec)` partition.
///
/// Canonical order is lexicographic over that triple.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling {
    inn: AtomSet,
    out: AtomSet,
    undec: AtomSet,
}

impl Labelling {
    pub fn new(inn: AtomSet, out: AtomSet, undec: AtomSet) -> Result<Self> {
        if let Some(a) = inn
            .intersection(&out)
            .chain(inn.intersection(&undec))
            .chain(out.intersection(&undec))
            .next()
        {
            return Err(Error::OverlappingLabelling(a.clone()));
        }
        Ok(Labelling { inn, out, undec })
    }

    pub(crate) fn from_disjoint(inn: AtomSet, out: AtomSet, undec: AtomSet) -> Self {
        debug_assert!(inn.is_disjoint(&out) && inn.is_disjoint(&undec) && out.is_disjoint(&undec));
        Labelling { inn, out, undec }
    }

    pub fn from_map(map: &BTreeMap<Atom, Label>) -> Self {
        let mut l = Labelling::default();
        for (a, label) in map {
            l.part_mut(*label).insert(a.clone());
        }
        l
    }

    pub fn all_undec(arguments: &AtomSet) -> Self {
        Labelling::from_disjoint(AtomSet::new(), AtomSet::new(), arguments.clone())
    }

    fn part_mut(&mut self, label: Label) -> &mut AtomSet {
        match label {
            Label::In => &mut self.inn,
            Label::Out => &mut self.out,
            Label::Undec => &mut self.undec,
        }
    }

    pub fn in_set(&self) -> &AtomSet {
        &self.inn
    }

    pub fn out_set(&self) -> &AtomSet {
        &self.out
    }

    pub fn undec_set(&self) -> &AtomSet {
        &self.undec
    }

    pub fn get(&self, a: &Atom) -> Option<Label> {
        if self.inn.contains(a) {
            Some(Label::In)
        } else if self.out.contains(a) {
            Some(Label::Out)
        } else if self.undec.contains(a) {
            Some(Label::Undec)
        } else {
            None
        }
    }

    pub fn domain(&self) -> AtomSet {
        self.inn.iter().chain(&self.out).chain(&self.undec).cloned().collect()
    }

    pub fn to_map(&self) -> BTreeMap<Atom, Label> {
        let mut m = BTreeMap::new();
        for (set, label) in [
            (&self.inn, Label::In),
            (&self.out, Label::Out),
            (&self.undec, Label::Undec),
        ] {
            for a in set {
                m.insert(a.clone(), label);
            }
        }
        m
    }

    fn check_domain(&self, arguments: &AtomSet) -> Result<()> {
        if self.inn.len() + self.out.len() + self.undec.len() == arguments.len() && self.domain() == *arguments {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "in={} out={} undec={}",
            braced(&self.inn),
            braced(&self.out),
            braced(&self.undec)
        )
    }
}

impl fmt::Debug for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn admissible_under<'a, I>(attacks: I, arguments: &AtomSet, l: &Labelling) -> bool
where
    I: Iterator<Item = (&'a AtomSet, &'a Atom)> + Clone,
{
    arguments.iter().all(|a| {
        let mut att = attacks.clone().filter(|(_, t)| *t == a).map(|(s, _)| s);
        match l.get(a) {
            Some(Label::In) => att.all(|b| b.iter().any(|x| l.out.contains(x))),
            Some(Label::Out) => att.any(|b| b.is_subset(&l.inn)),
            _ => true,
        }
    })
}

fn complete_under<'a, I>(attacks: I, arguments: &AtomSet, l: &Labelling) -> bool
where
    I: Iterator<Item = (&'a AtomSet, &'a Atom)> + Clone,
{
    admissible_under(attacks.clone(), arguments, l)
        && l.undec.iter().all(|a| {
            let att = attacks.clone().filter(|(_, t)| *t == a).map(|(s, _)| s);
            att.clone().any(|b| b.is_disjoint(&l.out)) && att.clone().all(|b| !b.is_subset(&l.inn))
        })
}

pub fn is_admissible(setaf: &Setaf, l: &Labelling) -> Result<bool> {
    l.check_domain(&setaf.arguments)?;
    let attacks = setaf.attacks.iter().map(|a| (&a.source, &a.target));
    Ok(admissible_under(attacks, &setaf.arguments, l))
}

pub fn is_complete(setaf: &Setaf, l: &Labelling) -> Result<bool> {
    l.check_domain(&setaf.arguments)?;
    let attacks = setaf.attacks.iter().map(|a| (&a.source, &a.target));
    Ok(complete_under(attacks, &setaf.arguments, l))
}

/// Completeness evaluated against an arbitrary attack list, minimal or not.
pub fn is_complete_for_attacks(arguments: &AtomSet, attacks: &[Attack], l: &Labelling) -> Result<bool> {
    l.check_domain(arguments)?;
    let attacks = attacks.iter().map(|a| (&a.source, &a.target));
    Ok(complete_under(attacks, arguments, l))
}

/// Every labelling of `arguments`, in no particular order.
pub fn all_labellings(arguments: &AtomSet, limits: &Limits) -> Result<Vec<Labelling>> {
    check_cap("argument set", arguments.len(), limits)?;
    let index = AtomIndex::new(arguments);
    let full = index.full();
    let mut out = Vec::new();
    for i in submasks(full) {
        for o in submasks(full & !i) {
            out.push(Labelling::from_disjoint(
                index.set(i),
                index.set(o),
                index.set(full & !i & !o),
            ));
        }
    }
    Ok(out)
}

/// All complete labellings, canonically ordered.
///
/// A complete labelling is fixed by its `in` set: `out` must be exactly the
/// arguments with an attacking set inside `in`. So only the 2^n candidate
/// `in` sets are generated, each checked against the full definition.
pub fn complete_labellings(setaf: &Setaf, limits: &Limits) -> Result<Vec<Labelling>> {
    check_cap("argument set", setaf.arguments.len(), limits)?;
    let index = AtomIndex::new(&setaf.arguments);
    let full = index.full();
    let attacks: Vec<(Mask, usize)> = setaf
        .attacks
        .iter()
        .map(|a| (index.mask(&a.source), index.bit(&a.target).expect("validated")))
        .collect();
    let mut result = Vec::new();
    for inn in submasks(full) {
        let out = attacks
            .iter()
            .filter(|(s, _)| s & !inn == 0)
            .fold(0, |m, (_, t)| m | (1 << t));
        if out & inn != 0 {
            continue;
        }
        let undec = full & !inn & !out;
        if complete_masks(&attacks, index.len(), inn, out, undec) {
            result.push(Labelling::from_disjoint(
                index.set(inn),
                index.set(out),
                index.set(undec),
            ));
        }
    }
    result.sort();
    Ok(result)
}

fn complete_masks(attacks: &[(Mask, usize)], n: usize, inn: Mask, out: Mask, undec: Mask) -> bool {
    (0..n).all(|a| {
        let bit = 1 << a;
        let mut att = attacks.iter().filter(|(_, t)| *t == a).map(|(s, _)| *s);
        if inn & bit != 0 {
            att.all(|s| s & out != 0)
        } else if out & bit != 0 {
            att.any(|s| s & !inn == 0)
        } else {
            debug_assert!(undec & bit != 0);
            let att: Vec<Mask> = att.collect();
            att.iter().any(|s| s & out == 0) && att.iter().all(|s| s & !inn != 0)
        }
    })
}

pub fn grounded(setaf: &Setaf, limits: &Limits) -> Result<Labelling> {
    select_grounded(&complete_labellings(setaf, limits)?)
}

pub fn preferred(setaf: &Setaf, limits: &Limits) -> Result<Vec<Labelling>> {
    Ok(select_preferred(&complete_labellings(setaf, limits)?))
}

pub fn stable(setaf: &Setaf, limits: &Limits) -> Result<Vec<Labelling>> {
    Ok(select_stable(&complete_labellings(setaf, limits)?))
}

pub fn semi_stable(setaf: &Setaf, limits: &Limits) -> Result<Vec<Labelling>> {
    Ok(select_semi_stable(&complete_labellings(setaf, limits)?))
}

/// The unique complete labelling with ⊆-minimal `in`.
pub fn select_grounded(complete: &[Labelling]) -> Result<Labelling> {
    let minimal: Vec<&Labelling> = complete
        .iter()
        .filter(|l| !complete.iter().any(|o| o.inn != l.inn && o.inn.is_subset(&l.inn)))
        .collect();
    match minimal.as_slice() {
        [one] => Ok((*one).clone()),
        other => Err(Error::InternalInvariantViolation(format!(
            "expected exactly one in-minimal complete labelling, found {}",
            other.len()
        ))),
    }
}

pub fn select_preferred(complete: &[Labelling]) -> Vec<Labelling> {
    complete
        .iter()
        .filter(|l| !complete.iter().any(|o| o.inn != l.inn && l.inn.is_subset(&o.inn)))
        .cloned()
        .collect()
}

pub fn select_stable(complete: &[Labelling]) -> Vec<Labelling> {
    complete.iter().filter(|l| l.undec.is_empty()).cloned().collect()
}

pub fn select_semi_stable(complete: &[Labelling]) -> Vec<Labelling> {
    complete
        .iter()
        .filter(|l| {
            !complete
                .iter()
                .any(|o| o.undec != l.undec && o.undec.is_subset(&l.undec))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;
    use alloc::vec;

    fn a(n: &str) -> Atom {
        Atom::new(n).unwrap()
    }

    fn set(names: &[&str]) -> AtomSet {
        atom_set(names.iter().copied()).unwrap()
    }

    fn att(src: &[&str], t: &str) -> Attack {
        Attack::new(set(src), a(t))
    }

    fn lab(i: &[&str], o: &[&str], u: &[&str]) -> Labelling {
        Labelling::new(set(i), set(o), set(u)).unwrap()
    }

    pub(crate) fn figure_one() -> Setaf {
        Setaf::new(
            set(&["a", "b", "c", "d", "e"]),
            vec![
                att(&["a"], "b"),
                att(&["b"], "a"),
                att(&["b"], "e"),
                att(&["c"], "c"),
                att(&["d"], "d"),
                att(&["e"], "e"),
                att(&["a", "d"], "c"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(Setaf::new(set(&["a"]), [att(&["a"], "a")]).is_ok());
        assert!(matches!(
            Setaf::new(set(&["a", "b", "c"]), [att(&["a"], "c"), att(&["a", "b"], "c")]),
            Err(Error::NonMinimalAttack { .. })
        ));
        assert_eq!(
            Setaf::new(set(&["a"]), [att(&["a"], "b")]),
            Err(Error::DanglingArgument(a("b")))
        );
        assert_eq!(
            Setaf::new(set(&["a"]), [att(&[], "a")]),
            Err(Error::EmptyAttackSource(a("a")))
        );
        figure_one();
    }

    #[test]
    fn minimization() {
        let s = Setaf::minimized(set(&["a", "b", "c"]), [att(&["a"], "c"), att(&["a", "b"], "c")]).unwrap();
        assert_eq!(s.attacks().iter().cloned().collect::<Vec<_>>(), vec![att(&["a"], "c")]);

        let s = Setaf::minimized(
            set(&["a", "b", "c"]),
            [att(&["a", "b"], "c"), att(&["c"], "c"), att(&["a"], "c")],
        )
        .unwrap();
        let expected: BTreeSet<Attack> = [att(&["a"], "c"), att(&["c"], "c")].into_iter().collect();
        assert_eq!(s.attacks(), &expected);

        let f = figure_one();
        let again = Setaf::minimized(f.arguments().clone(), f.attacks().iter().cloned()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn admissibility() {
        let f = figure_one();
        assert!(is_admissible(&f, &Labelling::all_undec(f.arguments())).unwrap());
        assert!(is_admissible(&f, &lab(&["a"], &["b"], &["c", "d", "e"])).unwrap());
        let selfish = Setaf::new(set(&["a"]), [att(&["a"], "a")]).unwrap();
        assert!(!is_admissible(&selfish, &lab(&["a"], &[], &[])).unwrap());
        assert_eq!(is_admissible(&selfish, &lab(&[], &[], &[])), Err(Error::DomainMismatch));
    }

    #[test]
    fn completeness() {
        assert!(is_complete(&Setaf::default(), &Labelling::default()).unwrap());
        let lone = Setaf::new(set(&["a"]), []).unwrap();
        assert!(!is_complete(&lone, &lab(&[], &[], &["a"])).unwrap());
        assert!(is_complete(&lone, &lab(&["a"], &[], &[])).unwrap());
    }

    #[test]
    fn figure_one_semantics() {
        let l = Limits::default();
        let f = figure_one();
        let l1 = lab(&[], &[], &["a", "b", "c", "d", "e"]);
        let l2 = lab(&["a"], &["b"], &["c", "d", "e"]);
        let l3 = lab(&["b"], &["a", "e"], &["c", "d"]);
        assert_eq!(
            complete_labellings(&f, &l).unwrap(),
            vec![l1.clone(), l2.clone(), l3.clone()]
        );
        assert_eq!(grounded(&f, &l).unwrap(), l1);
        assert_eq!(preferred(&f, &l).unwrap(), vec![l2, l3.clone()]);
        assert!(stable(&f, &l).unwrap().is_empty());
        assert_eq!(semi_stable(&f, &l).unwrap(), vec![l3]);
    }

    #[test]
    fn small_frameworks() {
        let l = Limits::default();
        assert_eq!(
            complete_labellings(&Setaf::default(), &l).unwrap(),
            vec![Labelling::default()]
        );

        let selfish = Setaf::new(set(&["a"]), [att(&["a"], "a")]).unwrap();
        assert_eq!(complete_labellings(&selfish, &l).unwrap(), vec![lab(&[], &[], &["a"])]);
        assert_eq!(semi_stable(&selfish, &l).unwrap(), vec![lab(&[], &[], &["a"])]);
        assert!(stable(&selfish, &l).unwrap().is_empty());

        let lone = Setaf::new(set(&["a"]), []).unwrap();
        assert_eq!(grounded(&lone, &l).unwrap(), lab(&["a"], &[], &[]));
        assert_eq!(stable(&lone, &l).unwrap(), vec![lab(&["a"], &[], &[])]);
    }

    #[test]
    fn labelling_views() {
        let l = lab(&["a"], &["b"], &["c"]);
        assert_eq!(l.get(&a("b")), Some(Label::Out));
        assert_eq!(l.get(&a("z")), None);
        assert_eq!(Labelling::from_map(&l.to_map()), l);
        assert!(Labelling::new(set(&["a"]), set(&["a"]), set(&[])).is_err());
        assert_eq!(alloc::string::ToString::to_string(&l), "in={a} out={b} undec={c}");
    }
}
