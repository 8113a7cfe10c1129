//! Labelling ↔ interpretation conversions and the side-by-side comparison
//! of a program's models with its SETAF's labellings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::atom::AtomSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{describe, Interpretation, Program};
use crate::semantics::{self, partial_stable_models};
use crate::setaf::{self, complete_labellings, Labelling, Setaf};
use crate::translate::nlp_to_setaf;

/// Conversions for a program and its associated SETAF. Atoms of the universe
/// that are not arguments are read as false.
#[derive(Debug, Clone)]
pub struct ProgramMapping {
    universe: AtomSet,
    arguments: AtomSet,
}

impl ProgramMapping {
    pub fn new(program: &Program, setaf: &Setaf) -> Self {
        ProgramMapping {
            universe: program.universe().clone(),
            arguments: setaf.arguments().clone(),
        }
    }

    pub fn from_sets(universe: AtomSet, arguments: AtomSet) -> Self {
        ProgramMapping { universe, arguments }
    }

    pub fn universe(&self) -> &AtomSet {
        &self.universe
    }

    pub fn arguments(&self) -> &AtomSet {
        &self.arguments
    }

    /// Labelling to interpretation: `in` true, `out` and non-arguments false.
    pub fn l2i(&self, l: &Labelling) -> Result<Interpretation> {
        if l.domain() != self.arguments {
            return Err(Error::DomainMismatch);
        }
        let t = l.in_set().clone();
        let f = self
            .universe
            .iter()
            .filter(|a| !self.arguments.contains(*a) || l.out_set().contains(*a))
            .cloned()
            .collect();
        Ok(Interpretation::from_disjoint(t, f))
    }

    /// Interpretation to labelling, restricted to the arguments.
    pub fn i2l(&self, i: &Interpretation) -> Labelling {
        let mut inn = AtomSet::new();
        let mut out = AtomSet::new();
        let mut undec = AtomSet::new();
        for a in &self.arguments {
            if i.true_atoms().contains(a) {
                inn.insert(a.clone());
            } else if i.false_atoms().contains(a) {
                out.insert(a.clone());
            } else {
                undec.insert(a.clone());
            }
        }
        Labelling::from_disjoint(inn, out, undec)
    }
}

/// `<in(L), out(L)>`.
pub fn l2i_af(l: &Labelling) -> Interpretation {
    Interpretation::from_disjoint(l.in_set().clone(), l.out_set().clone())
}

/// `(T, F, arguments \ (T ∪ F))`.
pub fn i2l_af(i: &Interpretation, arguments: &AtomSet) -> Result<Labelling> {
    i.check_over(arguments).map_err(|_| Error::DomainMismatch)?;
    Ok(Labelling::from_disjoint(
        i.true_atoms().clone(),
        i.false_atoms().clone(),
        i.undefined(arguments),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticsPair {
    CompletePartialStable,
    GroundedWellFounded,
    PreferredRegular,
    StableStable,
    SemiStableLStable,
}

impl SemanticsPair {
    pub const ALL: [SemanticsPair; 5] = [
        SemanticsPair::CompletePartialStable,
        SemanticsPair::GroundedWellFounded,
        SemanticsPair::PreferredRegular,
        SemanticsPair::StableStable,
        SemanticsPair::SemiStableLStable,
    ];

    pub fn model_name(self) -> &'static str {
        match self {
            SemanticsPair::CompletePartialStable => "partial stable",
            SemanticsPair::GroundedWellFounded => "well-founded",
            SemanticsPair::PreferredRegular => "regular",
            SemanticsPair::StableStable => "stable",
            SemanticsPair::SemiStableLStable => "L-stable",
        }
    }

    pub fn labelling_name(self) -> &'static str {
        match self {
            SemanticsPair::CompletePartialStable => "complete",
            SemanticsPair::GroundedWellFounded => "grounded",
            SemanticsPair::PreferredRegular => "preferred",
            SemanticsPair::StableStable => "stable",
            SemanticsPair::SemiStableLStable => "semi-stable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub pair: SemanticsPair,
    pub models: Vec<Interpretation>,
    pub labellings: Vec<Labelling>,
    /// First mismatch found, if any.
    pub counterexample: Option<String>,
}

impl EquivalenceRow {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub program: Program,
    pub setaf: Setaf,
    pub rows: Vec<EquivalenceRow>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(EquivalenceRow::holds)
    }
}

/// Computes the five model semantics of `program` and the five labelling
/// semantics of its SETAF, and checks that the mappings carry each side
/// onto the other exactly.
pub fn check_equivalence(program: &Program, limits: &Limits) -> Result<EquivalenceReport> {
    let af = nlp_to_setaf(program, limits)?;
    let mapping = ProgramMapping::new(program, &af);
    let psms = partial_stable_models(program, limits)?;
    let complete = complete_labellings(&af, limits)?;
    let mut rows = Vec::new();
    for pair in SemanticsPair::ALL {
        let (models, labellings) = match pair {
            SemanticsPair::CompletePartialStable => (psms.clone(), complete.clone()),
            SemanticsPair::GroundedWellFounded => (
                Vec::from([semantics::select_well_founded(&psms)?]),
                Vec::from([setaf::select_grounded(&complete)?]),
            ),
            SemanticsPair::PreferredRegular => (semantics::select_regular(&psms), setaf::select_preferred(&complete)),
            SemanticsPair::StableStable => (
                semantics::select_stable(&psms, program.universe()),
                setaf::select_stable(&complete),
            ),
            SemanticsPair::SemiStableLStable => {
                (semantics::select_l_stable(&psms), setaf::select_semi_stable(&complete))
            }
        };
        let counterexample = compare(&mapping, &models, &labellings)?;
        rows.push(EquivalenceRow {
            pair,
            models,
            labellings,
            counterexample,
        });
    }
    Ok(EquivalenceReport {
        program: program.clone(),
        setaf: af,
        rows,
    })
}

fn compare(mapping: &ProgramMapping, models: &[Interpretation], labellings: &[Labelling]) -> Result<Option<String>> {
    let model_set: BTreeSet<&Interpretation> = models.iter().collect();
    let label_set: BTreeSet<&Labelling> = labellings.iter().collect();
    for l in labellings {
        let i = mapping.l2i(l)?;
        if !model_set.contains(&i) {
            return Ok(Some(format!(
                "labelling {l} maps to {} which is not a model",
                describe(&i, mapping.universe())
            )));
        }
    }
    for m in models {
        let l = mapping.i2l(m);
        if !label_set.contains(&l) {
            return Ok(Some(format!(
                "model {} maps to {l} which is not a labelling",
                describe(m, mapping.universe())
            )));
        }
    }
    Ok(None)
}
