//! The five model semantics of a normal logic program.
//!
//! Partial stable models are found by testing every one of the 3^n
//! interpretations of the universe for `Ω(I) = I`; the other four
//! semantics are selections over that list.

use alloc::format;
use alloc::vec::Vec;

use crate::atom::AtomSet;
use crate::bits::{submasks, AtomIndex, Mask};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::lp::{Interpretation, Program};

/// Program compiled to bitmasks over its universe.
pub(crate) struct CompiledProgram {
    pub(crate) index: AtomIndex,
    rules: Vec<(Mask, Mask, Mask)>,
}

impl CompiledProgram {
    pub(crate) fn new(program: &Program, limits: &Limits) -> Result<Self> {
        check_cap("universe", program.universe().len(), limits)?;
        let index = AtomIndex::new(program.universe());
        let rules = program
            .rules()
            .iter()
            .map(|r| {
                (
                    index.mask([r.head()]),
                    index.mask(r.body_pos()),
                    index.mask(r.body_neg()),
                )
            })
            .collect();
        Ok(CompiledProgram { index, rules })
    }

    /// Ω on masks: least model of the reduct w.r.t. `<t, f>`.
    pub(crate) fn omega(&self, t: Mask, f: Mask) -> (Mask, Mask) {
        let full = self.index.full();
        let (mut lt, mut lf) = (0, full);
        loop {
            let mut nt = 0;
            let mut not_false = 0;
            for &(head, pos, neg) in &self.rules {
                if neg & t != 0 {
                    continue;
                }
                let has_undefined = neg & !f != 0;
                if !has_undefined && pos & !lt == 0 {
                    nt |= head;
                }
                if pos & lf == 0 {
                    not_false |= head;
                }
            }
            let nf = full & !not_false;
            if (nt, nf) == (lt, lf) {
                return (lt, lf);
            }
            lt = nt;
            lf = nf;
        }
    }

    pub(crate) fn psm_masks(&self) -> Vec<(Mask, Mask)> {
        let full = self.index.full();
        let mut out = Vec::new();
        for t in submasks(full) {
            for f in submasks(full & !t) {
                if self.omega(t, f) == (t, f) {
                    out.push((t, f));
                }
            }
        }
        out
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, limits: &Limits) -> Result<()> {
    let cap = limits.atom_cap();
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// All partial stable models, canonically ordered.
pub fn partial_stable_models(program: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    let compiled = CompiledProgram::new(program, limits)?;
    let mut models: Vec<Interpretation> = compiled
        .psm_masks()
        .into_iter()
        .map(|(t, f)| Interpretation::from_disjoint(compiled.index.set(t), compiled.index.set(f)))
        .collect();
    models.sort();
    Ok(models)
}

pub fn is_partial_stable(program: &Program, interp: &Interpretation) -> bool {
    crate::lp::omega(program, interp) == *interp
}

pub fn well_founded_model(program: &Program, limits: &Limits) -> Result<Interpretation> {
    select_well_founded(&partial_stable_models(program, limits)?)
}

pub fn regular_models(program: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    Ok(select_regular(&partial_stable_models(program, limits)?))
}

pub fn stable_models(program: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    Ok(select_stable(
        &partial_stable_models(program, limits)?,
        program.universe(),
    ))
}

pub fn l_stable_models(program: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    Ok(select_l_stable(&partial_stable_models(program, limits)?))
}

/// The unique PSM whose `T` is ⊆-minimal.
pub fn select_well_founded(psms: &[Interpretation]) -> Result<Interpretation> {
    let minimal = minimal_by(psms, |m| m.true_atoms());
    match minimal.as_slice() {
        [one] => Ok(one.clone()),
        other => Err(Error::InternalInvariantViolation(format!(
            "expected exactly one T-minimal partial stable model, found {}",
            other.len()
        ))),
    }
}

/// PSMs whose `T` is ⊆-maximal.
pub fn select_regular(psms: &[Interpretation]) -> Vec<Interpretation> {
    maximal_by(psms, |m| m.true_atoms().clone())
}

/// PSMs that leave nothing undefined.
pub fn select_stable(psms: &[Interpretation], universe: &AtomSet) -> Vec<Interpretation> {
    psms.iter()
        .filter(|m| m.undefined(universe).is_empty())
        .cloned()
        .collect()
}

/// PSMs whose `T ∪ F` is ⊆-maximal.
pub fn select_l_stable(psms: &[Interpretation]) -> Vec<Interpretation> {
    maximal_by(psms, Interpretation::decided)
}

fn minimal_by<'a, F>(items: &'a [Interpretation], key: F) -> Vec<Interpretation>
where
    F: Fn(&'a Interpretation) -> &'a AtomSet,
{
    items
        .iter()
        .filter(|m| !items.iter().any(|o| key(o) != key(m) && key(o).is_subset(key(m))))
        .cloned()
        .collect()
}

fn maximal_by<F>(items: &[Interpretation], key: F) -> Vec<Interpretation>
where
    F: Fn(&Interpretation) -> AtomSet,
{
    let keys: Vec<AtomSet> = items.iter().map(&key).collect();
    items
        .iter()
        .zip(&keys)
        .filter(|(_, k)| !keys.iter().any(|o| o != *k && k.is_subset(o)))
        .map(|(m, _)| m.clone())
        .collect()
}
