//! Seeded instance generators and the catalogue of named oracle suites.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setaflp_core::lp::{describe, least_model, omega, reduct};
use setaflp_core::mappings::{i2l_af, l2i_af, ProgramMapping};
use setaflp_core::semantics::{
    is_partial_stable, partial_stable_models, select_l_stable, select_regular, select_stable, select_well_founded,
};
use setaflp_core::setaf::{
    all_labellings, complete_labellings, is_complete, is_complete_for_attacks, select_grounded, select_preferred,
    select_semi_stable, select_stable as select_stable_labellings,
};
use setaflp_core::transform::{applicable_steps, apply, fair_normalize, is_irreducible, Strategy, TransformStep};
use setaflp_core::translate::{
    is_rfalp, minimal_members, nlp_to_setaf, rfalp_violations, setaf_from_vul, setaf_to_nlp, statements, vul_family,
    VulFamily,
};
use setaflp_core::{Atom, AtomSet, Attack, Error, Interpretation, Labelling, Limits, Program, Rule, Setaf};

use crate::textio::{print_program, print_setaf};

/// Bounds for random instances. The seed fully determines the output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub atom_count: usize,
    /// Rules for programs, raw attacks for SETAFs.
    pub rule_count: usize,
    pub max_body_pos: usize,
    /// Also the largest attack source for SETAFs.
    pub max_body_neg: usize,
    pub fact_probability: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            atom_count: 5,
            rule_count: 6,
            max_body_pos: 2,
            max_body_neg: 2,
            fact_probability: 0.3,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn new(atom_count: usize, rule_count: usize, seed: u64) -> Self {
        GenConfig {
            atom_count,
            rule_count,
            seed,
            ..GenConfig::default()
        }
    }
}

/// `a`..`z`, then `a26`, `a27`, ...
pub fn atom_pool(n: usize) -> Vec<Atom> {
    (0..n)
        .map(|i| {
            let name = if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("a{i}")
            };
            Atom::new(&name).expect("generated names are valid")
        })
        .collect()
}

fn pick(rng: &mut ChaCha8Rng, pool: &[Atom], max: usize) -> Vec<Atom> {
    let k = rng.random_range(0..=max.min(pool.len()));
    sample(rng, pool.len(), k)
        .into_iter()
        .map(|i| pool[i].clone())
        .collect()
}

/// Random program over the pool of `atom_count` atoms, which is also its
/// universe.
pub fn gen_program(cfg: &GenConfig) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = atom_pool(cfg.atom_count);
    if pool.is_empty() {
        return Program::default();
    }
    let rules: Vec<Rule> = (0..cfg.rule_count)
        .map(|_| {
            let head = pool[rng.random_range(0..pool.len())].clone();
            if rng.random_bool(cfg.fact_probability) {
                return Rule::fact(head);
            }
            let pos = pick(&mut rng, &pool, cfg.max_body_pos);
            let neg = pick(&mut rng, &pool, cfg.max_body_neg);
            Rule::new(head, pos, neg)
        })
        .collect();
    Program::with_universe(rules, pool.into_iter().collect())
}

/// Random SETAF: `rule_count` raw attacks with sources of 1 to
/// `max_body_neg` arguments, then minimized.
pub fn gen_setaf(cfg: &GenConfig) -> Setaf {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = atom_pool(cfg.atom_count);
    if pool.is_empty() {
        return Setaf::default();
    }
    let max_source = cfg.max_body_neg.clamp(1, pool.len());
    let attacks: Vec<Attack> = (0..cfg.rule_count)
        .map(|_| {
            let k = rng.random_range(1..=max_source);
            let source = sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i].clone());
            let target = pool[rng.random_range(0..pool.len())].clone();
            Attack::new(source, target)
        })
        .collect();
    Setaf::minimized(pool.into_iter().collect(), attacks).expect("generated attacks stay in the pool")
}

/// A program or a SETAF. Program suites run on a SETAF's associated program
/// and SETAF suites on a program's associated SETAF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Program(Program),
    Setaf(Setaf),
}

impl Instance {
    fn program(&self) -> Program {
        match self {
            Instance::Program(p) => p.clone(),
            Instance::Setaf(s) => setaf_to_nlp(s),
        }
    }

    fn setaf(&self, limits: &Limits) -> Result<Setaf, Error> {
        match self {
            Instance::Program(p) => nlp_to_setaf(p, limits),
            Instance::Setaf(s) => Ok(s.clone()),
        }
    }

    /// Canonical text of the instance, for counterexample dumps.
    pub fn dump(&self) -> String {
        match self {
            Instance::Program(p) => print_program(p),
            Instance::Setaf(s) => print_setaf(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(why) => write!(f, "FAIL: {why}"),
            Verdict::NotApplicable(why) => write!(f, "n/a: {why}"),
        }
    }
}

/// Suite families selectable from the `check` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Inverse,
    Equivalence,
    Confluence,
    Invariance,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Inverse => "inverse",
            Group::Equivalence => "equivalence",
            Group::Confluence => "confluence",
            Group::Invariance => "invariance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Program,
    Setaf,
}

type Check = fn(&Instance, &Limits) -> Result<Verdict, Error>;

#[derive(Clone, Copy)]
pub struct Suite {
    pub name: &'static str,
    pub group: Group,
    pub side: Side,
    pub summary: &'static str,
    check: Check,
}

impl fmt::Debug for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Suite").field("name", &self.name).finish()
    }
}

impl Suite {
    pub fn run(&self, instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
        (self.check)(instance, limits)
    }
}

macro_rules! suite {
    ($name:literal, $group:ident, $side:ident, $summary:literal, $check:path) => {
        Suite {
            name: $name,
            group: Group::$group,
            side: Side::$side,
            summary: $summary,
            check: $check,
        }
    };
}

pub const SUITES: &[Suite] = &[
    suite!(
        "label-interp-inverse",
        Inverse,
        Program,
        "i2l(l2i(L)) = L for every labelling of the program's SETAF",
        label_interp_inverse
    ),
    suite!(
        "psm-interp-inverse",
        Inverse,
        Program,
        "l2i(i2l(M)) = M for every partial stable model",
        psm_interp_inverse
    ),
    suite!(
        "af-label-interp-inverse",
        Inverse,
        Setaf,
        "SETAF-side mappings are mutual inverses",
        af_label_interp_inverse
    ),
    suite!(
        "setaf-roundtrip",
        Inverse,
        Setaf,
        "SETAF -> program -> SETAF is the identity",
        setaf_roundtrip
    ),
    suite!(
        "rfalp-roundtrip",
        Inverse,
        Program,
        "RFALP -> SETAF -> program is the identity",
        rfalp_roundtrip
    ),
    suite!(
        "setaf-program-rfalp",
        Inverse,
        Setaf,
        "the program of a SETAF is an RFALP",
        setaf_program_rfalp
    ),
    suite!(
        "complete-psm",
        Equivalence,
        Program,
        "complete labellings and partial stable models correspond",
        complete_psm
    ),
    suite!(
        "grounded-wellfounded",
        Equivalence,
        Program,
        "grounded labelling maps to the well-founded model",
        grounded_wellfounded
    ),
    suite!(
        "preferred-regular",
        Equivalence,
        Program,
        "preferred labellings map to regular models",
        preferred_regular
    ),
    suite!(
        "stable-stable",
        Equivalence,
        Program,
        "stable labellings map to stable models",
        stable_stable
    ),
    suite!(
        "semistable-lstable",
        Equivalence,
        Program,
        "semi-stable labellings map to L-stable models",
        semistable_lstable
    ),
    suite!(
        "model-to-labelling",
        Equivalence,
        Program,
        "each model semantics maps onto its labelling semantics",
        model_to_labelling
    ),
    suite!(
        "statement-reduct",
        Equivalence,
        Program,
        "statements decide truth in the least model of every reduct",
        statement_reduct
    ),
    suite!(
        "lost-atoms",
        Equivalence,
        Program,
        "atoms without statements are false in every reduct's least model",
        lost_atoms
    ),
    suite!(
        "antichain-vul",
        Equivalence,
        Program,
        "minimal vulnerability sets alone give the same attacks",
        antichain_vul
    ),
    suite!(
        "af-complete-psm",
        Equivalence,
        Setaf,
        "complete labellings are the partial stable models of the SETAF's program",
        af_complete_psm
    ),
    suite!(
        "af-labelling-to-model",
        Equivalence,
        Setaf,
        "labelling semantics map to model semantics of the SETAF's program",
        af_labelling_to_model
    ),
    suite!(
        "af-model-to-labelling",
        Equivalence,
        Setaf,
        "model semantics of the SETAF's program map to labelling semantics",
        af_model_to_labelling
    ),
    suite!(
        "minimality-irrelevant",
        Equivalence,
        Setaf,
        "adding non-minimal attacks changes no complete labelling",
        minimality_irrelevant
    ),
    suite!(
        "fair-termination",
        Confluence,
        Program,
        "fair normalisation terminates in an irreducible program",
        fair_termination
    ),
    suite!(
        "normal-form-rfalp",
        Confluence,
        Program,
        "the normal form is an RFALP",
        normal_form_rfalp
    ),
    suite!(
        "rfalp-irreducible",
        Confluence,
        Program,
        "RFALPs admit no transformation step",
        rfalp_irreducible
    ),
    suite!(
        "confluence",
        Confluence,
        Program,
        "both strategies reach the same normal form",
        confluence
    ),
    suite!(
        "normal-form-composite",
        Confluence,
        Program,
        "the normal form equals the program of the program's SETAF",
        normal_form_composite
    ),
    suite!(
        "unfold-preserves-psm",
        Invariance,
        Program,
        "unfolding keeps partial stable models",
        unfold_preserves
    ),
    suite!(
        "tautology-preserves-psm",
        Invariance,
        Program,
        "tautology elimination keeps partial stable models",
        tautology_preserves
    ),
    suite!(
        "positive-reduction-preserves-psm",
        Invariance,
        Program,
        "positive reduction keeps partial stable models",
        positive_reduction_preserves
    ),
    suite!(
        "nonminimal-preserves-psm",
        Invariance,
        Program,
        "non-minimal rule elimination keeps partial stable models",
        nonminimal_preserves
    ),
    suite!(
        "step-setaf-invariance",
        Invariance,
        Program,
        "no step changes the associated SETAF",
        step_setaf_invariance
    ),
    suite!(
        "normalize-preserves-semantics",
        Invariance,
        Program,
        "the normal form has the same five model semantics",
        normalize_preserves_semantics
    ),
    suite!(
        "positive-least-model",
        Invariance,
        Program,
        "steps on positive programs keep the least model",
        positive_least_model
    ),
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn suites_in(group: Group) -> impl Iterator<Item = &'static Suite> {
    SUITES.iter().filter(move |s| s.group == group)
}

/// Runs the named suite on one instance.
pub fn run_suite(name: &str, instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    match suite(name) {
        Some(s) => s.run(instance, limits),
        None => Err(Error::InternalInvariantViolation(format!("unknown suite `{name}`"))),
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Verdict::Fail(format!($($msg)+)));
        }
    };
}

struct Side1 {
    program: Program,
    setaf: Setaf,
    mapping: ProgramMapping,
    psms: Vec<Interpretation>,
    complete: Vec<Labelling>,
}

fn program_side(instance: &Instance, limits: &Limits) -> Result<Side1, Error> {
    let program = instance.program();
    let setaf = nlp_to_setaf(&program, limits)?;
    let mapping = ProgramMapping::new(&program, &setaf);
    let psms = partial_stable_models(&program, limits)?;
    let complete = complete_labellings(&setaf, limits)?;
    Ok(Side1 {
        program,
        setaf,
        mapping,
        psms,
        complete,
    })
}

fn label_interp_inverse(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = program_side(instance, limits)?;
    for l in all_labellings(s.setaf.arguments(), limits)? {
        let back = s.mapping.i2l(&s.mapping.l2i(&l)?);
        ensure!(back == l, "labelling {l} comes back as {back}");
    }
    Ok(Verdict::Pass)
}

fn psm_interp_inverse(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = program_side(instance, limits)?;
    let u = s.program.universe();
    for m in &s.psms {
        let back = s.mapping.l2i(&s.mapping.i2l(m))?;
        ensure!(
            &back == m,
            "model {} comes back as {}",
            describe(m, u),
            describe(&back, u)
        );
    }
    Ok(Verdict::Pass)
}

fn complete_psm(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = program_side(instance, limits)?;
    let u = s.program.universe();
    for l in all_labellings(s.setaf.arguments(), limits)? {
        let i = s.mapping.l2i(&l)?;
        let complete = is_complete(&s.setaf, &l)?;
        let psm = is_partial_stable(&s.program, &i);
        ensure!(
            complete == psm,
            "labelling {l} complete={complete} but {} partial stable={psm}",
            describe(&i, u)
        );
    }
    let images: BTreeSet<Labelling> = s.psms.iter().map(|m| s.mapping.i2l(m)).collect();
    for m in &s.psms {
        let l = s.mapping.i2l(m);
        ensure!(
            is_complete(&s.setaf, &l)?,
            "model {} maps to {l}, not complete",
            describe(m, u)
        );
    }
    for l in &s.complete {
        ensure!(
            images.contains(l),
            "complete labelling {l} is the image of no partial stable model"
        );
    }
    Ok(Verdict::Pass)
}

#[derive(Clone, Copy)]
enum Sem {
    Grounded,
    Preferred,
    Stable,
    SemiStable,
}

impl Sem {
    const ALL: [Sem; 4] = [Sem::Grounded, Sem::Preferred, Sem::Stable, Sem::SemiStable];

    fn labellings(self, complete: &[Labelling]) -> Result<Vec<Labelling>, Error> {
        Ok(match self {
            Sem::Grounded => vec![select_grounded(complete)?],
            Sem::Preferred => select_preferred(complete),
            Sem::Stable => select_stable_labellings(complete),
            Sem::SemiStable => select_semi_stable(complete),
        })
    }

    fn models(self, psms: &[Interpretation], universe: &AtomSet) -> Result<Vec<Interpretation>, Error> {
        Ok(match self {
            Sem::Grounded => vec![select_well_founded(psms)?],
            Sem::Preferred => select_regular(psms),
            Sem::Stable => select_stable(psms, universe),
            Sem::SemiStable => select_l_stable(psms),
        })
    }

    fn names(self) -> (&'static str, &'static str) {
        match self {
            Sem::Grounded => ("grounded", "well-founded"),
            Sem::Preferred => ("preferred", "regular"),
            Sem::Stable => ("stable", "stable"),
            Sem::SemiStable => ("semi-stable", "L-stable"),
        }
    }
}

/// `{l2i(L) | L in sem}` equals the matching model set.
fn labelling_to_model(instance: &Instance, limits: &Limits, sem: Sem) -> Result<Verdict, Error> {
    let s = program_side(instance, limits)?;
    let u = s.program.universe();
    let labellings = sem.labellings(&s.complete)?;
    let models: BTreeSet<Interpretation> = sem.models(&s.psms, u)?.into_iter().collect();
    let (lname, mname) = sem.names();
    let mut images = BTreeSet::new();
    for l in &labellings {
        let i = s.mapping.l2i(l)?;
        ensure!(
            models.contains(&i),
            "{lname} labelling {l} maps to {}, not {mname}",
            describe(&i, u)
        );
        images.insert(i);
    }
    for m in &models {
        ensure!(
            images.contains(m),
            "{mname} model {} is the image of no {lname} labelling",
            describe(m, u)
        );
    }
    Ok(Verdict::Pass)
}

fn grounded_wellfounded(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    labelling_to_model(i, l, Sem::Grounded)
}

fn preferred_regular(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    labelling_to_model(i, l, Sem::Preferred)
}

fn stable_stable(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    labelling_to_model(i, l, Sem::Stable)
}

fn semistable_lstable(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    labelling_to_model(i, l, Sem::SemiStable)
}

fn model_to_labelling(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = program_side(instance, limits)?;
    let u = s.program.universe();
    for sem in Sem::ALL {
        let (lname, mname) = sem.names();
        let labellings: BTreeSet<Labelling> = sem.labellings(&s.complete)?.into_iter().collect();
        let images: BTreeSet<Labelling> = sem.models(&s.psms, u)?.iter().map(|m| s.mapping.i2l(m)).collect();
        for m in sem.models(&s.psms, u)? {
            let l = s.mapping.i2l(&m);
            ensure!(
                labellings.contains(&l),
                "{mname} model {} maps to {l}, not {lname}",
                describe(&m, u)
            );
        }
        for l in &labellings {
            ensure!(
                images.contains(l),
                "{lname} labelling {l} is the image of no {mname} model"
            );
        }
    }
    Ok(Verdict::Pass)
}

fn interpretations(universe: &AtomSet, limits: &Limits) -> Result<Vec<Interpretation>, Error> {
    // a labelling over the same atoms is the same three-way split
    Ok(all_labellings(universe, limits)?.iter().map(l2i_af).collect())
}

fn statement_reduct(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let u = p.universe();
    let stmts = statements(&p, limits)?;
    for i in interpretations(u, limits)? {
        let o = omega(&p, &i);
        for c in u {
            let of_c: Vec<_> = stmts.iter().filter(|s| &s.conc == c).collect();
            let derivable = of_c.iter().any(|s| s.vul.is_subset(i.false_atoms()));
            let blocked = of_c.iter().all(|s| !s.vul.is_disjoint(i.true_atoms()));
            ensure!(
                o.true_atoms().contains(c) == derivable,
                "under {}, `{c}` true in the reduct's least model is {} but a statement with false vulnerabilities exists is {derivable}",
                describe(&i, u),
                o.true_atoms().contains(c)
            );
            ensure!(
                o.false_atoms().contains(c) == blocked,
                "under {}, `{c}` false in the reduct's least model is {} but every statement is blocked is {blocked}",
                describe(&i, u),
                o.false_atoms().contains(c)
            );
        }
    }
    Ok(Verdict::Pass)
}

fn lost_atoms(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let u = p.universe();
    let args = nlp_to_setaf(&p, limits)?.arguments().clone();
    let lost: AtomSet = u.difference(&args).cloned().collect();
    if lost.is_empty() {
        return Ok(Verdict::NotApplicable(String::from("every atom is an argument")));
    }
    for i in interpretations(u, limits)? {
        let o = omega(&p, &i);
        ensure!(
            lost.is_subset(o.false_atoms()),
            "under {}, some of {} is not false",
            describe(&i, u),
            crate::textio::brace(&lost)
        );
    }
    Ok(Verdict::Pass)
}

fn antichain_vul(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let vul = vul_family(&instance.program(), limits)?;
    let reduced = VulFamily(vul.0.iter().map(|(a, f)| (a.clone(), minimal_members(f))).collect());
    let full = setaf_from_vul(&vul);
    let min = setaf_from_vul(&reduced);
    ensure!(
        full == min,
        "attacks differ:\n{}vs\n{}",
        print_setaf(&full),
        print_setaf(&min)
    );
    Ok(Verdict::Pass)
}

fn af_label_interp_inverse(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = instance.setaf(limits)?;
    let args = s.arguments();
    for l in all_labellings(args, limits)? {
        let back = i2l_af(&l2i_af(&l), args)?;
        ensure!(back == l, "labelling {l} comes back as {back}");
        let i = l2i_af(&l);
        let again = l2i_af(&i2l_af(&i, args)?);
        ensure!(
            again == i,
            "interpretation {} comes back as {}",
            describe(&i, args),
            describe(&again, args)
        );
    }
    Ok(Verdict::Pass)
}

fn af_complete_psm(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = instance.setaf(limits)?;
    let p = setaf_to_nlp(&s);
    let args = s.arguments();
    for l in all_labellings(args, limits)? {
        let i = l2i_af(&l);
        let complete = is_complete(&s, &l)?;
        let psm = is_partial_stable(&p, &i);
        ensure!(
            complete == psm,
            "labelling {l} complete={complete} but its interpretation partial stable={psm}"
        );
        let back = i2l_af(&i, args)?;
        ensure!(
            psm == is_complete(&s, &back)?,
            "interpretation {} partial stable={psm} but {back} complete={}",
            describe(&i, args),
            !psm
        );
    }
    Ok(Verdict::Pass)
}

fn af_sides(
    instance: &Instance,
    limits: &Limits,
) -> Result<(Setaf, Program, Vec<Interpretation>, Vec<Labelling>), Error> {
    let s = instance.setaf(limits)?;
    let p = setaf_to_nlp(&s);
    let psms = partial_stable_models(&p, limits)?;
    let complete = complete_labellings(&s, limits)?;
    Ok((s, p, psms, complete))
}

fn af_labelling_to_model(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let (s, p, psms, complete) = af_sides(instance, limits)?;
    for sem in Sem::ALL {
        let (lname, mname) = sem.names();
        let images: BTreeSet<Interpretation> = sem.labellings(&complete)?.iter().map(l2i_af).collect();
        let models: BTreeSet<Interpretation> = sem.models(&psms, p.universe())?.into_iter().collect();
        ensure!(
            images == models,
            "{lname} labellings of\n{}map to {} interpretations, {mname} models number {}",
            print_setaf(&s),
            images.len(),
            models.len()
        );
    }
    Ok(Verdict::Pass)
}

fn af_model_to_labelling(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let (s, p, psms, complete) = af_sides(instance, limits)?;
    for sem in Sem::ALL {
        let (lname, mname) = sem.names();
        let labellings: BTreeSet<Labelling> = sem.labellings(&complete)?.into_iter().collect();
        let images = sem
            .models(&psms, p.universe())?
            .iter()
            .map(|m| i2l_af(m, s.arguments()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        ensure!(
            images == labellings,
            "{mname} models map to {} labellings, {lname} labellings number {}",
            images.len(),
            labellings.len()
        );
    }
    Ok(Verdict::Pass)
}

fn setaf_program_rfalp(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = setaf_to_nlp(&instance.setaf(limits)?);
    let violations = rfalp_violations(&p);
    ensure!(violations.is_empty(), "program is not an RFALP: {}", violations[0]);
    Ok(Verdict::Pass)
}

fn setaf_roundtrip(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = instance.setaf(limits)?;
    let back = nlp_to_setaf(&setaf_to_nlp(&s), limits)?;
    ensure!(back == s, "round trip gives\n{}", print_setaf(&back));
    Ok(Verdict::Pass)
}

fn rfalp_roundtrip(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    if let Some(v) = rfalp_violations(&p).first() {
        return Ok(Verdict::NotApplicable(format!("not an RFALP ({v})")));
    }
    let back = setaf_to_nlp(&nlp_to_setaf(&p, limits)?);
    ensure!(back.same_rules(&p), "round trip gives\n{}", print_program(&back));
    Ok(Verdict::Pass)
}

fn minimality_irrelevant(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let s = instance.setaf(limits)?;
    let mut raw: Vec<Attack> = s.attacks().iter().cloned().collect();
    for att in s.attacks() {
        for extra in s.arguments().difference(&att.source) {
            let mut source = att.source.clone();
            source.insert(extra.clone());
            raw.push(Attack::new(source, att.target.clone()));
        }
    }
    if raw.len() == s.attacks().len() {
        return Ok(Verdict::NotApplicable(String::from("no attack can be enlarged")));
    }
    let mut filtered: Vec<Labelling> = all_labellings(s.arguments(), limits)?
        .into_iter()
        .filter(|l| is_complete_for_attacks(s.arguments(), &raw, l).unwrap_or(false))
        .collect();
    filtered.sort();
    let complete = complete_labellings(&s, limits)?;
    ensure!(
        filtered == complete,
        "{} complete labellings with non-minimal attacks added, {} without",
        filtered.len(),
        complete.len()
    );
    Ok(Verdict::Pass)
}

/// Normal form, intermediate programs and steps of one strategy.
type Normalized = (Program, Vec<Program>, Vec<TransformStep>);

fn normalize_both(p: &Program, limits: &Limits) -> Result<[Normalized; 2], Error> {
    let mut out = Vec::new();
    for strategy in [Strategy::Lex, Strategy::ReverseLex] {
        let (q, trace) = fair_normalize(p, strategy, limits)?;
        let programs = trace.replay(p)?;
        let steps = trace.steps().cloned().collect();
        out.push((q, programs, steps));
    }
    Ok(out.try_into().expect("two strategies"))
}

fn fair_termination(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    for (strategy, (q, programs, _)) in ["lex", "revlex"].iter().zip(normalize_both(&p, limits)?) {
        ensure!(
            is_irreducible(&q),
            "{strategy} normal form is reducible:\n{}",
            print_program(&q)
        );
        ensure!(
            programs.last() == Some(&q),
            "{strategy} trace does not replay to its result"
        );
        ensure!(
            q.universe() == p.universe(),
            "{strategy} normal form changed the universe"
        );
    }
    Ok(Verdict::Pass)
}

fn normal_form_rfalp(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let (q, _) = fair_normalize(&instance.program(), Strategy::Lex, limits)?;
    let violations = rfalp_violations(&q);
    ensure!(
        violations.is_empty(),
        "normal form is not an RFALP ({}):\n{}",
        violations[0],
        print_program(&q)
    );
    Ok(Verdict::Pass)
}

fn rfalp_irreducible(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let (q, _) = fair_normalize(&p, Strategy::Lex, limits)?;
    for r in [&p, &q] {
        if is_rfalp(r) {
            let steps = applicable_steps(r);
            ensure!(
                steps.is_empty(),
                "RFALP admits step {}:\n{}",
                steps[0],
                print_program(r)
            );
        }
    }
    Ok(Verdict::Pass)
}

fn confluence(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let [(lex, ..), (rev, ..)] = normalize_both(&p, limits)?;
    ensure!(
        lex == rev,
        "lex gives\n{}revlex gives\n{}",
        print_program(&lex),
        print_program(&rev)
    );
    Ok(Verdict::Pass)
}

fn normal_form_composite(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let (q, _) = fair_normalize(&p, Strategy::Lex, limits)?;
    let composite = setaf_to_nlp(&nlp_to_setaf(&p, limits)?);
    ensure!(
        q.same_rules(&composite),
        "normal form\n{}differs from the SETAF's program\n{}",
        print_program(&q),
        print_program(&composite)
    );
    Ok(Verdict::Pass)
}

/// Every (program, step) pair to check: all steps applicable to the input,
/// plus each step taken along both normalisation traces.
fn step_pairs(p: &Program, limits: &Limits) -> Result<Vec<(Program, TransformStep)>, Error> {
    let mut pairs: Vec<(Program, TransformStep)> = applicable_steps(p).into_iter().map(|s| (p.clone(), s)).collect();
    for (_, programs, steps) in normalize_both(p, limits)? {
        pairs.extend(programs.into_iter().zip(steps));
    }
    Ok(pairs)
}

fn preserves_psm(instance: &Instance, limits: &Limits, kind: &str) -> Result<Verdict, Error> {
    let p = instance.program();
    let mut checked = 0;
    for (before, step) in step_pairs(&p, limits)? {
        if step.kind() != kind {
            continue;
        }
        checked += 1;
        let after = apply(&before, &step)?;
        let a = partial_stable_models(&before, limits)?;
        let b = partial_stable_models(&after, limits)?;
        ensure!(
            a == b,
            "step {step} changes the partial stable models of\n{}",
            print_program(&before)
        );
    }
    if checked == 0 {
        return Ok(Verdict::NotApplicable(format!("no {kind} step applies")));
    }
    Ok(Verdict::Pass)
}

fn unfold_preserves(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    preserves_psm(i, l, "unfold")
}

fn tautology_preserves(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    preserves_psm(i, l, "tautology")
}

fn positive_reduction_preserves(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    preserves_psm(i, l, "positive-reduction")
}

fn nonminimal_preserves(i: &Instance, l: &Limits) -> Result<Verdict, Error> {
    preserves_psm(i, l, "non-minimal")
}

fn step_setaf_invariance(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let pairs = step_pairs(&p, limits)?;
    if pairs.is_empty() {
        return Ok(Verdict::NotApplicable(String::from("no step applies")));
    }
    for (before, step) in pairs {
        let a = nlp_to_setaf(&before, limits)?;
        let b = nlp_to_setaf(&apply(&before, &step)?, limits)?;
        ensure!(a == b, "step {step} changes the SETAF of\n{}", print_program(&before));
    }
    Ok(Verdict::Pass)
}

fn normalize_preserves_semantics(instance: &Instance, limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let (q, _) = fair_normalize(&p, Strategy::Lex, limits)?;
    let a = partial_stable_models(&p, limits)?;
    let b = partial_stable_models(&q, limits)?;
    ensure!(
        a == b,
        "partial stable models differ from those of the normal form\n{}",
        print_program(&q)
    );
    let u = p.universe();
    for sem in Sem::ALL {
        ensure!(
            sem.models(&a, u)? == sem.models(&b, u)?,
            "{} models differ",
            sem.names().1
        );
    }
    Ok(Verdict::Pass)
}

fn positive_least_model(instance: &Instance, _limits: &Limits) -> Result<Verdict, Error> {
    let p = instance.program();
    let positive = Program::with_universe(
        p.rules()
            .iter()
            .map(|r| Rule::new(r.head().clone(), r.body_pos().iter().cloned(), [])),
        p.universe().clone(),
    );
    let empty = Interpretation::empty();
    let m = least_model(&reduct(&positive, &empty));
    let steps = applicable_steps(&positive);
    if steps.is_empty() {
        return Ok(Verdict::NotApplicable(String::from("positive part is irreducible")));
    }
    for step in steps {
        let q = apply(&positive, &step)?;
        let n = least_model(&reduct(&q, &empty));
        ensure!(
            n == m,
            "step {step} changes the least model of\n{}",
            print_program(&positive)
        );
    }
    Ok(Verdict::Pass)
}
