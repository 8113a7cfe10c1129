//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use setaflp::propcheck::{gen_program, gen_setaf, GenConfig, Group, Instance, Side, Suite, Verdict, SUITES};
use setaflp::textio::{parse_program, parse_setaf, print_program, AttackMode};
use setaflp_core::atom::atom_set;
use setaflp_core::mappings::ProgramMapping;
use setaflp_core::setaf::Attack;
use setaflp_core::transform::{fair_normalize, Strategy};
use setaflp_core::translate::{is_rfalp, minimal_transversals, nlp_to_setaf, setaf_to_nlp, statements, vul_family};
use setaflp_core::{Atom, AtomSet, Interpretation, Labelling, Limits, Program, Rule};

type Outcome = Result<String, String>;
type ModelSets = Vec<(AtomSet, AtomSet)>;
type LabellingSets = Vec<(AtomSet, AtomSet, AtomSet)>;
type Criterion = (&'static str, fn() -> Outcome);

const RANDOM_INSTANCES: u64 = 200;
const SEED_BASE: u64 = 0x5e7a_f1b0;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn set(names: &[&str]) -> AtomSet {
    atom_set(names.iter().copied()).unwrap()
}

fn atom(n: &str) -> Atom {
    Atom::new(n).unwrap()
}

fn within(elapsed: Duration, bound: Duration) -> Result<(), String> {
    if elapsed <= bound {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, bound is {bound:.0?}"))
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_owned())
        .collect()
}

/// The expected table rows: (models as (T, F), labellings as (in, out, undec)).
fn table_rows() -> Vec<(ModelSets, LabellingSets)> {
    let m1 = (set(&[]), set(&[]));
    let m2 = (set(&["a"]), set(&["b"]));
    let m3 = (set(&["b"]), set(&["a", "e"]));
    let l1 = (set(&[]), set(&[]), set(&["a", "b", "c", "d", "e"]));
    let l2 = (set(&["a"]), set(&["b"]), set(&["c", "d", "e"]));
    let l3 = (set(&["b"]), set(&["a", "e"]), set(&["c", "d"]));
    vec![
        (
            vec![m1.clone(), m2.clone(), m3.clone()],
            vec![l1.clone(), l2.clone(), l3.clone()],
        ),
        (vec![m1], vec![l1]),
        (vec![m2, m3.clone()], vec![l2, l3.clone()]),
        (vec![], vec![]),
        (vec![m3], vec![l3]),
    ]
}

fn as_set(v: &Value) -> AtomSet {
    atom_set(strings(v).iter().map(String::as_str)).unwrap()
}

fn table_one() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_setaflp"))
        .args(["--json", "check", "--theorems", "all"])
        .arg(data("choice.lp"))
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if out.status.code() != Some(0) {
        return Err(format!("check exited with {:?}", out.status.code()));
    }
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let rows = report["table"].as_array().ok_or("no table in the report")?;
    let expected = table_rows();
    if rows.len() != expected.len() {
        return Err(format!("{} rows, expected {}", rows.len(), expected.len()));
    }
    let program = parse_program(&read("choice.lp")).unwrap();
    let setaf = nlp_to_setaf(&program, &Limits::default()).map_err(|e| e.to_string())?;
    let mapping = ProgramMapping::new(&program, &setaf);
    for (row, (models, labellings)) in rows.iter().zip(expected) {
        let name = row["models_semantics"].as_str().unwrap_or("?");
        let got_models: BTreeSet<(AtomSet, AtomSet)> = row["models"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| (as_set(&m["true"]), as_set(&m["false"])))
            .collect();
        let got_labellings: BTreeSet<(AtomSet, AtomSet, AtomSet)> = row["labellings"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| (as_set(&l["in"]), as_set(&l["out"]), as_set(&l["undec"])))
            .collect();
        if got_models != models.iter().cloned().collect() {
            return Err(format!("{name} models differ: {got_models:?}"));
        }
        if got_labellings != labellings.iter().cloned().collect() {
            return Err(format!("{name} labellings differ: {got_labellings:?}"));
        }
        if row["holds"] != Value::Bool(true) {
            return Err(format!("{name} row reported as not holding"));
        }
        for ((t, f), (inn, o, u)) in models.into_iter().zip(labellings) {
            let m = Interpretation::new(t, f).unwrap();
            let l = Labelling::new(inn, o, u).unwrap();
            if mapping.l2i(&l).map_err(|e| e.to_string())? != m || mapping.i2l(&m) != l {
                return Err(format!("{name}: {l} and its model are not paired by the mappings"));
            }
        }
    }
    if report["failed"] != Value::Bool(false) {
        return Err(String::from("some suite reported a failure"));
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("5 rows match, {elapsed:.2?}"))
}

fn statement_translation() -> Outcome {
    let start = Instant::now();
    let limits = Limits::default();
    let p = parse_program(&read("guarded.lp")).unwrap();
    let stmts = statements(&p, &limits).map_err(|e| e.to_string())?;
    let got: BTreeSet<(Atom, AtomSet)> = stmts.iter().map(|s| (s.conc.clone(), s.vul.clone())).collect();
    let expected: BTreeSet<(Atom, AtomSet)> = [
        ("a", vec![]),
        ("b", vec![]),
        ("c", vec!["c"]),
        ("d", vec!["a", "d"]),
        ("d", vec!["c", "d"]),
        ("e", vec!["c", "e"]),
    ]
    .into_iter()
    .map(|(c, v)| (atom(c), set(&v)))
    .collect();
    if stmts.len() != 6 || got != expected {
        return Err(format!("{} statements: {got:?}", stmts.len()));
    }

    let vul = vul_family(&p, &limits).map_err(|e| e.to_string())?;
    let family = |sets: &[&[&str]]| -> BTreeSet<AtomSet> { sets.iter().map(|s| set(s)).collect() };
    let expected_vul = [
        ("a", family(&[&[]])),
        ("b", family(&[&[]])),
        ("c", family(&[&["c"]])),
        ("d", family(&[&["a", "d"], &["c", "d"]])),
        ("e", family(&[&["c", "e"]])),
    ];
    if vul.arguments() != set(&["a", "b", "c", "d", "e"]) {
        return Err(format!("arguments are {:?}", vul.arguments()));
    }
    for (a, fam) in expected_vul {
        if vul.get(&atom(a)) != Some(&fam) {
            return Err(format!("Vul({a}) is {:?}", vul.get(&atom(a))));
        }
    }

    let s = nlp_to_setaf(&p, &limits).map_err(|e| e.to_string())?;
    let attacks: BTreeSet<Attack> = [
        (vec!["c"], "c"),
        (vec!["c"], "e"),
        (vec!["e"], "e"),
        (vec!["d"], "d"),
        (vec!["a", "c"], "d"),
    ]
    .into_iter()
    .map(|(src, t)| Attack::new(src.into_iter().map(atom), atom(t)))
    .collect();
    if s.attacks() != &attacks {
        return Err(format!("attacks are {:?}", s.attacks()));
    }
    if s.arguments().contains(&atom("f")) || s.arguments().contains(&atom("g")) {
        return Err(String::from("f or g became an argument"));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("6 statements, 5 attacks, {elapsed:.2?}"))
}

fn reverse_translation() -> Outcome {
    let s = parse_setaf(&read("choice.setaf"), AttackMode::Reject).map_err(|e| e.to_string())?;
    let p = setaf_to_nlp(&s);
    let n = |x: &str| atom(x);
    let expected = Program::new([
        Rule::atomic(n("a"), [n("b")]),
        Rule::atomic(n("b"), [n("a")]),
        Rule::atomic(n("c"), [n("a"), n("c")]),
        Rule::atomic(n("c"), [n("c"), n("d")]),
        Rule::atomic(n("d"), [n("d")]),
        Rule::atomic(n("e"), [n("b"), n("e")]),
    ]);
    if p != expected {
        return Err(format!("program is\n{}", print_program(&p)));
    }
    if !is_rfalp(&p) {
        return Err(String::from("the program is not recognised as an RFALP"));
    }
    Ok(String::from("6 rules, RFALP"))
}

fn loop_normalization() -> Outcome {
    let start = Instant::now();
    let p = parse_program(&read("loop.lp")).unwrap();
    let expected = Program::new([Rule::fact(atom("c"))]);
    let mut lengths = Vec::new();
    for strategy in [Strategy::Lex, Strategy::ReverseLex] {
        let (q, trace) = fair_normalize(&p, strategy, &Limits::default()).map_err(|e| e.to_string())?;
        if !q.same_rules(&expected) {
            return Err(format!("{strategy:?} gives\n{}", print_program(&q)));
        }
        let replayed = trace.replay(&p).map_err(|e| e.to_string())?;
        if replayed.last() != Some(&q) {
            return Err(format!("{strategy:?} trace does not replay to the result"));
        }
        lengths.push(trace.len());
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("trace lengths {lengths:?}, {elapsed:.2?}"))
}

fn random_programs() -> impl Iterator<Item = (u64, Instance)> {
    (0..RANDOM_INSTANCES).map(|i| {
        let seed = SEED_BASE + i;
        let cfg = GenConfig::new(1 + (i as usize % 7), i as usize % 11, seed);
        (seed, Instance::Program(gen_program(&cfg)))
    })
}

fn random_setafs() -> impl Iterator<Item = (u64, Instance)> {
    (0..RANDOM_INSTANCES).map(|i| {
        let seed = SEED_BASE + i;
        let cfg = GenConfig::new(1 + (i as usize % 7), i as usize % 12, seed);
        (seed, Instance::Setaf(gen_setaf(&cfg)))
    })
}

fn run_suites(instances: impl Iterator<Item = (u64, Instance)>, suites: &[&Suite], bound: Duration) -> Outcome {
    let start = Instant::now();
    let limits = Limits::default();
    let (mut runs, mut skipped) = (0usize, 0usize);
    for (seed, inst) in instances {
        for suite in suites {
            match suite
                .run(&inst, &limits)
                .map_err(|e| format!("seed {seed}, {}: {e}", suite.name))?
            {
                Verdict::Pass => runs += 1,
                Verdict::NotApplicable(_) => skipped += 1,
                Verdict::Fail(why) => {
                    return Err(format!("seed {seed}, {}: {why}\n{}", suite.name, inst.dump()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, bound)?;
    Ok(format!(
        "{} suites, {runs} passes, {skipped} n/a, {elapsed:.2?}",
        suites.len()
    ))
}

fn program_suites() -> Outcome {
    let suites: Vec<&Suite> = SUITES
        .iter()
        .filter(|s| s.side == Side::Program && matches!(s.group, Group::Inverse | Group::Equivalence))
        .collect();
    run_suites(random_programs(), &suites, Duration::from_secs(300))
}

fn setaf_suites() -> Outcome {
    let suites: Vec<&Suite> = SUITES.iter().filter(|s| s.side == Side::Setaf).collect();
    run_suites(random_setafs(), &suites, Duration::from_secs(300))
}

fn transformation_suites() -> Outcome {
    let suites: Vec<&Suite> = SUITES
        .iter()
        .filter(|s| matches!(s.group, Group::Confluence | Group::Invariance))
        .collect();
    run_suites(random_programs(), &suites, Duration::from_secs(600))
}

/// Minimal transversals by trying every subset of the ground set.
fn brute_transversals(family: &[u32], n: usize) -> BTreeSet<u32> {
    let hitting: Vec<u32> = (0..1u32 << n).filter(|t| family.iter().all(|m| m & t != 0)).collect();
    hitting
        .iter()
        .copied()
        .filter(|t| !hitting.iter().any(|s| s != t && s & t == *s))
        .collect()
}

fn to_family(members: &[u32]) -> BTreeSet<BTreeSet<u8>> {
    members
        .iter()
        .map(|m| (0..32u8).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

fn from_family(family: &BTreeSet<BTreeSet<u8>>) -> BTreeSet<u32> {
    family.iter().map(|s| s.iter().fold(0, |acc, i| acc | 1 << i)).collect()
}

fn agree(members: &[u32], n: usize) -> Result<(), String> {
    let got = from_family(&minimal_transversals(&to_family(members)));
    let want = brute_transversals(members, n);
    if got == want {
        Ok(())
    } else {
        Err(format!("family {members:?} over {n} atoms: got {got:?}, want {want:?}"))
    }
}

/// Every antichain of subsets of an `n`-set, built by adding subsets in
/// increasing order.
fn antichains(n: usize) -> Vec<Vec<u32>> {
    fn grow(next: u32, limit: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(current.clone());
        for s in next..limit {
            if current.iter().all(|&c| c & s != c && c & s != s) {
                current.push(s);
                grow(s + 1, limit, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(0, 1 << n, &mut Vec::new(), &mut out);
    out
}

fn transversal_sweep() -> Result<usize, String> {
    let mut checked = 0;
    for n in 0..=4usize {
        let subsets = 1u32 << n;
        for code in 0..1u64 << subsets {
            let members: Vec<u32> = (0..subsets).filter(|s| code & (1 << s) != 0).collect();
            agree(&members, n)?;
            checked += 1;
        }
    }
    let chains = antichains(5);
    if chains.len() != 7581 {
        return Err(format!("{} antichains over 5 atoms", chains.len()));
    }
    for chain in &chains {
        agree(chain, 5)?;
        let closure: Vec<u32> = (0..32u32).filter(|s| chain.iter().any(|c| c & s == *c)).collect();
        agree(&closure, 5)?;
        checked += 2;
    }
    let mut state = SEED_BASE;
    for _ in 0..20_000 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let code = (state >> 32) as u32;
        let members: Vec<u32> = (0..32u32).filter(|s| code & (1 << s) != 0).collect();
        agree(&members, 5)?;
        checked += 1;
    }
    Ok(checked)
}

fn brute_force_oracles() -> Outcome {
    let start = Instant::now();
    let families = transversal_sweep()?;
    let sweep = start.elapsed();
    within(sweep, Duration::from_secs(60))?;

    let limits = Limits::default();
    let lemma = SUITES.iter().find(|s| s.name == "statement-reduct").unwrap();
    let lost = SUITES.iter().find(|s| s.name == "lost-atoms").unwrap();
    for i in 0..100u64 {
        let seed = SEED_BASE + 1000 + i;
        let p = Instance::Program(gen_program(&GenConfig::new(
            1 + (i as usize % 5),
            1 + i as usize % 8,
            seed,
        )));
        for suite in [lemma, lost] {
            if let Verdict::Fail(why) = suite.run(&p, &limits).map_err(|e| e.to_string())? {
                return Err(format!("seed {seed}, {}: {why}\n{}", suite.name, p.dump()));
            }
        }
    }
    Ok(format!(
        "{families} families in {sweep:.2?}, 100 programs in {:.2?}",
        start.elapsed() - sweep
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("model and labelling table of the two-way choice program", table_one),
        (
            "statements, vulnerabilities and attacks of the f/g program",
            statement_translation,
        ),
        ("SETAF to program on the five-argument SETAF", reverse_translation),
        (
            "normalisation of the positive loop under both strategies",
            loop_normalization,
        ),
        ("mapping and equivalence suites on 200 random programs", program_suites),
        ("SETAF-side suites on 200 random SETAFs", setaf_suites),
        ("transformation suites on 200 random programs", transformation_suites),
        (
            "brute-force transversal and statement/reduct oracles",
            brute_force_oracles,
        ),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
