use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use setaflp::propcheck::{gen_program, gen_setaf, GenConfig, Group, Instance};
use setaflp::report::{render_json, render_text, run_check, ColorChoice};
use setaflp::textio::{
    export_dot, export_json, interpretation_json, labelling_json, parse_program, parse_setaf, print_interpretation,
    print_labelling, print_program, print_setaf, print_trace, program_json, setaf_json, trace_json, AttackMode,
    ParseError,
};
use setaflp_core::semantics::{
    partial_stable_models, select_l_stable, select_regular, select_stable, select_well_founded,
};
use setaflp_core::setaf::{
    complete_labellings, select_grounded, select_preferred, select_semi_stable,
    select_stable as select_stable_labellings,
};
use setaflp_core::transform::{fair_normalize, Strategy};
use setaflp_core::translate::{nlp_to_setaf, setaf_to_nlp};
use setaflp_core::{Error, Interpretation, Labelling, Limits, Program, Setaf};

#[derive(Parser)]
#[command(
    name = "setaflp",
    version,
    about = "Normal logic programs and SETAFs: semantics, translations, normalisation, checks"
)]
struct Cli {
    /// Largest universe or argument set enumerated exhaustively.
    #[arg(long, global = true, default_value_t = Limits::default().max_atoms)]
    max_atoms: usize,
    /// Largest number of transformation steps in a normalisation.
    #[arg(long, global = true, default_value_t = Limits::default().max_steps)]
    max_steps: usize,
    /// Largest number of statements (and of rules during normalisation).
    #[arg(long, global = true, default_value_t = Limits::default().max_statements)]
    max_statements: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input file, or `-` for standard input.
    file: PathBuf,
    /// Input format; by default `.setaf` files are SETAFs and everything else a program.
    #[arg(long, value_enum)]
    from: Option<Kind>,
    /// Drop non-minimal attacks instead of rejecting them.
    #[arg(long)]
    minimize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Models of a program.
    Semantics {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ModelSem::All)]
        semantics: ModelSem,
    },
    /// Labellings of a SETAF.
    Labellings {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = LabelSem::All)]
        semantics: LabelSem,
    },
    /// Program to SETAF, or SETAF to program.
    Translate {
        #[command(flatten)]
        input: Input,
    },
    /// Fair normalisation to a redundancy-free atomic program.
    Normalize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = StrategyArg::Lex)]
        strategy: StrategyArg,
        /// Also print the transformation steps.
        #[arg(long)]
        trace: bool,
    },
    /// Run oracle suites on one instance; exits 1 on a counterexample.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Theorems::All)]
        theorems: Theorems,
    },
    /// Print a reproducible random instance.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::Lp)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        atoms: usize,
        /// Rules, or raw attacks for SETAFs.
        #[arg(long, default_value_t = 6)]
        rules: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = GenConfig::default().max_body_pos)]
        max_body_pos: usize,
        #[arg(long, default_value_t = GenConfig::default().max_body_neg)]
        max_body_neg: usize,
        #[arg(long, default_value_t = GenConfig::default().fact_probability)]
        fact_probability: f64,
    },
    /// Graphviz rendering of a SETAF (programs are translated first).
    Dot {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Lp,
    Setaf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelSem {
    Pstable,
    Wf,
    Regular,
    Stable,
    Lstable,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelSem {
    Complete,
    Grounded,
    Preferred,
    Stable,
    Semistable,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Lex,
    Revlex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorems {
    Inverse,
    Equivalence,
    Confluence,
    Invariance,
    All,
}

enum Failure {
    Check(String),
    Input(String),
    Cap(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Invalid(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::BlowupCap { .. } | Error::StepCapExceeded { .. } => {
                Failure::Cap(e.to_string())
            }
            Error::InternalInvariantViolation(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

enum Loaded {
    Program(Program),
    Setaf(Setaf),
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let path: &Path = &input.file;
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let kind = input.from.unwrap_or(if path.extension().is_some_and(|e| e == "setaf") {
        Kind::Setaf
    } else {
        Kind::Lp
    });
    let located = |e: ParseError| match e {
        ParseError::Invalid(e) => Failure::from(e),
        other => Failure::Input(format!("{}:{other}", path.display())),
    };
    Ok(match kind {
        Kind::Lp => Loaded::Program(parse_program(&text).map_err(located)?),
        Kind::Setaf => {
            let mode = if input.minimize {
                AttackMode::Minimize
            } else {
                AttackMode::Reject
            };
            Loaded::Setaf(parse_setaf(&text, mode).map_err(located)?)
        }
    })
}

fn load_program(input: &Input) -> Result<Program, Failure> {
    match load(input)? {
        Loaded::Program(p) => Ok(p),
        Loaded::Setaf(_) => Err(Failure::Input(String::from("expected a program, got a SETAF"))),
    }
}

fn load_setaf(input: &Input, limits: &Limits) -> Result<Setaf, Failure> {
    match load(input)? {
        Loaded::Setaf(s) => Ok(s),
        Loaded::Program(p) => Ok(nlp_to_setaf(&p, limits)?),
    }
}

struct Output {
    json: bool,
    text: String,
    value: Value,
}

impl Output {
    fn emit(self) {
        if self.json {
            print!("{}", export_json(&self.value));
        } else {
            print!("{}", self.text);
        }
    }
}

fn model_sections(
    p: &Program,
    which: ModelSem,
    limits: &Limits,
) -> Result<Vec<(&'static str, Vec<Interpretation>)>, Failure> {
    let psms = partial_stable_models(p, limits)?;
    let u = p.universe();
    let all = [
        (ModelSem::Pstable, "pstable"),
        (ModelSem::Wf, "wf"),
        (ModelSem::Regular, "regular"),
        (ModelSem::Stable, "stable"),
        (ModelSem::Lstable, "lstable"),
    ];
    let mut out = Vec::new();
    for (sem, name) in all {
        if which != ModelSem::All && which != sem {
            continue;
        }
        let models = match sem {
            ModelSem::Pstable => psms.clone(),
            ModelSem::Wf => vec![select_well_founded(&psms)?],
            ModelSem::Regular => select_regular(&psms),
            ModelSem::Stable => select_stable(&psms, u),
            ModelSem::Lstable => select_l_stable(&psms),
            ModelSem::All => unreachable!(),
        };
        out.push((name, models));
    }
    Ok(out)
}

fn labelling_sections(
    s: &Setaf,
    which: LabelSem,
    limits: &Limits,
) -> Result<Vec<(&'static str, Vec<Labelling>)>, Failure> {
    let complete = complete_labellings(s, limits)?;
    let all = [
        (LabelSem::Complete, "complete"),
        (LabelSem::Grounded, "grounded"),
        (LabelSem::Preferred, "preferred"),
        (LabelSem::Stable, "stable"),
        (LabelSem::Semistable, "semistable"),
    ];
    let mut out = Vec::new();
    for (sem, name) in all {
        if which != LabelSem::All && which != sem {
            continue;
        }
        let labellings = match sem {
            LabelSem::Complete => complete.clone(),
            LabelSem::Grounded => vec![select_grounded(&complete)?],
            LabelSem::Preferred => select_preferred(&complete),
            LabelSem::Stable => select_stable_labellings(&complete),
            LabelSem::Semistable => select_semi_stable(&complete),
            LabelSem::All => unreachable!(),
        };
        out.push((name, labellings));
    }
    Ok(out)
}

/// Section lines followed by `count=N`; headed by `# name` when several
/// sections are printed.
fn sections_text<T>(sections: &[(&str, Vec<T>)], line: impl Fn(&T) -> String) -> String {
    let mut text = String::new();
    let headed = sections.len() > 1;
    for (name, items) in sections {
        if headed {
            text.push_str(&format!("# {name}\n"));
        }
        for item in items {
            text.push_str(&line(item));
            text.push('\n');
        }
        text.push_str(&format!("count={}\n", items.len()));
    }
    text
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let limits = Limits {
        max_atoms: cli.max_atoms,
        max_steps: cli.max_steps,
        max_statements: cli.max_statements,
    };
    let out = match &cli.command {
        Command::Semantics { input, semantics } => {
            let p = load_program(input)?;
            let u = p.universe();
            let sections = model_sections(&p, *semantics, &limits)?;
            let value: serde_json::Map<String, Value> = sections
                .iter()
                .map(|(name, ms)| {
                    let list: Vec<Value> = ms.iter().map(|m| interpretation_json(m, u)).collect();
                    (name.to_string(), Value::from(list))
                })
                .collect();
            Output {
                json: cli.json,
                text: sections_text(&sections, |m| print_interpretation(m, u)),
                value: Value::Object(value),
            }
        }
        Command::Labellings { input, semantics } => {
            let s = load_setaf(input, &limits)?;
            let sections = labelling_sections(&s, *semantics, &limits)?;
            let value: serde_json::Map<String, Value> = sections
                .iter()
                .map(|(name, ls)| {
                    (
                        name.to_string(),
                        Value::from(ls.iter().map(labelling_json).collect::<Vec<_>>()),
                    )
                })
                .collect();
            Output {
                json: cli.json,
                text: sections_text(&sections, print_labelling),
                value: Value::Object(value),
            }
        }
        Command::Translate { input } => match load(input)? {
            Loaded::Program(p) => {
                let s = nlp_to_setaf(&p, &limits)?;
                Output {
                    json: cli.json,
                    text: print_setaf(&s),
                    value: setaf_json(&s),
                }
            }
            Loaded::Setaf(s) => {
                let p = setaf_to_nlp(&s);
                Output {
                    json: cli.json,
                    text: print_program(&p),
                    value: program_json(&p),
                }
            }
        },
        Command::Normalize { input, strategy, trace } => {
            let p = load_program(input)?;
            let strategy = match strategy {
                StrategyArg::Lex => Strategy::Lex,
                StrategyArg::Revlex => Strategy::ReverseLex,
            };
            let (q, t) = fair_normalize(&p, strategy, &limits)?;
            let mut text = print_program(&q);
            let mut value = json!({ "program": program_json(&q) });
            if *trace {
                text.push_str(&format!("% trace: {} steps\n", t.len()));
                text.push_str(&print_trace(&t));
                value["trace"] = trace_json(&t);
            }
            Output {
                json: cli.json,
                text,
                value,
            }
        }
        Command::Check { input, theorems } => {
            let instance = match load(input)? {
                Loaded::Program(p) => Instance::Program(p),
                Loaded::Setaf(s) => Instance::Setaf(s),
            };
            let groups: Vec<Group> = match theorems {
                Theorems::Inverse => vec![Group::Inverse],
                Theorems::Equivalence => vec![Group::Equivalence],
                Theorems::Confluence => vec![Group::Confluence],
                Theorems::Invariance => vec![Group::Invariance],
                Theorems::All => vec![Group::Inverse, Group::Equivalence, Group::Confluence, Group::Invariance],
            };
            let report = run_check(&instance, &groups, &limits)?;
            let failed = report.first_failure();
            Output {
                json: cli.json,
                text: render_text(&report, ColorChoice::from_env().enabled()),
                value: render_json(&report),
            }
            .emit();
            return match failed {
                Some(why) => Err(Failure::Check(why)),
                None => Ok(()),
            };
        }
        Command::Gen {
            kind,
            atoms,
            rules,
            seed,
            max_body_pos,
            max_body_neg,
            fact_probability,
        } => {
            if !(0.0..=1.0).contains(fact_probability) {
                return Err(Failure::Input(String::from("--fact-probability must be within [0, 1]")));
            }
            let cfg = GenConfig {
                atom_count: *atoms,
                rule_count: *rules,
                max_body_pos: *max_body_pos,
                max_body_neg: *max_body_neg,
                fact_probability: *fact_probability,
                seed: *seed,
            };
            match kind {
                Kind::Lp => {
                    let p = gen_program(&cfg);
                    Output {
                        json: cli.json,
                        text: print_program(&p),
                        value: program_json(&p),
                    }
                }
                Kind::Setaf => {
                    let s = gen_setaf(&cfg);
                    Output {
                        json: cli.json,
                        text: print_setaf(&s),
                        value: setaf_json(&s),
                    }
                }
            }
        }
        Command::Dot { input } => {
            let s = load_setaf(input, &limits)?;
            Output {
                json: cli.json,
                text: export_dot(&s),
                value: Value::from(export_dot(&s)),
            }
        }
    };
    out.emit();
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(why)) => {
            eprintln!("check failed: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Input(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(why)) => {
            eprintln!("cap exceeded: {why}");
            ExitCode::from(3)
        }
    }
}
