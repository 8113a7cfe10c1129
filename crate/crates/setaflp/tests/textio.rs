use proptest::prelude::*;
use setaflp::propcheck::{gen_program, gen_setaf, GenConfig};
use setaflp::textio::*;
use setaflp_core::atom::atom_set;
use setaflp_core::semantics::partial_stable_models;
use setaflp_core::translate::nlp_to_setaf;
use setaflp_core::{Atom, AtomSet, Error, Interpretation, Labelling, Limits, Program, Rule};

fn set(names: &[&str]) -> AtomSet {
    atom_set(names.iter().copied()).unwrap()
}

fn a(n: &str) -> Atom {
    Atom::new(n).unwrap()
}

const CHOICE: &str = include_str!("data/choice.lp");
const CHOICE_AF: &str = include_str!("data/choice.setaf");

#[test]
fn two_rule_program() {
    let p = parse_program("a :- not b.\nb :- not a.").unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p.universe(), &set(&["a", "b"]));
    assert!(p.contains(&Rule::atomic(a("a"), [a("b")])));
}

#[test]
fn choice_models() {
    let p = parse_program(CHOICE).unwrap();
    let models: Vec<String> = partial_stable_models(&p, &Limits::default())
        .unwrap()
        .iter()
        .map(|m| print_interpretation(m, p.universe()))
        .collect();
    assert_eq!(
        models,
        [
            "T={} F={} U={a,b,c,d,e}",
            "T={a} F={b} U={c,d,e}",
            "T={b} F={a,e} U={c,d}"
        ]
    );
}

#[test]
fn empty_body_is_a_syntax_error() {
    match parse_program("a :- .") {
        Err(ParseError::Syntax { span, .. }) => {
            assert_eq!((span.line, span.column, span.start, span.end), (1, 6, 5, 6));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn syntax_errors_point_at_the_token() {
    let cases = [
        ("a :- b\nc.", 2, 1),
        ("a.\n  b :- a not.", 2, 10),
        ("a :- B.", 1, 6),
        ("a ! b.", 1, 3),
        ("#foo a.", 1, 1),
        ("a :- b,", 1, 8),
    ];
    for (text, line, column) in cases {
        match parse_program(text) {
            Err(ParseError::Syntax { span, .. }) => {
                assert_eq!((span.line, span.column), (line, column), "{text:?}");
            }
            other => panic!("{text:?}: unexpected {other:?}"),
        }
    }
}

#[test]
fn reserved_atom() {
    assert!(matches!(
        parse_program("a :- not _u."),
        Err(ParseError::ReservedAtom { .. })
    ));
    assert!(matches!(
        parse_setaf("arg _u", AttackMode::Reject),
        Err(ParseError::ReservedAtom { .. })
    ));
}

#[test]
fn comments_duplicates_and_universe() {
    let p = parse_program("% header\na. % fact\na.\n#universe z, y.\n").unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p.universe(), &set(&["a", "y", "z"]));
    assert_eq!(print_program(&p), "#universe y, z.\na.\n");
}

#[test]
fn not_as_a_plain_atom() {
    let p = parse_program("a :- not.").unwrap();
    assert!(p.contains(&Rule::new(a("a"), [a("not")], [])));
}

#[test]
fn setaf_examples() {
    let s = parse_setaf("arg a\natt a -> a", AttackMode::Reject).unwrap();
    assert_eq!(s.arguments(), &set(&["a"]));
    assert_eq!(s.attacks().len(), 1);

    let s = parse_setaf(CHOICE_AF, AttackMode::Reject).unwrap();
    assert_eq!(s.arguments().len(), 5);
    assert_eq!(s.attackers(&a("c")).count(), 2);

    assert_eq!(
        parse_setaf("att a -> b", AttackMode::Reject),
        Err(ParseError::Invalid(Error::DanglingArgument(a("a"))))
    );
}

#[test]
fn non_minimal_attacks() {
    let text = "arg a\narg b\natt a -> b\natt a,b -> b\n";
    assert!(matches!(
        parse_setaf(text, AttackMode::Reject),
        Err(ParseError::Invalid(Error::NonMinimalAttack { .. }))
    ));
    let s = parse_setaf(text, AttackMode::Minimize).unwrap();
    assert_eq!(print_setaf(&s), "arg a\narg b\natt a -> b\n");
}

#[test]
fn setaf_line_structure() {
    assert!(matches!(
        parse_setaf("arg a arg b", AttackMode::Reject),
        Err(ParseError::Syntax { .. })
    ));
    assert!(matches!(
        parse_setaf("arg a\natt a a", AttackMode::Reject),
        Err(ParseError::Syntax { .. })
    ));
    assert!(matches!(
        parse_setaf("foo a", AttackMode::Reject),
        Err(ParseError::Syntax { .. })
    ));
    let s = parse_setaf("\n% c\narg a % trailing\n\n", AttackMode::Reject).unwrap();
    assert_eq!(s.arguments(), &set(&["a"]));
}

#[test]
fn printers() {
    let i = Interpretation::new(set(&["b"]), set(&["a", "e"])).unwrap();
    assert_eq!(
        print_interpretation(&i, &set(&["a", "b", "c", "d", "e"])),
        "T={b} F={a,e} U={c,d}"
    );
    assert_eq!(
        print_interpretation(&Interpretation::empty(), &AtomSet::new()),
        "T={} F={} U={}"
    );
    let l = Labelling::new(set(&["a"]), set(&["b"]), set(&["c", "d", "e"])).unwrap();
    assert_eq!(print_labelling(&l), "in={a} out={b} undec={c,d,e}");
}

#[test]
fn dot_exports() {
    let s = parse_setaf("arg a\natt a -> a", AttackMode::Reject).unwrap();
    assert_eq!(export_dot(&s), "digraph setaf {\n  \"a\";\n  \"a\" -> \"a\";\n}\n");

    let p = parse_program(include_str!("data/guarded.lp")).unwrap();
    let dot = export_dot(&nlp_to_setaf(&p, &Limits::default()).unwrap());
    assert_eq!(dot.matches("shape=point").count(), 1);
    assert!(dot.contains("\"a\" -> \"_j0\" [arrowhead=none];"));
    assert!(dot.contains("\"c\" -> \"_j0\" [arrowhead=none];"));
    assert!(dot.contains("\"_j0\" -> \"d\";"));
}

#[test]
fn json_has_sorted_keys() {
    let p = parse_program("a :- b, not c.").unwrap();
    let text = export_json(&program_json(&p));
    let rules = text.find("\"rules\"").unwrap();
    let universe = text.find("\"universe\"").unwrap();
    assert!(rules < universe);
    assert!(text.find("\"head\"").unwrap() < text.find("\"neg\"").unwrap());
    assert!(text.find("\"neg\"").unwrap() < text.find("\"pos\"").unwrap());
    assert_eq!(export_json(&program_json(&p)), text);
}

#[test]
fn canonical_text_is_a_fixpoint() {
    let text = "#universe z.\na :- b, not c.\nb.\nc :- not a, not b.\n";
    assert_eq!(print_program(&parse_program(text).unwrap()), text);
    let printed = print_setaf(&parse_setaf(CHOICE_AF, AttackMode::Reject).unwrap());
    assert_eq!(
        print_setaf(&parse_setaf(&printed, AttackMode::Reject).unwrap()),
        printed
    );
}

#[test]
fn extra_universe_survives_printing() {
    let p = Program::with_universe([Rule::fact(a("c"))], set(&["a", "b", "c"]));
    assert_eq!(parse_program(&print_program(&p)).unwrap(), p);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn program_round_trip(atoms in 0usize..9, rules in 0usize..12, seed in any::<u64>()) {
        let p = gen_program(&GenConfig::new(atoms, rules, seed));
        let text = print_program(&p);
        let back = parse_program(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_program(&back), text);
    }

    #[test]
    fn setaf_round_trip(atoms in 0usize..9, rules in 0usize..14, seed in any::<u64>()) {
        let s = gen_setaf(&GenConfig::new(atoms, rules, seed));
        let text = print_setaf(&s);
        let back = parse_setaf(&text, AttackMode::Reject).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(print_setaf(&back), text);
        let dot = export_dot(&s);
        let collective = s.attacks().iter().filter(|a| a.source.len() > 1).count();
        prop_assert_eq!(dot.matches("shape=point").count(), collective);
    }
}
