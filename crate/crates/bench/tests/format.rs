use otfbench::format::{parse_dfa, parse_nfa, serialize_dfa, serialize_nfa, NfaFile};
use otfbench::run::instance_file;
use otfcanon::generator::{generate, GenParams};
use otfcanon::Nfa;

fn ends_in_a() -> Nfa {
    let mut nfa = Nfa::new(2, 2).unwrap();
    nfa.add_transition(0, 0, 0).unwrap();
    nfa.add_transition(0, 1, 0).unwrap();
    nfa.add_transition(0, 0, 1).unwrap();
    nfa.add_initial(0).unwrap();
    nfa.add_accepting(1).unwrap();
    nfa
}

#[test]
fn round_trip_is_byte_stable() {
    let text = serialize_nfa(&NfaFile::new(ends_in_a()));
    assert_eq!(text, "nfa 2 2\ninitial 0\nfinal 1\nt 0 0 0\nt 0 0 1\nt 0 1 0\n");
    let parsed = parse_nfa(&text).unwrap();
    assert_eq!(parsed.nfa, ends_in_a());
    assert_eq!(serialize_nfa(&parsed), text);
}

#[test]
fn comments_and_blank_lines_are_skipped() {
    let text = "# ends in a\n\nnfa 2 2\ninitial 0\n  # inner\nfinal 1\nt 0 0 0\nt 0 1 0\nt 0 0 1\n";
    assert_eq!(parse_nfa(text).unwrap().nfa, ends_in_a());
}

#[test]
fn errors_name_the_line() {
    let cases = [
        ("nfa 2 1\ninitial 0\nfinal 1\nt 0 0 5\n", 4),
        ("nfa 2 1\ninitial 0\nfinal 1\nt 0 1 1\n", 4),
        ("nfa 2 1\ninitial 0 7\nfinal 1\n", 2),
        ("nfa 2 1\ninitial 0\nfinal 1\nt 0 0\n", 4),
        ("nfa 2 1\ninitial 0\nfinal 1\nedge 0 0 1\n", 4),
        ("nfa two 1\n", 1),
        ("initial 0\n", 1),
        ("nfa 2 1\ninitial 0\n", 2),
        ("nfa 2 1\ninitial 0\ninitial 1\nfinal 1\n", 3),
    ];
    for (text, line) in cases {
        let err = parse_nfa(text).unwrap_err();
        assert_eq!(err.line, line, "{text:?}: {err}");
    }
}

#[test]
fn generated_instance_matches_golden_file() {
    let golden = include_str!("data/mod-n9-seed3.nfa");
    let params = GenParams::new(9, 2.0, 3);
    let file = instance_file(&params, generate(&params));
    assert_eq!(serialize_nfa(&file), golden);
    let parsed = parse_nfa(golden).unwrap();
    assert_eq!(parsed, file);
    assert_eq!(parsed.meta("seed"), Some("3"));
    assert_eq!(parsed.meta("k"), Some("3"));
    assert_eq!(parsed.meta("generator"), Some(otfcanon::generator::GENERATOR_VERSION));
}

#[test]
fn dfa_round_trip() {
    let dfa = otfcanon::automata::determinize(&ends_in_a());
    let text = serialize_dfa(&dfa);
    assert!(text.starts_with("dfa 2 2\ninitial 0\n"));
    let back = parse_dfa(&text).unwrap();
    assert!(otfcanon::automata::isomorphic(&dfa, &back).unwrap());
    assert_eq!(serialize_dfa(&back), text);
    assert!(parse_nfa(&text).is_err());
    assert!(
        parse_dfa("dfa 2 1\ninitial 0\nfinal 1\nt 0 0 1\nt 0 0 0\n")
            .unwrap_err()
            .line
            == 5
    );
}
