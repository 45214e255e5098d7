use proptest::prelude::*;

use super::*;
use crate::superalgebra::AlgebraError;

const DCRIT_LINE: &str = "gen x : (0,0,=); gen xi : (0,1,=) odd; delta xi = x";

const CE_SO3: &str = "model ce_so3
gen e1 : (1,0,=) odd
gen e2 : (1,0,=) odd
gen e3 : (1,0,=) odd
Q e1 = -e2*e3
Q e2 = e1*e3
Q e3 = -e1*e2
";

fn opts() -> Options {
    Options::default()
}

#[test]
fn parses_the_critical_locus_of_a_quadratic() {
    let spec = parse_model(DCRIT_LINE).unwrap();
    assert_eq!(spec.gens.len(), 2);
    assert_eq!(spec.gens[1].name, "xi");
    assert_eq!(spec.gens[1].degree.chain, 1);
    assert!(spec.delta.contains_key("xi"));
    let rep = run(Command::Validate, DCRIT_LINE, &opts()).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.get("generators"), Some("2"));
}

#[test]
fn unknown_generator_reports_position() {
    match parse_model("gen x : (0,0,=)\ngen xi : (0,1,=) odd\ndelta xi = y") {
        Err(CliError::UnknownGenerator { name, line, col }) => {
            assert_eq!(name, "y");
            assert_eq!((line, col), (3, 12));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let e = parse_model("gen x : (0,0 =)").unwrap_err();
    assert!(matches!(e, CliError::Syntax { line: 1, .. }), "{e:?}");
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn parity_must_match_the_degree_flag() {
    assert!(parse_model("gen x : (1,0,=) even").is_err());
    assert!(parse_model("gen x : (1,0,!=) even").is_ok());
}

#[test]
fn lie_poisson_so3_passes_mc_with_a_residual_table() {
    let text = "gen x1 : (0,0,=); gen x2 : (0,0,=); gen x3 : (0,0,=); shift 0
poisson pi = x3*p_x1*p_x2 + x1*p_x2*p_x3 - x2*p_x1*p_x3";
    let rep = run(Command::Mc, text, &opts()).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.get("residual.weight.3"), Some("0"));
    assert_eq!(rep.exit_code(), 0);
}

#[test]
fn non_jacobi_bivector_fails_mc() {
    let text = "gen x1 : (0,0,=); gen x2 : (0,0,=); gen x3 : (0,0,=); shift 0
poisson pi = x1*p_x1*p_x2 + x1*p_x2*p_x3 + x2*p_x1*p_x3";
    let rep = run(Command::Mc, text, &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
    assert_eq!(rep.exit_code(), 1);
    assert_ne!(rep.get("residual.weight.3"), Some("0"));
}

#[test]
fn casimirs() {
    let rep = run(Command::Casimir, "lie g = so3", &opts()).unwrap();
    assert_eq!(rep.get("dimension"), Some("1"));
    assert_eq!(rep.get("basis.0"), Some("p_e1^2 + p_e2^2 + p_e3^2"));
    let rep = run(Command::Casimir, "lie g = abelian2", &opts()).unwrap();
    assert_eq!(rep.get("dimension"), Some("3"));
}

#[test]
fn broken_jacobi_is_an_algebra_error() {
    let text = "gen e1 : (1,0,=) odd; gen e2 : (1,0,=) odd; gen e3 : (1,0,=) odd; gen e4 : (1,0,=) odd
Q e3 = -e1*e2; Q e4 = -e1*e3 - e2*e3; Q e1 = -e2*e4";
    let e = run(Command::Validate, text, &opts()).unwrap_err();
    match &e {
        CliError::Algebra(AlgebraError::SquareNotZero { generator, .. }) => assert_eq!(generator, "e1"),
        other => panic!("{other:?}"),
    }
    assert_eq!(e.exit_code(), 4);
}

#[test]
fn ce_so3_cohomology() {
    let rep = run(Command::Cohomology, CE_SO3, &opts()).unwrap();
    let dims: Vec<_> = (0..4).map(|k| rep.get(&format!("H.{k}")).unwrap().to_string()).collect();
    assert_eq!(dims, ["1", "0", "0", "1"]);
}

#[test]
fn degree_window_restricts_cohomology() {
    let o = Options { degree_window: Some((1, 2)), ..opts() };
    let rep = run(Command::Cohomology, CE_SO3, &o).unwrap();
    assert!(rep.get("H.0").is_none());
    assert_eq!(rep.get("H.1"), Some("0"));
}

#[test]
fn missing_statements_are_input_errors() {
    for cmd in [Command::Mc, Command::Casimir, Command::Qme, Command::Roundtrip] {
        let e = run(cmd, DCRIT_LINE, &opts()).unwrap_err();
        assert_eq!(e.exit_code(), 2, "{cmd:?}");
    }
}

#[test]
fn descent_of_so3_is_a_simplicial_error() {
    let e = run(Command::Descent, "lie g = so3", &opts()).unwrap_err();
    assert_eq!(e.exit_code(), 9);
}

#[test]
fn reports_are_deterministic() {
    for cmd in [Command::Bv, Command::Casimir, Command::Normalize] {
        let text = if cmd == Command::Casimir { "lie g = heisenberg" } else { DCRIT_LINE };
        let o = Options { seed: 7, ..opts() };
        let a = run(cmd, text, &o).unwrap();
        let b = run(cmd, text, &o).unwrap();
        assert_eq!(a.render(Format::Text), b.render(Format::Text));
        assert_eq!(a.render(Format::Structured), b.render(Format::Structured));
    }
}

#[test]
fn structured_output_is_key_value() {
    let rep = run(Command::Validate, DCRIT_LINE, &opts()).unwrap();
    let s = rep.render(Format::Structured);
    assert!(s.starts_with("command=validate\nverdict=pass\n"));
    assert!(s.lines().all(|l| l.contains('=')));
}

#[test]
fn normal_form_is_idempotent_on_examples() {
    for text in [DCRIT_LINE, CE_SO3, "lie g dim 3; bracket g 1 2 3 = 1/2", "gen x : (0,0,=); shift 1 reversed; cutoff weight 5"] {
        let once = normal_form(text).unwrap();
        assert_eq!(normal_form(&once).unwrap(), once);
    }
}

fn expr_text(names: Vec<String>) -> impl Strategy<Value = String> {
    let n = names.len();
    let leaf = prop_oneof![
        (0..n).prop_map(move |i| names[i].clone()),
        (-5i64..=5, 1i64..=4).prop_map(|(a, b)| if b == 1 { a.to_string() } else { format!("{a}/{b}") }),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..3).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

fn model_text() -> impl Strategy<Value = String> {
    proptest::collection::vec((0i64..3, 0i64..3, any::<bool>()), 1..4).prop_flat_map(|degs| {
        let names: Vec<String> = (0..degs.len()).map(|i| format!("y{i}")).collect();
        let header: String = degs
            .iter()
            .enumerate()
            .map(|(i, (c, h, eq))| {
                let odd = ((c + h) % 2 == 1) == *eq;
                format!("gen y{i} : ({c},{h},{}) {}\n", if *eq { "=" } else { "!=" }, if odd { "odd" } else { "even" })
            })
            .collect();
        let k = names.len();
        (Just(header), proptest::collection::btree_map(0..k, expr_text(names), 0..3)).prop_map(|(h, qs)| {
            let mut s = h;
            for (i, e) in qs {
                s.push_str(&format!("Q y{i} = {e}\n"));
            }
            s
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(text in model_text()) {
        let spec = parse_model(&text).unwrap();
        let once = print_model(&spec, &contexts(&spec));
        let again = parse_model(&once).unwrap();
        prop_assert_eq!(print_model(&again, &contexts(&again)), once);
    }
}
