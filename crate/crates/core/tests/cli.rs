use tenseprove::cli::{run, EXIT_INVALID, EXIT_LIMIT, EXIT_USAGE, EXIT_VALID};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tp(args: &[&str], stdin: &str) -> Out {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("tenseprove").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn decide_exit_codes() {
    assert_eq!(tp(&["decide", "p -> [F]~[P]~p"], "").code, EXIT_VALID);
    assert_eq!(tp(&["decide", "[F]p -> p"], "").code, EXIT_INVALID);
    assert_eq!(tp(&["decide", "p -> p", "--budget-nodes", "0"], "").code, EXIT_LIMIT);
    let bad = tp(&["decide", "p ->"], "");
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(!bad.stderr.is_empty());
}

#[test]
fn formula_from_stdin() {
    assert_eq!(tp(&["decide", "-"], "<P>[F]p -> p\n").code, EXIT_VALID);
}

#[test]
fn prove_fails_on_invalid() {
    assert_ne!(tp(&["prove", "p"], "").code, EXIT_VALID);
    assert_eq!(tp(&["prove", "p -> p"], "").code, EXIT_VALID);
}

#[test]
fn kb_needs_single_rule_set() {
    assert_eq!(tp(&["decide", "p -> [F]~[F]~p", "--logic", "kb"], "").code, EXIT_VALID);
    assert_eq!(
        tp(&["decide", "p -> [F]~[F]~p", "--logic", "kb", "--calculus", "lns"], "").code,
        EXIT_USAGE
    );
    assert_eq!(tp(&["decide", "p -> [F]~[F]~p"], "").code, EXIT_INVALID);
}

#[test]
fn emitted_derivation_checks() {
    for calculus in ["lns", "lns-star"] {
        let proof = tp(
            &["prove", "[F](p -> q) -> ([F]p -> [F]q)", "--output", "json", "--calculus", calculus],
            "",
        );
        assert_eq!(proof.code, EXIT_VALID);
        let checked = tp(&["check", "-", "--calculus", calculus], &proof.stdout);
        assert_eq!(checked.code, EXIT_VALID, "{}", checked.stderr);
    }
}

#[test]
fn tampered_derivation_is_rejected() {
    let proof = tp(&["prove", "p -> p", "--output", "json"], "").stdout;
    let tampered = proof.replacen("\"p\"", "\"q\"", 1);
    assert_ne!(tampered, proof);
    assert_ne!(tp(&["check", "-"], &tampered).code, EXIT_VALID);
}

#[test]
fn emitted_model_checks() {
    let model = tp(&["decide", "[F]p | [P]q", "--output", "json"], "");
    assert_eq!(model.code, EXIT_INVALID);
    let mc = tp(&["modelcheck", "-", "[F]p | [P]q"], &model.stdout);
    assert_eq!(mc.code, EXIT_INVALID, "{}", mc.stdout);
    let mc = tp(&["modelcheck", "-", "p -> p"], &model.stdout);
    assert_eq!(mc.code, EXIT_VALID);
}

#[test]
fn certify_flag_round_trips() {
    for f in ["<F>[P]p -> p", "[F]p -> [P]p"] {
        for output in ["text", "json", "dot", "latex"] {
            let r = tp(&["decide", f, "--certify", "--output", output], "");
            assert!(r.code == EXIT_VALID || r.code == EXIT_INVALID, "{f} {output}: {}", r.stderr);
        }
    }
}

#[test]
fn dot_and_latex_shapes() {
    let dot = tp(&["decide", "[F]p", "--output", "dot"], "").stdout;
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("doublecircle"));
    let tex = tp(&["prove", "p -> p", "--output", "latex"], "").stdout;
    assert!(tex.contains("\\begin{prooftree}"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["decide", "[F]p | [P]q | <F><P>r", "--output", "json"][..],
        &["corpus", "--random", "40", "--seed", "3", "--output", "json"][..],
    ] {
        assert_eq!(tp(args, "").stdout, tp(args, "").stdout);
    }
}

#[test]
fn corpus_file() {
    let text = "# comment\nvalid\tp -> p\ninvalid\t[F]p\nvalid\t<F>[P]p -> p\n";
    let r = tp(&["corpus", "-"], text);
    assert_eq!(r.code, EXIT_VALID, "{}", r.stdout);
    assert!(r.stdout.contains("mismatches 0"));
    let wrong = tp(&["corpus", "-"], "valid\t[F]p\n");
    assert_eq!(wrong.code, EXIT_INVALID);
    assert_eq!(tp(&["corpus", "-"], "").code, EXIT_VALID);
}

#[test]
fn random_corpus_certifies() {
    let r = tp(&["corpus", "--random", "60", "--seed", "11", "--certify", "--output", "json"], "");
    assert_eq!(r.code, EXIT_VALID);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["summary"]["certificate_failures"], 0);
    assert_eq!(doc["summary"]["total"], 60);
}

#[test]
fn bundled_axiom_corpus() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/axioms.tsv");
    for calculus in ["lns", "lns-star"] {
        let r = tp(&["corpus", path, "--calculus", calculus], "");
        assert_eq!(r.code, EXIT_VALID, "{}", r.stdout);
    }
}
