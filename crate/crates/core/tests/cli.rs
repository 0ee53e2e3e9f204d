use qzero::cli::{run, RunConfig, Verb};
use qzero::report::validate_report_json;

fn argv(s: &str) -> Vec<String> {
    std::iter::once("qzero".to_string()).chain(s.split_whitespace().map(String::from)).collect()
}

#[test]
fn n2_suite_exits_zero() {
    let r = run(argv("qcheck n2-suite --n 2 --h 4"));
    assert_eq!(r.code, 0, "{:?}", r.message);
    let rep = r.report.unwrap();
    assert!(rep.passed());
    assert!(rep.get("n2.oracle").is_some());
    let v: serde_json::Value = serde_json::from_str(r.stdout.as_deref().unwrap()).unwrap();
    validate_report_json(&v).unwrap();
}

#[test]
fn bounds_are_rejected_with_exit_two() {
    let r = run(argv("qcheck nilpotency --n 2 --h 2"));
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("h must exceed n"));
    assert!(r.report.is_none());

    let r = run(argv("qcheck lemma1 --n 1 --h 3"));
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("n must be at least 2"));

    let r = run(argv("qcheck n2-suite --n 3 --h 4"));
    assert_eq!(r.code, 2);

    assert_eq!(run(argv("qcheck bogus --n 2 --h 4")).code, 2);
    assert_eq!(run(argv("conjecture --n 2")).code, 2);
    assert_eq!(run(argv("diag --n 2 --h 4 --max-len 0")).code, 2);
}

#[test]
fn scan_depth_must_fit_the_module() {
    let r = run(argv("conjecture --n 3 --h 4 --max-depth 4 --max-len 4"));
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("max-depth"));
}

#[test]
fn eval_prints_normal_form() {
    let r = run(argv("eval qp[1]*a[1,2] --n 2 --h 4 --normal-form --format text"));
    assert_eq!(r.code, 0);
    // q^{1 - 1/2} = z at n = 2, h = 4
    assert_eq!(r.stdout.unwrap().trim(), "a[1,2]*((z)*qp[1])");

    let r = run(argv("eval a[2,1]*a[1,2] --n 2 --h 4 --normal-form"));
    assert_eq!(r.code, 0);
    let rep = r.report.unwrap();
    assert_eq!(rep.get("eval.normal_form").unwrap().detail.as_ref().unwrap()["terms"], 2);
    assert!(rep.get("eval.round_trip").is_some());
}

#[test]
fn eval_accepts_rank_one() {
    let r = run(argv("eval a[1,1]^2*qp[1] --n 1 --h 3 --format text"));
    assert_eq!(r.code, 0, "{:?}", r.message);
    assert_eq!(run(argv("eval a[1,1] --n 1 --h 3 --on-vacuum")).code, 2);
}

#[test]
fn eval_input_errors_exit_two() {
    let r = run(vec!["qzero", "eval", "a[1,1]*a[1,2] - ?", "--n", "2", "--h", "4"]);
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("line 1, column 17"));
    let r = run(argv("eval a[1,1]*abar[1,1] --n 2 --h 4"));
    assert_eq!(r.code, 2);
    assert!(r.message.unwrap().contains("mix"));
}

#[test]
fn pole_obstruction_exits_three() {
    // the normal form of a[2,1]*a[1,2] divides by a q-number vanishing on a state
    let r = run(argv("eval a[2,1]*a[1,2] --n 2 --h 4 --normal-form --on-vacuum"));
    assert_eq!(r.code, 3, "{:?}", r.message);
    assert!(r.message.unwrap().contains("pole obstruction"));
    // as written it is fine
    let r = run(argv("eval a[2,1]*a[1,2] --n 2 --h 4 --on-vacuum --format text"));
    assert_eq!(r.code, 0);
    assert!(r.stdout.unwrap().contains("on vacuum: (-z)*|0>"));
}

#[test]
fn out_path_receives_the_report() {
    let dir = std::env::temp_dir().join(format!("qzero-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rep.json");
    let r = run(argv(&format!("identities --n 2 --h 5 --out {}", path.display())));
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_none());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate_report_json(&v).unwrap();
    assert_eq!(v["command"], "identities");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fock_build_names_both_sectors() {
    let r = run(argv("fock build --n 2 --h 3"));
    assert_eq!(r.code, 0);
    let rep = r.report.unwrap();
    assert!(rep.complete);
    assert!(rep.get("fock.left.dimension.h_squared").is_some());
    assert!(rep.get("fock.right.det").is_some());

    let r = run(argv("fock build --n 3 --h 4 --chirality left --max-depth 5"));
    assert_eq!(r.code, 0);
    assert!(!r.report.unwrap().complete);
}

#[test]
fn every_verb_parses() {
    for (line, want) in [
        ("eval a[1,1] --n 2 --h 3", "eval"),
        ("fock build --n 2 --h 3", "fock build"),
        ("qcheck nilpotency --n 2 --h 3", "qcheck nilpotency"),
        ("qcheck lemma1 --n 2 --h 3", "qcheck lemma1"),
        ("qcheck lemma2 --n 2 --h 3", "qcheck lemma2"),
        ("qcheck n2-suite --n 2 --h 3", "qcheck n2-suite"),
        ("qcheck relations --n 2 --h 3", "qcheck relations"),
        ("qcheck rmatrix --n 2 --h 3", "qcheck rmatrix"),
        ("conjecture --n 2 --h 3", "conjecture"),
        ("diag --n 2 --h 3", "diag"),
        ("plactic --n 2 --h 3", "plactic"),
        ("identities --n 2 --h 3", "identities"),
    ] {
        let cfg = RunConfig::from_args(argv(line)).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.verb.name(), want);
        assert_eq!(cfg.seed, 0);
        if let Verb::Eval { normal_form, .. } = cfg.verb {
            assert!(!normal_form);
        }
        let r = run(argv(line));
        assert_eq!(r.code, 0, "{line}: {:?}", r.message);
    }
}
