use idxlab_cli::{run_suite_with, Corpus, RunConfig, Status};

fn quick() -> RunConfig {
    RunConfig {
        trials: 0,
        ..RunConfig::default()
    }
}

fn status(report: &idxlab_cli::SuiteReport, id: &str) -> Status {
    report.checks.iter().find(|c| c.id == id).unwrap().status
}

#[test]
fn builtin_corpus_passes_without_sampling() {
    let r = run_suite_with(&quick(), &Corpus::builtin());
    assert!(r.passed, "{:?}", r.failures());
    assert_eq!(r.exit_code(), 0);
    assert!(r.checks.iter().any(|c| c.status == Status::Skipped));
    for n in 1..=8 {
        assert!(!r.criterion(n).is_empty(), "criterion {n}");
    }
}

#[test]
fn injected_faults_fail_their_checks() {
    let mut corpus = Corpus::builtin();
    corpus.triple_point = "x*y".into();
    corpus.cusp = "y^2-x^5".into();
    corpus.node_model.f = "x*y-t^2".into();
    let r = run_suite_with(&quick(), &corpus);
    assert!(!r.passed);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(status(&r, "c1.e_m"), Status::Fail);
    assert_eq!(status(&r, "c4.cusp.places"), Status::Pass);
    assert_eq!(status(&r, "c5.node.series"), Status::Fail);
    assert_eq!(status(&r, "c7.p5"), Status::Pass);
}

#[test]
fn errors_become_failed_checks() {
    let mut corpus = Corpus::builtin();
    corpus.conic = "x^2+y".into();
    let r = run_suite_with(&quick(), &corpus);
    let c = r.checks.iter().find(|c| c.id == "c3.conic.delta").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.witness.starts_with("error: "), "{}", c.witness);
}

#[test]
fn seeds_change_samples_but_not_verdicts() {
    let run = |seed| {
        let cfg = RunConfig {
            seed,
            trials: 4,
            ..RunConfig::default()
        };
        run_suite_with(&cfg, &Corpus::builtin())
    };
    let (a, b) = (run(3), run(4));
    assert!(a.passed && b.passed);
    assert_eq!(a.to_json(), run(3).to_json());
}
