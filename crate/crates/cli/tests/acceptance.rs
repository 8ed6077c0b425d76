//! Acceptance criteria 1 to 8, run through the built-in suite.

use idxlab_cli::{run_suite, RunConfig, Status, SuiteReport};

const EXPECTED: [(u32, &[&str]); 8] = [
    (
        1,
        &[
            "c1.e_m",
            "c1.scan.attains",
            "c1.scan.misses_three",
            "c1.gamma.curated_values",
            "c1.gamma.curated_gcd",
            "c1.resolve.n",
            "c1.n_equals_gamma",
            "c1.gamma.sampled",
        ],
    ),
    (2, &["c2.scan_f4", "c2.scan_f2"]),
    (
        3,
        &[
            "c3.pair.delta",
            "c3.pair.e_vertex",
            "c3.pair.curated_gcd",
            "c3.pair.equality",
            "c3.pair.sampled",
            "c3.conic.delta",
            "c3.conic.e_vertex",
            "c3.conic.curated_gcd",
            "c3.conic.equality",
            "c3.conic.sampled",
        ],
    ),
    (
        4,
        &[
            "c4.pair.places",
            "c4.pair.n",
            "c4.pair.divides_e_m",
            "c4.pair.divides_samples",
            "c4.triple.places",
            "c4.triple.n",
            "c4.triple.divides_e_m",
            "c4.triple.divides_samples",
            "c4.cusp.places",
            "c4.cusp.n",
            "c4.cusp.divides_e_m",
            "c4.cusp.divides_samples",
        ],
    ),
    (
        5,
        &[
            "c5.quadric.gcd",
            "c5.quadric.regular_origin",
            "c5.quadric.e_fiber_origin",
            "c5.quadric.lift_degree_two",
            "c5.quadric.divides_lift",
            "c5.double.gcd",
            "c5.double.lift",
            "c5.double.divides_lift",
            "c5.node.gcd",
            "c5.node.lift",
            "c5.node.series",
            "c5.node.divides_lift",
        ],
    ),
    (
        6,
        &[
            "c6.orbits.p1",
            "c6.counts.p1",
            "c6.orbits.p2",
            "c6.counts.p2",
            "c6.open_p1",
            "c6.regular_locus",
        ],
    ),
    (7, &["c7.p5", "c7.p7", "c7.p11", "c7.p13", "c7.e5", "c7.e7"]),
    (
        8,
        &[
            "c8.field_axioms",
            "c8.hypersurfaces",
            "c8.additivity.triple",
            "c8.additivity.x2y",
            "c8.additivity.pair",
            "c8.associativity.cone",
            "c8.associativity.empty_prefix",
            "c8.associativity.regular",
            "c8.seed_determinism",
        ],
    ),
];

fn criterion_passes(report: &SuiteReport, n: u32, ids: &[&str]) -> bool {
    let checks = report.criterion(n);
    let got: Vec<&str> = checks.iter().map(|c| c.id.as_str()).collect();
    let mut ok = got == ids;
    for c in &checks {
        if c.status != Status::Pass {
            eprintln!(
                "  {} {:?}: lhs {} rhs {} ({})",
                c.id, c.status, c.lhs, c.rhs, c.witness
            );
            ok = false;
        }
    }
    if got != ids {
        eprintln!("  check list {got:?}");
    }
    ok
}

#[test]
fn acceptance_criteria() {
    let config = RunConfig::default();
    let report = run_suite(&config);
    let mut all = true;
    for (n, ids) in EXPECTED {
        let ok = criterion_passes(&report, n, ids);
        println!("criterion {n}: {}", if ok { "pass" } else { "fail" });
        all &= ok;
    }
    let again = run_suite(&config);
    let identical = report.to_json() == again.to_json();
    println!(
        "suite report byte-identical across runs: {}",
        if identical { "pass" } else { "fail" }
    );
    assert!(identical);
    assert!(report.passed);
    assert_eq!(report.exit_code(), 0);
    assert!(all);
}
