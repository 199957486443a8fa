//! Acceptance suite: one test per shipped guarantee, each driving the
//! corresponding checker at its stated point counts and printing a
//! pass/fail line. All arithmetic is exact, so every assertion is at zero
//! tolerance.

use reslab_core::verify::{
    build_fixtures, run_one, Catalog, SamplePlan, TheoremReport, SUITE_IDS,
};

fn run(id: &str) -> TheoremReport {
    let fixtures = build_fixtures();
    let catalog = Catalog::default();
    let plan = SamplePlan::default();
    run_one(id, &fixtures, &catalog, &plan).expect("checker runs")
}

fn announce(criterion: &str, report: &TheoremReport) {
    println!(
        "acceptance {criterion}: {} ({} points, {} failures, {} ms)",
        if report.pass { "PASS" } else { "FAIL" },
        report.points(),
        report.failures(),
        report.wall_ms
    );
    if !report.pass {
        println!("{report}");
    }
}

fn family_count(report: &TheoremReport, name: &str) -> usize {
    report
        .families
        .iter()
        .find(|f| f.name == name)
        .map(|f| f.count)
        .unwrap_or(0)
}

#[test]
fn acceptance_01_holonomy_of_solvable_model() {
    let report = run("golden_holonomy_sol2");
    announce("01 holonomy-sol2", &report);
    assert!(report.pass, "{report}");
    assert!(
        report.wall_ms < 100,
        "presentation check took {} ms, budget 100",
        report.wall_ms
    );
}

#[test]
fn acceptance_02_degree_one_locus_is_zero_and_one() {
    let report = run("golden_resonance_line");
    announce("02 resonance-line", &report);
    assert!(report.pass, "{report}");
    assert!(family_count(&report, "grid") >= 11);
    assert!(family_count(&report, "random") >= 50);
}

#[test]
fn acceptance_03_degree_zero_determinant_locus_and_strictness() {
    let r0 = run("golden_r0_gl2");
    announce("03a r0-gl2", &r0);
    assert!(r0.pass, "{r0}");
    assert!(r0.points() >= 200);

    let strict = run("product_strictness");
    announce("03b product-strictness", &strict);
    assert!(strict.pass, "{strict}");
    assert_eq!(family_count(&strict, "witness"), 1);
    assert!(family_count(&strict, "random-pairs") >= 200);
}

#[test]
fn acceptance_04_zero_point_membership_is_betti_support() {
    let report = run("zero_point_betti");
    announce("04 zero-point-betti", &report);
    assert!(report.pass, "{report}");
    // all fixtures x all five targets x all stored degrees
    assert!(report.fixture.len() >= 12);
}

#[test]
fn acceptance_05_flatness_is_relation_killing() {
    let report = run("flat_hom_correspondence");
    announce("05 flat-hom", &report);
    assert!(report.pass, "{report}");
    for fam in &report.families {
        if fam.name.starts_with("flat/") {
            assert!(
                fam.count >= 100,
                "family {} has only {} flat candidates",
                fam.name,
                fam.count
            );
        }
    }
    // non-flat candidates exist for every fixture with a curved point
    for fixture in report.fixture.iter().filter(|f| f.as_str() != "ext1") {
        let found = report
            .families
            .iter()
            .any(|f| f.name.starts_with(&format!("nonflat/{fixture}/")) && f.count >= 100);
        assert!(found, "no non-flat family with 100 candidates on {fixture}");
    }
}

#[test]
fn acceptance_06_twisted_betti_matches_lie_cohomology() {
    let report = run("lie_vs_aomoto_betti");
    announce("06 lie-vs-aomoto", &report);
    assert!(report.pass, "{report}");
    for fam in &report.families {
        // two degrees per sampled point
        assert!(
            fam.count >= 200,
            "family {} has only {} checks",
            fam.name,
            fam.count
        );
    }
}

#[test]
fn acceptance_07_rank_one_membership_criterion() {
    let report = run("rank_one_criterion");
    announce("07 rank-one-criterion", &report);
    assert!(report.pass, "{report}");
    assert!(report.points() >= 200);
    let singular: usize = report
        .families
        .iter()
        .filter(|f| f.name.starts_with("singular/"))
        .map(|f| f.count)
        .sum();
    let nonsingular: usize = report
        .families
        .iter()
        .filter(|f| f.name.starts_with("nonsingular/"))
        .map(|f| f.count)
        .sum();
    assert!(singular >= 100, "only {singular} singular-action points");
    assert!(
        nonsingular >= 100,
        "only {nonsingular} nonsingular-action points"
    );
}

#[test]
fn acceptance_08_product_upper_bound() {
    let report = run("product_upper_bound");
    announce("08 product-upper-bound", &report);
    assert!(report.pass, "{report}");
    for fam in &report.families {
        assert!(
            fam.count >= 200,
            "family {} has only {} flat points",
            fam.name,
            fam.count
        );
    }
}

#[test]
fn acceptance_09_product_equality_for_sl2_and_sol2() {
    let report = run("product_equality");
    announce("09 product-equality", &report);
    assert!(report.pass, "{report}");
    for target in ["sl2", "sol2"] {
        for q in 0..=2 {
            for family in ["left-only", "right-only", "rank-one"] {
                let name = format!("{target}/q{q}/{family}");
                assert!(
                    family_count(&report, &name) >= 100,
                    "family {name} below 100 points"
                );
            }
        }
    }
}

#[test]
fn acceptance_10_trichotomy_classification_never_fails() {
    let report = run("trichotomy");
    announce("10 trichotomy", &report);
    assert!(report.pass, "{report}");
    assert!(report.points() > 0);
}

#[test]
fn acceptance_11_product_and_wedge_presentations() {
    let product = run("presentation_product");
    announce("11a presentation-product", &product);
    assert!(product.pass, "{product}");
    let wedge = run("presentation_wedge");
    announce("11b presentation-wedge", &wedge);
    assert!(wedge.pass, "{wedge}");
}

#[test]
fn acceptance_12_wedge_resonance_formulas() {
    let higher = run("wedge_higher");
    announce("12a wedge-higher", &higher);
    assert!(higher.pass, "{higher}");
    for fam in &higher.families {
        assert!(fam.count >= 200, "family {} below 200 points", fam.name);
    }

    let degree1 = run("wedge_degree1");
    announce("12b wedge-degree1", &degree1);
    assert!(degree1.pass, "{degree1}");
    for fam in &degree1.families {
        assert!(fam.count >= 200, "family {} below 200 points", fam.name);
    }
}

#[test]
fn acceptance_13_structural_battery() {
    let report = run("structural");
    announce("13 structural", &report);
    assert!(report.pass, "{report}");
    // at least one non-flat witness with d^2 != 0 wherever curvature can
    // be nonzero (every fixture but the one-generator line)
    let fixtures = build_fixtures();
    let mut names: Vec<String> = fixtures.base.iter().map(|(n, _)| n.clone()).collect();
    names.extend(fixtures.products.iter().map(|(n, _)| n.clone()));
    names.extend(fixtures.wedges.iter().map(|(n, _)| n.clone()));
    for fixture in names.iter().filter(|n| n.as_str() != "ext1") {
        let found = report
            .families
            .iter()
            .any(|f| f.name.starts_with(&format!("dsquare-nonflat/{fixture}/")) && f.count >= 1);
        assert!(found, "no curved witness recorded for {fixture}");
    }
}

/// The whole battery runs inside the time budget and is reproducible:
/// identical plans give byte-identical reports once the wall-time field is
/// cleared.
#[test]
fn acceptance_full_suite_deterministic_and_timely() {
    let plan = SamplePlan::default();
    let start = std::time::Instant::now();
    let first = reslab_core::verify::run_all(&plan).expect("suite runs");
    let elapsed = start.elapsed();
    println!(
        "acceptance full-suite: {} checkers in {:.1} s",
        first.len(),
        elapsed.as_secs_f64()
    );
    assert_eq!(first.len(), SUITE_IDS.len());
    assert!(first.iter().all(|r| r.pass));
    assert!(
        elapsed.as_secs() < 60,
        "suite took {:.1} s, budget 60",
        elapsed.as_secs_f64()
    );

    let second = reslab_core::verify::run_all(&plan).expect("suite runs");
    let strip = |reports: &[TheoremReport]| -> String {
        let cleared: Vec<TheoremReport> = reports
            .iter()
            .map(|r| TheoremReport {
                wall_ms: 0,
                ..r.clone()
            })
            .collect();
        serde_json::to_string(&cleared).expect("serializable")
    };
    assert_eq!(strip(&first), strip(&second), "reports are not reproducible");
}
