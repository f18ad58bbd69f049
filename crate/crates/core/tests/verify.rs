use gup1d::checks::{run_checks, Fault, VerifyOptions};

#[test]
fn full_suite_passes() {
    let outcomes = run_checks(None, &VerifyOptions::default());
    let failed: Vec<_> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.check)
        .collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn flipped_lambda_breaks_the_gauge_checks() {
    let opts = VerifyOptions {
        fault: Some(Fault::FlipLambdaSign),
        ..VerifyOptions::default()
    };
    let outcomes = run_checks(Some("gauge"), &opts);
    assert!(!outcomes.is_empty());
    assert!(outcomes.iter().any(|o| !o.passed));
}
