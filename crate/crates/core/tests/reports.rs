use delsarte_core::report::{analyze, batch_lines, paper_examples, BatchConfig, QuotientSpec};
use delsarte_core::Error;

#[test]
fn published_examples_reproduce() {
    let r = paper_examples();
    assert!(r.passed, "{r}");
    assert!(r.checks.len() >= 40);
}

#[test]
fn matrix_with_diagonal_prefix() {
    let r = analyze(&QuotientSpec::Matrix("diag(2,9,9)*[[−4,2,1],[−3,1,0],[1,0,1]]".into())).unwrap();
    assert_eq!(r.pi1.order, 3);
    assert_eq!(r.torsion_t.torsion_factors, vec![3, 3, 3, 3, 3, 3, 9]);
    assert!(!r.generated_over_z);
}

#[test]
fn diagonal_four_six_twelve() {
    let r = analyze(&QuotientSpec::Diagonal([4, 6, 12])).unwrap();
    assert_eq!(r.torsion_t.torsion_factors, vec![6]);
    assert!(r.classification.is_diagonal);
}

#[test]
fn generated_over_z_needs_order_prime_to_six() {
    let r = analyze(&QuotientSpec::Fermat(5)).unwrap();
    assert!(r.generated_over_z);
    let r = analyze(&QuotientSpec::Fermat(3)).unwrap();
    assert!(!r.generated_over_z);
    assert_eq!(r.rank_k.snf, 24);
}

#[test]
fn cyclic_report_has_its_section() {
    let r = analyze(&QuotientSpec::Cyclic { m: 12, weights: [3, 1, 0, 8] }).unwrap();
    let v = r.cyclic.as_ref().unwrap();
    assert!(v.passed);
    let json = r.to_json();
    assert!(json["cyclic"].is_object());
    let r = analyze(&QuotientSpec::Diagonal([2, 4, 4])).unwrap();
    assert!(r.to_json()["cyclic"].is_null());
}

#[test]
fn every_report_has_every_field() {
    let keys = |s: &QuotientSpec| {
        let v = analyze(s).unwrap().to_json();
        v.as_object().unwrap().keys().cloned().collect::<Vec<_>>()
    };
    let a = keys(&QuotientSpec::Fermat(1));
    assert_eq!(a, keys(&QuotientSpec::Cyclic { m: 5, weights: [2, 1, 1, 1] }));
    assert_eq!(a, keys(&QuotientSpec::Exponent("[[2,0,0,0],[0,2,0,0],[0,0,2,0],[0,0,0,2]]".into())));
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(a, sorted);
}

#[test]
fn output_is_deterministic() {
    let s = QuotientSpec::Matrix("[[1,1,0],[3,0,3],[0,0,4]]".into());
    let a = serde_json::to_string(&analyze(&s).unwrap().to_json()).unwrap();
    let b = serde_json::to_string(&analyze(&s).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn validation_errors() {
    assert!(matches!(analyze(&QuotientSpec::Matrix("[[1,2,3],[2,4,6],[0,0,1]]".into())), Err(Error::SingularKernel)));
    assert!(matches!(analyze(&QuotientSpec::Matrix("[[1,2,3],[2,4,6]".into())), Err(Error::Parse { .. })));
    assert!(matches!(analyze(&QuotientSpec::Cyclic { m: 4, weights: [0, 2, 2, 0] }), Err(Error::CyclicParameters(_))));
    assert_eq!(analyze(&QuotientSpec::Fermat(0)).unwrap_err().exit_code(), 2);
}

#[test]
fn batch_on_maximal_length_diagonal() {
    let c = BatchConfig { seed: 3, count: 40, diag: [1, 8, 8], bound: 3, out: Default::default() };
    let (lines, s) = batch_lines(&c).unwrap();
    assert_eq!(lines.len(), 41);
    assert!(s.failures.is_empty(), "{:?}", s.failures);
    assert_eq!(s.torsion_frequency.values().sum::<usize>(), 40);
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["summary"]["count"], 40);
}
