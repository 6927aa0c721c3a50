use cubic_meta::cubic::EnumCaps;
use cubic_meta::experiments::{
    petersen_degree, run_compare_random, run_eigvec_report, run_prop41, run_thm11, run_trends,
    run_verify, Format, SCHEMA,
};
use cubic_meta::Mode;

#[test]
fn verify_suite_passes() {
    let r = run_verify(7, &EnumCaps::default()).unwrap();
    for a in &r.assertions {
        assert!(a.passed, "{}: {}", a.name, a.detail);
    }
    assert!(r.passed);
}

#[test]
fn degree_table_small_orders() {
    let r = run_prop41(&[2, 4, 6], &EnumCaps::default()).unwrap();
    assert!(r.passed);
    assert_eq!(r.rows.len(), 3);
    for row in &r.rows {
        assert!(row.max_degree <= row.six_n);
        assert_eq!(row.special_violations, 0);
        assert!((row.gap - (row.six_n as f64 - row.mean_degree)).abs() < 1e-12);
    }
    assert!(petersen_degree() >= 60);
}

#[test]
fn eigenvalue_table_unlabelled_rows() {
    let r = run_thm11(&[4, 6, 8], Mode::Unlabelled, 2, &EnumCaps::default()).unwrap();
    assert!(r.passed, "{:?}", r.failures());
    for row in &r.rows {
        assert_eq!(row.lambdas.len(), 3);
        assert!(row.lambdas[0].abs() < 1e-9);
        if row.degenerate.is_none() {
            assert_eq!(row.holds, Some(true));
            assert_eq!(row.covariances.len(), 1);
        }
    }
}

#[test]
fn trends_flag_upper_bounds() {
    let r = run_trends(&[2, 4, 6, 8], Mode::Unlabelled, &EnumCaps::default()).unwrap();
    let kinds: Vec<&str> = r.rows.iter().map(|x| x.conductance_kind.as_str()).collect();
    assert_eq!(kinds, ["exact", "exact", "exact", "upper-bound"]);
    assert!(r.rows.iter().all(|x| x.reference_degree == 3 * x.n));
}

#[test]
fn eigvec_rows_cover_every_vertex() {
    let r = run_eigvec_report(6, Mode::Unlabelled, 4, &EnumCaps::default()).unwrap();
    assert!(r.passed, "{:?}", r.failures());
    assert_eq!(r.rows.len(), 17);
    for row in &r.rows {
        assert_eq!(row.entries.len(), 3);
        assert_eq!(row.cycle_lengths.first() == Some(&1), row.loops > 0);
    }
    let norm: f64 = r.rows.iter().map(|x| x.entries[0] * x.entries[0]).sum();
    assert!((norm - 1.0).abs() < 1e-9);
}

#[test]
fn reports_serialize_with_schema() {
    let r = run_prop41(&[2], &EnumCaps::default()).unwrap();
    let mut buf = Vec::new();
    r.write(Format::Json, &mut buf).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["rows"][0]["mean_degree_exact"], "1/1");
    let (rep, raw) = run_compare_random(4, 3, 3, 1, 100, &EnumCaps::default()).unwrap();
    assert!(rep.passed);
    assert_eq!(
        rep.rows.len(),
        raw.meta_spectrum.len() + raw.random.map_or(0, |r| r.trials)
    );
}
