use std::io::Write;

use vdc_zeta::harness::*;
use vdc_zeta::report::Report;
use vdc_zeta::zeta::EmConfig;
use vdc_zeta::{Error, Execution};

fn small_spec() -> PartitionSpec {
    PartitionSpec::new(
        14.0,
        16.0,
        128,
        EmConfig::twice_t(),
        Threshold::PowerLog { c: 0.63 },
    )
    .unwrap()
}

fn opts(exec: Execution) -> SweepOptions {
    SweepOptions {
        exec,
        chunk: 37,
        ..SweepOptions::default()
    }
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let spec = small_spec();
    let a = verify_range(&spec, &opts(Execution::Parallel)).unwrap();
    let b = verify_range(&spec, &opts(Execution::Sequential)).unwrap();
    assert_eq!(a.records, b.records);
    assert_eq!(a.summary, b.summary);
    assert!(a.passed());
    let ra = Report::new("verify-range", &spec, &a.records, &a.summary).unwrap();
    let rb = Report::new("verify-range", &spec, &b.records, &b.summary).unwrap();
    assert_eq!(ra.deterministic_part(), rb.deterministic_part());
    assert_eq!(ra.provenance.config_hash, spec.config_hash());
}

#[test]
fn report_json_round_trip() {
    let spec = small_spec();
    let r = verify_range(&spec, &opts(Execution::Parallel)).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    for (x, y) in back.records.iter().zip(&r.records) {
        assert_eq!(x.envelope_hi.to_bits(), y.envelope_hi.to_bits());
        assert_eq!(x.t_lo.to_bits(), y.t_lo.to_bits());
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let report = Report::new("verify-range", &spec, &r.records, &r.summary).unwrap();
    report.write_json(&path).unwrap();
    assert_eq!(Report::read_json(&path).unwrap(), report);
}

#[test]
fn checkpoint_resume_matches_fresh_run() {
    let spec = small_spec();
    let fresh = verify_range(&spec, &opts(Execution::Parallel)).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.jsonl");
    let with_ck = SweepOptions {
        checkpoint: Some(path.clone()),
        ..opts(Execution::Parallel)
    };
    let first = verify_range(&spec, &with_ck).unwrap();
    assert_eq!(first.records, fresh.records);
    assert_eq!(first.run.resumed_records, 0);

    // keep the header and 100 records, then a torn line
    let text = std::fs::read_to_string(&path).unwrap();
    let kept: Vec<&str> = text.lines().take(101).collect();
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "{}", kept.join("\n")).unwrap();
    write!(f, "{{\"q\":19").unwrap();
    drop(f);

    let resumed = verify_range(&spec, &with_ck).unwrap();
    assert_eq!(resumed.run.resumed_records, 100);
    assert_eq!(resumed.records, fresh.records);
    assert_eq!(resumed.summary, fresh.summary);

    // the repaired file resumes completely
    let again = verify_range(&spec, &with_ck).unwrap();
    assert_eq!(again.run.resumed_records, spec.len());
    assert_eq!(again.records, fresh.records);
}

#[test]
fn checkpoint_from_other_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.jsonl");
    let o = SweepOptions {
        checkpoint: Some(path.clone()),
        ..opts(Execution::Sequential)
    };
    verify_range(&small_spec(), &o).unwrap();
    let mut other = small_spec();
    other.em.corrections = 2;
    assert!(matches!(
        verify_range(&other, &o),
        Err(Error::Checkpoint(_))
    ));
}

#[test]
fn witness_and_large_value_serialize() {
    let w = search_ratio_witness(
        vdc_zeta::Interval::new(45.0, 46.0).unwrap(),
        &WitnessConfig {
            coarse_step: 0.1,
            fine_step: 1e-3,
            ..WitnessConfig::default()
        },
    )
    .unwrap();
    let v = serde_json::to_value(w).unwrap();
    assert!(v["ratio_best"].is_string());
    assert!(w.ratio_best > 0.507);
}
