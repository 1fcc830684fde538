use twins_core::builder::find_twins_recursive;
use twins_core::gen::{random_matching, SeededSource};
use twins_core::lab::{
    emit_report, fit_exponent, per_n_statistic, read_report, run_cell, run_experiment,
    write_report, ExperimentPlan, Method, ReportFormat, Stat,
};
use twins_core::verify_twins;

fn untimed(method: Method, r: usize, grid: Vec<usize>, trials: usize, seed: u64) -> ExperimentPlan {
    let mut p = ExperimentPlan::new(method, r, grid, trials, seed);
    p.record_timing = false;
    p
}

fn csv_bytes(rows: &[twins_core::lab::Row]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_report(rows, ReportFormat::Csv, &mut buf).unwrap();
    buf
}

#[test]
fn repeated_runs_are_byte_identical() {
    let plan = untimed(Method::Block, 2, vec![256], 1, 7);
    assert_eq!(
        csv_bytes(&run_experiment(&plan).unwrap()),
        csv_bytes(&run_experiment(&plan).unwrap())
    );
}

#[test]
fn worker_count_does_not_matter() {
    let mut plan = untimed(Method::Recursive, 3, vec![20, 40, 80], 12, 99);
    plan.workers = Some(1);
    let one = run_experiment(&plan).unwrap();
    plan.workers = Some(5);
    let five = run_experiment(&plan).unwrap();
    assert_eq!(one, five);
    assert!(one
        .windows(2)
        .all(|w| (w[0].n, w[0].trial) < (w[1].n, w[1].trial)));
}

#[test]
fn rows_reproduce_in_isolation() {
    let plan = untimed(Method::Recursive, 3, vec![30, 100, 300], 20, 5);
    let rows = run_experiment(&plan).unwrap();
    assert_eq!(rows.len(), 60);
    for row in &rows {
        let m = random_matching(row.n, row.r, SeededSource::new(row.seed, 0)).unwrap();
        let c = find_twins_recursive(&m);
        let again = verify_twins(&m, c.left(), c.right()).unwrap();
        assert_eq!(again.size(), row.size);
        assert_eq!(
            run_cell(
                row.method,
                row.r,
                row.n,
                row.seed,
                plan.block_size,
                &plan.budget
            )
            .unwrap(),
            row.size
        );
    }
}

#[test]
fn oracle_method_within_budget() {
    let plan = untimed(Method::Oracle, 2, vec![4, 8], 3, 1);
    let rows = run_experiment(&plan).unwrap();
    assert!(rows.iter().all(|r| r.size >= 1));
}

#[test]
fn reports_roundtrip_and_feed_the_fit() {
    let plan = untimed(Method::Block, 2, vec![1024, 4096, 16384, 65536], 5, 3);
    let rows = run_experiment(&plan).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for (format, name) in [(ReportFormat::Csv, "t.csv"), (ReportFormat::Json, "t.json")] {
        let path = dir.path().join(name);
        emit_report(&rows, format, &path).unwrap();
        let back = read_report(format, std::fs::File::open(&path).unwrap()).unwrap();
        assert_eq!(back, rows);
    }
    let back = read_report(ReportFormat::Csv, &csv_bytes(&rows)[..]).unwrap();
    let pts: Vec<(f64, f64)> = per_n_statistic(&back, Stat::Mean)
        .into_iter()
        .map(|(n, s)| (n as f64, s))
        .collect();
    let fit = fit_exponent(&pts).unwrap();
    assert!(fit.slope.is_finite());
    assert_eq!(fit.points.len() + fit.excluded, 4);
}

#[test]
fn empty_table_is_rejected() {
    assert!(write_report(&[], ReportFormat::Csv, Vec::new()).is_err());
}
