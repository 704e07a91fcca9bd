use std::collections::BTreeSet;
use std::fs;

use horizon_tangle::closed_forms::sudden_death_temperature;
use horizon_tangle::sweep::{
    emit_plot_script, read_csv, run_sweep, write_csv, CutoffPolicy, Measure, SweepConfig, SweepRow,
};
use horizon_tangle::{Error, FieldKind, StateKind};

fn only(m: Measure) -> BTreeSet<Measure> {
    [m].into_iter().collect()
}

fn w_gte() -> SweepConfig {
    SweepConfig {
        measures: only(Measure::Gte),
        include_closed_forms: true,
        ..SweepConfig::new(StateKind::W, FieldKind::Fermion)
    }
}

#[test]
fn w_gte_sweep_shape_and_endpoint() {
    let rows = run_sweep(&w_gte()).unwrap();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0].temperature, 0.0);
    assert!((rows[0].value - (4.0 * 5f64.sqrt() - 4.0) / 9.0).abs() < 1e-9);
    assert!(rows
        .iter()
        .all(|r| r.closed_form.is_some() && r.cutoff.is_none()));
    assert!(rows.windows(2).all(|w| w[0].temperature < w[1].temperature));
}

#[test]
fn ghz_gte_sweep_starts_at_one_and_decreases() {
    let config = SweepConfig {
        measures: only(Measure::Gte),
        ..SweepConfig::new(StateKind::Ghz, FieldKind::Fermion)
    };
    let rows = run_sweep(&config).unwrap();
    assert!((rows[0].value - 1.0).abs() < 1e-12);
    assert!(rows.windows(2).all(|w| w[1].value <= w[0].value + 1e-10));
}

#[test]
fn bc_rows_vanish_past_sudden_death() {
    let config = SweepConfig {
        measures: only(Measure::TwoTangle),
        include_closed_forms: true,
        ..SweepConfig::new(StateKind::W, FieldKind::Fermion)
    };
    let t_star = sudden_death_temperature(1.0).unwrap();
    let bc: Vec<SweepRow> = run_sweep(&config)
        .unwrap()
        .into_iter()
        .filter(|r| r.partition == "B-C")
        .collect();
    assert_eq!(bc.len(), 101);
    let last_alive = bc.iter().rev().find(|r| r.value > 0.0).unwrap();
    assert!(last_alive.temperature < t_star);
    assert!(bc
        .iter()
        .filter(|r| r.temperature > t_star)
        .all(|r| r.value == 0.0));
}

#[test]
fn rows_are_ordered_by_temperature_measure_partition() {
    let config = SweepConfig {
        t_steps: 3,
        ..SweepConfig::new(StateKind::W, FieldKind::Fermion)
    };
    let rows = run_sweep(&config).unwrap();
    let first: Vec<(Measure, &str)> = rows
        .iter()
        .take_while(|r| r.temperature == 0.0)
        .map(|r| (r.measure, r.partition.as_str()))
        .collect();
    use Measure::*;
    assert_eq!(
        first,
        vec![
            (Gte, "min"),
            (OneTangle, "A"),
            (OneTangle, "B"),
            (OneTangle, "C"),
            (TwoTangle, "A-B"),
            (TwoTangle, "A-C"),
            (TwoTangle, "B-C"),
            (Residual, "A"),
            (Residual, "B"),
            (Residual, "C"),
        ]
    );
    assert_eq!(rows.len(), 30);
}

#[test]
fn empty_rows_give_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    write_csv(&[], &path).unwrap();
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "T,omega,state,field,measure,partition,value,closed_form,cutoff,trace_deficit\n"
    );
}

#[test]
fn rows_round_trip_at_twelve_digits() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let config = SweepConfig {
        t_min: 0.5,
        t_max: 3.0,
        t_steps: 4,
        cutoff: CutoffPolicy::Fixed(6),
        ..SweepConfig::new(StateKind::Ghz, FieldKind::Boson)
    };
    let rows = run_sweep(&config).unwrap();
    write_csv(&rows, &path).unwrap();
    let back = read_csv(&path).unwrap();
    assert_eq!(back.len(), rows.len());
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-11 * a.abs().max(b.abs());
    for (a, b) in rows.iter().zip(&back) {
        assert!(rel(a.temperature, b.temperature) && rel(a.value, b.value));
        assert!(rel(a.trace_deficit.unwrap(), b.trace_deficit.unwrap()));
        assert_eq!((a.state, a.field, a.measure), (b.state, b.field, b.measure));
        assert_eq!(
            (&a.partition, a.cutoff, a.closed_form),
            (&b.partition, Some(6), None)
        );
    }
    // re-serialising the parsed rows reproduces the file
    let again = dir.path().join("again.csv");
    write_csv(&back, &again).unwrap();
    assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap());
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
}

#[test]
fn unwritable_path_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let err = write_csv(&[], &path).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains(&path.display().to_string()));
    assert!(!err.is_numeric());
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let config = SweepConfig {
        t_min: 0.1,
        t_max: 4.0,
        t_steps: 6,
        ..SweepConfig::new(StateKind::W, FieldKind::Boson)
    };
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_csv(&run_sweep(&config).unwrap(), &a).unwrap();
    write_csv(&run_sweep(&config).unwrap(), &b).unwrap();
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn plot_script_references_csv_relatively() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("data")).unwrap();
    fs::create_dir(dir.path().join("plots")).unwrap();
    let csv = dir.path().join("data").join("w.csv");
    let script = dir.path().join("plots").join("w.py");
    let rows = run_sweep(&SweepConfig {
        t_steps: 3,
        measures: [Measure::Gte, Measure::TwoTangle].into_iter().collect(),
        ..SweepConfig::new(StateKind::W, FieldKind::Fermion)
    })
    .unwrap();
    write_csv(&rows, &csv).unwrap();
    emit_plot_script(&rows, &csv, &script).unwrap();
    let text = fs::read_to_string(&script).unwrap();
    assert!(text.contains(r#"CSV = os.path.join(HERE, "..", "data", "w.csv")"#));
    assert!(!text.contains(&dir.path().display().to_string()));
    for needle in [
        "(\"gte\", [",
        "(\"two-tangle\", [",
        "\"A-B\"",
        "\"B-C\"",
        "\"A-C\"",
    ] {
        assert!(text.contains(needle), "{needle}");
    }
}
