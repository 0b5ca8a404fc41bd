use std::io::Write;
use std::path::Path;

use faircluster::{load_csv, CliError, ExperimentConfig, KRange, ObjectiveChoice, SweepConfig};
use faircluster_core::{Color, Metric};
use tempfile::NamedTempFile;

fn write(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn config(path: &Path, features: &[&str]) -> ExperimentConfig {
    ExperimentConfig {
        input_path: path.to_path_buf(),
        color_column: "sex".into(),
        positive_value: "F".into(),
        feature_columns: features.iter().map(|s| s.to_string()).collect(),
        subsample: None,
        normalize: false,
        sweep: SweepConfig { k_range: KRange::new(1, 2).unwrap(), t_prime: 2, objective: ObjectiveChoice::Center, seed: 3 },
    }
}

fn coords(metric: &Metric) -> &[Vec<f64>] {
    match metric {
        Metric::Euclidean(c) => c,
        Metric::Explicit(_) => panic!("loader builds euclidean datasets"),
    }
}

#[test]
fn positive_value_marks_blue() {
    let f = write("age,sex,income\n30,M,1.5\n41,F,2.5\n25,M,0.5\n");
    let loaded = load_csv(&config(f.path(), &["age", "income"])).unwrap();
    let ds = &loaded.dataset;
    assert_eq!(ds.colors(), &[Color::Red, Color::Blue, Color::Red]);
    assert_eq!(coords(ds.metric())[1], vec![41.0, 2.5]);
    assert_eq!(loaded.skipped_rows, 0);
}

#[test]
fn unparsable_rows_are_counted() {
    let f = write("age,sex\n30,M\nabc,F\n22,F\n,M\n");
    let loaded = load_csv(&config(f.path(), &["age"])).unwrap();
    assert_eq!(loaded.dataset.len(), 2);
    assert_eq!(loaded.skipped_rows, 2);
}

#[test]
fn subsample_is_seeded_and_keeps_file_order() {
    let body: String = (0..50).map(|i| format!("{i},{}\n", if i % 2 == 0 { "F" } else { "M" })).collect();
    let f = write(&format!("age,sex\n{body}"));
    let mut cfg = config(f.path(), &["age"]);
    cfg.subsample = Some(10);
    let a = load_csv(&cfg).unwrap().dataset;
    let b = load_csv(&cfg).unwrap().dataset;
    assert_eq!(a, b);
    assert_eq!(a.len(), 10);
    let ages: Vec<f64> = coords(a.metric()).iter().map(|r| r[0]).collect();
    assert!(ages.windows(2).all(|w| w[0] < w[1]));

    cfg.sweep.seed = 4;
    assert_ne!(load_csv(&cfg).unwrap().dataset, a);
    cfg.subsample = Some(500);
    assert_eq!(load_csv(&cfg).unwrap().dataset.len(), 50);
}

#[test]
fn normalization_maps_columns_to_unit_interval() {
    let f = write("a,b,sex\n10,5,F\n20,5,M\n15,5,M\n");
    let mut cfg = config(f.path(), &["a", "b"]);
    cfg.normalize = true;
    let ds = load_csv(&cfg).unwrap().dataset;
    assert_eq!(coords(ds.metric()), &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.0]]);
}

#[test]
fn loader_errors() {
    let f = write("age,sex\n30,M\n31,F\n");
    assert!(matches!(load_csv(&config(f.path(), &["height"])), Err(CliError::MissingColumn(c)) if c == "height"));

    let f = write("age,sex\nx,M\ny,F\n");
    assert!(matches!(load_csv(&config(f.path(), &["age"])), Err(CliError::NoUsableRows { skipped: 2 })));

    let f = write("age,sex\n1,M\n2,M\n");
    assert!(matches!(load_csv(&config(f.path(), &["age"])), Err(CliError::SingleColor { n: 2 })));

    let missing = config(Path::new("/nonexistent/input.csv"), &["age"]);
    assert!(matches!(load_csv(&missing), Err(CliError::Csv(_))));
}
