use faircluster_core::{Color, ColoredDataset};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub struct LoadedData {
    pub dataset: ColoredDataset,
    /// Rows dropped because a feature cell was not a finite number.
    pub skipped_rows: usize,
}

pub fn load_csv(cfg: &ExperimentConfig) -> Result<LoadedData> {
    cfg.validate()?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(&cfg.input_path)?;
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CliError::MissingColumn(name.to_string()))
    };
    let color_col = column(&cfg.color_column)?;
    let feature_cols = cfg.feature_columns.iter().map(|f| column(f)).collect::<Result<Vec<_>>>()?;

    let mut coords = Vec::new();
    let mut colors = Vec::new();
    let mut skipped = 0;
    for record in reader.records() {
        let record = record?;
        let row: Option<Vec<f64>> = feature_cols
            .iter()
            .map(|&c| record.get(c).and_then(|v| v.trim().parse::<f64>().ok()).filter(|v| v.is_finite()))
            .collect();
        match (row, record.get(color_col)) {
            (Some(row), Some(color)) => {
                coords.push(row);
                colors.push(if color.trim() == cfg.positive_value { Color::Blue } else { Color::Red });
            }
            _ => skipped += 1,
        }
    }
    if coords.is_empty() {
        return Err(CliError::NoUsableRows { skipped });
    }

    if let Some(m) = cfg.subsample.filter(|&m| m < coords.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.sweep.seed);
        let mut keep = index::sample(&mut rng, coords.len(), m).into_vec();
        keep.sort_unstable();
        coords = keep.iter().map(|&i| std::mem::take(&mut coords[i])).collect();
        colors = keep.iter().map(|&i| colors[i]).collect();
    }
    if cfg.normalize {
        min_max_normalize(&mut coords);
    }

    let n = colors.len();
    if colors.iter().all(|&c| c == colors[0]) {
        return Err(CliError::SingleColor { n });
    }
    Ok(LoadedData { dataset: ColoredDataset::euclidean(coords, colors)?, skipped_rows: skipped })
}

/// Rescales each column to [0, 1]; constant columns become 0.
pub fn min_max_normalize(rows: &mut [Vec<f64>]) {
    let Some(dim) = rows.first().map(Vec::len) else { return };
    for c in 0..dim {
        let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r[c]), hi.max(r[c])));
        let span = hi - lo;
        for r in rows.iter_mut() {
            r[c] = if span > 0.0 { (r[c] - lo) / span } else { 0.0 };
        }
    }
}
