//! Two-colored point sets over a metric.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Slack allowed when validating the triangle inequality of explicit matrices.
pub const METRIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// How distances between points are obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// L2 distance over per-point coordinate vectors of equal dimension.
    Euclidean(Vec<Vec<f64>>),
    /// A symmetric nonnegative matrix with zero diagonal obeying the triangle inequality.
    Explicit(Vec<Vec<f64>>),
}

/// A nonempty set of red and blue points, identified by `0..len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredDataset {
    colors: Vec<Color>,
    metric: Metric,
}

impl ColoredDataset {
    pub fn euclidean(coordinates: Vec<Vec<f64>>, colors: Vec<Color>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if coordinates.len() != colors.len() {
            return Err(Error::InvalidDataset(format!(
                "{} coordinate rows for {} colors",
                coordinates.len(),
                colors.len()
            )));
        }
        let dim = coordinates[0].len();
        for (id, row) in coordinates.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "point {id} has dimension {}, expected {dim}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset(format!("point {id} has a non-finite coordinate")));
            }
        }
        Ok(ColoredDataset { colors, metric: Metric::Euclidean(coordinates) })
    }

    /// Builds a dataset from an explicit distance matrix, checking the metric axioms.
    pub fn explicit(matrix: Vec<Vec<f64>>, colors: Vec<Color>) -> Result<Self> {
        let n = colors.len();
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!("matrix must be {n} x {n}")));
        }
        for i in 0..n {
            if matrix[i][i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let v = matrix[i][j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {v} is not a finite nonnegative value")));
                }
                if v != matrix[j][i] {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) is not symmetric")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if matrix[i][j] > matrix[i][k] + matrix[k][j] + METRIC_TOLERANCE {
                        return Err(Error::InvalidMatrix(format!(
                            "triangle inequality fails for ({i},{j}) via {k}"
                        )));
                    }
                }
            }
        }
        Ok(ColoredDataset { colors, metric: Metric::Explicit(matrix) })
    }

    /// Points on a line, a convenient shape for small worked instances.
    pub fn on_line(positions: &[f64], colors: Vec<Color>) -> Result<Self> {
        Self::euclidean(positions.iter().map(|&x| vec![x]).collect(), colors)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, id: usize) -> Result<Color> {
        self.check(id)?;
        Ok(self.colors[id])
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.dist(i, j))
    }

    /// Unchecked distance for ids already known to be valid.
    pub(crate) fn dist(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        match &self.metric {
            Metric::Euclidean(coords) => coords[i]
                .iter()
                .zip(&coords[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
            Metric::Explicit(m) => m[i][j],
        }
    }

    pub(crate) fn check(&self, id: usize) -> Result<()> {
        if id < self.colors.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { id, len: self.colors.len() })
        }
    }

    /// Ids of the given color, ascending.
    pub fn ids_of(&self, color: Color) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.colors[i] == color).collect()
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// Balance of the whole point set.
    pub fn balance(&self) -> Rational {
        ratio_balance(self.count(Color::Red), self.count(Color::Blue))
    }
}

/// `min(r/b, b/r)` with the monochromatic convention of zero.
pub(crate) fn ratio_balance(red: usize, blue: usize) -> Rational {
    if red == 0 || blue == 0 {
        return Rational::ZERO;
    }
    let (lo, hi) = if red <= blue { (red, blue) } else { (blue, red) };
    Rational::new(lo as i64, hi as i64).expect("positive denominator")
}

/// Balance of a nonempty subset of the dataset.
pub fn balance_of_subset(ds: &ColoredDataset, subset: &[usize]) -> Result<Rational> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut red = 0;
    let mut blue = 0;
    for &id in subset {
        match ds.color(id)? {
            Color::Red => red += 1,
            Color::Blue => blue += 1,
        }
    }
    Ok(ratio_balance(red, blue))
}
