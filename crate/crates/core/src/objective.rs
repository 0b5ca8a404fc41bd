//! Clusterings and the k-center / k-median objectives.

use std::collections::BTreeMap;

use crate::dataset::{balance_of_subset, ColoredDataset};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which clustering objective to optimize or evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Objective {
    /// Maximum distance from a point to its center.
    Center,
    /// Sum of distances from points to their centers.
    Median,
}

/// A labelling of point ids with cluster indices in `0..k`, optionally with a
/// chosen center per cluster.
///
/// The assignment is explicit: a point need not belong to the cluster of its
/// nearest center, which fair clusterings routinely violate.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    k: usize,
    assignment: BTreeMap<usize, usize>,
    centers: Option<Vec<usize>>,
}

impl Clustering {
    pub fn new(k: usize, assignment: BTreeMap<usize, usize>, centers: Option<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidClustering("k must be positive".into()));
        }
        if let Some((&id, &label)) = assignment.iter().find(|(_, &label)| label >= k) {
            return Err(Error::InvalidClustering(format!("point {id} has label {label} >= k = {k}")));
        }
        if let Some(c) = &centers {
            if c.len() != k {
                return Err(Error::InvalidClustering(format!("{} centers for k = {k}", c.len())));
            }
        }
        Ok(Clustering { k, assignment, centers })
    }

    /// Clustering of every point in `0..labels.len()`.
    pub fn from_labels(k: usize, labels: &[usize], centers: Option<Vec<usize>>) -> Result<Self> {
        Self::new(k, labels.iter().copied().enumerate().collect(), centers)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &BTreeMap<usize, usize> {
        &self.assignment
    }

    pub fn label(&self, id: usize) -> Option<usize> {
        self.assignment.get(&id).copied()
    }

    pub fn centers(&self) -> Option<&[usize]> {
        self.centers.as_deref()
    }

    /// Members of each cluster index, ascending; empty clusters are kept.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (&id, &label) in &self.assignment {
            out[label].push(id);
        }
        out
    }

    pub fn nonempty_cluster_count(&self) -> usize {
        self.clusters().iter().filter(|c| !c.is_empty()).count()
    }

    /// Checks that every id of `ds` is labelled and every center is a valid id.
    pub fn validate_over(&self, ds: &ColoredDataset) -> Result<()> {
        self.validate_ids(ds)?;
        if self.assignment.len() != ds.len() {
            return Err(Error::InvalidClustering(format!(
                "{} of {} points assigned",
                self.assignment.len(),
                ds.len()
            )));
        }
        Ok(())
    }

    fn validate_ids(&self, ds: &ColoredDataset) -> Result<()> {
        for &id in self.assignment.keys() {
            ds.check(id)?;
        }
        if let Some(c) = &self.centers {
            for &id in c {
                ds.check(id)?;
            }
        }
        Ok(())
    }
}

/// Minimum balance over the nonempty clusters.
pub fn balance_of_clustering(ds: &ColoredDataset, c: &Clustering) -> Result<Rational> {
    c.validate_ids(ds)?;
    c.clusters()
        .iter()
        .filter(|members| !members.is_empty())
        .map(|members| balance_of_subset(ds, members))
        .try_fold(None, |acc: Option<Rational>, b| {
            let b = b?;
            Ok(Some(acc.map_or(b, |a| a.min(b))))
        })?
        .ok_or(Error::NoNonemptyCluster)
}

pub fn kcenter_cost(ds: &ColoredDataset, c: &Clustering) -> Result<f64> {
    evaluate(ds, c, Objective::Center)
}

pub fn kmedian_cost(ds: &ColoredDataset, c: &Clustering) -> Result<f64> {
    evaluate(ds, c, Objective::Median)
}

/// Cost of `c` under `objective`.
///
/// With centers present each point pays its distance to the center of its own
/// label. Without centers, every cluster picks its best member as center.
pub fn evaluate(ds: &ColoredDataset, c: &Clustering, objective: Objective) -> Result<f64> {
    c.validate_ids(ds)?;
    match c.centers() {
        Some(centers) => {
            let dists = c.assignment.iter().map(|(&x, &label)| ds.dist(x, centers[label]));
            Ok(combine(objective, dists))
        }
        None => {
            let per_cluster = c
                .clusters()
                .into_iter()
                .filter(|m| !m.is_empty())
                .map(|m| best_center(ds, &m, objective).1);
            Ok(combine(objective, per_cluster))
        }
    }
}

/// Folds per-point (or per-cluster) costs: maximum for k-center, sum for k-median.
pub(crate) fn combine(objective: Objective, costs: impl Iterator<Item = f64>) -> f64 {
    match objective {
        Objective::Center => costs.fold(0.0, f64::max),
        Objective::Median => costs.sum(),
    }
}

/// The member minimizing the cluster's cost, lowest id on ties, and that cost.
pub(crate) fn best_center(ds: &ColoredDataset, members: &[usize], objective: Objective) -> (usize, f64) {
    let mut best = (members[0], f64::INFINITY);
    for &c in members {
        let cost = combine(objective, members.iter().map(|&x| ds.dist(x, c)));
        if cost < best.1 {
            best = (c, cost);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Color::{self, *};
    use proptest::prelude::*;

    fn line() -> ColoredDataset {
        ColoredDataset::on_line(&[0.0, 1.0, 2.0, 10.0], vec![Red, Blue, Red, Blue]).unwrap()
    }

    #[test]
    fn kcenter_and_kmedian_with_centers() {
        let ds = line();
        let c = Clustering::from_labels(2, &[0, 0, 0, 1], Some(vec![1, 3])).unwrap();
        assert_eq!(kcenter_cost(&ds, &c).unwrap(), 1.0);
        assert_eq!(kmedian_cost(&ds, &c).unwrap(), 2.0);
    }

    #[test]
    fn singleton_clusters_cost_nothing() {
        let ds = line();
        let c = Clustering::from_labels(4, &[0, 1, 2, 3], Some(vec![0, 1, 2, 3])).unwrap();
        assert_eq!(kcenter_cost(&ds, &c).unwrap(), 0.0);
        assert_eq!(kmedian_cost(&ds, &c).unwrap(), 0.0);
        let c = Clustering::from_labels(4, &[0, 1, 2, 3], None).unwrap();
        assert_eq!(kcenter_cost(&ds, &c).unwrap(), 0.0);
    }

    #[test]
    fn two_point_cluster() {
        let ds = ColoredDataset::on_line(&[0.0, 10.0], vec![Red, Blue]).unwrap();
        let c = Clustering::from_labels(1, &[0, 0], Some(vec![0])).unwrap();
        assert_eq!(kcenter_cost(&ds, &c).unwrap(), 10.0);
        assert_eq!(kmedian_cost(&ds, &c).unwrap(), 10.0);
    }

    #[test]
    fn definitional_form_picks_best_center() {
        let ds = line();
        let c = Clustering::from_labels(2, &[0, 0, 0, 1], None).unwrap();
        assert_eq!(kcenter_cost(&ds, &c).unwrap(), 1.0);
        assert_eq!(kmedian_cost(&ds, &c).unwrap(), 2.0);
    }

    #[test]
    fn clustering_balance() {
        let colors = vec![Red, Red, Blue, Blue, Red, Blue, Blue, Blue];
        let ds = ColoredDataset::on_line(&[0.0; 8], colors).unwrap();
        let single = Clustering::from_labels(1, &[0, 0, 0, 0, 0, 0, 0, 0], None).unwrap();
        assert_eq!(balance_of_clustering(&ds, &single).unwrap(), Rational::new(3, 5).unwrap());
        let two = Clustering::from_labels(2, &[0, 0, 0, 0, 1, 1, 1, 1], None).unwrap();
        assert_eq!(balance_of_clustering(&ds, &two).unwrap(), Rational::new(1, 3).unwrap());
        let ds = ColoredDataset::on_line(&[0.0, 1.0], vec![Red, Blue]).unwrap();
        let mono = Clustering::from_labels(2, &[0, 1], None).unwrap();
        assert_eq!(balance_of_clustering(&ds, &mono).unwrap(), Rational::ZERO);
    }

    #[test]
    fn empty_clusters_are_ignored() {
        let ds = ColoredDataset::on_line(&[0.0, 1.0], vec![Red, Blue]).unwrap();
        let c = Clustering::from_labels(3, &[2, 2], None).unwrap();
        assert_eq!(balance_of_clustering(&ds, &c).unwrap(), Rational::ONE);
        let empty = Clustering::new(2, BTreeMap::new(), None).unwrap();
        assert_eq!(balance_of_clustering(&ds, &empty), Err(Error::NoNonemptyCluster));
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(Clustering::from_labels(2, &[0, 2], None).is_err());
        assert!(Clustering::from_labels(2, &[0, 1], Some(vec![0])).is_err());
        assert!(Clustering::from_labels(0, &[], None).is_err());
    }

    fn colored_points() -> impl Strategy<Value = (Vec<f64>, Vec<Color>)> {
        (1usize..12).prop_flat_map(|n| {
            (
                proptest::collection::vec(-50.0f64..50.0, n),
                proptest::collection::vec(prop_oneof![Just(Red), Just(Blue)], n),
            )
        })
    }

    proptest! {
        #[test]
        fn combination_of_disjoint_clusterings((pos, colors) in colored_points(), split in 0usize..12, labels in proptest::collection::vec(0usize..3, 12)) {
            let n = pos.len();
            let ds = ColoredDataset::on_line(&pos, colors).unwrap();
            let split = split % (n + 1);
            let left: BTreeMap<_, _> = (0..split).map(|i| (i, labels[i])).collect();
            let right: BTreeMap<_, _> = (split..n).map(|i| (i, labels[i])).collect();
            let union: BTreeMap<_, _> = (0..n).map(|i| (i, if i < split { labels[i] } else { labels[i] + 3 })).collect();
            let whole = balance_of_clustering(&ds, &Clustering::new(6, union, None).unwrap()).unwrap();
            let parts: Vec<Rational> = [left, right]
                .into_iter()
                .filter(|m| !m.is_empty())
                .map(|m| balance_of_clustering(&ds, &Clustering::new(3, m, None).unwrap()).unwrap())
                .collect();
            prop_assert_eq!(whole, parts.into_iter().min().unwrap());
            prop_assert!(whole <= ds.balance());
            prop_assert!(whole >= Rational::ZERO && whole <= Rational::ONE);
        }

        #[test]
        fn adding_a_point_never_lowers_cost((pos, colors) in colored_points(), center in 0usize..12) {
            let n = pos.len();
            let ds = ColoredDataset::on_line(&pos, colors).unwrap();
            let center = center % n;
            for m in 1..=n {
                let grow = |m: usize| Clustering::new(1, (0..m).map(|i| (i, 0)).collect(), Some(vec![center])).unwrap();
                let (small, big) = (grow(m - 1), grow(m));
                prop_assert!(kcenter_cost(&ds, &big).unwrap() >= kcenter_cost(&ds, &small).unwrap());
                prop_assert!(kmedian_cost(&ds, &big).unwrap() >= kmedian_cost(&ds, &small).unwrap());
            }
        }
    }
}
