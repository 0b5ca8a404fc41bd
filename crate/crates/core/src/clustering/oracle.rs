use crate::dataset::{ratio_balance, Color, ColoredDataset};
use crate::error::{Error, Result};
use crate::objective::{best_center, Clustering, Objective};
use crate::rational::Rational;

pub const MAX_ORACLE_POINTS: usize = 10;
pub const MAX_ORACLE_CLUSTERS: usize = 3;

/// Optimal fair clustering by enumeration: exactly `k` nonempty clusters,
/// each with balance at least `t`, every cluster served by its best member.
pub fn brute_force_fair_clustering(
    ds: &ColoredDataset,
    k: usize,
    t: Rational,
    objective: Objective,
) -> Result<(Clustering, f64)> {
    let n = ds.len();
    if n > MAX_ORACLE_POINTS || k > MAX_ORACLE_CLUSTERS {
        return Err(Error::InstanceTooLarge(format!(
            "n = {n}, k = {k}; limits are {MAX_ORACLE_POINTS} points and {MAX_ORACLE_CLUSTERS} clusters"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("k = {k} must lie in 1..={n}")));
    }
    let mut labels = vec![0usize; n];
    let mut best: Option<(Vec<usize>, Vec<usize>, f64)> = None;
    // restricted growth strings enumerate each partition into labelled blocks once
    enumerate(&mut labels, 1, 1, k, &mut |labels| {
        let mut groups = vec![Vec::new(); k];
        for (x, &l) in labels.iter().enumerate() {
            groups[l].push(x);
        }
        let fair = groups.iter().all(|g| {
            let red = g.iter().filter(|&&x| ds.colors()[x] == Color::Red).count();
            ratio_balance(red, g.len() - red) >= t
        });
        if !fair {
            return;
        }
        let mut centers = Vec::with_capacity(k);
        let mut total = 0.0f64;
        for g in &groups {
            let (c, cost) = best_center(ds, g, objective);
            centers.push(c);
            total = match objective {
                Objective::Center => total.max(cost),
                Objective::Median => total + cost,
            };
        }
        if best.as_ref().is_none_or(|(_, _, b)| total < *b) {
            best = Some((labels.to_vec(), centers, total));
        }
    });
    let (labels, centers, cost) = best.ok_or_else(|| {
        Error::NoFeasibleSolution(format!("no {k}-clustering with every cluster at balance >= {t}"))
    })?;
    Ok((Clustering::from_labels(k, &labels, Some(centers))?, cost))
}

fn enumerate(labels: &mut [usize], pos: usize, used: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    let n = labels.len();
    if pos == n {
        if used == k {
            visit(labels);
        }
        return;
    }
    // not enough points left to open the remaining clusters
    if used + (n - pos) < k {
        return;
    }
    for l in 0..used.min(k) {
        labels[pos] = l;
        enumerate(labels, pos + 1, used, k, visit);
    }
    if used < k {
        labels[pos] = used;
        enumerate(labels, pos + 1, used + 1, k, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Color::*;
    use crate::objective::evaluate;

    #[test]
    fn zero_threshold_is_classical() {
        let ds = ColoredDataset::on_line(&[0.0, 1.0, 2.0, 10.0], vec![Red, Red, Red, Blue]).unwrap();
        let (c, cost) = brute_force_fair_clustering(&ds, 2, Rational::ZERO, Objective::Center).unwrap();
        assert_eq!(cost, 1.0);
        assert_eq!(evaluate(&ds, &c, Objective::Center).unwrap(), 1.0);
        let (_, cost) = brute_force_fair_clustering(&ds, 2, Rational::ZERO, Objective::Median).unwrap();
        assert_eq!(cost, 2.0);
    }

    #[test]
    fn fairness_forces_mixed_clusters() {
        // reds at 0 and 1, blues at 100 and 101
        let ds = ColoredDataset::on_line(&[0.0, 1.0, 100.0, 101.0], vec![Red, Red, Blue, Blue]).unwrap();
        let (_, classical) = brute_force_fair_clustering(&ds, 2, Rational::ZERO, Objective::Median).unwrap();
        let (c, fair) = brute_force_fair_clustering(&ds, 2, Rational::ONE, Objective::Median).unwrap();
        assert_eq!(classical, 2.0);
        assert_eq!(fair, 200.0);
        assert_ne!(c.label(0), c.label(1));
    }

    #[test]
    fn single_cluster_feasibility() {
        let ds = ColoredDataset::on_line(&[0.0, 1.0, 2.0], vec![Red, Red, Blue]).unwrap();
        let half = Rational::new(1, 2).unwrap();
        assert!(brute_force_fair_clustering(&ds, 1, half, Objective::Center).is_ok());
        assert!(matches!(
            brute_force_fair_clustering(&ds, 1, Rational::ONE, Objective::Center),
            Err(Error::NoFeasibleSolution(_))
        ));
    }

    #[test]
    fn enumeration_counts_stirling_numbers() {
        let mut count = 0;
        enumerate(&mut [0; 6], 1, 1, 3, &mut |_| count += 1);
        assert_eq!(count, 90); // S(6, 3)
    }

    #[test]
    fn size_limits() {
        let ds = ColoredDataset::on_line(&[0.0; 11], vec![Red; 11]).unwrap();
        assert!(matches!(
            brute_force_fair_clustering(&ds, 2, Rational::ZERO, Objective::Center),
            Err(Error::InstanceTooLarge(_))
        ));
    }
}
