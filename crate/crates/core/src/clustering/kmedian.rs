use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_k, WeightedPointSet};
use crate::dataset::ColoredDataset;
use crate::error::{Error, Result};
use crate::objective::Clustering;

/// Independent random starts per call; the cheapest local optimum wins.
pub const LOCAL_SEARCH_RESTARTS: usize = 3;

/// Swaps must improve the objective by more than this fraction.
const RELATIVE_IMPROVEMENT: f64 = 1e-9;

/// Single-swap local search for weighted k-median with centers drawn from
/// the weighted points themselves.
///
/// Each restart begins from `k` distinct points sampled with a ChaCha8 stream
/// seeded by `seed`, then applies the best center/non-center swap while it
/// improves the objective `Σ weight · d(x, nearest center)`.
pub fn local_search_kmedian(ds: &ColoredDataset, wps: &WeightedPointSet, k: usize, seed: u64) -> Result<Clustering> {
    let ids: Vec<usize> = wps.entries().iter().map(|&(id, _)| id).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ids.len() {
        return Err(Error::InvalidParameter("weighted point set repeats an id".into()));
    }
    check_k(k, ids.len())?;
    let weights: Vec<f64> = wps.entries().iter().map(|&(_, w)| w as f64).collect();
    let m = ids.len();
    let dist: Vec<Vec<f64>> = ids.iter().map(|&a| ids.iter().map(|&b| ds.dist(a, b)).collect()).collect();
    let search = SwapSearch { dist: &dist, weights: &weights };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for _ in 0..LOCAL_SEARCH_RESTARTS {
        let start = sample(&mut rng, m, k).into_vec();
        let (centers, cost) = search.descend(start);
        if best.as_ref().is_none_or(|(_, b)| cost < *b) {
            best = Some((centers, cost));
        }
    }
    let (mut centers, _) = best.expect("at least one restart");
    centers.sort_unstable();

    let assignment: BTreeMap<usize, usize> = (0..m)
        .map(|p| {
            let mut label = 0;
            for (s, &c) in centers.iter().enumerate() {
                if dist[p][c] < dist[p][centers[label]] {
                    label = s;
                }
            }
            (ids[p], label)
        })
        .collect();
    Clustering::new(k, assignment, Some(centers.iter().map(|&c| ids[c]).collect()))
}

/// `Σ weight(x) · d(x, center of label(x))` over the weighted points.
pub fn weighted_kmedian_cost(ds: &ColoredDataset, wps: &WeightedPointSet, c: &Clustering) -> Result<f64> {
    let centers = c
        .centers()
        .ok_or_else(|| Error::InvalidClustering("weighted cost needs explicit centers".into()))?;
    let mut total = 0.0;
    for &(id, w) in wps.entries() {
        let label = c
            .label(id)
            .ok_or_else(|| Error::InvalidClustering(format!("point {id} is unlabelled")))?;
        total += w as f64 * ds.distance(id, centers[label])?;
    }
    Ok(total)
}

/// Swap search over positions `0..m` of a precomputed distance matrix.
struct SwapSearch<'a> {
    dist: &'a [Vec<f64>],
    weights: &'a [f64],
}

struct Nearest {
    slot: Vec<usize>,
    first: Vec<f64>,
    second: Vec<f64>,
}

impl SwapSearch<'_> {
    fn nearest(&self, centers: &[usize]) -> Nearest {
        let m = self.weights.len();
        let mut out = Nearest { slot: vec![0; m], first: vec![f64::INFINITY; m], second: vec![f64::INFINITY; m] };
        for p in 0..m {
            for (s, &c) in centers.iter().enumerate() {
                let d = self.dist[p][c];
                if d < out.first[p] {
                    out.second[p] = out.first[p];
                    out.first[p] = d;
                    out.slot[p] = s;
                } else if d < out.second[p] {
                    out.second[p] = d;
                }
            }
        }
        out
    }

    fn cost(&self, near: &Nearest) -> f64 {
        near.first.iter().zip(self.weights).map(|(d, w)| d * w).sum()
    }

    /// Cost after replacing the center in `slot` by position `x`.
    fn swap_cost(&self, near: &Nearest, slot: usize, x: usize) -> f64 {
        let mut total = 0.0;
        for p in 0..self.weights.len() {
            let kept = if near.slot[p] == slot { near.second[p] } else { near.first[p] };
            total += self.weights[p] * kept.min(self.dist[p][x]);
        }
        total
    }

    fn descend(&self, mut centers: Vec<usize>) -> (Vec<usize>, f64) {
        let m = self.weights.len();
        loop {
            let near = self.nearest(&centers);
            let current = self.cost(&near);
            let mut is_center = vec![false; m];
            for &c in &centers {
                is_center[c] = true;
            }
            let mut best: Option<(usize, usize, f64)> = None;
            for slot in 0..centers.len() {
                for x in (0..m).filter(|&x| !is_center[x]) {
                    let cost = self.swap_cost(&near, slot, x);
                    if best.is_none_or(|(_, _, b)| cost < b) {
                        best = Some((slot, x, cost));
                    }
                }
            }
            match best {
                Some((slot, x, cost)) if current - cost > RELATIVE_IMPROVEMENT * current => centers[slot] = x,
                _ => return (centers, current),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Color::*;
    use crate::objective::kmedian_cost;

    fn line() -> ColoredDataset {
        ColoredDataset::on_line(&[0.0, 1.0, 2.0, 10.0], vec![Red, Blue, Red, Blue]).unwrap()
    }

    #[test]
    fn converges_to_optimum_on_line() {
        let ds = line();
        let wps = WeightedPointSet::unit(&ds, &[0, 1, 2, 3]).unwrap();
        for seed in 0..10 {
            let c = local_search_kmedian(&ds, &wps, 2, seed).unwrap();
            assert_eq!(c.centers().unwrap(), &[1, 3]);
            assert_eq!(kmedian_cost(&ds, &c).unwrap(), 2.0);
        }
    }

    #[test]
    fn k_equals_n_costs_nothing() {
        let ds = line();
        let wps = WeightedPointSet::unit(&ds, &[0, 1, 2, 3]).unwrap();
        let c = local_search_kmedian(&ds, &wps, 4, 7).unwrap();
        assert_eq!(kmedian_cost(&ds, &c).unwrap(), 0.0);
    }

    #[test]
    fn weights_multiply_distances() {
        let ds = line();
        let wps = WeightedPointSet::new(&ds, vec![(0, 1), (3, 3)]).unwrap();
        let c = local_search_kmedian(&ds, &wps, 1, 0).unwrap();
        // a heavy point pulls the single center onto itself
        assert_eq!(c.centers().unwrap(), &[3]);
        assert_eq!(weighted_kmedian_cost(&ds, &wps, &c).unwrap(), 10.0);
        let other = Clustering::new(1, [(0, 0), (3, 0)].into(), Some(vec![0])).unwrap();
        assert_eq!(weighted_kmedian_cost(&ds, &wps, &other).unwrap(), 30.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let ds = line();
        assert!(WeightedPointSet::new(&ds, vec![(0, 0)]).is_err());
        assert!(WeightedPointSet::new(&ds, vec![(9, 1)]).is_err());
        let wps = WeightedPointSet::new(&ds, vec![(0, 1), (0, 2)]).unwrap();
        assert!(local_search_kmedian(&ds, &wps, 1, 0).is_err());
        let wps = WeightedPointSet::unit(&ds, &[0, 1]).unwrap();
        assert!(matches!(local_search_kmedian(&ds, &wps, 3, 0), Err(Error::TooManyClusters { .. })));
    }

    #[test]
    fn same_seed_same_answer() {
        let pos: Vec<f64> = (0..30).map(|i| ((i * 37) % 101) as f64).collect();
        let ds = ColoredDataset::on_line(&pos, vec![Red; 30]).unwrap();
        let wps = WeightedPointSet::unit(&ds, &(0..30).collect::<Vec<_>>()).unwrap();
        let a = local_search_kmedian(&ds, &wps, 4, 11).unwrap();
        let b = local_search_kmedian(&ds, &wps, 4, 11).unwrap();
        assert_eq!(a, b);
    }
}
