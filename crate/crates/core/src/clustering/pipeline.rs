use std::collections::BTreeMap;

use super::{check_k, gonzalez_kcenter, local_search_kmedian, WeightedPointSet};
use crate::dataset::ColoredDataset;
use crate::error::{Error, Result};
use crate::fairlets::{decompose, FairletDecomposition};
use crate::objective::{combine, Clustering, Objective};

/// Clusters the fairlet centers into `k` groups and lifts the result so that
/// every point follows its fairlet's center.
///
/// k-center runs the furthest-point heuristic on the distinct centers;
/// k-median runs local search with each center weighted by its fairlet size.
pub fn cluster_fairlets(
    ds: &ColoredDataset,
    dec: &FairletDecomposition,
    k: usize,
    objective: Objective,
    seed: u64,
) -> Result<Clustering> {
    check_k(k, dec.len())?;
    let centers = dec.centers();
    let on_centers = match objective {
        Objective::Center => gonzalez_kcenter(ds, &centers, k)?,
        Objective::Median => {
            let weighted = dec.fairlets().iter().map(|f| (f.center(), f.len() as u64)).collect();
            local_search_kmedian(ds, &WeightedPointSet::new(ds, weighted)?, k, seed)?
        }
    };
    let assignment: BTreeMap<usize, usize> = (0..ds.len())
        .map(|x| {
            let y = dec.fairlets()[dec.fairlet_of(x)].center();
            (x, on_centers.label(y).expect("every fairlet center is labelled"))
        })
        .collect();
    Clustering::new(k, assignment, on_centers.centers().map(<[usize]>::to_vec))
}

/// Fair clustering with balance at least `1/t'`: fairlet decomposition
/// followed by classical clustering of the fairlet centers.
pub fn fair_cluster(
    ds: &ColoredDataset,
    k: usize,
    t_prime: usize,
    objective: Objective,
    seed: u64,
) -> Result<(Clustering, FairletDecomposition)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let dec = decompose(ds, t_prime, objective)?;
    let clustering = cluster_fairlets(ds, &dec, k, objective, seed)?;
    Ok((clustering, dec))
}

/// Cost of the fairlet-center multiset under the lifted clustering: each
/// point contributes the distance from its fairlet center to its cluster
/// center.
pub fn center_multiset_cost(
    ds: &ColoredDataset,
    dec: &FairletDecomposition,
    c: &Clustering,
    objective: Objective,
) -> Result<f64> {
    let centers = c
        .centers()
        .ok_or_else(|| Error::InvalidClustering("lifted clustering has no centers".into()))?;
    c.validate_over(ds)?;
    let costs = (0..ds.len()).map(|x| {
        let y = dec.fairlets()[dec.fairlet_of(x)].center();
        ds.dist(y, centers[c.label(x).expect("validated")])
    });
    Ok(combine(objective, costs))
}
