use std::collections::BTreeMap;

use super::check_k;
use crate::dataset::ColoredDataset;
use crate::error::Result;
use crate::objective::Clustering;

/// Greedy furthest-point k-center over `ids`.
///
/// Starts from the lowest id and repeatedly adds the point farthest from the
/// chosen centers (lowest id on ties). Points join their nearest center,
/// lowest center index on ties. The returned clustering labels only `ids`.
pub fn gonzalez_kcenter(ds: &ColoredDataset, ids: &[usize], k: usize) -> Result<Clustering> {
    let mut ids = ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for &id in &ids {
        ds.check(id)?;
    }
    check_k(k, ids.len())?;

    let mut centers = vec![ids[0]];
    let mut nearest: Vec<f64> = ids.iter().map(|&x| ds.dist(x, ids[0])).collect();
    let mut label = vec![0usize; ids.len()];
    while centers.len() < k {
        let mut far = 0;
        for (p, &d) in nearest.iter().enumerate() {
            if d > nearest[far] {
                far = p;
            }
        }
        let c = ids[far];
        let index = centers.len();
        centers.push(c);
        for (p, &x) in ids.iter().enumerate() {
            let d = ds.dist(x, c);
            if d < nearest[p] {
                nearest[p] = d;
                label[p] = index;
            }
        }
    }
    let assignment: BTreeMap<usize, usize> = ids.iter().copied().zip(label).collect();
    Clustering::new(k, assignment, Some(centers))
}
