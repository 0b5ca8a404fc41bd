//! Classical k-center / k-median heuristics, the fairlet reduction pipeline,
//! and exhaustive fair clustering for small instances.

mod kcenter;
mod kmedian;
mod oracle;
mod pipeline;

pub use kcenter::gonzalez_kcenter;
pub use kmedian::{local_search_kmedian, weighted_kmedian_cost, LOCAL_SEARCH_RESTARTS};
pub use oracle::{brute_force_fair_clustering, MAX_ORACLE_CLUSTERS, MAX_ORACLE_POINTS};
pub use pipeline::{center_multiset_cost, cluster_fairlets, fair_cluster};

use crate::dataset::ColoredDataset;
use crate::error::{Error, Result};

/// Points with positive integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPointSet {
    entries: Vec<(usize, u64)>,
}

impl WeightedPointSet {
    pub fn new(ds: &ColoredDataset, entries: Vec<(usize, u64)>) -> Result<Self> {
        for &(id, w) in &entries {
            ds.check(id)?;
            if w == 0 {
                return Err(Error::InvalidParameter(format!("point {id} has weight 0")));
            }
        }
        Ok(WeightedPointSet { entries })
    }

    /// Every id with weight one.
    pub fn unit(ds: &ColoredDataset, ids: &[usize]) -> Result<Self> {
        Self::new(ds, ids.iter().map(|&id| (id, 1)).collect())
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub(crate) fn check_k(k: usize, available: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > available {
        return Err(Error::TooManyClusters { k, available });
    }
    Ok(())
}
