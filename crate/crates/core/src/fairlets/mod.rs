//! Fairlet decompositions: partitions of a two-colored point set into small
//! clusters that each meet a balance target, with a designated center each.

mod network;
mod oracle;
mod partition;
mod stars;

pub use network::{center_network, median_network, FairletNetwork, NetworkLayout};
pub use oracle::{brute_force_optimal_decomposition, MAX_ORACLE_POINTS};
pub use partition::balanced_partition;
pub use stars::{decompose_1t_center, decompose_1t_median, extract_stars, search_center_threshold};

use crate::dataset::{balance_of_subset, Color, ColoredDataset};
use crate::error::{Error, Result};
use crate::matching::{bottleneck_perfect_matching, min_cost_perfect_matching, BipartiteGraph, Matching};
use crate::objective::{combine, Objective};
use crate::rational::Rational;

/// A cluster of the decomposition together with its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fairlet {
    members: Vec<usize>,
    center: usize,
}

impl Fairlet {
    /// Members are stored sorted; the center must be one of them.
    pub fn new(mut members: Vec<usize>, center: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.binary_search(&center).is_err() {
            return Err(Error::InvalidDecomposition(format!("center {center} is not a member")));
        }
        Ok(Fairlet { members, center })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A `(b, r)`-fairlet decomposition: every fairlet has at most `b + r`
/// points and balance at least `b / r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairletDecomposition {
    fairlets: Vec<Fairlet>,
    beta: Vec<usize>,
    b: usize,
    r: usize,
}

impl FairletDecomposition {
    /// Validates that `fairlets` partition `ds` and satisfy the size and balance bounds.
    pub fn new(ds: &ColoredDataset, fairlets: Vec<Fairlet>, b: usize, r: usize) -> Result<Self> {
        if b == 0 || b > r {
            return Err(Error::InvalidDecomposition(format!("need 1 <= b <= r, got ({b}, {r})")));
        }
        let target = Rational::new(b as i64, r as i64)?;
        let mut beta = vec![usize::MAX; ds.len()];
        for (index, f) in fairlets.iter().enumerate() {
            if f.len() > b + r {
                return Err(Error::InvalidDecomposition(format!(
                    "fairlet {index} has {} points, more than {}",
                    f.len(),
                    b + r
                )));
            }
            let balance = balance_of_subset(ds, &f.members)?;
            if balance < target {
                return Err(Error::InvalidDecomposition(format!(
                    "fairlet {index} has balance {balance} below {target}"
                )));
            }
            for &id in &f.members {
                if beta[id] != usize::MAX {
                    return Err(Error::InvalidDecomposition(format!("point {id} is in two fairlets")));
                }
                beta[id] = index;
            }
        }
        if let Some(id) = beta.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidDecomposition(format!("point {id} is in no fairlet")));
        }
        Ok(FairletDecomposition { fairlets, beta, b, r })
    }

    pub fn fairlets(&self) -> &[Fairlet] {
        &self.fairlets
    }

    /// Index of the fairlet containing `id`.
    pub fn fairlet_of(&self, id: usize) -> usize {
        self.beta[id]
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Fairlet centers in fairlet order.
    pub fn centers(&self) -> Vec<usize> {
        self.fairlets.iter().map(Fairlet::center).collect()
    }

    pub fn len(&self) -> usize {
        self.fairlets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fairlets.is_empty()
    }
}

/// Cost of assigning each point to the center of its fairlet.
pub fn decomposition_cost(ds: &ColoredDataset, dec: &FairletDecomposition, objective: Objective) -> f64 {
    let dists = (0..ds.len()).map(|x| ds.dist(x, dec.fairlets[dec.beta[x]].center));
    combine(objective, dists)
}

pub(crate) fn require_equal_colors(ds: &ColoredDataset) -> Result<()> {
    let (red, blue) = (ds.count(Color::Red), ds.count(Color::Blue));
    if red != blue || red == 0 {
        return Err(Error::UnbalancedColors { red, blue });
    }
    Ok(())
}

fn pairs_to_decomposition(ds: &ColoredDataset, matching: &Matching) -> Result<FairletDecomposition> {
    let fairlets = matching
        .pairs
        .iter()
        .map(|&(b, r)| Fairlet::new(vec![b, r], b.min(r)))
        .collect::<Result<Vec<_>>>()?;
    FairletDecomposition::new(ds, fairlets, 1, 1)
}

/// Optimal `(1,1)`-fairlets for k-center from a bottleneck perfect matching.
pub fn decompose_11_center(ds: &ColoredDataset) -> Result<FairletDecomposition> {
    require_equal_colors(ds)?;
    let (matching, _) = bottleneck_perfect_matching(&BipartiteGraph::from_dataset(ds))?;
    pairs_to_decomposition(ds, &matching)
}

/// Optimal `(1,1)`-fairlets for k-median from a min-cost perfect matching.
pub fn decompose_11_median(ds: &ColoredDataset) -> Result<FairletDecomposition> {
    require_equal_colors(ds)?;
    let (matching, _) = min_cost_perfect_matching(&BipartiteGraph::from_dataset(ds))?;
    pairs_to_decomposition(ds, &matching)
}

/// Fails unless `balance(ds) >= 1/t'`.
pub(crate) fn require_balance_at_least(ds: &ColoredDataset, t_prime: usize) -> Result<()> {
    let required = Rational::reciprocal_of(t_prime)?;
    let balance = ds.balance();
    if balance < required {
        return Err(Error::InfeasibleBalance { balance: balance.to_string(), required: required.to_string() });
    }
    Ok(())
}

/// The fairlet stage alone: matching-based for `t' = 1`, flow-based otherwise.
pub fn decompose(ds: &ColoredDataset, t_prime: usize, objective: Objective) -> Result<FairletDecomposition> {
    if t_prime == 0 {
        return Err(Error::InvalidParameter("t' must be at least 1".into()));
    }
    require_balance_at_least(ds, t_prime)?;
    match (t_prime, objective) {
        (1, Objective::Center) => decompose_11_center(ds),
        (1, Objective::Median) => decompose_11_median(ds),
        (_, Objective::Center) => decompose_1t_center(ds, t_prime),
        (_, Objective::Median) => decompose_1t_median(ds, t_prime),
    }
}
