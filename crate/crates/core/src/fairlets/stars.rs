use std::collections::BTreeMap;

use super::network::{center_network, median_network, FairletNetwork};
use super::{require_balance_at_least, Fairlet, FairletDecomposition};
use crate::dataset::ColoredDataset;
use crate::error::{Error, Result};
use crate::matching::BipartiteGraph;
use crate::mcf::{solve, CostValue, FlowSolution};

/// Reads `(1, t')`-fairlets off a solved fairlet network.
///
/// Every unit of flow on a blue-copy to red-copy edge links that blue and red
/// point. In an optimal flow the linked pairs form stars; each star becomes a
/// fairlet centered at its hub (the endpoint of highest degree, lower id when
/// a star is a single pair). Zero-cost links joining two points that both
/// have other links are dropped first: removing them keeps the flow feasible
/// at equal cost, and only coincident points can produce them.
pub fn extract_stars<C: CostValue>(
    ds: &ColoredDataset,
    net: &FairletNetwork<C>,
    sol: &FlowSolution<C>,
) -> Result<FairletDecomposition> {
    let layout = &net.layout;
    let flow = sol.flow().ok_or(Error::InfeasibleFlow)?;
    if flow.len() != net.network.edges.len() {
        return Err(Error::InvalidParameter("solution does not belong to this network".into()));
    }
    let mut links: Vec<(usize, usize, C)> = Vec::new();
    for (e, &f) in flow.iter().enumerate().skip(layout.first_pair_edge) {
        if f > 0 {
            let (i, j) = layout.pair_of_edge(e).expect("pair edge");
            let cost = net.network.edges[e].cost.finite().ok_or(Error::InfeasibleFlow)?;
            links.extend(std::iter::repeat_n((i, j, cost), f as usize));
        }
    }
    let mut blue_degree = vec![0usize; layout.blues.len()];
    let mut red_degree = vec![0usize; layout.reds.len()];
    for &(i, j, _) in &links {
        blue_degree[i] += 1;
        red_degree[j] += 1;
    }
    links.retain(|&(i, j, cost)| {
        let removable = blue_degree[i] >= 2 && red_degree[j] >= 2 && !(cost > C::TOLERANCE);
        if removable {
            blue_degree[i] -= 1;
            red_degree[j] -= 1;
        }
        !removable
    });

    if let Some(i) = blue_degree.iter().position(|&d| d == 0) {
        return Err(Error::NotAStarForest(format!("blue point {} is isolated", layout.blues[i])));
    }
    if let Some(j) = red_degree.iter().position(|&d| d == 0) {
        return Err(Error::NotAStarForest(format!("red point {} is isolated", layout.reds[j])));
    }

    // hub id -> members
    let mut stars: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(i, j, _) in &links {
        let (b, r) = (layout.blues[i], layout.reds[j]);
        let hub = match (blue_degree[i], red_degree[j]) {
            (1, 1) => b.min(r),
            (_, 1) => b,
            (1, _) => r,
            _ => {
                return Err(Error::NotAStarForest(format!(
                    "points {b} and {r} both have several partners"
                )))
            }
        };
        let leaf = if hub == b { r } else { b };
        stars.entry(hub).or_insert_with(|| vec![hub]).push(leaf);
    }
    let mut fairlets = Vec::with_capacity(stars.len());
    for (hub, members) in stars {
        if members.len() - 1 > layout.t_prime {
            return Err(Error::NotAStarForest(format!("star at {hub} has more than {} leaves", layout.t_prime)));
        }
        fairlets.push(Fairlet::new(members, hub)?);
    }
    fairlets.sort_by_key(|f| f.members()[0]);
    FairletDecomposition::new(ds, fairlets, 1, layout.t_prime)
}

/// Smallest candidate threshold at which the unit-cost network is feasible,
/// together with the fairlets extracted there.
///
/// Candidates are zero and every distinct bichromatic distance.
pub fn search_center_threshold(ds: &ColoredDataset, t_prime: usize) -> Result<(f64, FairletDecomposition)> {
    require_balance_at_least(ds, t_prime)?;
    let mut candidates = BipartiteGraph::from_dataset(ds).distinct_weights();
    if candidates.first() != Some(&0.0) {
        candidates.insert(0, 0.0);
    }
    let attempt = |tau: f64| -> Result<Option<(FairletNetwork<i64>, FlowSolution<i64>)>> {
        let net = center_network(ds, t_prime, tau)?;
        let sol = solve(&net.network)?;
        Ok(sol.is_feasible().then_some((net, sol)))
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = attempt(candidates[hi])?.ok_or(Error::InfeasibleFlow)?;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match attempt(candidates[mid])? {
            Some(found) => {
                best = found;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let dec = extract_stars(ds, &best.0, &best.1)?;
    Ok((candidates[lo], dec))
}

/// `(1, t')`-fairlets for k-center, within twice the optimal decomposition cost.
pub fn decompose_1t_center(ds: &ColoredDataset, t_prime: usize) -> Result<FairletDecomposition> {
    check_t_prime(t_prime)?;
    search_center_threshold(ds, t_prime).map(|(_, dec)| dec)
}

/// `(1, t')`-fairlets for k-median from one distance-weighted flow solve.
pub fn decompose_1t_median(ds: &ColoredDataset, t_prime: usize) -> Result<FairletDecomposition> {
    check_t_prime(t_prime)?;
    require_balance_at_least(ds, t_prime)?;
    let net = median_network(ds, t_prime)?;
    let sol = solve(&net.network)?;
    if !sol.is_feasible() {
        return Err(Error::InfeasibleFlow);
    }
    extract_stars(ds, &net, &sol)
}

fn check_t_prime(t_prime: usize) -> Result<()> {
    if t_prime < 2 {
        return Err(Error::InvalidParameter(format!("t' must be at least 2, got {t_prime}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Color::{self, *};
    use crate::fairlets::decomposition_cost;
    use crate::objective::Objective;

    fn line(pos: &[f64], colors: Vec<Color>) -> ColoredDataset {
        ColoredDataset::on_line(pos, colors).unwrap()
    }

    /// Blue at 0, reds at distance 1 and 3.
    fn one_blue_two_reds() -> ColoredDataset {
        line(&[0.0, 1.0, -3.0], vec![Blue, Red, Red])
    }

    #[test]
    fn median_forced_star() {
        let ds = one_blue_two_reds();
        let net = median_network(&ds, 2).unwrap();
        let sol = solve(&net.network).unwrap();
        let dec = extract_stars(&ds, &net, &sol).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec.fairlets()[0].members(), &[0, 1, 2]);
        assert_eq!(dec.fairlets()[0].center(), 0);
        assert_eq!(decomposition_cost(&ds, &dec, Objective::Median), 4.0);
        let dec = decompose_1t_median(&ds, 2).unwrap();
        assert_eq!(decomposition_cost(&ds, &dec, Objective::Median), 4.0);
    }

    #[test]
    fn center_forced_star() {
        let ds = one_blue_two_reds();
        let (tau, dec) = search_center_threshold(&ds, 2).unwrap();
        assert_eq!(tau, 3.0);
        assert_eq!(dec.fairlets()[0].members(), &[0, 1, 2]);
        assert_eq!(decomposition_cost(&ds, &dec, Objective::Center), 3.0);
    }

    #[test]
    fn perfectly_matched_flow_gives_pairs() {
        let ds = line(&[0.0, 0.1, 50.0, 50.1, 100.0, 100.1], vec![Blue, Red, Red, Blue, Blue, Red]);
        let dec = decompose_1t_median(&ds, 2).unwrap();
        assert!(dec.fairlets().iter().all(|f| f.len() == 2));
        // pair stars are centered at the lower id
        assert_eq!(dec.centers(), vec![0, 2, 4]);
        let dec = decompose_1t_center(&ds, 3).unwrap();
        assert!(dec.fairlets().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn coincident_points_cost_nothing() {
        let ds = line(&[2.0, 2.0, 9.0, 9.0], vec![Blue, Red, Red, Blue]);
        let (tau, dec) = search_center_threshold(&ds, 2).unwrap();
        assert_eq!(tau, 0.0);
        assert_eq!(decomposition_cost(&ds, &dec, Objective::Center), 0.0);
        let dec = decompose_1t_median(&ds, 2).unwrap();
        assert_eq!(decomposition_cost(&ds, &dec, Objective::Median), 0.0);
    }

    #[test]
    fn many_coincident_points_still_yield_stars() {
        // all points at one spot: zero-cost links may form non-star components before pruning
        let ds = line(&[0.0; 7], vec![Blue, Red, Blue, Red, Red, Blue, Red]);
        for t in 2..=3 {
            let dec = decompose_1t_median(&ds, t).unwrap();
            assert_eq!(decomposition_cost(&ds, &dec, Objective::Median), 0.0);
        }
    }

    #[test]
    fn infeasible_balance_fails_fast() {
        let ds = line(&[0.0, 1.0, 2.0, 3.0], vec![Blue, Red, Red, Red]);
        assert!(matches!(decompose_1t_center(&ds, 2), Err(Error::InfeasibleBalance { .. })));
        assert!(matches!(decompose_1t_median(&ds, 2), Err(Error::InfeasibleBalance { .. })));
        assert!(decompose_1t_median(&ds, 3).is_ok());
        assert!(matches!(decompose_1t_median(&ds, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn infeasible_solution_is_rejected() {
        let ds = one_blue_two_reds();
        let net = median_network(&ds, 2).unwrap();
        assert_eq!(extract_stars(&ds, &net, &FlowSolution::Infeasible), Err(Error::InfeasibleFlow));
    }

    #[test]
    fn non_star_flow_is_rejected() {
        // two blues and two reds fully linked: a 4-cycle, not a star forest
        let ds = line(&[0.0, 1.0, 10.0, 11.0], vec![Blue, Blue, Red, Red]);
        let net = median_network(&ds, 2).unwrap();
        let l = &net.layout;
        let mut flow = vec![0; net.network.edges.len()];
        for (i, j, k, m) in [(0, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 1, 1)] {
            flow[l.pair_edge(i, j, k, m)] = 1;
        }
        let sol = FlowSolution::Optimal { flow, total_cost: 0.0 };
        assert!(matches!(extract_stars(&ds, &net, &sol), Err(Error::NotAStarForest(_))));
    }
}
