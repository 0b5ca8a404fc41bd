//! Matchings on the complete bichromatic bipartite graph.
//!
//! All routines are deterministic. Among optimal perfect matchings the one
//! whose pair list, sorted by left id, is lexicographically smallest is
//! returned.

use std::collections::VecDeque;

use crate::dataset::{Color, ColoredDataset};
use crate::error::{Error, Result};

/// Complete bipartite graph with blue points on the left and red on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    left: Vec<usize>,
    right: Vec<usize>,
    /// `weights[i][j]` is the weight between `left[i]` and `right[j]`.
    weights: Vec<Vec<f64>>,
}

impl BipartiteGraph {
    pub fn new(left: Vec<usize>, right: Vec<usize>, weights: Vec<Vec<f64>>) -> Result<Self> {
        if weights.len() != left.len() || weights.iter().any(|row| row.len() != right.len()) {
            return Err(Error::InvalidParameter(format!(
                "weight matrix must be {} x {}",
                left.len(),
                right.len()
            )));
        }
        if weights.iter().flatten().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter("weights must be finite and nonnegative".into()));
        }
        Ok(BipartiteGraph { left, right, weights })
    }

    /// Blue ids on the left, red ids on the right, weighted by the dataset metric.
    pub fn from_dataset(ds: &ColoredDataset) -> Self {
        let left = ds.ids_of(Color::Blue);
        let right = ds.ids_of(Color::Red);
        let weights = left.iter().map(|&b| right.iter().map(|&r| ds.dist(b, r)).collect()).collect();
        BipartiteGraph { left, right, weights }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn weight(&self, left_index: usize, right_index: usize) -> f64 {
        self.weights[left_index][right_index]
    }

    /// Distinct edge weights, ascending.
    pub fn distinct_weights(&self) -> Vec<f64> {
        let mut w: Vec<f64> = self.weights.iter().flatten().copied().collect();
        w.sort_by(f64::total_cmp);
        w.dedup();
        w
    }

    fn require_balanced(&self) -> Result<()> {
        if self.left.len() != self.right.len() || self.left.is_empty() {
            return Err(Error::UnbalancedSides { left: self.left.len(), right: self.right.len() });
        }
        Ok(())
    }

    fn to_matching(&self, mate: &[Option<usize>]) -> Matching {
        let pairs = mate
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|j| (self.left[i], self.right[j])))
            .collect();
        Matching { pairs }
    }
}

/// Pairs of (left id, right id), ordered by left position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_perfect_for(&self, g: &BipartiteGraph) -> bool {
        self.len() == g.left.len() && self.len() == g.right.len()
    }
}

/// Maximum-cardinality matching using edges of weight at most `tau`.
pub fn max_matching_under_threshold(g: &BipartiteGraph, tau: f64) -> Matching {
    let mate = maximum_matching(g.left.len(), g.right.len(), |i, j| g.weights[i][j] <= tau);
    g.to_matching(&mate)
}

/// Perfect matching minimizing the largest edge weight, and that weight.
pub fn bottleneck_perfect_matching(g: &BipartiteGraph) -> Result<(Matching, f64)> {
    g.require_balanced()?;
    let n = g.left.len();
    let candidates = g.distinct_weights();
    let is_perfect = |tau: f64| {
        maximum_matching(n, n, |i, j| g.weights[i][j] <= tau).iter().all(Option::is_some)
    };
    // the largest weight admits every edge, so it is always perfect
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if is_perfect(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let tau = candidates[lo];
    let allowed = |i: usize, j: usize| g.weights[i][j] <= tau;
    let mate = maximum_matching(n, n, allowed);
    let mate = lexicographically_smallest(n, unwrap_perfect(mate), allowed);
    Ok((g.to_matching(&wrap(mate)), tau))
}

/// Perfect matching of minimum total weight, and that weight.
pub fn min_cost_perfect_matching(g: &BipartiteGraph) -> Result<(Matching, f64)> {
    g.require_balanced()?;
    let n = g.left.len();
    let (assignment, row_dual, col_dual) = hungarian(&g.weights);
    let scale = g.weights.iter().flatten().fold(1.0f64, |m, &w| m.max(w));
    let slack = 1e-9 * scale;
    // complementary slackness: every optimal matching uses only tight edges
    let tight = |i: usize, j: usize| g.weights[i][j] - row_dual[i] - col_dual[j] <= slack;
    let mate = lexicographically_smallest(n, assignment, tight);
    let total = mate.iter().enumerate().map(|(i, &j)| g.weights[i][j]).sum();
    Ok((g.to_matching(&wrap(mate)), total))
}

fn wrap(mate: Vec<usize>) -> Vec<Option<usize>> {
    mate.into_iter().map(Some).collect()
}

fn unwrap_perfect(mate: Vec<Option<usize>>) -> Vec<usize> {
    mate.into_iter().map(|m| m.expect("matching is perfect")).collect()
}

/// Augmenting-path maximum matching; returns the right partner of each left vertex.
fn maximum_matching(n_left: usize, n_right: usize, allowed: impl Fn(usize, usize) -> bool) -> Vec<Option<usize>> {
    let mut mate_left: Vec<Option<usize>> = vec![None; n_left];
    let mut mate_right: Vec<Option<usize>> = vec![None; n_right];
    let mut parent = vec![usize::MAX; n_right];
    let mut seen = vec![false; n_right];
    let mut queue = VecDeque::new();
    for root in 0..n_left {
        seen.fill(false);
        queue.clear();
        queue.push_back(root);
        let mut free_right = None;
        'search: while let Some(u) = queue.pop_front() {
            for v in 0..n_right {
                if seen[v] || !allowed(u, v) {
                    continue;
                }
                seen[v] = true;
                parent[v] = u;
                match mate_right[v] {
                    None => {
                        free_right = Some(v);
                        break 'search;
                    }
                    Some(w) => queue.push_back(w),
                }
            }
        }
        let Some(mut v) = free_right else { continue };
        loop {
            let u = parent[v];
            let next = mate_left[u];
            mate_left[u] = Some(v);
            mate_right[v] = Some(u);
            match next {
                Some(nv) if u != root => v = nv,
                _ => break,
            }
        }
    }
    mate_left
}

/// Rewrites a perfect matching into the lexicographically smallest perfect
/// matching of the same allowed-edge graph.
///
/// Left vertices are fixed in order. For each, the rights that could take
/// its place are those with an alternating path to its current partner;
/// the smallest reachable right is chosen and the path is rotated.
fn lexicographically_smallest(n: usize, mut mate: Vec<usize>, allowed: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut owner = vec![0; n];
    for (i, &j) in mate.iter().enumerate() {
        owner[j] = i;
    }
    let mut next = vec![usize::MAX; n];
    let mut reach = vec![false; n];
    for u in 0..n {
        let target = mate[u];
        reach.fill(false);
        reach[target] = true;
        let mut queue = VecDeque::from([target]);
        // reverse search: right r reaches `target` if owner(r) can move to an already reaching right
        while let Some(r) = queue.pop_front() {
            for w in u + 1..n {
                let m = mate[w];
                if !reach[m] && allowed(w, r) {
                    reach[m] = true;
                    next[m] = r;
                    queue.push_back(m);
                }
            }
        }
        let Some(choice) = (0..n).find(|&v| reach[v] && allowed(u, v)) else {
            unreachable!("the current partner is always reachable and allowed");
        };
        let mut moves = Vec::new();
        let mut r = choice;
        while r != target {
            moves.push((owner[r], next[r]));
            r = next[r];
        }
        for (w, to) in moves {
            mate[w] = to;
            owner[to] = w;
        }
        mate[u] = choice;
        owner[choice] = u;
    }
    mate
}

/// O(n³) Hungarian algorithm on a square cost matrix.
///
/// Returns the column assigned to each row together with row and column
/// potentials satisfying `row[i] + col[j] <= cost[i][j]`, with equality on
/// assigned pairs.
fn hungarian(cost: &[Vec<f64>]) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
    let n = cost.len();
    // 1-based with a virtual column 0
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    (assignment, u[1..].to_vec(), v[1..].to_vec())
}
