//! Integral min-cost flow by successive shortest augmenting paths with node
//! potentials.
//!
//! Costs are generic: `i64` for unit-cost feasibility networks, where every
//! comparison is exact, and `f64` for distance-weighted networks, compared
//! with a small absolute tolerance. All finite edge costs must be
//! nonnegative. Edges with [`EdgeCost::Infinite`] stay in the model but can
//! never carry flow.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Debug;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Scalar used for edge costs.
pub trait CostValue: Copy + Debug + PartialOrd + Add<Output = Self> + Sub<Output = Self> + 'static {
    const ZERO: Self;
    /// Absolute slack for "equal" comparisons.
    const TOLERANCE: Self;
    fn times(self, units: i64) -> Self;
    fn total_cmp(&self, other: &Self) -> Ordering;
    fn is_valid(&self) -> bool;
}

impl CostValue for i64 {
    const ZERO: i64 = 0;
    const TOLERANCE: i64 = 0;
    fn times(self, units: i64) -> i64 {
        self * units
    }
    fn total_cmp(&self, other: &i64) -> Ordering {
        self.cmp(other)
    }
    fn is_valid(&self) -> bool {
        *self >= 0
    }
}

impl CostValue for f64 {
    const ZERO: f64 = 0.0;
    const TOLERANCE: f64 = 1e-9;
    fn times(self, units: i64) -> f64 {
        self * units as f64
    }
    fn total_cmp(&self, other: &f64) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn is_valid(&self) -> bool {
        self.is_finite() && *self >= 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeCost<C> {
    Finite(C),
    /// The edge exists in the model but may not be used.
    Infinite,
}

impl<C: CostValue> EdgeCost<C> {
    pub fn finite(self) -> Option<C> {
        match self {
            EdgeCost::Finite(c) => Some(c),
            EdgeCost::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowEdge<C> {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    pub cost: EdgeCost<C>,
}

/// A directed network with integer capacities and node supplies
/// (positive = supply, negative = demand).
#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork<C> {
    pub node_count: usize,
    pub edges: Vec<FlowEdge<C>>,
    pub supply: Vec<i64>,
}

impl<C: CostValue> FlowNetwork<C> {
    pub fn new(node_count: usize) -> Self {
        FlowNetwork { node_count, edges: Vec::new(), supply: vec![0; node_count] }
    }

    /// Appends an edge and returns its index.
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: i64, cost: EdgeCost<C>) -> usize {
        self.edges.push(FlowEdge { from, to, capacity, cost });
        self.edges.len() - 1
    }

    pub fn check(&self) -> Result<()> {
        if self.supply.len() != self.node_count {
            return Err(Error::InvalidNetwork(format!(
                "{} supplies for {} nodes",
                self.supply.len(),
                self.node_count
            )));
        }
        let total: i64 = self.supply.iter().sum();
        if total != 0 {
            return Err(Error::InvalidNetwork(format!("supplies sum to {total}, expected 0")));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.from >= self.node_count || e.to >= self.node_count {
                return Err(Error::InvalidNetwork(format!("edge {i} has an endpoint out of range")));
            }
            if e.from == e.to {
                return Err(Error::InvalidNetwork(format!("edge {i} is a self-loop")));
            }
            if e.capacity < 0 {
                return Err(Error::InvalidNetwork(format!("edge {i} has negative capacity {}", e.capacity)));
            }
            if let EdgeCost::Finite(c) = e.cost {
                if !c.is_valid() {
                    return Err(Error::InvalidNetwork(format!("edge {i} has invalid cost {c:?}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlowSolution<C> {
    Optimal { flow: Vec<i64>, total_cost: C },
    Infeasible,
}

impl<C: CostValue> FlowSolution<C> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FlowSolution::Optimal { .. })
    }

    pub fn flow(&self) -> Option<&[i64]> {
        match self {
            FlowSolution::Optimal { flow, .. } => Some(flow),
            FlowSolution::Infeasible => None,
        }
    }

    pub fn total_cost(&self) -> Option<C> {
        match self {
            FlowSolution::Optimal { total_cost, .. } => Some(*total_cost),
            FlowSolution::Infeasible => None,
        }
    }
}

/// Residual arc; arcs are stored in pairs so `id ^ 1` is the reverse arc.
struct Arc<C> {
    to: usize,
    residual: i64,
    cost: C,
}

struct Residual<C> {
    arcs: Vec<Arc<C>>,
    adjacency: Vec<Vec<usize>>,
}

impl<C: CostValue> Residual<C> {
    fn push(&mut self, from: usize, to: usize, capacity: i64, cost: C) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, residual: capacity, cost });
        self.arcs.push(Arc { to: from, residual: 0, cost: C::ZERO - cost });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }
}

struct HeapEntry<C> {
    dist: C,
    node: usize,
}

impl<C: CostValue> PartialEq for HeapEntry<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<C: CostValue> Eq for HeapEntry<C> {}
impl<C: CostValue> PartialOrd for HeapEntry<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<C: CostValue> Ord for HeapEntry<C> {
    // reversed: BinaryHeap is a max-heap; ties pop the lowest node index
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

/// Computes a minimum-cost integral flow meeting every supply and demand.
pub fn solve<C: CostValue>(net: &FlowNetwork<C>) -> Result<FlowSolution<C>> {
    net.check()?;
    let n = net.node_count;
    let source = n;
    let sink = n + 1;
    let mut res = Residual { arcs: Vec::with_capacity(2 * net.edges.len() + 2 * n), adjacency: vec![Vec::new(); n + 2] };

    let mut arc_of_edge = vec![None; net.edges.len()];
    for (i, e) in net.edges.iter().enumerate() {
        if let EdgeCost::Finite(c) = e.cost {
            if e.capacity > 0 {
                arc_of_edge[i] = Some(res.push(e.from, e.to, e.capacity, c));
            }
        }
    }
    let mut required = 0i64;
    for (v, &s) in net.supply.iter().enumerate() {
        if s > 0 {
            res.push(source, v, s, C::ZERO);
            required += s;
        } else if s < 0 {
            res.push(v, sink, -s, C::ZERO);
        }
    }

    let mut dual = vec![C::ZERO; n + 2];
    let mut dist = vec![C::ZERO; n + 2];
    let mut prev_arc = vec![usize::MAX; n + 2];
    let mut visited = vec![false; n + 2];
    let mut routed = 0i64;

    while routed < required {
        if !shortest_path(&res, &mut dual, &mut dist, &mut prev_arc, &mut visited, source, sink) {
            return Ok(FlowSolution::Infeasible);
        }
        let mut push = required - routed;
        let mut v = sink;
        while v != source {
            let a = prev_arc[v];
            push = push.min(res.arcs[a].residual);
            v = res.arcs[a ^ 1].to;
        }
        let mut v = sink;
        while v != source {
            let a = prev_arc[v];
            res.arcs[a].residual -= push;
            res.arcs[a ^ 1].residual += push;
            v = res.arcs[a ^ 1].to;
        }
        routed += push;
    }

    let flow: Vec<i64> = net
        .edges
        .iter()
        .zip(&arc_of_edge)
        .map(|(e, arc)| arc.map_or(0, |a| e.capacity - res.arcs[a].residual))
        .collect();
    let total_cost = flow_cost(net, &flow).expect("solver never routes over infinite edges");
    Ok(FlowSolution::Optimal { flow, total_cost })
}

/// Dijkstra on reduced costs. Updates the potentials of settled nodes so
/// reduced costs stay nonnegative on every residual arc.
fn shortest_path<C: CostValue>(
    res: &Residual<C>,
    dual: &mut [C],
    dist: &mut [C],
    prev_arc: &mut [usize],
    visited: &mut [bool],
    source: usize,
    sink: usize,
) -> bool {
    visited.fill(false);
    prev_arc.fill(usize::MAX);
    let mut reached = vec![false; dist.len()];
    dist[source] = C::ZERO;
    reached[source] = true;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry { dist: C::ZERO, node: source });
    while let Some(HeapEntry { dist: d, node: v }) = heap.pop() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        if v == sink {
            break;
        }
        for &a in &res.adjacency[v] {
            let arc = &res.arcs[a];
            if arc.residual == 0 {
                continue;
            }
            let mut reduced = arc.cost - dual[arc.to] + dual[v];
            // rounding can push a zero reduced cost slightly negative
            if reduced < C::ZERO {
                reduced = C::ZERO;
            }
            let candidate = d + reduced;
            if !reached[arc.to] || candidate < dist[arc.to] {
                reached[arc.to] = true;
                dist[arc.to] = candidate;
                prev_arc[arc.to] = a;
                heap.push(HeapEntry { dist: candidate, node: arc.to });
            }
        }
    }
    if !visited[sink] {
        return false;
    }
    let to_sink = dist[sink];
    for v in 0..dist.len() {
        if visited[v] {
            dual[v] = dual[v] - (to_sink - dist[v]);
        }
    }
    true
}

/// `Σ flow(e) · cost(e)`, or `None` if flow uses an infinite-cost edge.
pub fn flow_cost<C: CostValue>(net: &FlowNetwork<C>, flow: &[i64]) -> Option<C> {
    let mut total = C::ZERO;
    for (e, &f) in net.edges.iter().zip(flow) {
        if f == 0 {
            continue;
        }
        total = total + e.cost.finite()?.times(f);
    }
    Some(total)
}

/// Checks capacity bounds, conservation, and the reported total cost.
pub fn validate<C: CostValue>(net: &FlowNetwork<C>, sol: &FlowSolution<C>) -> bool {
    let FlowSolution::Optimal { flow, total_cost } = sol else {
        return false;
    };
    if net.check().is_err() || flow.len() != net.edges.len() {
        return false;
    }
    let mut excess = net.supply.clone();
    for (e, &f) in net.edges.iter().zip(flow) {
        if f < 0 || f > e.capacity {
            return false;
        }
        excess[e.from] -= f;
        excess[e.to] += f;
    }
    if excess.iter().any(|&x| x != 0) {
        return false;
    }
    match flow_cost(net, flow) {
        Some(c) => {
            let diff = if c > *total_cost { c - *total_cost } else { *total_cost - c };
            !(diff > C::TOLERANCE)
        }
        None => false,
    }
}
