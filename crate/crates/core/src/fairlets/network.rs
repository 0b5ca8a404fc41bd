use crate::dataset::{Color, ColoredDataset};
use crate::error::{Error, Result};
use crate::mcf::{CostValue, EdgeCost, FlowNetwork};

/// Node and edge indexing of a fairlet flow network.
///
/// Nodes: `0` is the blue source hub, `1` the red sink hub, then the blue
/// points, then the red points (each in ascending id), then `t'` copies of
/// every blue point (`blue_copy(i, j)`), then `t'` copies of every red point.
///
/// Edges are appended in this order: hub to hub; hub to each blue; each red
/// to the sink hub; each blue to its copies; each red copy to its red; and
/// finally every blue copy to every red copy, ordered by
/// `(blue, red, blue copy, red copy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkLayout {
    pub blues: Vec<usize>,
    pub reds: Vec<usize>,
    pub t_prime: usize,
    /// Index of the first blue-copy to red-copy edge.
    pub first_pair_edge: usize,
}

impl NetworkLayout {
    pub const SOURCE_HUB: usize = 0;
    pub const SINK_HUB: usize = 1;

    pub fn blue_node(&self, i: usize) -> usize {
        2 + i
    }

    pub fn red_node(&self, j: usize) -> usize {
        2 + self.blues.len() + j
    }

    pub fn blue_copy(&self, i: usize, copy: usize) -> usize {
        2 + self.blues.len() + self.reds.len() + i * self.t_prime + copy
    }

    pub fn red_copy(&self, j: usize, copy: usize) -> usize {
        self.blue_copy(self.blues.len(), 0) + j * self.t_prime + copy
    }

    pub fn node_count(&self) -> usize {
        2 + (self.blues.len() + self.reds.len()) * (1 + self.t_prime)
    }

    /// Edge index of `(blue_copy(i, k), red_copy(j, l))`.
    pub fn pair_edge(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let t = self.t_prime;
        self.first_pair_edge + ((i * self.reds.len() + j) * t + k) * t + l
    }

    /// Blue and red positions (indices into `blues` / `reds`) of a pair edge.
    pub fn pair_of_edge(&self, edge: usize) -> Option<(usize, usize)> {
        let offset = edge.checked_sub(self.first_pair_edge)?;
        let per_pair = self.t_prime * self.t_prime;
        let pair = offset / per_pair;
        if pair >= self.blues.len() * self.reds.len() {
            return None;
        }
        Some((pair / self.reds.len(), pair % self.reds.len()))
    }
}

/// A flow network whose integral optimal flows encode `(1, t')`-fairlets.
#[derive(Debug, Clone, PartialEq)]
pub struct FairletNetwork<C> {
    pub network: FlowNetwork<C>,
    pub layout: NetworkLayout,
}

/// Unit-cost network admitting only bichromatic pairs within distance `tau`.
pub fn center_network(ds: &ColoredDataset, t_prime: usize, tau: f64) -> Result<FairletNetwork<i64>> {
    build(ds, t_prime, |b, r| {
        if ds.dist(b, r) <= tau {
            EdgeCost::Finite(1)
        } else {
            EdgeCost::Infinite
        }
    })
}

/// Network whose pair edges cost the bichromatic distance.
pub fn median_network(ds: &ColoredDataset, t_prime: usize) -> Result<FairletNetwork<f64>> {
    build(ds, t_prime, |b, r| EdgeCost::Finite(ds.dist(b, r)))
}

fn build<C: CostValue>(
    ds: &ColoredDataset,
    t_prime: usize,
    pair_cost: impl Fn(usize, usize) -> EdgeCost<C>,
) -> Result<FairletNetwork<C>> {
    if t_prime < 2 {
        return Err(Error::InvalidParameter(format!("t' must be at least 2, got {t_prime}")));
    }
    let blues = ds.ids_of(Color::Blue);
    let reds = ds.ids_of(Color::Red);
    if blues.is_empty() || reds.is_empty() {
        return Err(Error::InvalidParameter("both colors must be present".into()));
    }
    let mut layout = NetworkLayout { blues, reds, t_prime, first_pair_edge: 0 };
    let (nb, nr) = (layout.blues.len(), layout.reds.len());
    let mut net = FlowNetwork::new(layout.node_count());
    let zero = EdgeCost::Finite(C::ZERO);
    let spill = (t_prime - 1) as i64;

    net.add_edge(NetworkLayout::SOURCE_HUB, NetworkLayout::SINK_HUB, nb.min(nr) as i64, zero);
    for i in 0..nb {
        net.add_edge(NetworkLayout::SOURCE_HUB, layout.blue_node(i), spill, zero);
    }
    for j in 0..nr {
        net.add_edge(layout.red_node(j), NetworkLayout::SINK_HUB, spill, zero);
    }
    for i in 0..nb {
        for k in 0..t_prime {
            net.add_edge(layout.blue_node(i), layout.blue_copy(i, k), 1, zero);
        }
    }
    // red copies drain into their red point, which is where red demand sits
    for j in 0..nr {
        for l in 0..t_prime {
            net.add_edge(layout.red_copy(j, l), layout.red_node(j), 1, zero);
        }
    }
    layout.first_pair_edge = net.edges.len();
    for i in 0..nb {
        for j in 0..nr {
            let cost = pair_cost(layout.blues[i], layout.reds[j]);
            for k in 0..t_prime {
                for l in 0..t_prime {
                    net.add_edge(layout.blue_copy(i, k), layout.red_copy(j, l), 1, cost);
                }
            }
        }
    }

    net.supply[NetworkLayout::SOURCE_HUB] = nr as i64;
    net.supply[NetworkLayout::SINK_HUB] = -(nb as i64);
    for i in 0..nb {
        net.supply[layout.blue_node(i)] = 1;
    }
    for j in 0..nr {
        net.supply[layout.red_node(j)] = -1;
    }
    Ok(FairletNetwork { network: net, layout })
}
