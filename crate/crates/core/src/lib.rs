//! Fair clustering through fairlet decomposition.
//!
//! A two-colored point set is first split into *fairlets*: small clusters
//! that already meet the balance target. Classical k-center or k-median
//! heuristics then cluster the fairlet centers, and every point follows its
//! fairlet. The resulting clustering inherits the fairlets' balance.
//!
//! ```
//! use faircluster_core::{fair_cluster, balance_of_clustering, Color, ColoredDataset, Objective, Rational};
//!
//! let ds = ColoredDataset::on_line(
//!     &[0.0, 1.0, 2.0, 10.0, 11.0, 12.0],
//!     vec![Color::Red, Color::Red, Color::Blue, Color::Blue, Color::Blue, Color::Red],
//! )
//! .unwrap();
//! let (clustering, fairlets) = fair_cluster(&ds, 2, 2, Objective::Center, 0).unwrap();
//! assert!(balance_of_clustering(&ds, &clustering).unwrap() >= Rational::new(1, 2).unwrap());
//! assert!(fairlets.len() >= 2);
//! ```

pub mod clustering;
pub mod dataset;
pub mod error;
pub mod fairlets;
pub mod matching;
pub mod mcf;
pub mod objective;
pub mod rational;

pub use clustering::{brute_force_fair_clustering, fair_cluster, gonzalez_kcenter, local_search_kmedian, WeightedPointSet};
pub use dataset::{balance_of_subset, Color, ColoredDataset, Metric};
pub use error::{Error, Result};
pub use fairlets::{decomposition_cost, Fairlet, FairletDecomposition};
pub use objective::{balance_of_clustering, evaluate, kcenter_cost, kmedian_cost, Clustering, Objective};
pub use rational::Rational;
