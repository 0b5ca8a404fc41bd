use super::{Fairlet, FairletDecomposition};
use crate::dataset::ColoredDataset;
use crate::error::{Error, Result};
use crate::objective::{best_center, Objective};

/// Largest instance the exhaustive decomposition search accepts.
pub const MAX_ORACLE_POINTS: usize = 10;

/// Optimal `(1, t')`-fairlet decomposition by exhaustive search.
///
/// Every fairlet holds exactly one point of one color and between 1 and `t'`
/// points of the other, with either color allowed as the singleton. Each
/// fairlet takes its best center.
pub fn brute_force_optimal_decomposition(
    ds: &ColoredDataset,
    t_prime: usize,
    objective: Objective,
) -> Result<(FairletDecomposition, f64)> {
    if ds.len() > MAX_ORACLE_POINTS {
        return Err(Error::InstanceTooLarge(format!("{} points, at most {MAX_ORACLE_POINTS}", ds.len())));
    }
    if t_prime == 0 {
        return Err(Error::InvalidParameter("t' must be at least 1".into()));
    }
    let mut search = Search {
        ds,
        t_prime,
        objective,
        assigned: vec![false; ds.len()],
        current: Vec::new(),
        best: None,
    };
    search.run(0.0);
    let (groups, cost) = search.best.ok_or_else(|| {
        Error::NoFeasibleSolution(format!("no (1,{t_prime})-fairlet decomposition exists"))
    })?;
    let fairlets = groups
        .into_iter()
        .map(|(members, center)| Fairlet::new(members, center))
        .collect::<Result<Vec<_>>>()?;
    Ok((FairletDecomposition::new(ds, fairlets, 1, t_prime)?, cost))
}

struct Search<'a> {
    ds: &'a ColoredDataset,
    t_prime: usize,
    objective: Objective,
    assigned: Vec<bool>,
    current: Vec<(Vec<usize>, usize)>,
    best: Option<(Vec<(Vec<usize>, usize)>, f64)>,
}

impl Search<'_> {
    fn accumulate(&self, acc: f64, cost: f64) -> f64 {
        match self.objective {
            Objective::Center => acc.max(cost),
            Objective::Median => acc + cost,
        }
    }

    /// Branches on every valid fairlet containing the lowest unassigned point.
    fn run(&mut self, acc: f64) {
        if let Some((_, best)) = &self.best {
            if acc >= *best {
                return;
            }
        }
        let Some(first) = self.assigned.iter().position(|&a| !a) else {
            self.best = Some((self.current.clone(), acc));
            return;
        };
        let rest: Vec<usize> = (first + 1..self.ds.len()).filter(|&i| !self.assigned[i]).collect();
        let max_extra = self.t_prime.min(rest.len());
        let mut chosen = Vec::with_capacity(max_extra + 1);
        chosen.push(first);
        self.extend(&rest, 0, &mut chosen, max_extra, acc);
    }

    fn extend(&mut self, rest: &[usize], from: usize, chosen: &mut Vec<usize>, max_extra: usize, acc: f64) {
        if chosen.len() >= 2 && self.is_fairlet(chosen) {
            let (center, cost) = best_center(self.ds, chosen, self.objective);
            for &x in chosen.iter() {
                self.assigned[x] = true;
            }
            self.current.push((chosen.clone(), center));
            let next = self.accumulate(acc, cost);
            self.run(next);
            self.current.pop();
            for &x in chosen.iter() {
                self.assigned[x] = false;
            }
        }
        if chosen.len() > max_extra {
            return;
        }
        for i in from..rest.len() {
            chosen.push(rest[i]);
            self.extend(rest, i + 1, chosen, max_extra, acc);
            chosen.pop();
        }
    }

    fn is_fairlet(&self, members: &[usize]) -> bool {
        let colors = self.ds.colors();
        let first = colors[members[0]];
        let same = members.iter().filter(|&&x| colors[x] == first).count();
        let other = members.len() - same;
        let (few, many) = (same.min(other), same.max(other));
        few == 1 && (1..=self.t_prime).contains(&many)
    }
}
