use super::{Fairlet, FairletDecomposition};
use crate::dataset::{Color, ColoredDataset};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Cost-oblivious `(b, r)`-fairlet decomposition of a set whose balance is
/// exactly `b / r`.
///
/// With `B` minority and `R` majority points remaining: while `R - B >= r - b`
/// take `r` majority and `b` minority points; otherwise take `R - B + b`
/// majority and `b` minority points, after which both colors remain in equal
/// number and are paired off. Points are taken in ascending id order and each
/// fairlet is centered at its lowest id.
pub fn balanced_partition(ds: &ColoredDataset, b: usize, r: usize) -> Result<FairletDecomposition> {
    if b == 0 || b > r || num_integer::gcd(b, r) != 1 {
        return Err(Error::InvalidParameter(format!("need coprime 1 <= b <= r, got ({b}, {r})")));
    }
    let target = Rational::new(b as i64, r as i64)?;
    if ds.balance() != target {
        return Err(Error::InfeasibleBalance { balance: ds.balance().to_string(), required: target.to_string() });
    }
    let (minority, majority) = if ds.count(Color::Blue) <= ds.count(Color::Red) {
        (ds.ids_of(Color::Blue), ds.ids_of(Color::Red))
    } else {
        (ds.ids_of(Color::Red), ds.ids_of(Color::Blue))
    };
    let mut minority = minority.into_iter();
    let mut majority = majority.into_iter();
    let mut fairlets = Vec::new();
    loop {
        let (few, many) = (minority.len(), majority.len());
        if few == 0 && many == 0 {
            break;
        }
        let (take_few, take_many) = if few == many {
            (1, 1)
        } else if many - few >= r - b {
            (b, r)
        } else {
            (b, many - few + b)
        };
        let mut members: Vec<usize> = minority.by_ref().take(take_few).collect();
        members.extend(majority.by_ref().take(take_many));
        let center = *members.iter().min().expect("nonempty fairlet");
        fairlets.push(Fairlet::new(members, center)?);
    }
    FairletDecomposition::new(ds, fairlets, b, r)
}
