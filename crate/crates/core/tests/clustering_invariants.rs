use faircluster_core::clustering::{
    brute_force_fair_clustering, center_multiset_cost, gonzalez_kcenter, local_search_kmedian, weighted_kmedian_cost,
    WeightedPointSet,
};
use faircluster_core::{evaluate, fair_cluster, Clustering, Color, ColoredDataset, Objective, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> ColoredDataset {
    let coords = (0..n).map(|_| vec![rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)]).collect();
    let colors = (0..n).map(|i| if i % 2 == 0 { Color::Red } else { Color::Blue }).collect();
    ColoredDataset::euclidean(coords, colors).unwrap()
}

#[test]
fn gonzalez_is_within_twice_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..100 {
        let n = 3 + case % 8;
        let ds = random_points(&mut rng, n);
        let ids: Vec<usize> = (0..n).collect();
        for k in 1..=3.min(n) {
            let greedy = evaluate(&ds, &gonzalez_kcenter(&ds, &ids, k).unwrap(), Objective::Center).unwrap();
            let (_, opt) = brute_force_fair_clustering(&ds, k, Rational::ZERO, Objective::Center).unwrap();
            assert!(greedy <= 2.0 * opt + 1e-9, "case {case} k {k}");
        }
    }
}

#[test]
fn local_search_ends_in_a_swap_local_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for case in 0..60 {
        let n = 4 + case % 12;
        let ds = random_points(&mut rng, n);
        let entries = (0..n).map(|i| (i, rng.gen_range(1..4))).collect();
        let wps = WeightedPointSet::new(&ds, entries).unwrap();
        let k = 1 + case % 4;
        let c = local_search_kmedian(&ds, &wps, k, case as u64).unwrap();
        let cost = weighted_kmedian_cost(&ds, &wps, &c).unwrap();
        let centers = c.centers().unwrap().to_vec();
        for slot in 0..k {
            for x in (0..n).filter(|x| !centers.contains(x)) {
                let mut swapped = centers.clone();
                swapped[slot] = x;
                let alt: f64 = wps
                    .entries()
                    .iter()
                    .map(|&(p, w)| w as f64 * swapped.iter().map(|&s| ds.distance(p, s).unwrap()).fold(f64::INFINITY, f64::min))
                    .sum();
                assert!(alt >= cost * (1.0 - 1e-9), "case {case}: swap {slot}->{x} improves {cost} to {alt}");
            }
        }
    }
}

#[test]
fn classical_kmedian_from_local_search_is_near_optimal() {
    let ds = ColoredDataset::on_line(&[0.0, 1.0, 2.0, 10.0], vec![Color::Red; 4]).unwrap();
    let (_, opt) = brute_force_fair_clustering(&ds, 2, Rational::ZERO, Objective::Median).unwrap();
    assert_eq!(opt, 2.0);
    let wps = WeightedPointSet::unit(&ds, &[0, 1, 2, 3]).unwrap();
    let c = local_search_kmedian(&ds, &wps, 2, 3).unwrap();
    assert_eq!(evaluate(&ds, &c, Objective::Median).unwrap(), opt);
}

fn dataset_strategy() -> impl Strategy<Value = ColoredDataset> {
    (2usize..40).prop_flat_map(|n| {
        (proptest::collection::vec((-20.0f64..20.0, -20.0f64..20.0), n), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(pts, blue)| {
                let coords = pts.into_iter().map(|(x, y)| vec![x, y]).collect();
                let colors = blue.into_iter().map(|b| if b { Color::Blue } else { Color::Red }).collect();
                ColoredDataset::euclidean(coords, colors).unwrap()
            })
    })
}

fn check_run(ds: &ColoredDataset, k: usize, t_prime: usize, objective: Objective) -> Result<(), TestCaseError> {
    let floor = Rational::reciprocal_of(t_prime).unwrap();
    if ds.balance() < floor {
        prop_assert!(fair_cluster(ds, k, t_prime, objective, 1).is_err());
        return Ok(());
    }
    let (c, dec) = match fair_cluster(ds, k, t_prime, objective, 1) {
        Ok(run) => run,
        Err(faircluster_core::Error::TooManyClusters { .. }) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    c.validate_over(ds).unwrap();
    prop_assert!(faircluster_core::balance_of_clustering(ds, &c).unwrap() >= floor);
    let total = evaluate(ds, &c, objective).unwrap();
    let parts = faircluster_core::decomposition_cost(ds, &dec, objective) + center_multiset_cost(ds, &dec, &c, objective).unwrap();
    prop_assert!(total <= parts * (1.0 + 1e-6) + 1e-12);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipeline_keeps_balance_and_cost_composition(ds in dataset_strategy(), k in 1usize..6, t_prime in 1usize..5) {
        check_run(&ds, k, t_prime, Objective::Center)?;
        check_run(&ds, k, t_prime, Objective::Median)?;
    }
}

#[test]
fn lifted_clustering_follows_fairlet_centers() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let ds = random_points(&mut rng, 20);
    let (c, dec): (Clustering, _) = fair_cluster(&ds, 3, 1, Objective::Median, 9).unwrap();
    for x in 0..ds.len() {
        let y = dec.fairlets()[dec.fairlet_of(x)].center();
        assert_eq!(c.label(x), c.label(y));
    }
}
