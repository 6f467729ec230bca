mod common;

use common::*;
use rand::Rng;
use sumrank_core::isometry::{count_rank_preserving_maps, min_dist_via_block_diagonal};
use sumrank_core::{LinearCode, Metric, Partition, DEFAULT_BUDGET};

#[test]
fn rank_preserving_linear_maps_on_f4_squared() {
    let t = f4_tower();
    let (preserving, total) = count_rank_preserving_maps(&t, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(total, 180);
    // |F4*| · |GL(2, F2)|
    assert_eq!(preserving, 3 * 6);
}

#[test]
fn sum_rank_distance_is_min_over_block_diagonal_transforms() {
    let t = f4_tower();
    let part = Partition::new(vec![2, 2]).unwrap();
    let mut rng = rng(30);
    let mut tested = 0;
    while tested < 40 {
        let k = rng.random_range(1..=2);
        let rows = (0..k).map(|_| vector(&mut rng, t.f(), 4)).collect();
        let code = LinearCode::new(t.clone(), part.clone(), rows).unwrap();
        if code.dim() == 0 {
            continue;
        }
        let direct = code
            .min_distance_bruteforce(Metric::SumRank, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(
            min_dist_via_block_diagonal(&code, DEFAULT_BUDGET).unwrap(),
            direct
        );
        tested += 1;
    }
}
