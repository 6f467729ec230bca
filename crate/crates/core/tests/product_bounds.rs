mod common;

use common::*;
use sumrank_core::product::{product_bound, product_corpus};
use sumrank_core::{BoundParams, Error, Metric, TowerRef, DEFAULT_BUDGET};

fn params(n: i64) -> Vec<BoundParams> {
    let mut out = Vec::new();
    for b in 0..n {
        for t1 in 0..n {
            for t2 in 0..n {
                for delta in 2..=n as usize {
                    for r in 0..=2 {
                        out.push(BoundParams::Ht {
                            b,
                            t1,
                            t2,
                            delta,
                            r,
                        });
                    }
                }
            }
        }
        for s in 0..n {
            for delta in 2..=n as usize {
                for k0 in 0..n {
                    for k1 in k0 + 1..k0 + n {
                        out.push(BoundParams::Roos {
                            b,
                            s,
                            delta,
                            ks: vec![k0, k1],
                        });
                    }
                }
            }
        }
    }
    out
}

fn run(t: &TowerRef) -> usize {
    let sweep = params((t.ell() * t.m()) as i64);
    let mut certified = 0;
    for pair in product_corpus(t).unwrap() {
        let pc = &pair.product;
        if pc.code.dim() == 0 {
            continue;
        }
        let d_h = pc
            .c1
            .min_distance_bruteforce(Metric::Hamming, DEFAULT_BUDGET)
            .unwrap();
        let d_r = pc
            .c2
            .min_distance_bruteforce(Metric::Rank, DEFAULT_BUDGET)
            .unwrap();
        for p in &sweep {
            match product_bound(t, &pair.f1, &pair.f2, p, d_h, d_r) {
                Ok(pb) => {
                    assert!(pb.certificate.bound <= d_h * d_r);
                    assert!(pb.d_h_lower <= d_h, "{p:?}");
                    assert!(pb.d_r_lower <= d_r, "{p:?}");
                    if d_r == 1 {
                        assert_eq!(pb.d_h_lower, pb.certificate.bound);
                    }
                    certified += 1;
                }
                Err(Error::PreconditionViolated(_)) | Err(Error::GridNotContained { .. }) => {}
                Err(e) => panic!("{e:?}"),
            }
        }
    }
    certified
}

#[test]
fn product_bounds_hold_on_coprime_towers() {
    for t in admissible_towers() {
        assert!(run(&t) > 0);
    }
}

#[test]
fn product_bounds_need_coprime_ell_and_m() {
    assert_eq!(run(&f64_tower()), 0);
}
