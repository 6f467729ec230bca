#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumrank_core::{build_tower, Elem, Gf, TowerRef};

pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("SUMRANK_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_u64);
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn tower(p: u32, e: u32, m: u32, h: u32, ell: u32, n: u32) -> TowerRef {
    Arc::new(build_tower(p, e, m, h, ell, n).unwrap())
}

/// E=F2, F=F8, K=F4, L=F64, ℓ=m=N=3.
pub fn f64_tower() -> TowerRef {
    tower(2, 1, 3, 2, 3, 3)
}

/// E=K=F2, F=L=F4, ℓ=1, N=2.
pub fn f4_tower() -> TowerRef {
    tower(2, 1, 2, 1, 1, 2)
}

/// Towers with gcd(ℓ, m) = 1 where every bound hypothesis can hold.
pub fn admissible_towers() -> Vec<TowerRef> {
    vec![tower(3, 1, 3, 1, 2, 3), tower(2, 2, 2, 1, 3, 2)]
}

pub fn elem(rng: &mut ChaCha8Rng, f: &Gf) -> Elem {
    Elem(rng.random_range(0..f.size()))
}

pub fn nonzero(rng: &mut ChaCha8Rng, f: &Gf) -> Elem {
    Elem(rng.random_range(1..f.size()))
}

pub fn vector(rng: &mut ChaCha8Rng, f: &Gf, len: usize) -> Vec<Elem> {
    (0..len).map(|_| elem(rng, f)).collect()
}

/// Size of the span of `elems` over the subfield `sub` (given by its elements
/// inside the big field), by closing the set under subfield combinations.
pub fn span_dimension(big: &Gf, sub: &[Elem], elems: &[Elem]) -> usize {
    let mut span = vec![Elem::ZERO];
    for &x in elems {
        if span.contains(&x) {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * sub.len());
        for &s in &span {
            for &c in sub {
                next.push(big.add(s, big.mul(c, x)));
            }
        }
        next.sort();
        next.dedup();
        span = next;
    }
    let q = sub.len() as f64;
    (span.len() as f64).log(q).round() as usize
}

/// Elements of E inside F.
pub fn e_in_f(t: &TowerRef) -> Vec<Elem> {
    t.e().elements().map(|x| t.e_to_f(x)).collect()
}
