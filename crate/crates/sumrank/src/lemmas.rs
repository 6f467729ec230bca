//! Random admissible column selections for the rank lemmas.

use rand::seq::SliceRandom;
use rand::Rng;
use sumrank_core::bounds::{selection_rank_oracle, Selection};
use sumrank_core::gf::gcd;
use sumrank_core::{FieldTower, Result};

/// Draws `t + r` distinct basis columns spread over the `ℓ` blocks, shifts
/// `k_0 < … < k_r` inside `[0, n)` with `k_r - k_0 ≤ t + r - 1`, and a step
/// `s` coprime with `n`.
pub fn random_selection(rng: &mut impl Rng, t: &FieldTower) -> Selection {
    let (ell, m) = (t.ell(), t.m());
    let n = (ell * m) as i64;
    let total = rng.random_range(1..=ell * m);
    let r = rng.random_range(0..total);
    let mut cells: Vec<(usize, usize)> =
        (0..ell).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    cells.shuffle(rng);
    let mut selections = vec![Vec::new(); ell];
    for &(i, j) in &cells[..total] {
        selections[i].push(j);
    }
    let k0 = rng.random_range(0..n - r as i64);
    let hi = (k0 + total as i64 - 1).min(n - 1);
    let mut window: Vec<i64> = (k0 + 1..=hi).collect();
    window.shuffle(rng);
    let mut ks = vec![k0];
    ks.extend_from_slice(&window[..r]);
    ks.sort_unstable();
    let units: Vec<i64> = (1..=n).filter(|&s| gcd(n as u64, s as u64) == 1).collect();
    Selection {
        b: rng.random_range(0..n),
        selections,
        ks,
        s: units[rng.random_range(0..units.len())],
    }
}

/// Outcome of one selection: ranks of `A_0` and `A_{t-1}` against the
/// claimed `r + 1` and `r + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSample {
    pub selection: Selection,
    pub base_rank: usize,
    pub full_rank: usize,
}

impl LemmaSample {
    pub fn holds(&self) -> bool {
        self.base_rank == self.selection.r() + 1
            && self.full_rank == self.selection.r() + self.selection.t()
    }
}

pub fn sample_lemmas(
    t: &FieldTower,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<Vec<LemmaSample>> {
    let a = t.ell_root_in_l();
    let beta = t.find_normal_element().value;
    (0..samples)
        .map(|_| {
            let selection = random_selection(rng, t);
            let base_rank = selection_rank_oracle(t, a, beta, &selection, 0)?;
            let full_rank = selection_rank_oracle(t, a, beta, &selection, selection.t() - 1)?;
            Ok(LemmaSample {
                selection,
                base_rank,
                full_rank,
            })
        })
        .collect()
}
