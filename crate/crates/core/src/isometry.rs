//! Semilinear isometries for the Hamming, rank and sum-rank metrics.
//!
//! Blocks and coordinates are indexed from 0. A permutation is stored as the
//! list of destinations: `perm[j]` is where block `j` is sent, so the image
//! has block `perm[j]` built from input block `j`.
//!
//! Field automorphisms are powers of the absolute Frobenius `x ↦ x^p` of `F`.
//! They map `E` onto itself, which is all the rank weight needs.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::{LinearCode, Metric, Partition};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::linalg;
use crate::TowerRef;

/// Square matrix, rows first.
pub type Matrix = Vec<Vec<Elem>>;

/// Multiplicities of the distinct part sizes, in first-occurrence order.
pub fn lambda_signature(part: &Partition) -> Vec<usize> {
    let mut sizes: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for &p in part.parts() {
        match sizes.iter().position(|&s| s == p) {
            Some(i) => counts[i] += 1,
            None => {
                sizes.push(p);
                counts.push(1);
            }
        }
    }
    counts
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| Elem((i == j) as u32)).collect())
        .collect()
}

/// The in-block shift matrix with `P[k][k+1 mod N] = 1`, so `vP` rotates `v`
/// right by one.
pub fn shift_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|k| (0..n).map(|j| Elem((j == (k + 1) % n) as u32)).collect())
        .collect()
}

fn inverse_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &d) in perm.iter().enumerate() {
        inv[d] = j;
    }
    inv
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter()
        .all(|&d| d < seen.len() && !core::mem::replace(&mut seen[d], true))
}

/// `(a_0, …, a_{ℓ-1}; M_0, …, M_{ℓ-1}; π; θ)` acting on `F^n` by
/// block `i` of the image `= θ(a_i · c^{(π^{-1}(i))}) · M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRankIsometry {
    tower: TowerRef,
    partition: Partition,
    scalars: Vec<Elem>,
    /// Entries in `E`.
    matrices: Vec<Matrix>,
    perm: Vec<usize>,
    aut: u32,
}

impl SumRankIsometry {
    pub fn new(
        tower: TowerRef,
        partition: Partition,
        scalars: Vec<Elem>,
        matrices: Vec<Matrix>,
        perm: Vec<usize>,
        aut: u32,
    ) -> Result<Self> {
        let blocks = partition.num_blocks();
        if scalars.len() != blocks || matrices.len() != blocks || perm.len() != blocks {
            return Err(Error::ShapeMismatch(
                "one scalar, matrix and image per block",
            ));
        }
        let f = tower.f();
        if scalars.iter().any(|&a| a.is_zero() || !f.contains(a)) {
            return Err(Error::ShapeMismatch(
                "scalars must be nonzero elements of F",
            ));
        }
        if !is_permutation(&perm) {
            return Err(Error::ShapeMismatch("not a permutation"));
        }
        let parts = partition.parts();
        if perm.iter().enumerate().any(|(j, &d)| parts[d] != parts[j]) {
            return Err(Error::ShapeMismatch("permutation mixes block sizes"));
        }
        let e = tower.e();
        for (m, &size) in matrices.iter().zip(parts) {
            if m.len() != size || m.iter().any(|r| r.len() != size) {
                return Err(Error::ShapeMismatch("matrix size differs from block size"));
            }
            if m.iter().flatten().any(|&x| !e.contains(x)) {
                return Err(Error::ShapeMismatch("matrix entries must lie in E"));
            }
            if linalg::invert(e, m).is_none() {
                return Err(Error::NotInvertible);
            }
        }
        let aut = aut % f.degree();
        Ok(Self {
            tower,
            partition,
            scalars,
            matrices,
            perm,
            aut,
        })
    }

    pub fn identity(tower: TowerRef, partition: Partition) -> Self {
        let blocks = partition.num_blocks();
        let matrices = partition
            .parts()
            .iter()
            .map(|&s| identity_matrix(s))
            .collect();
        Self {
            tower,
            partition,
            scalars: vec![Elem::ONE; blocks],
            matrices,
            perm: (0..blocks).collect(),
            aut: 0,
        }
    }

    /// The element realising `ρ`: block `j` moves to `j + 1 mod ℓ`.
    pub fn rho(tower: TowerRef, partition: Partition) -> Result<Self> {
        let n = partition.equal_part().ok_or(Error::UnequalParts)?;
        let blocks = partition.num_blocks();
        Ok(Self {
            tower,
            scalars: vec![Elem::ONE; blocks],
            matrices: vec![identity_matrix(n); blocks],
            perm: (0..blocks).map(|j| (j + 1) % blocks).collect(),
            aut: 0,
            partition,
        })
    }

    /// The element realising `φ`: `(1, (P, …, P), id, θ)`.
    pub fn phi(tower: TowerRef, partition: Partition) -> Result<Self> {
        let n = partition.equal_part().ok_or(Error::UnequalParts)?;
        let blocks = partition.num_blocks();
        let aut = tower.theta_frobenius_steps();
        Ok(Self {
            tower,
            scalars: vec![Elem::ONE; blocks],
            matrices: vec![shift_matrix(n); blocks],
            perm: (0..blocks).collect(),
            aut,
            partition,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn scalars(&self) -> &[Elem] {
        &self.scalars
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Frobenius exponent of the field automorphism.
    pub fn aut(&self) -> u32 {
        self.aut
    }

    fn embedded(&self, m: &Matrix) -> Matrix {
        m.iter()
            .map(|r| r.iter().map(|&x| self.tower.e_to_f(x)).collect())
            .collect()
    }

    pub fn act(&self, c: &[Elem]) -> Result<Vec<Elem>> {
        if c.len() != self.partition.total() {
            return Err(Error::ShapeMismatch("vector length differs from partition"));
        }
        let f = self.tower.f();
        let blocks: Vec<&[Elem]> = self.partition.blocks(c).collect();
        let inv = inverse_perm(&self.perm);
        let mut out = Vec::with_capacity(c.len());
        for (i, m) in self.matrices.iter().enumerate() {
            let src = blocks[inv[i]];
            let twisted: Vec<Elem> = src
                .iter()
                .map(|&x| f.frobenius(f.mul(self.scalars[i], x), self.aut))
                .collect();
            out.extend(linalg::vec_mat(f, &twisted, &self.embedded(m)));
        }
        Ok(out)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.partition != other.partition {
            return Err(Error::ShapeMismatch("partitions differ"));
        }
        let f = self.tower.f();
        let e = self.tower.e();
        let deg = f.degree();
        let undo = (deg - self.aut) % deg;
        let tinv = inverse_perm(&other.perm);
        let blocks = self.scalars.len();
        let scalars = (0..blocks)
            .map(|i| f.mul(f.frobenius(other.scalars[i], undo), self.scalars[tinv[i]]))
            .collect();
        let e_steps = other.aut % e.degree();
        let matrices = (0..blocks)
            .map(|i| {
                let m: Matrix = self.matrices[tinv[i]]
                    .iter()
                    .map(|r| r.iter().map(|&x| e.frobenius(x, e_steps)).collect())
                    .collect();
                linalg::mat_mul(e, &m, &other.matrices[i])
            })
            .collect();
        let perm = self.perm.iter().map(|&d| other.perm[d]).collect();
        Ok(Self {
            tower: self.tower.clone(),
            partition: self.partition.clone(),
            scalars,
            matrices,
            perm,
            aut: (self.aut + other.aut) % deg,
        })
    }

    /// Whether `g·C = C`.
    pub fn is_automorphism(&self, code: &LinearCode) -> Result<bool> {
        if code.partition() != &self.partition {
            return Err(Error::ShapeMismatch("code partition differs"));
        }
        let image = code.map_rows(|r| self.act(r).expect("shape checked"))?;
        Ok(image == *code)
    }
}

/// `(a, π, θ)` acting on `F^ℓ` by coordinate `i ↦ θ(a_i c_{π^{-1}(i)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingIsometry {
    pub scalars: Vec<Elem>,
    pub perm: Vec<usize>,
    pub aut: u32,
}

impl HammingIsometry {
    pub fn act(&self, tower: &TowerRef, c: &[Elem]) -> Result<Vec<Elem>> {
        if c.len() != self.perm.len()
            || self.scalars.len() != c.len()
            || !is_permutation(&self.perm)
        {
            return Err(Error::ShapeMismatch("hamming isometry length"));
        }
        let f = tower.f();
        let inv = inverse_perm(&self.perm);
        Ok((0..c.len())
            .map(|i| f.frobenius(f.mul(self.scalars[i], c[inv[i]]), self.aut))
            .collect())
    }

    /// The cyclic shift `(c_0, …, c_{ℓ-1}) ↦ (c_{ℓ-1}, c_0, …)`.
    pub fn cyclic_shift(ell: usize) -> Self {
        Self {
            scalars: vec![Elem::ONE; ell],
            perm: (0..ell).map(|j| (j + 1) % ell).collect(),
            aut: 0,
        }
    }
}

/// `(M, θ)` acting on `F^N` by `c ↦ θ(c)·M`, `M ∈ GL(N, E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankIsometry {
    pub matrix: Matrix,
    pub aut: u32,
}

impl RankIsometry {
    pub fn act(&self, tower: &TowerRef, c: &[Elem]) -> Result<Vec<Elem>> {
        if self.matrix.len() != c.len() {
            return Err(Error::ShapeMismatch("rank isometry length"));
        }
        let f = tower.f();
        let tw: Vec<Elem> = c.iter().map(|&x| f.frobenius(x, self.aut)).collect();
        let m: Matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| tower.e_to_f(x)).collect())
            .collect();
        Ok(linalg::vec_mat(f, &tw, &m))
    }
}

/// `ι_H(a, π, θ_1) = (a, I, …, I, π, θ_1)` on the partition `(N, …, N)`.
pub fn iota_h(tower: TowerRef, g: &HammingIsometry, block_len: usize) -> Result<SumRankIsometry> {
    let ell = g.perm.len();
    SumRankIsometry::new(
        tower,
        Partition::uniform(ell, block_len)?,
        g.scalars.clone(),
        vec![identity_matrix(block_len); ell],
        g.perm.clone(),
        g.aut,
    )
}

/// `ι_R(M, θ_2) = (1, M, …, M, id, θ_2)` on the partition `(N, …, N)`.
pub fn iota_r(tower: TowerRef, g: &RankIsometry, ell: usize) -> Result<SumRankIsometry> {
    let n = g.matrix.len();
    SumRankIsometry::new(
        tower,
        Partition::uniform(ell, n)?,
        vec![Elem::ONE; ell],
        vec![g.matrix.clone(); ell],
        (0..ell).collect(),
        g.aut,
    )
}

/// Every invertible `n × n` matrix over `field`, in lexicographic order of
/// the flattened entries.
pub fn general_linear_group(field: &Gf, n: usize, budget: u64) -> Result<Vec<Matrix>> {
    let q = field.size() as u128;
    let required = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut out = Vec::new();
    let mut digits = vec![0u32; n * n];
    loop {
        let m: Matrix = digits
            .chunks(n.max(1))
            .map(|r| r.iter().map(|&d| Elem(d)).collect())
            .collect();
        if linalg::invert(field, &m).is_some() {
            out.push(m);
        }
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q as u32 {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Counts the `F`-linear maps `v ↦ vA`, `A ∈ GL(n, F)`, that preserve the
/// rank weight over `E` on all of `F^n`. Returns `(preserving, |GL(n, F)|)`.
pub fn count_rank_preserving_maps(
    tower: &TowerRef,
    n: usize,
    budget: u64,
) -> Result<(usize, usize)> {
    let f = tower.f();
    let group = general_linear_group(f, n, budget)?;
    let space = LinearCode::full_space(tower.clone(), Partition::new(vec![n])?);
    let mut vectors = Vec::new();
    space.for_each_codeword(budget, |v| vectors.push(v.to_vec()))?;
    let weights: Vec<usize> = vectors
        .iter()
        .map(|v| space.weight(v, Metric::Rank))
        .collect();
    let preserving = group
        .iter()
        .filter(|a| {
            vectors
                .iter()
                .zip(&weights)
                .all(|(v, &w)| space.weight(&linalg::vec_mat(f, v, a), Metric::Rank) == w)
        })
        .count();
    Ok((preserving, group.len()))
}

/// `min_A d_H(C·A)` over block-diagonal `A = diag(A_1, …, A_ℓ)` with
/// `A_i ∈ GL(n_i, E)`.
pub fn min_dist_via_block_diagonal(code: &LinearCode, budget: u64) -> Result<usize> {
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let tower = code.tower();
    let e = tower.e();
    let part = code.partition().clone();
    let mut groups = Vec::new();
    let mut combos: u128 = 1;
    for &s in part.parts() {
        let g = general_linear_group(e, s, budget)?;
        combos = combos.saturating_mul(g.len() as u128);
        groups.push(g);
    }
    let required = combos.saturating_mul(code.codeword_count());
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let flat = Partition::uniform(code.len(), 1)?;
    let mut idx = vec![0usize; groups.len()];
    let mut best = usize::MAX;
    loop {
        let mats: Vec<Matrix> = idx
            .iter()
            .zip(&groups)
            .map(|(&i, g)| {
                g[i].iter()
                    .map(|r| r.iter().map(|&x| tower.e_to_f(x)).collect())
                    .collect()
            })
            .collect();
        let image = code.map_rows(|r| {
            part.blocks(r)
                .zip(&mats)
                .flat_map(|(b, m)| linalg::vec_mat(tower.f(), b, m))
                .collect()
        })?;
        let d = image
            .with_partition(flat.clone())?
            .min_distance_bruteforce(Metric::Hamming, budget)?;
        best = best.min(d);
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < groups[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::build_tower;
    use alloc::sync::Arc;

    fn f4() -> TowerRef {
        Arc::new(build_tower(2, 1, 2, 1, 1, 2).unwrap())
    }

    #[test]
    fn signatures() {
        let sig = |v: &[usize]| lambda_signature(&Partition::new(v.to_vec()).unwrap());
        assert_eq!(sig(&[2, 2, 2]), [3]);
        assert_eq!(sig(&[1, 2, 1]), [2, 1]);
        assert_eq!(sig(&[3, 1, 3, 1, 1]), [2, 3]);
    }

    #[test]
    fn gl_sizes() {
        let f2 = Gf::new(2, 1).unwrap();
        assert_eq!(general_linear_group(&f2, 2, 1 << 20).unwrap().len(), 6);
        let f4 = Gf::new(2, 2).unwrap();
        assert_eq!(general_linear_group(&f4, 2, 1 << 20).unwrap().len(), 180);
        assert!(general_linear_group(&f4, 3, 100).is_err());
    }

    #[test]
    fn rank_preserving_count() {
        assert_eq!(count_rank_preserving_maps(&f4(), 2, 1 << 20), Ok((18, 180)));
    }

    #[test]
    fn identity_and_rho_actions() {
        let t = f4();
        let part = Partition::uniform(3, 2).unwrap();
        let c: Vec<Elem> = (0..6).map(|i| Elem(i % 4)).collect();
        let id = SumRankIsometry::identity(t.clone(), part.clone());
        assert_eq!(id.act(&c).unwrap(), c);
        let rho = SumRankIsometry::rho(t.clone(), part.clone()).unwrap();
        assert_eq!(
            rho.act(&c).unwrap(),
            crate::code::rho_shift(&c, &part).unwrap()
        );
        let phi = SumRankIsometry::phi(t.clone(), part.clone()).unwrap();
        assert_eq!(
            phi.act(&c).unwrap(),
            crate::code::phi_shift(&c, &part, &t).unwrap()
        );
    }

    #[test]
    fn validation() {
        let t = f4();
        let part = Partition::new(vec![1, 2]).unwrap();
        let mats = vec![identity_matrix(1), identity_matrix(2)];
        let ok = SumRankIsometry::new(
            t.clone(),
            part.clone(),
            vec![Elem(1), Elem(2)],
            mats.clone(),
            vec![0, 1],
            1,
        );
        assert!(ok.is_ok());
        let swap = SumRankIsometry::new(
            t.clone(),
            part.clone(),
            vec![Elem(1), Elem(2)],
            mats.clone(),
            vec![1, 0],
            0,
        );
        assert!(matches!(swap, Err(Error::ShapeMismatch(_))));
        let zero = SumRankIsometry::new(
            t.clone(),
            part.clone(),
            vec![Elem(0), Elem(2)],
            mats,
            vec![0, 1],
            0,
        );
        assert!(zero.is_err());
        let sing = vec![
            identity_matrix(1),
            vec![vec![Elem(1), Elem(1)], vec![Elem(1), Elem(1)]],
        ];
        let bad = SumRankIsometry::new(t, part, vec![Elem(1), Elem(1)], sing, vec![0, 1], 0);
        assert_eq!(bad, Err(Error::NotInvertible));
    }

    #[test]
    fn block_diagonal_hamming_reduction() {
        let t = f4();
        let part = Partition::uniform(3, 1).unwrap();
        let c = LinearCode::new(t, part, vec![vec![Elem(1), Elem(2), Elem(0)]]).unwrap();
        assert_eq!(min_dist_via_block_diagonal(&c, 1 << 20), Ok(2));
        let z = LinearCode::zero(c.tower().clone(), c.partition().clone());
        assert_eq!(
            min_dist_via_block_diagonal(&z, 1 << 20),
            Err(Error::ZeroCode)
        );
    }
}
