//! Linear codes in `F^n`, their weights, and the exhaustive distance oracle.

use alloc::vec;
use alloc::vec::Vec;

use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::linalg;
use crate::tower::{Extension, Level};
use crate::TowerRef;

/// Default enumeration budget in codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// An ordered partition `n = n_1 + … + n_ℓ` of the coordinates into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition);
        }
        Ok(Self { parts })
    }

    /// `count` blocks of size `size`.
    pub fn uniform(count: usize, size: usize) -> Result<Self> {
        Self::new(vec![size; count])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.parts.len()
    }

    /// The common part size, if all parts agree.
    pub fn equal_part(&self) -> Option<usize> {
        let first = self.parts[0];
        self.parts.iter().all(|&p| p == first).then_some(first)
    }

    /// Start offset of every block, plus the total.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &p in &self.parts {
            acc += p;
            out.push(acc);
        }
        out
    }

    pub fn blocks<'a, T>(&'a self, v: &'a [T]) -> impl Iterator<Item = &'a [T]> + 'a {
        let mut rest = v;
        self.parts.iter().map(move |&p| {
            let (head, tail) = rest.split_at(p);
            rest = tail;
            head
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Hamming,
    Rank,
    SumRank,
}

pub fn hamming_weight(c: &[Elem]) -> usize {
    c.iter().filter(|x| !x.is_zero()).count()
}

/// `dim_E ⟨c_0, …, c_{n-1}⟩` for `c ∈ F^n`.
pub fn rank_weight(tower: &TowerRef, c: &[Elem]) -> usize {
    tower.subfield_rank(Extension::FOverE, c)
}

/// Sum of the blockwise ranks over the given subfield.
pub fn sumrank_weight(
    tower: &TowerRef,
    c: &[Elem],
    part: &Partition,
    ext: Extension,
) -> Result<usize> {
    if c.len() != part.total() {
        return Err(Error::LengthMismatch {
            expected: part.total(),
            got: c.len(),
        });
    }
    Ok(part.blocks(c).map(|b| tower.subfield_rank(ext, b)).sum())
}

/// A linear code over `F` with a partition of its coordinates. The generator
/// matrix is kept in reduced row echelon form, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    tower: TowerRef,
    partition: Partition,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// The `F`-span of `rows`; rows may be dependent.
    pub fn new(tower: TowerRef, partition: Partition, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = partition.total();
        let f = tower.f();
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            if r.iter().any(|&x| !f.contains(x)) {
                return Err(Error::LevelMismatch);
            }
        }
        let (rows, pivots) = linalg::rref(f, rows);
        Ok(Self {
            tower,
            partition,
            rows,
            pivots,
        })
    }

    pub fn full_space(tower: TowerRef, partition: Partition) -> Self {
        let n = partition.total();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![Elem::ZERO; n];
                r[i] = Elem::ONE;
                r
            })
            .collect();
        Self {
            tower,
            partition,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn zero(tower: TowerRef, partition: Partition) -> Self {
        Self {
            tower,
            partition,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn field(&self) -> &Gf {
        self.tower.f()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Same code with another partition of the same length.
    pub fn with_partition(&self, partition: Partition) -> Result<Self> {
        if partition.total() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: partition.total(),
            });
        }
        Ok(Self {
            partition,
            ..self.clone()
        })
    }

    pub fn len(&self) -> usize {
        self.partition.total()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// RREF generator rows.
    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.len() && linalg::in_span(self.field(), &self.rows, &self.pivots, v)
    }

    /// `Σ coeffs[i] · row_i`.
    pub fn encode(&self, coeffs: &[Elem]) -> Vec<Elem> {
        linalg::vec_mat(self.field(), coeffs, &self.rows)
    }

    /// The image of the code under a map applied to every generator row.
    pub fn map_rows(&self, f: impl Fn(&[Elem]) -> Vec<Elem>) -> Result<Self> {
        let rows = self.rows.iter().map(|r| f(r)).collect();
        Self::new(self.tower.clone(), self.partition.clone(), rows)
    }

    /// Weight of `c` in the given metric; Hamming ignores the partition and
    /// rank treats the whole vector as one block.
    pub fn weight(&self, c: &[Elem], metric: Metric) -> usize {
        match metric {
            Metric::Hamming => hamming_weight(c),
            Metric::Rank => rank_weight(&self.tower, c),
            Metric::SumRank => self
                .partition
                .blocks(c)
                .map(|b| rank_weight(&self.tower, b))
                .sum(),
        }
    }

    /// Number of codewords with leading coefficient one, `(q^k - 1)/(q - 1)`.
    pub fn projective_count(&self) -> u128 {
        let q = self.field().size() as u128;
        (self.codeword_count() - 1) / (q - 1)
    }

    /// `q^k`, saturating at `u128::MAX`.
    pub fn codeword_count(&self) -> u128 {
        let q = self.field().size() as u128;
        q.checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    /// Minimum weight over projective codewords with index in `[start, end)`.
    ///
    /// Projective codewords are ordered by the position `p` of the leading
    /// unit coefficient, then by the remaining `k-1-p` coefficients read as a
    /// base-`q` number with the last coefficient least significant. Returns
    /// `None` for an empty range.
    pub fn min_weight_in_range(&self, metric: Metric, start: u128, end: u128) -> Option<usize> {
        let end = end.min(self.projective_count());
        if start >= end {
            return None;
        }
        let f = self.field();
        let q = f.size() as u128;
        let k = self.dim();

        // Locate `start`.
        let mut lead = 0;
        let mut offset = start;
        loop {
            let block = q.pow((k - 1 - lead) as u32);
            if offset < block {
                break;
            }
            offset -= block;
            lead += 1;
        }

        let mut best = usize::MAX;
        let mut remaining = end - start;
        while remaining > 0 {
            let free = k - 1 - lead;
            let mut digits = vec![0u32; free];
            let mut o = offset;
            for d in digits.iter_mut().rev() {
                *d = (o % q) as u32;
                o /= q;
            }
            let mut word = self.rows[lead].clone();
            for (t, &d) in digits.iter().enumerate() {
                if d != 0 {
                    let row = &self.rows[lead + 1 + t];
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w = f.add(*w, f.mul(Elem(d), r));
                    }
                }
            }
            let block_len = q.pow(free as u32) - offset;
            let steps = block_len.min(remaining);
            for step in 0..steps {
                best = best.min(self.weight(&word, metric));
                if best <= 1 {
                    return Some(best);
                }
                if step + 1 == steps {
                    break;
                }
                // Odometer increment, least significant digit last.
                let mut pos = free;
                while pos > 0 {
                    pos -= 1;
                    let row = &self.rows[lead + 1 + pos];
                    let old = Elem(digits[pos]);
                    let carry = digits[pos] + 1 == q as u32;
                    digits[pos] = if carry { 0 } else { digits[pos] + 1 };
                    let diff = f.sub(Elem(digits[pos]), old);
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w = f.add(*w, f.mul(diff, r));
                    }
                    if !carry {
                        break;
                    }
                }
            }
            remaining -= steps;
            lead += 1;
            offset = 0;
        }
        Some(best)
    }

    /// A shortcut: a generator row of weight one certifies `d = 1`.
    fn has_weight_one_row(&self, metric: Metric) -> bool {
        self.rows.iter().any(|r| self.weight(r, metric) == 1)
    }

    /// Checks the enumeration budget and trivial cases; `Ok(Some(d))` when the
    /// distance is known without enumeration.
    pub fn distance_precheck(&self, metric: Metric, budget: u64) -> Result<Option<usize>> {
        if self.dim() == 0 {
            return Err(Error::ZeroCode);
        }
        if self.has_weight_one_row(metric) {
            return Ok(Some(1));
        }
        let required = self.codeword_count();
        if required > budget as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        Ok(None)
    }

    /// Exact minimum distance by enumerating every nonzero codeword up to
    /// scalar multiples.
    pub fn min_distance_bruteforce(&self, metric: Metric, budget: u64) -> Result<usize> {
        if let Some(d) = self.distance_precheck(metric, budget)? {
            return Ok(d);
        }
        Ok(self
            .min_weight_in_range(metric, 0, self.projective_count())
            .expect("nonzero code has codewords"))
    }

    /// Visits every codeword (including zero) in a fixed order.
    pub fn for_each_codeword(&self, budget: u64, mut visit: impl FnMut(&[Elem])) -> Result<()> {
        let required = self.codeword_count();
        if required > budget as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let f = self.field();
        let q = f.size();
        let k = self.dim();
        let mut digits = vec![0u32; k];
        let mut word = vec![Elem::ZERO; self.len()];
        loop {
            visit(&word);
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                let old = Elem(digits[pos]);
                let carry = digits[pos] + 1 == q;
                digits[pos] = if carry { 0 } else { digits[pos] + 1 };
                let diff = f.sub(Elem(digits[pos]), old);
                for (w, &r) in word.iter_mut().zip(&self.rows[pos]) {
                    *w = f.add(*w, f.mul(diff, r));
                }
                if !carry {
                    break;
                }
            }
        }
    }

    /// Whether `ρ(C) ⊆ C` and `φ(C) ⊆ C`.
    pub fn is_cyclic_skew_cyclic(&self) -> Result<bool> {
        self.partition.equal_part().ok_or(Error::UnequalParts)?;
        for r in &self.rows {
            if !self.contains(&rho_shift(r, &self.partition)?) {
                return Ok(false);
            }
            if !self.contains(&phi_shift(r, &self.partition, &self.tower)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the code is invariant under the cyclic shift (Hamming view).
    pub fn is_cyclic(&self) -> bool {
        self.rows.iter().all(|r| {
            let mut s = r.clone();
            s.rotate_right(1);
            self.contains(&s)
        })
    }

    /// Whether the code is invariant under the `θ`-twisted shift (rank view).
    pub fn is_skew_cyclic(&self) -> bool {
        let whole = Partition::new(vec![self.len()]).expect("nonempty");
        self.rows
            .iter()
            .all(|r| self.contains(&phi_shift(r, &whole, &self.tower).expect("one block")))
    }
}

/// `ρ`: rotates the blocks right by one, `(A|B|C) ↦ (C|A|B)`.
pub fn rho_shift(c: &[Elem], part: &Partition) -> Result<Vec<Elem>> {
    let nb = part.equal_part().ok_or(Error::UnequalParts)?;
    check_len(c, part)?;
    let mut out = c.to_vec();
    out.rotate_right(nb);
    Ok(out)
}

/// `φ`: every block `(v_0, …, v_{N-1})` becomes `(θ(v_{N-1}), θ(v_0), …, θ(v_{N-2}))`.
pub fn phi_shift(c: &[Elem], part: &Partition, tower: &TowerRef) -> Result<Vec<Elem>> {
    part.equal_part().ok_or(Error::UnequalParts)?;
    check_len(c, part)?;
    Ok(part
        .blocks(c)
        .flat_map(|b| {
            let mut s: Vec<Elem> = b.iter().map(|&v| tower.theta(v, 1)).collect();
            s.rotate_right(1);
            s
        })
        .collect())
}

fn check_len(c: &[Elem], part: &Partition) -> Result<()> {
    if c.len() != part.total() {
        return Err(Error::LengthMismatch {
            expected: part.total(),
            got: c.len(),
        });
    }
    Ok(())
}

/// The code `ν^{-1}((g))` spanned by all `x^i z^j g`.
pub fn code_from_skew_generator(g: &BivarPoly) -> Result<LinearCode> {
    let tower = g.tower().clone();
    if g.level() != Level::F {
        return Err(Error::LevelMismatch);
    }
    if (tower.ell() as u64).is_multiple_of(tower.p() as u64) {
        return Err(Error::CharacteristicDividesEll);
    }
    let (ell, nb) = (tower.ell(), tower.block_len());
    let rows = (0..ell)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .map(|(i, j)| {
            BivarPoly::monomial(tower.clone(), Level::F, Elem::ONE, i, j)
                .mul(g)
                .expect("same tower")
                .nu_inverse()
        })
        .collect();
    let part = Partition::uniform(ell, nb)?;
    LinearCode::new(tower, part, rows)
}
