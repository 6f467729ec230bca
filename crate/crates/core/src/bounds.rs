//! Defining sets and the BCH, Hartmann-Tzeng and Roos lower bounds on the
//! sum-rank distance of cyclic-skew-cyclic codes.
//!
//! All bounds only query pairs `(a^u, σ^v(β))` for one primitive `ℓ`-th root
//! `a` and one normal element `β`, so membership is cached on the `ℓ × m`
//! grid of exponents `(u mod ℓ, v mod m)`.
//!
//! Besides the hypotheses printed in each theorem, every checker requires
//! `N = m`, `n = ℓm` and `gcd(ℓ, m) = 1`. The last one is the standing
//! assumption behind the rank lemmas that the bounds rest on; without it the
//! grid pairs repeat with period `lcm(ℓ, m) < n` and the bounds fail (see the
//! `noncoprime` tests).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bivar::{nu_map, BivarPoly};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{gcd, Elem};
use crate::linalg;
use crate::tower::{FieldTower, Level};
use crate::TowerRef;

/// Membership table over the canonical grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    ell: usize,
    m: usize,
    cells: Vec<bool>,
}

impl Grid {
    /// `cells[u * m + v]` tells whether `(a^u, σ^v(β))` is in the set.
    pub fn new(ell: usize, m: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != ell * m {
            return Err(Error::LengthMismatch {
                expected: ell * m,
                got: cells.len(),
            });
        }
        Ok(Self { ell, m, cells })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    /// Exponents are reduced mod `ℓ` and mod `m`.
    pub fn contains(&self, a_exp: i64, sigma_exp: i64) -> bool {
        let u = a_exp.rem_euclid(self.ell as i64) as usize;
        let v = sigma_exp.rem_euclid(self.m as i64) as usize;
        self.cells[u * self.m + v]
    }

    /// First pair of `pairs` outside the set.
    pub fn first_missing(&self, pairs: &[(u64, u64)]) -> Option<(u64, u64)> {
        pairs
            .iter()
            .copied()
            .find(|&(u, v)| !self.contains(u as i64, v as i64))
    }
}

/// The defining set `T_C` of the code generated by `g`, seen through a fixed
/// primitive root `a` and normal element `β`.
#[derive(Clone, Debug)]
pub struct DefiningSetView {
    generator: BivarPoly,
    a: Elem,
    beta: Elem,
    grid: Grid,
}

impl DefiningSetView {
    /// Uses [`FieldTower::ell_root_in_l`] and [`FieldTower::find_normal_element`].
    pub fn new(g: &BivarPoly) -> Result<Self> {
        let t = g.tower();
        Self::with_points(g, t.ell_root_in_l(), t.find_normal_element().value)
    }

    /// `a` and `β` are given as elements of `L`.
    pub fn with_points(g: &BivarPoly, a: Elem, beta: Elem) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroCode);
        }
        let t = g.tower();
        check_points(t, a, beta)?;
        let (ell, m) = (t.ell(), t.m());
        let mut cells = Vec::with_capacity(ell * m);
        let l = t.l();
        for u in 0..ell {
            let au = l.pow(a, u as u64);
            let ev = g.ev_az(au)?;
            for v in 0..m {
                let bv = t.sigma(beta, v as i64);
                let point = l.div(t.sigma(bv, 1), bv).ok_or(Error::ZeroBeta)?;
                cells.push(ev.right_evaluate(point)?.is_zero());
            }
        }
        Ok(Self {
            generator: g.clone(),
            a,
            beta,
            grid: Grid { ell, m, cells },
        })
    }

    pub fn tower(&self) -> &TowerRef {
        self.generator.tower()
    }

    pub fn generator(&self) -> &BivarPoly {
        &self.generator
    }

    pub fn a(&self) -> Elem {
        self.a
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `Ev_{a',β'}(g) = 0` for an arbitrary pair.
    pub fn membership(&self, a: Elem, beta: Elem) -> Result<bool> {
        if beta.is_zero() {
            return Err(Error::ZeroBeta);
        }
        Ok(self.generator.ev_total(a, beta)?.is_zero())
    }

    pub fn bch_check(&self, p: &BoundParams) -> Result<BoundCertificate> {
        check(self.tower(), &self.grid, p, BoundKind::Bch)
    }

    pub fn ht_check(&self, p: &BoundParams) -> Result<BoundCertificate> {
        check(self.tower(), &self.grid, p, BoundKind::Ht)
    }

    pub fn roos_check(&self, p: &BoundParams) -> Result<BoundCertificate> {
        check(self.tower(), &self.grid, p, BoundKind::Roos)
    }

    pub fn best_bound_search(&self, limits: &SearchLimits) -> Result<BoundCertificate> {
        best_bound_search(self.tower(), &self.grid, limits)
    }
}

/// `a` must be a primitive `ℓ`-th root of unity in `K`, `β` normal for `L/K`.
pub fn check_points(t: &FieldTower, a: Elem, beta: Elem) -> Result<()> {
    let l = t.l();
    if t.from_l(Level::K, a).is_none() || l.mult_order(a) != Some(t.ell() as u64) {
        return Err(Error::NotPrimitive);
    }
    if !t.is_normal(beta) {
        return Err(Error::NotNormal);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    Bch,
    Ht,
    Roos,
}

/// Parameters of one bound instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundParams {
    /// Pairs `(a^{b+it}, σ^{it}β)`, `0 ≤ i ≤ δ-2`; bound `δ`.
    Bch { b: i64, t: i64, delta: usize },
    /// Pairs `(a^{b+it_1+st_2}, σ^{it_1+st_2}β)`, `0 ≤ i ≤ δ-2`, `0 ≤ s ≤ r`;
    /// bound `δ + r`.
    Ht {
        b: i64,
        t1: i64,
        t2: i64,
        delta: usize,
        r: usize,
    },
    /// Pairs `(a^{b+si+k_j}, σ^{si+k_j}β)`, `0 ≤ i ≤ δ-2`, `0 ≤ j ≤ r`;
    /// bound `δ + r` with `r = ks.len() - 1`.
    Roos {
        b: i64,
        s: i64,
        delta: usize,
        ks: Vec<i64>,
    },
}

impl BoundParams {
    pub fn kind(&self) -> BoundKind {
        match self {
            Self::Bch { .. } => BoundKind::Bch,
            Self::Ht { .. } => BoundKind::Ht,
            Self::Roos { .. } => BoundKind::Roos,
        }
    }

    pub fn delta(&self) -> usize {
        match self {
            Self::Bch { delta, .. } | Self::Ht { delta, .. } | Self::Roos { delta, .. } => *delta,
        }
    }

    pub fn r(&self) -> usize {
        match self {
            Self::Bch { .. } => 0,
            Self::Ht { r, .. } => *r,
            Self::Roos { ks, .. } => ks.len().saturating_sub(1),
        }
    }

    /// The claimed lower bound.
    pub fn bound(&self) -> usize {
        self.delta() + self.r()
    }

    /// Exponent pairs `(a_exp mod ℓ, σ_exp mod m)` in the theorem's order.
    pub fn grid_pairs(&self, ell: usize, m: usize) -> Vec<(u64, u64)> {
        let red = |u: i64, v: i64| {
            (
                u.rem_euclid(ell as i64) as u64,
                v.rem_euclid(m as i64) as u64,
            )
        };
        let rows = self.delta().saturating_sub(1) as i64;
        let mut out = Vec::new();
        match self {
            Self::Bch { b, t, .. } => {
                for i in 0..rows {
                    out.push(red(b + i * t, i * t));
                }
            }
            Self::Ht { b, t1, t2, r, .. } => {
                for i in 0..rows {
                    for s in 0..=*r as i64 {
                        let e = i * t1 + s * t2;
                        out.push(red(b + e, e));
                    }
                }
            }
            Self::Roos { b, s, ks, .. } => {
                for i in 0..rows {
                    for &k in ks {
                        let e = s * i + k;
                        out.push(red(b + e, e));
                    }
                }
            }
        }
        out
    }

    /// The hypotheses of the theorem for this kind, with `n = ℓm`.
    pub fn check_preconditions(&self, t: &FieldTower) -> Result<()> {
        let (ell, m) = (t.ell() as u64, t.m() as u64);
        let n = ell * m;
        let g = |x: i64| gcd(n, x.rem_euclid(n as i64) as u64);
        let delta = self.delta();
        if delta == 0 {
            return Err(Error::precondition("delta >= 1"));
        }
        if t.block_len() != t.m() {
            return Err(Error::precondition("N = m"));
        }
        let vacuous = matches!(self, Self::Bch { delta: 1, .. });
        if !vacuous && gcd(ell, m) != 1 {
            return Err(Error::precondition(format!(
                "gcd(ell, m) = 1 (ell = {ell}, m = {m})"
            )));
        }
        match self {
            Self::Bch { t, .. } => {
                if g(*t) != 1 {
                    return Err(Error::precondition(format!(
                        "gcd(n, t) = 1 (n = {n}, t = {t})"
                    )));
                }
            }
            Self::Ht { t1, t2, .. } => {
                if g(*t1) != 1 {
                    return Err(Error::precondition(format!(
                        "gcd(n, t1) = 1 (n = {n}, t1 = {t1})"
                    )));
                }
                if g(*t2) as usize >= delta {
                    return Err(Error::precondition(format!(
                        "gcd(n, t2) < delta (n = {n}, t2 = {t2}, delta = {delta})"
                    )));
                }
            }
            Self::Roos { s, ks, .. } => {
                if g(*s) != 1 {
                    return Err(Error::precondition(format!(
                        "gcd(n, s) = 1 (n = {n}, s = {s})"
                    )));
                }
                if ks.is_empty() {
                    return Err(Error::precondition("at least one k"));
                }
                if ks.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::precondition("k_0 < k_1 < ... < k_r"));
                }
                let span = ks[ks.len() - 1] - ks[0];
                let r = ks.len() as i64 - 1;
                if span > delta as i64 + r - 2 {
                    return Err(Error::precondition(format!(
                        "k_r - k_0 <= delta + r - 2 (span {span}, delta {delta}, r {r})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A verified bound: every listed pair lies in the defining set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub params: BoundParams,
    /// `(a_exp, σ_exp)` pairs, reduced.
    pub grid: Vec<(u64, u64)>,
    pub bound: usize,
}

impl BoundCertificate {
    pub fn kind(&self) -> BoundKind {
        self.params.kind()
    }
}

/// The grid of common zeros of all codewords of a cyclic-skew-cyclic code,
/// read off its generator rows. Equals the grid of any generator of `ν(C)`.
pub fn code_grid(code: &LinearCode, a: Elem, beta: Elem) -> Result<Grid> {
    let t = code.tower();
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    if code.partition().equal_part() != Some(t.block_len()) || code.len() != t.n() {
        return Err(Error::ShapeMismatch("partition (N, ..., N) of length n"));
    }
    if !code.is_cyclic_skew_cyclic()? {
        return Err(Error::precondition("code is cyclic-skew-cyclic"));
    }
    check_points(t, a, beta)?;
    let polys = code
        .generator()
        .iter()
        .map(|r| nu_map(t.clone(), r))
        .collect::<Result<Vec<_>>>()?;
    let l = t.l();
    let (ell, m) = (t.ell(), t.m());
    let mut cells = vec![true; ell * m];
    for g in &polys {
        for u in 0..ell {
            let ev = g.ev_az(l.pow(a, u as u64))?;
            for v in 0..m {
                let bv = t.sigma(beta, v as i64);
                let point = l.div(t.sigma(bv, 1), bv).ok_or(Error::ZeroBeta)?;
                if !ev.right_evaluate(point)?.is_zero() {
                    cells[u * m + v] = false;
                }
            }
        }
    }
    Ok(Grid { ell, m, cells })
}

/// Checks preconditions and grid containment for a parameter set.
pub fn check(
    t: &FieldTower,
    grid: &Grid,
    p: &BoundParams,
    expect: BoundKind,
) -> Result<BoundCertificate> {
    if p.kind() != expect {
        return Err(Error::precondition("parameters of another bound family"));
    }
    p.check_preconditions(t)?;
    let pairs = p.grid_pairs(grid.ell, grid.m);
    if let Some((a_exp, sigma_exp)) = grid.first_missing(&pairs) {
        return Err(Error::GridNotContained { a_exp, sigma_exp });
    }
    Ok(BoundCertificate {
        bound: p.bound(),
        params: p.clone(),
        grid: pairs,
    })
}

/// Re-checks a certificate against a grid, including the recorded pair list.
pub fn verify_certificate(t: &FieldTower, grid: &Grid, cert: &BoundCertificate) -> Result<()> {
    let fresh = check(t, grid, &cert.params, cert.params.kind())?;
    if fresh.grid != cert.grid || fresh.bound != cert.bound {
        return Err(Error::precondition(
            "certificate does not match its parameters",
        ));
    }
    Ok(())
}

/// Caps for [`best_bound_search`]; defaults follow `n = ℓm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest bound value considered.
    pub max_bound: usize,
    pub max_delta: usize,
    pub max_r: usize,
    /// `b` ranges over `[0, max_b)`.
    pub max_b: i64,
}

impl SearchLimits {
    pub fn for_tower(t: &FieldTower) -> Self {
        let n = t.ell() * t.m();
        Self {
            max_bound: n,
            max_delta: n,
            max_r: n,
            max_b: n as i64,
        }
    }
}

/// Residues in `[0, n)` coprime with `n`.
fn units(n: u64) -> Vec<i64> {
    if n == 1 {
        return vec![0];
    }
    (1..n)
        .filter(|&x| gcd(n, x) == 1)
        .map(|x| x as i64)
        .collect()
}

/// Scans BCH, HT and Roos parameters within the caps and returns the largest
/// certified bound. Ties go to the kind order BCH < HT < Roos, then to the
/// lexicographically smallest tuple `(b, t, δ)`, `(b, t1, t2, δ, r)` or
/// `(b, s, δ, k_0, …, k_r)`. The vacuous BCH bound 1 is always available.
pub fn best_bound_search(
    t: &FieldTower,
    grid: &Grid,
    limits: &SearchLimits,
) -> Result<BoundCertificate> {
    search(t, grid, limits, None)
}

/// [`best_bound_search`] restricted to one family; `None` when the family
/// certifies nothing above the vacuous bound.
pub fn best_bound_of_kind(
    t: &FieldTower,
    grid: &Grid,
    limits: &SearchLimits,
    kind: BoundKind,
) -> Result<Option<BoundCertificate>> {
    let best = search(t, grid, limits, Some(kind))?;
    Ok((best.kind() == kind && best.bound > 1).then_some(best))
}

fn search(
    t: &FieldTower,
    grid: &Grid,
    limits: &SearchLimits,
    only: Option<BoundKind>,
) -> Result<BoundCertificate> {
    let trivial = BoundParams::Bch {
        b: 0,
        t: 1,
        delta: 1,
    };
    let mut best = check(t, grid, &trivial, BoundKind::Bch)?;
    let (ell, m) = (t.ell(), t.m());
    if t.block_len() != m || gcd(ell as u64, m as u64) != 1 {
        return Ok(best);
    }
    let n = (ell * m) as u64;
    let cap = limits.max_bound.min(n as usize);
    let max_delta = limits.max_delta.min(cap);
    let mut consider = |p: BoundParams| {
        if only.is_some_and(|k| k != p.kind()) {
            return;
        }
        if p.bound() > best.bound && p.bound() <= cap {
            if let Ok(c) = check(t, grid, &p, p.kind()) {
                best = c;
            }
        }
    };
    let contained = |u: i64, v: i64| grid.contains(u, v);

    // BCH: for each (b, t) the certified δ is one more than the longest
    // contained prefix of the progression.
    let ts = units(n);
    for b in 0..limits.max_b {
        for &step in &ts {
            let mut delta = 1;
            while delta < max_delta
                && contained(b + (delta as i64 - 1) * step, (delta as i64 - 1) * step)
            {
                delta += 1;
            }
            consider(BoundParams::Bch { b, t: step, delta });
        }
    }

    // HT: for each (b, t1, t2, δ), extend r while the next row is contained.
    for b in 0..limits.max_b {
        for &t1 in &ts {
            for t2 in 0..n as i64 {
                let g2 = gcd(n, t2 as u64) as usize;
                for delta in (g2 + 1).max(2)..=max_delta {
                    let row_ok = |s: i64| {
                        (0..delta as i64 - 1).all(|i| {
                            let e = i * t1 + s * t2;
                            contained(b + e, e)
                        })
                    };
                    if !row_ok(0) {
                        break;
                    }
                    let mut r = 0;
                    while r < limits.max_r && delta + r < cap && row_ok(r as i64 + 1) {
                        r += 1;
                    }
                    consider(BoundParams::Ht {
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

    // Roos: for each (b, s, δ), a shift k is usable when its whole column of
    // δ-1 pairs is contained. The best k-list is a run of consecutive usable
    // shifts whose span fits the window.
    let k_range = 2 * n as i64 + max_delta as i64;
    for b in 0..limits.max_b {
        for &s in &ts {
            for delta in 2..=max_delta {
                let usable: Vec<i64> = (0..k_range)
                    .filter(|&k| {
                        (0..delta as i64 - 1).all(|i| {
                            let e = s * i + k;
                            contained(b + e, e)
                        })
                    })
                    .collect();
                if usable.is_empty() {
                    break;
                }
                for start in 0..usable.len() {
                    if usable[start] >= n as i64 {
                        break;
                    }
                    let mut end = start;
                    while end + 1 < usable.len()
                        && end + 1 - start <= limits.max_r
                        && delta + (end + 1 - start) <= cap
                        && usable[end + 1] - usable[start] <= (delta + end + 1 - start) as i64 - 2
                    {
                        end += 1;
                    }
                    consider(BoundParams::Roos {
                        b,
                        s,
                        delta,
                        ks: usable[start..=end].to_vec(),
                    });
                }
            }
        }
    }
    Ok(best)
}

fn lemma_preconditions(t: &FieldTower) -> Result<()> {
    let (ell, m, p) = (t.ell() as u64, t.m() as u64, t.p() as u64);
    if gcd(ell, m) != 1 {
        return Err(Error::precondition(format!(
            "gcd(ell, m) = 1 (ell = {ell}, m = {m})"
        )));
    }
    if ell % p == 0 {
        return Err(Error::precondition(format!(
            "gcd(ell, char) = 1 (ell = {ell}, p = {p})"
        )));
    }
    Ok(())
}

/// The `k × ℓm` generator matrix `(D_0 | … | D_{ℓ-1})` of a linearized
/// Reed-Solomon code: entry `(r, i·m + j)` is `σ^{r+j}(β)·a^{(b+r)i}`.
///
/// Checks that `a` is primitive and `β` normal, but not the coprimality
/// hypotheses; see [`lrs_generator_matrix`].
pub fn lrs_matrix_raw(
    t: &FieldTower,
    a: Elem,
    beta: Elem,
    b: i64,
    k: usize,
) -> Result<Vec<Vec<Elem>>> {
    check_points(t, a, beta)?;
    let (ell, m) = (t.ell(), t.m());
    if k == 0 || k > ell * m {
        return Err(Error::InvalidParameter("1 <= k <= n"));
    }
    let l = t.l();
    Ok((0..k)
        .map(|r| {
            (0..ell)
                .flat_map(|i| {
                    let scale = l.pow_signed(a, (b + r as i64) * i as i64);
                    (0..m).map(move |j| l.mul(t.sigma(beta, (r + j) as i64), scale))
                })
                .collect()
        })
        .collect())
}

/// [`lrs_matrix_raw`] under the hypotheses `gcd(ℓ, m) = gcd(ℓ, p) = 1`.
pub fn lrs_generator_matrix(
    t: &FieldTower,
    a: Elem,
    beta: Elem,
    b: i64,
    k: usize,
) -> Result<Vec<Vec<Elem>>> {
    lemma_preconditions(t)?;
    lrs_matrix_raw(t, a, beta, b, k)
}

/// Column selections for the rank lemmas: from block `i` the basis elements
/// `σ^{j}(β)·a^{bi}` for `j` in `selections[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub b: i64,
    pub selections: Vec<Vec<usize>>,
    pub ks: Vec<i64>,
    pub s: i64,
}

impl Selection {
    pub fn total(&self) -> usize {
        self.selections.iter().map(Vec::len).sum()
    }

    pub fn r(&self) -> usize {
        self.ks.len().saturating_sub(1)
    }

    /// The lemma's `t`, from `t + r = total`.
    pub fn t(&self) -> usize {
        self.total() - self.r()
    }
}

/// Builds `A_i` (the matrix `A_0` stacked with its `ψ^{(us, us)}` images for
/// `u ≤ i`) without checking any hypothesis.
pub fn selection_matrix_raw(
    t: &FieldTower,
    a: Elem,
    beta: Elem,
    sel: &Selection,
    i: usize,
) -> Vec<Vec<Elem>> {
    let l = t.l();
    let m = t.m();
    let mut rows = Vec::new();
    for u in 0..=i as i64 {
        for &k in &sel.ks {
            let mut row = Vec::new();
            for (blk, picks) in sel.selections.iter().enumerate() {
                let blk = blk as i64;
                let base_scale = l.pow_signed(a, sel.b * blk);
                for &j in picks {
                    let alpha = l.mul(t.sigma(beta, (j % m) as i64), base_scale);
                    // σ^{us}(σ^{k}(α) a^{k·blk}) · a^{us·blk}
                    let v = l.mul(
                        t.sigma(alpha, k + u * sel.s),
                        l.pow_signed(a, k * blk + u * sel.s * blk),
                    );
                    row.push(v);
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Rank over `L` of the matrix `A_i` of the rank lemmas.
pub fn selection_rank_oracle(
    t: &FieldTower,
    a: Elem,
    beta: Elem,
    sel: &Selection,
    i: usize,
) -> Result<usize> {
    lemma_preconditions(t)?;
    check_points(t, a, beta)?;
    let (ell, m) = (t.ell(), t.m());
    let n = (ell * m) as i64;
    if sel.selections.len() != ell {
        return Err(Error::ShapeMismatch("one selection per block"));
    }
    if sel.ks.is_empty() {
        return Err(Error::precondition("at least one k"));
    }
    let r = sel.r();
    if sel.total() < r + 1 {
        return Err(Error::SelectionTooSmall {
            need: r + 1,
            got: sel.total(),
        });
    }
    for picks in &sel.selections {
        let mut p = picks.clone();
        p.sort_unstable();
        p.dedup();
        if p.len() != picks.len() || p.iter().any(|&j| j >= m) {
            return Err(Error::precondition("distinct basis indices below m"));
        }
    }
    if sel.ks.iter().any(|&k| k < 0 || k >= n) {
        return Err(Error::precondition("k_j in [0, n-1]"));
    }
    if sel.ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("k_0 < k_1 < ... < k_r"));
    }
    let tt = sel.t();
    if sel.ks[r] - sel.ks[0] > (tt + r) as i64 - 1 {
        return Err(Error::precondition("k_r - k_0 <= t + r - 1"));
    }
    let sm = sel.s.rem_euclid(n) as u64;
    if gcd(ell as u64, sm) != 1 || gcd(m as u64, sm) != 1 {
        return Err(Error::precondition("s coprime with ell and m"));
    }
    if i + 1 > tt {
        return Err(Error::precondition("i <= t - 1"));
    }
    Ok(linalg::rank(
        t.l(),
        selection_matrix_raw(t, a, beta, sel, i),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::SkewPoly;
    use crate::tower::build_tower;
    use alloc::sync::Arc;

    fn small() -> TowerRef {
        // F = L = F_27, E = K = F_3, ℓ = 2, m = N = 3.
        Arc::new(build_tower(3, 1, 3, 1, 2, 3).unwrap())
    }

    #[test]
    fn unit_generator_has_empty_defining_set() {
        let t = small();
        let view = DefiningSetView::new(&BivarPoly::one(t.clone(), Level::F)).unwrap();
        assert!(view.grid().cells().iter().all(|&c| !c));
        let best = view
            .best_bound_search(&SearchLimits::for_tower(&t))
            .unwrap();
        assert_eq!(best.bound, 1);
        assert!(best.grid.is_empty());
        assert!(DefiningSetView::new(&BivarPoly::zero(t, Level::F)).is_err());
    }

    #[test]
    fn x_minus_a_factor_fills_a_row() {
        let t = small();
        let a = t.primitive_ell_root().value;
        let fa = t.from_l(Level::F, t.to_l(Level::K, a)).unwrap();
        let g = BivarPoly::from_x_poly(t.clone(), Level::F, &[t.f().neg(fa), Elem::ONE]).unwrap();
        let view = DefiningSetView::new(&g).unwrap();
        for v in 0..3 {
            assert!(view.grid().contains(1, v));
            assert!(!view.grid().contains(0, v));
        }
    }

    #[test]
    fn bch_trivial_and_errors() {
        let t = small();
        let view = DefiningSetView::new(&BivarPoly::one(t.clone(), Level::F)).unwrap();
        let c = view
            .bch_check(&BoundParams::Bch {
                b: 0,
                t: 1,
                delta: 1,
            })
            .unwrap();
        assert_eq!(c.bound, 1);
        assert_eq!(
            view.bch_check(&BoundParams::Bch {
                b: 0,
                t: 1,
                delta: 2
            }),
            Err(Error::GridNotContained {
                a_exp: 0,
                sigma_exp: 0
            })
        );
        assert!(matches!(
            view.bch_check(&BoundParams::Bch {
                b: 0,
                t: 2,
                delta: 2
            }),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            view.roos_check(&BoundParams::Roos {
                b: 0,
                s: 1,
                delta: 2,
                ks: vec![0, 5]
            }),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            view.ht_check(&BoundParams::Ht {
                b: 0,
                t1: 1,
                t2: 3,
                delta: 3,
                r: 1
            }),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn grid_pair_orders() {
        let p = BoundParams::Roos {
            b: 1,
            s: 1,
            delta: 3,
            ks: vec![0, 2],
        };
        assert_eq!(p.grid_pairs(2, 3), [(1, 0), (1, 2), (0, 1), (0, 0)]);
        assert_eq!(p.bound(), 4);
        let h = BoundParams::Ht {
            b: 0,
            t1: 1,
            t2: 2,
            delta: 2,
            r: 1,
        };
        assert_eq!(h.grid_pairs(2, 3), [(0, 0), (0, 2)]);
        let r0 = BoundParams::Roos {
            b: 0,
            s: 5,
            delta: 4,
            ks: vec![0],
        };
        let bch = BoundParams::Bch {
            b: 0,
            t: 5,
            delta: 4,
        };
        assert_eq!(r0.grid_pairs(2, 3), bch.grid_pairs(2, 3));
    }

    #[test]
    fn skew_factor_certificate() {
        // L = F here, so z - σ(β)/β has coefficients in F.
        let t = small();
        let beta = t.find_normal_element().value;
        let pt = t.l().div(t.sigma(beta, 1), beta).unwrap();
        let pt = t.from_l(Level::F, pt).unwrap();
        let fz = SkewPoly::linear(t.clone(), Level::F, pt);
        let g = BivarPoly::from_z_poly(&fz);
        let view = DefiningSetView::new(&g).unwrap();
        assert!(view.grid().contains(0, 0));
        assert!(view.grid().contains(1, 0));
        let c = view
            .bch_check(&BoundParams::Bch {
                b: 0,
                t: 1,
                delta: 2,
            })
            .unwrap();
        assert_eq!(c.grid, [(0, 0)]);
    }

    #[test]
    fn lrs_shapes() {
        let t = Arc::new(build_tower(2, 1, 3, 2, 1, 3).unwrap());
        let beta = t.find_normal_element().value;
        let a = t.ell_root_in_l();
        let d = lrs_generator_matrix(&t, a, beta, 0, 1).unwrap();
        assert_eq!(d, vec![vec![beta, t.sigma(beta, 1), t.sigma(beta, 2)]]);
        let full = lrs_generator_matrix(&t, a, beta, 0, 3).unwrap();
        assert_eq!(linalg::rank(t.l(), full), 3);
        let bad = Arc::new(build_tower(2, 1, 3, 2, 3, 3).unwrap());
        assert!(matches!(
            lrs_generator_matrix(
                &bad,
                bad.ell_root_in_l(),
                bad.find_normal_element().value,
                0,
                3
            ),
            Err(Error::PreconditionViolated(_))
        ));
        assert_eq!(
            lrs_generator_matrix(&t, a, Elem::ONE, 0, 1),
            Err(Error::NotNormal)
        );
        assert_eq!(
            lrs_generator_matrix(&t, t.l().generator(), beta, 0, 1),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn selection_degenerate() {
        let t = Arc::new(build_tower(2, 1, 3, 2, 1, 3).unwrap());
        let beta = t.find_normal_element().value;
        let a = t.ell_root_in_l();
        let sel = Selection {
            b: 0,
            selections: vec![vec![1]],
            ks: vec![0],
            s: 1,
        };
        assert_eq!(selection_rank_oracle(&t, a, beta, &sel, 0), Ok(1));
        let too_small = Selection {
            b: 0,
            selections: vec![vec![1]],
            ks: vec![0, 1],
            s: 1,
        };
        assert_eq!(
            selection_rank_oracle(&t, a, beta, &too_small, 0),
            Err(Error::SelectionTooSmall { need: 2, got: 1 })
        );
    }
}
