//! The four-field tower `E ⊂ F, E ⊂ K ⊂ L = FK` with `[F:E] = m`, `[K:E] = h`.
//!
//! Every field is a [`Gf`] of its own. `F`, `K` and `E` are embedded into `L`
//! by sending the defining-polynomial root to the smallest root of the same
//! polynomial in `L`; the embeddings `E → F` and `E → K` are then the unique
//! maps making both triangles commute.
//!
//! `σ` is a power of the `|K|`-Frobenius of `L`, which generates `Gal(L/K)`;
//! `θ` is its restriction to `F`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{gcd, is_prime, prime_rank, Elem, Gf};

/// Which field of the tower an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    E,
    F,
    K,
    L,
}

/// An element tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub level: Level,
    pub value: Elem,
}

impl FieldElement {
    pub fn new(level: Level, value: Elem) -> Self {
        Self { level, value }
    }
}

/// The extension over which a rank weight is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Vectors over `F`, rank over `E`.
    FOverE,
    /// Vectors over `L`, rank over `K`.
    LOverK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TowerParams {
    pub p: u32,
    pub e_deg: u32,
    pub m: u32,
    pub h: u32,
    pub ell: u32,
    pub block_len: u32,
}

#[derive(Debug)]
struct Embedding {
    /// Image of every element of the small field, by index.
    forward: Vec<Elem>,
    backward: BTreeMap<u32, u32>,
}

impl Embedding {
    fn from_forward(forward: Vec<Elem>) -> Self {
        let backward = forward
            .iter()
            .enumerate()
            .map(|(i, e)| (e.0, i as u32))
            .collect();
        Self { forward, backward }
    }

    fn between(small: &Gf, big: &Gf) -> Self {
        let root = big
            .elements()
            .find(|&r| big.eval_prime_poly(small.modulus(), r).is_zero())
            .expect("subfield polynomial splits in the larger field");
        let d = small.degree() as usize;
        let mut powers = Vec::with_capacity(d);
        let mut cur = Elem::ONE;
        for _ in 0..d {
            powers.push(cur);
            cur = big.mul(cur, root);
        }
        let forward = small
            .elements()
            .map(|a| {
                small
                    .coords(a)
                    .iter()
                    .zip(&powers)
                    .fold(Elem::ZERO, |acc, (&c, &pw)| {
                        big.add(acc, big.mul(Elem(c), pw))
                    })
            })
            .collect();
        Self::from_forward(forward)
    }
}

#[derive(Debug)]
pub struct FieldTower {
    params: TowerParams,
    sigma_power: u32,
    e: Gf,
    f: Gf,
    k: Gf,
    l: Gf,
    e_in_f: Embedding,
    e_in_k: Embedding,
    e_in_l: Embedding,
    f_in_l: Embedding,
    k_in_l: Embedding,
    /// `{ε^i}` for a generator `ε` of `E`, as elements of `F`: an `F_p`-basis of `E`.
    e_basis_in_f: Vec<Elem>,
    /// The same for `K` inside `L`.
    k_basis_in_l: Vec<Elem>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.sigma_power == other.sigma_power
    }
}

impl Eq for FieldTower {}

/// Builds and validates the tower.
///
/// `block_len` is the block length `N`.
pub fn build_tower(
    p: u32,
    e_deg: u32,
    m: u32,
    h: u32,
    ell: u32,
    block_len: u32,
) -> Result<FieldTower> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    if e_deg == 0 || m == 0 || h == 0 {
        return Err(Error::InvalidParameter(
            "extension degrees must be positive",
        ));
    }
    if ell == 0 || block_len == 0 {
        return Err(Error::InvalidParameter("ell and N must be positive"));
    }
    if gcd(m as u64, h as u64) != 1 {
        return Err(Error::DegreesNotCoprime { m, h });
    }
    let l_deg = e_deg
        .checked_mul(m)
        .and_then(|d| d.checked_mul(h))
        .ok_or(Error::InvalidParameter("degree overflow"))?;
    let l = Gf::new(p, l_deg)?;
    let k = Gf::new(p, e_deg * h)?;
    let k_units = k.size() as u64 - 1;
    if !k_units.is_multiple_of(ell as u64) {
        return Err(Error::RootsOfUnityAbsent { ell, k_units });
    }
    if !block_len.is_multiple_of(m) {
        return Err(Error::BlockLengthNotMultiple { block_len, m });
    }
    let f = Gf::new(p, e_deg * m)?;
    let e = Gf::new(p, e_deg)?;

    let f_in_l = Embedding::between(&f, &l);
    let k_in_l = Embedding::between(&k, &l);
    let e_in_l = Embedding::between(&e, &l);
    let through = |outer: &Embedding| {
        Embedding::from_forward(
            e_in_l
                .forward
                .iter()
                .map(|img| Elem(outer.backward[&img.0]))
                .collect(),
        )
    };
    let e_in_f = through(&f_in_l);
    let e_in_k = through(&k_in_l);

    let basis = |gen: Elem, field: &Gf, count: u32| {
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = Elem::ONE;
        for _ in 0..count {
            out.push(cur);
            cur = field.mul(cur, gen);
        }
        out
    };
    let e_basis_in_f = basis(e_in_f.forward[e.generator().0 as usize], &f, e_deg);
    let k_basis_in_l = basis(k_in_l.forward[k.generator().0 as usize], &l, e_deg * h);

    Ok(FieldTower {
        params: TowerParams {
            p,
            e_deg,
            m,
            h,
            ell,
            block_len,
        },
        sigma_power: 1,
        e,
        f,
        k,
        l,
        e_in_f,
        e_in_k,
        e_in_l,
        f_in_l,
        k_in_l,
        e_basis_in_f,
        k_basis_in_l,
    })
}

impl FieldTower {
    /// Replaces `σ` by the `u`-th power of the canonical generator of `Gal(L/K)`.
    pub fn with_sigma_power(mut self, u: u32) -> Result<Self> {
        let m = self.params.m;
        if gcd(u as u64, m as u64) != 1 {
            return Err(Error::precondition("sigma power must be coprime with m"));
        }
        self.sigma_power = u % m.max(1);
        if m == 1 {
            self.sigma_power = 1;
        }
        Ok(self)
    }

    pub fn params(&self) -> TowerParams {
        self.params
    }

    pub fn sigma_power(&self) -> u32 {
        self.sigma_power
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn m(&self) -> usize {
        self.params.m as usize
    }

    pub fn h(&self) -> usize {
        self.params.h as usize
    }

    pub fn ell(&self) -> usize {
        self.params.ell as usize
    }

    /// Block length `N`.
    pub fn block_len(&self) -> usize {
        self.params.block_len as usize
    }

    /// Code length `n = ℓN`.
    pub fn n(&self) -> usize {
        self.ell() * self.block_len()
    }

    pub fn field(&self, level: Level) -> &Gf {
        match level {
            Level::E => &self.e,
            Level::F => &self.f,
            Level::K => &self.k,
            Level::L => &self.l,
        }
    }

    pub fn e(&self) -> &Gf {
        &self.e
    }

    pub fn f(&self) -> &Gf {
        &self.f
    }

    pub fn k(&self) -> &Gf {
        &self.k
    }

    pub fn l(&self) -> &Gf {
        &self.l
    }

    /// Embeds an element of any level into `L`.
    pub fn to_l(&self, level: Level, x: Elem) -> Elem {
        match level {
            Level::E => self.e_in_l.forward[x.0 as usize],
            Level::F => self.f_in_l.forward[x.0 as usize],
            Level::K => self.k_in_l.forward[x.0 as usize],
            Level::L => x,
        }
    }

    pub fn lift(&self, x: FieldElement) -> Result<Elem> {
        if !self.field(x.level).contains(x.value) {
            return Err(Error::LevelMismatch);
        }
        Ok(self.to_l(x.level, x.value))
    }

    /// Embeds `E` into `F`.
    pub fn e_to_f(&self, x: Elem) -> Elem {
        self.e_in_f.forward[x.0 as usize]
    }

    pub fn e_to_k(&self, x: Elem) -> Elem {
        self.e_in_k.forward[x.0 as usize]
    }

    /// Preimage in the given subfield of an element of `L`, if it lies there.
    pub fn from_l(&self, level: Level, x: Elem) -> Option<Elem> {
        let emb = match level {
            Level::E => &self.e_in_l,
            Level::F => &self.f_in_l,
            Level::K => &self.k_in_l,
            Level::L => return self.l.contains(x).then_some(x),
        };
        emb.backward.get(&x.0).map(|&i| Elem(i))
    }

    /// Preimage in `E` of an element of `F`.
    pub fn f_to_e(&self, x: Elem) -> Option<Elem> {
        self.e_in_f.backward.get(&x.0).map(|&i| Elem(i))
    }

    /// Number of absolute Frobenius steps realising `σ^i` (mod `[L:F_p]`).
    fn sigma_steps(&self, i: i64) -> u32 {
        let m = self.params.m as i64;
        let reduced = (i.rem_euclid(m) * self.sigma_power as i64).rem_euclid(m);
        (self.params.e_deg as i64 * self.params.h as i64 * reduced) as u32
    }

    /// `θ` as a power of the absolute Frobenius `x ↦ x^p` of `F`.
    pub fn theta_frobenius_steps(&self) -> u32 {
        self.sigma_steps(1) % self.f.degree()
    }

    /// `σ^i(x)` for `x ∈ L`.
    pub fn sigma(&self, x: Elem, i: i64) -> Elem {
        self.l.frobenius(x, self.sigma_steps(i))
    }

    /// `θ^i(x)` for `x ∈ F`, where `θ = σ|_F`.
    pub fn theta(&self, x: Elem, i: i64) -> Elem {
        self.f.frobenius(x, self.sigma_steps(i) % self.f.degree())
    }

    /// `σ^i` on `L`, `θ^i` on `F`.
    pub fn twist(&self, level: Level, x: Elem, i: i64) -> Result<Elem> {
        match level {
            Level::L => Ok(self.sigma(x, i)),
            Level::F => Ok(self.theta(x, i)),
            _ => Err(Error::LevelMismatch),
        }
    }

    /// `σ^i(x)` for `x` in `L`, or `θ^i(x)` for `x` in `F`.
    pub fn frobenius_power(&self, x: FieldElement, i: i64) -> Result<FieldElement> {
        if !self.field(x.level).contains(x.value) {
            return Err(Error::LevelMismatch);
        }
        let value = self.twist(x.level, x.value, i)?;
        Ok(FieldElement::new(x.level, value))
    }

    /// Dimension of the subfield span of `elems` (rank weight).
    pub fn subfield_rank(&self, ext: Extension, elems: &[Elem]) -> usize {
        let (field, basis, deg) = match ext {
            Extension::FOverE => (&self.f, &self.e_basis_in_f, self.params.e_deg),
            Extension::LOverK => (
                &self.l,
                &self.k_basis_in_l,
                self.params.e_deg * self.params.h,
            ),
        };
        if basis.len() == 1 {
            return prime_rank(field, elems.iter().copied());
        }
        let spanned = elems
            .iter()
            .flat_map(|&c| basis.iter().map(move |&b| field.mul(b, c)));
        prime_rank(field, spanned) / deg as usize
    }

    /// A primitive `ℓ`-th root of unity in `K`: `g^((|K|-1)/ℓ)` with `g` the
    /// smallest-index primitive element of `K`.
    pub fn primitive_ell_root(&self) -> FieldElement {
        let g = self.k.smallest_primitive();
        let e = (self.k.size() as u64 - 1) / self.params.ell as u64;
        FieldElement::new(Level::K, self.k.pow(g, e))
    }

    /// [`Self::primitive_ell_root`] embedded in `L`.
    pub fn ell_root_in_l(&self) -> Elem {
        self.to_l(Level::K, self.primitive_ell_root().value)
    }

    /// Whether `{β, σβ, …, σ^{m-1}β}` is a `K`-basis of `L`.
    pub fn is_normal(&self, beta: Elem) -> bool {
        if beta.is_zero() || !self.l.contains(beta) {
            return false;
        }
        let conj: Vec<Elem> = (0..self.m() as i64).map(|i| self.sigma(beta, i)).collect();
        self.subfield_rank(Extension::LOverK, &conj) == self.m()
    }

    /// First normal element of `L/K` in coordinate order.
    pub fn find_normal_element(&self) -> FieldElement {
        let beta = self
            .l
            .elements()
            .skip(1)
            .find(|&b| self.is_normal(b))
            .expect("normal elements exist for finite cyclic extensions");
        FieldElement::new(Level::L, beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f64_tower() -> FieldTower {
        build_tower(2, 1, 3, 2, 3, 3).unwrap()
    }

    #[test]
    fn f64_tower_sigma_fixes_k_and_has_order_three() {
        let t = f64_tower();
        assert_eq!(t.l().size(), 64);
        assert_eq!(t.k().size(), 4);
        assert_eq!(t.f().size(), 8);
        let fixed = t.l().elements().filter(|&x| t.sigma(x, 1) == x).count();
        assert_eq!(fixed, 4);
        for x in t.l().elements() {
            assert_eq!(t.sigma(x, 3), x);
            assert_eq!(t.sigma(x, 1), t.l().pow(x, 4));
        }
        assert!(t.l().elements().any(|x| t.sigma(x, 1) != x));
        let theta_fixed: Vec<Elem> = t.f().elements().filter(|&x| t.theta(x, 1) == x).collect();
        assert_eq!(theta_fixed, [Elem(0), Elem(1)]);
        let gamma = t.f().generator();
        assert_eq!(t.theta(gamma, 1), t.f().pow(gamma, 4));
    }

    #[test]
    fn trivial_tower() {
        let t = build_tower(2, 1, 1, 1, 1, 1).unwrap();
        assert_eq!(t.l().size(), 2);
        assert_eq!(t.sigma(Elem(1), 1), Elem(1));
        assert_eq!(t.primitive_ell_root().value, Elem::ONE);
        assert_eq!(t.find_normal_element().value, Elem::ONE);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_tower(2, 1, 2, 2, 3, 2).unwrap_err(),
            Error::DegreesNotCoprime { m: 2, h: 2 }
        );
        assert_eq!(
            build_tower(6, 1, 1, 1, 1, 1).unwrap_err(),
            Error::NotPrime(6)
        );
        assert!(matches!(
            build_tower(2, 1, 3, 2, 5, 3),
            Err(Error::RootsOfUnityAbsent { .. })
        ));
        assert!(matches!(
            build_tower(2, 1, 3, 2, 3, 4),
            Err(Error::BlockLengthNotMultiple { .. })
        ));
    }

    #[test]
    fn ell_root_has_exact_order() {
        let t = f64_tower();
        let a = t.primitive_ell_root();
        assert_eq!(a.level, Level::K);
        assert_eq!(t.k().mult_order(a.value), Some(3));
        let a_l = t.ell_root_in_l();
        assert_eq!(t.l().pow(a_l, 3), Elem::ONE);
        assert_ne!(a_l, Elem::ONE);
        let roots: Vec<Elem> = (0..3).map(|i| t.l().pow(a_l, i)).collect();
        assert!(roots[0] != roots[1] && roots[1] != roots[2] && roots[0] != roots[2]);
    }

    #[test]
    fn normal_element_gf4_over_gf2() {
        // L = F = F_4, K = E = F_2
        let t = build_tower(2, 1, 2, 1, 1, 2).unwrap();
        assert_eq!(t.find_normal_element().value, Elem(2));
    }

    #[test]
    fn normal_element_gf64_over_gf4() {
        let t = f64_tower();
        let beta = t.find_normal_element().value;
        assert!(t.is_normal(beta));
        // every earlier element fails the rank test
        for b in 1..beta.0 {
            assert!(!t.is_normal(Elem(b)));
        }
    }

    #[test]
    fn embeddings_commute() {
        let t = build_tower(2, 2, 3, 1, 3, 3).unwrap();
        for x in t.e().elements() {
            assert_eq!(t.to_l(Level::F, t.e_to_f(x)), t.to_l(Level::E, x));
            assert_eq!(t.to_l(Level::K, t.e_to_k(x)), t.to_l(Level::E, x));
        }
        // embeddings are ring maps
        for a in t.f().elements() {
            for b in t.f().elements().step_by(3) {
                let ab = t.f().mul(a, b);
                assert_eq!(
                    t.to_l(Level::F, ab),
                    t.l().mul(t.to_l(Level::F, a), t.to_l(Level::F, b))
                );
            }
        }
    }

    #[test]
    fn theta_fixes_exactly_e_with_nonprime_base() {
        let t = build_tower(2, 2, 3, 1, 3, 3).unwrap();
        let fixed: Vec<Elem> = t.f().elements().filter(|&x| t.theta(x, 1) == x).collect();
        assert_eq!(fixed.len(), 4);
        for x in fixed {
            assert!(t.f_to_e(x).is_some());
        }
    }

    #[test]
    fn frobenius_power_level_checks() {
        let t = f64_tower();
        let k_elem = FieldElement::new(Level::K, Elem(2));
        assert_eq!(t.frobenius_power(k_elem, 1), Err(Error::LevelMismatch));
        let big = FieldElement::new(Level::F, Elem(9));
        assert_eq!(t.frobenius_power(big, 1), Err(Error::LevelMismatch));
        let x = FieldElement::new(Level::L, Elem(37));
        assert_eq!(t.frobenius_power(x, 3).unwrap(), x);
        assert_eq!(
            t.frobenius_power(x, -1).unwrap().value,
            t.sigma(Elem(37), 2)
        );
    }

    #[test]
    fn rank_over_subfield() {
        let t = build_tower(2, 1, 2, 1, 1, 2).unwrap();
        let w = Elem(2);
        assert_eq!(t.subfield_rank(Extension::FOverE, &[Elem(1), w]), 2);
        assert_eq!(t.subfield_rank(Extension::FOverE, &[w, w, Elem(0)]), 1);
        // rank over E = F_4 in F_64 (e_deg = 2)
        let t = build_tower(2, 2, 3, 1, 3, 3).unwrap();
        let one = Elem(1);
        let eps = t.e_to_f(t.e().generator());
        assert_eq!(t.subfield_rank(Extension::FOverE, &[one, eps]), 1);
        assert_eq!(
            t.subfield_rank(Extension::FOverE, &[one, t.f().generator()]),
            2
        );
    }
}
