//! Tensor products of a cyclic code (Hamming metric) and a skew-cyclic code
//! (rank metric), and their defining sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::bivar::BivarPoly;
use crate::bounds::{self, BoundCertificate, BoundParams, Grid};
use crate::code::{LinearCode, Partition};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::skew::SkewPoly;
use crate::tower::Level;
use crate::TowerRef;

/// `u ⊗ v = (u_0 v | u_1 v | … | u_{ℓ-1} v)`.
pub fn tensor_vector(field: &Gf, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    u.iter()
        .flat_map(|&ui| v.iter().map(move |&vj| field.mul(ui, vj)))
        .collect()
}

/// `C_1 ⊗ C_2` together with its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCode {
    pub c1: LinearCode,
    pub c2: LinearCode,
    pub code: LinearCode,
}

impl ProductCode {
    pub fn k1(&self) -> usize {
        self.c1.dim()
    }

    pub fn k2(&self) -> usize {
        self.c2.dim()
    }

    /// Codeword `c` as an `ℓ × N` matrix.
    pub fn as_matrix(&self, c: &[Elem]) -> Vec<Vec<Elem>> {
        c.chunks(self.c2.len()).map(<[Elem]>::to_vec).collect()
    }
}

/// The span of `u ⊗ v` over generator rows; partition `(N, …, N)`.
pub fn tensor_code(c1: &LinearCode, c2: &LinearCode) -> Result<ProductCode> {
    let (t1, t2) = (c1.tower(), c2.tower());
    if !(TowerRef::ptr_eq(t1, t2) || t1 == t2) {
        return Err(Error::FieldMismatch);
    }
    let f = c1.field();
    let rows = c1
        .generator()
        .iter()
        .flat_map(|u| c2.generator().iter().map(move |v| tensor_vector(f, u, v)))
        .collect();
    let part = Partition::uniform(c1.len(), c2.len())?;
    Ok(ProductCode {
        c1: c1.clone(),
        c2: c2.clone(),
        code: LinearCode::new(t1.clone(), part, rows)?,
    })
}

fn poly_trim(mut p: Vec<Elem>) -> Vec<Elem> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Remainder of `a` modulo `b` in the commutative ring `field[x]`.
fn poly_rem(field: &Gf, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    let b = poly_trim(b.to_vec());
    let db = b.len().checked_sub(1).ok_or(Error::DivisionByZero)?;
    let inv = field.inv(b[db]).expect("leading coefficient is nonzero");
    let mut r = poly_trim(a.to_vec());
    while r.len() > db {
        let top = r.len() - 1;
        let c = field.mul(r[top], inv);
        for (j, &bj) in b.iter().enumerate() {
            r[top - db + j] = field.sub(r[top - db + j], field.mul(c, bj));
        }
        r = poly_trim(r);
    }
    Ok(r)
}

fn x_ell_minus_one(field: &Gf, ell: usize) -> Vec<Elem> {
    let mut p = vec![Elem::ZERO; ell + 1];
    p[0] = field.neg(Elem::ONE);
    p[ell] = Elem::ONE;
    p
}

/// Whether `f1 | x^ℓ - 1` in `F[x]`.
pub fn divides_x_ell_minus_one(tower: &TowerRef, f1: &[Elem]) -> Result<bool> {
    let f = tower.f();
    Ok(poly_rem(f, &x_ell_minus_one(f, tower.ell()), f1)?.is_empty())
}

/// `z^N - 1` over `F`.
pub fn z_n_minus_one(tower: &TowerRef) -> SkewPoly {
    let f = tower.f();
    let mut c = vec![Elem::ZERO; tower.block_len() + 1];
    c[0] = f.neg(Elem::ONE);
    c[tower.block_len()] = Elem::ONE;
    SkewPoly::new(tower.clone(), Level::F, c).expect("coefficients in F")
}

/// Whether `f2` is a right divisor of `z^N - 1` in `F[z;θ]`.
pub fn right_divides_zn_minus_one(f2: &SkewPoly) -> Result<bool> {
    let (_, r) = z_n_minus_one(f2.tower()).right_divide(f2)?;
    Ok(r.is_zero())
}

/// The cyclic code `(f_1) ⊂ F[x]/(x^ℓ-1)`, partition `(1, …, 1)`.
pub fn cyclic_code(tower: &TowerRef, f1: &[Elem]) -> Result<LinearCode> {
    let f = tower.f();
    let ell = tower.ell();
    let mut rows = Vec::with_capacity(ell);
    for i in 0..ell {
        let mut row = vec![Elem::ZERO; ell];
        for (j, &c) in f1.iter().enumerate() {
            let idx = (i + j) % ell;
            row[idx] = f.add(row[idx], c);
        }
        rows.push(row);
    }
    LinearCode::new(tower.clone(), Partition::uniform(ell, 1)?, rows)
}

/// The skew-cyclic code `(f_2) ⊂ F[z;θ]/(z^N-1)`, partition `(N)`.
pub fn skew_cyclic_code(f2: &SkewPoly) -> Result<LinearCode> {
    if f2.level() != Level::F {
        return Err(Error::LevelMismatch);
    }
    let tower = f2.tower();
    let nb = tower.block_len();
    let rows = (0..nb)
        .map(|j| {
            let p = SkewPoly::monomial(tower.clone(), Level::F, Elem::ONE, j)
                .mul(f2)
                .expect("same tower")
                .reduce_mod_zn();
            (0..nb).map(|i| p.coeff(i)).collect()
        })
        .collect();
    LinearCode::new(tower.clone(), Partition::new(vec![nb])?, rows)
}

/// `g = f_1(x) f_2(z)` in `R'`.
pub fn product_generator_poly(tower: &TowerRef, f1: &[Elem], f2: &SkewPoly) -> Result<BivarPoly> {
    if (tower.ell() as u64).is_multiple_of(tower.p() as u64) {
        return Err(Error::CharacteristicDividesEll);
    }
    if !divides_x_ell_minus_one(tower, f1)? || !right_divides_zn_minus_one(f2)? {
        return Err(Error::NotADivisor);
    }
    let gx = BivarPoly::from_x_poly(tower.clone(), Level::F, f1)?;
    let gz = BivarPoly::from_z_poly(f2);
    gx.mul(&gz)
}

/// `T_H ⊎ T_R` on the canonical grid: `(a^u, σ^v β)` is a member iff
/// `f_1(a^u) = 0` or `Ev_{σ^v β}^σ(f_2) = 0`. Requires `f_1 ∈ E[x]`.
pub fn product_defining_set(
    tower: &TowerRef,
    f1: &[Elem],
    f2: &SkewPoly,
    a: Elem,
    beta: Elem,
) -> Result<Grid> {
    if f1.iter().any(|&c| tower.f_to_e(c).is_none()) {
        return Err(Error::GeneratorNotOverE);
    }
    let (th, tr) = factor_zero_sets(tower, f1, f2, a, beta)?;
    let (ell, m) = (th.len(), tr.len());
    let cells = (0..ell)
        .flat_map(|u| (0..m).map(move |v| (u, v)))
        .map(|(u, v)| th[u] || tr[v])
        .collect();
    Grid::new(ell, m, cells)
}

/// `T_H` as `f_1(a^u) = 0` for `u < ℓ`, and `T_R` as `Ev^σ_{σ^v β}(f_2) = 0`
/// for `v < m`, without any hypothesis on `f_1`.
pub fn factor_zero_sets(
    tower: &TowerRef,
    f1: &[Elem],
    f2: &SkewPoly,
    a: Elem,
    beta: Elem,
) -> Result<(Vec<bool>, Vec<bool>)> {
    let l = tower.l();
    let f1l: Vec<Elem> = f1.iter().map(|&c| tower.to_l(Level::F, c)).collect();
    let th = (0..tower.ell())
        .map(|u| {
            let x = l.pow(a, u as u64);
            f1l.iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| l.add(l.mul(acc, x), c))
                .is_zero()
        })
        .collect();
    let f2l = f2.to_l();
    let tr = (0..tower.m())
        .map(|v| {
            f2l.ev_beta(tower.sigma(beta, v as i64))
                .map(|e| e.is_zero())
        })
        .collect::<Result<_>>()?;
    Ok((th, tr))
}

/// Lower bounds on the factor distances derived from a product certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBound {
    pub certificate: BoundCertificate,
    /// `⌈(δ + r) / d_R⌉ ≤ d_H(C_1)`.
    pub d_h_lower: usize,
    /// `⌈(δ + r) / d_H⌉ ≤ d_R(C_2)`.
    pub d_r_lower: usize,
}

/// Checks a Roos or HT instance against `T_H ⊎ T_R` and turns the certified
/// value into bounds on each factor, given the other factor's distance.
pub fn product_bound(
    tower: &TowerRef,
    f1: &[Elem],
    f2: &SkewPoly,
    params: &BoundParams,
    d_h: usize,
    d_r: usize,
) -> Result<ProductBound> {
    if params.kind() == bounds::BoundKind::Bch {
        return Err(Error::precondition(
            "product bounds use the Roos or HT family",
        ));
    }
    if d_h == 0 || d_r == 0 {
        return Err(Error::ZeroCode);
    }
    let a = tower.ell_root_in_l();
    let beta = tower.find_normal_element().value;
    let grid = product_defining_set(tower, f1, f2, a, beta)?;
    let certificate = bounds::check(tower, &grid, params, params.kind())?;
    let v = certificate.bound;
    Ok(ProductBound {
        d_h_lower: v.div_ceil(d_r),
        d_r_lower: v.div_ceil(d_h),
        certificate,
    })
}

/// All monic divisors of `x^ℓ - 1` with coefficients in `E`, as polynomials
/// over `F`, ordered by degree and then by coefficients.
pub fn cyclic_divisors_over_e(tower: &TowerRef) -> Result<Vec<Vec<Elem>>> {
    let e = tower.e();
    let q = e.size();
    let ell = tower.ell();
    let mut out = Vec::new();
    for deg in 0..=ell {
        let mut digits = vec![0u32; deg];
        loop {
            let mut p: Vec<Elem> = digits.iter().map(|&d| tower.e_to_f(Elem(d))).collect();
            p.push(Elem::ONE);
            if divides_x_ell_minus_one(tower, &p)? {
                out.push(p);
            }
            if !odometer(&mut digits, q) {
                break;
            }
        }
    }
    Ok(out)
}

/// All monic right divisors of `z^N - 1` in `F[z;θ]` of degree at most `N`,
/// by exhaustive search.
pub fn skew_divisors(tower: &TowerRef) -> Result<Vec<SkewPoly>> {
    let f = tower.f();
    let q = f.size();
    let nb = tower.block_len();
    let mut out = Vec::new();
    for deg in 0..=nb {
        let mut digits = vec![0u32; deg];
        loop {
            let mut c: Vec<Elem> = digits.iter().map(|&d| Elem(d)).collect();
            c.push(Elem::ONE);
            let p = SkewPoly::new(tower.clone(), Level::F, c)?;
            if right_divides_zn_minus_one(&p)? {
                out.push(p);
            }
            if !odometer(&mut digits, q) {
                break;
            }
        }
    }
    Ok(out)
}

/// One pair of the factor corpus with its product code and generator.
#[derive(Clone, Debug)]
pub struct CorpusPair {
    pub f1: Vec<Elem>,
    pub f2: SkewPoly,
    pub generator: BivarPoly,
    pub product: ProductCode,
}

/// Every pair `(f_1, f_2)` with `f_1` from [`cyclic_divisors_over_e`] and
/// `f_2` from [`skew_divisors`], in that order.
pub fn product_corpus(tower: &TowerRef) -> Result<Vec<CorpusPair>> {
    let f1s = cyclic_divisors_over_e(tower)?;
    let f2s = skew_divisors(tower)?;
    let c2s = f2s
        .iter()
        .map(skew_cyclic_code)
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(f1s.len() * f2s.len());
    for f1 in &f1s {
        let c1 = cyclic_code(tower, f1)?;
        for (f2, c2) in f2s.iter().zip(&c2s) {
            out.push(CorpusPair {
                f1: f1.clone(),
                f2: f2.clone(),
                generator: product_generator_poly(tower, f1, f2)?,
                product: tensor_code(&c1, c2)?,
            });
        }
    }
    Ok(out)
}

/// Little-endian increment; `false` after wrapping around.
fn odometer(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{code_from_skew_generator, sumrank_weight, Metric, DEFAULT_BUDGET};
    use crate::tower::{build_tower, Extension};
    use alloc::sync::Arc;

    fn f8() -> TowerRef {
        Arc::new(build_tower(2, 1, 3, 2, 3, 3).unwrap())
    }

    #[test]
    fn tensor_vector_example() {
        let t = Arc::new(build_tower(2, 1, 2, 1, 1, 2).unwrap());
        let w = Elem(2);
        let u = [Elem(1), Elem(1), Elem(0)];
        let v = [Elem(1), w];
        let uv = tensor_vector(t.f(), &u, &v);
        assert_eq!(uv, [Elem(1), w, Elem(1), w, Elem(0), Elem(0)]);
        let part = Partition::uniform(3, 2).unwrap();
        assert_eq!(sumrank_weight(&t, &uv, &part, Extension::FOverE), Ok(4));
        let e1 = [Elem(1), Elem(0), Elem(0)];
        assert_eq!(
            tensor_vector(t.f(), &e1, &v),
            [Elem(1), w, Elem(0), Elem(0), Elem(0), Elem(0)]
        );
    }

    #[test]
    fn corpus_sizes() {
        let t = f8();
        // x^3 - 1 = (x + 1)(x^2 + x + 1) over F_2
        assert_eq!(cyclic_divisors_over_e(&t).unwrap().len(), 4);
        let divs = skew_divisors(&t).unwrap();
        assert!(divs.iter().any(|d| d.degree() == Some(0)));
        assert!(divs.iter().any(|d| d.degree() == Some(3)));
        for d in &divs {
            assert!(right_divides_zn_minus_one(d).unwrap());
        }
    }

    #[test]
    fn repetition_times_skew_example() {
        let t = f8();
        let f1 = vec![Elem::ONE; 3];
        let f2 = SkewPoly::new(t.clone(), Level::F, vec![Elem::ONE, Elem::ONE]).unwrap();
        let c1 = cyclic_code(&t, &f1).unwrap();
        let c2 = skew_cyclic_code(&f2).unwrap();
        assert_eq!((c1.dim(), c2.dim()), (1, 2));
        let prod = tensor_code(&c1, &c2).unwrap();
        assert_eq!(prod.code.dim(), 2);
        let g = product_generator_poly(&t, &f1, &f2).unwrap();
        assert_eq!(code_from_skew_generator(&g).unwrap(), prod.code);
        let d_h = c1
            .min_distance_bruteforce(Metric::Hamming, DEFAULT_BUDGET)
            .unwrap();
        let d_r = c2
            .min_distance_bruteforce(Metric::Rank, DEFAULT_BUDGET)
            .unwrap();
        let d = prod
            .code
            .min_distance_bruteforce(Metric::SumRank, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(d_h, 3);
        assert_eq!(d, d_h * d_r);
    }

    #[test]
    fn divisor_checks() {
        let t = f8();
        let f2 = SkewPoly::new(t.clone(), Level::F, vec![Elem::ONE, Elem::ONE]).unwrap();
        assert_eq!(
            product_generator_poly(&t, &[Elem::ONE, Elem::ZERO, Elem::ONE], &f2),
            Err(Error::NotADivisor)
        );
        let g = t.f().generator();
        assert_eq!(
            product_defining_set(
                &t,
                &[g, Elem::ONE],
                &f2,
                t.ell_root_in_l(),
                t.find_normal_element().value
            ),
            Err(Error::GeneratorNotOverE)
        );
    }

    #[test]
    fn factor_zero_sets_example() {
        let t = f8();
        let f1 = vec![Elem::ONE; 3];
        let f2 = SkewPoly::new(t.clone(), Level::F, vec![Elem::ONE, Elem::ONE]).unwrap();
        let (th, tr) = factor_zero_sets(
            &t,
            &f1,
            &f2,
            t.ell_root_in_l(),
            t.find_normal_element().value,
        )
        .unwrap();
        assert_eq!(th, [false, true, true]);
        // z + 1 = z - 1 vanishes at β iff σ(β) = β, never for a normal β with m > 1
        assert_eq!(tr, [false, false, false]);
    }
}
