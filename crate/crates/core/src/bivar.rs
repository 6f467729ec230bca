//! The ring `R' = (F[x]/(x^ℓ-1))[z;θ]/(z^N-1)`, the identifications `μ`, `ν`
//! and the evaluation maps `Ev_{a,z}`, `Ev_β^σ`, `Ev_{a,β}`.
//!
//! A polynomial is an `ℓ × N` array; entry `(i, j)` is the coefficient of
//! `x^i z^j`. `x` is central and `z·c = θ(c)·z`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::skew::SkewPoly;
use crate::tower::Level;
use crate::TowerRef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    tower: TowerRef,
    level: Level,
    coeffs: Vec<Elem>,
}

impl BivarPoly {
    /// Row-major `ℓ × N` coefficients over `F` or `L`.
    pub fn new(tower: TowerRef, level: Level, coeffs: Vec<Elem>) -> Result<Self> {
        if !matches!(level, Level::F | Level::L) {
            return Err(Error::LevelMismatch);
        }
        let n = tower.n();
        if coeffs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: coeffs.len(),
            });
        }
        let field = tower.field(level);
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::LevelMismatch);
        }
        Ok(Self {
            tower,
            level,
            coeffs,
        })
    }

    pub fn zero(tower: TowerRef, level: Level) -> Self {
        let n = tower.n();
        Self {
            tower,
            level,
            coeffs: vec![Elem::ZERO; n],
        }
    }

    /// `c·x^i z^j`, exponents reduced mod `ℓ` and `N`.
    pub fn monomial(tower: TowerRef, level: Level, c: Elem, i: usize, j: usize) -> Self {
        let mut out = Self::zero(tower, level);
        let (ell, nb) = (out.ell(), out.block_len());
        out.coeffs[(i % ell) * nb + j % nb] = c;
        out
    }

    pub fn one(tower: TowerRef, level: Level) -> Self {
        Self::monomial(tower, level, Elem::ONE, 0, 0)
    }

    /// `f(x)` given low-degree-first coefficients, folded by `x^ℓ = 1`.
    pub fn from_x_poly(tower: TowerRef, level: Level, f: &[Elem]) -> Result<Self> {
        let mut out = Self::zero(tower, level);
        let field = out.tower.field(level);
        let (ell, nb) = (out.ell(), out.block_len());
        for (i, &c) in f.iter().enumerate() {
            if !field.contains(c) {
                return Err(Error::LevelMismatch);
            }
            let idx = (i % ell) * nb;
            out.coeffs[idx] = field.add(out.coeffs[idx], c);
        }
        Ok(out)
    }

    /// A skew polynomial in `z`, folded by `z^N = 1`.
    pub fn from_z_poly(f: &SkewPoly) -> Self {
        let mut out = Self::zero(f.tower().clone(), f.level());
        let field = out.tower.field(out.level);
        let nb = out.block_len();
        for (j, &c) in f.coeffs().iter().enumerate() {
            out.coeffs[j % nb] = field.add(out.coeffs[j % nb], c);
        }
        out
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn ell(&self) -> usize {
        self.tower.ell()
    }

    pub fn block_len(&self) -> usize {
        self.tower.block_len()
    }

    /// Row-major coefficient array.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i z^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.coeffs[i * self.block_len() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn field(&self) -> &Gf {
        self.tower.field(self.level)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.level != other.level
            || !(TowerRef::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower)
        {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Self {
            coeffs,
            ..self.clone()
        })
    }

    pub fn scale_left(&self, c: Elem) -> Self {
        let f = self.field();
        Self {
            coeffs: self.coeffs.iter().map(|&a| f.mul(c, a)).collect(),
            ..self.clone()
        }
    }

    /// The product in `R'`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.field();
        let (ell, nb) = (self.ell(), self.block_len());
        let mut out = vec![Elem::ZERO; ell * nb];
        for i in 0..ell {
            for j in 0..nb {
                let a = self.coeffs[i * nb + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..ell {
                    for l in 0..nb {
                        let b = other.coeffs[k * nb + l];
                        if b.is_zero() {
                            continue;
                        }
                        let tw = self
                            .tower
                            .twist(self.level, b, j as i64)
                            .expect("level is F or L");
                        let idx = ((i + k) % ell) * nb + (j + l) % nb;
                        out[idx] = f.add(out[idx], f.mul(a, tw));
                    }
                }
            }
        }
        Ok(Self {
            coeffs: out,
            ..self.clone()
        })
    }

    /// Coefficients embedded in `L`.
    pub fn lift_to_l(&self) -> Self {
        Self {
            tower: self.tower.clone(),
            level: Level::L,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| self.tower.to_l(self.level, c))
                .collect(),
        }
    }

    /// `Ev_{a,z}`: substitutes `x := a` (an `ℓ`-th root of unity in `K`,
    /// given as an element of `L`). The result lives in `L[z;σ]`.
    pub fn ev_az(&self, a: Elem) -> Result<SkewPoly> {
        let l = self.tower.l();
        let ell = self.ell();
        if !l.contains(a) || l.pow(a, ell as u64) != Elem::ONE {
            return Err(Error::NotRootOfUnity);
        }
        let lifted = self.lift_to_l();
        let nb = self.block_len();
        let coeffs = (0..nb)
            .map(|j| {
                (0..ell).rev().fold(Elem::ZERO, |acc, i| {
                    l.add(l.mul(acc, a), lifted.coeffs[i * nb + j])
                })
            })
            .collect();
        Ok(SkewPoly::from_raw(self.tower.clone(), Level::L, coeffs))
    }

    /// `Ev_{a,β} = Ev_β^σ ∘ Ev_{a,z}`.
    pub fn ev_total(&self, a: Elem, beta: Elem) -> Result<Elem> {
        let l = self.tower.l();
        let point = l
            .div(self.tower.sigma(beta, 1), beta)
            .ok_or(Error::ZeroBeta)?;
        self.ev_az(a)?.right_evaluate(point)
    }

    /// `ν^{-1}`: block `i`, position `j` is the coefficient of `x^i z^j`.
    pub fn nu_inverse(&self) -> Vec<Elem> {
        self.coeffs.clone()
    }
}

/// `ν`: block `i`, position `j` goes to `x^i z^j`.
pub fn nu_map(tower: TowerRef, c: &[Elem]) -> Result<BivarPoly> {
    BivarPoly::new(tower, Level::F, c.to_vec())
}

/// `μ` has the same coefficient array as `ν`; only the ambient ring differs.
pub fn mu_map(tower: TowerRef, c: &[Elem]) -> Result<BivarPoly> {
    nu_map(tower, c)
}

/// `ψ_b^{(t1,t2)}`: block `i` of length `block` goes to `σ^{t1}(c^{(i)})·b^{i·t2}`.
pub fn psi_map(
    tower: &TowerRef,
    c: &[Elem],
    block: usize,
    b: Elem,
    t1: i64,
    t2: i64,
) -> Result<Vec<Elem>> {
    if block == 0 || !c.len().is_multiple_of(block) {
        return Err(Error::LengthMismatch {
            expected: block.max(1) * (c.len() / block.max(1) + 1),
            got: c.len(),
        });
    }
    let l = tower.l();
    if b.is_zero() || !l.contains(b) {
        return Err(Error::NotRootOfUnity);
    }
    Ok(c.chunks(block)
        .enumerate()
        .flat_map(|(i, blk)| {
            let scale = l.pow_signed(b, i as i64 * t2);
            blk.iter()
                .map(move |&x| l.mul(tower.sigma(x, t1), scale))
                .collect::<Vec<_>>()
        })
        .collect())
}
