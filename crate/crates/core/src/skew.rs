//! Skew polynomials in `F[z;θ]` and `L[z;σ]`, where `z·a = θ(a)·z`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::tower::Level;
use crate::TowerRef;

/// A skew polynomial; coefficient `i` multiplies `z^i` from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    tower: TowerRef,
    level: Level,
    coeffs: Vec<Elem>,
}

fn check_level(level: Level) -> Result<()> {
    match level {
        Level::F | Level::L => Ok(()),
        _ => Err(Error::LevelMismatch),
    }
}

impl SkewPoly {
    /// Coefficients low degree first; trailing zeros are stripped.
    pub fn new(tower: TowerRef, level: Level, coeffs: Vec<Elem>) -> Result<Self> {
        check_level(level)?;
        let field = tower.field(level);
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::LevelMismatch);
        }
        Ok(Self::from_raw(tower, level, coeffs))
    }

    pub(crate) fn from_raw(tower: TowerRef, level: Level, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            tower,
            level,
            coeffs,
        }
    }

    pub fn zero(tower: TowerRef, level: Level) -> Self {
        Self::from_raw(tower, level, Vec::new())
    }

    pub fn one(tower: TowerRef, level: Level) -> Self {
        Self::from_raw(tower, level, vec![Elem::ONE])
    }

    /// `c·z^i`.
    pub fn monomial(tower: TowerRef, level: Level, c: Elem, i: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; i + 1];
        coeffs[i] = c;
        Self::from_raw(tower, level, coeffs)
    }

    /// `z - a`.
    pub fn linear(tower: TowerRef, level: Level, a: Elem) -> Self {
        let neg = tower.field(level).neg(a);
        Self::from_raw(tower, level, vec![neg, Elem::ONE])
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    fn field(&self) -> &Gf {
        self.tower.field(self.level)
    }

    fn twist(&self, x: Elem, i: i64) -> Elem {
        match self.level {
            Level::L => self.tower.sigma(x, i),
            _ => self.tower.theta(x, i),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.level != other.level
            || !(TowerRef::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower)
        {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<Elem>) -> Self {
        Self::from_raw(self.tower.clone(), self.level, coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.field();
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(self.with_coeffs(
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.field();
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(self.with_coeffs(
            (0..len)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    /// `c·self`, scalar on the left.
    pub fn scale_left(&self, c: Elem) -> Self {
        let f = self.field();
        self.with_coeffs(self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    /// The twisted product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.with_coeffs(Vec::new()));
        }
        let f = self.field();
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                // a z^i · b z^j = a θ^i(b) z^{i+j}
                let t = f.mul(a, self.twist(b, i as i64));
                out[i + j] = f.add(out[i + j], t);
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// Right Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn right_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.compatible(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field();
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top];
            if !c.is_zero() {
                let shift = top - dd;
                // c z^top = q z^shift · lead z^dd  ⇒  q = c / θ^shift(lead)
                let q = f
                    .div(c, self.twist(lead, shift as i64))
                    .expect("leading coefficient is nonzero");
                quot[shift] = q;
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    let t = f.mul(q, self.twist(b, shift as i64));
                    rem[shift + j] = f.sub(rem[shift + j], t);
                }
            }
            rem.pop();
        }
        Ok((self.with_coeffs(quot), self.with_coeffs(rem)))
    }

    /// Right evaluation `f(a)`: the remainder of `f` modulo `z - a`, computed
    /// as `Σ f_i N_i(a)` with `N_0 = 1`, `N_{i+1}(a) = σ^i(a) N_i(a)`.
    pub fn right_evaluate(&self, a: Elem) -> Result<Elem> {
        let f = self.field();
        if !f.contains(a) {
            return Err(Error::LevelMismatch);
        }
        let mut norm = Elem::ONE;
        let mut acc = Elem::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc = f.add(acc, f.mul(c, norm));
            norm = f.mul(self.twist(a, i as i64), norm);
        }
        Ok(acc)
    }

    /// Right evaluation through [`Self::right_divide`] by `z - a`.
    pub fn right_evaluate_by_division(&self, a: Elem) -> Result<Elem> {
        if !self.field().contains(a) {
            return Err(Error::LevelMismatch);
        }
        let lin = Self::linear(self.tower.clone(), self.level, a);
        let (_, r) = self.right_divide(&lin)?;
        Ok(r.coeff(0))
    }

    /// The σ-polynomial evaluation `Σ f_i σ^i(β)`.
    pub fn sigma_eval(&self, beta: Elem) -> Result<Elem> {
        if beta.is_zero() {
            return Err(Error::ZeroBeta);
        }
        let f = self.field();
        if !f.contains(beta) {
            return Err(Error::LevelMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (i, &c)| {
                f.add(acc, f.mul(c, self.twist(beta, i as i64)))
            }))
    }

    /// `Ev_β^σ(f) = f^σ(β)·β^{-1}`, equal to right evaluation at `σ(β)β^{-1}`.
    pub fn ev_beta(&self, beta: Elem) -> Result<Elem> {
        let s = self.sigma_eval(beta)?;
        let f = self.field();
        Ok(f.mul(s, f.inv(beta).expect("beta is nonzero")))
    }

    /// Canonical representative modulo the central polynomial `z^N - 1`.
    pub fn reduce_mod_zn(&self) -> Self {
        let n = self.tower.block_len();
        let f = self.field();
        let mut out = vec![Elem::ZERO; n.min(self.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = f.add(out[i % n], c);
        }
        self.with_coeffs(out)
    }

    /// Lifts a polynomial over `F` to `L` (identity on `L`).
    pub fn to_l(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.tower.to_l(self.level, c))
            .collect();
        Self::from_raw(self.tower.clone(), Level::L, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::build_tower;
    use alloc::sync::Arc;

    /// F = L = F_4, K = E = F_2, θ(a) = a^2.
    fn gf4() -> TowerRef {
        Arc::new(build_tower(2, 1, 2, 1, 1, 2).unwrap())
    }

    fn poly(t: &TowerRef, c: &[u32]) -> SkewPoly {
        SkewPoly::new(t.clone(), Level::F, c.iter().map(|&x| Elem(x)).collect()).unwrap()
    }

    const W: u32 = 2;
    const W2: u32 = 3;

    #[test]
    fn twist_rule() {
        let t = gf4();
        let z = poly(&t, &[0, 1]);
        let w = poly(&t, &[W]);
        assert_eq!(z.mul(&w).unwrap(), poly(&t, &[0, W2]));
        let f = poly(&t, &[W, 1, W2]);
        assert_eq!(f.mul(&SkewPoly::one(t.clone(), Level::F)).unwrap(), f);
        assert_eq!(SkewPoly::one(t.clone(), Level::F).mul(&f).unwrap(), f);
    }

    #[test]
    fn worked_product() {
        let t = gf4();
        // (z+1)(z-ω) = z^2 + ωz + ω
        let lhs = poly(&t, &[1, 1]).mul(&poly(&t, &[W, 1])).unwrap();
        assert_eq!(lhs, poly(&t, &[W, W, 1]));
    }

    #[test]
    fn worked_division() {
        let t = gf4();
        let f = poly(&t, &[0, W, 1]);
        let g = poly(&t, &[W, 1]);
        let (q, r) = f.right_divide(&g).unwrap();
        assert_eq!(q, poly(&t, &[1, 1]));
        assert_eq!(r, poly(&t, &[W]));
        let (q, r) = g.right_divide(&f).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, g);
        let (q, r) = f.right_divide(&f).unwrap();
        assert_eq!(q, SkewPoly::one(t.clone(), Level::F));
        assert!(r.is_zero());
        assert_eq!(
            f.right_divide(&SkewPoly::zero(t.clone(), Level::F)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn worked_evaluation() {
        let t = gf4();
        let f = poly(&t, &[0, W, 1]);
        assert_eq!(f.right_evaluate(Elem(W)).unwrap(), Elem(W));
        assert_eq!(f.right_evaluate_by_division(Elem(W)).unwrap(), Elem(W));
        let g = poly(&t, &[1, 1])
            .mul(&SkewPoly::linear(t.clone(), Level::F, Elem(W)))
            .unwrap();
        assert_eq!(g.right_evaluate(Elem(W)).unwrap(), Elem::ZERO);
        for i in 0..6 {
            let zi = SkewPoly::monomial(t.clone(), Level::F, Elem::ONE, i);
            assert_eq!(zi.right_evaluate(Elem::ONE).unwrap(), Elem::ONE);
        }
    }

    #[test]
    fn sigma_eval_examples() {
        let t = gf4();
        let z = poly(&t, &[0, 1]);
        let beta = Elem(W);
        assert_eq!(z.sigma_eval(beta).unwrap(), t.theta(beta, 1));
        assert_eq!(
            z.ev_beta(beta).unwrap(),
            t.f().div(t.theta(beta, 1), beta).unwrap()
        );
        // z^m - 1 kills every beta
        let zm = poly(&t, &[1, 0, 1]);
        for b in 1..4 {
            assert_eq!(zm.sigma_eval(Elem(b)).unwrap(), Elem::ZERO);
        }
        assert_eq!(z.sigma_eval(Elem::ZERO), Err(Error::ZeroBeta));
    }

    #[test]
    fn reduction_mod_zn() {
        let t = gf4();
        let zn = SkewPoly::monomial(t.clone(), Level::F, Elem::ONE, 2);
        assert_eq!(zn.reduce_mod_zn(), SkewPoly::one(t.clone(), Level::F));
        let low = poly(&t, &[W, 1]);
        assert_eq!(low.reduce_mod_zn(), low);
        // z^{N+2} + z^2 folds to 2z^2 = 0
        let f = poly(&t, &[0, 0, 1, 0, 1]);
        assert!(f.reduce_mod_zn().is_zero());
    }

    #[test]
    fn level_checks() {
        let t = gf4();
        assert_eq!(
            SkewPoly::new(t.clone(), Level::K, vec![Elem::ONE]),
            Err(Error::LevelMismatch)
        );
        let other = Arc::new(build_tower(2, 1, 3, 2, 3, 3).unwrap());
        let a = poly(&t, &[1]);
        let b = SkewPoly::one(other, Level::F);
        assert_eq!(a.mul(&b), Err(Error::TowerMismatch));
    }
}
