use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Float;

use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::scalar::{Field, ToComplex};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    /// The coordinate function `z_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range");
        Self::term(Monomial::var(nvars, i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { nvars, terms }
    }

    /// Builds from possibly repeated monomials, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange { index: var, nvars: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c.clone() * C::from_i64(e as i64));
        }
        Ok(out)
    }

    /// Drops every term of total degree `> max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= max_degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Power-series inverse truncated at total degree `max_degree`.
    ///
    /// Requires a nonzero constant term (a unit in the local ring at 0).
    pub fn series_inverse(&self, max_degree: u32) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::Precondition("series inverse of a non-unit".into()));
        }
        let inv0 = c0.inv();
        // self = c0 (1 + t) with t ∈ m; 1/self = inv0 Σ (-t)^k.
        let mut t = self.scale(&inv0);
        t.add_term(Monomial::one(self.nvars), -C::one());
        let neg_t = -t;
        let mut acc = Self::one(self.nvars);
        let mut power = Self::one(self.nvars);
        for _ in 0..max_degree {
            power = (&power * &neg_t).truncate(max_degree);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv0))
    }

    /// Re-indexes into a ring with `nvars` variables, sending `z_i` to
    /// `z_{offset + i}`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars, "embedding does not fit");
        Self {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; nvars];
                    e[offset..offset + self.nvars].copy_from_slice(m.exps());
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Evaluates at an exact point.
    pub fn eval_exact(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::VarMismatch { left: self.nvars, right: point.len() });
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }
}

impl<C: Field + ToComplex> MultiPoly<C> {
    /// Floating point evaluation; coefficients are rounded at the leaves.
    pub fn eval<F: Float>(&self, point: &[Complex<F>]) -> Result<Complex<F>> {
        if point.len() != self.nvars {
            return Err(Error::VarMismatch { left: self.nvars, right: point.len() });
        }
        Ok(NumericPoly::new(self).eval(point))
    }
}

/// Float image of a polynomial, cached for repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericPoly<F> {
    nvars: usize,
    max_exp: Vec<u32>,
    terms: Vec<(Complex<F>, Vec<u32>)>,
}

impl<F: Float> NumericPoly<F> {
    pub fn new<C: Field + ToComplex>(p: &MultiPoly<C>) -> Self {
        let mut max_exp = vec![0; p.nvars()];
        let terms = p
            .terms()
            .map(|(m, c)| {
                for (mx, &e) in max_exp.iter_mut().zip(m.exps()) {
                    *mx = (*mx).max(e);
                }
                (c.to_complex(), m.exps().to_vec())
            })
            .collect();
        Self { nvars: p.nvars(), max_exp, terms }
    }

    pub fn eval(&self, point: &[Complex<F>]) -> Complex<F> {
        debug_assert_eq!(point.len(), self.nvars);
        let powers: Vec<Vec<Complex<F>>> = point
            .iter()
            .zip(&self.max_exp)
            .map(|(&x, &mx)| {
                let mut v = Vec::with_capacity(mx as usize + 1);
                let mut acc = Complex::new(F::one(), F::zero());
                v.push(acc);
                for _ in 0..mx {
                    acc = acc * x;
                    v.push(acc);
                }
                v
            })
            .collect();
        let mut total = Complex::new(F::zero(), F::zero());
        for (c, e) in &self.terms {
            let mut t = *c;
            for (pw, &k) in powers.iter().zip(e) {
                t = t * pw[k as usize];
            }
            total = total + t;
        }
        total
    }
}

impl<C: Field> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl<C: Field> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl<C: Field> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl<C: Field> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Field> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}
