//! Ideal computations: reduced Gröbner bases with cofactors, normal forms,
//! membership, quotient bases, syzygies, colon ideals and the component of a
//! zero-dimensional ideal at the origin.

mod colon;
mod module;

pub use colon::{colon_by_syzygies, colon_ideal, divide_exact, intersect};
pub use module::{ModuleBasis, PolyVec};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::scalar::Field;

/// Reduced Gröbner basis of an ideal together with the cofactor matrix
/// `basis[k] = Σ_j cofactors[k][j] · generators[j]`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C> {
    inner: ModuleBasis<C>,
    generators: Vec<MultiPoly<C>>,
}

/// Standard monomials of a zero-dimensional ideal, ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }
}

/// Buchberger's algorithm under `order`.
pub fn buchberger<C: Field>(gens: Vec<MultiPoly<C>>, order: MonomialOrder) -> Result<GroebnerBasis<C>> {
    GroebnerBasis::new(gens, order)
}

impl<C: Field> GroebnerBasis<C> {
    pub fn new(generators: Vec<MultiPoly<C>>, order: MonomialOrder) -> Result<Self> {
        let nvars = generators.first().map(MultiPoly::nvars).ok_or_else(|| Error::Precondition("empty generator list".into()))?;
        let vecs = generators.iter().map(|g| vec![g.clone()]).collect();
        let inner = ModuleBasis::compute(vecs, 1, nvars, order)?;
        Ok(Self { inner, generators })
    }

    /// Grevlex basis.
    pub fn grevlex(generators: Vec<MultiPoly<C>>) -> Result<Self> {
        Self::new(generators, MonomialOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order()
    }

    pub fn generators(&self) -> &[MultiPoly<C>] {
        &self.generators
    }

    pub fn basis(&self) -> Vec<MultiPoly<C>> {
        self.inner.basis().into_iter().map(|mut v| v.remove(0)).collect()
    }

    /// `cofactors()[k][j]` multiplies `generators()[j]` in `basis()[k]`.
    pub fn cofactors(&self) -> Vec<Vec<MultiPoly<C>>> {
        self.inner.cofactors()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.inner.leading_terms().into_iter().map(|(m, _)| m).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().iter().any(Monomial::is_one)
    }

    pub fn normal_form(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        Ok(self.inner.normal_form(std::slice::from_ref(p))?.remove(0))
    }

    pub fn is_member(&self, p: &MultiPoly<C>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `ψ` with `p = Σ ψ_j · generators[j]`; `Ok(None)` if `p ∉ J`.
    pub fn extended_member(&self, p: &MultiPoly<C>) -> Result<Option<Vec<MultiPoly<C>>>> {
        self.inner.extended_member(std::slice::from_ref(p))
    }

    pub fn satisfies_buchberger_criterion(&self) -> bool {
        self.inner.satisfies_buchberger_criterion()
    }

    pub fn cofactor_identity_holds(&self) -> bool {
        self.inner.cofactor_identity_holds()
    }

    /// Generators of the syzygy module of the original generators.
    pub fn syzygies(&self) -> Vec<Vec<MultiPoly<C>>> {
        self.inner.syzygies()
    }

    /// Every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &GroebnerBasis<C>) -> Result<bool> {
        for g in other.generators() {
            if !self.is_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &GroebnerBasis<C>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Monomials outside the leading-term ideal; fails when there are
    /// infinitely many.
    pub fn quotient_basis(&self) -> Result<QuotientBasis> {
        let n = self.nvars();
        let leads = self.leading_monomials();
        let mut bounds = vec![u32::MAX; n];
        for m in &leads {
            if m.is_one() {
                return Ok(QuotientBasis { monomials: Vec::new() });
            }
            if let Some((i, e)) = m.as_pure_power() {
                bounds[i] = bounds[i].min(e);
            }
        }
        if let Some(var) = bounds.iter().position(|&b| b == u32::MAX) {
            return Err(Error::NotZeroDimensional { var });
        }
        let max_deg: u32 = bounds.iter().map(|b| b - 1).sum();
        let monomials = Monomial::all_below_degree(n, max_deg + 1)
            .into_iter()
            .filter(|m| m.exps().iter().zip(&bounds).all(|(e, b)| e < b))
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        Ok(QuotientBasis { monomials })
    }

    /// `V(J) = {0}`: every coordinate is nilpotent of order at most
    /// `dim R/J` in the quotient.
    pub fn is_primary_at_origin(&self) -> Result<bool> {
        let qb = self.quotient_basis()?;
        if qb.dim() == 0 {
            return Ok(false);
        }
        let d = qb.dim() as u32;
        let n = self.nvars();
        for i in 0..n {
            if !self.is_member(&MultiPoly::var(n, i).pow(d))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether all generators vanish at the origin.
    pub fn origin_in_variety(&self) -> bool {
        self.generators.iter().all(|g| g.constant_term().is_zero())
    }

    /// The component of a zero-dimensional ideal at the origin,
    /// `Q = J·O_0 ∩ R`, computed as `J + m^k` for the first `k` at which the
    /// quotient dimension stabilises. Equals `J` when `J` is already primary
    /// to the origin.
    pub fn origin_component(&self) -> Result<GroebnerBasis<C>> {
        let total = self.quotient_basis()?.dim();
        if !self.origin_in_variety() {
            return Err(Error::OriginNotInVariety);
        }
        if self.is_primary_at_origin()? {
            return Ok(self.clone());
        }
        let n = self.nvars();
        let with_power = |k: u32| -> Result<GroebnerBasis<C>> {
            let mut gens = self.generators.clone();
            gens.extend(Monomial::all_of_degree(n, k).into_iter().map(|m| MultiPoly::term(m, C::one())));
            GroebnerBasis::new(gens, self.order())
        };
        let mut prev = with_power(1)?;
        let mut prev_dim = prev.quotient_basis()?.dim();
        for k in 2..=(total as u32 + 2) {
            let next = with_power(k)?;
            let d = next.quotient_basis()?.dim();
            if d == prev_dim {
                return Ok(prev);
            }
            prev = next;
            prev_dim = d;
        }
        Err(Error::Internal("origin component did not stabilise".into()))
    }
}

/// Generating set of `{v : Σ v_j·gens_j = 0}`.
pub fn syzygies<C: Field>(gens: &[MultiPoly<C>]) -> Result<Vec<Vec<MultiPoly<C>>>> {
    Ok(GroebnerBasis::grevlex(gens.to_vec())?.syzygies())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::GaussianRational as Q;

    fn p(s: &str) -> MultiPoly<Q> {
        parse_poly(s, 2).unwrap()
    }

    fn ideal(gens: &[&str]) -> GroebnerBasis<Q> {
        GroebnerBasis::grevlex(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let gb = ideal(&["z^2", "z*w", "w^2"]);
        assert_eq!(gb.basis().tap_sort(), vec![p("z^2"), p("z*w"), p("w^2")].tap_sort());
        assert!(gb.satisfies_buchberger_criterion());
    }

    trait TapSort {
        fn tap_sort(self) -> Self;
    }
    impl TapSort for Vec<MultiPoly<Q>> {
        fn tap_sort(mut self) -> Self {
            self.sort_by(|a, c| format!("{a}").cmp(&format!("{c}")));
            self
        }
    }

    #[test]
    fn linear_change_reduces() {
        let gb = ideal(&["z - w", "w"]);
        assert_eq!(gb.basis().tap_sort(), vec![p("z"), p("w")].tap_sort());
        assert!(gb.cofactor_identity_holds());
    }

    #[test]
    fn normal_forms() {
        let gb = ideal(&["z^2", "z*w", "w^2"]);
        assert!(gb.normal_form(&p("z^3")).unwrap().is_zero());
        assert_eq!(gb.normal_form(&p("z + z*w")).unwrap(), p("z"));
        assert!(gb.is_member(&p("z^2")).unwrap());
        assert!(!gb.is_member(&p("z")).unwrap());
    }

    #[test]
    fn extended_membership() {
        let gb = ideal(&["z^2", "z*w", "w^2"]);
        let psi = gb.extended_member(&p("z^3")).unwrap().unwrap();
        let back = gb.generators().iter().zip(&psi).fold(MultiPoly::zero(2), |a, (g, c)| &a + &(g * c));
        assert_eq!(back, p("z^3"));
        assert_eq!(gb.extended_member(&p("z")).unwrap(), None);
        assert!(gb.extended_member(&MultiPoly::var(3, 0)).is_err());
    }

    #[test]
    fn quotient_bases() {
        let qb = ideal(&["z^2", "z*w", "w^2"]).quotient_basis().unwrap();
        assert_eq!(qb.monomials, vec![Monomial::new(vec![0, 0]), Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])]);
        assert_eq!(ideal(&["z^2", "w^3"]).quotient_basis().unwrap().dim(), 6);
        assert!(matches!(ideal(&["z*w"]).quotient_basis(), Err(Error::NotZeroDimensional { .. })));
    }

    #[test]
    fn primary_at_origin() {
        assert!(ideal(&["z^2", "z*w", "w^2"]).is_primary_at_origin().unwrap());
        assert!(ideal(&["z - w", "w^2"]).is_primary_at_origin().unwrap());
        let one_var = GroebnerBasis::grevlex(vec![parse_poly("z1*(z1-1)", 1).unwrap()]).unwrap();
        assert!(!one_var.is_primary_at_origin().unwrap());
    }

    #[test]
    fn origin_component_of_cusp_pair() {
        // z^2 - w^3, w^2 - z^3 meets the origin with multiplicity 4 and five
        // further points on |z| = |w| = 1.
        let gb = ideal(&["z^2 - w^3", "w^2 - z^3"]);
        assert_eq!(gb.quotient_basis().unwrap().dim(), 9);
        assert!(!gb.is_primary_at_origin().unwrap());
        let q = gb.origin_component().unwrap();
        assert!(q.is_primary_at_origin().unwrap());
        assert!(q.same_ideal(&ideal(&["z^2", "w^2"])).unwrap());
        let far = GroebnerBasis::grevlex(vec![parse_poly("z1 - 1", 1).unwrap()]).unwrap();
        assert_eq!(far.origin_component().unwrap_err(), Error::OriginNotInVariety);
    }

    #[test]
    fn koszul_syzygy_of_coprime_pair() {
        let f = p("z^2 + w");
        let g = p("w^3 - z");
        let syz = syzygies(&[f.clone(), g.clone()]).unwrap();
        let module = ModuleBasis::compute(syz, 2, 2, MonomialOrder::GrevLex).unwrap();
        assert!(module.is_member(&[g.clone(), -&f]).unwrap());
    }

    #[test]
    fn duplicate_generators_syzygy() {
        let syz = syzygies(&[p("z"), p("z")]).unwrap();
        let module = ModuleBasis::compute(syz, 2, 2, MonomialOrder::GrevLex).unwrap();
        assert!(module.is_member(&[p("1"), p("-1")]).unwrap());
    }
}
