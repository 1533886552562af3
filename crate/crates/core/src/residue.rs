//! Exact Grothendieck residues at the origin.
//!
//! For a monomial complete intersection `z^m = (z_1^{m_1}, …, z_n^{m_n})` the
//! residue of `h dz` is a Taylor coefficient. A general complete intersection
//! `f` is reduced to that case through the transformation law: if
//! `s·z_i^{m_i} = Σ_j A_ij f_j` with `s(0) ≠ 0`, then
//! `Res_f(h) = coeff_{z^{m-1}}(h · det A · s^{-n})`. The unit `s` is `1` when
//! `⟨f⟩` is primary to the origin; otherwise it localises away the other
//! points of the variety.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, GroebnerBasis};
use crate::linalg::{det_poly, rank, PolyMatrix};
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Field;

/// Coefficient of `z^{m-1}` in `h`.
pub fn monomial_residue<C: Field>(powers: &[u32], h: &MultiPoly<C>) -> Result<C> {
    if powers.len() != h.nvars() {
        return Err(Error::VarMismatch { left: powers.len(), right: h.nvars() });
    }
    if powers.contains(&0) {
        return Err(Error::Precondition("powers must be positive".into()));
    }
    let target = Monomial::new(powers.iter().map(|m| m - 1).collect());
    Ok(h.coefficient(&target))
}

/// `s·z_i^{m_i} = Σ_j A_ij g_j`, where `g` are the generators of the ideal
/// and `s` is a unit at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct DominatingPowers<C> {
    pub powers: Vec<u32>,
    /// `n × #generators` cofactor matrix.
    pub matrix: PolyMatrix<C>,
    /// Equal to `1` when the ideal is primary to the origin.
    pub unit: MultiPoly<C>,
}

impl<C: Field> DominatingPowers<C> {
    /// Checks every row identity exactly.
    pub fn verify(&self, generators: &[MultiPoly<C>]) -> bool {
        let n = self.powers.len();
        (0..n).all(|i| {
            let lhs = &self.unit * &MultiPoly::term(pure_power(n, i, self.powers[i]), C::one());
            let rhs = generators.iter().enumerate().fold(MultiPoly::zero(n), |acc, (j, g)| &acc + &(self.matrix.get(i, j) * g));
            lhs == rhs
        })
    }

    /// The same identity with `m_i` replaced by `m_i + 1` (row `i` of `A`
    /// multiplied by `z_i`).
    pub fn raised(&self, i: usize) -> Self {
        let n = self.powers.len();
        let mut out = self.clone();
        out.powers[i] += 1;
        let zi = MultiPoly::var(n, i);
        for j in 0..self.matrix.cols() {
            out.matrix.set(i, j, &zi * self.matrix.get(i, j));
        }
        out
    }

    /// `det A · s^{-n}` truncated at the only degree that matters,
    /// `|m| − n`.
    pub fn kernel(&self) -> Result<MultiPoly<C>> {
        let n = self.powers.len();
        if self.matrix.cols() != n {
            return Err(Error::NotCompleteIntersection { expected: n, got: self.matrix.cols() });
        }
        let top = self.powers.iter().sum::<u32>() - n as u32;
        let det = det_poly(self.matrix.entries(), n).truncate(top);
        if self.unit.is_one_poly() {
            return Ok(det);
        }
        let inv = self.unit.series_inverse(top)?.pow(n as u32).truncate(top);
        Ok((&det * &inv).truncate(top))
    }
}

fn pure_power(n: usize, i: usize, e: u32) -> Monomial {
    let mut exps = vec![0; n];
    exps[i] = e;
    Monomial::new(exps)
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl<C: Field> IsOne for MultiPoly<C> {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }
}

/// Smallest `m_i` with `z_i^{m_i}` in the origin component `Q` of the ideal,
/// together with the cofactors of `s·z_i^{m_i}` in the original generators.
pub fn find_dominating_powers<C: Field>(gb: &GroebnerBasis<C>) -> Result<DominatingPowers<C>> {
    let local = gb.origin_component()?;
    find_dominating_powers_local(gb, &local)
}

fn find_dominating_powers_local<C: Field>(gb: &GroebnerBasis<C>, local: &GroebnerBasis<C>) -> Result<DominatingPowers<C>> {
    let n = gb.nvars();
    let d = local.quotient_basis()?.dim() as u32;
    let primary = local.same_ideal(gb)?;
    let unit = if primary { MultiPoly::one(n) } else { local_unit(gb, local)? };
    let gens = gb.generators();
    let mut powers = Vec::with_capacity(n);
    let mut matrix = PolyMatrix::zeros(n, n, gens.len());
    for i in 0..n {
        let m = (1..=d.max(1))
            .find(|&e| local.is_member(&MultiPoly::term(pure_power(n, i, e), C::one())).unwrap_or(false))
            .ok_or_else(|| Error::Internal(format!("no power of z{} up to {d} lies in the origin component", i + 1)))?;
        let target = &unit * &MultiPoly::term(pure_power(n, i, m), C::one());
        let row = gb.extended_member(&target)?.ok_or_else(|| Error::Internal(format!("s*z{}^{m} is not in the ideal", i + 1)))?;
        for (j, a) in row.into_iter().enumerate() {
            matrix.set(i, j, a);
        }
        powers.push(m);
    }
    let dp = DominatingPowers { powers, matrix, unit };
    if !dp.verify(gens) {
        return Err(Error::Internal("dominating power identity failed".into()));
    }
    Ok(dp)
}

/// An element of `(J : Q)` that does not vanish at the origin.
fn local_unit<C: Field>(gb: &GroebnerBasis<C>, local: &GroebnerBasis<C>) -> Result<MultiPoly<C>> {
    let colon = colon_ideal(gb, local)?;
    colon
        .basis()
        .into_iter()
        .filter(|g| !g.constant_term().is_zero())
        .min_by_key(|g| (g.total_degree(), g.len()))
        .ok_or_else(|| Error::Internal("colon by the origin component lies in the maximal ideal".into()))
}

fn ci_basis<C: Field>(f: &[MultiPoly<C>]) -> Result<GroebnerBasis<C>> {
    let n = f.first().map(MultiPoly::nvars).ok_or_else(|| Error::Precondition("empty tuple".into()))?;
    if f.len() != n {
        return Err(Error::NotCompleteIntersection { expected: n, got: f.len() });
    }
    GroebnerBasis::grevlex(f.to_vec())
}

/// `Res_f(h dz)` for a complete intersection `f` with an isolated zero at
/// the origin.
pub fn transform_residue<C: Field>(f: &[MultiPoly<C>], h: &MultiPoly<C>) -> Result<C> {
    let dp = find_dominating_powers(&ci_basis(f)?)?;
    transform_residue_with(&dp, h)
}

/// `Res_f(h dz)` from a given transformation identity.
pub fn transform_residue_with<C: Field>(dp: &DominatingPowers<C>, h: &MultiPoly<C>) -> Result<C> {
    let k = dp.kernel()?;
    Ok(residue_from_kernel(&dp.powers, &k, h))
}

/// `coeff_{z^{m-1}}(h·k)` without forming the product.
fn residue_from_kernel<C: Field>(powers: &[u32], k: &MultiPoly<C>, h: &MultiPoly<C>) -> C {
    let target = Monomial::new(powers.iter().map(|m| m - 1).collect());
    let mut acc = C::zero();
    for (m, c) in h.terms() {
        if let Some(rest) = target.div(m) {
            let kc = k.coefficient(&rest);
            if !kc.is_zero() {
                acc = acc + c.clone() * kc;
            }
        }
    }
    acc
}

/// `Res` tabulated on monomials, for the ideal's origin component.
#[derive(Clone, Debug)]
pub struct ResidueFunctional<C> {
    ideal: GroebnerBasis<C>,
    local: GroebnerBasis<C>,
    ci: Vec<MultiPoly<C>>,
    dominating: DominatingPowers<C>,
    kernel: MultiPoly<C>,
    standard: Vec<Monomial>,
    bound: u32,
    pairing: BTreeMap<Monomial, C>,
}

/// Tabulates `Res(z^α dz)` for `|α| < 2D`, `D = dim O/Q`. Uses the
/// generators themselves when there are `n` of them, and the dominating
/// powers otherwise.
pub fn residue_pairing<C: Field>(gb: &GroebnerBasis<C>) -> Result<ResidueFunctional<C>> {
    ResidueFunctional::new(gb)
}

impl<C: Field> ResidueFunctional<C> {
    pub fn new(gb: &GroebnerBasis<C>) -> Result<Self> {
        let n = gb.nvars();
        let local = gb.origin_component()?;
        let standard = local.quotient_basis()?.monomials;
        let d = standard.len() as u32;
        let (ci, dominating, kernel) = if gb.generators().len() == n {
            let dp = find_dominating_powers_local(gb, &local)?;
            let k = dp.kernel()?;
            (gb.generators().to_vec(), dp, k)
        } else {
            let dp = find_dominating_powers_local(gb, &local)?;
            let g: Vec<MultiPoly<C>> = dp.powers.iter().enumerate().map(|(i, &e)| MultiPoly::term(pure_power(n, i, e), C::one())).collect();
            let mono = DominatingPowers { powers: dp.powers.clone(), matrix: identity(n), unit: MultiPoly::one(n) };
            (g, mono, MultiPoly::one(n))
        };
        let bound = 2 * d;
        let pairing = Monomial::all_below_degree(n, bound)
            .into_iter()
            .map(|a| {
                let v = residue_from_kernel(&dominating.powers, &kernel, &MultiPoly::term(a.clone(), C::one()));
                (a, v)
            })
            .collect();
        Ok(Self { ideal: gb.clone(), local, ci, dominating, kernel, standard, bound, pairing })
    }

    pub fn ideal(&self) -> &GroebnerBasis<C> {
        &self.ideal
    }

    /// The origin component `Q`; equal to the ideal when it is primary.
    pub fn local_ideal(&self) -> &GroebnerBasis<C> {
        &self.local
    }

    /// The complete intersection whose residue is tabulated.
    pub fn ci(&self) -> &[MultiPoly<C>] {
        &self.ci
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.ideal.generators().len() == self.ideal.nvars()
    }

    pub fn dominating_powers(&self) -> &DominatingPowers<C> {
        &self.dominating
    }

    /// `det A · s^{-n}`, truncated.
    pub fn kernel(&self) -> &MultiPoly<C> {
        &self.kernel
    }

    /// Standard monomials of `Q`.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    /// `D = dim O/Q`.
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Table entries cover all `|α| <` this bound.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn table(&self) -> &BTreeMap<Monomial, C> {
        &self.pairing
    }

    pub fn get(&self, alpha: &Monomial) -> Option<&C> {
        self.pairing.get(alpha)
    }

    /// `Res(h dz)` for any polynomial `h`.
    pub fn evaluate(&self, h: &MultiPoly<C>) -> C {
        residue_from_kernel(&self.dominating.powers, &self.kernel, h)
    }

    /// `Res(φ·z^α dz)` assembled from the table; `None` if an entry falls
    /// outside it.
    pub fn shifted(&self, phi: &MultiPoly<C>, alpha: &Monomial) -> Option<C> {
        let mut acc = C::zero();
        for (m, c) in phi.terms() {
            let v = self.pairing.get(&m.mul(alpha))?;
            acc = acc + c.clone() * v.clone();
        }
        Some(acc)
    }

    /// `φ·Res = 0` on the quotient: `Res(φ·z^α) = 0` for every standard
    /// monomial `α` of `Q`. Decides membership in `Q` when the functional
    /// comes from a complete intersection.
    pub fn annihilates(&self, phi: &MultiPoly<C>) -> bool {
        self.standard.iter().all(|a| self.evaluate(&phi.mul_term(a, &C::one())).is_zero())
    }

    /// Rank of the `D × D` matrix `Res(z^{α+β})` over standard monomials.
    pub fn gorenstein_rank(&self) -> usize {
        let rows = self
            .standard
            .iter()
            .map(|a| self.standard.iter().map(|b| self.evaluate(&MultiPoly::term(a.mul(b), C::one()))).collect())
            .collect();
        rank(rows)
    }
}

fn identity<C: Field>(n: usize) -> PolyMatrix<C> {
    let mut m = PolyMatrix::zeros(n, n, n);
    for i in 0..n {
        m.set(i, i, MultiPoly::one(n));
    }
    m
}

/// Complete-intersection annihilator test, `φ·Res_f = 0`.
pub fn annihilator_test_ci<C: Field>(rf: &ResidueFunctional<C>, phi: &MultiPoly<C>) -> bool {
    rf.annihilates(phi)
}

/// Decides membership in the origin component `Q` of an ideal through
/// residues only.
///
/// For `n` generators this is the annihilator test of `Res_f`. Otherwise,
/// with `g` the dominating powers, `φ ∈ Q` iff `Res_g(φ·h·z^β) = 0` for all
/// generators `h` of `(g : Q)` and all standard monomials `z^β` of `⟨g⟩`.
#[derive(Clone, Debug)]
pub struct DualityHarness<C> {
    local: GroebnerBasis<C>,
    route: Route<C>,
}

#[derive(Clone, Debug)]
enum Route<C> {
    Ci(Box<ResidueFunctional<C>>),
    Colon { powers: Vec<u32>, colon: Vec<MultiPoly<C>> },
}

impl<C: Field> DualityHarness<C> {
    /// Complete-intersection route when there are `n` generators, colon
    /// route otherwise.
    pub fn new(gb: &GroebnerBasis<C>) -> Result<Self> {
        if gb.generators().len() == gb.nvars() {
            let rf = ResidueFunctional::new(gb)?;
            Ok(Self { local: rf.local.clone(), route: Route::Ci(Box::new(rf)) })
        } else {
            Self::via_colon(gb)
        }
    }

    /// Always uses the colon reduction.
    pub fn via_colon(gb: &GroebnerBasis<C>) -> Result<Self> {
        let n = gb.nvars();
        let local = gb.origin_component()?;
        let d = local.quotient_basis()?.dim() as u32;
        let mut powers = Vec::with_capacity(n);
        for i in 0..n {
            let m = (1..=d.max(1))
                .find(|&e| local.is_member(&MultiPoly::term(pure_power(n, i, e), C::one())).unwrap_or(false))
                .ok_or_else(|| Error::Internal(format!("no power of z{} lies in the origin component", i + 1)))?;
            powers.push(m);
        }
        let g: Vec<MultiPoly<C>> = powers.iter().enumerate().map(|(i, &e)| MultiPoly::term(pure_power(n, i, e), C::one())).collect();
        let colon = colon_ideal(&GroebnerBasis::grevlex(g)?, &local)?.basis();
        Ok(Self { local, route: Route::Colon { powers, colon } })
    }

    pub fn local_ideal(&self) -> &GroebnerBasis<C> {
        &self.local
    }

    pub fn uses_colon(&self) -> bool {
        matches!(self.route, Route::Colon { .. })
    }

    /// Generators of `(g : Q)` on the colon route.
    pub fn colon_generators(&self) -> Option<&[MultiPoly<C>]> {
        match &self.route {
            Route::Colon { colon, .. } => Some(colon),
            Route::Ci(_) => None,
        }
    }

    /// Dominating powers `m` on the colon route.
    pub fn powers(&self) -> &[u32] {
        match &self.route {
            Route::Colon { powers, .. } => powers,
            Route::Ci(rf) => &rf.dominating.powers,
        }
    }

    pub fn is_member(&self, phi: &MultiPoly<C>) -> Result<bool> {
        if phi.nvars() != self.local.nvars() {
            return Err(Error::VarMismatch { left: self.local.nvars(), right: phi.nvars() });
        }
        Ok(match &self.route {
            Route::Ci(rf) => rf.annihilates(phi),
            Route::Colon { powers, colon } => {
                let box_standard = box_monomials(powers);
                colon.iter().all(|h| {
                    let ph = phi * h;
                    box_standard.iter().all(|b| monomial_residue(powers, &ph.mul_term(b, &C::one())).expect("shapes checked").is_zero())
                })
            }
        })
    }
}

/// Monomials `z^β` with `β < m` componentwise.
fn box_monomials(m: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &e in m {
        out = out.into_iter().flat_map(|p: Vec<u32>| (0..e).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// One-shot residue membership test for the origin component.
pub fn duality_membership<C: Field>(gb: &GroebnerBasis<C>, phi: &MultiPoly<C>) -> Result<bool> {
    DualityHarness::new(gb)?.is_member(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::GaussianRational as Q;
    use num_traits::Zero;

    fn p(s: &str) -> MultiPoly<Q> {
        parse_poly(s, 2).unwrap()
    }

    fn ideal(gens: &[&str]) -> GroebnerBasis<Q> {
        GroebnerBasis::grevlex(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(monomial_residue(&[1, 1], &p("1")).unwrap(), Q::from(1));
        assert_eq!(monomial_residue(&[2, 2], &p("z*w")).unwrap(), Q::from(1));
        assert_eq!(monomial_residue(&[2, 2], &p("z^2")).unwrap(), Q::from(0));
        assert_eq!(monomial_residue(&[2, 3], &p("5*z*w^2 + z^2*w")).unwrap(), Q::from(5));
        assert!(monomial_residue(&[0, 1], &p("1")).is_err());
    }

    #[test]
    fn dominating_powers_examples() {
        let dp = find_dominating_powers(&ideal(&["z^2", "z*w", "w^2"])).unwrap();
        assert_eq!(dp.powers, vec![2, 2]);
        assert_eq!(dp.matrix.entries(), &[vec![p("1"), p("0"), p("0")], vec![p("0"), p("0"), p("1")]]);

        let dp = find_dominating_powers(&ideal(&["z - w", "w^2"])).unwrap();
        assert_eq!(dp.powers, vec![2, 2]);
        assert_eq!(dp.matrix.entries()[0], vec![p("z + w"), p("1")]);

        let one = GroebnerBasis::grevlex(vec![parse_poly("z1", 1).unwrap()]).unwrap();
        let dp = find_dominating_powers(&one).unwrap();
        assert_eq!(dp.powers, vec![1]);
        assert_eq!(dp.matrix.entries(), &[vec![parse_poly("1", 1).unwrap()]]);
    }

    #[test]
    fn transformation_law_values() {
        assert_eq!(transform_residue(&[p("z"), p("w")], &p("1")).unwrap(), Q::from(1));
        assert_eq!(transform_residue(&[p("z^2"), p("w^2")], &p("z*w")).unwrap(), Q::from(1));
        // A = [[z+w, 1], [0, 1]], det A = z + w.
        assert_eq!(transform_residue(&[p("z - w"), p("w^2")], &p("z*w")).unwrap(), Q::from(0));
        assert_eq!(transform_residue(&[p("z - w"), p("w^2")], &p("w")).unwrap(), Q::from(1));
        assert_eq!(transform_residue(&[p("z - w"), p("w^2")], &p("z")).unwrap(), Q::from(1));
    }

    #[test]
    fn raising_a_power_does_not_change_the_residue() {
        let gb = ideal(&["z - w", "w^2"]);
        let dp = find_dominating_powers(&gb).unwrap();
        for h in ["1", "z", "w", "z*w", "3*z + (1+i)*w^5"] {
            let a = transform_residue_with(&dp, &p(h)).unwrap();
            let b = transform_residue_with(&dp.raised(0), &p(h)).unwrap();
            let c = transform_residue_with(&dp.raised(1).raised(0), &p(h)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
        assert!(dp.raised(1).verify(gb.generators()));
    }

    #[test]
    fn non_primary_ci_localises() {
        let gb = ideal(&["z^2 - w^3", "w^2 - z^3"]);
        let rf = residue_pairing(&gb).unwrap();
        assert!(rf.local_ideal().same_ideal(&ideal(&["z^2", "w^2"])).unwrap());
        assert!(!rf.dominating_powers().unit.is_constant());
        assert_eq!(rf.dim(), 4);
        // f ≡ (z², w²) modulo higher order terms, so the socle pairs to 1.
        assert_eq!(rf.evaluate(&p("z*w")), Q::from(1));
        assert_eq!(rf.gorenstein_rank(), 4);
        for g in gb.generators() {
            for a in Monomial::all_below_degree(2, 4) {
                assert!(rf.evaluate(&g.mul_term(&a, &Q::from(1))).is_zero());
            }
        }
    }

    #[test]
    fn pairing_tables() {
        let rf = residue_pairing(&ideal(&["z^2", "w^2"])).unwrap();
        let nonzero: Vec<_> = rf.table().iter().filter(|(_, v)| !v.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, &Monomial::new(vec![1, 1]));
        let rf = residue_pairing(&ideal(&["z", "w"])).unwrap();
        let nonzero: Vec<_> = rf.table().iter().filter(|(_, v)| !v.is_zero()).collect();
        assert_eq!(nonzero, vec![(&Monomial::one(2), &Q::from(1))]);
    }

    #[test]
    fn module_action_matches_table_shift() {
        let rf = residue_pairing(&ideal(&["z - w", "w^2"])).unwrap();
        let phi = p("z + 2*w");
        for a in Monomial::all_below_degree(2, 2) {
            let direct = rf.evaluate(&phi.mul_term(&a, &Q::from(1)));
            assert_eq!(rf.shifted(&phi, &a), Some(direct));
        }
    }

    #[test]
    fn annihilator_examples() {
        let rf = residue_pairing(&ideal(&["z^2", "w^2"])).unwrap();
        assert!(annihilator_test_ci(&rf, &p("z^2")));
        assert!(!annihilator_test_ci(&rf, &p("z*w")));
    }

    #[test]
    fn colon_route_examples() {
        let gb = ideal(&["z^2", "z*w", "w^2"]);
        let h = DualityHarness::new(&gb).unwrap();
        assert!(h.uses_colon());
        assert!(GroebnerBasis::grevlex(h.colon_generators().unwrap().to_vec()).unwrap().same_ideal(&ideal(&["z", "w"])).unwrap());
        assert!(!h.is_member(&p("z")).unwrap());
        assert!(h.is_member(&p("z^2")).unwrap());
    }

    #[test]
    fn routes_agree_on_ci() {
        let gb = ideal(&["z - w", "w^2"]);
        let ci = DualityHarness::new(&gb).unwrap();
        let colon = DualityHarness::via_colon(&gb).unwrap();
        assert!(!ci.uses_colon());
        for s in ["1", "z", "w", "z - w", "z^2", "z*w + w^2", "z + w"] {
            let phi = p(s);
            let expect = gb.is_member(&phi).unwrap();
            assert_eq!(ci.is_member(&phi).unwrap(), expect, "{s}");
            assert_eq!(colon.is_member(&phi).unwrap(), expect, "{s}");
        }
    }
}
