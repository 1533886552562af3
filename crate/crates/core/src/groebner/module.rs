//! Buchberger's algorithm on submodules of a free module `R^rank`, with
//! cofactor tracking. Ideals are the `rank = 1` case.
//!
//! Module terms are ordered term-over-position: monomials compare first under
//! the chosen [`MonomialOrder`], ties broken by component (lower index is
//! larger).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::scalar::Field;

/// A vector of polynomials, i.e. an element of `R^rank`.
pub type PolyVec<C> = Vec<MultiPoly<C>>;

#[derive(Clone, Debug)]
struct Term<C> {
    mon: Monomial,
    comp: usize,
    coef: C,
}

/// Sorted (descending) term list of a module element.
#[derive(Clone, Debug)]
struct Vect<C> {
    terms: Vec<Term<C>>,
}

fn term_cmp(order: MonomialOrder, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
    order.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
}

impl<C: Field> Vect<C> {
    fn from_polys(v: &[MultiPoly<C>], order: MonomialOrder) -> Self {
        let mut terms: Vec<Term<C>> = v
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| p.terms().map(move |(m, c)| Term { mon: m.clone(), comp, coef: c.clone() }))
            .collect();
        terms.sort_by(|a, b| term_cmp(order, (&b.mon, b.comp), (&a.mon, a.comp)));
        Self { terms }
    }

    fn to_polys(&self, rank: usize, nvars: usize) -> PolyVec<C> {
        let mut out = vec![MultiPoly::zero(nvars); rank];
        for t in &self.terms {
            out[t.comp].add_term(t.mon.clone(), t.coef.clone());
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    fn scale(&mut self, c: &C) {
        for t in &mut self.terms {
            t.coef = t.coef.clone() * c.clone();
        }
    }

    /// `self - c·m·other`.
    fn sub_scaled(&self, other: &Vect<C>, m: &Monomial, c: &C, order: MonomialOrder) -> Vect<C> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| Term { mon: t.mon.mul(m), comp: t.comp, coef: -(t.coef.clone() * c.clone()) }).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => term_cmp(order, (&x.mon, x.comp), (&y.mon, y.comp)),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = x.coef.clone() + y.coef;
                    if !s.is_zero() {
                        out.push(Term { mon: y.mon, comp: y.comp, coef: s });
                    }
                }
            }
        }
        Vect { terms: out }
    }
}

#[derive(Clone, Debug)]
struct Elem<C> {
    v: Vect<C>,
    /// Expression of `v` in the original generators.
    cof: PolyVec<C>,
}

fn cof_sub_scaled<C: Field>(acc: &mut PolyVec<C>, other: &PolyVec<C>, m: &Monomial, c: &C) {
    for (a, o) in acc.iter_mut().zip(other) {
        if !o.is_zero() {
            *a = &*a - &o.mul_term(m, c);
        }
    }
}

/// Reduced Gröbner basis of a submodule of `R^rank`, with cofactors
/// expressing every basis element in the original generators.
#[derive(Clone, Debug)]
pub struct ModuleBasis<C> {
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<PolyVec<C>>,
    elems: Vec<Elem<C>>,
}

impl<C: Field> ModuleBasis<C> {
    /// Runs Buchberger's algorithm (normal selection, product and chain
    /// criteria) followed by full inter-reduction.
    pub fn compute(generators: Vec<PolyVec<C>>, rank: usize, nvars: usize, order: MonomialOrder) -> Result<Self> {
        for g in &generators {
            if g.len() != rank {
                return Err(Error::Precondition(format!("vector of length {} in a rank {rank} module", g.len())));
            }
            if let Some(p) = g.iter().find(|p| p.nvars() != nvars) {
                return Err(Error::VarMismatch { left: nvars, right: p.nvars() });
            }
        }
        let ngens = generators.len();
        let mut basis: Vec<Elem<C>> = Vec::new();
        for (j, g) in generators.iter().enumerate() {
            let v = Vect::from_polys(g, order);
            if v.is_zero() {
                continue;
            }
            let mut cof = vec![MultiPoly::zero(nvars); ngens];
            cof[j] = MultiPoly::one(nvars);
            basis.push(make_monic(Elem { v, cof }));
        }

        let mut pending: Vec<(usize, usize)> = Vec::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pending.push((i, j));
            }
        }

        while !pending.is_empty() {
            // normal selection: smallest lcm first
            let pick = (0..pending.len())
                .min_by(|&a, &b| {
                    let la = pair_lcm(&basis, pending[a]);
                    let lb = pair_lcm(&basis, pending[b]);
                    match (la, lb) {
                        (Some(x), Some(y)) => order.cmp(&x, &y).then(pending[a].cmp(&pending[b])),
                        (None, Some(_)) => Ordering::Less,
                        (Some(_), None) => Ordering::Greater,
                        (None, None) => pending[a].cmp(&pending[b]),
                    }
                })
                .unwrap();
            let (i, j) = pending.swap_remove(pick);
            let (li, lj) = (basis[i].v.lead().unwrap(), basis[j].v.lead().unwrap());
            if li.comp != lj.comp {
                continue;
            }
            if rank == 1 && li.mon.gcd_is_one(&lj.mon) {
                continue;
            }
            let lcm = li.mon.lcm(&lj.mon);
            if chain_criterion(&basis, &pending, i, j, &lcm, li.comp) {
                continue;
            }
            let s = s_vector(&basis[i], &basis[j], order);
            let r = reduce_tracked(s, &basis, order, nvars);
            if !r.v.is_zero() {
                let k = basis.len();
                basis.push(make_monic(r));
                for m in 0..k {
                    pending.push((m, k));
                }
            }
        }

        let elems = interreduce(basis, order, nvars);
        Ok(Self { rank, nvars, order, generators, elems })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[PolyVec<C>] {
        &self.generators
    }

    pub fn basis(&self) -> Vec<PolyVec<C>> {
        self.elems.iter().map(|e| e.v.to_polys(self.rank, self.nvars)).collect()
    }

    pub fn cofactors(&self) -> Vec<PolyVec<C>> {
        self.elems.iter().map(|e| e.cof.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading monomial and component of each basis element.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.elems.iter().map(|e| e.v.lead().map(|t| (t.mon.clone(), t.comp)).unwrap()).collect()
    }

    fn check(&self, v: &[MultiPoly<C>]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::Precondition(format!("vector of length {} in a rank {} module", v.len(), self.rank)));
        }
        if let Some(p) = v.iter().find(|p| p.nvars() != self.nvars) {
            return Err(Error::VarMismatch { left: self.nvars, right: p.nvars() });
        }
        Ok(())
    }

    pub fn normal_form(&self, v: &[MultiPoly<C>]) -> Result<PolyVec<C>> {
        self.check(v)?;
        let r = reduce_plain(Vect::from_polys(v, self.order), &self.elems, self.order, |_, _, _| {});
        Ok(r.to_polys(self.rank, self.nvars))
    }

    pub fn is_member(&self, v: &[MultiPoly<C>]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(MultiPoly::is_zero))
    }

    /// `ψ` with `v = Σ ψ_j · generators[j]`, or `None` if `v` is not in the
    /// module.
    pub fn extended_member(&self, v: &[MultiPoly<C>]) -> Result<Option<PolyVec<C>>> {
        self.check(v)?;
        let mut psi = vec![MultiPoly::zero(self.nvars); self.generators.len()];
        let r = reduce_plain(Vect::from_polys(v, self.order), &self.elems, self.order, |k, m, c| {
            cof_sub_scaled(&mut psi, &self.elems[k].cof, m, &-c.clone());
        });
        if r.is_zero() {
            Ok(Some(psi))
        } else {
            Ok(None)
        }
    }

    /// Generators of the syzygy module of the original generators: S-pair
    /// relations of the basis (Schreyer) pulled back through the cofactors,
    /// plus the relations expressing each generator in the basis.
    pub fn syzygies(&self) -> Vec<PolyVec<C>> {
        let ngens = self.generators.len();
        let nb = self.elems.len();
        let mut out = Vec::new();
        let pull_back = |coords: &[MultiPoly<C>]| -> PolyVec<C> {
            let mut acc = vec![MultiPoly::zero(self.nvars); ngens];
            for (k, q) in coords.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (a, c) in acc.iter_mut().zip(&self.elems[k].cof) {
                    *a = &*a + &(q * c);
                }
            }
            acc
        };
        for j in 0..nb {
            for i in 0..j {
                let (li, lj) = (self.elems[i].v.lead().unwrap(), self.elems[j].v.lead().unwrap());
                if li.comp != lj.comp {
                    continue;
                }
                let lcm = li.mon.lcm(&lj.mon);
                let mi = lcm.div(&li.mon).unwrap();
                let mj = lcm.div(&lj.mon).unwrap();
                let ci = li.coef.inv();
                let cj = lj.coef.inv();
                let s = Vect::<C> { terms: Vec::new() }.sub_scaled(&self.elems[i].v, &mi, &-ci.clone(), self.order).sub_scaled(
                    &self.elems[j].v,
                    &mj,
                    &cj,
                    self.order,
                );
                let mut coords = vec![MultiPoly::zero(self.nvars); nb];
                coords[i] = MultiPoly::term(mi, ci);
                coords[j] = MultiPoly::term(mj, -cj);
                let r = reduce_plain(s, &self.elems, self.order, |k, m, c| {
                    coords[k] = &coords[k] - &MultiPoly::term(m.clone(), c.clone());
                });
                debug_assert!(r.is_zero(), "S-vector of a Gröbner basis must reduce to zero");
                out.push(pull_back(&coords));
            }
        }
        for (j, g) in self.generators.iter().enumerate() {
            let mut coords = vec![MultiPoly::zero(self.nvars); nb];
            let r = reduce_plain(Vect::from_polys(g, self.order), &self.elems, self.order, |k, m, c| {
                coords[k] = &coords[k] + &MultiPoly::term(m.clone(), c.clone());
            });
            debug_assert!(r.is_zero(), "generator must reduce to zero");
            let mut v = pull_back(&coords);
            for p in v.iter_mut() {
                *p = -&*p;
            }
            v[j] = &v[j] + &MultiPoly::one(self.nvars);
            out.push(v);
        }
        prune_vectors(out)
    }

    /// Every S-vector of the stored basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let nb = self.elems.len();
        for j in 0..nb {
            for i in 0..j {
                let (li, lj) = (self.elems[i].v.lead().unwrap(), self.elems[j].v.lead().unwrap());
                if li.comp != lj.comp {
                    continue;
                }
                let s = s_vector(&self.elems[i], &self.elems[j], self.order);
                if !reduce_plain(s.v, &self.elems, self.order, |_, _, _| {}).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Every basis element equals its cofactor combination of generators.
    pub fn cofactor_identity_holds(&self) -> bool {
        self.elems.iter().all(|e| {
            let mut acc = vec![MultiPoly::zero(self.nvars); self.rank];
            for (c, g) in e.cof.iter().zip(&self.generators) {
                for (a, gi) in acc.iter_mut().zip(g) {
                    *a = &*a + &(c * gi);
                }
            }
            acc == e.v.to_polys(self.rank, self.nvars)
        })
    }
}

fn make_monic<C: Field>(mut e: Elem<C>) -> Elem<C> {
    let lc = e.v.lead().expect("nonzero element").coef.clone();
    if lc != C::one() {
        let inv = lc.inv();
        e.v.scale(&inv);
        for c in e.cof.iter_mut() {
            *c = c.scale(&inv);
        }
    }
    e
}

fn pair_lcm<C: Field>(basis: &[Elem<C>], (i, j): (usize, usize)) -> Option<Monomial> {
    let (a, b) = (basis[i].v.lead()?, basis[j].v.lead()?);
    (a.comp == b.comp).then(|| a.mon.lcm(&b.mon))
}

fn chain_criterion<C: Field>(basis: &[Elem<C>], pending: &[(usize, usize)], i: usize, j: usize, lcm: &Monomial, comp: usize) -> bool {
    let is_pending = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pending.contains(&key)
    };
    basis.iter().enumerate().any(|(k, e)| {
        if k == i || k == j {
            return false;
        }
        let l = e.v.lead().unwrap();
        l.comp == comp && l.mon.divides(lcm) && !is_pending(i, k) && !is_pending(j, k)
    })
}

fn s_vector<C: Field>(a: &Elem<C>, b: &Elem<C>, order: MonomialOrder) -> Elem<C> {
    let (la, lb) = (a.v.lead().unwrap(), b.v.lead().unwrap());
    let lcm = la.mon.lcm(&lb.mon);
    let ma = lcm.div(&la.mon).unwrap();
    let mb = lcm.div(&lb.mon).unwrap();
    let ca = la.coef.inv();
    let cb = lb.coef.inv();
    let zero = Vect { terms: Vec::new() };
    let v = zero.sub_scaled(&a.v, &ma, &-ca.clone(), order).sub_scaled(&b.v, &mb, &cb, order);
    let nvars = la.mon.nvars();
    let mut cof = vec![MultiPoly::zero(nvars); a.cof.len()];
    cof_sub_scaled(&mut cof, &a.cof, &ma, &-ca);
    cof_sub_scaled(&mut cof, &b.cof, &mb, &cb);
    Elem { v, cof }
}

/// Full reduction. `step(k, m, c)` is called for every elimination
/// `p ← p − c·m·basis[k]`.
fn reduce_plain<C: Field>(mut p: Vect<C>, basis: &[Elem<C>], order: MonomialOrder, mut step: impl FnMut(usize, &Monomial, &C)) -> Vect<C> {
    let mut rem: Vec<Term<C>> = Vec::new();
    while let Some(lt) = p.terms.first() {
        let hit = basis.iter().enumerate().find_map(|(k, g)| {
            let gl = g.v.lead()?;
            if gl.comp != lt.comp {
                return None;
            }
            lt.mon.div(&gl.mon).map(|m| (k, m, lt.coef.clone() / gl.coef.clone()))
        });
        match hit {
            Some((k, m, c)) => {
                p = p.sub_scaled(&basis[k].v, &m, &c, order);
                step(k, &m, &c);
            }
            None => rem.push(p.terms.remove(0)),
        }
    }
    Vect { terms: rem }
}

fn reduce_tracked<C: Field>(e: Elem<C>, basis: &[Elem<C>], order: MonomialOrder, nvars: usize) -> Elem<C> {
    let _ = nvars;
    let mut cof = e.cof;
    let v = reduce_plain(e.v, basis, order, |k, m, c| cof_sub_scaled(&mut cof, &basis[k].cof, m, c));
    Elem { v, cof }
}

fn interreduce<C: Field>(basis: Vec<Elem<C>>, order: MonomialOrder, nvars: usize) -> Vec<Elem<C>> {
    // minimal basis: drop elements whose lead is divisible by another lead
    let leads: Vec<(Monomial, usize)> = basis
        .iter()
        .map(|e| {
            let l = e.v.lead().unwrap();
            (l.mon.clone(), l.comp)
        })
        .collect();
    let mut keep: Vec<Elem<C>> = Vec::new();
    for (i, e) in basis.iter().enumerate() {
        let redundant =
            leads.iter().enumerate().any(|(j, (m, c))| j != i && *c == leads[i].1 && m.divides(&leads[i].0) && (m != &leads[i].0 || j < i));
        if !redundant {
            keep.push(e.clone());
        }
    }
    keep.sort_by(|a, b| {
        let (x, y) = (a.v.lead().unwrap(), b.v.lead().unwrap());
        term_cmp(order, (&x.mon, x.comp), (&y.mon, y.comp))
    });
    for i in 0..keep.len() {
        let e = keep[i].clone();
        let others: Vec<Elem<C>> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        keep[i] = make_monic(reduce_tracked(e, &others, order, nvars));
    }
    keep
}

/// Removes zero vectors and vectors that are scalar multiples of an earlier one.
pub(crate) fn prune_vectors<C: Field>(vs: Vec<PolyVec<C>>) -> Vec<PolyVec<C>> {
    let mut out: Vec<PolyVec<C>> = Vec::new();
    for v in vs {
        if v.iter().all(MultiPoly::is_zero) {
            continue;
        }
        let norm = normalize_vector(&v);
        if out.iter().any(|u| normalize_vector(u) == norm) {
            continue;
        }
        out.push(v);
    }
    out
}

fn normalize_vector<C: Field>(v: &[MultiPoly<C>]) -> PolyVec<C> {
    let lead = v.iter().find(|p| !p.is_zero()).and_then(|p| p.leading_term(MonomialOrder::GrevLex).map(|(_, c)| c.clone()));
    match lead {
        Some(c) => {
            let inv = c.inv();
            v.iter().map(|p| p.scale(&inv)).collect()
        }
        None => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::GaussianRational as Q;

    fn p(s: &str) -> MultiPoly<Q> {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn module_membership_of_column_span() {
        // columns (w, -z, 0) and (0, w, -z) span the syzygies of (z^2, zw, w^2)
        let cols = vec![vec![p("w"), p("-z"), p("0")], vec![p("0"), p("w"), p("-z")]];
        let mb = ModuleBasis::compute(cols, 3, 2, MonomialOrder::GrevLex).unwrap();
        assert!(mb.satisfies_buchberger_criterion());
        assert!(mb.cofactor_identity_holds());
        // (w^2, 0, -z^2) = w·c1 + z·c2
        assert!(mb.is_member(&[p("w^2"), p("0"), p("-z^2")]).unwrap());
        assert!(!mb.is_member(&[p("1"), p("0"), p("0")]).unwrap());
        let psi = mb.extended_member(&[p("w^2"), p("0"), p("-z^2")]).unwrap().unwrap();
        assert_eq!(psi, vec![p("w"), p("z")]);
    }

    #[test]
    fn module_syzygies_annihilate() {
        let cols = vec![vec![p("w"), p("-z"), p("0")], vec![p("0"), p("w"), p("-z")], vec![p("w^2"), p("0"), p("-z^2")]];
        let mb = ModuleBasis::compute(cols.clone(), 3, 2, MonomialOrder::GrevLex).unwrap();
        let syz = mb.syzygies();
        assert!(!syz.is_empty());
        for s in &syz {
            for row in 0..3 {
                let mut acc = MultiPoly::zero(2);
                for (c, col) in s.iter().zip(&cols) {
                    acc = &acc + &(c * &col[row]);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn rejects_ragged_vectors() {
        let r = ModuleBasis::compute(vec![vec![p("z")]], 2, 2, MonomialOrder::GrevLex);
        assert!(r.is_err());
    }
}
