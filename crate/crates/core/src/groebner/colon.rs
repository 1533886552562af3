use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, MultiPoly};
use crate::scalar::Field;

/// Exact quotient `p / d`, or `None` if `d` does not divide `p`.
pub fn divide_exact<C: Field>(p: &MultiPoly<C>, d: &MultiPoly<C>) -> Option<MultiPoly<C>> {
    let order = MonomialOrder::GrevLex;
    let (dm, dc) = d.leading_term(order)?;
    let (dm, dc) = (dm.clone(), dc.clone());
    let mut rest = p.clone();
    let mut q = MultiPoly::zero(p.nvars());
    while let Some((m, c)) = rest.leading_term(order) {
        let mono = m.div(&dm)?;
        let coef = c.clone() / dc.clone();
        rest = &rest - &d.mul_term(&mono, &coef);
        q.add_term(mono, coef);
    }
    Some(q)
}

/// `A ∩ B` by eliminating `t` from `t·A + (1 − t)·B` under lex with `t`
/// largest.
pub fn intersect<C: Field>(a: &[MultiPoly<C>], b: &[MultiPoly<C>]) -> Result<Vec<MultiPoly<C>>> {
    let n = a.first().or(b.first()).map(MultiPoly::nvars).ok_or_else(|| Error::Precondition("empty ideal".into()))?;
    let t = MultiPoly::<C>::var(n + 1, 0);
    let one_minus_t = &MultiPoly::one(n + 1) - &t;
    let mut gens: Vec<MultiPoly<C>> = a.iter().map(|g| &t * &g.embed(n + 1, 1)).collect();
    gens.extend(b.iter().map(|g| &one_minus_t * &g.embed(n + 1, 1)));
    let gb = GroebnerBasis::new(gens, MonomialOrder::Lex)?;
    Ok(gb.basis().into_iter().filter(|g| g.terms().all(|(m, _)| m.exps()[0] == 0)).map(|g| drop_first_var(&g)).collect())
}

fn drop_first_var<C: Field>(p: &MultiPoly<C>) -> MultiPoly<C> {
    let n = p.nvars() - 1;
    MultiPoly::from_terms(n, p.terms().map(|(m, c)| (crate::poly::Monomial::new(m.exps()[1..].to_vec()), c.clone())))
}

fn colon_by_element<C: Field>(g: &[MultiPoly<C>], h: &MultiPoly<C>) -> Result<Vec<MultiPoly<C>>> {
    let inter = intersect(g, std::slice::from_ref(h))?;
    inter.iter().map(|p| divide_exact(p, h).ok_or_else(|| Error::Internal("intersection element not divisible".into()))).collect()
}

/// `(g : J) = {h : h·J ⊆ g}` as the intersection of `(g : f)` over the
/// generators `f` of `J`. Requires `g ⊆ J`.
pub fn colon_ideal<C: Field>(g: &GroebnerBasis<C>, j: &GroebnerBasis<C>) -> Result<GroebnerBasis<C>> {
    if g.nvars() != j.nvars() {
        return Err(Error::VarMismatch { left: g.nvars(), right: j.nvars() });
    }
    for (k, gen) in g.generators().iter().enumerate() {
        if !j.is_member(gen)? {
            return Err(Error::Precondition(format!("generator {k} of the numerator ideal is not in the denominator ideal")));
        }
    }
    let n = g.nvars();
    let gb_gens = g.basis();
    let mut acc: Option<Vec<MultiPoly<C>>> = None;
    for f in j.basis() {
        let part = colon_by_element(&gb_gens, &f)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part)?,
        });
    }
    let gens = acc.unwrap_or_else(|| vec![MultiPoly::one(n)]);
    let gens = if gens.is_empty() { vec![MultiPoly::zero(n)] } else { gens };
    GroebnerBasis::grevlex(gens)
}

/// `(g : ⟨h⟩)` read off from the first coordinates of the syzygies of
/// `(h, g_1, …, g_r)`. Independent of the elimination route.
pub fn colon_by_syzygies<C: Field>(g: &[MultiPoly<C>], h: &MultiPoly<C>) -> Result<GroebnerBasis<C>> {
    let mut gens = vec![h.clone()];
    gens.extend_from_slice(g);
    let syz = super::syzygies(&gens)?;
    let firsts: Vec<MultiPoly<C>> = syz.into_iter().map(|mut v| v.swap_remove(0)).filter(|p| !p.is_zero()).collect();
    let firsts = if firsts.is_empty() { vec![MultiPoly::zero(h.nvars())] } else { firsts };
    GroebnerBasis::grevlex(firsts)
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
    fn exact_division() {
        assert_eq!(divide_exact(&p("z^2 - w^2"), &p("z - w")), Some(p("z + w")));
        assert_eq!(divide_exact(&p("z^2 + 1"), &p("z - w")), None);
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let i = intersect(&[p("z")], &[p("w")]).unwrap();
        let gb = GroebnerBasis::grevlex(i).unwrap();
        assert!(gb.same_ideal(&ideal(&["z*w"])).unwrap());
    }

    #[test]
    fn colon_of_monomial_ci_by_square_of_maximal_ideal() {
        let g = ideal(&["z^2", "w^2"]);
        let j = ideal(&["z^2", "z*w", "w^2"]);
        let c = colon_ideal(&g, &j).unwrap();
        assert!(c.same_ideal(&ideal(&["z", "w"])).unwrap());
    }

    #[test]
    fn trivial_colons() {
        let g = ideal(&["z^2", "w^3"]);
        assert!(colon_ideal(&g, &g).unwrap().is_unit_ideal());
        let c = colon_ideal(&g, &ideal(&["1"])).unwrap();
        assert!(c.same_ideal(&g).unwrap());
    }

    #[test]
    fn precondition_violation() {
        let g = ideal(&["z"]);
        let j = ideal(&["w"]);
        assert!(matches!(colon_ideal(&g, &j), Err(Error::Precondition(_))));
    }

    #[test]
    fn syzygy_route_agrees() {
        let g = ideal(&["z^2", "w^2"]);
        let a = colon_ideal(&g, &ideal(&["z*w", "z^2", "w^2"])).unwrap();
        let b = colon_by_syzygies(&g.basis(), &p("z*w")).unwrap();
        assert!(a.same_ideal(&b).unwrap());
    }
}
