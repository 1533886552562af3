//! Randomized algebraic invariants.

use locres::groebner::GroebnerBasis;
use locres::poly::{parse_poly, parse_poly_with, render, Monomial, MultiPoly, VarNames};
use locres::quad::{default_torus_grid, torus_residue};
use locres::residue::{monomial_residue, transform_residue};
use locres::{GaussianRational as Q, Poly};
use num_traits::Zero;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Q> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| Q::from_integers(a, b) / Q::from(d))
}

fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let monos = Monomial::all_below_degree(nvars, max_deg + 1);
    prop::collection::vec((0..monos.len(), coeff()), 0..6)
        .prop_map(move |terms| MultiPoly::from_terms(nvars, terms.into_iter().map(|(k, c)| (monos[k].clone(), c))))
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(coeff(), nvars)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(2, 3), b in poly(2, 3), c in poly(2, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly(3, 3), b in poly(3, 3), k in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(k).unwrap();
        let rhs = &(&a.partial_derivative(k).unwrap() * &b) + &(&a * &b.partial_derivative(k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(2, 3), b in poly(2, 3), x in point(2)) {
        let ev = |p: &Poly| p.eval_exact(&x).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn parse_inverts_render(a in poly(3, 4)) {
        let names = VarNames::standard(3);
        let text = render(&a, &names);
        prop_assert_eq!(parse_poly_with(&text, &names).unwrap(), a.clone());
        let zw = VarNames::parse_list("x,y,t").unwrap();
        prop_assert_eq!(parse_poly_with(&render(&a, &zw), &zw).unwrap(), a);
    }

    #[test]
    fn normal_form_is_linear(a in poly(2, 4), b in poly(2, 4), s in coeff()) {
        let gb = GroebnerBasis::grevlex(vec![parse_poly("z^2 - w^3", 2).unwrap(), parse_poly("z*w - w", 2).unwrap()]).unwrap();
        let nf = |p: &Poly| gb.normal_form(p).unwrap();
        let combo = &a + &b.scale(&s);
        prop_assert_eq!(nf(&combo), &nf(&a) + &nf(&b).scale(&s));
    }

    #[test]
    fn cofactors_reproduce_members(q1 in poly(2, 2), q2 in poly(2, 2)) {
        let gens = vec![parse_poly("z^2 + w", 2).unwrap(), parse_poly("w^2 - z*w", 2).unwrap()];
        let gb = GroebnerBasis::grevlex(gens.clone()).unwrap();
        let phi = &(&q1 * &gens[0]) + &(&q2 * &gens[1]);
        let psi = gb.extended_member(&phi).unwrap().expect("member");
        let back = psi.iter().zip(&gens).fold(Poly::zero(2), |acc, (c, g)| &acc + &(c * g));
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn residue_is_linear_and_kills_the_ideal(h in poly(2, 5), q in poly(2, 2), s in coeff()) {
        let f = vec![parse_poly("z^2 - w^3", 2).unwrap(), parse_poly("w^2 - z^3", 2).unwrap()];
        let res = |p: &Poly| transform_residue(&f, p).unwrap();
        let one = Poly::one(2);
        prop_assert_eq!(res(&(&h + &one.scale(&s))), res(&h) + res(&one) * s);
        prop_assert!(res(&(&q * &f[0])).is_zero());
    }
}

#[test]
fn torus_quadrature_converges_under_refinement() {
    let h = parse_poly("(2+i)*z1^3*z2 + z1*z2^4 - 3*z2^2 + 1", 2).unwrap();
    let powers = [4u32, 2];
    let exact = monomial_residue(&powers, &h).unwrap();
    let base = default_torus_grid(&powers, &h);
    for grid in [base, 2 * base] {
        let v: num_complex::Complex<f64> = torus_residue(&powers, &h, &[0.6, 0.9], grid).unwrap();
        let e: num_complex::Complex<f64> = locres::ToComplex::to_complex(&exact);
        assert!((v - e).norm() < 1e-8, "grid {grid}: {v} vs {e}");
    }
}

#[test]
fn sphere_quadrature_converges_under_refinement() {
    use locres::quad::{BmIntegrator, SphereGrid};
    let coarse = BmIntegrator::<f64>::new(2, 0.7, SphereGrid::default()).unwrap();
    let fine = BmIntegrator::<f64>::new(2, 0.7, SphereGrid { eta: 96, angle: 128 }).unwrap();
    for (gens, h) in [(["z", "w"], "1"), (["z^2", "w^2"], "z*w"), (["z - w", "w^2"], "w")] {
        let f: Vec<Poly> = gens.iter().map(|s| parse_poly(s, 2).unwrap()).collect();
        let h = parse_poly(h, 2).unwrap();
        let a = coarse.residue(&f, &h).unwrap().value;
        let b = fine.residue(&f, &h).unwrap().value;
        assert!((a - b).norm() < 1e-8, "{gens:?}: {a} vs {b}");
    }
}
