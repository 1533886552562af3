//! Seeded random polynomials and points for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, MultiPoly};
use crate::scalar::{Field, GaussianRational};

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `terms` monomials of degree `≤ max_degree` with integer
/// coefficients in `[-bound, bound]`.
pub fn random_poly<C: Field, R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize, bound: i64) -> MultiPoly<C> {
    let monos = Monomial::all_below_degree(nvars, max_degree + 1);
    MultiPoly::from_terms(
        nvars,
        (0..terms).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), C::from_i64(rng.gen_range(-bound..=bound)))),
    )
}

/// Like [`random_poly`] with Gaussian-integer coefficients.
pub fn random_gaussian_poly<R: Rng + ?Sized>(
    rng: &mut R,
    nvars: usize,
    max_degree: u32,
    terms: usize,
    bound: i64,
) -> MultiPoly<GaussianRational> {
    let monos = Monomial::all_below_degree(nvars, max_degree + 1);
    MultiPoly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let c = GaussianRational::from_integers(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
            (monos[rng.gen_range(0..monos.len())].clone(), c)
        }),
    )
}

/// A point with coordinates `p/q`, `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_rational_point<C: Field, R: Rng + ?Sized>(rng: &mut R, nvars: usize, bound: i64) -> Vec<C> {
    (0..nvars).map(|_| C::from_i64(rng.gen_range(-bound..=bound)) / C::from_i64(rng.gen_range(1..=bound))).collect()
}

/// `count` random rational points at which not every polynomial vanishes.
pub fn points_off_zero_set<C: Field, R: Rng + ?Sized>(rng: &mut R, polys: &[MultiPoly<C>], count: usize, bound: i64) -> Vec<Vec<C>> {
    let nvars = polys.first().map_or(0, MultiPoly::nvars);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pt = random_rational_point(rng, nvars, bound);
        if polys.iter().any(|p| p.eval_exact(&pt).map(|v| !v.is_zero()).unwrap_or(false)) {
            out.push(pt);
        }
    }
    out
}
