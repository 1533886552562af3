//! Koszul-valued `(0, q)`-forms with denominators `|f|^{2N}`.
//!
//! A form is a finite sum of terms `num / |f|^{2N} · dz̄_J ⊗ e_K`, where `num`
//! is a polynomial in `z_1..z_n` and formal conjugates `w_1..w_n` (standing
//! for `z̄_1..z̄_n`), `J ⊆ {1..n}` and `K ⊆ {1..p}`. With `z̄` treated as
//! independent variables `∂̄` is an algebraic derivation, so every identity
//! below is a polynomial identity.
//!
//! Conventions:
//! - `∂̄(ψ ⊗ e_K) = ∂̄ψ ⊗ e_K`, with `dz̄_k` placed in front of `dz̄_J`.
//! - `δ_f(ψ ⊗ e_{l_1}∧…∧e_{l_k}) = Σ_j (−1)^{j+1} f_{l_j} ψ ⊗ e_{K∖l_j}`.
//! - `∇_f = (−1)^q δ_f − ∂̄` on terms of antiholomorphic degree `q`.
//! - [`AntiForm::cap`] sorts the `dz̄` and `e` indices independently;
//!   [`AntiForm::wedge`] is the graded product, which additionally carries
//!   `(−1)^{|K_a|·|J_b|}` for moving `e_{K_a}` past `dz̄_{J_b}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{render, Monomial, MultiPoly, VarNames};
use crate::scalar::{Conjugate, Field, GaussianRational};

/// A polynomial in `z_1..z_n, w_1..w_n` with `w_i` standing for `z̄_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjPoly<C> {
    nvars: usize,
    poly: MultiPoly<C>,
}

impl<C: Field + Conjugate> ConjPoly<C> {
    /// Wraps a polynomial in `2n` variables.
    pub fn new(nvars: usize, poly: MultiPoly<C>) -> Result<Self> {
        if poly.nvars() != 2 * nvars {
            return Err(Error::VarMismatch { left: 2 * nvars, right: poly.nvars() });
        }
        Ok(Self { nvars, poly })
    }

    /// A holomorphic polynomial in `z_1..z_n`.
    pub fn holomorphic(p: &MultiPoly<C>) -> Self {
        let n = p.nvars();
        Self { nvars: n, poly: p.embed(2 * n, 0) }
    }

    pub fn z(nvars: usize, i: usize) -> Self {
        Self { nvars, poly: MultiPoly::var(2 * nvars, i) }
    }

    pub fn w(nvars: usize, i: usize) -> Self {
        Self { nvars, poly: MultiPoly::var(2 * nvars, nvars + i) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<C> {
        self.poly
    }

    /// Conjugates coefficients and swaps `z_i ↔ w_i`.
    pub fn conj(&self) -> Self {
        Self { nvars: self.nvars, poly: conj_poly(&self.poly, self.nvars) }
    }

    /// No `w` appears.
    pub fn is_holomorphic(&self) -> bool {
        self.poly.terms().all(|(m, _)| m.exps()[self.nvars..].iter().all(|&e| e == 0))
    }

    /// `|f|² = Σ f_k·f̄_k`.
    pub fn abs2(f: &[MultiPoly<C>]) -> Result<Self> {
        let n = f.first().map(MultiPoly::nvars).ok_or_else(|| Error::Precondition("empty tuple".into()))?;
        let mut acc = MultiPoly::zero(2 * n);
        for g in f {
            if g.nvars() != n {
                return Err(Error::VarMismatch { left: n, right: g.nvars() });
            }
            let h = Self::holomorphic(g);
            acc = &acc + &(&h.poly * &h.conj().poly);
        }
        Ok(Self { nvars: n, poly: acc })
    }
}

fn conj_poly<C: Field + Conjugate>(p: &MultiPoly<C>, n: usize) -> MultiPoly<C> {
    MultiPoly::from_terms(
        2 * n,
        p.terms().map(|(m, c)| {
            let e = m.exps();
            let swapped = e[n..].iter().chain(&e[..n]).copied().collect();
            (Monomial::new(swapped), c.conjugate())
        }),
    )
}

/// The tuple `f` together with `f̄`, `|f|²` and `∂|f|²/∂w_k`.
#[derive(Debug, PartialEq)]
pub struct BmContext<C> {
    nvars: usize,
    f: Vec<MultiPoly<C>>,
    f_lifted: Vec<MultiPoly<C>>,
    fbar: Vec<MultiPoly<C>>,
    abs2: MultiPoly<C>,
    dabs2: Vec<MultiPoly<C>>,
}

impl<C: Field + Conjugate> BmContext<C> {
    pub fn new(f: &[MultiPoly<C>]) -> Result<Arc<Self>> {
        let abs2 = ConjPoly::abs2(f)?;
        let n = abs2.nvars;
        let f_lifted: Vec<_> = f.iter().map(|g| ConjPoly::holomorphic(g).poly).collect();
        let fbar = f.iter().map(|g| ConjPoly::holomorphic(g).conj().poly).collect();
        let dabs2 = (0..n).map(|k| abs2.poly.partial_derivative(n + k)).collect::<Result<_>>()?;
        Ok(Arc::new(Self { nvars: n, f: f.to_vec(), f_lifted, fbar, abs2: abs2.poly, dabs2 }))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of generators `p`.
    pub fn rank(&self) -> usize {
        self.f.len()
    }

    pub fn generators(&self) -> &[MultiPoly<C>] {
        &self.f
    }

    pub fn abs2(&self) -> ConjPoly<C> {
        ConjPoly { nvars: self.nvars, poly: self.abs2.clone() }
    }

    pub fn fbar(&self, j: usize) -> ConjPoly<C> {
        ConjPoly { nvars: self.nvars, poly: self.fbar[j].clone() }
    }
}

type Key = (Vec<usize>, Vec<usize>);

#[derive(Clone, Debug)]
struct Term<C> {
    num: MultiPoly<C>,
    power: u32,
}

/// Sum of `num / |f|^{2N} · dz̄_J ⊗ e_K`; one term per `(J, K)`.
#[derive(Clone, Debug)]
pub struct AntiForm<C> {
    ctx: Arc<BmContext<C>>,
    terms: BTreeMap<Key, Term<C>>,
}

/// Merges two ascending index lists; `None` on a repeated index, otherwise
/// the merged list and whether the sorting permutation is odd.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut out = [a, b].concat();
    out.sort_unstable();
    Some((out, inversions % 2 == 1))
}

fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    if idx.windows(2).any(|w| w[0] >= w[1]) || idx.last().is_some_and(|&l| l >= bound) {
        return Err(Error::Precondition(format!("{what} indices {idx:?} must be ascending and below {bound}")));
    }
    Ok(())
}

impl<C: Field + Conjugate> AntiForm<C> {
    pub fn zero(ctx: &Arc<BmContext<C>>) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// The constant `1 ⊗ e_∅`.
    pub fn one(ctx: &Arc<BmContext<C>>) -> Self {
        Self::scalar(ctx, &ConjPoly { nvars: ctx.nvars, poly: MultiPoly::one(2 * ctx.nvars) }, 0)
    }

    /// `num / |f|^{2N}` in degree `(0, 0) ⊗ e_∅`.
    pub fn scalar(ctx: &Arc<BmContext<C>>, num: &ConjPoly<C>, power: u32) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term((Vec::new(), Vec::new()), num.poly.clone(), power);
        out
    }

    /// A single term with 0-based ascending `dz̄` and `e` indices.
    pub fn monomial(ctx: &Arc<BmContext<C>>, num: &ConjPoly<C>, power: u32, dbar: &[usize], koszul: &[usize]) -> Result<Self> {
        if num.nvars != ctx.nvars {
            return Err(Error::VarMismatch { left: ctx.nvars, right: num.nvars });
        }
        check_indices(dbar, ctx.nvars, "dz̄")?;
        check_indices(koszul, ctx.rank(), "Koszul")?;
        let mut out = Self::zero(ctx);
        out.add_term((dbar.to_vec(), koszul.to_vec()), num.poly.clone(), power);
        Ok(out)
    }

    pub fn context(&self) -> &Arc<BmContext<C>> {
        &self.ctx
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

    /// `(J, K, numerator, N)` for every term, in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &[usize], ConjPoly<C>, u32)> + '_ {
        self.terms.iter().map(|((j, k), t)| (j.as_slice(), k.as_slice(), ConjPoly { nvars: self.ctx.nvars, poly: t.num.clone() }, t.power))
    }

    fn abs2_pow(&self, k: u32) -> MultiPoly<C> {
        self.ctx.abs2.pow(k)
    }

    fn add_term(&mut self, key: Key, num: MultiPoly<C>, power: u32) {
        if num.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&key) {
            None => Term { num, power },
            Some(old) => {
                let top = old.power.max(power);
                let a = &old.num * &self.abs2_pow(top - old.power);
                let b = &num * &self.abs2_pow(top - power);
                Term { num: &a + &b, power: top }
            }
        };
        if !merged.num.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    fn same_context(&self, other: &Self) {
        assert!(Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx, "forms over different generator tuples");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_context(other);
        let mut out = self.clone();
        for (k, t) in &other.terms {
            out.add_term(k.clone(), t.num.clone(), t.power);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_numerators(|p| -p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        self.map_numerators(|p| p.scale(c))
    }

    /// Multiplies every numerator by `g`.
    pub fn mul_conj(&self, g: &ConjPoly<C>) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (k, t) in &self.terms {
            out.add_term(k.clone(), &t.num * &g.poly, t.power);
        }
        out
    }

    /// Multiplies by a holomorphic polynomial in `z_1..z_n`.
    pub fn mul_holomorphic(&self, g: &MultiPoly<C>) -> Self {
        self.mul_conj(&ConjPoly::holomorphic(g))
    }

    fn map_numerators(&self, f: impl Fn(&MultiPoly<C>) -> MultiPoly<C>) -> Self {
        let terms = self.terms.iter().map(|(k, t)| (k.clone(), Term { num: f(&t.num), power: t.power })).collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    /// Cancels common factors of `|f|²` between numerators and denominators.
    pub fn reduced(&self) -> Self {
        let abs2 = &self.ctx.abs2;
        let terms = self
            .terms
            .iter()
            .map(|(k, t)| {
                let mut t = t.clone();
                while t.power > 0 {
                    match crate::groebner::divide_exact(&t.num, abs2) {
                        Some(q) => {
                            t.num = q;
                            t.power -= 1;
                        }
                        None => break,
                    }
                }
                (k.clone(), t)
            })
            .collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    fn product(&self, other: &Self, graded: bool) -> Self {
        self.same_context(other);
        let mut out = Self::zero(&self.ctx);
        for ((ja, ka), ta) in &self.terms {
            for ((jb, kb), tb) in &other.terms {
                let Some((j, sj)) = merge_sign(ja, jb) else { continue };
                let Some((k, sk)) = merge_sign(ka, kb) else { continue };
                let twist = graded && (ka.len() * jb.len()) % 2 == 1;
                let num = &ta.num * &tb.num;
                let num = if sj ^ sk ^ twist { -num } else { num };
                out.add_term((j, k), num, ta.power + tb.power);
            }
        }
        out
    }

    /// `dz̄_I⊗e_J ∩ dz̄_K⊗e_L = dz̄_I∧dz̄_K ⊗ e_J∧e_L`.
    pub fn cap(&self, other: &Self) -> Self {
        self.product(other, false)
    }

    /// Graded product of `Λ(dz̄) ⊗ Λ(e)`.
    pub fn wedge(&self, other: &Self) -> Self {
        self.product(other, true)
    }

    /// `a ∩ a ∩ … ∩ a` (`k` factors); `1` for `k = 0`.
    pub fn cap_power(&self, k: usize) -> Self {
        (0..k).fold(Self::one(&self.ctx), |acc, _| acc.cap(self))
    }

    pub fn dbar(&self) -> Self {
        let n = self.ctx.nvars;
        let mut out = Self::zero(&self.ctx);
        for ((j, kos), t) in &self.terms {
            for k in 0..n {
                if j.contains(&k) {
                    continue;
                }
                let d = t.num.partial_derivative(n + k).expect("index in range");
                let (num, power) = if t.power == 0 {
                    (d, 0)
                } else {
                    let a = &d * &self.ctx.abs2;
                    let b = (&t.num * &self.ctx.dabs2[k]).scale(&C::from_i64(t.power as i64));
                    (&a - &b, t.power + 1)
                };
                if num.is_zero() {
                    continue;
                }
                let before = j.iter().filter(|&&x| x < k).count();
                let mut nj = j.clone();
                nj.insert(before, k);
                out.add_term((nj, kos.clone()), if before % 2 == 1 { -num } else { num }, power);
            }
        }
        out
    }

    /// Contraction with `Σ f_j e_j^*`.
    pub fn delta(&self) -> Self {
        self.delta_twisted(false)
    }

    fn delta_twisted(&self, twist: bool) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((j, kos), t) in &self.terms {
            let q_odd = twist && j.len() % 2 == 1;
            for (pos, &l) in kos.iter().enumerate() {
                let num = &t.num * &self.ctx.f_lifted[l];
                let mut nk = kos.clone();
                nk.remove(pos);
                let neg = (pos % 2 == 1) ^ q_odd;
                out.add_term((j.clone(), nk), if neg { -num } else { num }, t.power);
            }
        }
        out
    }

    /// `∇_f = (−1)^q δ_f − ∂̄`.
    pub fn nabla(&self) -> Self {
        self.delta_twisted(true).sub(&self.dbar())
    }

    /// Terms with exactly `k` Koszul indices.
    pub fn koszul_component(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|((_, kos), _)| kos.len() == k).map(|(a, b)| (a.clone(), b.clone())).collect();
        Self { ctx: self.ctx.clone(), terms }
    }

    /// Terms of Koszul degree `p`.
    pub fn top_component(&self) -> Self {
        self.koszul_component(self.ctx.rank())
    }

    /// Re-tags every `e_∅` term with `e_K` and divides by `|f|^{2N}`.
    fn attach(&self, koszul: &[usize], power: u32) -> Self {
        let mut out = Self::zero(&self.ctx);
        for ((j, kos), t) in &self.terms {
            debug_assert!(kos.is_empty());
            out.add_term((j.clone(), koszul.to_vec()), t.num.clone(), t.power + power);
        }
        out
    }

    /// Numerators over the common denominator `|f|^{2M}`.
    fn over_common(&self, top: u32) -> BTreeMap<&Key, MultiPoly<C>> {
        self.terms.iter().map(|(k, t)| (k, &t.num * &self.abs2_pow(top - t.power))).collect()
    }

    fn max_power(&self) -> u32 {
        self.terms.values().map(|t| t.power).max().unwrap_or(0)
    }
}

impl<C: Field + Conjugate> PartialEq for AntiForm<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx.f != other.ctx.f {
            return false;
        }
        if self.terms.len() != other.terms.len() || self.terms.keys().ne(other.terms.keys()) {
            return false;
        }
        self.terms.iter().all(|(k, a)| {
            let b = &other.terms[k];
            let top = a.power.max(b.power);
            &a.num * &self.abs2_pow(top - a.power) == &b.num * &self.abs2_pow(top - b.power)
        })
    }
}

/// `c` with `a = c·b`, if one exists.
pub fn find_constant<C: Field + Conjugate>(a: &AntiForm<C>, b: &AntiForm<C>) -> Option<C> {
    if b.is_zero() {
        return a.is_zero().then(C::zero);
    }
    let top = a.max_power().max(b.max_power());
    let na = a.over_common(top);
    let nb = b.over_common(top);
    let (key, pb) = nb.iter().next()?;
    let pa = na.get(key)?;
    let (m, cb) = pb.leading_term(Default::default())?;
    let c = pa.coefficient(m) / cb.clone();
    (a == &b.scale(&c)).then_some(c)
}

/// `σ = Σ f̄_j ⊗ e_j / |f|²`.
pub fn sigma<C: Field + Conjugate>(ctx: &Arc<BmContext<C>>) -> AntiForm<C> {
    let mut out = AntiForm::zero(ctx);
    for j in 0..ctx.rank() {
        out.add_term((Vec::new(), vec![j]), ctx.fbar[j].clone(), 1);
    }
    out
}

/// `v = σ + σ∧∂̄σ + … + σ∧(∂̄σ)^{p−1}`, graded products.
pub fn build_v<C: Field + Conjugate>(ctx: &Arc<BmContext<C>>) -> AntiForm<C> {
    let s = sigma(ctx);
    let ds = s.dbar();
    let mut term = s.clone();
    let mut v = s;
    for _ in 1..ctx.rank() {
        term = term.wedge(&ds);
        v = v.add(&term);
    }
    v
}

/// `p! Σ_j (−1)^{j−1} f̄_j ∂̄f̄_1∧…∧∂̄f̄_j^∧…∧∂̄f̄_p ⊗ e_1∧…∧e_p / |f|^{2p}`.
pub fn closed_form_vp<C: Field + Conjugate>(ctx: &Arc<BmContext<C>>) -> AntiForm<C> {
    let p = ctx.rank();
    let dfbar: Vec<AntiForm<C>> = (0..p).map(|l| AntiForm::scalar(ctx, &ctx.fbar(l), 0).dbar()).collect();
    let all: Vec<usize> = (0..p).collect();
    let mut out = AntiForm::zero(ctx);
    for j in 0..p {
        let mut t = AntiForm::scalar(ctx, &ctx.fbar(j), 0);
        for (l, d) in dfbar.iter().enumerate() {
            if l != j {
                t = t.wedge(d);
            }
        }
        let t = t.attach(&all, p as u32);
        out = if j % 2 == 0 { out.add(&t) } else { out.sub(&t) };
    }
    let fact = (1..=p as i64).product::<i64>();
    out.scale(&C::from_i64(fact))
}

/// `ω^φ = φ·v_p`.
pub fn omega_phi<C: Field + Conjugate>(ctx: &Arc<BmContext<C>>, phi: &MultiPoly<C>) -> AntiForm<C> {
    build_v(ctx).top_component().mul_holomorphic(phi)
}

/// For `φ = Σ ψ_j f_j` and `p ≥ 2`, the form `η = −(u ∧ v_{p−1})` with
/// `u = Σ ψ_j ⊗ e_j`, checked to satisfy `∂̄η = ω^φ`. `None` when `φ` is not in
/// `⟨f⟩`.
pub fn exactness_witness<C: Field + Conjugate>(ctx: &Arc<BmContext<C>>, phi: &MultiPoly<C>) -> Result<Option<AntiForm<C>>> {
    let p = ctx.rank();
    if p < 2 {
        return Err(Error::Precondition("a ∂̄-primitive of ω^φ needs at least two generators".into()));
    }
    let gb = GroebnerBasis::grevlex(ctx.f.clone())?;
    let Some(psi) = gb.extended_member(phi)? else {
        return Ok(None);
    };
    let mut u = AntiForm::zero(ctx);
    for (j, c) in psi.iter().enumerate() {
        u.add_term((Vec::new(), vec![j]), ConjPoly::holomorphic(c).poly, 0);
    }
    let v = build_v(ctx);
    let eta = u.wedge(&v.koszul_component(p - 1)).neg();
    if eta.dbar() != v.top_component().mul_holomorphic(phi) {
        return Err(Error::Internal("∂̄η differs from ω^φ".into()));
    }
    Ok(Some(eta))
}

/// A random form with `terms` terms, small integer coefficients, numerator
/// degree at most `max_degree` and `N ≤ 2`.
pub fn random_antiform<C: Field + Conjugate, R: Rng + ?Sized>(
    ctx: &Arc<BmContext<C>>,
    rng: &mut R,
    terms: usize,
    max_degree: u32,
) -> AntiForm<C> {
    let n = ctx.nvars;
    let p = ctx.rank();
    let monos = Monomial::all_below_degree(2 * n, max_degree + 1);
    let mut out = AntiForm::zero(ctx);
    for _ in 0..terms {
        let num = MultiPoly::from_terms(
            2 * n,
            (0..rng.gen_range(1..=3)).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), C::from_i64(rng.gen_range(-3..=3)))),
        );
        let j: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let k: Vec<usize> = (0..p).filter(|_| rng.gen_bool(0.5)).collect();
        out.add_term((j, k), num, rng.gen_range(0..=2));
    }
    out
}

fn conj_names(n: usize) -> VarNames {
    let names = (1..=n).map(|i| format!("z{i}")).chain((1..=n).map(|i| format!("zb{i}"))).collect();
    VarNames::new(names).expect("distinct names")
}

impl fmt::Display for ConjPoly<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.poly, &conj_names(self.nvars)))
    }
}

/// One term per line: `(num) / |f|^2N dzb1^dzb2 (x) e1^e2`, sorted by
/// `(J, K)`; `0` for the zero form.
impl fmt::Display for AntiForm<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = conj_names(self.ctx.nvars);
        let wedge = |prefix: &str, idx: &[usize]| idx.iter().map(|i| format!("{prefix}{}", i + 1)).collect::<Vec<_>>().join("^");
        for (i, ((j, k), t)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "({})", render(&t.num, &names))?;
            if t.power > 0 {
                write!(f, " / |f|^{}", 2 * t.power)?;
            }
            if !j.is_empty() {
                write!(f, " {}", wedge("dzb", j))?;
            }
            if !k.is_empty() {
                write!(f, " (x) {}", wedge("e", k))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::GaussianRational as Q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(gens: &[&str], n: usize) -> Arc<BmContext<Q>> {
        let f: Vec<_> = gens.iter().map(|s| parse_poly(s, n).unwrap()).collect();
        BmContext::new(&f).unwrap()
    }

    fn cp(s: &str, n: usize) -> ConjPoly<Q> {
        let names: Vec<String> = conj_names(n).names().to_vec();
        ConjPoly::new(n, crate::poly::parse_poly_with(s, &VarNames::new(names).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn conjugation_is_an_involution() {
        let p = cp("(1+2*i)*z1^2*zb2 - i*zb1 + 3", 2);
        assert_eq!(p.conj().conj(), p);
        assert_eq!(p.conj(), cp("(1-2*i)*zb1^2*z2 + i*z1 + 3", 2));
        let c = ctx(&["z^2 - i*w", "w^3"], 2);
        assert_eq!(c.abs2().conj(), c.abs2());
        assert!(ConjPoly::holomorphic(&parse_poly("z*w", 2).unwrap()).is_holomorphic());
    }

    #[test]
    fn cap_signs() {
        let c = ctx(&["z", "w"], 2);
        let one = cp("1", 2);
        let m = |j: &[usize], k: &[usize]| AntiForm::monomial(&c, &one, 0, j, k).unwrap();
        assert_eq!(m(&[0], &[0]).cap(&m(&[1], &[1])), m(&[0, 1], &[0, 1]));
        assert_eq!(m(&[1], &[0]).cap(&m(&[0], &[1])), m(&[0, 1], &[0, 1]).neg());
        assert!(m(&[0], &[0]).cap(&m(&[1], &[0])).is_zero());
        // the graded product also moves e_1 past dz̄_2
        assert_eq!(m(&[0], &[0]).wedge(&m(&[1], &[1])), m(&[0, 1], &[0, 1]).neg());
    }

    #[test]
    fn dbar_examples() {
        let c = ctx(&["z1"], 1);
        let w = AntiForm::scalar(&c, &cp("zb1", 1), 0);
        assert_eq!(w.dbar(), AntiForm::monomial(&c, &cp("1", 1), 0, &[0], &[]).unwrap());
        let inv = AntiForm::scalar(&c, &cp("1", 1), 1);
        assert_eq!(inv.dbar(), AntiForm::monomial(&c, &cp("-z1", 1), 2, &[0], &[]).unwrap());
        let c2 = ctx(&["z^2", "w^2"], 2);
        let a = AntiForm::scalar(&c2, &cp("z1*zb2^2 + zb1", 2), 1);
        assert!(a.dbar().dbar().is_zero());
    }

    #[test]
    fn delta_examples() {
        let c = ctx(&["z1", "z2", "z3"], 3);
        let one = cp("1", 3);
        let e = |k: &[usize]| AntiForm::monomial(&c, &one, 0, &[], k).unwrap();
        assert_eq!(e(&[0]).delta(), AntiForm::scalar(&c, &cp("z1", 3), 0));
        let expect = e(&[1]).mul_conj(&cp("z1", 3)).sub(&e(&[0]).mul_conj(&cp("z2", 3)));
        assert_eq!(e(&[0, 1]).delta(), expect);
        assert!(e(&[0, 1, 2]).delta().delta().is_zero());
    }

    #[test]
    fn sigma_and_v_low_rank() {
        let c = ctx(&["z1"], 1);
        let s = sigma(&c);
        assert_eq!(s, AntiForm::monomial(&c, &cp("zb1", 1), 1, &[], &[0]).unwrap());
        assert_eq!(s.delta(), AntiForm::one(&c));
        let v = build_v(&c);
        assert_eq!(v, s);
        assert_eq!(v.nabla(), AntiForm::one(&c));
        assert_eq!(v.top_component(), v);
        assert_eq!(closed_form_vp(&c), v);
    }

    #[test]
    fn v_for_two_generators() {
        let c = ctx(&["z^2", "w^2"], 2);
        let s = sigma(&c);
        assert_eq!(s.delta(), AntiForm::one(&c));
        assert!(s.dbar().cap_power(2).is_zero());
        let v = build_v(&c);
        assert_eq!(v.nabla(), AntiForm::one(&c));
        let top = v.top_component();
        assert!(top.dbar().is_zero());
        assert_eq!(find_constant(&top, &closed_form_vp(&c)), Some(Q::ratio(-1, 2)));
        assert!(sigma(&c).top_component().is_zero());
    }

    #[test]
    fn anticommutation_of_dbar_fbar() {
        let c = ctx(&["z^2 + w", "w^2"], 2);
        let g = |j: usize| AntiForm::scalar(&c, &c.fbar(j), 0).dbar().attach(&[j], 0);
        assert_eq!(g(0).cap(&g(1)), g(1).cap(&g(0)));
    }

    #[test]
    fn holomorphic_scalars_are_nabla_closed() {
        let c = ctx(&["z^2", "w^2"], 2);
        let phi = AntiForm::scalar(&c, &cp("z1*z2 + 3", 2), 0);
        assert!(phi.nabla().is_zero());
    }

    #[test]
    fn random_forms_square_to_zero() {
        let c = ctx(&["z^2", "w^2"], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = random_antiform(&c, &mut rng, 4, 2);
            assert!(a.dbar().dbar().is_zero());
            assert!(a.delta().delta().is_zero());
            assert!(a.nabla().nabla().is_zero());
        }
    }

    #[test]
    fn omega_of_a_member_is_exact() {
        let c = ctx(&["z^2", "w^2"], 2);
        let phi = parse_poly("z^2", 2).unwrap();
        assert!(exactness_witness(&c, &phi).unwrap().is_some());
        let phi = parse_poly("z*w", 2).unwrap();
        assert!(exactness_witness(&c, &phi).unwrap().is_none());
        assert_eq!(omega_phi(&c, &parse_poly("1", 2).unwrap()), build_v(&c).top_component());
    }

    #[test]
    fn reduction_and_render() {
        let c = ctx(&["z1"], 1);
        let a = AntiForm::monomial(&c, &cp("z1*zb1^2", 1), 2, &[0], &[0]).unwrap();
        assert_eq!(a.reduced(), AntiForm::monomial(&c, &cp("zb1", 1), 1, &[0], &[0]).unwrap());
        assert_eq!(a.reduced(), a);
        assert_eq!(a.reduced().to_string(), "(zb1) / |f|^2 dzb1 (x) e1");
        assert_eq!(AntiForm::zero(&c).to_string(), "0");
    }

    #[test]
    fn v_for_three_generators() {
        let f: Vec<_> = ["z1", "z2", "z3"].iter().map(|s| parse_poly(s, 3).unwrap()).collect();
        let c = BmContext::new(&f).unwrap();
        let s = sigma(&c);
        assert!(s.dbar().cap_power(3).is_zero());
        let v = build_v(&c);
        assert_eq!(v.nabla(), AntiForm::one(&c));
        assert!(v.top_component().dbar().is_zero());
        assert_eq!(find_constant(&v.top_component(), &closed_form_vp(&c)), Some(Q::ratio(-1, 3)));
        let phi = parse_poly("z1*z2 + z3^2", 3).unwrap();
        assert!(exactness_witness(&c, &phi).unwrap().is_some());
    }
}
