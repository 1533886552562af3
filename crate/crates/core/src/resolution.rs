//! Free complexes `0 → R^{r_p} → … → R^{r_1} → R^{r_0}`: Koszul complexes,
//! minimal free resolutions via iterated syzygies, and exactness checks.

use crate::error::{Error, Result};
use crate::groebner::ModuleBasis;
use crate::linalg::PolyMatrix;
use crate::poly::{MonomialOrder, MultiPoly};
use crate::scalar::Field;

/// A complex of free modules. `maps[k - 1]` is `f^k : R^{r_k} → R^{r_{k-1}}`,
/// stored as an `r_{k-1} × r_k` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex<C> {
    nvars: usize,
    ranks: Vec<usize>,
    maps: Vec<PolyMatrix<C>>,
}

impl<C: Field> FreeComplex<C> {
    pub fn new(nvars: usize, ranks: Vec<usize>, maps: Vec<PolyMatrix<C>>) -> Result<Self> {
        if ranks.len() != maps.len() + 1 {
            return Err(Error::Precondition(format!("{} ranks for {} maps", ranks.len(), maps.len())));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != ranks[k] || m.cols() != ranks[k + 1] {
                return Err(Error::Precondition(format!(
                    "map f^{} has shape {}x{}, expected {}x{}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
            if m.nvars() != nvars {
                return Err(Error::VarMismatch { left: nvars, right: m.nvars() });
            }
        }
        Ok(Self { nvars, ranks, maps })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Number of maps, `p`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `f^k` for `1 ≤ k ≤ p`.
    pub fn map(&self, k: usize) -> &PolyMatrix<C> {
        &self.maps[k - 1]
    }

    pub fn maps(&self) -> &[PolyMatrix<C>] {
        &self.maps
    }

    /// No entry of `f^k`, `k ≥ 2`, is invertible at the origin.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().skip(1).all(|m| m.entries().iter().flatten().all(|p| p.constant_term().is_zero()))
    }
}

/// Ascending `k`-subsets of `{0, …, p-1}` in lexicographic order.
pub fn exterior_basis(p: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, p: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            rec(i + 1, p, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= p {
        rec(0, p, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Koszul complex of `f_1, …, f_p`: `f^k(e_L) = Σ_j (−1)^{j+1} f_{l_j} e_{L∖l_j}`.
pub fn koszul_complex<C: Field>(f: &[MultiPoly<C>]) -> Result<FreeComplex<C>> {
    let p = f.len();
    let nvars = f.first().map(MultiPoly::nvars).ok_or_else(|| Error::Precondition("Koszul complex of no elements".into()))?;
    if let Some(g) = f.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::VarMismatch { left: nvars, right: g.nvars() });
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=p).map(|k| exterior_basis(p, k)).collect();
    let ranks = bases.iter().map(Vec::len).collect();
    let mut maps = Vec::with_capacity(p);
    for k in 1..=p {
        let (rows, cols) = (&bases[k - 1], &bases[k]);
        let mut m = PolyMatrix::zeros(nvars, rows.len(), cols.len());
        for (c, l) in cols.iter().enumerate() {
            for (j, &lj) in l.iter().enumerate() {
                let rest: Vec<usize> = l.iter().copied().filter(|&x| x != lj).collect();
                let r = rows.binary_search(&rest).expect("face of a basis subset");
                let entry = if j % 2 == 0 { f[lj].clone() } else { -&f[lj] };
                m.set(r, c, entry);
            }
        }
        maps.push(m);
    }
    FreeComplex::new(nvars, ranks, maps)
}

/// Drops every column that lies in the submodule spanned by the others.
fn prune_redundant<C: Field>(mut cols: Vec<Vec<MultiPoly<C>>>, rank: usize, nvars: usize) -> Result<Vec<Vec<MultiPoly<C>>>> {
    let mut j = cols.len();
    while j > 0 {
        j -= 1;
        if cols.len() == 1 {
            break;
        }
        let others: Vec<_> = cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, c)| c.clone()).collect();
        let mb = ModuleBasis::compute(others, rank, nvars, MonomialOrder::GrevLex)?;
        if mb.is_member(&cols[j])? {
            cols.remove(j);
        }
    }
    Ok(cols)
}

/// Free resolution of `R/⟨gens⟩`: `f^1` is the generator row and each next
/// map's columns generate the kernel of the previous one. The result is
/// minimized.
pub fn free_resolution<C: Field>(gens: &[MultiPoly<C>]) -> Result<FreeComplex<C>> {
    let nvars = gens.first().map(MultiPoly::nvars).ok_or_else(|| Error::Precondition("empty generator list".into()))?;
    let first = PolyMatrix::from_rows(nvars, vec![gens.to_vec()])?;
    let mut ranks = vec![1, gens.len()];
    let mut maps = vec![first];
    loop {
        let last = maps.last().unwrap();
        let cols = last.columns();
        let mb = ModuleBasis::compute(cols, last.rows(), nvars, MonomialOrder::GrevLex)?;
        let syz = mb.syzygies();
        if syz.is_empty() {
            break;
        }
        if maps.len() > nvars + 1 {
            return Err(Error::Internal(format!("resolution did not terminate within {} steps", nvars + 1)));
        }
        let r = last.cols();
        let syz = prune_redundant(syz, r, nvars)?;
        ranks.push(syz.len());
        maps.push(PolyMatrix::from_columns(nvars, r, &syz));
    }
    Ok(minimize(&FreeComplex::new(nvars, ranks, maps)?))
}

/// Cancels constant (unit) entries of `f^k`, `k ≥ 2`, by splitting off the
/// trivial summand they span, until none remain.
pub fn minimize<C: Field>(c: &FreeComplex<C>) -> FreeComplex<C> {
    let mut ranks = c.ranks.clone();
    let mut maps = c.maps.clone();
    'outer: loop {
        for k in 1..maps.len() {
            let m = &maps[k];
            let hit = (0..m.rows()).find_map(|i| {
                (0..m.cols()).find_map(|j| {
                    let e = m.get(i, j);
                    (!e.is_zero() && e.is_constant()).then(|| (i, j, e.constant_term()))
                })
            });
            let Some((i, j, u)) = hit else { continue };
            let inv = u.inv();
            // f^k' = D - c u^{-1} b
            let mut reduced = m.without_row(i).without_column(j);
            for (ri, row) in (0..m.rows()).filter(|&r| r != i).enumerate() {
                let cval = m.get(row, j);
                if cval.is_zero() {
                    continue;
                }
                for (cj, col) in (0..m.cols()).filter(|&x| x != j).enumerate() {
                    let b = m.get(i, col);
                    if b.is_zero() {
                        continue;
                    }
                    let upd = reduced.get(ri, cj) - &(cval * b).scale(&inv);
                    reduced.set(ri, cj, upd);
                }
            }
            maps[k] = reduced;
            maps[k - 1] = maps[k - 1].without_column(i);
            if k + 1 < maps.len() {
                maps[k + 1] = maps[k + 1].without_row(j);
            }
            ranks[k] -= 1;
            ranks[k + 1] -= 1;
            while ranks.len() > 1 && *ranks.last().unwrap() == 0 {
                ranks.pop();
                maps.pop();
            }
            continue 'outer;
        }
        break;
    }
    FreeComplex { nvars: c.nvars, ranks, maps }
}

/// All consecutive products `f^k · f^{k+1}` vanish identically.
pub fn verify_complex<C: Field>(c: &FreeComplex<C>) -> bool {
    c.maps.windows(2).all(|w| w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
}

/// Pointwise exactness off the zero set `Z` of `f^1`: at every point,
/// `rank f^1 = r_0` and `rank f^k + rank f^{k+1} = r_k` for `1 ≤ k ≤ p`
/// (with `f^{p+1} = 0`). Points on `Z` are rejected.
pub fn pointwise_exactness_check<C: Field>(c: &FreeComplex<C>, points: &[Vec<C>]) -> Result<bool> {
    for pt in points {
        if pt.len() != c.nvars {
            return Err(Error::VarMismatch { left: c.nvars, right: pt.len() });
        }
        let f1 = c.map(1).eval_exact(pt)?;
        if f1.iter().flatten().all(|v| v.is_zero()) {
            return Err(Error::Precondition(format!("point {pt:?} lies on the zero set")));
        }
    }
    for pt in points {
        let ranks: Vec<usize> = c.maps.iter().map(|m| m.rank_at(pt)).collect::<Result<_>>()?;
        if ranks[0] != c.ranks[0] {
            return Ok(false);
        }
        for k in 1..=c.length() {
            let next = ranks.get(k).copied().unwrap_or(0);
            if ranks[k - 1] + next != c.ranks[k] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Auslander–Buchsbaum for an ideal primary to the origin: the quotient is
/// Cohen–Macaulay iff the minimal resolution has length `nvars`.
pub fn cohen_macaulay_check<C: Field>(c: &FreeComplex<C>) -> bool {
    c.length() == c.nvars
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
    fn koszul_two_generators_signs() {
        let k = koszul_complex(&[p("z"), p("w")]).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert_eq!(k.map(1).entries(), &[vec![p("z"), p("w")]]);
        // e_{12} ↦ f_1 e_2 − f_2 e_1
        assert_eq!(k.map(2).entries(), &[vec![p("-w")], vec![p("z")]]);
        assert!(verify_complex(&k));
    }

    #[test]
    fn koszul_single_and_triple() {
        let k1 = koszul_complex(&[p("z")]).unwrap();
        assert_eq!(k1.ranks(), &[1, 1]);
        let f: Vec<_> = ["z1", "z2", "z3"].iter().map(|s| parse_poly(s, 3).unwrap()).collect();
        let k3 = koszul_complex(&f).unwrap();
        assert_eq!(k3.ranks(), &[1, 3, 3, 1]);
        assert!(verify_complex(&k3));
    }

    #[test]
    fn broken_sign_is_detected() {
        let k = koszul_complex(&[p("z"), p("w")]).unwrap();
        let mut maps = k.maps().to_vec();
        maps[1].set(0, 0, p("w"));
        let broken = FreeComplex::new(2, k.ranks().to_vec(), maps).unwrap();
        assert!(!verify_complex(&broken));
    }

    #[test]
    fn resolution_of_square_of_maximal_ideal() {
        let c = free_resolution(&[p("z^2"), p("z*w"), p("w^2")]).unwrap();
        assert_eq!(c.ranks(), &[1, 3, 2]);
        assert!(verify_complex(&c));
        assert!(c.is_minimal());
        assert!(cohen_macaulay_check(&c));
        let pts = vec![vec![Q::from(1), Q::from(0)]];
        assert!(pointwise_exactness_check(&c, &pts).unwrap());
    }

    #[test]
    fn resolution_of_monomial_ci_and_principal() {
        let c = free_resolution(&[p("z^2"), p("w^3")]).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        let z = parse_poly("z1", 1).unwrap();
        let c1 = free_resolution(std::slice::from_ref(&z)).unwrap();
        assert_eq!(c1.ranks(), &[1, 1]);
        assert_eq!(c1.map(1).entries(), &[vec![z]]);
    }

    #[test]
    fn minimize_strips_trivial_summand() {
        let k = koszul_complex(&[p("z"), p("w")]).unwrap();
        assert_eq!(minimize(&k), k);
        let f1 = PolyMatrix::from_rows(2, vec![vec![p("z"), p("w"), p("0")]]).unwrap();
        let f2 = PolyMatrix::from_rows(2, vec![vec![p("-w"), p("0")], vec![p("z"), p("0")], vec![p("0"), p("1")]]).unwrap();
        let padded = FreeComplex::new(2, vec![1, 3, 2], vec![f1, f2]).unwrap();
        assert!(verify_complex(&padded));
        let m = minimize(&padded);
        assert_eq!(m, k);
        assert_eq!(minimize(&m), m);
    }

    #[test]
    fn pointwise_rejects_points_on_zero_set() {
        let k = koszul_complex(&[p("z"), p("w")]).unwrap();
        assert!(pointwise_exactness_check(&k, &[vec![Q::from(1), Q::from(1)]]).unwrap());
        assert!(pointwise_exactness_check(&k, &[vec![Q::from(0), Q::from(0)]]).is_err());
    }

    #[test]
    fn short_koszul_is_not_cm_for_primary_claim() {
        let f: Vec<_> = ["z1", "z2"].iter().map(|s| parse_poly(s, 3).unwrap()).collect();
        assert!(!cohen_macaulay_check(&koszul_complex(&f).unwrap()));
    }
}
