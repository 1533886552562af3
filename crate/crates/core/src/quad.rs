//! Floating-point integration of forms over tori and spheres, used to
//! cross-check the exact residues.
//!
//! A form of degree `d` is given by its coefficients on `dz_I ∧ dz̄_J`
//! (`|I| + |J| = d`). On a cycle parametrized by `t_1..t_d` with tangent
//! vectors `T_a`, the pullback of `dz_I ∧ dz̄_J` is
//! `det[dz_i(T_a); dz̄_j(T_a)] dt_1…dt_d`. Periodic angles use the trapezoid
//! rule; the polar angle of the three-sphere uses Gauss–Legendre nodes.
//! Grid points are evaluated in parallel and summed pairwise in index
//! order, so results do not depend on the thread count.

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, NumericPoly};
use crate::scalar::{Field, ToComplex};

fn cst<F: Float>(x: f64) -> F {
    F::from(x).expect("representable constant")
}

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre<F: Float + FloatConst>(n: usize, a: F, b: F) -> (Vec<F>, Vec<F>) {
    let mut nodes = vec![F::zero(); n];
    let mut weights = vec![F::zero(); n];
    let half = cst::<F>(0.5);
    let (mid, rad) = ((a + b) * half, (b - a) * half);
    let nf = cst::<F>(n as f64);
    for i in 0..n.div_ceil(2) {
        let mut x = (F::PI() * (cst::<F>(i as f64) + cst(0.75)) / (nf + half)).cos();
        let mut dp = F::one();
        for _ in 0..100 {
            // P_n(x) by the three-term recurrence, P_n'(x) from P_{n-1}.
            let (mut p0, mut p1) = (F::one(), x);
            for k in 2..=n {
                let kf = cst::<F>(k as f64);
                let p2 = ((kf + kf - F::one()) * x * p1 - (kf - F::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let (pn, pn1) = if n == 1 { (x, F::one()) } else { (p1, p0) };
            dp = nf * (x * pn - pn1) / (x * x - F::one());
            let dx = pn / dp;
            x = x - dx;
            if dx.abs() <= F::epsilon() * cst(4.0) {
                break;
            }
        }
        let w = cst::<F>(2.0) / ((F::one() - x * x) * dp * dp);
        nodes[i] = mid - rad * x;
        nodes[n - 1 - i] = mid + rad * x;
        weights[i] = rad * w;
        weights[n - 1 - i] = rad * w;
    }
    (nodes, weights)
}

/// Sum in a fixed binary tree over the slice order.
pub fn pairwise_sum<F: Float>(xs: &[Complex<F>]) -> Complex<F> {
    if xs.len() <= 8 {
        return xs.iter().fold(Complex::new(F::zero(), F::zero()), |a, &b| a + b);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Determinant of a small complex matrix by partial pivoting.
fn complex_det<F: Float>(mut m: Vec<Vec<Complex<F>>>) -> Complex<F> {
    let n = m.len();
    let mut det = Complex::new(F::one(), F::zero());
    for c in 0..n {
        let pivot = (c..n).max_by(|&i, &j| m[i][c].norm_sqr().partial_cmp(&m[j][c].norm_sqr()).unwrap()).unwrap();
        if m[pivot][c].norm_sqr() == F::zero() {
            return Complex::new(F::zero(), F::zero());
        }
        if pivot != c {
            m.swap(pivot, c);
            det = -det;
        }
        det = det * m[c][c];
        for r in (c + 1)..n {
            let factor = m[r][c] / m[c][c];
            let (above, below) = m.split_at_mut(r);
            for (x, &p) in below[0][c..n].iter_mut().zip(&above[c][c..n]) {
                *x = *x - p * factor;
            }
        }
    }
    det
}

fn small_det<F: Float>(m: &[Vec<Complex<F>>]) -> Complex<F> {
    match m.len() {
        0 => Complex::new(F::one(), F::zero()),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => complex_det(m.to_vec()),
    }
}

fn real_det<F: Float>(m: Vec<Vec<F>>) -> F {
    complex_det(m.into_iter().map(|r| r.into_iter().map(|x| Complex::new(x, F::zero())).collect()).collect()).re
}

#[derive(Clone, Debug, PartialEq)]
pub enum CycleKind<F> {
    /// `|z_j| = r_j`, `z_j = r_j e^{iθ_j}`.
    Torus { radii: Vec<F> },
    /// The sphere `S^{2n−1}` of the given radius, `n ≤ 2`: the circle
    /// `z = r e^{iθ}`, or `z_1 = r cos η e^{iα}`, `z_2 = r sin η e^{iβ}`.
    Sphere { nvars: usize, radius: F },
}

/// A cycle with a product quadrature grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametrizedCycle<F> {
    kind: CycleKind<F>,
    /// Points per parameter direction.
    grid: Vec<usize>,
    /// `+1` when the parameter order induces the standard (outward)
    /// orientation.
    orientation: i8,
}

struct Sample<F> {
    point: Vec<Complex<F>>,
    /// `tangents[a][i] = ∂z_i/∂t_a`.
    tangents: Vec<Vec<Complex<F>>>,
    weight: F,
}

impl<F: Float + FloatConst + Send + Sync> ParametrizedCycle<F> {
    pub fn torus(radii: Vec<F>, grid: usize) -> Result<Self> {
        if radii.is_empty() || radii.iter().any(|&r| r.is_nan() || r <= F::zero()) {
            return Err(Error::Precondition("torus radii must be positive".into()));
        }
        check_grid(grid)?;
        let n = radii.len();
        Ok(Self { kind: CycleKind::Torus { radii }, grid: vec![grid; n], orientation: 1 })
    }

    pub fn circle(radius: F, grid: usize) -> Result<Self> {
        Self::sphere(1, radius, grid, grid)
    }

    /// `S^{2n−1}` for `n ∈ {1, 2}`; `eta_grid` is ignored for the circle.
    pub fn sphere(nvars: usize, radius: F, eta_grid: usize, angle_grid: usize) -> Result<Self> {
        if radius.is_nan() || radius <= F::zero() {
            return Err(Error::Precondition("sphere radius must be positive".into()));
        }
        check_grid(angle_grid)?;
        let grid = match nvars {
            1 => vec![angle_grid],
            2 => {
                check_grid(eta_grid)?;
                vec![eta_grid, angle_grid, angle_grid]
            }
            _ => return Err(Error::Precondition(format!("sphere quadrature supports n <= 2, got {nvars}"))),
        };
        let mut c = Self { kind: CycleKind::Sphere { nvars, radius }, grid, orientation: 1 };
        c.orientation = c.outward_sign();
        Ok(c)
    }

    pub fn kind(&self) -> &CycleKind<F> {
        &self.kind
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn nvars(&self) -> usize {
        match &self.kind {
            CycleKind::Torus { radii } => radii.len(),
            CycleKind::Sphere { nvars, .. } => *nvars,
        }
    }

    /// Real dimension.
    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    fn len(&self) -> usize {
        self.grid.iter().product()
    }

    /// Sign of `det[ν, T_1, …, T_d]` in real coordinates `(x_1, y_1, …)`
    /// with `ν` the outward normal, at a generic parameter value.
    fn outward_sign(&self) -> i8 {
        let params: Vec<F> = (0..self.dim()).map(|a| cst(0.3 + 0.2 * a as f64)).collect();
        let s = self.sample_at(&params, F::one());
        let normal: Vec<F> = s.point.iter().flat_map(|z| [z.re, z.im]).collect();
        let mut rows = vec![normal];
        rows.extend(s.tangents.iter().map(|t| t.iter().flat_map(|z| [z.re, z.im]).collect()));
        if real_det(rows) > F::zero() {
            1
        } else {
            -1
        }
    }

    fn sample_at(&self, t: &[F], weight: F) -> Sample<F> {
        let i = Complex::new(F::zero(), F::one());
        match &self.kind {
            CycleKind::Torus { radii } => {
                let point: Vec<Complex<F>> = radii.iter().zip(t).map(|(&r, &th)| Complex::from_polar(r, th)).collect();
                let n = radii.len();
                let tangents = (0..n)
                    .map(|a| (0..n).map(|j| if j == a { i * point[j] } else { Complex::new(F::zero(), F::zero()) }).collect())
                    .collect();
                Sample { point, tangents, weight }
            }
            CycleKind::Sphere { nvars: 1, radius } => {
                let z = Complex::from_polar(*radius, t[0]);
                Sample { point: vec![z], tangents: vec![vec![i * z]], weight }
            }
            CycleKind::Sphere { radius, .. } => {
                let (eta, alpha, beta) = (t[0], t[1], t[2]);
                let (ea, eb) = (Complex::from_polar(F::one(), alpha), Complex::from_polar(F::one(), beta));
                let (c, s) = (eta.cos(), eta.sin());
                let r = *radius;
                let z1 = ea * (r * c);
                let z2 = eb * (r * s);
                let zero = Complex::new(F::zero(), F::zero());
                let tangents = vec![vec![ea * (-r * s), eb * (r * c)], vec![i * z1, zero], vec![zero, i * z2]];
                Sample { point: vec![z1, z2], tangents, weight }
            }
        }
    }

    /// The `idx`-th grid point in row-major order, with its quadrature
    /// weight.
    fn sample(&self, idx: usize, eta: &(Vec<F>, Vec<F>)) -> Sample<F> {
        let two_pi = F::PI() + F::PI();
        let mut rest = idx;
        let mut coords = vec![0usize; self.dim()];
        for a in (0..self.dim()).rev() {
            coords[a] = rest % self.grid[a];
            rest /= self.grid[a];
        }
        let mut t = Vec::with_capacity(self.dim());
        let mut w = F::one();
        let polar = matches!(self.kind, CycleKind::Sphere { nvars: 2, .. });
        for (a, &k) in coords.iter().enumerate() {
            if polar && a == 0 {
                t.push(eta.0[k]);
                w = w * eta.1[k];
            } else {
                let nf = cst::<F>(self.grid[a] as f64);
                t.push(two_pi * cst(k as f64) / nf);
                w = w * two_pi / nf;
            }
        }
        self.sample_at(&t, w)
    }
}

fn check_grid(g: usize) -> Result<()> {
    if g < 8 {
        return Err(Error::Precondition(format!("grid size {g} is below 8")));
    }
    Ok(())
}

type Evaluator<'a, F> = Box<dyn Fn(&[Complex<F>], &mut [Complex<F>]) + Send + Sync + 'a>;

/// A form given by coefficient functions on `dz_I ∧ dz̄_J`.
pub struct NumericForm<'a, F> {
    nvars: usize,
    degree: usize,
    components: Vec<(Vec<usize>, Vec<usize>)>,
    eval: Evaluator<'a, F>,
}

impl<'a, F: Float> NumericForm<'a, F> {
    /// `eval(z, out)` writes the coefficient of `components[k]` into
    /// `out[k]`. Index sets are 0-based and ascending.
    pub fn new(
        nvars: usize,
        components: Vec<(Vec<usize>, Vec<usize>)>,
        eval: impl Fn(&[Complex<F>], &mut [Complex<F>]) + Send + Sync + 'a,
    ) -> Result<Self> {
        let degree = components.first().map_or(0, |(i, j)| i.len() + j.len());
        for (i, j) in &components {
            if i.len() + j.len() != degree {
                return Err(Error::Precondition("components of mixed degree".into()));
            }
            for idx in [i, j] {
                if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&k| k >= nvars) {
                    return Err(Error::Precondition(format!("bad index set {idx:?}")));
                }
            }
        }
        Ok(Self { nvars, degree, components, eval: Box::new(eval) })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// `∫_cycle form`.
pub fn integrate_form<F: Float + FloatConst + Send + Sync>(form: &NumericForm<'_, F>, cycle: &ParametrizedCycle<F>) -> Result<Complex<F>> {
    if form.nvars != cycle.nvars() {
        return Err(Error::VarMismatch { left: cycle.nvars(), right: form.nvars });
    }
    if form.degree != cycle.dim() {
        return Err(Error::Precondition(format!("form of degree {} on a cycle of dimension {}", form.degree, cycle.dim())));
    }
    let eta = match cycle.kind {
        CycleKind::Sphere { nvars: 2, .. } => gauss_legendre(cycle.grid[0], F::zero(), F::FRAC_PI_2()),
        _ => (Vec::new(), Vec::new()),
    };
    let orient = if cycle.orientation > 0 { F::one() } else { -F::one() };
    let values: Vec<Complex<F>> = (0..cycle.len())
        .into_par_iter()
        .map_init(
            || vec![Complex::new(F::zero(), F::zero()); form.components.len()],
            |buf, idx| {
                let s = cycle.sample(idx, &eta);
                (form.eval)(&s.point, buf);
                let mut acc = Complex::new(F::zero(), F::zero());
                for ((ii, jj), &c) in form.components.iter().zip(buf.iter()) {
                    if c == Complex::new(F::zero(), F::zero()) {
                        continue;
                    }
                    let minor: Vec<Vec<Complex<F>>> = ii
                        .iter()
                        .map(|&i| s.tangents.iter().map(|t| t[i]).collect())
                        .chain(jj.iter().map(|&j| s.tangents.iter().map(|t| t[j].conj()).collect()))
                        .collect();
                    acc = acc + c * small_det(&minor);
                }
                acc * (s.weight * orient)
            },
        )
        .collect();
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Singular("non-finite sample: the cycle meets the singular set".into()));
    }
    Ok(pairwise_sum(&values))
}

fn two_pi_i<F: Float + FloatConst>() -> Complex<F> {
    Complex::new(F::zero(), F::PI() + F::PI())
}

/// `(1/2πi)^n ∫_{|z_j| = r_j} h / z^m dz_1∧…∧dz_n`.
pub fn torus_residue<F, C>(powers: &[u32], h: &MultiPoly<C>, radii: &[F], grid: usize) -> Result<Complex<F>>
where
    F: Float + FloatConst + Send + Sync,
    C: Field + ToComplex,
{
    let n = powers.len();
    if h.nvars() != n || radii.len() != n {
        return Err(Error::VarMismatch { left: n, right: if h.nvars() != n { h.nvars() } else { radii.len() } });
    }
    let hp = NumericPoly::<F>::new(h);
    let scale = two_pi_i::<F>().powi(n as i32).inv();
    let form = NumericForm::new(n, vec![((0..n).collect(), Vec::new())], move |z, out| {
        let den = z.iter().zip(powers).fold(Complex::new(F::one(), F::zero()), |acc, (&zi, &m)| acc * zi.powu(m));
        out[0] = hp.eval(z) / den * scale;
    })?;
    integrate_form(&form, &ParametrizedCycle::torus(radii.to_vec(), grid)?)
}

/// Trapezoid size that integrates `h/z^m` on a torus exactly in exact
/// arithmetic: above the largest Laurent degree in any variable.
pub fn default_torus_grid<C: Field>(powers: &[u32], h: &MultiPoly<C>) -> usize {
    let deg = h.total_degree().unwrap_or(0) as usize;
    let m = powers.iter().copied().max().unwrap_or(0) as usize;
    (deg + m + 2).max(8)
}

/// How the Bochner–Martinelli integral is normalized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration<F> {
    /// `κ = s·(n−1)!/(2πi)^n`, the factor applied to the raw integral.
    pub constant: Complex<F>,
    /// `s`, fixed so that `f = (z_1, …, z_n)`, `h = 1` integrates to `+1`.
    pub sign: i8,
    /// Orientation of the parametrization relative to the outward normal.
    pub orientation: i8,
    /// `n!/(2πi)^n`, the constant displayed with the kernel.
    pub displayed_constant: Complex<F>,
    /// `κ` divided by the displayed constant, `s/n`.
    pub ratio_to_displayed: F,
}

/// Result of [`sphere_bm_residue`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BmResidue<F> {
    pub value: Complex<F>,
    pub calibration: Calibration<F>,
}

/// Grid sizes for the three-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereGrid {
    pub eta: usize,
    pub angle: usize,
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self { eta: 48, angle: 64 }
    }
}

/// `∫_{|z| = r} h dz ∧ Σ_i (−1)^{i−1} f̄_i ⋀_{l≠i} df̄_l / |f|^{2n}`, without
/// normalization.
fn raw_bm<F, C>(f: &[MultiPoly<C>], h: &MultiPoly<C>, cycle: &ParametrizedCycle<F>) -> Result<Complex<F>>
where
    F: Float + FloatConst + Send + Sync,
    C: Field + ToComplex,
{
    let n = f.len();
    let fp: Vec<NumericPoly<F>> = f.iter().map(NumericPoly::new).collect();
    let df: Vec<Vec<NumericPoly<F>>> = f
        .iter()
        .map(|g| (0..n).map(|k| g.partial_derivative(k).map(|d| NumericPoly::new(&d))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let hp = NumericPoly::<F>::new(h);
    let all: Vec<usize> = (0..n).collect();
    // dz̄_J with |J| = n − 1, J = all ∖ {omit}
    let components: Vec<(Vec<usize>, Vec<usize>)> =
        (0..n).rev().map(|omit| (all.clone(), all.iter().copied().filter(|&k| k != omit).collect())).collect();
    let js: Vec<Vec<usize>> = components.iter().map(|c| c.1.clone()).collect();
    let form = NumericForm::new(n, components, move |z, out| {
        let fv: Vec<Complex<F>> = fp.iter().map(|p| p.eval(z)).collect();
        let dfbar: Vec<Vec<Complex<F>>> = df.iter().map(|row| row.iter().map(|d| d.eval(z).conj()).collect()).collect();
        let abs2 = fv.iter().fold(F::zero(), |a, v| a + v.norm_sqr());
        let scale = hp.eval(z) / abs2.powi(n as i32);
        for (slot, j) in out.iter_mut().zip(&js) {
            let mut acc = Complex::new(F::zero(), F::zero());
            for (i, fi) in fv.iter().enumerate() {
                let minor: Vec<Vec<Complex<F>>> = (0..n).filter(|&l| l != i).map(|l| j.iter().map(|&k| dfbar[l][k]).collect()).collect();
                let term = fi.conj() * small_det(&minor);
                acc = if i % 2 == 0 { acc + term } else { acc - term };
            }
            // dz̄_J ∧ dz_all = (−1)^{n(n−1)} dz_all ∧ dz̄_J, and n(n−1) is even.
            *slot = acc * scale;
        }
    })?;
    integrate_form(&form, cycle)
}

/// Calibrates the normalization on the identity tuple for the given cycle.
pub fn calibrate<F: Float + FloatConst + Send + Sync>(cycle: &ParametrizedCycle<F>) -> Result<Calibration<F>> {
    let n = cycle.nvars();
    let ident: Vec<MultiPoly<crate::GaussianRational>> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let raw = raw_bm(&ident, &MultiPoly::one(n), cycle)?;
    let fact_prev: F = (1..n).fold(F::one(), |a, k| a * cst(k as f64));
    let base = two_pi_i::<F>().powi(n as i32).inv() * fact_prev;
    let probe = raw * base;
    let sign: i8 = if probe.re > F::zero() { 1 } else { -1 };
    let s = cst::<F>(sign as f64);
    if (probe - Complex::new(s, F::zero())).norm() > cst(1e-3) {
        return Err(Error::Internal(format!(
            "identity tuple integrates to {:?} times (2πi)^n/(n−1)!",
            (probe.re.to_f64(), probe.im.to_f64())
        )));
    }
    let displayed = two_pi_i::<F>().powi(n as i32).inv() * (fact_prev * cst(n as f64));
    Ok(Calibration {
        constant: base * s,
        sign,
        orientation: cycle.orientation(),
        displayed_constant: displayed,
        ratio_to_displayed: s / cst(n as f64),
    })
}

/// Sphere, grid and calibration for repeated Bochner–Martinelli integrals.
#[derive(Clone, Debug, PartialEq)]
pub struct BmIntegrator<F> {
    cycle: ParametrizedCycle<F>,
    calibration: Calibration<F>,
}

impl<F: Float + FloatConst + Send + Sync> BmIntegrator<F> {
    /// Builds the sphere of radius `r` in `C^n`, `n ≤ 2`, and calibrates it.
    pub fn new(nvars: usize, radius: F, grid: SphereGrid) -> Result<Self> {
        let cycle = ParametrizedCycle::sphere(nvars, radius, grid.eta, grid.angle)?;
        let calibration = calibrate(&cycle)?;
        Ok(Self { cycle, calibration })
    }

    pub fn cycle(&self) -> &ParametrizedCycle<F> {
        &self.cycle
    }

    pub fn calibration(&self) -> Calibration<F> {
        self.calibration
    }

    pub fn residue<C: Field + ToComplex>(&self, f: &[MultiPoly<C>], h: &MultiPoly<C>) -> Result<BmResidue<F>> {
        let n = self.cycle.nvars();
        if f.len() != n {
            return Err(Error::NotCompleteIntersection { expected: n, got: f.len() });
        }
        if let Some(g) = f.iter().chain(std::iter::once(h)).find(|g| g.nvars() != n) {
            return Err(Error::VarMismatch { left: n, right: g.nvars() });
        }
        let raw = raw_bm(f, h, &self.cycle)?;
        Ok(BmResidue { value: raw * self.calibration.constant, calibration: self.calibration })
    }
}

/// Calibrated Bochner–Martinelli integral of `h dz` against `f` over the
/// sphere of radius `r`, `n ≤ 2`.
pub fn sphere_bm_residue<F, C>(f: &[MultiPoly<C>], h: &MultiPoly<C>, radius: F, grid: SphereGrid) -> Result<BmResidue<F>>
where
    F: Float + FloatConst + Send + Sync,
    C: Field + ToComplex,
{
    BmIntegrator::new(f.len(), radius, grid)?.residue(f, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::GaussianRational as Q;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre::<f64>(6, 0.0, 2.0);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(11)).sum();
        assert!((s - 2f64.powi(12) / 12.0).abs() < 1e-10);
        let (x, w) = gauss_legendre::<f32>(5, -1.0, 1.0);
        assert!((w.iter().sum::<f32>() - 2.0).abs() < 1e-5);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn cauchy_on_the_circle() {
        let circle = ParametrizedCycle::circle(1.0, 32).unwrap();
        let k = two_pi_i::<f64>().inv();
        let f1 = NumericForm::new(1, vec![(vec![0], vec![])], move |z, out| out[0] = k / z[0]).unwrap();
        assert!((integrate_form(&f1, &circle).unwrap() - c(1.0)).norm() < 1e-12);
        let f2 = NumericForm::new(1, vec![(vec![0], vec![])], move |z, out| out[0] = k / (z[0] * z[0])).unwrap();
        assert!(integrate_form(&f2, &circle).unwrap().norm() < 1e-12);
    }

    #[test]
    fn constant_form_on_torus() {
        let torus = ParametrizedCycle::torus(vec![0.5, 2.0], 16).unwrap();
        let form =
            NumericForm::new(2, vec![(vec![0, 1], vec![])], |z: &[Complex<f64>], out: &mut [Complex<f64>]| out[0] = (z[0] * z[1]).inv())
                .unwrap();
        let v = integrate_form(&form, &torus).unwrap();
        assert!((v - two_pi_i::<f64>().powi(2)).norm() < 1e-10);
    }

    #[test]
    fn singular_cycle_is_rejected() {
        let circle = ParametrizedCycle::circle(1.0, 8).unwrap();
        let form =
            NumericForm::new(1, vec![(vec![0], vec![])], |z: &[Complex<f64>], out: &mut [Complex<f64>]| out[0] = (z[0] - c(1.0)).inv())
                .unwrap();
        assert!(matches!(integrate_form(&form, &circle), Err(Error::Singular(_))));
        assert!(ParametrizedCycle::circle(1.0, 4).is_err());
    }

    #[test]
    fn torus_residues() {
        let p = |s: &str| -> MultiPoly<Q> { parse_poly(s, 2).unwrap() };
        let v: Complex<f64> = torus_residue(&[2, 2], &p("z*w"), &[0.5, 0.5], 16).unwrap();
        assert!((v - c(1.0)).norm() < 1e-10);
        let a: Complex<f64> = torus_residue(&[2, 3], &p("z*w^2 + 7*z^3"), &[0.5, 0.5], 16).unwrap();
        let b: Complex<f64> = torus_residue(&[2, 3], &p("z*w^2 + 7*z^3"), &[0.3, 0.8], 16).unwrap();
        assert!((a - c(1.0)).norm() < 1e-10);
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn sphere_orientation_and_calibration() {
        let s = ParametrizedCycle::<f64>::sphere(2, 1.0, 8, 8).unwrap();
        assert_eq!(s.dim(), 3);
        let cal = calibrate(&ParametrizedCycle::<f64>::sphere(2, 1.0, 16, 16).unwrap()).unwrap();
        assert!((cal.ratio_to_displayed.abs() - 0.5).abs() < 1e-15);
        let z = parse_poly("z1", 1).unwrap();
        let one: MultiPoly<Q> = MultiPoly::one(1);
        let r: BmResidue<f64> = sphere_bm_residue(&[z], &one, 0.7, SphereGrid { eta: 8, angle: 32 }).unwrap();
        assert!((r.value - c(1.0)).norm() < 1e-10);
        assert_eq!(r.calibration.ratio_to_displayed, r.calibration.sign as f64);
    }

    #[test]
    fn sphere_matches_exact_socle() {
        let p = |s: &str| -> MultiPoly<Q> { parse_poly(s, 2).unwrap() };
        let r: BmResidue<f64> = sphere_bm_residue(&[p("z^2"), p("w^2")], &p("z*w"), 1.0, SphereGrid::default()).unwrap();
        assert!((r.value - c(1.0)).norm() < 1e-4, "{:?}", r.value);
        let r0: BmResidue<f64> = sphere_bm_residue(&[p("z^2"), p("w^2")], &p("z^2"), 1.0, SphereGrid::default()).unwrap();
        assert!(r0.value.norm() < 1e-4);
    }
}
