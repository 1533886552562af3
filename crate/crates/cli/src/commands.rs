use std::fmt::Write as _;

use locres::bmform::{build_v, closed_form_vp, exactness_witness, find_constant, sigma, AntiForm, BmContext};
use locres::groebner::GroebnerBasis;
use locres::poly::{Monomial, MonomialOrder, MultiPoly};
use locres::quad::{BmIntegrator, Calibration, SphereGrid};
use locres::residue::{residue_pairing, transform_residue, DualityHarness};
use locres::resolution::{cohen_macaulay_check, free_resolution, koszul_complex, pointwise_exactness_check, verify_complex, FreeComplex};
use locres::sample::{points_off_zero_set, random_gaussian_poly, rng};
use locres::{Error, GaussianRational as Q, Poly, ToComplex};
use num_complex::Complex;
use serde_json::{json, Value};

use crate::args::{Command, Order, QuadArgs, Sampling};
use crate::input::{InputError, Problem};

/// Outcome of one command: `verdict` decides the exit code.
pub struct Report {
    pub verdict: bool,
    pub text: String,
    pub json: Value,
}

pub fn run(cmd: &Command) -> Result<Report, InputError> {
    let problem = Problem::load(cmd.ideal())?;
    let result = match cmd {
        Command::Gb { order, .. } => gb(&problem, *order),
        Command::Member { germ, local, .. } => member(&problem, germ, *local),
        Command::Resolve { sampling, .. } => complex(&problem, sampling, false),
        Command::Koszul { sampling, .. } => complex(&problem, sampling, true),
        Command::Residue { germ, quad, exact_only, .. } => residue(&problem, germ, quad, *exact_only),
        Command::Pairing { all, .. } => pairing(&problem, *all),
        Command::DualityCheck { degree, random, seed, .. } => duality_check(&problem, *degree, *random, *seed),
        Command::BmVerify { germ, degree, quad, second_radius, .. } => bm_verify(&problem, germ.as_deref(), *degree, quad, *second_radius),
        Command::VpCheck { germ, show_forms, .. } => vp_check(&problem, germ.as_deref(), *show_forms),
    };
    let mut report = result.map_err(|e| problem.describe(e))?;
    let mut head = json!({"command": cmd.name(), "verdict": report.verdict});
    merge(&mut head, problem.header_json());
    merge(&mut head, report.json);
    report.json = head;
    Ok(report)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn exact(c: &Q) -> Value {
    Value::String(c.to_string())
}

fn complex_json(z: Complex<f64>) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn complex_text(z: Complex<f64>) -> String {
    format!("{:.10} {} {:.10}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn calibration_json(c: &Calibration<f64>) -> Value {
    json!({
        "constant": complex_json(c.constant),
        "sign": c.sign,
        "orientation": c.orientation,
        "displayed_constant": complex_json(c.displayed_constant),
        "ratio_to_displayed": c.ratio_to_displayed,
    })
}

fn monomial_poly(m: &Monomial) -> Poly {
    MultiPoly::term(m.clone(), Q::from(1))
}

fn gb(p: &Problem, order: Order) -> Result<Report, InputError> {
    let order = match order {
        Order::Grevlex => MonomialOrder::GrevLex,
        Order::Lex => MonomialOrder::Lex,
    };
    let gb = GroebnerBasis::new(p.generators.clone(), order)?;
    let basis: Vec<String> = gb.basis().iter().map(|g| p.render(g)).collect();
    let leads: Vec<String> = gb.leading_monomials().iter().map(|m| p.render(&monomial_poly(m))).collect();
    let mut text = format!("reduced Gröbner basis ({order:?}, {} elements):\n", basis.len());
    for g in &basis {
        let _ = writeln!(text, "  {g}");
    }
    let mut out = json!({"order": format!("{order:?}").to_lowercase(), "basis": basis, "leading_monomials": leads});
    match gb.quotient_basis() {
        Ok(qb) => {
            let standard: Vec<String> = qb.monomials.iter().map(|m| p.render(&monomial_poly(m))).collect();
            let _ = writeln!(text, "quotient dimension: {}", qb.dim());
            let _ = writeln!(text, "standard monomials: {}", standard.join(", "));
            let mut local = Value::Null;
            if gb.origin_in_variety() && qb.dim() > 0 {
                let primary = gb.is_primary_at_origin()?;
                let ld = gb.origin_component()?.quotient_basis()?.dim();
                let _ = writeln!(text, "primary to the origin: {primary}\nlocal multiplicity at the origin: {ld}");
                local = json!({"primary": primary, "multiplicity": ld});
            } else {
                let _ = writeln!(text, "origin is not a common zero");
            }
            merge(&mut out, json!({"zero_dimensional": true, "quotient_dim": qb.dim(), "standard_monomials": standard, "origin": local}));
        }
        Err(Error::NotZeroDimensional { var }) => {
            let _ = writeln!(text, "not zero-dimensional: no pure power of {} leads", p.names.names()[var]);
            merge(&mut out, json!({"zero_dimensional": false}));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report { verdict: true, text, json: out })
}

fn member(p: &Problem, germ: &str, local: bool) -> Result<Report, InputError> {
    let phi = p.parse_germ(germ)?;
    let gb = GroebnerBasis::grevlex(p.generators.clone())?;
    let target = if local { gb.origin_component()? } else { gb };
    let nf = target.normal_form(&phi)?;
    let cofactors = if local { None } else { target.extended_member(&phi)? };
    let is_member = nf.is_zero();
    let scope = if local { "local ideal at the origin" } else { "ideal" };
    let mut text = format!(
        "{} {} the {scope}\nnormal form: {}\n",
        p.render(&phi),
        if is_member { "lies in" } else { "does not lie in" },
        p.render(&nf)
    );
    let cof: Option<Vec<String>> = cofactors.map(|c| c.iter().map(|q| p.render(q)).collect());
    if let Some(c) = &cof {
        for (q, g) in c.iter().zip(&p.sources) {
            let _ = writeln!(text, "  ({q}) * ({g})");
        }
    }
    let out = json!({"germ": p.render(&phi), "local": local, "member": is_member, "normal_form": p.render(&nf), "cofactors": cof});
    Ok(Report { verdict: is_member, text, json: out })
}

fn complex(p: &Problem, sampling: &Sampling, koszul: bool) -> Result<Report, InputError> {
    let c = if koszul { koszul_complex(&p.generators)? } else { free_resolution(&p.generators)? };
    let points = points_off_zero_set(&mut rng(sampling.seed), &p.generators, sampling.random, 7);
    let composes = verify_complex(&c);
    let exact_at_points = pointwise_exactness_check(&c, &points)?;
    let cm = if koszul { None } else { primary_ideal(p).then(|| cohen_macaulay_check(&c)) };
    let kind = if koszul { "Koszul complex" } else { "minimal free resolution" };
    let mut text = format!("{kind}: ranks {:?}, length {}\n", c.ranks(), c.length());
    let maps = render_maps(p, &c, &mut text);
    let _ = writeln!(text, "consecutive maps compose to zero: {composes}");
    let _ = writeln!(text, "rank conditions at {} random points off the zero set: {exact_at_points}", points.len());
    if let Some(cm) = cm {
        let _ = writeln!(text, "length equals codimension (Cohen–Macaulay): {cm}");
    }
    let out = json!({
        "kind": if koszul { "koszul" } else { "resolution" },
        "ranks": c.ranks(),
        "length": c.length(),
        "minimal": c.is_minimal(),
        "maps": maps,
        "composes_to_zero": composes,
        "pointwise_exact": exact_at_points,
        "points": points.len(),
        "seed": sampling.seed,
        "cohen_macaulay": cm,
    });
    Ok(Report { verdict: composes && exact_at_points, text, json: out })
}

fn primary_ideal(p: &Problem) -> bool {
    GroebnerBasis::grevlex(p.generators.clone()).and_then(|gb| gb.is_primary_at_origin()).unwrap_or(false)
}

fn render_maps(p: &Problem, c: &FreeComplex<Q>, text: &mut String) -> Vec<Vec<Vec<String>>> {
    let mut maps = Vec::new();
    for k in 1..=c.length() {
        let m = c.map(k);
        let rows: Vec<Vec<String>> = m.entries().iter().map(|r| r.iter().map(|e| p.render(e)).collect()).collect();
        let _ = writeln!(text, "f^{k} ({} x {}):", m.rows(), m.cols());
        for r in &rows {
            let _ = writeln!(text, "  [{}]", r.join(", "));
        }
        maps.push(rows);
    }
    maps
}

/// Tolerance of the quadrature cross-check, relative to `max(|exact|, 1)`.
fn tolerance(nvars: usize) -> f64 {
    if nvars == 1 {
        1e-10
    } else {
        1e-4
    }
}

fn integrator(nvars: usize, quad: &QuadArgs, radius: f64) -> Result<BmIntegrator<f64>, InputError> {
    if nvars > 2 {
        return Err(InputError::new("sphere quadrature is available for one or two variables only"));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(InputError::new("--radius must be positive"));
    }
    let angle = quad.grid.unwrap_or(if nvars == 1 { 256 } else { 64 });
    Ok(BmIntegrator::new(nvars, radius, SphereGrid { eta: quad.eta_grid, angle })?)
}

fn require_ci(p: &Problem) -> Result<(), InputError> {
    if p.generators.len() != p.nvars() {
        return Err(Error::NotCompleteIntersection { expected: p.nvars(), got: p.generators.len() }.into());
    }
    Ok(())
}

fn residue(p: &Problem, germ: &str, quad: &QuadArgs, exact_only: bool) -> Result<Report, InputError> {
    require_ci(p)?;
    let h = p.parse_germ(germ)?;
    let value = transform_residue(&p.generators, &h)?;
    let mut text = format!("Res(({}) dz) = {value}\n", p.render(&h));
    let mut out = json!({"germ": p.render(&h), "exact": exact(&value), "quadrature": null});
    let mut verdict = true;
    if !exact_only && p.nvars() <= 2 {
        let bm = integrator(p.nvars(), quad, quad.radius)?;
        let q = bm.residue(&p.generators, &h)?.value;
        let e: Complex<f64> = value.to_complex();
        let err = (q - e).norm() / e.norm().max(1.0);
        let tol = tolerance(p.nvars());
        verdict = err <= tol;
        let _ = writeln!(text, "quadrature (r = {}): {}", quad.radius, complex_text(q));
        let _ = writeln!(text, "relative error {err:.2e} (tolerance {tol:.0e})");
        let cal = bm.calibration();
        let _ = writeln!(
            text,
            "calibration: sign {}, orientation {}, constant/displayed {}",
            cal.sign, cal.orientation, cal.ratio_to_displayed
        );
        merge(
            &mut out,
            json!({
                "quadrature": {
                    "value": complex_json(q),
                    "radius": quad.radius,
                    "grid": bm.cycle().grid(),
                    "error": err,
                    "tolerance": tol,
                    "within_tolerance": verdict,
                    "calibration": calibration_json(&cal),
                }
            }),
        );
    } else if !exact_only {
        let _ = writeln!(text, "quadrature skipped: more than two variables");
    }
    Ok(Report { verdict, text, json: out })
}

fn pairing(p: &Problem, all: bool) -> Result<Report, InputError> {
    let gb = GroebnerBasis::grevlex(p.generators.clone())?;
    let rf = residue_pairing(&gb)?;
    let standard: Vec<String> = rf.standard_monomials().iter().map(|m| p.render(&monomial_poly(m))).collect();
    let mut text = format!("local multiplicity {}; standard monomials: {}\n", rf.dim(), standard.join(", "));
    let ci: Vec<String> = rf.ci().iter().map(|g| p.render(g)).collect();
    let _ = writeln!(text, "residues taken along ({})", ci.join(", "));
    let _ = writeln!(text, "Res(m dz) for monomials m of degree < {}:", rf.bound());
    let mut table = serde_json::Map::new();
    for (m, v) in rf.table() {
        if all || *v != Q::from(0) {
            let name = p.render(&monomial_poly(m));
            let _ = writeln!(text, "  {name}: {v}");
            table.insert(name, exact(v));
        }
    }
    let rank = rf.is_complete_intersection().then(|| rf.gorenstein_rank());
    if let Some(r) = rank {
        let _ = writeln!(text, "rank of the pairing on the quotient: {r}");
    }
    let out = json!({
        "multiplicity": rf.dim(),
        "standard_monomials": standard,
        "complete_intersection": rf.is_complete_intersection(),
        "residue_tuple": ci,
        "kernel": p.render(rf.kernel()),
        "degree_bound": rf.bound(),
        "table": table,
        "pairing_rank": rank,
    });
    Ok(Report { verdict: true, text, json: out })
}

fn duality_check(p: &Problem, degree: Option<u32>, random: usize, seed: u64) -> Result<Report, InputError> {
    let n = p.nvars();
    let gb = GroebnerBasis::grevlex(p.generators.clone())?;
    let harness = DualityHarness::new(&gb)?;
    let local = harness.local_ideal();
    let standard = local.quotient_basis()?.monomials;
    let bound = degree.map_or(standard.len() as u32, |d| d + 1);
    let mut tests: Vec<Poly> = Monomial::all_below_degree(n, bound).iter().map(monomial_poly).collect();
    let monomials = tests.len();
    let qgens = local.basis();
    let mut r = rng(seed);
    for k in 0..random {
        let member: Poly = qgens.iter().fold(Poly::zero(n), |acc, g| &acc + &(&random_gaussian_poly(&mut r, n, 2, 3, 2) * g));
        tests.push(match k % 3 {
            0 => random_gaussian_poly(&mut r, n, 4, 4, 3),
            1 => member,
            _ => &member + &monomial_poly(&standard[k % standard.len()]),
        });
    }
    let (mut members, mut disagreements) = (0, Vec::new());
    for phi in &tests {
        let oracle = local.is_member(phi)?;
        let dual = harness.is_member(phi)?;
        members += oracle as usize;
        if oracle != dual {
            disagreements.push(json!({"germ": p.render(phi), "groebner": oracle, "residue": dual}));
        }
    }
    let agree = tests.len() - disagreements.len();
    let route = if harness.uses_colon() { "colon" } else { "complete intersection" };
    let mut text = format!(
        "residue duality agrees with Gröbner membership on {agree}/{} germs ({monomials} monomials of degree <= {}, {random} random)\n",
        tests.len(),
        bound - 1
    );
    let _ = writeln!(
        text,
        "route: {route}; dominating powers {:?}; local multiplicity {}; {members} members",
        harness.powers(),
        standard.len()
    );
    for d in &disagreements {
        let _ = writeln!(text, "  disagreement: {d}");
    }
    let out = json!({
        "route": route,
        "dominating_powers": harness.powers(),
        "multiplicity": standard.len(),
        "monomials": monomials,
        "max_degree": bound - 1,
        "random": random,
        "seed": seed,
        "checked": tests.len(),
        "agree": agree,
        "members": members,
        "disagreements": disagreements,
    });
    Ok(Report { verdict: disagreements.is_empty(), text, json: out })
}

fn bm_verify(p: &Problem, germ: Option<&str>, degree: u32, quad: &QuadArgs, second: Option<f64>) -> Result<Report, InputError> {
    require_ci(p)?;
    let n = p.nvars();
    let numerators: Vec<Poly> = match germ {
        Some(g) => vec![p.parse_germ(g)?],
        None => Monomial::all_below_degree(n, degree + 1).iter().map(monomial_poly).collect(),
    };
    let bm = integrator(n, quad, quad.radius)?;
    let other = second.map(|r| integrator(n, quad, r)).transpose()?;
    let tol = tolerance(n);
    let (mut worst, mut spread) = (0f64, 0f64);
    let mut rows = Vec::new();
    let mut text = String::new();
    for h in &numerators {
        let value = transform_residue(&p.generators, h)?;
        let e: Complex<f64> = value.to_complex();
        let q = bm.residue(&p.generators, h)?.value;
        let err = (q - e).norm() / e.norm().max(1.0);
        worst = worst.max(err);
        let q2 = other.as_ref().map(|o| o.residue(&p.generators, h).map(|b| b.value)).transpose()?;
        if let Some(q2) = q2 {
            spread = spread.max((q - q2).norm());
        }
        let _ = writeln!(text, "  {}: exact {value}, quadrature {}, error {err:.2e}", p.render(h), complex_text(q));
        rows.push(json!({
            "germ": p.render(h),
            "exact": exact(&value),
            "quadrature": complex_json(q),
            "second_quadrature": q2.map(complex_json),
            "error": err,
        }));
    }
    let spread_tol = 1e-6;
    let verdict = worst <= tol && spread <= spread_tol;
    let cal = bm.calibration();
    let mut head =
        format!("{} numerators at r = {}: max relative error {worst:.2e} (tolerance {tol:.0e})\n", numerators.len(), quad.radius);
    if let Some(r2) = second {
        let _ = writeln!(head, "radius spread against r = {r2}: {spread:.2e} (tolerance {spread_tol:.0e})");
    }
    let _ =
        writeln!(head, "calibration: sign {}, orientation {}, constant/displayed {}", cal.sign, cal.orientation, cal.ratio_to_displayed);
    let out = json!({
        "radius": quad.radius,
        "second_radius": second,
        "grid": bm.cycle().grid(),
        "tolerance": tol,
        "max_error": worst,
        "radius_spread": second.map(|_| spread),
        "radius_tolerance": spread_tol,
        "calibration": calibration_json(&cal),
        "results": rows,
    });
    Ok(Report { verdict, text: head + &text, json: out })
}

fn vp_check(p: &Problem, germ: Option<&str>, show: bool) -> Result<Report, InputError> {
    let ctx = BmContext::new(&p.generators)?;
    let rank = p.generators.len();
    let one = AntiForm::one(&ctx);
    let s = sigma(&ctx);
    let v = build_v(&ctx);
    let top = v.top_component();
    let closed = closed_form_vp(&ctx);
    let checks = [
        ("delta_sigma_is_one", s.delta() == one),
        ("dbar_sigma_power_vanishes", s.dbar().cap_power(rank).is_zero()),
        ("nabla_v_is_one", v.nabla() == one),
        ("dbar_top_vanishes", top.dbar().is_zero()),
    ];
    let c = find_constant(&top, &closed);
    let mut verdict = checks.iter().all(|c| c.1) && c.is_some();
    let mut text = format!("p = {rank}\n");
    for (name, ok) in &checks {
        let _ = writeln!(text, "  {}: {ok}", name.replace('_', " "));
    }
    let _ = writeln!(text, "top component = c * closed form with c = {}", c.as_ref().map_or("none".into(), |c| c.to_string()));
    let mut out = json!({
        "rank": rank,
        "checks": checks.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect::<serde_json::Map<_, _>>(),
        "constant": c.as_ref().map(exact),
    });
    if let Some(g) = germ {
        let phi = p.parse_germ(g)?;
        match exactness_witness(&ctx, &phi)? {
            Some(eta) => {
                let ok = eta.dbar() == top.mul_holomorphic(&phi);
                verdict &= ok;
                let _ = writeln!(text, "witness for {}: dbar(eta) = phi * v_p holds: {ok}", p.render(&phi));
                merge(&mut out, json!({"witness": {"germ": p.render(&phi), "holds": ok, "form": eta.to_string()}}));
            }
            None => {
                verdict = false;
                let _ = writeln!(text, "{} is not in the ideal; no witness", p.render(&phi));
                merge(&mut out, json!({"witness": {"germ": p.render(&phi), "holds": false, "form": null}}));
            }
        }
    }
    if show {
        let _ = writeln!(text, "top component:\n{top}\nclosed form:\n{closed}");
        merge(&mut out, json!({"top_component": top.to_string(), "closed_form": closed.to_string()}));
    }
    Ok(Report { verdict, text, json: out })
}
