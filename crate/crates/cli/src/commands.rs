//! One function per subcommand, each producing a text and a JSON rendering.

use serde_json::{json, Value};

use hesse_core::classify::{classify, has_modulus, normal_form_cubic, singular_points, CubicType};
use hesse_core::finitegeo::{collinear_f3, saff_enumerate, sl2f3_recognize, AffMap3, Pt};
use hesse_core::flexsolve::flexes_numeric;
use hesse_core::hesse::{
    cubics_through_flexes, flex, flex_add, hesse_config, in_pencil, incidence_report, pencil_member,
    singular_member_lines, singular_parameters, to_hesse_normal_form, PencilParam,
};
use hesse_core::hessgroup::{generators, h12_check, hes_table, random_non_members, realize_collineation};
use hesse_core::poly::{hessian, serialize_cubic, sl3_orbit_dim, Form, Mat3, TernaryCubic};
use hesse_core::projective::{collinear, PPoint, PTransform};
use hesse_core::scalar::{format_cf, Eis, Scalar, CF};
use hesse_core::Error;

use crate::error::CliError;

/// Output of a subcommand. `ok` is false when a verification failed.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

/// Drops floating-point noise below `1e-14` for display.
fn clean(z: &CF) -> String {
    let tidy = |x: f64| if x.abs() < 1e-14 { 0.0 } else { x };
    format_cf(&CF::new(tidy(z.re), tidy(z.im)))
}

fn point_text(p: &PPoint<CF>) -> String {
    let c: Vec<String> = p.coords().iter().map(clean).collect();
    format!("({})", c.join(" : "))
}

fn matrix_text<S: Scalar>(m: &Mat3<S>, show: impl Fn(&S) -> String) -> Vec<Vec<String>> {
    m.m.iter().map(|r| r.iter().map(&show).collect()).collect()
}

/// The singular normal form equal to `f`, with its modulus when it has one.
fn match_normal_form(f: &TernaryCubic<Eis>) -> Option<(CubicType, Option<Eis>)> {
    for t in CubicType::ALL {
        let Some(base) = normal_form_cubic(t, &Eis::from(1)) else { continue };
        if !has_modulus(t) {
            if &base == f {
                return Some((t, None));
            }
            continue;
        }
        let (e, c) = base.nonzero_terms().into_iter().next()?;
        let mu = f.coeff(e).clone() * c.inv()?;
        if !mu.is_zero() && &base.scale(&mu) == f {
            return Some((t, Some(mu)));
        }
    }
    None
}

fn type_anchor(t: CubicType) -> String {
    format!("orbits:{}", t.normal_form().unwrap_or("elliptic"))
}

pub fn classify_cmd(f: &TernaryCubic<Eis>) -> Result<Report, CliError> {
    let t = classify(f)?;
    let dim = sl3_orbit_dim(f);
    let (points, infinite, witness, note) = match singular_points(f) {
        Ok(l) => (
            l.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            l.infinite,
            l.witness_line.map(|w| w.to_string()),
            None,
        ),
        Err(e @ Error::UnsupportedExtension { .. }) => (Vec::new(), false, None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("{t}\n");
    if infinite {
        text += &format!("singular locus: infinite, contains the line {}\n", witness.as_deref().unwrap_or("?"));
    } else if let Some(n) = &note {
        text += &format!("singular locus: not listed ({n})\n");
    } else if points.is_empty() {
        text += "singular locus: empty\n";
    } else {
        text += &format!("singular locus: {}\n", points.join(", "));
    }
    text += &format!("orbit dimension: {dim}\n");
    if let Some(nf) = t.normal_form() {
        text += &format!("normal form: {nf}\n");
    }
    let json = json!({
        "type": t.tag(),
        "normal_form": t.normal_form(),
        "reducible": t.is_reducible(),
        "singular_locus": {
            "points": points,
            "infinite": infinite,
            "witness_line": witness,
            "note": note,
        },
        "orbit_dim": dim,
        "anchor": type_anchor(t),
    });
    Ok(Report::new(text, json))
}

pub fn hessian_cmd(f: &TernaryCubic<Eis>) -> Result<Report, CliError> {
    let h = hessian(f);
    let shown = if h.is_zero() { "0".to_string() } else { h.to_string() };
    let matched = match_normal_form(f);
    let anchor = matched.as_ref().and_then(|(t, _)| t.normal_form()).map(|nf| format!("hessian:{nf}"));
    let mut text = format!("{shown}\n");
    if let Some((t, mu)) = &matched {
        text += &format!("input is the normal form {}", t.normal_form().unwrap_or(""));
        if let Some(mu) = mu {
            text += &format!(" with mu = {mu}");
        }
        text += "\n";
    }
    let json = json!({
        "hessian": shown,
        "coefficients": serialize_cubic(&h),
        "zero": h.is_zero(),
        "normal_form": matched.as_ref().and_then(|(t, _)| t.normal_form()),
        "mu": matched.as_ref().and_then(|(_, mu)| mu.as_ref().map(|m| m.to_string())),
        "anchor": anchor,
    });
    Ok(Report::new(text, json))
}

pub fn flexes_cmd(f: &TernaryCubic<Eis>, seed: u64, tol: f64) -> Result<Report, CliError> {
    let r = flexes_numeric(&f.to_cf(), seed, tol)?;
    // exact flexes are known for members of the pencil
    let labels: Vec<Option<Pt>> = r
        .points
        .iter()
        .map(|p| {
            in_pencil(f)?;
            Pt::all().into_iter().find(|&q| flex(q).to_cf().distance(&p.point) < tol)
        })
        .collect();
    let mut text = String::new();
    if r.dim == 1 {
        text += "the flex locus is a curve (dim 1)\n";
    } else {
        text += &format!("{} points (dim 0)\n", r.points.len());
    }
    for (p, label) in r.points.iter().zip(&labels) {
        text += &format!("{}  residual {:.3e}", point_text(&p.point), p.residual());
        if p.singular {
            text += "  singular";
        }
        if !p.converged {
            text += "  not-converged";
        }
        if let Some(l) = label {
            text += &format!("  t{l}");
        }
        text += "\n";
    }
    if r.multiplicity_warning {
        text += "warning: clustered roots, some points may have multiplicity\n";
    }
    let points: Vec<Value> = r
        .points
        .iter()
        .zip(&labels)
        .map(|(p, label)| {
            json!({
                "point": point_text(&p.point),
                "coords": p.point.coords().iter().map(clean).collect::<Vec<_>>(),
                "residual_f": p.residual_f,
                "residual_h": p.residual_h,
                "singular": p.singular,
                "converged": p.converged,
                "label": label.map(|l| l.to_string()),
            })
        })
        .collect();
    let json = json!({
        "dim": r.dim,
        "count": r.points.len(),
        "smooth_count": r.smooth_points().count(),
        "multiplicity_warning": r.multiplicity_warning,
        "points": points,
        "seed": seed,
        "tol": tol,
        "anchor": "flexes:intersection-with-hessian",
    });
    Ok(Report::new(text, json))
}

pub fn orbit_dim_cmd(f: &TernaryCubic<Eis>) -> Result<Report, CliError> {
    let dim = sl3_orbit_dim(f);
    let t = classify(f)?;
    Ok(Report::new(format!("{dim}\n"), json!({ "orbit_dim": dim, "type": t.tag(), "anchor": type_anchor(t) })))
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check_incidence() -> Check {
    let detail = match incidence_report() {
        Ok(c) => {
            let pass = c.lines.len() == 12 && c.incidence_count() == 36;
            return Check {
                name: "incidence",
                pass,
                detail: format!("{} lines, {} incidences, 3 flexes per line, 4 lines per flex", c.lines.len(), c.incidence_count()),
            };
        }
        Err(e) => e.to_string(),
    };
    Check { name: "incidence", pass: false, detail }
}

fn check_collinearity() -> Check {
    let c = hesse_config();
    let (mut agree, mut collinear_count, mut total) = (0, 0, 0);
    for a in 0..9 {
        for b in a + 1..9 {
            for d in b + 1..9 {
                total += 1;
                let proj = collinear(&c.flexes[a], &c.flexes[b], &c.flexes[d]);
                let aff = collinear_f3(Pt::from_index(a), Pt::from_index(b), Pt::from_index(d));
                agree += usize::from(proj == aff);
                collinear_count += usize::from(proj);
            }
        }
    }
    Check {
        name: "collinearity",
        pass: total == 84 && agree == 84 && collinear_count == 12,
        detail: format!("{agree} of {total} triples agree, {collinear_count} collinear"),
    }
}

fn check_linear_system() -> Check {
    let s = cubics_through_flexes();
    Check {
        name: "linear-system",
        pass: s.rank == 8 && s.basis.len() == 2 && s.is_pencil(),
        detail: format!("evaluation rank {}, kernel dimension {}, kernel is the pencil: {}", s.rank, s.basis.len(), s.is_pencil()),
    }
}

fn check_group_law() -> Check {
    let o = Pt::new(0, 0);
    let mut table_ok = true;
    let mut torsion_ok = true;
    for a in Pt::all() {
        for b in Pt::all() {
            table_ok &= flex_add(a, b, o) == a + b;
        }
        torsion_ok &= flex_add(flex_add(a, a, o), a, o) == o;
    }
    Check {
        name: "group-law",
        pass: table_ok && torsion_ok,
        detail: format!("addition table matches F3^2: {table_ok}, every flex has order dividing 3: {torsion_ok}"),
    }
}

fn check_singular_members() -> Check {
    let mut problems = Vec::new();
    for param in singular_parameters() {
        let f = pencil_member(&param);
        match classify(&f) {
            Ok(CubicType::Triangle) => {}
            other => problems.push(format!("{param}: classified as {other:?}")),
        }
        let Some(lines) = singular_member_lines(&param) else {
            problems.push(format!("{param}: no lines"));
            continue;
        };
        let product = lines.iter().fold(Form::constant(Eis::from(1)), |acc, l| acc.mul(&Form::linear(l.coeffs())));
        if TernaryCubic::from_form(&product).ok().as_ref() != Some(&f) {
            problems.push(format!("{param}: lines do not multiply to the member"));
        }
    }
    for mu in [Eis::from(0), Eis::from(1), Eis::w()] {
        let param = PencilParam::Finite(mu);
        if classify(&pencil_member(&param)).ok() != Some(CubicType::Elliptic) {
            problems.push(format!("{param}: not smooth"));
        }
    }
    Check {
        name: "singular-members",
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            "the four singular members are triangles of configuration lines; lambda = 0, 1, w are smooth".to_string()
        } else {
            problems.join("; ")
        },
    }
}

pub fn hesse_verify_cmd(dump_incidence: bool) -> Result<Report, CliError> {
    let checks = [check_incidence(), check_collinearity(), check_linear_system(), check_group_law(), check_singular_members()];
    let ok = checks.iter().all(|c| c.pass);
    let mut text = String::new();
    for c in &checks {
        text += &format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let config = hesse_config();
    if dump_incidence {
        text += "incidence (rows: lines, columns: t(0,0) .. t(2,2))\n";
        for (line, row) in config.lines.iter().zip(&config.incidence) {
            let bits: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
            text += &format!("{bits}  {line}\n");
        }
    }
    let mut json = json!({
        "ok": ok,
        "checks": checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "detail": c.detail,
            "anchor": format!("configuration:{}", c.name),
        })).collect::<Vec<_>>(),
    });
    if dump_incidence {
        json["incidence"] = json!({
            "lines": config.lines.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "flexes": config.flexes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "table": config.incidence,
        });
    }
    Ok(Report { text, json, ok })
}

pub fn group_order_cmd() -> Result<Report, CliError> {
    let n = hes_table().order();
    Ok(Report::new(format!("{n}\n"), json!({ "order": n, "anchor": "group:order" })))
}

pub fn group_stabilizer_cmd(i: i64, j: i64) -> Result<Report, CliError> {
    let table = hes_table();
    let p = Pt::new(i, j);
    let stab = table.stabilizer(p);
    let images = table.theta_images(&stab);
    let recognized = sl2f3_recognize(&images)?;
    let orbit = table.orbit(p).len();
    let text = format!(
        "stabilizer of t{p}: order {}\nisomorphic to SL2(F3): {}\norbit size: {orbit}\n",
        stab.len(),
        if recognized { "yes" } else { "no" }
    );
    let json = json!({
        "flex": p.to_string(),
        "point": flex(p).to_string(),
        "order": stab.len(),
        "sl2f3": recognized,
        "orbit_size": orbit,
        "theta_images": images.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "anchor": "group:stabilizer",
    });
    Ok(Report::new(text, json))
}

pub fn group_theta_cmd() -> Result<Report, CliError> {
    let table = hes_table();
    let mut text = String::new();
    let mut gens = Vec::new();
    for (k, g) in generators().into_iter().enumerate() {
        let i = table.find(&g).ok_or_else(|| CliError::Verification(format!("generator g{} is not in the group", k + 1)))?;
        let theta = table.elements[i].theta_image;
        text += &format!("g{}: {}  theta = {}\n", k + 1, g, theta);
        gens.push(json!({ "name": format!("g{}", k + 1), "transform": g.to_string(), "theta": theta.to_string() }));
    }
    let mut images: Vec<AffMap3> = table.elements.iter().map(|e| e.theta_image).collect();
    images.sort();
    images.dedup();
    let mut saff = saff_enumerate();
    saff.sort();
    let bijective = images.len() == table.order() && images == saff;
    text += &format!("theta is a bijection onto SAff(F3^2): {}\n", if bijective { "yes" } else { "no" });
    let json = json!({ "generators": gens, "image_size": images.len(), "bijective": bijective, "anchor": "group:theta" });
    Ok(Report { text, json, ok: bijective })
}

pub fn group_realize_cmd(sigma: &AffMap3) -> Result<Report, CliError> {
    let realized = realize_collineation(sigma)?;
    let mut text = format!("{sigma}: det {}\n", sigma.det());
    match &realized {
        Some(t) => text += &format!("realized by {t}\n"),
        None => text += "not realized by a projective transformation\n",
    }
    let json = json!({
        "sigma": sigma.to_string(),
        "det": sigma.det().value(),
        "realizable": realized.is_some(),
        "transform": realized.as_ref().map(|t| matrix_text(t.matrix(), |x| x.to_string())),
        "anchor": "group:realizability",
    });
    Ok(Report::new(text, json))
}

pub fn group_h12_cmd(lambda: &Eis, seed: u64, non_members: usize) -> Result<Report, CliError> {
    let param = PencilParam::Finite(lambda.clone());
    if classify(&pencil_member(&param))? != CubicType::Elliptic {
        return Err(CliError::Usage(format!("{param} is a singular member of the pencil")));
    }
    let table = hes_table();
    let mut disagreements = Vec::new();
    let mut checked = 0;
    let mut run = |g: &PTransform<Eis>, expect_member: bool| -> Result<(), CliError> {
        let r = h12_check(g, &param)?;
        checked += 1;
        if r.g_in_hes != r.image_in_pencil || r.g_in_hes != expect_member {
            disagreements.push(g.to_string());
        }
        Ok(())
    };
    for e in &table.elements {
        run(&e.transform, true)?;
    }
    for g in random_non_members(seed, non_members) {
        run(&g, false)?;
    }
    let ok = disagreements.is_empty();
    let text = format!(
        "{param}: {checked} transformations checked ({} group elements, {non_members} non-members), {} disagreements\n",
        table.order(),
        disagreements.len()
    );
    let json = json!({
        "lambda": lambda.to_string(),
        "checked": checked,
        "group_elements": table.order(),
        "non_members": non_members,
        "disagreements": disagreements,
        "ok": ok,
        "anchor": "group:pencil-stabilizer",
    });
    Ok(Report { text, json, ok })
}

pub fn normalize_cmd(f: &TernaryCubic<Eis>, seed: u64, tol: f64) -> Result<Report, CliError> {
    let nf = to_hesse_normal_form(&f.to_cf(), seed, tol)?;
    let param = match &nf.param {
        PencilParam::Finite(l) => format_cf(l),
        PencilParam::Infinity => "inf".to_string(),
    };
    let text = format!("{}\nresidual: {:.3e}\ntransform: {}\n", nf.param, nf.residual, nf.transform);
    let flexes: Vec<Value> = nf
        .flexes
        .iter()
        .zip(&nf.labels)
        .map(|(p, l): (&PPoint<CF>, &Pt)| json!({ "point": point_text(p), "label": l.to_string() }))
        .collect();
    let json = json!({
        "lambda": param,
        "residual": nf.residual,
        "transform": matrix_text(nf.transform.matrix(), format_cf),
        "flexes": flexes,
        "seed": seed,
        "tol": tol,
        "anchor": "normal-form:hesse-pencil",
    });
    Ok(Report::new(text, json))
}
