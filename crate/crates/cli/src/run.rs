//! Subcommand implementations: parse flags, call into the library, assemble
//! the report.

use std::time::Instant;

use deepzero_core::decay::{
    blaschke_condition, carleson_integral, decay_order_estimate, dyadic_radii,
    korenblum_norm_estimate, BoundarySetDescriptor, CarlesonQuad, DecayConfig, DecayEstimate,
    DecayRegion, GridSpec, ZeroSeq,
};
use deepzero_core::diskgeom::{
    boundary_spectrum_estimate, level_set_sample, levset_containment_check, LevelSetSpec,
    StolzAngle, UnitArc,
};
use deepzero_core::numeric::{c_from, c_to_f64, Dd};
use deepzero_core::rng::Rng64;
use deepzero_core::rootfind::{exceptional_set, Region, RootFindConfig, ZeroReport};
use deepzero_core::wronskian::{
    closed_form_wronskian, cofactor_expansion_check, cofactor_expansion_check_in,
    deep_zero_coefficients, replacement_identity_check, replacement_identity_check_in,
    wronskian_matrix, wronskian_value, wronskian_value_in, ClosedFormFamily,
};
use deepzero_core::{FuncExpr, C64};
use serde_json::{json, Value};

use crate::doc::Document;
use crate::error::CliError;
use crate::flags::{self, c_pair};
use crate::innerio::{load_inner, InnerSpecJson};
use crate::{Cli, Command, Precision};

pub fn dispatch(cli: &Cli, precision: Precision) -> Result<(), CliError> {
    let started = Instant::now();
    let (name, params, result) = match &cli.command {
        Command::Eval { doc, func, at } => cmd_eval(doc, func, at, precision)?,
        Command::Jet {
            doc,
            func,
            at,
            order,
        } => cmd_jet(doc, func, at, *order, precision)?,
        Command::Wronskian {
            doc,
            family,
            at,
            matrix,
        } => cmd_wronskian(doc, family, at, *matrix, precision)?,
        Command::DeepZero {
            doc,
            family,
            at,
            tol,
        } => cmd_deep_zero(doc, family, at, *tol)?,
        Command::ExceptionalSet {
            doc,
            family,
            disk,
            rect,
            clip,
            max_depth,
            sep_tol,
            panels,
        } => cmd_exceptional_set(
            doc,
            family,
            disk.as_deref(),
            rect.as_deref(),
            *clip,
            *max_depth,
            *sep_tol,
            *panels,
        )?,
        Command::IdentityCheck { .. } => cmd_identity_check(&cli.command, precision)?,
        Command::Decay {
            doc,
            func,
            stolz,
            level_h,
            eps,
            m_lo,
            m_hi,
            csv,
        } => cmd_decay(
            doc,
            func,
            stolz.as_deref(),
            level_h.as_deref(),
            *eps,
            *m_lo,
            *m_hi,
            csv.as_deref(),
        )?,
        Command::Korenblum {
            doc,
            func,
            beta,
            radial,
            angular,
            r_cap,
        } => cmd_korenblum(doc, func, *beta, *radial, *angular, *r_cap)?,
        Command::Carleson {
            points,
            arc,
            dyadic,
            base_panels,
            grade_levels,
        } => cmd_carleson(
            points.as_deref(),
            arc.as_deref(),
            *dyadic,
            *base_panels,
            *grade_levels,
        )?,
        Command::BlaschkeSum {
            dyadic,
            harmonic,
            points,
            tol,
        } => cmd_blaschke_sum(*dyadic, *harmonic, points.as_deref(), *tol)?,
        Command::Levelset {
            doc,
            func,
            eps,
            radial,
            angular,
            r_cap,
            csv,
        } => cmd_levelset(doc, func, *eps, *radial, *angular, *r_cap, csv.as_deref())?,
        Command::LevsetCheck {
            doc,
            func,
            eps,
            samples,
            seed,
        } => cmd_levset_check(doc, func, *eps, *samples, *seed)?,
        Command::Spectrum {
            inner,
            eps,
            resolution,
        } => cmd_spectrum(inner, *eps, *resolution)?,
        Command::InnerDivides { i1, i2 } => cmd_inner_divides(i1, i2)?,
        Command::InnerTruncate { inner, n } => cmd_inner_truncate(inner, *n)?,
        Command::InnerJ { inner, n } => cmd_inner_j(inner, *n)?,
    };
    emit(cli.json, name, params, result, started);
    Ok(())
}

fn emit(json_mode: bool, command: &str, params: Value, result: Value, started: Instant) {
    use std::fmt::Write as _;
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let mut out = String::new();
    if json_mode {
        let report = json!({
            "command": command,
            "params": params,
            "result": result,
            "wall_ms": wall_ms,
        });
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        let _ = writeln!(out, "command: {command}");
        if let Value::Object(map) = &params {
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        let _ = writeln!(out, "result:");
        render_human(&mut out, &result, 1);
        let _ = writeln!(out, "wall_ms: {wall_ms:.3}");
    }
    // tolerate a closed pipe (e.g. `deepzero ... | head`)
    use std::io::Write as _;
    let _ = std::io::stdout().write_all(out.as_bytes());
}

fn render_human(out: &mut String, v: &Value, indent: usize) {
    use std::fmt::Write as _;
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_human(out, val, indent + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {val}");
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => render_human(out, item, indent),
                    _ => {
                        let _ = writeln!(out, "{pad}- {item}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{other}");
        }
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

// ---------------------------------------------------------------------------
// evaluation commands
// ---------------------------------------------------------------------------

fn eval_value(f: &FuncExpr, z: C64, precision: Precision) -> Result<C64, CliError> {
    Ok(match precision {
        Precision::Double => f.eval(z)?,
        Precision::Extended => c_to_f64(f.eval_jet_in::<Dd>(c_from(z), 0)?.value()),
    })
}

fn cmd_eval(
    doc: &crate::DocArgs,
    func: &str,
    at: &str,
    precision: Precision,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let f = document.function(func)?;
    let z = flags::parse_c64(at)?;
    let v = eval_value(f, z, precision)?;
    Ok((
        "eval",
        json!({"doc": doc.doc, "func": func, "at": c_pair(z)}),
        json!({"value": c_pair(v)}),
    ))
}

fn cmd_jet(
    doc: &crate::DocArgs,
    func: &str,
    at: &str,
    order: usize,
    precision: Precision,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let f = document.function(func)?;
    let z = flags::parse_c64(at)?;
    let derivs: Vec<[f64; 2]> = match precision {
        Precision::Double => f
            .eval_jet(z, order)?
            .derivs()
            .iter()
            .map(|d| c_pair(*d))
            .collect(),
        Precision::Extended => f
            .eval_jet_in::<Dd>(c_from(z), order)?
            .to_f64()
            .derivs()
            .iter()
            .map(|d| c_pair(*d))
            .collect(),
    };
    Ok((
        "jet",
        json!({"doc": doc.doc, "func": func, "at": c_pair(z), "order": order}),
        json!({"derivs": derivs}),
    ))
}

fn cmd_wronskian(
    doc: &crate::DocArgs,
    family: &str,
    at: &str,
    with_matrix: bool,
    precision: Precision,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let funcs = document.family(family)?;
    let z = flags::parse_c64(at)?;
    let value = match precision {
        Precision::Double => wronskian_value(&funcs, z)?,
        Precision::Extended => c_to_f64(wronskian_value_in::<Dd>(&funcs, c_from(z))?),
    };
    let mut result = json!({"value": c_pair(value)});
    if with_matrix {
        let m = wronskian_matrix(&funcs, z)?;
        let rows: Vec<Vec<[f64; 2]>> = m
            .entries
            .iter()
            .map(|row| row.iter().map(|e| c_pair(*e)).collect())
            .collect();
        result["matrix"] = json!(rows);
    }
    Ok((
        "wronskian",
        json!({"doc": doc.doc, "family": family, "at": c_pair(z)}),
        result,
    ))
}

fn cmd_deep_zero(
    doc: &crate::DocArgs,
    family: &str,
    at: &str,
    tol: f64,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let funcs = document.family(family)?;
    let z = flags::parse_c64(at)?;
    let result = match deep_zero_coefficients(&funcs, z, tol)? {
        None => json!({
            "solution": Value::Null,
            "note": "none (matrix nonsingular)",
        }),
        Some(sol) => json!({
            "solution": {
                "lambda": sol.lambda.iter().map(|l| c_pair(*l)).collect::<Vec<_>>(),
                "residuals": sol.residuals.iter().map(|r| c_pair(*r)).collect::<Vec<_>>(),
                "sigma_min": sol.sigma_min,
                "sigma_max": sol.sigma_max,
            },
        }),
    };
    Ok((
        "deep-zero",
        json!({"doc": doc.doc, "family": family, "at": c_pair(z), "tol": tol}),
        result,
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_exceptional_set(
    doc: &crate::DocArgs,
    family: &str,
    disk: Option<&str>,
    rect: Option<&str>,
    clip: Option<f64>,
    max_depth: usize,
    sep_tol: f64,
    panels: usize,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let funcs = document.family(family)?;
    let mut region = match (disk, rect) {
        (Some(d), None) => {
            let v = flags::parse_f64_list(d)?;
            if v.len() != 3 {
                return Err(CliError::Usage("--disk wants 'cre,cim,radius'".into()));
            }
            Region::disk(C64::new(v[0], v[1]), v[2])?
        }
        (None, Some(r)) => {
            let v = flags::parse_f64_list(r)?;
            if v.len() != 4 {
                return Err(CliError::Usage("--rect wants 'x0,y0,x1,y1'".into()));
            }
            Region::rect(C64::new(v[0], v[1]), C64::new(v[2], v[3]))?
        }
        _ => {
            return Err(CliError::Usage(
                "exceptional-set needs exactly one of --disk or --rect".into(),
            ))
        }
    };
    if let Some(rho) = clip {
        region = region.with_clip(rho)?;
    }
    let cfg = RootFindConfig {
        panels,
        max_depth,
        sep_tol,
        ..RootFindConfig::default()
    };
    let report = exceptional_set(&funcs, &region, &cfg)?;
    Ok((
        "exceptional-set",
        json!({
            "doc": doc.doc, "family": family, "disk": disk, "rect": rect,
            "clip": clip, "max_depth": max_depth, "sep_tol": sep_tol, "panels": panels,
        }),
        zero_report_json(&report),
    ))
}

fn zero_report_json(report: &ZeroReport) -> Value {
    json!({
        "zeros": report.zeros.iter().map(|z| json!({
            "re": z.location.re,
            "im": z.location.im,
            "multiplicity": z.multiplicity,
            "enclosure_radius": z.enclosure_radius,
            "residual": z.residual,
        })).collect::<Vec<_>>(),
        "unresolved": report.unresolved.iter().map(|u| json!({
            "lo": c_pair(u.lo),
            "hi": c_pair(u.hi),
            "count": u.count,
            "reason": format!("{:?}", u.reason),
        })).collect::<Vec<_>>(),
        "total_count": report.total_count,
        "warnings": report.warnings.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

fn rel_diff(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn cmd_identity_check(
    cmd: &Command,
    precision: Precision,
) -> Result<(&'static str, Value, Value), CliError> {
    let Command::IdentityCheck {
        variant,
        exponents,
        mu,
        f,
        n,
        doc,
        family,
        lambda,
        k,
        g,
        points,
        seed,
        radius,
    } = cmd
    else {
        unreachable!()
    };
    let mut rng = Rng64::seed_from(*seed);
    let need = |opt: &Option<String>, what: &str| -> Result<String, CliError> {
        opt.clone()
            .ok_or_else(|| CliError::Usage(format!("variant '{variant}' needs {what}")))
    };

    let closed_form_run = |fam: ClosedFormFamily,
                           rng: &mut Rng64,
                           avoid_origin: bool|
     -> Result<(usize, f64), CliError> {
        let members = fam.members()?;
        let closed = closed_form_wronskian(&fam)?;
        let mut max_resid = 0.0f64;
        let mut used = 0;
        while used < *points {
            let mut z = rng.in_disk(*radius);
            if avoid_origin && z.norm() < 0.15 {
                z += C64::new(0.35, 0.1);
            }
            let (numeric, exact) = match precision {
                Precision::Double => (wronskian_value(&members, z)?, closed.eval(z)?),
                Precision::Extended => (
                    c_to_f64(wronskian_value_in::<Dd>(&members, c_from(z))?),
                    c_to_f64(closed.eval_jet_in::<Dd>(c_from(z), 0)?.value()),
                ),
            };
            max_resid = max_resid.max(rel_diff(numeric, exact));
            used += 1;
        }
        Ok((used, max_resid))
    };

    let (used, max_resid): (usize, f64) = match variant.as_str() {
        "monomials" => {
            let degrees = flags::parse_u32_list(&need(exponents, "--exponents")?)?;
            closed_form_run(ClosedFormFamily::Monomials { degrees }, &mut rng, true)?
        }
        "expsum" => {
            let frequencies = flags::parse_c64_list(&need(mu, "--mu")?)?;
            closed_form_run(ClosedFormFamily::ExpSum { frequencies }, &mut rng, false)?
        }
        "powers" => {
            let base = flags::parse_inline_fn(&need(f, "--f")?)?;
            let n = n.ok_or_else(|| CliError::Usage("variant 'powers' needs --n".into()))?;
            closed_form_run(ClosedFormFamily::Powers { base, n }, &mut rng, false)?
        }
        "prepend-poly" => {
            let fexpr = flags::parse_inline_fn(&need(f, "--f")?)?;
            let n = n.ok_or_else(|| CliError::Usage("variant 'prepend-poly' needs --n".into()))?;
            closed_form_run(ClosedFormFamily::PrependPoly { f: fexpr, n }, &mut rng, false)?
        }
        "replacement" => {
            let document = Document::load(&need(doc, "--doc")?)?;
            let funcs = document.family(&need(family, "--family")?)?;
            let lam = flags::parse_c64_list(&need(lambda, "--lambda")?)?;
            let k = k.ok_or_else(|| CliError::Usage("variant 'replacement' needs --k".into()))?;
            let mut max_resid = 0.0f64;
            for _ in 0..*points {
                let z = rng.in_disk(*radius);
                let r = match precision {
                    Precision::Double => replacement_identity_check(&funcs, &lam, k, z)?,
                    Precision::Extended => {
                        replacement_identity_check_in::<Dd>(&funcs, &lam, k, c_from(z))?
                    }
                };
                max_resid = max_resid.max(r);
            }
            (*points, max_resid)
        }
        "cofactor" => {
            let document = Document::load(&need(doc, "--doc")?)?;
            let funcs = document.family(&need(family, "--family")?)?;
            let gexpr = document.function(&need(g, "--g")?)?.clone();
            let k = k.ok_or_else(|| CliError::Usage("variant 'cofactor' needs --k".into()))?;
            let mut max_resid = 0.0f64;
            for _ in 0..*points {
                let z = rng.in_disk(*radius);
                let r = match precision {
                    Precision::Double => cofactor_expansion_check(&funcs, &gexpr, k, z)?,
                    Precision::Extended => {
                        cofactor_expansion_check_in::<Dd>(&funcs, &gexpr, k, c_from(z))?
                    }
                };
                max_resid = max_resid.max(r);
            }
            (*points, max_resid)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown identity variant '{other}'"
            )))
        }
    };

    Ok((
        "identity-check",
        json!({
            "variant": variant, "points": points, "seed": seed, "radius": radius,
        }),
        json!({"points_used": used, "max_relative_residual": max_resid}),
    ))
}

// ---------------------------------------------------------------------------
// boundary behavior
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_decay(
    doc: &crate::DocArgs,
    func: &str,
    stolz: Option<&str>,
    level_h: Option<&str>,
    eps: Option<f64>,
    m_lo: u32,
    m_hi: u32,
    csv: Option<&str>,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let f = document.function(func)?;
    let region = match (stolz, level_h) {
        (Some(s), None) => {
            let v = flags::parse_f64_list(s)?;
            if v.len() != 2 {
                return Err(CliError::Usage(
                    "--stolz wants 'vertex_arg_over_pi,aperture'".into(),
                ));
            }
            DecayRegion::Stolz(StolzAngle::new(v[0], v[1])?)
        }
        (None, Some(h)) => {
            let eps = eps.ok_or_else(|| CliError::Usage("--level-h needs --eps".into()))?;
            DecayRegion::Level(LevelSetSpec::new(document.function(h)?.clone(), eps)?)
        }
        _ => {
            return Err(CliError::Usage(
                "decay needs exactly one of --stolz or --level-h".into(),
            ))
        }
    };
    let radii = dyadic_radii(m_lo, m_hi)?;
    let est = decay_order_estimate(f, &region, &radii, &DecayConfig::default())?;
    if let Some(path) = csv {
        write_decay_csv(path, &est)?;
    }
    Ok((
        "decay",
        json!({
            "doc": doc.doc, "func": func, "stolz": stolz, "level_h": level_h,
            "eps": eps, "m_lo": m_lo, "m_hi": m_hi,
        }),
        json!({
            "gamma_hat": finite_or_null(est.gamma_hat),
            "all_zero": est.all_zero,
            "fit_residual": est.fit_residual,
            "samples_used": est.samples_used,
            "fitted_radii": est.radii,
        }),
    ))
}

fn write_decay_csv(path: &str, est: &DecayEstimate) -> Result<(), CliError> {
    let mut out = String::from("radius,sup_abs,fit_line_residual\n");
    for s in &est.slices {
        let line_resid = if est.gamma_hat.is_finite() && s.sup_abs > 0.0 {
            s.sup_abs.ln() - (est.gamma_hat * (1.0 - s.radius).ln() + est.intercept)
        } else {
            f64::NAN
        };
        out.push_str(&format!("{},{},{}\n", s.radius, s.sup_abs, line_resid));
    }
    std::fs::write(path, out).map_err(|e| CliError::Usage(format!("cannot write '{path}': {e}")))
}

fn cmd_korenblum(
    doc: &crate::DocArgs,
    func: &str,
    beta: f64,
    radial: usize,
    angular: usize,
    r_cap: f64,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let f = document.function(func)?;
    let grid = GridSpec {
        radial,
        angular,
        r_cap,
    };
    let estimate = korenblum_norm_estimate(f, beta, &grid)?;
    Ok((
        "korenblum",
        json!({"doc": doc.doc, "func": func, "beta": beta,
               "radial": radial, "angular": angular, "r_cap": r_cap}),
        json!({"norm_estimate": estimate}),
    ))
}

fn cmd_carleson(
    points: Option<&str>,
    arc: Option<&str>,
    dyadic: Option<u32>,
    base_panels: usize,
    grade_levels: u32,
) -> Result<(&'static str, Value, Value), CliError> {
    let descriptor = match (points, arc, dyadic) {
        (Some(p), None, None) => BoundarySetDescriptor::FinitePoints(flags::parse_f64_list(p)?),
        (None, Some(a), None) => {
            let v = flags::parse_f64_list(a)?;
            if v.len() != 2 {
                return Err(CliError::Usage("--arc wants 't0,t1'".into()));
            }
            BoundarySetDescriptor::Arcs(vec![UnitArc {
                t_start: v[0],
                t_end: v[1],
            }])
        }
        (None, None, Some(n)) => BoundarySetDescriptor::DyadicGenerator { terms: n },
        _ => {
            return Err(CliError::Usage(
                "carleson needs exactly one of --points, --arc, --dyadic".into(),
            ))
        }
    };
    let quad = CarlesonQuad {
        base_panels,
        grade_levels,
        ..CarlesonQuad::default()
    };
    let report = carleson_integral(&descriptor, &quad)?;
    Ok((
        "carleson",
        json!({"points": points, "arc": arc, "dyadic": dyadic,
               "base_panels": base_panels, "grade_levels": grade_levels}),
        json!({"value": finite_or_null(report.value), "divergent": report.divergent}),
    ))
}

fn cmd_blaschke_sum(
    dyadic: Option<u32>,
    harmonic: Option<u32>,
    points: Option<&str>,
    tol: f64,
) -> Result<(&'static str, Value, Value), CliError> {
    let seq = match (dyadic, harmonic, points) {
        (Some(n), None, None) => ZeroSeq::Dyadic { terms: n },
        (None, Some(n), None) => ZeroSeq::Harmonic { terms: n },
        (None, None, Some(p)) => ZeroSeq::Finite(flags::parse_c64_list(p)?),
        _ => {
            return Err(CliError::Usage(
                "blaschke-sum needs exactly one of --dyadic, --harmonic, --points".into(),
            ))
        }
    };
    let report = blaschke_condition(&seq, tol)?;
    Ok((
        "blaschke-sum",
        json!({"dyadic": dyadic, "harmonic": harmonic, "points": points, "tol": tol}),
        json!({
            "partial_sum": report.partial_sum,
            "tail_bound": report.tail_bound,
            "converged": report.converged,
            "terms": report.terms,
        }),
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_levelset(
    doc: &crate::DocArgs,
    func: &str,
    eps: f64,
    radial: usize,
    angular: usize,
    r_cap: f64,
    csv: Option<&str>,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let spec = LevelSetSpec::new(document.function(func)?.clone(), eps)?;
    let cloud = level_set_sample(&spec, radial, angular, r_cap)?;
    if let Some(path) = csv {
        let mut out = String::from("re,im,abs_h\n");
        for p in &cloud.points {
            out.push_str(&format!("{},{},{}\n", p.z.re, p.z.im, p.abs_h));
        }
        std::fs::write(path, out)
            .map_err(|e| CliError::Usage(format!("cannot write '{path}': {e}")))?;
    }
    Ok((
        "levelset",
        json!({"doc": doc.doc, "func": func, "eps": eps,
               "radial": radial, "angular": angular, "r_cap": r_cap}),
        json!({"points_in_set": cloud.points.len(), "skipped": cloud.skipped}),
    ))
}

fn cmd_levset_check(
    doc: &crate::DocArgs,
    func: &str,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<(&'static str, Value, Value), CliError> {
    let document = Document::load(&doc.doc)?;
    let spec = LevelSetSpec::new(document.function(func)?.clone(), eps)?;
    let report = levset_containment_check(&spec, samples, seed)?;
    Ok((
        "levset-check",
        json!({"doc": doc.doc, "func": func, "eps": eps, "samples": samples, "seed": seed}),
        json!({"violations": report.violations, "tested": report.tested}),
    ))
}

fn cmd_spectrum(
    inner: &str,
    eps: f64,
    resolution: u32,
) -> Result<(&'static str, Value, Value), CliError> {
    let spec = load_inner(inner)?;
    let arcs = boundary_spectrum_estimate(&spec, eps, resolution)?;
    Ok((
        "spectrum",
        json!({"inner": inner, "eps": eps, "resolution": resolution}),
        json!({
            "arcs": arcs.iter().map(|a| [a.t_start, a.t_end]).collect::<Vec<_>>(),
            "total_length_t": arcs.iter().map(UnitArc::length_t).sum::<f64>(),
        }),
    ))
}

fn cmd_inner_divides(i1: &str, i2: &str) -> Result<(&'static str, Value, Value), CliError> {
    let a = load_inner(i1)?;
    let b = load_inner(i2)?;
    Ok((
        "inner-divides",
        json!({"i1": i1, "i2": i2}),
        json!({"divides": a.divides(&b)}),
    ))
}

fn cmd_inner_truncate(inner: &str, n: u32) -> Result<(&'static str, Value, Value), CliError> {
    let spec = load_inner(inner)?;
    let out = spec.truncate_deep(n);
    Ok((
        "inner-truncate",
        json!({"inner": inner, "n": n}),
        serde_json::to_value(InnerSpecJson::from_spec(&out)).expect("serializable"),
    ))
}

fn cmd_inner_j(inner: &str, n: u32) -> Result<(&'static str, Value, Value), CliError> {
    if n == 0 {
        return Err(CliError::Math("inner-J needs n >= 1".into()));
    }
    let spec = load_inner(inner)?;
    let out = spec.raise_multiplicities(n);
    Ok((
        "inner-J",
        json!({"inner": inner, "n": n}),
        serde_json::to_value(InnerSpecJson::from_spec(&out)).expect("serializable"),
    ))
}
