use std::error::Error;
use std::path::Path;

use catalog::{default_catalog_dir, human_table, load_catalog, load_matrix, parse_filter, verify_all};
use digraph::{cycle_cap_from_env, spectral_radius, Method};
use fiberedface::{bound_check, class_report, class_report_unchecked, ClassReport, FaceError, FiberedFaceData};
use moves::{run_folding_sequence, Script, TrainTrackMapResult};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};
use polyexact::rational::{parse_rational, to_decimal};
use polyexact::RootBracket;
use serde_json::json;
use traintrack::{validate, TrackData, TrainTrack};
use weights::{radical_span_report, reciprocity_certificate, weight_space};

use crate::sweep::{parse_class, parse_pattern, parse_sweep};
use crate::{CatalogAction, Command};

type Outcome = Result<bool, Box<dyn Error>>;

pub fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { track, json } => validate_cmd(&track, json),
        Command::Analyze { track, json } => analyze(&track, json),
        Command::Run { script, emit_matrix, check_reciprocal, check_pf, json } => {
            run(&script, emit_matrix.as_deref(), check_reciprocal, check_pf, json)
        }
        Command::Certify { script, json } => certify(&script, json),
        Command::Spectral { matrix, method, tol, json } => spectral(&matrix, &method, &tol, json),
        Command::Face { dataset, class, sweep, family, orbits, tol, json } => {
            face(&dataset, class.as_deref(), sweep.as_deref(), &family, orbits, &tol, json)
        }
        Command::Catalog { action } => match action {
            CatalogAction::Verify { filter, json, dir, tol } => {
                catalog_verify(filter.as_deref(), json.as_deref(), dir.as_deref(), &tol)
            }
            CatalogAction::List { filter, dir } => catalog_list(filter.as_deref(), dir.as_deref()),
        },
    }
}

fn parse_tol(text: &str) -> Result<BigRational, Box<dyn Error>> {
    let t = parse_rational(text)?;
    if !t.is_positive() {
        return Err(format!("tolerance must be positive, got {text}").into());
    }
    Ok(t)
}

/// Decimal places needed to show a bracket of width `tol`.
fn digits_for(tol: &BigRational) -> usize {
    let mut d = 0;
    let mut unit = BigRational::from_integer(1.into());
    let ten = BigRational::from_integer(10.into());
    while &unit > tol && d < 40 {
        unit /= &ten;
        d += 1;
    }
    d
}

fn ceil_decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigRational::from_integer(BigInt::from(10u32).pow(digits as u32));
    let up = (x * &scale).ceil() / scale;
    to_decimal(&up, digits)
}

/// `[lo, hi]` rounded outward to the tolerance's decimal places.
fn bracket_text(b: &RootBracket, tol: &BigRational) -> String {
    let d = digits_for(tol);
    let lo = (&b.lo * BigRational::from_integer(BigInt::from(10u32).pow(d as u32))).floor()
        / BigRational::from_integer(BigInt::from(10u32).pow(d as u32));
    format!("[{}, {}]", to_decimal(&lo, d), ceil_decimal(&b.hi, d))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn read_track_data(path: &Path) -> Result<TrackData, Box<dyn Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn validate_cmd(path: &Path, as_json: bool) -> Outcome {
    let data = read_track_data(path)?;
    let violations = validate(&data);
    if !violations.is_empty() {
        let texts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        if as_json {
            print_json(&json!({"valid": false, "violations": texts}));
        } else {
            println!("invalid: {}", texts.join("; "));
        }
        return Ok(false);
    }
    let t = TrainTrack::new(data)?;
    if as_json {
        print_json(&json!({
            "valid": true,
            "euler_characteristic": t.euler_characteristic(),
            "prongs": t.prong_profile(),
        }));
    } else {
        println!("{}", t.summary());
    }
    Ok(true)
}

fn analyze(path: &Path, as_json: bool) -> Outcome {
    let t = TrainTrack::load(path)?;
    let std = t.standard_report();
    let space = weight_space(&t);
    let rad = radical_span_report(&t);
    let value = json!({
        "vertices": t.vertex_count(),
        "edges": t.edge_count(),
        "real_edges": t.edge_ids(Some(traintrack::EdgeKind::Real)).len(),
        "euler_characteristic": t.euler_characteristic(),
        "connected": t.is_connected(),
        "standardly_embedded": std.standard,
        "diagnostics": std.diagnostics,
        "polygons": std.polygons,
        "orientable": t.is_orientable(),
        "prongs": t.prong_profile(),
        "weight_dim": space.dim(),
        "radical_dim": rad.radical_dim,
        "radical_elements": rad.elements,
        "radical_span_dim": rad.span_dim,
        "radical_relations": rad.relations,
        "radical_spanned": rad.equal,
    });
    if as_json {
        print_json(&value);
    } else {
        println!("{}", t.summary());
        println!("vertices {}, edges {} ({} real)", t.vertex_count(), t.edge_count(), value["real_edges"]);
        println!("connected: {}", t.is_connected());
        println!("standardly embedded: {}", std.standard);
        for d in &std.diagnostics {
            println!("  {d}");
        }
        println!("orientable: {}", t.is_orientable());
        println!("weight space dimension: {}", space.dim());
        println!(
            "radical: dimension {}, {} boundary elements spanning {} ({} relations), spanned: {}",
            rad.radical_dim, rad.elements, rad.span_dim, rad.relations, rad.equal
        );
    }
    Ok(true)
}

fn load_and_run(path: &Path) -> Result<TrainTrackMapResult, Box<dyn Error>> {
    let script = Script::load(path)?;
    Ok(run_folding_sequence(&script)?)
}

fn run(path: &Path, emit: Option<&Path>, check_reciprocal: bool, check_pf: bool, as_json: bool) -> Outcome {
    let r = load_and_run(path)?;
    if let Some(out) = emit {
        let mut text = serde_json::to_string_pretty(&r.real_block)?;
        text.push('\n');
        std::fs::write(out, text).map_err(|e| format!("{}: {e}", out.display()))?;
    }
    if as_json {
        print_json(&r.to_json());
    } else {
        println!("moves: {}", r.records.len());
        println!("edge order (infinitesimal first): {:?}", r.edge_order);
        println!("permutation block:\n{}", r.permutation_block);
        println!("real block:\n{}", r.real_block);
        println!("real characteristic polynomial: {}", r.real_char_poly);
        println!("reciprocal: {}", r.reciprocal);
        println!("Perron-Frobenius: {}", r.perron_frobenius);
        match r.boundary_map() {
            Some(m) => println!("boundary components map: {m:?}"),
            None => println!("boundary components map: not a function"),
        }
    }
    Ok((!check_reciprocal || r.reciprocal) && (!check_pf || r.perron_frobenius))
}

fn certify(path: &Path, as_json: bool) -> Outcome {
    let r = load_and_run(path)?;
    let c = reciprocity_certificate(&r);
    if as_json {
        print_json(&serde_json::to_value(&c)?);
    } else {
        let show = |p: &Option<polyexact::IntPoly>| p.as_ref().map_or("-".to_string(), |p| p.to_string());
        println!("dimensions: edges {}, weights {}, radical {}, quotient {}", c.edge_dim, c.weight_dim, c.radical_dim, c.quotient_dim);
        println!("vertex signs commute: {}", c.vertex_signs_commute);
        println!("preserves weight space: {}", c.preserves_weights);
        println!("preserves Thurston form: {}", c.preserves_form);
        println!("radical invariant: {}", c.radical_invariant);
        println!("radical char poly: {} (reciprocal {})", show(&c.radical_char_poly), c.radical_reciprocal);
        println!("quotient nondegenerate: {}, symplectic: {}", c.quotient_nondegenerate, c.quotient_symplectic);
        println!("quotient char poly: {} (reciprocal {})", show(&c.quotient_char_poly), c.quotient_reciprocal);
        println!("full char poly: {} (reciprocal {})", c.full_char_poly, c.full_reciprocal);
        println!("real char poly: {} (reciprocal {})", c.real_char_poly, c.real_reciprocal);
        println!("certificate: {}", if c.passed { "passed" } else { "FAILED" });
    }
    Ok(c.passed)
}

fn spectral(path: &Path, method: &str, tol: &str, as_json: bool) -> Outcome {
    let m = load_matrix(path)?;
    let method: Method = method.parse()?;
    let tol = parse_tol(tol)?;
    let r = spectral_radius(&m, method, &tol, cycle_cap_from_env())?;
    if as_json {
        let mut v = serde_json::to_value(&r)?;
        v["method"] = json!(format!("{method:?}").to_lowercase());
        print_json(&v);
    } else {
        println!("λ ∈ {} (width ≤ {})", bracket_text(&r, &tol), to_decimal(&tol, digits_for(&tol)));
    }
    Ok(true)
}

fn class_row(r: &ClassReport, tol: &BigRational) -> String {
    format!(
        "class {:?}: norm {}, specialized {}, λ ∈ {}, L = {} ± {:.1e}",
        r.class,
        r.norm,
        r.specialized,
        bracket_text(&r.lambda, tol),
        r.l_decimal(6),
        r.l_error
    )
}

fn face(
    path: &Path,
    class: Option<&str>,
    sweep: Option<&str>,
    family: &str,
    orbits: usize,
    tol: &str,
    as_json: bool,
) -> Outcome {
    let data = FiberedFaceData::load(path)?;
    let tol = parse_tol(tol)?;
    if class.is_none() && sweep.is_none() {
        return Err("give --class, --sweep, or both".into());
    }
    let mut out = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    let report_one = |a: &[i64], checked: bool| -> Result<ClassReport, FaceError> {
        if checked {
            class_report(&data, a, &tol)
        } else {
            class_report_unchecked(&data, a, &tol)
        }
    };
    let mut describe = |a: Vec<i64>, k: Option<i64>, strict: bool| -> Result<(), Box<dyn Error>> {
        match report_one(&a, true) {
            Ok(r) => {
                let v = bound_check(&r.lambda, r.norm as u32, orbits >= 2)?;
                ok &= v.consistent();
                let prefix = k.map_or(String::new(), |k| format!("k={k}: "));
                lines.push(format!(
                    "{prefix}{}; μ⁴ bound {:?}, refined bound {:?}",
                    class_row(&r, &tol),
                    v.mu4,
                    v.sharp
                ));
                out.push(json!({"k": k, "report": r, "bound": v}));
            }
            Err(e @ (FaceError::DegenerateClass { .. } | FaceError::OutsideCone { .. })) if !strict => {
                let prefix = k.map_or(String::new(), |k| format!("k={k}: "));
                lines.push(format!("{prefix}class {a:?}: {e}"));
                out.push(json!({"k": k, "class": a, "error": e.to_string()}));
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    };
    if let Some(c) = class {
        describe(parse_class(c)?, None, true)?;
    }
    if let Some(s) = sweep {
        let (lo, hi) = parse_sweep(s)?;
        let pattern = parse_pattern(family)?;
        for k in lo..=hi {
            describe(pattern.iter().map(|l| l.at(k)).collect(), Some(k), false)?;
        }
    }
    if as_json {
        print_json(&json!({"dataset": data.name, "classes": out}));
    } else {
        println!("{}", data.name);
        for l in lines {
            println!("{l}");
        }
    }
    Ok(ok)
}

fn catalog_dir(dir: Option<&Path>) -> std::path::PathBuf {
    dir.map(Path::to_path_buf).unwrap_or_else(default_catalog_dir)
}

fn catalog_verify(filter: Option<&str>, json_out: Option<&Path>, dir: Option<&Path>, tol: &str) -> Outcome {
    let entries = load_catalog(&catalog_dir(dir))?;
    let filters = match filter {
        Some(f) => parse_filter(f)?,
        None => Vec::new(),
    };
    let tol = parse_tol(tol)?;
    let summary = verify_all(&entries, &filters, &tol, cycle_cap_from_env());
    println!("{}", human_table(&summary));
    if let Some(out) = json_out {
        let mut text = serde_json::to_string_pretty(&summary)?;
        text.push('\n');
        std::fs::write(out, text).map_err(|e| format!("{}: {e}", out.display()))?;
    }
    Ok(summary.all_passed())
}

fn catalog_list(filter: Option<&str>, dir: Option<&Path>) -> Outcome {
    let entries = load_catalog(&catalog_dir(dir))?;
    let filters = match filter {
        Some(f) => parse_filter(f)?,
        None => Vec::new(),
    };
    for e in entries.iter().filter(|e| e.matches(&filters)) {
        let tags: Vec<String> = e.tags.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let prov = if e.provisional { " (provisional)" } else { "" };
        println!("{:<22} {:<15} {}{prov}  {}", e.id, e.kind(), tags.join(","), e.description);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyexact::rational::{rat, ten_to_minus};

    #[test]
    fn digits() {
        assert_eq!(digits_for(&ten_to_minus(9)), 9);
        assert_eq!(digits_for(&rat(1, 3)), 1);
        assert_eq!(digits_for(&rat(2, 1)), 0);
    }

    #[test]
    fn outward_rounding() {
        assert_eq!(ceil_decimal(&rat(17, 10000), 3), "0.002");
        assert_eq!(ceil_decimal(&rat(2, 1000), 3), "0.002");
    }
}
