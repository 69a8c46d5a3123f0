use std::path::Path;

use orthoshell::bvp::{reactive_shear, residuals, solve as solve_bvp, LoadCase, LoadKind};
use orthoshell::effective::effective_properties;
use orthoshell::io::{format_f64, to_canonical_json};
use orthoshell::kirchhoff_love::{kl_consistency_check, kl_effective, kl_identify_moduli};
use orthoshell::material::ShellMaterial;
use orthoshell::oracle::fd_solve_extrapolated;
use orthoshell::shell_model::resultants;
use orthoshell::{ExperimentRecord, Geometry, KlMaterial, Solution};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{AnyMaterial, RunConfig};
use crate::CliError;

const DIGITS: usize = 17;
/// Technical moduli from `material convert` are rounded harder so that a
/// moduli -> stiffness -> moduli trip is byte-stable. Stiffness keeps full
/// precision.
const MODULI_DIGITS: usize = 12;
const VERIFY_GRID: usize = 2049;
const VERIFY_TOL: f64 = 1e-5;
const LOAD_WARNING: f64 = 0.01;

macro_rules! with_material {
    ($m:expr, |$x:ident| $body:expr) => {
        match $m {
            AnyMaterial::Full(ref $x) => $body,
            AnyMaterial::Kl(ref $x) => $body,
        }
    };
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn json_text<S: Serialize>(v: &S, digits: usize) -> String {
    to_canonical_json(v, digits).expect("plain data serializes")
}

pub fn material_check(cfg: &RunConfig) -> Result<(), CliError> {
    let report = if let Some(m) = cfg.raw.material {
        let r = m.validate();
        json!({ "theory": "full", "valid": r.is_valid(), "violations": r.violations, "delta": m.delta() })
    } else if let Some(k) = cfg.raw.kl_material {
        match KlMaterial::new(k.e1, k.e2, k.nu12, k.nu21, k.g) {
            Ok(m) => json!({ "theory": "kl", "valid": true, "violations": [], "delta": m.delta() }),
            Err(e) => json!({ "theory": "kl", "valid": false, "violations": [e.to_string()], "delta": k.delta() }),
        }
    } else {
        cfg.material()?;
        json!({ "theory": "full", "valid": true, "violations": [] })
    };
    let text = json_text(&report, DIGITS);
    write(&cfg.output, "material_check.json", &text)?;
    print!("{text}");
    if report["valid"] == Value::Bool(false) {
        return Err(CliError::Config(format!("material is not admissible: {}", report["violations"])));
    }
    Ok(())
}

pub fn material_convert(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.raw.kl_material.is_some() {
        return Err(CliError::Config("conversion needs a full 'material' or 'stiffness' entry".into()));
    }
    let text = match (cfg.raw.material, cfg.raw.stiffness) {
        (Some(_), None) => json_text(&json!({ "stiffness": cfg.full_material()?.expect("present").stiffness()? }), DIGITS),
        (None, Some(_)) => json_text(&json!({ "material": cfg.full_material()?.expect("present") }), MODULI_DIGITS),
        _ => return Err(CliError::Config("exactly one of 'material', 'stiffness' is required".into())),
    };
    write(&cfg.output, "material_convert.json", &text)
}

fn warn_load(load: &LoadCase<f64>, m: &AnyMaterial, g: &Geometry) {
    let ratio = load.magnitude.abs() / (m.young1() * g.eps);
    if ratio > LOAD_WARNING {
        eprintln!(
            "warning: {} load is large for a linear theory (|load|/(E1 eps) = {})",
            load.kind.name(),
            format_f64(ratio, 3)
        );
    }
}

fn profile<M: ShellMaterial<f64>>(g: &Geometry, m: &M, sol: &Solution, stations: usize) -> String {
    let st = sol.state();
    let mut csv = String::from("x1,w,a1,a2,gamma,F11,F22,M11,F31\n");
    for i in 0..stations {
        let x = if i + 1 == stations { g.l } else { -g.l + 2.0 * g.l * i as f64 / (stations - 1) as f64 };
        let r = resultants(g, m, &st, x);
        let row = [st.w.value(x), st.a1.value(x), st.a2.value(x), st.gamma, r.f11, r.f22, r.m11, reactive_shear(sol, g, m, x)];
        csv.push_str(&format_f64(x, DIGITS));
        for v in row {
            csv.push(',');
            csv.push_str(&format_f64(v, DIGITS));
        }
        csv.push('\n');
    }
    csv
}

fn summary<M: ShellMaterial<f64>>(g: &Geometry, m: &M, sol: &Solution, theory: &str) -> Result<Value, CliError> {
    let res = residuals(sol, g, m)?;
    let table: serde_json::Map<String, Value> = res.entries().iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let mut out = json!({
        "kind": sol.kind().name(),
        "theory": theory,
        "gamma": sol.gamma(),
        "geometry": g,
        "residuals": table,
        "max_residual": res.max(),
    });
    match sol {
        Solution::Torsion(t) => {
            out["magnitude"] = json!(t.t);
            out["w_p"] = json!(0.0);
            out["alpha"] = json!([]);
            out["coeffs"] = json!([]);
            out["theta"] = json!(t.theta);
            out["a2_slope"] = json!(t.a2_slope);
        }
        orthoshell::bvp::Solution::Radial(r) => {
            out["magnitude"] = json!(r.magnitude);
            out["w_p"] = json!(r.w_p);
            out["alpha"] = Value::Array(r.alpha.iter().map(|c| json!([c.re, c.im])).collect());
            out["coeffs"] = Value::Array(r.cosh_coefficients().iter().map(|c| json!([c.re, c.im])).collect());
            out["axial_slope"] = json!(r.axial_slope);
        }
    }
    Ok(out)
}

pub fn solve(cfg: &RunConfig, kind: LoadKind) -> Result<(), CliError> {
    let g = cfg.geometry()?;
    let m = cfg.material()?;
    let load = cfg.load_case(kind)?;
    warn_load(&load, &m, &g);
    let (csv, sum) = with_material!(m, |mat| {
        let sol = solve_bvp(&g, mat, load)?;
        (profile(&g, mat, &sol, cfg.stations), summary(&g, mat, &sol, m.theory_name())?)
    });
    write(&cfg.output, &format!("{}_profile.csv", kind.name()), &csv)?;
    write(&cfg.output, &format!("{}_summary.json", kind.name()), &json_text(&sum, DIGITS))
}

pub fn props(cfg: &RunConfig) -> Result<(), CliError> {
    let g = cfg.geometry()?;
    let m = cfg.material()?;
    let mut out = with_material!(m, |mat| serde_json::to_value(effective_properties(&g, mat, cfg.probes())?))
        .expect("plain data serializes");
    if let AnyMaterial::Kl(k) = m {
        out["kl"] = serde_json::to_value(kl_effective(&g, &k)?).expect("plain data serializes");
    }
    out["theory"] = json!(m.theory_name());
    write(&cfg.output, "props.json", &json_text(&out, DIGITS))
}

pub fn identify(path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let rec: ExperimentRecord =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("cannot parse {}: {e}", path.display())))?;
    let moduli = kl_identify_moduli(&rec)?;
    let mut v = serde_json::to_value(moduli).expect("plain data serializes");
    v["consistency_residual"] = json!(kl_consistency_check(&rec));
    write(out.unwrap_or(Path::new(".")), "identify.json", &json_text(&v, DIGITS))
}

fn linf_rel(a: &[f64], b: &[f64]) -> Option<f64> {
    let scale = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    Some(a.iter().zip(b).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs())) / scale)
}

fn verify_case<M: ShellMaterial<f64>>(g: &Geometry, m: &M, load: LoadCase<f64>) -> Result<(f64, f64), CliError> {
    let sol = solve_bvp(g, m, load)?;
    let grid = fd_solve_extrapolated(g, m, load, VERIFY_GRID)?;
    let st = sol.state();
    let mut dev = 0.0f64;
    for (values, field) in [(&grid.w, &st.w), (&grid.a1, &st.a1), (&grid.a2, &st.a2)] {
        let exact: Vec<f64> = grid.x.iter().map(|x| field.value(*x)).collect();
        if let Some(d) = linf_rel(values, &exact) {
            dev = dev.max(d);
        }
    }
    Ok((dev, residuals(&sol, g, m)?.max()))
}

pub fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let g = cfg.geometry()?;
    let m = cfg.material()?;
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    println!("{:<9} {:>12} {:>12}  status", "problem", "deviation", "residual");
    for kind in LoadKind::ALL {
        let load = LoadCase::new(kind, cfg.magnitude()).map_err(|e| CliError::Config(e.to_string()))?;
        let (dev, res) = with_material!(m, |mat| verify_case(&g, mat, load))?;
        let pass = dev <= VERIFY_TOL && res <= VERIFY_TOL;
        if !pass {
            failed.push(kind.name());
        }
        println!(
            "{:<9} {:>12} {:>12}  {}",
            kind.name(),
            format_f64(dev, 3),
            format_f64(res, 3),
            if pass { "PASS" } else { "FAIL" }
        );
        rows.push(json!({ "problem": kind.name(), "deviation": dev, "max_residual": res, "pass": pass }));
    }
    let report = json!({ "grid": VERIFY_GRID, "tolerance": VERIFY_TOL, "theory": m.theory_name(), "cases": rows });
    write(&cfg.output, "verify.json", &json_text(&report, DIGITS))?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(format!("verification above {VERIFY_TOL:e} for {}", failed.join(", "))))
    }
}
