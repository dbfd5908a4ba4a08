//! Subcommand reports: a JSON value (keys sorted by serde_json's map) plus a flat table
//! for the CSV and Markdown renderers.

use serde_json::{json, Value};
use wallcross::flips::{critical_values, flip_schedule, wall_multiples};
use wallcross::lattice::{AnticanonicalStatus, DivisorClass, SurfaceLattice};
use wallcross::rational::{render, Q};
use wallcross::transition::{donaldson_difference, FormulaPath, Kind, TransitionOptions};
use wallcross::verify::VerifyReport;
use wallcross::walls::{enumerate_walls, oracle_enumerate_box, WallClassData, WallType};
use wallcross::Warning;

use crate::config::{Formula, Normalization};
use crate::error::CliError;

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    pub json: Value,
    pub table: Table,
    /// False when a check inside the report failed (the process then exits nonzero).
    pub ok: bool,
}

fn rq(x: &Q) -> Value {
    Value::String(render(x))
}

fn coords(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn surface_warnings(lat: &SurfaceLattice) -> Vec<Warning> {
    match lat.anticanonical {
        AnticanonicalStatus::Guaranteed => Vec::new(),
        AnticanonicalStatus::UserMustAssert => vec![Warning::new(
            "ANTICANONICAL_UNASSERTED",
            "effectivity of −K is not known for this lattice; the caller must assert it",
        )],
    }
}

fn warnings_json(mut w: Vec<Warning>) -> Value {
    w.sort();
    w.dedup();
    serde_json::to_value(w).expect("warnings serialize")
}

pub fn surface(lat: &SurfaceLattice) -> Report {
    let (pos, neg) = lat.signature();
    let json = json!({
        "name": lat.name,
        "b2": lat.rank,
        "K2": lat.k_squared(),
        "signature": [pos, neg],
        "gram": lat.gram,
        "K": lat.canonical,
        "reference_ample": lat.reference_ample,
        "chi": lat.euler_char_structure_sheaf,
        "warnings": warnings_json(surface_warnings(lat)),
    });
    let table = Table {
        headers: vec!["name", "b2", "K2", "signature"],
        rows: vec![vec![
            lat.name.clone(),
            lat.rank.to_string(),
            lat.k_squared().to_string(),
            format!("({pos},{neg})"),
        ]],
    };
    Report {
        json,
        table,
        ok: true,
    }
}

fn wall_type_json(wt: &WallType) -> Value {
    json!({"delta": wt.delta.coords, "c": wt.c, "p": wt.p, "d": wt.d})
}

fn class_json(c: &WallClassData) -> Value {
    json!({
        "zeta": c.zeta.coords,
        "zeta_sq": c.zeta_sq,
        "zeta_K": c.zeta_k,
        "ell": c.ell,
        "h": c.h_plus,
        "h_minus": c.h_minus,
        "N": c.n_plus,
        "N_minus": c.n_minus,
        "degenerate": c.degenerate,
    })
}

pub fn walls(
    lat: &SurfaceLattice,
    wt: &WallType,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    oracle_radius: Option<i64>,
) -> Result<Report, CliError> {
    let en = enumerate_walls(lat, l_minus, l_plus, wt)?;
    let mut warnings = surface_warnings(lat);
    warnings.extend(en.warnings.iter().cloned());
    let mut rows = Vec::new();
    let groups: Vec<Value> = en
        .walls
        .iter()
        .map(|g| {
            for c in &g.classes {
                rows.push(vec![
                    coords(&c.zeta.coords),
                    render(&g.t),
                    c.ell.to_string(),
                    c.h_plus.to_string(),
                    c.n_plus.to_string(),
                    c.n_minus.to_string(),
                ]);
            }
            json!({
                "primitive": g.primitive,
                "t": rq(&g.t),
                "coincident": g.coincident,
                "classes": g.classes.iter().map(class_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut json = json!({
        "wall_type": wall_type_json(wt),
        "L_minus": l_minus.coords,
        "L_plus": l_plus.coords,
        "walls": groups,
    });
    let mut ok = true;
    if let Some(r) = oracle_radius {
        let boxed = oracle_enumerate_box(lat, l_minus, l_plus, wt, r)?;
        let agrees = boxed.class_set() == en.class_set();
        ok = agrees;
        json["oracle"] = json!({"radius": r, "agrees": agrees});
        if !agrees {
            warnings.push(Warning::new(
                "ORACLE_MISMATCH",
                format!("box search of radius {r} disagrees with the enumerator"),
            ));
        }
    }
    json["warnings"] = warnings_json(warnings);
    Ok(Report {
        json,
        table: Table {
            headers: vec!["zeta", "t", "ell", "h", "N", "N_minus"],
            rows,
        },
        ok,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn delta(
    lat: &SurfaceLattice,
    wt: &WallType,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    alpha: &DivisorClass,
    insert_point: bool,
    normalization: Normalization,
    formula: Formula,
) -> Result<Report, CliError> {
    let opts = TransitionOptions {
        path: match formula {
            Formula::Engine => FormulaPath::Engine,
            Formula::Closed => FormulaPath::Closed,
        },
        km_normalization: normalization == Normalization::Km,
        ..Default::default()
    };
    let r = donaldson_difference(lat, l_minus, l_plus, wt, alpha, insert_point, opts)?;
    let mut warnings = surface_warnings(lat);
    warnings.extend(r.warnings.iter().cloned());
    let mut rows = Vec::new();
    let walls: Vec<Value> = r
        .walls
        .iter()
        .map(|w| {
            let coeffs: Vec<Value> = w
                .polynomial
                .numeric_coeffs()
                .expect("specialized")
                .iter()
                .map(rq)
                .collect();
            rows.push(vec![
                coords(&w.data.zeta.coords),
                render(&w.t),
                w.data.ell.to_string(),
                w.data.h_plus.to_string(),
                w.sign.to_string(),
                render(&w.a),
                render(&w.value),
            ]);
            json!({
                "zeta": w.data.zeta.coords,
                "t": rq(&w.t),
                "ell": w.data.ell,
                "h": w.data.h_plus,
                "sign": w.sign,
                "exponent": w.polynomial.exponent(),
                "coeffs": coeffs,
                "a": rq(&w.a),
                "value": rq(&w.value),
            })
        })
        .collect();
    rows.push(vec![
        "total".into(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        render(&r.total),
    ]);
    let json = json!({
        "kind": match r.kind { Kind::MuPower => "MU_POWER", Kind::MuNu => "MU_NU" },
        "wall_type": wall_type_json(wt),
        "alpha": alpha.coords,
        "alpha_sq": r.alpha_sq,
        "delta_sign": r.delta_sign,
        "normalization": match normalization { Normalization::Standard => "standard", Normalization::Km => "km" },
        "formula": match formula { Formula::Engine => "engine", Formula::Closed => "closed" },
        "walls": walls,
        "total": rq(&r.total),
        "warnings": warnings_json(warnings),
    });
    Ok(Report {
        json,
        table: Table {
            headers: vec!["zeta", "t", "ell", "h", "sign", "a", "value"],
            rows,
        },
        ok: true,
    })
}

pub fn flips(
    lat: &SurfaceLattice,
    wt: &WallType,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
) -> Result<Report, CliError> {
    let en = enumerate_walls(lat, l_minus, l_plus, wt)?;
    let mut warnings = surface_warnings(lat);
    warnings.extend(en.warnings.iter().cloned());
    let mut rows = Vec::new();
    let mut groups = Vec::new();
    for g in &en.walls {
        let mults = wall_multiples(g);
        let cv = critical_values(&mults)?;
        let mut classes = Vec::new();
        for c in &g.classes {
            let stages = flip_schedule(c, wt)?;
            for s in &stages {
                rows.push(vec![
                    coords(&c.zeta.coords),
                    c.ell.to_string(),
                    s.k.to_string(),
                    s.center_dim.to_string(),
                    s.fiber_dims.0.to_string(),
                    s.fiber_dims.1.to_string(),
                    s.adds_component.to_string(),
                    s.removes_component.to_string(),
                ]);
            }
            classes.push(json!({
                "zeta": c.zeta.coords,
                "ell": c.ell,
                "h": c.h_plus,
                "stages": serde_json::to_value(&stages).expect("stages serialize"),
            }));
        }
        groups.push(json!({
            "primitive": g.primitive,
            "t": rq(&g.t),
            "multiples": mults.iter().map(|m| json!({"ell": m.ell, "r": rq(&m.r)})).collect::<Vec<_>>(),
            "critical_values": cv.iter().map(|v| json!({"t": rq(&v.t), "indices": v.indices})).collect::<Vec<_>>(),
            "classes": classes,
        }));
    }
    let json = json!({
        "wall_type": wall_type_json(wt),
        "walls": groups,
        "warnings": warnings_json(warnings),
    });
    Ok(Report {
        json,
        table: Table {
            headers: vec![
                "zeta",
                "ell",
                "k",
                "center_dim",
                "N",
                "N_minus",
                "adds_component",
                "removes_component",
            ],
            rows,
        },
        ok: true,
    })
}

pub fn verify(report: &VerifyReport) -> Report {
    let json = serde_json::to_value(report).expect("verify report serializes");
    let mut rows: Vec<Vec<String>> = report
        .criteria
        .iter()
        .map(|c| {
            let failed: Vec<&str> = c
                .checks
                .iter()
                .filter(|k| !k.passed)
                .map(|k| k.name.as_str())
                .collect();
            vec![
                c.id.to_string(),
                c.title.clone(),
                if c.passed { "PASS" } else { "FAIL" }.to_string(),
                failed.join("; "),
            ]
        })
        .collect();
    for s in &report.supplementary {
        rows.push(vec![
            "-".into(),
            s.name.clone(),
            if s.passed { "PASS" } else { "FAIL" }.to_string(),
            String::new(),
        ]);
    }
    Report {
        json,
        table: Table {
            headers: vec!["criterion", "title", "status", "failed_checks"],
            rows,
        },
        ok: report.passed,
    }
}
