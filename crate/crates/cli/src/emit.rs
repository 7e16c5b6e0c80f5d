//! Deterministic serialization of results (CSV and JSON) and angle parsing.
//!
//! Floats in CSV are printed with 17 significant digits so every emitted
//! value re-parses to the exact same f64; identical inputs always produce
//! byte-identical output.

use serde::Serialize;
use spinring::analysis::{Curve, CurvePoint, ScanGrid};
use spinring::gates::GateSequence;
use spinring::mat2::Mat2;

/// Parse an angle in radians, accepting a `pi` suffix: `pi`, `0.5pi`,
/// `-0.25pi`, or a plain float.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(prefix) = t.strip_suffix("pi") {
        let factor = match prefix {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => p
                .parse::<f64>()
                .map_err(|_| format!("malformed angle '{s}' (use radians or '<float>pi')"))?,
        };
        return Ok(factor * std::f64::consts::PI);
    }
    t.parse::<f64>()
        .map_err(|_| format!("malformed angle '{s}' (use radians or '<float>pi')"))
}

/// 17 significant digits: round-trips f64 exactly.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn complex_pair(z: spinring::Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn matrix_pairs(m: &Mat2) -> [[[f64; 2]; 2]; 2] {
    [
        [complex_pair(m.m[0][0]), complex_pair(m.m[0][1])],
        [complex_pair(m.m[1][0]), complex_pair(m.m[1][1])],
    ]
}

#[derive(Serialize)]
struct Document<P: Serialize, R: Serialize> {
    schema_version: u32,
    params: P,
    rows: Vec<R>,
}

fn to_json<P: Serialize, R: Serialize>(params: P, rows: Vec<R>) -> String {
    let doc = Document {
        schema_version: 1,
        params,
        rows,
    };
    serde_json::to_string(&doc).expect("serialization cannot fail")
}

// --- scan -----------------------------------------------------------------

#[derive(Serialize)]
struct ScanParams {
    gamma: f64,
    ka_min: f64,
    ka_max: f64,
    ka_steps: usize,
    x_min: f64,
    x_max: f64,
    x_steps: usize,
}

#[derive(Serialize)]
struct ScanRow {
    ka: f64,
    x: f64,
    t_mag: f64,
    delta: f64,
    delta0: f64,
    flag: u8,
}

fn scan_rows(grid: &ScanGrid) -> impl Iterator<Item = ScanRow> + '_ {
    grid.x_axis.iter().enumerate().flat_map(move |(ix, &x)| {
        grid.ka_axis.iter().enumerate().map(move |(ika, &ka)| {
            let cell = grid.cell(ika, ix);
            ScanRow {
                ka,
                x,
                t_mag: cell.t_mag,
                delta: cell.delta,
                delta0: cell.delta0,
                flag: u8::from(cell.degenerate),
            }
        })
    })
}

pub fn scan_to_csv(grid: &ScanGrid) -> String {
    let mut out = String::from("ka,x,gamma,t_mag,delta,delta0,flag\n");
    for row in scan_rows(grid) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            format_float(row.ka),
            format_float(row.x),
            format_float(grid.gamma),
            format_float(row.t_mag),
            format_float(row.delta),
            format_float(row.delta0),
            row.flag
        ));
    }
    out
}

pub fn scan_to_json(grid: &ScanGrid) -> String {
    to_json(
        ScanParams {
            gamma: grid.gamma,
            ka_min: grid.ka_axis[0],
            ka_max: *grid.ka_axis.last().unwrap(),
            ka_steps: grid.ka_axis.len(),
            x_min: grid.x_axis[0],
            x_max: *grid.x_axis.last().unwrap(),
            x_steps: grid.x_axis.len(),
        },
        scan_rows(grid).collect(),
    )
}

// --- curves and point lists -------------------------------------------------

#[derive(Serialize)]
struct CurveParams {
    gamma: f64,
}

#[derive(Serialize)]
struct CurveRow {
    curve: usize,
    x: f64,
    ka: f64,
    t_mag: f64,
    delta: f64,
}

pub fn curves_to_csv(curves: &[Curve]) -> String {
    let mut out = String::from("curve,x,ka,t_mag,delta\n");
    for (idx, curve) in curves.iter().enumerate() {
        for p in &curve.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                idx,
                format_float(p.x),
                format_float(p.ka),
                format_float(p.t_mag),
                format_float(p.delta)
            ));
        }
    }
    out
}

pub fn curves_to_json(gamma: f64, curves: &[Curve]) -> String {
    let rows: Vec<CurveRow> = curves
        .iter()
        .enumerate()
        .flat_map(|(idx, curve)| {
            curve.points.iter().map(move |p| CurveRow {
                curve: idx,
                x: p.x,
                ka: p.ka,
                t_mag: p.t_mag,
                delta: p.delta,
            })
        })
        .collect();
    to_json(CurveParams { gamma }, rows)
}

#[derive(Serialize)]
struct PointParams {
    gamma: f64,
    mode: &'static str,
}

#[derive(Serialize)]
struct PointRow {
    x: f64,
    ka: f64,
    t_mag: f64,
    delta: f64,
}

pub fn points_to_csv(gamma: f64, points: &[CurvePoint]) -> String {
    let mut out = String::from("gamma,x,ka,t_mag,delta\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(gamma),
            format_float(p.x),
            format_float(p.ka),
            format_float(p.t_mag),
            format_float(p.delta)
        ));
    }
    out
}

pub fn points_to_json(gamma: f64, mode: &'static str, points: &[CurvePoint]) -> String {
    let rows: Vec<PointRow> = points
        .iter()
        .map(|p| PointRow {
            x: p.x,
            ka: p.ka,
            t_mag: p.t_mag,
            delta: p.delta,
        })
        .collect();
    to_json(PointParams { gamma, mode }, rows)
}

// --- gate sequences ---------------------------------------------------------

/// Fidelities of a composed sequence against the standard targets.
#[derive(Serialize, Clone, Copy)]
pub struct TargetFidelities {
    pub fidelity_x: f64,
    pub fidelity_z: f64,
    pub fidelity_h: f64,
}

#[derive(Serialize)]
struct SequenceParams<'a> {
    method: &'a str,
    total_efficiency: f64,
    #[serde(flatten)]
    fidelities: TargetFidelities,
    composed: [[[f64; 2]; 2]; 2],
    link_phases: &'a [f64],
    warnings: &'a [String],
}

#[derive(Serialize)]
struct SequenceRow {
    item: usize,
    ka: f64,
    x: f64,
    gamma: f64,
    t_mag: f64,
}

pub fn sequence_to_json(seq: &GateSequence, method: &str, fid: TargetFidelities) -> String {
    let rows: Vec<SequenceRow> = seq
        .items
        .iter()
        .zip(seq.per_ring_t_mag.iter())
        .enumerate()
        .map(|(item, (cfg, &t_mag))| SequenceRow {
            item,
            ka: cfg.ka,
            x: cfg.x,
            gamma: cfg.gamma,
            t_mag,
        })
        .collect();
    to_json(
        SequenceParams {
            method,
            total_efficiency: seq.total_efficiency,
            fidelities: fid,
            composed: matrix_pairs(&seq.composed),
            link_phases: &seq.link_phases,
            warnings: &seq.warnings,
        },
        rows,
    )
}

pub fn sequence_to_csv(seq: &GateSequence, fid: TargetFidelities) -> String {
    let mut out = String::from(
        "items,total_efficiency,fidelity_x,fidelity_z,fidelity_h,\
         composed_00_re,composed_00_im,composed_01_re,composed_01_im,\
         composed_10_re,composed_10_im,composed_11_re,composed_11_im\n",
    );
    let m = &seq.composed.m;
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        seq.items.len(),
        format_float(seq.total_efficiency),
        format_float(fid.fidelity_x),
        format_float(fid.fidelity_z),
        format_float(fid.fidelity_h),
        format_float(m[0][0].re),
        format_float(m[0][0].im),
        format_float(m[0][1].re),
        format_float(m[0][1].im),
        format_float(m[1][0].re),
        format_float(m[1][0].im),
        format_float(m[1][1].re),
        format_float(m[1][1].im),
    ));
    out
}

// --- single point -----------------------------------------------------------

// Entries as (re, im) pairs, row by row.
fn matrix_text(label: &str, m: &Mat2, out: &mut String) {
    out.push_str(&format!(
        "  {label} = [ ({}, {}) ({}, {}) ; ({}, {}) ({}, {}) ]\n",
        format_float(m.m[0][0].re),
        format_float(m.m[0][0].im),
        format_float(m.m[0][1].re),
        format_float(m.m[0][1].im),
        format_float(m.m[1][0].re),
        format_float(m.m[1][0].im),
        format_float(m.m[1][1].re),
        format_float(m.m[1][1].im),
    ));
}

/// Human-readable single-point report (still byte deterministic).
#[allow(clippy::too_many_arguments)]
pub fn tmatrix_text(
    ka: f64,
    x: f64,
    gamma: f64,
    dec: &spinring::closed_form::TransmissionDecomposition,
    sol: &spinring::scattering::ScatteringSolution,
    fidelity: f64,
) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "ka = {}\nx = {}\ngamma = {}\n",
        format_float(ka),
        format_float(x),
        format_float(gamma)
    ));
    out.push_str("closed form:\n");
    out.push_str(&format!("  t_mag = {}\n", format_float(dec.t_mag)));
    out.push_str(&format!("  delta = {}\n", format_float(dec.delta)));
    out.push_str(&format!("  delta0 = {}\n", format_float(dec.delta0)));
    matrix_text("T", &dec.t, &mut out);
    matrix_text("U", &dec.u, &mut out);
    out.push_str("scattering solver:\n");
    matrix_text("T", &sol.tmat, &mut out);
    matrix_text("R", &sol.rmat, &mut out);
    out.push_str(&format!("  residual = {}\n", format_float(sol.residual)));
    out.push_str(&format!(
        "  conservation_defect = {}\n",
        format_float(sol.conservation_defect)
    ));
    out.push_str(&format!(
        "agreement fidelity (up to global phase) = {}\n",
        format_float(fidelity)
    ));
    out
}

#[derive(Serialize)]
struct TmatrixParams {
    ka: f64,
    x: f64,
    gamma: f64,
}

#[derive(Serialize)]
struct TmatrixRow {
    method: &'static str,
    t: [[[f64; 2]; 2]; 2],
    t_mag: f64,
    delta: Option<f64>,
    delta0: Option<f64>,
    u: Option<[[[f64; 2]; 2]; 2]>,
    r: Option<[[[f64; 2]; 2]; 2]>,
    residual: Option<f64>,
    conservation_defect: Option<f64>,
    agreement_fidelity: f64,
}

pub fn tmatrix_json(
    ka: f64,
    x: f64,
    gamma: f64,
    dec: &spinring::closed_form::TransmissionDecomposition,
    sol: &spinring::scattering::ScatteringSolution,
    fidelity: f64,
) -> String {
    let rows = vec![
        TmatrixRow {
            method: "closed_form",
            t: matrix_pairs(&dec.t),
            t_mag: dec.t_mag,
            delta: Some(dec.delta),
            delta0: Some(dec.delta0),
            u: Some(matrix_pairs(&dec.u)),
            r: None,
            residual: None,
            conservation_defect: None,
            agreement_fidelity: fidelity,
        },
        TmatrixRow {
            method: "scattering",
            t: matrix_pairs(&sol.tmat),
            t_mag: sol.tmat.det().norm().sqrt(),
            delta: None,
            delta0: None,
            u: None,
            r: Some(matrix_pairs(&sol.rmat)),
            residual: Some(sol.residual),
            conservation_defect: Some(sol.conservation_defect),
            agreement_fidelity: fidelity,
        },
    ];
    to_json(TmatrixParams { ka, x, gamma }, rows)
}

// --- units ------------------------------------------------------------------

pub fn units_forward_text(ka: f64, x: f64, theta: f64) -> String {
    format!(
        "ka = {}\nx = {}\ntheta = {}\n",
        format_float(ka),
        format_float(x),
        format_float(theta)
    )
}

pub fn units_inverse_text(alpha_evm: f64, x: f64) -> String {
    format!(
        "alpha_evm = {}\nx = {}\n",
        format_float(alpha_evm),
        format_float(x)
    )
}
