//! Parameter-space exploration: efficiency surfaces over `(ka, x)`, tracing
//! of the curves where the ring acts as a pure phase gate (`delta = 0`), and
//! location of the lossless operating points on them.
//!
//! All refinement is done by bracketing (bisection for roots of `delta`,
//! golden-section for extrema of `|T|`); every returned point is backed by a
//! fresh evaluation of the closed form at the final coordinates, never by a
//! stale grid value.

use crate::closed_form::{transmission, TransmissionDecomposition};
use crate::error::{Error, Result};
use crate::spin::RingConfig;
use std::f64::consts::PI;

/// Desk-scale `ka` window around the reference device's Fermi point
/// (`k_F a ~ 20.4`).
pub const DEFAULT_KA_WINDOW: (f64, f64) = (19.0, 22.0);

/// Conventional upper edge of the spin-orbit axis. The physical Rashba
/// bound of the reference device corresponds to `x ~ 3.0`; surfaces are
/// conventionally drawn a little past it.
pub const DEFAULT_X_MAX: f64 = 3.5;

/// A gate counts as lossless when `1 - |T|` falls below this after
/// refinement.
pub const LOSSLESS_TOL: f64 = 1e-6;

/// Refinement target on `|delta|` along phase-gate curves.
pub const CURVE_DELTA_TOL: f64 = 1e-10;

/// One cell of an efficiency scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanCell {
    pub t_mag: f64,
    pub delta: f64,
    pub delta0: f64,
    /// True when the point sits on a degenerate resonance denominator; the
    /// numeric fields are NaN then.
    pub degenerate: bool,
}

/// Efficiency surface over a rectangular `(ka, x)` window at fixed `gamma`.
#[derive(Debug, Clone)]
pub struct ScanGrid {
    pub ka_axis: Vec<f64>,
    pub x_axis: Vec<f64>,
    pub gamma: f64,
    /// Row major over `x`: `cells[ix * ka_axis.len() + ika]`.
    pub cells: Vec<ScanCell>,
}

impl ScanGrid {
    pub fn cell(&self, ika: usize, ix: usize) -> &ScanCell {
        &self.cells[ix * self.ka_axis.len() + ika]
    }
}

/// One refined point of a phase-gate curve.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub ka: f64,
    pub x: f64,
    pub t_mag: f64,
    pub delta: f64,
}

/// A polyline of refined `delta = 0` points, ordered by increasing `x`.
#[derive(Debug, Clone)]
pub struct Curve {
    pub gamma: f64,
    pub points: Vec<CurvePoint>,
}

/// Coarse-grid resolution used to seed root finding and curve linking.
#[derive(Debug, Clone, Copy)]
pub struct TraceSettings {
    pub ka_samples: usize,
    pub x_samples: usize,
}

impl Default for TraceSettings {
    fn default() -> Self {
        TraceSettings {
            ka_samples: 421,
            x_samples: 321,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n as f64 - 1.0);
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

fn check_range(name: &'static str, range: (f64, f64), min_lo: f64) -> Result<()> {
    if !range.0.is_finite() || !range.1.is_finite() || range.0 < min_lo || range.0 >= range.1 {
        return Err(Error::InvalidInput {
            name,
            value: range.0,
            reason: "range must be finite, ordered and inside the admissible domain",
        });
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma <= 0.0 || gamma >= 2.0 * PI {
        return Err(Error::InvalidInput {
            name: "gamma",
            value: gamma,
            reason: "must lie strictly inside (0, 2 pi)",
        });
    }
    Ok(())
}

fn eval(gamma: f64, ka: f64, x: f64) -> Option<TransmissionDecomposition> {
    let cfg = RingConfig::new(ka, x, gamma).ok()?;
    transmission(&cfg).ok()
}

/// Evaluate the closed form over a rectangular grid. `resolution` is
/// `(ka samples, x samples)`, at least 2 per axis; degenerate points are
/// flagged, not dropped.
pub fn scan_grid(
    gamma: f64,
    ka_range: (f64, f64),
    x_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<ScanGrid> {
    check_gamma(gamma)?;
    check_range("ka_range", ka_range, f64::MIN_POSITIVE)?;
    check_range("x_range", x_range, 0.0)?;
    if resolution.0 < 2 || resolution.1 < 2 {
        return Err(Error::InvalidInput {
            name: "resolution",
            value: resolution.0.min(resolution.1) as f64,
            reason: "need at least 2 samples per axis",
        });
    }
    let ka_axis = linspace(ka_range.0, ka_range.1, resolution.0);
    let x_axis = linspace(x_range.0, x_range.1, resolution.1);
    let mut cells = Vec::with_capacity(ka_axis.len() * x_axis.len());
    for &x in &x_axis {
        for &ka in &ka_axis {
            match eval(gamma, ka, x) {
                Some(dec) => cells.push(ScanCell {
                    t_mag: dec.t_mag,
                    delta: dec.delta,
                    delta0: dec.delta0,
                    degenerate: false,
                }),
                None => cells.push(ScanCell {
                    t_mag: f64::NAN,
                    delta: f64::NAN,
                    delta0: f64::NAN,
                    degenerate: true,
                }),
            }
        }
    }
    Ok(ScanGrid {
        ka_axis,
        x_axis,
        gamma,
        cells,
    })
}

/// Bisect `delta(ka)` to `CURVE_DELTA_TOL` inside a bracket with a sign
/// change and no branch jump.
fn bisect_delta(gamma: f64, x: f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut f_lo = eval(gamma, lo, x)?.delta;
    if f_lo.abs() <= CURVE_DELTA_TOL {
        return Some(lo);
    }
    let f_hi = eval(gamma, hi, x)?.delta;
    if f_hi.abs() <= CURVE_DELTA_TOL {
        return Some(hi);
    }
    if f_lo * f_hi > 0.0 || (f_lo - f_hi).abs() > PI {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = eval(gamma, mid, x)?.delta;
        if f_mid.abs() <= CURVE_DELTA_TOL {
            return Some(mid);
        }
        if f_lo * f_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        if (hi - lo).abs() < 1e-15 * lo.abs().max(1.0) {
            break;
        }
    }
    None
}

/// All `delta = 0` roots along one `x` row.
fn roots_along_ka(gamma: f64, x: f64, ka_axis: &[f64]) -> Vec<f64> {
    let deltas: Vec<Option<f64>> = ka_axis
        .iter()
        .map(|&ka| eval(gamma, ka, x).map(|d| d.delta))
        .collect();
    let mut roots = Vec::new();
    for i in 0..ka_axis.len() - 1 {
        let (Some(d0), Some(d1)) = (deltas[i], deltas[i + 1]) else {
            continue;
        };
        if d0 * d1 > 0.0 || (d0 - d1).abs() > PI {
            continue;
        }
        if let Some(root) = bisect_delta(gamma, x, ka_axis[i], ka_axis[i + 1]) {
            if roots.last().is_none_or(|&r: &f64| (root - r).abs() > 1e-9) {
                roots.push(root);
            }
        }
    }
    roots
}

/// Trace the curves in the `(ka, x)` rectangle along which the ring acts as
/// a `gamma` phase gate (`delta = 0`), with default seeding resolution.
///
/// An empty result is a valid outcome. `gamma = pi` is rejected: `delta` is
/// identically `pi` there.
pub fn delta_zero_curves(
    gamma: f64,
    ka_range: (f64, f64),
    x_range: (f64, f64),
) -> Result<Vec<Curve>> {
    delta_zero_curves_with(gamma, ka_range, x_range, &TraceSettings::default())
}

/// [`delta_zero_curves`] with explicit seeding resolution (used for
/// resolution-stability checks).
pub fn delta_zero_curves_with(
    gamma: f64,
    ka_range: (f64, f64),
    x_range: (f64, f64),
    settings: &TraceSettings,
) -> Result<Vec<Curve>> {
    check_gamma(gamma)?;
    if (gamma - PI).abs() < 1e-9 {
        return Err(Error::InvalidInput {
            name: "gamma",
            value: gamma,
            reason: "delta is identically pi at gamma = pi; no phase-gate curve exists",
        });
    }
    check_range("ka_range", ka_range, f64::MIN_POSITIVE)?;
    check_range("x_range", x_range, 0.0)?;
    if settings.ka_samples < 2 || settings.x_samples < 2 {
        return Err(Error::InvalidInput {
            name: "settings",
            value: settings.ka_samples.min(settings.x_samples) as f64,
            reason: "need at least 2 samples per axis",
        });
    }

    let ka_axis = linspace(ka_range.0, ka_range.1, settings.ka_samples);
    let x_axis = linspace(x_range.0, x_range.1, settings.x_samples);
    let ka_step = (ka_range.1 - ka_range.0) / (settings.ka_samples as f64 - 1.0);
    let link_window = 12.0 * ka_step;

    let mut open: Vec<Vec<CurvePoint>> = Vec::new();
    let mut closed: Vec<Vec<CurvePoint>> = Vec::new();
    for &x in &x_axis {
        let roots = roots_along_ka(gamma, x, &ka_axis);
        let points: Vec<CurvePoint> = roots
            .iter()
            .filter_map(|&ka| {
                let dec = eval(gamma, ka, x)?;
                Some(CurvePoint {
                    ka,
                    x,
                    t_mag: dec.t_mag,
                    delta: dec.delta,
                })
            })
            .collect();

        // Greedy nearest matching between open curve ends and new roots.
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (ci, curve) in open.iter().enumerate() {
            let last_ka = curve.last().unwrap().ka;
            for (ri, p) in points.iter().enumerate() {
                let d = (p.ka - last_ka).abs();
                if d <= link_window {
                    pairs.push((d, ci, ri));
                }
            }
        }
        pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut curve_taken = vec![false; open.len()];
        let mut root_taken = vec![false; points.len()];
        let mut extended = vec![false; open.len()];
        for (_, ci, ri) in pairs {
            if curve_taken[ci] || root_taken[ri] {
                continue;
            }
            open[ci].push(points[ri]);
            curve_taken[ci] = true;
            root_taken[ri] = true;
            extended[ci] = true;
        }
        // Retire curves that found no continuation, start new ones.
        let mut still_open = Vec::new();
        for (ci, curve) in open.into_iter().enumerate() {
            if extended[ci] {
                still_open.push(curve);
            } else {
                closed.push(curve);
            }
        }
        open = still_open;
        for (ri, p) in points.into_iter().enumerate() {
            if !root_taken[ri] {
                open.push(vec![p]);
            }
        }
    }
    closed.extend(open);
    closed.sort_by(|a, b| {
        let ka = (a[0].x, a[0].ka);
        let kb = (b[0].x, b[0].ka);
        ka.partial_cmp(&kb).unwrap()
    });
    Ok(closed
        .into_iter()
        .map(|points| Curve { gamma, points })
        .collect())
}

/// Golden-section maximization of `f` on `[lo, hi]` to `xtol`.
fn golden_max(f: &dyn Fn(f64) -> Option<f64>, lo: f64, hi: f64, xtol: f64) -> Option<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let mid = 0.5 * (a + b);
    Some((mid, f(mid)?))
}

/// Find the `delta = 0` root nearest `ka_center` at fixed `x`, expanding
/// the search bracket when needed.
fn root_near(gamma: f64, x: f64, ka_center: f64, half_width: f64) -> Option<f64> {
    let mut w = half_width.max(1e-9);
    for _ in 0..5 {
        let lo = ka_center - w;
        let hi = ka_center + w;
        if lo <= 0.0 {
            return None;
        }
        let n = 17;
        let grid = linspace(lo, hi, n);
        let deltas: Vec<Option<f64>> = grid
            .iter()
            .map(|&ka| eval(gamma, ka, x).map(|d| d.delta))
            .collect();
        let mut best: Option<(f64, usize)> = None;
        for i in 0..n - 1 {
            let (Some(d0), Some(d1)) = (deltas[i], deltas[i + 1]) else {
                continue;
            };
            if d0 * d1 > 0.0 || (d0 - d1).abs() > PI {
                continue;
            }
            let mid = 0.5 * (grid[i] + grid[i + 1]);
            let dist = (mid - ka_center).abs();
            if best.is_none_or(|(bd, _)| dist < bd) {
                best = Some((dist, i));
            }
        }
        if let Some((_, i)) = best {
            return bisect_delta(gamma, x, grid[i], grid[i + 1]);
        }
        w *= 3.0;
    }
    None
}

/// Lossless operating points along a phase-gate curve: local maxima of
/// `|T|` refined along the curve until `1 - |T| < LOSSLESS_TOL`, each still
/// satisfying the `delta = 0` condition to refinement accuracy.
pub fn lossless_points(curve: &Curve) -> Vec<CurvePoint> {
    let pts = &curve.points;
    let gamma = curve.gamma;
    let mut out: Vec<CurvePoint> = Vec::new();
    if pts.len() < 3 {
        return out;
    }
    for i in 1..pts.len() - 1 {
        if !(pts[i].t_mag >= pts[i - 1].t_mag && pts[i].t_mag >= pts[i + 1].t_mag) {
            continue;
        }
        let (x_lo, x_hi) = (pts[i - 1].x, pts[i + 1].x);
        let spread = (pts[i + 1].ka - pts[i - 1].ka)
            .abs()
            .max(1e-4)
            .max(2.0 * (pts[i].ka - pts[i - 1].ka).abs());
        let ka_near = move |x: f64| -> f64 {
            // linear interpolation of ka along the curve triple
            if x <= pts[i].x {
                let t = (x - pts[i - 1].x) / (pts[i].x - pts[i - 1].x);
                pts[i - 1].ka + t * (pts[i].ka - pts[i - 1].ka)
            } else {
                let t = (x - pts[i].x) / (pts[i + 1].x - pts[i].x);
                pts[i].ka + t * (pts[i + 1].ka - pts[i].ka)
            }
        };
        let objective = |x: f64| -> Option<f64> {
            let ka = root_near(gamma, x, ka_near(x), spread)?;
            Some(eval(gamma, ka, x)?.t_mag)
        };
        let Some((x_best, _)) = golden_max(&objective, x_lo, x_hi, 1e-9) else {
            continue;
        };
        let Some(ka_best) = root_near(gamma, x_best, ka_near(x_best), spread) else {
            continue;
        };
        let Some(dec) = eval(gamma, ka_best, x_best) else {
            continue;
        };
        if 1.0 - dec.t_mag >= LOSSLESS_TOL {
            continue;
        }
        let p = CurvePoint {
            ka: ka_best,
            x: x_best,
            t_mag: dec.t_mag,
            delta: dec.delta,
        };
        if out
            .iter()
            .all(|q| (q.ka - p.ka).abs() > 1e-6 || (q.x - p.x).abs() > 1e-6)
        {
            out.push(p);
        }
    }
    out
}

/// Lossless `ka` values of the diametric ring at fixed spin-orbit ratio:
/// maxima of `|T|` over `ka_range` refined until `1 - |T| < LOSSLESS_TOL`.
pub fn lossless_points_diametric(x: f64, ka_range: (f64, f64)) -> Result<Vec<f64>> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidInput {
            name: "x",
            value: x,
            reason: "must be finite and >= 0",
        });
    }
    check_range("ka_range", ka_range, f64::MIN_POSITIVE)?;
    let samples = (((ka_range.1 - ka_range.0) * 400.0).ceil() as usize).clamp(801, 20_001);
    let grid = linspace(ka_range.0, ka_range.1, samples);
    let t_of = |ka: f64| -> Option<f64> { eval(PI, ka, x).map(|d| d.t_mag) };
    let values: Vec<Option<f64>> = grid.iter().map(|&ka| t_of(ka)).collect();
    let mut out: Vec<f64> = Vec::new();
    for i in 1..samples - 1 {
        let (Some(tm), Some(tl), Some(tr)) = (values[i], values[i - 1], values[i + 1]) else {
            continue;
        };
        if !(tm >= tl && tm >= tr) {
            continue;
        }
        let Some((ka_best, t_best)) = golden_max(&t_of, grid[i - 1], grid[i + 1], 1e-10) else {
            continue;
        };
        if 1.0 - t_best < LOSSLESS_TOL
            && out.iter().all(|&q| (q - ka_best).abs() > 1e-6)
        {
            out.push(ka_best);
        }
    }
    Ok(out)
}
