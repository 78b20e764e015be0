use num_complex::Complex64;
use std::f64::consts::PI;

use crate::branch::branch_roots;
use crate::error::{CoreError, Result};
use crate::family::InitialData;
use crate::generator::unbounded_gate;
use crate::quad::{adaptive_line, log1p_c, neville_extrapolate};
use crate::Tolerances;

/// Cauchy transform (1/2i pi) Int u0(y)/(y - z) dy, the t = 0 value of the
/// analytic extension.
pub fn cauchy_transform(data: &InitialData, z: Complex64, tols: &Tolerances) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(CoreError::NotUpperHalfPlane { z: format!("{z}") });
    }
    let mut breaks = data.breakpoints();
    breaks.push(z.re);
    let mut f = |y: f64| Complex64::new(data.eval(y), 0.0) / (Complex64::new(y, 0.0) - z);
    let (v, _) = adaptive_line(&mut f, &breaks, tols.quad, tols.quad)?;
    Ok(v / Complex64::new(0.0, 2.0 * PI))
}

/// Closed-form dispersionless value in the upper half-plane:
/// (1/4i pi t) Int Log(1 + 2t u0(y)/(y - z)) dy.
///
/// The principal branch is never crossed for Im z > 0 (the logarithm's
/// argument can only become real where u0 vanishes, and there it equals 1),
/// but for small Im z the integrand develops logarithmic spikes at the real
/// characteristic roots; those roots seed the subdivision.
pub fn zd_log(data: &InitialData, t: f64, z: Complex64, tols: &Tolerances) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(CoreError::NotUpperHalfPlane { z: format!("{z}") });
    }
    unbounded_gate(data, t)?;
    if t.abs() < 1e-13 {
        return cauchy_transform(data, z, tols);
    }
    let mut breaks = data.breakpoints();
    breaks.push(z.re);
    // characteristic preimages of Re z mark where |1 + w| dips
    for r in branch_roots(data, t, z.re, tols) {
        breaks.push(r);
        // flank each root at the spike scale so subdivision starts sharp
        breaks.push(r - z.im);
        breaks.push(r + z.im);
    }
    let mut f = |y: f64| {
        let w = Complex64::new(2.0 * t * data.eval(y), 0.0) / (Complex64::new(y, 0.0) - z);
        log1p_c(w)
    };
    let (v, _) = adaptive_line(&mut f, &breaks, tols.quad, tols.quad)?;
    Ok(v / Complex64::new(0.0, 4.0 * PI * t))
}

/// How the boundary extrapolation went.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ExtrapFlag {
    Clean,
    /// successive extrapolants stopped contracting; value is the best
    /// available but carries no accuracy claim
    NonMonotone,
}

#[derive(Debug, Clone)]
pub struct BoundaryValue {
    pub value: f64,
    pub flag: ExtrapFlag,
    /// plain half-plane samples 2 Re v(x + i delta_k)
    pub samples: Vec<(f64, f64)>,
    /// extrapolation error estimate (last contraction)
    pub err_est: f64,
}

/// Dispersionless profile on the real line by Richardson extrapolation of
/// 2 Re v(x + i delta) over delta = 0.1 * 2^{-k}, k = 0..6.
pub fn zd_real_line(
    data: &InitialData,
    t: f64,
    x: f64,
    tols: &Tolerances,
) -> Result<BoundaryValue> {
    let mut deltas = Vec::new();
    let mut vals = Vec::new();
    let mut samples = Vec::new();
    for k in 0..=6 {
        let d = 0.1 * 0.5f64.powi(k);
        let v = zd_log(data, t, Complex64::new(x, d), tols)?;
        deltas.push(d);
        vals.push(Complex64::new(2.0 * v.re, 0.0));
        samples.push((d, 2.0 * v.re));
    }
    // Neville tableau on progressively more samples; watch the contraction
    let mut prev = vals[0].re;
    let mut best = prev;
    let mut last_step = f64::INFINITY;
    let mut flag = ExtrapFlag::Clean;
    for k in 2..=deltas.len() {
        let est = neville_extrapolate(&deltas[..k], &vals[..k], 0.0).re;
        let step = (est - prev).abs();
        if k > 3 && step > 4.0 * last_step && step > 1e-11 * (1.0 + est.abs()) {
            flag = ExtrapFlag::NonMonotone;
            break;
        }
        best = est;
        last_step = step.max(1e-300);
        prev = est;
    }
    Ok(BoundaryValue {
        value: best,
        flag,
        samples,
        err_est: last_step,
    })
}

/// Direct scan for min_y |1 + 2t u0(y)/(y - z)|: diagnostic for how close
/// the log integrand comes to the branch point.
pub fn log_argument_clearance(data: &InitialData, t: f64, z: Complex64) -> f64 {
    let val = |y: f64| {
        (Complex64::ONE
            + Complex64::new(2.0 * t * data.eval(y), 0.0) / (Complex64::new(y, 0.0) - z))
        .norm()
    };
    let mut grid: Vec<f64> = (0..8001)
        .map(|i| -1.5707 + 3.1414 * i as f64 / 8000.0)
        .map(|th| th.tan())
        .collect();
    grid.extend(data.scan_points(4000));
    let mut best = f64::INFINITY;
    let mut arg = 0.0;
    for y in grid {
        let v = val(y);
        if v < best {
            best = v;
            arg = y;
        }
    }
    let (mut lo, mut hi) = (arg - 0.01 * (1.0 + arg.abs()), arg + 0.01 * (1.0 + arg.abs()));
    for _ in 0..80 {
        let p = lo + (hi - lo) / 3.0;
        let q = hi - (hi - lo) / 3.0;
        if val(p) > val(q) {
            lo = p;
        } else {
            hi = q;
        }
    }
    best.min(val(0.5 * (lo + hi)))
}
