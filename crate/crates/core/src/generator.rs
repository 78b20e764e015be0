use faer::prelude::*;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{CoreError, Result};
use crate::family::InitialData;
use crate::grid::SpectralGrid;
use crate::hardy::HardyFunction;
use crate::quad::adaptive_line;
use crate::toeplitz::ToeplitzSymbol;
use crate::Tolerances;

/// Hard cap on dense-matrix memory (bytes) during assembly.
pub const MATRIX_MEM_CAP: usize = 1 << 31;

/// The evolution generator A(eps) = G - 2 eps t D + 2 t T_{u0} acting on
/// nonnegative-frequency coefficients.  eps = 1 gives the full dynamics;
/// eps = 0 gives the dispersionless operator whose resolvent produces the
/// zero-dispersion boundary values.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub data: InitialData,
    pub t: f64,
    pub eps: f64,
}

pub struct Generator {
    pub grid: SpectralGrid,
    pub spec: GeneratorSpec,
    a: Mat<Complex64>,
    u0: HardyFunction,
}

/// A resolvent-formula evaluation: the value plus the relative residual of
/// the underlying linear solve.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PiUValue {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl PiUValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl GeneratorSpec {
    pub fn assemble(&self, grid: SpectralGrid, tols: &Tolerances) -> Result<Generator> {
        let m = grid.m;
        let bytes = 2 * m * m * std::mem::size_of::<Complex64>();
        if bytes > MATRIX_MEM_CAP {
            return Err(CoreError::MemoryCap {
                requested: m,
                bytes,
                cap: MATRIX_MEM_CAP,
            });
        }
        let u0 = HardyFunction::project(&self.data, grid, None, tols)?;
        let sym = ToeplitzSymbol::from_data(&self.data, grid, tols)?;
        let gap = sym.hermitian_gap();
        if gap > tols.consistency {
            return Err(CoreError::Inconsistent {
                what: "multiplication block lost weighted self-adjointness".into(),
                err: gap,
                tol: tols.consistency,
            });
        }
        let mut a = sym.dense();
        let two_t = Complex64::new(2.0 * self.t, 0.0);
        for i in 0..m {
            for j in 0..m {
                a[(i, j)] *= two_t;
            }
        }
        // derivative block from the same stencils used by apply_g, extracted
        // column by column so the dense operator is identical to the applied
        // one; D is diagonal multiplication by xi
        let mut e = vec![Complex64::ZERO; m];
        for j in 0..m {
            e[j] = Complex64::ONE;
            let col = HardyFunction::new(grid, e.clone())?.apply_g(6)?;
            for i in 0..m {
                if col.coef[i] != Complex64::ZERO {
                    a[(i, j)] += col.coef[i];
                }
            }
            e[j] = Complex64::ZERO;
        }
        let shift = -2.0 * self.eps * self.t;
        for i in 0..m {
            a[(i, i)] += Complex64::new(shift * grid.xi(i), 0.0);
        }
        Ok(Generator {
            grid,
            spec: self.clone(),
            a,
            u0,
        })
    }
}

impl Generator {
    pub fn u0_projection(&self) -> &HardyFunction {
        &self.u0
    }

    /// Solve (A - z) w = f by dense LU with one step of iterative
    /// refinement; returns the solution and the relative residual.
    pub fn resolve(
        &self,
        z: Complex64,
        f: &HardyFunction,
        tols: &Tolerances,
    ) -> Result<(HardyFunction, f64)> {
        if z.im <= 0.0 {
            return Err(CoreError::NotUpperHalfPlane { z: format!("{z}") });
        }
        let m = self.grid.m;
        let mut az = self.a.clone();
        for i in 0..m {
            az[(i, i)] -= z;
        }
        let lu = az.partial_piv_lu();
        let rhs = Mat::from_fn(m, 1, |i, _| f.coef[i]);
        let mut w = lu.solve(&rhs);
        // one refinement pass, then report the weighted-norm residual
        let r = &rhs - &az * &w;
        let dw = lu.solve(&r);
        w += &dw;
        let r2 = &rhs - &az * &w;
        let res_f = HardyFunction::new(self.grid, (0..m).map(|i| r2[(i, 0)]).collect())?;
        let fnorm = f.norm();
        let rel = if fnorm > 0.0 {
            res_f.norm() / fnorm
        } else {
            res_f.norm()
        };
        if rel > tols.solve {
            return Err(CoreError::Diverged(format!(
                "resolvent solve residual {rel:.3e} exceeds {:.1e} at z = {z}",
                tols.solve
            )));
        }
        let w = HardyFunction::new(self.grid, (0..m).map(|i| w[(i, 0)]).collect())?;
        Ok((w, rel))
    }

    /// (1/2 i pi) I_+((A - z)^{-1} Pi u0): the explicit-formula value of the
    /// evolved data's analytic extension at z.
    pub fn value_at(&self, z: Complex64, tols: &Tolerances) -> Result<PiUValue> {
        let (w, residual) = self.resolve(z, &self.u0, tols)?;
        let ip = w.i_plus(5)?;
        let v = ip / Complex64::new(0.0, 2.0 * PI);
        Ok(PiUValue {
            re: v.re,
            im: v.im,
            residual,
        })
    }
}

/// Full-dynamics explicit formula (eps = 1) at a single point of the upper
/// half-plane.
pub fn pi_u_explicit(
    data: &InitialData,
    t: f64,
    z: Complex64,
    grid: SpectralGrid,
    tols: &Tolerances,
) -> Result<PiUValue> {
    GeneratorSpec {
        data: data.clone(),
        t,
        eps: 1.0,
    }
    .assemble(grid, tols)?
    .value_at(z, tols)
}

/// Zero-dispersion operator formula (eps = 0).  Data growing linearly at
/// infinity is admitted only for 2 |t| sup |u0(x)| / <x> < 1.
pub fn zd_operator(
    data: &InitialData,
    t: f64,
    z: Complex64,
    grid: SpectralGrid,
    tols: &Tolerances,
) -> Result<PiUValue> {
    unbounded_gate(data, t)?;
    GeneratorSpec {
        data: data.clone(),
        t,
        eps: 0.0,
    }
    .assemble(grid, tols)?
    .value_at(z, tols)
}

pub fn unbounded_gate(data: &InitialData, t: f64) -> Result<()> {
    if !data.bounded() {
        let c = data.growth_const();
        if 2.0 * t.abs() * c >= 1.0 {
            return Err(CoreError::Gate(format!(
                "linear-growth data admits the formula only for |t| < 1/(2C); \
                 C = {c:.4}, |t| = {}",
                t.abs()
            )));
        }
    }
    Ok(())
}

/// sup_y |u0(y) / (y - z)|, the contraction quantity controlling the
/// resolvent expansion.  Scanned on a compactified grid plus the family's
/// own feature points, then refined.
pub fn sup_f_z(data: &InitialData, z: Complex64) -> f64 {
    let val = |y: f64| data.eval(y).abs() / (Complex64::new(y, 0.0) - z).norm();
    let mut best = 0.0f64;
    let mut arg = 0.0f64;
    let n = 4001;
    for k in 0..n {
        let th = -1.5707 + 3.1414 * k as f64 / (n - 1) as f64;
        let y = th.tan();
        let v = val(y);
        if v > best {
            best = v;
            arg = y;
        }
    }
    for y in data.scan_points(4000) {
        let v = val(y);
        if v > best {
            best = v;
            arg = y;
        }
    }
    // parabolic-free refinement: shrink a bracket around the best point
    let mut lo = arg - 0.5 * (1.0 + arg.abs()) * 1e-2;
    let mut hi = arg + 0.5 * (1.0 + arg.abs()) * 1e-2;
    for _ in 0..90 {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if val(a) < val(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    best.max(val(0.5 * (lo + hi)))
}

/// Direct integral of f_z^n over the line, f_z(y) = u0(y)/(y - z).
pub fn f_z_power_integral(
    data: &InitialData,
    z: Complex64,
    n: u32,
    tols: &Tolerances,
) -> Result<Complex64> {
    let mut breaks = data.breakpoints();
    breaks.push(z.re);
    let mut f = |y: f64| {
        let fz = Complex64::new(data.eval(y), 0.0) / (Complex64::new(y, 0.0) - z);
        fz.powu(n)
    };
    let (v, _) = adaptive_line(&mut f, &breaks, tols.quad, tols.quad)?;
    Ok(v)
}

/// One resolvent-expansion term pair at order n (t-independent part):
/// operator route I_+(((G-z)^{-1} T)^{n-1} (G-z)^{-1} Pi u0) against the
/// collapsed single integral (1/n) Int f_z^n.
pub fn term_reduction_check(
    data: &InitialData,
    z: Complex64,
    n: u32,
    grid: SpectralGrid,
    tols: &Tolerances,
) -> Result<(Complex64, Complex64)> {
    if z.im <= 0.0 {
        return Err(CoreError::NotUpperHalfPlane { z: format!("{z}") });
    }
    let u0 = HardyFunction::project(data, grid, None, tols)?;
    let sym = ToeplitzSymbol::from_data(data, grid, tols)?;
    let mut w = u0.resolvent_g(z, tols)?;
    for _ in 1..n {
        w = sym.apply(&w)?.resolvent_g(z, tols)?;
    }
    let lhs = w.i_plus(5)?;
    let rhs = f_z_power_integral(data, z, n, tols)? / n as f64;
    Ok((lhs, rhs))
}

/// Report of the small-time resolvent expansion of the dispersionless value.
#[derive(Debug, Clone)]
pub struct NeumannReport {
    /// contraction ratio 2|t| sup|f_z| (must be < 1/2 on entry)
    pub ratio: f64,
    /// operator-route terms (-2t)^{n-1} (1/2i pi) I_+(chain_n)
    pub terms_op: Vec<Complex64>,
    /// collapsed-integral terms (-2t)^{n-1} (1/2i pi n) Int f_z^n
    pub terms_int: Vec<Complex64>,
    pub sum_op: Complex64,
    pub sum_int: Complex64,
    /// worst per-term |op - int| over max(1, |int|)
    pub term_gap: f64,
}

/// Evaluate the dispersionless value by its geometric resolvent expansion,
/// through two independent routes per term.  Terminates when terms fall
/// below the requested tolerance or n_max, whichever is first.
pub fn neumann_zd(
    data: &InitialData,
    t: f64,
    z: Complex64,
    grid: SpectralGrid,
    n_max: u32,
    tols: &Tolerances,
) -> Result<NeumannReport> {
    if z.im <= 0.0 {
        return Err(CoreError::NotUpperHalfPlane { z: format!("{z}") });
    }
    let sup = sup_f_z(data, z);
    let ratio = 2.0 * t.abs() * sup;
    if ratio >= 0.5 {
        return Err(CoreError::Gate(format!(
            "resolvent expansion requires 2|t| sup|f_z| < 1/2, got {ratio:.4}"
        )));
    }
    let u0 = HardyFunction::project(data, grid, None, tols)?;
    let sym = ToeplitzSymbol::from_data(data, grid, tols)?;
    let denom = Complex64::new(0.0, 2.0 * PI);
    let mut w = u0.resolvent_g(z, tols)?;
    let mut terms_op = Vec::new();
    let mut terms_int = Vec::new();
    let mut sum_op = Complex64::ZERO;
    let mut sum_int = Complex64::ZERO;
    let mut term_gap = 0.0f64;
    let mut coef = Complex64::ONE; // (-2t)^{n-1}
    for n in 1..=n_max {
        let t_op = coef * w.i_plus(5)? / denom;
        let t_int =
            coef * f_z_power_integral(data, z, n, tols)? / (denom * n as f64);
        sum_op += t_op;
        sum_int += t_int;
        term_gap = term_gap.max((t_op - t_int).norm() / t_int.norm().max(1.0));
        terms_op.push(t_op);
        terms_int.push(t_int);
        if t_int.norm() < 0.05 * tols.cross_formula * (1.0 + sum_int.norm()) {
            break;
        }
        if n < n_max {
            w = sym.apply(&w)?.resolvent_g(z, tols)?;
            coef *= Complex64::new(-2.0 * t, 0.0);
        }
    }
    Ok(NeumannReport {
        ratio,
        terms_op,
        terms_int,
        sum_op,
        sum_int,
        term_gap,
    })
}
