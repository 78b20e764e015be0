use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{CoreError, Result};
use crate::family::InitialData;
use crate::grid::SpectralGrid;
use crate::osc::cumulative_oscillatory;
use crate::quad::{fd_weights, neville_extrapolate};
use crate::Tolerances;

/// A function in the Hardy class of the upper half-plane, represented by
/// samples of its (nonnegative-frequency) Fourier transform on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyFunction {
    pub grid: SpectralGrid,
    pub coef: Vec<Complex64>,
}

impl HardyFunction {
    pub fn new(grid: SpectralGrid, coef: Vec<Complex64>) -> Result<Self> {
        if coef.len() != grid.m {
            return Err(CoreError::InvalidInput(format!(
                "coefficient length {} != grid size {}",
                coef.len(),
                grid.m
            )));
        }
        Ok(Self { grid, coef })
    }

    pub fn norm(&self) -> f64 {
        self.grid.norm(&self.coef)
    }

    pub fn dot(&self, other: &Self) -> Complex64 {
        self.grid.dot(&self.coef, &other.coef)
    }

    /// Projection of real data onto the Hardy class: keep the nonnegative
    /// frequencies.  Built-in families use their closed-form transforms; the
    /// sampled fallback integrates over the window, refusing when the window
    /// or resolution gates fail.  No FFT is involved: the grid is one-sided.
    pub fn project(
        data: &InitialData,
        grid: SpectralGrid,
        x_window: Option<f64>,
        tols: &Tolerances,
    ) -> Result<Self> {
        // window gate: the squared-mass fraction outside the window must be
        // below window_tol^2
        let window = match x_window {
            Some(x) => {
                let ratio = data.window_tail_ratio(x);
                if ratio >= tols.window {
                    return Err(CoreError::WindowNotIntegrable {
                        ratio,
                        limit: tols.window,
                        x_window: x,
                    });
                }
                x
            }
            None => {
                let mut x = data
                    .breakpoints()
                    .iter()
                    .fold(8.0f64, |acc, b| acc.max(b.abs() + 8.0));
                while data.window_tail_ratio(x) >= tols.window {
                    x *= 2.0;
                    if x > 1e7 {
                        return Err(CoreError::WindowNotIntegrable {
                            ratio: data.window_tail_ratio(x),
                            limit: tols.window,
                            x_window: x,
                        });
                    }
                }
                x
            }
        };
        let _ = window;

        if let InitialData::Custom { dx, .. } = data {
            // quadrature of e^{-i xi x} against samples: the grid must stay
            // under the sampling rate
            let xi_nyq = 0.8 * PI / dx;
            if grid.xi_max > xi_nyq {
                return Err(CoreError::ResolutionInadequate {
                    detail: format!(
                        "xi_max {} exceeds 0.8 pi / dx = {:.3} for sampled data",
                        grid.xi_max, xi_nyq
                    ),
                    suggest_m: grid.m,
                    suggest_xi_max: xi_nyq,
                });
            }
        }

        let coef: Vec<Complex64> = grid.xis().iter().map(|&xi| data.spectrum(xi)).collect();
        let f = Self::new(grid, coef)?;

        // resolution gate: relative spectral mass in the last nodes
        let tail = f.grid.tail_ratio(&f.coef, 8);
        if tail > tols.tail {
            return Err(CoreError::ResolutionInadequate {
                detail: format!("relative spectral tail {tail:.3e} at xi_max = {}", grid.xi_max),
                suggest_m: grid.m,
                suggest_xi_max: data.suggest_xi_max(tols.tail),
            });
        }
        Ok(f)
    }

    /// Limit of the transform at 0+.  The node-0 sample is the estimate
    /// (both value routes produce their best-converged entry there); a
    /// polynomial extrapolation through nodes 1..=q cross-checks it.
    /// Refuses when the two disagree at leading order - the numerical
    /// symptom of data outside the admissible domain (oscillatory blow-up
    /// at 0+).
    pub fn i_plus(&self, q: usize) -> Result<Complex64> {
        let q = q.max(2);
        if self.grid.m < q + 2 {
            return Err(CoreError::InvalidInput("grid too small for i_plus".into()));
        }
        let est = self.coef[0];
        let nev = |lo: usize| {
            let xs: Vec<f64> = (lo..lo + q).map(|i| self.grid.xi(i)).collect();
            let ys: Vec<Complex64> = (lo..lo + q).map(|i| self.coef[i]).collect();
            neville_extrapolate(&xs, &ys, 0.0)
        };
        let (ext1, ext2) = (nev(1), nev(2));
        let scale = (1..=q + 1)
            .map(|i| self.coef[i].norm())
            .fold(est.norm().max(ext1.norm()).max(ext2.norm()), f64::max);
        let gap = (est - ext1).norm().max((ext1 - ext2).norm());
        if gap > 0.5 * scale + 1e-14 {
            return Err(CoreError::EndpointDiverges {
                detail: format!(
                    "endpoint extrapolations scatter by {gap:.3e} (scale {scale:.3e})"
                ),
            });
        }
        Ok(est)
    }

    /// The generator's derivative part: (Gf)^ = i d/dxi f^.  Default order 2
    /// differences biased toward increasing xi; orders 4 and 6 use centered
    /// interiors with matching one-sided closures.
    pub fn apply_g(&self, order: usize) -> Result<Self> {
        let m = self.grid.m;
        let h = self.grid.dxi();
        let mut out = vec![Complex64::ZERO; m];
        let deriv_row = |i: usize| -> (usize, Vec<f64>) {
            match order {
                2 => {
                    if i + 2 < m {
                        (i, fd_weights(&[0.0, 1.0, 2.0], 0.0, 1))
                    } else {
                        (m - 3, fd_weights(&[0.0, 1.0, 2.0], (i - (m - 3)) as f64, 1))
                    }
                }
                4 | 6 => {
                    let half = order / 2;
                    let lo = i.saturating_sub(half).min(m - order - 1);
                    let nodes: Vec<f64> = (0..=order).map(|k| k as f64).collect();
                    (lo, fd_weights(&nodes, (i - lo) as f64, 1))
                }
                _ => panic!("derivative order must be 2, 4 or 6"),
            }
        };
        if !matches!(order, 2 | 4 | 6) {
            return Err(CoreError::InvalidInput(format!(
                "derivative order must be 2, 4 or 6, got {order}"
            )));
        }
        for i in 0..m {
            let (lo, wts) = deriv_row(i);
            let mut acc = Complex64::ZERO;
            for (k, &c) in wts.iter().enumerate() {
                acc += c * self.coef[lo + k];
            }
            out[i] = Complex64::i() * acc / h;
        }
        Self::new(self.grid, out)
    }

    /// Frequency multiplier: (Df)^ = xi f^.
    pub fn apply_d(&self) -> Self {
        let coef = self
            .coef
            .iter()
            .enumerate()
            .map(|(i, c)| c * self.grid.xi(i))
            .collect();
        Self { grid: self.grid, coef }
    }

    /// Resolvent of the derivative generator at z (Im z > 0):
    /// w(xi) = i int_xi^inf f^(eta) e^{i z (eta - xi)} d eta,
    /// cross-checked against the pointwise identity
    /// w(zeta) = (f(zeta) - f(z)) / (zeta - z) at probe points.
    pub fn resolvent_g(&self, z: Complex64, tols: &Tolerances) -> Result<Self> {
        if z.im <= 0.0 {
            return Err(CoreError::NotUpperHalfPlane { z: z.to_string() });
        }
        let cum = cumulative_oscillatory(&self.grid, &self.coef, z);
        let coef: Vec<Complex64> = cum.into_iter().map(|c| Complex64::i() * c).collect();
        let w = Self::new(self.grid, coef)?;

        let f_at_z = self.eval_upper(z)?;
        for probe in [
            z + Complex64::new(0.4, 0.9),
            z + Complex64::new(-0.3, 1.6),
        ] {
            let lhs = w.eval_upper(probe)?;
            let rhs = (self.eval_upper(probe)? - f_at_z) / (probe - z);
            let scale = 1.0 + rhs.norm() + self.norm() / z.im;
            // budget: cubic cell error of the two evaluations plus the
            // kernel's own; an order of magnitude over the target tolerance
            let tol = 30.0 * tols.consistency * scale;
            let err = (lhs - rhs).norm();
            if err > tol {
                return Err(CoreError::Inconsistent {
                    what: format!("resolvent vs pointwise formula at probe {probe}"),
                    err,
                    tol,
                });
            }
        }
        Ok(w)
    }

    /// Evaluate the Hardy representative at z in the upper half-plane:
    /// f(z) = (1/2 pi) int_0^inf f^(xi) e^{i z xi} d xi.
    pub fn eval_upper(&self, z: Complex64) -> Result<Complex64> {
        if z.im <= 0.0 {
            return Err(CoreError::NotUpperHalfPlane { z: z.to_string() });
        }
        let cum = cumulative_oscillatory(&self.grid, &self.coef, z);
        Ok(cum[0] / (2.0 * PI))
    }

    /// Same value by the direct end-corrected sum; returns the discrepancy
    /// between the two routes as a self-diagnostic.
    pub fn eval_upper_checked(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let a = self.eval_upper(z)?;
        let w = self.grid.weights();
        let h = self.grid.dxi();
        let mut acc = Complex64::ZERO;
        for (i, (&c, &wi)) in self.coef.iter().zip(&w).enumerate() {
            acc += wi * c * (Complex64::i() * z * self.grid.xi(i)).exp();
        }
        let b = acc * h / (2.0 * PI);
        Ok((a, (a - b).norm()))
    }
}
