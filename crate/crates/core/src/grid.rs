use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::quad::gregory_weights;

pub const M_MIN: usize = 64;
/// Dense operator assembly above this size would exceed the memory budget.
pub const M_CAP: usize = 4096;

/// Uniform one-sided frequency grid xi_i = i * dxi on [0, xi_max], m nodes
/// (the last node sits at xi_max - dxi so that dxi = xi_max / m; the symbol
/// and all integrands are required to be negligible beyond xi_max).
///
/// All norms and inner products on sampled spectra use the end-corrected
/// quadrature weights of `order`, so the discrete space is a weighted l^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    pub xi_max: f64,
    pub m: usize,
    pub order: usize,
}

impl SpectralGrid {
    pub fn new(xi_max: f64, m: usize) -> Result<Self> {
        Self::with_order(xi_max, m, 6)
    }

    pub fn with_order(xi_max: f64, m: usize, order: usize) -> Result<Self> {
        if !(xi_max.is_finite() && xi_max > 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "xi_max must be positive, got {xi_max}"
            )));
        }
        if m < M_MIN {
            return Err(CoreError::InvalidInput(format!(
                "m = {m} below minimum {M_MIN}"
            )));
        }
        if !matches!(order, 2 | 4 | 6) {
            return Err(CoreError::InvalidInput(format!(
                "quadrature order must be 2, 4 or 6, got {order}"
            )));
        }
        Ok(Self { xi_max, m, order })
    }

    #[inline]
    pub fn dxi(&self) -> f64 {
        self.xi_max / self.m as f64
    }

    #[inline]
    pub fn xi(&self, i: usize) -> f64 {
        i as f64 * self.dxi()
    }

    pub fn xis(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.xi(i)).collect()
    }

    /// Quadrature weights (dimensionless; multiply by dxi for the measure).
    pub fn weights(&self) -> Vec<f64> {
        gregory_weights(self.m, self.order)
    }

    /// <f, g> = (dxi / 2 pi) sum_j w_j f_j conj(g_j): the sampled version of
    /// the normalized Parseval pairing (1/2 pi) int f gbar.
    pub fn dot(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        debug_assert_eq!(f.len(), self.m);
        debug_assert_eq!(g.len(), self.m);
        let w = self.weights();
        let mut acc = Complex64::ZERO;
        for j in 0..self.m {
            acc += w[j] * f[j] * g[j].conj();
        }
        acc * (self.dxi() / (2.0 * std::f64::consts::PI))
    }

    pub fn norm(&self, f: &[Complex64]) -> f64 {
        self.dot(f, f).re.max(0.0).sqrt()
    }

    /// Relative L^2 mass of the last `k` nodes; the resolution gate.
    pub fn tail_ratio(&self, f: &[Complex64], k: usize) -> f64 {
        let w = self.weights();
        let total: f64 = (0..self.m).map(|j| w[j] * f[j].norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let start = self.m.saturating_sub(k);
        let tail: f64 = (start..self.m).map(|j| w[j] * f[j].norm_sqr()).sum();
        (tail / total).sqrt()
    }
}

/// Periodic physical grid for the PDE solver: x_j = -l + j * dx on [-l, l),
/// n points, dx = 2 l / n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxGrid {
    pub l: f64,
    pub n: usize,
}

impl BoxGrid {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(CoreError::InvalidInput(format!("box half-width {l}")));
        }
        if !n.is_power_of_two() || n < 16 {
            return Err(CoreError::InvalidInput(format!(
                "n_modes must be a power of two >= 16, got {n}"
            )));
        }
        Ok(Self { l, n })
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    #[inline]
    pub fn x(&self, j: usize) -> f64 {
        -self.l + j as f64 * self.dx()
    }

    /// Signed wavenumber of FFT bin j (pi/l spacing, standard wraparound).
    #[inline]
    pub fn k(&self, j: usize) -> f64 {
        let half = self.n / 2;
        let idx = if j < half { j as i64 } else { j as i64 - self.n as i64 };
        idx as f64 * std::f64::consts::PI / self.l
    }
}
