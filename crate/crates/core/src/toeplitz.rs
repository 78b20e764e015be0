use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::family::InitialData;
use crate::grid::SpectralGrid;
use crate::hardy::HardyFunction;
use crate::quad::fd_weights;
use crate::Tolerances;

/// Stencil (start index, scaled weights) estimating the der-th derivative at
/// node i: der+2 nodes give 2nd-order one-sided closures at the edges while
/// the interior weights are effectively centered.
fn band_stencil(m: usize, h: f64, i: usize, der: usize) -> (i64, Vec<f64>) {
    let n = der + 2;
    let lo = (i as i64 - (n as i64 - 1) / 2).clamp(0, m as i64 - n as i64);
    let nodes: Vec<f64> = (0..n).map(|r| (lo + r as i64 - i as i64) as f64).collect();
    let w = fd_weights(&nodes, 0.0, der);
    (lo, w.iter().map(|v| v / h.powi(der as i32)).collect())
}

/// Discretized Toeplitz operator f -> Pi(b f) on the nonnegative-frequency
/// grid: row i is the quadrature (dxi/2pi) sum_j w_j c(xi_i - xi_j) f_j plus
/// an Euler-Maclaurin band correcting the kernel's derivative jumps at
/// zeta = 0 (heavy-tailed data has a |zeta|-type kink there; for smooth
/// symbols the estimated jumps vanish and the band is inert).
///
/// With the same weights w_j defining the discrete inner product, the
/// uncorrected part is exactly self-adjoint for real data.
pub struct ToeplitzSymbol {
    pub grid: SpectralGrid,
    /// symbol samples at zeta = k dxi, k = -(m-1)..=(m-1); index k + m - 1
    pub c: Vec<Complex64>,
    /// estimated jumps [c'], [c''], [c'''] across zeta = 0
    pub jumps: [Complex64; 3],
    /// kink-correction rows, already scaled by 1/2pi and symmetrized in the
    /// weighted inner product (entries (col, value))
    band: Vec<Vec<(usize, Complex64)>>,
    kernel_fft: Vec<Complex64>,
    fft_len: usize,
    fwd: Arc<dyn rustfft::Fft<f64>>,
    inv: Arc<dyn rustfft::Fft<f64>>,
}

impl ToeplitzSymbol {
    pub fn from_data(data: &InitialData, grid: SpectralGrid, tols: &Tolerances) -> Result<Self> {
        let m = grid.m;
        let h = grid.dxi();
        let c: Vec<Complex64> = (0..2 * m - 1)
            .map(|idx| {
                let k = idx as i64 - (m as i64 - 1);
                data.spectrum(k as f64 * h)
            })
            .collect();
        Self::from_samples(grid, c, tols)
    }

    /// `c` holds symbol samples on the doubled grid (length 2m - 1).
    pub fn from_samples(
        grid: SpectralGrid,
        c: Vec<Complex64>,
        tols: &Tolerances,
    ) -> Result<Self> {
        let m = grid.m;
        if c.len() != 2 * m - 1 {
            return Err(CoreError::InvalidInput(format!(
                "symbol table length {} != 2m-1 = {}",
                c.len(),
                2 * m - 1
            )));
        }
        // aliasing gate: the symbol must have decayed by the table edge,
        // otherwise differences xi_i - xi_j wrap unmet spectral content
        let peak = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let edge = c[..8]
            .iter()
            .chain(&c[2 * m - 9..])
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if peak > 0.0 && edge / peak > tols.tail {
            return Err(CoreError::ResolutionInadequate {
                detail: format!(
                    "symbol tail {:.3e} of peak at |zeta| = xi_max: aliasing risk",
                    edge / peak
                ),
                suggest_m: (m * 2).min(crate::grid::M_CAP),
                suggest_xi_max: grid.xi_max * 2.0,
            });
        }

        let h = grid.dxi();
        let at = |k: i64| c[(k + m as i64 - 1) as usize];
        // one-sided derivative estimates on each side of zeta = 0; cubic
        // (resp. quartic) fits keep the estimates O(h^3..h^2) accurate for a
        // true kink and O(h^p)-null for smooth symbols
        let sided = |der: usize, nn: usize, sign: f64| -> Complex64 {
            let nodes: Vec<f64> = (0..nn).map(|r| sign * r as f64).collect();
            let w = fd_weights(&nodes, 0.0, der);
            let mut acc = Complex64::ZERO;
            for (r, &wr) in w.iter().enumerate() {
                acc += wr * at(sign as i64 * r as i64);
            }
            acc / h.powi(der as i32)
        };
        let jumps = [
            sided(1, 5, 1.0) - sided(1, 5, -1.0),
            sided(2, 6, 1.0) - sided(2, 6, -1.0),
            sided(3, 7, 1.0) - sided(3, 7, -1.0),
        ];

        // Euler-Maclaurin correction for the kernel kink at xi_i - xi_j = 0:
        // (h^2/12)[c'] f_i - (h^4/720)([c'''] f_i - 3[c''] f'_i + 3[c'] f''_i),
        // with f', f'' replaced by 2nd-order stencils.  Assembled sparse and
        // symmetrized under the weighted inner product: for real data the
        // interior is already Hermitian (conjugate symmetry of the symbol
        // makes [c'], [c'''] real and [c''] imaginary), so the averaging only
        // repairs the one-sided corner stencils.
        let wts = grid.weights();
        let pref2 = h * h / 12.0 / (2.0 * PI);
        let pref4 = h.powi(4) / 720.0 / (2.0 * PI);
        let mut raw = std::collections::HashMap::<(usize, usize), Complex64>::new();
        for i in 0..m {
            *raw.entry((i, i)).or_insert(Complex64::ZERO) += pref2 * jumps[0] - pref4 * jumps[2];
            let (l1, s1) = band_stencil(m, h, i, 1);
            for (r, &wr) in s1.iter().enumerate() {
                *raw.entry((i, l1 as usize + r)).or_insert(Complex64::ZERO) +=
                    pref4 * 3.0 * jumps[1] * wr;
            }
            let (l2, s2) = band_stencil(m, h, i, 2);
            for (r, &wr) in s2.iter().enumerate() {
                *raw.entry((i, l2 as usize + r)).or_insert(Complex64::ZERO) -=
                    pref4 * 3.0 * jumps[0] * wr;
            }
        }
        let keys: std::collections::HashSet<(usize, usize)> = raw
            .keys()
            .flat_map(|&(i, j)| [(i, j), (j, i)])
            .collect();
        let mut band: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); m];
        for &(i, j) in &keys {
            let v = raw.get(&(i, j)).copied().unwrap_or(Complex64::ZERO);
            let vt = raw.get(&(j, i)).copied().unwrap_or(Complex64::ZERO);
            let sym = 0.5 * (v + vt.conj() * wts[j] / wts[i]);
            if sym != Complex64::ZERO {
                band[i].push((j, sym));
            }
        }
        for row in &mut band {
            row.sort_by_key(|&(j, _)| j);
        }

        // linear convolution via circular embedding: length >= 2m-1
        let fft_len = (2 * m).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(fft_len);
        let inv = planner.plan_fft_inverse(fft_len);
        let mut kb = vec![Complex64::ZERO; fft_len];
        for k in -(m as i64 - 1)..=(m as i64 - 1) {
            kb[((k + fft_len as i64) % fft_len as i64) as usize] = at(k);
        }
        fwd.process(&mut kb);

        Ok(Self {
            grid,
            c,
            jumps,
            band,
            kernel_fft: kb,
            fft_len,
            fwd,
            inv,
        })
    }

    #[inline]
    fn at(&self, k: i64) -> Complex64 {
        self.c[(k + self.grid.m as i64 - 1) as usize]
    }

    /// Apply by FFT convolution plus the correction band: O(m log m).
    pub fn apply(&self, f: &HardyFunction) -> Result<HardyFunction> {
        if f.grid != self.grid {
            return Err(CoreError::InvalidInput(
                "toeplitz apply: grid mismatch".into(),
            ));
        }
        let m = self.grid.m;
        let h = self.grid.dxi();
        let w = self.grid.weights();
        let mut buf = vec![Complex64::ZERO; self.fft_len];
        for j in 0..m {
            buf[j] = w[j] * f.coef[j];
        }
        self.fwd.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_fft) {
            *b *= k;
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / self.fft_len as f64;
        let pref = h / (2.0 * PI);
        let mut out = vec![Complex64::ZERO; m];
        for i in 0..m {
            let mut corr = Complex64::ZERO;
            for &(j, v) in &self.band[i] {
                corr += v * f.coef[j];
            }
            out[i] = pref * buf[i] * scale + corr;
        }
        HardyFunction::new(self.grid, out)
    }

    /// Materialize the dense matrix (for generator assembly).
    pub fn dense(&self) -> faer::Mat<Complex64> {
        let m = self.grid.m;
        let h = self.grid.dxi();
        let w = self.grid.weights();
        let pref = h / (2.0 * PI);
        let mut a = faer::Mat::<Complex64>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                a[(i, j)] = pref * w[j] * self.at(i as i64 - j as i64);
            }
        }
        for i in 0..m {
            for &(j, v) in &self.band[i] {
                a[(i, j)] += v;
            }
        }
        a
    }

    /// Relative departure from weighted-inner-product Hermiticity, measured
    /// on the dense form: || W T - T^H W ||_F / || W T ||_F.
    pub fn hermitian_gap(&self) -> f64 {
        let a = self.dense();
        let m = self.grid.m;
        let w = self.grid.weights();
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let wt = w[i] * a[(i, j)];
                let tw = (w[j] * a[(j, i)]).conj();
                num += (wt - tw).norm_sqr();
                den += wt.norm_sqr();
            }
        }
        if den == 0.0 {
            0.0
        } else {
            (num / den).sqrt()
        }
    }
}
