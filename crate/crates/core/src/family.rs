use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{CoreError, Result};
use crate::quad::adaptive_line;

/// A spike-train bump: gaussian of height h and width sigma centered at +-c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub c: f64,
    pub h: f64,
    pub sigma: f64,
}

/// Initial data u0.  Built-in families carry closed-form one-sided spectra
/// (windowed quadrature cannot reach the required tolerances for heavy
/// tails); sampled data falls back to quadrature with explicit gates.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// a * exp(-(x/sigma)^2)
    Gaussian { a: f64, sigma: f64 },
    /// a / (1 + x^2)
    Lorentzian { a: f64 },
    /// a * sech(x/w)^2
    Sech2 { a: f64, w: f64 },
    /// sum_k a_k / (1 + (x - c_k)^2)
    RationalSum { terms: Vec<(f64, f64)> },
    /// bumps at +-base^n, heights base^{n/2} (sublinear, unbounded ideal
    /// train), widths 0.15 * base^{-decay (n-1)}; truncated where the bump
    /// mass drops below 1e-30
    SpikeTrain { base: f64, decay: f64, bumps: Vec<Bump> },
    /// same carrier with heights amp * base^n: genuinely linear growth,
    /// admissible only on a finite time window
    LinearSpikes { base: f64, amp: f64, bumps: Vec<Bump> },
    /// equally spaced samples (x0 + j dx, u_j)
    Custom { x0: f64, dx: f64, u: Vec<f64> },
}

fn spike_bumps(base: f64, decay: f64, height: impl Fn(f64) -> f64) -> Vec<Bump> {
    let mut out = Vec::new();
    for n in 1..=24 {
        let c = base.powi(n);
        let h = height(c);
        let sigma = 0.15 * base.powf(-decay * (n - 1) as f64);
        if !(c.is_finite() && h.is_finite()) || h * sigma < 1e-30 {
            break;
        }
        out.push(Bump { c, h, sigma });
    }
    out
}

impl InitialData {
    pub fn gaussian(a: f64, sigma: f64) -> Self {
        InitialData::Gaussian { a, sigma }
    }
    pub fn lorentzian(a: f64) -> Self {
        InitialData::Lorentzian { a }
    }
    pub fn sech2(a: f64, w: f64) -> Self {
        InitialData::Sech2 { a, w }
    }
    pub fn rational_sum(terms: Vec<(f64, f64)>) -> Self {
        InitialData::RationalSum { terms }
    }
    pub fn spike_train(base: f64, decay: f64) -> Result<Self> {
        if base < 2.0 || decay < 0.0 {
            return Err(CoreError::InvalidInput(format!(
                "spike_train needs base >= 2 and decay >= 0, got ({base}, {decay})"
            )));
        }
        let bumps = spike_bumps(base, decay, |c| c.sqrt());
        Ok(InitialData::SpikeTrain { base, decay, bumps })
    }
    pub fn linear_spikes(base: f64, amp: f64) -> Result<Self> {
        if base < 2.0 || amp <= 0.0 {
            return Err(CoreError::InvalidInput(format!(
                "linear_spikes needs base >= 2 and amp > 0, got ({base}, {amp})"
            )));
        }
        // fixed carrier decay 9, matching spike_train's resolvable instance
        let bumps = spike_bumps(base, 9.0, |c| amp * c);
        Ok(InitialData::LinearSpikes { base, amp, bumps })
    }
    pub fn custom(x0: f64, dx: f64, u: Vec<f64>) -> Result<Self> {
        if u.len() < 16 || !(dx > 0.0) {
            return Err(CoreError::InvalidInput(
                "custom data needs >= 16 equally spaced samples".into(),
            ));
        }
        Ok(InitialData::Custom { x0, dx, u })
    }

    /// Construct a registry family by name, as exposed in configs.
    pub fn from_registry(name: &str, params: &[f64]) -> Result<Self> {
        let need = |k: usize| -> Result<()> {
            if params.len() != k {
                Err(CoreError::InvalidInput(format!(
                    "family '{name}' takes {k} parameter(s), got {}",
                    params.len()
                )))
            } else {
                Ok(())
            }
        };
        match name {
            "gaussian" => {
                need(2)?;
                Ok(Self::gaussian(params[0], params[1]))
            }
            "lorentzian" => {
                need(1)?;
                Ok(Self::lorentzian(params[0]))
            }
            "sech2" => {
                need(2)?;
                Ok(Self::sech2(params[0], params[1]))
            }
            "rational" => {
                if params.is_empty() || params.len() % 2 != 0 {
                    return Err(CoreError::InvalidInput(
                        "family 'rational' takes pairs (a_k, c_k)".into(),
                    ));
                }
                Ok(Self::rational_sum(
                    params.chunks(2).map(|p| (p[0], p[1])).collect(),
                ))
            }
            "spike_train" => {
                need(2)?;
                Self::spike_train(params[0], params[1])
            }
            "linear_spikes" => {
                need(2)?;
                Self::linear_spikes(params[0], params[1])
            }
            _ => Err(CoreError::InvalidInput(format!("unknown family '{name}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InitialData::Gaussian { .. } => "gaussian",
            InitialData::Lorentzian { .. } => "lorentzian",
            InitialData::Sech2 { .. } => "sech2",
            InitialData::RationalSum { .. } => "rational",
            InitialData::SpikeTrain { .. } => "spike_train",
            InitialData::LinearSpikes { .. } => "linear_spikes",
            InitialData::Custom { .. } => "custom",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialData::Gaussian { a, sigma } => a * (-(x / sigma).powi(2)).exp(),
            InitialData::Lorentzian { a } => a / (1.0 + x * x),
            InitialData::Sech2 { a, w } => {
                let s = 1.0 / (x / w).cosh();
                a * s * s
            }
            InitialData::RationalSum { terms } => terms
                .iter()
                .map(|&(a, c)| a / (1.0 + (x - c) * (x - c)))
                .sum(),
            InitialData::SpikeTrain { bumps, .. } | InitialData::LinearSpikes { bumps, .. } => {
                bumps
                    .iter()
                    .map(|b| {
                        b.h * ((-((x - b.c) / b.sigma).powi(2)).exp()
                            + (-((x + b.c) / b.sigma).powi(2)).exp())
                    })
                    .sum()
            }
            InitialData::Custom { x0, dx, u } => {
                // local cubic interpolation, zero outside the sample window
                let s = (x - x0) / dx;
                if s < 0.0 || s > (u.len() - 1) as f64 {
                    return 0.0;
                }
                let i = (s.floor() as usize).clamp(1, u.len() - 3);
                let t = s - i as f64;
                let (um1, u0, u1, u2) = (u[i - 1], u[i], u[i + 1], u[i + 2]);
                // Catmull-Rom form of the interpolating cubic
                u0 + 0.5
                    * t
                    * (u1 - um1
                        + t * (2.0 * um1 - 5.0 * u0 + 4.0 * u1 - u2
                            + t * (3.0 * (u0 - u1) + u2 - um1)))
            }
        }
    }

    pub fn deriv(&self, x: f64) -> f64 {
        match self {
            InitialData::Gaussian { a, sigma } => {
                -2.0 * x / (sigma * sigma) * a * (-(x / sigma).powi(2)).exp()
            }
            InitialData::Lorentzian { a } => -2.0 * a * x / (1.0 + x * x).powi(2),
            InitialData::Sech2 { a, w } => {
                let s = 1.0 / (x / w).cosh();
                -2.0 * a / w * s * s * (x / w).tanh()
            }
            InitialData::RationalSum { terms } => terms
                .iter()
                .map(|&(a, c)| -2.0 * a * (x - c) / (1.0 + (x - c) * (x - c)).powi(2))
                .sum(),
            InitialData::SpikeTrain { bumps, .. } | InitialData::LinearSpikes { bumps, .. } => {
                bumps
                    .iter()
                    .map(|b| {
                        let dm = (x - b.c) / b.sigma;
                        let dp = (x + b.c) / b.sigma;
                        b.h / b.sigma
                            * (-2.0 * dm * (-dm * dm).exp() - 2.0 * dp * (-dp * dp).exp())
                    })
                    .sum()
            }
            InitialData::Custom { dx, .. } => {
                let h = *dx;
                (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
            }
        }
    }

    /// One-sided Fourier transform u0_hat(xi) = int u0(x) e^{-i xi x} dx for
    /// xi >= 0; negative arguments go through the real-data mirror
    /// u0_hat(-xi) = conj(u0_hat(xi)).
    pub fn spectrum(&self, xi: f64) -> Complex64 {
        if xi < 0.0 {
            return self.spectrum(-xi).conj();
        }
        match self {
            InitialData::Gaussian { a, sigma } => Complex64::new(
                a * sigma * PI.sqrt() * (-(sigma * xi / 2.0).powi(2)).exp(),
                0.0,
            ),
            InitialData::Lorentzian { a } => Complex64::new(a * PI * (-xi).exp(), 0.0),
            InitialData::Sech2 { a, w } => {
                let s = PI * w * xi / 2.0;
                let v = if s.abs() < 1e-4 {
                    2.0 * a * w * (1.0 - s * s / 6.0)
                } else {
                    a * PI * w * w * xi / s.sinh()
                };
                Complex64::new(v, 0.0)
            }
            InitialData::RationalSum { terms } => terms
                .iter()
                .map(|&(a, c)| Complex64::from_polar(a * PI * (-xi).exp(), -c * xi))
                .sum(),
            InitialData::SpikeTrain { bumps, .. } | InitialData::LinearSpikes { bumps, .. } => {
                bumps
                    .iter()
                    .map(|b| {
                        Complex64::new(
                            b.h * b.sigma
                                * PI.sqrt()
                                * (-(b.sigma * xi / 2.0).powi(2)).exp()
                                * 2.0
                                * (b.c * xi).cos(),
                            0.0,
                        )
                    })
                    .sum()
            }
            InitialData::Custom { x0, dx, u } => {
                // windowed end-corrected quadrature of the defining integral
                let w = crate::quad::gregory_weights(u.len(), 6);
                let mut acc = Complex64::ZERO;
                for (j, (&uj, &wj)) in u.iter().zip(&w).enumerate() {
                    let x = x0 + j as f64 * dx;
                    acc += wj * uj * Complex64::from_polar(1.0, -xi * x);
                }
                acc * *dx
            }
        }
    }

    /// Whether u0 is bounded (the ideal class, not the truncated instance).
    pub fn bounded(&self) -> bool {
        !matches!(
            self,
            InitialData::SpikeTrain { .. } | InitialData::LinearSpikes { .. }
        )
    }

    /// Whether u0 is C^1 with decaying derivative: the admissibility class
    /// for characteristic/branch evaluation.
    pub fn c1_decay(&self) -> bool {
        self.bounded()
    }

    /// sup |u0(x)| / <x>: finite for every registry family; the evolution
    /// formulas for unbounded data are valid only for |t| < 1/(2 C).
    pub fn growth_const(&self) -> f64 {
        match self {
            InitialData::LinearSpikes { amp, .. } => *amp,
            InitialData::SpikeTrain { base, .. } => {
                // heights c^{1/2}: ratio c^{1/2}/<c> maximal at the first bump
                let c = *base;
                c.sqrt() / (1.0 + c * c).sqrt()
            }
            _ => {
                let sup = self.sup_abs();
                let mut best: f64 = 0.0;
                for k in -400..=400 {
                    let x = k as f64 / 20.0;
                    best = best.max(self.eval(x).abs() / (1.0 + x * x).sqrt());
                }
                best.max(sup * 0.0)
            }
        }
    }

    /// sup |u0| of the concrete instance (finite after truncation).
    pub fn sup_abs(&self) -> f64 {
        match self {
            InitialData::Gaussian { a, .. } => a.abs(),
            InitialData::Lorentzian { a } => a.abs(),
            InitialData::Sech2 { a, .. } => a.abs(),
            InitialData::SpikeTrain { bumps, .. } | InitialData::LinearSpikes { bumps, .. } => {
                bumps.iter().map(|b| b.h).fold(0.0, f64::max)
            }
            InitialData::RationalSum { .. } | InitialData::Custom { .. } => {
                let mut best: f64 = 0.0;
                for x in self.scan_points(4000) {
                    best = best.max(self.eval(x).abs());
                }
                best
            }
        }
    }

    /// max |u0'|: Lipschitz bound used by root scans and critical times.
    pub fn lipschitz(&self) -> f64 {
        let mut best: f64 = 0.0;
        for x in self.scan_points(8000) {
            best = best.max(self.deriv(x).abs());
        }
        best
    }

    /// Points where the data lives: quadrature breakpoints and scan centers.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            InitialData::Gaussian { sigma, .. } => vec![-3.0 * sigma, 0.0, 3.0 * sigma],
            InitialData::Lorentzian { .. } => vec![-4.0, -1.0, 0.0, 1.0, 4.0],
            InitialData::Sech2 { w, .. } => vec![-4.0 * w, 0.0, 4.0 * w],
            InitialData::RationalSum { terms } => {
                let mut v: Vec<f64> = terms
                    .iter()
                    .flat_map(|&(_, c)| [c - 2.0, c, c + 2.0])
                    .collect();
                v.sort_by(f64::total_cmp);
                v
            }
            InitialData::SpikeTrain { bumps, .. } | InitialData::LinearSpikes { bumps, .. } => {
                let mut v = Vec::new();
                for b in bumps {
                    for s in [-1.0, 1.0] {
                        v.extend([
                            s * b.c - 8.0 * b.sigma,
                            s * b.c,
                            s * b.c + 8.0 * b.sigma,
                        ]);
                    }
                }
                v.sort_by(f64::total_cmp);
                v
            }
            InitialData::Custom { x0, dx, u } => {
                vec![*x0, x0 + dx * (u.len() - 1) as f64 / 2.0, x0 + dx * (u.len() - 1) as f64]
            }
        }
    }

    pub(crate) fn scan_points(&self, n: usize) -> Vec<f64> {
        let bps = self.breakpoints();
        let lo = bps.first().copied().unwrap_or(-10.0) - 2.0;
        let hi = bps.last().copied().unwrap_or(10.0) + 2.0;
        // cover each bump neighborhood on its own scale as well
        let mut pts: Vec<f64> = (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect();
        if let InitialData::SpikeTrain { bumps, .. } | InitialData::LinearSpikes { bumps, .. } =
            self
        {
            for b in bumps {
                for k in -60..=60 {
                    let d = k as f64 / 12.0 * b.sigma * 4.0;
                    pts.push(b.c + d);
                    pts.push(-b.c + d);
                }
            }
        }
        pts
    }

    /// ||u0||_{L^2}.
    pub fn l2_norm(&self) -> f64 {
        let mut f = |x: f64| Complex64::new(self.eval(x).powi(2), 0.0);
        let (v, _) = adaptive_line(&mut f, &self.breakpoints(), 1e-12, 1e-10)
            .expect("L2 norm quadrature");
        v.re.max(0.0).sqrt()
    }

    /// Mass fraction of u0^2 outside |x| <= x_window.
    pub fn window_tail_ratio(&self, x_window: f64) -> f64 {
        let total = self.l2_norm().powi(2);
        if total == 0.0 {
            return 0.0;
        }
        let bps: Vec<f64> = self
            .breakpoints()
            .into_iter()
            .filter(|&b| b.abs() > x_window)
            .collect();
        let mut f = |x: f64| {
            if x.abs() > x_window {
                Complex64::new(self.eval(x).powi(2), 0.0)
            } else {
                Complex64::ZERO
            }
        };
        let (v, _) = adaptive_line(&mut f, &bps, 1e-14, 1e-8).unwrap_or((Complex64::ZERO, 0.0));
        (v.re.max(0.0) / total).sqrt()
    }

    /// Smallest xi_max with relative spectral tail below tail_tol.
    pub fn suggest_xi_max(&self, tail_tol: f64) -> f64 {
        let peak = self.spectrum(0.0).norm().max(1e-300);
        let mut xi = 4.0;
        while xi < 4096.0 {
            if self.spectrum(xi).norm() / peak < tail_tol * 1e-2 {
                return xi;
            }
            xi *= 1.25;
        }
        4096.0
    }
}
