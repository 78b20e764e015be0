use num_complex::Complex64;

use crate::error::{CoreError, Result};

/// End-corrected trapezoidal ("Gregory") weights for m >= 2*len(ends) nodes.
/// order 2 is plain trapezoid; orders 4 and 6 append difference corrections
/// so smooth integrands converge at O(h^order).
pub fn gregory_weights(m: usize, order: usize) -> Vec<f64> {
    let ends: &[f64] = match order {
        2 => &[0.5],
        4 => &[3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0],
        6 => &[
            95.0 / 288.0,
            317.0 / 240.0,
            23.0 / 30.0,
            793.0 / 720.0,
            157.0 / 160.0,
        ],
        _ => panic!("unsupported quadrature order {order}"),
    };
    assert!(m >= 2 * ends.len(), "m = {m} too small for order {order}");
    let mut w = vec![1.0; m];
    for (k, &e) in ends.iter().enumerate() {
        w[k] = e;
        w[m - 1 - k] = e;
    }
    w
}

/// log(1 + w), principal branch, accurate for small |w| where forming 1 + w
/// directly would lose digits.
pub fn log1p_c(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        // w - w^2/2 + w^3/3 - ... truncated where the tail is < 1e-21
        let mut term = w;
        let mut acc = Complex64::ZERO;
        for n in 1..=7 {
            acc += term / n as f64;
            term *= -w;
        }
        acc
    } else {
        (Complex64::new(1.0, 0.0) + w).ln()
    }
}

// 7-15 Gauss-Kronrod pair on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let fp = f(c + h * XGK[j]);
        let fm = f(c - h * XGK[j]);
        kron += WGK[j] * (fp + fm);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (fp + fm);
        }
    }
    let val = kron * h;
    let err = (kron - gauss).norm() * h.abs();
    (val, err)
}

/// Adaptive Gauss-Kronrod on a finite interval.  Returns (value, error
/// estimate); refuses if the tolerance cannot be met within the interval cap.
pub fn adaptive_gk(
    f: &mut dyn FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(Complex64, f64)> {
    const MAX_INTERVALS: usize = 4000;
    let (v0, e0) = gk15(f, a, b);
    // (lo, hi, value, err)
    let mut segs = vec![(a, b, v0, e0)];
    loop {
        let total: Complex64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        let tol = abs_tol.max(rel_tol * total.norm());
        if err <= tol {
            return Ok((total, err));
        }
        if segs.len() >= MAX_INTERVALS {
            return Err(CoreError::Inconsistent {
                what: "adaptive quadrature failed to converge".into(),
                err,
                tol,
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = segs.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (vl, el) = gk15(f, lo, mid);
        let (vr, er) = gk15(f, mid, hi);
        segs.push((lo, mid, vl, el));
        segs.push((mid, hi, vr, er));
    }
}

/// Adaptive quadrature over the whole real line via y = tan(theta).
/// `breaks` are physical-space points the subdivision must respect.
pub fn adaptive_line(
    f: &mut dyn FnMut(f64) -> Complex64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(Complex64, f64)> {
    use std::f64::consts::FRAC_PI_2;
    let mut thetas: Vec<f64> = breaks.iter().map(|y| y.atan()).collect();
    thetas.extend_from_slice(&[-FRAC_PI_2 + 1e-14, -1.0, 0.0, 1.0, FRAC_PI_2 - 1e-14]);
    thetas.sort_by(f64::total_cmp);
    thetas.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    let mut g = |th: f64| {
        let c = th.cos();
        f(th.tan()) / (c * c)
    };
    let mut total = Complex64::ZERO;
    let mut err = 0.0;
    for w in thetas.windows(2) {
        let (v, e) = adaptive_gk(&mut g, w[0], w[1], abs_tol / thetas.len() as f64, rel_tol)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the recurrence).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            let dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, 0.0);
        for j in 0..n {
            let p2 = p1;
            p1 = p0;
            p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
        }
        let dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Finite-difference weights (Fornberg): coefficients c such that
/// f^(der)(x0) ~ sum_i c[i] f(nodes[i]), exact for polynomials of degree
/// < nodes.len().
pub fn fd_weights(nodes: &[f64], x0: f64, der: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(der < n);
    let mut c = vec![vec![0.0; der + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mi = i.min(der);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mi).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mi).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[der]).collect()
}

/// Neville polynomial extrapolation: value at `target` of the interpolant
/// through (xs[i], ys[i]).
pub fn neville_extrapolate(xs: &[f64], ys: &[Complex64], target: f64) -> Complex64 {
    let n = xs.len();
    let mut tab: Vec<Complex64> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (target - xs[i - j]) * tab[i] - (target - xs[i]) * tab[i - 1];
            tab[i] = num / (xs[i] - xs[i - j]);
        }
    }
    tab[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn poly_int(order: usize, deg: usize) -> f64 {
        // integrate x^deg over [0, 1] with m = 21 nodes
        let m = 21;
        let h = 1.0 / (m - 1) as f64;
        let w = gregory_weights(m, order);
        (0..m).map(|i| w[i] * (i as f64 * h).powi(deg as i32)).sum::<f64>() * h
    }

    #[test]
    fn gregory_polynomial_exactness() {
        for deg in 0..=1 {
            assert_abs_diff_eq!(poly_int(2, deg), 1.0 / (deg as f64 + 1.0), epsilon = 1e-14);
        }
        for deg in 0..=3 {
            assert_abs_diff_eq!(poly_int(4, deg), 1.0 / (deg as f64 + 1.0), epsilon = 1e-13);
        }
        for deg in 0..=5 {
            assert_abs_diff_eq!(poly_int(6, deg), 1.0 / (deg as f64 + 1.0), epsilon = 1e-13);
        }
    }

    #[test]
    fn gregory_order_6_convergence() {
        // f = 1/(1+x) on [0,1]: halving h must cut the error by ~2^6
        let f = |x: f64| 1.0 / (1.0 + x);
        let exact = 2.0f64.ln();
        let run = |m: usize| {
            let h = 1.0 / (m - 1) as f64;
            let w = gregory_weights(m, 6);
            (0..m).map(|i| w[i] * f(i as f64 * h)).sum::<f64>() * h - exact
        };
        let e1 = run(41).abs();
        let e2 = run(81).abs();
        let rate = (e1 / e2).log2();
        assert!(rate > 5.5, "observed order {rate}");
    }

    #[test]
    fn gk_adaptive_oscillatory() {
        let mut f = |x: f64| Complex64::new((10.0 * x).cos(), 0.0) * (-x * x).exp();
        let (v, _) = adaptive_gk(&mut f, -8.0, 8.0, 1e-12, 1e-12).unwrap();
        // int cos(10 x) e^{-x^2} = sqrt(pi) e^{-25}
        let exact = std::f64::consts::PI.sqrt() * (-25.0f64).exp();
        assert_abs_diff_eq!(v.re, exact, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn line_quadrature_lorentzian() {
        let mut f = |x: f64| Complex64::new(2.0 / (1.0 + x * x), 0.0);
        let (v, _) = adaptive_line(&mut f, &[], 1e-11, 1e-11).unwrap();
        assert_abs_diff_eq!(v.re, 2.0 * std::f64::consts::PI, epsilon = 1e-9);
    }

    #[test]
    fn gauss_legendre_nodes() {
        let (x, w) = gauss_legendre(5);
        assert_abs_diff_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-14);
        // degree-9 exactness: int x^8 = 2/9
        let v: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(8)).sum();
        assert_abs_diff_eq!(v, 2.0 / 9.0, epsilon = 1e-14);
    }

    #[test]
    fn log1p_small_and_large() {
        let w = Complex64::new(1e-5, 2e-5);
        let exact = (Complex64::new(1.0, 0.0) + w).ln();
        assert!((log1p_c(w) - exact).norm() < 1e-18 + 1e-10 * exact.norm());
        let w2 = Complex64::new(0.5, 1.0);
        assert!((log1p_c(w2) - (Complex64::new(1.5, 1.0)).ln()).norm() < 1e-15);
    }

    #[test]
    fn fd_weights_standard_stencils() {
        // central second-order first derivative
        let w = fd_weights(&[-1.0, 0.0, 1.0], 0.0, 1);
        assert_abs_diff_eq!(w[0], -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(w[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w[2], 0.5, epsilon = 1e-14);
        // one-sided third-order first derivative: (-11/6, 3, -3/2, 1/3)
        let w = fd_weights(&[0.0, 1.0, 2.0, 3.0], 0.0, 1);
        for (got, want) in w.iter().zip([-11.0 / 6.0, 3.0, -1.5, 1.0 / 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }
        // central 7-point sixth-order first derivative edge coefficient
        let w = fd_weights(&[-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0], 0.0, 1);
        assert_abs_diff_eq!(w[0], -1.0 / 60.0, epsilon = 1e-13);
        assert_abs_diff_eq!(w[6], 1.0 / 60.0, epsilon = 1e-13);
        // second derivative central
        let w = fd_weights(&[-1.0, 0.0, 1.0], 0.0, 2);
        for (got, want) in w.iter().zip([1.0, -2.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }
    }

    #[test]
    fn neville_quadratic() {
        let xs = [1.0, 2.0, 3.0];
        let ys: Vec<Complex64> = xs
            .iter()
            .map(|&x| Complex64::new(3.0 * x * x - x + 2.0, 0.0))
            .collect();
        let v = neville_extrapolate(&xs, &ys, 0.0);
        assert_abs_diff_eq!(v.re, 2.0, epsilon = 1e-12);
    }
}
