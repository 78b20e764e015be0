use num_complex::Complex64;

use crate::grid::SpectralGrid;

/// Moments m_k = int_0^1 tau^k e^{q tau} d tau, k = 0..3.  Series below
/// |q| = 0.5 (the closed forms cancel catastrophically there), upward
/// recurrence otherwise.
fn unit_moments(q: Complex64) -> [Complex64; 4] {
    let mut m = [Complex64::ZERO; 4];
    if q.norm() < 0.5 {
        for (k, mk) in m.iter_mut().enumerate() {
            let mut term = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(1.0 / (k as f64 + 1.0), 0.0);
            for j in 1..40 {
                term *= q / j as f64;
                let add = term / (k + j + 1) as f64;
                acc += add;
                if add.norm() < 1e-20 * acc.norm() {
                    break;
                }
            }
            *mk = acc;
        }
    } else {
        let eq = q.exp();
        m[0] = (eq - 1.0) / q;
        for k in 1..4 {
            m[k] = (eq - k as f64 * m[k - 1]) / q;
        }
    }
    m
}

/// Solve a 4x4 linear system in place (partial pivoting); used for the
/// per-pattern interpolation coefficients only.
fn solve4(a: &mut [[f64; 4]; 4], b: &mut [f64; 4]) {
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    for col in (0..4).rev() {
        b[col] /= a[col][col];
        for row in 0..col {
            b[row] -= a[row][col] * b[col];
        }
    }
}

/// Rows of the inverse Vandermonde for cubic interpolation on integer
/// offsets `offs`: coef[k][r] gives b_k = sum_r coef[k][r] g_r with
/// p(o h) = sum_k b_k o^k.
fn cubic_coef(offs: [f64; 4]) -> [[f64; 4]; 4] {
    // b = V^{-1} g with V[i][k] = offs[i]^k; column r of V^{-1} comes from
    // solving V x = e_r
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        let mut v = [[0.0; 4]; 4];
        for i in 0..4 {
            for k in 0..4 {
                v[i][k] = offs[i].powi(k as i32);
            }
        }
        let mut b = [0.0; 4];
        b[r] = 1.0;
        solve4(&mut v, &mut b);
        for k in 0..4 {
            out[k][r] = b[k];
        }
    }
    out
}

/// Cumulative oscillatory integrals on the grid:
///   out[i] = int_{xi_i}^{xi_max} g(eta) e^{i z (eta - xi_i)} d eta,
/// assuming g is negligible beyond the last node.  Exact for g piecewise
/// cubic; the downward recurrence multiplies by e^{i z h} (|.| <= 1 for
/// Im z >= 0), so errors do not accumulate.
pub fn cumulative_oscillatory(
    grid: &SpectralGrid,
    g: &[Complex64],
    z: Complex64,
) -> Vec<Complex64> {
    let m = grid.m;
    assert_eq!(g.len(), m);
    assert!(m >= 4);
    let h = grid.dxi();
    let q = Complex64::i() * z * h;
    let mm = unit_moments(q);
    let phase = q.exp(); // e^{i z h}

    let interior = cubic_coef([-1.0, 0.0, 1.0, 2.0]);
    let left = cubic_coef([0.0, 1.0, 2.0, 3.0]);
    let right = cubic_coef([-2.0, -1.0, 0.0, 1.0]);

    let mut out = vec![Complex64::ZERO; m];
    for i in (0..m - 1).rev() {
        let (coef, base) = if i == 0 {
            (&left, 0usize)
        } else if i >= m - 2 {
            (&right, m - 4)
        } else {
            (&interior, i - 1)
        };
        let mut cell = Complex64::ZERO;
        for k in 0..4 {
            let mut bk = Complex64::ZERO;
            for r in 0..4 {
                bk += coef[k][r] * g[base + r];
            }
            cell += bk * mm[k];
        }
        // p(s) was built in units of h around xi_i: shift so tau = 0 at xi_i
        // handled by choosing offsets relative to i (base + r - i = offset)
        out[i] = cell * h + phase * out[i + 1];
    }
    out
}
