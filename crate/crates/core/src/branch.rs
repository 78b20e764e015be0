use crate::error::{CoreError, Result};
use crate::family::InitialData;
use crate::Tolerances;

/// Characteristic map phi(y) = y + 2 t u0(y); x-values where it folds.
fn phi(data: &InitialData, t: f64, y: f64) -> f64 {
    y + 2.0 * t * data.eval(y)
}

fn dphi(data: &InitialData, t: f64, y: f64) -> f64 {
    1.0 + 2.0 * t * data.deriv(y)
}

/// Smallest |t| at which the characteristic map develops a fold for either
/// time direction: 1 / (2 max|u0'|), infinite for constant data.  Positive t
/// folds where u0 decreases, negative t where it increases, so the two-sided
/// bound uses the absolute slope.
pub fn first_critical_time(data: &InitialData) -> f64 {
    let mut worst = 0.0f64;
    let mut best_y = 0.0;
    for y in data.scan_points(20000) {
        let d = data.deriv(y).abs();
        if d > worst {
            worst = d;
            best_y = y;
        }
    }
    // polish the steepest point with a golden bracket
    let scale = 1e-3 * (1.0 + best_y.abs());
    let (mut a, mut b) = (best_y - scale, best_y + scale);
    for _ in 0..80 {
        let p = a + (b - a) / 3.0;
        let q = b - (b - a) / 3.0;
        if data.deriv(p).abs() < data.deriv(q).abs() {
            a = p;
        } else {
            b = q;
        }
    }
    worst = worst.max(data.deriv(0.5 * (a + b)).abs());
    if worst <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / (2.0 * worst)
    }
}

/// All real solutions of f(y) = 0 located by sign scanning `grid` (ascending)
/// and bisection refinement.
pub fn scan_roots(f: &dyn Fn(f64) -> f64, grid: &[f64], root_tol: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &y in grid {
        let v = f(y);
        if v == 0.0 {
            roots.push(y);
            prev = None;
            continue;
        }
        if let Some((py, pv)) = prev {
            if pv.signum() != v.signum() {
                let (mut a, mut b, mut fa) = (py, y, pv);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if b - a < root_tol * (1.0 + m.abs()) {
                        break;
                    }
                    let fm = f(m);
                    if fm == 0.0 {
                        a = m;
                        b = m;
                        break;
                    }
                    if fa.signum() == fm.signum() {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                roots.push(0.5 * (a + b));
            }
        }
        prev = Some((y, v));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 10.0 * root_tol * (1.0 + a.abs()));
    roots
}

/// Scan grid for the characteristic map: uniform spacing bounded by the
/// map's Lipschitz data plus the family's own feature points.
fn char_scan_grid(data: &InitialData, t: f64, window: (f64, f64)) -> Vec<f64> {
    let (lo, hi) = window;
    let lip = data.lipschitz();
    let spacing = (1.0 / (1.0 + 2.0 * t.abs() * lip)).min(1.0) / 4.0;
    let n = (((hi - lo) / spacing).ceil() as usize).clamp(16, 2_000_000);
    let mut g: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    g.extend(data.scan_points(4000).into_iter().filter(|y| (lo..=hi).contains(y)));
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| *a == *b);
    g
}

/// The fold set of the characteristic map at time t: critical points, their
/// x-images (the critical values — a measure-zero set), and small covering
/// intervals around each, with the tolerance band used when refusing
/// branch-sum evaluations nearby.  Between critical values the preimage
/// count is locally constant and the alternating sum is well defined, so
/// only these neighbourhoods are excluded.
#[derive(Debug, Clone)]
pub struct CriticalSet {
    pub t: f64,
    pub crit_y: Vec<f64>,
    pub crit_x: Vec<f64>,
    pub intervals: Vec<(f64, f64)>,
    pub inflate: f64,
}

impl CriticalSet {
    /// Is x inside (or within the tolerance band of) a covering interval?
    pub fn contains(&self, x: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(a, b)| x >= a - self.inflate && x <= b + self.inflate)
    }
}

pub fn critical_set(data: &InitialData, t: f64, tols: &Tolerances) -> Result<CriticalSet> {
    let bps = data.breakpoints();
    let margin = 2.0 + 2.0 * t.abs() * data.sup_abs();
    let window = (
        bps.first().copied().unwrap_or(-8.0) - margin,
        bps.last().copied().unwrap_or(8.0) + margin,
    );
    let grid = char_scan_grid(data, t, window);
    let f = |y: f64| dphi(data, t, y);
    let mut crit_y = scan_roots(&f, &grid, tols.root);
    // tangential folds: grid-local minima of |phi'| that dip below noise
    for w in grid.windows(3) {
        let (a, b, c) = (f(w[0]), f(w[1]), f(w[2]));
        if b.abs() < 1e-9 && b.abs() <= a.abs() && b.abs() <= c.abs() {
            crit_y.push(w[1]);
        }
    }
    crit_y.sort_by(f64::total_cmp);
    crit_y.dedup_by(|a, b| (*a - *b).abs() < 1e-8 * (1.0 + a.abs()));
    let mut crit_x: Vec<f64> = crit_y.iter().map(|&y| phi(data, t, y)).collect();
    crit_x.sort_by(f64::total_cmp);
    let inflate = 1e-3 * (1.0 + t.abs());

    // cover each critical value by [x_c - inflate, x_c + inflate], merging
    // overlaps; the set itself has measure zero and cannot be resolved
    // beyond the scan/root tolerance anyway
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for &xc in &crit_x {
        let (a, b) = (xc - inflate, xc + inflate);
        match intervals.last_mut() {
            Some(last) if last.1 >= a => last.1 = b,
            _ => intervals.push((a, b)),
        }
    }
    Ok(CriticalSet {
        t,
        crit_y,
        crit_x,
        intervals,
        inflate,
    })
}

/// Ascending real preimages of x under the characteristic map.
pub fn branch_roots(data: &InitialData, t: f64, x: f64, tols: &Tolerances) -> Vec<f64> {
    let reach = 2.0 * t.abs() * data.sup_abs() + 1.0;
    let window = (x - reach - 1.0, x + reach + 1.0);
    let grid = char_scan_grid(data, t, window);
    let g = |y: f64| phi(data, t, y) - x;
    let mut roots = scan_roots(&g, &grid, tols.root);
    // Newton polish
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = dphi(data, t, *r);
            if d.abs() < 1e-9 {
                break;
            }
            let step = g(*r) / d;
            *r -= step;
            if step.abs() < tols.root * (1.0 + r.abs()) {
                break;
            }
        }
    }
    roots
}

/// Branch-sum value of the dispersionless profile with bookkeeping.
#[derive(Debug, Clone)]
pub struct BranchValue {
    pub value: f64,
    pub roots: Vec<f64>,
}

/// Alternating sum over ascending preimages: u(t,x) = sum_k (-1)^k u0(y_k).
/// Requires continuously differentiable decaying data and x away from the
/// fold set.
pub fn branch_zd(
    data: &InitialData,
    t: f64,
    x: f64,
    kt: &CriticalSet,
    tols: &Tolerances,
) -> Result<BranchValue> {
    if !data.c1_decay() {
        return Err(CoreError::Gate(
            "branch formula requires continuously differentiable decaying data".into(),
        ));
    }
    if kt.contains(x) {
        return Err(CoreError::Gate(format!(
            "x = {x} is within {:.1e} of a critical value of the characteristic map",
            2.0 * kt.inflate
        )));
    }
    let roots = branch_roots(data, t, x, tols);
    if roots.len() % 2 == 0 {
        return Err(CoreError::Inconsistent {
            what: format!("even branch count {} at x = {x}", roots.len()),
            err: roots.len() as f64,
            tol: 1.0,
        });
    }
    let value = roots
        .iter()
        .enumerate()
        .map(|(k, &y)| if k % 2 == 0 { data.eval(y) } else { -data.eval(y) })
        .sum();
    Ok(BranchValue { value, roots })
}

/// Pre-critical evaluation by solving the characteristic equation with a
/// globally convergent Newton iteration (the map is strictly increasing for
/// |t| below the first critical time).
pub fn characteristics_value(
    data: &InitialData,
    t: f64,
    x: f64,
    tols: &Tolerances,
) -> Result<f64> {
    let tc = first_critical_time(data);
    if t.abs() >= tc {
        return Err(CoreError::Gate(format!(
            "characteristics require |t| < first critical time {tc:.6}"
        )));
    }
    let mut y = x;
    for _ in 0..200 {
        let step = (phi(data, t, y) - x) / dphi(data, t, y);
        y -= step;
        if step.abs() < tols.root * (1.0 + y.abs()) {
            return Ok(data.eval(y));
        }
    }
    Err(CoreError::Diverged(format!(
        "characteristic Newton did not settle at x = {x}"
    )))
}
