// scratch: calibrate the dissipativity residual scale for random smooth
// Hardy functions before freezing the property-test constant
use bozdl_core::hardy::HardyFunction;
use bozdl_core::{SpectralGrid, Tolerances};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let tols = Tolerances::default();
    let mut worst = 0.0f64;
    for m in [512usize, 1024, 2048] {
        let grid = SpectralGrid::new(24.0, m).unwrap();
        let dxi = grid.dxi();
        for case in 0..40 {
            let a = -1.0 + 2.0 * ((case * 7919 % 100) as f64) / 100.0;
            let b = -1.0 + 2.0 * ((case * 104729 % 100) as f64) / 100.0;
            let c = 0.5 + 1.5 * ((case * 1299709 % 100) as f64) / 100.0;
            let d = -2.0 + 4.0 * ((case * 15485863 % 100) as f64) / 100.0;
            let coef: Vec<Complex64> = grid
                .xis()
                .iter()
                .map(|&xi| {
                    Complex64::new(a + b * xi, 0.0)
                        * (-c * xi).exp()
                        * Complex64::new(0.0, d * xi).exp()
                })
                .collect();
            let f = HardyFunction::new(grid, coef).unwrap();
            let gf = f.apply_g(2).unwrap();
            let ip = f.i_plus(3).unwrap();
            let lhs = gf.dot(&f).im;
            let resid = (lhs + ip.norm_sqr() / (4.0 * PI)).abs();
            let h1 = f.norm().powi(2) + f.apply_d().norm().powi(2);
            let ratio = resid / (dxi * h1);
            if ratio > worst {
                worst = ratio;
                println!("m={m} case={case}: resid={resid:.3e} h1={h1:.3e} ratio={ratio:.3e}");
            }
        }
    }
    println!("worst ratio resid/(dxi*h1) = {worst:.3e}");
}
