use bozdl_core::*;
use num_complex::Complex64;
fn main() {
    let tols = Tolerances::default();
    let grid = SpectralGrid::new(40.0, 1024).unwrap();
    let gen = GeneratorSpec { data: InitialData::lorentzian(2.0), t: 0.0, eps: 0.0 }
        .assemble(grid, &tols).unwrap();
    let f = HardyFunction::new(grid,
        grid.xis().iter().map(|&x| Complex64::new((-x).exp(), 0.0)).collect()).unwrap();
    let (w, res) = gen.resolve(Complex64::I, &f, &tols).unwrap();
    println!("res = {res:.3e}");
    for i in [0,1,2,3,4,6,10,20,50,100,300,600,1000] {
        let want = std::f64::consts::PI * (-grid.xi(i)).exp();
        println!("i={i:4} xi={:7.3} w=({:+.6e},{:+.6e}) want={:+.6e}", grid.xi(i), w.coef[i].re, w.coef[i].im, want);
    }
}
