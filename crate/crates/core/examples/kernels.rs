//! Smoothed projection kernels on S^2 and their L1 norms.

use hemisphere_rc::harmonics::{chi_weight, kernel_eval, KernelFamily, KernelSpec};
use hemisphere_rc::sphere::zonal_integral;

fn main() -> hemisphere_rc::Result<()> {
    let families = [
        ("riesz(2,3)", KernelFamily::Riesz { s: 2.0, l: 3 }),
        ("delayed means", KernelFamily::DelayedMeans),
        ("dirichlet", KernelFamily::Dirichlet),
    ];
    for (name, family) in families {
        println!("{name}");
        for t in [4, 8, 16, 32] {
            let spec = KernelSpec::new(family, t, 3)?;
            let l1 = zonal_integral(3, |s| kernel_eval(&spec, s).unwrap().abs(), 400, 12, &[]);
            let chi: Vec<String> = (0..=4).map(|n| format!("{:.3}", chi_weight(&spec, n))).collect();
            println!("  T = {t:>2}  K(1) = {:>9.3}  ‖K‖₁ = {l1:.4}  χ(0..4) = [{}]", kernel_eval(&spec, 1.0)?, chi.join(", "));
        }
    }
    Ok(())
}
