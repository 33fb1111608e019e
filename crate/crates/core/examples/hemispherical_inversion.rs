//! Forward hemispherical transform of a band-limited odd function and its
//! inversion, spectrally and by the differential formula in d = 4.

use std::collections::BTreeMap;

use hemisphere_rc::hemispherical::{forward, forward_quadrature, inverse, inverse_differential_check, lambda_eig, OddBandlimited};
use hemisphere_rc::sphere::{sample_uniform, QuadratureRule};

fn main() -> hemisphere_rc::Result<()> {
    for n in [1, 3, 5, 7, 9] {
        println!("λ({n}, 3) = {:+.6}   λ({n}, 4) = {:+.6}", lambda_eig(n, 3), lambda_eig(n, 4));
    }

    let d = 4;
    let anchors = sample_uniform(d, 3, 11)?;
    let coeffs = BTreeMap::from([(1, 1.0), (3, -0.5), (5, 0.25)]);
    let g = OddBandlimited::new(anchors, vec![1.0, -0.7, 0.4], coeffs, 5)?;
    let h = forward(&g);
    let spectral = inverse(&h)?;
    let differential = inverse_differential_check(&h)?;
    let quad = QuadratureRule::product(d, 96, 32)?;
    for b in sample_uniform(d, 4, 12)? {
        println!(
            "g = {:+.6}  H⁻¹Hg = {:+.6}  differential = {:+.6}  Hg = {:+.6}  Hg by quadrature = {:+.6}",
            g.evaluate(&b),
            spectral.evaluate(&b),
            differential.evaluate(&b),
            h.evaluate(&b),
            forward_quadrature(|y| g.evaluate(y), &b, &quad)?
        );
    }
    Ok(())
}
