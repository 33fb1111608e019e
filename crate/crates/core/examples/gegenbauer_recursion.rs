//! Gegenbauer polynomials by three-term recursion, checked against the
//! explicit sum and the value at t = 1.

use hemisphere_rc::gegenbauer::{eval_all, eval_at_one, explicit_eval, nu_for_dim};

fn main() -> hemisphere_rc::Result<()> {
    for d in [2, 3, 4] {
        let nu = nu_for_dim(d);
        println!("d = {d} (ν = {nu})");
        let t = 0.3;
        let values = eval_all(nu, 8, t)?;
        for (n, v) in values.iter().enumerate() {
            println!(
                "  C_{n}({t}) = {v:+.10}  explicit {:+.10}  C_{n}(1) = {}",
                explicit_eval(nu, n, t)?,
                eval_at_one(nu, n)
            );
        }
    }
    Ok(())
}
