//! The interpolating 2-adic series of a residue class, coefficient by
//! coefficient, and the zero count it certifies.
//!
//!     cargo run --example series_coefficients
//!
//! For a class ℓ whose terms are divisible by p^s, the map
//! b ↦ x_{ℓ+bN} / p^s extends to an analytic function on the p-adic
//! integers, f(b) = Σ β_k bᵏ. Its certified coefficients decide how many
//! p-adic zeros the class has; a simple zero is then lifted by Newton
//! iteration and pins the affine valuation law of the class.

use triadic::series::{class_series, hensel_zero, newton_count};
use triadic::RecurrenceSpec;

fn main() {
    let spec = RecurrenceSpec::mtripell();
    let (p, n_step, k_prec) = (2u64, 6u64, 6u32);

    for ell in [0u64, 5] {
        let series = class_series(&spec, p, ell, n_step, k_prec, None).expect("admissible class");
        println!(
            "class ℓ = {ell} (step {n_step}, precision 2^{k_prec}): degree {}",
            series.degree()
        );
        for k in 0..=series.degree().min(4) {
            let v = series.valuation(k);
            let residue = series.residue(k, k_prec).expect("coefficient is 2-integral");
            println!(
                "  β_{k} ≡ {} (mod 2^{k_prec})   ν₂ = {}",
                residue.residue,
                v.map(|v| v.to_string()).unwrap_or_else(|| format!("≥ {k_prec}")),
            );
        }
        let (count, exact) = newton_count(&series).expect("count certifies");
        println!("  zeros in ℤ₂: {count} ({})", if exact { "exact" } else { "at most" });
        if count == 1 {
            // Both zero classes of this sequence start their Newton
            // iteration at the residue the linear coefficient forces.
            for b0 in 0..p {
                if let Ok(cert) = hensel_zero(&series, b0) {
                    println!(
                        "  simple zero b ≡ {} (mod 2^{}), renormalization v* = {}",
                        cert.b.residue, cert.b.prec, cert.renormalization
                    );
                }
            }
        }
        println!();
    }
}
