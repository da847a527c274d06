//! Derive the explicit 2-adic valuation law of the modified Tripell
//! sequence and verify it against the first 2¹⁴ terms.
//!
//!     cargo run --example valuation_law
//!
//! The law partitions indices by residue class mod the period of the
//! sequence mod 4 and assigns each class either a constant valuation or an
//! affine one, ν₂(x_n) = κ + ν₂(n − a), whose center a is confirmed by an
//! exact zero of the sequence.

use triadic::law::{derive_law, verify_law, ClassLaw};
use triadic::RecurrenceSpec;

fn main() {
    let spec = RecurrenceSpec::mtripell();
    let outcome = derive_law(&spec, 2, 8).expect("2 is admissible");
    let law = outcome.law();

    println!("prime 2, classes mod {}:", law.modulus);
    for (ell, class) in law.classes.iter().enumerate() {
        match class {
            ClassLaw::Constant { kappa } => {
                println!("  n ≡ {ell}: ν₂(x_n) = {kappa}");
            }
            ClassLaw::Linear { center, kappa, slope } => {
                let mu = if *slope == 1 { String::new() } else { format!("{slope}·") };
                println!("  n ≡ {ell}: ν₂(x_n) = {kappa} + {mu}ν₂(n − ({center}))  [x_{center} = 0]");
            }
            ClassLaw::Underived => println!("  n ≡ {ell}: underived"),
        }
    }

    let mismatches = verify_law(&spec, 2, law, 1 << 14);
    println!();
    println!("verified n ≤ {}: {} mismatches", 1 << 14, mismatches.len());
    for m in mismatches.iter().take(5) {
        println!("  n={} predicted={:?} actual={:?}", m.n, m.predicted, m.actual);
    }

    // Spot checks straight from the sequence.
    for n in [11i64, 12, 24, 48] {
        let x = spec.term(n).unwrap();
        println!("x_{n} = {x}  (prediction {:?})", law.predict(n));
    }
}
