//! Solve x_n = m! completely for the modified Tripell sequence.
//!
//!     cargo run --example factorial_solutions
//!
//! The pipeline: derive the 2-adic valuation law, turn it into a global
//! valuation cap, play the cap against the 2-adic valuation of m! and the
//! growth rate γ of the sequence to get a finite search region, then search
//! that region exactly.

use triadic::diophantine::{factorial_bounds, solve_factorial, ValuationCap};
use triadic::law::derive_law;
use triadic::RecurrenceSpec;

fn main() {
    let spec = RecurrenceSpec::mtripell();

    let outcome = derive_law(&spec, 2, 8).expect("2 is admissible");
    let cap = ValuationCap::from_law(outcome.law()).expect("law is total");
    println!(
        "valuation cap: ν₂(x_n) ≤ {} + {}·ν₂(n − a), |a| ≤ {}",
        cap.kappa, cap.mu, cap.offset
    );

    let cert = factorial_bounds(&spec, 2, &cap).expect("growth hypotheses hold");
    println!("growth root γ ≈ {:.6}", cert.gamma);
    println!("solutions require m ≤ {} and n ≤ {}", cert.m_max, cert.n_max);

    let solutions = solve_factorial(&spec, &cert);
    println!();
    for (n, m) in &solutions {
        println!("x_{n} = {m}! = {}", spec.term(*n as i64).unwrap());
    }
    println!("({} solutions in total)", solutions.len());
}
