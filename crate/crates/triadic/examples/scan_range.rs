//! Scan a prime range and report, per prime, whether the valuation
//! conjecture fails or holds for the built-in Tripell sequence.
//!
//!     cargo run --example scan_range
//!
//! A `fails` verdict comes with a self-contained certificate: a residue
//! class ℓ whose first-difference data pins an excluded class outside the
//! certified zero set. A `holds` verdict means every base-level zero class
//! is nondegenerate and already accounted for by a twisted zero.

use triadic::conjecture::{scan, Status};
use triadic::tiz::tiz_set;
use triadic::RecurrenceSpec;

fn main() {
    let spec = RecurrenceSpec::tripell();
    // The scan consumes a certified zero set.
    let tiz = tiz_set(&spec, (-100, 100)).expect("zero search");
    println!("zero set: {:?} ({:?})", tiz.zero_set, tiz.status);
    println!();

    let verdicts = scan(&spec, 5, 120, &tiz.zero_set);
    let mut counts = [0usize; 4];
    for v in &verdicts {
        match v.status {
            Status::Fails => {
                let c = v.certificate.as_ref().expect("failure carries a certificate");
                println!(
                    "p={:<4} fails      witness class {} of period {}, excluded class {}",
                    v.p, c.ell, c.n_period, c.excluded_class
                );
                counts[0] += 1;
            }
            Status::Holds => {
                println!("p={:<4} holds      zero classes {:?}", v.p, v.holds_classes);
                counts[1] += 1;
            }
            Status::Inconclusive => {
                counts[2] += 1;
            }
            Status::Skipped => {
                counts[3] += 1;
            }
        }
    }
    println!();
    println!(
        "{} fails, {} holds, {} inconclusive, {} skipped",
        counts[0], counts[1], counts[2], counts[3]
    );
}
