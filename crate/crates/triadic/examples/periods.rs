//! Periods of the built-in sequences modulo prime powers.
//!
//!     cargo run --example periods
//!
//! The period mod p^k is the order of the companion matrix; successive
//! levels either keep the period or multiply it by p.

use triadic::RecurrenceSpec;

fn main() {
    for spec in [
        RecurrenceSpec::tribonacci(),
        RecurrenceSpec::tripell(),
        RecurrenceSpec::mtripell(),
    ] {
        let name = spec.name.clone().unwrap_or_default();
        println!("{name}:");
        for p in [2u64, 3, 5, 7, 11, 13] {
            match spec.period_table(p, 3) {
                Ok(table) => {
                    let cells: Vec<String> = table
                        .entries
                        .iter()
                        .map(|(k, n)| format!("N(p^{k})={n}"))
                        .collect();
                    println!("  p={p:<3} {}", cells.join("  "));
                }
                Err(e) => println!("  p={p:<3} {e}"),
            }
        }
        println!();
    }
}
