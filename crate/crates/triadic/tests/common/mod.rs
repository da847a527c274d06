//! Deterministic property suites shared by the `properties` target (which
//! also runs randomized variants) and the `acceptance` gate. Each suite
//! returns the number of cases it checked and panics on the first violation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use triadic::conjecture::examine;
use triadic::diophantine::{factorial_valuation, growth_root};
use triadic::padic::{exp_small, log_unit, PadicApprox};
use triadic::series::{base_level, class_series, hensel_zero};
use triadic::tiz::root_data;
use triadic::RecurrenceSpec;

pub fn fixtures() -> [RecurrenceSpec; 3] {
    [RecurrenceSpec::tribonacci(), RecurrenceSpec::tripell(), RecurrenceSpec::mtripell()]
}

/// Suite 1: the defining recurrence identity (both directions — every
/// fixture has |c| = 1) and agreement of modular evaluation with exact
/// evaluation.
pub fn recurrence_and_modular_suite() -> usize {
    let mut cases = 0;
    for spec in fixtures() {
        for n in -20i64..=40 {
            let lhs = spec.term(n).unwrap();
            let rhs = BigInt::from(spec.a) * spec.term(n - 1).unwrap()
                + BigInt::from(spec.b) * spec.term(n - 2).unwrap()
                + BigInt::from(spec.c) * spec.term(n - 3).unwrap();
            assert_eq!(lhs, rhs, "recurrence identity at n={n} ({:?})", spec.name);
            cases += 1;
        }
        for m in [8u64, 343, 1_000_000_007] {
            let big = BigUint::from(m);
            for n in 0i64..=40 {
                let exact = spec.term(n).unwrap().mod_floor(&BigInt::from(m));
                let fast = spec.term_mod(n as u64, &big);
                assert_eq!(
                    exact.to_biguint().unwrap(),
                    fast,
                    "term vs term_mod at n={n}, m={m}"
                );
                cases += 1;
            }
        }
    }
    cases
}

/// Suite 2: period chain N_{p^k} | N_{p^{k+1}} | p·N_{p^k}.
pub fn period_chain_suite() -> usize {
    let mut links = 0;
    for spec in fixtures() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67] {
            let table = match spec.period_table(p, 3) {
                Ok(t) => t,
                Err(_) => continue, // inadmissible for this sequence
            };
            for pair in table.entries.windows(2) {
                let (_, n_lo) = pair[0];
                let (_, n_hi) = pair[1];
                assert_eq!(n_hi % n_lo, 0, "chain at p={p} ({:?})", spec.name);
                assert_eq!((p * n_lo) % n_hi, 0, "growth at p={p} ({:?})", spec.name);
                links += 1;
            }
        }
    }
    links
}

/// Suite 3: p-adic exp/log round trips on their shared domain, driven by a
/// fixed linear-congruential stream.
pub fn exp_log_suite() -> usize {
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 11
    };
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for _ in 0..30 {
            let prec = 4 + (next() % 6) as u32; // 4..=9
            let (u, w) = if p == 2 {
                let span = 1u64 << (prec - 2);
                (1 + 4 * (next() % span), 4 * (next() % span))
            } else {
                let span = p.pow(prec - 1);
                (1 + p * (next() % span), p * (next() % span))
            };
            let ua = PadicApprox::new(p, prec, BigUint::from(u));
            let round = exp_small(&log_unit(&ua).unwrap()).unwrap();
            assert_eq!(round.residue, ua.residue, "exp(log({u})) at p={p}");
            cases += 1;
            if w != 0 {
                let wa = PadicApprox::new(p, prec, BigUint::from(w));
                let round = log_unit(&exp_small(&wa).unwrap()).unwrap();
                assert_eq!(round.residue, wa.residue, "log(exp({w})) at p={p}");
                cases += 1;
            }
        }
    }
    cases
}

/// Suite 4: Hensel-certified zeros have residual valuation ≥ K − 2
/// (for renormalization ≤ p¹; the general contract — residual at least the
/// returned precision minus one — is asserted for every case).
pub fn hensel_residual_suite() -> usize {
    let spec = RecurrenceSpec::mtripell();
    let plans: [(u64, std::ops::RangeInclusive<u32>); 7] = [
        (2, 4..=14),
        (5, 4..=10),
        (23, 4..=14),
        (41, 4..=10),
        (131, 4..=8),
        (193, 4..=8),
        (227, 4..=8),
    ];
    let mut cases = 0;
    for (p, k_range) in plans {
        let s = base_level(p);
        let step = spec.period(p, s).unwrap();
        // The base-level zero classes: hardcoded for p = 2 (the verdict
        // machinery reports that prime degenerate), read off the verdict
        // for the odd primes.
        let classes: Vec<u64> = if p == 2 {
            vec![0, 5]
        } else {
            let v = examine(&spec, p, &[-1, 0]);
            assert!(!v.holds_classes.is_empty(), "p={p} should expose zero classes");
            v.holds_classes.clone()
        };
        for k_prec in k_range {
            for &ell in &classes {
                let series = class_series(&spec, p, ell, step, k_prec, None).unwrap();
                let cert = (0..p)
                    .find_map(|b0| hensel_zero(&series, b0).ok())
                    .unwrap_or_else(|| panic!("no simple zero at p={p} ℓ={ell} K={k_prec}"));
                assert!(
                    cert.residual_valuation >= cert.b.prec - 1,
                    "residual {} < precision−1 at p={p} ℓ={ell} K={k_prec}",
                    cert.residual_valuation
                );
                if cert.renormalization <= 1 {
                    assert!(
                        cert.residual_valuation as i64 >= k_prec as i64 - 2,
                        "residual {} < K−2 at p={p} ℓ={ell} K={k_prec}",
                        cert.residual_valuation
                    );
                }
                cases += 1;
            }
        }
    }
    cases
}

/// Suite 5: factorial-valuation brackets, exhaustive for m ≤ 1000 and
/// p ∈ {2, 3, 5, 7}.
pub fn factorial_bracket_suite() -> usize {
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for m in 1..=1000u64 {
            let v = factorial_valuation(m, p);
            let exact = BigRational::from(BigInt::from(v.exact));
            assert!(v.lower <= exact, "lower bracket fails at m={m}, p={p}");
            assert!(exact <= v.upper, "upper bracket fails at m={m}, p={p}");
            cases += 1;
        }
    }
    cases
}

/// Suite 6: growth sandwich γ^{n−2} ≤ x_n ≤ γ^{n−1} for 1 ≤ n ≤ 60 on both
/// Tripell-type fixtures, in exact rational arithmetic against the
/// certified enclosure of γ.
pub fn growth_sandwich_suite() -> usize {
    let mut cases = 0;
    for spec in [RecurrenceSpec::tripell(), RecurrenceSpec::mtripell()] {
        let growth = growth_root(&spec).unwrap();
        let lo = &growth.gamma.lo;
        let hi = &growth.gamma.hi;
        for n in 1i64..=60 {
            let x = BigRational::from(spec.term(n).unwrap());
            if n == 1 {
                // γ^{−1} ≤ x₁ is implied by x₁·lo ≥ 1.
                assert!(&x * lo >= BigRational::one(), "lower bound at n=1");
            } else {
                assert!(x >= rational_pow(hi, (n - 2) as u32), "lower bound at n={n}");
            }
            assert!(x <= rational_pow(lo, (n - 1) as u32), "upper bound at n={n}");
            cases += 1;
        }
    }
    cases
}

pub fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Suite 7: floating Binet reconstruction x_n ≈ Σ c_λ λ^n to relative
/// error < 10⁻⁶ for 5 ≤ n ≤ 40 on all fixtures.
pub fn binet_crosscheck_suite() -> usize {
    let mut cases = 0;
    for spec in fixtures() {
        let data = root_data(&spec.char_data().unwrap(), 192).unwrap();
        for n in 5i64..=40 {
            let mut sum = 0f64;
            for rep in &data.roots {
                let (mut zre, mut zim) = (1f64, 0f64);
                let (lre, lim) = (rep.value.re.to_f64(), rep.value.im.to_f64());
                for _ in 0..n {
                    let re = zre * lre - zim * lim;
                    let im = zre * lim + zim * lre;
                    zre = re;
                    zim = im;
                }
                let (cre, cim) = (rep.c_lambda.re.to_f64(), rep.c_lambda.im.to_f64());
                sum += cre * zre - cim * zim;
            }
            let exact = spec.term(n).unwrap().to_f64().unwrap();
            let rel = (sum - exact).abs() / exact.abs().max(1.0);
            assert!(rel < 1e-6, "n={n}: binet {sum} vs exact {exact} (rel {rel:.2e})");
            cases += 1;
        }
    }
    cases
}
