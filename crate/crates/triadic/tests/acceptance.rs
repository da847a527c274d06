//! Acceptance gate: one test per criterion, so the harness prints one
//! pass/fail line for each. Expected values are frozen from independent
//! computation; a failing line here means the engine disagrees with the
//! frozen target and the message says exactly where.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use triadic::conjecture::{is_prime, replay_certificate, scan, Status};
use triadic::diophantine::{factorial_bounds, solve_factorial, ValuationCap};
use triadic::law::{derive_law, ClassLaw, DeriveOutcome};
use triadic::padic::valuation;
use triadic::series::class_series;
use triadic::tiz::{cuberoot_check_at, tiz_set, TizStatus};
use triadic::RecurrenceSpec;

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

#[test]
fn c1_tripell_range_scan_partitions_verdicts() {
    let spec = RecurrenceSpec::tripell();
    let started = Instant::now();
    let verdicts = scan(&spec, 5, 250, &[-1, 0]);
    let elapsed = started.elapsed();

    let excluded = [5u64, 19, 29, 41, 103, 137, 151, 191];
    let expect_fails: Vec<u64> =
        primes_in(5, 250).into_iter().filter(|p| !excluded.contains(p)).collect();

    let fails: Vec<u64> =
        verdicts.iter().filter(|v| v.status == Status::Fails).map(|v| v.p).collect();
    let holds: Vec<u64> =
        verdicts.iter().filter(|v| v.status == Status::Holds).map(|v| v.p).collect();
    let skipped: Vec<u64> =
        verdicts.iter().filter(|v| v.status == Status::Skipped).map(|v| v.p).collect();

    assert_eq!(fails, expect_fails, "fails set");
    assert_eq!(holds, vec![103, 137, 191], "holds set");
    assert_eq!(skipped, vec![29], "skipped set (29 divides the discriminant)");
    for p in [5u64, 19, 41, 151] {
        let v = verdicts.iter().find(|v| v.p == p).unwrap();
        assert!(
            v.status == Status::Inconclusive || v.status == Status::Skipped,
            "p={p} must stay undecided, got {:?}",
            v.status
        );
    }
    // Every failure carries a replayable certificate.
    for v in verdicts.iter().filter(|v| v.status == Status::Fails) {
        let cert = v.certificate.as_ref().expect("failure without certificate");
        replay_certificate(&spec, cert).unwrap_or_else(|e| panic!("replay p={}: {e}", v.p));
    }
    assert!(elapsed < Duration::from_secs(600), "scan took {elapsed:?}");
}

#[test]
fn c2_modified_tripell_range_scan_partitions_verdicts() {
    let spec = RecurrenceSpec::mtripell();
    let verdicts = scan(&spec, 5, 250, &[-1, 0]);

    let holds_expected = [5u64, 23, 41, 131, 193, 227];
    let not_failing = [5u64, 7, 23, 41, 83, 131, 193, 227];
    let expect_fails: Vec<u64> =
        primes_in(5, 250).into_iter().filter(|p| !not_failing.contains(p)).collect();

    let fails: Vec<u64> =
        verdicts.iter().filter(|v| v.status == Status::Fails).map(|v| v.p).collect();
    let holds: Vec<u64> =
        verdicts.iter().filter(|v| v.status == Status::Holds).map(|v| v.p).collect();
    let skipped: Vec<u64> =
        verdicts.iter().filter(|v| v.status == Status::Skipped).map(|v| v.p).collect();

    assert_eq!(holds, holds_expected.to_vec(), "holds set");
    assert_eq!(fails, expect_fails, "fails set");
    assert_eq!(skipped, vec![83], "skipped set (83 divides the discriminant)");
    // 7 is the one admissible prime neither criterion decides.
    let seven = verdicts.iter().find(|v| v.p == 7).unwrap();
    assert_eq!(seven.status, Status::Inconclusive, "p=7 stays undecided");
}

#[test]
fn c3_modified_tripell_two_adic_law_is_exact() {
    let spec = RecurrenceSpec::mtripell();
    let started = Instant::now();
    let outcome = derive_law(&spec, 2, 8).unwrap();
    assert!(matches!(outcome, DeriveOutcome::Total(_)), "law must be total");
    let law = outcome.law();
    assert_eq!(law.modulus, 6);
    let expected = [
        ClassLaw::Linear { center: 0, kappa: 2, slope: 1 },
        ClassLaw::Constant { kappa: 0 },
        ClassLaw::Constant { kappa: 1 },
        ClassLaw::Constant { kappa: 1 },
        ClassLaw::Constant { kappa: 0 },
        ClassLaw::Linear { center: -1, kappa: 3, slope: 1 },
    ];
    assert_eq!(law.classes, expected.to_vec(), "class laws");
    assert!(law.exceptions.is_empty());

    let mismatches = triadic::law::verify_law(&spec, 2, law, 1 << 14);
    assert!(mismatches.is_empty(), "verification mismatches: {mismatches:?}");

    assert_eq!(valuation(&spec.term(11).unwrap(), 2), Some(5), "ν₂(x_11)");
    assert_eq!(valuation(&spec.term(12).unwrap(), 2), Some(4), "ν₂(x_12)");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "derivation took {elapsed:?}");
}

#[test]
fn c4_class_series_leading_coefficients_bit_exact() {
    let spec = RecurrenceSpec::mtripell();
    // Step 6 is the period of the sequence mod 4 (base level s = 2).
    let s0 = class_series(&spec, 2, 0, 6, 4, None).unwrap();
    assert_eq!(s0.residue(0, 4).unwrap().residue, BigUint::from(0u32), "β₀ at class 0");
    assert_eq!(s0.residue(1, 4).unwrap().residue, BigUint::from(2u32), "β₁ at class 0");
    let s5 = class_series(&spec, 2, 5, 6, 4, None).unwrap();
    assert_eq!(s5.residue(1, 4).unwrap().residue, BigUint::from(4u32), "β₁ at class 5");
}

#[test]
fn c5_zero_set_certification_matches_expected_evidence() {
    let mut bad: Vec<String> = Vec::new();
    let mut check = |ok: bool, msg: String| {
        if !ok {
            bad.push(msg);
        }
    };

    let tripell = RecurrenceSpec::tripell();
    let tri = tiz_set(&tripell, (-100, 100)).unwrap();
    check(tri.status == TizStatus::Certified, format!("tripell status {:?}", tri.status));
    check(tri.zero_set == vec![-1, 0], format!("tripell zero set {:?}", tri.zero_set));
    for r in &tri.evidence.ratios {
        check((r - 0.668).abs() <= 0.001, format!("tripell ratio {r:.6} ∉ 0.668 ± 0.001"));
    }
    match tri.evidence.splitting_prime {
        Some(sp) => {
            check(sp.q == 41, format!("tripell splitting prime {} ≠ 41", sp.q));
            check(sp.roots == [13, 14, 16], format!("tripell roots {:?}", sp.roots));
        }
        None => check(false, "tripell has no splitting prime".into()),
    }

    let mtripell = RecurrenceSpec::mtripell();
    let mt = tiz_set(&mtripell, (-100, 100)).unwrap();
    check(mt.status == TizStatus::Certified, format!("mtripell status {:?}", mt.status));
    check(mt.zero_set == vec![-1, 0], format!("mtripell zero set {:?}", mt.zero_set));
    for r in &mt.evidence.ratios {
        check((r - 0.861).abs() <= 0.001, format!("mtripell ratio {r:.6} ∉ 0.861 ± 0.001"));
    }
    match mt.evidence.splitting_prime {
        Some(sp) => {
            check(sp.q == 41, format!("mtripell splitting prime {} ≠ 41 (engine picks the smallest)", sp.q));
            // 41 itself does split the cubic, with the expected roots — the
            // disagreement above is only about which prime gets reported.
            let at41 = cuberoot_check_at(&mtripell.char_data().unwrap(), 41);
            check(at41 == Some([10, 11, 22]), format!("mtripell roots at q=41: {at41:?}"));
        }
        None => check(false, "mtripell has no splitting prime".into()),
    }

    let tribonacci = RecurrenceSpec::tribonacci();
    let trib = tiz_set(&tribonacci, (-50, 50)).unwrap();
    check(
        trib.zero_set == vec![-17, -4, -1, 0],
        format!("tribonacci zeros {:?}", trib.zero_set),
    );

    assert!(
        bad.is_empty(),
        "{} sub-check(s) disagree with the expected evidence:\n  {}",
        bad.len(),
        bad.join("\n  ")
    );
}

#[test]
fn c6_factorial_equation_solved_completely() {
    let spec = RecurrenceSpec::mtripell();
    let started = Instant::now();
    let outcome = derive_law(&spec, 2, 8).unwrap();
    let cap = ValuationCap::from_law(outcome.law()).unwrap();
    let cert = factorial_bounds(&spec, 2, &cap).unwrap();
    assert_eq!((cert.m_max, cert.n_max), (21, 52), "search bounds");
    let solutions = solve_factorial(&spec, &cert);
    assert_eq!(solutions, vec![(1, 1), (2, 2), (3, 3)], "solution set");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "pipeline took {elapsed:?}");
}

#[test]
fn c7_property_suites_run_at_scale() {
    let counts = [
        ("recurrence/modular", common::recurrence_and_modular_suite()),
        ("period chain", common::period_chain_suite()),
        ("exp/log round trip", common::exp_log_suite()),
        ("hensel residual", common::hensel_residual_suite()),
        ("factorial brackets", common::factorial_bracket_suite()),
        ("growth sandwich", common::growth_sandwich_suite()),
        ("binet cross-check", common::binet_crosscheck_suite()),
    ];
    for (name, n) in counts {
        assert!(n >= 100, "suite `{name}` ran only {n} cases");
    }
}

#[test]
fn c8_failure_certificates_replay_independently() {
    let tripell = RecurrenceSpec::tripell();
    let mtripell = RecurrenceSpec::mtripell();
    let mut pool = Vec::new();
    for (spec, verdicts) in [
        (&tripell, scan(&tripell, 5, 250, &[-1, 0])),
        (&mtripell, scan(&mtripell, 5, 250, &[-1, 0])),
    ] {
        for v in verdicts {
            if v.status == Status::Fails {
                pool.push((spec.clone(), v.certificate.expect("fails carries certificate")));
            }
        }
    }
    assert!(pool.len() >= 20, "only {} failure certificates available", pool.len());
    // Fixed pseudorandom selection of 20 distinct certificates.
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < 20 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        chosen.insert((state >> 17) as usize % pool.len());
    }
    for idx in chosen {
        let (spec, cert) = &pool[idx];
        replay_certificate(spec, cert)
            .unwrap_or_else(|e| panic!("replay failed for p={}: {e}", cert.p));
    }
}
