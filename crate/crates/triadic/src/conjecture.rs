//! Per-prime decision procedure for the valuation conjecture: a failure
//! criterion (an explicit residue-class witness whose excluded class escapes
//! the twisted-integral-zero set) and a holds criterion (every base-level
//! zero class is pinned to the zero set with nondegenerate first difference),
//! plus a range scanner.
//!
//! All per-prime work runs on `u64` residues mod `p^{s+1}` in a single
//! two-window pass over one period — no big integers, O(1) memory.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::RecurrenceSpec;
use crate::series::base_level;

/// Outcome of examining one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Fails,
    Holds,
    Inconclusive,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Fails => "fails",
            Status::Holds => "holds",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        };
        f.write_str(s)
    }
}

/// Everything needed to re-verify a failure verdict from raw sequence values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureCertificate {
    pub p: u64,
    /// The witnessing residue class.
    pub ell: u64,
    /// Period used (mod `p^s`).
    pub n_period: u64,
    /// Base level `s` (2 for p = 2, else 1).
    pub base_level: u32,
    /// `x_ℓ mod p^{s+1}` — divisible by `p^s`.
    pub x_ell: u64,
    /// `x_{ℓ+N} mod p^{s+1}` — must differ from `x_ell`.
    pub x_shift: u64,
    /// The excluded class `(ℓ − (x_ℓ/p^s)·((x_{ℓ+N}−x_ℓ)/p^s)^{−1}·N) mod p`,
    /// which lies outside the zero set mod p.
    pub excluded_class: u64,
    /// The zero-set residues the verdict was checked against.
    pub tiz: Vec<i64>,
}

/// Verdict for one prime, with enough payload to audit it.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeVerdict {
    pub p: u64,
    pub status: Status,
    /// The witnessing class for a failure verdict.
    pub witness_ell: Option<u64>,
    pub certificate: Option<FailureCertificate>,
    /// For a holds verdict: every base-level zero class in `[0, N)`.
    pub holds_classes: Vec<u64>,
    /// Period mod `p^s`, when it was computed.
    pub n_period: Option<u64>,
    pub tiz_used: Vec<i64>,
    /// Why the prime was skipped or left undecided.
    pub note: Option<String>,
}

/// One base-level zero class and its first-difference data mod `p^{s+1}`.
#[derive(Debug, Clone, Copy)]
struct ZeroClass {
    ell: u64,
    x_ell: u64,
    x_shift: u64,
    /// `(x_ℓ / p^s) mod p`.
    xbar: u64,
    /// `((x_{ℓ+N} − x_ℓ) / p^s) mod p`; 0 means the class is degenerate.
    dbar: u64,
}

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Collect every class `ℓ ∈ [0, N)` with `p^s | x_ℓ`, together with the
/// shifted value one period later, in a single two-window pass mod `p^{s+1}`.
fn zero_classes(spec: &RecurrenceSpec, p: u64, s: u32, n: u64) -> Result<(u64, Vec<ZeroClass>)> {
    let m = p
        .checked_pow(s + 1)
        .filter(|&m| m < 1 << 62)
        .ok_or_else(|| Error::ResourceExhausted(format!("modulus p^{} overflows", s + 1)))?;
    let ps = p.pow(s);
    let red = |v: i64| v.rem_euclid(m as i64) as u64;
    let (a, b, c) = (red(spec.a), red(spec.b), red(spec.c));
    let step = |w: &mut [u64; 3]| {
        let next = ((a as u128 * w[2] as u128 + b as u128 * w[1] as u128 + c as u128 * w[0] as u128)
            % m as u128) as u64;
        *w = [w[1], w[2], next];
    };
    // Window A at n = 0, window B at n = N.
    let mut wa = [red(spec.x0), red(spec.x1), red(spec.x2)];
    let mut wb = wa;
    for _ in 0..n {
        step(&mut wb);
    }
    let mut found = Vec::new();
    for ell in 0..n {
        let x = wa[0];
        if x % ps == 0 {
            let xs = wb[0];
            let d = (xs + m - x) % m;
            found.push(ZeroClass {
                ell,
                x_ell: x,
                x_shift: xs,
                xbar: (x / ps) % p,
                dbar: (d / ps) % p,
            });
        }
        step(&mut wa);
        step(&mut wb);
    }
    Ok((m, found))
}

fn canonical_mod(r: i64, m: u64) -> u64 {
    r.rem_euclid(m as i64) as u64
}

/// The excluded class of a nondegenerate zero class:
/// `(ℓ − x̄·d̄^{−1}·N) mod p`.
fn excluded_class(p: u64, n: u64, z: &ZeroClass) -> u64 {
    debug_assert!(z.dbar != 0);
    let inv = pow_mod(z.dbar, p - 2, p);
    let shift = mul_mod(mul_mod(z.xbar % p, inv, p), n % p, p);
    ((z.ell % p) + p - shift) % p
}

/// Failure criterion: find the first class `ℓ ∈ [0, N)` with `p^s | x_ℓ`,
/// nondegenerate first difference `x_{ℓ+N} ≢ x_ℓ (mod p^{s+1})`, and excluded
/// class outside `tiz mod p`. `None` when no class qualifies.
pub fn check_failure(
    spec: &RecurrenceSpec,
    p: u64,
    tiz: &[i64],
) -> Result<Option<FailureCertificate>> {
    if !spec.admissible_prime(p) {
        return Err(Error::InadmissiblePrime { p });
    }
    let s = base_level(p);
    let n = spec.period(p, s)?;
    let (_, classes) = zero_classes(spec, p, s, n)?;
    let tiz_p: Vec<u64> = tiz.iter().map(|&r| canonical_mod(r, p)).collect();
    for z in &classes {
        if z.dbar == 0 {
            continue;
        }
        let cls = excluded_class(p, n, z);
        if !tiz_p.contains(&cls) {
            return Ok(Some(FailureCertificate {
                p,
                ell: z.ell,
                n_period: n,
                base_level: s,
                x_ell: z.x_ell,
                x_shift: z.x_shift,
                excluded_class: cls,
                tiz: tiz.to_vec(),
            }));
        }
    }
    Ok(None)
}

/// Holds criterion: true iff every class `ℓ ∈ [0, N)` with `p^s | x_ℓ` has a
/// nondegenerate first difference and lies in `tiz mod N`.
pub fn check_holds(spec: &RecurrenceSpec, p: u64, tiz: &[i64]) -> Result<bool> {
    if !spec.admissible_prime(p) {
        return Err(Error::InadmissiblePrime { p });
    }
    let s = base_level(p);
    let n = spec.period(p, s)?;
    let (_, classes) = zero_classes(spec, p, s, n)?;
    let tiz_n: Vec<u64> = tiz.iter().map(|&r| canonical_mod(r, n)).collect();
    Ok(classes.iter().all(|z| z.dbar != 0 && tiz_n.contains(&z.ell)))
}

/// Examine one prime and report a full verdict. Errors never escape: an
/// unprovable prime is `Inconclusive` (with a note), an inadmissible one
/// `Skipped`.
pub fn examine(spec: &RecurrenceSpec, p: u64, tiz: &[i64]) -> PrimeVerdict {
    let base = PrimeVerdict {
        p,
        status: Status::Inconclusive,
        witness_ell: None,
        certificate: None,
        holds_classes: Vec::new(),
        n_period: None,
        tiz_used: tiz.to_vec(),
        note: None,
    };
    if !spec.admissible_prime(p) {
        let why = if spec.c.unsigned_abs().is_multiple_of(p) {
            "p divides the trailing coefficient"
        } else {
            "p divides the discriminant"
        };
        return PrimeVerdict { status: Status::Skipped, note: Some(why.into()), ..base };
    }
    let s = base_level(p);
    let n = match spec.period(p, s) {
        Ok(n) => n,
        Err(e) => {
            return PrimeVerdict { note: Some(format!("period unavailable: {e}")), ..base };
        }
    };
    let classes = match zero_classes(spec, p, s, n) {
        Ok((_, c)) => c,
        Err(e) => {
            return PrimeVerdict {
                n_period: Some(n),
                note: Some(format!("residue pass unavailable: {e}")),
                ..base
            };
        }
    };
    let base = PrimeVerdict { n_period: Some(n), ..base };

    if classes.is_empty() {
        return PrimeVerdict {
            status: Status::Holds,
            note: Some("no base-level zero classes; every term has small valuation".into()),
            ..base
        };
    }
    let tiz_p: Vec<u64> = tiz.iter().map(|&r| canonical_mod(r, p)).collect();
    for z in &classes {
        if z.dbar == 0 {
            continue;
        }
        let cls = excluded_class(p, n, z);
        if !tiz_p.contains(&cls) {
            return PrimeVerdict {
                status: Status::Fails,
                witness_ell: Some(z.ell),
                certificate: Some(FailureCertificate {
                    p,
                    ell: z.ell,
                    n_period: n,
                    base_level: s,
                    x_ell: z.x_ell,
                    x_shift: z.x_shift,
                    excluded_class: cls,
                    tiz: tiz.to_vec(),
                }),
                ..base
            };
        }
    }
    let tiz_n: Vec<u64> = tiz.iter().map(|&r| canonical_mod(r, n)).collect();
    let mut blocker = None;
    for z in &classes {
        if z.dbar == 0 {
            blocker = Some(format!("class {} is degenerate at level p^{}", z.ell, s + 1));
            break;
        }
        if !tiz_n.contains(&z.ell) {
            blocker = Some(format!(
                "class {} lies outside the zero set mod N, but its excluded class is inside the zero set mod p",
                z.ell
            ));
            break;
        }
    }
    match blocker {
        None => PrimeVerdict {
            status: Status::Holds,
            holds_classes: classes.iter().map(|z| z.ell).collect(),
            ..base
        },
        Some(msg) => PrimeVerdict { note: Some(msg), ..base },
    }
}

/// Scan all primes in `[lo, hi]`, in parallel, reporting verdicts in
/// increasing order of p.
pub fn scan(spec: &RecurrenceSpec, lo: u64, hi: u64, tiz: &[i64]) -> Vec<PrimeVerdict> {
    let primes: Vec<u64> = (lo..=hi).filter(|&n| is_prime(n)).collect();
    let mut out: Vec<PrimeVerdict> =
        primes.par_iter().map(|&p| examine(spec, p, tiz)).collect();
    out.sort_by_key(|v| v.p);
    out
}

/// Re-verify a failure certificate from raw sequence values, independently of
/// the scanner: terms come from matrix-power evaluation ([`RecurrenceSpec::term_mod`]),
/// not the stride iteration, and every stated property is rechecked.
pub fn replay_certificate(spec: &RecurrenceSpec, cert: &FailureCertificate) -> Result<()> {
    let p = cert.p;
    if !is_prime(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    if !spec.admissible_prime(p) {
        return Err(Error::InadmissiblePrime { p });
    }
    let s = base_level(p);
    if s != cert.base_level {
        return Err(Error::Validation(format!(
            "certificate base level {} should be {s}",
            cert.base_level
        )));
    }
    let n = spec.period(p, s)?;
    if n != cert.n_period {
        return Err(Error::Validation(format!("period mod p^{s} is {n}, not {}", cert.n_period)));
    }
    if cert.ell >= n {
        return Err(Error::Validation(format!("witness class {} outside [0, {n})", cert.ell)));
    }
    let m = num_bigint::BigUint::from(p.pow(s + 1));
    let to_u64 = |b: num_bigint::BigUint| -> u64 {
        use num_traits::ToPrimitive;
        b.to_u64().expect("residue below u64 modulus")
    };
    let x_ell = to_u64(spec.term_mod(cert.ell, &m));
    if x_ell != cert.x_ell {
        return Err(Error::Validation(format!(
            "x_ℓ mod p^{} is {x_ell}, certificate says {}",
            s + 1,
            cert.x_ell
        )));
    }
    let x_shift = to_u64(spec.term_mod(cert.ell + n, &m));
    if x_shift != cert.x_shift {
        return Err(Error::Validation(format!(
            "x_{{ℓ+N}} mod p^{} is {x_shift}, certificate says {}",
            s + 1,
            cert.x_shift
        )));
    }
    let ps = p.pow(s);
    if x_ell % ps != 0 {
        return Err(Error::Validation(format!("p^{s} does not divide x_ℓ = {x_ell}")));
    }
    let mu = p.pow(s + 1);
    let d = (x_shift + mu - x_ell) % mu;
    let dbar = (d / ps) % p;
    if dbar == 0 {
        return Err(Error::Validation(
            "first difference vanishes mod p^{s+1}; class is degenerate".into(),
        ));
    }
    let z = ZeroClass { ell: cert.ell, x_ell, x_shift, xbar: (x_ell / ps) % p, dbar };
    let cls = excluded_class(p, n, &z);
    if cls != cert.excluded_class {
        return Err(Error::Validation(format!(
            "excluded class recomputes to {cls}, certificate says {}",
            cert.excluded_class
        )));
    }
    if cert.tiz.iter().any(|&r| canonical_mod(r, p) == cls) {
        return Err(Error::Validation(format!(
            "excluded class {cls} lies inside the zero set mod {p}"
        )));
    }
    Ok(())
}
