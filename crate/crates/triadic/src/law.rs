//! Explicit piecewise valuation laws: for each residue class mod the period,
//! either a constant valuation or an affine law `κ + μ·ν_p(n − a)` with an
//! integer center, derived from class-series certificates and verified
//! against exact term valuations.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic;
use crate::sequence::RecurrenceSpec;
use crate::series::{base_level, class_series, hensel_zero, newton_count};

/// The law for one residue class mod Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassLaw {
    /// `ν_p(x_n) = κ` for every n in the class.
    Constant { kappa: i64 },
    /// `ν_p(x_n) = κ + μ·ν_p(n − a)` for every n ≠ a in the class
    /// (and `x_a = 0` when a falls in the class — the center is a true zero).
    Linear { center: i64, kappa: i64, slope: u32 },
    /// No law could be certified for this class: the conjecture may
    /// genuinely fail here (a non-integral series zero), or precision ran
    /// out. First-class data, not an error.
    Underived,
}

/// A full valuation law for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationLaw {
    pub p: u64,
    /// The case modulus Q (the period used).
    pub modulus: u64,
    /// One entry per class `ℓ ∈ [0, Q)`.
    pub classes: Vec<ClassLaw>,
    /// Known finite exceptions `(n, actual valuation)`; empty for every law
    /// this engine derives.
    pub exceptions: Vec<(i64, u64)>,
}

/// What a law predicts for a single index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Prediction {
    Finite(i64),
    /// The index is the center of a linear class: the term is exactly 0.
    Infinite,
    /// The class is underived.
    Unavailable,
}

/// Outcome of a derivation: total (every class lawful) or partial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DeriveOutcome {
    Total(ValuationLaw),
    Partial { law: ValuationLaw, underived: Vec<u64> },
}

impl DeriveOutcome {
    pub fn law(&self) -> &ValuationLaw {
        match self {
            DeriveOutcome::Total(l) => l,
            DeriveOutcome::Partial { law, .. } => law,
        }
    }

    pub fn underived(&self) -> &[u64] {
        match self {
            DeriveOutcome::Total(_) => &[],
            DeriveOutcome::Partial { underived, .. } => underived,
        }
    }
}

/// A disagreement between a law and the actual sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: i64,
    pub predicted: Prediction,
    /// Exact valuation when below the verification level, else `None`
    /// (meaning "at least the level").
    pub actual: Option<u64>,
}

impl ValuationLaw {
    pub fn class_of(&self, n: i64) -> &ClassLaw {
        &self.classes[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// Evaluate the law at n.
    pub fn predict(&self, n: i64) -> Prediction {
        match *self.class_of(n) {
            ClassLaw::Constant { kappa } => Prediction::Finite(kappa),
            ClassLaw::Linear { center, kappa, slope } => {
                if n == center {
                    Prediction::Infinite
                } else {
                    let v = padic::valuation(&BigInt::from(n - center), self.p)
                        .expect("nonzero difference");
                    Prediction::Finite(kappa + slope as i64 * v as i64)
                }
            }
            ClassLaw::Underived => Prediction::Unavailable,
        }
    }
}

/// How far Hensel zero candidates are trusted as integer centers: the
/// centered lift must not exceed this in absolute value, and the exact term
/// at the candidate index must literally vanish.
const CENTER_SEARCH_BOUND: i64 = 1000;

/// Precision escalation schedule, relative to the requested K.
const RETRY_STEPS: [u32; 3] = [0, 8, 16];

/// Derive the valuation law for an admissible prime at working precision K.
///
/// Per class: a unit-like class (`p^s ∤ x_ℓ`) gets a constant law directly at
/// the base level; a zero class gets the class series — no p-adic zero means
/// a constant law at the series minimum, a certified simple zero means an
/// affine law whose center is confirmed by exact evaluation (`x_a = 0`).
/// Classes with a non-integral zero, an inexact count, or exhausted
/// precision are reported Underived.
pub fn derive_law(spec: &RecurrenceSpec, p: u64, k_prec: u32) -> Result<DeriveOutcome> {
    if !spec.admissible_prime(p) {
        return Err(Error::InadmissiblePrime { p });
    }
    let s = base_level(p);
    let n = spec.period(p, s)?;
    let ps = padic::pow_big(p, s);
    // All base-level residues x_0 .. x_{3N−1} in one pass: class residues
    // and the empirical constancy check (t ≤ 2 strides) share it.
    let strided = spec.stride_residues(0, 1, 3 * n as usize, &ps);

    let classes: Vec<ClassLaw> = (0..n)
        .into_par_iter()
        .map(|ell| derive_class(spec, p, s, n, ell, k_prec, &strided))
        .collect();

    let underived: Vec<u64> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c, ClassLaw::Underived))
        .map(|(i, _)| i as u64)
        .collect();
    let law = ValuationLaw { p, modulus: n, classes, exceptions: Vec::new() };
    debug_assert!(law.classes.iter().all(|c| match *c {
        // The affine side condition ν_p(a − ℓ) ≥ ν_p(Q) — automatic because
        // a − ℓ is a multiple of N = Q.
        ClassLaw::Linear { center, .. } => {
            let ell = center.rem_euclid(n as i64);
            center == ell
                || padic::valuation(&BigInt::from(center - ell), p).unwrap_or(u64::MAX)
                    >= padic::valuation(&BigInt::from(n), p).unwrap_or(0)
        }
        _ => true,
    }));
    if underived.is_empty() {
        Ok(DeriveOutcome::Total(law))
    } else {
        Ok(DeriveOutcome::Partial { law, underived })
    }
}

fn derive_class(
    spec: &RecurrenceSpec,
    p: u64,
    s: u32,
    n: u64,
    ell: u64,
    k_prec: u32,
    strided: &[BigUint],
) -> ClassLaw {
    // Base-level shortcut: a class whose residue is a non-multiple of p^s has
    // constant valuation < s on the whole class (the residue repeats with
    // period N at this level — checked empirically on the shared pass).
    let r0 = &strided[ell as usize];
    if !r0.is_zero() {
        let kappa = padic::valuation(&BigInt::from(r0.clone()), p).unwrap_or(0);
        let stable = (0..=2).all(|t| {
            let r = &strided[(ell + t * n) as usize];
            padic::valuation(&BigInt::from(r.clone()), p).unwrap_or(s as u64) == kappa
        });
        if stable && kappa < s as u64 {
            return ClassLaw::Constant { kappa: kappa as i64 };
        }
        // Valuation not stable below s — fall through to the series.
    }
    for bump in RETRY_STEPS {
        let k = k_prec + bump;
        match derive_class_by_series(spec, p, s, n, ell, k) {
            Ok(Some(law)) => return law,
            Ok(None) => return ClassLaw::Underived,
            Err(Error::PrecisionExhausted(_)) | Err(Error::Indeterminate(_)) => continue,
            Err(_) => return ClassLaw::Underived,
        }
    }
    ClassLaw::Underived
}

/// One attempt at a series-backed law. `Ok(None)` = definitively underived
/// (non-integral zero or slope beyond 1); errors = retry at higher precision.
fn derive_class_by_series(
    spec: &RecurrenceSpec,
    p: u64,
    s: u32,
    n: u64,
    ell: u64,
    k: u32,
) -> Result<Option<ClassLaw>> {
    let series = class_series(spec, p, ell, n, k, None)?;
    let (mu, exact) = newton_count(&series)?;
    if !exact {
        return Err(Error::PrecisionExhausted(format!(
            "zero count for class {ell} not certified at K = {k}"
        )));
    }
    match mu {
        0 => {
            // No p-adic zeros: the minimum is uniquely at the constant term,
            // so the valuation is constant s + ν(β₀) on the class.
            let v0 = series
                .valuation(0)
                .ok_or_else(|| Error::PrecisionExhausted("constant term vanishes at K".into()))?;
            Ok(Some(ClassLaw::Constant { kappa: s as i64 + v0 }))
        }
        1 => {
            let v_star = (0..=series.degree())
                .filter_map(|i| series.valuation(i))
                .min()
                .expect("μ = 1 implies a certified minimum");
            let b0 = starting_residue(&series, v_star, p)?;
            let cert = hensel_zero(&series, b0)?;
            // Centered lift of the zero.
            let modulus = cert.b.modulus();
            let half = &modulus / 2u32;
            let b_hat: i64 = if cert.b.residue <= half {
                match cert.b.residue.to_i64() {
                    Some(v) => v,
                    None => return Ok(None),
                }
            } else {
                match (&modulus - &cert.b.residue).to_i64() {
                    Some(v) => -v,
                    None => return Ok(None),
                }
            };
            if b_hat.abs() > CENTER_SEARCH_BOUND {
                return Ok(None);
            }
            // The candidate center must be a literal zero of the sequence;
            // with at most one p-adic zero in the class this confirms the
            // series zero is exactly the integer b_hat.
            let center = ell as i64 + b_hat * n as i64;
            let value = spec.term(center)?;
            if !value.is_zero() {
                return Ok(None);
            }
            let vn = padic::valuation(&BigInt::from(n), p).unwrap_or(0) as i64;
            Ok(Some(ClassLaw::Linear {
                center,
                kappa: s as i64 + v_star - vn,
                slope: 1,
            }))
        }
        _ => Ok(None),
    }
}

/// Residue mod p of the unique candidate zero: `−(β₀/p^{v*})·(β₁/p^{v*})^{−1}`.
fn starting_residue(series: &crate::series::SeriesApprox, v_star: i64, p: u64) -> Result<u64> {
    let prec = series.prec;
    let shift = padic::pow_big(p, v_star as u32);
    let h0 = match series.valuation(0) {
        None => BigUint::zero(),
        Some(_) => series.residue(0, prec)?.residue / &shift,
    };
    let h1 = series.residue(1, prec)?.residue / &shift;
    let pb = BigUint::from(p);
    let h0p = (&h0 % &pb).to_u64().expect("residue below p");
    let h1p = (&h1 % &pb).to_u64().expect("residue below p");
    if h1p == 0 {
        return Err(Error::HenselFails("linear coefficient is not a unit".into()));
    }
    let inv = mod_inverse_u64(h1p, p);
    Ok(((p - h0p % p) % p * inv) % p)
}

fn mod_inverse_u64(x: u64, p: u64) -> u64 {
    // Fermat: p is prime and x a unit.
    let mut acc = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Compare a law against exact valuations for `1 ≤ n ≤ n_max`, working at a
/// level a few digits above the largest finite prediction. Returns every
/// disagreement (empty = verified).
pub fn verify_law(spec: &RecurrenceSpec, p: u64, law: &ValuationLaw, n_max: u64) -> Vec<Mismatch> {
    // Verification level: the largest possible finite prediction plus slack.
    let max_center = law
        .classes
        .iter()
        .map(|c| match *c {
            ClassLaw::Linear { center, .. } => center.unsigned_abs(),
            _ => 0,
        })
        .max()
        .unwrap_or(0);
    let max_kappa = law
        .classes
        .iter()
        .map(|c| match *c {
            ClassLaw::Constant { kappa } => kappa.max(0),
            ClassLaw::Linear { kappa, slope, .. } => {
                let reach = ilog_p(n_max + max_center, p) as i64 + 1;
                (kappa + slope as i64 * reach).max(0)
            }
            ClassLaw::Underived => 0,
        })
        .max()
        .unwrap_or(0);
    let level = (max_kappa as u64 + 8).min(10_000) as u32;
    let modulus = padic::pow_big(p, level);
    let residues = spec.stride_residues(0, 1, n_max as usize + 1, &modulus);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let actual = {
            let r = &residues[n as usize];
            if r.is_zero() {
                None
            } else {
                Some(padic::valuation(&BigInt::from(r.clone()), p).expect("nonzero"))
            }
        };
        let ok = match law.predict(n as i64) {
            Prediction::Finite(k) => k >= 0 && actual == Some(k as u64),
            Prediction::Infinite => actual.is_none(),
            Prediction::Unavailable => true, // nothing claimed, nothing violated
        };
        if !ok {
            out.push(Mismatch { n: n as i64, predicted: law.predict(n as i64), actual });
        }
    }
    out
}

fn ilog_p(x: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= x {
        v += 1;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v
}
