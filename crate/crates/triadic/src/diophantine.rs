//! Solving `x_n = m!` exactly: factorial valuations with certified bounds, a
//! certified growth root giving the geometric sandwich, a finite search
//! region derived from a valuation law, and the exact search itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::law::{ClassLaw, ValuationLaw};
use crate::numeric::{cubic_roots, Fixed, RootBracket};
use crate::sequence::RecurrenceSpec;

/// Exact `ν_p(m!)` with the classical bracketing bounds.
#[derive(Debug, Clone)]
pub struct FactorialValuation {
    pub exact: u64,
    /// `m/(p−1) − ⌊log_p m⌋ − 1` (may be negative for small m).
    pub lower: BigRational,
    /// `(m−1)/(p−1)`.
    pub upper: BigRational,
}

/// `ν_p(m!)` by floor-division summation, plus lower/upper bounds.
pub fn factorial_valuation(m: u64, p: u64) -> FactorialValuation {
    let mut exact = 0u64;
    let mut q = p;
    loop {
        exact += m / q;
        match q.checked_mul(p) {
            Some(next) if next <= m => q = next,
            _ => break,
        }
    }
    let lower = BigRational::new(BigInt::from(m), BigInt::from(p - 1))
        - BigRational::from(BigInt::from(ilog_p(m, p)))
        - BigRational::one();
    let upper = BigRational::new(BigInt::from(m - 1), BigInt::from(p - 1));
    FactorialValuation { exact, lower, upper }
}

fn ilog_p(x: u64, p: u64) -> u64 {
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

/// The certified dominant root γ > 1 of a positive-coefficient recurrence,
/// together with the initial-value sandwich hypothesis.
#[derive(Debug, Clone)]
pub struct GrowthBound {
    /// Certified enclosure of γ (width ≤ 2^{−bits}).
    pub gamma: RootBracket,
    /// `γ⁻¹ ≤ x₁ ≤ 1 ≤ x₂ ≤ γ ≤ x₃ ≤ γ²`, checked with outward rounding;
    /// always true on a successfully returned bound.
    pub sandwich_ok: bool,
    pub bits: u32,
}

impl GrowthBound {
    pub fn gamma_f64(&self) -> f64 {
        self.gamma.midpoint().to_f64()
    }
}

/// Locate γ and check the sandwich hypothesis. Requires a, b, c all positive
/// (then P has exactly one positive real root, and it exceeds 1).
pub fn growth_root(spec: &RecurrenceSpec) -> Result<GrowthBound> {
    if spec.a <= 0 || spec.b <= 0 || spec.c <= 0 {
        return Err(Error::HypothesisFailed(
            "growth analysis needs positive recurrence coefficients".into(),
        ));
    }
    let bits = 128;
    let roots = cubic_roots(
        &BigInt::from(spec.a),
        &BigInt::from(spec.b),
        &BigInt::from(spec.c),
        bits,
    )?;
    let one = BigRational::one();
    let gamma = roots
        .real
        .iter()
        .find(|r| r.hi > one)
        .cloned()
        .ok_or_else(|| Error::HypothesisFailed("no real root exceeds 1".into()))?;
    if gamma.lo <= one {
        return Err(Error::PrecisionExhausted("root enclosure straddles 1".into()));
    }
    // Sandwich γ⁻¹ ≤ x₁ ≤ 1 ≤ x₂ ≤ γ ≤ x₃ ≤ γ², each side with the
    // conservative endpoint of the enclosure.
    let x1 = BigRational::from(BigInt::from(spec.x1));
    let x2 = BigRational::from(BigInt::from(spec.x2));
    let x3 = spec.term_rational(3);
    let ok = &x1 * &gamma.lo >= one
        && x1 <= one
        && x2 >= one
        && x2 <= gamma.lo
        && gamma.hi <= x3
        && x3 <= &gamma.lo * &gamma.lo;
    if !ok {
        return Err(Error::HypothesisFailed(
            "initial values do not satisfy the geometric sandwich".into(),
        ));
    }
    Ok(GrowthBound { gamma, sandwich_ok: true, bits })
}

/// A valuation cap of the conjectured shape:
/// `ν_p(x_n) ≤ κ + μ·ν_p(n − a)` with `|a| ≤ offset`, for all n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValuationCap {
    pub kappa: i64,
    pub mu: u32,
    /// Largest |center| among the affine classes.
    pub offset: u64,
}

impl ValuationCap {
    /// Extract the cap from a fully derived law. A law with underived
    /// classes bounds nothing globally.
    pub fn from_law(law: &ValuationLaw) -> Result<ValuationCap> {
        let mut kappa = i64::MIN;
        let mut mu = 0u32;
        let mut offset = 0u64;
        for class in &law.classes {
            match *class {
                ClassLaw::Constant { kappa: k } => kappa = kappa.max(k.abs()),
                ClassLaw::Linear { center, kappa: k, slope } => {
                    kappa = kappa.max(k.abs());
                    mu = mu.max(slope);
                    offset = offset.max(center.unsigned_abs());
                }
                ClassLaw::Underived => {
                    return Err(Error::NoLawAvailable(
                        "law has underived classes; no global valuation cap".into(),
                    ));
                }
            }
        }
        if kappa == i64::MIN {
            return Err(Error::NoLawAvailable("law has no classes".into()));
        }
        Ok(ValuationCap { kappa, mu, offset })
    }
}

/// A finite search region for `x_n = m!`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCertificate {
    pub p: u64,
    /// Solutions require `m ≤ m_max` …
    pub m_max: u64,
    /// … and `n ≤ n_max`.
    pub n_max: u64,
    /// Effective parameters of the exclusion inequality (the raw cap
    /// slackened by the slope: κ_eff = κ + μ, μ_eff = μ + 1 absorb the
    /// rounding `ν_p(n − a) ≤ ⌊log_p(n + |a|)⌋ + 1`).
    pub kappa_eff: i64,
    pub mu_eff: u32,
    pub offset: u64,
    /// The raw cap the certificate came from.
    pub cap: ValuationCap,
    pub gamma: f64,
}

const EXCLUSION_BITS: u32 = 96;

/// Does the exclusion inequality hold at m? — i.e., is
/// `m/(μ_eff(p−1)) − ⌊log_p m⌋/μ_eff − (1+κ_eff)/μ_eff > log_p(nb(m) + a)`
/// with `nb(m) = m·ln(m/2)/ln γ + 2` the growth bound on any solution index?
/// All roundings push the left side down and the right side up, so `true` is
/// a certified exclusion of solutions with this m.
pub(crate) fn exclusion_holds(
    p: u64,
    kappa_eff: i64,
    mu_eff: u32,
    offset: u64,
    gamma_lo: &BigRational,
    m: u64,
) -> bool {
    let bits = EXCLUSION_BITS;
    if m < 3 {
        return false;
    }
    let mu = mu_eff as i64;
    // LHS: exact rational, floored into the fixed grid (rounds down).
    let lhs_rat = BigRational::new(BigInt::from(m), BigInt::from(mu) * BigInt::from(p - 1))
        - BigRational::new(BigInt::from(ilog_p(m, p)), BigInt::from(mu))
        - BigRational::new(BigInt::from(1 + kappa_eff), BigInt::from(mu));
    let lhs = Fixed::from_ratio(lhs_rat.numer(), lhs_rat.denom(), bits);
    // nb(m) with γ replaced by its lower enclosure endpoint (γ smaller ⇒ nb
    // larger ⇒ RHS larger: conservative).
    let ln_gamma = Fixed::from_ratio(gamma_lo.numer(), gamma_lo.denom(), bits)
        .ln()
        .expect("gamma > 1");
    let ln_m_half =
        Fixed::from_ratio(&BigInt::from(m), &BigInt::from(2), bits).ln().expect("m ≥ 3");
    let nb = Fixed::from_i64(m as i64, bits)
        .mul(&ln_m_half)
        .div(&ln_gamma)
        .add(&Fixed::from_i64(2, bits));
    let arg = nb.add(&Fixed::from_i64(offset as i64, bits));
    if !arg.is_positive() {
        return false;
    }
    let ln_p = Fixed::from_i64(p as i64, bits).ln().expect("p ≥ 2");
    let rhs = arg.ln().expect("positive argument").div(&ln_p);
    // Guard absorbing the floor-rounding of every Fixed operation above.
    let guard = Fixed { mant: BigInt::one() << (bits - 32), bits };
    lhs.mant > rhs.add(&guard).mant
}

/// Derive the finite search region from a valuation cap: `m_max` is the
/// first m > 5 the inequality excludes (checked contiguous up to 1000), and
/// `n_max = ⌈m_max·ln(m_max/2)/ln γ + 2⌉ + 2` bounds the index by growth.
pub fn factorial_bounds(
    spec: &RecurrenceSpec,
    p: u64,
    cap: &ValuationCap,
) -> Result<BoundCertificate> {
    let growth = growth_root(spec)?;
    let kappa_eff = cap.kappa + cap.mu as i64;
    let mu_eff = cap.mu + 1;
    let offset = cap.offset;
    let gamma_lo = &growth.gamma.lo;
    let mut m_max = None;
    for m in 6..=1_000_000u64 {
        if exclusion_holds(p, kappa_eff, mu_eff, offset, gamma_lo, m) {
            m_max = Some(m);
            break;
        }
    }
    let m_max = m_max.ok_or_else(|| {
        Error::HypothesisFailed("exclusion threshold not reached below 10⁶".into())
    })?;
    // Defensive contiguity check: the exclusion must not lapse again.
    for m in m_max..=1000 {
        if !exclusion_holds(p, kappa_eff, mu_eff, offset, gamma_lo, m) {
            return Err(Error::HypothesisFailed(format!(
                "exclusion lapses at m = {m} after first holding at {m_max}"
            )));
        }
    }
    // n bound from the growth sandwich, rounded outward.
    let bits = EXCLUSION_BITS;
    let ln_gamma =
        Fixed::from_ratio(gamma_lo.numer(), gamma_lo.denom(), bits).ln().expect("gamma > 1");
    let ln_m_half =
        Fixed::from_ratio(&BigInt::from(m_max), &BigInt::from(2), bits).ln().expect("m ≥ 3");
    let nb = Fixed::from_i64(m_max as i64, bits)
        .mul(&ln_m_half)
        .div(&ln_gamma)
        .add(&Fixed::from_i64(2, bits));
    let nb_rat = nb.to_rational();
    let n_max = (nb_rat.ceil().to_integer().to_u64().unwrap_or(u64::MAX)) + 2;
    Ok(BoundCertificate {
        p,
        m_max,
        n_max,
        kappa_eff,
        mu_eff,
        offset,
        cap: *cap,
        gamma: growth.gamma_f64(),
    })
}

/// Exact search for `x_n = m!` inside a certified region. Every reported
/// pair is re-verified by exact evaluation before being returned.
pub fn solve_factorial(spec: &RecurrenceSpec, cert: &BoundCertificate) -> Vec<(u64, u64)> {
    let m_hi = cert.m_max.max(5);
    let n_hi = cert.n_max.max(10);
    let mut terms = Vec::with_capacity(n_hi as usize + 1);
    for n in 0..=n_hi {
        terms.push(spec.term(n as i64).expect("forward terms are integral"));
    }
    let mut out = Vec::new();
    let mut fact = BigInt::one();
    for m in 1..=m_hi {
        fact *= BigInt::from(m);
        for n in 1..=n_hi {
            if terms[n as usize] == fact {
                out.push((n, m));
            }
        }
    }
    // Exact re-verification of every solution.
    for &(n, m) in &out {
        let mut f = BigInt::one();
        for i in 2..=m {
            f *= BigInt::from(i);
        }
        assert_eq!(spec.term(n as i64).expect("in range"), f, "solution ({n}, {m}) failed replay");
    }
    out.sort_unstable();
    out
}
