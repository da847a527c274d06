//! The interpolating p-adic series of a residue class, built purely from
//! integer finite differences, with certified zero counting (Strassman /
//! Newton polygon) and zero location (Hensel / Newton iteration).
//!
//! For a class `ℓ mod N` (N the period at the base level `p^s`), the function
//! `m ↦ x_{ℓ+mN}` extends to a p-adic analytic function whose Taylor
//! coefficients — after dividing by the base power `p^s` — are
//!
//! ```text
//! β_k = (1/(k!·p^s)) Σ_{m≥k} γ_{k,m} · Δ^m_N x_ℓ
//! ```
//!
//! where `γ_{k,m}` is the exact rational coefficient of `u^m` in
//! `(log(1+u))^k` and `Δ^m_N x_ℓ` is the m-th finite difference of the
//! sequence with step N. Everything stays in ℚ: no extension-field arithmetic
//! is ever performed, and each stored coefficient is an exact rational that
//! agrees with the true coefficient up to `O(p^K)`.
//!
//! Valuation facts used throughout (all consequences of `ν(λ^N − 1) ≥ s` and
//! the unramified-unit-root setup; checked at runtime where cheap):
//!
//! * `ν_p(Δ^m_N x_ℓ) ≥ m·s` — verified for every difference actually taken;
//! * `ν_p(β_k) ≥ k·s − s − ν_p(k!)` — the certified tail floor;
//! * the tail floor is minorized by the increasing function
//!   `φ(k) = k·s − s − (k−1)/(p−1)`, which makes truncation sound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{self, PadicApprox};
use crate::sequence::RecurrenceSpec;

/// Truncated Taylor coefficients of one residue class, certified mod `p^prec`.
#[derive(Debug, Clone)]
pub struct SeriesApprox {
    pub p: u64,
    /// Residue class `ℓ ∈ [0, N)`.
    pub ell: u64,
    /// The step `N` (period of the sequence mod `p^s`).
    pub step: u64,
    /// Base level: the series is for `f_ℓ / p^s`; `s = 2` at `p = 2`, else 1.
    pub s: u32,
    /// Certified precision: stored coefficients match the true `β_k mod p^prec`.
    pub prec: u32,
    /// Exact rational partial sums `β_0 .. β_D`.
    coeffs: Vec<BigRational>,
    /// Difference order used in construction.
    pub diff_order: u32,
}

/// A certified simple zero of a class series.
#[derive(Debug, Clone)]
pub struct ZeroCertificate {
    /// The zero, as a p-adic integer mod `p^{prec}` (precision after
    /// renormalizing the series by its minimal coefficient valuation).
    pub b: PadicApprox,
    /// Valuation of the renormalized series evaluated at `b` (≥ `b.prec − 1`).
    pub residual_valuation: u32,
    /// Always 1 — only simple zeros are certified.
    pub multiplicity: u32,
    /// The starting residue mod p.
    pub b0: u64,
    /// The renormalization exponent `v* = min_k ν(β_k)` divided out before
    /// Hensel lifting.
    pub renormalization: i64,
}

impl SeriesApprox {
    /// Highest explicitly computed coefficient index.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The exact rational partial sum for `β_k`.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Certified valuation of `β_k`: `Some(v)` when `v < prec` (then the true
    /// coefficient has exactly this valuation), `None` when `β_k ≡ 0 mod
    /// p^prec` (true valuation is ≥ prec, possibly ∞).
    pub fn valuation(&self, k: usize) -> Option<i64> {
        let v = vp_rational(&self.coeffs[k], self.p)?;
        if v >= self.prec as i64 {
            None
        } else {
            Some(v)
        }
    }

    /// `β_k` as a residue mod `p^w` (requires `w ≤ prec` and a p-integral
    /// coefficient).
    pub fn residue(&self, k: usize, w: u32) -> Result<PadicApprox> {
        if w > self.prec {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient {k} is certified only mod p^{}",
                self.prec
            )));
        }
        rational_residue(&self.coeffs[k], self.p, w)
    }

    /// Certified lower bound for `ν_p(β_k)` — valid for every k, in
    /// particular beyond the stored degree: `k·s − s − ν_p(k!)`.
    pub fn tail_floor(&self, k: u32) -> i64 {
        k as i64 * self.s as i64 - self.s as i64 - padic::vp_factorial(k as u64, self.p) as i64
    }

    /// Exact rational evaluation of the stored partial sum at integer `m`.
    pub fn eval_rational(&self, m: i64) -> BigRational {
        let mb = BigRational::from(BigInt::from(m));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &mb + c;
        }
        acc
    }
}

/// `ν_p` of a rational; `None` for 0.
pub fn vp_rational(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let num_v = padic::valuation(r.numer(), p).expect("nonzero numerator") as i64;
    let den_v = padic::valuation(r.denom(), p).expect("nonzero denominator") as i64;
    Some(num_v - den_v)
}

/// A p-integral rational as a residue mod `p^w`.
fn rational_residue(r: &BigRational, p: u64, w: u32) -> Result<PadicApprox> {
    if let Some(v) = vp_rational(r, p) {
        if v < 0 {
            return Err(Error::Domain(format!(
                "value has negative valuation {v}; no residue mod {p}^{w}"
            )));
        }
    }
    let m = padic::pow_big(p, w);
    let num = r.numer().mod_floor_big(&m);
    let den_v = padic::valuation(r.denom(), p).unwrap_or(0);
    debug_assert_eq!(den_v, 0, "reduced p-integral rational has unit denominator");
    let den = r.denom().mod_floor_big(&m);
    let inv = padic::inv_mod(&den, &m)?;
    Ok(PadicApprox::new(p, w, num * inv))
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigUint) -> BigUint;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigUint) -> BigUint {
        use num_integer::Integer;
        let mi = BigInt::from(m.clone());
        self.mod_floor(&mi).to_biguint().expect("mod_floor is nonnegative")
    }
}

/// The base level for a prime: 2 for p = 2 (log/exp convergence needs mod 4),
/// 1 for odd primes.
pub fn base_level(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// Build the class series for `ℓ mod N` at certified precision `K`.
///
/// `n_step` must be the period of the sequence mod `p^s` (s = [`base_level`]);
/// the construction checks the implied congruences `ν(Δ^m) ≥ m·s` and fails
/// with [`Error::Indeterminate`] if the step does not realize them. The number
/// of explicit coefficients and the difference order are chosen adaptively so
/// that every dropped term provably has valuation ≥ K.
pub fn class_series(
    spec: &RecurrenceSpec,
    p: u64,
    ell: u64,
    n_step: u64,
    k_prec: u32,
    degree: Option<u32>,
) -> Result<SeriesApprox> {
    let s = base_level(p);
    if k_prec < s + 1 {
        return Err(Error::Validation(format!("precision K = {k_prec} too small (need > s = {s})")));
    }
    if ell >= n_step {
        return Err(Error::Validation(format!("class ℓ = {ell} outside [0, N = {n_step})")));
    }
    // Explicit degree: the default 6, or more when K demands it —
    // smallest D with φ(D+1) ≥ K + 2 for the increasing minorant
    // φ(k) = k·s − s − (k−1)/(p−1).
    let d = degree.unwrap_or_else(|| {
        let mut d = 6u32;
        while !(phi_exceeds(d + 1, s, p, k_prec as i64 + 2)) {
            d += 1;
        }
        d
    });
    // Difference order: dropped terms (index m > J) must all have
    // ν(γ_{k,m} Δ^m / (k! p^s)) ≥ K for every retained k. Using
    // ν ≥ m·s − k·(⌊log_p m⌋ + 1) − ν(k!) − s, which is increasing in m once
    // m ≥ 2k, the first admissible cutoff is found by scanning.
    let mut j = d.max(k_prec + 4); // at least the fixed default K + 4
    for k in 0..=d {
        let mut m = (2 * k).max(j + 1);
        loop {
            let bound = m as i64 * s as i64
                - k as i64 * (ilog_p(m as u64, p) as i64 + 1)
                - padic::vp_factorial(k as u64, p) as i64
                - s as i64;
            if m >= 2 * k && bound >= k_prec as i64 {
                break;
            }
            m += 1;
            if m > 10_000 {
                return Err(Error::PrecisionExhausted(
                    "difference order exceeds the configured cap".into(),
                ));
            }
        }
        j = j.max(m - 1);
    }
    // Working modulus: p^W with W = K + max_k(k·⌊log_p J⌋ + ν_p(k!)) + s + 2,
    // so reducing the differences mod p^W perturbs no β_k below p^K.
    let mut max_loss = 0i64;
    for k in 0..=d {
        let loss = k as i64 * ilog_p(j as u64, p) as i64 + padic::vp_factorial(k as u64, p) as i64;
        max_loss = max_loss.max(loss);
    }
    let w = k_prec + max_loss as u32 + s + 2;
    let modulus = padic::pow_big(p, w);

    // Differences Δ^m_N x_ℓ mod p^W via one forward pass and a difference table.
    let strided = spec.stride_residues(ell, n_step, j as usize + 1, &modulus);
    let mut row: Vec<BigUint> = strided;
    let mut diffs: Vec<BigUint> = Vec::with_capacity(j as usize + 1);
    diffs.push(row[0].clone());
    for m in 1..=j as usize {
        let mut next = Vec::with_capacity(row.len() - 1);
        for t in 0..row.len() - 1 {
            let v = (&row[t + 1] + &modulus - &row[t]) % &modulus;
            next.push(v);
        }
        row = next;
        diffs.push(row[0].clone());
        // Certified congruence: ν(Δ^m) ≥ min(m·s, W). A violation means the
        // step N does not realize the base-level periodicity.
        let need = (m as u64 * s as u64).min(w as u64);
        let have = padic::valuation(&BigInt::from(diffs[m].clone()), p).unwrap_or(w as u64);
        if have < need {
            return Err(Error::Indeterminate(format!(
                "difference of order {m} has valuation {have} < {need}; step {n_step} is not a period at level p^{s}"
            )));
        }
    }

    // γ_{k,m}: coefficients of (log(1+u))^k, exact rationals, degree ≤ J.
    let log_powers = log_power_table(j as usize, d as usize);

    let ps = BigRational::from(BigInt::from(padic::pow_big(p, s)));
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    let mut factorial = BigRational::one();
    for (k, gamma_row) in log_powers.iter().enumerate().take(d as usize + 1) {
        if k > 0 {
            factorial *= BigRational::from(BigInt::from(k as u64));
        }
        let mut acc = BigRational::zero();
        for (m, diff) in diffs.iter().enumerate().take(j as usize + 1).skip(k) {
            let gamma = &gamma_row[m];
            if gamma.is_zero() {
                continue;
            }
            acc += gamma * BigRational::from(BigInt::from(diff.clone()));
        }
        coeffs.push(acc / (&factorial * &ps));
    }

    Ok(SeriesApprox { p, ell, step: n_step, s, prec: k_prec, coeffs, diff_order: j })
}

/// Does `φ(k) = k·s − s − (k−1)/(p−1)` reach `target`? (Exact rational check.)
fn phi_exceeds(k: u32, s: u32, p: u64, target: i64) -> bool {
    // (k·s − s)·(p−1) − (k−1) ≥ target·(p−1)
    let lhs = (k as i64 * s as i64 - s as i64) * (p as i64 - 1) - (k as i64 - 1);
    lhs >= target * (p as i64 - 1)
}

fn ilog_p(j: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= j {
        v += 1;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v
}

/// Rows `k = 0..=kmax` of the table `γ_{k,m}` (coefficient of `u^m` in
/// `(log(1+u))^k`), each row up to degree `jmax`.
fn log_power_table(jmax: usize, kmax: usize) -> Vec<Vec<BigRational>> {
    let mut log1: Vec<BigRational> = vec![BigRational::zero(); jmax + 1];
    for (m, v) in log1.iter_mut().enumerate().skip(1) {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        *v = BigRational::new(BigInt::from(sign), BigInt::from(m as u64));
    }
    let mut rows = Vec::with_capacity(kmax + 1);
    let mut unit = vec![BigRational::zero(); jmax + 1];
    unit[0] = BigRational::one();
    rows.push(unit);
    for k in 1..=kmax {
        let prev = &rows[k - 1];
        let mut next = vec![BigRational::zero(); jmax + 1];
        for (i, ci) in prev.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (jj, lj) in log1.iter().enumerate().skip(1) {
                if i + jj > jmax {
                    break;
                }
                let t = ci * lj;
                next[i + jj] += t;
            }
        }
        rows.push(next);
    }
    rows
}

/// Strassman / Newton-polygon zero count for the class series.
///
/// Returns `(μ, exact)`: at most μ zeros in ℤ_p; `exact` when the minimal
/// valuation `v*` is certified, μ is the largest index attaining it among the
/// stored coefficients, and the tail floor beyond the stored degree strictly
/// exceeds `v*` (then the count is exactly the Newton-polygon count).
pub fn newton_count(series: &SeriesApprox) -> Result<(u32, bool)> {
    let d = series.degree();
    let mut min_v: Option<i64> = None;
    let mut mu = 0u32;
    for k in 0..=d {
        if let Some(v) = series.valuation(k) {
            match min_v {
                None => {
                    min_v = Some(v);
                    mu = k as u32;
                }
                Some(mv) if v < mv => {
                    min_v = Some(v);
                    mu = k as u32;
                }
                Some(mv) if v == mv => {
                    mu = k as u32;
                }
                _ => {}
            }
        }
    }
    let v_star = match min_v {
        None => {
            return Err(Error::Indeterminate(
                "all coefficients vanish at the working precision".into(),
            ))
        }
        Some(v) => v,
    };
    // Tail beyond the stored degree: the increasing minorant
    // φ(k) = k·s − s − (k−1)/(p−1) must strictly exceed v*.
    let exact = phi_exceeds(d as u32 + 1, series.s, series.p, v_star + 1);
    Ok((mu, exact))
}

/// Hensel lifting of a simple zero, starting from `b0 mod p`.
///
/// The series is renormalized by `p^{v*}` (v* = minimal coefficient
/// valuation); the renormalized `h` must satisfy `ν(h(b0)) ≥ 1` and
/// `h′(b0)` a unit. Newton iteration then refines `b0` to the unique zero
/// `b ≡ b0 (mod p)` at the full remaining precision.
pub fn hensel_zero(series: &SeriesApprox, b0: u64) -> Result<ZeroCertificate> {
    let p = series.p;
    let d = series.degree();
    let mut v_star: Option<i64> = None;
    for k in 0..=d {
        if let Some(v) = series.valuation(k) {
            v_star = Some(v_star.map_or(v, |mv: i64| mv.min(v)));
        }
    }
    let v_star = v_star.ok_or_else(|| {
        Error::Indeterminate("all coefficients vanish at the working precision".into())
    })?;
    let prec_rel = series.prec as i64 - v_star;
    if prec_rel < 2 {
        return Err(Error::PrecisionExhausted(format!(
            "only {prec_rel} certified digits remain after renormalizing by p^{v_star}"
        )));
    }
    let prec_rel = prec_rel as u32;
    let modulus = padic::pow_big(p, prec_rel);
    // Renormalized integer coefficients h_k = β_k / p^{v*} mod p^{prec_rel}.
    let scale = BigRational::new(
        BigInt::one(),
        BigInt::from(p).pow(v_star.unsigned_abs() as u32),
    );
    let mut h: Vec<BigUint> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let hk = if v_star >= 0 {
            series.coeff(k) * &scale
        } else {
            series.coeff(k) / &scale
        };
        h.push(rational_residue(&hk, p, prec_rel)?.residue);
    }
    let eval = |x: &BigUint, cs: &[BigUint]| -> BigUint {
        let mut acc = BigUint::zero();
        for c in cs.iter().rev() {
            acc = (acc * x + c) % &modulus;
        }
        acc
    };
    let deriv: Vec<BigUint> =
        h.iter().enumerate().skip(1).map(|(k, c)| (c * BigUint::from(k as u64)) % &modulus).collect();

    let b0_red = BigUint::from(b0 % p);
    // Hensel hypotheses at the starting residue.
    let f0 = eval(&b0_red, &h);
    if !(&f0 % BigUint::from(p)).is_zero() {
        return Err(Error::HenselFails(format!("h(b0 = {b0}) is a unit; no zero in this residue disc")));
    }
    let d0 = eval(&b0_red, &deriv);
    if (&d0 % BigUint::from(p)).is_zero() {
        return Err(Error::HenselFails("h′(b0) is not a unit; the zero is not simple".into()));
    }

    // Newton iteration: quadratic convergence, so ⌈log₂(prec)⌉ + 2 steps suffice.
    let mut b = b0_red.clone();
    let steps = 64 - u64::from(prec_rel).leading_zeros() + 2;
    for _ in 0..steps {
        let fb = eval(&b, &h);
        let db = eval(&b, &deriv);
        let inv = padic::inv_mod(&db, &modulus)?;
        let delta = fb * inv % &modulus;
        b = (&b + &modulus - delta) % &modulus;
    }
    let residual = eval(&b, &h);
    let res_val = if residual.is_zero() {
        prec_rel
    } else {
        padic::valuation(&BigInt::from(residual), p).unwrap_or(prec_rel as u64) as u32
    };
    if res_val + 1 < prec_rel {
        return Err(Error::HenselFails(format!(
            "Newton iteration stalled: residual valuation {res_val} < {prec_rel}"
        )));
    }
    // The lift stayed in the starting residue disc.
    debug_assert_eq!((&b % BigUint::from(p)).to_u64().unwrap_or(0), b0 % p);
    Ok(ZeroCertificate {
        b: PadicApprox::new(p, prec_rel, b),
        residual_valuation: res_val,
        multiplicity: 1,
        b0: b0 % p,
        renormalization: v_star,
    })
}

/// Certifies that the class `ℓ` has no p-adic zero at all: true iff
/// `p^s ∤ x_ℓ`, in which case `ν_p` is at most `s − 1` on the whole class.
pub fn no_zero_certificate(spec: &RecurrenceSpec, p: u64, ell: u64, _n_step: u64) -> bool {
    let s = base_level(p);
    let m = padic::pow_big(p, s);
    !spec.term_mod(ell, &m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mtripell_series(ell: u64, k: u32) -> SeriesApprox {
        let spec = RecurrenceSpec::mtripell();
        let n = spec.period(2, 2).unwrap();
        assert_eq!(n, 6);
        class_series(&spec, 2, ell, n, k, None).unwrap()
    }

    #[test]
    fn class0_beta_values() {
        let s = mtripell_series(0, 6);
        // x_0 = 0, so β_0 = 0 exactly.
        assert!(s.coeff(0).is_zero());
        // β_1 ≡ 2 (mod 2⁴), full residue 18 (mod 2⁶).
        assert_eq!(s.residue(1, 4).unwrap().residue, BigUint::from(2u32));
        assert_eq!(s.residue(1, 6).unwrap().residue, BigUint::from(18u32));
        assert_eq!(s.valuation(1), Some(1));
        // β_2 ≡ 16 (mod 2⁶), valuation 4.
        assert_eq!(s.residue(2, 6).unwrap().residue, BigUint::from(16u32));
        assert_eq!(s.valuation(2), Some(4));
    }

    #[test]
    fn class5_beta_values() {
        let s = mtripell_series(5, 6);
        // β_0 ≡ 12, β_1 ≡ 20 (mod 2⁶); β_1 ≡ 4 (mod 2⁴).
        assert_eq!(s.residue(0, 6).unwrap().residue, BigUint::from(12u32));
        assert_eq!(s.residue(1, 6).unwrap().residue, BigUint::from(20u32));
        assert_eq!(s.residue(1, 4).unwrap().residue, BigUint::from(4u32));
        assert_eq!(s.valuation(0), Some(2));
        assert_eq!(s.valuation(1), Some(2));
        assert_eq!(s.valuation(2), Some(3));
    }

    #[test]
    fn first_order_consistency_formula() {
        // β_1 ≡ (Δ¹x_0 − Δ²x_0/2)/2² (mod 2⁴) with Δ¹ = 136, Δ² = 69760.
        let direct = BigRational::new(
            BigInt::from(136 - 69760 / 2),
            BigInt::from(4),
        );
        let s = mtripell_series(0, 4);
        let diff = s.coeff(1) - direct;
        if !diff.is_zero() {
            let v = vp_rational(&diff, 2).unwrap();
            assert!(v >= 4, "β_1 differs from the first-order formula below 2⁴ (ν = {v})");
        }
    }

    #[test]
    fn interpolation_matches_sequence() {
        let spec = RecurrenceSpec::mtripell();
        for ell in [0u64, 5] {
            let s = mtripell_series(ell, 8);
            for m in 0..=20i64 {
                let val = s.eval_rational(m) * BigRational::from(BigInt::from(4));
                let x = spec.term(ell as i64 + 6 * m).unwrap();
                let diff = val - BigRational::from(x);
                if diff.is_zero() {
                    continue;
                }
                let v = vp_rational(&diff, 2).unwrap();
                assert!(v >= 6, "m = {m}: interpolation only matches to 2^{v}, need 2^6");
            }
        }
    }

    #[test]
    fn tail_floor_certifies_computed_coefficients() {
        let s = mtripell_series(0, 6);
        for k in 1..=s.degree() {
            if let Some(v) = s.valuation(k) {
                assert!(
                    v >= s.tail_floor(k as u32),
                    "β_{k} has ν = {v} < floor {}",
                    s.tail_floor(k as u32)
                );
            }
        }
    }

    #[test]
    fn newton_counts_for_mtripell_classes() {
        // ℓ=0: β_0 = 0, ν(β_1) = 1 minimal and unique → μ = 1, exact.
        assert_eq!(newton_count(&mtripell_series(0, 6)).unwrap(), (1, true));
        // ℓ=5: ν(β_0) = ν(β_1) = 2, largest min-index 1 → μ = 1, exact.
        assert_eq!(newton_count(&mtripell_series(5, 6)).unwrap(), (1, true));
        // ℓ=1: x_1 = 1, β_0 = 1/4 has valuation −2, uniquely minimal → μ = 0.
        assert_eq!(newton_count(&mtripell_series(1, 6)).unwrap(), (0, true));
        // ℓ=2: x_2 = 2, ν(β_0) = −1 → μ = 0.
        assert_eq!(newton_count(&mtripell_series(2, 6)).unwrap(), (0, true));
    }

    #[test]
    fn hensel_zero_at_origin() {
        let s = mtripell_series(0, 8);
        let cert = hensel_zero(&s, 0).unwrap();
        assert!(cert.b.residue.is_zero(), "zero of the ℓ=0 class is exactly 0");
        assert_eq!(cert.multiplicity, 1);
        assert_eq!(cert.renormalization, 1);
    }

    #[test]
    fn hensel_zero_at_minus_one() {
        let s = mtripell_series(5, 8);
        // b0 = −β_0·β_1^{−1} mod 2 = 1.
        let cert = hensel_zero(&s, 1).unwrap();
        let m = cert.b.modulus();
        // b = −1: residue p^prec − 1.
        assert_eq!(cert.b.residue, &m - BigUint::from(1u32));
        assert!(cert.residual_valuation + 1 >= cert.b.prec);
    }

    #[test]
    fn hensel_rejects_unit_constant_term() {
        let s = mtripell_series(1, 6);
        assert!(matches!(hensel_zero(&s, 0), Err(Error::HenselFails(_))));
        assert!(matches!(hensel_zero(&s, 1), Err(Error::HenselFails(_))));
    }

    #[test]
    fn no_zero_certificates() {
        let spec = RecurrenceSpec::mtripell();
        assert!(no_zero_certificate(&spec, 2, 1, 6));
        assert!(no_zero_certificate(&spec, 2, 4, 6));
        assert!(no_zero_certificate(&spec, 2, 2, 6)); // ν(x_2) = 1 < 2
        assert!(no_zero_certificate(&spec, 2, 3, 6));
        assert!(!no_zero_certificate(&spec, 2, 0, 6));
        assert!(!no_zero_certificate(&spec, 2, 5, 6)); // x_5 = 48, ν = 4 ≥ 2
    }

    #[test]
    fn odd_prime_series() {
        let spec = RecurrenceSpec::mtripell();
        let n = spec.period(5, 1).unwrap();
        assert_eq!(n, 8);
        let s = class_series(&spec, 5, 0, n, 6, None).unwrap();
        assert!(s.coeff(0).is_zero());
        // ν₅(x_8) = 1 ⇒ β_1 = Δ¹/5 + … is a unit.
        assert_eq!(s.valuation(1), Some(0));
        assert_eq!(newton_count(&s).unwrap(), (1, true));
        let cert = hensel_zero(&s, 0).unwrap();
        assert!(cert.b.residue.is_zero());
    }

    #[test]
    fn wrong_step_is_rejected() {
        let spec = RecurrenceSpec::mtripell();
        // N = 3 is the period mod 2 but not mod 4: differences fail the
        // depth-2 congruence.
        let out = class_series(&spec, 2, 0, 3, 6, None);
        assert!(matches!(out, Err(Error::Indeterminate(_))), "got {out:?}");
    }

    #[test]
    fn series_rejects_out_of_range_class() {
        let spec = RecurrenceSpec::mtripell();
        assert!(class_series(&spec, 2, 6, 6, 6, None).is_err());
    }
}
