//! Truncated p-adic arithmetic: valuations, modular inverses, and the p-adic
//! logarithm and exponential with certified output precision.
//!
//! A [`PadicApprox`] is a p-adic integer known modulo `p^prec`. The log and
//! exp implementations keep every intermediate at enough working precision
//! that the result is certified to the full input precision: for each series
//! term `u^j/j` (resp. `z^j/j!`) the divisor's p-part `p^e` is absorbed by
//! computing `u^j mod p^{prec+e}` first, so no bits of the answer are lost to
//! the division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A p-adic integer truncated to `prec` digits: the value is `residue + O(p^prec)`
/// with `residue ∈ [0, p^prec)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicApprox {
    pub p: u64,
    pub prec: u32,
    pub residue: BigUint,
}

impl PadicApprox {
    /// Wrap a residue, reducing it mod `p^prec`.
    pub fn new(p: u64, prec: u32, residue: BigUint) -> Self {
        let m = pow_big(p, prec);
        PadicApprox { p, prec, residue: residue % m }
    }

    /// Wrap a signed value, reducing it into `[0, p^prec)`.
    pub fn from_bigint(p: u64, prec: u32, value: &BigInt) -> Self {
        let m = BigInt::from(pow_big(p, prec));
        let r = value.mod_floor(&m).to_biguint().expect("mod_floor is nonnegative");
        PadicApprox { p, prec, residue: r }
    }

    pub fn modulus(&self) -> BigUint {
        pow_big(self.p, self.prec)
    }

    /// Valuation of the known residue; `None` means the residue is 0, i.e.
    /// the valuation is at least `prec` (indistinguishable from ∞ here).
    pub fn valuation(&self) -> Option<u32> {
        if self.residue.is_zero() {
            return None;
        }
        let mut v = 0u32;
        let p = BigUint::from(self.p);
        let mut r = self.residue.clone();
        while (&r % &p).is_zero() {
            r /= &p;
            v += 1;
        }
        Some(v)
    }

    /// Is this a unit (valuation 0)?
    pub fn is_unit(&self) -> bool {
        !(&self.residue % BigUint::from(self.p)).is_zero()
    }
}

/// `ν_p(x)` for an integer; `None` encodes `ν_p(0) = ∞`.
pub fn valuation(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut r = x.clone();
    loop {
        let (q, rem) = r.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        r = q;
        v += 1;
    }
}

/// `ν_p(x)` for a u64; `None` encodes `ν_p(0) = ∞`.
pub fn valuation_u64(x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    let mut r = x;
    while r.is_multiple_of(p) {
        r /= p;
        v += 1;
    }
    Some(v)
}

/// Inverse of `x` mod `m` by the extended Euclidean algorithm.
pub fn inv_mod(x: &BigUint, m: &BigUint) -> Result<BigUint> {
    let xi = BigInt::from(x.clone());
    let mi = BigInt::from(m.clone());
    let e = xi.extended_gcd(&mi);
    if !e.gcd.is_one() {
        return Err(Error::NotAUnit { residue: x.to_string(), modulus: m.to_string() });
    }
    Ok(e.x.mod_floor(&mi).to_biguint().expect("mod_floor is nonnegative"))
}

/// p-adic logarithm of a 1-unit.
///
/// Requires `z ≡ 1 (mod p)` for odd p, `z ≡ 1 (mod 4)` for p = 2. The result
/// is certified to the input precision: `log_unit(z) = log(z) + O(p^prec)`.
pub fn log_unit(z: &PadicApprox) -> Result<PadicApprox> {
    let (p, prec) = (z.p, z.prec);
    let modulus = z.modulus();
    let u = {
        // u = z − 1 mod p^prec
        let one = BigUint::one();
        (&z.residue + &modulus - one) % &modulus
    };
    let min_v = if p == 2 { 2 } else { 1 };
    let v = match (PadicApprox { p, prec, residue: u.clone() }).valuation() {
        None => {
            // z ≡ 1 to full precision: log ≡ 0 to full precision.
            return Ok(PadicApprox::new(p, prec, BigUint::zero()));
        }
        Some(v) => v,
    };
    if v < min_v {
        return Err(Error::Domain(format!(
            "log requires a 1-unit: ν_{p}(z − 1) = {v} < {min_v}"
        )));
    }
    // Work mod p^{prec + gmax}; gmax bounds ν_p(j) over the terms used.
    let gmax = ilog_p(terms_needed(v, prec, p), p) + 1;
    let wmod = pow_big(p, prec + gmax);
    let mut upow = u.clone() % &wmod; // u^j mod p^{prec+gmax}
    let mut acc = BigInt::zero();
    let big_modulus = BigInt::from(modulus.clone());
    let mut j = 1u64;
    loop {
        let e = valuation_u64(j, p).expect("j >= 1");
        if j as u32 * v >= prec + e {
            // ν(u^j/j) ≥ prec — this and (by monotonicity in j) all later
            // terms vanish at the output precision.
            if j as u32 * v > prec + ilog_p(j, p) {
                break;
            }
        } else {
            // term = u^j / j, valuation jv − e < prec
            let m_e = pow_big(p, prec + e);
            let top = &upow % &m_e;
            let shifted = top / pow_big(p, e); // exact: the true value has ν ≥ e
            let junit = BigUint::from(j / pow_u64(p, e));
            let inv = inv_mod(&(junit % &modulus), &modulus)?;
            let term = BigInt::from(shifted * inv % &modulus);
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        j += 1;
        upow = upow * (&u % &wmod) % &wmod;
        if j > 4 * (prec as u64 + 2) * 2 {
            return Err(Error::PrecisionExhausted("log series failed to terminate".into()));
        }
    }
    Ok(PadicApprox::from_bigint(p, prec, &acc.mod_floor(&big_modulus)))
}

/// p-adic exponential of a small argument.
///
/// Requires `ν_p(z) ≥ 1` for odd p, `ν_p(z) ≥ 2` for p = 2 (the convergence
/// domain). The result is certified to the input precision.
pub fn exp_small(z: &PadicApprox) -> Result<PadicApprox> {
    let (p, prec) = (z.p, z.prec);
    let modulus = z.modulus();
    let min_v = if p == 2 { 2 } else { 1 };
    let v = match z.valuation() {
        None => return Ok(PadicApprox::new(p, prec, BigUint::one())),
        Some(v) => v,
    };
    if v < min_v {
        return Err(Error::Domain(format!(
            "exp requires ν_{p}(z) ≥ {min_v}, got {v}"
        )));
    }
    // ν(z^j/j!) = jv − ν(j!) ≥ j·(v(p−1) − 1)/(p−1); the bound is monotone in
    // j (unlike the term valuation itself), so the cutoff is sound.
    let denom = v as u64 * (p - 1) - 1; // ≥ 1 in the convergence domain
    let terms = (prec as u64 * (p - 1)) / denom + 1;
    let gmax = vp_factorial(terms, p) as u32 + 1;
    let wmod = pow_big(p, prec + gmax);
    let mut acc = BigInt::one();
    let mut zpow = BigUint::one(); // z^j mod p^{prec+gmax}
    let zred = &z.residue % &wmod;
    let big_modulus = BigInt::from(modulus.clone());
    for j in 1..=terms {
        zpow = zpow * &zred % &wmod;
        let e = vp_factorial(j, p) as u32;
        if (j as u32) * v >= prec + e {
            continue; // below output precision
        }
        let m_e = pow_big(p, prec + e);
        let top = &zpow % &m_e;
        let shifted = top / pow_big(p, e); // exact: true value has ν ≥ e ·
        let fact_unit = factorial_unit_mod(j, p, &modulus);
        let inv = inv_mod(&fact_unit, &modulus)?;
        acc += BigInt::from(shifted * inv % &modulus);
    }
    Ok(PadicApprox::from_bigint(p, prec, &acc.mod_floor(&big_modulus)))
}

/// `ν_p(j!)` by Legendre's formula.
pub(crate) fn vp_factorial(j: u64, p: u64) -> u64 {
    let mut acc = 0;
    let mut q = p;
    loop {
        acc += j / q;
        match q.checked_mul(p) {
            Some(next) if next <= j => q = next,
            _ => break,
        }
    }
    acc
}

/// The unit part of `j!` mod `m`: `j! / p^{ν_p(j!)} mod m`.
fn factorial_unit_mod(j: u64, p: u64, m: &BigUint) -> BigUint {
    let mut acc = BigUint::one();
    for t in 1..=j {
        let mut t = t;
        while t % p == 0 {
            t /= p;
        }
        acc = acc * BigUint::from(t) % m;
    }
    acc
}

pub(crate) fn pow_big(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

pub(crate) fn pow_u64(p: u64, k: u32) -> u64 {
    p.pow(k)
}

/// floor(log_p(j)) for j ≥ 1.
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

/// Upper bound on the largest series index the log needs at valuation `v` and
/// precision `prec` (used only to size the working modulus).
fn terms_needed(v: u32, prec: u32, p: u64) -> u64 {
    let mut j = 1u64;
    while (j as u32) * v < prec + ilog_p(j, p) + 1 {
        j += 1;
    }
    j
}
