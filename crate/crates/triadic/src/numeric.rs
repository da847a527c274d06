//! Exact dyadic fixed-point arithmetic and certified real/complex roots of the
//! characteristic cubic.
//!
//! A [`Fixed`] is `mant / 2^bits` with a `BigInt` mantissa — all ring
//! operations are exact except for a final floor at the working scale, so a
//! computation at `bits + guard` scale carries at most a few hundred ulps of
//! accumulated error, far below `2^{-bits}`. Real roots are isolated by
//! bisection with *exact integer* sign evaluations of the cubic at dyadic
//! points, so every returned enclosure is certified, not heuristic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dyadic fixed-point number: `value = mant / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    pub mant: BigInt,
    pub bits: u32,
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Fixed { mant: BigInt::one() << bits, bits }
    }

    pub fn from_int(v: &BigInt, bits: u32) -> Self {
        Fixed { mant: v << bits, bits }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(v), bits)
    }

    /// `num/den` rounded down to the scale.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        Fixed { mant: (num << bits).div_floor(den), bits }
    }

    pub fn add(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, rhs.bits);
        Fixed { mant: &self.mant + &rhs.mant, bits: self.bits }
    }

    pub fn sub(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, rhs.bits);
        Fixed { mant: &self.mant - &rhs.mant, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { mant: -&self.mant, bits: self.bits }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn mul(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, rhs.bits);
        Fixed { mant: (&self.mant * &rhs.mant).div_floor(&(BigInt::one() << self.bits)), bits: self.bits }
    }

    pub fn div(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, rhs.bits);
        Fixed { mant: (&self.mant << self.bits).div_floor(&rhs.mant), bits: self.bits }
    }

    /// Division by a small exact integer.
    pub fn div_int(&self, k: i64) -> Fixed {
        Fixed { mant: self.mant.div_floor(&BigInt::from(k)), bits: self.bits }
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed { mant: &self.mant * k, bits: self.bits }
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Floor square root at the same scale (requires a nonnegative value).
    pub fn sqrt(&self) -> Fixed {
        assert!(!self.mant.is_negative(), "sqrt of negative Fixed");
        Fixed { mant: (self.mant.clone() << self.bits).sqrt(), bits: self.bits }
    }

    /// Natural logarithm of a positive value, at the same scale.
    ///
    /// Range-reduces by powers of two, then evaluates `ln y = 2·atanh((y−1)/(y+1))`
    /// for `y ∈ [1,2)`; the series ratio is at most 1/9.
    pub fn ln(&self) -> Result<Fixed> {
        if !self.mant.is_positive() {
            return Err(Error::Domain("ln of a non-positive value".into()));
        }
        let bits = self.bits;
        // Normalize: self = 2^e · y with y ∈ [1, 2).
        let e = self.mant.bits() as i64 - bits as i64 - 1;
        let y_mant = if e >= 0 { &self.mant >> e as u32 } else { &self.mant << (-e) as u32 };
        let y = Fixed { mant: y_mant, bits };
        let ln_y = atanh_ratio(&y.sub(&Fixed::one(bits)), &y.add(&Fixed::one(bits)));
        Ok(ln_y.add(&ln2(bits).mul_int(e)))
    }

    pub fn to_f64(&self) -> f64 {
        self.mant.to_f64().unwrap_or(f64::NAN) * (-(self.bits as f64)).exp2()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    /// The first `k` decimal digits after the point, as an integer (floor).
    pub fn frac_digits(&self, k: u32) -> BigInt {
        let scaled = &self.mant * BigInt::from(10u32).pow(k);
        scaled.div_floor(&(BigInt::one() << self.bits)).mod_floor(&BigInt::from(10u32).pow(k))
    }
}

/// `2·atanh(num/den) = ln((den+num)/(den−num))` — evaluated as
/// `2·(t + t³/3 + t⁵/5 + …)` with `t = num/den`.
fn atanh_ratio(num: &Fixed, den: &Fixed) -> Fixed {
    let t = num.div(den);
    let tsq = t.mul(&t);
    let mut term = t.clone();
    let mut acc = t;
    let mut k = 1i64;
    loop {
        term = term.mul(&tsq);
        k += 2;
        let contrib = term.div_int(k);
        if contrib.mant.magnitude().bits() <= 1 {
            break;
        }
        acc = acc.add(&contrib);
    }
    acc.mul_int(2)
}

/// `ln 2` at the given scale, via `2·atanh(1/3)`.
pub fn ln2(bits: u32) -> Fixed {
    atanh_ratio(&Fixed::one(bits), &Fixed::from_i64(3, bits))
}

/// A complex value with dyadic components.
#[derive(Debug, Clone)]
pub struct ComplexFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl ComplexFixed {
    pub fn real(re: Fixed) -> Self {
        let bits = re.bits;
        ComplexFixed { re, im: Fixed::zero(bits) }
    }

    pub fn add(&self, rhs: &ComplexFixed) -> ComplexFixed {
        ComplexFixed { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn mul(&self, rhs: &ComplexFixed) -> ComplexFixed {
        ComplexFixed {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn div(&self, rhs: &ComplexFixed) -> ComplexFixed {
        let n = rhs.norm_sq();
        let conj_prod = ComplexFixed {
            re: self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)),
            im: self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)),
        };
        ComplexFixed { re: conj_prod.re.div(&n), im: conj_prod.im.div(&n) }
    }

    pub fn norm_sq(&self) -> Fixed {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Fixed {
        self.norm_sq().sqrt()
    }

    /// Evaluate a polynomial with integer coefficients (leading first) by Horner.
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> ComplexFixed {
        let bits = self.re.bits;
        let mut acc = ComplexFixed::real(Fixed::zero(bits));
        for c in coeffs {
            acc = acc.mul(self);
            acc.re = acc.re.add(&Fixed::from_int(c, bits));
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// A certified real-root enclosure: `P(lo) and P(hi)` have opposite signs (or
/// the endpoint is an exact root) and `hi − lo ≤ 2^{−bits}`.
#[derive(Debug, Clone)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub bits: u32,
}

impl RootBracket {
    pub fn midpoint(&self) -> Fixed {
        let mid = (&self.lo + &self.hi) / BigInt::from(2);
        Fixed::from_ratio(mid.numer(), mid.denom(), self.bits)
    }
}

/// Exact sign of `P(m/2^k) = (m/2^k)³ − a(m/2^k)² − b(m/2^k) − c`,
/// i.e. of `m³ − a·m²·2^k − b·m·2^{2k} − c·2^{3k}`.
fn cubic_sign_at(a: &BigInt, b: &BigInt, c: &BigInt, m: &BigInt, k: u32) -> i8 {
    let p1: BigInt = BigInt::one() << k;
    let v = m * m * m - a * m * m * &p1 - b * m * (&p1 * &p1) - c * (&p1 * &p1 * &p1);
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Bisect to width `2^{−bits}` inside `[lo, hi]` (mantissas at scale `k0`),
/// given `sign(P(lo)) = −sign(P(hi)) ≠ 0`.
fn bisect(a: &BigInt, b: &BigInt, c: &BigInt, mut lo: BigInt, mut hi: BigInt, k0: u32, bits: u32) -> RootBracket {
    let mut k = k0;
    let sign_lo = cubic_sign_at(a, b, c, &lo, k);
    debug_assert_ne!(sign_lo, 0);
    debug_assert_eq!(cubic_sign_at(a, b, c, &hi, k), -sign_lo);
    // Each step halves the interval; stop once width ≤ 2^{−bits}.
    // Width starts at (hi−lo)/2^{k0}; after t steps it is that / 2^t.
    let width_bits = (&hi - &lo).bits() as i64 - k0 as i64; // ceil-ish log2 of the width
    let steps = (width_bits + bits as i64).max(0) as u64;
    for _ in 0..steps {
        lo <<= 1;
        hi <<= 1;
        k += 1;
        let mid = (&lo + &hi) >> 1;
        let s = cubic_sign_at(a, b, c, &mid, k);
        if s == 0 {
            // Exact dyadic root.
            let r = BigRational::new(mid, BigInt::one() << k);
            return RootBracket { lo: r.clone(), hi: r, bits };
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootBracket {
        lo: BigRational::new(lo, BigInt::one() << k),
        hi: BigRational::new(hi, BigInt::one() << k),
        bits,
    }
}

/// Certified roots of `P(x) = x³ − a·x² − b·x − c` with distinct roots.
#[derive(Debug, Clone)]
pub struct CubicRoots {
    /// Real roots in increasing order (1 or 3 of them), each certified.
    pub real: Vec<RootBracket>,
    /// For the one-real-root case: the conjugate pair as
    /// `(re, im², |λ|²)` — all derived exactly from the real root via
    /// `re = (a − λ₁)/2`, `|λ|² = c/λ₁`, `im² = |λ|² − re²`.
    pub complex_pair: Option<(Fixed, Fixed, Fixed)>,
    pub bits: u32,
}

/// Locate the real roots of `x³ − a·x² − b·x − c` (distinct-root cubic) by
/// exact-sign bisection; Cauchy's bound brackets every real root.
pub fn cubic_roots(a: &BigInt, b: &BigInt, c: &BigInt, bits: u32) -> Result<CubicRoots> {
    let disc = crate::sequence::discriminant(a, b, c);
    if disc.is_zero() {
        return Err(Error::DegenerateCharPoly);
    }
    let bound = {
        
        a.abs().max(b.abs()).max(c.abs()) + BigInt::one()
    };
    let neg = -&bound;
    let real = if disc.is_negative() {
        // One real root: a single sign change across [−M, M].
        vec![bisect(a, b, c, neg, bound, 0, bits)]
    } else {
        // Three real roots: split at the critical points t± of P′ and bisect
        // each monotone piece. t± = (a ± sqrt(a² + 3b))/3.
        let s = Fixed::from_int(&(a * a + BigInt::from(3) * b), bits + 32).sqrt();
        let af = Fixed::from_int(a, bits + 32);
        let t_lo = af.sub(&s).div_int(3);
        let t_hi = af.add(&s).div_int(3);
        // Dyadic cut points at scale bits+32; nudge outward by one ulp so each
        // subinterval strictly contains its root.
        let k = bits + 32;
        let cut1 = &t_lo.mant - BigInt::one();
        let cut2 = &t_hi.mant + BigInt::one();
        let lo_m = neg << k;
        let hi_m = bound << k;
        let mut out = Vec::new();
        for (l, h) in [(lo_m.clone(), cut1.clone()), (cut1, cut2.clone()), (cut2, hi_m)] {
            let sl = cubic_sign_at(a, b, c, &l, k);
            let sh = cubic_sign_at(a, b, c, &h, k);
            if sl == 0 {
                let r = BigRational::new(l, BigInt::one() << k);
                out.push(RootBracket { lo: r.clone(), hi: r, bits });
            } else if sh != sl {
                if sh == 0 {
                    let r = BigRational::new(h, BigInt::one() << k);
                    out.push(RootBracket { lo: r.clone(), hi: r, bits });
                } else {
                    out.push(bisect(a, b, c, l, h, k, bits));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out.dedup_by(|x, y| x.lo == y.lo && x.hi == y.hi);
        if out.len() != 3 {
            return Err(Error::Indeterminate(format!(
                "expected 3 real roots, isolated {}",
                out.len()
            )));
        }
        out
    };
    let complex_pair = if disc.is_negative() {
        let lam = real[0].midpoint();
        let re = Fixed::from_int(a, bits).sub(&lam).div_int(2);
        let norm = Fixed::from_int(c, bits).div(&lam);
        let im_sq = norm.sub(&re.mul(&re));
        Some((re, im_sq, norm))
    } else {
        None
    };
    Ok(CubicRoots { real, complex_pair, bits })
}
