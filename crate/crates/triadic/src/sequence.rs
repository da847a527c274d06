//! Exact, rational, and modular evaluation of third-order linear recurrences,
//! characteristic-polynomial data, periods mod prime powers, and finite
//! differences.
//!
//! Everything downstream builds on this module:
//!
//! * [`RecurrenceSpec`] — the sequence `x_n = a·x_{n-1} + b·x_{n-2} + c·x_{n-3}`
//!   with integer initial values `x0, x1, x2`, extended to all of ℤ by the
//!   backward step `x_{n-3} = (x_n − a·x_{n-1} − b·x_{n-2})/c`.
//! * [`CharPolyData`] — coefficients of `P(x) = x³ − a·x² − b·x − c`, the
//!   numerator polynomial `q(x)` of the Binet coefficients, and the
//!   discriminant of `P`.
//! * [`RecurrenceSpec::period`] — the multiplicative order `N_{p^k}` of the
//!   companion matrix mod `p^k`, which is the exact shift under which every
//!   state triple returns: `x_{n+N} ≡ x_n (mod p^k)` for all `n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iteration cap for the mod-p period search.
const PERIOD_CAP: u64 = 100_000_000;

/// A third-order integer linear recurrence with its initial values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x0: i64,
    pub x1: i64,
    pub x2: i64,
    pub name: Option<String>,
}

/// Characteristic-polynomial data of a recurrence.
///
/// `P(x) = x³ − a·x² − b·x − c` and `q(x) = q2·x² + q1·x + q0` is the
/// numerator of the Binet coefficients `c_λ = q(λ)/P′(λ)`; its coefficient
/// vector is exactly `(x0, x1 − x0·a, x2 − x1·a − x0·b)` (leading first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyData {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    /// Coefficients of q, leading first: `q(x) = q[0]·x² + q[1]·x + q[2]`.
    pub q: [BigInt; 3],
    /// Discriminant of P; nonzero iff the three complex roots are distinct.
    pub disc: BigInt,
}

/// Periods `N_{p^k}` for one prime at successive levels `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodTable {
    pub p: u64,
    /// Pairs `(k, N_{p^k})`, k ascending from 1.
    pub entries: Vec<(u32, u64)>,
}

impl RecurrenceSpec {
    /// Build a spec, enforcing `c ≠ 0` and a nonzero initial triple.
    pub fn new(a: i64, b: i64, c: i64, x0: i64, x1: i64, x2: i64) -> Result<Self> {
        let spec = RecurrenceSpec { a, b, c, x0, x1, x2, name: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Check the structural invariants: `c ≠ 0`, initial triple not all zero.
    pub fn validate(&self) -> Result<()> {
        if self.c == 0 {
            return Err(Error::Validation(
                "c must be nonzero (the recurrence must extend backwards)".into(),
            ));
        }
        if self.x0 == 0 && self.x1 == 0 && self.x2 == 0 {
            return Err(Error::Validation("initial values must not all be zero".into()));
        }
        Ok(())
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Tribonacci: `x_n = x_{n-1} + x_{n-2} + x_{n-3}`, starting 0, 1, 1.
    pub fn tribonacci() -> Self {
        RecurrenceSpec { a: 1, b: 1, c: 1, x0: 0, x1: 1, x2: 1, name: Some("tribonacci".into()) }
    }

    /// Tripell: `x_n = 2x_{n-1} + x_{n-2} + x_{n-3}`, starting 0, 1, 2.
    pub fn tripell() -> Self {
        RecurrenceSpec { a: 2, b: 1, c: 1, x0: 0, x1: 1, x2: 2, name: Some("tripell".into()) }
    }

    /// Modified Tripell: `x_n = 2x_{n-1} + 2x_{n-2} + x_{n-3}`, starting 0, 1, 2.
    pub fn mtripell() -> Self {
        RecurrenceSpec { a: 2, b: 2, c: 1, x0: 0, x1: 1, x2: 2, name: Some("mtripell".into()) }
    }

    /// Look a builtin up by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "tribonacci" => Some(Self::tribonacci()),
            "tripell" => Some(Self::tripell()),
            "mtripell" => Some(Self::mtripell()),
            _ => None,
        }
    }

    /// Exact integer term `x_n`, for any `n ∈ ℤ`.
    ///
    /// Backward steps divide by `c`; if a division is not exact this returns
    /// [`Error::NonIntegralTerm`]. With `|c| = 1` every term is an integer.
    pub fn term(&self, n: i64) -> Result<BigInt> {
        if n >= 0 {
            return Ok(self.term_forward(n));
        }
        let (a, b, c) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c));
        let mut w = [BigInt::from(self.x0), BigInt::from(self.x1), BigInt::from(self.x2)];
        let mut idx = 0i64; // w holds (x_idx, x_idx+1, x_idx+2)
        while idx > n {
            let prev = &w[2] - &a * &w[1] - &b * &w[0];
            let (quot, rem) = prev.div_rem(&c);
            if !rem.is_zero() {
                return Err(Error::NonIntegralTerm { n });
            }
            w = [quot, w[0].clone(), w[1].clone()];
            idx -= 1;
        }
        Ok(w[0].clone())
    }

    /// Exact rational term `x_n`, defined for every `n ∈ ℤ` (backward steps
    /// stay in ℚ regardless of `c`).
    pub fn term_rational(&self, n: i64) -> BigRational {
        if n >= 0 {
            return BigRational::from(self.term_forward(n));
        }
        let a = BigRational::from(BigInt::from(self.a));
        let b = BigRational::from(BigInt::from(self.b));
        let c = BigRational::from(BigInt::from(self.c));
        let mut w = [
            BigRational::from(BigInt::from(self.x0)),
            BigRational::from(BigInt::from(self.x1)),
            BigRational::from(BigInt::from(self.x2)),
        ];
        let mut idx = 0i64;
        while idx > n {
            let prev = (&w[2] - &a * &w[1] - &b * &w[0]) / &c;
            w = [prev, w[0].clone(), w[1].clone()];
            idx -= 1;
        }
        w[0].clone()
    }

    fn term_forward(&self, n: i64) -> BigInt {
        let (a, b, c) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c));
        let mut w = [BigInt::from(self.x0), BigInt::from(self.x1), BigInt::from(self.x2)];
        if n < 3 {
            return w[n as usize].clone();
        }
        for _ in 3..=n {
            let next = &a * &w[2] + &b * &w[1] + &c * &w[0];
            w = [w[1].clone(), w[2].clone(), next];
        }
        w[2].clone()
    }

    /// `x_n mod M` for `n ≥ 0`, via companion-matrix binary powering
    /// (O(log n) 3×3 matrix products).
    pub fn term_mod(&self, n: u64, modulus: &BigUint) -> BigUint {
        let m = BigInt::from(modulus.clone());
        let red = |v: i64| BigInt::from(v).mod_floor(&m);
        if n < 3 {
            let x = [self.x0, self.x1, self.x2][n as usize];
            return red(x).to_biguint().expect("mod_floor is nonnegative");
        }
        // M = [[0,1,0],[0,0,1],[c,b,a]] advances the state column (x_k, x_{k+1}, x_{k+2}).
        let mat = [
            [BigInt::zero(), BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::zero(), BigInt::one()],
            [red(self.c), red(self.b), red(self.a)],
        ];
        let pw = mat_pow_mod(&mat, n - 2, &m);
        let state = [red(self.x0), red(self.x1), red(self.x2)];
        // (M^{n-2} · state)[2] = x_n
        let mut acc = BigInt::zero();
        for (j, s) in state.iter().enumerate() {
            acc += &pw[2][j] * s;
        }
        acc.mod_floor(&m).to_biguint().expect("mod_floor is nonnegative")
    }

    /// The residues `x_{ℓ + t·N} mod M` for `t = 0 .. count`, by a single
    /// forward state iteration (one pass, `ℓ + count·N` cheap modular steps).
    pub fn stride_residues(&self, ell: u64, step: u64, count: usize, modulus: &BigUint) -> Vec<BigUint> {
        let m = BigInt::from(modulus.clone());
        let red = |v: i64| BigInt::from(v).mod_floor(&m).to_biguint().expect("nonnegative");
        let (a, b, c) = (red(self.a), red(self.b), red(self.c));
        // Invariant: at the top of iteration n, w = (x_n, x_{n+1}, x_{n+2}) mod M.
        let mut w = [red(self.x0), red(self.x1), red(self.x2)];
        let mut out = Vec::with_capacity(count);
        let last = ell + step * count as u64;
        for n in 0..=last {
            if n >= ell && (n - ell).is_multiple_of(step) && out.len() < count {
                out.push(w[0].clone());
            }
            if out.len() == count {
                break;
            }
            let next = (&a * &w[2] + &b * &w[1] + &c * &w[0]) % modulus;
            w = [w[1].clone(), w[2].clone(), next];
        }
        out
    }

    /// Characteristic data: `P`, `q`, and the discriminant.
    pub fn char_data(&self) -> Result<CharPolyData> {
        let (a, b, c) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c));
        let disc = discriminant(&a, &b, &c);
        if disc.is_zero() {
            return Err(Error::DegenerateCharPoly);
        }
        let q2 = BigInt::from(self.x0);
        let q1 = BigInt::from(self.x1) - BigInt::from(self.x0) * &a;
        let q0 = BigInt::from(self.x2) - BigInt::from(self.x1) * &a - BigInt::from(self.x0) * &b;
        Ok(CharPolyData { a, b, c, q: [q2, q1, q0], disc })
    }

    /// `true` iff `p ∤ c` and `p ∤ disc` — the primes for which the full
    /// analysis (distinct unramified roots) applies.
    pub fn admissible_prime(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        let c = BigInt::from(self.c);
        let disc = discriminant(&BigInt::from(self.a), &BigInt::from(self.b), &c);
        !(c % &pb).is_zero() && !(disc % &pb).is_zero()
    }

    /// The period `N_{p^k}`: multiplicative order of the companion matrix mod
    /// `p^k`, i.e. the least `N ≥ 1` with `x_{n+N} ≡ x_n (mod p^k)` for every
    /// choice of initial triple.
    ///
    /// Requires only `p ∤ c` (matrix invertible mod p); `p | disc` is allowed.
    pub fn period(&self, p: u64, k: u32) -> Result<u64> {
        if p < 2 {
            return Err(Error::Validation(format!("p = {p} is not prime")));
        }
        if self.c.unsigned_abs().is_multiple_of(p) {
            return Err(Error::InadmissiblePrime { p });
        }
        let mut n = self.period_mod_p(p)?;
        let mut modulus = p;
        for _ in 2..=k {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m < (1u64 << 63))
                .ok_or_else(|| Error::ResourceExhausted(format!("p^{k} exceeds the u64 modulus range")))?;
            if !mat_is_identity_pow(self, n, modulus) {
                n = n.checked_mul(p).ok_or_else(|| {
                    Error::ResourceExhausted("period exceeds u64".into())
                })?;
                debug_assert!(mat_is_identity_pow(self, n, modulus));
            }
        }
        Ok(n)
    }

    /// Periods for `k = 1 ..= k_max` as a table.
    pub fn period_table(&self, p: u64, k_max: u32) -> Result<PeriodTable> {
        let mut entries = Vec::with_capacity(k_max as usize);
        for k in 1..=k_max {
            entries.push((k, self.period(p, k)?));
        }
        Ok(PeriodTable { p, entries })
    }

    /// Order of the companion matrix mod p, by iterating the three impulse
    /// state triples until all return to their starting state simultaneously.
    /// (Iterating a single orbit can return a proper divisor of the matrix
    /// order when the initial state triple is degenerate mod p; the three
    /// impulse states never are.)
    fn period_mod_p(&self, p: u64) -> Result<u64> {
        let red = |v: i64| v.rem_euclid(p as i64) as u64;
        let (a, b, c) = (red(self.a), red(self.b), red(self.c));
        let start = [[1u64, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut w = start;
        let step = |w: &mut [u64; 3]| {
            let next = (a as u128 * w[2] as u128 + b as u128 * w[1] as u128 + c as u128 * w[0] as u128)
                % p as u128;
            *w = [w[1], w[2], next as u64];
        };
        for t in 1..=PERIOD_CAP {
            for wi in w.iter_mut() {
                step(wi);
            }
            if w == start {
                return Ok(t);
            }
        }
        Err(Error::ResourceExhausted(format!(
            "no period found mod {p} within {PERIOD_CAP} iterations"
        )))
    }

    /// The j-th finite difference with step `N`:
    /// `Δ^j x_ℓ = Σ_{t=0..j} (−1)^{j−t} C(j,t) x_{ℓ+tN}`, reduced mod `M`.
    pub fn finite_difference(&self, ell: i64, step: u64, order: u32, modulus: &BigUint) -> Result<BigUint> {
        let m = BigInt::from(modulus.clone());
        let mut acc = BigInt::zero();
        let j = BigInt::from(order);
        for t in 0..=order {
            let coeff = num_integer::binomial(j.clone(), BigInt::from(t));
            let sign = if (order - t).is_multiple_of(2) { 1 } else { -1 };
            let x = self.term(ell + (t as u64 * step) as i64)?;
            acc += coeff * sign * x;
        }
        Ok(acc.mod_floor(&m).to_biguint().expect("mod_floor is nonnegative"))
    }
}

/// Discriminant of `P(x) = x³ − a·x² − b·x − c`.
///
/// Obtained from the general cubic discriminant by substituting the
/// coefficient signs of P; equals `−Res(P, P′)` (checked against a Sylvester
/// determinant in the tests).
pub fn discriminant(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let n18 = BigInt::from(-18);
    let n4 = BigInt::from(4);
    let n27 = BigInt::from(27);
    n18 * a * b * c - &n4 * a * a * a * c + a * a * b * b + n4 * b * b * b - n27 * c * c
}

/// `M^e mod m` for the 3×3 companion matrix power used by [`RecurrenceSpec::term_mod`].
fn mat_pow_mod(mat: &[[BigInt; 3]; 3], e: u64, m: &BigInt) -> [[BigInt; 3]; 3] {
    let mut result = identity_big();
    let mut base = mat.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul_big(&result, &base, m);
        }
        base = mat_mul_big(&base, &base, m);
        e >>= 1;
    }
    result
}

fn identity_big() -> [[BigInt; 3]; 3] {
    let mut id: [[BigInt; 3]; 3] = Default::default();
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    id
}

fn mat_mul_big(x: &[[BigInt; 3]; 3], y: &[[BigInt; 3]; 3], m: &BigInt) -> [[BigInt; 3]; 3] {
    let mut out: [[BigInt; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = BigInt::zero();
            for (k, yk) in y.iter().enumerate() {
                acc += &x[i][k] * &yk[j];
            }
            out[i][j] = acc.mod_floor(m);
        }
    }
    out
}

/// Does the companion matrix of `spec` satisfy `M^e ≡ I (mod m)`?
/// u64 fast path (m < 2^63) used by the period lift.
fn mat_is_identity_pow(spec: &RecurrenceSpec, e: u64, m: u64) -> bool {
    let red = |v: i64| v.rem_euclid(m as i64) as u64;
    let mat = [[0, 1, 0], [0, 0, 1], [red(spec.c), red(spec.b), red(spec.a)]];
    let pw = mat_pow_u64(&mat, e, m);
    let mut ok = true;
    for (i, row) in pw.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            ok &= *v == u64::from(i == j);
        }
    }
    ok
}

fn mat_pow_u64(mat: &[[u64; 3]; 3], e: u64, m: u64) -> [[u64; 3]; 3] {
    let mut result = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut base = *mat;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul_u64(&result, &base, m);
        }
        base = mat_mul_u64(&base, &base, m);
        e >>= 1;
    }
    result
}

fn mat_mul_u64(x: &[[u64; 3]; 3], y: &[[u64; 3]; 3], m: u64) -> [[u64; 3]; 3] {
    let mut out = [[0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0u128;
            for (k, yk) in y.iter().enumerate() {
                acc += x[i][k] as u128 * yk[j] as u128 % m as u128;
            }
            out[i][j] = (acc % m as u128) as u64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn forward_terms_match_unrolled_recurrence() {
        let mt = RecurrenceSpec::mtripell();
        assert_eq!(mt.term(0).unwrap(), big(0));
        assert_eq!(mt.term(5).unwrap(), big(48));
        assert_eq!(mt.term(6).unwrap(), big(136));
        assert_eq!(mt.term(11).unwrap(), big(24736));
        assert_eq!(mt.term(12).unwrap(), big(70032));
        assert_eq!(mt.term(17).unwrap(), big(12738896));
        let t = RecurrenceSpec::tripell();
        assert_eq!(t.term(8).unwrap(), big(545));
    }

    #[test]
    fn backward_terms_hit_known_zeros() {
        let t = RecurrenceSpec::tripell();
        assert_eq!(t.term(-1).unwrap(), big(0));
        let tri = RecurrenceSpec::tribonacci();
        assert_eq!(tri.term(-1).unwrap(), big(0));
        assert_eq!(tri.term(-4).unwrap(), big(0));
        assert_eq!(tri.term(-17).unwrap(), big(0));
        let mt = RecurrenceSpec::mtripell();
        assert_eq!(mt.term(-1).unwrap(), big(0));
    }

    #[test]
    fn backward_with_composite_c_is_rational() {
        let s = RecurrenceSpec::new(1, 1, 2, 0, 1, 2).unwrap();
        // x_{-1} = (x2 - a·x1 - b·x0)/c = (2 - 1 - 0)/2 = 1/2
        assert_eq!(s.term(-1), Err(Error::NonIntegralTerm { n: -1 }));
        let r = s.term_rational(-1);
        assert_eq!(r, BigRational::new(big(1), big(2)));
    }

    #[test]
    fn term_mod_agrees_with_exact_terms() {
        let t = RecurrenceSpec::tripell();
        assert_eq!(t.term_mod(8, &BigUint::from(5u32)), BigUint::zero());
        let mt = RecurrenceSpec::mtripell();
        assert_eq!(mt.term_mod(12, &BigUint::from(16u32)), BigUint::zero());
        for n in 0..60u64 {
            let exact = mt.term(n as i64).unwrap();
            let m = BigUint::from(343u32);
            let expect = exact.mod_floor(&BigInt::from(343)).to_biguint().unwrap();
            assert_eq!(mt.term_mod(n, &m), expect, "n = {n}");
        }
    }

    #[test]
    fn stride_residues_match_term_mod() {
        let mt = RecurrenceSpec::mtripell();
        let m = BigUint::from(1u32 << 10);
        let got = mt.stride_residues(5, 6, 8, &m);
        for (t, v) in got.iter().enumerate() {
            assert_eq!(*v, mt.term_mod(5 + 6 * t as u64, &m), "t = {t}");
        }
    }

    #[test]
    fn discriminants_of_builtins() {
        assert_eq!(RecurrenceSpec::tribonacci().char_data().unwrap().disc, big(-44));
        assert_eq!(RecurrenceSpec::tripell().char_data().unwrap().disc, big(-87));
        assert_eq!(RecurrenceSpec::mtripell().char_data().unwrap().disc, big(-83));
    }

    /// Sylvester-resultant cross-check: disc(P) = −Res(P, P′) for monic cubic P.
    #[test]
    fn discriminant_matches_sylvester_resultant() {
        for spec in [
            RecurrenceSpec::tribonacci(),
            RecurrenceSpec::tripell(),
            RecurrenceSpec::mtripell(),
            RecurrenceSpec::new(3, -5, 7, 1, 0, 0).unwrap(),
            RecurrenceSpec::new(-2, 9, -4, 0, 2, 1).unwrap(),
        ] {
            let cd = match spec.char_data() {
                Ok(cd) => cd,
                Err(Error::DegenerateCharPoly) => continue,
                Err(e) => panic!("unexpected error: {e}"),
            };
            let res = sylvester_resultant(&cd.a, &cd.b, &cd.c);
            assert_eq!(cd.disc, -res, "spec {:?}", (spec.a, spec.b, spec.c));
        }
    }

    /// Res(P, P') via the 5×5 Sylvester matrix of
    /// P = x³ − a x² − b x − c and P′ = 3x² − 2a x − b.
    fn sylvester_resultant(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
        let p = [big(1), -a.clone(), -b.clone(), -c.clone()];
        let d = [big(3), big(-2) * a, -b.clone()];
        let mut m = vec![vec![big(0); 5]; 5];
        for r in 0..2 {
            for (i, v) in p.iter().enumerate() {
                m[r][r + i] = v.clone();
            }
        }
        for r in 0..3 {
            for (i, v) in d.iter().enumerate() {
                m[2 + r][r + i] = v.clone();
            }
        }
        det5(&m)
    }

    fn det5(m: &[Vec<BigInt>]) -> BigInt {
        fn det(m: &[Vec<BigInt>]) -> BigInt {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * &m[0][j] * det(&minor);
            }
            acc
        }
        det(m)
    }

    #[test]
    fn q_polynomial_of_mtripell_is_x() {
        let cd = RecurrenceSpec::mtripell().char_data().unwrap();
        assert_eq!(cd.q, [big(0), big(1), big(0)]);
    }

    #[test]
    fn periods_of_builtins_at_small_levels() {
        let mt = RecurrenceSpec::mtripell();
        assert_eq!(mt.period(2, 1).unwrap(), 3);
        assert_eq!(mt.period(2, 2).unwrap(), 6);
        assert_eq!(RecurrenceSpec::tripell().period(2, 1).unwrap(), 7);
        // 2 divides the Tribonacci discriminant −44, but 2 ∤ c, so the period
        // is still defined.
        assert_eq!(RecurrenceSpec::tribonacci().period(2, 1).unwrap(), 4);
    }

    #[test]
    fn periods_at_odd_primes() {
        assert_eq!(RecurrenceSpec::tripell().period(103, 1).unwrap(), 102);
        let mt = RecurrenceSpec::mtripell();
        assert_eq!(mt.period(5, 1).unwrap(), 8);
        assert_eq!(mt.period(23, 1).unwrap(), 22);
    }

    #[test]
    fn period_requires_unit_c() {
        let s = RecurrenceSpec::new(1, 1, 2, 0, 1, 1).unwrap();
        assert_eq!(s.period(2, 1), Err(Error::InadmissiblePrime { p: 2 }));
    }

    #[test]
    fn period_divisibility_chain() {
        let mt = RecurrenceSpec::mtripell();
        let table = mt.period_table(2, 8).unwrap();
        for pair in table.entries.windows(2) {
            let (n1, n2) = (pair[0].1, pair[1].1);
            assert_eq!(n2 % n1, 0);
            assert_eq!((2 * n1) % n2, 0);
        }
    }

    #[test]
    fn periodicity_over_a_window() {
        let mt = RecurrenceSpec::mtripell();
        let n = mt.period(2, 2).unwrap();
        let m = BigUint::from(4u32);
        for start in 0..3 * n {
            assert_eq!(mt.term_mod(start + n, &m), mt.term_mod(start, &m));
        }
    }

    #[test]
    fn admissibility_of_builtins() {
        let t = RecurrenceSpec::tripell();
        assert!(!t.admissible_prime(29)); // 29 | 87
        assert!(t.admissible_prime(7));
        assert!(!RecurrenceSpec::mtripell().admissible_prime(83));
    }

    #[test]
    fn finite_differences_of_mtripell() {
        let mt = RecurrenceSpec::mtripell();
        let m = BigUint::from(1024u32);
        assert_eq!(mt.finite_difference(0, 6, 1, &m).unwrap(), BigUint::from(136u32));
        assert_eq!(mt.finite_difference(0, 6, 2, &m).unwrap(), BigUint::from(128u32));
        // j = 0 is the plain term.
        assert_eq!(mt.finite_difference(5, 6, 0, &m).unwrap(), BigUint::from(48u32));
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(RecurrenceSpec::new(1, 1, 0, 0, 1, 1).is_err());
        assert!(RecurrenceSpec::new(1, 1, 1, 0, 0, 0).is_err());
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(RecurrenceSpec::builtin("tripell").unwrap().a, 2);
        assert!(RecurrenceSpec::builtin("nope").is_none());
        assert_eq!(
            RecurrenceSpec::builtin("tribonacci").unwrap().name.as_deref(),
            Some("tribonacci")
        );
    }

    #[test]
    fn term_mod_large_index_matches_iteration() {
        let t = RecurrenceSpec::tripell();
        let m = BigUint::from(1_000_003u64);
        // iterate directly
        let mut w = [0u64, 1, 2];
        let md = 1_000_003u64;
        for _ in 3..=5000u64 {
            let next = ((2 * w[2]) % md + w[1] + w[0]) % md;
            w = [w[1], w[2], next];
        }
        assert_eq!(t.term_mod(5000, &m).to_u64().unwrap(), w[2]);
    }
}
