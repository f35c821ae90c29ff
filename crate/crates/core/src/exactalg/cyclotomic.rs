use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};
use super::poly::cyclo_cached;
use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// An element of the cyclotomic field `Q(ζ_m)`.
///
/// Stored as the unique residue of degree `< φ(m)` modulo the cyclotomic
/// polynomial `Φ_m`, in the power basis `1, ζ, …, ζ^{φ(m)-1}`. Equality and
/// hashing are coefficient-wise, so two numbers only compare equal when they
/// share a conductor. Arithmetic between different conductors first embeds
/// both operands in `Q(ζ_lcm)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero_in(m: u32) -> Self {
        assert!(m >= 1, "conductor must be positive");
        CycNum {
            conductor: m,
            coeffs: vec![Rational::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one_in(m: u32) -> Self {
        Self::from_rational_in(m, Rational::one())
    }

    pub fn from_rational_in(m: u32, q: Rational) -> Self {
        let mut out = Self::zero_in(m);
        out.coeffs[0] = q;
        out
    }

    pub fn from_integer_in(m: u32, k: i64) -> Self {
        Self::from_rational_in(m, Rational::from_integer(BigInt::from(k)))
    }

    /// `ζ_m^k`, for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::reduce(m, poly)
    }

    /// Builds the residue of an arbitrary polynomial in `ζ_m`.
    pub fn from_poly(m: u32, poly: Vec<Rational>) -> Self {
        Self::reduce(m, poly)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Returns the rational value if this number lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Image under `Q(ζ_m) → Q(ζ_M)`, `ζ_m ↦ ζ_M^{M/m}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        if target % self.conductor != 0 {
            return Err(Error::ConductorMismatch {
                from: self.conductor,
                to: target,
            });
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            poly[i * step] = a.clone();
        }
        Ok(Self::reduce(target, poly))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    fn reduce(m: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclo_cached(m);
        let deg = phi.len() - 1;
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut poly[k], Rational::zero());
            for (j, pj) in phi[..deg].iter().enumerate() {
                if !pj.is_zero() {
                    poly[k - deg + j] -= &lead * Rational::from_integer(pj.clone());
                }
            }
        }
        poly.resize(deg, Rational::zero());
        CycNum {
            conductor: m,
            coeffs: poly,
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        if self.coeffs.len() == 1 {
            return CycNum {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); self.coeffs.len() * 2 - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.conductor, prod)
    }

    fn add_ref(&self, other: &Self, sign: bool) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::common(self, other);
            return a.add_ref(&b, sign);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| if sign { a + b } else { a - b })
            .collect();
        CycNum {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Φ_m` over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(CycNum {
                conductor: self.conductor,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let modulus: Vec<Rational> = cyclo_cached(self.conductor)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariant: s * self ≡ r (mod Φ_m), for both (r0, s0) and (r1, s1).
        let (mut r0, mut s0) = (modulus, vec![]);
        let (mut r1, mut s1) = (trim(self.coeffs.clone()), vec![Rational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let scale = r1[0].recip();
        let s: Vec<Rational> = s1.into_iter().map(|c| c * &scale).collect();
        Ok(Self::reduce(self.conductor, s))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(self.conductor);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            k >>= 1;
        }
        acc
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder; the divisor must be trimmed and nonzero.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let q = &rem[k] * &lead_inv;
        if q.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k - db + j] -= &q * bj;
        }
        quot[k - db] = q;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

impl Zero for CycNum {
    fn zero() -> Self {
        Self::zero_in(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycNum {
    fn one() -> Self {
        Self::one_in(1)
    }

    fn is_one(&self) -> bool {
        self.as_rational().is_some_and(One::is_one)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs, true)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.add_ref(rhs, true)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&rhs, false)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.add_ref(rhs, false)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.mul_ref(rhs)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> Self {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Field for CycNum {
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }

    fn zero_like(&self) -> Self {
        Self::zero_in(self.conductor)
    }

    fn one_like(&self) -> Self {
        Self::one_in(self.conductor)
    }

    fn from_integer_like(&self, k: i64) -> Self {
        Self::from_integer_in(self.conductor, k)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z{}^{i}", self.conductor)?,
                _ => write!(f, "{mag}*z{}^{i}", self.conductor)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(m, k)
    }

    #[test]
    fn totient() {
        let expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (m, e) in (1..=12).zip(expect) {
            assert_eq!(euler_phi(m), e, "phi({m})");
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_integer_in(4, -1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycNum::from_integer_in(3, -1));
    }

    #[test]
    fn inverse_of_root_is_conjugate_power() {
        for m in [3, 4, 5, 7, 8, 9, 12] {
            assert_eq!(z(m, 1).inv().unwrap(), z(m, m as i64 - 1), "m = {m}");
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(CycNum::zero_in(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn golden_ratio_in_q_zeta5() {
        let tau = &(&CycNum::one_in(5) + &z(5, 1)) + &z(5, 4);
        assert_eq!(&tau * &tau, &tau + &CycNum::one_in(5));
    }

    #[test]
    fn mixed_conductors_meet_in_the_lcm() {
        let s = &z(3, 1) + &z(4, 1);
        assert_eq!(s.conductor(), 12);
        assert_eq!(z(3, 1).embed(12).unwrap(), z(12, 4));
        assert_eq!(z(4, 1).embed(6), Err(Error::ConductorMismatch { from: 4, to: 6 }));
    }

    #[test]
    fn rational_projection() {
        assert_eq!(
            z(6, 3).as_rational(),
            Some(&Rational::from_integer(BigInt::from(-1)))
        );
        assert_eq!(z(6, 1).as_rational(), None);
    }

    #[test]
    fn display() {
        assert_eq!(z(5, 1).to_string(), "z5^1");
        assert_eq!(CycNum::zero_in(7).to_string(), "0");
        assert_eq!((-z(3, 1)).to_string(), "-z3^1");
    }
}
