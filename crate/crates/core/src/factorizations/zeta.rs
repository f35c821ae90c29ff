use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exactalg::Rational;

/// Polynomial with rational coefficients in the monomial basis, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn constant(q: Rational) -> Self {
        RatPoly::new(vec![q])
    }

    /// `a + b X`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        RatPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial at `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        RatPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RatPoly::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// `P(X + a)`, expanded binomially.
    pub fn shift(&self, a: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            // c (X + a)^k = c Σ_j C(k, j) a^(k-j) X^j
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let a_pow = num_traits::pow(a.clone(), k - j);
                *slot += c * Rational::from_integer(binomial(k as u64, j as u64)) * a_pow;
            }
        }
        RatPoly::new(out)
    }

    /// `Δ P = P(X + 1) - P(X)`.
    pub fn forward_difference(&self) -> Self {
        self.shift(&Rational::one()).sub(self)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*X"),
                _ => format!("({c})*X^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

/// `Z(X) = ∏ (d_i + (X - 1) h) / d_i`.
pub fn zeta_polynomial(degrees: &[u32]) -> RatPoly {
    let h = *degrees.last().expect("rank is positive") as i64;
    degrees.iter().fold(RatPoly::constant(Rational::one()), |acc, &d| {
        let d_q = Rational::from_integer(BigInt::from(d));
        let factor = RatPoly::linear(
            Rational::from_integer(BigInt::from(d as i64 - h)) / &d_q,
            Rational::from_integer(BigInt::from(h)) / &d_q,
        );
        acc.mul(&factor)
    })
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// Elementary symmetric polynomials `σ_0, …, σ_m` of `values`.
fn elementary_symmetric(values: &[i64]) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for &v in values {
        e.push(BigInt::zero());
        for k in (1..e.len()).rev() {
            let prev = &e[k - 1] * v;
            e[k] += prev;
        }
    }
    e
}

/// The closed form for `fact_q` in terms of codegrees `h - d_i`
/// (`i < n`) and Stirling numbers, with `q = n - p`:
/// `(q! h^q / |W|) Σ_{j=0..p} (-1)^(p-j) σ*_{p-j} S(q + j, q) h^j`.
pub fn stirling_fact(degrees: &[u32], order: u128, q: usize) -> Rational {
    let n = degrees.len();
    assert!(q <= n, "at most n blocks");
    let p = n - q;
    let h = *degrees.last().expect("rank is positive") as i64;
    let codegrees: Vec<i64> = degrees[..n - 1].iter().map(|&d| h - d as i64).collect();
    let sigma = elementary_symmetric(&codegrees);
    let hb = BigInt::from(h);
    let mut sum = BigInt::zero();
    for j in 0..=p {
        let s = sigma.get(p - j).cloned().unwrap_or_default();
        let term = s * stirling2(q + j, q) * num_traits::pow(hb.clone(), j);
        if (p - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let q_fact: BigInt = (1..=q as u64).map(BigInt::from).product();
    Rational::new(q_fact * num_traits::pow(hb, q) * sum, BigInt::from(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn small_special_numbers() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(3, 5), 0.into());
        assert_eq!(stirling2(4, 2), 7.into());
        assert_eq!(stirling2(5, 3), 25.into());
        assert_eq!(stirling2(0, 0), 1.into());
        assert_eq!(stirling2(3, 0), 0.into());
        assert_eq!(elementary_symmetric(&[1, 2, 3]), vec![1.into(), 6.into(), 11.into(), 6.into()]);
    }

    #[test]
    fn zeta_of_a2() {
        // (2 + 3(X-1))/2 · (3 + 3(X-1))/3 = (3X - 1)X / 2
        let z = zeta_polynomial(&[2, 3]);
        assert_eq!(z.coeffs(), &[q(0), Rational::new((-1).into(), 2.into()), Rational::new(3.into(), 2.into())]);
        assert_eq!(z.eval(&q(3)), q(12));
    }

    #[test]
    fn differences_match_the_binomial_sum() {
        let z = zeta_polynomial(&[2, 6, 8, 12]);
        let mut d = z.clone();
        for p in 1..=4u64 {
            d = d.forward_difference();
            let direct: Rational = (0..=p)
                .map(|k| {
                    let sign = if (p - k) % 2 == 0 { q(1) } else { q(-1) };
                    sign * Rational::from_integer(binomial(p, k)) * z.eval(&q(k as i64))
                })
                .sum();
            assert_eq!(d.eval(&q(0)), direct);
        }
        assert_eq!(d.forward_difference().degree(), None);
    }

    #[test]
    fn stirling_form_on_a3() {
        let got: Vec<Rational> = (1..=3).map(|k| stirling_fact(&[2, 3, 4], 24, k)).collect();
        assert_eq!(got, vec![q(1), q(12), q(16)]);
        assert_eq!(stirling_fact(&[2, 3, 4], 24, 0), q(0));
    }

    #[test]
    fn shift_is_composition() {
        let p = RatPoly::new(vec![q(1), q(-2), q(3)]);
        for a in -3..=3 {
            for x in -3..=3 {
                assert_eq!(p.shift(&q(a)).eval(&q(x)), p.eval(&q(x + a)));
            }
        }
    }
}
