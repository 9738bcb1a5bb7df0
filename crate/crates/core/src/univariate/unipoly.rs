use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sturm::IntPoly;
use crate::error::{Error, Result};
use crate::linalg::scale_to_integers;
use crate::Rational;

/// Dense univariate polynomial over ℚ, coefficients in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::new(vec![-r.clone(), Rational::one()]))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at `x`, by Horner's rule on the homogenized integer form.
    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(n) = self.degree() else { return Rational::zero() };
        let (ints, den) = scale_to_integers(&self.coeffs);
        let (a, b) = (x.numer(), x.denom());
        let mut acc = ints[n].clone();
        let mut bpow = BigInt::one();
        for c in ints[..n].iter().rev() {
            bpow *= b;
            acc = acc * a;
            if !c.is_zero() {
                acc += c * &bpow;
            }
        }
        Rational::new(acc, den * bpow)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lc;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * c;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Remainder by integer pseudo-division, so no gcd runs inside the loop.
    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        match self.degree() {
            Some(n) if n >= dd => {}
            _ => return Ok(self.clone()),
        }
        let (ai, da) = scale_to_integers(&self.coeffs);
        let (di, _) = scale_to_integers(&d.coeffs);
        let divisor = IntPoly::new(di);
        let (r, k) = IntPoly::new(ai).pseudo_rem(&divisor);
        // lc^k · a = q·d + r, and self = a / da
        let scale = num_traits::pow(divisor.lc().clone(), k) * da;
        Ok(UniPoly::new(r.into_coeffs().into_iter().map(|x| Rational::new(x, scale.clone())).collect()))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() { other.monic() } else { self.monic() };
        }
        if let Some(g) = crate::modular::gcd(self, other) {
            return g;
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ints = to_integer_coeffs(&self.coeffs);
        UniPoly::new(ints.into_iter().map(Rational::from_integer).collect())
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(UniPoly::one());
        }
        if crate::modular::certainly_squarefree(self) {
            let q = self.primitive();
            return Ok(if q.leading_coeff().is_negative() { -q } else { q });
        }
        let g = self.gcd(&self.derivative());
        let q = match crate::modular::divide_exact(&to_integer_coeffs(&self.coeffs), &to_integer_coeffs(&g.coeffs)) {
            Some(q) => UniPoly::new(q.into_iter().map(Rational::from_integer).collect()).primitive(),
            None => self.div_rem(&g)?.0.primitive(),
        };
        Ok(if q.leading_coeff().is_negative() { -q } else { q })
    }

    /// Sum of absolute coefficient bit sizes, a rough size measure.
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
    }
}

/// Coprime integer coefficients that are a positive multiple of `coeffs`.
pub(crate) fn to_integer_coeffs(coeffs: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_i64(&[-2, 0, 1]);
        let (q, r) = a.div_rem(&UniPoly::from_i64(&[0, 2])).unwrap();
        assert_eq!(q, UniPoly::new(vec![Rational::zero(), Rational::new(1.into(), 2.into())]));
        assert_eq!(r, UniPoly::from_i64(&[-2]));
        let p = &UniPoly::from_i64(&[-1, 1]) * &UniPoly::from_i64(&[2, 1]);
        let q = &UniPoly::from_i64(&[-1, 1]) * &UniPoly::from_i64(&[5, 0, 1]);
        assert_eq!(p.gcd(&q), UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let p = UniPoly::from_i64(&[1, -2, 1]);
        assert_eq!(p.squarefree_part().unwrap(), UniPoly::from_i64(&[-1, 1]));
        let p = UniPoly::from_i64(&[0, -1, 0, 1]);
        assert_eq!(p.squarefree_part().unwrap(), p);
        let s = UniPoly::from_i64(&[-2, 0, 1]);
        let p = &(&s * &s) * &UniPoly::from_i64(&[3, 1]);
        assert_eq!(p.squarefree_part().unwrap(), &s * &UniPoly::from_i64(&[3, 1]));
        assert!(UniPoly::zero().squarefree_part().is_err());
    }
}
