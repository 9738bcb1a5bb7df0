use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::Rational;

/// Ordered list of variable names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<Vec<String>>);

impl Ring {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ring(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new ring with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Ring {
        let mut names = self.0.as_ref().clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring(Arc::new(names))
    }

    /// A variable name not already present, built from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|i| format!("{stem}_{i}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{:?}", self.0)
    }
}

/// Sparse multivariate polynomial over ℚ.
///
/// Terms are kept in a map keyed by monomial (grevlex order); zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(Monomial::var(ring.arity(), index), Rational::one());
        p
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ring.arity()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    /// Leading monomial and coefficient with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare_monomials(a.0, b.0))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.arity(), "point length must equal ring arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[var] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.ring.arity()).map(|i| self.derivative(i)).collect()
    }

    /// Substitute `images[i]` for variable `i`; all images share one target ring.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.arity());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        // powers are cached per variable since terms share them heavily
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-express in `target`, sending variable `i` to `target` variable `map[i]`.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.ring.arity());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.arity()];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Embed into a ring that extends this one by trailing variables.
    pub fn extend_to(&self, target: &Ring) -> MultiPoly {
        let map: Vec<usize> = (0..self.ring.arity()).collect();
        self.embed(target, &map)
    }

    /// Inverse of [`Self::extend_to`]; the trailing variables must not occur.
    pub fn restrict_to(&self, target: &Ring) -> MultiPoly {
        let k = target.arity();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            assert!(m.exponents()[k..].iter().all(|&e| e == 0), "restricting a polynomial that uses dropped variables");
            out.add_term(Monomial::from_exponents(m.exponents()[..k].to_vec()), c.clone());
        }
        out
    }

    /// Positive rational `c` and integer polynomial `q` with `self = c·q`, `q` primitive.
    pub fn primitive_part(&self) -> (Rational, Vec<(Monomial, BigInt)>) {
        if self.is_zero() {
            return (Rational::one(), Vec::new());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        let ints = ints.into_iter().map(|(m, c)| (m, c / &g)).collect();
        (Rational::new(g, den), ints)
    }

    /// Same polynomial scaled so the coefficients are coprime integers with
    /// positive leading coefficient (grevlex).
    pub fn normalized_primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (_, ints) = self.primitive_part();
        let sign_negative = ints.last().map(|(_, c)| c.is_negative()).unwrap_or(false);
        MultiPoly::from_terms(
            &self.ring,
            ints.into_iter().map(|(m, c)| {
                let c = if sign_negative { -c } else { c };
                (m, Rational::from_integer(c))
            }),
        )
    }

    /// Scaled so the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn variables_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.arity()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    /// Exact quotient `self / d` when `d` divides `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let order = MonomialOrder::Grevlex;
        let (dm, dc) = match d.leading_term(order) {
            None => return Err(Error::ZeroPolynomial),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let mut rem = self.clone();
        let mut q = Self::zero(&self.ring);
        while let Some((lm, lc)) = rem.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = dm.quotient_of(&lm) else {
                return Err(Error::Internal("inexact polynomial division".into()));
            };
            let qc = &lc / &dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Ok(q)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_ring(a: &MultiPoly, b: &MultiPoly) {
    assert!(a.ring == b.ring, "ring mismatch: {:?} vs {:?}", a.ring, b.ring);
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        check_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        check_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        check_ring(self, rhs);
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Gradient of `p`; component `i` is the partial derivative in variable `i`.
pub fn gradient(p: &MultiPoly) -> Vec<MultiPoly> {
    p.gradient()
}

/// Exact value of `p` at `point`.
pub fn evaluate(p: &MultiPoly, point: &[Rational]) -> Rational {
    p.evaluate(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn r3() -> Ring {
        Ring::new(["x1", "x2", "x3"])
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gradient_examples() {
        let ring = r3();
        let p = parse_poly("-4*x1^2", &ring).unwrap();
        let g = p.gradient();
        assert_eq!(g[0], parse_poly("-8*x1", &ring).unwrap());
        assert!(g[1].is_zero() && g[2].is_zero());

        let f = parse_poly("2*x2^4 + x3^4 - 4*x1^2", &ring).unwrap();
        let g = f.gradient();
        assert_eq!(g[0], parse_poly("-8*x1", &ring).unwrap());
        assert_eq!(g[1], parse_poly("8*x2^3", &ring).unwrap());
        assert_eq!(g[2], parse_poly("4*x3^3", &ring).unwrap());

        let c = MultiPoly::constant(&ring, q(7, 3));
        assert!(c.gradient().iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn evaluate_examples() {
        let ring = r3();
        let p = parse_poly("x1^2 + x2^2 + x3^3", &ring).unwrap();
        assert_eq!(p.evaluate(&[q(0, 1), q(0, 1), q(-1, 2)]), q(-1, 8));
        let p = parse_poly("3 + x1*x2 - 2/5*x3", &ring).unwrap();
        assert_eq!(p.evaluate(&[q(0, 1), q(0, 1), q(0, 1)]), q(3, 1));
        let r2 = Ring::new(["x1", "x2"]);
        let p = parse_poly("x1*x2", &r2).unwrap();
        assert_eq!(p.evaluate(&[q(3, 1), q(1, 3)]), q(1, 1));
    }

    #[test]
    fn display_and_primitive() {
        let ring = r3();
        let p = parse_poly("-1*x2*x3 - x3^2 + 2*x1", &ring).unwrap();
        assert_eq!(p.to_string(), "-x2*x3 - x3^2 + 2*x1");
        let p = parse_poly("1/2*x1 - 3/4", &ring).unwrap();
        let n = p.normalized_primitive();
        assert_eq!(n, parse_poly("2*x1 - 3", &ring).unwrap());
    }

    #[test]
    fn compose_and_div_exact() {
        let ring = Ring::new(["x", "y"]);
        let p = parse_poly("x^2 - y", &ring).unwrap();
        let images = vec![parse_poly("x + y", &ring).unwrap(), parse_poly("y", &ring).unwrap()];
        assert_eq!(p.compose(&images), parse_poly("x^2 + 2*x*y + y^2 - y", &ring).unwrap());
        let a = parse_poly("(x+y)*(x-2*y+1)", &ring).unwrap();
        let d = parse_poly("x+y", &ring).unwrap();
        assert_eq!(a.div_exact(&d).unwrap(), parse_poly("x-2*y+1", &ring).unwrap());
        assert!(parse_poly("x^2+1", &ring).unwrap().div_exact(&d).is_err());
    }
}
