//! Signed remainder sequences, Sturm counting and Tarski queries.
//!
//! Counting works on integer polynomials: every element of a signed
//! remainder sequence may be replaced by a positive multiple without changing
//! any sign variation count, so remainders are kept primitive.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::unipoly::{to_integer_coeffs, UniPoly};
use crate::error::{Error, Result};
use crate::Rational;

/// Endpoint of a counting interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    PosInf,
    Finite(Rational),
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub(crate) fn from_uni(p: &UniPoly) -> Self {
        IntPoly::new(to_integer_coeffs(p.coeffs()))
    }

    pub(crate) fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly { c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub(crate) fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub(crate) fn lc(&self) -> &BigInt {
        self.c.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Self {
        IntPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    fn mul(&self, o: &IntPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    fn primitive(self) -> Self {
        let mut g = BigInt::zero();
        for a in &self.c {
            g = num_integer::Integer::gcd(&g, a);
            if g.is_one() {
                return self;
            }
        }
        if g.is_zero() {
            return self;
        }
        IntPoly::new(self.c.into_iter().map(|a| a / &g).collect())
    }

    /// Sign of the value at `x`, computed on the homogenized form so no
    /// rational arithmetic is needed.
    pub(crate) fn sign_at(&self, x: &Rational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (p, q) = (x.numer(), x.denom());
        let mut acc = self.lc().clone();
        let mut qpow = BigInt::one();
        for a in self.c.iter().rev().skip(1) {
            qpow *= q;
            acc = acc * p + a * &qpow;
        }
        sign_of(&acc)
    }

    fn sign_at_bound(&self, b: &Bound) -> i32 {
        match b {
            Bound::PosInf => sign_of(self.lc()),
            Bound::NegInf => {
                let s = sign_of(self.lc());
                if self.degree() % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            Bound::Finite(x) => self.sign_at(x),
        }
    }

    /// `(r, k)` with `lc(d)^k · self = q·d + r`, `deg r < deg d`.
    pub(crate) fn pseudo_rem(&self, d: &IntPoly) -> (IntPoly, usize) {
        let dd = d.degree();
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut k = 0;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let a = r[top].clone();
            if a.is_zero() {
                r.pop();
                continue;
            }
            let shift = top - dd;
            for x in r.iter_mut() {
                *x *= lc;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[shift + j] -= &a * b;
            }
            k += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (IntPoly::new(r), k)
    }
}

fn sign_of(a: &BigInt) -> i32 {
    match a.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Signed remainder sequence of `(a, b)`, each element scaled by a positive constant.
///
/// Built as a subresultant sequence: every element is an exact quotient of a
/// pseudo-remainder by a known integer `β`, so no content gcd is needed, and
/// the sign of the scalar relating it to the true signed remainder is tracked
/// alongside.
pub(crate) fn signed_remainder_sequence(a: IntPoly, b: IntPoly) -> Vec<IntPoly> {
    let a = a.primitive();
    if b.is_zero() {
        return vec![a];
    }
    let b = b.primitive();
    // sign of c_i in T_i = c_i·P_i, T_i the true signed remainders
    let mut signs = vec![1i32, 1];
    let mut seq = vec![a, b];
    let mut delta = seq[0].degree() as i64 - seq[1].degree() as i64;
    if delta < 0 {
        let [a, b] = <[IntPoly; 2]>::try_from(seq).expect("two elements");
        return primitive_remainder_sequence(a, b);
    }
    let mut psi = BigInt::from(-1);
    let mut beta = if (delta + 1) % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
    loop {
        let n = seq.len();
        let (prev, cur) = (&seq[n - 2], &seq[n - 1]);
        let (r, k) = prev.pseudo_rem(cur);
        if r.is_zero() {
            break;
        }
        let lc = cur.lc().clone();
        let full = (delta + 1) as usize;
        // pseudo_rem may stop early; bring it to lc^(δ+1)·prev
        let scale = num_traits::pow(lc.clone(), full - k);
        let r = IntPoly::new(r.c.into_iter().map(|x| x * &scale / &beta).collect());
        // T_(i+1) = −rem(T_(i−1), T_i) = −c_(i−1)·β/lc^(δ+1) · P_(i+1)
        let lc_sign = if lc.is_negative() && full % 2 == 1 { -1 } else { 1 };
        let s_next = -signs[n - 2] * sign_of(&beta) * lc_sign;
        let new_delta = cur.degree() as i64 - r.degree() as i64;
        psi = if delta == 0 {
            psi
        } else {
            num_traits::pow(-lc.clone(), delta as usize) / num_traits::pow(psi, (delta - 1) as usize)
        };
        beta = -lc * num_traits::pow(psi.clone(), new_delta as usize);
        delta = new_delta;
        seq.push(r);
        signs.push(s_next);
    }
    seq.into_iter()
        .zip(signs)
        .map(|(p, s)| if s < 0 { IntPoly::new(p.c.into_iter().map(|x| -x).collect()) } else { p })
        .collect()
}

/// The same sequence with every remainder made primitive.
fn primitive_remainder_sequence(a: IntPoly, b: IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![a, b];
    loop {
        let n = seq.len();
        let (r, k) = seq[n - 2].pseudo_rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        // true remainder is r / lc^k, and the sequence continues with its negation
        let lc_negative = seq[n - 1].lc().is_negative();
        let flip = !(lc_negative && k % 2 == 1);
        let r = r.primitive();
        let next = if flip { IntPoly::new(r.c.into_iter().map(|x| -x).collect()) } else { r };
        seq.push(next);
    }
}

fn variations(seq: &[IntPoly], at: &Bound) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in seq {
        let s = p.sign_at_bound(at);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm sequence of a squarefree integer polynomial, ready for repeated counting.
#[derive(Clone, Debug)]
pub(crate) struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    pub(crate) fn new(p: &UniPoly) -> Self {
        let ip = IntPoly::from_uni(p);
        let d = ip.derivative();
        SturmChain { seq: signed_remainder_sequence(ip, d) }
    }

    /// Distinct roots in the open interval; endpoints must not be roots.
    pub(crate) fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let a = variations(&self.seq, lo);
        let b = variations(&self.seq, hi);
        a.saturating_sub(b)
    }

    pub(crate) fn is_root(&self, x: &Rational) -> bool {
        self.seq[0].sign_at(x) == 0
    }
}

/// Signed remainder sequence `(p, p', …)` with exact rational remainders.
pub fn sturm_sequence(p: &UniPoly) -> Result<Vec<UniPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(seq);
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1])?;
        if r.is_zero() {
            return Ok(seq);
        }
        seq.push(-r);
    }
}

fn nudge(sf: &UniPoly, at: &Rational, toward: &Bound, up: bool) -> Result<Rational> {
    // `at` is a root of the squarefree `sf`; find a point on the requested side
    // with no root of `sf` between it and `at`
    let deflated = sf.div_rem(&UniPoly::new(vec![-at.clone(), Rational::one()]))?.0;
    let chain = SturmChain::new(&deflated);
    let mut delta = match toward {
        Bound::Finite(b) => {
            let d = (b - at).abs() / Rational::from_integer(2.into());
            if d.is_zero() {
                return Err(Error::InvalidArgument("empty interval".into()));
            }
            d
        }
        _ => Rational::one(),
    };
    loop {
        let cand = if up { at + &delta } else { at - &delta };
        if !chain.is_root(&cand) && !sf_is_root(sf, &cand) {
            let (a, b) = if up { (at.clone(), cand.clone()) } else { (cand.clone(), at.clone()) };
            if chain.count(&Bound::Finite(a), &Bound::Finite(b)) == 0 {
                return Ok(cand);
            }
        }
        delta /= Rational::from_integer(2.into());
    }
}

fn sf_is_root(p: &UniPoly, x: &Rational) -> bool {
    IntPoly::from_uni(p).sign_at(x) == 0
}

fn count_impl(p: &UniPoly, lo: &Bound, hi: &Bound, perturb: bool) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let (Bound::Finite(a), Bound::Finite(b)) = (lo, hi) {
        if a >= b {
            return Ok(0);
        }
    }
    if matches!(lo, Bound::PosInf) || matches!(hi, Bound::NegInf) {
        return Ok(0);
    }
    let sf = p.squarefree_part()?;
    let chain = SturmChain::new(&sf);
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    if let Bound::Finite(a) = &lo {
        if chain.is_root(a) {
            if !perturb {
                return Err(Error::EndpointIsRoot(a.to_string()));
            }
            lo = Bound::Finite(nudge(&sf, a, &hi, true)?);
        }
    }
    if let Bound::Finite(b) = &hi {
        if chain.is_root(b) {
            if !perturb {
                return Err(Error::EndpointIsRoot(b.to_string()));
            }
            hi = Bound::Finite(nudge(&sf, b, &lo, false)?);
        }
    }
    if let (Bound::Finite(a), Bound::Finite(b)) = (&lo, &hi) {
        if a >= b {
            return Ok(0);
        }
    }
    Ok(chain.count(&lo, &hi))
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// A finite endpoint that happens to be a root is moved inward past every
/// root-free neighbourhood, so the count is always for the open interval.
pub fn count_real_roots(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    count_impl(p, lo, hi, true)
}

/// As [`count_real_roots`] but fails with `EndpointIsRoot` instead of perturbing.
pub fn count_real_roots_strict(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    count_impl(p, lo, hi, false)
}

/// Σ sign(u(t)) over the distinct real roots t of v.
pub fn tarski_query(u: &UniPoly, v: &UniPoly) -> Result<i64> {
    if v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let v = v.squarefree_part()?;
    let u = u.rem(&v)?;
    Ok(tarski_reduced(&u, &v))
}

fn tarski_reduced(u: &UniPoly, v: &UniPoly) -> i64 {
    let iv = IntPoly::from_uni(v);
    let iu = IntPoly::from_uni(u);
    let second = iv.derivative().mul(&iu);
    let seq = signed_remainder_sequence(iv, second);
    variations(&seq, &Bound::NegInf) as i64 - variations(&seq, &Bound::PosInf) as i64
}

/// [`num`] for a square-free `v` and `u` already reduced modulo `v`.
pub(crate) fn num_reduced(u: &UniPoly, v: &UniPoly) -> usize {
    let u2 = (u * u).rem(v).expect("nonzero v");
    let total = tarski_reduced(&u2, v) + tarski_reduced(u, v);
    debug_assert!(total >= 0 && total % 2 == 0);
    (total / 2) as usize
}

/// Number of real roots t of v with u(t) > 0.
pub fn num(u: &UniPoly, v: &UniPoly) -> Result<usize> {
    if v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let v = v.squarefree_part()?;
    let u = u.rem(&v)?;
    let u2 = (&u * &u).rem(&v)?;
    let total = tarski_reduced(&u2, &v) + tarski_reduced(&u, &v);
    debug_assert!(total >= 0 && total % 2 == 0);
    Ok((total / 2) as usize)
}
