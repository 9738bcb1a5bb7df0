use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::{num, num_reduced, Bound, IntPoly, SturmChain};
use crate::linalg::scale_to_integers;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::Rational;

/// Rational interval holding exactly one real root of its polynomial.
///
/// Non-degenerate intervals have non-root endpoints and the root lies in the
/// open interior; a degenerate interval `lo == hi` is an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "crate::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::serde_rational")]
    pub hi: Rational,
    /// The root is a simple root of the polynomial that was isolated.
    pub multiplicity_free: bool,
}

impl IsolatingInterval {
    pub fn exact(r: Rational, multiplicity_free: bool) -> Self {
        IsolatingInterval { lo: r.clone(), hi: r, multiplicity_free }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / two()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_degenerate() {
            return &self.lo == x;
        }
        &self.lo < x && x < &self.hi
    }
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

/// Power of two bounding the absolute value of every root (Cauchy bound).
pub fn root_bound(p: &UniPoly) -> Rational {
    let lc = p.leading_coeff().abs();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.coeffs().len().saturating_sub(1)] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b < bound {
        b *= two();
    }
    b
}

/// One disjoint isolating interval per distinct real root, ascending.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if sf.degree() == Some(1) {
        let r = -sf.coeff(0) / sf.coeff(1);
        return Ok(vec![IsolatingInterval::exact(r, p.degree() == Some(1))]);
    }
    let repeated = p.div_rem(&sf)?.0;
    let rep_chain = SturmChain::new(&repeated.squarefree_part()?);
    let chain = SturmChain::new(&sf);
    let b = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // depth-first over open intervals whose endpoints are not roots; right half
    // pushed first so roots come out ascending
    while let Some((lo, hi)) = stack.pop() {
        if lo == hi {
            out.push(IsolatingInterval::exact(lo, true));
            continue;
        }
        let c = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(IsolatingInterval { lo, hi, multiplicity_free: true });
            continue;
        }
        let mid = (&lo + &hi) / two();
        if chain.is_root(&mid) {
            let left = step_off(&chain, &sf, &mid, &lo, false)?;
            let right = step_off(&chain, &sf, &mid, &hi, true)?;
            stack.push((right, hi));
            stack.push((mid.clone(), mid));
            stack.push((lo, left));
        } else {
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    for iv in &mut out {
        iv.multiplicity_free = !holds_root(&rep_chain, iv);
    }
    Ok(out)
}

fn holds_root(chain: &SturmChain, iv: &IsolatingInterval) -> bool {
    if iv.is_degenerate() {
        return chain.is_root(&iv.lo);
    }
    // endpoints are not roots of p, hence not of any factor of p
    chain.count(&Bound::Finite(iv.lo.clone()), &Bound::Finite(iv.hi.clone())) > 0
}

/// A point strictly between `root` and `limit` with no root of `sf` in between.
fn step_off(chain: &SturmChain, sf: &UniPoly, root: &Rational, limit: &Rational, up: bool) -> Result<Rational> {
    let deflated = sf.div_rem(&UniPoly::new(vec![-root.clone(), Rational::one()]))?.0;
    let dchain = SturmChain::new(&deflated);
    let mut delta = (limit - root).abs() / two();
    loop {
        let cand = if up { root + &delta } else { root - &delta };
        if !chain.is_root(&cand) {
            let (a, b) = if up { (root.clone(), cand.clone()) } else { (cand.clone(), root.clone()) };
            if dchain.count(&Bound::Finite(a), &Bound::Finite(b)) == 0 {
                return Ok(cand);
            }
        }
        delta /= two();
    }
}

/// Bisection on the roots of one fixed polynomial.
///
/// A root isolated for the square-free part is simple, so the square-free
/// part changes sign across it and bisection needs only sign evaluations.
#[derive(Clone, Debug)]
pub struct Refiner {
    sf: IntPoly,
}

impl Refiner {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Refiner { sf: IntPoly::from_uni(&p.squarefree_part()?) })
    }

    /// `iv` must isolate a root of the polynomial (unchecked).
    pub fn refine(&self, iv: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
        if iv.is_degenerate() {
            return iv.clone();
        }
        let mut lo = iv.lo.clone();
        let mut hi = iv.hi.clone();
        let s_lo = self.sf.sign_at(&lo);
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / two();
            let s = self.sf.sign_at(&mid);
            if s == 0 {
                return IsolatingInterval::exact(mid, iv.multiplicity_free);
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        IsolatingInterval { lo, hi, multiplicity_free: iv.multiplicity_free }
    }
}

/// Shrink `iv` to width at most `width`, keeping the same root.
pub fn refine_interval(p: &UniPoly, iv: &IsolatingInterval, width: &Rational) -> Result<IsolatingInterval> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.squarefree_part()?;
    let chain = SturmChain::new(&sf);
    if iv.is_degenerate() {
        return if chain.is_root(&iv.lo) { Ok(iv.clone()) } else { Err(Error::NotIsolating) };
    }
    if iv.lo > iv.hi || chain.is_root(&iv.lo) || chain.is_root(&iv.hi) {
        return Err(Error::NotIsolating);
    }
    if chain.count(&Bound::Finite(iv.lo.clone()), &Bound::Finite(iv.hi.clone())) != 1 {
        return Err(Error::NotIsolating);
    }
    Ok(Refiner { sf: IntPoly::from_uni(&sf) }.refine(iv, width))
}

/// The check `num(u, v) = num(u − ρ²·w, v)` for a fixed triple and varying ρ.
///
/// With `u = a·b` and `w = b²` at every root of `v` the equality says no
/// value `a/b` lies in `(0, ρ²]`, so a single equality certifies the gap.
///
/// The real roots of `v` are isolated once. At roots where `u` vanishes the
/// sign of `u − ρ²·w` is that of `−w` for every ρ ≠ 0; elsewhere it is read
/// off a certified enclosure on a refined interval. Undecided cases fall back
/// to the Sturm-Tarski count.
#[derive(Clone, Debug)]
pub struct GapCheck {
    u: UniPoly,
    v: UniPoly,
    w: UniPoly,
    target: usize,
    /// roots of `v` where `u ≠ 0`, with a refiner for them; intervals only
    /// ever shrink, so refinements are kept across calls
    roots: RefCell<Vec<IsolatingInterval>>,
    rest: UniPoly,
    refiner: Option<Refiner>,
    /// roots of `gcd(u, v)` where `w < 0`
    on_gcd: usize,
}

/// Taylor tests per root and call before the exact fallback.
const ENCLOSURE_STEPS: usize = 16;

impl GapCheck {
    pub fn new(u: &UniPoly, v: &UniPoly, w: &UniPoly) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let v = v.squarefree_part()?;
        let u = u.rem(&v)?;
        let w = w.rem(&v)?;
        let g = u.gcd(&v);
        let (rest, on_gcd) = if g.is_zero() {
            // u ≡ 0: every root is a root of the gcd
            (UniPoly::one(), num(&-&w, &v)?)
        } else {
            let rest = v.div_rem(&g)?.0;
            let on_gcd = if g.degree() == Some(0) { 0 } else { num(&-&w, &g)? };
            (rest, on_gcd)
        };
        let roots = isolate_real_roots(&rest)?;
        let refiner = if roots.is_empty() { None } else { Some(Refiner::new(&rest)?) };
        let count = roots.len();
        let mut check = GapCheck { u, v, w, target: 0, roots: RefCell::new(roots), rest, refiner, on_gcd };
        // u has no zero on the remaining roots, so its sign is always decided
        let ints = check.shifted(&Rational::zero());
        let mut target = 0;
        for i in 0..count {
            loop {
                if let Some(s) = check.decide(&ints, i) {
                    target += usize::from(s > 0);
                    break;
                }
            }
        }
        check.target = target;
        Ok(check)
    }

    pub fn holds(&self, rho: &Rational) -> bool {
        if rho.is_zero() {
            return true;
        }
        let r2 = rho * rho;
        let mut count = self.on_gcd;
        let ints = self.shifted(&r2);
        // roots where u − ρ²·w vanishes exactly never separate from zero
        let shifted = &self.u - &self.w.scale(&r2);
        let common = if shifted.is_zero() { self.rest.clone() } else { shifted.gcd(&self.rest) };
        let zeros = (common.degree() > Some(0)).then(|| SturmChain::new(&common));
        let count_roots = self.roots.borrow().len();
        for i in 0..count_roots {
            if let Some(chain) = &zeros {
                let iv = self.roots.borrow()[i].clone();
                let hit = if iv.is_degenerate() {
                    chain.is_root(&iv.lo)
                } else {
                    chain.count(&Bound::Finite(iv.lo), &Bound::Finite(iv.hi)) > 0
                };
                if hit {
                    continue;
                }
            }
            match self.decide(&ints, i) {
                Some(s) => count += usize::from(s > 0),
                None => {
                    let shifted = &self.u - &self.w.scale(&r2);
                    return num_reduced(&shifted, &self.v) == self.target;
                }
            }
            if count > self.target {
                return false;
            }
        }
        count == self.target
    }

    /// Sign of `p` at root `i`, refining its interval as needed.
    fn decide(&self, p: &[BigInt], i: usize) -> Option<i8> {
        let refiner = self.refiner.as_ref().expect("roots exist");
        let mut roots = self.roots.borrow_mut();
        // bisection is cheap next to a Taylor test, so the number of
        // bisections between tests doubles after each failure
        let mut bits = 4;
        for _ in 0..ENCLOSURE_STEPS {
            if let Some(s) = sign_on(p, &roots[i]) {
                return Some(s);
            }
            let narrower = roots[i].width() / Rational::from_integer(BigInt::one() << bits);
            roots[i] = refiner.refine(&roots[i], &narrower);
            bits = (bits * 2).min(1024);
        }
        None
    }

    fn shifted(&self, r2: &Rational) -> Vec<BigInt> {
        let s = if r2.is_zero() { self.u.clone() } else { &self.u - &self.w.scale(r2) };
        scale_to_integers(s.coeffs()).0
    }
}

/// Certified sign of the integer polynomial `p` at the root inside `iv`,
/// when the Taylor expansion at the midpoint decides it.
///
/// With `m = a/b` and `t = (a + y)/b`, `b^n·p(t) = G(y)` for the integer
/// polynomial `G(y) = Σ p_k (a + y)^k b^(n−k)`, and `|y| ≤ b·(width/2)`.
fn sign_on(p: &[BigInt], iv: &IsolatingInterval) -> Option<i8> {
    if p.is_empty() {
        return Some(0);
    }
    if iv.is_degenerate() {
        return Some(IntPoly::new(p.to_vec()).sign_at(&iv.lo) as i8);
    }
    let n = p.len() - 1;
    let m = iv.midpoint();
    let (a, b) = (m.numer(), m.denom());
    let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut bpow = BigInt::one();
    for c in p.iter().rev() {
        g.push(c * &bpow);
        bpow *= b;
    }
    g.reverse();
    // Taylor shift g(x) ↦ g(x + a)
    for i in 0..n {
        for j in (i..n).rev() {
            let t = a * &g[j + 1];
            g[j] += t;
        }
    }
    let rho = iv.width() / two() * Rational::from_integer(b.clone());
    let (pn, qn) = (rho.numer(), rho.denom());
    // |g_0|·q^n against Σ_{j≥1} |g_j|·p^j·q^(n−j)
    let mut tail = BigInt::zero();
    let mut acc_p = BigInt::one();
    let mut qpows = vec![BigInt::one(); n + 1];
    for j in 1..=n {
        qpows[j] = &qpows[j - 1] * qn;
    }
    for j in 1..=n {
        acc_p *= pn;
        if !g[j].is_zero() {
            tail += g[j].abs() * &acc_p * &qpows[n - j];
        }
    }
    let head = g[0].abs() * &qpows[n];
    if head > tail {
        Some(if g[0].is_positive() { 1 } else { -1 })
    } else {
        None
    }
}

/// Largest `ρ = 2^-k` (k ≥ 0) with `num(u, v) = num(u − ρ²·w, v)`.
pub fn positive_gap_radius(u: &UniPoly, v: &UniPoly, w: &UniPoly, max_halvings: usize) -> Result<Rational> {
    let check = GapCheck::new(u, v, w)?;
    let mut rho = Rational::one();
    for _ in 0..=max_halvings {
        if check.holds(&rho) {
            return Ok(rho);
        }
        rho /= two();
    }
    Err(Error::HalvingExhausted(max_halvings))
}

/// True when no encoded value lies in `(0, ρ²]` (see [`GapCheck`]).
pub fn gap_certified(u: &UniPoly, v: &UniPoly, w: &UniPoly, rho: &Rational) -> Result<bool> {
    Ok(GapCheck::new(u, v, w)?.holds(rho))
}
