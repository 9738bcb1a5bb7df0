//! Arithmetic modulo word-size primes. Results are either one-sided
//! certificates (a property seen modulo `p` that implies it over ℚ) or
//! candidates that are verified exactly before use.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::univariate::unipoly::{to_integer_coeffs, UniPoly};
use crate::Rational;

/// 2^61 − 1 and 2^31 − 1, both Mersenne primes.
const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 2_147_483_647];

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

/// Image of `r` in 𝔽_p, `None` when `p` divides the denominator.
fn reduce(r: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(r.numer(), p), inv(d, p), p))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of gcd(a, b) in 𝔽_p[x]; both inputs nonzero.
fn gcd_degree(a: Vec<u64>, b: Vec<u64>, p: u64) -> usize {
    gcd_mod(a, b, p).len().saturating_sub(1)
}

/// Monic gcd(a, b) in 𝔽_p[x], ascending coefficients.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = mul(*a.last().unwrap(), lb, p);
            let shift = a.len() - b.len();
            for (i, x) in b.iter().enumerate() {
                let t = mul(c, *x, p);
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let li = inv(l, p);
        for x in &mut a {
            *x = mul(*x, li, p);
        }
    }
    a
}

/// True only if `q` is certainly square-free over ℚ: some prime keeps the
/// degree and sees gcd(q, q') = 1. False means "unknown".
pub(crate) fn certainly_squarefree(q: &UniPoly) -> bool {
    let Some(deg) = q.degree() else { return false };
    if deg == 0 {
        return true;
    }
    'primes: for &p in &PRIMES {
        if deg as u64 >= p {
            continue;
        }
        let mut a = Vec::with_capacity(deg + 1);
        for c in q.coeffs() {
            match reduce(c, p) {
                Some(x) => a.push(x),
                None => continue 'primes,
            }
        }
        if a[deg] == 0 {
            continue;
        }
        let da: Vec<u64> = (1..=deg).map(|i| mul(a[i], i as u64 % p, p)).collect();
        if gcd_degree(a, da, p) == 0 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, descending.
fn large_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn reduce_ints(v: &[BigInt], p: u64) -> Vec<u64> {
    v.iter().map(|x| reduce_int(x, p)).collect()
}

/// `n/d` with `|n|, d ≤ √(m/2)` and `n ≡ c·d (mod m)`, if one exists.
fn rational_reconstruction(c: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), c.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Quotient `a / g` over ℤ when `g` divides `a` exactly, ascending coefficients.
pub(crate) fn divide_exact(a: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len().checked_sub(1)?;
    let lc = &g[dg];
    if a.len() < g.len() {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - dg];
    for i in (dg..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in g.iter().enumerate() {
            rem[i - dg + j] -= &q * c;
        }
        quot[i - dg] = q;
    }
    rem[..dg].iter().all(Zero::is_zero).then_some(quot)
}

/// Primes tried by [`gcd`] before giving up.
const GCD_PRIMES: usize = 400;

/// Monic gcd of two nonzero polynomials from modular images. The candidate
/// divides both inputs exactly and has the least degree seen modulo any
/// prime, which bounds the true degree from above, so it is the gcd.
/// `None` when the prime budget runs out.
pub(crate) fn gcd(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    let ai = to_integer_coeffs(a.coeffs());
    let bi = to_integer_coeffs(b.coeffs());
    let (la, lb) = (ai.last()?, bi.last()?);
    let mut best: Option<usize> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<Rational>> = None;
    for p in large_primes().take(GCD_PRIMES) {
        if reduce_int(la, p) == 0 || reduce_int(lb, p) == 0 {
            continue;
        }
        let g = gcd_mod(reduce_ints(&ai, p), reduce_ints(&bi, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Some(UniPoly::one());
        }
        match best {
            Some(b) if deg > b => continue,
            Some(b) if deg == b => {
                let pb = BigInt::from(p);
                let m_inv = inv(reduce_int(&modulus, p), p);
                for (r, &x) in residues.iter_mut().zip(&g) {
                    let diff = (x + p - reduce_int(r, p)) % p;
                    let k = mul(diff, m_inv, p);
                    *r += &modulus * BigInt::from(k);
                }
                modulus *= pb;
            }
            _ => {
                best = Some(deg);
                residues = g.iter().map(|&x| BigInt::from(x)).collect();
                modulus = BigInt::from(p);
                last = None;
                continue;
            }
        }
        let Some(cand) = residues.iter().map(|r| rational_reconstruction(r, &modulus)).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        if last.as_ref() != Some(&cand) {
            last = Some(cand);
            continue;
        }
        let gi = to_integer_coeffs(&cand);
        if divide_exact(&ai, &gi).is_some() && divide_exact(&bi, &gi).is_some() {
            return Some(UniPoly::new(cand));
        }
    }
    None
}

/// Primes tried by [`rank`] before giving up.
const RANK_PRIMES: usize = 400;

/// Row echelon form of `a` over 𝔽_p: rank, pivot columns and the reduced rows.
fn rref_mod(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(piv, r);
        let li = inv(a[r][c], p);
        for x in &mut a[r] {
            *x = mul(*x, li, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if *y != 0 {
                    *x = (*x + p - mul(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (pivots, a)
}

/// Rank of an integer matrix over ℚ, certified: the rank modulo a prime is a
/// lower bound, and a kernel of matching dimension lifted from the modular
/// images and checked exactly is the upper bound. `None` when the prime
/// budget runs out.
pub(crate) fn rank(a: &[Vec<BigInt>], cols: usize) -> Option<usize> {
    if a.is_empty() || cols == 0 {
        return Some(0);
    }
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>)> = None;
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<Vec<Rational>>> = None;
    for p in large_primes().take(RANK_PRIMES) {
        let red: Vec<Vec<u64>> = a.iter().map(|row| reduce_ints(row, p)).collect();
        let (pivots, rows) = rref_mod(red, cols, p);
        let r = pivots.len();
        if r == cols || r == a.len() {
            return Some(r);
        }
        // entries of the reduced rows at free columns determine the kernel
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let image: Vec<Vec<u64>> = rows.iter().map(|row| free.iter().map(|&f| row[f]).collect()).collect();
        match &mut best {
            Some((bp, res)) if *bp == pivots => {
                let m_inv = inv(reduce_int(&modulus, p), p);
                for (rr, ir) in res.iter_mut().zip(&image) {
                    for (x, &y) in rr.iter_mut().zip(ir) {
                        let diff = (y + p - reduce_int(x, p)) % p;
                        *x += &modulus * BigInt::from(mul(diff, m_inv, p));
                    }
                }
                modulus *= BigInt::from(p);
            }
            Some((bp, _)) if bp.len() > r || (bp.len() == r && *bp < pivots) => continue,
            _ => {
                let res = image.iter().map(|row| row.iter().map(|&y| BigInt::from(y)).collect()).collect();
                best = Some((pivots, res));
                modulus = BigInt::from(p);
                last = None;
                continue;
            }
        }
        let (bp, res) = best.as_ref().expect("set above");
        let Some(cand) = res
            .iter()
            .map(|row| row.iter().map(|x| rational_reconstruction(x, &modulus)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        if last.as_ref() != Some(&cand) {
            last = Some(cand);
            continue;
        }
        if kernel_checks(a, bp, &cand, cols) {
            return Some(bp.len());
        }
    }
    None
}

/// Every kernel vector `e_f − Σ_i R[i][f]·e_{pivot_i}` is annihilated by `a`.
fn kernel_checks(a: &[Vec<BigInt>], pivots: &[usize], reduced: &[Vec<Rational>], cols: usize) -> bool {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    for (k, &f) in free.iter().enumerate() {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -reduced[i][k].clone();
        }
        let (vi, _) = crate::linalg::scale_to_integers(&v);
        for row in a {
            let mut acc = BigInt::zero();
            for (x, y) in row.iter().zip(&vi) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}
