//! Buchberger's algorithm over ℤ-primitive polynomials.
//!
//! Polynomials are kept as term vectors sorted by decreasing monomial under the
//! active order, with coprime integer coefficients. Reductions are
//! fraction-free; contents are stripped periodically.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};
use crate::Rational;

pub(crate) const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Exps {
    e: [u16; MAX_VARS],
    deg: u32,
}

impl Exps {
    fn from_monomial(m: &Monomial) -> Exps {
        let mut e = [0u16; MAX_VARS];
        for (i, &x) in m.exponents().iter().enumerate() {
            e[i] = u16::try_from(x).expect("exponent too large");
        }
        Exps { e, deg: m.degree() }
    }

    fn to_monomial(self, n: usize) -> Monomial {
        Monomial::from_exponents(self.e[..n].iter().map(|&x| x as u32).collect())
    }

    #[inline]
    fn divides(&self, o: &Exps) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    #[inline]
    fn mul(&self, o: &Exps) -> Exps {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a += *b;
        }
        Exps { e, deg: self.deg + o.deg }
    }

    #[inline]
    fn div(&self, o: &Exps) -> Exps {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a -= *b;
        }
        Exps { e, deg: self.deg - o.deg }
    }

    fn lcm(&self, o: &Exps) -> Exps {
        let mut e = self.e;
        let mut deg = 0;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a = (*a).max(*b);
            deg += *a as u32;
        }
        Exps { e, deg }
    }

    fn coprime(&self, o: &Exps) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Order {
    kind: MonomialOrder,
    n: usize,
}

impl Order {
    pub(crate) fn new(kind: MonomialOrder, n: usize) -> Self {
        Order { kind, n }
    }

    #[inline]
    fn cmp(&self, a: &Exps, b: &Exps) -> Ordering {
        match self.kind {
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.e[..self.n], &b.e[..self.n])),
            MonomialOrder::Lex => a.e[..self.n].cmp(&b.e[..self.n]),
            MonomialOrder::Elimination(k) => {
                let k = k.min(self.n);
                let da: u32 = a.e[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..k].iter().map(|&x| x as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex(&a.e[..k], &b.e[..k]))
                    .then_with(|| (a.deg - da).cmp(&(b.deg - db)))
                    .then_with(|| revlex(&a.e[k..self.n], &b.e[k..self.n]))
            }
        }
    }
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// Nonzero polynomial terms, strictly decreasing under the engine order.
#[derive(Clone, Debug)]
pub(crate) struct Poly {
    terms: Vec<(Exps, BigInt)>,
}

impl Poly {
    fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        !self.terms.is_empty() && self.terms[0].0.deg == 0
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() && !g.is_zero() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

pub(crate) fn to_engine(p: &MultiPoly, ord: &Order) -> Poly {
    let (_, ints) = p.primitive_part();
    let mut terms: Vec<(Exps, BigInt)> = ints.into_iter().map(|(m, c)| (Exps::from_monomial(&m), c)).collect();
    terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    let mut p = Poly { terms };
    p.make_primitive();
    p
}

pub(crate) fn from_engine(p: &Poly, ring: &Ring, monic: bool) -> MultiPoly {
    let n = ring.arity();
    let lc = if monic && !p.is_zero() { Rational::from_integer(p.lc().clone()) } else { Rational::one() };
    MultiPoly::from_terms(ring, p.terms.iter().map(|(e, c)| (e.to_monomial(n), Rational::from_integer(c.clone()) / &lc)))
}

/// `a·p − b·x^s·g`, both inputs sorted; the leading terms are expected to cancel
/// when `skip_leads` is set.
fn lin_comb(ord: &Order, a: &BigInt, p: &[(Exps, BigInt)], b: &BigInt, s: &Exps, g: &[(Exps, BigInt)]) -> Vec<(Exps, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    let scaled = |c: &BigInt| if a_one { c.clone() } else { c * a };
    while i < p.len() && j < g.len() {
        let gm = g[j].0.mul(s);
        match ord.cmp(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push((p[i].0, scaled(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = scaled(&p[i].1) - b * &g[j].1;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for t in &p[i..] {
        out.push((t.0, scaled(&t.1)));
    }
    for t in &g[j..] {
        out.push((t.0.mul(s), -(b * &t.1)));
    }
    out
}

/// Full reduction of `p` modulo `basis`. The result is `mult · p` reduced,
/// for the returned positive rational `mult`, made primitive.
pub(crate) fn reduce(ord: &Order, p: &Poly, basis: &[&Poly]) -> (Poly, Rational) {
    let mut done: Vec<(Exps, BigInt)> = Vec::new();
    let mut rest = p.terms.clone();
    let mut mult = Rational::one();
    let mut steps_since_content = 0usize;
    while !rest.is_empty() {
        let lead = rest[0].0;
        let Some(g) = basis.iter().find(|g| g.lm().divides(&lead)) else {
            // move every leading term that is irreducible in one go
            done.push(rest.remove(0));
            continue;
        };
        let c = &rest[0].1;
        let lg = g.lc();
        let gcd = c.gcd(lg);
        let mut a = lg / &gcd;
        let mut b = c / &gcd;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        let s = lead.div(g.lm());
        rest = lin_comb(ord, &a, &rest[1..], &b, &s, &g.terms[1..]);
        if !a.is_one() {
            for (_, x) in &mut done {
                *x *= &a;
            }
            mult *= Rational::from_integer(a);
            steps_since_content += 1;
        }
        if steps_since_content >= 8 {
            steps_since_content = 0;
            let mut gc = BigInt::zero();
            for (_, x) in done.iter().chain(rest.iter()) {
                gc = gc.gcd(x);
                if gc.is_one() {
                    break;
                }
            }
            if !gc.is_one() && !gc.is_zero() {
                for (_, x) in done.iter_mut().chain(rest.iter_mut()) {
                    *x /= &gc;
                }
                mult /= Rational::from_integer(gc);
            }
        }
    }
    let mut out = Poly { terms: done };
    if !out.is_zero() {
        let before = out.lc().clone();
        out.make_primitive();
        mult *= Rational::from_integer(out.lc().clone()) / Rational::from_integer(before);
    }
    (out, mult)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    sugar: u32,
}

/// Counters reported with `--trace`.
#[derive(Clone, Debug, Default)]
pub struct GbStats {
    pub pairs_processed: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

/// Reduced Gröbner basis (primitive integer polynomials, ascending leading monomials).
pub(crate) fn buchberger(gens: Vec<Poly>, ord: &Order, stats: &mut GbStats) -> Vec<Poly> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inter-reduce the input by feeding generators through the update procedure
    let mut input: Vec<Poly> = gens.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for p in input {
        let basis: Vec<&Poly> = (0..polys.len()).filter(|&k| active[k]).map(|k| &polys[k]).collect();
        let (h, _) = reduce(ord, &p, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![h];
        }
        let sugar = p.terms.iter().map(|t| t.0.deg).max().unwrap_or(0);
        update(&mut polys, &mut sugars, &mut active, &mut pairs, h, sugar, ord);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                pairs[x].sugar.cmp(&pairs[y].sugar).then_with(|| ord.cmp(&pairs[x].lcm, &pairs[y].lcm))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        stats.pairs_processed += 1;
        let s = spoly(ord, &polys[pair.i], &polys[pair.j], &pair.lcm);
        if s.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let basis: Vec<&Poly> = (0..polys.len()).filter(|&k| active[k]).map(|k| &polys[k]).collect();
        let (h, _) = reduce(ord, &s, &basis);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            stats.basis_size = 1;
            return vec![h];
        }
        update(&mut polys, &mut sugars, &mut active, &mut pairs, h, pair.sugar, ord);
    }

    let mut basis: Vec<Poly> = (0..polys.len()).filter(|&k| active[k]).map(|k| polys[k].clone()).collect();
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Poly> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let (h, _) = reduce(ord, &minimal[k], &others);
        reduced.push(h);
    }
    stats.basis_size = reduced.len();
    reduced
}

fn spoly(ord: &Order, f: &Poly, g: &Poly, lcm: &Exps) -> Poly {
    let gcd = f.lc().gcd(g.lc());
    let a = g.lc() / &gcd;
    let b = f.lc() / &gcd;
    let sf = lcm.div(f.lm());
    let sg = lcm.div(g.lm());
    let one = Exps { e: [0; MAX_VARS], deg: 0 };
    let left: Vec<(Exps, BigInt)> = f.terms[1..].iter().map(|(e, c)| (e.mul(&sf), c.clone())).collect();
    let terms = lin_comb(ord, &a, &left, &b, &sg, &g.terms[1..]);
    let _ = one;
    let mut p = Poly { terms };
    p.make_primitive();
    p
}

fn update(
    polys: &mut Vec<Poly>,
    sugars: &mut Vec<u32>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly,
    sugar: u32,
    _ord: &Order,
) {
    let hidx = polys.len();
    let hlm = *h.lm();
    let cands: Vec<usize> = (0..polys.len()).filter(|&k| active[k]).collect();

    // Gebauer–Möller: new pairs (h, g)
    let lcms: Vec<Exps> = cands.iter().map(|&k| hlm.lcm(polys[k].lm())).collect();
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        let coprime_a = hlm.coprime(polys[cands[a]].lm());
        if coprime_a {
            continue;
        }
        // drop (h,g_a) if some other pair's lcm properly divides it, or equals it with smaller index
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            if lcms[b].divides(&lcms[a]) && (lcms[b] != lcms[a] || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    // among equal lcms keep one; coprime pairs are discarded (product criterion)
    // but still block others above
    let mut new_pairs = Vec::new();
    for a in 0..cands.len() {
        if !keep[a] {
            continue;
        }
        let k = cands[a];
        if hlm.coprime(polys[k].lm()) {
            continue;
        }
        let s = (sugar + lcms[a].deg - hlm.deg).max(sugars[k] + lcms[a].deg - polys[k].lm().deg);
        new_pairs.push(Pair { i: k, j: hidx, lcm: lcms[a], sugar: s });
    }

    // chain criterion on old pairs
    pairs.retain(|p| {
        if !hlm.divides(&p.lcm) {
            return true;
        }
        let li = hlm.lcm(polys[p.i].lm());
        let lj = hlm.lcm(polys[p.j].lm());
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for k in 0..polys.len() {
        if active[k] && hlm.divides(polys[k].lm()) {
            active[k] = false;
        }
    }
    polys.push(h);
    sugars.push(sugar);
    active.push(true);
}

/// Check that `ring` fits the engine's fixed monomial width.
pub(crate) fn check_arity(ring: &Ring) -> Result<()> {
    if ring.arity() > MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "rings with more than {MAX_VARS} variables are not supported"
        )));
    }
    Ok(())
}

/// Convenience: reduced Gröbner basis of MultiPolys, returned monic over ℚ.
pub(crate) fn gb_multipoly(gens: &[MultiPoly], ring: &Ring, order: MonomialOrder, stats: &mut GbStats) -> Vec<MultiPoly> {
    let ord = Order::new(order, ring.arity());
    let polys: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(|p| to_engine(p, &ord)).collect();
    buchberger(polys, &ord, stats).iter().map(|p| from_engine(p, ring, true)).collect()
}

/// Exact remainder of `p` modulo a Gröbner basis `basis` (monic or not).
pub(crate) fn normal_form_multipoly(p: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let ring = p.ring().clone();
    let ord = Order::new(order, ring.arity());
    let (content, _) = p.primitive_part();
    let ep = to_engine(p, &ord);
    // to_engine may have flipped the sign to make the lead positive
    let sign = {
        let (m, c) = p.leading_term(order).expect("nonzero");
        let _ = m;
        if c.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        }
    };
    let eb: Vec<Poly> = basis.iter().map(|g| to_engine(g, &ord)).collect();
    let refs: Vec<&Poly> = eb.iter().collect();
    let (r, mult) = reduce(&ord, &ep, &refs);
    from_engine(&r, &ring, false).scale(&(content * sign / mult))
}

/// Every S-polynomial of `basis` reduces to zero (Buchberger's criterion).
pub(crate) fn satisfies_buchberger_criterion(basis: &[MultiPoly], ring: &Ring, order: MonomialOrder) -> bool {
    let ord = Order::new(order, ring.arity());
    let eb: Vec<Poly> = basis.iter().filter(|p| !p.is_zero()).map(|g| to_engine(g, &ord)).collect();
    let refs: Vec<&Poly> = eb.iter().collect();
    for i in 0..eb.len() {
        for j in i + 1..eb.len() {
            let l = eb[i].lm().lcm(eb[j].lm());
            let s = spoly(&ord, &eb[i], &eb[j], &l);
            if s.is_zero() {
                continue;
            }
            if !reduce(&ord, &s, &refs).0.is_zero() {
                return false;
            }
        }
    }
    true
}
