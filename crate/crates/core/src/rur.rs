//! Rational univariate representations of zero-dimensional ideals.
//!
//! Everything is read off the multiplication matrices of the quotient algebra
//! in a grevlex basis: the characteristic polynomial of a linear form comes
//! from power sums of traces, and the coordinate numerators from the trace
//! form contracted against Horner shifts of the square-free eliminant.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, quotient_basis, GroebnerBasis, Ideal};
use crate::linalg::{charpoly_from_power_sums, scale_to_integers, unscale, RatMatrix};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};
use crate::univariate::UniPoly;
use crate::Rational;

/// Default number of linear forms tried before giving up.
pub const DEFAULT_SEPARATING_BUDGET: usize = 64;

/// Matrix stored by sparse columns over a common denominator; most columns
/// of a variable's multiplication matrix are unit vectors. Products scale the
/// operand to integers once, so the inner loops never touch a gcd.
#[derive(Clone, Debug)]
struct SparseCols {
    cols: Vec<Vec<(usize, BigInt)>>,
    den: BigInt,
}

impl SparseCols {
    fn from_columns(cols: Vec<Vec<Rational>>) -> Self {
        let flat: Vec<Rational> = cols.iter().flatten().filter(|x| !x.is_zero()).cloned().collect();
        let den = scale_to_integers(&flat).1;
        let cols = cols
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.numer() * (&den / x.denom())))
                    .collect()
            })
            .collect();
        SparseCols { cols, den }
    }

    fn dim(&self) -> usize {
        self.cols.len()
    }

    /// `M·v`
    fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        let (vi, dv) = scale_to_integers(v);
        let mut out = vec![BigInt::zero(); self.dim()];
        for (col, x) in self.cols.iter().zip(&vi) {
            if x.is_zero() {
                continue;
            }
            for (r, c) in col {
                out[*r] += c * x;
            }
        }
        unscale(out, &(dv * &self.den))
    }

    /// `rᵀ·M`
    fn row_mul(&self, r: &[Rational]) -> Vec<Rational> {
        let (ri, dr) = scale_to_integers(r);
        let out = self
            .cols
            .iter()
            .map(|col| {
                let mut acc = BigInt::zero();
                for (i, c) in col {
                    if !ri[*i].is_zero() {
                        acc += &ri[*i] * c;
                    }
                }
                acc
            })
            .collect();
        unscale(out, &(dr * &self.den))
    }

    fn entry(&self, x: &BigInt) -> Rational {
        Rational::new(x.clone(), self.den.clone())
    }

    fn to_dense(&self) -> RatMatrix {
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        for (j, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                m.set(*r, j, self.entry(c));
            }
        }
        m
    }
}

/// Quotient algebra `ℚ[x]/I` of a zero-dimensional ideal.
pub struct QuotientAlgebra {
    ring: Ring,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    leads: HashMap<Monomial, Vec<Rational>>,
    cache: HashMap<Monomial, Vec<Rational>>,
    mult: Vec<RatMatrix>,
    sparse: Vec<SparseCols>,
    /// `(j', k)` with `b_j = x_k·b_j'`, for every basis index but the one of `1`;
    /// listed so that parents precede children.
    staircase: Vec<(usize, usize, usize)>,
    trace: Option<Vec<Rational>>,
}

impl QuotientAlgebra {
    /// Requires a grevlex basis.
    pub fn new(gb: &GroebnerBasis) -> Result<Self> {
        if gb.order() != MonomialOrder::Grevlex {
            return Err(Error::InvalidArgument("quotient algebra needs a grevlex basis".into()));
        }
        let basis = quotient_basis(gb)?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let d = basis.len();
        let mut leads = HashMap::new();
        for g in gb.basis() {
            let (lm, lc) = g.leading_term(MonomialOrder::Grevlex).expect("nonzero");
            let mut v = vec![Rational::zero(); d];
            for (m, c) in g.terms() {
                if m == lm {
                    continue;
                }
                let j = *index.get(m).ok_or_else(|| Error::Internal("basis is not reduced".into()))?;
                v[j] = -c / lc;
            }
            leads.insert(lm.clone(), v);
        }
        let n = gb.ring().arity();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&j| basis[j].degree());
        let mut staircase = Vec::with_capacity(d.saturating_sub(1));
        for &j in &order {
            if let Some(k) = basis[j].support().next() {
                let parent = Monomial::var(n, k).quotient_of(&basis[j]).expect("divides");
                staircase.push((j, index[&parent], k));
            }
        }
        let mut alg = QuotientAlgebra {
            ring: gb.ring().clone(),
            basis,
            index,
            leads,
            cache: HashMap::new(),
            mult: Vec::new(),
            sparse: Vec::new(),
            staircase,
            trace: None,
        };
        let mut sparse = Vec::with_capacity(n);
        for i in 0..n {
            let xi = Monomial::var(n, i);
            let cols: Vec<Vec<Rational>> = (0..d).map(|j| alg.border_nf(&alg.basis[j].mul(&xi))).collect();
            sparse.push(SparseCols::from_columns(cols));
        }
        alg.mult = sparse.iter().map(SparseCols::to_dense).collect();
        alg.sparse = sparse;
        alg.cache.clear();
        Ok(alg)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Multiplication by the `i`-th variable.
    pub fn variable_matrix(&self, i: usize) -> &RatMatrix {
        &self.mult[i]
    }

    fn unit(&self, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.basis.len()];
        v[j] = Rational::one();
        v
    }

    /// Normal form while the multiplication matrices are being built: only
    /// border monomials `x_k·b_j` are asked for, and each reduces through a
    /// leading monomial of the basis.
    fn border_nf(&mut self, m: &Monomial) -> Vec<Rational> {
        if let Some(&j) = self.index.get(m) {
            return self.unit(j);
        }
        if let Some(v) = self.leads.get(m).or_else(|| self.cache.get(m)) {
            return v.clone();
        }
        // m = x_k·m' with m' non-standard and smaller
        let n = m.arity();
        let mut split = None;
        for k in m.support() {
            let q = Monomial::var(n, k).quotient_of(m).expect("divides");
            if !self.index.contains_key(&q) {
                split = Some((k, q));
                break;
            }
        }
        let (k, q) = split.expect("non-standard monomial that is not a leading monomial has a non-standard divisor");
        let inner = self.border_nf(&q);
        let xk = Monomial::var(n, k);
        let mut out = vec![Rational::zero(); self.basis.len()];
        for (j, c) in inner.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = self.basis[j].mul(&xk);
            let col = self.border_nf(&prod);
            for (o, x) in out.iter_mut().zip(&col) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        self.cache.insert(m.clone(), out.clone());
        out
    }

    /// Coordinates of the normal form of a monomial.
    pub fn nf_monomial(&mut self, m: &Monomial) -> Vec<Rational> {
        if let Some(&j) = self.index.get(m) {
            return self.unit(j);
        }
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let k = m.support().next().expect("the constant monomial is standard");
        let q = Monomial::var(m.arity(), k).quotient_of(m).expect("divides");
        let inner = self.nf_monomial(&q);
        let out = self.sparse[k].mul_vec(&inner);
        self.cache.insert(m.clone(), out.clone());
        out
    }

    /// Coordinates of the normal form of `p`.
    pub fn nf(&mut self, p: &MultiPoly) -> Result<Vec<Rational>> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = vec![Rational::zero(); self.basis.len()];
        for (m, c) in p.terms() {
            let v = self.nf_monomial(m);
            for (o, x) in out.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }

    /// Columns `NF(p·b_j)`, obtained from `NF(p)` by walking up the staircase.
    fn columns_of(&mut self, p: &MultiPoly) -> Result<Vec<Vec<Rational>>> {
        let d = self.basis.len();
        let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); d];
        cols[self.one_index()] = self.nf(p)?;
        for &(j, parent, k) in &self.staircase {
            cols[j] = self.sparse[k].mul_vec(&cols[parent]);
        }
        Ok(cols)
    }

    /// Matrix of multiplication by `p` (column `j` holds `NF(p·b_j)`).
    pub fn multiplication_matrix(&mut self, p: &MultiPoly) -> Result<RatMatrix> {
        Ok(self.sparse_matrix(p)?.to_dense())
    }

    fn sparse_matrix(&mut self, p: &MultiPoly) -> Result<SparseCols> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if p.is_zero() {
            return Ok(SparseCols { cols: vec![Vec::new(); self.basis.len()], den: BigInt::one() });
        }
        if p.total_degree() == Some(1) && p.constant_term().is_zero() {
            let n = self.ring.arity();
            let coeffs: Vec<Rational> = (0..n).map(|i| p.coefficient(&Monomial::var(n, i))).collect();
            return Ok(self.linear_matrix(&coeffs));
        }
        Ok(SparseCols::from_columns(self.columns_of(p)?))
    }

    /// `τᵀ·M_p`, so that `Tr(p·w) = (τᵀ·M_p)·w` for any coordinate vector `w`.
    fn trace_row(&mut self, p: &MultiPoly) -> Vec<Rational> {
        let tau = self.trace_vector();
        let mut out = vec![Rational::zero(); tau.len()];
        for (m, c) in p.terms() {
            let mut row = tau.clone();
            for (k, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    row = self.sparse[k].row_mul(&row);
                }
            }
            for (o, x) in out.iter_mut().zip(&row) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// `τ_j = Tr(M_{b_j})`.
    ///
    /// `Tr(M_{b_j}) = Σ_l [NF(b_j·b_l)]_l = Σ_l (e_lᵀ·M_{b_l})_j`, and each row
    /// `e_lᵀ·M_{b_l}` is a chain of products with variable matrices.
    pub fn trace_vector(&mut self) -> Vec<Rational> {
        if let Some(t) = &self.trace {
            return t.clone();
        }
        let d = self.basis.len();
        let mut tau = vec![Rational::zero(); d];
        for l in 0..d {
            let mut row = self.unit(l);
            for (k, &e) in self.basis[l].exponents().iter().enumerate() {
                for _ in 0..e {
                    row = self.sparse[k].row_mul(&row);
                }
            }
            for (t, x) in tau.iter_mut().zip(&row) {
                if !x.is_zero() {
                    *t += x;
                }
            }
        }
        self.trace = Some(tau.clone());
        tau
    }

    /// Rank of the Hermite trace form, i.e. the number of distinct complex points.
    pub fn count_distinct_points(&mut self) -> usize {
        let tau = self.trace_vector();
        let d = self.basis.len();
        // row j of the form is τᵀ·M_{b_j}
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); d];
        rows[self.one_index()] = tau;
        for &(j, parent, k) in &self.staircase {
            rows[j] = self.sparse[k].row_mul(&rows[parent]);
        }
        RatMatrix::from_rows(rows).rank()
    }

    /// Characteristic polynomial of multiplication by `p` (degree = algebra dimension).
    pub fn charpoly(&mut self, p: &MultiPoly) -> Result<UniPoly> {
        let m = self.sparse_matrix(p)?;
        let tau = self.trace_vector();
        let (_, sums) = power_vectors(&m, &tau, self.one_index(), self.basis.len());
        Ok(charpoly_from_power_sums(&sums))
    }

    fn one_index(&self) -> usize {
        self.index[&Monomial::one(self.ring.arity())]
    }

    /// Multiplication by a linear form, as a combination of the variable matrices.
    fn linear_matrix(&self, coeffs: &[Rational]) -> SparseCols {
        let d = self.basis.len();
        let mut cols = vec![vec![Rational::zero(); d]; d];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = &self.sparse[k];
            let scaled = c / Rational::from_integer(m.den.clone());
            for (j, col) in m.cols.iter().enumerate() {
                for (r, x) in col {
                    cols[j][*r] += &scaled * x;
                }
            }
        }
        SparseCols::from_columns(cols)
    }
}

/// `vecs[i] = M^i e_1` for `i < count` and `sums[k−1] = τ·M^k e_1` for `k ≤ count`.
fn power_vectors(m: &SparseCols, tau: &[Rational], one: usize, count: usize) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let d = tau.len();
    let mut v = vec![Rational::zero(); d];
    v[one] = Rational::one();
    let mut vecs = Vec::with_capacity(count);
    let mut sums = Vec::with_capacity(count);
    for _ in 0..count {
        let next = m.mul_vec(&v);
        vecs.push(v);
        sums.push(dot(tau, &next));
        v = next;
    }
    (vecs, sums)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let (ai, da) = scale_to_integers(a);
    let (bi, db) = scale_to_integers(b);
    let mut acc = BigInt::zero();
    for (x, y) in ai.iter().zip(&bi) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    Rational::new(acc, da * db)
}

/// Rational univariate representation: the points of `V(I)` are
/// `x_i = u_i(t)/v(t)` over the roots `t` of the square-free `v0`, where
/// `t = Σ λ_i x_i` is the separating form.
#[derive(Clone, Debug)]
pub struct Rur {
    pub ring: Ring,
    pub separating_form: Vec<Rational>,
    pub v0: UniPoly,
    pub v: UniPoly,
    pub u: Vec<UniPoly>,
    /// Dimension of the quotient algebra (points counted with multiplicity).
    pub multiplicity: usize,
}

impl Rur {
    pub fn num_points(&self) -> usize {
        self.v0.degree().unwrap_or(0)
    }

    pub fn numerator(&self, var: usize) -> &UniPoly {
        &self.u[var]
    }

    /// Numerator of `p(u/v)` times `v^deg p`, reduced modulo `v0`.
    pub fn substitute(&self, p: &MultiPoly) -> Result<UniPoly> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let deg = p.total_degree().unwrap_or(0);
        let mut vpow = vec![UniPoly::one()];
        for k in 1..=deg as usize {
            vpow.push((&vpow[k - 1] * &self.v).rem(&self.v0)?);
        }
        let mut upow: Vec<Vec<UniPoly>> = self.u.iter().map(|u| vec![UniPoly::one(), u.rem(&self.v0).unwrap_or_default()]).collect();
        let mut acc = UniPoly::zero();
        for (m, c) in p.terms() {
            let mut t = vpow[(deg - m.degree()) as usize].scale(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                while upow[i].len() <= e as usize {
                    let next = (&upow[i][upow[i].len() - 1] * &upow[i][1]).rem(&self.v0)?;
                    upow[i].push(next);
                }
                if e > 0 {
                    t = (&t * &upow[i][e as usize]).rem(&self.v0)?;
                }
            }
            acc = &acc + &t;
        }
        acc.rem(&self.v0)
    }

    /// Every generator vanishes at every encoded point.
    pub fn residue_check(&self, ideal: &Ideal) -> Result<bool> {
        for g in ideal.generators() {
            if !self.substitute(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Candidate separating forms: coordinate functions first, then `(1, k, k², …)`.
fn candidate_form(n: usize, attempt: usize) -> Vec<Rational> {
    if attempt < n {
        let mut v = vec![Rational::zero(); n];
        v[attempt] = Rational::one();
        return v;
    }
    let k = Rational::from_integer((attempt - n + 1).into());
    let mut v = Vec::with_capacity(n);
    let mut p = Rational::one();
    for _ in 0..n {
        v.push(p.clone());
        p *= &k;
    }
    v
}

fn linear_form(ring: &Ring, coeffs: &[Rational]) -> MultiPoly {
    let n = ring.arity();
    MultiPoly::from_terms(ring, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
}

/// First candidate linear form taking distinct values on the points.
pub fn find_separating_form(alg: &mut QuotientAlgebra, budget: usize) -> Result<(Vec<Rational>, UniPoly)> {
    let n = alg.ring.arity();
    let full = alg.dimension();
    let mut target = None;
    for attempt in 0..budget {
        let form = candidate_form(n, attempt);
        let chi = alg.charpoly(&linear_form(&alg.ring.clone(), &form))?;
        let v0 = chi.squarefree_part()?;
        // a square-free charpoly already has as many roots as there are points
        let deg = v0.degree();
        if deg == Some(full) {
            return Ok((form, v0));
        }
        let t = *target.get_or_insert_with(|| alg.count_distinct_points());
        if deg == Some(t) {
            return Ok((form, v0));
        }
    }
    Err(Error::SeparatingFormBudget(budget))
}

pub fn rur_from_algebra(alg: &mut QuotientAlgebra, budget: usize) -> Result<Rur> {
    let ring = alg.ring.clone();
    rur_with_functions(alg, budget, &[], &ring)
}

/// RUR of `I + ⟨y_1 − p_1, …, y_k − p_k⟩` in `target`, the ring of `I`
/// followed by `y_1, …, y_k`. Both ideals have the same quotient algebra, so
/// only the Gröbner basis of `I` is needed.
pub fn rur_with_functions(alg: &mut QuotientAlgebra, budget: usize, funcs: &[MultiPoly], target: &Ring) -> Result<Rur> {
    let ring = alg.ring.clone();
    let n = ring.arity();
    if target.arity() != n + funcs.len() || funcs.iter().any(|p| p.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let total = target.arity();
    if alg.dimension() == 0 {
        return Ok(Rur {
            ring: target.clone(),
            separating_form: vec![Rational::zero(); total],
            v0: UniPoly::one(),
            v: UniPoly::one(),
            u: vec![UniPoly::zero(); total],
            multiplicity: 0,
        });
    }
    let (mut form, v0) = find_separating_form(alg, budget)?;
    form.resize(total, Rational::zero());
    let d = v0.degree().expect("nonzero");
    // with v0 = Σ a_k T^k, the Horner shift H_j = Σ_k a_(d−j+k) T^k / a_d
    let (a, _) = scale_to_integers(v0.coeffs());
    let lead = a[d].clone();
    let mt = alg.linear_matrix(&form[..n]);
    let tau = alg.trace_vector();
    let one = alg.one_index();
    let (vecs, _) = power_vectors(&mt, &tau, one, d);
    // Σ_i t_i·H_(d−1−i), whose T^k coefficient is Σ_i t_i·a_(i+1+k) / a_d
    let combine = |traces: &[Rational]| -> UniPoly {
        let (t, den) = scale_to_integers(traces);
        let mut acc = vec![BigInt::zero(); d];
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            for (k, slot) in acc.iter_mut().enumerate().take(d - i) {
                let c = &a[i + 1 + k];
                if !c.is_zero() {
                    *slot += ti * c;
                }
            }
        }
        UniPoly::new(unscale(acc, &(den * &lead)))
    };
    let base: Vec<Rational> = vecs.iter().map(|v| dot(&tau, v)).collect();
    let v = combine(&base);
    let mut u = Vec::with_capacity(total);
    for i in 0..n {
        let row = alg.sparse[i].row_mul(&tau);
        let traces: Vec<Rational> = vecs.iter().map(|w| dot(&row, w)).collect();
        u.push(combine(&traces));
    }
    for p in funcs {
        let row = alg.trace_row(p);
        let traces: Vec<Rational> = vecs.iter().map(|w| dot(&row, w)).collect();
        u.push(combine(&traces));
    }
    Ok(Rur { ring: target.clone(), separating_form: form, v0, v, u, multiplicity: alg.dimension() })
}

/// RUR of a zero-dimensional ideal.
pub fn rur_from_ideal(ideal: &Ideal, budget: usize) -> Result<Rur> {
    let gb = groebner_basis(ideal, MonomialOrder::Grevlex)?;
    let mut alg = QuotientAlgebra::new(&gb)?;
    rur_from_algebra(&mut alg, budget)
}

/// Matrix of multiplication by `p` in `ℚ[x]/I` for a grevlex basis of `I`.
pub fn multiplication_matrix(gb: &GroebnerBasis, p: &MultiPoly) -> Result<RatMatrix> {
    QuotientAlgebra::new(gb)?.multiplication_matrix(p)
}

/// Number of distinct complex points of a zero-dimensional ideal.
pub fn count_distinct_points(gb: &GroebnerBasis) -> Result<usize> {
    Ok(QuotientAlgebra::new(gb)?.count_distinct_points())
}
