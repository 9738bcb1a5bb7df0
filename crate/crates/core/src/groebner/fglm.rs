//! Change of monomial order for zero-dimensional ideals by linear algebra
//! in the quotient ring (FGLM).

use std::collections::HashMap;

use num_traits::Zero;

use super::{normal_form, quotient_basis, GroebnerBasis};
use crate::error::Result;
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::Rational;

/// Echelon rows of normal-form vectors, each remembering which combination
/// of accepted monomials produced it.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
}

impl Echelon {
    /// Reduces `w` (the normal form of candidate number `k`). Returns the
    /// dependency coefficients if `w` lies in the span, else stores the row.
    fn insert(&mut self, mut w: Vec<Rational>, k: usize) -> Option<Vec<Rational>> {
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::from_integer(1.into());
        for (p, r, c) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = &w[*p] / &r[*p];
            for (wi, ri) in w.iter_mut().zip(r) {
                if !ri.is_zero() {
                    *wi -= &f * ri;
                }
            }
            for (ci, rc) in combo.iter_mut().zip(c) {
                if !rc.is_zero() {
                    *ci -= &f * rc;
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(p) => {
                self.rows.push((p, w, combo));
                None
            }
        }
    }
}

/// Reduced basis of the same zero-dimensional ideal under `target`.
pub(crate) fn convert(gb: &GroebnerBasis, target: MonomialOrder) -> Result<Vec<MultiPoly>> {
    let ring = gb.ring().clone();
    let n = ring.arity();
    let staircase = quotient_basis(gb)?;
    let index: HashMap<Monomial, usize> = staircase.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = staircase.len();
    let to_vec = |p: &MultiPoly| {
        let mut v = vec![Rational::zero(); dim];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    // normal forms of x_i · s for staircase monomials s, filled on demand
    let mut mult: Vec<HashMap<usize, Vec<Rational>>> = vec![HashMap::new(); n];
    let mut times_var = |i: usize, v: &[Rational]| -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); dim];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !mult[i].contains_key(&j) {
                let m = MultiPoly::from_terms(
                    &ring,
                    [(staircase[j].mul(&Monomial::var(n, i)), Rational::from_integer(1.into()))],
                );
                mult[i].insert(j, to_vec(&normal_form(&m, gb)?));
            }
            for (o, x) in out.iter_mut().zip(&mult[i][&j]) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    };

    let mut accepted: Vec<(Monomial, Vec<Rational>)> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut echelon = Echelon { rows: Vec::new() };
    // candidates carry the normal form of the accepted monomial they extend
    let mut one = vec![Rational::zero(); dim];
    one[index[&Monomial::one(n)]] = Rational::from_integer(1.into());
    let mut candidates: Vec<(Monomial, usize, Option<usize>)> = vec![(Monomial::one(n), usize::MAX, None)];
    while !candidates.is_empty() {
        let best = (0..candidates.len())
            .min_by(|&a, &b| target.compare_monomials(&candidates[a].0, &candidates[b].0))
            .expect("nonempty");
        let (t, var, parent) = candidates.swap_remove(best);
        candidates.retain(|c| c.0 != t);
        if leads.iter().any(|l| l.divides(&t)) {
            continue;
        }
        let nf = match parent {
            None => one.clone(),
            Some(p) => times_var(var, &accepted[p].1)?,
        };
        let k = accepted.len();
        match echelon.insert(nf.clone(), k) {
            Some(combo) => {
                let g = MultiPoly::from_terms(
                    &ring,
                    combo.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| {
                        let m = if j == k { t.clone() } else { accepted[j].0.clone() };
                        (m, c)
                    }),
                );
                leads.push(t);
                basis.push(g);
            }
            None => {
                for i in 0..n {
                    candidates.push((t.mul(&Monomial::var(n, i)), i, Some(k)));
                }
                accepted.push((t, nf));
            }
        }
    }
    basis.sort_by(|a, b| {
        let la = a.leading_term(target).expect("nonzero").0;
        let lb = b.leading_term(target).expect("nonzero").0;
        target.compare_monomials(la, lb)
    });
    Ok(basis)
}
