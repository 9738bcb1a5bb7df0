//! Ideals, Gröbner bases and the operations built on them.

mod engine;
mod fglm;

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};

pub use engine::GbStats;

/// Finite generating set in a fixed ring. Zero generators are dropped and
/// generators equal up to a scalar are kept once.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<MultiPoly>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if seen.insert(g.normalized_primitive().to_string()) {
                out.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: out })
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: vec![MultiPoly::one(ring)] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ideal::new(&self.ring, self.generators.iter().chain(&other.generators).cloned().collect())
    }

    /// `self + ⟨extra⟩`.
    pub fn with(&self, extra: Vec<MultiPoly>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.generators.iter().cloned().chain(extra).collect())
    }

    /// The same ideal viewed in a larger ring whose first variables are `self.ring()`.
    pub fn extend_to(&self, target: &Ring) -> Ideal {
        Ideal { ring: target.clone(), generators: self.generators.iter().map(|g| g.extend_to(target)).collect() }
    }
}

/// Reduced Gröbner basis with monic elements, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    basis: Vec<MultiPoly>,
    stats: GbStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_term(self.order).expect("nonzero").0.clone()).collect()
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.basis.clone() }
    }
}

/// Other orders go through grevlex first unless the input already is a basis:
/// when the grevlex basis is zero-dimensional the target basis follows by
/// linear algebra, which avoids the coefficient growth of a direct lex run.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    engine::check_arity(&ideal.ring)?;
    let direct = order == MonomialOrder::Grevlex
        || ideal.ring.arity() < 2
        || engine::satisfies_buchberger_criterion(&ideal.generators, &ideal.ring, order);
    if !direct {
        let graded = groebner_basis(ideal, MonomialOrder::Grevlex)?;
        if graded.is_unit() {
            return Ok(GroebnerBasis { order, ..graded });
        }
        if ideal_dimension(&graded) == Dimension::Dim(0) {
            let basis = fglm::convert(&graded, order)?;
            let mut stats = graded.stats.clone();
            stats.basis_size = basis.len();
            return Ok(GroebnerBasis { ring: ideal.ring.clone(), order, basis, stats });
        }
    }
    let mut stats = GbStats::default();
    let mut basis = engine::gb_multipoly(&ideal.generators, &ideal.ring, order, &mut stats);
    if basis.len() == 1 && basis[0].is_constant() {
        basis = vec![MultiPoly::one(&ideal.ring)];
    }
    Ok(GroebnerBasis { ring: ideal.ring.clone(), order, basis, stats })
}

/// Unique remainder of `p` modulo the basis.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> Result<MultiPoly> {
    if p.ring() != &gb.ring {
        return Err(Error::RingMismatch);
    }
    Ok(engine::normal_form_multipoly(p, &gb.basis, gb.order))
}

/// Whether `basis` passes Buchberger's S-pair criterion under `order`.
pub fn is_groebner_basis(basis: &[MultiPoly], ring: &Ring, order: MonomialOrder) -> Result<bool> {
    engine::check_arity(ring)?;
    Ok(engine::satisfies_buchberger_criterion(basis, ring, order))
}

/// Krull dimension of the quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    /// The ideal is the whole ring.
    Empty,
    Dim(usize),
}

impl Dimension {
    pub fn value(&self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Dim(d) => Some(*d),
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Size of the largest variable set independent modulo the leading ideal.
pub fn ideal_dimension(gb: &GroebnerBasis) -> Dimension {
    if gb.is_unit() {
        return Dimension::Empty;
    }
    let n = gb.ring.arity();
    let supports: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        // U is independent iff no leading monomial lives entirely in U
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Dimension::Dim(best)
}

/// Standard monomials of a zero-dimensional basis, ascending in its order.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    match ideal_dimension(gb) {
        Dimension::Empty => return Ok(Vec::new()),
        Dimension::Dim(0) => {}
        Dimension::Dim(d) => return Err(Error::NotZeroDimensional(format!("dimension {d}"))),
    }
    let n = gb.ring.arity();
    let lms = gb.leading_monomials();
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut stack = vec![Monomial::one(n)];
    while let Some(m) = stack.pop() {
        if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in 0..n {
            stack.push(m.mul(&Monomial::var(n, i)));
        }
        seen.insert(m);
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| gb.order.compare_monomials(a, b));
    Ok(out)
}

/// `I ∩ ℚ[kept variables]`, returned in the original ring.
pub fn eliminate(ideal: &Ideal, drop: &[usize]) -> Result<Ideal> {
    let ring = &ideal.ring;
    let n = ring.arity();
    if drop.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument("elimination variable out of range".into()));
    }
    let dropset: BTreeSet<usize> = drop.iter().copied().collect();
    let perm: Vec<usize> = dropset.iter().copied().chain((0..n).filter(|i| !dropset.contains(i))).collect();
    let k = dropset.len();
    let reordered = Ring::new(perm.iter().map(|&i| ring.names()[i].clone()));
    // position of original variable i in the reordered ring
    let mut pos = vec![0; n];
    for (p, &i) in perm.iter().enumerate() {
        pos[i] = p;
    }
    let gens: Vec<MultiPoly> = ideal.generators.iter().map(|g| g.embed(&reordered, &pos)).collect();
    let gb = groebner_basis(&Ideal::new(&reordered, gens)?, MonomialOrder::Elimination(k))?;
    let kept: Vec<MultiPoly> = gb
        .basis
        .iter()
        .filter(|g| g.variables_used().iter().all(|&v| v >= k))
        .map(|g| g.embed(ring, &perm))
        .collect();
    Ideal::new(ring, kept)
}

/// `I : ⟨q⟩^∞` through a Rabinowitsch variable.
fn saturate_by(ideal: &Ideal, q: &MultiPoly) -> Result<Ideal> {
    let ring = &ideal.ring;
    let t = ring.fresh_name("sat");
    let big = ring.extended(&[t]);
    let tv = MultiPoly::var(&big, ring.arity());
    let inv = &MultiPoly::one(&big) - &(&tv * &q.extend_to(&big));
    let ext = ideal.extend_to(&big).with(vec![inv])?;
    let e = eliminate(&ext, &[ring.arity()])?;
    Ideal::new(ring, e.generators.iter().map(|g| g.restrict_to(ring)).collect())
}

/// `I ∩ K` via `s·I + (1 − s)·K` and elimination of `s`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let ring = &a.ring;
    let s = ring.fresh_name("s");
    let big = ring.extended(&[s]);
    let sv = MultiPoly::var(&big, ring.arity());
    let one_minus = &MultiPoly::one(&big) - &sv;
    let mut gens: Vec<MultiPoly> = a.generators.iter().map(|g| &sv * &g.extend_to(&big)).collect();
    gens.extend(b.generators.iter().map(|g| &one_minus * &g.extend_to(&big)));
    let e = eliminate(&Ideal::new(&big, gens)?, &[ring.arity()])?;
    Ideal::new(ring, e.generators.iter().map(|g| g.restrict_to(ring)).collect())
}

/// `I : J^∞ = ⋂_j I : ⟨q_j⟩^∞` over the generators of `J`.
pub fn saturation(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    if ideal.ring != by.ring {
        return Err(Error::RingMismatch);
    }
    if by.generators.is_empty() {
        return Ok(Ideal::unit(&ideal.ring));
    }
    if by.generators.iter().any(MultiPoly::is_constant) {
        return Ok(ideal.clone());
    }
    let mut acc: Option<Ideal> = None;
    for q in &by.generators {
        let s = saturate_by(ideal, q)?;
        acc = Some(match acc {
            None => s,
            Some(prev) => intersect(&prev, &s)?,
        });
    }
    let out = acc.expect("at least one generator");
    // reduce the generating set for later use
    let gb = groebner_basis(&out, MonomialOrder::Grevlex)?;
    Ok(gb.to_ideal())
}

/// Whether `p` vanishes on the complex variety of `I`.
pub fn radical_membership(p: &MultiPoly, ideal: &Ideal) -> Result<bool> {
    if p.ring() != &ideal.ring {
        return Err(Error::RingMismatch);
    }
    if p.is_zero() {
        return Ok(true);
    }
    let ring = &ideal.ring;
    let t = ring.fresh_name("rad");
    let big = ring.extended(&[t]);
    let tv = MultiPoly::var(&big, ring.arity());
    let inv = &MultiPoly::one(&big) - &(&tv * &p.extend_to(&big));
    let gb = groebner_basis(&ideal.extend_to(&big).with(vec![inv])?, MonomialOrder::Grevlex)?;
    Ok(gb.is_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring3() -> Ring {
        Ring::new(["x", "y", "z"])
    }

    fn p(s: &str, r: &Ring) -> MultiPoly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn order_change_matches_direct_computation() {
        let r = ring3();
        let systems: [&[&str]; 3] = [
            &["x^2 + y^2 + z^2 - 4", "x*y - 1", "y - z^2"],
            &["x*y*z - 1", "x^2 - y + z", "z^2 - x - 2"],
            &["x^2 - 2", "y^2 - 3", "z - x*y"],
        ];
        for gens in systems {
            let i = ideal(gens, &r);
            for order in [MonomialOrder::Lex, MonomialOrder::Elimination(1), MonomialOrder::Elimination(2)] {
                let via = groebner_basis(&i, order).unwrap();
                let direct = engine::gb_multipoly(i.generators(), &r, order, &mut GbStats::default());
                assert_eq!(via.basis(), &direct[..], "{gens:?} {order:?}");
            }
        }
    }

    fn ideal(gens: &[&str], r: &Ring) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| p(s, r)).collect()).unwrap()
    }

    #[test]
    fn circle_and_line() {
        let r = Ring::new(["x", "y"]);
        let i = ideal(&["x^2 + y^2 - 1", "x - y"], &r);
        let gb = groebner_basis(&i, MonomialOrder::Lex).unwrap();
        let strs: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
        assert_eq!(strs, vec!["y^2 - 1/2", "x - y"]);
        assert_eq!(ideal_dimension(&gb), Dimension::Dim(0));
        let gb = groebner_basis(&i, MonomialOrder::Grevlex).unwrap();
        assert_eq!(quotient_basis(&gb).unwrap().len(), 2);
    }

    #[test]
    fn unit_and_dimensions() {
        let r = ring3();
        let gb = groebner_basis(&ideal(&["x", "x - 1"], &r), MonomialOrder::Grevlex).unwrap();
        assert!(gb.is_unit());
        assert_eq!(ideal_dimension(&gb), Dimension::Empty);
        let gb = groebner_basis(&ideal(&["x*y", "x*z"], &r), MonomialOrder::Grevlex).unwrap();
        assert_eq!(ideal_dimension(&gb), Dimension::Dim(2));
        let gb = groebner_basis(&ideal(&["x^2 + y^2 + z^2 - 1", "z"], &r), MonomialOrder::Grevlex).unwrap();
        assert_eq!(ideal_dimension(&gb), Dimension::Dim(1));
    }

    #[test]
    fn twisted_cubic_elimination() {
        let r = Ring::new(["t", "x", "y", "z"]);
        let i = ideal(&["x - t", "y - t^2", "z - t^3"], &r);
        let e = eliminate(&i, &[0]).unwrap();
        let gb = groebner_basis(&e, MonomialOrder::Grevlex).unwrap();
        for g in ["x^2 - y", "x*y - z", "y^2 - x*z"] {
            assert!(gb.contains(&p(g, &r)).unwrap(), "{g}");
        }
        assert!(e.generators().iter().all(|g| g.degree_in(0) == 0));
    }

    #[test]
    fn saturation_removes_component() {
        let r = Ring::new(["x", "y"]);
        // ⟨x·y, y^2⟩ : ⟨y⟩^∞ = ⟨1⟩, ⟨x^2·y⟩ : ⟨x⟩^∞ = ⟨y⟩
        let s = saturation(&ideal(&["x*y", "y^2"], &r), &ideal(&["y"], &r)).unwrap();
        assert!(groebner_basis(&s, MonomialOrder::Grevlex).unwrap().is_unit());
        let s = saturation(&ideal(&["x^2*y"], &r), &ideal(&["x"], &r)).unwrap();
        let strs: Vec<String> = s.generators().iter().map(ToString::to_string).collect();
        assert_eq!(strs, vec!["y"]);
        // two-generator saturator: ⟨x y (x-1)⟩ : ⟨x, y⟩^∞ = ⟨x y (x - 1)⟩
        let s = saturation(&ideal(&["x^2*y - x*y"], &r), &ideal(&["x", "y"], &r)).unwrap();
        let gb = groebner_basis(&s, MonomialOrder::Grevlex).unwrap();
        assert!(gb.contains(&p("x^2*y - x*y", &r)).unwrap());
        // the complex variety is the origin alone
        let s = saturation(&ideal(&["x^2 + y^2", "x*y"], &r), &ideal(&["x", "y"], &r)).unwrap();
        assert!(groebner_basis(&s, MonomialOrder::Grevlex).unwrap().is_unit());
    }

    #[test]
    fn radical_membership_examples() {
        let r = Ring::new(["x", "y"]);
        let i = ideal(&["x^2", "y^3"], &r);
        assert!(radical_membership(&p("x + y", &r), &i).unwrap());
        assert!(!radical_membership(&p("x + 1", &r), &i).unwrap());
    }

    #[test]
    fn normal_form_is_exact_remainder() {
        let r = Ring::new(["x", "y"]);
        let gb = groebner_basis(&ideal(&["x^2 - 2", "y^2 - 3"], &r), MonomialOrder::Grevlex).unwrap();
        let nf = normal_form(&p("x^3*y^2 + 1/2*x*y", &r), &gb).unwrap();
        assert_eq!(nf, p("6*x + 1/2*x*y", &r));
        let nf = normal_form(&p("-3*x^2 + y", &r), &gb).unwrap();
        assert_eq!(nf, p("y - 6", &r));
    }

    #[test]
    fn basis_passes_buchberger_criterion() {
        let r = ring3();
        let i = ideal(&["x^2*y - z^3", "x*y^2 - z", "x*y*z - 1"], &r);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination(1)] {
            let gb = groebner_basis(&i, order).unwrap();
            assert!(is_groebner_basis(gb.basis(), &r, order).unwrap());
            for g in i.generators() {
                assert!(gb.contains(g).unwrap());
            }
        }
    }
}
