//! Problem model, slack lifting, LICQ and the tangency ideals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::RatMatrix;
use crate::poly::{from_columns, poly_matrix_minors, MultiPoly, Ring};
use crate::Rational;

/// Polynomial optimization problem `f` subject to `g = 0`, `h ≥ 0`, with a candidate point.
#[derive(Clone, Debug)]
pub struct Problem {
    pub ring: Ring,
    pub objective: MultiPoly,
    pub equalities: Vec<MultiPoly>,
    pub inequalities: Vec<MultiPoly>,
    pub point: Vec<Rational>,
}

impl Problem {
    pub fn new(
        ring: &Ring,
        objective: MultiPoly,
        equalities: Vec<MultiPoly>,
        inequalities: Vec<MultiPoly>,
        point: Vec<Rational>,
    ) -> Result<Self> {
        if point.len() != ring.arity() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates but there are {} variables",
                point.len(),
                ring.arity()
            )));
        }
        for p in std::iter::once(&objective).chain(&equalities).chain(&inequalities) {
            if p.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Problem { ring: ring.clone(), objective, equalities, inequalities, point })
    }

    /// `g(x*) = 0` and `h(x*) ≥ 0` exactly.
    pub fn check_feasible(&self) -> Result<()> {
        for (i, g) in self.equalities.iter().enumerate() {
            let v = g.evaluate(&self.point);
            if !v.is_zero() {
                return Err(Error::PointNotFeasible(format!("equality {} evaluates to {v}", i + 1)));
            }
        }
        for (j, h) in self.inequalities.iter().enumerate() {
            let v = h.evaluate(&self.point);
            if v.is_negative() {
                return Err(Error::PointNotFeasible(format!("inequality {} evaluates to {v}", j + 1)));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self) -> Rational {
        self.objective.evaluate(&self.point)
    }
}

/// Slack variable introduced for one inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slack {
    pub inequality: usize,
    pub variable: usize,
    pub value: Rational,
}

/// Equality-only problem; `slacks` records how inequalities were lifted.
#[derive(Clone, Debug)]
pub struct EqualityProblem {
    pub ring: Ring,
    pub objective: MultiPoly,
    pub equalities: Vec<MultiPoly>,
    pub point: Vec<Rational>,
    pub slacks: Vec<Slack>,
}

impl EqualityProblem {
    pub fn arity(&self) -> usize {
        self.ring.arity()
    }

    pub fn objective_value(&self) -> Rational {
        self.objective.evaluate(&self.point)
    }
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Replace each `h_j ≥ 0` by `h_j − z_j² = 0` with `z_j* = √h_j(x*)`.
pub fn slackify(p: &Problem) -> Result<EqualityProblem> {
    if p.inequalities.is_empty() {
        return Ok(EqualityProblem {
            ring: p.ring.clone(),
            objective: p.objective.clone(),
            equalities: p.equalities.clone(),
            point: p.point.clone(),
            slacks: Vec::new(),
        });
    }
    let n = p.ring.arity();
    let mut names: Vec<String> = Vec::new();
    let mut probe = p.ring.clone();
    for _ in &p.inequalities {
        let name = probe.fresh_name("z");
        probe = probe.extended(&[name.clone()]);
        names.push(name);
    }
    let ring = p.ring.extended(&names);
    let mut point = p.point.clone();
    let mut equalities: Vec<MultiPoly> = p.equalities.iter().map(|g| g.extend_to(&ring)).collect();
    let mut slacks = Vec::new();
    for (j, h) in p.inequalities.iter().enumerate() {
        let hv = h.evaluate(&p.point);
        if hv.is_negative() {
            return Err(Error::PointNotFeasible(format!("inequality {} evaluates to {hv}", j + 1)));
        }
        let z = rational_sqrt(&hv).ok_or_else(|| Error::NonRationalSlack { index: j, value: hv.to_string() })?;
        let zv = MultiPoly::var(&ring, n + j);
        equalities.push(&h.extend_to(&ring) - &(&zv * &zv));
        point.push(z.clone());
        slacks.push(Slack { inequality: j, variable: n + j, value: z });
    }
    Ok(EqualityProblem { objective: p.objective.extend_to(&ring), ring, equalities, point, slacks })
}

/// Gradients of the constraints at the point are linearly independent.
pub fn licq_check(p: &EqualityProblem) -> bool {
    if p.equalities.is_empty() {
        return true;
    }
    let rows: Vec<Vec<Rational>> =
        p.equalities.iter().map(|g| g.gradient().iter().map(|d| d.evaluate(&p.point)).collect()).collect();
    RatMatrix::from_rows(rows).rank() == p.equalities.len()
}

/// The ideals `I_Σ`, `I_Γ` and `I_L` of one equality problem.
#[derive(Clone, Debug)]
pub struct IdealTriple {
    pub sigma: Ideal,
    pub gamma: Ideal,
    pub ell: Ideal,
}

/// Column `x − x*`.
pub fn radial_column(ring: &Ring, point: &[Rational]) -> Vec<MultiPoly> {
    (0..ring.arity())
        .map(|i| &MultiPoly::var(ring, i) - &MultiPoly::constant(ring, point[i].clone()))
        .collect()
}

/// `‖x − x*‖²`.
pub fn squared_distance(ring: &Ring, point: &[Rational]) -> MultiPoly {
    radial_column(ring, point).iter().fold(MultiPoly::zero(ring), |acc, c| &acc + &(c * c))
}

pub fn build_ideals(p: &EqualityProblem) -> Result<IdealTriple> {
    let n = p.arity();
    let l = p.equalities.len();
    if l >= n {
        return Err(Error::TooManyConstraints { equalities: l, variables: n });
    }
    let ring = &p.ring;
    let grad_f = p.objective.gradient();
    let grad_g: Vec<Vec<MultiPoly>> = p.equalities.iter().map(MultiPoly::gradient).collect();
    let radial = radial_column(ring, &p.point);

    let with_gens = |minors: Vec<MultiPoly>| -> Result<Ideal> {
        Ideal::new(ring, p.equalities.iter().cloned().chain(minors).collect())
    };

    let mut cols = vec![grad_f.clone()];
    cols.extend(grad_g.iter().cloned());
    let sigma = with_gens(poly_matrix_minors(&from_columns(&cols), l + 1)?)?;

    let gamma = if l == n - 1 {
        with_gens(Vec::new())?
    } else {
        let mut cols = cols.clone();
        cols.push(radial.clone());
        with_gens(poly_matrix_minors(&from_columns(&cols), l + 2)?)?
    };

    let mut cols = grad_g.clone();
    cols.push(radial);
    let ell = with_gens(poly_matrix_minors(&from_columns(&cols), l + 1)?)?;
    Ok(IdealTriple { sigma, gamma, ell })
}

/// Invertible linear change `x ↦ A·x` with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    a: RatMatrix,
    a_inv: RatMatrix,
}

impl CoordinateChange {
    pub fn new(a: RatMatrix) -> Result<Self> {
        let a_inv = a.inverse()?;
        Ok(CoordinateChange { a, a_inv })
    }

    pub fn identity(n: usize) -> Self {
        CoordinateChange { a: RatMatrix::identity(n), a_inv: RatMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.a_inv
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.a == RatMatrix::identity(self.a.rows())
    }

    /// The change undoing this one.
    pub fn inverted(&self) -> CoordinateChange {
        CoordinateChange { a: self.a_inv.clone(), a_inv: self.a.clone() }
    }

    /// `p(A·x)`.
    pub fn transform(&self, p: &MultiPoly) -> MultiPoly {
        let ring = p.ring();
        let images: Vec<MultiPoly> = (0..self.dim())
            .map(|i| {
                MultiPoly::from_terms(
                    ring,
                    (0..self.dim()).map(|j| {
                        (crate::poly::Monomial::var(self.dim(), j), self.a.get(i, j).clone())
                    }),
                )
            })
            .collect();
        p.compose(&images)
    }
}

/// Integer matrix with entries in `[−bound, bound]`, drawn from a seeded
/// ChaCha stream and resampled until invertible.
pub fn random_coordinate_change(seed: u64, n: usize) -> Result<CoordinateChange> {
    random_coordinate_change_with(&mut ChaCha8Rng::seed_from_u64(seed), n, 3)
}

pub fn random_coordinate_change_with(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Result<CoordinateChange> {
    for _ in 0..100 {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        if let Ok(c) = CoordinateChange::new(RatMatrix::from_i64(&rows)) {
            return Ok(c);
        }
    }
    Err(Error::CoordinateChangeExhausted(100))
}

/// Problem in the new coordinates: `f(Ax)`, `g(Ax)`, point `A⁻¹x*`.
pub fn apply_coordinate_change(p: &EqualityProblem, change: &CoordinateChange) -> Result<EqualityProblem> {
    if change.dim() != p.arity() {
        return Err(Error::InvalidArgument(format!(
            "coordinate change of size {} for {} variables",
            change.dim(),
            p.arity()
        )));
    }
    Ok(EqualityProblem {
        ring: p.ring.clone(),
        objective: change.transform(&p.objective),
        equalities: p.equalities.iter().map(|g| change.transform(g)).collect(),
        point: change.inverse().mul_vec(&p.point),
        slacks: p.slacks.clone(),
    })
}
