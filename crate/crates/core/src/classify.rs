//! The classification driver.
//!
//! Step 1 picks a one-dimensional tangency ideal, steps 2 and 3 certify radii
//! below which no spurious critical distance occurs, and step 4 compares the
//! objective on the sphere section of the tangency curve with `f(x*)`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, ideal_dimension, saturation, Dimension, Ideal};
use crate::poly::{determinant, jacobian, subsets, MonomialOrder, MultiPoly, Ring};
use crate::rur::{rur_with_functions, QuotientAlgebra, Rur, DEFAULT_SEPARATING_BUDGET};
use crate::tangency::{
    apply_coordinate_change, build_ideals, licq_check, random_coordinate_change_with, slackify, squared_distance,
    CoordinateChange, EqualityProblem, IdealTriple, Problem,
};
use crate::univariate::{isolate_real_roots, num, GapCheck, IsolatingInterval, Refiner, UniPoly};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct Config {
    pub max_coordinate_retries: usize,
    pub halving_bound: usize,
    pub radius_override: Option<Rational>,
    pub rng_seed: u64,
    pub separating_budget: usize,
    /// Final width of the objective-value intervals is `2^-refine_bits`.
    pub refine_bits: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_coordinate_retries: 8,
            halving_bound: 256,
            radius_override: None,
            rng_seed: 0,
            separating_budget: DEFAULT_SEPARATING_BUDGET,
            refine_bits: 40,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    LocalMinimizer,
    LocalMaximizer,
    NotExtremum,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::LocalMinimizer => "local minimizer",
            Classification::LocalMaximizer => "local maximizer",
            Classification::NotExtremum => "not an extremum point",
        }
    }

    pub fn from_label(text: &str) -> Option<Self> {
        [Classification::LocalMinimizer, Classification::LocalMaximizer, Classification::NotExtremum]
            .into_iter()
            .find(|c| c.label() == text)
    }

    /// Decision table on the counts of sphere points above and below `f(x*)`.
    pub fn from_counts(n1: usize, n2: usize) -> Option<Self> {
        match (n1 > 0, n2 > 0) {
            (true, false) => Some(Classification::LocalMinimizer),
            (false, true) => Some(Classification::LocalMaximizer),
            (true, true) => Some(Classification::NotExtremum),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which ideal step 1 settled on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealSource {
    Gamma,
    Saturation,
}

#[derive(Clone, Debug)]
pub struct Selection {
    pub problem: EqualityProblem,
    pub ideals: IdealTriple,
    pub ideal: Ideal,
    pub source: IdealSource,
    pub change: CoordinateChange,
    /// Coordinate changes tried after the identity.
    pub retries: usize,
}

fn dimension_of(ideal: &Ideal) -> Result<Dimension> {
    Ok(ideal_dimension(&groebner_basis(ideal, MonomialOrder::Grevlex)?))
}

/// Step 1: a one-dimensional ideal whose real variety contains the tangency curve.
pub fn step1_select_ideal(p: &EqualityProblem, cfg: &Config) -> Result<Selection> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let n = p.arity();
    for attempt in 0..=cfg.max_coordinate_retries {
        let change =
            if attempt == 0 { CoordinateChange::identity(n) } else { random_coordinate_change_with(&mut rng, n, 3)? };
        let problem = if attempt == 0 { p.clone() } else { apply_coordinate_change(p, &change)? };
        let ideals = build_ideals(&problem)?;
        if dimension_of(&ideals.gamma)? == Dimension::Dim(1) {
            let ideal = ideals.gamma.clone();
            return Ok(Selection { problem, ideals, ideal, source: IdealSource::Gamma, change, retries: attempt });
        }
        let sat = saturation(&ideals.gamma, &ideals.sigma)?;
        if dimension_of(&sat)? == Dimension::Dim(1) {
            return Ok(Selection {
                problem,
                ideals,
                ideal: sat,
                source: IdealSource::Saturation,
                change,
                retries: attempt,
            });
        }
    }
    Err(Error::RetriesExhausted(cfg.max_coordinate_retries))
}

/// Ideal augmented by `‖x − x*‖² − s` in a ring with the extra variable `s` last.
fn with_distance(ideal: &Ideal, point: &[Rational]) -> Result<(Ring, Ideal)> {
    let ring = ideal.ring();
    let big = ring.extended(&[ring.fresh_name("s")]);
    let d = squared_distance(ring, point).extend_to(&big);
    let s = MultiPoly::var(&big, ring.arity());
    let aug = ideal.extend_to(&big).with(vec![&d - &s])?;
    Ok((big, aug))
}

/// Zero-dimensional augmented ideal, its RUR and the certified gap radius.
#[derive(Clone, Debug)]
pub struct GapData {
    pub ideal: Ideal,
    pub rur: Rur,
    /// Quotient algebra dimension and Gröbner basis size.
    pub algebra_dimension: usize,
    pub basis_size: usize,
    check: GapCheck,
}

impl GapData {
    fn new(ideal: Ideal, rur: Rur, algebra_dimension: usize, basis_size: usize) -> Result<Self> {
        // distance coordinate s = u/v, compared through u·v against ρ²·v²
        let n = ideal.ring().arity() - 1;
        let uv = &rur.u[n] * &rur.v;
        let w = &rur.v * &rur.v;
        let check = GapCheck::new(&uv, &rur.v0, &w)?;
        Ok(GapData { ideal, rur, algebra_dimension, basis_size, check })
    }

    /// No encoded squared distance lies in `(0, ρ²]`.
    pub fn certifies(&self, rho: &Rational) -> Result<bool> {
        Ok(self.check.holds(rho))
    }
}

fn gap_data(base: &Ideal, point: &[Rational], cfg: &Config, what: &str) -> Result<GapData> {
    let (big, aug) = with_distance(base, point)?;
    let gb = groebner_basis(base, MonomialOrder::Grevlex)?;
    match ideal_dimension(&gb) {
        Dimension::Dim(0) | Dimension::Empty => {}
        Dimension::Dim(d) => return Err(Error::NotZeroDimensional(format!("{what} has dimension {d}"))),
    }
    let mut alg = QuotientAlgebra::new(&gb)?;
    let d = squared_distance(base.ring(), point);
    let rur = rur_with_functions(&mut alg, cfg.separating_budget, &[d], &big)?;
    GapData::new(aug, rur, alg.dimension(), gb.basis().len())
}

/// Largest `2^-k` certified by every entry, `k ≤ bound`.
fn halving_radius(data: &[&GapData], bound: usize) -> Result<Rational> {
    let mut rho = Rational::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..=bound {
        let mut ok = true;
        for d in data {
            if !d.certifies(&rho)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(rho);
        }
        rho *= &half;
    }
    Err(Error::HalvingExhausted(bound))
}

/// Some radius strictly above `r` certified by every entry (r itself must be).
fn radius_above(data: &[&GapData], r: &Rational, bound: usize) -> Result<Option<Rational>> {
    for d in data {
        if !d.certifies(r)? {
            return Ok(None);
        }
    }
    let mut step = r / Rational::from_integer(BigInt::from(2));
    for _ in 0..bound {
        let cand = r + &step;
        let mut ok = true;
        for d in data {
            if !d.certifies(&cand)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(cand));
        }
        step /= Rational::from_integer(BigInt::from(2));
    }
    Err(Error::HalvingExhausted(bound))
}

#[derive(Clone, Debug)]
pub struct Step2 {
    pub r1: Rational,
    pub sigma: GapData,
    pub ell: GapData,
}

fn step2_data(sigma: &Ideal, ell: &Ideal, point: &[Rational], cfg: &Config) -> Result<(GapData, GapData)> {
    Ok((gap_data(sigma, point, cfg, "the KKT ideal")?, gap_data(ell, point, cfg, "the distance-critical ideal")?))
}

/// Step 2: `R1` with no point of `V(I_Σ) ∪ V(I_L)` at squared distance in `(0, R1²]`.
pub fn step2_radius_r1(sigma: &Ideal, ell: &Ideal, point: &[Rational], cfg: &Config) -> Result<Step2> {
    let (s, l) = step2_data(sigma, ell, point, cfg)?;
    let r1 = halving_radius(&[&s, &l], cfg.halving_bound)?;
    Ok(Step2 { r1, sigma: s, ell: l })
}

#[derive(Clone, Debug)]
pub struct Step3 {
    pub r2: Rational,
    pub delta: Ideal,
    pub data: GapData,
}

/// Generators of `I` plus the Jacobian determinants of `(φ_{i1}, …, φ_{i(n−1)}, ‖x − x*‖²)`.
pub fn delta_ideal(ideal: &Ideal, point: &[Rational]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.arity();
    let gens = ideal.generators();
    let d = squared_distance(ring, point);
    let mut extra = Vec::new();
    if n >= 1 {
        for sub in subsets(gens.len(), n - 1) {
            let mut polys: Vec<MultiPoly> = sub.iter().map(|&i| gens[i].clone()).collect();
            polys.push(d.clone());
            extra.push(determinant(&jacobian(&polys))?);
        }
    }
    ideal.with(extra)
}

fn step3_data(ideal: &Ideal, point: &[Rational], cfg: &Config) -> Result<(Ideal, GapData)> {
    let dim = dimension_of(ideal)?;
    if dim != Dimension::Dim(1) {
        return Err(Error::NotOneDimensional(format!("selected ideal has dimension {dim}")));
    }
    let delta = delta_ideal(ideal, point)?;
    let data = gap_data(&delta, point, cfg, "the Jacobian ideal").map_err(|e| match e {
        Error::NotZeroDimensional(msg) => Error::RadiusDegenerate(format!(
            "{msg}; the Jacobian conditions vanish on a curve of the selected ideal \
             (try another coordinate change or supply radical generators)"
        )),
        other => other,
    })?;
    Ok((delta, data))
}

/// Step 3: `R2` with no critical point of the distance on `V(I)` at squared distance in `(0, R2²]`.
pub fn step3_radius_r2(ideal: &Ideal, point: &[Rational], cfg: &Config) -> Result<Step3> {
    let (delta, data) = step3_data(ideal, point, cfg)?;
    let r2 = halving_radius(&[&data], cfg.halving_bound)?;
    Ok(Step3 { r2, delta, data })
}

#[derive(Clone, Debug)]
pub struct Step4 {
    pub ideal: Ideal,
    pub rur: Rur,
    pub n1: usize,
    pub n2: usize,
    pub real_points: usize,
    pub f_minus: Option<IsolatingInterval>,
    pub f_plus: Option<IsolatingInterval>,
    pub classification: Classification,
    pub algebra_dimension: usize,
}

/// Step 4: count sphere points of `V(I)` above and below `f(x*)` and bracket the extreme values.
pub fn step4_classify(
    ideal: &Ideal,
    point: &[Rational],
    r: &Rational,
    f: &MultiPoly,
    fstar: &Rational,
    cfg: &Config,
) -> Result<Step4> {
    let ring = ideal.ring();
    let big = ring.extended(&[ring.fresh_name("y")]);
    let n = ring.arity();
    let d = squared_distance(ring, point);
    let sphere = &d - &MultiPoly::constant(ring, r * r);
    let base = ideal.with(vec![sphere])?;
    let gb = groebner_basis(&base, MonomialOrder::Grevlex)?;
    match ideal_dimension(&gb) {
        Dimension::Dim(0) | Dimension::Empty => {}
        Dimension::Dim(k) => {
            return Err(Error::NotZeroDimensional(format!(
                "sphere section has dimension {k}; the radius is not below the faithful radius"
            )))
        }
    }
    let y = MultiPoly::var(&big, n);
    let aug = base.extend_to(&big).with(vec![&f.extend_to(&big) - &y])?;
    let mut alg = QuotientAlgebra::new(&gb)?;
    let rur = rur_with_functions(&mut alg, cfg.separating_budget, std::slice::from_ref(f), &big)?;
    let uv = &rur.u[n] * &rur.v;
    let w = &rur.v * &rur.v;
    let fw = w.scale(fstar);
    let n1 = num(&(&uv - &fw), &rur.v0)?;
    let n2 = num(&(&fw - &uv), &rur.v0)?;
    let roots = if rur.num_points() == 0 { Vec::new() } else { isolate_real_roots(&rur.v0)? };
    let real_points = roots.len();
    if real_points == 0 {
        return Err(Error::EmptySphereSection);
    }
    if n1 + n2 < real_points {
        return Err(Error::AssumptionViolation(format!(
            "{} sphere points have objective value equal to f(x*)",
            real_points - n1 - n2
        )));
    }
    let classification = Classification::from_counts(n1, n2)
        .ok_or_else(|| Error::AssumptionViolation("no sphere point above or below f(x*)".into()))?;
    let values = alg.charpoly(f)?.squarefree_part()?;
    let (f_minus, f_plus) = extreme_values(&rur, n, &roots, &values, cfg.refine_bits)?;
    Ok(Step4 {
        ideal: aug,
        rur,
        n1,
        n2,
        real_points,
        f_minus: Some(f_minus),
        f_plus: Some(f_plus),
        classification,
        algebra_dimension: alg.dimension(),
    })
}

/// Image of `[lo, hi]` under `p`, by interval Horner evaluation.
pub fn eval_interval(p: &UniPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().expect("four").clone();
        let mx = prods.iter().max().expect("four").clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

fn overlaps(a: &Rational, b: &Rational, iv: &IsolatingInterval) -> bool {
    if iv.is_degenerate() {
        a <= &iv.lo && &iv.lo <= b
    } else {
        a < &iv.hi && b > &iv.lo
    }
}

/// Isolating intervals (roots of `values`) for the least and greatest
/// coordinate `var` over the real roots of the RUR.
fn extreme_values(
    rur: &Rur,
    var: usize,
    roots: &[IsolatingInterval],
    values: &UniPoly,
    refine_bits: u32,
) -> Result<(IsolatingInterval, IsolatingInterval)> {
    let mut targets = isolate_real_roots(values)?;
    let value_refiner = Refiner::new(values)?;
    let root_refiner = Refiner::new(&rur.v0)?;
    let mut matched = Vec::with_capacity(roots.len());
    for root in roots {
        let mut iv = root.clone();
        let mut found = None;
        for _ in 0..4096 {
            let (vlo, vhi) = eval_interval(&rur.v, &iv.lo, &iv.hi);
            let (ulo, uhi) = eval_interval(&rur.u[var], &iv.lo, &iv.hi);
            if vlo.is_positive() || vhi.is_negative() {
                let qs = [&ulo / &vlo, &ulo / &vhi, &uhi / &vlo, &uhi / &vhi];
                let a = qs.iter().min().expect("four").clone();
                let b = qs.iter().max().expect("four").clone();
                let hits: Vec<usize> = (0..targets.len()).filter(|&j| overlaps(&a, &b, &targets[j])).collect();
                if hits.len() == 1 {
                    found = Some(hits[0]);
                    break;
                }
                for j in hits {
                    let w = targets[j].width() / Rational::from_integer(BigInt::from(2));
                    if !targets[j].is_degenerate() {
                        targets[j] = value_refiner.refine(&targets[j], &w);
                    }
                }
            }
            if iv.is_degenerate() {
                // an exact root maps to an exact value; only the targets need shrinking
                continue;
            }
            let w = iv.width() / Rational::from_integer(BigInt::from(2));
            iv = root_refiner.refine(&iv, &w);
        }
        matched.push(found.ok_or_else(|| Error::Internal("objective value matching did not converge".into()))?);
    }
    let lo = *matched.iter().min().expect("nonempty");
    let hi = *matched.iter().max().expect("nonempty");
    let width = Rational::new(BigInt::one(), BigInt::one() << refine_bits);
    Ok((value_refiner.refine(&targets[lo], &width), value_refiner.refine(&targets[hi], &width)))
}

/// Radii and counts backing a label.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub r: Rational,
    pub r1: Rational,
    pub r2: Rational,
    pub n1: usize,
    pub n2: usize,
    pub f_star: Rational,
    pub f_minus: Option<IsolatingInterval>,
    pub f_plus: Option<IsolatingInterval>,
    pub coordinate_change: CoordinateChange,
    pub seed: u64,
    pub retries: usize,
    pub source: IdealSource,
    pub warnings: Vec<String>,
}

/// Wall-clock time and size statistics of one run.
#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub timings: Vec<(String, f64)>,
    pub notes: Vec<String>,
}

/// Everything computed by one run, for verification and tracing.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub classification: Classification,
    pub certificate: Certificate,
    pub selection: Selection,
    pub step2: Step2,
    pub step3: Step3,
    pub step4: Step4,
    pub stats: RunStats,
}

/// Validate the problem and lift it to an equality problem at a KKT point.
pub fn prepare(p: &Problem) -> Result<EqualityProblem> {
    p.check_feasible()?;
    let e = slackify(p)?;
    if e.equalities.len() >= e.arity() {
        return Err(Error::TooManyConstraints { equalities: e.equalities.len(), variables: e.arity() });
    }
    if !licq_check(&e) {
        return Err(Error::LicqViolated);
    }
    let triple = build_ideals(&e)?;
    if triple.sigma.generators().iter().any(|g| !g.evaluate(&e.point).is_zero()) {
        return Err(Error::PointNotKkt);
    }
    Ok(e)
}

pub fn classify(p: &Problem, cfg: &Config) -> Result<(Classification, Certificate)> {
    let o = classify_detailed(p, cfg)?;
    Ok((o.classification, o.certificate))
}

pub fn classify_detailed(p: &Problem, cfg: &Config) -> Result<Outcome> {
    let mut stats = RunStats::default();
    let mut clock = Instant::now();
    let mut lap = |stats: &mut RunStats, name: &str| {
        stats.timings.push((name.to_string(), clock.elapsed().as_secs_f64()));
        clock = Instant::now();
    };

    let e = prepare(p)?;
    let selection = step1_select_ideal(&e, cfg)?;
    lap(&mut stats, "step1");
    let point = selection.problem.point.clone();
    let (sigma, ell) = step2_data(&selection.ideals.sigma, &selection.ideals.ell, &point, cfg)?;
    lap(&mut stats, "step2");
    let (delta, delta_data) = step3_data(&selection.ideal, &point, cfg)?;
    lap(&mut stats, "step3");

    let (r, r1, r2) = match &cfg.radius_override {
        None => {
            let r1 = halving_radius(&[&sigma, &ell], cfg.halving_bound)?;
            let r2 = halving_radius(&[&delta_data], cfg.halving_bound)?;
            let r = r1.clone().min(r2.clone()) / Rational::from_integer(BigInt::from(2));
            (r, r1, r2)
        }
        Some(r) => {
            if !r.is_positive() {
                return Err(Error::InvalidInput(format!("radius must be positive, got {r}")));
            }
            let r1 = radius_above(&[&sigma, &ell], r, cfg.halving_bound)?.ok_or_else(|| {
                Error::RadiusNotCertified(format!("KKT or distance-critical points at distance ≤ {r}"))
            })?;
            let r2 = radius_above(&[&delta_data], r, cfg.halving_bound)?.ok_or_else(|| {
                Error::RadiusNotCertified(format!("critical points of the distance on the tangency curve at distance ≤ {r}"))
            })?;
            (r.clone(), r1, r2)
        }
    };
    lap(&mut stats, "radius");

    let f = &selection.problem.objective;
    let fstar = selection.problem.objective_value();
    let step4 = step4_classify(&selection.ideal, &point, &r, f, &fstar, cfg)?;
    lap(&mut stats, "step4");

    stats.notes.push(format!(
        "step1: {:?} ideal with {} generators after {} coordinate changes",
        selection.source,
        selection.ideal.generators().len(),
        selection.retries
    ));
    for (name, g) in [("sigma", &sigma), ("ell", &ell), ("delta", &delta_data)] {
        stats.notes.push(format!(
            "{name}: groebner basis {} elements, quotient dimension {}, eliminant degree {}",
            g.basis_size,
            g.algebra_dimension,
            g.rur.num_points()
        ));
    }
    stats.notes.push(format!(
        "step4: quotient dimension {}, eliminant degree {}, {} real sphere points",
        step4.algebra_dimension,
        step4.rur.num_points(),
        step4.real_points
    ));

    let mut warnings = vec!["radicality of the selected ideal is assumed, not verified".to_string()];
    if selection.source == IdealSource::Saturation {
        warnings.push("tangency ideal was replaced by its saturation by the KKT ideal".into());
    }
    if selection.retries > 0 {
        warnings.push(format!("generic coordinate change applied after {} attempt(s)", selection.retries));
    }
    let certificate = Certificate {
        r,
        r1,
        r2,
        n1: step4.n1,
        n2: step4.n2,
        f_star: fstar,
        f_minus: step4.f_minus.clone(),
        f_plus: step4.f_plus.clone(),
        coordinate_change: selection.change.clone(),
        seed: cfg.rng_seed,
        retries: selection.retries,
        source: selection.source,
        warnings,
    };
    Ok(Outcome {
        classification: step4.classification,
        certificate,
        selection,
        step2: Step2 { r1: Rational::zero(), sigma, ell },
        step3: Step3 { r2: Rational::zero(), delta, data: delta_data },
        step4,
        stats,
    }
    .with_radii())
}

impl Outcome {
    fn with_radii(mut self) -> Self {
        self.step2.r1 = self.certificate.r1.clone();
        self.step3.r2 = self.certificate.r2.clone();
        self
    }

    /// Re-check every certificate from the stored ideals and representations.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("verification failed: {what}")));
        let c = &self.certificate;
        for (name, d) in [("sigma", &self.step2.sigma), ("ell", &self.step2.ell), ("delta", &self.step3.data)] {
            if !d.rur.residue_check(&d.ideal)? {
                return fail(&format!("{name} representation residue"));
            }
        }
        if !self.step4.rur.residue_check(&self.step4.ideal)? {
            return fail("sphere section representation residue");
        }
        if !(c.r.is_positive() && c.r < c.r1 && c.r < c.r2) {
            return fail("radius ordering");
        }
        if !self.step2.sigma.certifies(&c.r1)? || !self.step2.ell.certifies(&c.r1)? {
            return fail("R1 gap");
        }
        if !self.step3.data.certifies(&c.r2)? {
            return fail("R2 gap");
        }
        let p = &self.selection.problem;
        let again = step4_classify(
            &self.selection.ideal,
            &p.point,
            &c.r,
            &p.objective,
            &c.f_star,
            &Config { refine_bits: 8, ..Config::default() },
        )?;
        if (again.n1, again.n2) != (c.n1, c.n2) || again.classification != self.classification {
            return fail("sphere counts");
        }
        if Classification::from_counts(c.n1, c.n2) != Some(self.classification) {
            return fail("decision table");
        }
        Ok(())
    }
}
