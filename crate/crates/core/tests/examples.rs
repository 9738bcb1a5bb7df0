//! Worked input/output examples for every public operation.

mod common;

use kkt_type::classify::{
    classify, delta_ideal, step1_select_ideal, step2_radius_r1, step3_radius_r2, step4_classify, Classification,
    Config, IdealSource,
};
use kkt_type::error::Error;
use kkt_type::groebner::{
    eliminate, groebner_basis, ideal_dimension, normal_form, quotient_basis, radical_membership, saturation,
    Dimension, Ideal,
};
use kkt_type::linalg::RatMatrix;
use kkt_type::poly::{evaluate, gradient, parse_poly, poly_matrix_minors, MonomialOrder, MultiPoly, Monomial, Ring};
use kkt_type::rur::{count_distinct_points, find_separating_form, multiplication_matrix, rur_from_ideal, QuotientAlgebra};
use kkt_type::tangency::{
    apply_coordinate_change, build_ideals, licq_check, random_coordinate_change, slackify, CoordinateChange,
    EqualityProblem, Problem,
};
use kkt_type::univariate::{
    count_real_roots, isolate_real_roots, num, positive_gap_radius, refine_interval, squarefree_part,
    sturm_sequence, tarski_query, Bound, IsolatingInterval, UniPoly,
};
use kkt_type::Rational;
use num_traits::{One, Zero};

use common::{load, q, qs, unconstrained};

fn ring3() -> Ring {
    Ring::new(["x1", "x2", "x3"])
}

fn p3(s: &str) -> MultiPoly {
    parse_poly(s, &ring3()).unwrap()
}

fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_i64(c)
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_poly(g, ring).unwrap()).collect()).unwrap()
}

fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    let ga = groebner_basis(a, MonomialOrder::Grevlex).unwrap();
    let gb = groebner_basis(b, MonomialOrder::Grevlex).unwrap();
    ga.basis() == gb.basis()
}

fn origin(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

// ---- polynomials ----

#[test]
fn parse_objective_of_first_example() {
    let f = p3("2*x2^4 + x3^4 - 4*x1^2");
    assert_eq!(f.num_terms(), 3);
    assert_eq!(f.coefficient(&Monomial::from_exponents(vec![2, 0, 0])), q(-4, 1));
    assert_eq!(f.coefficient(&Monomial::from_exponents(vec![0, 4, 0])), q(2, 1));
    assert_eq!(p3(&f.to_string()), f);
}

#[test]
fn parse_zero_and_identity() {
    assert!(p3("0").is_zero());
    assert!(p3("(x1+1)^2 - x1^2 - 2*x1 - 1").is_zero());
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_poly("2x1", &ring3()), Err(Error::Parse { .. })));
    assert!(matches!(parse_poly("x1 + y", &ring3()), Err(Error::UnknownVariable { .. })));
}

#[test]
fn gradients() {
    assert_eq!(gradient(&p3("-4*x1^2")), vec![p3("-8*x1"), p3("0"), p3("0")]);
    assert_eq!(gradient(&p3("2*x2^4 + x3^4 - 4*x1^2")), vec![p3("-8*x1"), p3("8*x2^3"), p3("4*x3^3")]);
    assert!(gradient(&p3("7/3")).iter().all(MultiPoly::is_zero));
}

#[test]
fn evaluation() {
    assert_eq!(evaluate(&p3("x1^2 + x2^2 + x3^3"), &[q(0, 1), q(0, 1), q(-1, 2)]), q(-1, 8));
    assert_eq!(evaluate(&p3("x1*x2 + 5 - x3^7"), &origin(3)), q(5, 1));
    assert_eq!(evaluate(&p3("x1*x2"), &[q(3, 1), q(1, 3), q(0, 1)]), q(1, 1));
}

#[test]
fn minors_of_first_example() {
    let f = p3("2*x2^4 + x3^4 - 4*x1^2");
    let g = p3("-1*x2*x3 - x3^2 + 2*x1");
    let m: Vec<Vec<MultiPoly>> = (0..3).map(|i| vec![gradient(&f)[i].clone(), gradient(&g)[i].clone()]).collect();
    let minors = poly_matrix_minors(&m, 2).unwrap();
    assert_eq!(minors.len(), 3);
    let want = ["8*x1*x3 - 16*x2^3", "8*x1*x2 + 16*x1*x3 - 8*x3^3", "-8*x2^4 - 16*x2^3*x3 + 4*x3^4"];
    // rows (1,2), (1,3), (2,3); the sign convention may differ per minor
    for (got, want) in minors.iter().zip(want) {
        let w = p3(want);
        assert!(*got == w || *got == -&w, "{got} vs {want}");
    }
}

#[test]
fn minors_trivial_cases() {
    let r = ring3();
    let c = |v: i64| MultiPoly::constant(&r, q(v, 1));
    let zero_col = vec![vec![p3("x1"), c(0), p3("x2")], vec![p3("x3"), c(0), c(1)], vec![c(2), c(0), p3("x1*x2")]];
    assert_eq!(poly_matrix_minors(&zero_col, 3).unwrap(), vec![c(0)]);
    let id = vec![vec![c(1), c(0), c(0)], vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)]];
    let minors = poly_matrix_minors(&id, 2).unwrap();
    assert_eq!(minors.len(), 9);
    let ones = minors.iter().filter(|m| **m == c(1)).count();
    assert_eq!(ones, 3);
    assert!(minors.iter().all(|m| *m == c(1) || m.is_zero()));
    assert!(poly_matrix_minors(&id, 4).is_err());
}

// ---- univariate ----

#[test]
fn sturm_sequences() {
    assert_eq!(sturm_sequence(&up(&[-2, 0, 1])).unwrap(), vec![up(&[-2, 0, 1]), up(&[0, 2]), up(&[2])]);
    assert_eq!(sturm_sequence(&up(&[0, 1])).unwrap(), vec![up(&[0, 1]), up(&[1])]);
    assert_eq!(sturm_sequence(&up(&[5])).unwrap(), vec![up(&[5])]);
    assert!(sturm_sequence(&UniPoly::zero()).is_err());
}

#[test]
fn root_counts() {
    let f = |r: Rational| Bound::Finite(r);
    assert_eq!(count_real_roots(&up(&[-2, 0, 1]), &f(q(0, 1)), &f(q(2, 1))).unwrap(), 1);
    assert_eq!(count_real_roots(&up(&[0, -1, 0, 1]), &f(q(-2, 1)), &f(q(2, 1))).unwrap(), 3);
    assert_eq!(count_real_roots(&up(&[1, 0, 1]), &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
}

#[test]
fn tarski_queries() {
    assert_eq!(tarski_query(&up(&[0, 1]), &up(&[-1, 0, 1])).unwrap(), 0);
    assert_eq!(tarski_query(&up(&[2, 1]), &up(&[-1, 0, 1])).unwrap(), 2);
    assert_eq!(tarski_query(&UniPoly::one(), &up(&[0, -1, 0, 1])).unwrap(), 3);
    assert!(tarski_query(&UniPoly::one(), &UniPoly::zero()).is_err());
}

#[test]
fn num_counts() {
    assert_eq!(num(&up(&[0, 1]), &up(&[-1, 0, 1])).unwrap(), 1);
    assert_eq!(num(&up(&[-1]), &up(&[-6, 1, 1])).unwrap(), 0);
    assert_eq!(num(&up(&[1, 0, 1]), &up(&[0, -1, 0, 1])).unwrap(), 3);
}

#[test]
fn isolation() {
    let ivs = isolate_real_roots(&up(&[-2, 0, 1])).unwrap();
    assert_eq!(ivs.len(), 2);
    // −√2 ∈ (lo, hi) and √2 ∈ (lo, hi), checked by squaring
    let two = q(2, 1);
    let (a, b) = (&ivs[0], &ivs[1]);
    assert!(a.lo < q(0, 1) && &a.lo * &a.lo > two && (a.hi >= q(0, 1) || &a.hi * &a.hi < two));
    assert!(b.hi > q(0, 1) && &b.hi * &b.hi > two && (b.lo <= q(0, 1) || &b.lo * &b.lo < two));
    assert!(a.hi <= b.lo);
    let half = isolate_real_roots(&UniPoly::from_roots(&[q(1, 2)])).unwrap();
    assert_eq!(half, vec![IsolatingInterval::exact(q(1, 2), true)]);
}

#[test]
fn refinement() {
    let p = up(&[-2, 0, 1]);
    let iv = IsolatingInterval { lo: q(1, 1), hi: q(2, 1), multiplicity_free: true };
    let r = refine_interval(&p, &iv, &q(1, 100)).unwrap();
    assert!(r.width() <= q(1, 100) && &r.lo * &r.lo < q(2, 1) && &r.hi * &r.hi > q(2, 1));
    let exact = IsolatingInterval::exact(q(3, 1), true);
    assert_eq!(refine_interval(&up(&[-3, 1]), &exact, &q(1, 100)).unwrap(), exact);
    let tiny = Rational::new(1.into(), num_bigint::BigInt::one() << 64);
    let r = refine_interval(&p, &iv, &tiny).unwrap();
    assert!(r.width() <= tiny);
    assert!(r.lo < qs("14142135623730950489/10000000000000000000"));
    assert!(r.hi > qs("14142135623730950488/10000000000000000000"));
}

#[test]
fn squarefree_parts() {
    let sq = squarefree_part(&up(&[1, -2, 1])).unwrap();
    assert_eq!(sq.monic(), up(&[-1, 1]));
    assert_eq!(squarefree_part(&up(&[0, -1, 0, 1])).unwrap().monic(), up(&[0, -1, 0, 1]));
    let p = &(&up(&[-2, 0, 1]) * &up(&[-2, 0, 1])) * &up(&[3, 1]);
    assert_eq!(squarefree_part(&p).unwrap().monic(), (&up(&[-2, 0, 1]) * &up(&[3, 1])).monic());
}

#[test]
fn gap_radius() {
    // one encoded value 4 with unit weight
    let rho = positive_gap_radius(&up(&[0, 1]), &up(&[-4, 1]), &UniPoly::one(), 256).unwrap();
    assert!(rho > Rational::zero() && &rho * &rho < q(4, 1));
    let rho = positive_gap_radius(&up(&[0, 1]), &up(&[1, 0, 1]), &UniPoly::one(), 256).unwrap();
    assert_eq!(rho, q(1, 1));
}

// ---- Gröbner bases ----

#[test]
fn groebner_examples() {
    let r = Ring::new(["x", "y"]);
    let g = groebner_basis(&ideal(&r, &["x"]), MonomialOrder::Lex).unwrap();
    assert_eq!(g.basis(), &[parse_poly("x", &r).unwrap()]);
    let g = groebner_basis(&ideal(&r, &["x^2 + y^2 - 1", "x - y"]), MonomialOrder::Lex).unwrap();
    let target = parse_poly("2*y^2 - 1", &r).unwrap();
    assert!(g.basis().iter().any(|b| b.normalized_primitive() == target.normalized_primitive()));
    assert!(groebner_basis(&ideal(&r, &["1 - x", "x"]), MonomialOrder::Grevlex).unwrap().is_unit());
}

#[test]
fn normal_forms() {
    let r = Ring::new(["x", "y"]);
    let i = ideal(&r, &["x^2 + y^2 - 1", "x - y"]);
    let g = groebner_basis(&i, MonomialOrder::Lex).unwrap();
    for gen in i.generators() {
        assert!(normal_form(gen, &g).unwrap().is_zero());
    }
    assert_eq!(normal_form(&parse_poly("y^2", &r).unwrap(), &g).unwrap(), MultiPoly::constant(&r, q(1, 2)));
    let gx = groebner_basis(&ideal(&r, &["x"]), MonomialOrder::Grevlex).unwrap();
    assert!(normal_form(&parse_poly("x^2", &r).unwrap(), &gx).unwrap().is_zero());
    assert!(matches!(normal_form(&p3("x1"), &gx), Err(Error::RingMismatch)));
}

#[test]
fn dimensions() {
    let r = Ring::new(["x", "y"]);
    let dim = |gens: &[&str]| ideal_dimension(&groebner_basis(&ideal(&r, gens), MonomialOrder::Grevlex).unwrap());
    assert_eq!(dim(&["x - 1", "y - 2"]), Dimension::Dim(0));
    assert_eq!(dim(&["x"]), Dimension::Dim(1));
    assert_eq!(dim(&["1"]), Dimension::Empty);
    let p = load("ex1.txt");
    let e = slackify(&p).unwrap();
    let t = build_ideals(&e).unwrap();
    assert_eq!(ideal_dimension(&groebner_basis(&t.gamma, MonomialOrder::Grevlex).unwrap()), Dimension::Dim(1));
}

#[test]
fn elimination() {
    let r = Ring::new(["t", "x", "y"]);
    // the result stays in the original ring, free of the dropped variable
    let e = eliminate(&ideal(&r, &["x - t", "y - t^2"]), &[0]).unwrap();
    assert_eq!(e.ring().names(), ["t", "x", "y"]);
    assert!(same_ideal(&e, &ideal(&r, &["y - x^2"])));
    let r2 = Ring::new(["x", "y"]);
    let e = eliminate(&ideal(&r2, &["x"]), &[1]).unwrap();
    assert!(same_ideal(&e, &ideal(e.ring(), &["x"])));
    let e = eliminate(&ideal(&r2, &["1"]), &[0]).unwrap();
    assert!(groebner_basis(&e, MonomialOrder::Grevlex).unwrap().is_unit());
}

#[test]
fn saturations() {
    let r = Ring::new(["x", "y"]);
    let s = saturation(&ideal(&r, &["x*y"]), &ideal(&r, &["x"])).unwrap();
    assert!(same_ideal(&s, &ideal(&r, &["y"])));
    let s = saturation(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["x"])).unwrap();
    assert!(groebner_basis(&s, MonomialOrder::Grevlex).unwrap().is_unit());
    let i = ideal(&r, &["x^2 - y", "x*y - 1"]);
    assert!(same_ideal(&saturation(&i, &Ideal::unit(&r)).unwrap(), &i));
}

#[test]
fn radical_memberships() {
    let r = Ring::new(["x", "y"]);
    let x2 = ideal(&r, &["x^2"]);
    assert!(radical_membership(&parse_poly("x", &r).unwrap(), &x2).unwrap());
    assert!(!radical_membership(&parse_poly("y", &r).unwrap(), &x2).unwrap());
    let i = ideal(&r, &["(x+y)^3", "x - y"]);
    assert!(radical_membership(&parse_poly("x + y", &r).unwrap(), &i).unwrap());
}

#[test]
fn quotient_bases() {
    let r1 = Ring::new(["x"]);
    let g = groebner_basis(&ideal(&r1, &["x^2 - 2"]), MonomialOrder::Grevlex).unwrap();
    assert_eq!(quotient_basis(&g).unwrap(), vec![Monomial::one(1), Monomial::var(1, 0)]);
    let r = Ring::new(["x", "y"]);
    let g = groebner_basis(&ideal(&r, &["x^2 - 1", "y - x"]), MonomialOrder::Grevlex).unwrap();
    assert_eq!(quotient_basis(&g).unwrap().len(), 2);
    let g = groebner_basis(&ideal(&r, &["x", "y"]), MonomialOrder::Grevlex).unwrap();
    assert_eq!(quotient_basis(&g).unwrap(), vec![Monomial::one(2)]);
    let g = groebner_basis(&ideal(&r, &["x"]), MonomialOrder::Grevlex).unwrap();
    assert!(quotient_basis(&g).is_err());
}

// ---- rational univariate representations ----

#[test]
fn multiplication_matrices() {
    let r = Ring::new(["x"]);
    let g = groebner_basis(&ideal(&r, &["x^2 - 2"]), MonomialOrder::Grevlex).unwrap();
    let m = multiplication_matrix(&g, &parse_poly("x", &r).unwrap()).unwrap();
    // column j holds the coordinates of x·b_j on the basis (1, x)
    assert_eq!(m, RatMatrix::from_i64(&[vec![0, 2], vec![1, 0]]));
    let m = multiplication_matrix(&g, &parse_poly("3", &r).unwrap()).unwrap();
    assert_eq!(m, RatMatrix::identity(2).scale(&q(3, 1)));
    assert!(multiplication_matrix(&g, &parse_poly("x^3 - 2*x", &r).unwrap()).unwrap().is_zero());
}

#[test]
fn distinct_points() {
    let r1 = Ring::new(["x"]);
    let count = |r: &Ring, gens: &[&str]| {
        count_distinct_points(&groebner_basis(&ideal(r, gens), MonomialOrder::Grevlex).unwrap()).unwrap()
    };
    assert_eq!(count(&r1, &["x^2 - 2"]), 2);
    assert_eq!(count(&r1, &["x^2"]), 1);
    let r = Ring::new(["x", "y"]);
    assert_eq!(count(&r, &["x^2 - 1", "y - x"]), 2);
}

#[test]
fn separating_forms() {
    let form = |r: &Ring, gens: &[&str]| {
        let g = groebner_basis(&ideal(r, gens), MonomialOrder::Grevlex).unwrap();
        find_separating_form(&mut QuotientAlgebra::new(&g).unwrap(), 64).unwrap().0
    };
    assert_eq!(form(&Ring::new(["x"]), &["x^2 - 2"]), vec![q(1, 1)]);
    let r = Ring::new(["x", "y"]);
    // (1,0) and (0,1) take only two values on the four points
    assert_eq!(form(&r, &["x^2 - 1", "y^2 - 1"]), vec![q(1, 1), q(2, 1)]);
    assert_eq!(form(&r, &["x", "y"]), vec![q(1, 1), q(0, 1)]);
}

#[test]
fn rur_examples() {
    let r = Ring::new(["x"]);
    let rur = rur_from_ideal(&ideal(&r, &["x - 3"]), 64).unwrap();
    assert_eq!(rur.v0.monic(), up(&[-3, 1]));
    let t = q(3, 1);
    assert_eq!(rur.u[0].eval(&t) / rur.v.eval(&t), q(3, 1));

    let i = ideal(&r, &["x^2 - 2"]);
    let rur = rur_from_ideal(&i, 64).unwrap();
    assert_eq!(rur.v0.monic(), up(&[-2, 0, 1]));
    assert!(rur.residue_check(&i).unwrap());
    // x = u/v at t = ±√2 means u − t·v vanishes modulo v0
    let diff = &rur.u[0] - &(&UniPoly::x() * &rur.v);
    assert!(diff.rem(&rur.v0).unwrap().is_zero());
}

#[test]
fn rur_of_second_example_kkt_system() {
    let p = load("ex2.txt");
    let sel = step1_select_ideal(&slackify(&p).unwrap(), &Config::default()).unwrap();
    let s2 = step2_radius_r1(&sel.ideals.sigma, &sel.ideals.ell, &sel.problem.point, &Config::default()).unwrap();
    assert!(s2.sigma.rur.residue_check(&s2.sigma.ideal).unwrap());
    // squared distances of the other KKT points: none lies in (0, R1²]
    let bound = qs("7456077067994313975/2305843009213693952");
    assert!(s2.r1 > Rational::zero() && &s2.r1 * &s2.r1 <= bound);
    assert!(s2.sigma.certifies(&s2.r1).unwrap());
}

// ---- tangency ----

#[test]
fn slack_lifting() {
    let r = Ring::new(["x"]);
    let px = |s: &str| parse_poly(s, &r).unwrap();
    let plain = Problem::new(&r, px("x^2"), vec![], vec![], vec![q(0, 1)]).unwrap();
    let e = slackify(&plain).unwrap();
    assert_eq!(e.arity(), 1);
    assert!(e.slacks.is_empty());

    let active = Problem::new(&r, px("x"), vec![], vec![px("x")], vec![q(0, 1)]).unwrap();
    let e = slackify(&active).unwrap();
    assert_eq!(e.arity(), 2);
    assert_eq!(e.point, vec![q(0, 1), q(0, 1)]);

    let inactive = Problem::new(&r, px("x"), vec![], vec![px("x")], vec![q(9, 4)]).unwrap();
    let e = slackify(&inactive).unwrap();
    assert_eq!(e.slacks[0].value, q(3, 2));
    assert!(e.equalities[0].evaluate(&e.point).is_zero());

    let irrational = Problem::new(&r, px("x"), vec![], vec![px("x")], vec![q(2, 1)]).unwrap();
    assert!(matches!(slackify(&irrational), Err(Error::NonRationalSlack { .. })));
}

fn eq_problem(ring: &Ring, f: &str, gs: &[&str]) -> EqualityProblem {
    let p = Problem::new(
        ring,
        parse_poly(f, ring).unwrap(),
        gs.iter().map(|g| parse_poly(g, ring).unwrap()).collect(),
        vec![],
        origin(ring.arity()),
    )
    .unwrap();
    slackify(&p).unwrap()
}

#[test]
fn licq() {
    assert!(licq_check(&slackify(&load("ex1.txt")).unwrap()));
    let r = ring3();
    assert!(!licq_check(&eq_problem(&r, "x1", &["x1^2"])));
    assert!(!licq_check(&eq_problem(&r, "x1", &["x2 + x3", "x2 + x3"])));
}

#[test]
fn ideals_of_first_example() {
    let t = build_ideals(&slackify(&load("ex1.txt")).unwrap()).unwrap();
    let want = ideal(
        &ring3(),
        &[
            "-1*x2*x3 - x3^2 + 2*x1",
            "8*x1*x3 - 16*x2^3",
            "8*x1*x2 + 16*x1*x3 - 8*x3^3",
            "-8*x2^4 - 16*x2^3*x3 + 4*x3^4",
        ],
    );
    assert!(same_ideal(&t.sigma, &want));
    for g in t.gamma.generators() {
        assert!(g.evaluate(&origin(3)).is_zero());
    }
}

#[test]
fn ideals_unconstrained_and_full_rank() {
    let r = Ring::new(["x1", "x2"]);
    let t = build_ideals(&eq_problem(&r, "x1^2 + x2^2", &[])).unwrap();
    assert!(same_ideal(&t.sigma, &ideal(&r, &["x1", "x2"])));
    assert!(t.gamma.generators().iter().all(MultiPoly::is_zero) || t.gamma.generators().is_empty());
    let e = eq_problem(&ring3(), "x3", &["x1 - x2^2", "x2 - x3^2"]);
    let t = build_ideals(&e).unwrap();
    assert!(same_ideal(&t.gamma, &ideal(&ring3(), &["x1 - x2^2", "x2 - x3^2"])));
    let too_many = eq_problem(&Ring::new(["x"]), "x", &["x"]);
    assert!(build_ideals(&too_many).is_err());
}

#[test]
fn coordinate_changes() {
    let r = Ring::new(["x1", "x2"]);
    let e = eq_problem(&r, "x1^2 - x2^2", &[]);
    let id = CoordinateChange::identity(2);
    let same = apply_coordinate_change(&e, &id).unwrap();
    assert_eq!(same.objective, e.objective);
    let swap = CoordinateChange::new(RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]])).unwrap();
    let swapped = apply_coordinate_change(&e, &swap).unwrap();
    assert_eq!(swapped.objective, parse_poly("x2^2 - x1^2", &r).unwrap());
    let p = Problem::new(&r, swapped.objective.clone(), vec![], vec![], origin(2)).unwrap();
    assert_eq!(classify(&p, &Config::default()).unwrap().0, Classification::NotExtremum);
    assert!(CoordinateChange::new(RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]])).is_err());
}

#[test]
fn random_changes() {
    let a = random_coordinate_change(42, 3).unwrap();
    let b = random_coordinate_change(42, 3).unwrap();
    assert_eq!(a.matrix(), b.matrix());
    assert!(!a.matrix().determinant().unwrap().is_zero());
    assert_eq!(a.matrix().mul(a.inverse()), RatMatrix::identity(3));
    let one = random_coordinate_change(7, 1).unwrap();
    assert!(!one.matrix().get(0, 0).is_zero());
    for seed in 0..20 {
        let c = random_coordinate_change(seed, 2).unwrap();
        assert!(!c.matrix().determinant().unwrap().is_zero());
        for i in 0..2 {
            for j in 0..2 {
                let v = c.matrix().get(i, j);
                assert!(*v >= q(-3, 1) && *v <= q(3, 1));
            }
        }
    }
}

// ---- classification ----

#[test]
fn step1_on_first_example_keeps_gamma() {
    let sel = step1_select_ideal(&slackify(&load("ex1.txt")).unwrap(), &Config::default()).unwrap();
    assert_eq!(sel.source, IdealSource::Gamma);
    assert!(sel.change.is_identity());
    assert_eq!(sel.retries, 0);
}

#[test]
fn step1_on_unconstrained_needs_fallback() {
    let sel = step1_select_ideal(&slackify(&unconstrained("x1^2 + x2^2")).unwrap(), &Config::default()).unwrap();
    assert!(sel.retries > 0 || sel.source == IdealSource::Saturation);
}

#[test]
fn step2_on_first_example_is_one() {
    let sel = step1_select_ideal(&slackify(&load("ex1.txt")).unwrap(), &Config::default()).unwrap();
    let s2 = step2_radius_r1(&sel.ideals.sigma, &sel.ideals.ell, &sel.problem.point, &Config::default()).unwrap();
    assert_eq!(s2.r1, q(1, 1));
    // the KKT set is just the origin: large radii certify too
    assert!(s2.sigma.certifies(&q(1000, 1)).unwrap());
}

#[test]
fn step2_trivial_sigma() {
    let r = Ring::new(["x1", "x2"]);
    let sigma = ideal(&r, &["x1", "x2"]);
    let s2 = step2_radius_r1(&sigma, &sigma, &origin(2), &Config::default()).unwrap();
    assert_eq!(s2.r1, q(1, 1));
}

#[test]
fn step3_on_first_and_third_examples() {
    let cfg = Config::default();
    let sel = step1_select_ideal(&slackify(&load("ex1.txt")).unwrap(), &cfg).unwrap();
    let s3 = step3_radius_r2(&sel.ideal, &sel.problem.point, &cfg).unwrap();
    let cap = qs("30592520018291640355/1152921504606846976");
    assert!(s3.r2 > Rational::zero() && &s3.r2 * &s3.r2 <= cap);
    assert_eq!(s3.delta.generators().len(), delta_ideal(&sel.ideal, &sel.problem.point).unwrap().generators().len());

    let sel = step1_select_ideal(&slackify(&load("ex3.txt")).unwrap(), &cfg).unwrap();
    let s3 = step3_radius_r2(&sel.ideal, &sel.problem.point, &cfg).unwrap();
    for r in [q(1, 1), q(3, 2), q(19, 10)] {
        assert!(s3.data.certifies(&r).unwrap(), "radius {r}");
    }
}

#[test]
fn step4_on_second_example() {
    let cfg = Config::default();
    let sel = step1_select_ideal(&slackify(&load("ex2.txt")).unwrap(), &cfg).unwrap();
    let p = &sel.problem;
    let s4 = step4_classify(&sel.ideal, &p.point, &q(1, 2), &p.objective, &p.objective_value(), &cfg).unwrap();
    assert!(s4.n2 > 0);
    let fm = s4.f_minus.unwrap();
    assert!(fm.lo <= q(-1, 8) && q(-1, 8) <= fm.hi);
    let fp = s4.f_plus.unwrap();
    assert!(fp.lo <= q(1, 4) && q(1, 4) <= fp.hi);
    assert!(s4.rur.residue_check(&s4.ideal).unwrap());
    // the value −1/8 is attained at a sphere point: some root gives y = −1/8
    let y = s4.rur.ring.arity() - 1;
    let shifted = &s4.rur.u[y] + &s4.rur.v.scale(&q(1, 8));
    assert!(!shifted.gcd(&s4.rur.v0).degree().unwrap_or(0).is_zero());
}

#[test]
fn classify_corpus_labels() {
    let cfg = Config::default();
    assert_eq!(classify(&load("ex1.txt"), &cfg).unwrap().0, Classification::NotExtremum);
    assert_eq!(classify(&load("ex3.txt"), &cfg).unwrap().0, Classification::LocalMinimizer);
}

#[test]
fn classify_rejects_bad_points() {
    let cfg = Config::default();
    let r = Ring::new(["x1", "x2"]);
    let px = |s: &str| parse_poly(s, &r).unwrap();
    let infeasible = Problem::new(&r, px("x1"), vec![px("x1 - 1")], vec![], origin(2)).unwrap();
    assert!(matches!(classify(&infeasible, &cfg), Err(Error::PointNotFeasible(_))));
    let not_kkt = Problem::new(&r, px("x1 + x2"), vec![], vec![], origin(2)).unwrap();
    assert!(matches!(classify(&not_kkt, &cfg), Err(Error::PointNotKkt)));
    let bad_licq = Problem::new(&r, px("x1"), vec![px("x1^2 + x2^2")], vec![], origin(2)).unwrap();
    assert!(matches!(classify(&bad_licq, &cfg), Err(Error::LicqViolated)));
}

#[test]
fn classify_with_inequality() {
    // min x2 subject to x2 - x1^2 ≥ 0 at the origin: a local minimizer on the boundary
    let r = Ring::new(["x1", "x2"]);
    let px = |s: &str| parse_poly(s, &r).unwrap();
    let p = Problem::new(&r, px("x2"), vec![], vec![px("x2 - x1^2")], origin(2)).unwrap();
    assert_eq!(classify(&p, &Config::default()).unwrap().0, Classification::LocalMinimizer);
}

#[test]
fn radius_override_is_validated() {
    let cfg = Config { radius_override: Some(q(100, 1)), ..Config::default() };
    match classify(&load("ex3.txt"), &cfg) {
        Err(Error::RadiusNotCertified(_)) => {}
        other => panic!("expected RadiusNotCertified, got {other:?}"),
    }
}
