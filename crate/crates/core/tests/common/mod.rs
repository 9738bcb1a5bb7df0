#![allow(dead_code)]

use std::path::PathBuf;

use kkt_type::poly::{parse_poly, parse_rational, Ring};
use kkt_type::problem::ProblemFile;
use kkt_type::tangency::Problem;
use kkt_type::univariate::{count_real_roots, isolate_real_roots, refine_interval, Bound, UniPoly};
use kkt_type::Rational;
use num_traits::{Signed, Zero};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn qs(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

pub fn corpus_file(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn load(name: &str) -> Problem {
    let text = std::fs::read_to_string(corpus_file(name)).unwrap();
    ProblemFile::parse_text(&text).unwrap().to_problem().unwrap()
}

/// The three worked problems, in order.
pub fn corpus() -> Vec<(&'static str, Problem)> {
    ["ex1.txt", "ex2.txt", "ex3.txt"].into_iter().map(|n| (n, load(n))).collect()
}

/// Unconstrained problem in `x1, x2` at the origin.
pub fn unconstrained(f: &str) -> Problem {
    let ring = Ring::new(["x1", "x2"]);
    let f = parse_poly(f, &ring).unwrap();
    Problem::new(&ring, f, vec![], vec![], vec![Rational::zero(), Rational::zero()]).unwrap()
}

fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Signs of `u` at the real roots of `v`, in ascending root order, found by
/// isolating the roots and shrinking each interval until `u` has constant
/// sign on it. Independent of Tarski queries.
pub fn signs_at_roots(u: &UniPoly, v: &UniPoly) -> Vec<i32> {
    let vsf = v.squarefree_part().unwrap();
    let common = u.gcd(&vsf);
    let mut out = Vec::new();
    for iv in isolate_real_roots(&vsf).unwrap() {
        if u.is_zero() {
            out.push(0);
            continue;
        }
        if iv.is_degenerate() {
            out.push(sign(&u.eval(&iv.lo)));
            continue;
        }
        let lo = Bound::Finite(iv.lo.clone());
        let hi = Bound::Finite(iv.hi.clone());
        if common.degree().unwrap_or(0) > 0 && count_real_roots(&common, &lo, &hi).unwrap() > 0 {
            out.push(0);
            continue;
        }
        let mut cur = iv.clone();
        loop {
            if cur.is_degenerate() {
                out.push(sign(&u.eval(&cur.lo)));
                break;
            }
            let ul = u.eval(&cur.lo);
            let inside = count_real_roots(u, &Bound::Finite(cur.lo.clone()), &Bound::Finite(cur.hi.clone())).unwrap();
            if !ul.is_zero() && inside == 0 {
                out.push(sign(&ul));
                break;
            }
            let w = cur.width() / q(2, 1);
            cur = refine_interval(&vsf, &cur, &w).unwrap();
        }
    }
    out
}
