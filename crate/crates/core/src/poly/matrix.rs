use super::multipoly::MultiPoly;
use crate::error::{Error, Result};

/// Row-major matrix of polynomials.
pub type PolyMatrix = Vec<Vec<MultiPoly>>;

const COFACTOR_LIMIT: usize = 4;

/// Matrix whose columns are the given polynomial vectors.
pub fn from_columns(columns: &[Vec<MultiPoly>]) -> PolyMatrix {
    let rows = columns.first().map(Vec::len).unwrap_or(0);
    (0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Jacobian matrix: row `i` is the gradient of `polys[i]`.
pub fn jacobian(polys: &[MultiPoly]) -> PolyMatrix {
    polys.iter().map(MultiPoly::gradient).collect()
}

/// Determinant of a square polynomial matrix.
///
/// Cofactor expansion up to size 4, fraction-free Bareiss elimination above.
pub fn determinant(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let k = m.len();
    if k == 0 {
        return Err(Error::InvalidArgument("determinant of an empty matrix".into()));
    }
    if m.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
    }
    if k <= COFACTOR_LIMIT {
        Ok(cofactor(m))
    } else {
        bareiss(m.to_vec())
    }
}

fn cofactor(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    if k == 2 {
        return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    }
    let ring = m[0][0].ring().clone();
    let mut acc = MultiPoly::zero(&ring);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = &m[0][j] * &cofactor(&sub);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

pub(crate) fn bareiss(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let k = m.len();
    let ring = m[0][0].ring().clone();
    let mut prev = MultiPoly::one(&ring);
    let mut negate = false;
    for i in 0..k.saturating_sub(1) {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(&ring)),
            }
        }
        for j in i + 1..k {
            for l in i + 1..k {
                let num = &(&m[j][l] * &m[i][i]) - &(&m[j][i] * &m[i][l]);
                m[j][l] = num.div_exact(&prev)?;
            }
        }
        prev = m[i][i].clone();
    }
    let d = m[k - 1][k - 1].clone();
    Ok(if negate { -d } else { d })
}

/// k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `size × size` minors of `m`, row subsets outermost, both in lexicographic order.
pub fn poly_matrix_minors(m: &[Vec<MultiPoly>], size: usize) -> Result<Vec<MultiPoly>> {
    let rows = m.len();
    let cols = m.first().map(Vec::len).unwrap_or(0);
    if size == 0 || size > rows.min(cols) {
        return Err(Error::InvalidArgument(format!(
            "minor size {size} out of range for a {rows}x{cols} matrix"
        )));
    }
    let row_sets = subsets(rows, size);
    let col_sets = subsets(cols, size);
    let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<MultiPoly>> =
                rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            out.push(determinant(&sub)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring};
    use crate::Rational;

    fn ring() -> Ring {
        Ring::new(["x1", "x2", "x3"])
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn example_one_minors() {
        let f = p("2*x2^4 + x3^4 - 4*x1^2");
        let g = p("-1*x2*x3 - x3^2 + 2*x1");
        let m = from_columns(&[f.gradient(), g.gradient()]);
        let minors = poly_matrix_minors(&m, 2).unwrap();
        // rows {1,2}, {1,3}, {2,3}; hand cofactor expansion of [∇f ∇g]
        assert_eq!(minors[0], p("8*x1*x3 - 16*x2^3"));
        assert_eq!(minors[1], p("8*x1*x2 + 16*x1*x3 - 8*x3^3"));
        assert_eq!(minors[2], p("-8*x2^4 - 16*x2^3*x3 + 4*x3^4"));
    }

    #[test]
    fn zero_column_minor() {
        let z = MultiPoly::zero(&ring());
        let m = from_columns(&[
            vec![p("x1"), p("x2"), p("1")],
            vec![z.clone(), z.clone(), z.clone()],
            vec![p("x3"), p("2"), p("x1*x2")],
        ]);
        assert!(poly_matrix_minors(&m, 3).unwrap()[0].is_zero());
    }

    #[test]
    fn identity_minors() {
        let r = ring();
        let id: Vec<Vec<MultiPoly>> = (0..3)
            .map(|i| (0..3).map(|j| MultiPoly::constant(&r, Rational::from_integer(((i == j) as i64).into()))).collect())
            .collect();
        let minors = poly_matrix_minors(&id, 2).unwrap();
        assert_eq!(minors.len(), 9);
        for (a, rs) in subsets(3, 2).iter().enumerate() {
            for (b, cs) in subsets(3, 2).iter().enumerate() {
                let want = if rs == cs { 1 } else { 0 };
                assert_eq!(minors[a * 3 + b], MultiPoly::constant(&r, Rational::from_integer(want.into())));
            }
        }
    }

    #[test]
    fn size_out_of_range() {
        let m = from_columns(&[vec![p("x1"), p("x2")]]);
        assert!(poly_matrix_minors(&m, 2).is_err());
        assert!(poly_matrix_minors(&m, 0).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let entries = [
            "x1", "x2+1", "3", "x3^2", "1", "x1*x2", "x2", "0", "2*x3", "x1-x3", "5", "x2^2", "x1", "1", "x3", "7",
        ];
        let m: Vec<Vec<MultiPoly>> = (0..4).map(|i| (0..4).map(|j| p(entries[4 * i + j])).collect()).collect();
        assert_eq!(bareiss(m.clone()).unwrap(), cofactor(&m));
    }
}
