//! Exact linear algebra: fraction-free Bareiss determinants over the integers
//! and a sparse row-echelon rank engine over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

/// Determinant of a rational matrix: rows are scaled to integers first and
/// the scaling divided back out.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut im = Vec::with_capacity(n);
    for row in m {
        let mut lcm = BigInt::one();
        for c in row {
            lcm = lcm.lcm(c.denom());
        }
        scale *= &lcm;
        im.push(
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect::<Vec<_>>(),
        );
    }
    Rational::new(bareiss_det(im), scale)
}

/// A sparse vector over the rationals: entries sorted by strictly decreasing
/// column index, leading entry first.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incremental sparse Gaussian elimination used for rank computation. Rows
/// are reduced against the current echelon by leading column only; pivot
/// rows are kept monic.
#[derive(Debug, Default)]
pub struct SparseEchelon {
    pivots: std::collections::HashMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the echelon; if a nonzero remainder survives it
    /// becomes a new pivot row and the rank grows by one.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((lead, lc)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    if !lc.is_one() {
                        let inv = Rational::one() / lc;
                        for (_, c) in row.iter_mut() {
                            *c *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(pivot) => {
                    row = sub_scaled(&row[1..], &pivot[1..], &lc);
                }
            }
        }
    }
}

/// row - c * pivot, both tails sorted by decreasing index.
fn sub_scaled(row: &[(usize, Rational)], pivot: &[(usize, Rational)], c: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j == pivot.len() || (i < row.len() && row[i].0 > pivot[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || pivot[j].0 > row[i].0 {
            let v = -(c * &pivot[j].1);
            if !v.is_zero() {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v = &row[i].1 - c * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn det_small() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-2));
    }

    #[test]
    fn det_singular_with_pivoting() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(3)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(0));
    }

    #[test]
    fn rational_det() {
        let m = vec![
            vec![rat(1) / rat(2), rat(1)],
            vec![rat(1), rat(1) / rat(3)],
        ];
        // 1/6 - 1 = -5/6
        assert_eq!(det_rational(&m), rat(-5) / rat(6));
    }

    #[test]
    fn sparse_rank() {
        let mut ech = SparseEchelon::new();
        assert!(ech.insert(vec![(3, rat(2)), (1, rat(1))]));
        assert!(ech.insert(vec![(2, rat(1))]));
        // Linear combination of the first two.
        assert!(!ech.insert(vec![(3, rat(4)), (2, rat(5)), (1, rat(2))]));
        assert_eq!(ech.rank(), 2);
    }
}
