//! Exact integer linear algebra: Smith normal form, determinants and kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Product of the invariant factors.
    pub fn product(&self) -> BigInt {
        self.diagonal.iter().product()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Smith normal form by repeated row and column reduction.
pub fn smith_form(matrix: &[Vec<BigInt>]) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let r = a.len();
    let c = if r == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_entry(&a, t..r, t..c) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..c {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for i in t..r {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    Some(i) => {
                        for j in t..c {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
                continue;
            }
            // Bring the smallest entry of row t / column t to the pivot.
            let mut best = (t, t);
            for i in t..r {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    SmithForm { diagonal: diag, rows: r, cols: c }
}

fn min_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub type Q = Ratio<i64>;

/// Basis of the rational kernel `{x : M x = 0}`.
pub fn rational_kernel(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for j in 0..cols {
            a[row][j] *= inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in 0..cols {
                    let v = a[row][j] * f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f];
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * l).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    let sign = if ints.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) { -1 } else { 1 };
    ints.iter().map(|x| sign * x / g.max(1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_form(&to_big(rows)).diagonal.iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(snf(&[vec![3]]), vec![3]);
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(snf(&[vec![-9], vec![-8]]), vec![1]);
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(snf(&[vec![2, -1], vec![-1, 2]]), vec![1, 3]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
    }

    #[test]
    fn kernels() {
        let k = rational_kernel(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive(&k[0]), vec![1, 1, 1]);
    }
}
