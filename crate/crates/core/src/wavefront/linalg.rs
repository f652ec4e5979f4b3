//! Dense exact linear algebra over ℚ, sized for cotangent dimensions ≤ 4.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalars::Rational;

pub type QVec = Vec<Rational>;

/// Row-major `rows × cols` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    /// Builds from rows; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<QVec>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> QVec {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn row_vecs(&self) -> Vec<QVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> QVec {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(&self.data[r * self.cols..(r + 1) * self.cols], v))
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * rhs.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Basis of `{v : self·v = 0}` from the reduced row echelon form, one
    /// vector per free column.
    pub fn null_space(&self) -> Vec<QVec> {
        let (rref, pivots) = rref(self.row_vecs(), self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::from_integer(1.into());
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.row_vecs(), self.cols).1.len()
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<QVec>, cols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |s, t| s + t)
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], q: &Rational) -> QVec {
    a.iter().map(|x| x * q).collect()
}

pub fn neg(a: &[Rational]) -> QVec {
    a.iter().map(|x| -x).collect()
}

/// The positive multiple of `v` with coprime integer entries. Orientation is
/// preserved. Zero maps to zero.
pub fn primitive(v: &[Rational]) -> QVec {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Primitive form with the first nonzero entry made positive; identifies
/// `v` with `-v`. Used only to deduplicate lines.
pub fn sign_canonical(v: &[Rational]) -> QVec {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&p),
        _ => p,
    }
}

/// Whether `vs` are linearly independent.
pub fn independent(vs: &[QVec], dim: usize) -> bool {
    rref(vs.to_vec(), dim).1.len() == vs.len()
}

/// Solves `Σ λᵢ colᵢ = target` for linearly independent columns; `None` if
/// `target` is outside their span.
pub fn solve_in_span(cols: &[QVec], target: &[Rational]) -> Option<QVec> {
    let dim = target.len();
    let m = cols.len();
    // Augmented system, one row per coordinate.
    let rows: Vec<QVec> = (0..dim)
        .map(|i| {
            let mut row: QVec = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (rref, pivots) = rref(rows, m + 1);
    if pivots.contains(&m) {
        return None;
    }
    let mut out = vec![Rational::zero(); m];
    for (row, &p) in rref.iter().zip(&pivots) {
        out[p] = row[m].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, ratio};

    fn v(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn null_space_of_projection() {
        let m = Matrix::from_rows(vec![v(&[1, 0]), v(&[0, 0])], 2).unwrap();
        assert_eq!(m.null_space(), vec![v(&[0, 1])]);
        assert_eq!(m.rank(), 1);
        let z = Matrix::zeros(2, 3);
        assert_eq!(z.null_space().len(), 3);
        assert!(Matrix::identity(3).null_space().is_empty());
    }

    #[test]
    fn null_space_vectors_are_killed() {
        let m = Matrix::from_rows(vec![v(&[1, 2, 3]), v(&[2, 4, 7])], 3).unwrap();
        for n in m.null_space() {
            assert!(is_zero_vec(&m.mul_vec(&n)));
        }
        assert_eq!(m.null_space().len(), 1);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[ratio(1, 2), ratio(-3, 4)]), v(&[2, -3]));
        assert_eq!(primitive(&v(&[-4, 6])), v(&[-2, 3]));
        assert_eq!(sign_canonical(&v(&[-4, 6])), v(&[2, -3]));
        assert_eq!(primitive(&v(&[0, 0])), v(&[0, 0]));
    }

    #[test]
    fn span_solve() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(solve_in_span(&cols, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(solve_in_span(&cols, &v(&[2, 3, 4])), None);
        assert!(independent(&cols, 3));
        assert!(!independent(&[v(&[1, 2]), v(&[2, 4])], 2));
    }

    #[test]
    fn products() {
        let a = Matrix::from_rows(vec![v(&[1, 2]), v(&[3, 4])], 2).unwrap();
        assert_eq!(a.mul(&Matrix::identity(2)), a);
        assert_eq!(a.transpose().row(0), v(&[1, 3]));
        assert_eq!(a.mul_vec(&v(&[1, 1])), v(&[3, 7]));
    }
}
