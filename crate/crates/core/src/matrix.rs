//! Dense integer matrices with an exact fraction-free determinant.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Square or rectangular integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    /// The matrix with row and column `k` deleted.
    pub fn minor(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let mut m = Self::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Exact determinant by Bareiss elimination. Runs in `i128` and redoes
    /// the elimination over big integers if an intermediate overflows.
    /// The 0x0 determinant is 1.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match bareiss_i128(self) {
            Some(d) => BigInt::from(d),
            None => bareiss_big(self),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("matrix rows have different lengths"));
        }
        Ok(IntMatrix::from_rows(rows))
    }
}

fn bareiss_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.rows;
    let mut a: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let t = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(aik.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = t / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Some(if n == 0 { 1 } else { sign * a[n * n - 1] })
}

fn bareiss_big(m: &IntMatrix) -> BigInt {
    let n = m.rows;
    let mut a: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let t = &pivot * &a[i * n + j] - &aik * &a[k * n + j];
                a[i * n + j] = t / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = if n == 0 { BigInt::one() } else { a[n * n - 1].clone() };
    if negate {
        -d
    } else {
        d
    }
}

/// `|det|` as a `u64`; panics only if the value does not fit.
pub(crate) fn abs_det_u64(m: &IntMatrix) -> u64 {
    let d = m.determinant().abs();
    u64::try_from(d).expect("determinant exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion: independent of elimination.
    fn leibniz(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = BigInt::zero();
        permute(&mut perm, 0, m, &mut total);
        total
    }

    fn permute(perm: &mut Vec<usize>, k: usize, m: &IntMatrix, total: &mut BigInt) {
        let n = perm.len();
        if k == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let mut prod = BigInt::one();
            for i in 0..n {
                prod *= m[(i, perm[i])];
            }
            if inversions % 2 == 1 {
                prod = -prod;
            }
            *total += prod;
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            permute(perm, k + 1, m, total);
            perm.swap(k, i);
        }
    }

    #[test]
    fn empty_matrix_has_determinant_one() {
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn small_cases() {
        let m = IntMatrix::from_rows(vec![vec![-2, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]);
        assert_eq!(m.determinant(), BigInt::from(4));
        let z = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(z.determinant(), BigInt::from(-1));
        let s = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.determinant(), BigInt::zero());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 1i64 << 40;
        let m = IntMatrix::from_rows(vec![
            vec![big, 1, 0, 0],
            vec![1, big, 1, 0],
            vec![0, 1, big, 1],
            vec![0, 0, 1, big],
        ]);
        assert!(bareiss_i128(&m).is_none());
        assert_eq!(m.determinant(), leibniz(&m));
    }

    #[test]
    fn json_is_row_major() {
        let m = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,2],[3,4]]");
        let back: IntMatrix = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        assert_eq!(back, m);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(n in 0usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = seed[i * 6 + j];
                }
            }
            prop_assert_eq!(m.determinant(), leibniz(&m));
        }
    }
}
