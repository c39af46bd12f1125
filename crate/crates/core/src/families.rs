//! Pretzel links, `(2, 2k)` torus links, two-bridge links from continued
//! fractions, and the determinant matrices `A`, `B(p,q,r)`, `C(p,q,r)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::tangle::Tangle;

/// The pretzel link `P(n_1, ..., n_k)`: `k` vertical twist columns placed
/// side by side and closed off at the top and bottom.
pub fn pretzel(twists: &[i64]) -> Result<LinkDiagram> {
    if twists.len() < 2 {
        return Err(Error::BadParameters("a pretzel link needs at least 2 columns".into()));
    }
    if twists.contains(&0) {
        return Err(Error::BadParameters("pretzel twist counts must be nonzero".into()));
    }
    let column = |n: i64| Tangle::infinity().vertical(n);
    let tangle = twists[1..]
        .iter()
        .fold(column(twists[0]), |acc, &n| acc.sum(column(n)));
    tangle.numerator()
}

/// The standard alternating diagram of the `(2, 2k)` torus link.
pub fn torus_2_2k(k: i64) -> Result<LinkDiagram> {
    if k < 1 {
        return Err(Error::BadParameters(format!("k must be positive, got {k}")));
    }
    Tangle::zero().horizontal(2 * k).numerator()
}

/// `[a_1, ..., a_m]`, read as `a_m + 1/(a_{m-1} + ... + 1/a_1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() || terms.contains(&0) {
            return Err(Error::DegenerateFraction(format!(
                "terms must be nonempty and nonzero: {terms:?}"
            )));
        }
        Ok(ContinuedFraction { terms })
    }

    /// The exact value as `(numerator, denominator)` with a positive
    /// denominator, in lowest terms.
    pub fn value(&self) -> Result<(i128, i128)> {
        let (mut p, mut q) = (self.terms[0] as i128, 1i128);
        for &a in &self.terms[1..] {
            if p == 0 {
                return Err(Error::DegenerateFraction(format!(
                    "{:?} divides by zero",
                    self.terms
                )));
            }
            (p, q) = (a as i128 * p + q, p);
        }
        if q < 0 {
            (p, q) = (-p, -q);
        }
        let g = p.gcd(&q);
        Ok((p / g, q / g))
    }
}

/// Evaluates a continued fraction to the two-bridge parameters `(p, q)`:
/// `p = |numerator| >= 1` and `q` the denominator carried to the sign of the
/// value and reduced into `1..p` when `p > 1` (for `p = 1`, `q = 1`).
pub fn cf_eval(cf: &ContinuedFraction) -> Result<(u64, u64)> {
    let (num, den) = cf.value()?;
    if num == 0 {
        return Err(Error::DegenerateFraction(format!("{:?} evaluates to 0", cf.terms)));
    }
    let p = num.unsigned_abs();
    let q = (den * num.signum()).rem_euclid(num.abs()) as u128;
    if p == 1 {
        return Ok((1, 1));
    }
    Ok((p as u64, q as u64))
}

/// All-positive expansion of `p/q` in the `[a_1, ..., a_m]` reading above.
pub fn positive_expansion(p: u64, q: u64) -> Vec<i64> {
    let (mut a, mut b) = (p, q);
    let mut euclid = Vec::new();
    while b != 0 {
        euclid.push((a / b) as i64);
        (a, b) = (b, a % b);
    }
    euclid.reverse();
    euclid
}

/// The alternating 4-plat of `C(a_1, ..., a_m)` for a positive expansion.
pub fn rational_closure(terms: &[i64]) -> Result<LinkDiagram> {
    let tangle = Tangle::rational_from(Tangle::zero(), terms);
    // Twists of the last kind would be undone by the closure along them.
    if terms.len() % 2 == 1 {
        tangle.numerator()
    } else {
        tangle.denominator()
    }
}

/// The two-bridge link of the continued fraction, drawn alternating from the
/// positive expansion of its value; `determinant = p`.
pub fn two_bridge(cf: &ContinuedFraction) -> Result<LinkDiagram> {
    let (p, q) = cf_eval(cf)?;
    rational_closure(&positive_expansion(p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    A,
    B,
    C,
}

/// One of the determinant matrices: a symmetric head block followed by two
/// chains of 2's of lengths `q` and `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetMatrixSpec {
    pub kind: MatrixKind,
    pub p: i64,
    pub q: usize,
    pub r: usize,
}

pub fn det_matrix(spec: &DetMatrixSpec) -> Result<IntMatrix> {
    let DetMatrixSpec { kind, p, q, r } = *spec;
    if p < 1 {
        return Err(Error::BadParameters(format!("p must be positive, got {p}")));
    }
    // Head diagonal, and the head rows the q- and r-chains hang from.
    let (head, q_row, r_row) = match kind {
        MatrixKind::A => (vec![1 - 2 * p; 3], 1, 2),
        MatrixKind::B => (vec![-2 * p, 1 - 2 * p, 1 - 2 * p], 2, 1),
        MatrixKind::C => (vec![1 - 2 * p; 2], 1, 0),
    };
    let h = head.len();
    let n = h + q + r;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..h {
        for j in 0..h {
            m[(i, j)] = if i == j { head[i] } else { p };
        }
    }
    for (start, len, row) in [(h, q, q_row), (h + q, r, r_row)] {
        for k in start..start + len {
            m[(k, k)] = 2;
            if k + 1 < start + len {
                m[(k, k + 1)] = -1;
                m[(k + 1, k)] = -1;
            }
        }
        if len > 0 {
            m[(row, start)] = -1;
            m[(start, row)] = -1;
        }
    }
    Ok(m)
}

/// Closed form of `det B(p,q,r)`.
pub fn b_closed(p: i64, q: i64, r: i64) -> i64 {
    r * (3 * p * p) + q * (3 * p * p) + (-2 * p + 6 * p * p)
}

/// Closed form of `det C(p,q,r)`.
pub fn c_closed(p: i64, q: i64, r: i64) -> i64 {
    r * q * (3 * p * p) + r * (-2 * p + 3 * p * p) + q * (-2 * p + 3 * p * p) + (1 - 4 * p + 3 * p * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::abs_det_u64;
    use crate::tait::{black_graph, determinant, goeritz, kauffman_det, reduce};
    use num_bigint::BigInt;

    fn cf(terms: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn pretzel_determinants() {
        let t = pretzel(&[1, 1, 1]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        assert_eq!(determinant(&t), 3);
        let p = pretzel(&[2, 2, 2]).unwrap();
        assert_eq!(kauffman_det(&p).unwrap(), 12);
        assert_eq!(determinant(&p), 12);
        assert!(pretzel(&[3]).is_err());
        assert!(pretzel(&[1, 0]).is_err());
    }

    #[test]
    fn pretzel_determinant_is_the_elementary_symmetric_sum() {
        for twists in [vec![3, 3, 3], vec![2, 3, 4], vec![1, 2], vec![-2, 3, 5], vec![2, 2, 2, 2]] {
            let d = pretzel(&twists).unwrap();
            // det P(n_1..n_k) = |sum over i of prod over j != i of n_j|
            let expected: i64 = (0..twists.len())
                .map(|i| twists.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &n)| n).product::<i64>())
                .sum();
            assert_eq!(determinant(&d), expected.unsigned_abs(), "{twists:?}");
            assert_eq!(kauffman_det(&d).unwrap(), expected.unsigned_abs());
        }
    }

    #[test]
    fn torus_links() {
        assert!(torus_2_2k(0).is_err());
        for k in 1..=5 {
            let d = torus_2_2k(k).unwrap();
            assert_eq!(d.crossing_count(), 2 * k as usize);
            assert_eq!(d.component_count(), 2);
            assert_eq!(kauffman_det(&d).unwrap(), 2 * k as u64);
        }
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(cf_eval(&cf(&[2, 2])).unwrap(), (5, 2));
        assert_eq!(cf_eval(&cf(&[4, 2])).unwrap(), (9, 4));
        assert_eq!(cf_eval(&cf(&[1, 1, 1])).unwrap(), (3, 2));
        assert_eq!(cf_eval(&cf(&[-2, 2])).unwrap(), (3, 2));
        assert_eq!(cf_eval(&cf(&[2, -2])).unwrap(), (3, 1));
        assert!(matches!(cf_eval(&cf(&[1, -1, 3])), Err(Error::DegenerateFraction(_))));
        assert!(ContinuedFraction::new(vec![2, 0]).is_err());
        assert_eq!(positive_expansion(5, 2), vec![2, 2]);
        assert_eq!(positive_expansion(9, 4), vec![4, 2]);
    }

    #[test]
    fn two_bridge_determinants() {
        for k in 1..=3 {
            for m in 1..=3 {
                let d = two_bridge(&cf(&[2 * k, 2 * m])).unwrap();
                assert_eq!(determinant(&d), (4 * k * m + 1) as u64);
                assert_eq!(kauffman_det(&d).unwrap(), (4 * k * m + 1) as u64);
            }
        }
        assert_eq!(determinant(&two_bridge(&cf(&[4, 2])).unwrap()), 9);
        assert_eq!(determinant(&two_bridge(&cf(&[-2, 2])).unwrap()), 3);
    }

    #[test]
    fn figure_eight_black_graph() {
        let d = two_bridge(&cf(&[2, 2])).unwrap();
        assert_eq!(d.crossing_count(), 4);
        let col = d.faces().unwrap();
        for c in [col.clone(), col.swapped()] {
            let g = black_graph(&d, &c).unwrap();
            assert_eq!(g.vertex_count(), 3);
            assert!(g.edges.iter().all(|e| !e.is_loop()));
            let r = reduce(&g, 1).unwrap();
            assert_eq!(r.vertex_count(), 2);
            let m = goeritz(&r);
            assert!(m.is_symmetric());
            assert_eq!(abs_det_u64(&m), 5);
        }
    }

    fn spec(kind: MatrixKind, p: i64, q: usize, r: usize) -> IntMatrix {
        det_matrix(&DetMatrixSpec { kind, p, q, r }).unwrap()
    }

    #[test]
    fn base_matrices() {
        let b = spec(MatrixKind::B, 1, 0, 0);
        assert_eq!(b.to_rows(), vec![vec![-2, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]);
        assert_eq!(b.determinant(), BigInt::from(4));
        let c = spec(MatrixKind::C, 1, 0, 0);
        assert_eq!(c.to_rows(), vec![vec![-1, 1], vec![1, -1]]);
        assert_eq!(c.determinant(), BigInt::from(0));
        assert!(det_matrix(&DetMatrixSpec { kind: MatrixKind::A, p: 0, q: 0, r: 0 }).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(b_closed(1, 0, 0), 4);
        assert_eq!(b_closed(2, 1, 1), 44);
        assert_eq!(c_closed(2, 1, 1), 33);
        for q in 0..=10 {
            for r in 0..=10 {
                assert!(c_closed(2, q, r) > 0);
            }
        }
    }

    #[test]
    fn matrices_are_symmetric_and_sized() {
        for kind in [MatrixKind::A, MatrixKind::B, MatrixKind::C] {
            let m = spec(kind, 2, 3, 1);
            assert!(m.is_symmetric());
            let head = if kind == MatrixKind::C { 2 } else { 3 };
            assert_eq!(m.rows(), head + 4);
        }
    }

    #[test]
    fn a_is_b_plus_c_in_determinant() {
        for p in 1..=3 {
            for q in 0..=3 {
                for r in 0..=3 {
                    let a = spec(MatrixKind::A, p, q, r).determinant();
                    let b = spec(MatrixKind::B, p, q, r).determinant();
                    let c = spec(MatrixKind::C, p, q, r).determinant();
                    assert_eq!(a, b + c);
                }
            }
        }
    }
}
