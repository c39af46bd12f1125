// The matrices A, B(p,q,r), C(p,q,r): determinants, closed forms and A = B + C.

use qalink::families::{b_closed, c_closed, det_matrix, DetMatrixSpec, MatrixKind};

pub fn run_example() -> (i64, i64, i64) {
    let (p, q, r) = (2, 1, 1);
    let det = |kind| -> i64 {
        det_matrix(&DetMatrixSpec { kind, p, q, r }).unwrap().determinant().try_into().unwrap()
    };
    let b = det_matrix(&DetMatrixSpec { kind: MatrixKind::B, p, q, r }).unwrap();
    for row in b.to_rows() {
        println!("{row:?}");
    }
    let (a, bb, c) = (det(MatrixKind::A), det(MatrixKind::B), det(MatrixKind::C));
    println!("det B = {bb} (closed form {}), det C = {c} (closed form {})", b_closed(p, 1, 1), c_closed(p, 1, 1));
    println!("det A = {a} = {bb} + {c}");
    (a, bb, c)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
