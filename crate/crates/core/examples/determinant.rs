// Goeritz matrix and determinant of a PD diagram, checked against the
// Kauffman bracket state sum.

use qalink::parse_pd;
use qalink::tait::{determinant, goeritz_matrix, kauffman_det};

const FIGURE_EIGHT: &str = "X[2,5,1,4];eps=-1\nX[6,1,5,8];eps=-1\nX[3,7,4,6];eps=-1\nX[7,3,8,2];eps=-1\n";

pub fn run_example() -> u64 {
    let d = parse_pd(FIGURE_EIGHT).expect("valid PD");
    let g = goeritz_matrix(&d).expect("connected diagram");
    println!("Goeritz matrix of the figure-eight: {:?}", g.to_rows());
    let det = determinant(&d);
    println!("det = {det}, state sum gives {}", kauffman_det(&d).unwrap());
    det
}

#[allow(dead_code)]
fn main() {
    run_example();
}
