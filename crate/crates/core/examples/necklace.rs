// Necklace surgery diagrams compared with two-bridge determinants.

use qalink::families::{two_bridge, ContinuedFraction};
use qalink::surgery::{h1_order, necklace};
use qalink::tait::determinant;

pub fn run_example() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for (q, s) in [(1, 1), (2, 3), (3, 1)] {
        let h = h1_order(&necklace(2, 1, &[q], &[s]).unwrap());
        let cf = ContinuedFraction::new(vec![-2 * q, 2 * s]).unwrap();
        let det = determinant(&two_bridge(&cf).unwrap());
        println!("q={q} s={s}: |H_1| = {h}, det two_bridge = {det}");
        out.push((h, det));
    }
    out
}

#[allow(dead_code)]
fn main() {
    run_example();
}
