// Pretzel links, T(2,2k) torus links and two-bridge links from continued
// fractions.

use qalink::families::{cf_eval, pretzel, torus_2_2k, two_bridge, ContinuedFraction};
use qalink::tait::determinant;

pub fn run_example() -> Vec<u64> {
    let mut dets = Vec::new();
    for t in [[3, 3, 3], [-2, 3, 7]] {
        let d = pretzel(&t).unwrap();
        println!("P{t:?}: {} crossings, det {}", d.crossing_count(), determinant(&d));
        dets.push(determinant(&d));
    }
    let t = torus_2_2k(3).unwrap();
    println!("T(2,6): {} components, det {}", t.component_count(), determinant(&t));
    dets.push(determinant(&t));
    let cf = ContinuedFraction::new(vec![-2, 2, -2, 2]).unwrap();
    let (p, q) = cf_eval(&cf).unwrap();
    let k = two_bridge(&cf).unwrap();
    println!("[-2,2,-2,2] = {p}/{q}: det {}", determinant(&k));
    dets.push(determinant(&k));
    dets
}

#[allow(dead_code)]
fn main() {
    run_example();
}
