// Plumbing trees: blow-ups and blow-downs, and the star plumbing of a
// pretzel link.

use qalink::families::pretzel;
use qalink::surgery::{pretzel_star_plumbing, BlowUpSite, PlumbingTree};
use qalink::tait::determinant;

pub fn run_example() -> Vec<u64> {
    let t = PlumbingTree::new(vec![-2, -3, -2], vec![(0, 1), (1, 2)]).unwrap();
    let up = t.blow_up(BlowUpSite::Edge(0, 1)).unwrap().blow_up(BlowUpSite::Vertex(2)).unwrap();
    let down = up.blow_down(4).unwrap().blow_down(3).unwrap();
    println!("{} -> {} -> {}", t.to_json(), up.to_json(), down.to_json());
    println!("|det|: {} {} {}", t.det_abs(), up.det_abs(), down.det_abs());
    let star = pretzel_star_plumbing(3, 3).unwrap();
    println!("P(3,3,3) star {}: |det| {} vs det {}", star.to_json(), star.det_abs(), determinant(&pretzel(&[3, 3, 3]).unwrap()));
    vec![t.det_abs(), up.det_abs(), down.det_abs(), star.det_abs()]
}

#[allow(dead_code)]
fn main() {
    run_example();
}
