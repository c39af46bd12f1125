// Surgery presentations of the branched double cover and |H_1|.

use qalink::parse_pd;
use qalink::surgery::{branched_cover_presentation, curve_presentation, h1_order};
use qalink::tait::determinant;

const FIGURE_EIGHT: &str = "X[2,5,1,4];eps=-1\nX[6,1,5,8];eps=-1\nX[3,7,4,6];eps=-1\nX[7,3,8,2];eps=-1\n";

pub fn run_example() -> (u64, u64) {
    let d = parse_pd(FIGURE_EIGHT).unwrap();
    let clasp = branched_cover_presentation(&d).unwrap();
    let curves = curve_presentation(&d).unwrap();
    println!("clasp form: {}", serde_json::to_string(&clasp).unwrap());
    println!("curve form has {} components", curves.len());
    let h = h1_order(&clasp);
    println!("|H_1| = {h} (curve form {}), det = {}", h1_order(&curves), determinant(&d));
    (h, determinant(&d))
}

#[allow(dead_code)]
fn main() {
    run_example();
}
