// Replacing a certified crossing with an alternating rational tangle keeps
// the link quasi-alternating.

use qalink::parse_pd;
use qalink::qa::{certify, extend_certified, verify, CertNode, CertifyOptions, Outcome, RationalTangleSpec};
use qalink::tait::determinant;

const TREFOIL: &str = "X[1,4,2,5];eps=+1\nX[3,6,4,1];eps=+1\nX[5,2,6,3];eps=+1\n";

pub fn run_example() -> (u64, bool) {
    let d = parse_pd(TREFOIL).unwrap();
    let Outcome::Certified(cert) = certify(&d, CertifyOptions::default()).unwrap() else {
        panic!("the trefoil certifies");
    };
    let CertNode::Node { crossing, .. } = &*cert.root else { panic!("a crossing is resolved") };
    let epsilon = d.crossings()[*crossing].epsilon;
    let spec = RationalTangleSpec { coefficients: vec![2 * epsilon as i64, epsilon as i64], host: *crossing, epsilon };
    let ext = extend_certified(&cert, &spec).unwrap();
    println!("{} crossings, tangle crossings {:?}, det {}", ext.diagram.crossing_count(), ext.tangle_crossings, determinant(&ext.diagram));
    let again = certify(&ext.diagram, CertifyOptions::default()).unwrap();
    let ok = again.certificate().is_some_and(verify);
    println!("extension certifies: {ok}");
    (determinant(&ext.diagram), ok)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
