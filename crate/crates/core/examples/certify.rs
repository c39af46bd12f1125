// Searches for a quasi-alternating certificate, checks it, and round-trips
// it through JSON.

use qalink::families::pretzel;
use qalink::qa::{certify, verify, CertifyOptions, Outcome, QACertificate};

pub fn run_example() -> usize {
    let d = pretzel(&[-4, 3, 3]).expect("pretzel");
    let Outcome::Certified(cert) = certify(&d, CertifyOptions::default()).expect("certifiable input") else {
        panic!("P(-4,3,3) should certify");
    };
    println!("P(-4,3,3): det {}, {} certificate nodes", cert.root.det(), cert.root.node_count());
    for (det, zero, infinity) in cert.root.triads().iter().take(3) {
        println!("  {det} = {zero} + {infinity}");
    }
    let json = cert.to_json();
    let back = QACertificate::from_json(&json).unwrap();
    println!("verified after a JSON round trip: {}", verify(&back));
    cert.root.node_count()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
