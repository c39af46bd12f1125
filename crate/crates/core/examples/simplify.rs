// Reidemeister simplification with a replayable move trace.

use qalink::resolve::{is_unknot, replay, simplify_traced};
use qalink::tangle::braid_closure;

pub fn run_example() -> usize {
    // (s1 s2 s1)(s2 s1 s2)^-1 is trivial, so this closes to the closure of s1 s2.
    let d = braid_closure(3, &[1, 2, 1, -2, -1, -2, 1, 2]).expect("braid");
    let s = simplify_traced(&d);
    println!("{} crossings -> {} after {:?}", d.crossing_count(), s.result.crossing_count(), s.trace);
    assert_eq!(replay(&d, &s.trace).unwrap(), s.result);
    println!("unknot: {:?}", is_unknot(&d));
    s.result.crossing_count()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
