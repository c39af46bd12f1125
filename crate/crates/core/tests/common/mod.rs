//! Shared test corpus and independent checks.
#![allow(dead_code)]

use qalink::families::{positive_expansion, pretzel, rational_closure, torus_2_2k};
use qalink::tait::black_graph;
use qalink::tangle::braid_closure;
use qalink::{parse_pd, LinkDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TREFOIL: &str = "X[1,4,2,5];eps=+1\nX[3,6,4,1];eps=+1\nX[5,2,6,3];eps=+1\n";
pub const FIGURE_EIGHT: &str = "X[2,5,1,4];eps=-1\nX[6,1,5,8];eps=-1\nX[3,7,4,6];eps=-1\nX[7,3,8,2];eps=-1\n";
pub const HOPF: &str = "X[4,1,3,2];eps=+1\nX[2,3,1,4];eps=+1\n";

pub struct Entry {
    pub name: String,
    pub diagram: LinkDiagram,
}

fn push(out: &mut Vec<Entry>, name: String, d: LinkDiagram) {
    if d.crossing_count() > 0 && d.crossing_count() <= 12 && d.is_connected() {
        out.push(Entry { name, diagram: d });
    }
}

/// Connected diagrams with at most 12 crossings: hand-written small links,
/// every rational closure of a positive expansion with at most 9 crossings,
/// pretzels of both signs, T(2,2k) and random braid closures.
pub fn corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for (name, pd) in [("trefoil", TREFOIL), ("figure-eight", FIGURE_EIGHT), ("hopf", HOPF)] {
        push(&mut out, name.into(), parse_pd(pd).unwrap());
    }
    for p in 2..=60u64 {
        for q in 1..p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let terms = positive_expansion(p, q);
            if terms.iter().sum::<i64>() <= 9 {
                push(&mut out, format!("C{terms:?}"), rational_closure(&terms).unwrap());
            }
        }
    }
    let pretzels: &[&[i64]] = &[
        &[1, 1, 1],
        &[2, 2, 2],
        &[3, 3, 3],
        &[2, 2, 2, 2],
        &[3, 3, 3, 3],
        &[1, 2, 3],
        &[-2, 3, 3],
        &[-2, 3, 5],
        &[-2, 3, 7],
        &[-3, 3, 3],
        &[2, -3, 4],
        &[-1, -1, 2, 2],
        &[-2, -2, 3, 3],
    ];
    for t in pretzels {
        push(&mut out, format!("P{t:?}"), pretzel(t).unwrap());
    }
    for k in 1..=5 {
        push(&mut out, format!("T(2,{})", 2 * k), torus_2_2k(k).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut braids = 0;
    while braids < 30 {
        let strands = rng.gen_range(3..=4);
        let len = rng.gen_range(strands + 1..=12);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) { g } else { -g }
            })
            .collect();
        if (1..strands as i32).all(|g| word.iter().any(|&x| x.abs() == g)) {
            push(&mut out, format!("braid{strands}{word:?}"), braid_closure(strands, &word).unwrap());
            braids += 1;
        }
    }
    out
}

/// Every black-graph edge has the same sign.
pub fn is_alternating(d: &LinkDiagram) -> bool {
    let g = black_graph(d, &d.faces().unwrap()).unwrap();
    g.edges.windows(2).all(|w| w[0].mu == w[1].mu)
}

/// No nugatory crossing: neither checkerboard graph has a self-loop.
pub fn is_reduced(d: &LinkDiagram) -> bool {
    let col = d.faces().unwrap();
    [col.clone(), col.swapped()]
        .iter()
        .all(|c| black_graph(d, c).unwrap().edges.iter().all(|e| !e.is_loop()))
}

/// Determinant from the Kauffman bracket at t = i, by summing over all
/// states with exact Gaussian integers. Independent of the Tait graph code.
pub fn bracket_det(d: &LinkDiagram) -> u64 {
    let n = d.crossing_count();
    assert!(n <= 16, "state sum too large");
    let arcs = d.arc_count();
    // <K>(A) with A = e^{i pi/4}... evaluated as a Laurent polynomial in A,
    // then |<K>(A)| at A^4 = -1 via the coefficient sums.
    let mut poly = std::collections::BTreeMap::<i64, i64>::new();
    for state in 0u32..(1 << n) {
        let mut parent: Vec<usize> = (0..=arcs).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let mut a_count = 0i64;
        for (c, x) in d.crossings().iter().enumerate() {
            let [a, b, cc, dd] = x.arcs.map(|v| v as usize);
            // A-smoothing joins the arcs bounding the region swept by the
            // under-strand turning counterclockwise: (a,b) and (c,d).
            let a_smoothing = state >> c & 1 == 0;
            let pairs = if a_smoothing { [(a, b), (cc, dd)] } else { [(a, dd), (b, cc)] };
            if a_smoothing {
                a_count += 1;
            }
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut loops = d.free_loops() as i64;
        for v in 1..=arcs {
            if find(&mut parent, v) == v {
                loops += 1;
            }
        }
        // A^{a - b} (-A^2 - A^{-2})^{loops - 1}
        let mut term = std::collections::BTreeMap::from([(a_count - (n as i64 - a_count), 1i64)]);
        for _ in 0..loops - 1 {
            let mut next = std::collections::BTreeMap::new();
            for (&e, &c) in &term {
                *next.entry(e + 2).or_insert(0) -= c;
                *next.entry(e - 2).or_insert(0) -= c;
            }
            term = next;
        }
        for (e, c) in term {
            *poly.entry(e).or_insert(0) += c;
        }
    }
    // At A = e^{i pi / 4}, A^e = i^{e/2} for even e; odd exponents do not
    // occur for diagrams (exponents all share the parity of n).
    let (mut re, mut im) = (0i64, 0i64);
    let mut odd = (0i64, 0i64);
    for (e, c) in poly {
        let k = e.rem_euclid(8);
        let (r, i) = match k {
            0 => (1, 0),
            2 => (0, 1),
            4 => (-1, 0),
            6 => (0, -1),
            1 => { odd.0 += c; odd.1 += c; continue; }
            3 => { odd.0 -= c; odd.1 += c; continue; }
            5 => { odd.0 -= c; odd.1 -= c; continue; }
            _ => { odd.0 += c; odd.1 -= c; continue; }
        };
        re += r * c;
        im += i * c;
    }
    if odd != (0, 0) {
        // Odd exponents carry a factor (1 + i)/sqrt 2; |.|^2 = (x^2 + y^2) / 2.
        assert_eq!((re, im), (0, 0));
        let sq = odd.0 * odd.0 + odd.1 * odd.1;
        return ((sq / 2) as f64).sqrt().round() as u64;
    }
    ((re * re + im * im) as f64).sqrt().round() as u64
}
