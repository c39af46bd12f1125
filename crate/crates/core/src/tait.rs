//! Black graphs, Goeritz matrices and link determinants.
//!
//! The black graph has one vertex per black face and one signed edge per
//! crossing. The sign `mu` of a crossing is `+1` when its black quadrants are
//! the ones swept by turning the over-strand counterclockwise (quadrants
//! `(1,2)` and `(3,0)` of the PD tuple), and `-1` otherwise. Any consistent
//! rule gives the same `|det|`.

use serde::{Deserialize, Serialize};

use crate::diagram::{CheckerboardColoring, Color, LinkDiagram};
use crate::error::{Error, Result};
use crate::matrix::{abs_det_u64, IntMatrix};

/// Default crossing bound for the brute-force state sum.
pub const KAUFFMAN_BOUND: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedEdge {
    pub ends: [usize; 2],
    pub mu: i8,
    /// The crossing this edge comes from.
    pub crossing: usize,
}

impl SignedEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlackGraph {
    /// Face index (in the coloring) of each vertex.
    pub faces: Vec<usize>,
    /// Whether each vertex is still present; `reduce` clears one.
    pub alive: Vec<bool>,
    pub edges: Vec<SignedEdge>,
    /// `w(v) = -sum of mu over incident edges`, loops counted twice. Not
    /// recomputed by `reduce`.
    pub weights: Vec<i64>,
    /// For each arc label (index `label - 1`), the black vertex it touches.
    pub arc_vertex: Vec<usize>,
}

impl BlackGraph {
    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn live_vertices(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.alive.iter().any(|a| !a)
    }

    /// Weight identity `w(v) + sum of mu over incident edges = 0`, with
    /// weights and edges taken from the unreduced graph.
    pub fn weight_defect(&self, v: usize) -> i64 {
        let incident: i64 = self
            .edges
            .iter()
            .map(|e| e.ends.iter().filter(|&&x| x == v).count() as i64 * e.mu as i64)
            .sum();
        self.weights[v] + incident
    }
}

/// Builds the black graph of a diagram under a coloring.
pub fn black_graph(d: &LinkDiagram, coloring: &CheckerboardColoring) -> Result<BlackGraph> {
    if d.crossing_count() == 0 {
        return Err(Error::EmptyDiagram);
    }
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let black = coloring.black_faces();
    let mut vertex_of_face = vec![usize::MAX; coloring.faces.len()];
    for (v, &f) in black.iter().enumerate() {
        vertex_of_face[f] = v;
    }
    let mut edges = Vec::with_capacity(d.crossing_count());
    for c in 0..d.crossing_count() {
        // Quadrant (p, p+1) is the corner starting at p.
        let (q1, q2, mu) = if coloring.corner_color(c, 1) == Color::Black {
            (1, 3, 1)
        } else {
            (0, 2, -1)
        };
        let u = vertex_of_face[coloring.face_of_corner(c, q1)];
        let v = vertex_of_face[coloring.face_of_corner(c, q2)];
        debug_assert!(u != usize::MAX && v != usize::MAX);
        edges.push(SignedEdge {
            ends: [u, v],
            mu,
            crossing: c,
        });
    }
    let mut weights = vec![0i64; black.len()];
    for e in &edges {
        weights[e.ends[0]] -= e.mu as i64;
        weights[e.ends[1]] -= e.mu as i64;
    }
    let mut arc_vertex = vec![usize::MAX; d.arc_count()];
    for (v, &f) in black.iter().enumerate() {
        for &a in &coloring.faces[f].arcs {
            arc_vertex[a as usize - 1] = v;
        }
    }
    Ok(BlackGraph {
        alive: vec![true; black.len()],
        faces: black,
        edges,
        weights,
        arc_vertex,
    })
}

/// Deletes the black vertex touching the marked arc together with its edges.
/// Remaining weights keep their original values.
pub fn reduce(g: &BlackGraph, marked: u32) -> Result<BlackGraph> {
    let idx = marked as usize;
    if idx == 0 || idx > g.arc_vertex.len() || g.arc_vertex[idx - 1] == usize::MAX {
        return Err(Error::MarkError(marked));
    }
    let v = g.arc_vertex[idx - 1];
    if !g.alive[v] {
        return Err(Error::MarkError(marked));
    }
    let mut out = g.clone();
    out.alive[v] = false;
    out.edges.retain(|e| !e.ends.contains(&v));
    Ok(out)
}

/// The Goeritz matrix of a reduced black graph, indexed by surviving
/// vertices in increasing order. Self-loops come from nugatory crossings and
/// contribute nothing: the diagonal is `w(v)` with the loop terms taken back
/// out.
pub fn goeritz(g: &BlackGraph) -> IntMatrix {
    let live = g.live_vertices();
    let mut index = vec![usize::MAX; g.alive.len()];
    for (i, &v) in live.iter().enumerate() {
        index[v] = i;
    }
    let mut m = IntMatrix::zeros(live.len(), live.len());
    for (i, &v) in live.iter().enumerate() {
        m[(i, i)] = g.weights[v];
    }
    for e in &g.edges {
        let (i, j) = (index[e.ends[0]], index[e.ends[1]]);
        if i == usize::MAX || j == usize::MAX {
            continue;
        }
        if i == j {
            m[(i, i)] += 2 * e.mu as i64;
        } else {
            m[(i, j)] += e.mu as i64;
            m[(j, i)] += e.mu as i64;
        }
    }
    m
}

/// The reduced Goeritz matrix of a connected diagram, reduced at its marked
/// arc (arc 1 when unmarked).
pub fn goeritz_matrix(d: &LinkDiagram) -> Result<IntMatrix> {
    let coloring = d.faces()?;
    let g = black_graph(d, &coloring)?;
    let reduced = reduce(&g, d.marked_edge().unwrap_or(1))?;
    Ok(goeritz(&reduced))
}

/// `|det L|` from the Goeritz matrix. Split diagrams give 0; the
/// crossingless unknot and the empty diagram give 1.
pub fn determinant(d: &LinkDiagram) -> u64 {
    if d.crossing_count() == 0 {
        return if d.free_loops() <= 1 { 1 } else { 0 };
    }
    if !d.is_connected() {
        return 0;
    }
    let m = goeritz_matrix(d).expect("a connected planar diagram has a Goeritz matrix");
    abs_det_u64(&m)
}

/// `|det L|` by summing the Kauffman bracket over all `2^n` smoothings at a
/// primitive 8th root of unity, where only single-loop states survive.
pub fn kauffman_det(d: &LinkDiagram) -> Result<u64> {
    kauffman_det_bounded(d, KAUFFMAN_BOUND)
}

pub fn kauffman_det_bounded(d: &LinkDiagram, bound: usize) -> Result<u64> {
    let n = d.crossing_count();
    if n > bound {
        return Err(Error::TooLarge {
            crossings: n,
            bound,
        });
    }
    if n == 0 {
        return Ok(if d.free_loops() <= 1 { 1 } else { 0 });
    }
    if d.free_loops() > 0 {
        return Ok(0);
    }
    let arcs = d.arc_count();
    let mut parent = vec![0usize; arcs];
    // Sum of i^(number of A-smoothings) over single-loop states, as a
    // Gaussian integer.
    let mut acc = [0i64; 4];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut loops = arcs;
        let mut a_count = 0usize;
        for (c, x) in d.crossings().iter().enumerate() {
            let [a, b, cc, dd] = x.arcs.map(|l| l as usize - 1);
            let pairs = if state >> c & 1 == 0 {
                a_count += 1;
                [(a, b), (cc, dd)]
            } else {
                [(a, dd), (b, cc)]
            };
            for (u, v) in pairs {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    loops -= 1;
                }
            }
        }
        if loops == 1 {
            acc[a_count % 4] += 1;
        }
    }
    let re = acc[0] - acc[2];
    let im = acc[1] - acc[3];
    let sq = (re * re + im * im) as u64;
    let root = (sq as f64).sqrt().round() as u64;
    debug_assert_eq!(root * root, sq, "bracket modulus is an integer");
    Ok(root)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X[1,4,2,5];eps=+1\nX[3,6,4,1];eps=+1\nX[5,2,6,3];eps=+1\n";
    const FIGURE_EIGHT: &str = "X[2,5,1,4];eps=-1\nX[6,1,5,8];eps=-1\nX[3,7,4,6];eps=-1\nX[7,3,8,2];eps=-1\n";
    const HOPF: &str = "X[4,1,3,2];eps=+1\nX[2,3,1,4];eps=+1\n";

    #[test]
    fn kink_black_graph() {
        let d = parse_pd("X[1,1,2,2];eps=+1").unwrap();
        let col = d.faces().unwrap();
        // Make the two monogons black.
        let col = if col.black_faces().len() == 2 { col } else { col.swapped() };
        let g = black_graph(&d, &col).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges.len(), 1);
        let mu = g.edges[0].mu as i64;
        assert_eq!(g.weights, vec![-mu, -mu]);
    }

    #[test]
    fn trefoil_black_graph_has_two_vertices() {
        let d = parse_pd(TREFOIL).unwrap();
        let g = black_graph(&d, &d.faces().unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges.len(), 3);
        let mu = g.edges[0].mu;
        assert!(g.edges.iter().all(|e| e.mu == mu && !e.is_loop()));
        let w = -3 * mu as i64;
        assert_eq!(g.weights, vec![w, w]);
        let r = reduce(&g, 1).unwrap();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(goeritz(&r), IntMatrix::from_rows(vec![vec![w]]));
    }

    #[test]
    fn reducing_a_single_vertex_leaves_the_empty_matrix() {
        let d = parse_pd("X[1,1,2,2];eps=+1").unwrap();
        let col = d.faces().unwrap();
        let col = if col.black_faces().len() == 1 { col } else { col.swapped() };
        let g = black_graph(&d, &col).unwrap();
        let r = reduce(&g, 1).unwrap();
        assert_eq!(r.vertex_count(), 0);
        assert_eq!(goeritz(&r).rows(), 0);
        assert_eq!(determinant(&d), 1);
    }

    #[test]
    fn bad_mark() {
        let d = parse_pd(TREFOIL).unwrap();
        let g = black_graph(&d, &d.faces().unwrap()).unwrap();
        assert!(matches!(reduce(&g, 99), Err(Error::MarkError(99))));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&LinkDiagram::unknot()), 1);
        assert_eq!(determinant(&LinkDiagram::unlink(2)), 0);
        assert_eq!(determinant(&parse_pd(TREFOIL).unwrap()), 3);
        assert_eq!(determinant(&parse_pd(FIGURE_EIGHT).unwrap()), 5);
        assert_eq!(determinant(&parse_pd(HOPF).unwrap()), 2);
    }

    #[test]
    fn kauffman_small_cases() {
        assert_eq!(kauffman_det(&LinkDiagram::unknot()).unwrap(), 1);
        assert_eq!(kauffman_det(&parse_pd(HOPF).unwrap()).unwrap(), 2);
        assert_eq!(kauffman_det(&parse_pd(TREFOIL).unwrap()).unwrap(), 3);
        assert_eq!(kauffman_det(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap(), 5);
        assert_eq!(kauffman_det(&LinkDiagram::unlink(2)).unwrap(), 0);
    }

    #[test]
    fn kauffman_bound() {
        let d = parse_pd(TREFOIL).unwrap();
        assert!(matches!(
            kauffman_det_bounded(&d, 2),
            Err(Error::TooLarge { crossings: 3, bound: 2 })
        ));
    }

    #[test]
    fn convention_independence_on_small_knots() {
        for text in [TREFOIL, FIGURE_EIGHT, HOPF] {
            let d = parse_pd(text).unwrap();
            let det = determinant(&d);
            let col = d.faces().unwrap();
            for coloring in [col.clone(), col.swapped()] {
                let g = black_graph(&d, &coloring).unwrap();
                for arc in 1..=d.arc_count() as u32 {
                    let r = reduce(&g, arc).unwrap();
                    assert_eq!(abs_det_u64(&goeritz(&r)), det);
                }
            }
            assert_eq!(determinant(&d.mirror()), det);
        }
    }
}
