//! Rational surgery diagrams, branched double cover presentations, necklace
//! surgery diagrams, and plumbing trees with blow-ups and blow-downs.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::matrix::{abs_det_u64, IntMatrix};
use crate::tait::{black_graph, goeritz, goeritz_matrix, reduce, BlackGraph};

/// Surgery coefficient `p/q` with `q >= 1` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub p: i64,
    pub q: i64,
}

impl Coefficient {
    /// Normalizes the sign into `p` and reduces; `q = 0` is rejected.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::BadParameters(format!("coefficient {p}/0")));
        }
        let g = p.gcd(&q);
        let s = q.signum();
        Ok(Coefficient { p: s * p / g, q: s * q / g })
    }

    pub fn integer(n: i64) -> Self {
        Coefficient { p: n, q: 1 }
    }
}

/// A framed link of unknots given by coefficients and linking numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryDiagram {
    pub components: Vec<Coefficient>,
    pub linking: IntMatrix,
}

#[derive(Deserialize)]
struct RawSurgery {
    components: Vec<Coefficient>,
    linking: IntMatrix,
}

impl<'de> Deserialize<'de> for SurgeryDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSurgery::deserialize(d)?;
        SurgeryDiagram::new(raw.components, raw.linking).map_err(serde::de::Error::custom)
    }
}

impl SurgeryDiagram {
    pub fn new(components: Vec<Coefficient>, linking: IntMatrix) -> Result<Self> {
        let n = components.len();
        if linking.rows() != n || linking.cols() != n {
            return Err(Error::MalformedInput(format!(
                "{n} components but a {}x{} linking matrix",
                linking.rows(),
                linking.cols()
            )));
        }
        if !linking.is_symmetric() {
            return Err(Error::MalformedInput("linking matrix is not symmetric".into()));
        }
        if (0..n).any(|i| linking[(i, i)] != 0) {
            return Err(Error::MalformedInput("linking matrix diagonal must be zero".into()));
        }
        let components = components
            .into_iter()
            .map(|c| {
                if c.q < 1 || c.p.gcd(&c.q) != 1 {
                    Err(Error::MalformedInput(format!(
                        "coefficient {}/{} is not in lowest terms with q >= 1",
                        c.p, c.q
                    )))
                } else {
                    Ok(c)
                }
            })
            .collect::<Result<_>>()?;
        Ok(SurgeryDiagram { components, linking })
    }

    /// S^3: no components.
    pub fn empty() -> Self {
        SurgeryDiagram {
            components: Vec::new(),
            linking: IntMatrix::zeros(0, 0),
        }
    }

    /// Integer surgery with the framings on the diagonal of `m`.
    pub fn from_framing_matrix(m: &IntMatrix) -> Self {
        let n = m.rows();
        let mut linking = m.clone();
        let components = (0..n)
            .map(|i| {
                linking[(i, i)] = 0;
                Coefficient::integer(m[(i, i)])
            })
            .collect();
        SurgeryDiagram { components, linking }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `M_ii = p_i`, `M_ij = q_i * lk(i, j)`.
    pub fn presentation_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = if i == j {
                    self.components[i].p
                } else {
                    self.components[i].q * self.linking[(i, j)]
                };
            }
        }
        m
    }
}

/// `|H_1|` of the surgered manifold; 0 when `H_1` is infinite.
pub fn h1_order(s: &SurgeryDiagram) -> u64 {
    abs_det_u64(&s.presentation_matrix())
}

/// Clasp form of the branched double cover: one unknot per vertex of the
/// reduced black graph, framed by its weight, with clasps given by the
/// summed edge signs. The linking data is exactly the Goeritz matrix.
pub fn branched_cover_presentation(d: &LinkDiagram) -> Result<SurgeryDiagram> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    if d.crossing_count() == 0 {
        return Ok(SurgeryDiagram::empty());
    }
    Ok(SurgeryDiagram::from_framing_matrix(&goeritz_matrix(d)?))
}

/// The same manifold with 0-framed vertex unknots and one `mu`-framed
/// unknot per crossing. The edge curve links its first endpoint `+1` and
/// its second `-1`; blowing it down adds `-mu` to both framings and `mu` to
/// their linking. An endpoint at the deleted vertex is simply not linked,
/// and a loop edge links its vertex `+1 - 1 = 0` times.
pub fn curve_presentation(d: &LinkDiagram) -> Result<SurgeryDiagram> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    if d.crossing_count() == 0 {
        return Ok(SurgeryDiagram::empty());
    }
    let g = black_graph(d, &d.faces()?)?;
    let live = reduce(&g, d.marked_edge().unwrap_or(1))?.live_vertices();
    let index = |v: usize| live.iter().position(|&x| x == v);
    let nv = live.len();
    let n = nv + g.edges.len();
    let mut linking = IntMatrix::zeros(n, n);
    let mut components = vec![Coefficient::integer(0); nv];
    for (k, e) in g.edges.iter().enumerate() {
        let curve = nv + k;
        components.push(Coefficient::integer(e.mu as i64));
        for (end, sign) in e.ends.into_iter().zip([1, -1]) {
            if let Some(i) = index(end) {
                linking[(i, curve)] += sign;
                linking[(curve, i)] += sign;
            }
        }
    }
    SurgeryDiagram::new(components, linking)
}

/// The necklace of `2mn` unknots with coefficients `1/q_1, 1/s_1, ...,
/// 1/q_m, 1/s_m` repeated `n` times, each linking the next once with signs
/// alternating around the chain.
pub fn necklace(n: usize, m: usize, q: &[i64], s: &[i64]) -> Result<SurgeryDiagram> {
    if n == 0 || m == 0 || q.len() != m || s.len() != m {
        return Err(Error::BadParameters(format!(
            "necklace needs n, m >= 1 and m values of q and s (n={n}, m={m}, q={q:?}, s={s:?})"
        )));
    }
    if q.iter().chain(s).any(|&x| x == 0) {
        return Err(Error::BadParameters("necklace parameters must be nonzero".into()));
    }
    let len = 2 * m * n;
    let components = (0..len)
        .map(|k| {
            let j = (k / 2) % m;
            let x = if k % 2 == 0 { q[j] } else { s[j] };
            Coefficient::new(1, x)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut linking = IntMatrix::zeros(len, len);
    for k in 0..len {
        let next = (k + 1) % len;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        linking[(k, next)] += sign;
        linking[(next, k)] += sign;
    }
    SurgeryDiagram::new(components, linking)
}

/// A weighted forest; in practice a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlumbingTree {
    weights: Vec<i64>,
    /// Each edge `(a, b)` with `a < b`, sorted.
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawVertex {
    weight: i64,
}

#[derive(Serialize, Deserialize)]
struct RawPlumbing {
    vertices: Vec<RawVertex>,
    edges: Vec<(usize, usize)>,
}

impl<'de> Deserialize<'de> for PlumbingTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPlumbing::deserialize(d)?;
        let weights = raw.vertices.into_iter().map(|v| v.weight).collect();
        PlumbingTree::new(weights, raw.edges).map_err(serde::de::Error::custom)
    }
}

/// Where to blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowUpSite {
    /// A new `-1` leaf on this vertex.
    Vertex(usize),
    /// A new `-1` vertex subdividing this edge.
    Edge(usize, usize),
    /// A new isolated `-1` vertex.
    Isolated,
}

impl PlumbingTree {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        let mut uf = crate::diagram::UnionFind::new(n);
        let mut normal = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::MalformedInput(format!("bad plumbing edge ({a}, {b})")));
            }
            if uf.find(a) == uf.find(b) {
                return Err(Error::MalformedInput("plumbing graph has a cycle".into()));
            }
            uf.union(a, b);
            normal.push((a.min(b), a.max(b)));
        }
        normal.sort_unstable();
        Ok(PlumbingTree {
            weights,
            edges: normal,
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Weights on the diagonal, 1 for each edge.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &w) in self.weights.iter().enumerate() {
            m[(i, i)] = w;
        }
        for &(a, b) in &self.edges {
            m[(a, b)] = 1;
            m[(b, a)] = 1;
        }
        m
    }

    pub fn det_abs(&self) -> u64 {
        abs_det_u64(&self.intersection_matrix())
    }

    pub fn to_surgery(&self) -> SurgeryDiagram {
        SurgeryDiagram::from_framing_matrix(&self.intersection_matrix())
    }

    pub fn to_json(&self) -> String {
        let raw = RawPlumbing {
            vertices: self.weights.iter().map(|&weight| RawVertex { weight }).collect(),
            edges: self.edges.clone(),
        };
        serde_json::to_string(&raw).expect("plumbing serializes")
    }

    /// Removes a `-1` vertex of degree at most 2. Its neighbors gain 1 and,
    /// if there are two, become adjacent. Later vertices shift down by one.
    pub fn blow_down(&self, v: usize) -> Result<PlumbingTree> {
        if v >= self.vertex_count() {
            return Err(Error::BadParameters(format!("no vertex {v}")));
        }
        let nb = self.neighbors(v);
        if self.weights[v] != -1 || nb.len() > 2 {
            return Err(Error::NotBlowable(v));
        }
        let mut weights = self.weights.clone();
        for &u in &nb {
            weights[u] += 1;
        }
        weights.remove(v);
        let shift = |u: usize| if u > v { u - 1 } else { u };
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        if let [a, b] = nb[..] {
            edges.push((shift(a), shift(b)));
        }
        PlumbingTree::new(weights, edges)
    }

    /// The inverse move; the new vertex is the last one.
    pub fn blow_up(&self, site: BlowUpSite) -> Result<PlumbingTree> {
        let n = self.vertex_count();
        let mut weights = self.weights.clone();
        let mut edges = self.edges.clone();
        weights.push(-1);
        match site {
            BlowUpSite::Isolated => {}
            BlowUpSite::Vertex(u) => {
                if u >= n {
                    return Err(Error::BadParameters(format!("no vertex {u}")));
                }
                weights[u] -= 1;
                edges.push((u, n));
            }
            BlowUpSite::Edge(a, b) => {
                let key = (a.min(b), a.max(b));
                let Some(pos) = edges.iter().position(|&e| e == key) else {
                    return Err(Error::BadParameters(format!("no edge ({a}, {b})")));
                };
                edges.remove(pos);
                weights[a] -= 1;
                weights[b] -= 1;
                edges.push((a, n));
                edges.push((b, n));
            }
        }
        PlumbingTree::new(weights, edges)
    }
}

/// Reads a reduced black graph without parallel edges or loops whose
/// underlying graph is a tree as a plumbing: vertex weights as Euler
/// numbers, edges as plumbings. Edge signs do not affect `|det|` on a tree.
pub fn plumbing_from_black_graph(g: &BlackGraph) -> Result<PlumbingTree> {
    let live = g.live_vertices();
    let index = |v: usize| live.iter().position(|&x| x == v);
    let mut edges = Vec::new();
    for e in &g.edges {
        if let (Some(a), Some(b)) = (index(e.ends[0]), index(e.ends[1])) {
            if a == b {
                return Err(Error::BadParameters("black graph has a loop".into()));
            }
            let key = (a.min(b), a.max(b));
            if edges.contains(&key) {
                return Err(Error::BadParameters("black graph has parallel edges".into()));
            }
            edges.push(key);
        }
    }
    let weights = live.iter().map(|&v| g.weights[v]).collect();
    PlumbingTree::new(weights, edges)
}

/// The star-shaped plumbing read off the pretzel diagram `P(k, ..., k)`
/// with `n` columns: in the coloring whose black faces are the top and
/// bottom regions and the bigons, deleting the bottom region leaves a star
/// centered at the top region with one arm of `k - 1` bigons per column.
pub fn pretzel_star_plumbing(k: i64, n: usize) -> Result<PlumbingTree> {
    if k < 1 || n < 2 {
        return Err(Error::BadParameters(format!("need k >= 1 and n >= 2, got k={k}, n={n}")));
    }
    let d = crate::families::pretzel(&vec![k; n])?;
    let col = d.faces()?;
    for coloring in [col.clone(), col.swapped()] {
        let g = black_graph(&d, &coloring)?;
        let degree = |v: usize| g.edges.iter().map(|e| e.ends.iter().filter(|&&x| x == v).count()).sum::<usize>();
        let hubs: Vec<usize> = (0..g.alive.len()).filter(|&v| degree(v) == n).collect();
        if hubs.len() < 2 || g.alive.len() != n * (k as usize - 1) + 2 {
            continue;
        }
        let hub = *hubs.last().expect("two hubs");
        let Some(arc) = (0..g.arc_vertex.len()).find(|&a| g.arc_vertex[a] == hub) else {
            continue;
        };
        let r = reduce(&g, arc as u32 + 1)?;
        if let Ok(t) = plumbing_from_black_graph(&r) {
            debug_assert_eq!(t.det_abs(), abs_det_u64(&goeritz(&r)));
            return Ok(t);
        }
    }
    Err(Error::BadParameters("pretzel black graph is not a theta graph".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::families::{pretzel, two_bridge, ContinuedFraction};
    use crate::tait::determinant;

    const TREFOIL: &str = "X[1,4,2,5];eps=+1\nX[3,6,4,1];eps=+1\nX[5,2,6,3];eps=+1\n";

    #[test]
    fn lens_spaces_and_s1xs2() {
        for (p, q) in [(5, 2), (-7, 3), (1, 1)] {
            let s = SurgeryDiagram::new(vec![Coefficient::new(p, q).unwrap()], IntMatrix::zeros(1, 1)).unwrap();
            assert_eq!(h1_order(&s), p.unsigned_abs());
        }
        let zero = SurgeryDiagram::new(vec![Coefficient::integer(0)], IntMatrix::zeros(1, 1)).unwrap();
        assert_eq!(h1_order(&zero), 0);
        assert_eq!(h1_order(&SurgeryDiagram::empty()), 1);
    }

    #[test]
    fn invalid_surgery_diagrams() {
        let asym = IntMatrix::from_rows(vec![vec![0, 1], vec![0, 0]]);
        assert!(SurgeryDiagram::new(vec![Coefficient::integer(1); 2], asym).is_err());
        let bad = Coefficient { p: 2, q: 4 };
        assert!(SurgeryDiagram::new(vec![bad], IntMatrix::zeros(1, 1)).is_err());
        assert!(Coefficient::new(1, 0).is_err());
        assert_eq!(Coefficient::new(2, -4).unwrap(), Coefficient { p: -1, q: 2 });
    }

    #[test]
    fn covers_of_small_knots() {
        let t = parse_pd(TREFOIL).unwrap();
        let s = branched_cover_presentation(&t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.components[0].p.abs(), 3);
        assert_eq!(h1_order(&s), 3);

        let f = two_bridge(&ContinuedFraction::new(vec![2, 2]).unwrap()).unwrap();
        let s = branched_cover_presentation(&f).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(h1_order(&s), 5);

        assert_eq!(branched_cover_presentation(&LinkDiagram::unknot()).unwrap(), SurgeryDiagram::empty());
        assert_eq!(branched_cover_presentation(&LinkDiagram::unlink(2)), Err(Error::Disconnected));
    }

    #[test]
    fn curve_form_agrees_with_clasp_form() {
        let f = two_bridge(&ContinuedFraction::new(vec![2, 2]).unwrap()).unwrap();
        for d in [parse_pd(TREFOIL).unwrap(), f, pretzel(&[2, -3, 2]).unwrap(), parse_pd("X[1,1,2,2];eps=-1").unwrap()] {
            let c = curve_presentation(&d).unwrap();
            assert!(c.components[..c.len() - d.crossing_count()].iter().all(|x| x.p == 0));
            assert_eq!(h1_order(&c), determinant(&d));
        }
    }

    #[test]
    fn surgery_json_round_trip() {
        let s = branched_cover_presentation(&pretzel(&[2, 2, 2]).unwrap()).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with("{\"components\":[{\"p\":"));
        let back: SurgeryDiagram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SurgeryDiagram>(r#"{"components":[{"p":1,"q":0}],"linking":[[0]]}"#).is_err());
    }

    fn cf(terms: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn necklace_single_bead_pair() {
        let s = necklace(2, 1, &[1], &[1]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(h1_order(&s), 3);
        assert_eq!(determinant(&two_bridge(&cf(&[-2, 2])).unwrap()), 3);
        for k in 1..=3 {
            for m in 1..=3 {
                let s = necklace(2, 1, &[k], &[m]).unwrap();
                assert_eq!(h1_order(&s), determinant(&two_bridge(&cf(&[-2 * k, 2 * m])).unwrap()));
                assert_eq!(h1_order(&necklace(1, 1, &[k], &[m]).unwrap()), 1);
            }
        }
        assert!(necklace(0, 1, &[1], &[1]).is_err());
        assert!(necklace(1, 1, &[0], &[1]).is_err());
    }

    #[test]
    fn blow_moves() {
        let single = PlumbingTree::new(vec![-1], vec![]).unwrap();
        let empty = single.blow_down(0).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.det_abs(), 1);

        let chain = PlumbingTree::new(vec![3, -1, -4], vec![(0, 1), (1, 2)]).unwrap();
        let down = chain.blow_down(1).unwrap();
        assert_eq!(down, PlumbingTree::new(vec![4, -3], vec![(0, 1)]).unwrap());
        assert_eq!(down.det_abs(), chain.det_abs());

        assert_eq!(chain.blow_down(0), Err(Error::NotBlowable(0)));
        let star = PlumbingTree::new(vec![-1, 2, 2, 2], vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.blow_down(0), Err(Error::NotBlowable(0)));

        for site in [BlowUpSite::Vertex(2), BlowUpSite::Edge(0, 1), BlowUpSite::Isolated] {
            let up = chain.blow_up(site).unwrap();
            assert_eq!(up.det_abs(), chain.det_abs());
            assert_eq!(up.blow_down(up.vertex_count() - 1).unwrap(), chain);
        }
        assert!(PlumbingTree::new(vec![1, 1, 1], vec![(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn plumbing_json() {
        let t = PlumbingTree::new(vec![-2, -1, 3], vec![(1, 0), (1, 2)]).unwrap();
        let text = t.to_json();
        assert_eq!(text, r#"{"vertices":[{"weight":-2},{"weight":-1},{"weight":3}],"edges":[[0,1],[1,2]]}"#);
        let back: PlumbingTree = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn pretzel_stars() {
        for k in 1..=4 {
            for n in 2..=4 {
                let t = pretzel_star_plumbing(k, n).unwrap();
                assert_eq!(t.vertex_count(), 1 + n * (k as usize - 1));
                let center = (0..t.vertex_count()).filter(|&v| t.neighbors(v).len() == n).count();
                assert!(k == 1 || n == 2 || center == 1);
                let d = pretzel(&vec![k; n]).unwrap();
                assert_eq!(t.det_abs(), h1_order(&branched_cover_presentation(&d).unwrap()));
            }
        }
    }
}
