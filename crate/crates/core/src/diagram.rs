//! Combinatorial link diagrams in planar-diagram (PD) form.
//!
//! A crossing is a 4-tuple of arc labels read counterclockwise starting at
//! the incoming under-strand, so the under-strand occupies positions 0 and 2
//! and the over-strand positions 1 and 3. The sign `epsilon` records the
//! slope of the over-strand in the crossing's tangle frame and decides which
//! smoothing is called the 0-resolution (see [`crate::resolve`]).
//!
//! Every arc label occurs exactly twice. The tuples double as a rotation
//! system, from which faces, the checkerboard coloring and planarity are
//! recovered.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A corner of a face: the quadrant at `crossing` between positions `p` and `p + 1`.
pub type Corner = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub epsilon: i8,
}

impl Crossing {
    pub fn new(arcs: [u32; 4], epsilon: i8) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::MalformedInput(format!(
                "epsilon must be +1 or -1, got {epsilon}"
            )));
        }
        Ok(Crossing { arcs, epsilon })
    }

    pub fn under(&self) -> (u32, u32) {
        (self.arcs[0], self.arcs[2])
    }

    pub fn over(&self) -> (u32, u32) {
        (self.arcs[1], self.arcs[3])
    }

    /// Whether position `p` belongs to the over-strand.
    pub fn is_over(p: usize) -> bool {
        p % 2 == 1
    }

    /// The same crossing read from the other end of the under-strand.
    pub fn rotated(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        Crossing {
            arcs: [c, d, a, b],
            epsilon: self.epsilon,
        }
    }

    /// Mirror image: over and under strands swap, and so does the slope sign.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        Crossing {
            arcs: [b, c, d, a],
            epsilon: -self.epsilon,
        }
    }
}

/// A validated link diagram. Arc labels are always `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    marked: Option<u32>,
    component_count: usize,
}

impl LinkDiagram {
    /// Validates and normalizes a diagram.
    ///
    /// `free_loops` counts crossingless circles. Labels are compacted to
    /// `1..=2n` preserving their order.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize, marked: Option<u32>) -> Result<Self> {
        let mut labels = BTreeSet::new();
        let mut counts = std::collections::BTreeMap::new();
        for x in &crossings {
            if x.epsilon != 1 && x.epsilon != -1 {
                return Err(Error::MalformedInput(format!(
                    "epsilon must be +1 or -1, got {}",
                    x.epsilon
                )));
            }
            for &a in &x.arcs {
                labels.insert(a);
                *counts.entry(a).or_insert(0usize) += 1;
            }
        }
        if let Some((&arc, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::DanglingArc { arc, count });
        }
        if let Some(m) = marked {
            if !labels.contains(&m) {
                return Err(Error::MalformedInput(format!(
                    "marked arc {m} does not occur in the diagram"
                )));
            }
        }
        let lookup: std::collections::HashMap<u32, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as u32 + 1))
            .collect();
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|x| Crossing {
                arcs: x.arcs.map(|a| lookup[&a]),
                epsilon: x.epsilon,
            })
            .collect();
        let marked = marked.map(|m| lookup[&m]);
        let mut d = LinkDiagram {
            crossings,
            free_loops,
            marked,
            component_count: 0,
        };
        d.check_planar()?;
        d.component_count = d.count_strand_cycles() + free_loops;
        Ok(d)
    }

    /// The crossingless unknot.
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            free_loops: 1,
            marked: None,
            component_count: 1,
        }
    }

    /// `k` crossingless circles.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            free_loops: k,
            marked: None,
            component_count: k,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn marked_edge(&self) -> Option<u32> {
        self.marked
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// The diagram with no crossings and no circles.
    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 0
    }

    pub fn with_mark(&self, arc: u32) -> Result<Self> {
        if arc == 0 || arc as usize > self.arc_count() {
            return Err(Error::MalformedInput(format!("no arc {arc} to mark")));
        }
        let mut d = self.clone();
        d.marked = Some(arc);
        Ok(d)
    }

    /// Mirror image: every crossing changes over/under and slope sign.
    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(Crossing::mirrored).collect();
        LinkDiagram::new(crossings, self.free_loops, self.marked)
            .expect("mirroring preserves validity")
    }

    pub fn label(&self, occ: usize) -> u32 {
        self.crossings[occ / 4].arcs[occ % 4]
    }

    /// Occurrence indices `4 * crossing + position` of each arc, indexed by `label - 1`.
    pub fn arc_ends(&self) -> Vec<[usize; 2]> {
        let mut ends = vec![[usize::MAX; 2]; self.arc_count()];
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, &a) in x.arcs.iter().enumerate() {
                let slot = &mut ends[a as usize - 1];
                if slot[0] == usize::MAX {
                    slot[0] = 4 * c + p;
                } else {
                    slot[1] = 4 * c + p;
                }
            }
        }
        ends
    }

    /// The partner of each occurrence: the other end of the same arc.
    pub fn partners(&self) -> Vec<usize> {
        let mut partner = vec![0; 4 * self.crossings.len()];
        for [o1, o2] in self.arc_ends() {
            partner[o1] = o2;
            partner[o2] = o1;
        }
        partner
    }

    fn count_strand_cycles(&self) -> usize {
        let partner = self.partners();
        let mut seen = vec![false; partner.len()];
        let mut cycles = 0;
        for start in 0..partner.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut o = start;
            while !seen[o] {
                seen[o] = true;
                let far = partner[o];
                seen[far] = true;
                o = straight(far);
            }
        }
        cycles
    }

    /// Connected pieces of the underlying 4-valent graph, as sorted crossing indices.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let n = self.crossings.len();
        let partner = self.partners();
        let mut piece = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if piece[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            piece[s] = id;
            let mut stack = vec![s];
            while let Some(c) = stack.pop() {
                for p in 0..4 {
                    let other = partner[4 * c + p] / 4;
                    if piece[other] == usize::MAX {
                        piece[other] = id;
                        members.push(other);
                        stack.push(other);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Connected in the sense required of a quasi-alternating diagram: a single
    /// crossing piece with no extra circles, or a single circle.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            self.free_loops == 1
        } else {
            self.free_loops == 0 && self.pieces().len() == 1
        }
    }

    /// Next corner along a face: leave the corner through position `p + 1`
    /// and take the quadrant at the far end that starts at the arrival position.
    fn next_corner(&self, partner: &[usize], (c, p): Corner) -> Corner {
        let far = partner[4 * c + (p + 1) % 4];
        (far / 4, far % 4)
    }

    fn trace_faces(&self) -> (Vec<Vec<Corner>>, Vec<usize>) {
        let partner = self.partners();
        let total = 4 * self.crossings.len();
        let mut corner_face = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if corner_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut cur = (start / 4, start % 4);
            loop {
                let idx = 4 * cur.0 + cur.1;
                if corner_face[idx] != usize::MAX {
                    break;
                }
                corner_face[idx] = id;
                corners.push(cur);
                cur = self.next_corner(&partner, cur);
            }
            faces.push(corners);
        }
        (faces, corner_face)
    }

    /// Corner cycles of all faces of the crossing pieces, without coloring.
    pub fn face_corners(&self) -> Vec<Vec<Corner>> {
        self.trace_faces().0
    }

    fn check_planar(&self) -> Result<()> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let (faces, _) = self.trace_faces();
        let pieces = self.pieces().len();
        let expected = self.crossings.len() + 2 * pieces;
        if faces.len() != expected {
            return Err(Error::NonPlanar(format!(
                "{} faces traced, Euler characteristic requires {}",
                faces.len(),
                expected
            )));
        }
        Ok(())
    }

    /// Faces of the diagram with a checkerboard coloring.
    ///
    /// In each connected piece the face containing corner `(c, 0)` of the
    /// piece's lowest-indexed crossing `c` is taken to be the unbounded face
    /// and colored white. Each crossingless circle contributes a black disk
    /// and a white outside.
    pub fn faces(&self) -> Result<CheckerboardColoring> {
        if self.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let (traced, corner_face) = self.trace_faces();
        let pieces = self.pieces();
        if !self.crossings.is_empty() && traced.len() != self.crossings.len() + 2 * pieces.len() {
            return Err(Error::NonPlanar("Euler characteristic check failed".into()));
        }
        let mut piece_of = vec![0; self.crossings.len()];
        for (i, members) in pieces.iter().enumerate() {
            for &c in members {
                piece_of[c] = i;
            }
        }

        let mut faces: Vec<Face> = traced
            .into_iter()
            .map(|corners| {
                let arcs = corners
                    .iter()
                    .map(|&(c, p)| self.crossings[c].arcs[(p + 1) % 4])
                    .collect();
                let piece = piece_of[corners[0].0];
                Face {
                    corners,
                    arcs,
                    piece,
                }
            })
            .collect();

        // Each arc borders two faces.
        let mut arc_faces = vec![Vec::with_capacity(2); self.arc_count()];
        for (f, face) in faces.iter().enumerate() {
            for &a in &face.arcs {
                arc_faces[a as usize - 1].push(f);
            }
        }
        let mut colors = vec![None; faces.len()];
        for members in &pieces {
            let outer = corner_face[4 * members[0]];
            colors[outer] = Some(Color::White);
            let mut stack = vec![outer];
            while let Some(f) = stack.pop() {
                let here = colors[f].expect("colored before push");
                for &a in &faces[f].arcs {
                    let pair = &arc_faces[a as usize - 1];
                    let g = if pair[0] == f { pair[1] } else { pair[0] };
                    if g == f {
                        return Err(Error::NonPlanar(format!(
                            "arc {a} has the same face on both sides"
                        )));
                    }
                    match colors[g] {
                        None => {
                            colors[g] = Some(here.opposite());
                            stack.push(g);
                        }
                        Some(c) if c == here => {
                            return Err(Error::NonPlanar(
                                "faces cannot be checkerboard colored".into(),
                            ))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut colors: Vec<Color> = colors
            .into_iter()
            .map(|c| c.expect("every face reached from its piece's outer face"))
            .collect();
        for i in 0..self.free_loops {
            let piece = pieces.len() + i;
            for color in [Color::Black, Color::White] {
                faces.push(Face {
                    corners: Vec::new(),
                    arcs: Vec::new(),
                    piece,
                });
                colors.push(color);
            }
        }
        Ok(CheckerboardColoring {
            faces,
            colors,
            corner_face,
        })
    }

    /// The connected pieces as independent diagrams; every crossingless
    /// circle becomes its own unknot.
    pub fn split_components(&self) -> Vec<LinkDiagram> {
        let mut out = Vec::new();
        for members in self.pieces() {
            let crossings: Vec<Crossing> = members.iter().map(|&c| self.crossings[c]).collect();
            let mark = self
                .marked
                .filter(|m| crossings.iter().any(|x| x.arcs.contains(m)));
            out.push(LinkDiagram::new(crossings, 0, mark).expect("a piece of a valid diagram is valid"));
        }
        out.extend((0..self.free_loops).map(|_| LinkDiagram::unknot()));
        out
    }

    /// Removes the crossings in `removed` and reconnects their arcs by
    /// identifying the label pairs in `joins`. Every position of every
    /// removed crossing must appear in exactly one join. Closed strands that
    /// no longer meet a crossing become free circles.
    pub(crate) fn splice(&self, removed: &[usize], joins: &[(u32, u32)]) -> LinkDiagram {
        let mut uf = UnionFind::new(self.arc_count() + 1);
        for &(a, b) in joins {
            uf.union(a as usize, b as usize);
        }
        let kept: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, x)| *x)
            .collect();
        let mut remaining = vec![0usize; self.arc_count() + 1];
        for x in &kept {
            for &a in &x.arcs {
                remaining[uf.find(a as usize)] += 1;
            }
        }
        let new_loops = (1..=self.arc_count())
            .filter(|&label| uf.find(label) == label && remaining[label] == 0)
            .count();
        let kept: Vec<Crossing> = kept
            .into_iter()
            .map(|x| Crossing {
                arcs: x.arcs.map(|a| uf.find(a as usize) as u32),
                epsilon: x.epsilon,
            })
            .collect();
        let marked = self.marked.and_then(|m| {
            let r = uf.find(m as usize);
            (remaining[r] > 0).then_some(r as u32)
        });
        LinkDiagram::new(kept, self.free_loops + new_loops, marked)
            .expect("splicing a planar diagram keeps it planar")
    }

    /// A relabeling-invariant key: the lexicographically least serialization
    /// over all strand traversals. Equal diagrams up to arc relabeling and
    /// crossing order get equal codes.
    pub fn canonical_code(&self) -> CanonicalCode {
        let mut best: Option<Vec<u32>> = None;
        let partner = self.partners();
        for start in 0..4 * self.crossings.len() {
            let code = self.code_from(&partner, start);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        let mut code = vec![self.free_loops as u32];
        code.extend(best.unwrap_or_default());
        CanonicalCode(code)
    }

    fn code_from(&self, partner: &[usize], start: usize) -> Vec<u32> {
        let n = self.crossings.len();
        let mut new_label = vec![0u32; 2 * n + 1];
        let mut entry = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut next = 1u32;
        let mut leave = start;
        loop {
            // Walk one strand cycle, leaving each crossing straight through.
            loop {
                let a = self.label(leave) as usize;
                if new_label[a] != 0 {
                    break;
                }
                new_label[a] = next;
                next += 1;
                for occ in [leave, partner[leave]] {
                    let c = occ / 4;
                    if entry[c] == usize::MAX {
                        entry[c] = occ % 4;
                        order.push(c);
                    }
                }
                leave = straight(partner[leave]);
            }
            if next as usize > 2 * n {
                break;
            }
            let resume = order.iter().find_map(|&c| {
                (0..4)
                    .map(|k| 4 * c + (entry[c] + k) % 4)
                    .find(|&o| new_label[self.label(o) as usize] == 0)
            });
            leave = match resume {
                Some(o) => o,
                // Disconnected: fall back to the first unlabeled occurrence.
                None => (0..4 * n)
                    .find(|&o| new_label[self.label(o) as usize] == 0)
                    .expect("unlabeled arcs remain"),
            };
        }
        let mut tuples: Vec<[u32; 5]> = self
            .crossings
            .iter()
            .map(|x| {
                let sign = if x.epsilon > 0 { 1 } else { 0 };
                let a = x.arcs.map(|l| new_label[l as usize]);
                let r = [a[2], a[3], a[0], a[1]];
                let a = if r < a { r } else { a };
                [a[0], a[1], a[2], a[3], sign]
            })
            .collect();
        tuples.sort_unstable();
        tuples.into_iter().flatten().collect()
    }

    /// Serializes to the PD text format accepted by [`parse_pd`].
    pub fn to_pd_string(&self) -> String {
        let mut out = String::new();
        if let Some(m) = self.marked {
            out.push_str(&format!("mark={m}\n"));
        }
        let default_loops = if self.crossings.is_empty() { 1 } else { 0 };
        if self.free_loops != default_loops {
            out.push_str(&format!("loops={}\n", self.free_loops));
        }
        for x in &self.crossings {
            let [a, b, c, d] = x.arcs;
            let sign = if x.epsilon > 0 { "+1" } else { "-1" };
            out.push_str(&format!("X[{a},{b},{c},{d}];eps={sign}\n"));
        }
        out
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

impl Serialize for LinkDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_pd_string())
    }
}

impl<'de> Deserialize<'de> for LinkDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_pd(&text).map_err(serde::de::Error::custom)
    }
}

/// Relabeling-invariant diagram key used for memoization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u32>);

pub(crate) fn straight(occ: usize) -> usize {
    (occ & !3) | ((occ + 2) & 3)
}

/// Parses the PD text format.
///
/// One entry per line: `X[a,b,c,d];eps=+1` (or `-1`), optional headers
/// `mark=<arc>` and `loops=<k>` (crossingless circles; defaults to 1 for a
/// diagram without crossings and 0 otherwise). Whitespace is ignored, blank
/// lines and lines starting with `#` are skipped.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut crossings = Vec::new();
    let mut mark = None;
    let mut loops = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::MalformedInput(format!("line {}: {what}: {raw:?}", lineno + 1));
        if let Some(v) = line.strip_prefix("mark=") {
            mark = Some(v.parse::<u32>().map_err(|_| bad("bad mark"))?);
        } else if let Some(v) = line.strip_prefix("loops=") {
            loops = Some(v.parse::<usize>().map_err(|_| bad("bad loop count"))?);
        } else if let Some(rest) = line.strip_prefix("X[") {
            let (body, tail) = rest.split_once(']').ok_or_else(|| bad("missing ']'"))?;
            let arcs: Vec<u32> = body
                .split(',')
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("arc labels must be non-negative integers"))?;
            let arcs: [u32; 4] = arcs.try_into().map_err(|_| bad("a crossing needs 4 arcs"))?;
            let eps = tail
                .strip_prefix(";eps=")
                .ok_or_else(|| bad("expected ';eps=+1' or ';eps=-1'"))?;
            let epsilon = match eps {
                "+1" | "1" => 1,
                "-1" => -1,
                _ => return Err(bad("epsilon must be +1 or -1")),
            };
            crossings.push(Crossing { arcs, epsilon });
        } else {
            return Err(bad("unrecognized entry"));
        }
    }
    let loops = loops.unwrap_or(if crossings.is_empty() { 1 } else { 0 });
    LinkDiagram::new(crossings, loops, mark)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A face: its corners in traversal order and the arc along which each
/// corner is left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<Corner>,
    pub arcs: Vec<u32>,
    /// Connected piece of the diagram the face belongs to; crossingless
    /// circles come after the crossing pieces.
    pub piece: usize,
}

impl Face {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckerboardColoring {
    pub faces: Vec<Face>,
    pub colors: Vec<Color>,
    corner_face: Vec<usize>,
}

impl CheckerboardColoring {
    pub fn face_of_corner(&self, crossing: usize, position: usize) -> usize {
        self.corner_face[4 * crossing + position % 4]
    }

    pub fn corner_color(&self, crossing: usize, position: usize) -> Color {
        self.colors[self.face_of_corner(crossing, position)]
    }

    pub fn black_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.colors[f] == Color::Black)
            .collect()
    }

    /// The two faces on either side of an arc.
    pub fn arc_faces(&self, arc: u32) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.faces.len())
            .filter(|&f| self.faces[f].arcs.contains(&arc))
            .collect();
        out.dedup();
        out
    }

    /// The coloring with black and white exchanged.
    pub fn swapped(&self) -> Self {
        CheckerboardColoring {
            faces: self.faces.clone(),
            colors: self.colors.iter().map(|c| c.opposite()).collect(),
            corner_face: self.corner_face.clone(),
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`, keeping the smaller root.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
