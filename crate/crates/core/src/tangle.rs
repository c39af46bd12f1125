//! Four-ended tangles assembled from crossings by gluing open ends.
//!
//! Every crossing is drawn in a fixed frame with ends `NW`, `NE`, `SW`,
//! `SE`, and its `slope` is the sign of the over-strand's slope in that
//! frame. With the PD convention of [`crate::diagram`], a slope `+1`
//! crossing reads `(SE, NE, NW, SW)` and a slope `-1` crossing reads
//! `(SW, SE, NE, NW)`; the horizontal smoothing (`NW-NE`, `SW-SE`) is then
//! the 0-resolution in both cases, which is what `epsilon = slope` encodes.
//!
//! Horizontal twists add crossings on the right, vertical twists add them
//! underneath. All crossings of one slope give alternating rational tangles.

use crate::diagram::{Crossing, LinkDiagram};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    NW,
    NE,
    SW,
    SE,
}

/// PD position of a frame direction for a crossing of the given slope.
pub fn frame_position(slope: i8, dir: Dir) -> usize {
    match (slope > 0, dir) {
        (true, Dir::SE) | (false, Dir::SW) => 0,
        (true, Dir::NE) | (false, Dir::SE) => 1,
        (true, Dir::NW) | (false, Dir::NE) => 2,
        (true, Dir::SW) | (false, Dir::NW) => 3,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Slot(usize, usize),
    Port(usize),
}

/// Crossings whose ends are either wired to each other or still open
/// ("ports"). Gluing two ports splices their wires.
#[derive(Debug, Clone, Default)]
pub struct Wiring {
    slopes: Vec<i8>,
    slot_partner: Vec<[Option<End>; 4]>,
    port_partner: Vec<Option<End>>,
    loops: usize,
}

pub type Port = usize;

impl Wiring {
    pub fn new() -> Self {
        Self::default()
    }

    fn new_port(&mut self) -> Port {
        self.port_partner.push(None);
        self.port_partner.len() - 1
    }

    fn link(&mut self, a: End, b: End) {
        match a {
            End::Slot(c, p) => self.slot_partner[c][p] = Some(b),
            End::Port(q) => self.port_partner[q] = Some(b),
        }
        match b {
            End::Slot(c, p) => self.slot_partner[c][p] = Some(a),
            End::Port(q) => self.port_partner[q] = Some(a),
        }
    }

    /// Adds a crossing and returns open ports at its `[NW, NE, SW, SE]` ends.
    pub fn add_crossing(&mut self, slope: i8) -> [Port; 4] {
        let c = self.slopes.len();
        self.slopes.push(slope);
        self.slot_partner.push([None; 4]);
        [Dir::NW, Dir::NE, Dir::SW, Dir::SE].map(|dir| {
            let port = self.new_port();
            self.link(End::Slot(c, frame_position(slope, dir)), End::Port(port));
            port
        })
    }

    /// Adds an uncrossed strand and returns its two open ends.
    pub fn add_strand(&mut self) -> (Port, Port) {
        let a = self.new_port();
        let b = self.new_port();
        self.link(End::Port(a), End::Port(b));
        (a, b)
    }

    /// Joins two open ends. Joining the two ends of one strand closes it
    /// into a free circle.
    pub fn glue(&mut self, a: Port, b: Port) {
        let pa = self.port_partner[a].take().expect("port already glued");
        let pb = self.port_partner[b].take().expect("port already glued");
        if pa == End::Port(b) {
            debug_assert_eq!(pb, End::Port(a));
            self.loops += 1;
            return;
        }
        self.link(pa, pb);
    }

    /// Converts a fully glued wiring into a diagram.
    pub fn into_diagram(self) -> Result<LinkDiagram> {
        assert!(
            self.port_partner.iter().all(Option::is_none),
            "open ports remain"
        );
        let n = self.slopes.len();
        let mut labels = vec![[0u32; 4]; n];
        let mut next = 1;
        for c in 0..n {
            for p in 0..4 {
                if labels[c][p] != 0 {
                    continue;
                }
                let Some(End::Slot(c2, p2)) = self.slot_partner[c][p] else {
                    unreachable!("slots are wired to slots once all ports are glued")
                };
                labels[c][p] = next;
                labels[c2][p2] = next;
                next += 1;
            }
        }
        let crossings = (0..n)
            .map(|c| Crossing {
                arcs: labels[c],
                epsilon: self.slopes[c],
            })
            .collect();
        LinkDiagram::new(crossings, self.loops, None)
    }

    /// Appends another wiring; its ports are renumbered by the returned offset.
    fn absorb(&mut self, other: Wiring) -> usize {
        let offset = self.port_partner.len();
        let crossing_offset = self.slopes.len();
        let shift = |e: End| match e {
            End::Slot(c, p) => End::Slot(c + crossing_offset, p),
            End::Port(q) => End::Port(q + offset),
        };
        self.slopes.extend(other.slopes);
        self.slot_partner
            .extend(other.slot_partner.into_iter().map(|s| s.map(|e| e.map(shift))));
        self.port_partner
            .extend(other.port_partner.into_iter().map(|e| e.map(shift)));
        self.loops += other.loops;
        offset
    }

    /// Glues a tangle into four open ports given as `[NW, NE, SW, SE]`.
    pub fn insert(&mut self, t: Tangle, ports: [Port; 4]) {
        let offset = self.absorb(t.wiring);
        for (hole, end) in ports.into_iter().zip([t.nw, t.ne, t.sw, t.se]) {
            self.glue(hole, end + offset);
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.slopes.len()
    }

    /// Rebuilds a diagram with one crossing cut out; returns the wiring and
    /// open ports at the removed crossing's `[NW, NE, SW, SE]` ends.
    pub fn with_hole(d: &LinkDiagram, host: usize) -> (Wiring, [Port; 4]) {
        let mut w = Wiring::new();
        let mut index = vec![usize::MAX; d.crossing_count()];
        for (c, x) in d.crossings().iter().enumerate() {
            if c != host {
                index[c] = w.slopes.len();
                w.slopes.push(x.epsilon);
                w.slot_partner.push([None; 4]);
            }
        }
        let slope = d.crossings()[host].epsilon;
        let ports = [Dir::NW, Dir::NE, Dir::SW, Dir::SE].map(|_| w.new_port());
        let dirs = [Dir::NW, Dir::NE, Dir::SW, Dir::SE];
        let end_of = |occ: usize| -> End {
            let (c, p) = (occ / 4, occ % 4);
            if c == host {
                let k = dirs
                    .iter()
                    .position(|&dir| frame_position(slope, dir) == p)
                    .expect("every position is some frame direction");
                End::Port(ports[k])
            } else {
                End::Slot(index[c], p)
            }
        };
        for [o1, o2] in d.arc_ends() {
            let (a, b) = (end_of(o1), end_of(o2));
            w.link(a, b);
        }
        w.loops = d.free_loops();
        (w, ports)
    }
}

/// A tangle under construction: a wiring plus its four open corners.
#[derive(Debug, Clone)]
pub struct Tangle {
    pub wiring: Wiring,
    pub nw: Port,
    pub ne: Port,
    pub sw: Port,
    pub se: Port,
}

impl Tangle {
    /// The 0 tangle: two horizontal strands.
    pub fn zero() -> Self {
        let mut wiring = Wiring::new();
        let (nw, ne) = wiring.add_strand();
        let (sw, se) = wiring.add_strand();
        Tangle { wiring, nw, ne, sw, se }
    }

    /// The infinity tangle: two vertical strands.
    pub fn infinity() -> Self {
        let mut wiring = Wiring::new();
        let (nw, sw) = wiring.add_strand();
        let (ne, se) = wiring.add_strand();
        Tangle { wiring, nw, ne, sw, se }
    }

    /// One crossing added on the right, twisting the `NE` and `SE` ends.
    pub fn twist_horizontal(&mut self, slope: i8) {
        let [xnw, xne, xsw, xse] = self.wiring.add_crossing(slope);
        self.wiring.glue(self.ne, xnw);
        self.wiring.glue(self.se, xsw);
        self.ne = xne;
        self.se = xse;
    }

    /// One crossing added underneath, twisting the `SW` and `SE` ends.
    pub fn twist_vertical(&mut self, slope: i8) {
        let [xnw, xne, xsw, xse] = self.wiring.add_crossing(slope);
        self.wiring.glue(self.sw, xnw);
        self.wiring.glue(self.se, xne);
        self.sw = xsw;
        self.se = xse;
    }

    /// Twists by a signed count: `|k|` crossings of slope `sign(k)`.
    pub fn horizontal(mut self, k: i64) -> Self {
        for _ in 0..k.unsigned_abs() {
            self.twist_horizontal(k.signum() as i8);
        }
        self
    }

    pub fn vertical(mut self, k: i64) -> Self {
        for _ in 0..k.unsigned_abs() {
            self.twist_vertical(k.signum() as i8);
        }
        self
    }

    /// The alternating rational tangle `C(a_1, ..., a_m)` grown from `start`:
    /// `a_1` horizontal twists, then `a_2` vertical, alternating.
    pub fn rational_from(start: Tangle, terms: &[i64]) -> Self {
        terms.iter().enumerate().fold(start, |t, (i, &a)| {
            if i % 2 == 0 {
                t.horizontal(a)
            } else {
                t.vertical(a)
            }
        })
    }

    /// Places `other` to the right of `self`.
    pub fn sum(self, other: Tangle) -> Self {
        let mut wiring = self.wiring;
        let offset = wiring.absorb(other.wiring);
        wiring.glue(self.ne, other.nw + offset);
        wiring.glue(self.se, other.sw + offset);
        Tangle {
            wiring,
            nw: self.nw,
            sw: self.sw,
            ne: other.ne + offset,
            se: other.se + offset,
        }
    }

    /// Numerator closure: join `NW-NE` and `SW-SE`.
    pub fn numerator(mut self) -> Result<LinkDiagram> {
        self.wiring.glue(self.nw, self.ne);
        self.wiring.glue(self.sw, self.se);
        self.wiring.into_diagram()
    }

    /// Denominator closure: join `NW-SW` and `NE-SE`.
    pub fn denominator(mut self) -> Result<LinkDiagram> {
        self.wiring.glue(self.nw, self.sw);
        self.wiring.glue(self.ne, self.se);
        self.wiring.into_diagram()
    }
}

/// Closure of a braid word on `strands` strands. Generator `i` (1-based)
/// crosses strands `i` and `i + 1`; positive letters have the over-strand
/// rising to the right, with the braid drawn bottom to top.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
    if strands == 0 || word.iter().any(|&g| g == 0 || g.unsigned_abs() as usize >= strands) {
        return Err(crate::error::Error::BadParameters(format!(
            "braid word {word:?} does not fit on {strands} strands"
        )));
    }
    let mut current: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (sw, se) = (current[i], current[i + 1]);
        let (nw, ne) = (next, next + 1);
        next += 2;
        let (arcs, epsilon) = if g > 0 {
            ([se, ne, nw, sw], 1)
        } else {
            ([sw, se, ne, nw], -1)
        };
        crossings.push(Crossing { arcs, epsilon });
        current[i] = nw;
        current[i + 1] = ne;
    }
    // Close up: the top end of each strand is its bottom end.
    let rename: std::collections::HashMap<u32, u32> = current
        .iter()
        .enumerate()
        .map(|(s, &top)| (top, s as u32 + 1))
        .collect();
    for x in &mut crossings {
        for a in &mut x.arcs {
            if let Some(&b) = rename.get(a) {
                *a = b;
            }
        }
    }
    let loops = (1..=strands as u32)
        .filter(|&s| crossings.iter().all(|x| !x.arcs.contains(&s)))
        .count();
    LinkDiagram::new(crossings, loops, None)
}
