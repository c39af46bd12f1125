//! Crossing resolutions and Reidemeister simplification.
//!
//! For a crossing `(a, b, c, d)` with `epsilon = +1` the 0-resolution joins
//! `a-d` and `b-c` and the infinity-resolution joins `a-b` and `c-d`; for
//! `epsilon = -1` the two are exchanged. In the tangle frame of
//! [`crate::tangle`] the 0-resolution is always the horizontal smoothing.
//!
//! Moves are addressed by a face corner `(crossing, position)`: the monogon,
//! bigon or triangle face containing that corner.

use serde::{Deserialize, Serialize};

use crate::diagram::{Corner, Crossing, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Zero,
    Infinity,
}

/// The arc pairs joined by smoothing a crossing.
pub fn smoothing_pairs(x: &Crossing, r: Resolution) -> [(u32, u32); 2] {
    let [a, b, c, d] = x.arcs;
    let horizontal = [(a, d), (b, c)];
    let vertical = [(a, b), (c, d)];
    match (r, x.epsilon > 0) {
        (Resolution::Zero, true) | (Resolution::Infinity, false) => horizontal,
        _ => vertical,
    }
}

/// Smooths crossing `c`; the result has one crossing fewer.
pub fn resolve(d: &LinkDiagram, c: usize, r: Resolution) -> Result<LinkDiagram> {
    let x = d.crossings().get(c).ok_or(Error::NoSuchCrossing(c))?;
    Ok(d.splice(&[c], &smoothing_pairs(x, r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "UPPERCASE")]
pub enum Move {
    /// Removes the kink whose monogon face has this corner.
    R1 { crossing: usize, position: usize },
    /// Removes the two crossings of this bigon face.
    R2 { crossing: usize, position: usize },
    /// Slides a strand across the opposite crossing of this triangle face.
    R3 { crossing: usize, position: usize },
}

impl Move {
    fn corner(&self) -> Corner {
        match *self {
            Move::R1 { crossing, position }
            | Move::R2 { crossing, position }
            | Move::R3 { crossing, position } => (crossing, position),
        }
    }
}

fn at(d: &LinkDiagram, (c, p): Corner, k: usize) -> u32 {
    d.crossings()[c].arcs[(p + k) % 4]
}

/// Walks the face containing `corner`, giving up after `limit` corners.
fn face_from(partner: &[usize], corner: Corner, limit: usize) -> Option<Vec<Corner>> {
    let mut out = vec![corner];
    let mut cur = corner;
    loop {
        let far = partner[4 * cur.0 + (cur.1 + 1) % 4];
        cur = (far / 4, far % 4);
        if cur == corner {
            return Some(out);
        }
        if out.len() == limit {
            return None;
        }
        out.push(cur);
    }
}

fn illegal(mv: &Move, why: &str) -> Error {
    Error::IllegalMove(format!("{mv:?}: {why}"))
}

/// Applies a move after checking that it is legal.
pub fn apply_move(d: &LinkDiagram, mv: &Move) -> Result<LinkDiagram> {
    let (c, p) = mv.corner();
    if c >= d.crossing_count() || p > 3 {
        return Err(illegal(mv, "no such corner"));
    }
    let partner = d.partners();
    match mv {
        Move::R1 { .. } => {
            if face_from(&partner, (c, p), 1).is_none() {
                return Err(illegal(mv, "corner is not on a monogon"));
            }
            let x = at(d, (c, p), 0);
            let (y, z) = (at(d, (c, p), 2), at(d, (c, p), 3));
            Ok(d.splice(&[c], &[(x, y), (y, z)]))
        }
        Move::R2 { .. } => {
            let face = face_from(&partner, (c, p), 2)
                .filter(|f| f.len() == 2 && f[0].0 != f[1].0)
                .ok_or_else(|| illegal(mv, "corner is not on a bigon"))?;
            let (k1, k2) = (face[0], face[1]);
            if Crossing::is_over(k1.1 + 1) != Crossing::is_over(k2.1) {
                return Err(illegal(mv, "bigon is alternating"));
            }
            let e1 = at(d, k1, 1);
            let e2 = at(d, k1, 0);
            let joins = [
                (at(d, k1, 3), e1),
                (e1, at(d, k2, 2)),
                (at(d, k1, 2), e2),
                (e2, at(d, k2, 3)),
            ];
            Ok(d.splice(&[k1.0, k2.0], &joins))
        }
        Move::R3 { .. } => {
            let face = face_from(&partner, (c, p), 3)
                .filter(|f| f.len() == 3 && f[0].0 != f[1].0 && f[1].0 != f[2].0 && f[0].0 != f[2].0)
                .ok_or_else(|| illegal(mv, "corner is not on a triangle"))?;
            let one_sided = (0..3).any(|i| {
                Crossing::is_over(face[i].1 + 1) == Crossing::is_over(face[(i + 1) % 3].1)
            });
            if !one_sided {
                return Err(illegal(mv, "triangle is alternating"));
            }
            // Side i runs from corner i to corner i + 1; at corner i the
            // strand of side i arrives along g and the strand of side i - 1
            // leaves along f.
            let e: Vec<u32> = (0..3).map(|i| at(d, face[i], 1)).collect();
            let f: Vec<u32> = (0..3).map(|i| at(d, face[i], 2)).collect();
            let g: Vec<u32> = (0..3).map(|i| at(d, face[i], 3)).collect();
            let mut crossings = d.crossings().to_vec();
            for i in 0..3 {
                let j = (i + 1) % 3;
                let (cj, pj) = face[j];
                let new = [g[i], f[(i + 2) % 3], e[i], e[j]];
                for (k, label) in new.into_iter().enumerate() {
                    crossings[cj].arcs[(pj + k) % 4] = label;
                }
            }
            LinkDiagram::new(crossings, d.free_loops(), d.marked_edge())
        }
    }
}

/// Every legal move, at most one per monogon, bigon or triangle face.
pub fn legal_moves(d: &LinkDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    for face in d.face_corners() {
        let (crossing, position) = face[0];
        let mv = match face.len() {
            1 => Move::R1 { crossing, position },
            2 => Move::R2 { crossing, position },
            3 => Move::R3 { crossing, position },
            _ => continue,
        };
        if matches!(mv, Move::R1 { .. }) || apply_move(d, &mv).is_ok() {
            out.push(mv);
        }
    }
    out
}

fn reducing_move(d: &LinkDiagram) -> Option<Move> {
    let moves = legal_moves(d);
    moves
        .iter()
        .find(|m| matches!(m, Move::R1 { .. }))
        .or_else(|| moves.iter().find(|m| matches!(m, Move::R2 { .. })))
        .copied()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplification {
    pub result: LinkDiagram,
    pub trace: Vec<Move>,
}

/// Removes crossings by R1 and R2 moves, using an R3 move only when it makes
/// an R1 or R2 move available. At most `3n` R3 moves are made.
pub fn simplify_traced(d: &LinkDiagram) -> Simplification {
    let mut cur = d.clone();
    let mut trace = Vec::new();
    let mut r3_left = 3 * d.crossing_count();
    loop {
        if let Some(mv) = reducing_move(&cur) {
            cur = apply_move(&cur, &mv).expect("legal moves apply");
            trace.push(mv);
            continue;
        }
        if r3_left == 0 {
            break;
        }
        let slide = legal_moves(&cur).into_iter().find_map(|mv| {
            if !matches!(mv, Move::R3 { .. }) {
                return None;
            }
            let next = apply_move(&cur, &mv).ok()?;
            let follow = reducing_move(&next)?;
            Some((mv, next, follow))
        });
        let Some((mv, next, follow)) = slide else { break };
        r3_left -= 1;
        trace.push(mv);
        cur = apply_move(&next, &follow).expect("legal moves apply");
        trace.push(follow);
    }
    Simplification { result: cur, trace }
}

pub fn simplify(d: &LinkDiagram) -> LinkDiagram {
    simplify_traced(d).result
}

/// Replays a move sequence, checking each move.
pub fn replay(d: &LinkDiagram, trace: &[Move]) -> Result<LinkDiagram> {
    trace.iter().try_fold(d.clone(), |cur, mv| apply_move(&cur, mv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnknotAnswer {
    Yes,
    Unknown,
}

/// Sound but incomplete: `Yes` only when simplification reaches the
/// crossingless unknot.
pub fn is_unknot(d: &LinkDiagram) -> UnknotAnswer {
    let s = simplify(d);
    if s.crossing_count() == 0 && s.component_count() == 1 {
        UnknotAnswer::Yes
    } else {
        UnknotAnswer::Unknown
    }
}
