//! Quasi-alternating certificates: search, independent verification, and
//! extension of a certified crossing by an alternating rational tangle.
//!
//! A certificate is a binary tree. A leaf is a diagram together with a
//! Reidemeister move sequence that turns it into the crossingless unknot. An
//! internal node is a diagram, a move sequence (possibly empty), a crossing
//! of the simplified diagram, and the certificates of its two resolutions,
//! with `det = det_0 + det_infinity`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::diagram::{CanonicalCode, LinkDiagram};
use crate::error::{Error, Result};
use crate::resolve::{replay, resolve, simplify_traced, Move, Resolution};
use crate::tait::determinant;
use crate::tangle::{Tangle, Wiring};

pub const SCHEMA_VERSION: u32 = 1;

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertNode {
    Leaf {
        pd: LinkDiagram,
        det: u64,
        trace: Vec<Move>,
    },
    Node {
        pd: LinkDiagram,
        det: u64,
        trace: Vec<Move>,
        /// Index into the diagram obtained by replaying `trace`.
        crossing: usize,
        zero: Arc<CertNode>,
        infinity: Arc<CertNode>,
    },
}

impl CertNode {
    pub fn pd(&self) -> &LinkDiagram {
        match self {
            CertNode::Leaf { pd, .. } | CertNode::Node { pd, .. } => pd,
        }
    }

    pub fn det(&self) -> u64 {
        match self {
            CertNode::Leaf { det, .. } | CertNode::Node { det, .. } => *det,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            CertNode::Leaf { .. } => 1,
            CertNode::Node { zero, infinity, .. } => 1 + zero.node_count() + infinity.node_count(),
        }
    }

    /// `(det, det_0, det_infinity)` at every internal node.
    pub fn triads(&self) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            if let CertNode::Node { det, zero, infinity, .. } = n {
                out.push((*det, zero.det(), infinity.det()));
                stack.push(zero);
                stack.push(infinity);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QACertificate {
    pub schema_version: u32,
    pub root: Arc<CertNode>,
}

impl QACertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    BudgetExhausted,
    SearchExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Certified(QACertificate),
    Unknown { reason: UnknownReason, nodes: u64 },
}

impl Outcome {
    pub fn certificate(&self) -> Option<&QACertificate> {
        match self {
            Outcome::Certified(c) => Some(c),
            Outcome::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub budget: u64,
    pub memoize: bool,
    /// Explore the two resolutions of a crossing on the rayon pool.
    pub parallel: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            budget: DEFAULT_BUDGET,
            memoize: true,
            parallel: false,
        }
    }
}

struct Search {
    options: CertifyOptions,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    memo: Mutex<HashMap<CanonicalCode, Option<Arc<CertNode>>>>,
}

struct Exhausted;

type Found = std::result::Result<Option<Arc<CertNode>>, Exhausted>;

impl Search {
    fn run(&self, d: &LinkDiagram) -> Found {
        if self.exhausted.load(Ordering::Relaxed) {
            return Err(Exhausted);
        }
        let key = self.options.memoize.then(|| d.canonical_code());
        if let Some(k) = &key {
            if let Some(hit) = self.memo.lock().expect("memo lock").get(k) {
                return Ok(hit.clone());
            }
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.options.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return Err(Exhausted);
        }
        let found = self.expand(d)?;
        if let Some(k) = key {
            self.memo.lock().expect("memo lock").insert(k, found.clone());
        }
        Ok(found)
    }

    fn expand(&self, d: &LinkDiagram) -> Found {
        let det = determinant(d);
        if det == 0 {
            return Ok(None);
        }
        let simplified = simplify_traced(d);
        let r = simplified.result;
        if r.crossing_count() == 0 {
            let leaf = (r.component_count() == 1).then(|| {
                Arc::new(CertNode::Leaf {
                    pd: d.clone(),
                    det,
                    trace: simplified.trace,
                })
            });
            return Ok(leaf);
        }
        // Crossings where determinant additivity holds, most balanced first.
        let mut candidates: Vec<(u64, usize, LinkDiagram, LinkDiagram)> = Vec::new();
        for c in 0..r.crossing_count() {
            let z = resolve(&r, c, Resolution::Zero).expect("crossing exists");
            let i = resolve(&r, c, Resolution::Infinity).expect("crossing exists");
            let (dz, di) = (determinant(&z), determinant(&i));
            if dz >= 1 && di >= 1 && dz + di == det {
                candidates.push((dz.min(di), c, z, i));
            }
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c, z, i) in candidates {
            let (cz, ci) = if self.options.parallel {
                let (a, b) = rayon::join(|| self.run(&z), || self.run(&i));
                (a?, b?)
            } else {
                let Some(cz) = self.run(&z)? else { continue };
                (Some(cz), self.run(&i)?)
            };
            if let (Some(zero), Some(infinity)) = (cz, ci) {
                return Ok(Some(Arc::new(CertNode::Node {
                    pd: d.clone(),
                    det,
                    trace: simplified.trace,
                    crossing: c,
                    zero,
                    infinity,
                })));
            }
        }
        Ok(None)
    }
}

/// Searches for a certificate that `d` is quasi-alternating. Never claims
/// the opposite: failure is `Unknown`.
pub fn certify(d: &LinkDiagram, options: CertifyOptions) -> Result<Outcome> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    if determinant(d) == 0 {
        return Err(Error::ZeroDeterminant);
    }
    let search = Search {
        options,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        memo: Mutex::new(HashMap::new()),
    };
    let result = search.run(d);
    let nodes = search.nodes.load(Ordering::Relaxed).min(options.budget);
    Ok(match result {
        Ok(Some(root)) => Outcome::Certified(QACertificate {
            schema_version: SCHEMA_VERSION,
            root,
        }),
        Ok(None) => Outcome::Unknown {
            reason: UnknownReason::SearchExhausted,
            nodes,
        },
        Err(Exhausted) => Outcome::Unknown {
            reason: UnknownReason::BudgetExhausted,
            nodes,
        },
    })
}

/// Re-checks a certificate from scratch: every determinant is recomputed,
/// every move sequence replayed, and every child compared with the actual
/// resolution up to relabeling.
pub fn verify(cert: &QACertificate) -> bool {
    check_certificate(cert).is_ok()
}

/// Like [`verify`], naming the first failed check.
pub fn check_certificate(cert: &QACertificate) -> std::result::Result<(), String> {
    if cert.schema_version != SCHEMA_VERSION {
        return Err(format!("unsupported schema version {}", cert.schema_version));
    }
    check_node(&cert.root)
}

fn check_node(node: &CertNode) -> std::result::Result<(), String> {
    let pd = node.pd();
    let actual = determinant(pd);
    if actual != node.det() {
        return Err(format!("recorded det {} but diagram has det {actual}", node.det()));
    }
    if actual < 1 {
        return Err("determinant is zero".into());
    }
    match node {
        CertNode::Leaf { trace, .. } => {
            let end = replay(pd, trace).map_err(|e| e.to_string())?;
            if end.crossing_count() != 0 || end.component_count() != 1 {
                return Err(format!("leaf trace ends at\n{end}"));
            }
            Ok(())
        }
        CertNode::Node {
            trace,
            crossing,
            zero,
            infinity,
            det,
            ..
        } => {
            let r = replay(pd, trace).map_err(|e| e.to_string())?;
            for (child, kind) in [(zero, Resolution::Zero), (infinity, Resolution::Infinity)] {
                let expected = resolve(&r, *crossing, kind).map_err(|e| e.to_string())?;
                if expected.canonical_code() != child.pd().canonical_code() {
                    return Err(format!("{kind:?} child is not the resolution at crossing {crossing}"));
                }
            }
            if zero.det() + infinity.det() != *det {
                return Err(format!(
                    "det {det} != {} + {}",
                    zero.det(),
                    infinity.det()
                ));
            }
            check_node(zero)?;
            check_node(infinity)
        }
    }
}

/// An alternating rational tangle `C(a_1, ..., a_m)` to put in place of the
/// crossing `host`, whose sign is `epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalTangleSpec {
    pub coefficients: Vec<i64>,
    pub host: usize,
    pub epsilon: i8,
}

impl RationalTangleSpec {
    /// Checks `epsilon * a_i >= 1` for every coefficient.
    pub fn check(&self) -> Result<()> {
        if self.coefficients.is_empty() {
            return Err(Error::BadParameters("a rational tangle needs coefficients".into()));
        }
        for (i, &a) in self.coefficients.iter().enumerate() {
            let value = self.epsilon as i64 * a;
            if value < 1 {
                return Err(Error::NotExtending { index: i + 1, value });
            }
        }
        Ok(())
    }
}

/// Replaces the host crossing by the rational tangle. Its crossings come
/// last in the result, after the remaining crossings of `d` in order.
pub fn extend_tangle(d: &LinkDiagram, spec: &RationalTangleSpec) -> Result<LinkDiagram> {
    let host = d
        .crossings()
        .get(spec.host)
        .ok_or(Error::NoSuchCrossing(spec.host))?;
    if host.epsilon != spec.epsilon {
        return Err(Error::BadParameters(format!(
            "crossing {} has epsilon {}, spec says {}",
            spec.host, host.epsilon, spec.epsilon
        )));
    }
    spec.check()?;
    let (mut wiring, ports) = Wiring::with_hole(d, spec.host);
    wiring.insert(Tangle::rational_from(Tangle::zero(), &spec.coefficients), ports);
    wiring.into_diagram()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub diagram: LinkDiagram,
    pub tangle_crossings: Vec<usize>,
    /// The certificate's root resolves the host crossing, so the extended
    /// link is quasi-alternating at every tangle crossing.
    pub qa_at_tangle: bool,
}

/// [`extend_tangle`] on the root diagram of a certificate.
pub fn extend_certified(cert: &QACertificate, spec: &RationalTangleSpec) -> Result<Extension> {
    let d = cert.root.pd();
    let diagram = extend_tangle(d, spec)?;
    let first = d.crossing_count() - 1;
    let tangle_crossings = (first..diagram.crossing_count()).collect();
    let qa_at_tangle = matches!(
        &*cert.root,
        CertNode::Node { trace, crossing, .. } if trace.is_empty() && *crossing == spec.host
    );
    Ok(Extension {
        diagram,
        tangle_crossings,
        qa_at_tangle,
    })
}
