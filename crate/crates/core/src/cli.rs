//! The `qalink` command line. Every run prints one JSON report on standard
//! output; diagnostics go to standard error.
//!
//! Exit codes: 0 success, 1 no certificate or failed verification, 2 bad
//! input or usage.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::diagram::{parse_pd, LinkDiagram};
use crate::error::Error;
use crate::families::{
    b_closed, c_closed, cf_eval, det_matrix, pretzel, torus_2_2k, two_bridge, ContinuedFraction,
    DetMatrixSpec, MatrixKind,
};
use crate::qa::{certify, check_certificate, CertifyOptions, Outcome, QACertificate, DEFAULT_BUDGET};
use crate::surgery::{branched_cover_presentation, curve_presentation, h1_order, necklace, SurgeryDiagram};
use crate::tait::determinant;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the input files, in order, or of the arguments when the
    /// command reads no file.
    pub input_digest: String,
    pub result: Value,
    pub timing_ms: u64,
    pub version: String,
}

#[derive(Parser)]
#[command(name = "qalink", version, about = "Quasi-alternating certificates, Goeritz determinants and branched double covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of a PD diagram.
    Det { pd: PathBuf },
    /// Search for a quasi-alternating certificate.
    Certify {
        pd: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; more than 1 explores both resolutions in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Re-check a certificate file.
    Verify { cert: PathBuf },
    /// Generate a family member.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Surgery presentation of the branched double cover.
    Cover {
        pd: PathBuf,
        #[arg(long, value_enum, default_value_t = CoverForm::Clasp)]
        form: CoverForm,
    },
    /// Order of H_1 of a surgery diagram.
    H1 { surgery: PathBuf },
    /// Compare the closed form of b or c with elimination over a grid.
    GridCheck {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, default_value_t = 4)]
        pmax: i64,
        #[arg(long, default_value_t = 4)]
        qmax: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Pretzel link P(n_1, ..., n_k).
    Pretzel {
        #[arg(required = true, num_args = 2.., allow_negative_numbers = true)]
        twists: Vec<i64>,
    },
    /// Torus link T(2, 2k).
    Torus2 { k: i64 },
    /// Two-bridge link of a continued fraction [a_1, ..., a_m].
    Twobridge {
        #[arg(required = true, allow_negative_numbers = true)]
        terms: Vec<i64>,
    },
    /// Necklace surgery diagram T_{n,m}(1/q_j; 1/s_j).
    Necklace {
        n: usize,
        m: usize,
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        q: Vec<i64>,
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        s: Vec<i64>,
    },
    /// The matrices A, B(p,q,r), C(p,q,r) and their determinants.
    #[command(name = "matBC")]
    MatBc { p: i64, q: usize, r: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverForm {
    Clasp,
    Curves,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    B,
    C,
}

enum Failure {
    /// Ran fine, but the answer is negative or unknown.
    Negative(Value),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Inputs {
    digest: Sha256,
    used: bool,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.digest.update(text.as_bytes());
        self.used = true;
        Ok(text)
    }

    fn diagram(&mut self, path: &Path) -> Result<LinkDiagram, Failure> {
        let text = self.read(path)?;
        parse_pd(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<W: Write, E: Write>(argv: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs {
        digest: Sha256::new(),
        used: false,
    };
    let outcome = execute(cli.command, &mut inputs, err);
    if !inputs.used {
        for a in argv.iter().skip(1) {
            inputs.digest.update(a.as_bytes());
            inputs.digest.update([0]);
        }
    }
    let (result, code) = match outcome {
        Ok(v) => (v, 0),
        Err(Failure::Negative(v)) => (v, 1),
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            (json!({ "error": msg }), 2)
        }
    };
    let report = RunReport {
        command: argv.iter().skip(1).cloned().collect(),
        input_digest: hex(&inputs.digest.finalize()),
        result,
        timing_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    code
}

/// Runs with the process arguments and standard streams.
pub fn run_main() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    run_with(&argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn execute<E: Write>(command: Command, inputs: &mut Inputs, err: &mut E) -> Result<Value, Failure> {
    match command {
        Command::Det { pd } => {
            let d = inputs.diagram(&pd)?;
            Ok(json!({ "det": determinant(&d) }))
        }
        Command::Certify { pd, budget, out, jobs } => {
            let d = inputs.diagram(&pd)?;
            let options = CertifyOptions {
                budget,
                memoize: true,
                parallel: jobs > 1,
            };
            let outcome = if jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| Failure::Input(e.to_string()))?;
                pool.install(|| certify(&d, options))?
            } else {
                certify(&d, options)?
            };
            match outcome {
                Outcome::Certified(cert) => {
                    let _ = writeln!(
                        err,
                        "certified: det {} with {} certificate nodes",
                        cert.root.det(),
                        cert.root.node_count()
                    );
                    if let Some(path) = out {
                        std::fs::write(&path, cert.to_json())
                            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    }
                    Ok(json!({
                        "status": "certified",
                        "nodes": cert.root.node_count(),
                        "certificate": cert,
                    }))
                }
                Outcome::Unknown { reason, nodes } => {
                    let _ = writeln!(err, "no certificate found ({reason:?} after {nodes} nodes)");
                    Err(Failure::Negative(json!({
                        "status": "unknown",
                        "reason": reason,
                        "nodes": nodes,
                    })))
                }
            }
        }
        Command::Verify { cert } => {
            let text = inputs.read(&cert)?;
            let cert = QACertificate::from_json(&text)?;
            match check_certificate(&cert) {
                Ok(()) => Ok(json!({ "valid": true })),
                Err(reason) => {
                    let _ = writeln!(err, "certificate rejected: {reason}");
                    Err(Failure::Negative(json!({ "valid": false, "reason": reason })))
                }
            }
        }
        Command::Family { family } => run_family(family),
        Command::Cover { pd, form } => {
            let d = inputs.diagram(&pd)?;
            let s = match form {
                CoverForm::Clasp => branched_cover_presentation(&d)?,
                CoverForm::Curves => curve_presentation(&d)?,
            };
            Ok(json!({ "surgery": s, "h1": h1_order(&s) }))
        }
        Command::H1 { surgery } => {
            let text = inputs.read(&surgery)?;
            let s: SurgeryDiagram =
                serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(json!({ "h1": h1_order(&s) }))
        }
        Command::GridCheck { which, pmax, qmax, rmax } => {
            if pmax < 1 {
                return Err(Failure::Input("--pmax must be at least 1".into()));
            }
            let (kind, closed): (MatrixKind, fn(i64, i64, i64) -> i64) = match which {
                Which::B => (MatrixKind::B, b_closed),
                Which::C => (MatrixKind::C, c_closed),
            };
            let mut checked = 0;
            let mut mismatches = Vec::new();
            for p in 1..=pmax {
                for q in 0..=qmax {
                    for r in 0..=rmax {
                        let m = det_matrix(&DetMatrixSpec { kind, p, q, r })?;
                        let det = m.determinant();
                        let expected = closed(p, q as i64, r as i64);
                        checked += 1;
                        if det != expected.into() {
                            mismatches.push(json!({ "p": p, "q": q, "r": r, "det": det.to_string(), "closed": expected }));
                        }
                    }
                }
            }
            let payload = json!({ "checked": checked, "mismatches": mismatches.len(), "failures": mismatches });
            if mismatches.is_empty() {
                Ok(payload)
            } else {
                Err(Failure::Negative(payload))
            }
        }
    }
}

fn run_family(family: Family) -> Result<Value, Failure> {
    match family {
        Family::Pretzel { twists } => {
            let d = pretzel(&twists)?;
            Ok(json!({ "pd": d.to_pd_string(), "crossings": d.crossing_count() }))
        }
        Family::Torus2 { k } => {
            let d = torus_2_2k(k)?;
            Ok(json!({ "pd": d.to_pd_string(), "crossings": d.crossing_count() }))
        }
        Family::Twobridge { terms } => {
            let cf = ContinuedFraction::new(terms)?;
            let (p, q) = cf_eval(&cf)?;
            let d = two_bridge(&cf)?;
            Ok(json!({ "pd": d.to_pd_string(), "p": p, "q": q, "crossings": d.crossing_count() }))
        }
        Family::Necklace { n, m, q, s } => {
            let s = necklace(n, m, &q, &s)?;
            Ok(json!({ "surgery": s, "h1": h1_order(&s) }))
        }
        Family::MatBc { p, q, r } => {
            let mut out = serde_json::Map::new();
            for (name, kind) in [("A", MatrixKind::A), ("B", MatrixKind::B), ("C", MatrixKind::C)] {
                let m = det_matrix(&DetMatrixSpec { kind, p, q, r })?;
                out.insert(
                    name.to_string(),
                    json!({ "matrix": m, "det": m.determinant().to_string() }),
                );
            }
            out.insert("b_closed".into(), json!(b_closed(p, q as i64, r as i64)));
            out.insert("c_closed".into(), json!(c_closed(p, q as i64, r as i64)));
            Ok(Value::Object(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, Value, String) {
        let argv: Vec<String> = std::iter::once("qalink").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        let report: RunReport = serde_json::from_slice(&out).unwrap_or_else(|_| RunReport {
            command: vec![],
            input_digest: String::new(),
            result: Value::Null,
            timing_ms: 0,
            version: String::new(),
        });
        (code, report.result, String::from_utf8(err).unwrap())
    }

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    const TREFOIL: &str = "X[1,4,2,5];eps=+1\nX[3,6,4,1];eps=+1\nX[5,2,6,3];eps=+1\n";

    #[test]
    fn det_of_trefoil() {
        let dir = tempfile::tempdir().unwrap();
        let pd = write(&dir, "trefoil.pd", TREFOIL);
        let (code, result, _) = run(&["det", &pd]);
        assert_eq!(code, 0);
        assert_eq!(result, json!({ "det": 3 }));
    }

    #[test]
    fn certify_then_verify() {
        let dir = tempfile::tempdir().unwrap();
        let unknot = write(&dir, "unknot.pd", "");
        let (code, result, _) = run(&["certify", &unknot]);
        assert_eq!(code, 0);
        assert_eq!(result["nodes"], json!(1));

        let pd = write(&dir, "trefoil.pd", TREFOIL);
        let cert = dir.path().join("cert.json").to_string_lossy().into_owned();
        let (code, _, _) = run(&["certify", &pd, "--out", &cert, "--jobs", "2"]);
        assert_eq!(code, 0);
        let (code, result, _) = run(&["verify", &cert]);
        assert_eq!((code, result), (0, json!({ "valid": true })));

        let tampered = std::fs::read_to_string(&cert).unwrap().replacen("\"det\": 3", "\"det\": 4", 1);
        let bad = write(&dir, "bad.json", &tampered);
        let (code, result, _) = run(&["verify", &bad]);
        assert_eq!(code, 1);
        assert_eq!(result["valid"], json!(false));
    }

    #[test]
    fn unknown_exits_with_one() {
        let dir = tempfile::tempdir().unwrap();
        let k = crate::tangle::braid_closure(3, &[1, 2, 1, 2, 1, 2]).unwrap();
        let pd = write(&dir, "k11.pd", &k.to_pd_string());
        let (code, result, _) = run(&["certify", &pd, "--budget", "500"]);
        assert_eq!(code, 1);
        assert_eq!(result["status"], json!("unknown"));
    }

    #[test]
    fn input_errors_exit_with_two() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write(&dir, "bad.pd", "X[1,2,3]");
        assert_eq!(run(&["det", &bad]).0, 2);
        assert_eq!(run(&["det", "/nonexistent.pd"]).0, 2);
        let (code, _, err) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("frobnicate"));
    }

    #[test]
    fn grid_check() {
        let (code, result, _) = run(&["grid-check", "b", "--pmax", "4", "--qmax", "4", "--rmax", "4"]);
        assert_eq!(code, 0);
        assert_eq!(result["mismatches"], json!(0));
        assert_eq!(result["checked"], json!(100));
        assert_eq!(run(&["grid-check", "c"]).1["mismatches"], json!(0));
    }

    #[test]
    fn families_and_covers() {
        let (_, result, _) = run(&["family", "twobridge", "-2", "2"]);
        assert_eq!((result["p"].clone(), result["q"].clone()), (json!(3), json!(2)));
        let (_, result, _) = run(&["family", "pretzel", "2", "2", "2"]);
        let dir = tempfile::tempdir().unwrap();
        let pd = write(&dir, "p222.pd", result["pd"].as_str().unwrap());
        assert_eq!(run(&["det", &pd]).1, json!({ "det": 12 }));

        let (code, cover, _) = run(&["cover", &pd]);
        assert_eq!(code, 0);
        assert_eq!(cover["h1"], json!(12));
        let surgery = write(&dir, "s.json", &cover["surgery"].to_string());
        assert_eq!(run(&["h1", &surgery]).1, json!({ "h1": 12 }));
        assert_eq!(run(&["cover", &pd, "--form", "curves"]).1["h1"], json!(12));

        let (_, neck, _) = run(&["family", "necklace", "2", "1", "--q", "1", "--s", "1"]);
        assert_eq!(neck["h1"], json!(3));
        let (_, mats, _) = run(&["family", "matBC", "2", "1", "1"]);
        assert_eq!(mats["B"]["det"], json!("44"));
        assert_eq!(mats["C"]["det"], json!("33"));
        assert_eq!(mats["A"]["det"], json!("77"));
        assert_eq!(run(&["family", "torus2", "2"]).0, 0);
    }
}
