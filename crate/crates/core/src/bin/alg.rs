//! Command-line front end. JSON goes to stdout, summaries to stderr.
//!
//! Exit status: 0 on success or a positive answer, 1 on a negative answer
//! (identity fails, limit mismatches or diverges, hypothesis violated,
//! harness failures), 2 on malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use structalg::algebra::IdentityVerdict;
use structalg::catalog;
use structalg::classify3::classify;
use structalg::degeneration::{
    compare_limit, degenerate, lemma_degenerate, Comparison, LemmaHypothesis,
};
use structalg::exact::parse_rational;
use structalg::format::{self, AnyTensor};
use structalg::harness::{verify_paper, HarnessConfig};
use structalg::invariants::{fingerprint, obstructions};
use structalg::{Error, Field, IdentityKind, StructureTensor};

#[derive(Parser)]
#[command(
    name = "alg",
    version,
    about = "Exact checks on structure-constant algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an identity on an algebra file.
    Check {
        #[arg(long, value_parser = parse_identity)]
        identity: IdentityKind,
        file: PathBuf,
    },
    /// Print the invariant fingerprint of an algebra.
    Invariants { file: PathBuf },
    /// Limit of a source algebra along a family, optionally compared with a target.
    Degenerate {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Invariant obstructions to a degeneration from source to target.
    Obstruct {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Classify the algebra with generators e1, e2 and products given by a 2x2 matrix.
    Classify3 {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Two-stage scaling degeneration at the triple (i, j, k), one-based.
    Lemma {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
    },
    /// Print a named algebra as an algebra file.
    Catalog {
        name: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Replay every degeneration and invariant claim and report.
    VerifyPaper {
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_identity(s: &str) -> Result<IdentityKind, String> {
    IdentityKind::parse(s).map_err(|e| e.to_string())
}

/// Outcome of a command: the JSON to print and whether the answer was positive.
struct Outcome {
    json: Value,
    positive: bool,
    summary: String,
}

enum Failure {
    Input(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<AnyTensor, Failure> {
    Ok(format::parse_algebra(&read(path)?)?.1)
}

fn load_q(path: &Path) -> Result<StructureTensor<structalg::Rational>, Failure> {
    Ok(load(path)?.into_q()?)
}

fn one_based(at: (usize, usize, usize)) -> Value {
    json!([at.0 + 1, at.1 + 1, at.2 + 1])
}

fn verdict_json<F: Field>(kind: IdentityKind, v: &IdentityVerdict<F>) -> Value {
    match v {
        IdentityVerdict::Holds => json!({"identity": kind.name(), "holds": true}),
        IdentityVerdict::Fails { at, residual } => json!({
            "identity": kind.name(),
            "holds": false,
            "witness": {
                "i": at.0 + 1,
                "j": at.1 + 1,
                "k": at.2.map(|k| k + 1),
                "residual": residual.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }
        }),
    }
}

fn comparison_json(c: &Comparison) -> Value {
    match c {
        Comparison::ExactMatch { permutation } => json!({
            "result": "ExactMatch",
            "permutation": permutation.iter().map(|p| p + 1).collect::<Vec<_>>(),
        }),
        Comparison::FingerprintMatch => json!({"result": "FingerprintMatch"}),
        Comparison::Mismatch {
            at,
            limit_value,
            target_value,
        } => json!({
            "result": "Mismatch",
            "at": one_based(*at),
            "limit_value": limit_value,
            "target_value": target_value,
        }),
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { identity, file } => {
            let (json, holds) = match load(&file)? {
                AnyTensor::Q(t) => {
                    let v = t.check_identity(identity);
                    (verdict_json(identity, &v), v.holds())
                }
                AnyTensor::Qt(t) => {
                    let v = t.check_identity(identity);
                    (verdict_json(identity, &v), v.holds())
                }
            };
            Ok(Outcome {
                summary: format!(
                    "{} {}",
                    identity.name(),
                    if holds { "holds" } else { "fails" }
                ),
                json,
                positive: holds,
            })
        }
        Command::Invariants { file } => {
            let fp = match load(&file)? {
                AnyTensor::Q(t) => fingerprint(&t),
                AnyTensor::Qt(t) => fingerprint(&t),
            };
            Ok(Outcome {
                summary: format!("dim Der = {}, dim rann = {}", fp.dim_der, fp.dim_rann),
                json: serde_json::to_value(&fp).expect("serializes"),
                positive: true,
            })
        }
        Command::Degenerate {
            source,
            family,
            target,
        } => {
            let a = load_q(&source)?;
            let fam = format::parse_family(&read(&family)?)?;
            let target = target.as_deref().map(load_q).transpose()?;
            if let Some(t) = &target {
                if t.dim() != a.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: a.dim(),
                        found: t.dim(),
                    }
                    .into());
                }
            }
            let limit = degenerate(&a, &fam)?;
            let limit_file = format::algebra_file("limit", &limit);
            match target {
                None => Ok(Outcome {
                    summary: format!("limit: {limit}"),
                    json: json!({ "limit": limit_file }),
                    positive: true,
                }),
                Some(t) => {
                    let v = compare_limit(limit, &t);
                    Ok(Outcome {
                        summary: format!("{}: limit {}", v.comparison.name(), v.limit),
                        json: json!({
                            "limit": limit_file,
                            "comparison": comparison_json(&v.comparison),
                            "limit_fingerprint": v.limit_fingerprint,
                        }),
                        positive: v.comparison.is_match(),
                    })
                }
            }
        }
        Command::Obstruct { source, target } => {
            let s = load(&source)?;
            let t = load(&target)?;
            let fp = |x: &AnyTensor| match x {
                AnyTensor::Q(t) => fingerprint(t),
                AnyTensor::Qt(t) => fingerprint(t),
            };
            let report = obstructions(&fp(&s), &fp(&t))?;
            Ok(Outcome {
                summary: format!("{:?}", report.verdict),
                json: serde_json::to_value(&report).expect("serializes"),
                positive: true,
            })
        }
        Command::Classify3 { matrix } => {
            let m = format::parse_matrix2(&matrix)?;
            let c = classify(&m);
            Ok(Outcome {
                summary: c.to_string(),
                json: serde_json::to_value(&c).expect("serializes"),
                positive: true,
            })
        }
        Command::Lemma { source, i, j, k } => {
            let a = load_q(&source)?;
            let n = a.dim();
            for x in [i, j, k] {
                if x == 0 || x > n {
                    return Err(Failure::Input(format!("index {x} outside 1..={n}")));
                }
            }
            let hyp = LemmaHypothesis::read(&a, i - 1, j - 1, k - 1)?;
            let out = lemma_degenerate(&a, &hyp)?;
            Ok(Outcome {
                summary: format!("reaches {}", out.label),
                json: json!({
                    "tuple": hyp.tuple.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "class": out.label,
                    "stage1": format::algebra_file("stage1", &out.stage1),
                    "limit": format::algebra_file("limit", &out.limit),
                }),
                positive: true,
            })
        }
        Command::Catalog { name, dim, alpha } => {
            let alpha = alpha.as_deref().map(parse_rational).transpose()?;
            let t = catalog::make(&name, dim, alpha.as_ref())?;
            Ok(Outcome {
                summary: format!("{name}: {t}"),
                json: serde_json::to_value(format::algebra_file(&name, &t)).expect("serializes"),
                positive: true,
            })
        }
        Command::VerifyPaper { report } => {
            let r = verify_paper(&HarnessConfig::default());
            if let Some(path) = report {
                std::fs::write(&path, r.to_json())
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut summary = format!(
                "{} checks: {} pass, {} fail, {} external citation",
                r.summary.total, r.summary.pass, r.summary.fail, r.summary.external_citation
            );
            for c in r.failed() {
                summary.push_str(&format!("\nFAIL {}: {}", c.id, c.detail));
            }
            Ok(Outcome {
                positive: r.summary.fail == 0,
                json: serde_json::to_value(&r).expect("serializes"),
                summary,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.json).expect("serializes")
            );
            eprintln!("{}", out.summary);
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            println!("{}", json!({"error": "Input", "message": msg}));
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            let mut body = json!({"error": e.kind(), "message": e.to_string()});
            if let Error::LimitDiverges { at: Some(at) } = &e {
                body["at"] = one_based(*at);
            }
            println!("{body}");
            eprintln!("error: {e}");
            ExitCode::from(if e.is_negative_result() { 1 } else { 2 })
        }
    }
}
