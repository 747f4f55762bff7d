//! Replays every checkable degeneration, invariant and classification claim
//! and collects the outcomes into a report.
//!
//! Checks are independent jobs with their own seeded generators, run in
//! parallel and reported in a fixed order, so the report is deterministic.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{IdentityKind, IdentityVerdict, Side, StructureTensor};
use crate::catalog::{self, AlphaParam, ENTRIES};
use crate::classify3::{classify_core, TwoGenClass};
use crate::degeneration::{
    lemma_degenerate, verify_degeneration, Comparison, Excluded, LemmaHypothesis,
};
use crate::error::{Error, Result};
use crate::exact::{format_rational, rat, Rational};
use crate::invariants::{fingerprint, obstructions, Fingerprint};
use crate::replay::{self, Case, ExampleFamily};

type T = StructureTensor<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    ExternalCitation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub paper_location: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub external_citation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl HarnessReport {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Signature of the catalog constructor, replaceable for mutation tests.
pub type CatalogFn = fn(&str, usize, Option<&Rational>) -> Result<T>;

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Random instances per proof case and dimension.
    pub case_instances: usize,
    pub lemma_samples: usize,
    /// Samples per excluded family.
    pub excluded_samples: usize,
    pub phi_samples: usize,
    pub catalog: CatalogFn,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 20_240_601,
            case_instances: 25,
            lemma_samples: 500,
            excluded_samples: 200,
            phi_samples: 100,
            catalog: catalog::make,
        }
    }
}

/// Parameters checked for each parametrized entry.
pub fn alphas_for(name: &str) -> Vec<Rational> {
    match name {
        "L4" | "L4_thm3" => vec![rat(0, 1), rat(1, 1), rat(1, 4), rat(2, 1)],
        _ => catalog::sample_alpha(name).into_iter().collect(),
    }
}

fn label(name: &str, alpha: Option<&Rational>) -> String {
    match alpha {
        Some(a) => format!("{name}({})", format_rational(a)),
        None => name.to_string(),
    }
}

fn check(id: impl Into<String>, loc: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        id: id.into(),
        paper_location: loc.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn errored(id: impl Into<String>, loc: &str, e: &Error) -> Check {
    check(id, loc, false, format!("error: {e}"))
}

type Job = Box<dyn Fn(&HarnessConfig) -> Vec<Check> + Send + Sync>;

/// Runs all checks.
pub fn verify_paper(config: &HarnessConfig) -> HarnessReport {
    let checks: Vec<Check> = jobs()
        .par_iter()
        .map(|job| job(config))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        total: checks.len(),
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        external_citation: count(Status::ExternalCitation),
    };
    debug_assert_eq!(
        checks.iter().map(|c| &c.id).collect::<BTreeSet<_>>().len(),
        checks.len(),
        "check ids are unique"
    );
    HarnessReport { checks, summary }
}

fn seeded(config: &HarnessConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

fn jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![
        Box::new(identity_checks),
        Box::new(example_checks),
        Box::new(lemma_random_check),
        Box::new(lemma_excluded_checks),
        Box::new(table_checks),
        Box::new(separation_checks),
    ];
    for (ci, case) in Case::ALL.into_iter().enumerate() {
        for n in 5..=7 {
            jobs.push(Box::new(move |c| {
                vec![case_check(c, case, n, (ci * 16 + n) as u64)]
            }));
        }
    }
    jobs.push(Box::new(phi_checks));
    jobs
}

const DIM: usize = 5;

fn identity_checks(config: &HarnessConfig) -> Vec<Check> {
    let loc = "Theorems 1-4 tables; Remark 1";
    let mut out = Vec::new();
    for e in ENTRIES {
        let alphas: Vec<Option<Rational>> = match e.alpha {
            AlphaParam::None => vec![None],
            AlphaParam::Required => alphas_for(e.name).into_iter().map(Some).collect(),
        };
        for a in alphas {
            let id = format!("a.identity.{}", label(e.name, a.as_ref()));
            let t = match (config.catalog)(e.name, DIM, a.as_ref()) {
                Ok(t) => t,
                Err(err) => {
                    out.push(errored(id, loc, &err));
                    continue;
                }
            };
            out.push(match e.asserted {
                Some(kind) => {
                    let v = t.check_identity(kind);
                    let detail = match &v {
                        IdentityVerdict::Holds => format!("{} holds", kind.name()),
                        IdentityVerdict::Fails { at, residual } => format!(
                            "{} fails at ({}, {}{}) with residual [{}]",
                            kind.name(),
                            at.0 + 1,
                            at.1 + 1,
                            at.2.map_or(String::new(), |k| format!(", {}", k + 1)),
                            residual
                                .iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                    };
                    check(id, loc, v.holds(), detail)
                }
                None => {
                    let flags: Vec<String> = IdentityKind::ALL
                        .iter()
                        .map(|k| format!("{}={}", k.name(), t.satisfies(*k)))
                        .collect();
                    check(
                        id,
                        loc,
                        true,
                        format!("no identity asserted; {}", flags.join(", ")),
                    )
                }
            });
        }
    }
    out
}

/// Pass when the limit matches the claimed target, either exactly up to a
/// relabeling or by fingerprint plus the class of its three-dimensional
/// core, and the invariants allow the degeneration.
fn example_check(id: &str, ex: &ExampleFamily) -> Check {
    let loc = "Example 1";
    let v = match verify_degeneration(&ex.source, &ex.family, &ex.target) {
        Ok(v) => v,
        Err(e) => return errored(id, loc, &e),
    };
    let core = classify_core(&v.limit);
    let matched = match &v.comparison {
        Comparison::ExactMatch { .. } => true,
        Comparison::FingerprintMatch => core.as_ref() == Some(&ex.core),
        Comparison::Mismatch { .. } => false,
    };
    let obstruction = obstructions(&fingerprint(&ex.source), &v.limit_fingerprint)
        .map(|r| r.is_obstructed())
        .unwrap_or(true);
    check(
        id,
        loc,
        matched && !obstruction,
        format!(
            "{}; core class {}; limit `{}`; source-to-limit obstructed: {obstruction}",
            v.comparison.describe(),
            core.map_or_else(|| "none".into(), |c| c.to_string()),
            v.limit
        ),
    )
}

fn example_checks(_: &HarnessConfig) -> Vec<Check> {
    let mut out = vec![
        example_check("b.example1.family1", &replay::example1_family1()),
        example_check("b.example1.family2", &replay::example1_family2()),
        example_check("b.example1.family3", &replay::example1_family3(6)),
    ];
    out.push(match replay::example1_family3_rescaled(6) {
        Ok(ex) => example_check("b.example1.family3.rescaled", &ex),
        Err(e) => errored("b.example1.family3.rescaled", "Example 1", &e),
    });
    out
}

fn lemma_random_check(config: &HarnessConfig) -> Vec<Check> {
    let mut rng = seeded(config, 1);
    let (mut l4, mut l5) = (0usize, 0usize);
    let mut bad = Vec::new();
    for s in 0..config.lemma_samples {
        let (a, hyp) = replay::lemma_sample(DIM, &mut rng);
        match lemma_degenerate(&a, &hyp) {
            Ok(out) => match out.label {
                TwoGenClass::L4(_) => l4 += 1,
                TwoGenClass::L5 => l5 += 1,
                other => bad.push(format!("sample {s}: {other}")),
            },
            Err(e) => bad.push(format!("sample {s}: {e}")),
        }
    }
    vec![check(
        format!("c.lemma.random{}", config.lemma_samples),
        "Lemma 1",
        bad.is_empty(),
        format!(
            "{l4} reached L4, {l5} reached L5, {} other{}",
            bad.len(),
            bad.first()
                .map_or(String::new(), |b| format!("; first: {b}"))
        ),
    )]
}

fn lemma_excluded_checks(config: &HarnessConfig) -> Vec<Check> {
    let mut rng = seeded(config, 2);
    let mut out = Vec::new();
    for (name, fam) in [
        ("antisymmetric", Excluded::Antisymmetric),
        ("rank-one", Excluded::RankOneSymmetric),
        ("rank-one-edge", Excluded::RankOneSymmetricEdge),
    ] {
        let mut rejected = 0;
        for _ in 0..config.excluded_samples {
            let (a, (i, j, k)) = replay::lemma_excluded_sample(DIM, fam, &mut rng);
            let hyp = LemmaHypothesis::read(&a, i, j, k).expect("valid triple");
            if matches!(
                lemma_degenerate(&a, &hyp),
                Err(Error::HypothesisViolated(_))
            ) {
                rejected += 1;
            }
        }
        out.push(check(
            format!("c.lemma.excluded.{name}"),
            "Lemma 1 hypothesis",
            rejected == config.excluded_samples,
            format!("{rejected}/{} rejected", config.excluded_samples),
        ));
    }
    out
}

/// Check id, catalog name, parameter, measured invariant, expected value.
type TableRow = (
    &'static str,
    &'static str,
    Option<Rational>,
    fn(&Fingerprint) -> usize,
    usize,
);

/// Source, its parameter, target, its parameter, separating rule.
type SeparationPair = (
    &'static str,
    Option<Rational>,
    &'static str,
    Option<Rational>,
    &'static str,
);

fn table_checks(config: &HarnessConfig) -> Vec<Check> {
    let loc = "Theorem 3 proof, invariant table";
    let mut out = Vec::new();
    for n in 4..=6 {
        let rows: [TableRow; 6] = [
            ("rann-L5", "L5", None, |f| f.dim_rann, n - 2),
            ("rann-L4(1)", "L4", Some(rat(1, 1)), |f| f.dim_rann, n - 2),
            ("rann-L4(1/4)", "L4", Some(rat(1, 4)), |f| f.dim_rann, n - 2),
            ("rann-r", "r", None, |f| f.dim_rann, n - 1),
            (
                "der-L4(0)",
                "L4",
                Some(rat(0, 1)),
                |f| f.dim_der,
                n * n - 3 * n + 4,
            ),
            ("der-r", "r", None, |f| f.dim_der, (n - 1) * (n - 1)),
        ];
        for (tag, name, alpha, read, want) in rows {
            let id = format!("d.table.n{n}.{tag}");
            out.push(match (config.catalog)(name, n, alpha.as_ref()) {
                Ok(t) => {
                    let got = read(&fingerprint(&t));
                    check(
                        id,
                        loc,
                        got == want,
                        format!("computed {got}, expected {want}"),
                    )
                }
                Err(e) => errored(id, loc, &e),
            });
        }
    }
    out
}

fn separation_checks(config: &HarnessConfig) -> Vec<Check> {
    let loc = "Theorem 3 proof, non-degenerations";
    let mut out = Vec::new();
    let make = |name: &str, n: usize, a: Option<Rational>| -> Result<Fingerprint> {
        Ok(fingerprint(&(config.catalog)(name, n, a.as_ref())?))
    };
    for n in 4..=6 {
        let pairs: [SeparationPair; 6] = [
            ("L4", Some(rat(0, 1)), "r", None, "R1-nilpotent"),
            ("L4", Some(rat(1, 1)), "r", None, "R1-nilpotent"),
            ("L5", None, "r", None, "R1-nilpotent"),
            ("r", None, "L4", Some(rat(1, 1)), "R4-dim-rann"),
            ("r", None, "L5", None, "R4-dim-rann"),
            ("r", None, "L4", Some(rat(0, 1)), "R3-dim-der"),
        ];
        for (s, sa, t, ta, rule) in pairs {
            let id = format!(
                "e.sep.n{n}.{}-{}",
                label(s, sa.as_ref()),
                label(t, ta.as_ref())
            );
            let report = make(s, n, sa).and_then(|a| obstructions(&a, &make(t, n, ta)?));
            out.push(match report {
                Ok(r) => check(
                    id,
                    loc,
                    r.violates(rule),
                    format!(
                        "expected {rule}; violated: [{}]",
                        r.violated
                            .iter()
                            .map(|v| v.rule_name.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ),
                Err(e) => errored(id, loc, &e),
            });
        }
    }

    // The L4 / L5 separation rests on a citation, not on an invariant.
    let mut found = Vec::new();
    let mut failed = None;
    for a in [rat(0, 1), rat(1, 1), rat(1, 4), rat(2, 1)] {
        for (s, sa, t, ta) in [
            ("L4", Some(a.clone()), "L5", None),
            ("L5", None, "L4", Some(a.clone())),
        ] {
            match make(s, DIM, sa.clone())
                .and_then(|x| obstructions(&x, &make(t, DIM, ta.clone())?))
            {
                Ok(r) if r.is_obstructed() => found.push(format!(
                    "{}->{}",
                    label(s, sa.as_ref()),
                    label(t, ta.as_ref())
                )),
                Ok(_) => {}
                Err(e) => failed = Some(e),
            }
        }
    }
    out.push(match failed {
        Some(e) => errored("e.sep.L4-L5", "Theorem 3 proof, cited", &e),
        None => Check {
            id: "e.sep.L4-L5".into(),
            paper_location: "Theorem 3 proof, cited".into(),
            status: Status::ExternalCitation,
            detail: format!(
                "separated by external citation; invariants obstruct only [{}]",
                found.join(", ")
            ),
        },
    });
    out
}

fn case_location(case: Case) -> &'static str {
    match case {
        Case::C111 => "Theorem 4 proof, Case 1.1.1",
        Case::C112 => "Theorem 4 proof, Case 1.1.2",
        Case::C123 => "Theorem 4 proof, Case 1.2.3",
        Case::C124 => "Theorem 4 proof, Case 1.2.4",
        Case::C124Corrected => "Theorem 4 proof, Case 1.2.4, weight 6 on e_{k+2}",
        Case::C2 => "Theorem 4 proof, Case 2",
    }
}

fn case_check(config: &HarnessConfig, case: Case, n: usize, stream: u64) -> Check {
    let id = format!("f.case-{}.n{n}", case.id());
    let loc = case_location(case);
    let mut rng = seeded(config, 100 + stream);
    let mut passed = 0;
    let mut first_failure = None;
    for s in 0..config.case_instances {
        let outcome = replay::instantiate(case, n, &mut rng).and_then(|inst| {
            let r = replay::run_case(&inst)?;
            let obstructed =
                obstructions(&fingerprint(&inst.source), &fingerprint(&r.limit))?.is_obstructed();
            Ok((
                r.ok && !obstructed,
                format!("{}; obstructed: {obstructed}", r.detail),
            ))
        });
        match outcome {
            Ok((true, _)) => passed += 1,
            Ok((false, d)) => {
                first_failure.get_or_insert(format!("instance {s}: {d}"));
            }
            Err(e) => {
                first_failure.get_or_insert(format!("instance {s}: error: {e}"));
            }
        }
    }
    check(
        id,
        loc,
        passed == config.case_instances,
        format!(
            "{passed}/{} instances pass{}",
            config.case_instances,
            first_failure.map_or(String::new(), |f| format!("; {f}"))
        ),
    )
}

/// For right Leibniz algebras `φ_x(y) = yx + xy` and `xx` lie in the right
/// annihilator; for left Leibniz algebras, in the left one.
fn phi_checks(config: &HarnessConfig) -> Vec<Check> {
    let loc = "Section 2.1, right annihilator";
    let mut rng = seeded(config, 3);
    let mut out = Vec::new();
    for e in ENTRIES {
        let side = match e.asserted {
            Some(IdentityKind::LeibnizRight) | Some(IdentityKind::Lie) => Side::Right,
            Some(IdentityKind::LeibnizLeft) => Side::Left,
            _ => continue,
        };
        let alpha = catalog::sample_alpha(e.name);
        let id = format!("g.phi.{}", label(e.name, alpha.as_ref()));
        let t = match (config.catalog)(e.name, DIM, alpha.as_ref()) {
            Ok(t) => t,
            Err(err) => {
                out.push(errored(id, loc, &err));
                continue;
            }
        };
        let ann = t.annihilator(side);
        let mut bad = None;
        for s in 0..config.phi_samples {
            let x: Vec<Rational> = (0..DIM).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
            let phi = t.phi_matrix(&x).expect("dimensions match");
            let xx = t.product(&x, &x).expect("dimensions match");
            let inside = (0..DIM).all(|j| ann.contains(&phi.column(j))) && ann.contains(&xx);
            if !inside {
                bad.get_or_insert(s);
            }
        }
        out.push(check(
            id,
            loc,
            bad.is_none(),
            format!(
                "{} annihilator of dim {}; {}",
                match side {
                    Side::Left => "left",
                    _ => "right",
                },
                ann.dim(),
                bad.map_or("all samples inside".to_string(), |s| format!(
                    "sample {s} escapes"
                ))
            ),
        ));
    }
    out
}
