//! JSON interchange: state-set documents (`nwe/1`) and verification reports.
//!
//! All JSON is written canonically: object keys sorted, two-space
//! indentation, LF line endings, trailing newline.

use serde::{Deserialize, Serialize};

use crate::constructions::{prior_sizes, SizeReport};
use crate::error::{Error, Result};
use crate::lemma::{derive_certificate, render_conclusion};
use crate::tensor::{
    check_pairwise_orthogonality, LocalVector, ProductState, StateSet, SystemShape,
};
use crate::verifier::{verify_all, Triviality};

pub const FORMAT_VERSION: &str = "nwe/1";

/// Serializes any value with sorted keys and two-space indentation.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value objects are BTreeMap-backed, so keys come out sorted
    let value = serde_json::to_value(value).expect("serializable");
    let mut out = serde_json::to_string_pretty(&value).expect("serializable");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateEntry {
    pub label: String,
    pub locals: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSetDocument {
    pub version: String,
    pub dims: Vec<usize>,
    pub provenance: String,
    pub states: Vec<StateEntry>,
}

impl StateSetDocument {
    pub fn from_set(set: &StateSet) -> Self {
        let states = (0..set.len())
            .map(|i| StateEntry {
                label: set.label_of(i),
                locals: set.states()[i]
                    .locals()
                    .iter()
                    .map(|v| v.coeffs().to_vec())
                    .collect(),
            })
            .collect();
        Self {
            version: FORMAT_VERSION.into(),
            dims: set.shape().dims().to_vec(),
            provenance: set.provenance().into(),
            states,
        }
    }

    /// Parses JSON text; syntax errors report line and column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Document(format!(
                "parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    /// Validates the document and builds the state set.
    pub fn to_set(&self, dim_cap: usize) -> Result<StateSet> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported version {:?}, expected {FORMAT_VERSION:?}",
                self.version
            )));
        }
        let shape = SystemShape::with_cap(self.dims.clone(), dim_cap)
            .map_err(|e| Error::Document(format!("dims: {e}")))?;
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let locals = entry
                    .locals
                    .iter()
                    .map(|c| LocalVector::new(c.clone()))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|locals| {
                        ProductState::new(shape.clone(), locals, Some(entry.label.clone()))
                    });
                locals.map_err(|e| Error::Document(format!("state {i} ({}): {e}", entry.label)))
            })
            .collect::<Result<Vec<_>>>()?;
        StateSet::new(shape, states, self.provenance.clone())
    }
}

/// Which certification engines to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EngineSelector {
    Lemma,
    Oracle,
    Both,
}

impl EngineSelector {
    fn lemma(self) -> bool {
        matches!(self, Self::Lemma | Self::Both)
    }

    fn oracle(self) -> bool {
        matches!(self, Self::Oracle | Self::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub ok: bool,
    pub violations: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessMatrix {
    pub re: Vec<Vec<String>>,
    pub im: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartyReport {
    pub party: usize,
    pub engine: &'static str,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nullspace_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facts: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessMatrix>,
}

/// Outcome of a verification run, mapped to process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Every party is trivial.
    Certified,
    /// Some party admits a nontrivial measurement, or the lemma engine alone
    /// could not finish.
    NotCertified,
    /// The set is not pairwise orthogonal.
    InvalidSet,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Certified => 0,
            Outcome::NotCertified => 1,
            Outcome::InvalidSet => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub dims: Vec<usize>,
    pub provenance: String,
    pub states: usize,
    pub orthogonality: OrthogonalityReport,
    pub per_party: Vec<PartyReport>,
    pub sizes: SizeReport,
    pub outcome: Outcome,
    pub summary: String,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

fn list(parties: &[usize]) -> String {
    parties
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Checks orthogonality, then runs the selected engines on every party.
pub fn build_report(set: &StateSet, engine: EngineSelector) -> Result<ReportDocument> {
    let violations = check_pairwise_orthogonality(set);
    let n = set.shape().parties();
    let mut report = ReportDocument {
        dims: set.shape().dims().to_vec(),
        provenance: set.provenance().into(),
        states: set.len(),
        orthogonality: OrthogonalityReport {
            ok: violations.is_empty(),
            violations: violations.clone(),
        },
        per_party: Vec::new(),
        sizes: prior_sizes(set.shape()),
        outcome: Outcome::InvalidSet,
        summary: String::new(),
    };
    if !violations.is_empty() {
        report.summary = format!(
            "input set is not pairwise orthogonal ({} violating pairs)",
            violations.len()
        );
        return Ok(report);
    }

    let certificate = engine
        .lemma()
        .then(|| derive_certificate(set))
        .transpose()?;
    let verdicts = engine.oracle().then(|| verify_all(set)).transpose()?;

    for t in 0..n {
        if let Some(cert) = &certificate {
            let c = &cert.conclusions[t];
            report.per_party.push(PartyReport {
                party: t,
                engine: "lemma",
                status: if c.is_trivial() {
                    "Trivial"
                } else {
                    "Incomplete"
                },
                nullspace_dim: None,
                facts: Some(cert.facts_for(t).map(|f| f.render(set)).collect()),
                conclusion: Some(render_conclusion(t, c)),
                witness: None,
            });
        }
        if let Some(verdicts) = &verdicts {
            let v = &verdicts[t];
            report.per_party.push(PartyReport {
                party: t,
                engine: "oracle",
                status: match v.status {
                    Triviality::Trivial => "Trivial",
                    Triviality::Nontrivial => "Nontrivial",
                },
                nullspace_dim: Some(v.nullspace_dim),
                facts: None,
                conclusion: None,
                witness: v.witness.as_ref().map(|w| {
                    let (re, im) = w.to_fraction_strings();
                    WitnessMatrix { re, im }
                }),
            });
        }
    }

    let lemma_open: Vec<usize> = certificate
        .as_ref()
        .map(|c| (0..n).filter(|&t| !c.conclusions[t].is_trivial()).collect())
        .unwrap_or_default();
    match &verdicts {
        Some(verdicts) => {
            let nontrivial: Vec<usize> = verdicts
                .iter()
                .filter(|v| !v.is_trivial())
                .map(|v| v.party)
                .collect();
            if nontrivial.is_empty() {
                report.outcome = Outcome::Certified;
                report.summary = if lemma_open.is_empty() {
                    "certified nonlocal: every party admits only trivial orthogonality-preserving measurements"
                        .into()
                } else {
                    format!(
                        "certified (oracle); lemma-engine incomplete on parties {}",
                        list(&lemma_open)
                    )
                };
            } else {
                report.outcome = Outcome::NotCertified;
                report.summary = format!(
                    "not certified: a nontrivial orthogonality-preserving measurement exists on parties {}; \
                     this alone does not show the set is LOCC distinguishable",
                    list(&nontrivial)
                );
            }
        }
        None => {
            if lemma_open.is_empty() {
                report.outcome = Outcome::Certified;
                report.summary = "certified (lemma engine): every party is trivial".into();
            } else {
                report.outcome = Outcome::NotCertified;
                report.summary = format!(
                    "lemma-engine incomplete on parties {}; run the oracle engine for a decision",
                    list(&lemma_open)
                );
            }
        }
    }
    Ok(report)
}
