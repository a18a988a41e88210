//! Report types and command logic behind the `sober` binary.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sober_core::ideal::{ideal_label, Ideal};
use sober_core::ring::{FiniteRing, DEFAULT_ORDER_CAP};
use sober_core::spectrum::{poset_dot, KrullDim, Spectrum};
use sober_core::symbolic::{
    classify, decide_sober_with, maximal_spectrum_stream, realize_finite, CertificateOptions,
    RingDescriptor, RingFacts,
};
use sober_core::verdict::{ElementLiteral, SoberVerdict, Verdict};
use sober_core::Error;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid descriptor in {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_PARSE,
            CliError::Core(Error::OrderCap { .. }) => EXIT_CAP,
            CliError::Core(Error::Inconsistency(_)) => EXIT_FAILURE,
            CliError::Core(_) => EXIT_PARSE,
        }
    }
}

/// Reads and validates a descriptor file. serde's messages name the
/// offending field (`missing field `n``, `unknown field `m``).
pub fn load_descriptor(path: &Path) -> Result<RingDescriptor, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    let d: RingDescriptor = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    d.validate().map_err(|e| match e {
        Error::OrderCap { .. } => CliError::Core(e),
        other => CliError::Parse {
            path: shown,
            message: other.to_string(),
        },
    })?;
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    /// Minimal generating set, e.g. `(2)`.
    pub label: String,
    pub members: Vec<usize>,
    /// Element labels in ring notation, aligned with `members`.
    pub elements: Vec<String>,
}

impl IdealSummary {
    pub fn new(i: &Ideal<'_>) -> Self {
        let members = i.to_vec();
        IdealSummary {
            label: ideal_label(i),
            elements: members.iter().map(|&x| i.ring().label(x).to_string()).collect(),
            members,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsSummary {
    pub order: usize,
    pub ideal_count: usize,
    pub spec: Vec<IdealSummary>,
    pub max_spec: Vec<IdealSummary>,
    pub nilradical: IdealSummary,
    pub jacobson_radical: IdealSummary,
    pub krull_dim: KrullDim,
    pub is_domain: bool,
    pub is_field: bool,
    pub is_jacobson_ring: bool,
}

impl InvariantsSummary {
    pub fn new(spectrum: &Spectrum<'_>) -> Self {
        let inv = spectrum.invariants();
        InvariantsSummary {
            order: spectrum.ring().order(),
            ideal_count: spectrum.ideals().len(),
            spec: inv.spec.iter().map(IdealSummary::new).collect(),
            max_spec: inv.max_spec.iter().map(IdealSummary::new).collect(),
            nilradical: IdealSummary::new(&inv.nilradical),
            jacobson_radical: IdealSummary::new(&inv.jacobson_radical),
            krull_dim: inv.krull_dim,
            is_domain: inv.is_domain,
            is_field: inv.is_field,
            is_jacobson_ring: spectrum.is_jacobson_ring(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub analysis_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub descriptor: RingDescriptor,
    pub facts: RingFacts,
    /// Present for finite descriptors only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariants: Option<InvariantsSummary>,
    pub verdict: SoberVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poset_dot: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub certificate: CertificateOptions,
    pub timings: bool,
    pub dot: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            certificate: CertificateOptions::default(),
            timings: true,
            dot: false,
        }
    }
}

fn realize(d: &RingDescriptor) -> Result<FiniteRing, Error> {
    realize_finite(d, DEFAULT_ORDER_CAP)
}

pub fn analyze(d: &RingDescriptor, opts: AnalyzeOptions) -> Result<AnalysisReport, Error> {
    let start = Instant::now();
    let facts = classify(d)?;
    let verdict = decide_sober_with(d, opts.certificate)?;
    let (invariants, poset_dot) = if d.is_finite() {
        let ring = realize(d)?;
        let spectrum = Spectrum::new(&ring);
        let dot = opts.dot.then(|| poset_dot(&spectrum.poset()));
        (Some(InvariantsSummary::new(&spectrum)), dot)
    } else {
        (None, None)
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        descriptor: d.clone(),
        facts,
        invariants,
        verdict,
        poset_dot,
        timings: opts.timings.then(|| Timings {
            analysis_ms: start.elapsed().as_secs_f64() * 1e3,
        }),
    })
}

/// `Sober (rule: semilocal dim 1)`, or just the verdict when no rule decided.
pub fn verdict_line(v: &SoberVerdict) -> String {
    match v.decided_by {
        Some(rule) => format!("{} (rule: {})", v.verdict, rule.name()),
        None => v.verdict.to_string(),
    }
}

/// Verdict line, then one line per certificate pair, then any notes.
pub fn sober_text(v: &SoberVerdict) -> String {
    let mut out = verdict_line(v);
    out.push('\n');
    if let Some(cert) = &v.certificate {
        out.push_str(&format!(
            "witness prime {}: {} verified pairs (seed {})\n",
            cert.witness_prime,
            cert.samples.len(),
            cert.seed
        ));
        for pair in &cert.samples {
            out.push_str(&format!(
                "  {} not in ({}): remainder {}\n",
                pair.element, pair.generator, pair.remainder
            ));
        }
    }
    if v.verdict == Verdict::Unknown {
        for note in &v.notes {
            out.push_str(&format!("note: {note}\n"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecListing {
    /// Every prime of a finite ring.
    Finite {
        primes: Vec<IdealSummary>,
        maximal: Vec<bool>,
    },
    /// A prefix of the maximal spectrum of `Z` or `F_q[x]`, by generator.
    /// `(0)` is the one further prime.
    Stream { generators: Vec<ElementLiteral> },
}

pub struct SpecOutput {
    pub listing: SpecListing,
    pub dot: Option<String>,
}

pub fn spec_listing(d: &RingDescriptor, limit: usize) -> Result<SpecOutput, Error> {
    if d.is_finite() {
        let ring = realize(d)?;
        let spectrum = Spectrum::new(&ring);
        let maximal = spectrum.primes().iter().map(|p| spectrum.is_maximal(p)).collect();
        return Ok(SpecOutput {
            listing: SpecListing::Finite {
                primes: spectrum.primes().iter().map(IdealSummary::new).collect(),
                maximal,
            },
            dot: Some(poset_dot(&spectrum.poset())),
        });
    }
    let generators = maximal_spectrum_stream(d)?.take(limit).collect();
    Ok(SpecOutput {
        listing: SpecListing::Stream { generators },
        dot: None,
    })
}

pub fn spec_text(listing: &SpecListing) -> String {
    match listing {
        SpecListing::Finite { primes, maximal } => primes
            .iter()
            .zip(maximal)
            .map(|(p, &m)| {
                format!(
                    "{}{} = {{{}}}\n",
                    p.label,
                    if m { " maximal" } else { "" },
                    p.elements.join(", ")
                )
            })
            .collect(),
        SpecListing::Stream { generators } => {
            let mut out = String::from("(0)\n");
            for g in generators {
                out.push_str(&format!("({g}) maximal\n"));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let cap = CliError::Core(Error::OrderCap { order: 1000, cap: 256 });
        assert_eq!(cap.exit_code(), EXIT_CAP);
        let parse = CliError::Parse {
            path: "x".into(),
            message: "missing field `n`".into(),
        };
        assert_eq!(parse.exit_code(), EXIT_PARSE);
        assert_eq!(
            CliError::Core(Error::Inconsistency("x".into())).exit_code(),
            EXIT_FAILURE
        );
    }

    #[test]
    fn zmod12_spec_text() {
        let out = spec_listing(&RingDescriptor::Zmod { n: 12 }, 0).unwrap();
        assert_eq!(spec_text(&out.listing), "(3) maximal = {0, 3, 6, 9}\n(2) maximal = {0, 2, 4, 6, 8, 10}\n");
    }

    #[test]
    fn stream_prefix() {
        let out = spec_listing(&RingDescriptor::Z, 5).unwrap();
        let SpecListing::Stream { generators } = out.listing else {
            panic!("expected a stream")
        };
        let g: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(g, ["2", "3", "5", "7", "11"]);
    }
}
