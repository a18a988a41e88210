//! Soberness verdicts, rule traces and certificates shared by the brute-force
//! and symbolic deciders.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Sober,
    NotSober,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Sober => "Sober",
            Verdict::NotSober => "NotSober",
            Verdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// The definition of soberness and the six propositions the rule engine
/// applies, in their fixed evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    Definition,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl Rule {
    pub const fn name(self) -> &'static str {
        match self {
            Rule::Definition => "definition",
            Rule::R1 => "zero-dimensional",
            Rule::R2 => "artinian",
            Rule::R3 => "semilocal dim 1",
            Rule::R4 => "dedekind with zero jacobson radical",
            Rule::R5 => "pid with zero jacobson radical",
            Rule::R6 => "jacobson ring of dim >= 1",
        }
    }

    pub const fn citation(self) -> &'static str {
        match self {
            Rule::Definition => "Definition (sober ring)",
            Rule::R1 => "Proposition (zero-dimensional rings)",
            Rule::R2 => "Corollary (Artinian rings)",
            Rule::R3 => "Proposition (semilocal rings of dimension one)",
            Rule::R4 => "Proposition (Dedekind domains)",
            Rule::R5 => "Corollary (principal ideal domains)",
            Rule::R6 => "Proposition (Jacobson rings)",
        }
    }

    pub const fn statement(self) -> &'static str {
        match self {
            Rule::Definition => {
                "R is sober iff no prime non-maximal ideal P equals the intersection of the primes Q with P ⊊ Q"
            }
            Rule::R1 => "Every zero-dimensional ring is a sober ring",
            Rule::R2 => "Let R be an Artinian ring. Then R is sober",
            Rule::R3 => "If R is a semilocal ring with dim(R)=1 then R is sober (applied to domains)",
            Rule::R4 => "A Dedekind domain that is not a field with J(R)=(0) is not sober",
            Rule::R5 => "A principal ideal domain that is not a field with J(R)=(0) is not sober",
            Rule::R6 => "A commutative, Jacobson ring of dimension at least 1 is not sober",
        }
    }

    /// The verdict a matching rule implies.
    pub fn conclusion(self) -> Verdict {
        match self {
            Rule::R1 | Rule::R2 | Rule::R3 => Verdict::Sober,
            Rule::R4 | Rule::R5 | Rule::R6 => Verdict::NotSober,
            Rule::Definition => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: Rule,
    pub name: String,
    pub citation: String,
    pub statement: String,
}

impl From<Rule> for TraceEntry {
    fn from(rule: Rule) -> Self {
        TraceEntry {
            rule,
            name: rule.name().to_string(),
            citation: rule.citation().to_string(),
            statement: rule.statement().to_string(),
        }
    }
}

/// How one prime fared under the definition's intersection test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub prime: Vec<usize>,
    pub label: String,
    pub maximal: bool,
    /// Intersection of the primes strictly above; absent for maximal primes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub over_intersection: Option<Vec<usize>>,
    /// `true` when the prime differs from that intersection.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separated: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceEvidence {
    /// No non-maximal primes exist, so the condition holds vacuously.
    pub vacuous: bool,
    pub primes: Vec<PrimeRecord>,
}

/// A ring element literal: an integer for `Z`, little-endian coefficients
/// for polynomial rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementLiteral {
    Integer(i64),
    Poly(Vec<usize>),
}

impl fmt::Display for ElementLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementLiteral::Integer(n) => write!(f, "{n}"),
            ElementLiteral::Poly(c) => f.write_str(&crate::ring::poly_label(c)),
        }
    }
}

/// `element ∉ (generator)`, witnessed by a nonzero division remainder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePair {
    pub element: ElementLiteral,
    pub generator: ElementLiteral,
    pub remainder: ElementLiteral,
}

/// Evidence that the zero ideal, the only non-maximal prime, is the
/// intersection of the maximal ideals: every sampled nonzero element is
/// excluded by some maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSoberCertificate {
    pub witness_prime: String,
    pub rule: String,
    pub seed: u64,
    pub samples: Vec<CertificatePair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoberVerdict {
    pub verdict: Verdict,
    /// The rule that decided, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decided_by: Option<Rule>,
    /// Every rule whose hypotheses matched, in evaluation order.
    pub trace: Vec<TraceEntry>,
    /// Guards that failed or gaps that blocked a decision.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub brute_force: Option<BruteForceEvidence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<NonSoberCertificate>,
}
