//! Soberness of symbolically described rings.
//!
//! A [`RingDescriptor`] is classified into [`RingFacts`], and the six
//! propositions are applied as guarded rules. Finite descriptors are also
//! realized and decided exhaustively; the two answers must agree.
//! Non-soberness of `Z` and `F_q[x]` comes with a certificate: sampled
//! nonzero elements each paired with a maximal ideal that excludes them.

mod fq;
pub mod primes;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Recipe, DEFAULT_ORDER_CAP};
use crate::spectrum::{KrullDim, Spectrum};
use crate::verdict::{
    CertificatePair, ElementLiteral, NonSoberCertificate, Rule, SoberVerdict, TraceEntry, Verdict,
};

pub use fq::{GaloisField, IrreducibleStream, Poly};
pub use primes::PrimeStream;

/// Symbolic description of a commutative ring, finite or not.
///
/// JSON form: `{"type":"Z"}`, `{"type":"PolyRing","q":2}`,
/// `{"type":"ZLocalized","primes":[2,5]}`, `{"type":"DVR","label":"..."}`,
/// `{"type":"Zmod","n":12}`, `{"type":"PolyQuotient","p":2,"modulus":[1,1,1]}`
/// and `{"type":"Product","factors":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum RingDescriptor {
    Z,
    /// `F_q[x]`.
    PolyRing { q: u64 },
    /// `Z` localized at the complement of the union of `(p)`, `p` in `primes`.
    ZLocalized { primes: Vec<u64> },
    /// A discrete valuation ring, known only by name.
    DVR { label: String },
    Zmod { n: u64 },
    PolyQuotient { p: u64, modulus: Vec<u64> },
    Product { factors: Vec<RingDescriptor> },
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Z => f.write_str("Z"),
            RingDescriptor::PolyRing { q } => write!(f, "F{q}[x]"),
            RingDescriptor::ZLocalized { primes } => write!(f, "Z localized at {primes:?}"),
            RingDescriptor::DVR { label } => write!(f, "DVR({label})"),
            RingDescriptor::Product { factors } => {
                for (i, d) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            other => write!(f, "{}", other.to_recipe().expect("finite descriptor")),
        }
    }
}

impl RingDescriptor {
    /// Checks the structural invariants that do not require building a ring.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Z | RingDescriptor::DVR { .. } => Ok(()),
            RingDescriptor::PolyRing { q } => {
                primes::prime_power(*q)
                    .ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))?;
                Ok(())
            }
            RingDescriptor::ZLocalized { primes } => {
                if primes.is_empty() {
                    return Err(Error::invalid("localization needs at least one prime"));
                }
                let mut sorted = primes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != primes.len() {
                    return Err(Error::invalid("localization primes must be distinct"));
                }
                match primes.iter().find(|&&p| !primes::is_prime(p)) {
                    Some(&p) => Err(Error::NotPrime(p)),
                    None => Ok(()),
                }
            }
            RingDescriptor::Zmod { n } => {
                if *n == 0 {
                    Err(Error::invalid("Zmod needs n >= 1"))
                } else {
                    Ok(())
                }
            }
            RingDescriptor::PolyQuotient { p, .. } => {
                if primes::is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(*p))
                }
            }
            RingDescriptor::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::invalid("product needs at least one factor"));
                }
                factors.iter().try_for_each(RingDescriptor::validate)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_recipe().is_some()
    }

    /// The ring-core recipe, for finite descriptors.
    pub fn to_recipe(&self) -> Option<Recipe> {
        match self {
            RingDescriptor::Zmod { n } => Some(Recipe::Zmod { n: *n }),
            RingDescriptor::PolyQuotient { p, modulus } => Some(Recipe::PolyQuotient {
                p: *p,
                modulus: modulus.clone(),
            }),
            RingDescriptor::Product { factors } => Some(Recipe::Product {
                factors: factors
                    .iter()
                    .map(RingDescriptor::to_recipe)
                    .collect::<Option<_>>()?,
            }),
            _ => None,
        }
    }

    /// Inverse of [`RingDescriptor::to_recipe`] where one exists.
    pub fn from_recipe(recipe: &Recipe) -> Option<Self> {
        match recipe {
            Recipe::Zmod { n } => Some(RingDescriptor::Zmod { n: *n }),
            Recipe::PolyQuotient { p, modulus } => Some(RingDescriptor::PolyQuotient {
                p: *p,
                modulus: modulus.clone(),
            }),
            Recipe::Product { factors } => Some(RingDescriptor::Product {
                factors: factors
                    .iter()
                    .map(RingDescriptor::from_recipe)
                    .collect::<Option<_>>()?,
            }),
            Recipe::Quotient { .. } | Recipe::Mutated { .. } => None,
        }
    }

    /// `Z` and `F_q[x]` admit explicit maximal ideals and witnesses.
    pub fn supports_witnesses(&self) -> bool {
        matches!(self, RingDescriptor::Z | RingDescriptor::PolyRing { .. })
    }

    fn poly_field(&self) -> Result<Option<Arc<GaloisField>>> {
        match self {
            RingDescriptor::PolyRing { q } => Ok(Some(Arc::new(GaloisField::new(*q)?))),
            _ => Ok(None),
        }
    }
}

/// Builds the ring of a finite descriptor, refusing orders above `cap`.
pub fn realize_finite(d: &RingDescriptor, cap: usize) -> Result<FiniteRing> {
    d.validate()?;
    let recipe = d.to_recipe().ok_or_else(|| Error::Unsupported {
        operation: "realize_finite",
        descriptor: d.to_string(),
    })?;
    recipe.realize(cap)
}

/// Three-valued knowledge about the hypotheses the rules test.
/// `None` means unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFacts {
    pub dim: Option<u32>,
    pub semilocal: Option<bool>,
    pub domain: Option<bool>,
    pub field: Option<bool>,
    pub dedekind: Option<bool>,
    pub pid: Option<bool>,
    pub jacobson_radical_zero: Option<bool>,
    pub jacobson_ring: Option<bool>,
    pub artinian: Option<bool>,
}

impl RingFacts {
    /// Facts shared by `Z` and `F_q[x]`: one-dimensional PIDs with infinitely
    /// many maximal ideals and zero Jacobson radical.
    fn infinite_pid() -> Self {
        RingFacts {
            dim: Some(1),
            semilocal: Some(false),
            domain: Some(true),
            field: Some(false),
            dedekind: Some(true),
            pid: Some(true),
            jacobson_radical_zero: Some(true),
            jacobson_ring: Some(true),
            artinian: Some(false),
        }
    }

    /// Facts of a semilocal one-dimensional PID, e.g. a DVR. The zero ideal is
    /// prime but not an intersection of maximals, so it is not Jacobson.
    fn semilocal_pid() -> Self {
        RingFacts {
            dim: Some(1),
            semilocal: Some(true),
            domain: Some(true),
            field: Some(false),
            dedekind: Some(true),
            pid: Some(true),
            jacobson_radical_zero: Some(false),
            jacobson_ring: Some(false),
            artinian: Some(false),
        }
    }

    fn finite(spec: &Spectrum<'_>) -> Self {
        let inv = spec.invariants();
        let dim = match inv.krull_dim {
            KrullDim::Finite(d) => Some(d as u32),
            KrullDim::Undefined => None,
        };
        RingFacts {
            dim,
            semilocal: Some(true),
            domain: Some(inv.is_domain),
            field: Some(inv.is_field),
            // A finite domain is a field, and fields are excluded from Dedekind domains.
            dedekind: Some(false),
            pid: Some(inv.is_field),
            jacobson_radical_zero: Some(inv.jacobson_radical.is_zero()),
            jacobson_ring: Some(spec.is_jacobson_ring()),
            artinian: Some(true),
        }
    }

    /// Facts of a product of at least two rings: `Max` and `J` are taken
    /// componentwise, and a product of two nonzero rings has zero divisors.
    fn product(parts: &[RingFacts]) -> Self {
        let all = |get: fn(&RingFacts) -> Option<bool>| {
            parts.iter().try_fold(true, |acc, f| get(f).map(|v| acc && v)).or_else(|| {
                parts
                    .iter()
                    .any(|f| get(f) == Some(false))
                    .then_some(false)
            })
        };
        let dim = parts
            .iter()
            .map(|f| f.dim)
            .collect::<Option<Vec<_>>>()
            .and_then(|d| d.into_iter().max());
        RingFacts {
            dim,
            semilocal: all(|f| f.semilocal),
            domain: Some(false),
            field: Some(false),
            dedekind: Some(false),
            pid: Some(false),
            jacobson_radical_zero: all(|f| f.jacobson_radical_zero),
            jacobson_ring: all(|f| f.jacobson_ring),
            artinian: all(|f| f.artinian),
        }
    }

    /// Implications every classification must respect.
    pub fn consistency_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.field == Some(true) {
            if self.domain != Some(true) {
                out.push("field without domain");
            }
            if self.pid != Some(true) {
                out.push("field without pid");
            }
            if self.dim != Some(0) {
                out.push("field of nonzero dimension");
            }
            if self.dedekind == Some(true) {
                out.push("field marked Dedekind");
            }
        }
        if self.pid == Some(true) && self.field == Some(false) && self.dedekind != Some(true) {
            out.push("pid that is not a field but not Dedekind");
        }
        if self.artinian == Some(true) && self.dim.is_some_and(|d| d != 0) {
            out.push("Artinian ring of positive dimension");
        }
        out
    }

    fn describe(&self) -> String {
        let show = |v: Option<bool>| v.map_or("?".to_string(), |b| b.to_string());
        format!(
            "dim={}, semilocal={}, domain={}, field={}, dedekind={}, pid={}, J=0:{}, jacobson={}, artinian={}",
            self.dim.map_or("?".to_string(), |d| d.to_string()),
            show(self.semilocal),
            show(self.domain),
            show(self.field),
            show(self.dedekind),
            show(self.pid),
            show(self.jacobson_radical_zero),
            show(self.jacobson_ring),
            show(self.artinian),
        )
    }
}

/// Fills in [`RingFacts`] from the descriptor's tag; finite descriptors are
/// realized and computed.
pub fn classify(d: &RingDescriptor) -> Result<RingFacts> {
    d.validate()?;
    Ok(match d {
        RingDescriptor::Z | RingDescriptor::PolyRing { .. } => RingFacts::infinite_pid(),
        RingDescriptor::ZLocalized { .. } | RingDescriptor::DVR { .. } => {
            RingFacts::semilocal_pid()
        }
        _ if d.is_finite() => {
            let ring = realize_finite(d, DEFAULT_ORDER_CAP)?;
            RingFacts::finite(&Spectrum::new(&ring))
        }
        RingDescriptor::Product { factors } if factors.len() == 1 => classify(&factors[0])?,
        RingDescriptor::Product { factors } => {
            let parts = factors.iter().map(classify).collect::<Result<Vec<_>>>()?;
            RingFacts::product(&parts)
        }
        _ => unreachable!("finite descriptors handled above"),
    })
}

/// Generator of the Jacobson radical of `Z` localized at `primes`: their product.
pub fn localized_jacobson_generator(primes: &[u64]) -> Option<u64> {
    primes.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p))
}

/// Evaluation order of the rules; the first match decides.
pub const RULE_ORDER: [Rule; 6] = [Rule::R1, Rule::R2, Rule::R3, Rule::R5, Rule::R4, Rule::R6];

fn rule_matches(rule: Rule, f: &RingFacts) -> bool {
    match rule {
        Rule::R1 => f.dim == Some(0),
        Rule::R2 => f.artinian == Some(true),
        Rule::R3 => f.semilocal == Some(true) && f.dim == Some(1) && f.domain == Some(true),
        Rule::R4 => {
            f.dedekind == Some(true) && f.field == Some(false) && f.jacobson_radical_zero == Some(true)
        }
        Rule::R5 => {
            f.pid == Some(true) && f.field == Some(false) && f.jacobson_radical_zero == Some(true)
        }
        Rule::R6 => f.jacobson_ring == Some(true) && f.dim.is_some_and(|d| d >= 1),
        Rule::Definition => false,
    }
}

/// Applies the rules to `facts` alone, without certificates or cross-checks.
pub fn apply_rules(facts: &RingFacts) -> Result<SoberVerdict> {
    let matched: Vec<Rule> = RULE_ORDER
        .iter()
        .copied()
        .filter(|&r| rule_matches(r, facts))
        .collect();
    let mut notes = Vec::new();
    if facts.semilocal == Some(true) && facts.dim == Some(1) && facts.domain != Some(true) {
        notes.push(
            "semilocal of dimension 1 but not known to be a domain: the semilocal rule is only applied to domains"
                .to_string(),
        );
    }
    if facts.jacobson_ring == Some(true) && facts.dim == Some(0) {
        notes.push("Jacobson ring of dimension 0: the Jacobson rule needs dimension >= 1".to_string());
    }
    if let Some(&first) = matched.first() {
        if let Some(&other) = matched
            .iter()
            .find(|r| r.conclusion() != first.conclusion())
        {
            return Err(Error::Inconsistency(format!(
                "rules {first:?} and {other:?} disagree on facts {}",
                facts.describe()
            )));
        }
    } else {
        notes.push(format!("no rule applies to the known facts ({})", facts.describe()));
    }
    Ok(SoberVerdict {
        verdict: matched.first().map_or(Verdict::Unknown, |r| r.conclusion()),
        decided_by: matched.first().copied(),
        trace: matched.into_iter().map(TraceEntry::from).collect(),
        notes,
        brute_force: None,
        certificate: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateOptions {
    pub samples: usize,
    pub seed: u64,
}

pub const DEFAULT_CERTIFICATE_SEED: u64 = 0x5_0BE5;

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            samples: 10,
            seed: DEFAULT_CERTIFICATE_SEED,
        }
    }
}

pub fn decide_sober(d: &RingDescriptor) -> Result<SoberVerdict> {
    decide_sober_with(d, CertificateOptions::default())
}

/// Rule-engine verdict. Finite descriptors are also decided exhaustively and
/// a disagreement is reported as [`Error::Inconsistency`].
pub fn decide_sober_with(d: &RingDescriptor, opts: CertificateOptions) -> Result<SoberVerdict> {
    d.validate()?;
    if d.is_finite() {
        let ring = realize_finite(d, DEFAULT_ORDER_CAP)?;
        let spectrum = Spectrum::new(&ring);
        let mut verdict = apply_rules(&RingFacts::finite(&spectrum))?;
        let exhaustive = spectrum.is_sober();
        if exhaustive.verdict != verdict.verdict {
            return Err(Error::Inconsistency(format!(
                "{d}: rules say {} but the exhaustive test says {}",
                verdict.verdict, exhaustive.verdict
            )));
        }
        verdict.trace.push(TraceEntry::from(Rule::Definition));
        verdict.notes.extend(exhaustive.notes);
        verdict.brute_force = exhaustive.brute_force;
        return Ok(verdict);
    }
    let mut verdict = apply_rules(&classify(d)?)?;
    if verdict.verdict == Verdict::NotSober && d.supports_witnesses() {
        verdict.certificate = Some(non_sober_certificate_with(d, opts)?);
    }
    Ok(verdict)
}

fn unsupported(operation: &'static str, d: &RingDescriptor) -> Error {
    Error::Unsupported {
        operation,
        descriptor: d.to_string(),
    }
}

/// Maximal ideals of `Z` (primes) or `F_q[x]` (monic irreducibles), in order.
#[derive(Debug, Clone)]
pub enum MaximalSpectrumStream {
    Integers(PrimeStream),
    Polynomials(IrreducibleStream),
}

impl Iterator for MaximalSpectrumStream {
    type Item = ElementLiteral;

    fn next(&mut self) -> Option<ElementLiteral> {
        match self {
            MaximalSpectrumStream::Integers(s) => s
                .next()
                .map(|p| ElementLiteral::Integer(i64::try_from(p).unwrap_or(i64::MAX))),
            MaximalSpectrumStream::Polynomials(s) => s.next().map(ElementLiteral::Poly),
        }
    }
}

pub fn maximal_spectrum_stream(d: &RingDescriptor) -> Result<MaximalSpectrumStream> {
    d.validate()?;
    match d {
        RingDescriptor::Z => Ok(MaximalSpectrumStream::Integers(PrimeStream::new())),
        RingDescriptor::PolyRing { .. } => {
            let field = d.poly_field()?.expect("polynomial ring");
            Ok(MaximalSpectrumStream::Polynomials(IrreducibleStream::new(field)))
        }
        _ => Err(unsupported("maximal_spectrum_stream", d)),
    }
}

fn integer_pair(x: i64) -> Result<CertificatePair> {
    if x == 0 {
        return Err(Error::invalid("0 lies in every prime ideal"));
    }
    let p = PrimeStream::new()
        .find(|&p| x.unsigned_abs() % p != 0)
        .expect("a 64-bit integer has at most 15 distinct prime factors");
    Ok(CertificatePair {
        element: ElementLiteral::Integer(x),
        generator: ElementLiteral::Integer(p as i64),
        remainder: ElementLiteral::Integer(x.rem_euclid(p as i64)),
    })
}

fn poly_pair(field: &Arc<GaloisField>, x: &[usize]) -> Result<CertificatePair> {
    let x = field.validate_poly(x)?;
    if x.is_empty() {
        return Err(Error::invalid("0 lies in every prime ideal"));
    }
    // Terminates: an irreducible of larger degree never divides x.
    let (g, rem) = IrreducibleStream::new(field.clone())
        .map(|g| {
            let r = field.rem(&x, &g);
            (g, r)
        })
        .find(|(_, r)| !r.is_empty())
        .expect("irreducibles of every degree exist");
    Ok(CertificatePair {
        element: ElementLiteral::Poly(x),
        generator: ElementLiteral::Poly(g),
        remainder: ElementLiteral::Poly(rem),
    })
}

fn excluding_pair(
    d: &RingDescriptor,
    field: Option<&Arc<GaloisField>>,
    x: &ElementLiteral,
) -> Result<CertificatePair> {
    match (d, x, field) {
        (RingDescriptor::Z, ElementLiteral::Integer(n), _) => integer_pair(*n),
        (RingDescriptor::PolyRing { .. }, ElementLiteral::Poly(c), Some(f)) => poly_pair(f, c),
        (RingDescriptor::PolyRing { .. }, ElementLiteral::Integer(n), Some(f)) => {
            // a constant polynomial
            let c = usize::try_from(*n).map_err(|_| Error::invalid("negative coefficient"))?;
            poly_pair(f, &[c])
        }
        (RingDescriptor::Z, ElementLiteral::Poly(_), _) => {
            Err(Error::invalid("elements of Z are integers"))
        }
        _ => Err(unsupported("witness_excluding_prime", d)),
    }
}

/// Generator of the first maximal ideal (in stream order) not containing `x`:
/// the smallest prime not dividing `x` for `Z`, the first monic irreducible
/// not dividing `x` for `F_q[x]`.
pub fn witness_excluding_prime(d: &RingDescriptor, x: &ElementLiteral) -> Result<ElementLiteral> {
    d.validate()?;
    let field = d.poly_field()?;
    Ok(excluding_pair(d, field.as_ref(), x)?.generator)
}

pub fn non_sober_certificate(d: &RingDescriptor, sample_count: usize) -> Result<NonSoberCertificate> {
    non_sober_certificate_with(
        d,
        CertificateOptions {
            samples: sample_count,
            ..CertificateOptions::default()
        },
    )
}

/// Deterministic sample elements. For `Z`: 1, then the primorials 6, 30,
/// 210, ... up to 9699690, then values drawn from a ChaCha8 stream seeded
/// with `seed`. For `F_q[x]`: the products of the first `i + 2` irreducibles.
fn sample_elements(
    d: &RingDescriptor,
    field: Option<&Arc<GaloisField>>,
    opts: CertificateOptions,
) -> Vec<ElementLiteral> {
    const PRIMORIAL_SAMPLES: usize = 8;
    match (d, field) {
        (RingDescriptor::Z, _) => {
            let mut out = vec![ElementLiteral::Integer(1)];
            let mut primes = PrimeStream::new();
            let mut acc = primes.next().unwrap() as i64;
            for p in primes.take(PRIMORIAL_SAMPLES - 1) {
                acc *= p as i64;
                out.push(ElementLiteral::Integer(acc));
            }
            out.truncate(opts.samples);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            while out.len() < opts.samples {
                out.push(ElementLiteral::Integer(rng.gen_range(1..=1i64 << 40)));
            }
            out
        }
        (RingDescriptor::PolyRing { .. }, Some(f)) => {
            let irreducibles: Vec<Poly> =
                IrreducibleStream::new(f.clone()).take(opts.samples + 1).collect();
            let mut acc = irreducibles[0].clone();
            irreducibles[1..]
                .iter()
                .map(|g| {
                    acc = f.mul_poly(&acc, g);
                    ElementLiteral::Poly(acc.clone())
                })
                .collect()
        }
        _ => Vec::new(),
    }
}

/// Certificate that `(0)`, the only non-maximal prime, is the intersection
/// of all maximal ideals. Every pair is re-verified by division before it is
/// returned.
pub fn non_sober_certificate_with(
    d: &RingDescriptor,
    opts: CertificateOptions,
) -> Result<NonSoberCertificate> {
    d.validate()?;
    if !d.supports_witnesses() {
        return Err(unsupported("non_sober_certificate", d));
    }
    let field = d.poly_field()?;
    let samples = sample_elements(d, field.as_ref(), opts)
        .iter()
        .map(|x| excluding_pair(d, field.as_ref(), x))
        .collect::<Result<Vec<_>>>()?;
    let cert = NonSoberCertificate {
        witness_prime: "(0)".to_string(),
        rule: "every nonzero element lies outside some maximal ideal, so (0) is the intersection of the maximal ideals".to_string(),
        seed: opts.seed,
        samples,
    };
    verify_certificate(d, &cert)?;
    Ok(cert)
}

/// Recomputes every division in `cert`.
pub fn verify_certificate(d: &RingDescriptor, cert: &NonSoberCertificate) -> Result<()> {
    let field = d.poly_field()?;
    for pair in &cert.samples {
        let ok = match (&pair.element, &pair.generator, &pair.remainder, &field) {
            (
                ElementLiteral::Integer(x),
                ElementLiteral::Integer(g),
                ElementLiteral::Integer(r),
                None,
            ) => {
                *x != 0
                    && *g > 1
                    && primes::is_prime(*g as u64)
                    && x.rem_euclid(*g) == *r
                    && *r != 0
            }
            (ElementLiteral::Poly(x), ElementLiteral::Poly(g), ElementLiteral::Poly(r), Some(f)) => {
                !x.is_empty() && !g.is_empty() && f.rem(x, g) == *r && !r.is_empty()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Inconsistency(format!(
                "certificate pair {} / {} does not verify",
                pair.element, pair.generator
            )));
        }
    }
    Ok(())
}
