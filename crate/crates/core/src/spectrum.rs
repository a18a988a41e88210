//! Prime and maximal ideals, ring invariants, the exhaustive soberness test
//! and the Zariski topology on a finite spectrum.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::{all_ideals, ideal_label, principal_ideal, Ideal};
use crate::ring::FiniteRing;
use crate::verdict::{BruteForceEvidence, PrimeRecord, Rule, SoberVerdict, TraceEntry, Verdict};

/// Proper, and `ab ∈ i` forces `a ∈ i` or `b ∈ i`.
pub fn is_prime(i: &Ideal<'_>) -> bool {
    if !i.is_proper() {
        return false;
    }
    let r = i.ring();
    let outside: Vec<usize> = r.elements().filter(|&a| !i.contains(a)).collect();
    outside
        .iter()
        .all(|&a| outside.iter().all(|&b| !i.contains(r.mul(a, b))))
}

/// Proper, and adjoining any outside element generates the whole ring.
///
/// Any ideal strictly above `i` contains some `a ∉ i` and hence `i + (a)`,
/// so this is equivalent to having nothing strictly between `i` and `R`.
pub fn is_maximal(i: &Ideal<'_>) -> bool {
    if !i.is_proper() {
        return false;
    }
    let r = i.ring();
    r.elements()
        .filter(|&a| !i.contains(a))
        .all(|a| !i.join(&principal_ideal(r, a)).is_proper())
}

/// Krull dimension of a finite ring, with the zero ring kept distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KrullDim {
    /// The zero ring has no primes; its dimension is left undefined.
    Undefined,
    Finite(usize),
}

impl fmt::Display for KrullDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDim::Undefined => f.write_str("undefined"),
            KrullDim::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for KrullDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KrullDim::Undefined => s.serialize_str("undefined"),
            KrullDim::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

impl<'de> Deserialize<'de> for KrullDim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(usize),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(KrullDim::Finite(n)),
            Repr::Text(t) if t == "undefined" => Ok(KrullDim::Undefined),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a natural number or \"undefined\", got {t:?}"
            ))),
        }
    }
}

/// Prime ideals ordered canonically with their strict containments.
#[derive(Debug, Clone)]
pub struct PrimePoset<'r> {
    pub primes: Vec<Ideal<'r>>,
    /// `(i, j)` means `primes[i] ⊊ primes[j]`.
    pub strict_edges: BTreeSet<(usize, usize)>,
}

impl<'r> PrimePoset<'r> {
    pub fn new(primes: Vec<Ideal<'r>>) -> Self {
        let mut strict_edges = BTreeSet::new();
        for (i, p) in primes.iter().enumerate() {
            for (j, q) in primes.iter().enumerate() {
                if p.lt(q) {
                    strict_edges.insert((i, j));
                }
            }
        }
        PrimePoset {
            primes,
            strict_edges,
        }
    }

    /// Edges of the transitive reduction.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        self.strict_edges
            .iter()
            .copied()
            .filter(|&(i, j)| {
                !(0..self.primes.len()).any(|k| {
                    self.strict_edges.contains(&(i, k)) && self.strict_edges.contains(&(k, j))
                })
            })
            .collect()
    }

    /// Number of edges on a longest strict chain. Canonical order lists
    /// smaller ideals first, so it is a topological order of the DAG.
    pub fn longest_chain(&self) -> Option<usize> {
        if self.primes.is_empty() {
            return None;
        }
        let mut depth = vec![0usize; self.primes.len()];
        for &(i, j) in &self.strict_edges {
            debug_assert!(i < j);
            depth[j] = depth[j].max(depth[i] + 1);
        }
        depth.into_iter().max()
    }
}

/// Graphviz digraph of the covering relation, smallest primes at the bottom.
pub fn poset_dot(p: &PrimePoset<'_>) -> String {
    let mut out = String::from("digraph spec {\n    rankdir=BT;\n    node [shape=box];\n");
    for (i, prime) in p.primes.iter().enumerate() {
        let label = ideal_label(prime).replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "    p{i} [label=\"{label}\"];");
    }
    for (i, j) in p.covering_edges() {
        let _ = writeln!(out, "    p{i} -> p{j};");
    }
    out.push_str("}\n");
    out
}

/// A finite topological space given by its closed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: usize,
    closed_sets: Vec<BitSet>,
}

impl FiniteSpace {
    /// Validates that the family contains `∅` and the whole space and is
    /// closed under pairwise union and intersection.
    pub fn new(points: usize, closed_sets: impl IntoIterator<Item = BitSet>) -> Result<Self> {
        let family: BTreeSet<BitSet> = closed_sets.into_iter().collect();
        if let Some(bad) = family.iter().find(|s| s.universe() != points) {
            return Err(Error::InvalidSpace(format!(
                "closed set over {} points in a {points}-point space",
                bad.universe()
            )));
        }
        if !family.contains(&BitSet::new(points)) {
            return Err(Error::InvalidSpace("empty set is not closed".into()));
        }
        if !family.contains(&BitSet::full(points)) {
            return Err(Error::InvalidSpace("whole space is not closed".into()));
        }
        for a in &family {
            for b in &family {
                if !family.contains(&a.union(b)) {
                    return Err(Error::InvalidSpace(format!("{a:?} ∪ {b:?} is not closed")));
                }
                if !family.contains(&a.intersection(b)) {
                    return Err(Error::InvalidSpace(format!("{a:?} ∩ {b:?} is not closed")));
                }
            }
        }
        Ok(FiniteSpace {
            points,
            closed_sets: family.into_iter().collect(),
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn closed_sets(&self) -> &[BitSet] {
        &self.closed_sets
    }

    pub fn closure_of_point(&self, x: usize) -> BitSet {
        self.closed_sets
            .iter()
            .filter(|c| c.contains(x))
            .fold(BitSet::full(self.points), |acc, c| acc.intersection(c))
    }

    /// Nonempty and not the union of two closed proper subsets.
    pub fn is_irreducible(&self, c: &BitSet) -> bool {
        if c.is_empty() {
            return false;
        }
        let proper: Vec<&BitSet> = self
            .closed_sets
            .iter()
            .filter(|s| s.is_subset(c) && *s != c)
            .collect();
        !proper
            .iter()
            .any(|a| proper.iter().any(|b| &a.union(b) == c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericPoints {
    pub closed_set: Vec<usize>,
    pub generic_points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SobrietyReport {
    pub sober: bool,
    /// One entry per irreducible closed set with the points whose closure it is.
    pub irreducible: Vec<GenericPoints>,
}

/// Every irreducible closed set must be the closure of exactly one point.
pub fn is_sober_space(t: &FiniteSpace) -> SobrietyReport {
    let closures: Vec<BitSet> = (0..t.points).map(|x| t.closure_of_point(x)).collect();
    let irreducible: Vec<GenericPoints> = t
        .closed_sets
        .iter()
        .filter(|c| t.is_irreducible(c))
        .map(|c| GenericPoints {
            closed_set: c.to_vec(),
            generic_points: (0..t.points).filter(|&x| &closures[x] == c).collect(),
        })
        .collect();
    SobrietyReport {
        sober: irreducible.iter().all(|g| g.generic_points.len() == 1),
        irreducible,
    }
}

/// Every invariant the rest of the crate needs, computed once per ring.
#[derive(Debug, Clone)]
pub struct Spectrum<'r> {
    ring: &'r FiniteRing,
    ideals: Vec<Ideal<'r>>,
    primes: Vec<Ideal<'r>>,
    maximals: Vec<Ideal<'r>>,
}

impl<'r> Spectrum<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        let ideals = all_ideals(ring);
        let primes: Vec<Ideal<'r>> = ideals.iter().filter(|i| is_prime(i)).cloned().collect();
        let maximals = primes.iter().filter(|i| is_maximal(i)).cloned().collect();
        Spectrum {
            ring,
            ideals,
            primes,
            maximals,
        }
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn ideals(&self) -> &[Ideal<'r>] {
        &self.ideals
    }

    pub fn primes(&self) -> &[Ideal<'r>] {
        &self.primes
    }

    pub fn maximals(&self) -> &[Ideal<'r>] {
        &self.maximals
    }

    fn intersect_all<'a>(&self, family: impl IntoIterator<Item = &'a Ideal<'r>>) -> Ideal<'r>
    where
        'r: 'a,
    {
        family
            .into_iter()
            .fold(Ideal::whole(self.ring), |acc, i| acc.meet(i))
    }

    pub fn nilradical(&self) -> Ideal<'r> {
        self.intersect_all(&self.primes)
    }

    pub fn jacobson_radical(&self) -> Ideal<'r> {
        self.intersect_all(&self.maximals)
    }

    pub fn poset(&self) -> PrimePoset<'r> {
        PrimePoset::new(self.primes.clone())
    }

    pub fn krull_dimension(&self) -> KrullDim {
        self.poset()
            .longest_chain()
            .map_or(KrullDim::Undefined, KrullDim::Finite)
    }

    pub fn is_maximal(&self, i: &Ideal<'r>) -> bool {
        self.maximals.contains(i)
    }

    /// Intersection of the primes strictly containing `i`; the whole ring
    /// when there are none.
    pub fn strict_over_intersection(&self, i: &Ideal<'r>) -> Ideal<'r> {
        self.intersect_all(self.primes.iter().filter(|q| i.lt(q)))
    }

    pub fn is_sober(&self) -> SoberVerdict {
        let primes: Vec<PrimeRecord> = self
            .primes
            .iter()
            .map(|p| {
                let maximal = self.is_maximal(p);
                let over = (!maximal).then(|| self.strict_over_intersection(p));
                PrimeRecord {
                    prime: p.to_vec(),
                    label: ideal_label(p),
                    maximal,
                    separated: over.as_ref().map(|o| o != p),
                    over_intersection: over.map(|o| o.to_vec()),
                }
            })
            .collect();
        let vacuous = primes.iter().all(|r| r.maximal);
        let sober = primes.iter().all(|r| r.separated != Some(false));
        let mut notes = Vec::new();
        if vacuous {
            notes.push("vacuous: every prime ideal is maximal".to_string());
        }
        for rec in primes.iter().filter(|r| r.separated == Some(false)) {
            notes.push(format!(
                "{} equals the intersection of the primes strictly above it",
                rec.label
            ));
        }
        SoberVerdict {
            verdict: if sober { Verdict::Sober } else { Verdict::NotSober },
            decided_by: Some(Rule::Definition),
            trace: vec![TraceEntry::from(Rule::Definition)],
            notes,
            brute_force: Some(BruteForceEvidence { vacuous, primes }),
            certificate: None,
        }
    }

    /// Every prime equals the intersection of the maximal ideals above it.
    pub fn is_jacobson_ring(&self) -> bool {
        self.primes.iter().all(|p| {
            let above = self.maximals.iter().filter(|m| p.le(m));
            &self.intersect_all(above) == p
        })
    }

    /// `V(I) = { P : I ⊆ P }` for every ideal, closed up under unions.
    pub fn space(&self) -> FiniteSpace {
        let n = self.primes.len();
        let mut family: BTreeSet<BitSet> = self
            .ideals
            .iter()
            .map(|i| {
                BitSet::from_indices(
                    n,
                    self.primes
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| i.le(p))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        loop {
            let unions: Vec<BitSet> = family
                .iter()
                .flat_map(|a| family.iter().map(move |b| a.union(b)))
                .filter(|u| !family.contains(u))
                .collect();
            if unions.is_empty() {
                break;
            }
            family.extend(unions);
        }
        FiniteSpace::new(n, family).expect("Zariski closed sets of a finite ring form a topology")
    }

    pub fn invariants(&self) -> RingInvariants<'r> {
        RingInvariants {
            spec: self.primes.clone(),
            max_spec: self.maximals.clone(),
            nilradical: self.nilradical(),
            jacobson_radical: self.jacobson_radical(),
            krull_dim: self.krull_dimension(),
            is_domain: is_domain(self.ring),
            is_field: is_field(self.ring),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RingInvariants<'r> {
    pub spec: Vec<Ideal<'r>>,
    pub max_spec: Vec<Ideal<'r>>,
    pub nilradical: Ideal<'r>,
    pub jacobson_radical: Ideal<'r>,
    pub krull_dim: KrullDim,
    pub is_domain: bool,
    pub is_field: bool,
}

pub fn is_domain(r: &FiniteRing) -> bool {
    let z = r.zero();
    !r.is_trivial()
        && r.elements().filter(|&a| a != z).all(|a| {
            r.elements()
                .filter(|&b| b != z)
                .all(|b| r.mul(a, b) != z)
        })
}

pub fn is_field(r: &FiniteRing) -> bool {
    !r.is_trivial() && r.elements().filter(|&a| a != r.zero()).all(|a| r.is_unit(a))
}

pub fn spec(r: &FiniteRing) -> Vec<Ideal<'_>> {
    Spectrum::new(r).primes
}

pub fn max_spec(r: &FiniteRing) -> Vec<Ideal<'_>> {
    Spectrum::new(r).maximals
}

pub fn nilradical(r: &FiniteRing) -> Ideal<'_> {
    Spectrum::new(r).nilradical()
}

pub fn jacobson_radical(r: &FiniteRing) -> Ideal<'_> {
    Spectrum::new(r).jacobson_radical()
}

pub fn krull_dimension(r: &FiniteRing) -> KrullDim {
    Spectrum::new(r).krull_dimension()
}

pub fn strict_over_intersection<'r>(r: &'r FiniteRing, i: &Ideal<'r>) -> Ideal<'r> {
    Spectrum::new(r).strict_over_intersection(i)
}

pub fn is_sober_bruteforce(r: &FiniteRing) -> SoberVerdict {
    Spectrum::new(r).is_sober()
}

pub fn is_jacobson_ring_bruteforce(r: &FiniteRing) -> bool {
    Spectrum::new(r).is_jacobson_ring()
}

pub fn prime_poset(r: &FiniteRing) -> PrimePoset<'_> {
    Spectrum::new(r).poset()
}

pub fn spec_space(r: &FiniteRing) -> FiniteSpace {
    Spectrum::new(r).space()
}

/// `{ x : x^k = 0 for some k ≤ order }`, computed by repeated multiplication.
pub fn nilpotent_elements(r: &FiniteRing) -> BitSet {
    BitSet::from_indices(
        r.order(),
        r.elements().filter(|&x| {
            let mut pow = x;
            for _ in 0..r.order() {
                if pow == r.zero() {
                    return true;
                }
                pow = r.mul(pow, x);
            }
            pow == r.zero()
        }),
    )
}
