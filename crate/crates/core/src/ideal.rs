//! Ideals of a finite ring and the lattice they form.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

/// An ideal, stored as a membership bitset over the ring's element indices.
#[derive(Clone)]
pub struct Ideal<'r> {
    ring: &'r FiniteRing,
    members: BitSet,
}

impl<'r> Ideal<'r> {
    /// Checks the ideal axioms on an arbitrary subset.
    pub fn from_members(ring: &'r FiniteRing, members: BitSet) -> Result<Self> {
        if members.universe() != ring.order() {
            return Err(Error::NotAnIdeal("bitset universe differs from ring order".into()));
        }
        if !members.contains(ring.zero()) {
            return Err(Error::NotAnIdeal("zero is missing".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) {
                    return Err(Error::NotAnIdeal(format!("{a} + {b} escapes")));
                }
            }
            for r in ring.elements() {
                if !members.contains(ring.mul(r, a)) {
                    return Err(Error::NotAnIdeal(format!("{r} * {a} escapes")));
                }
            }
        }
        Ok(Ideal { ring, members })
    }

    pub(crate) fn new_unchecked(ring: &'r FiniteRing, members: BitSet) -> Self {
        Ideal { ring, members }
    }

    pub fn zero(ring: &'r FiniteRing) -> Self {
        Ideal {
            ring,
            members: BitSet::from_indices(ring.order(), [ring.zero()]),
        }
    }

    pub fn whole(ring: &'r FiniteRing) -> Self {
        Ideal {
            ring,
            members: BitSet::full(ring.order()),
        }
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }

    pub fn is_zero(&self) -> bool {
        self.members.count() == 1
    }

    pub(crate) fn same_ring(&self, other: &Ideal<'_>) -> bool {
        std::ptr::eq(self.ring, other.ring)
    }

    fn check_ambient(&self, other: &Ideal<'_>) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// `self ⊆ other`, no ambient check.
    pub(crate) fn le(&self, other: &Ideal<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `self ⊊ other`, no ambient check.
    pub(crate) fn lt(&self, other: &Ideal<'_>) -> bool {
        self.le(other) && self.members != other.members
    }

    pub(crate) fn meet(&self, other: &Ideal<'r>) -> Ideal<'r> {
        Ideal::new_unchecked(self.ring, self.members.intersection(&other.members))
    }

    pub(crate) fn join(&self, other: &Ideal<'r>) -> Ideal<'r> {
        let members = extend_subgroup(self.ring, self.members.clone(), other.members.iter());
        Ideal::new_unchecked(self.ring, members)
    }

    /// The ideal as a sorted list of element labels' indices.
    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }
}

impl PartialEq for Ideal<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.members == other.members
    }
}

impl Eq for Ideal<'_> {}

impl Hash for Ideal<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Ord for Ideal<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl PartialOrd for Ideal<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Ideal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.members)
    }
}

/// Smallest additive subgroup containing the subgroup `base` and `extra`.
///
/// `base` must already be an additive subgroup. Each new element `g` is
/// absorbed by adding the cosets `base + k·g` until they cycle.
fn extend_subgroup(
    ring: &FiniteRing,
    mut base: BitSet,
    extra: impl IntoIterator<Item = usize>,
) -> BitSet {
    for g in extra {
        if base.contains(g) {
            continue;
        }
        let snapshot = base.to_vec();
        let mut shift = g;
        while !base.contains(shift) {
            for &h in &snapshot {
                base.insert(ring.add(h, shift));
            }
            shift = ring.add(shift, g);
        }
    }
    base
}

/// `(a) = { x·a : x ∈ r }`.
pub fn principal_ideal(r: &FiniteRing, a: usize) -> Ideal<'_> {
    assert!(a < r.order(), "element {a} not in ring of order {}", r.order());
    let members = BitSet::from_indices(r.order(), r.elements().map(|x| r.mul(x, a)));
    Ideal::new_unchecked(r, members)
}

/// Smallest ideal containing `gens`.
pub fn ideal_generated<'r>(r: &'r FiniteRing, gens: &[usize]) -> Ideal<'r> {
    gens.iter()
        .fold(Ideal::zero(r), |acc, &g| acc.join(&principal_ideal(r, g)))
}

/// Every ideal of `r`, in canonical order (size, then members).
///
/// Computed as the closure of the principal ideals under pairwise sums.
/// Every ideal of a finite ring is a finite sum of principal ideals, so
/// extending by one principal ideal at a time reaches all of them.
pub fn all_ideals(r: &FiniteRing) -> Vec<Ideal<'_>> {
    let mut principals: Vec<BitSet> = r
        .elements()
        .map(|a| principal_ideal(r, a).members)
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    principals.sort();

    let mut seen: HashSet<BitSet> = principals.iter().cloned().collect();
    let mut queue = principals.clone();
    while let Some(current) = queue.pop() {
        for p in &principals {
            if p.is_subset(&current) {
                continue;
            }
            let s = extend_subgroup(r, current.clone(), p.iter());
            if seen.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    let mut out: Vec<Ideal<'_>> = seen
        .into_iter()
        .map(|m| Ideal::new_unchecked(r, m))
        .collect();
    out.sort();
    out
}

pub fn sum<'r>(i: &Ideal<'r>, j: &Ideal<'r>) -> Result<Ideal<'r>> {
    i.check_ambient(j)?;
    Ok(i.join(j))
}

pub fn intersect<'r>(i: &Ideal<'r>, j: &Ideal<'r>) -> Result<Ideal<'r>> {
    i.check_ambient(j)?;
    Ok(i.meet(j))
}

/// Ideal generated by all products `a·b` with `a ∈ i`, `b ∈ j`.
pub fn ideal_product<'r>(i: &Ideal<'r>, j: &Ideal<'r>) -> Result<Ideal<'r>> {
    i.check_ambient(j)?;
    let r = i.ring;
    let mut acc = Ideal::zero(r);
    for a in i.members.iter() {
        for b in j.members.iter() {
            let ab = r.mul(a, b);
            if !acc.contains(ab) {
                acc = acc.join(&principal_ideal(r, ab));
            }
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inclusion {
    pub subset: bool,
    pub strict: bool,
}

pub fn is_subset(i: &Ideal<'_>, j: &Ideal<'_>) -> Result<Inclusion> {
    i.check_ambient(j)?;
    let subset = i.le(j);
    Ok(Inclusion {
        subset,
        strict: subset && i.members != j.members,
    })
}

/// A generating set of least size, choosing the lexicographically first
/// combination of element indices among those of that size.
pub fn minimal_generators(i: &Ideal<'_>) -> Vec<usize> {
    let r = i.ring;
    if i.is_zero() {
        return vec![r.zero()];
    }
    let candidates: Vec<usize> = i.members.iter().filter(|&a| a != r.zero()).collect();
    for k in 1..=candidates.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let gens: Vec<usize> = idx.iter().map(|&t| candidates[t]).collect();
            if ideal_generated(r, &gens).members == i.members {
                return gens;
            }
            // next k-combination in lexicographic order
            let mut t = k;
            while t > 0 && idx[t - 1] == candidates.len() - k + t - 1 {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            idx[t - 1] += 1;
            for u in t..k {
                idx[u] = idx[u - 1] + 1;
            }
        }
    }
    unreachable!("an ideal is generated by all of its members")
}

/// Renders an ideal as `(g1, g2, ...)` using its minimal generators.
pub fn ideal_label(i: &Ideal<'_>) -> String {
    let gens: Vec<&str> = minimal_generators(i)
        .into_iter()
        .map(|g| i.ring.label(g))
        .collect();
    format!("({})", gens.join(", "))
}
