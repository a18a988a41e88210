//! Finite commutative rings with identity, stored as dense operation tables.
//!
//! Elements are the indices `0..order`. Every ring remembers the [`Recipe`]
//! that built it so corpus entries and failure reports can be reproduced.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated, Ideal};

/// Largest ring order any constructor will build unless a larger cap is
/// passed to [`Recipe::realize`].
pub const DEFAULT_ORDER_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    Add,
    Mul,
}

/// Construction expression for a [`FiniteRing`].
///
/// The JSON form uses the same `"type"` tags as the ring descriptor grammar
/// for the overlapping cases (`Zmod`, `PolyQuotient`, `Product`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Recipe {
    Zmod {
        n: u64,
    },
    /// `F_p[x]/(f)` with `modulus` the little-endian coefficients of `f`.
    PolyQuotient {
        p: u64,
        modulus: Vec<u64>,
    },
    Product {
        factors: Vec<Recipe>,
    },
    /// Quotient of `base` by the ideal generated by `generators`.
    Quotient {
        base: Box<Recipe>,
        generators: Vec<usize>,
    },
    /// `base` with a single table entry overwritten. Used to plant defects.
    Mutated {
        base: Box<Recipe>,
        table: Table,
        row: usize,
        col: usize,
        value: usize,
    },
}

impl Recipe {
    /// Upper bound on the order of the realized ring, computed without
    /// building anything. Exact except for quotients.
    pub fn order_bound(&self) -> Result<u128> {
        match self {
            Recipe::Zmod { n } => Ok(*n as u128),
            Recipe::PolyQuotient { p, modulus } => {
                let d = modulus.len().saturating_sub(1) as u32;
                Ok((*p as u128).checked_pow(d).unwrap_or(u128::MAX))
            }
            Recipe::Product { factors } => factors.iter().try_fold(1u128, |acc, f| {
                Ok(acc.saturating_mul(f.order_bound()?))
            }),
            Recipe::Quotient { base, .. } | Recipe::Mutated { base, .. } => base.order_bound(),
        }
    }

    /// Builds the ring, refusing anything larger than `cap` elements.
    pub fn realize(&self, cap: usize) -> Result<FiniteRing> {
        let bound = self.order_bound()?;
        if bound > cap as u128 {
            return Err(Error::OrderCap { order: bound, cap });
        }
        match self {
            Recipe::Zmod { n } => build_zmod(*n),
            Recipe::PolyQuotient { p, modulus } => build_poly_quotient(*p, modulus),
            Recipe::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::invalid("product needs at least one factor"));
                }
                let rings = factors
                    .iter()
                    .map(|f| f.realize(cap))
                    .collect::<Result<Vec<_>>>()?;
                Ok(build_product(&rings, self.clone()))
            }
            Recipe::Quotient { base, generators } => {
                let ring = base.realize(cap)?;
                if let Some(&g) = generators.iter().find(|&&g| g >= ring.order()) {
                    return Err(Error::invalid(format!(
                        "generator {g} out of range for ring of order {}",
                        ring.order()
                    )));
                }
                let ideal = ideal_generated(&ring, generators);
                Ok(build_quotient(&ring, &ideal, self.clone()))
            }
            Recipe::Mutated {
                base,
                table,
                row,
                col,
                value,
            } => {
                let mut ring = base.realize(cap)?;
                let n = ring.order;
                if *row >= n || *col >= n || *value >= n {
                    return Err(Error::invalid(format!(
                        "mutation ({row}, {col}) := {value} out of range for order {n}"
                    )));
                }
                let t = match table {
                    Table::Add => &mut ring.add,
                    Table::Mul => &mut ring.mul,
                };
                t[row * n + col] = *value;
                ring.recipe = self.clone();
                Ok(ring)
            }
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Zmod { n } => write!(f, "Z/{n}"),
            Recipe::PolyQuotient { p, modulus } => {
                let digits: Vec<usize> = modulus.iter().map(|&c| c as usize).collect();
                write!(f, "F{p}[x]/({})", poly_label(&digits))
            }
            Recipe::Product { factors } => {
                for (i, r) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
            Recipe::Quotient { base, generators } => write!(f, "({base})/{generators:?}"),
            Recipe::Mutated {
                base,
                table,
                row,
                col,
                value,
            } => write!(f, "{base} with {table:?}[{row}][{col}] := {value}"),
        }
    }
}

/// A finite commutative ring with identity given by its full tables.
///
/// Immutable once built. Construction through the public constructors always
/// yields a ring that passes [`validate`]; rings from [`FiniteRing::from_tables`]
/// or mutated recipes are only shape-checked.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
    recipe: Recipe,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("recipe", &self.recipe)
            .finish_non_exhaustive()
    }
}

impl FiniteRing {
    /// Wraps raw tables. Only the shape is checked: tables of length
    /// `order²` with entries in range, `zero` and `one` in range.
    pub fn from_tables(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        recipe: Recipe,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("a ring has at least one element"));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::invalid(format!(
                "tables must have {} entries",
                order * order
            )));
        }
        if add.iter().chain(&mul).any(|&v| v >= order) || zero >= order || one >= order {
            return Err(Error::invalid("table entry out of range"));
        }
        Ok(FiniteRing {
            order,
            add,
            mul,
            zero,
            one,
            labels: (0..order).map(|i| i.to_string()).collect(),
            recipe,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    /// Additive inverse, if the add table provides one.
    pub fn neg(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&b| self.add(a, b) == self.zero)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.order).any(|b| self.mul(a, b) == self.one)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Human-readable name of an element, derived from the recipe.
    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

/// `Z/nZ`.
pub fn zmod(n: u64) -> Result<FiniteRing> {
    Recipe::Zmod { n }.realize(DEFAULT_ORDER_CAP)
}

/// `F_p[x]/(f)` where `modulus` holds the little-endian coefficients of `f`.
/// `f` need not be irreducible or monic, only of degree at least one.
pub fn poly_quotient(p: u64, modulus: &[u64]) -> Result<FiniteRing> {
    Recipe::PolyQuotient {
        p,
        modulus: modulus.to_vec(),
    }
    .realize(DEFAULT_ORDER_CAP)
}

/// Componentwise product; the pair `(i, j)` has index `i * b.order() + j`.
pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing> {
    let order = a.order as u128 * b.order as u128;
    if order > DEFAULT_ORDER_CAP as u128 {
        return Err(Error::OrderCap {
            order,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let recipe = Recipe::Product {
        factors: vec![a.recipe.clone(), b.recipe.clone()],
    };
    Ok(build_product(&[a.clone(), b.clone()], recipe))
}

/// `r / i`, with each coset represented by its smallest member index.
pub fn quotient(r: &FiniteRing, i: &Ideal<'_>) -> Result<FiniteRing> {
    if !std::ptr::eq(r, i.ring()) && r != i.ring() {
        return Err(Error::AmbientMismatch);
    }
    let recipe = Recipe::Quotient {
        base: Box::new(r.recipe.clone()),
        generators: i.members().to_vec(),
    };
    Ok(build_quotient(r, i, recipe))
}

fn build_zmod(n: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::invalid("Z/0 is infinite; n must be at least 1"));
    }
    let n = n as usize;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
            mul.push(a * b % n);
        }
    }
    Ok(FiniteRing {
        order: n,
        add,
        mul,
        zero: 0,
        one: 1 % n,
        labels: (0..n).map(|i| i.to_string()).collect(),
        recipe: Recipe::Zmod { n: n as u64 },
    })
}

pub(crate) fn is_small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Little-endian base-p digits of `index`, `len` of them.
fn digits(mut index: usize, p: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % p);
        index /= p;
    }
    out
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Renders little-endian coefficients as e.g. `x^2+x+1`.
pub(crate) fn poly_label(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn build_poly_quotient(p: u64, modulus: &[u64]) -> Result<FiniteRing> {
    if !is_small_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
        return Err(Error::invalid(format!(
            "modulus coefficient {c} is not reduced mod {p}"
        )));
    }
    let d = match modulus.iter().rposition(|&c| c != 0) {
        Some(d) if d + 1 == modulus.len() => d,
        Some(_) => return Err(Error::invalid("leading coefficient of the modulus is zero")),
        None => return Err(Error::invalid("modulus is the zero polynomial")),
    };
    if d == 0 {
        return Err(Error::invalid("modulus must have degree at least 1"));
    }
    let pu = p as usize;
    // Monic form of the modulus: x^d = -sum tail_i x^i.
    let lead_inv = mod_pow(modulus[d], p - 2, p) as usize;
    let tail: Vec<usize> = modulus[..d]
        .iter()
        .map(|&c| (pu - (c as usize * lead_inv) % pu) % pu)
        .collect();
    let order = pu.pow(d as u32);
    let elems: Vec<Vec<usize>> = (0..order).map(|i| digits(i, pu, d)).collect();

    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    let mut prod = vec![0usize; 2 * d - 1];
    for a in &elems {
        for b in &elems {
            let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| (x + y) % pu).collect();
            add.push(undigits(&sum, pu));

            prod.iter_mut().for_each(|c| *c = 0);
            for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % pu;
                }
            }
            for k in (d..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (i, &t) in tail.iter().enumerate() {
                    prod[k - d + i] = (prod[k - d + i] + c * t) % pu;
                }
            }
            mul.push(undigits(&prod[..d], pu));
        }
    }
    let labels = elems.iter().map(|e| poly_label(e)).collect();
    Ok(FiniteRing {
        order,
        add,
        mul,
        zero: 0,
        one: 1,
        labels,
        recipe: Recipe::PolyQuotient {
            p,
            modulus: modulus.to_vec(),
        },
    })
}

/// Mixed-radix product of all `factors`, first factor most significant.
fn build_product(factors: &[FiniteRing], recipe: Recipe) -> FiniteRing {
    let order: usize = factors.iter().map(|f| f.order).product();
    let split = |mut idx: usize| -> Vec<usize> {
        let mut parts = vec![0; factors.len()];
        for (k, f) in factors.iter().enumerate().rev() {
            parts[k] = idx % f.order;
            idx /= f.order;
        }
        parts
    };
    let join = |parts: &[usize]| -> usize {
        parts
            .iter()
            .zip(factors)
            .fold(0, |acc, (&x, f)| acc * f.order + x)
    };
    let comps: Vec<Vec<usize>> = (0..order).map(split).collect();
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    let mut buf = vec![0; factors.len()];
    for a in &comps {
        for b in &comps {
            for (k, f) in factors.iter().enumerate() {
                buf[k] = f.add(a[k], b[k]);
            }
            add.push(join(&buf));
            for (k, f) in factors.iter().enumerate() {
                buf[k] = f.mul(a[k], b[k]);
            }
            mul.push(join(&buf));
        }
    }
    let zero = join(&factors.iter().map(|f| f.zero).collect::<Vec<_>>());
    let one = join(&factors.iter().map(|f| f.one).collect::<Vec<_>>());
    let labels = comps
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    FiniteRing {
        order,
        add,
        mul,
        zero,
        one,
        labels,
        recipe,
    }
}

fn build_quotient(r: &FiniteRing, ideal: &Ideal<'_>, recipe: Recipe) -> FiniteRing {
    // coset[x] = smallest index in x + I
    let mut coset = vec![usize::MAX; r.order];
    let mut reps = Vec::new();
    for x in r.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        for m in ideal.members().iter() {
            coset[r.add(x, m)] = x;
        }
        reps.push(x);
    }
    let mut pos = vec![usize::MAX; r.order];
    for (k, &rep) in reps.iter().enumerate() {
        pos[rep] = k;
    }
    let class = |x: usize| pos[coset[x]];
    let order = reps.len();
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for &a in &reps {
        for &b in &reps {
            add.push(class(r.add(a, b)));
            mul.push(class(r.mul(a, b)));
        }
    }
    FiniteRing {
        order,
        add,
        mul,
        zero: class(r.zero),
        one: class(r.one),
        labels: reps.iter().map(|&x| r.label(x).to_string()).collect(),
        recipe,
    }
}

/// Ring axiom checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AddCommutative,
    AddAssociative,
    AddIdentity,
    AddInverse,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    Distributive,
    ZeroNotOne,
}

/// One failed axiom together with the first witness found, in scan order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} violated at {:?}", self.axiom, self.witness)
    }
}

/// Checks every ring axiom; an empty list means `r` is a commutative ring
/// with identity. At most one violation is reported per axiom.
pub fn validate(r: &FiniteRing) -> Vec<Violation> {
    let n = r.order;
    let mut out = Vec::new();
    let mut first = |axiom: Axiom, found: Option<Vec<usize>>| {
        if let Some(witness) = found {
            out.push(Violation { axiom, witness });
        }
    };
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let triples = || pairs().flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)));

    first(
        Axiom::AddCommutative,
        pairs()
            .find(|&(a, b)| r.add(a, b) != r.add(b, a))
            .map(|(a, b)| vec![a, b]),
    );
    first(
        Axiom::AddAssociative,
        triples()
            .find(|&(a, b, c)| r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
            .map(|(a, b, c)| vec![a, b, c]),
    );
    first(
        Axiom::AddIdentity,
        (0..n).find(|&a| r.add(a, r.zero) != a).map(|a| vec![a, r.zero]),
    );
    // Each row must be a permutation: witness (row, col1, col2) hitting the same value.
    first(Axiom::AddInverse, {
        let mut found = None;
        'rows: for a in 0..n {
            let mut seen = vec![usize::MAX; n];
            for b in 0..n {
                let v = r.add(a, b);
                if seen[v] != usize::MAX {
                    found = Some(vec![a, seen[v], b]);
                    break 'rows;
                }
                seen[v] = b;
            }
        }
        found
    });
    first(
        Axiom::MulCommutative,
        pairs()
            .find(|&(a, b)| r.mul(a, b) != r.mul(b, a))
            .map(|(a, b)| vec![a, b]),
    );
    first(
        Axiom::MulAssociative,
        triples()
            .find(|&(a, b, c)| r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
            .map(|(a, b, c)| vec![a, b, c]),
    );
    first(
        Axiom::MulIdentity,
        (0..n).find(|&a| r.mul(a, r.one) != a).map(|a| vec![a, r.one]),
    );
    first(
        Axiom::Distributive,
        triples()
            .find(|&(a, b, c)| r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
            .map(|(a, b, c)| vec![a, b, c]),
    );
    first(
        Axiom::ZeroNotOne,
        (n > 1 && r.zero == r.one).then(|| vec![r.zero, r.one]),
    );
    out
}
