//! Arithmetic in `F_q` and `F_q[x]`, and the ordered stream of monic
//! irreducible polynomials.
//!
//! `F_q` elements are the indices of a [`FiniteRing`]: plain residues when
//! `q` is prime, otherwise little-endian base-`p` digits of a polynomial
//! modulo the first monic irreducible of degree `k` over `F_p`.
//! Polynomials are little-endian coefficient vectors with no trailing zeros;
//! the zero polynomial is empty.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{poly_quotient, zmod, FiniteRing, DEFAULT_ORDER_CAP};

use super::primes::prime_power;

pub type Poly = Vec<usize>;

#[derive(Debug, Clone)]
pub struct GaloisField {
    q: u64,
    p: u64,
    k: u32,
    ring: FiniteRing,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        if q > DEFAULT_ORDER_CAP as u64 {
            return Err(Error::OrderCap {
                order: q as u128,
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let ring = if k == 1 {
            zmod(p)?
        } else {
            let base = Arc::new(GaloisField::new(p)?);
            let modulus = IrreducibleStream::new(base)
                .find(|f| f.len() == k as usize + 1)
                .expect("irreducibles exist in every degree");
            poly_quotient(p, &modulus.iter().map(|&c| c as u64).collect::<Vec<_>>())?
        };
        let n = ring.order();
        let neg = (0..n).map(|a| ring.neg(a).expect("field")).collect();
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| ring.mul(a, b) == ring.one())
                    .unwrap_or(usize::MAX)
            })
            .collect();
        Ok(GaloisField {
            q,
            p,
            k,
            ring,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.ring.add(a, b)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.ring.add(a, self.neg[b])
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.ring.mul(a, b)
    }

    pub fn trim(mut f: Poly) -> Poly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn mul_poly(&self, a: &[usize], b: &[usize]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(out)
    }

    /// Euclidean division `a = quot·b + rem` with `deg rem < deg b`.
    pub fn div_rem(&self, a: &[usize], b: &[usize]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut rem = Self::trim(a.to_vec());
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead_inv = self.inv[*b.last().unwrap()];
        let mut quot = vec![0; rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = self.mul(*rem.last().unwrap(), lead_inv);
            quot[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                rem[shift + i] = self.sub(rem[shift + i], self.mul(c, bi));
            }
            rem = Self::trim(rem);
        }
        (Self::trim(quot), rem)
    }

    pub fn rem(&self, a: &[usize], b: &[usize]) -> Poly {
        self.div_rem(a, b).1
    }

    pub fn validate_poly(&self, f: &[usize]) -> Result<Poly> {
        if let Some(&c) = f.iter().find(|&&c| c as u64 >= self.q) {
            return Err(Error::invalid(format!(
                "coefficient {c} is not an element of F_{}",
                self.q
            )));
        }
        Ok(Self::trim(f.to_vec()))
    }
}

/// Monic irreducibles over `F_q` ordered by degree, then by the
/// little-endian base-`q` value of the non-leading coefficients.
///
/// Irreducibility is decided by trial division by every irreducible of at
/// most half the degree, all of which the stream has already produced.
#[derive(Debug, Clone)]
pub struct IrreducibleStream {
    field: Arc<GaloisField>,
    found: Vec<Poly>,
    degree: usize,
    code: u128,
}

impl IrreducibleStream {
    pub fn new(field: Arc<GaloisField>) -> Self {
        IrreducibleStream {
            field,
            found: Vec::new(),
            degree: 1,
            code: 0,
        }
    }

    fn candidate(&self) -> Poly {
        let q = self.field.q as u128;
        let mut code = self.code;
        let mut f = Vec::with_capacity(self.degree + 1);
        for _ in 0..self.degree {
            f.push((code % q) as usize);
            code /= q;
        }
        f.push(1);
        f
    }

    fn is_irreducible(&self, f: &[usize]) -> bool {
        let d = f.len() - 1;
        self.found
            .iter()
            .take_while(|g| 2 * (g.len() - 1) <= d)
            .all(|g| !self.field.rem(f, g).is_empty())
    }
}

impl Iterator for IrreducibleStream {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        loop {
            let count = (self.field.q as u128).checked_pow(self.degree as u32)?;
            if self.code == count {
                self.degree += 1;
                self.code = 0;
                continue;
            }
            let f = self.candidate();
            self.code += 1;
            if self.is_irreducible(&f) {
                self.found.push(f.clone());
                return Some(f);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(q: u64) -> IrreducibleStream {
        IrreducibleStream::new(Arc::new(GaloisField::new(q).unwrap()))
    }

    #[test]
    fn first_binary_irreducibles() {
        let first: Vec<Poly> = stream(2).take(4).collect();
        assert_eq!(
            first,
            vec![vec![0, 1], vec![1, 1], vec![1, 1, 1], vec![1, 1, 0, 1]]
        );
    }

    #[test]
    fn ternary_linears() {
        let first: Vec<Poly> = stream(3).take(3).collect();
        assert_eq!(first, vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree d over F_q: (1/d) Σ μ(d/e) q^e.
        let counts = |q: u64, d: usize| stream(q).take_while(|f| f.len() <= d + 1).filter(|f| f.len() == d + 1).count();
        assert_eq!(counts(2, 4), 3);
        assert_eq!(counts(2, 5), 6);
        assert_eq!(counts(3, 3), 8);
        assert_eq!(counts(4, 2), 6);
    }

    #[test]
    fn extension_field_arithmetic() {
        let f4 = GaloisField::new(4).unwrap();
        assert_eq!((f4.characteristic(), f4.degree()), (2, 2));
        // every nonzero element has an inverse
        assert!((1..4).all(|a| f4.inv[a] != usize::MAX));
        assert!(GaloisField::new(6).is_err());
        assert!(matches!(GaloisField::new(512), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn division_identity() {
        let f = GaloisField::new(3).unwrap();
        let a = vec![2, 0, 1, 1, 2];
        let b = vec![1, 2, 1];
        let (q, r) = f.div_rem(&a, &b);
        let mut back = f.mul_poly(&q, &b);
        back.resize(a.len().max(back.len()), 0);
        for (i, &c) in r.iter().enumerate() {
            back[i] = f.add(back[i], c);
        }
        assert_eq!(GaloisField::trim(back), a);
        assert!(r.len() < b.len());
    }
}
