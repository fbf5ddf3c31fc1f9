//! Arithmetic in GF(2^m) through log/antilog tables.
//!
//! Elements are stored in polynomial coordinates over the basis
//! `{1, α, …, α^{m-1}}`, where α is the class of `X` modulo the field's
//! primitive polynomial. Addition is coordinate XOR; multiplication goes
//! through the exponent tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree (tables of 2^16 entries).
pub const MAX_DEGREE: u32 = 16;

/// A field element in polynomial coordinates; bit `j` is the coefficient of α^j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn coords(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coefficient of α^j.
    pub fn coord(self, j: u32) -> bool {
        (self.0 >> j) & 1 == 1
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Number of ones in the binary expansion of `k`.
pub fn weight2(k: u64) -> u32 {
    k.count_ones()
}

/// Multiplicative order of the class of `X` modulo `poly`, if `X` is a unit
/// whose order divides into `2^m - 1` steps.
///
/// Returns `None` when no power `X^k` with `1 <= k <= 2^m - 1` equals 1.
pub fn order_of_x(poly: u32, m: u32) -> Option<u32> {
    let n = (1u32 << m) - 1;
    let top = 1u32 << m;
    let mut cur = 1u32;
    for k in 1..=n {
        cur <<= 1;
        if cur & top != 0 {
            cur ^= poly;
        }
        if cur == 1 {
            return Some(k);
        }
    }
    None
}

/// Whether `poly` (bitmask including the `X^m` term) is primitive of degree `m`.
pub fn is_primitive(poly: u32, m: u32) -> bool {
    degree(poly) == Some(m) && order_of_x(poly, m) == Some((1u32 << m) - 1)
}

/// The numerically smallest primitive polynomial of degree `m`.
pub fn default_primitive_poly(m: u32) -> Result<u32> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(m));
    }
    // constant term must be 1 for X to be a unit
    ((1u32 << m) | 1..(1u32 << (m + 1)))
        .step_by(2)
        .find(|&p| is_primitive(p, m))
        .ok_or(Error::UnsupportedDegree(m))
}

fn degree(poly: u32) -> Option<u32> {
    if poly == 0 {
        None
    } else {
        Some(31 - poly.leading_zeros())
    }
}

/// GF(2^m) with a fixed primitive element α.
///
/// The tables are immutable after construction, so a `Field` can be shared
/// freely between threads.
#[derive(Debug, Clone)]
pub struct Field {
    m: u32,
    n: u32,
    poly: u32,
    antilog: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    /// Field of degree `m` (3 <= m <= 16) with the default primitive polynomial.
    pub fn new(m: u32) -> Result<Self> {
        Self::with_options(m, None, false)
    }

    pub fn with_poly(m: u32, poly: Option<u32>) -> Result<Self> {
        Self::with_options(m, poly, false)
    }

    /// `allow_small_degree` admits `m = 1, 2`, which the code constructions
    /// treat as degenerate.
    pub fn with_options(m: u32, poly: Option<u32>, allow_small_degree: bool) -> Result<Self> {
        let min = if allow_small_degree { 1 } else { 3 };
        if m < min || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        let n = (1u32 << m) - 1;
        let poly = match poly {
            Some(p) => {
                if degree(p) != Some(m) {
                    return Err(Error::DegreeMismatch { poly: p, m });
                }
                let order = order_of_x(p, m);
                if order != Some(n) {
                    return Err(Error::NotPrimitive { poly: p, order, n });
                }
                p
            }
            None => default_primitive_poly(m)?,
        };

        let size = 1usize << m;
        let mut antilog = Vec::with_capacity(n as usize);
        let mut log = vec![u32::MAX; size];
        let mut cur = 1u32;
        for e in 0..n {
            antilog.push(cur);
            log[cur as usize] = e;
            cur <<= 1;
            if cur & (1 << m) != 0 {
                cur ^= poly;
            }
        }
        debug_assert_eq!(cur, 1);
        Ok(Self {
            m,
            n,
            poly,
            antilog,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Order of the multiplicative group, `2^m - 1`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of field elements, `2^m`.
    pub fn size(&self) -> usize {
        1usize << self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    /// α^e, with the exponent reduced modulo n.
    pub fn alpha_pow(&self, e: u64) -> FieldElement {
        FieldElement(self.antilog[(e % self.n as u64) as usize])
    }

    /// Builds an element from coordinates; panics if they exceed m bits.
    pub fn element(&self, coords: u32) -> FieldElement {
        assert!(coords < (1 << self.m), "coordinates {coords:#x} exceed GF(2^{})", self.m);
        FieldElement(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..1u32 << self.m).map(FieldElement)
    }

    /// Exponent e with α^e = x, or `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(x.0 ^ y.0)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let e = self.log[x.0 as usize] + self.log[y.0 as usize];
        FieldElement(self.antilog[(e % self.n) as usize])
    }

    /// x^k with the convention 0^0 = 1.
    pub fn pow(&self, x: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        match self.log(x) {
            None => FieldElement::ZERO,
            Some(e) => self.alpha_pow(e as u64 * (k % self.n as u64)),
        }
    }

    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        self.log(x)
            .map(|e| FieldElement(self.antilog[((self.n - e) % self.n) as usize]))
    }

    /// Position of `x` in the vector order `[0, α^0, α^1, …, α^{n-1}]`.
    pub fn position_of(&self, x: FieldElement) -> usize {
        match self.log(x) {
            None => 0,
            Some(e) => 1 + e as usize,
        }
    }

    /// Inverse of [`Field::position_of`].
    pub fn element_at(&self, pos: usize) -> FieldElement {
        if pos == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(self.antilog[pos - 1])
        }
    }
}
