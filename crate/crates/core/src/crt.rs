//! Decompositions `n = r1·r2`, the CRT index map, and the information sets
//! built from them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::code::classical_rm1_generator;
use crate::error::{Error, Result};
use crate::field::Field;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `x` modulo `modulus` via the extended Euclidean algorithm.
pub fn mod_inverse(x: u64, modulus: u64) -> Result<u64> {
    let (mut old_r, mut r) = (x as i128 % modulus as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        if modulus == 1 {
            return Ok(0);
        }
        return Err(Error::NotCoprime { x, modulus });
    }
    Ok(old_s.rem_euclid(modulus as i128) as u64)
}

/// Least `a > 0` with `x^a ≡ 1 (mod modulus)`.
pub fn mult_order(x: u64, modulus: u64) -> Result<u32> {
    if modulus == 0 || gcd(x, modulus) != 1 {
        return Err(Error::NotCoprime { x, modulus });
    }
    if modulus == 1 {
        return Ok(1);
    }
    let x = x % modulus;
    let mut cur = x;
    let mut a = 1;
    while cur != 1 {
        cur = cur * x % modulus;
        a += 1;
    }
    Ok(a)
}

/// An ordered decomposition `2^m − 1 = r1·r2` with `gcd(r1, r2) = 1`,
/// `r1, r2 > 1`, and `a = Ord_{r1}(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factorization {
    pub m: u32,
    pub r1: u64,
    pub r2: u64,
    pub a: u32,
}

impl Factorization {
    /// Validates the decomposition with the given `r1`.
    pub fn new(m: u32, r1: u64) -> Result<Self> {
        if !(1..=crate::field::MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        let n = (1u64 << m) - 1;
        if r1 <= 1 || r1 >= n || !n.is_multiple_of(r1) || gcd(r1, n / r1) != 1 {
            return Err(Error::InvalidDecomposition { m, r1, r2: n.checked_div(r1).unwrap_or(0) });
        }
        Ok(Self {
            m,
            r1,
            r2: n / r1,
            a: mult_order(2, r1)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.r1 * self.r2
    }

    /// `Ord_{r1}(2) = m`.
    pub fn is_full_order(&self) -> bool {
        self.a == self.m
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.m, self.r2).expect("swapped orientation of a valid decomposition")
    }
}

/// Every ordered coprime decomposition of `2^m − 1` with both factors > 1,
/// sorted by `r1`. Both orientations of each split appear.
pub fn valid_factorizations(m: u32) -> Vec<Factorization> {
    if !(1..=crate::field::MAX_DEGREE).contains(&m) {
        return Vec::new();
    }
    let n = (1u64 << m) - 1;
    (2..n).filter_map(|r1| Factorization::new(m, r1).ok()).collect()
}

/// Among the orientations with `Ord_{r1}(2) = m`, the one with the largest
/// number of correctable errors `s`; ties go to the smaller `r1`.
pub fn select_full_order_factor(m: u32) -> Result<Factorization> {
    let mut best: Option<(usize, Factorization)> = None;
    for f in valid_factorizations(m).into_iter().filter(Factorization::is_full_order) {
        let s = crate::pd::s_value(&f)?;
        if best.is_none_or(|(bs, _)| s > bs) {
            best = Some((s, f));
        }
    }
    best.map(|(_, f)| f).ok_or(Error::NoValidDecomposition { m })
}

/// The ring isomorphism `Z_n → Z_{r1} × Z_{r2}`, `i ↦ (i mod r1, i mod r2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrtMap {
    r1: u64,
    r2: u64,
    // idempotents: e1 ≡ (1, 0), e2 ≡ (0, 1)
    e1: u64,
    e2: u64,
}

impl CrtMap {
    pub fn new(r1: u64, r2: u64) -> Result<Self> {
        let n = r1 * r2;
        let e1 = r2 * mod_inverse(r2, r1)? % n;
        let e2 = r1 * mod_inverse(r1, r2)? % n;
        Ok(Self { r1, r2, e1, e2 })
    }

    pub fn from_factorization(f: &Factorization) -> Self {
        Self::new(f.r1, f.r2).expect("factors of a valid decomposition are coprime")
    }

    pub fn n(&self) -> u64 {
        self.r1 * self.r2
    }

    pub fn forward(&self, i: u64) -> (u64, u64) {
        (i % self.r1, i % self.r2)
    }

    pub fn inverse(&self, i1: u64, i2: u64) -> u64 {
        let n = self.n() as u128;
        ((self.e1 as u128 * (i1 % self.r1) as u128 + self.e2 as u128 * (i2 % self.r2) as u128) % n) as u64
    }
}

/// `Γ = {(i1, i2) : 0 <= i1 < a, 0 <= i2 < m/a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaSet {
    pub pairs: BTreeSet<(u64, u64)>,
}

impl GammaSet {
    pub fn new(f: &Factorization) -> Self {
        let a = f.a as u64;
        let pairs = (0..a)
            .flat_map(|i1| (0..f.m as u64 / a).map(move |i2| (i1, i2)))
            .collect();
        Self { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (u64, u64)) -> bool {
        self.pairs.contains(&pair)
    }
}

/// `I = {0} ∪ {α^i : i ∈ φ^{-1}(Γ)}`, together with `I' = I \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InformationSet {
    pub factorization: Factorization,
    pub gamma: GammaSet,
    /// `φ^{-1}(Γ)`, ascending.
    pub exponents: Vec<u32>,
}

impl InformationSet {
    /// Positions of `I` in the vector order `[0, α^0, …]`, ascending.
    pub fn positions(&self) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.exponents.iter().map(|&e| 1 + e as usize))
            .collect()
    }

    pub fn contains_zero(&self) -> bool {
        true
    }

    /// Positions of `I'`.
    pub fn i_prime_positions(&self) -> Vec<usize> {
        self.exponents.iter().map(|&e| 1 + e as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.exponents.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The information set of a decomposition with `Ord_{r1}(2) = m`, where Γ
/// reduces to `{(i1, 0) : 0 <= i1 < m}`.
pub fn build_info_set(field: &Field, f: &Factorization) -> Result<InformationSet> {
    if !f.is_full_order() {
        return Err(Error::NotFullOrder { m: f.m, r1: f.r1, a: f.a });
    }
    theorem1_info_set(field, f)
}

/// The information set for any valid decomposition, using Γ with `a = Ord_{r1}(2)`.
/// The generator-column rank is checked before returning.
pub fn theorem1_info_set(field: &Field, f: &Factorization) -> Result<InformationSet> {
    if field.m() != f.m {
        return Err(Error::InvalidArgument(format!("field degree {} differs from m = {}", field.m(), f.m)));
    }
    let crt = CrtMap::from_factorization(f);
    let gamma = GammaSet::new(f);
    let mut exponents: Vec<u32> = gamma.pairs.iter().map(|&(i1, i2)| crt.inverse(i1, i2) as u32).collect();
    exponents.sort_unstable();
    let set = InformationSet {
        factorization: *f,
        gamma,
        exponents,
    };
    let rank = generator_rank_at(field, &set.positions());
    if rank != f.m as usize + 1 || set.len() != f.m as usize + 1 {
        return Err(Error::NotAnInformationSet(format!(
            "generator columns at I have rank {rank}, |I| = {}",
            set.len()
        )));
    }
    Ok(set)
}

/// Rank of the R(1, m) generator restricted to `positions`.
pub fn generator_rank_at(field: &Field, positions: &[usize]) -> usize {
    classical_rm1_generator(field).select_columns(positions).rank()
}

/// Rank of the punctured (position 0 removed) generator restricted to
/// positions of `G*`.
pub fn punctured_generator_rank_at(field: &Field, positions: &[usize]) -> usize {
    let g = classical_rm1_generator(field);
    let punctured: Vec<usize> = (1..field.size()).collect();
    let g_star = g.select_columns(&punctured);
    let cols: Vec<usize> = positions.iter().map(|&p| p - 1).collect();
    g_star.select_columns(&cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(mult_order(2, 3).unwrap(), 2);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(2, 9).unwrap(), 6);
        assert_eq!(mult_order(2, 23).unwrap(), 11);
        assert!(matches!(mult_order(2, 6), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn factorizations() {
        let pairs = |m| {
            valid_factorizations(m)
                .into_iter()
                .filter(|f| f.r1 < f.r2)
                .map(|f| (f.r1, f.r2, f.a))
                .collect::<Vec<_>>()
        };
        assert_eq!(pairs(8), vec![(3, 85, 2), (5, 51, 4), (15, 17, 4)]);
        assert!(valid_factorizations(5).is_empty());
        assert!(valid_factorizations(3).is_empty());
        assert!(valid_factorizations(7).is_empty());
        let six = valid_factorizations(6);
        assert_eq!(six.len(), 2);
        assert_eq!((six[0].r1, six[0].r2, six[0].a), (7, 9, 3));
        assert_eq!((six[1].r1, six[1].r2, six[1].a), (9, 7, 6));
        assert_eq!(six[0].swapped(), six[1]);
    }

    #[test]
    fn selection() {
        let pick = |m| {
            let f = select_full_order_factor(m).unwrap();
            (f.r1, f.r2)
        };
        assert_eq!(pick(4), (5, 3));
        assert_eq!(pick(6), (9, 7));
        assert_eq!(pick(10), (11, 93));
        assert_eq!(select_full_order_factor(5).unwrap_err(), Error::NoValidDecomposition { m: 5 });
    }

    #[test]
    fn crt_roundtrip() {
        for (r1, r2) in [(5, 3), (9, 7), (23, 89), (257, 255)] {
            let crt = CrtMap::new(r1, r2).unwrap();
            let n = r1 * r2;
            let mut seen = vec![false; n as usize];
            for i in 0..n {
                let (a, b) = crt.forward(i);
                assert_eq!(crt.inverse(a, b), i);
                let idx = (a * r2 + b) as usize;
                assert!(!seen[idx]);
                seen[idx] = true;
            }
            // ring homomorphism for a few sums/products
            let (x, y) = (n / 3, n / 2 + 1);
            let (fx, fy) = (crt.forward(x), crt.forward(y));
            assert_eq!(crt.forward((x + y) % n), ((fx.0 + fy.0) % r1, (fx.1 + fy.1) % r2));
            assert_eq!(crt.forward(x * y % n), (fx.0 * fy.0 % r1, fx.1 * fy.1 % r2));
        }
    }

    #[test]
    fn m4_information_set() {
        let field = Field::new(4).unwrap();
        let f = Factorization::new(4, 5).unwrap();
        let i = build_info_set(&field, &f).unwrap();
        // brute force: i ≡ 0 (mod 3) and i mod 5 ∈ {0,1,2,3}
        let brute: Vec<u32> = (0..15).filter(|i| i % 3 == 0 && i % 5 < 4).collect();
        assert_eq!(brute, vec![0, 3, 6, 12]);
        assert_eq!(i.exponents, brute);
        assert_eq!(i.positions(), vec![0, 1, 4, 7, 13]);
        assert_eq!(generator_rank_at(&field, &i.positions()), 5);
        assert!(punctured_generator_rank_at(&field, &i.i_prime_positions()) < 5);
        // (3, 5) has a = 2 ≠ 4
        let g = Factorization::new(4, 3).unwrap();
        assert!(matches!(build_info_set(&field, &g), Err(Error::NotFullOrder { .. })));
        assert_eq!(theorem1_info_set(&field, &g).unwrap().len(), 5);
    }
}
