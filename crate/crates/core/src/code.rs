//! Reed–Muller codes as affine-invariant codes in the group algebra F G.
//!
//! A code is given by its defining set `D`: a word `x` belongs to the code iff
//! `φ_s(x) = 0` for every `s ∈ D`, where
//! `φ_s(b X^0 + Σ a_i X^{α^i}) = 0^s b + Σ a_i α^{is}`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{weight2, Field, FieldElement};
use crate::matrix::BinaryMatrix;
use crate::vector::{BitVector, GroupAlgebraVector};

/// Largest m for which codeword enumeration is permitted.
pub const MAX_ENUMERATION_DEGREE: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeSpec {
    pub m: u32,
    pub rho: u32,
    pub defining_set: BTreeSet<u32>,
    pub dimension: usize,
    pub design_distance: usize,
}

impl CodeSpec {
    /// R(ρ, m) through its defining set.
    pub fn reed_muller(rho: u32, m: u32) -> Result<Self> {
        if rho == 0 || rho > m {
            return Err(Error::InvalidArgument(format!("order rho = {rho} must satisfy 0 < rho <= m = {m}")));
        }
        if m > crate::field::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        let defining_set = defining_set(rho, m);
        let length = 1usize << m;
        Ok(Self {
            m,
            rho,
            dimension: length - defining_set.len(),
            design_distance: 1usize << (m - rho),
            defining_set,
        })
    }

    /// First-order Reed–Muller code R(1, m).
    pub fn rm1(m: u32) -> Result<Self> {
        Self::reed_muller(1, m)
    }

    pub fn length(&self) -> usize {
        1usize << self.m
    }

    /// Packing radius ⌊(d − 1)/2⌋.
    pub fn packing_radius(&self) -> usize {
        (self.design_distance - 1) / 2
    }
}

/// `{i : 0 <= i < 2^m − 1, wt(i) < m − ρ}`.
pub fn defining_set(rho: u32, m: u32) -> BTreeSet<u32> {
    let n = (1u32 << m) - 1;
    (0..n)
        .filter(|&i| (weight2(i as u64) as i64) < m as i64 - rho as i64)
        .collect()
}

/// Orbit of `s` under multiplication by 2 modulo `n`, starting at `s`.
pub fn cyclotomic_coset(s: u32, n: u32) -> Vec<u32> {
    let mut coset = vec![s % n];
    let mut cur = (2 * (s as u64) % n as u64) as u32;
    while cur != coset[0] {
        coset.push(cur);
        cur = (2 * (cur as u64) % n as u64) as u32;
    }
    coset
}

/// `φ_s(v) = 0^s b + Σ a_i α^{is}` for `0 <= s <= n`.
pub fn phi_eval(field: &Field, s: u32, v: &GroupAlgebraVector) -> FieldElement {
    assert_eq!(v.len(), field.size());
    let mut acc = if s == 0 && v.get(0) { 1 } else { 0 };
    for pos in v.support().filter(|&p| p > 0) {
        let i = (pos - 1) as u64;
        acc ^= field.alpha_pow(i * s as u64).coords();
    }
    field.element(acc)
}

/// Parity-check matrix whose null space is the code.
///
/// For each cyclotomic coset representative `s ∈ D` the constraint `φ_s = 0`
/// is expanded over the polynomial basis into `m` binary rows; `s = 0`
/// contributes the single all-ones row. The rows are not reduced, but the
/// rank is checked against `|D|`.
pub fn build_parity_check(field: &Field, code: &CodeSpec) -> Result<BinaryMatrix> {
    if field.m() != code.m {
        return Err(Error::InvalidArgument(format!("field degree {} differs from code degree {}", field.m(), code.m)));
    }
    let h = parity_check_from_defining_set(field, &code.defining_set)?;
    let rank = h.rank();
    if rank != code.defining_set.len() {
        return Err(Error::RankMismatch {
            got: rank,
            expected: code.defining_set.len(),
        });
    }
    Ok(h)
}

/// Expands `φ_s = 0` for the coset representatives of `defining_set`, which
/// must be closed under doubling modulo n.
pub fn parity_check_from_defining_set(field: &Field, defining_set: &BTreeSet<u32>) -> Result<BinaryMatrix> {
    let n = field.n();
    for &s in defining_set {
        let double = ((2 * s as u64) % n as u64) as u32;
        if s >= n || !defining_set.contains(&double) {
            return Err(Error::DefiningSetNotClosed { n, s, double });
        }
    }
    let len = field.size();
    let m = field.m();
    let mut h = BinaryMatrix::new(len);
    let mut seen = BTreeSet::new();
    for &s in defining_set {
        if seen.contains(&s) {
            continue;
        }
        seen.extend(cyclotomic_coset(s, n));
        if s == 0 {
            h.push_row(BitVector::ones(len));
            continue;
        }
        let mut rows = vec![BitVector::zeros(len); m as usize];
        for i in 0..n {
            let value = field.alpha_pow(i as u64 * s as u64);
            for (j, row) in rows.iter_mut().enumerate() {
                if value.coord(j as u32) {
                    row.set(1 + i as usize, true);
                }
            }
        }
        for row in rows {
            h.push_row(row);
        }
    }
    Ok(h)
}

/// The evaluation construction of R(1, m): the all-ones row, then one row per
/// coordinate function `g ↦ g_j`.
pub fn classical_rm1_generator(field: &Field) -> BinaryMatrix {
    let len = field.size();
    let mut g = BinaryMatrix::new(len);
    g.push_row(BitVector::ones(len));
    for j in 0..field.m() {
        g.push_row(BitVector::from_positions(
            len,
            (0..len).filter(|&p| field.element_at(p).coord(j)),
        ));
    }
    g
}

/// All `2^rows` vectors of the row space of `basis`, in Gray-code order.
pub fn enumerate_row_space(basis: &BinaryMatrix) -> Vec<BitVector> {
    let k = basis.num_rows();
    assert!(k < 32, "row space of dimension {k} is too large to enumerate");
    let mut out = Vec::with_capacity(1 << k);
    let mut cur = BitVector::zeros(basis.num_cols());
    out.push(cur.clone());
    for i in 1u32..(1 << k) {
        cur.xor_assign(basis.row(i.trailing_zeros() as usize));
        out.push(cur.clone());
    }
    out
}

/// Minimum weight over the nonzero codewords, enumerating the null space of
/// the defining-set parity-check matrix.
pub fn min_distance_bruteforce(field: &Field, code: &CodeSpec) -> Result<usize> {
    if code.m > MAX_ENUMERATION_DEGREE || code.dimension > 2 * MAX_ENUMERATION_DEGREE as usize + 1 {
        return Err(Error::TooLarge {
            m: code.m,
            max: MAX_ENUMERATION_DEGREE,
        });
    }
    let basis = build_parity_check(field, code)?.null_space();
    Ok(enumerate_row_space(&basis)
        .iter()
        .skip(1)
        .map(BitVector::weight)
        .min()
        .unwrap_or(0))
}

/// A parity-check matrix in standard form with respect to an information set
/// `I`: the columns outside `I` form an identity matrix.
///
/// Row `q` of the matrix belongs to the `q`-th position outside `I` (ascending).
/// Alongside it the systematic generator is kept (row `j` is the codeword equal
/// to the `j`-th unit vector on `I`), which makes encoding and syndrome weights
/// a handful of word XORs.
#[derive(Debug, Clone)]
pub struct StandardParityCheck {
    len: usize,
    info_positions: Vec<usize>,
    check_positions: Vec<usize>,
    generator: Vec<BitVector>,
}

impl StandardParityCheck {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dimension(&self) -> usize {
        self.info_positions.len()
    }

    /// Positions of `I`, ascending; information bit `j` sits at `info_positions()[j]`.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn check_positions(&self) -> &[usize] {
        &self.check_positions
    }

    pub fn systematic_generator(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(self.len, self.generator.clone())
    }

    /// The `(2^m − k) × 2^m` matrix itself.
    pub fn matrix(&self) -> BinaryMatrix {
        let mut h = BinaryMatrix::new(self.len);
        for &c in &self.check_positions {
            let mut row = BitVector::zeros(self.len);
            row.set(c, true);
            for (j, &i) in self.info_positions.iter().enumerate() {
                if self.generator[j].get(c) {
                    row.set(i, true);
                }
            }
            h.push_row(row);
        }
        h
    }

    /// The unique codeword agreeing with `info_bits` on `I`.
    pub fn encode(&self, info_bits: &BitVector) -> Result<GroupAlgebraVector> {
        if info_bits.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                got: info_bits.len(),
            });
        }
        let mut c = BitVector::zeros(self.len);
        for j in info_bits.support() {
            c.xor_assign(&self.generator[j]);
        }
        Ok(c)
    }

    /// Symbols of `r` at the positions of `I`.
    pub fn info_symbols(&self, r: &GroupAlgebraVector) -> BitVector {
        BitVector::from_positions(
            self.dimension(),
            self.info_positions.iter().enumerate().filter(|(_, &p)| r.get(p)).map(|(j, _)| j),
        )
    }

    /// Codeword rebuilt from the information symbols of `r`.
    pub fn reencode(&self, r: &GroupAlgebraVector) -> GroupAlgebraVector {
        let mut c = BitVector::zeros(self.len);
        for (j, &p) in self.info_positions.iter().enumerate() {
            if r.get(p) {
                c.xor_assign(&self.generator[j]);
            }
        }
        c
    }

    /// `H_std · rᵀ`.
    pub fn syndrome(&self, r: &GroupAlgebraVector) -> BitVector {
        assert_eq!(r.len(), self.len);
        let diff = r.xor(&self.reencode(r));
        BitVector::from_positions(
            self.check_positions.len(),
            self.check_positions.iter().enumerate().filter(|(_, &p)| diff.get(p)).map(|(q, _)| q),
        )
    }

    /// Weight of `H_std · rᵀ`, i.e. the distance from `r` to the codeword that
    /// shares its information symbols.
    pub fn syndrome_weight(&self, r: &GroupAlgebraVector) -> usize {
        r.distance(&self.reencode(r))
    }

    /// Builds the standard form from a full-rank generator matrix by
    /// eliminating on the columns of `I`.
    pub fn from_generator(generator: &BinaryMatrix, info_positions: &[usize]) -> Result<Self> {
        let len = generator.num_cols();
        let info = sorted_positions(info_positions, len)?;
        let k = generator.rank();
        if info.len() != k {
            return Err(Error::NotAnInformationSet(format!(
                "{} positions for a code of dimension {k}",
                info.len()
            )));
        }
        let mut g = generator.clone();
        let pivots = g.reduce_on_columns(&info);
        if pivots.len() != k {
            return Err(Error::NotAnInformationSet(format!(
                "generator columns at I have rank {} < {k}",
                pivots.len()
            )));
        }
        // pivots visit `info` in order and all succeed, so row j pivots on info[j]
        let generator_rows = g.rows()[..k].to_vec();
        Ok(Self {
            len,
            check_positions: complement(&info, len),
            info_positions: info,
            generator: generator_rows,
        })
    }
}

/// Row-reduces `h` so that the columns outside `I` form the identity.
pub fn standardize(h: &BinaryMatrix, info_positions: &[usize]) -> Result<StandardParityCheck> {
    let len = h.num_cols();
    let info = sorted_positions(info_positions, len)?;
    let checks = complement(&info, len);
    let mut reduced = h.clone();
    let pivots = reduced.reduce_on_columns(&checks);
    if pivots.len() != checks.len() {
        return Err(Error::NotAnInformationSet(format!(
            "only {} of the {} columns outside I can be made unit columns",
            pivots.len(),
            checks.len()
        )));
    }
    if reduced.rows()[checks.len()..].iter().any(|r| !r.is_zero()) {
        return Err(Error::NotAnInformationSet(format!(
            "parity-check rank exceeds {}, so the code dimension is below |I| = {}",
            checks.len(),
            info.len()
        )));
    }
    let generator = info
        .iter()
        .map(|&i| {
            let mut c = BitVector::zeros(len);
            c.set(i, true);
            for (q, &p) in checks.iter().enumerate() {
                if reduced.get(q, i) {
                    c.set(p, true);
                }
            }
            c
        })
        .collect();
    Ok(StandardParityCheck {
        len,
        info_positions: info,
        check_positions: checks,
        generator,
    })
}

fn sorted_positions(positions: &[usize], len: usize) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = positions.iter().copied().collect();
    if set.len() != positions.len() {
        return Err(Error::NotAnInformationSet("repeated positions".into()));
    }
    if let Some(&p) = set.iter().find(|&&p| p >= len) {
        return Err(Error::InvalidPosition(p));
    }
    Ok(set.into_iter().collect())
}

fn complement(sorted: &[usize], len: usize) -> Vec<usize> {
    let mut inside = vec![false; len];
    for &p in sorted {
        inside[p] = true;
    }
    (0..len).filter(|&p| !inside[p]).collect()
}
