//! Permutations of the 2^m positions: translations σ_k, powers of the
//! multiplicative shift T_α, and general affine maps `x ↦ ax + b`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::vector::GroupAlgebraVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PermLabel {
    Identity,
    Sigma { k: u32 },
    TAlphaPower { e: u32 },
    Affine { a: u32, b: u32 },
    Composite,
}

impl fmt::Display for PermLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermLabel::Identity => write!(f, "1_G"),
            PermLabel::Sigma { k } => write!(f, "sigma_{k}"),
            PermLabel::TAlphaPower { e } => write!(f, "T_alpha^{e}"),
            PermLabel::Affine { a, b } => write!(f, "x -> {a:#x}*x + {b:#x}"),
            PermLabel::Composite => write!(f, "composite"),
        }
    }
}

/// A bijection on positions; `image[p]` is where position `p` goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointPermutation {
    image: Vec<u32>,
    label: PermLabel,
}

impl PointPermutation {
    pub fn identity(len: usize) -> Self {
        Self {
            image: (0..len as u32).collect(),
            label: PermLabel::Identity,
        }
    }

    /// Checks bijectivity.
    pub fn from_image(image: Vec<u32>, label: PermLabel) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &p in &image {
            let p = p as usize;
            if p >= image.len() || seen[p] {
                return Err(Error::InvalidArgument("image is not a bijection".into()));
            }
            seen[p] = true;
        }
        Ok(Self { image, label })
    }

    /// Translation `g ↦ g + α^k`.
    pub fn sigma(field: &Field, k: u32) -> Self {
        let shift = field.alpha_pow(k as u64);
        let image = (0..field.size())
            .map(|p| field.position_of(field.add(field.element_at(p), shift)) as u32)
            .collect();
        Self {
            image,
            label: PermLabel::Sigma { k: k % field.n() },
        }
    }

    /// `T_α^e`: fixes position 0 and sends α^i to α^{i+e}.
    pub fn t_alpha_power(field: &Field, e: u64) -> Self {
        Self::t_alpha_power_on(field.size(), e)
    }

    /// `T_α^e` on words of length `len = 2^m`.
    pub fn t_alpha_power_on(len: usize, e: u64) -> Self {
        let n = len as u64 - 1;
        let e = e % n;
        let image = std::iter::once(0)
            .chain((0..n).map(|i| (1 + (i + e) % n) as u32))
            .collect();
        Self {
            image,
            label: if e == 0 {
                PermLabel::Identity
            } else {
                PermLabel::TAlphaPower { e: e as u32 }
            },
        }
    }

    /// `x ↦ a x + b` with `a ≠ 0`.
    pub fn affine(field: &Field, a: FieldElement, b: FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        let image = field
            .elements()
            .map(|x| field.position_of(field.add(field.mul(a, x), b)) as u32);
        // elements() runs in coordinate order; reorder to position order
        let by_coords: Vec<u32> = image.collect();
        let image = (0..field.size())
            .map(|p| by_coords[field.element_at(p).coords() as usize])
            .collect();
        let label = if a == FieldElement::ONE && b.is_zero() {
            PermLabel::Identity
        } else {
            PermLabel::Affine {
                a: a.coords(),
                b: b.coords(),
            }
        };
        Ok(Self { image, label })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn label(&self) -> &PermLabel {
        &self.label
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    #[inline]
    pub fn map(&self, p: usize) -> usize {
        self.image[p] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &PointPermutation) -> PointPermutation {
        assert_eq!(self.len(), other.len());
        let image = other.image.iter().map(|&p| self.image[p as usize]).collect();
        let label = match (&self.label, &other.label) {
            (PermLabel::Identity, l) | (l, PermLabel::Identity) => l.clone(),
            _ => PermLabel::Composite,
        };
        PointPermutation { image, label }
    }

    pub fn invert(&self) -> PointPermutation {
        let mut image = vec![0u32; self.len()];
        for (p, &q) in self.image.iter().enumerate() {
            image[q as usize] = p as u32;
        }
        let label = match self.label {
            PermLabel::Identity => PermLabel::Identity,
            PermLabel::Sigma { k } => PermLabel::Sigma { k },
            _ => PermLabel::Composite,
        };
        PointPermutation { image, label }
    }

    /// Moves coefficients so that `out[τ(p)] = v[p]`.
    pub fn apply(&self, v: &GroupAlgebraVector) -> GroupAlgebraVector {
        assert_eq!(v.len(), self.len());
        let mut out = GroupAlgebraVector::zeros(v.len());
        for p in v.support() {
            out.set(self.image[p] as usize, true);
        }
        out
    }
}

/// `T_α^e(v)` without materializing the permutation.
pub fn apply_t_alpha_power(v: &GroupAlgebraVector, e: u64) -> GroupAlgebraVector {
    let n = v.len() as u64 - 1;
    let e = e % n;
    let mut out = GroupAlgebraVector::zeros(v.len());
    for p in v.support() {
        let q = if p == 0 { 0 } else { 1 + (p as u64 - 1 + e) % n };
        out.set(q as usize, true);
    }
    out
}

/// The ordered set `Σ = [1_G, σ_0, σ_1, …, σ_{n−1}]`.
#[derive(Debug, Clone)]
pub struct SigmaSequence {
    elements: Vec<PointPermutation>,
}

impl SigmaSequence {
    pub fn new(field: &Field) -> Self {
        let elements = std::iter::once(PointPermutation::identity(field.size()))
            .chain((0..field.n()).map(|k| PointPermutation::sigma(field, k)))
            .collect();
        Self { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, phase: usize) -> &PointPermutation {
        &self.elements[phase]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PointPermutation> {
        self.elements.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{classical_rm1_generator, enumerate_row_space, CodeSpec};
    use crate::matrix::BinaryMatrix;

    fn is_codeword(h: &BinaryMatrix, v: &GroupAlgebraVector) -> bool {
        h.mul_vec(v).is_zero()
    }

    #[test]
    fn sigma_properties() {
        let f = Field::new(4).unwrap();
        for k in 0..f.n() {
            let s = PointPermutation::sigma(&f, k);
            assert!(s.compose(&s).is_identity());
            assert_eq!(s.map(0), 1 + k as usize);
            assert!((0..16).all(|p| s.map(p) != p));
        }
        // α^4 + 1 = α under x^4 + x + 1
        let s0 = PointPermutation::sigma(&f, 0);
        assert_eq!(s0.map(1 + 4), 1 + 1);
    }

    #[test]
    fn t_alpha_properties() {
        let f = Field::new(4).unwrap();
        assert!(PointPermutation::t_alpha_power(&f, 0).is_identity());
        assert!(PointPermutation::t_alpha_power(&f, 15).is_identity());
        for e1 in 0..15 {
            let t1 = PointPermutation::t_alpha_power(&f, e1);
            assert_eq!(t1.map(0), 0);
            for e2 in 0..15 {
                let t2 = PointPermutation::t_alpha_power(&f, e2);
                assert_eq!(t1.compose(&t2).image(), PointPermutation::t_alpha_power(&f, e1 + e2).image());
            }
        }
        // T_α is multiplication by α
        let t = PointPermutation::t_alpha_power(&f, 1);
        let a = PointPermutation::affine(&f, f.alpha(), FieldElement::ZERO).unwrap();
        assert_eq!(t.image(), a.image());
    }

    #[test]
    fn t_alpha_acts_as_double_shift_under_crt() {
        let f = Field::new(4).unwrap();
        let crt = crate::crt::CrtMap::new(5, 3).unwrap();
        for e in 0..15u64 {
            let t = PointPermutation::t_alpha_power(&f, e);
            for i in 0..15u64 {
                let j = (t.map(1 + i as usize) - 1) as u64;
                let (a, b) = crt.forward(i);
                assert_eq!(crt.forward(j), ((a + e) % 5, (b + e) % 3));
            }
        }
    }

    #[test]
    fn affine_group_laws() {
        let f = Field::new(4).unwrap();
        assert!(PointPermutation::affine(&f, FieldElement::ONE, FieldElement::ZERO)
            .unwrap()
            .is_identity());
        assert_eq!(
            PointPermutation::affine(&f, FieldElement::ZERO, FieldElement::ONE).unwrap_err(),
            Error::ZeroMultiplier
        );
        let p = PointPermutation::affine(&f, f.alpha_pow(3), f.alpha_pow(7)).unwrap();
        let q = PointPermutation::sigma(&f, 2).compose(&PointPermutation::t_alpha_power(&f, 5));
        assert_eq!(p.compose(&q).invert().image(), q.invert().compose(&p.invert()).image());
        assert!(p.invert().compose(&p).is_identity());
        // σ_k is the affine map with a = 1, b = α^k
        let s = PointPermutation::sigma(&f, 9);
        let a = PointPermutation::affine(&f, FieldElement::ONE, f.alpha_pow(9)).unwrap();
        assert_eq!(s.image(), a.image());
    }

    #[test]
    fn apply_moves_coefficients_forward() {
        let f = Field::new(4).unwrap();
        let t = PointPermutation::t_alpha_power(&f, 1);
        let v = GroupAlgebraVector::from_positions(16, [0, 1, 15]);
        // α^0 -> α^1, α^14 -> α^0
        assert_eq!(t.apply(&v).support().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn automorphisms_preserve_rm1_m4() {
        let f = Field::new(4).unwrap();
        let code = CodeSpec::rm1(4).unwrap();
        let h = crate::code::build_parity_check(&f, &code).unwrap();
        let words = enumerate_row_space(&classical_rm1_generator(&f));
        let mut perms = Vec::new();
        for k in 0..f.n() {
            perms.push(PointPermutation::sigma(&f, k));
            perms.push(PointPermutation::t_alpha_power(&f, k as u64));
        }
        for a in f.elements().skip(1) {
            for b in f.elements() {
                perms.push(PointPermutation::affine(&f, a, b).unwrap());
            }
        }
        for p in &perms {
            for c in &words {
                assert!(is_codeword(&h, &p.apply(c)), "{} broke a codeword", p.label());
            }
        }
    }

    #[test]
    fn fast_t_alpha_matches_permutation() {
        let f = Field::new(6).unwrap();
        let v = GroupAlgebraVector::from_positions(64, [0, 3, 17, 62, 63]);
        for e in 0..70 {
            assert_eq!(apply_t_alpha_power(&v, e), PointPermutation::t_alpha_power(&f, e).apply(&v));
        }
    }

    #[test]
    fn sigma_sequence_order() {
        let f = Field::new(4).unwrap();
        let seq = SigmaSequence::new(&f);
        assert_eq!(seq.len(), 16);
        assert!(seq.get(0).is_identity());
        for k in 0..15 {
            assert_eq!(seq.get(k + 1).label(), &PermLabel::Sigma { k: k as u32 });
        }
    }
}
