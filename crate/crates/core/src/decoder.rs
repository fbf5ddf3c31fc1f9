//! Permutation decoding.
//!
//! Algorithm I is classical permutation decoding: try automorphisms until the
//! information symbols look correct, then re-encode and undo the permutation.
//! Algorithm II wraps it in an outer loop over `Σ = [1_G, σ_0, …, σ_{n−1}]`,
//! so an error sitting on position 0 (fixed by every T_α^e) is first
//! translated away.

use serde::Serialize;

use crate::code::{classical_rm1_generator, enumerate_row_space, CodeSpec, StandardParityCheck, MAX_ENUMERATION_DEGREE};
use crate::crt::{build_info_set, select_full_order_factor, Factorization, InformationSet};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pd::PdLikeSet;
use crate::perm::{apply_t_alpha_power, PointPermutation, SigmaSequence};
use crate::vector::{BitVector, GroupAlgebraVector};

/// Thresholds for the syndrome test and the search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecoderConfig {
    /// Largest syndrome weight accepted as "information symbols correct".
    pub t_check: usize,
    /// Number of Σ elements tried before giving up.
    pub max_phases: usize,
    /// Error weights up to this value are guaranteed to decode.
    pub guarantee_limit: usize,
    pub best_effort: bool,
}

impl DecoderConfig {
    /// Packing-radius threshold `2^{m−2} − 1` and `s + 1` phases. With
    /// `best_effort` the whole of Σ is searched.
    pub fn new(m: u32, s: usize, best_effort: bool) -> Self {
        let t_check = (1usize << (m - 1)).saturating_sub(1) / 2;
        let n = (1usize << m) - 1;
        Self {
            t_check,
            max_phases: if best_effort { n + 1 } else { (s + 1).min(n + 1) },
            guarantee_limit: s.min(t_check),
            best_effort,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    Decoded,
    Failure,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// The decoded codeword; on failure the received word is echoed back.
    pub codeword: GroupAlgebraVector,
    /// Permutation applied to the received word before recovery.
    #[serde(skip)]
    pub total_perm: PointPermutation,
    /// Index into Σ (Algorithm II) of the translation in force; 0 for Algorithm I.
    pub phase_index: Option<usize>,
    /// Power of T_α that passed the test (for Algorithm I: index into the automorphism list).
    pub pd_exponent: Option<u32>,
    /// Number of syndrome-weight evaluations.
    pub syndrome_checks: u64,
    /// Σ elements consumed.
    pub phases_used: usize,
    pub syndrome_weight: Option<usize>,
    /// Distance between the received word and the decoded codeword.
    pub err_weight_observed: Option<usize>,
}

impl DecodeResult {
    pub fn is_decoded(&self) -> bool {
        self.status == DecodeStatus::Decoded
    }

    fn failure(r: &GroupAlgebraVector, checks: u64, phases: usize) -> Self {
        Self {
            status: DecodeStatus::Failure,
            codeword: r.clone(),
            total_perm: PointPermutation::identity(r.len()),
            phase_index: None,
            pd_exponent: None,
            syndrome_checks: checks,
            phases_used: phases,
            syndrome_weight: None,
            err_weight_observed: None,
        }
    }
}

/// Whether the symbols of `r` on `I` are error-free, judged by the syndrome weight.
pub fn info_symbols_correct(std: &StandardParityCheck, r: &GroupAlgebraVector, cfg: &DecoderConfig) -> bool {
    std.syndrome_weight(r) <= cfg.t_check
}

/// Algorithm I over the automorphisms `perms`, tried in order.
pub fn decode_alg1(
    r: &GroupAlgebraVector,
    perms: &[PointPermutation],
    std: &StandardParityCheck,
    cfg: &DecoderConfig,
) -> DecodeResult {
    let mut checks = 0;
    for (idx, tau) in perms.iter().enumerate() {
        let moved = tau.apply(r);
        checks += 1;
        let w = std.syndrome_weight(&moved);
        if w <= cfg.t_check {
            let codeword = tau.invert().apply(&std.reencode(&moved));
            return DecodeResult {
                status: DecodeStatus::Decoded,
                err_weight_observed: Some(codeword.distance(r)),
                codeword,
                total_perm: tau.clone(),
                phase_index: Some(0),
                pd_exponent: Some(idx as u32),
                syndrome_checks: checks,
                phases_used: 1,
                syndrome_weight: Some(w),
            };
        }
    }
    DecodeResult::failure(r, checks, 1)
}

/// Algorithm II. Phase `j` applies the `j`-th element of Σ to the original
/// received word, then scans `T_α^e` for `e = 0, …, n − 1`. On success the
/// full composition `T_α^e ∘ σ` is inverted on the re-encoded word.
pub fn decode_alg2(
    r: &GroupAlgebraVector,
    pd: &PdLikeSet,
    sigma: &SigmaSequence,
    std: &StandardParityCheck,
    cfg: &DecoderConfig,
) -> DecodeResult {
    let n = pd.order as u64;
    let phases = cfg.max_phases.min(sigma.len());
    let mut checks = 0;
    for phase in 0..phases {
        let translation = sigma.get(phase);
        let base = translation.apply(r);
        for e in 0..n {
            let moved = apply_t_alpha_power(&base, e);
            checks += 1;
            let w = std.syndrome_weight(&moved);
            if w > cfg.t_check {
                continue;
            }
            let shift = PointPermutation::t_alpha_power_on(r.len(), e);
            let total = shift.compose(translation);
            let codeword = total.invert().apply(&std.reencode(&moved));
            return DecodeResult {
                status: DecodeStatus::Decoded,
                err_weight_observed: Some(codeword.distance(r)),
                codeword,
                total_perm: total,
                phase_index: Some(phase),
                pd_exponent: Some(e as u32),
                syndrome_checks: checks,
                phases_used: phase + 1,
                syndrome_weight: Some(w),
            };
        }
    }
    DecodeResult::failure(r, checks, phases)
}

/// Nearest codewords of R(1, m) by exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct MdResult {
    pub codeword: GroupAlgebraVector,
    pub distance: usize,
    /// Number of codewords at the minimum distance; above 1 means a tie.
    pub nearest_count: usize,
}

impl MdResult {
    pub fn is_tie(&self) -> bool {
        self.nearest_count > 1
    }
}

/// Minimum-distance decoding by enumerating all `2^{m+1}` codewords of the
/// evaluation construction. Refused for `m > 8`.
pub struct MdOracle {
    codewords: Vec<GroupAlgebraVector>,
}

impl MdOracle {
    pub fn new(field: &Field) -> Result<Self> {
        if field.m() > MAX_ENUMERATION_DEGREE {
            return Err(Error::TooLarge {
                m: field.m(),
                max: MAX_ENUMERATION_DEGREE,
            });
        }
        Ok(Self {
            codewords: enumerate_row_space(&classical_rm1_generator(field)),
        })
    }

    pub fn codewords(&self) -> &[GroupAlgebraVector] {
        &self.codewords
    }

    pub fn decode(&self, r: &GroupAlgebraVector) -> MdResult {
        let mut best = usize::MAX;
        let mut best_idx = 0;
        let mut count = 0;
        for (i, c) in self.codewords.iter().enumerate() {
            let d = c.distance(r);
            if d < best {
                best = d;
                best_idx = i;
                count = 1;
            } else if d == best {
                count += 1;
            }
        }
        MdResult {
            codeword: self.codewords[best_idx].clone(),
            distance: best,
            nearest_count: count,
        }
    }
}

pub fn md_oracle(r: &GroupAlgebraVector, field: &Field) -> Result<MdResult> {
    Ok(MdOracle::new(field)?.decode(r))
}

/// Everything needed to encode and decode R(1, m) with Algorithm II for one
/// decomposition of `2^m − 1`.
#[derive(Debug, Clone)]
pub struct PermutationDecoder {
    pub field: Field,
    pub code: CodeSpec,
    pub info_set: InformationSet,
    pub std: StandardParityCheck,
    pub pd: PdLikeSet,
    pub sigma: SigmaSequence,
    pub config: DecoderConfig,
}

impl PermutationDecoder {
    /// Default field and the decomposition maximizing `s`.
    pub fn for_degree(m: u32) -> Result<Self> {
        let field = Field::new(m)?;
        let f = select_full_order_factor(m)?;
        Self::new(field, f)
    }

    /// The standard form is derived from the evaluation generator, which
    /// stays cheap up to m = 16.
    pub fn new(field: Field, factorization: Factorization) -> Result<Self> {
        let code = CodeSpec::rm1(field.m())?;
        let info_set = build_info_set(&field, &factorization)?;
        let std = StandardParityCheck::from_generator(&classical_rm1_generator(&field), &info_set.positions())?;
        let pd = PdLikeSet::new(info_set.clone())?;
        let config = DecoderConfig::new(field.m(), pd.s, false);
        let sigma = SigmaSequence::new(&field);
        Ok(Self {
            field,
            code,
            info_set,
            std,
            pd,
            sigma,
            config,
        })
    }

    pub fn with_best_effort(mut self, best_effort: bool) -> Self {
        self.config = DecoderConfig::new(self.field.m(), self.pd.s, best_effort);
        self
    }

    pub fn length(&self) -> usize {
        self.field.size()
    }

    pub fn dimension(&self) -> usize {
        self.std.dimension()
    }

    pub fn encode(&self, info_bits: &BitVector) -> Result<GroupAlgebraVector> {
        self.std.encode(info_bits)
    }

    pub fn decode(&self, r: &GroupAlgebraVector) -> Result<DecodeResult> {
        if r.len() != self.length() {
            return Err(Error::LengthMismatch {
                expected: self.length(),
                got: r.len(),
            });
        }
        Ok(decode_alg2(r, &self.pd, &self.sigma, &self.std, &self.config))
    }

    /// ⟨T_α⟩ as an explicit list, identity first.
    pub fn t_alpha_group(&self) -> Vec<PointPermutation> {
        (0..self.field.n() as u64)
            .map(|e| PointPermutation::t_alpha_power(&self.field, e))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m4() -> PermutationDecoder {
        PermutationDecoder::new(Field::new(4).unwrap(), Factorization::new(4, 5).unwrap()).unwrap()
    }

    #[test]
    fn config_defaults() {
        let c = DecoderConfig::new(4, 5, false);
        assert_eq!((c.t_check, c.max_phases, c.guarantee_limit), (3, 6, 3));
        let c = DecoderConfig::new(6, 13, false);
        assert_eq!((c.t_check, c.max_phases, c.guarantee_limit), (15, 14, 13));
        assert_eq!(DecoderConfig::new(6, 13, true).max_phases, 64);
    }

    #[test]
    fn syndrome_test_examples() {
        let d = m4();
        let ones = BitVector::ones(16);
        assert!(info_symbols_correct(&d.std, &ones, &d.config));
        let mut r = ones.clone();
        for p in [2, 3, 5] {
            r.flip(p);
        }
        assert!(info_symbols_correct(&d.std, &r, &d.config));
        // α^0 sits in I
        let mut r = ones.clone();
        r.flip(1);
        assert!(!info_symbols_correct(&d.std, &r, &d.config));
    }

    #[test]
    fn alg1_handles_errors_off_zero_but_not_at_zero() {
        let d = m4();
        let group = d.t_alpha_group();
        let c = d.encode(&BitVector::from_bits(&[true, false, true, true, false])).unwrap();
        let out = decode_alg1(&c, &group, &d.std, &d.config);
        assert!(out.is_decoded());
        assert_eq!(out.codeword, c);
        assert_eq!(out.pd_exponent, Some(0));

        let mut r = c.clone();
        for p in [3, 8, 14] {
            r.flip(p);
        }
        assert_eq!(decode_alg1(&r, &group, &d.std, &d.config).codeword, c);

        let mut r = c.clone();
        r.flip(0);
        let out = decode_alg1(&r, &group, &d.std, &d.config);
        assert_eq!(out.status, DecodeStatus::Failure);
        assert_eq!(out.syndrome_checks, 15);
    }

    #[test]
    fn alg2_examples() {
        let d = m4();
        let ones = BitVector::ones(16);
        let out = d.decode(&ones).unwrap();
        assert_eq!((out.phase_index, out.pd_exponent), (Some(0), Some(0)));

        // errors at {0, α^7, α^11}
        let mut r = ones.clone();
        for p in [0, 8, 12] {
            r.flip(p);
        }
        let out = d.decode(&r).unwrap();
        assert!(out.is_decoded());
        assert_eq!(out.codeword, ones);
        assert!(out.phase_index.unwrap() >= 1);
        assert!(out.phases_used <= 4);
        assert_eq!(out.err_weight_observed, Some(3));
        let oracle = md_oracle(&r, &d.field).unwrap();
        assert_eq!((oracle.codeword, oracle.distance, oracle.nearest_count), (ones, 3, 1));
        // bookkeeping
        assert!(out.total_perm.invert().compose(&out.total_perm).is_identity());
        assert!(d.std.syndrome_weight(&out.total_perm.apply(&r)) <= d.config.t_check);
    }

    #[test]
    fn oracle_tie_at_distance_four() {
        let d = m4();
        let oracle = MdOracle::new(&d.field).unwrap();
        // half of a weight-8 codeword's support lies at distance 4 from both it and 0
        let c = oracle.codewords().iter().find(|c| c.weight() == 8).unwrap();
        let r = GroupAlgebraVector::from_positions(16, c.support().take(4));
        let res = oracle.decode(&r);
        assert_eq!(res.distance, 4);
        assert!(res.is_tie());
        assert!(matches!(MdOracle::new(&Field::new(9).unwrap()), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(matches!(
            m4().decode(&BitVector::zeros(8)),
            Err(Error::LengthMismatch { expected: 16, got: 8 })
        ));
    }
}
