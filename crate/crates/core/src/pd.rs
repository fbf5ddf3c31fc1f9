//! The cyclic group ⟨T_α⟩ as a PD-like set with respect to `I'`.
//!
//! Any `s = (λ0 + 1)·r2 − 1` positions of `G*` can be moved off `I'` by some
//! power of `T_α`, where `λ0 = max{λ : m < ⌈r1/λ⌉}`. Under the CRT map, T_α^e
//! shifts both coordinates by `e`, which is what the constructive witness
//! search exploits.

use itertools::Itertools;
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::Serialize;

use crate::crt::{CrtMap, Factorization, InformationSet};
use crate::error::{Error, Result};
use crate::perm::PointPermutation;
use crate::rng::substream;
use crate::field::Field;

/// Largest number of subsets enumerated by [`verify_pd_like`] in exhaustive mode.
pub const EXHAUSTIVE_BUDGET: u128 = 10_000_000;

/// `max{λ >= 1 : m < ⌈r1/λ⌉}`.
pub fn lambda0(m: u32, r1: u64) -> Result<u64> {
    if r1 <= m as u64 {
        return Err(Error::FactorTooSmall { m, r1 });
    }
    // ⌈r1/λ⌉ is non-increasing in λ
    let mut lambda = 1;
    while (r1).div_ceil(lambda + 1) > m as u64 {
        lambda += 1;
    }
    Ok(lambda)
}

/// `(λ0 + 1)·r2 − 1` for a decomposition with `Ord_{r1}(2) = m`.
pub fn s_value(f: &Factorization) -> Result<usize> {
    if !f.is_full_order() {
        return Err(Error::NotFullOrder { m: f.m, r1: f.r1, a: f.a });
    }
    Ok(((lambda0(f.m, f.r1)? + 1) * f.r2 - 1) as usize)
}

/// A shift `μ` that packs the sorted distinct residues `xs` into the top of
/// `Z_r`: every `[x + μ]_r >= ⌈r/h⌉ − 1` and some `[x + μ]_r = r − 1`.
pub fn junta_mu(r: u64, xs: &[u64]) -> u64 {
    let h = xs.len() as u64;
    assert!(h >= 1 && h <= r, "need 1 <= |xs| <= r");
    assert!(xs.windows(2).all(|w| w[0] < w[1]) && xs[xs.len() - 1] < r, "xs must be sorted, distinct, below r");
    let bound = r.div_ceil(h) - 1;
    (0..r)
        .find(|&mu| {
            let mut top = false;
            for &x in xs {
                let y = (x + mu) % r;
                if y < bound {
                    return false;
                }
                top |= y == r - 1;
            }
            top
        })
        .expect("a packing shift always exists")
}

/// ⟨T_α⟩ together with the parameters of its PD-like property.
#[derive(Debug, Clone, Serialize)]
pub struct PdLikeSet {
    pub m: u32,
    /// Order of T_α.
    pub order: u32,
    pub lambda0: u64,
    pub s: usize,
    pub info_set: InformationSet,
    #[serde(skip)]
    in_i_prime: Vec<bool>,
    #[serde(skip)]
    crt: CrtMap,
}

impl PdLikeSet {
    pub fn new(info_set: InformationSet) -> Result<Self> {
        let f = info_set.factorization;
        let lambda0 = lambda0(f.m, f.r1)?;
        let s = s_value(&f)?;
        let n = f.n() as usize;
        let mut in_i_prime = vec![false; n];
        for &e in &info_set.exponents {
            in_i_prime[e as usize] = true;
        }
        Ok(Self {
            m: f.m,
            order: n as u32,
            lambda0,
            s,
            crt: CrtMap::from_factorization(&f),
            in_i_prime,
            info_set,
        })
    }

    /// Same set with a different claimed `s`, for probing beyond the guarantee.
    pub fn with_s(&self, s: usize) -> Self {
        Self { s, ..self.clone() }
    }

    pub fn factorization(&self) -> &Factorization {
        &self.info_set.factorization
    }

    /// `s` as guaranteed by the decomposition, regardless of overrides.
    pub fn guaranteed_s(&self) -> usize {
        s_value(self.factorization()).expect("validated at construction")
    }

    /// Whether `T_α^e` sends every exponent in `b` outside `I'`.
    pub fn moves_off(&self, e: u32, b: &[u32]) -> bool {
        let n = self.order;
        b.iter().all(|&x| !self.in_i_prime[((x + e) % n) as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStrategy {
    Scan,
    Constructive,
}

/// A power `e` of T_α with `T_α^e(B) ∩ I' = ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    pub exponent: u32,
    /// `(μ, δ)`: the shifts on the r1 and r2 coordinates, for the constructive strategy.
    pub crt_parts: Option<(u64, u64)>,
    pub strategy: WitnessStrategy,
}

fn check_exponents(b: &[u32], pd: &PdLikeSet) -> Result<()> {
    if let Some(&x) = b.iter().find(|&&x| x >= pd.order) {
        return Err(Error::InvalidPosition(1 + x as usize));
    }
    Ok(())
}

/// Smallest `e` with `T_α^e(B) ∩ I' = ∅`. `b` holds exponents `i` of the
/// positions `α^i`. Works for any `|B|`; beyond `s` it may fail with
/// [`Error::NoWitness`].
pub fn find_witness(b: &[u32], pd: &PdLikeSet) -> Result<WitnessResult> {
    check_exponents(b, pd)?;
    (0..pd.order)
        .find(|&e| pd.moves_off(e, b))
        .map(|exponent| WitnessResult {
            exponent,
            crt_parts: None,
            strategy: WitnessStrategy::Scan,
        })
        .ok_or(Error::NoWitness)
}

/// Builds the witness the way the existence argument does: pick an r2-class
/// `B_j0` with at most λ0 elements (or a missing class), shift it to r2
/// coordinate 0 with `δ`, pack its r1 coordinates above `m − 1` with `μ`, and
/// recombine `(μ, δ)` into one exponent.
pub fn find_witness_constructive(b: &[u32], pd: &PdLikeSet) -> Result<WitnessResult> {
    check_exponents(b, pd)?;
    let distinct = b.iter().unique().count();
    if distinct > pd.guaranteed_s() {
        return Err(Error::TooManyPositions {
            got: distinct,
            s: pd.guaranteed_s(),
        });
    }
    let f = pd.factorization();
    let (r1, r2) = (f.r1, f.r2);
    let mut classes: Vec<Vec<u64>> = vec![Vec::new(); r2 as usize];
    for &x in b.iter().unique() {
        let (i1, i2) = pd.crt.forward(x as u64);
        classes[i2 as usize].push(i1);
    }

    let (mu, delta) = match classes.iter().position(Vec::is_empty) {
        Some(j) => (0, (r2 - j as u64) % r2),
        None => {
            let (j0, class) = classes
                .iter_mut()
                .enumerate()
                .min_by_key(|(_, c)| c.len())
                .expect("r2 > 1");
            debug_assert!(class.len() as u64 <= pd.lambda0);
            class.sort_unstable();
            (junta_mu(r1, class), (r2 - j0 as u64) % r2)
        }
    };
    let exponent = pd.crt.inverse(mu, delta) as u32;
    if !pd.moves_off(exponent, b) {
        return Err(Error::NoWitness);
    }
    Ok(WitnessResult {
        exponent,
        crt_parts: Some((mu, delta)),
        strategy: WitnessStrategy::Constructive,
    })
}

/// Rechecks a witness by applying the permutation T_α^e to positions.
pub fn is_witness(field: &Field, pd: &PdLikeSet, b: &[u32], e: u32) -> bool {
    let t = PointPermutation::t_alpha_power(field, e as u64);
    let i_prime = pd.info_set.i_prime_positions();
    b.iter().all(|&x| !i_prime.contains(&t.map(1 + x as usize)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdVerifyReport {
    pub schema: u32,
    pub m: u32,
    pub r1: u64,
    pub r2: u64,
    pub s: usize,
    #[serde(flatten)]
    pub mode: VerifyMode,
    pub checked: u64,
    pub failures: u64,
    /// A subset (as exponents) that no power of T_α moves off I'.
    pub example_failure: Option<Vec<u32>>,
    /// Subsets on which the constructive strategy also ran.
    pub constructive_checked: u64,
    /// Subsets where the scan and the constructive strategy disagreed about existence.
    pub strategy_disagreements: u64,
}

impl PdVerifyReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: u64,
    example: Option<Vec<u32>>,
    constructive: u64,
    disagreements: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        self.constructive += other.constructive;
        self.disagreements += other.disagreements;
        // keep the first failure in enumeration order
        if self.example.is_none() {
            self.example = other.example;
        }
        self
    }
}

fn check_subset(subset: &[u32], pd: &PdLikeSet, field: &Field, run_constructive: bool) -> Tally {
    let scan = find_witness(subset, pd).ok();
    if let Some(w) = &scan {
        assert!(is_witness(field, pd, subset, w.exponent), "scan returned a non-witness");
    }
    let mut t = Tally {
        checked: 1,
        ..Tally::default()
    };
    if scan.is_none() {
        t.failures = 1;
        t.example = Some(subset.to_vec());
    }
    if run_constructive {
        t.constructive = 1;
        let constructive = find_witness_constructive(subset, pd).ok();
        if let Some(w) = &constructive {
            assert!(is_witness(field, pd, subset, w.exponent), "constructive search returned a non-witness");
        }
        if constructive.is_some() != scan.is_some() {
            t.disagreements = 1;
        }
    }
    t
}

/// Checks that every `s`-subset of `G*` (exhaustively, or a seeded sample)
/// has a witness. The constructive strategy runs alongside whenever `s` is
/// within the guarantee.
pub fn verify_pd_like(field: &Field, pd: &PdLikeSet, mode: VerifyMode) -> Result<PdVerifyReport> {
    let n = pd.order as u64;
    let s = pd.s.min(n as usize);
    let run_constructive = pd.s <= pd.guaranteed_s();
    let tally = match mode {
        VerifyMode::Exhaustive => {
            let count = binomial(n, s as u64);
            if count > EXHAUSTIVE_BUDGET {
                return Err(Error::BudgetExceeded {
                    count,
                    budget: EXHAUSTIVE_BUDGET,
                });
            }
            (0..pd.order)
                .combinations(s)
                .map(|subset| check_subset(&subset, pd, field, run_constructive))
                .fold(Tally::default(), Tally::merge)
        }
        VerifyMode::Sampled { trials, seed } => (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = substream(seed, trial);
                let mut subset: Vec<u32> = sample(&mut rng, n as usize, s).into_iter().map(|x| x as u32).collect();
                subset.sort_unstable();
                check_subset(&subset, pd, field, run_constructive)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge),
    };
    let f = pd.factorization();
    Ok(PdVerifyReport {
        schema: 1,
        m: pd.m,
        r1: f.r1,
        r2: f.r2,
        s: pd.s,
        mode,
        checked: tally.checked,
        failures: tally.failures,
        example_failure: tally.example,
        constructive_checked: tally.constructive,
        strategy_disagreements: tally.disagreements,
    })
}

/// Column B1 of the comparison table: `M − 1` for the best known `(m, M, 3)`
/// binary code. Display-only constants.
pub fn column_b1(m: u32) -> Option<u64> {
    match m {
        4 => Some(1),
        6 => Some(3),
        8 => Some(16),
        9 => Some(32),
        10 => Some(64),
        11 => Some(128),
        12 => Some(256),
        14 => Some(1024),
        15 => Some(2048),
        16 => Some(2048),
        _ => None,
    }
}

/// Correctable-error counts of earlier PD-set constructions next to the one
/// obtained here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaselineRow {
    pub m: u32,
    /// Translation group of F_2^m: `min(⌊(2^m − 1)/(1 + m)⌋, 2^{m−2} − 1)`.
    pub col_a: u64,
    pub col_b1: Option<u64>,
    /// `⌊2^m/(m + 1)⌋ − 1`.
    pub col_b2: u64,
    /// `s` for the decomposition picked by [`select_full_order_factor`](crate::crt::select_full_order_factor).
    pub s_alg2: Option<usize>,
}

pub fn baselines(m: u32) -> Result<BaselineRow> {
    if !(3..=crate::field::MAX_DEGREE).contains(&m) {
        return Err(Error::UnsupportedDegree(m));
    }
    let two_m = 1u64 << m;
    let s_alg2 = match crate::crt::select_full_order_factor(m) {
        Ok(f) => Some(s_value(&f)?),
        Err(Error::NoValidDecomposition { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(BaselineRow {
        m,
        col_a: ((two_m - 1) / (1 + m as u64)).min(two_m / 4 - 1),
        col_b1: column_b1(m),
        col_b2: two_m / (m as u64 + 1) - 1,
        s_alg2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crt::build_info_set;

    fn pd(m: u32, r1: u64) -> (Field, PdLikeSet) {
        let field = Field::new(m).unwrap();
        let f = Factorization::new(m, r1).unwrap();
        let info = build_info_set(&field, &f).unwrap();
        (field, PdLikeSet::new(info).unwrap())
    }

    #[test]
    fn lambda0_and_s() {
        assert_eq!(lambda0(4, 5).unwrap(), 1);
        assert_eq!(lambda0(8, 17).unwrap(), 2);
        assert_eq!(lambda0(9, 73).unwrap(), 8);
        assert_eq!(lambda0(14, 43).unwrap(), 3);
        assert_eq!(lambda0(4, 4).unwrap_err(), Error::FactorTooSmall { m: 4, r1: 4 });
        let s = |m, r1| s_value(&Factorization::new(m, r1).unwrap()).unwrap();
        assert_eq!(s(4, 5), 5);
        assert_eq!(s(8, 17), 44);
        assert_eq!(s(9, 73), 62);
        assert_eq!(s(10, 11), 185);
        assert_eq!(lambda0(15, 151).unwrap(), 10);
        assert_eq!(s(15, 151), 2386);
        assert_eq!(s(16, 257), 4334);
        assert!(matches!(
            s_value(&Factorization::new(4, 3).unwrap()),
            Err(Error::NotFullOrder { .. })
        ));
    }

    #[test]
    fn lambda0_matches_definition() {
        for m in 3..12u32 {
            for r1 in (m as u64 + 1)..200 {
                let brute = (1..=r1).filter(|&l| (m as u64) < r1.div_ceil(l)).max().unwrap();
                assert_eq!(lambda0(m, r1).unwrap(), brute);
            }
        }
    }

    #[test]
    fn junta_examples() {
        assert_eq!(junta_mu(5, &[0, 1]), 3);
        assert_eq!(junta_mu(9, &[0, 3, 6]), 2);
        for r in 1..20 {
            assert_eq!(junta_mu(r, &[r - 1]), 0);
        }
    }

    #[test]
    fn junta_exhaustive_small() {
        // every nonempty subset of Z_r for r <= 14 (larger r covered in the integration suite)
        for r in 1u64..=14 {
            for mask in 1u32..(1 << r) {
                let xs: Vec<u64> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
                let mu = junta_mu(r, &xs);
                let bound = r.div_ceil(xs.len() as u64) - 1;
                let shifted: Vec<u64> = xs.iter().map(|x| (x + mu) % r).collect();
                assert!(shifted.iter().all(|&y| y >= bound));
                assert!(shifted.contains(&(r - 1)));
            }
        }
    }

    #[test]
    fn witness_examples_m4() {
        let (field, pd) = pd(4, 5);
        assert_eq!(pd.s, 5);
        assert_eq!(find_witness(&[1, 2], &pd).unwrap().exponent, 0);
        assert_eq!(find_witness(&[0], &pd).unwrap().exponent, 1);
        let c = find_witness_constructive(&[0], &pd).unwrap();
        assert!(is_witness(&field, &pd, &[0], c.exponent));
        assert!(matches!(
            find_witness_constructive(&[0, 1, 2, 3, 4, 5], &pd),
            Err(Error::TooManyPositions { got: 6, s: 5 })
        ));
        assert!(matches!(find_witness(&[15], &pd), Err(Error::InvalidPosition(16))));
    }

    #[test]
    fn exhaustive_m4() {
        let (field, pd) = pd(4, 5);
        let report = verify_pd_like(&field, &pd, VerifyMode::Exhaustive).unwrap();
        assert_eq!(report.checked, 3003);
        assert_eq!(report.failures, 0);
        assert_eq!(report.constructive_checked, 3003);
        assert_eq!(report.strategy_disagreements, 0);
    }

    #[test]
    fn inflated_s_has_counterexamples() {
        let (field, pd) = pd(4, 5);
        let report = verify_pd_like(&field, &pd.with_s(12), VerifyMode::Exhaustive).unwrap();
        assert_eq!(report.checked, 455);
        assert!(report.failures > 0);
        let bad = report.example_failure.unwrap();
        assert!((0..15).all(|e| !is_witness(&field, &pd, &bad, e)));
        assert_eq!(report.constructive_checked, 0);
    }

    #[test]
    fn exhaustive_budget() {
        let (field, pd) = pd(6, 9);
        assert!(matches!(
            verify_pd_like(&field, &pd, VerifyMode::Exhaustive),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampled_is_deterministic() {
        let (field, pd) = pd(6, 9);
        let mode = VerifyMode::Sampled { trials: 2000, seed: 42 };
        let a = verify_pd_like(&field, &pd, mode).unwrap();
        let b = verify_pd_like(&field, &pd, mode).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.failures, 0);
        assert_eq!(a.strategy_disagreements, 0);
    }

    #[test]
    fn baseline_rows() {
        let row = |m| {
            let b = baselines(m).unwrap();
            (b.col_a, b.col_b2, b.s_alg2.unwrap())
        };
        assert_eq!(row(4), (3, 2, 5));
        assert_eq!(row(8), (28, 27, 44));
        assert_eq!(row(11), (170, 169, 266));
        assert_eq!(baselines(6).unwrap().col_a, 9);
        assert_eq!(baselines(5).unwrap().s_alg2, None);
        assert_eq!(baselines(5).unwrap().col_b1, None);
    }
}
