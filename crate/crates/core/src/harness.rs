//! Decoding experiments and the parameter tables.

use std::time::Instant;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::crt::{select_full_order_factor, valid_factorizations, Factorization};
use crate::decoder::PermutationDecoder;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pd::{baselines, binomial, s_value};
use crate::rng::substream;
use crate::vector::BitVector;

/// Limit on the number of error patterns in exhaustive mode.
pub const EXHAUSTIVE_PATTERN_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub m: u32,
    /// Explicit `r1`; otherwise the decomposition maximizing `s`.
    pub r1: Option<u64>,
    pub poly: Option<u32>,
    pub weights: Vec<usize>,
    /// Trials per weight in sampled mode; ignored in exhaustive mode.
    pub trials_per_weight: u64,
    pub seed: u64,
    pub mode: SimMode,
    pub best_effort: bool,
}

impl SimConfig {
    pub fn sampled(m: u32, weights: Vec<usize>, trials_per_weight: u64, seed: u64) -> Self {
        Self {
            m,
            r1: None,
            poly: None,
            weights,
            trials_per_weight,
            seed,
            mode: SimMode::Sampled,
            best_effort: false,
        }
    }

    pub fn exhaustive(m: u32, weights: Vec<usize>, seed: u64) -> Self {
        Self {
            mode: SimMode::Exhaustive,
            ..Self::sampled(m, weights, 0, seed)
        }
    }

    pub fn decoder(&self) -> Result<PermutationDecoder> {
        let field = Field::with_poly(self.m, self.poly)?;
        let f = match self.r1 {
            Some(r1) => Factorization::new(self.m, r1)?,
            None => select_full_order_factor(self.m)?,
        };
        Ok(PermutationDecoder::new(field, f)?.with_best_effort(self.best_effort))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightRecord {
    pub weight: usize,
    pub trials: u64,
    pub successes: u64,
    pub failures_detected: u64,
    pub miscorrections: u64,
    /// Mean number of Σ elements consumed.
    pub mean_phases: f64,
    pub max_phases: usize,
    /// Mean number of T_α powers tried (syndrome evaluations).
    pub mean_pd_exponent_scans: f64,
    pub max_pd_exponent_scans: u64,
    /// Trials that used more than `weight + 1` phases.
    pub phase_bound_violations: u64,
    pub within_guarantee: bool,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub schema: u32,
    pub m: u32,
    pub r1: u64,
    pub r2: u64,
    pub s: usize,
    pub t_check: usize,
    pub guarantee_limit: usize,
    pub seed: u64,
    pub mode: SimMode,
    pub best_effort: bool,
    pub records: Vec<WeightRecord>,
}

impl SimReport {
    /// Failures or miscorrections at weights the decoder guarantees.
    pub fn guarantee_violations(&self) -> u64 {
        self.records
            .iter()
            .filter(|r| r.within_guarantee)
            .map(|r| r.failures_detected + r.miscorrections)
            .sum()
    }

    /// The report with timing fields zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> SimReport {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_time_ms = 0.0;
        }
        r
    }
}

#[derive(Clone, Copy, Default)]
struct Outcome {
    success: u64,
    failure: u64,
    miscorrection: u64,
    phases: u64,
    max_phases: usize,
    scans: u64,
    max_scans: u64,
    phase_violations: u64,
}

impl Outcome {
    fn merge(self, o: Outcome) -> Outcome {
        Outcome {
            success: self.success + o.success,
            failure: self.failure + o.failure,
            miscorrection: self.miscorrection + o.miscorrection,
            phases: self.phases + o.phases,
            max_phases: self.max_phases.max(o.max_phases),
            scans: self.scans + o.scans,
            max_scans: self.max_scans.max(o.max_scans),
            phase_violations: self.phase_violations + o.phase_violations,
        }
    }
}

fn run_trial(dec: &PermutationDecoder, seed: u64, stream: u64, support: Option<&[usize]>, weight: usize) -> Outcome {
    let mut rng = substream(seed, stream);
    let info: Vec<bool> = (0..dec.dimension()).map(|_| rng.random()).collect();
    let c = dec.encode(&BitVector::from_bits(&info)).expect("dimension matches");
    let mut r = c.clone();
    match support {
        Some(s) => s.iter().for_each(|&p| r.flip(p)),
        None => sample(&mut rng, dec.length(), weight).into_iter().for_each(|p| r.flip(p)),
    }
    let out = dec.decode(&r).expect("length matches");
    let mut o = Outcome {
        phases: out.phases_used as u64,
        max_phases: out.phases_used,
        scans: out.syndrome_checks,
        max_scans: out.syndrome_checks,
        ..Outcome::default()
    };
    if !out.is_decoded() {
        o.failure = 1;
    } else if out.codeword == c {
        o.success = 1;
        if out.phases_used > weight + 1 {
            o.phase_violations = 1;
        }
    } else {
        o.miscorrection = 1;
    }
    o
}

/// Encodes random codewords, adds errors of each requested weight, decodes
/// with Algorithm II and tallies the outcomes. Trial `t` at weight `w` draws
/// from stream `(w << 40) | t`, so results are independent of threading.
pub fn run_sim(cfg: &SimConfig) -> Result<SimReport> {
    let dec = cfg.decoder()?;
    let len = dec.length();
    if let Some(&w) = cfg.weights.iter().find(|&&w| w > len) {
        return Err(Error::InvalidArgument(format!("weight {w} exceeds the length {len}")));
    }
    if cfg.mode == SimMode::Exhaustive {
        let total: u128 = cfg.weights.iter().map(|&w| binomial(len as u64, w as u64)).sum();
        if total > EXHAUSTIVE_PATTERN_BUDGET {
            return Err(Error::BudgetExceeded {
                count: total,
                budget: EXHAUSTIVE_PATTERN_BUDGET,
            });
        }
    }

    let mut records = Vec::with_capacity(cfg.weights.len());
    for &w in &cfg.weights {
        let start = Instant::now();
        let base = (w as u64) << 40;
        let (trials, outcome) = match cfg.mode {
            SimMode::Sampled => {
                let o = (0..cfg.trials_per_weight)
                    .into_par_iter()
                    .map(|t| run_trial(&dec, cfg.seed, base | t, None, w))
                    .reduce(Outcome::default, Outcome::merge);
                (cfg.trials_per_weight, o)
            }
            SimMode::Exhaustive => {
                let supports: Vec<Vec<usize>> = (0..len).combinations(w).collect();
                let o = supports
                    .par_iter()
                    .enumerate()
                    .map(|(t, s)| run_trial(&dec, cfg.seed, base | t as u64, Some(s), w))
                    .reduce(Outcome::default, Outcome::merge);
                (supports.len() as u64, o)
            }
        };
        let denom = trials.max(1) as f64;
        records.push(WeightRecord {
            weight: w,
            trials,
            successes: outcome.success,
            failures_detected: outcome.failure,
            miscorrections: outcome.miscorrection,
            mean_phases: outcome.phases as f64 / denom,
            max_phases: outcome.max_phases,
            mean_pd_exponent_scans: outcome.scans as f64 / denom,
            max_pd_exponent_scans: outcome.max_scans,
            phase_bound_violations: outcome.phase_violations,
            within_guarantee: w <= dec.config.guarantee_limit,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let f = dec.info_set.factorization;
    Ok(SimReport {
        schema: 1,
        m: cfg.m,
        r1: f.r1,
        r2: f.r2,
        s: dec.pd.s,
        t_check: dec.config.t_check,
        guarantee_limit: dec.config.guarantee_limit,
        seed: cfg.seed,
        mode: cfg.mode,
        best_effort: cfg.best_effort,
        records,
    })
}

/// Parses `"1..13"`, `"4,5"`, `"1..3,7"`.
pub fn parse_weights(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("cannot parse weights {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (a.parse::<usize>().map_err(|_| bad())?, b.parse::<usize>().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// One row of the decomposition table (lengths up to 2048).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub m: u32,
    pub n: u64,
    pub r1: u64,
    pub r2: u64,
    pub a: u32,
    pub printed_n: Option<u64>,
    pub flags: Vec<String>,
}

/// `(m, n, r1, r2, a)` as printed in the published decomposition table.
pub const TABLE1_PRINTED: [(u32, u64, u64, u64, u32); 10] = [
    (4, 5, 3, 5, 2),
    (6, 63, 7, 9, 3),
    (8, 255, 3, 85, 2),
    (8, 255, 15, 17, 4),
    (8, 255, 5, 51, 4),
    (9, 511, 7, 73, 3),
    (10, 1023, 3, 341, 2),
    (10, 1023, 11, 93, 10),
    (10, 1023, 31, 33, 5),
    (11, 2047, 23, 89, 11),
];

/// Every unordered decomposition for `3 <= m <= 11`, listed with `r1 < r2`
/// and `a = Ord_{r1}(2)`, in the printed row order.
pub fn table1() -> Vec<Table1Row> {
    let mut rows: Vec<Table1Row> = (3..=11)
        .flat_map(valid_factorizations)
        .filter(|f| f.r1 < f.r2)
        .map(|f| {
            let printed = TABLE1_PRINTED.iter().find(|p| p.0 == f.m && p.2 == f.r1 && p.3 == f.r2);
            let mut flags = Vec::new();
            match printed {
                None => flags.push("row not in the printed table".to_string()),
                Some(p) => {
                    if p.1 != f.n() {
                        flags.push(format!("n: computed {} != printed {}", f.n(), p.1));
                    }
                    if p.4 != f.a {
                        flags.push(format!("a: computed {} != printed {}", f.a, p.4));
                    }
                }
            }
            Table1Row {
                m: f.m,
                n: f.n(),
                r1: f.r1,
                r2: f.r2,
                a: f.a,
                printed_n: printed.map(|p| p.1),
                flags,
            }
        })
        .collect();
    let printed_order = |r: &Table1Row| {
        TABLE1_PRINTED
            .iter()
            .position(|p| p.0 == r.m && p.2 == r.r1)
            .unwrap_or(usize::MAX)
    };
    rows.sort_by_key(|r| (r.m, printed_order(r), r.r1));
    rows
}

/// `(m, r1, r2, l, t, A, B1, B2, s, starred)`.
pub type PrintedTable2Row = (u32, u64, u64, u64, u64, u64, u64, u64, usize, bool);

/// Rows as printed in the comparison table.
pub const TABLE2_PRINTED: [PrintedTable2Row; 10] = [
    (4, 5, 3, 16, 8, 3, 1, 2, 5, false),
    (6, 9, 7, 64, 32, 5, 3, 8, 13, false),
    (8, 17, 15, 256, 128, 28, 16, 27, 44, true),
    (9, 73, 7, 512, 256, 51, 32, 50, 62, false),
    (10, 11, 93, 1024, 512, 93, 64, 92, 185, true),
    (11, 23, 89, 2048, 1024, 170, 128, 169, 266, true),
    (12, 13, 315, 4096, 2048, 315, 256, 314, 629, true),
    (14, 43, 381, 16384, 8192, 1092, 1024, 1091, 1523, true),
    (15, 151, 217, 32768, 16384, 2047, 2048, 2047, 2386, true),
    (16, 257, 255, 65536, 32768, 3855, 2048, 3854, 4334, true),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub m: u32,
    pub r1: u64,
    pub r2: u64,
    /// Code length 2^m.
    pub l: u64,
    /// The "t" column as printed; it equals the minimum distance 2^{m−1}.
    pub t_printed: u64,
    pub min_distance: u64,
    pub packing_radius: u64,
    pub col_a: u64,
    pub col_b1: Option<u64>,
    pub col_b2: u64,
    pub s: usize,
    /// Minimal PD-set size for the translation group (1 + column A).
    pub gordon_schonheim: u64,
    /// More than one unordered decomposition of 2^m − 1 exists.
    pub multiple_decompositions: bool,
    /// Decomposition picked by the max-s selection.
    pub selected_r1: u64,
    pub selected_r2: u64,
    pub flags: Vec<String>,
}

/// The comparison table for the ten printed values of m, recomputed with the
/// printed decompositions, with a flag for every cell that disagrees.
pub fn table2() -> Result<Vec<Table2Row>> {
    TABLE2_PRINTED
        .iter()
        .map(|&(m, r1, r2, l, t, a_p, b1_p, b2_p, s_p, starred)| {
            let f = Factorization::new(m, r1)?;
            let base = baselines(m)?;
            let s = s_value(&f)?;
            let selected = select_full_order_factor(m)?;
            let multiple = valid_factorizations(m).len() > 2;
            let d = 1u64 << (m - 1);
            let mut flags = Vec::new();
            let mut check = |name: &str, computed: String, printed: String| {
                if computed != printed {
                    flags.push(format!("{name}: formula {computed} != printed {printed}"));
                }
            };
            check("r2", f.r2.to_string(), r2.to_string());
            check("l", (1u64 << m).to_string(), l.to_string());
            check("t", d.to_string(), t.to_string());
            check("A", base.col_a.to_string(), a_p.to_string());
            check("B1", base.col_b1.unwrap_or(0).to_string(), b1_p.to_string());
            check("B2", base.col_b2.to_string(), b2_p.to_string());
            check("s", s.to_string(), s_p.to_string());
            check("multiple decompositions", multiple.to_string(), starred.to_string());
            check("selected r1", selected.r1.to_string(), r1.to_string());
            Ok(Table2Row {
                m,
                r1,
                r2: f.r2,
                l: 1 << m,
                t_printed: t,
                min_distance: d,
                packing_radius: d / 2 - 1,
                col_a: base.col_a,
                col_b1: base.col_b1,
                col_b2: base.col_b2,
                s,
                gordon_schonheim: base.col_a + 1,
                multiple_decompositions: multiple,
                selected_r1: selected.r1,
                selected_r2: selected.r2,
                flags,
            })
        })
        .collect()
}

fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

pub fn table1_text(rows: &[Table1Row]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.n.to_string(),
                r.r1.to_string(),
                r.r2.to_string(),
                r.a.to_string(),
                r.flags.join("; "),
            ]
        })
        .collect();
    render(&["m", "n", "r1", "r2", "a", "notes"], &body)
}

pub fn table2_text(rows: &[Table2Row]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format!("{}{}", r.m, if r.multiple_decompositions { "*" } else { "" }),
                r.r1.to_string(),
                r.r2.to_string(),
                r.l.to_string(),
                r.t_printed.to_string(),
                r.packing_radius.to_string(),
                r.col_a.to_string(),
                r.col_b1.map_or("-".into(), |b| b.to_string()),
                r.col_b2.to_string(),
                r.s.to_string(),
                r.gordon_schonheim.to_string(),
                r.flags.join("; "),
            ]
        })
        .collect();
    let mut out = render(
        &["m", "r1", "r2", "l", "t(printed)", "radius", "A", "B1", "B2", "AlgII s", "GS", "notes"],
        &body,
    );
    out.push_str("t(printed) is the minimum distance 2^(m-1); radius is floor((d-1)/2).\n");
    out.push_str("GS: minimal s-PD-set size 1 + A from the Gordon-Schonheim bound. * marks m with several decompositions.\n");
    out
}
