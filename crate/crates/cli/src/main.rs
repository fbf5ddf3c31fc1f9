use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pdrm_core::code::{build_parity_check, classical_rm1_generator, standardize};
use pdrm_core::crt::{generator_rank_at, select_full_order_factor, valid_factorizations, Factorization};
use pdrm_core::decoder::PermutationDecoder;
use pdrm_core::field::Field;
use pdrm_core::harness::{parse_weights, run_sim, table1, table1_text, table2, table2_text, SimConfig, SimMode};
use pdrm_core::pd::{verify_pd_like, VerifyMode};
use pdrm_core::vector::BitVector;

mod config;

/// Permutation decoding of first-order Reed–Muller codes R(1, m).
#[derive(Parser)]
#[command(name = "pdrm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition, information set and PD-like parameters for one m.
    Info(InfoArgs),
    /// Reproduce the decomposition table (1) or the comparison table (2).
    Tables(TablesArgs),
    /// Encode information bits into a codeword (hex, position 0 first).
    Encode(EncodeArgs),
    /// Decode a received word with Algorithm II.
    Decode(DecodeArgs),
    /// Monte-Carlo or exhaustive decoding experiment.
    Simulate(SimulateArgs),
    /// Check that <T_alpha> moves every s-subset off I'.
    VerifyPdlike(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CodeArgs {
    /// Extension degree.
    #[arg(long)]
    m: u32,
    /// Explicit r1 of the decomposition 2^m - 1 = r1*r2 (default: maximize s).
    #[arg(long)]
    r1: Option<u64>,
    /// Primitive polynomial as a hex bitmask, e.g. 0x13.
    #[arg(long)]
    poly: Option<String>,
    /// TOML file with a [primitive_poly] table keyed by m.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl CodeArgs {
    fn field(&self) -> Result<Field, String> {
        let poly = match &self.poly {
            Some(p) => Some(config::parse_hex_poly(p)?),
            None => match &self.config {
                Some(path) => config::load(path)?.primitive_poly(self.m)?,
                None => None,
            },
        };
        Field::with_poly(self.m, poly).map_err(|e| e.to_string())
    }

    fn factorization(&self) -> Result<Factorization, String> {
        match self.r1 {
            Some(r1) => Factorization::new(self.m, r1),
            None => select_full_order_factor(self.m),
        }
        .map_err(|e| e.to_string())
    }

    fn decoder(&self) -> Result<PermutationDecoder, String> {
        PermutationDecoder::new(self.field()?, self.factorization()?).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    Generator,
    Parity,
    Standard,
}

#[derive(Args)]
struct InfoArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Print a matrix as rows of 0/1 instead of the summary.
    #[arg(long, value_enum)]
    show_matrix: Option<MatrixKind>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichTable {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long, value_enum, default_value = "all")]
    which: WhichTable,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// m+1 information bits as a 0/1 string, in ascending position order of I.
    #[arg(long)]
    info: String,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Received word as hex, position 0 in the most significant bit.
    #[arg(long)]
    received: String,
    /// Search all of Sigma and accept weights beyond the guarantee.
    #[arg(long)]
    best_effort: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Error weights, e.g. "1..13" or "4,5".
    #[arg(long)]
    weights: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "sampled")]
    mode: ModeArg,
    #[arg(long)]
    best_effort: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value = "sampled")]
    mode: ModeArg,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Subset size to test instead of the guaranteed s.
    #[arg(long)]
    s: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info(a) => info(a),
        Command::Tables(a) => tables(a),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Simulate(a) => simulate(a),
        Command::VerifyPdlike(a) => verify(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    println!("{}", serde_json::to_string_pretty(value).map_err(|e| e.to_string())?);
    Ok(())
}

#[derive(Serialize)]
struct InfoReport {
    schema: u32,
    m: u32,
    length: usize,
    dimension: usize,
    min_distance: usize,
    packing_radius: usize,
    primitive_poly: String,
    r1: u64,
    r2: u64,
    a: u32,
    lambda0: u64,
    s: usize,
    t_check: usize,
    guarantee_limit: usize,
    gamma: Vec<(u64, u64)>,
    info_exponents: Vec<u32>,
    info_positions: Vec<usize>,
    generator_rank_at_i: usize,
    decompositions: Vec<Factorization>,
}

fn info(a: InfoArgs) -> CmdResult {
    let dec = a.code.decoder()?;
    if let Some(kind) = a.show_matrix {
        let matrix = match kind {
            MatrixKind::Generator => classical_rm1_generator(&dec.field),
            MatrixKind::Parity => build_parity_check(&dec.field, &dec.code).map_err(|e| e.to_string())?,
            MatrixKind::Standard => {
                let h = build_parity_check(&dec.field, &dec.code).map_err(|e| e.to_string())?;
                standardize(&h, &dec.info_set.positions()).map_err(|e| e.to_string())?.matrix()
            }
        };
        print!("{}", matrix.to_text());
        return Ok(ExitCode::SUCCESS);
    }
    let f = dec.info_set.factorization;
    let report = InfoReport {
        schema: 1,
        m: f.m,
        length: dec.length(),
        dimension: dec.dimension(),
        min_distance: dec.code.design_distance,
        packing_radius: dec.code.packing_radius(),
        primitive_poly: format!("{:#x}", dec.field.poly()),
        r1: f.r1,
        r2: f.r2,
        a: f.a,
        lambda0: dec.pd.lambda0,
        s: dec.pd.s,
        t_check: dec.config.t_check,
        guarantee_limit: dec.config.guarantee_limit,
        gamma: dec.info_set.gamma.pairs.iter().copied().collect(),
        info_exponents: dec.info_set.exponents.clone(),
        info_positions: dec.info_set.positions(),
        generator_rank_at_i: generator_rank_at(&dec.field, &dec.info_set.positions()),
        decompositions: valid_factorizations(f.m),
    };
    match a.code.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("R(1,{}): [{}, {}, {}], packing radius {}", report.m, report.length, report.dimension, report.min_distance, report.packing_radius);
            println!("primitive polynomial: {}", report.primitive_poly);
            println!("decomposition: r1 = {}, r2 = {}, a = Ord_r1(2) = {}", report.r1, report.r2, report.a);
            println!("lambda0 = {}, s = {}, t_check = {}, guarantee = {}", report.lambda0, report.s, report.t_check, report.guarantee_limit);
            println!("Gamma: {:?}", report.gamma);
            println!("I exponents: {:?} (plus position 0)", report.info_exponents);
            println!("I positions: {:?}", report.info_positions);
            println!("generator rank at I: {}", report.generator_rank_at_i);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tables(a: TablesArgs) -> CmdResult {
    let t1 = matches!(a.which, WhichTable::One | WhichTable::All).then(table1);
    let t2 = match a.which {
        WhichTable::Two | WhichTable::All => Some(table2().map_err(|e| e.to_string())?),
        WhichTable::One => None,
    };
    match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Tables {
                schema: u32,
                #[serde(skip_serializing_if = "Option::is_none")]
                table1: Option<Vec<pdrm_core::harness::Table1Row>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                table2: Option<Vec<pdrm_core::harness::Table2Row>>,
            }
            print_json(&Tables {
                schema: 1,
                table1: t1,
                table2: t2,
            })?;
        }
        Format::Text => {
            if let Some(rows) = &t1 {
                println!("Table 1: decompositions n = r1*r2 for lengths up to 2048");
                print!("{}", table1_text(rows));
            }
            if let Some(rows) = &t2 {
                if t1.is_some() {
                    println!();
                }
                println!("Table 2: number of corrected errors");
                print!("{}", table2_text(rows));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_bits(s: &str) -> Result<BitVector, String> {
    let bits = s
        .trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(format!("information bits must be 0/1, found {other:?}")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BitVector::from_bits(&bits))
}

fn encode(a: EncodeArgs) -> CmdResult {
    let dec = a.code.decoder()?;
    let c = dec.encode(&parse_bits(&a.info)?).map_err(|e| e.to_string())?;
    match a.code.format {
        Format::Text => println!("{}", c.to_hex()),
        Format::Json => {
            #[derive(Serialize)]
            struct Encoded {
                schema: u32,
                m: u32,
                info_positions: Vec<usize>,
                codeword: BitVector,
            }
            print_json(&Encoded {
                schema: 1,
                m: a.code.m,
                info_positions: dec.info_set.positions(),
                codeword: c,
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn decode(a: DecodeArgs) -> CmdResult {
    let dec = a.code.decoder()?.with_best_effort(a.best_effort);
    let r = BitVector::from_hex(&a.received, dec.length()).map_err(|e| e.to_string())?;
    let out = dec.decode(&r).map_err(|e| e.to_string())?;
    #[derive(Serialize)]
    struct Decoded<'a> {
        schema: u32,
        m: u32,
        r1: u64,
        r2: u64,
        best_effort: bool,
        total_perm: String,
        #[serde(flatten)]
        result: &'a pdrm_core::decoder::DecodeResult,
    }
    let f = dec.info_set.factorization;
    let report = Decoded {
        schema: 1,
        m: f.m,
        r1: f.r1,
        r2: f.r2,
        best_effort: a.best_effort,
        total_perm: match (out.phase_index, out.pd_exponent) {
            (Some(0), Some(e)) => format!("T_alpha^{e}"),
            (Some(p), Some(e)) => format!("T_alpha^{e} o sigma_{}", p - 1),
            _ => "none".into(),
        },
        result: &out,
    };
    match a.code.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("status: {:?}", out.status);
            println!("codeword: {}", out.codeword.to_hex());
            println!("permutation: {}", report.total_perm);
            println!("syndrome checks: {}", out.syndrome_checks);
        }
    }
    Ok(if out.is_decoded() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn mode(m: ModeArg) -> SimMode {
    match m {
        ModeArg::Exhaustive => SimMode::Exhaustive,
        ModeArg::Sampled => SimMode::Sampled,
    }
}

fn simulate(a: SimulateArgs) -> CmdResult {
    let field = a.code.field()?;
    let cfg = SimConfig {
        m: a.code.m,
        r1: a.code.r1,
        poly: Some(field.poly()),
        weights: parse_weights(&a.weights).map_err(|e| e.to_string())?,
        trials_per_weight: a.trials,
        seed: a.seed,
        mode: mode(a.mode),
        best_effort: a.best_effort,
    };
    let report = run_sim(&cfg).map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    if let Some(path) = &a.out {
        std::fs::write(path, &json).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    match a.code.format {
        Format::Json => println!("{json}"),
        Format::Text => {
            println!(
                "m = {}, (r1, r2) = ({}, {}), s = {}, guarantee up to weight {}",
                report.m, report.r1, report.r2, report.s, report.guarantee_limit
            );
            println!("weight  trials  success  failed  miscorrected  mean_phases  mean_scans");
            for r in &report.records {
                println!(
                    "{:>6}  {:>6}  {:>7}  {:>6}  {:>12}  {:>11.3}  {:>10.2}",
                    r.weight, r.trials, r.successes, r.failures_detected, r.miscorrections, r.mean_phases, r.mean_pd_exponent_scans
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> CmdResult {
    let dec = a.code.decoder()?;
    let pd = match a.s {
        Some(s) => dec.pd.with_s(s),
        None => dec.pd.clone(),
    };
    let mode = match a.mode {
        ModeArg::Exhaustive => VerifyMode::Exhaustive,
        ModeArg::Sampled => VerifyMode::Sampled {
            trials: a.trials,
            seed: a.seed,
        },
    };
    let report = verify_pd_like(&dec.field, &pd, mode).map_err(|e| e.to_string())?;
    match a.code.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("m = {}, (r1, r2) = ({}, {}), s = {}", report.m, report.r1, report.r2, report.s);
            println!("checked {} subsets, {} without a witness", report.checked, report.failures);
            if let Some(bad) = &report.example_failure {
                println!("example failure (exponents): {bad:?}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
