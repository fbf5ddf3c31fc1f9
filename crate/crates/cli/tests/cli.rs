use std::process::{Command, Output};

fn pdrm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdrm")).args(args).output().expect("spawn pdrm")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn info_reports_m4_information_set() {
    let out = pdrm(&["info", "--m", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["r1"], 5);
    assert_eq!(v["r2"], 3);
    assert_eq!(v["s"], 5);
    assert_eq!(v["info_exponents"], serde_json::json!([0, 3, 6, 12]));
    assert_eq!(v["info_positions"], serde_json::json!([0, 1, 4, 7, 13]));
    assert_eq!(v["generator_rank_at_i"], 5);
}

#[test]
fn show_standard_matrix_has_identity_on_check_positions() {
    let out = pdrm(&["info", "--m", "4", "--show-matrix", "standard"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.len() == 16));
    let info = [0, 1, 4, 7, 13];
    let mut pivots = Vec::new();
    for col in (0..16).filter(|c| !info.contains(c)) {
        let ones: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].as_bytes()[col] == b'1').collect();
        assert_eq!(ones.len(), 1, "column {col}");
        pivots.push(ones[0]);
    }
    pivots.sort();
    assert_eq!(pivots, (0..11).collect::<Vec<_>>());
}

#[test]
fn encode_then_decode_with_two_errors() {
    let out = pdrm(&["encode", "--m", "4", "--info", "10110", "--format", "text"]);
    assert!(out.status.success());
    let cw = String::from_utf8(out.stdout).unwrap().trim().to_string();
    let word = u16::from_str_radix(&cw, 16).unwrap();
    let received = format!("{:04x}", word ^ 0b1000_0000_0010_0000);

    let out = pdrm(&["decode", "--m", "4", "--received", &received]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "decoded");
    assert_eq!(v["codeword"], cw);
    assert_eq!(v["schema"], 1);
}

#[test]
fn undecodable_word_exits_one() {
    // Weight 4 error on the all-zero word: beyond the guarantee, syndrome test never passes.
    let out = pdrm(&["decode", "--m", "4", "--received", "f000"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "failure");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pdrm(&["decode", "--m", "4", "--received", "xyz"]).status.code(), Some(2));
    assert_eq!(pdrm(&["decode", "--m", "4", "--received", "0000", "--r1", "4"]).status.code(), Some(2));
    assert_eq!(pdrm(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(pdrm(&["info", "--m", "4", "--poly", "0x1f"]).status.code(), Some(2));
}

#[test]
fn poly_flag_overrides_config_file() {
    let path = std::env::temp_dir().join(format!("pdrm-cli-test-{}.toml", std::process::id()));
    std::fs::write(&path, "[primitive_poly]\n4 = \"0x19\"\n").unwrap();
    let p = path.to_str().unwrap();

    let from_cfg = json(&pdrm(&["info", "--m", "4", "--config", p]));
    assert_eq!(from_cfg["primitive_poly"], "0x19");
    let overridden = json(&pdrm(&["info", "--m", "4", "--config", p, "--poly", "0x13"]));
    assert_eq!(overridden["primitive_poly"], "0x13");
    std::fs::remove_file(&path).ok();
}

#[test]
fn tables_json_flags_known_misprints() {
    let out = pdrm(&["tables", "--which", "all", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    let t1 = v["table1"].as_array().unwrap();
    assert_eq!(t1.len(), 10);
    assert!(!t1[0]["flags"].as_array().unwrap().is_empty());
    let t2 = v["table2"].as_array().unwrap();
    let m6 = t2.iter().find(|r| r["m"] == 6).unwrap();
    assert_eq!(m6["col_a"], 9);
    assert!(!m6["flags"].as_array().unwrap().is_empty());
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", "--m", "4", "--weights", "1..3", "--trials", "50", "--seed", "9"];
    let a = json(&pdrm(&args));
    let b = json(&pdrm(&args));
    for (ra, rb) in a["records"].as_array().unwrap().iter().zip(b["records"].as_array().unwrap()) {
        assert_eq!(ra["successes"], rb["successes"]);
        assert_eq!(ra["mean_phases"], rb["mean_phases"]);
        assert_eq!(ra["successes"], 50);
    }
}

#[test]
fn verify_pdlike_exhaustive_m4() {
    let v = json(&pdrm(&["verify-pdlike", "--m", "4", "--mode", "exhaustive"]));
    assert_eq!(v["checked"], 3003);
    assert_eq!(v["failures"], 0);
}
