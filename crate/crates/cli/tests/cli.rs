//! End-to-end CLI behavior: output shapes, exit codes, determinism, config
//! plumbing.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke-lab"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn");
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn eigenvalues_first_row() {
    let text = run_ok(&["eigenvalues", "--n", "10"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,tau,lambda");
    assert_eq!(lines[1], "1,1,1.0");
    assert_eq!(lines.len(), 11);
    assert!(lines[2].starts_with("2,-24,-0.53033"));
}

#[test]
fn unknown_flag_exits_2() {
    let out = bin()
        .args(["eigenvalues", "--n", "5", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_failure_exits_1_with_diagnostic() {
    // Y > q violates the moment hypothesis.
    let out = bin()
        .args(["moments-fixed", "--q", "5", "--y", "6", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"), "stderr: {err}");
}

#[test]
fn moments_fixed_matches_library_oracle() {
    let text = run_ok(&["moments-fixed", "--q", "5", "--y", "3", "--m", "1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,q_or_X,Y,m,U,count,measured,envelope,ratio"
    );
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "fixed_mod");
    assert_eq!(fields[1], "5");
    assert_eq!(fields[5], "3");
    let measured: f64 = fields[6].parse().unwrap();
    // Brute force: three primitive characters mod 5, three-term inner sums.
    let table = hecke_lab::eigenform::EigenformTable::build(10).unwrap();
    let group = hecke_lab::dirichlet::CharacterGroup::new(5).unwrap();
    let mut expected = 0.0f64;
    for chi in group.primitive_characters() {
        let mut s = hecke_lab::Complex64::new(0.0, 0.0);
        for n in 1..=3u64 {
            s += chi.eval(n) * table.lambda(n);
        }
        expected += s.norm_sqr();
    }
    assert!((measured - expected).abs() <= 1e-12 * expected);
}

#[test]
fn verify_prsum_even_n_lhs_zero() {
    let text = run_ok(&["verify-prsum", "--x", "1000", "--n", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,n,k,u,lhs,main_term,error");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[4], "0.0");
    assert_eq!(fields[5], "0.0");
}

#[test]
fn byte_identical_across_thread_counts() {
    let args = ["moments-fixed", "--q", "31,41", "--y", "20", "--m", "2"];
    let base = run_ok(&args);
    for threads in ["1", "4", "8"] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend_from_slice(&["--threads", threads]);
        assert_eq!(run_ok(&full), base, "threads = {threads}");
    }
}

#[test]
fn json_format() {
    let text = run_ok(&["eigenvalues", "--n", "3", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["n"], 1);
    assert_eq!(rows[0]["tau"], "1");
    assert_eq!(rows[0]["lambda"], 1.0);
    assert_eq!(rows[1]["tau"], "-24");
}

#[test]
fn out_flag_and_cache_roundtrip() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("eig.csv");
    let cache_dir = dir.join("cache");
    let args = [
        "eigenvalues",
        "--n",
        "50",
        "--eigenform-n",
        "50",
        "--cache-dir",
        cache_dir.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ];
    run_ok(&args);
    let first = std::fs::read_to_string(&out_path).unwrap();
    assert!(cache_dir.join("tau-v1-n50.csv").exists());
    // Second run hits the cache and must be byte-identical.
    run_ok(&args);
    let second = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(first, second);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_dir_env_override() {
    let dir = std::env::temp_dir().join(format!("hecke-env-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let out = bin()
        .args(["eigenvalues", "--n", "30", "--eigenform-n", "30"])
        .env("HECKE_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("tau-v1-n30.csv").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn characters_table_shape() {
    let text = run_ok(&["characters", "--q", "8"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "q,index,exponents,conductor,primitive,quadratic,parity"
    );
    assert_eq!(lines.len(), 5); // phi(8) = 4 rows
    assert!(lines[1].starts_with("8,0,0:0,1,false,true,even"));
}

#[test]
fn fit_roundtrip_through_csv() {
    let dir = std::env::temp_dir().join(format!("hecke-fit-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("rows.csv");
    run_ok(&[
        "moments-fixed",
        "--q",
        "31,61,127",
        "--y",
        "30",
        "--m",
        "2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let text = run_ok(&["fit", "--input", csv.to_str().unwrap()]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "axis,family,m,points,slope,intercept,r_squared");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "logq");
    assert_eq!(fields[3], "3");
    let slope: f64 = fields[4].parse().unwrap();
    assert!(slope.is_finite());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn lvalues_and_majorant_run() {
    let text = run_ok(&[
        "lvalues",
        "--q",
        "5",
        "--chi",
        "1",
        "--eigenform-n",
        "400",
        "--cutoff",
        "150",
    ]);
    assert!(text.starts_with("q,index,t,cutoff,re,im,abs,error_estimate\n"));
    assert_eq!(text.lines().count(), 2);

    let text = run_ok(&["majorant", "--q", "11", "--x", "11", "--eigenform-n", "100"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "q,index,t,x,a,variant,prime_term,prime_square_term,scale_term,total"
    );
    assert_eq!(lines.len(), 10); // 9 primitive characters mod 11
}

#[test]
fn verify_cancel_rows() {
    let text = run_ok(&[
        "verify-cancel",
        "--q",
        "5",
        "--x",
        "1000",
        "--eigenform-n",
        "16",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "q,index,t0,x,variant,sum_re,sum_im,abs,envelope,ratio"
    );
    assert_eq!(lines.len(), 4); // three non-principal characters mod 5
    for row in &lines[1..] {
        let ratio: f64 = row.split(',').next_back().unwrap().parse().unwrap();
        assert!(ratio < 1.0);
    }
}
