//! End-to-end runs of the binary against golden files in `tests/golden`.
//! `SRKIT_BLESS=1 cargo test -p srkit-cli` rewrites them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_srkit"));
    c.current_dir(library_dir()).env_remove("SRKIT_MAX_ENUM");
    c
}

fn library_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../srkit")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn transcript(out: &Output) -> String {
    let mut s = String::from_utf8(out.stdout.clone()).unwrap();
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    if !err.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(&err);
    }
    s
}

fn golden(name: &str, args: &[&str], exit: i32) {
    let out = run(args);
    let text = transcript(&out);
    assert_eq!(out.status.code(), Some(exit), "{name}: exit status\n{text}");
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"));
    if std::env::var_os("SRKIT_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(text, want, "{name}: output differs from {}", path.display());
}

const TABLE1: &str = "2x2,1x2x7,1x1x5";

#[test]
fn bound_tables() {
    for d in ["8", "9", "11"] {
        golden(
            &format!("bounds_table1_d{d}"),
            &["bounds", "--q", "2", "--profile", TABLE1, "--d", d],
            0,
        );
    }
    golden(
        "bounds_table1_all",
        &["bounds", "--q", "2", "--profile", TABLE1, "--all-d"],
        0,
    );
    for (t, d) in [(4, 5), (6, 8), (7, 10), (9, 14), (17, 32)] {
        let profile = format!("2x2x{t}");
        golden(
            &format!("bounds_table2_t{t}"),
            &["bounds", "--q", "2", "--profile", &profile, "--d", &d.to_string()],
            0,
        );
    }
    golden(
        "bounds_table1_d11_json",
        &[
            "bounds",
            "--q",
            "2",
            "--profile",
            TABLE1,
            "--d",
            "11",
            "--format",
            "json",
        ],
        0,
    );
    golden(
        "bounds_table1_d11_csv",
        &[
            "bounds",
            "--q",
            "2",
            "--profile",
            TABLE1,
            "--d",
            "11",
            "--format",
            "csv",
        ],
        0,
    );
}

#[test]
fn best_bound_in_json() {
    let out = run(&[
        "bounds",
        "--q",
        "2",
        "--profile",
        TABLE1,
        "--d",
        "11",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "srkit.v1");
    assert_eq!(v["reports"][0]["best"], serde_json::json!(["total_distance"]));
    let td = &v["reports"][0]["bounds"][7];
    assert_eq!(
        (td["key"].as_str(), td["value"].as_str()),
        (Some("total_distance"), Some("6"))
    );
}

#[test]
fn certification() {
    golden("check_msrd6", &["check", "fixtures/msrd6.src"], 0);
    golden("check_msrd7", &["check", "fixtures/msrd7.src"], 1);
    golden("check_msrd8", &["check", "fixtures/msrd8.src"], 0);
    golden("check_msrd8_q3", &["check", "fixtures/msrd8_q3.src"], 0);
    golden(
        "check_msrd6_json",
        &["check", "fixtures/msrd6.src", "--format", "json"],
        0,
    );
    golden("check_dual_not_msrd", &["check", "fixtures/dual_not_msrd.src"], 0);
    assert_eq!(
        String::from_utf8(run(&["check", "fixtures/msrd6.src"]).stdout)
            .unwrap()
            .lines()
            .next(),
        Some("MSRD, d=4, dim 4")
    );
}

#[test]
fn dual_of_unequal_m_msrd_is_not_msrd() {
    let dir = tempfile::tempdir().unwrap();
    let dual = dir.path().join("dual.src");
    let out = run(&["dual", "fixtures/dual_not_msrd.src", "--out", dual.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["check", dual.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("not MSRD, d=2, dim 2"));
}

#[test]
fn equal_distributions_different_duals() {
    golden("distributions_c1", &["distributions", "fixtures/c1.src"], 0);
    golden("distributions_c2", &["distributions", "fixtures/c2.src"], 0);
    golden(
        "distributions_c1_dual",
        &["distributions", "fixtures/c1.src", "--dual"],
        0,
    );
    golden(
        "distributions_c2_dual",
        &["distributions", "fixtures/c2.src", "--dual"],
        0,
    );
}

#[test]
fn distributions_and_transforms() {
    golden(
        "distributions_msrd6_check",
        &[
            "distributions",
            "fixtures/msrd6.src",
            "--check-macwilliams",
            "--support",
        ],
        0,
    );
    golden(
        "distributions_c1_json",
        &["distributions", "fixtures/c1.src", "--format", "json", "--support"],
        0,
    );
    golden("macwilliams_msrd6", &["macwilliams", "fixtures/msrd6.src"], 0);
}

#[test]
fn macwilliams_from_csv_matches_code() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c1.csv");
    std::fs::write(&csv, "ranks,count\n0 0,1\n2 0,1\n").unwrap();
    let from_csv = run(&[
        "macwilliams",
        "--input",
        csv.to_str().unwrap(),
        "--q",
        "2",
        "--profile",
        "2x2,2x2",
        "--dim",
        "1",
        "--format",
        "csv",
    ]);
    let from_code = run(&["macwilliams", "fixtures/c1.src", "--format", "csv"]);
    assert!(from_csv.status.success(), "{}", transcript(&from_csv));
    assert_eq!(from_csv.stdout, from_code.stdout);
    std::fs::write(&csv, "ranks,count\n0 0 0,1\n").unwrap();
    let bad = run(&[
        "macwilliams",
        "--input",
        csv.to_str().unwrap(),
        "--q",
        "2",
        "--profile",
        "2x2,2x2",
        "--dim",
        "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn omega_exclusion() {
    golden(
        "omega_332",
        &["omega", "--q", "3", "--m", "3", "--shape", "3,3,2", "--d", "7"],
        1,
    );
    golden(
        "omega_332_json",
        &[
            "omega", "--q", "3", "--m", "3", "--shape", "3,3,2", "--d", "7", "--format", "json",
        ],
        1,
    );
    let out = run(&["omega", "--q", "3", "--m", "3", "--shape", "3,3,2", "--d", "7"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("Excluded, witness (3,3,2), ω=−52"));
    // ω(ũ) = 1 - 2^n for two n×n blocks over GF(2) at d = n + 1.
    for n in 2..=6usize {
        let (m, shape, d) = (n.to_string(), format!("{n},{n}"), (n + 1).to_string());
        let out = run(&[
            "omega", "--q", "2", "--m", &m, "--shape", &shape, "--d", &d, "--fast", "--format", "csv",
        ]);
        assert_eq!(out.status.code(), Some(1));
        let text = String::from_utf8(out.stdout).unwrap();
        let value: i64 = text
            .lines()
            .nth(1)
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        assert_eq!(value, 1 - (1i64 << n), "n = {n}");
    }
    golden(
        "omega_inconclusive",
        &["omega", "--q", "2", "--m", "2", "--shape", "2,1", "--d", "2"],
        0,
    );
}

#[test]
fn constructions() {
    // The extension family reproduces the shipped fixture byte for byte.
    let out = run(&["construct", "msrd111-ext", "--q", "2", "--m", "2", "--s", "4"]);
    let fixture = std::fs::read(library_dir().join("fixtures/msrd8.src")).unwrap();
    assert_eq!(out.stdout, fixture);
    golden(
        "construct_msrd111_ext",
        &[
            "construct",
            "msrd111-ext",
            "--q",
            "3",
            "--m",
            "2",
            "--s",
            "4",
            "--certify",
        ],
        0,
    );
    golden(
        "construct_d2",
        &["construct", "d2", "--q", "2", "--profile", "2x3x3", "--certify"],
        0,
    );
    golden(
        "construct_dn",
        &["construct", "dn", "--q", "3", "--profile", "2x2x3", "--certify"],
        0,
    );
    golden(
        "construct_dn_minus",
        &["construct", "dn-minus", "--q", "2", "--profile", "2x4,2x2", "--certify"],
        0,
    );
    golden(
        "construct_gabidulin",
        &[
            "construct",
            "gabidulin",
            "--q",
            "2",
            "--n",
            "2",
            "--m",
            "3",
            "--d",
            "2",
            "--certify",
        ],
        0,
    );
    golden(
        "construct_mds_lift",
        &[
            "construct",
            "mds-lift",
            "--q",
            "2",
            "--m",
            "2",
            "--t",
            "5",
            "--d",
            "3",
            "--certify",
        ],
        0,
    );
    golden(
        "construct_msrd111",
        &[
            "construct",
            "msrd111",
            "--q",
            "2",
            "--inner",
            "2x2",
            "--t2",
            "3",
            "--certify",
        ],
        0,
    );
    golden(
        "construct_random",
        &[
            "construct",
            "random",
            "--q",
            "3",
            "--profile",
            "2x2,1x1",
            "--k",
            "2",
            "--seed",
            "7",
        ],
        0,
    );
}

#[test]
fn simplex_lift_is_certified_structurally() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lift.src");
    let p = path.to_str().unwrap();
    golden(
        "construct_simplex_lift",
        &[
            "construct",
            "simplex-lift",
            "--q",
            "2",
            "--m",
            "4",
            "--n",
            "3",
            "--r",
            "3",
            "--certify",
            "--out",
            p,
        ],
        0,
    );
    let plotkin = run(&[
        "bounds",
        "--q",
        "2",
        "--profile",
        "3x4x273",
        "--d",
        "768",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&plotkin.stdout).unwrap();
    let ip = v["reports"][0]["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["key"] == "induced_plotkin")
        .unwrap()
        .clone();
    assert_eq!(ip["value"], "4096");
}

#[test]
fn msrd_operations() {
    golden("shorten_row_msrd6", &["shorten", "fixtures/msrd6.src", "--row", "3"], 0);
    golden(
        "shorten_col_msrd6",
        &["shorten", "fixtures/msrd6.src", "--col", "4", "--index", "2"],
        0,
    );
    golden("puncture_msrd6", &["puncture", "fixtures/msrd6.src", "--block", "1"], 0);
    golden(
        "shorten_support_msrd6",
        &["shorten", "fixtures/msrd6.src", "--support", "1 0|full|full|full"],
        0,
    );
    golden(
        "shorten_out_of_range",
        &["shorten", "fixtures/msrd6.src", "--row", "1"],
        2,
    );
    golden("dual_msrd6", &["dual", "fixtures/msrd6.src"], 0);
}

#[test]
fn asymptotic_series() {
    golden(
        "asymptotics_fig1",
        &[
            "asymptotics",
            "--q",
            "2",
            "--m",
            "4",
            "--n",
            "2",
            "--grid",
            "0:1:0.05",
            "--method",
            "grid",
            "--crossover",
            "0.2:0.6",
        ],
        0,
    );
    golden(
        "asymptotics_head",
        &[
            "asymptotics",
            "--q",
            "2",
            "--m",
            "2",
            "--n",
            "1,2",
            "--head",
            "2x4,3",
            "--grid",
            "0:1:0.25",
        ],
        0,
    );
    let bad = run(&[
        "asymptotics",
        "--q",
        "2",
        "--m",
        "2",
        "--n",
        "1,2",
        "--bounds",
        "sphere_packing",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn asymptotics_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let args = ["asymptotics", "--q", "2", "--m", "4", "--n", "4", "--grid", "0:1:0.1"];
    let direct = run(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(run(&with_out).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn sphere_volumes() {
    golden(
        "sphere_volume",
        &["sphere-volume", "--q", "2", "--profile", "2x2,1x2", "--all"],
        0,
    );
    golden(
        "sphere_volume_json",
        &[
            "sphere-volume",
            "--q",
            "3",
            "--profile",
            "2x3",
            "--r",
            "1",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["bounds", "--q", "6", "--profile", "2x2", "--d", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bounds", "--q", "2", "--profile", "2x2"]).status.code(), Some(2));
    assert_eq!(run(&["check", "fixtures/missing.src"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "fixtures/msrd6.src", "--max-enum", "10"]).status.code(),
        Some(3)
    );
    let guarded = bin()
        .args(["check", "fixtures/msrd6.src"])
        .env("SRKIT_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(3));
    let lifted = bin()
        .args(["check", "fixtures/msrd6.src", "--max-enum", "100"])
        .env("SRKIT_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(lifted.status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn truncated_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.src");
    let full = std::fs::read_to_string(library_dir().join("fixtures/msrd6.src")).unwrap();
    let cut: String = full.lines().take(9).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, cut).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 10"));
}

#[test]
fn thread_count_does_not_change_output() {
    let one = run(&["--threads", "1", "distributions", "fixtures/msrd6.src", "--support"]);
    let four = run(&["--threads", "4", "distributions", "fixtures/msrd6.src", "--support"]);
    assert_eq!(one.stdout, four.stdout);
}
