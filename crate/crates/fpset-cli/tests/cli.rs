use std::process::{Command, Output};

const KLEIN: &str = "{ (1 2)(3 4), (1 3)(2 4), (1 4)(2 3) }";

fn fpset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpset"))
        .args(args)
        .env_remove("FPSET_P")
        .env_remove("FPSET_Q")
        .env_remove("FPSET_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let o = fpset(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn is_fps_on_full_class() {
    let v = json(&["is-fps", "--p", "2", "--q", "2", KLEIN]);
    assert_eq!(v["fixed_point_set"], true);
    assert_eq!(v["closed"], true);
    assert_eq!(v["S_order"], 4);
    assert_eq!(v["N_order"], 24);
    assert_eq!(v["M_order"], 6);
}

#[test]
fn factor_splits_product() {
    let v = json(&["factor", "{(1 2)(3 4)}"]);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    assert_eq!(v["irreducible"], false);
}

#[test]
fn closure_at_odd_prime_is_full_class() {
    let v = json(&["closure", "--p", "3", "{(1 2)(3 4)}"]);
    assert_eq!(v["closure"]["elements"].as_array().unwrap().len(), 3);
    assert_eq!(v["closed"], false);
}

#[test]
fn verify_agrees_on_small_classes() {
    for n in ["2", "3"] {
        let o = fpset(&["verify", "--p", "2", "--q", "2", "--n", n]);
        assert!(o.status.success());
        assert!(stdout(&o).contains("AGREE"));
    }
}

#[test]
fn oracle_json_lists_kept_set() {
    let v = json(&["oracle", "--p", "3", "--q", "3", "--n", "1"]);
    let kept = v["kept"].as_array().unwrap();
    assert_eq!(kept.len(), 1);
    assert_eq!(kept[0]["np"], 2);
    assert_eq!(v["ledger"]["holds"], true);
}

#[test]
fn exit_codes_distinguish_failures() {
    assert_eq!(fpset(&["is-fps", "{(1 2}"]).status.code(), Some(3));
    assert_eq!(
        fpset(&["--group-cap", "2", "is-fps", KLEIN]).status.code(),
        Some(4)
    );
    assert_eq!(fpset(&["bogus"]).status.code(), Some(2));
    let o = fpset(&["is-fps", "{(1 2}"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn json_is_byte_stable() {
    let a = fpset(&["--format", "json", "is-fps", KLEIN]);
    let b = fpset(&["--format", "json", "is-fps", KLEIN]);
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    let keys = [
        "\"set\"",
        "\"p\"",
        "\"q\"",
        "\"closed\"",
        "\"exact\"",
        "\"projective\"",
        "\"fixed_point_set\"",
        "\"S_order\"",
        "\"N_order\"",
        "\"Q_gens\"",
        "\"M_order\"",
        "\"np\"",
        "\"notes\"",
    ];
    let mut at = 0;
    for k in keys {
        let i = s[at..]
            .find(k)
            .unwrap_or_else(|| panic!("{k} missing or out of order"));
        at += i + k.len();
    }
}

#[test]
fn text_and_json_verdicts_match() {
    let sets = [KLEIN, "{(1 2)(3 4)}", "{(1 2)}", "{(1 2)(3 4), (1 3)(2 4)}"];
    for p in ["2", "3"] {
        for s in sets {
            let v = json(&["is-fps", "--p", p, s]);
            let t = stdout(&fpset(&["is-fps", "--p", p, s]));
            for key in ["closed", "exact", "projective", "fixed_point_set", "np"] {
                let want = format!("{key}: {}", v[key]);
                assert!(t.lines().any(|l| l == want), "{key} for {s} at p={p}: {t}");
            }
        }
    }
}

#[test]
fn input_file_and_env_vars() {
    let dir = std::env::temp_dir().join(format!("fpset-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("sets.txt");
    std::fs::write(&f, format!("# sets\n{KLEIN}\n\n{{(1 2)}}\n")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fpset"))
        .args(["is-fps", "--input", f.to_str().unwrap()])
        .env("FPSET_FORMAT", "json")
        .env("FPSET_P", "3")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert!(arr.iter().all(|r| r["p"] == 3));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn kappa_of_transposition() {
    let v = json(&["kappa", "--p", "2", "{(1 2)}"]);
    assert_eq!(v["kappa"]["value"], 2);
}

#[test]
fn classify_text_table() {
    let o = fpset(&["classify", "--p", "2", "--q", "2", "--max-degree", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all fixed point sets"));
}
