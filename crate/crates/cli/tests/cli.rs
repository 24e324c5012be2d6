use std::process::{Command, Output};

use serde_json::{json, Value};

fn easyqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_easyqg"))
        .args(args)
        .env_remove("EASYQG_MAX_POINTS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = easyqg(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn cap_over_cup_leaves_one_loop() {
    let v = json_of(&["partition", "compose", "P(0,2;;ww;{{1,2}})", "P(2,0;ww;;{{1,2}})"]);
    assert_eq!(v["b"], 1);
    assert_eq!(v["result"], "P(0,0;;;{})");
    let text = stdout(&easyqg(&["partition", "compose", "P(0,2;;ww;{{1,2}})", "P(2,0;ww;;{{1,2}})"]));
    assert_eq!(text, "P(0,0;;;{})\nb = 1\n");
}

#[test]
fn exit_codes() {
    let malformed = easyqg(&["partition", "involute", "P(1,1;w;w;{{1,2}"]);
    assert_eq!(malformed.status.code(), Some(2));
    let mismatch = easyqg(&["partition", "compose", "P(0,2;;ww;{{1,2}})", "P(2,0;bb;;{{1,2}})"]);
    assert_eq!(mismatch.status.code(), Some(3));
    let wrong_modulus = easyqg(&["fusion", "decompose", "--family", "H+", "--s", "2", "r[1]@3", "r[1]"]);
    assert_eq!(wrong_modulus.status.code(), Some(3));
    let odd = easyqg(&["fusion", "decompose", "--family", "S+", "u1", "u2"]);
    assert_eq!(odd.status.code(), Some(3));
    let missing_s = easyqg(&["fusion", "power", "--family", "H+", "2"]);
    assert_eq!(missing_s.status.code(), Some(2));
    let zero_bound = easyqg(&["category", "--family", "O+", "--max-points", "0"]);
    assert_eq!(zero_bound.status.code(), Some(2));
    let rotate_empty = easyqg(&["partition", "rotate", "--corner", "upper-left", "P(0,2;;wb;{{1,2}})"]);
    assert_eq!(rotate_empty.status.code(), Some(3));
}

#[test]
fn kparam_of_the_orthogonal_category() {
    let out = easyqg(&["partition", "kparam", "--family", "O+", "--max-points", "8"]);
    assert_eq!(stdout(&out), "2\n");
    let env_bound = Command::new(env!("CARGO_BIN_EXE_easyqg"))
        .args(["--format", "json", "category", "--family", "S+"])
        .env("EASYQG_MAX_POINTS", "6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env_bound.stdout).unwrap();
    assert_eq!(v["max_points"], 6);
    assert_eq!(v["k"]["value"], 1);
}

#[test]
fn fusion_examples() {
    assert_eq!(
        json_of(&["fusion", "decompose", "--family", "H+", "--s", "2", "r[1]", "r[1]"]),
        json!({"r[1,1]": 1, "r[2]": 1, "r[]": 1})
    );
    assert_eq!(json_of(&["fusion", "chaingroup", "--family", "H+", "--s", "4"])["order"], 4);
    assert_eq!(stdout(&easyqg(&["fusion", "chaingroup", "--family", "H+", "--s", "4"])), "4\n");
    assert_eq!(json_of(&["fusion", "degree", "--family", "H+", "--s", "3", "r[1,2,1]"])["degree"], 4);
    assert_eq!(
        json_of(&["fusion", "power", "--family", "O+", "3"]),
        json!({"u1": 2, "u3": 1})
    );
    assert_eq!(json_of(&["fusion", "dim", "--family", "S+", "u2", "--n", "5"])["dim"], "4");
}

#[test]
fn unitary_conditions_fail() {
    let v = json_of(&["conditions", "--family", "U+"]);
    assert_eq!(v["c1"]["status"], "fails");
    assert_eq!(v["c2"]["status"], "fails");
    assert_eq!(v["cp"]["k"]["value"], 0);
    assert_eq!(v["consistent"], true);
    let h = json_of(&["conditions", "--family", "H+", "--s", "3"]);
    assert_eq!((h["c2"]["N"].clone(), h["c2"]["k0"].clone()), (json!(1), json!(3)));
    assert_eq!(h["cp"]["k0"], 3);
}

#[test]
fn ktheory_examples() {
    let o = json_of(&["ktheory", "--family", "O+", "--L", "8"]);
    assert_eq!(o["K0_stabilized"], true);
    assert_eq!(o["K0"], json!({"rank": 1, "torsion": []}));
    assert_eq!(o["unit_class"], json!([1]));
    assert_eq!(o["K1"], json!({"rank": 0, "torsion": []}));

    let h = json_of(&["ktheory", "--family", "H+", "--s", "2", "--L", "5"]);
    assert_eq!(h["K1"]["rank"], 0);
    assert_eq!(h["free_increasing"], true);
    let ranks: Vec<u64> = h["levels"].as_array().unwrap().iter().map(|l| l["coker"]["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![1, 2, 5, 13, 34, 89]);

    let strict = easyqg(&["ktheory", "--family", "H+", "--s", "2", "--L", "3", "--strict"]);
    assert_eq!(strict.status.code(), Some(4));
    let strict_o = easyqg(&["ktheory", "--family", "O+", "--L", "3", "--strict"]);
    assert_eq!(strict_o.status.code(), Some(0));
    assert_eq!(easyqg(&["ktheory", "--family", "U+"]).status.code(), Some(3));
}

#[test]
fn intertwiner_dimension() {
    let v = json_of(&["intertwiners", "--family", "O+", "--k", "0", "--l", "8", "--n", "2"]);
    assert_eq!(v["dim"], 14);
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["--format", "json", "conditions", "--family", "S+"][..],
        &["--format", "json", "ktheory", "--family", "H+", "--s", "3", "--L", "3"],
        &["--format", "json", "category", "--family", "H+", "--s", "2"],
    ] {
        let a = easyqg(args);
        let b = easyqg(args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("easyqg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("power.json");
    let out = easyqg(&["--format", "json", "-o", path.to_str().unwrap(), "fusion", "power", "--family", "S+", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v, json!({"u0": 2, "u2": 3, "u4": 1}));
    std::fs::remove_dir_all(&dir).unwrap();
}
