use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn trigauss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigauss"))
        .args(args)
        .env_remove("TRIGAUSS_MAX_DENOM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn rank_table_csv_on_genus_sixteen() {
    let o = trigauss(&["rank-table", "--r1", "18", "--seed", "7", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("piece,k,dim_kernel,rank,expected_rank,match"));
    let mm: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("MM,"))
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(mm, ["17", "13", "9", "5", "1", "0"]);
    assert!(text.ends_with('\n'));
}

#[test]
fn bounds_on_genus_sixteen() {
    let o = trigauss(&["bounds", "--r1", "18", "--seed", "7", "--k", "2"]);
    let v = json(&o);
    assert_eq!(v["geodesic"], 40);
    assert_eq!(v["mu2k_lower"], 14);
    assert_eq!(v["specialized"], 40);
}

#[test]
fn certificates_on_genus_ten() {
    let o = trigauss(&["certify", "--r1", "12", "--seed", "7", "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let ids: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["certificate"]["quadric"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["LM:1:1", "MM:1:2", "LL:1:2"]);
}

#[test]
fn experimental_outputs_are_flagged() {
    let v = json(&trigauss(&["certify", "--r1", "12", "--seed", "7", "--kmax", "5"]));
    assert_eq!(v[3]["k"], 5);
    assert_eq!(v[3]["certificate"]["experimental"], true);
    assert_eq!(v[2]["certificate"]["experimental"], false);

    let v = json(&trigauss(&["rank-table", "--r1", "12", "--seed", "7", "--kmax", "2"]));
    let lm: Vec<&Value> = v["rows"].as_array().unwrap().iter().filter(|r| r["piece"] == "LM").collect();
    assert_eq!(lm[0]["experimental"], false);
    assert_eq!(lm[1]["experimental"], true);
}

#[test]
fn rho_report_shape() {
    let o = trigauss(&["rho", "--r1", "12", "--seed", "7", "--quadric", "MM:1:2", "--n", "3", "--l", "3"]);
    let v = json(&o);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["l", "n", "q", "quadric", "vanishing_order"]);
    assert_eq!(v["vanishing_order"], 5);
    assert!(v["q"].is_string());

    let o = trigauss(&["rho", "--r1", "12", "--seed", "7", "--quadric", "MM:1:2", "--n", "3", "--l", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = ["mu2-kernel", "--r1", "12", "--seed", "3"];
    let (a, b) = (trigauss(&args), trigauss(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with('\n'));
    let info = |seed: &str| trigauss(&["info", "--r1", "12", "--seed", seed]).stdout;
    assert_eq!(info("3"), info("3"));
    assert_ne!(info("3"), info("4"));
}

#[test]
fn spec_files_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(&good, r#"{"roots":["0","1","-1","2","-2","3"],"exponents":[1,1,1,1,1,1]}"#).unwrap();
    let v = json(&trigauss(&["info", "--spec", good.to_str().unwrap()]));
    assert_eq!(v["curve"]["genus"], 4);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"roots":["0","0","1","2","3","4"]}"#).unwrap();
    let o = trigauss(&["info", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate root"));

    let o = trigauss(&["info", "--spec", good.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trigauss(&["kernel", "--spec", good.to_str().unwrap(), "--piece", "LL", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trigauss(&["info", "--r1", "10", "--r2", "8", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trigauss(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn generator_spec_with_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("gen.json");
    fs::write(&spec, r#"{"generator":{"r1":18,"r2":0,"seed":1}}"#).unwrap();
    let a = trigauss(&["info", "--spec", spec.to_str().unwrap(), "--seed", "7"]);
    let b = trigauss(&["info", "--r1", "18", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let roots = json(&a)["curve"]["roots"].as_array().unwrap().len();
    assert_eq!(roots, 18);
}

#[test]
fn denominator_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_trigauss"))
            .args(["info", "--r1", "9", "--seed", "2"])
            .env("TRIGAUSS_MAX_DENOM", cap)
            .output()
            .unwrap()
    };
    let v = json(&run("5"));
    let roots = v["curve"]["roots"].as_array().unwrap();
    assert!(roots.iter().any(|r| r.as_str().unwrap().contains('/')));
    assert_eq!(run("0").status.code(), Some(1));
}

#[test]
fn out_directory() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("reports");
    let o = trigauss(&["bounds", "--r1", "18", "--seed", "7", "--out", target.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(target.join("bounds.csv")).unwrap();
    assert_eq!(text, "genus,k,geodesic,specialized,mu2k_lower\n16,2,40,40,14\n");
}

#[test]
fn verify_exit_status() {
    let o = trigauss(&["verify", "--r1", "6", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "ok");
    assert!(!v["gated"].as_array().unwrap().is_empty());

    // the closed-form k = 2 value is the one record that disagrees on genus 10
    let o = trigauss(&["verify", "--r1", "12", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    let failing: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["match"] == false && r["experimental"] == false)
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["certificate.k2_value"]);
}
