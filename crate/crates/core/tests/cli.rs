use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencil-orbits"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).lines().next().expect("one line")).unwrap()
}

#[test]
fn classify_conic_pair() {
    let o = run(&["classify", "--q", "2", "--conics", "000100,000001"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["label"], "Ω3");
    assert_eq!(v["point_od"], serde_json::json!([1, 7, 3, 4]));
    assert_eq!(v["hyperplane_od"], serde_json::json!([3, 0, 0, 0]));
}

#[test]
fn classify_representative_and_solid() {
    assert_eq!(
        json(&run(&["classify", "--q", "4", "--rep", "9"]))["label"],
        "Ω9"
    );
    assert_eq!(
        json(&run(&[
            "classify",
            "--solid",
            "q=2:100000010000001000000100"
        ]))["label"],
        "Ω2"
    );
    assert_eq!(
        json(&run(&[
            "classify",
            "--q",
            "2",
            "--solid",
            "100000010000001000000100"
        ]))["label"],
        "Ω2"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--q", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["classify", "--q", "2", "--rep", "1", "--solid", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["classify", "--q", "2", "--rep", "1", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--level", "q3-full"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--q", "2", "--solid", "1234"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["classify", "--q", "3", "--rep", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["classify", "--q", "2", "--conics", "010000,010000"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "classify",
            "--q",
            "2",
            "--solid",
            "100000100000000000000000"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        run(&["table", "--q", "2", "--out", "/nonexistent/dir/t.csv"])
            .status
            .code(),
        Some(6)
    );
    let help = stdout(&run(&["--help"]));
    for code in ["0 ", "2 ", "3 ", "4 ", "5 ", "6 "] {
        assert!(help.contains(&format!("  {code}")), "{help}");
    }
}

#[test]
fn table_csv_q2() {
    let o = run(&["table", "--q", "2", "--format", "csv", "--campbell"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "orbit_size").unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 15);
    assert_eq!(
        rows.iter()
            .map(|x| x[col].parse::<u64>().unwrap())
            .sum::<u64>(),
        651
    );
}

#[test]
fn table_latex_q4() {
    let text = stdout(&run(&["table", "--q", "4", "--format", "latex"]));
    assert!(text.starts_with("\\documentclass"));
    assert!(text.contains("\\begin{tabular}") && text.contains("\\end{document}"));
}

#[test]
fn table_json_q8() {
    let text = stdout(&run(&["table", "--q", "8"]));
    let rows: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 15);
    let order = 8u64.pow(3) * (8u64.pow(3) - 1) * 63;
    for r in &rows {
        assert_eq!(
            r["orbit_size"].as_u64().unwrap() * r["stabilizer_order"].as_u64().unwrap(),
            order
        );
    }
    assert_eq!(
        rows.iter()
            .map(|r| r["orbit_size"].as_u64().unwrap())
            .sum::<u64>(),
        19_477_641
    );
    assert_eq!(rows[8]["stabilizer_order"], 24);
    assert_eq!(rows[14]["stabilizer_order"], 3);
}

#[test]
fn rep_and_census() {
    let text = stdout(&run(&["rep", "--q", "4"]));
    assert_eq!(text.lines().count(), 15);
    let v: Value = serde_json::from_str(text.lines().nth(14).unwrap()).unwrap();
    assert_eq!(v["label"], "Ω15");
    assert_eq!(v["hyperplane_od"], serde_json::json!([0, 0, 0, 5]));
    let census = stdout(&run(&["census", "--q", "2"]));
    let lines: Vec<Value> = census
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["counts"], serde_json::json!([7, 7, 21, 28]));
    assert_eq!(lines[1]["counts"], serde_json::json!([7, 21, 7, 28]));
}

#[test]
fn verify_q4_is_deterministic_across_thread_counts() {
    let one = run(&["verify", "--level", "q4-full", "--threads", "1"]);
    let many = run(&["verify", "--level", "q4-full", "--threads", "4"]);
    assert!(one.status.success() && many.status.success());
    assert_eq!(stdout(&one), stdout(&many));
    let v = json(&one);
    assert_eq!(v["pass"], true);
    assert_eq!(
        v["histogram"]["counts"],
        serde_json::json!([
            315, 105, 21, 336, 1260, 3360, 2016, 10080, 2520, 10080, 5040, 15120, 7560, 15120,
            20160
        ])
    );
}

#[test]
fn verify_q2_reports_histogram_and_names_failures() {
    let o = run(&["verify", "--level", "q2-full"]);
    let v = json(&o);
    assert_eq!(
        v["histogram"]["counts"],
        serde_json::json!([21, 21, 7, 28, 42, 84, 28, 84, 7, 84, 84, 42, 21, 42, 56])
    );
    assert_eq!(v["histogram"]["pass"], true);
    let failed = v["failed"].as_array().unwrap();
    assert_eq!(o.status.code(), Some(if failed.is_empty() { 0 } else { 5 }));
    for name in failed {
        let check = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == *name)
            .unwrap();
        assert!(check["witness"].is_string(), "{check}");
    }
}
