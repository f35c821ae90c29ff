use std::process::{Command, Output};

fn ncpforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpforge"))
        .args(args)
        .env_remove("NCPFORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn catalog_lists_groups() {
    let o = ncpforge(&["catalog", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["group"].as_str().unwrap()).collect();
    assert!(names.contains(&"F4") && names.contains(&"G:3,3,4"));
    let small = ncpforge(&["catalog", "--max-order", "100"]);
    assert!(!stdout(&small).contains("F4"));
    let csv = stdout(&ncpforge(&["catalog", "--format", "csv"]));
    assert!(csv.starts_with("group,rank,order,degrees,coxeter_number,reflections\n"));
    assert!(csv.contains("\"G:3,3,3\",3,54,3 3 6,6,9\n"));
}

#[test]
fn verify_a3_all_suites() {
    let o = ncpforge(&["verify", "--group", "A3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pass"], true);
    let suites = v["groups"][0]["suites"].as_array().unwrap();
    let names: Vec<&str> = suites.iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["ncp", "counts", "chapoton", "hurwitz", "strata", "table-a1"]);
    let find = |suite: &str, id: &str| -> serde_json::Value {
        suites
            .iter()
            .find(|s| s["suite"] == suite)
            .and_then(|s| s["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == id))
            .unwrap_or_else(|| panic!("{suite}/{id}"))
            .clone()
    };
    assert_eq!(find("ncp", "catalan")["computed"], "14");
    assert_eq!(find("counts", "red")["computed"], "16");
    assert_eq!(find("counts", "submaximal-total")["computed"], "12");
    assert_eq!(find("strata", "stratum-count")["computed"], "2");
    assert_eq!(find("table-a1", "pairs")["pass"], true);
}

#[test]
fn verify_table_row_for_dihedral() {
    let o = ncpforge(&["verify", "--group", "I2:7", "--suite", "table-a1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("group,suite,check_id,expected,computed,pass\n"));
    assert!(text.contains("I2:7,table-a1,pairs,\"[(7, 2)]\",\"[(7, 2)]\",true"), "{text}");
}

#[test]
fn verify_rank_one() {
    let o = ncpforge(&["verify", "--group", "A1", "--suite", "ncp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS ncp/catalan: expected 2, computed 2"));
}

#[test]
fn orbit_summaries() {
    let sizes = |group: &str, shape: &str| -> Vec<u64> {
        let o = ncpforge(&["orbits", "--group", group, "--shape", shape, "--format", "json"]);
        assert!(o.status.success());
        json(&o)["orbits"].as_array().unwrap().iter().map(|x| x["size"].as_u64().unwrap()).collect()
    };
    assert_eq!(sizes("A3", "1,1,1"), [16]);
    let two = sizes("A3", "2,1");
    assert_eq!((two.len(), two.iter().sum::<u64>()), (2, 12));
    let mut sorted = two.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, [4, 8]);
    assert_eq!(sizes("A2", "2"), [1]);
}

#[test]
fn exit_codes() {
    assert_eq!(ncpforge(&["verify", "--group", "X9"]).status.code(), Some(4));
    assert_eq!(ncpforge(&["verify", "--group", "A2", "--orbit-cap", "0"]).status.code(), Some(4));
    assert_eq!(ncpforge(&["orbits", "--group", "A3", "--shape", "3,1"]).status.code(), Some(4));
    assert_eq!(ncpforge(&["verify", "--group", "F4", "--order-cap", "500"]).status.code(), Some(3));
    assert_eq!(
        ncpforge(&["verify", "--group", "A3", "--suite", "hurwitz", "--orbit-cap", "5"]).status.code(),
        Some(3)
    );
    assert_eq!(ncpforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_file_and_thread_env() {
    let dir = std::env::temp_dir().join(format!("ncpforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = Command::new(env!("CARGO_BIN_EXE_ncpforge"))
        .args(["verify", "--group", "B3", "--format", "json", "--output"])
        .arg(&path)
        .env("NCPFORGE_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let from_file = std::fs::read(&path).unwrap();
    let direct = ncpforge(&["verify", "--group", "B3", "--format", "json", "--threads", "3"]).stdout;
    assert_eq!(from_file, direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timings_are_opt_in() {
    let plain = stdout(&ncpforge(&["verify", "--group", "A2", "--format", "json"]));
    assert!(!plain.contains("elapsed_ms"));
    let timed = stdout(&ncpforge(&["verify", "--group", "A2", "--format", "json", "--timings"]));
    assert!(timed.contains("elapsed_ms"));
}
