use std::process::{Command, Output};

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin")).args(args).output().expect("run artin")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_names_the_type() {
    let o = artin(&["classify", "E7~"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Affine E7, 8 vertices\n");
    let o = artin(&["classify", "graph { n=3; edges: 1-2, 2-3, 3-1:inf }"]);
    assert_eq!(stdout(&o), "Indefinite, 3 vertices\n");
}

#[test]
fn classify_json() {
    let o = artin(&["--json", "classify", "E6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["type"], "E6");
    assert_eq!(v["weyl_order"], "51840");
}

#[test]
fn presentation_of_the_marked_mapping_class_group() {
    let o = artin(&["present", "--theorem", "mcg-3-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("gens: t0 t1 t2 t3 t4 t5 t6 t7 ;"));
    let o = artin(&["abelianize", "--theorem", "mcg-3-1"]);
    assert_eq!(stdout(&o), "trivial\n");
}

#[test]
fn present_roundtrips_through_files() {
    let dir = std::env::temp_dir().join(format!("artin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = artin(&["--json", "present", "--graph", "A3~"]);
    let text = artin(&["present", "--graph", "A3~"]);
    let jp = dir.join("p.json");
    let tp = dir.join("p.txt");
    std::fs::write(&jp, &json.stdout).unwrap();
    std::fs::write(&tp, &text.stdout).unwrap();
    for path in [&jp, &tp] {
        let o = artin(&["enumerate", "--input", path.to_str().unwrap()]);
        assert!(stdout(&o).starts_with("index 24\n"), "{}", stdout(&o));
    }
    let again = artin(&["present", "--input", jp.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&text));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_with_squares_and_limit() {
    let o = artin(&["--json", "enumerate", "--graph", "D5~", "--squares"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"]["Finished"]["index"], 1920);
    let o = artin(&["enumerate", "--graph", "E6~", "--squares", "--max-cosets", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("coset limit 100 exceeded"));
}

#[test]
fn extension_relator() {
    let full = artin(&["present", "--graph", "E7~", "--kind", "extension", "--toric", "0-7", "--blowup", "0,7,2"]);
    let reduced = artin(&["present", "--graph", "E7~"]);
    assert_eq!(full.status.code(), Some(0));
    let (f, r) = (stdout(&full), stdout(&reduced));
    assert_eq!(f.lines().count(), r.lines().count() + 1);
}

#[test]
fn garside_normal_forms() {
    let o = artin(&["garside", "A2", "t1 t2 t1 t1^-1", "--compare", "t1 t2"]);
    assert_eq!(stdout(&o), "D^0 · [t1 t2]\nequal: true\n");
    let o = artin(&["garside", "A2", "D(A2)^2 t1", "--compare", "t1 D(A2)^2"]);
    assert!(stdout(&o).ends_with("equal: true\n"));
}

#[test]
fn affine_report() {
    let o = artin(&["affine", "A2~"]);
    let text = stdout(&o);
    assert!(text.contains("special: 0 1 2"));
    assert!(text.contains("|S| = 6"));
    let o = artin(&["--json", "affine", "E7~"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["q_index"], 2);
    assert_eq!(v["special"], serde_json::json!(["0", "7"]));
    assert!(v["identities"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn delpezzo_tables() {
    let o = artin(&["--json", "delpezzo", "--degree", "3", "--what", "exceptional"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 27);
    assert_eq!(v["vectors"][0].as_array().unwrap().len(), 7);
    let o = artin(&["--json", "delpezzo", "--degree", "5", "--what", "nodal-classes"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let kernels: Vec<&str> = v["orbits"].as_array().unwrap().iter().map(|o| o["kernel"].as_str().unwrap()).collect();
    assert_eq!(kernels, ["A2+A1", "A3"]);
    let o = artin(&["delpezzo", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tacnode_is_deterministic() {
    let args = ["--json", "--seed", "7", "tacnode", "--trials", "20", "--truncation", "12"];
    let a = artin(&args);
    let b = artin(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["trials"], 20);
    assert_eq!(v["failures"], 0);
}

#[test]
fn usage_and_domain_errors_exit_one() {
    assert_eq!(artin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(artin(&["classify", "Q5"]).status.code(), Some(1));
    assert_eq!(artin(&["present", "--theorem", "nope"]).status.code(), Some(1));
    assert_eq!(artin(&["--help"]).status.code(), Some(0));
}
