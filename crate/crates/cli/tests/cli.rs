use std::process::{Command, Output};

fn weave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = weave(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hyperbolic_plain() {
    let out = weave(&["hyperbolic", "01/10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "hyperbolic");
}

#[test]
fn translate_is_isotopic() {
    let out = weave(&["isotopic", "01/10", "10/01"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "isotopic");
    assert_eq!(stdout(&weave(&["isotopic", "01/10", "11/00"])), "not isotopic");
    assert_eq!(stdout(&weave(&["isotopic", "01/10", "0/1"])), "not isotopic");
}

#[test]
fn single_weft_is_layered() {
    let out = weave(&["hyperbolic", "1/1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "not hyperbolic: layered");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(weave(&["hyperbolic", "01/1"]).status.code(), Some(2));
    assert_eq!(weave(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(weave(&["census", "two", "2"]).status.code(), Some(2));
    assert_eq!(weave(&["render", "01/10", "--style", "png"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = weave(&["gen", "plain", "3", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(weave(&["census", "6", "6"]).status.code(), Some(1));
    assert_eq!(weave(&["orbit", "0110/1001/0110", "--cap", "2"]).status.code(), Some(1));
}

#[test]
fn canon_outputs() {
    assert_eq!(stdout(&weave(&["canon", "10/01"])), "01/10");
    let v = json(&["canon", "10/01"]);
    assert_eq!(v["canonical"], "01/10");
    assert_eq!(v["orbit_size"], 2);
    assert_eq!(v["moves"].as_array().unwrap().len(), 1);
    let v = json(&["homeo-canon", "10/01"]);
    assert_eq!(v["canonical"], "01/10");
}

#[test]
fn orbit_listing() {
    let out = stdout(&weave(&["orbit", "01/10", "--witness"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "orbit size 2");
    assert_eq!(lines.len(), 3);
    let v = json(&["orbit", "11/11"]);
    assert_eq!(v["orbit_size"], 1);
}

#[test]
fn verdict_json() {
    let v = json(&["hyperbolic", "10/00/10/01", "--witness"]);
    assert_eq!(v["verdict"], "layered");
    assert!(v["witness"]["layers"].as_array().unwrap().len() >= 2);
    let v = json(&["hyperbolic", "101/101/010"]);
    assert!(v["volume_upper_bound"].as_f64().unwrap() > 32.9);
    let v = json(&["layered", "11/11"]);
    assert_eq!(v["layered"], true);
}

#[test]
fn decompose_lists_pieces() {
    let out = stdout(&weave(&["decompose", "01/10"]));
    assert!(out.starts_with("hyperbolic 01/10"));
    let v = json(&["decompose", "11/11"]);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 4);
}

#[test]
fn census_csv() {
    let out = stdout(&weave(&["census", "2", "2"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "m,n,total,n_hyp,n_nc,classes_isotopy,classes_isotopy_hyp,classes_homeo_hyp,upper_bound,lower_bound"
    );
    assert_eq!(lines[1], "2,2,16,2,2,7,1,1,4,-56");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = weave(&["census", "3", "3", "--jobs", "2", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.lines().nth(1).unwrap().starts_with("3,3,512,84,12,38,6,2,"));
}

#[test]
fn render_and_generate() {
    assert_eq!(stdout(&weave(&["render", "01/10"])), ".#\n#.");
    let svg = stdout(&weave(&["render", "01/10", "--style", "svg"]));
    assert!(svg.contains("<svg"));
    assert_eq!(stdout(&weave(&["gen", "plain", "2", "2"])), "01/10");
    assert_eq!(stdout(&weave(&["gen", "twill", "4", "4", "2", "2"])).split('/').nth(1), Some("0110"));
    let v = json(&["gen", "satin", "5", "2"]);
    assert_eq!(v["format"], "weave/1");
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn matrix_from_document_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let doc = json(&["gen", "plain", "4", "4"]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(stdout(&weave(&["hyperbolic", &arg])), "hyperbolic");
}
