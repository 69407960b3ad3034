use std::path::Path;
use std::process::{Command, Output};

const H_SPEC: &str = r#"{"type": "twoslice", "J": [0,1,0,0], "K": [0,-1,0,0],
 "gJ": {"coeffs": [[0,0,0,0],[2,0,0,0]]}, "gK": {"constant": [0,0,2,0]},
 "domain": {"alpha": [-1.6, 1.55], "beta": [0.05, 3.2]}}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicereg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn parse_vec(s: &str) -> Vec<f64> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|x| x.trim().parse().unwrap())
        .collect()
}

#[test]
fn eval_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"type": "polynomial", "coeffs": [[0,0,1,0],[1,0,0,0]]}"#,
    );
    let o = run(&["eval", "--fn", &f, "--point", "0,1,0,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(parse_vec(&stdout(&o)), vec![0.0, 1.0, 1.0, 0.0]);

    let o = run(&["eval", "--fn", &f, "--point", "0,1,0,0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], serde_json::json!([0.0, 1.0, 1.0, 0.0]));
}

#[test]
fn bad_unit_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        &H_SPEC.replace(r#""J": [0,1,0,0]"#, r#""J": [0,1,1,0]"#),
    );
    let o = run(&["eval", "--fn", &f, "--point", "0,1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("J"), "{}", stderr(&o));
}

#[test]
fn derive_and_rank() {
    let o = run(&["derive", "--fixture", "h", "--point", "0,0,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for label in ["slice", "conj_slice", "spherical"] {
        assert!(text.lines().any(|l| l.starts_with(label)), "{text}");
    }
    // h is singular at -i, on the semislice where it is constant.
    let o = run(&["rank", "--fixture", "h", "--point", "0,-1,0,0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["differential"]["rank"], 2);
    assert_eq!(v["singular"], true);
    let o = run(&["rank", "--fixture", "identity", "--point", "0.3,0,1,0"]);
    assert!(stdout(&o).contains("rank 4"), "{}", stdout(&o));
}

#[test]
fn expand_square_at_i() {
    let o = run(&["expand", "--fixture", "square", "--point", "0,1,0,0", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .map(|l| parse_vec(l.split_once(' ').unwrap().1))
        .collect();
    assert_eq!(
        rows,
        vec![vec![-1.0, 0.0, 0.0, 0.0], vec![0.0; 4], vec![1.0, 0.0, 0.0, 0.0]]
    );
}

#[test]
fn scans_print_csv_and_json() {
    let o = run(&["scan-zeros", "--fixture", "h", "--grid", "4x4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("alpha,beta,ux,uy,uz,kind"));
    assert_eq!(text.lines().count(), 17);

    let o = run(&["scan-singular", "--fixture", "final_example", "--grid", "3x3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 9);

    let o = run(&["scan-degenerate", "--fixture", "h", "--grid", "4x4"]);
    assert_eq!(stdout(&o), "alpha,beta,ux,uy,uz,kind\n");

    let o = run(&[
        "constant-surfaces",
        "--fixture",
        "h",
        "--value",
        "0,0,2,0",
        "--grid",
        "3x3",
    ]);
    assert!(stdout(&o).starts_with("semislice [0, -1"), "{}", stdout(&o));
}

#[test]
fn inject_check_final_example() {
    let o = run(&[
        "inject-check",
        "--fixture",
        "final_example",
        "--samples",
        "500",
        "--exclude",
        "0,0,-1,0",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["collision_pairs"], 0);
    assert_eq!(v["samples"], 500);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o)
        .lines()
        .all(|l| l.starts_with("PASS") || l.starts_with("NOTE")));

    let dir = tempfile::tempdir().unwrap();
    let exact = write(dir.path(), "h.json", H_SPEC);
    assert_eq!(run(&["verify", "--fn", &exact]).status.code(), Some(0));
    let perturbed = write(dir.path(), "hp.json", &H_SPEC.replace("[2,0,0,0]", "[2.002,0,0,0]"));
    let o = run(&["verify", "--fn", &perturbed, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(run(&["eval", "--point", "0,1,0,0"]).status.code(), Some(2));
    assert_eq!(
        run(&["scan-zeros", "--fixture", "h", "--grid", "4by4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(
        run(&["eval", "--fn", "/nonexistent/f.json", "--point", "0,1,0,0"])
            .status
            .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("z.csv");
    let o = run(&[
        "export",
        "--fixture",
        "h",
        "--grid",
        "3x3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("z.csv"), "{}", stderr(&o));
}

#[test]
fn exports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let paths: Vec<String> = (0..2)
            .map(|k| dir.path().join(format!("{k}.{format}")).to_str().unwrap().to_owned())
            .collect();
        for p in &paths {
            let o = run(&[
                "export",
                "--fixture",
                "h",
                "--cloud",
                "singular",
                "--grid",
                "8x8",
                "--format",
                format,
                "--out",
                p,
            ]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        }
        let a = std::fs::read(&paths[0]).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    }
    // An empty cloud still carries the header.
    let p = dir.path().join("empty.csv");
    let o = run(&[
        "export",
        "--fixture",
        "h",
        "--cloud",
        "degenerate",
        "--grid",
        "4x4",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&p).unwrap(), "alpha,beta,ux,uy,uz,kind\n");
}
