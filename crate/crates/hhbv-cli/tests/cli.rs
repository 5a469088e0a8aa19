use std::process::{Command, Output};

fn hhbv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhbv"))
        .args(args)
        .env_remove("HHBV_DEGREE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn present_z6_over_f2_shows_the_square_relation() {
    let o = hhbv(&["present", "-g", "Z/6", "-r", "F_2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("y^2 - x^4*z"), "{s}");
    assert!(s.contains("x^6 - 1"), "{s}");
}

#[test]
fn delta_on_mixed_tensor_matches_the_engine() {
    let o = hhbv(&["delta", "-g", "Z/4 x Z/2", "-r", "Z", "-m", "c", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["delta"], "-x^3*b");
    assert_eq!(v["route"], "closed-form");
    assert_eq!(v["agree"], true);
}

#[test]
fn bvkz_suite_passes() {
    let o = hhbv(&["verify", "-g", "Z", "-r", "Z", "--suite", "bvkz"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("k in [-2,2]"));
}

#[test]
fn json_output_is_versioned_and_deterministic() {
    let args = ["present", "-g", "Z/3 x Z/3", "-r", "F_3", "-d", "3", "--format", "json"];
    let (a, b) = (hhbv(&args), hhbv(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "hhbv/1");
    assert_eq!(v["degree"], "3");
    assert!(v["generators"].as_array().unwrap().iter().all(|g| g["degree"].is_string()));
}

#[test]
fn parse_errors_report_the_position() {
    let o = hhbv(&["delta", "-g", "Z/4", "-r", "F_2", "-m", "x^^2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("position 2"), "{err}");
}

#[test]
fn degree_bound_is_enforced() {
    assert!(!hhbv(&["homology", "-g", "Z/2", "-d", "9"]).status.success());
    assert!(!hhbv(&["homology", "-g", "Z/2", "-d", "0"]).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_hhbv"))
        .args(["homology", "-g", "Z/2"])
        .env("HHBV_DEGREE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn unmet_hypotheses_are_reported() {
    let o = hhbv(&["present", "-g", "Z/4", "-r", "Z/6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis violated"));
}

#[test]
fn homology_of_z4_over_z() {
    let o = hhbv(&["homology", "-g", "Z/4", "-r", "Z", "-d", "3"]);
    assert_eq!(stdout(&o), "HH^0 = Z^4\nHH^1 = 0\nHH^2 = (Z/4)^4\nHH^3 = 0\n");
}

#[test]
fn compare_flags_only_the_circle_sign() {
    let o = hhbv(&["compare", "-g", "Z/3", "-r", "F_3", "-d", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["consistent"], true);
    assert_eq!(v["circle_sign_only"], "1");
}

#[test]
fn bracket_needs_two_monomials() {
    let o = hhbv(&["bracket", "-g", "Z/3", "-r", "F_3", "-m", "x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hhbv(&["bracket", "-g", "Z/3", "-r", "F_3", "-m", "x", "-m", "y"]);
    assert!(stdout(&o).contains("{x, y} = -1"));
}
