use std::process::{Command, Output};

fn crw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crw"))
        .args(args)
        .output()
        .expect("crw binary runs")
}

fn ok_line(args: &[&str]) -> String {
    let o = crw(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap().trim_end().to_string()
}

#[test]
fn normalize_examples() {
    assert_eq!(ok_line(&["normalize", "--algebra", "crw", "l1*l-1"]), "l-1*l1 + 2*eta");
    assert_eq!(ok_line(&["normalize", "--algebra", "crw", "w2"]), "w2");
    // half of l1 o w-1 + 6 l0 o w0 + l-1 o w1 - rho l0, expanded by hand
    let comm = ok_line(&["normalize", "w1*w-1 - w-1*w1"]);
    let expected = ok_line(&["normalize", "1/2*(l1 o w-1 + 6*eta o w0 + l-1 o w1 - rho*eta)"]);
    assert_eq!(comm, expected);
    assert_eq!(comm, "-1/2*eta*rho + (3*eta + 3/2)*w0 + 1/2*w-1*l1 + 1/2*l-1*w1");
}

#[test]
fn exit_codes() {
    assert_eq!(crw(&["normalize", "w1*("]).status.code(), Some(2));
    assert_eq!(crw(&["normalize", "w7"]).status.code(), Some(2));
    assert_eq!(crw(&["normalize", "--algebra", "/nonexistent.dsl", "w1"]).status.code(), Some(2));
    assert_eq!(crw(&["check", "--algebra", "u-sl2"]).status.code(), Some(0));
    let raw = crw(&["check", "--corrections", "off"]);
    assert_eq!(raw.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&raw.stdout).contains("[w0,w-1]: term w2*l1 has weight -3, expected 1"));
    assert_eq!(crw(&["zrel", "verify", "4"]).status.code(), Some(1));
    assert_eq!(crw(&["zrel", "verify", "11"]).status.code(), Some(3));
    assert_eq!(crw(&["projector", "--identities", "2", "--perturbed"]).status.code(), Some(1));
}

#[test]
fn missing_rule_is_an_engine_error() {
    let dir = std::env::temp_dir().join(format!("crw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("partial.dsl");
    std::fs::write(&path, "name partial\ngen e weight 1\ngen f weight -1\norder f < e\n").unwrap();
    let o = crw(&["normalize", "--algebra", path.to_str().unwrap(), "e*f"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn zrel_examples() {
    let one = ok_line(&["zrel", "verify", "1"]);
    assert!(one.contains("verified: yes"));
    assert!(one.contains("(1 - 2/(eta-2))*v-2*v-1"));
    let ten = ok_line(&["zrel", "derive", "2", "1"]);
    assert!(ten.contains("derived:  v2*v1 = (1 - 2/(eta+1))*v1*v2"), "{ten}");
    let neg = ok_line(&["zrel", "derive", "-1", "-2"]);
    assert!(neg.contains("(1 - 2/(eta-2))*v-2*v-1"));
    let all = crw(&["zrel", "verify", "--all", "--format", "json"]);
    assert_eq!(all.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&all.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
    let again = crw(&["zrel", "verify", "--all", "--format", "json"]);
    assert_eq!(all.stdout, again.stdout);
}

#[test]
fn projector_examples() {
    assert_eq!(ok_line(&["projector", "w1"]), "w1 - (1/(2*eta-2))*l-1*w2");
    assert_eq!(ok_line(&["projector", "1"]), "1");
    assert_eq!(
        ok_line(&["projector", "--identities", "8"]),
        "l1*p = 0, p*l-1 = 0 up to order 8: PASS"
    );
    assert_eq!(
        ok_line(&["projector", "--identities", "--truncation", "3"]),
        "l1*p = 0, p*l-1 = 0 up to order 3: PASS"
    );
    assert!(ok_line(&["projector", "--idempotence", "20", "--seed", "7"]).ends_with("PASS"));
}

#[test]
fn latex_and_out_file() {
    assert_eq!(ok_line(&["normalize", "--format", "latex", "w-1"]), "w_{-1}");
    let tex = ok_line(&["zrel", "verify", "10", "--format", "latex"]);
    assert!(tex.contains("v_{2}v_{1}"), "{tex}");
    let path = std::env::temp_dir().join(format!("crw-out-{}.json", std::process::id()));
    ok_line(&["show", "--format", "json", "--out", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["name"], "crw");
}
