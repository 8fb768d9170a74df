use ternary_web::{dualize, example, example_names, verify};

fn parse(s: String) -> serde_json::Value {
    serde_json::from_str(&s).expect("exports return JSON")
}

fn file(name: &str) -> String {
    parse(example(name))["file"].as_str().unwrap().to_string()
}

#[test]
fn verify_examples() {
    let r = parse(verify(&file("et1"), "total"));
    assert_eq!(r["verdict"], true);
    let r = parse(verify(&file("et1"), "partial"));
    assert_eq!(r["verdict"], false);
    assert!(r["report"].as_str().unwrap().contains("(0,0,0,0,0,0)"));
    let r = parse(verify(&file("ep2"), ""));
    assert_eq!((r["variant"].as_str(), r["verdict"].as_bool()), (Some("partial"), Some(true)));
}

#[test]
fn dualize_then_verify() {
    let d = parse(dualize(&file("ep1")));
    let text = d["file"].as_str().unwrap();
    assert!(text.contains("ternary_coalgebra"));
    assert_eq!(parse(verify(text, "partial"))["verdict"], true);
}

#[test]
fn errors_are_reported() {
    let r = parse(verify("{", "total"));
    assert_eq!(r["ok"], false);
    assert!(r["error"].as_str().unwrap().contains("line 1"));
    assert_eq!(parse(verify(&file("et1"), "sideways"))["ok"], false);
    assert_eq!(parse(example("nope"))["ok"], false);
}

#[test]
fn every_listed_example_loads() {
    for name in example_names().lines() {
        assert_eq!(parse(example(name))["ok"], true, "{name}");
    }
}
