use minram_web::{arrow_json, host_json, lab_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn arrow_on_k5_and_k6() {
    let k6 = r#"{"r":2,"n":6,"edges":[[0,1],[0,2],[0,3],[0,4],[0,5],[1,2],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5],[3,4],[3,5],[4,5]]}"#;
    assert_eq!(
        parse(&arrow_json(k6, 3, 2, 1_000_000).unwrap())["arrows"],
        true
    );
    let k5 =
        r#"{"r":2,"n":5,"edges":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;
    let v = parse(&arrow_json(k5, 3, 2, 1_000_000).unwrap());
    assert_eq!(v["arrows"], false);
    assert!(v["witness"].is_object());
    assert_eq!(
        parse(&arrow_json(k6, 3, 2, 1).unwrap())["status"],
        "unknown"
    );
    assert!(arrow_json("not json", 3, 2, 10).is_err());
}

#[test]
fn host_counts() {
    let plain = parse(&host_json(4, false).unwrap());
    assert_eq!(
        (plain["edges"].as_u64(), plain["cliques"].as_u64()),
        (Some(12), Some(0))
    );
    let aug = parse(&host_json(5, true).unwrap());
    assert_eq!(aug["cliques"], 30);
    assert_eq!(aug["codegree_ab"], 9);
    assert!(host_json(9, false).is_err());
}

#[test]
fn lab_matches_library() {
    let v = parse(&lab_json(12, 0.3, 2, 4, 60, 1).unwrap());
    assert_eq!(v["edges"]["expected"], 66.0);
    assert!(lab_json(40, 0.3, 2, 4, 60, 1).is_err());
}
