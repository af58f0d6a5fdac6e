use rootsig_web::{census_report, quasi_report, tutte_report};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("report")).unwrap()
}

#[test]
fn census_rows_all_match() {
    let v = parse(census_report(4, "cofactor"));
    assert_eq!(v["subsets"], 252);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["match"] == true));
    assert!(census_report(7, "graph").is_err());
    assert!(census_report(3, "magic").is_err());
}

#[test]
fn tutte_modes() {
    let v = parse(tutte_report(2, 0, 1, "corrected"));
    assert_eq!(v["match"], true);
    assert_eq!(v["bruteforce"]["t11"], 29);
    let v = parse(tutte_report(2, 0, 1, "paper"));
    assert_eq!(v["match"], false);
    assert_eq!(v["formula"]["t11"], 20);
    assert!(tutte_report(2, -3, 1, "corrected").is_err());
}

#[test]
fn quasi_counts_and_fit() {
    let v = parse(quasi_report(2, "shi", 0, 1, 20));
    assert_eq!(v["period"], 2);
    assert_eq!(v["counts"][4], 16);
    assert_eq!(v["counts"][5], 44);
    assert_eq!(v["fit_ok"], true);
    assert_eq!(v["constituents_text"][0], "q^3 - 7q^2 + 15q - 9");
    // too few samples for a fit is reported, not raised
    let v = parse(quasi_report(2, "catalan", 0, 1, 8));
    assert_eq!(v["fit_ok"], false);
    assert!(quasi_report(3, "shi", 0, 1, 10).is_err());
}
