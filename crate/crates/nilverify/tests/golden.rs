//! Golden-file regression tests: the reference verification reports are
//! byte-identical to the committed JSON, and re-running a report twice
//! gives identical bytes.

use nilverify::config::parse_config;
use nilverify::geometry::Orientation;
use nilverify::report::verify_all_report;

const HEISENBERG_CFG: &str = include_str!("../configs/heisenberg-z6.cfg");
const TORUS_CFG: &str = include_str!("../configs/torus6.cfg");
const GOLDEN_HEISENBERG: &str = include_str!("golden/verify_all_heisenberg.json");
const GOLDEN_TORUS: &str = include_str!("golden/verify_all_torus.json");

#[test]
fn verify_all_matches_the_golden_report() {
    let cfg = parse_config(HEISENBERG_CFG).unwrap();
    let report = verify_all_report(&cfg, Orientation::Standard).unwrap();
    assert!(report.passed());
    assert_eq!(report.to_json(), GOLDEN_HEISENBERG);
}

#[test]
fn torus_control_matches_the_golden_report() {
    let cfg = parse_config(TORUS_CFG).unwrap();
    let report = verify_all_report(&cfg, Orientation::Standard).unwrap();
    assert!(!report.passed());
    assert_eq!(report.to_json(), GOLDEN_TORUS);
}

#[test]
fn reports_are_byte_deterministic() {
    let cfg = parse_config(HEISENBERG_CFG).unwrap();
    let a = verify_all_report(&cfg, Orientation::Standard).unwrap().to_json();
    let cfg2 = parse_config(HEISENBERG_CFG).unwrap();
    let b = verify_all_report(&cfg2, Orientation::Standard).unwrap().to_json();
    assert_eq!(a, b);
    let flipped = verify_all_report(&cfg, Orientation::Flipped).unwrap();
    assert!(!flipped.passed(), "flipped orientation reverses the sign");
}
