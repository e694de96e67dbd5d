use wia_core::involution::profile;
use wia_core::syntax::{parse_base_field, parse_inv};

const CORPUS: &str = include_str!("data/golden.txt");

#[test]
fn corpus_round_trips_through_display() {
    let mut n = 0;
    for line in CORPUS.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (f, e) = line.split_once('|').unwrap();
        let base = parse_base_field(f.trim()).unwrap();
        let expr = parse_inv(base, e.trim()).unwrap();
        let again = parse_inv(base, &expr.to_string()).unwrap();
        assert_eq!(again, expr, "{line}");
        assert_eq!(profile(&again).unwrap(), profile(&expr).unwrap());
        n += 1;
    }
    assert_eq!(n, 50);
}
