use std::collections::BTreeMap;

use modsurf::lengths::{
    conjugacy_oracle, geodesic_length, length_spectrum, length_spectrum_cached,
};

#[test]
fn necklace_counts_match_conjugacy_oracle() {
    let report = conjugacy_oracle(12, 16).unwrap();
    assert!(report.is_complete(), "unresolved: {:?}", report.unresolved);
    let necklaces: BTreeMap<u64, usize> = length_spectrum(12)
        .unwrap()
        .into_iter()
        .map(|e| (e.trace, e.multiplicity))
        .collect();
    assert_eq!(report.counts, necklaces);
    let want = BTreeMap::from([
        (3, 1),
        (4, 2),
        (5, 2),
        (6, 3),
        (7, 2),
        (8, 4),
        (9, 2),
        (10, 6),
        (11, 3),
        (12, 4),
    ]);
    assert_eq!(necklaces, want);
}

#[test]
fn shortest_geodesic_is_golden() {
    let s = length_spectrum(50).unwrap();
    assert_eq!(s[0].trace, 3);
    assert!((s[0].length - 1.924_847_300_238_414).abs() < 1e-12);
    assert!((s[0].length - geodesic_length(3).unwrap()).abs() == 0.0);
}

#[test]
fn cached_spectrum_equals_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = length_spectrum(60).unwrap();
    let first = length_spectrum_cached(60, dir.path()).unwrap();
    let again = length_spectrum_cached(40, dir.path()).unwrap();
    assert_eq!(first, fresh);
    assert_eq!(again, length_spectrum(40).unwrap());
}
