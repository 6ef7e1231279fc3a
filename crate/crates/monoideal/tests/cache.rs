use std::collections::BTreeMap;

use monoideal::cache::{ideal_hash, CachedEntry, PowerCache};
use monoideal::CliError;
use monoideal_core::{MonomialIdeal, Ring};

fn quadric() -> MonomialIdeal {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    MonomialIdeal::from_exponents(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]]).unwrap()
}

fn entry(d: u32, reg: i64) -> CachedEntry {
    CachedEntry { d, reg, computed_at: 1_700_000_000 }
}

#[test]
fn missing_file_reads_as_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cache = PowerCache::new(dir.path().join("absent"));
    assert!(cache.read(&quadric()).unwrap().is_empty());
}

#[test]
fn writes_merge() {
    let dir = tempfile::tempdir().unwrap();
    let cache = PowerCache::new(dir.path());
    let j = quadric();
    cache.merge_write(&j, &BTreeMap::from([(1, entry(2, 2))])).unwrap();
    let merged = cache.merge_write(&j, &BTreeMap::from([(2, entry(4, 4))])).unwrap();
    assert_eq!(merged.len(), 2);
    assert_eq!(cache.read(&j).unwrap(), merged);
    // same values with a newer timestamp are not a conflict
    let again = cache.merge_write(&j, &BTreeMap::from([(1, CachedEntry { computed_at: 1, ..entry(2, 2) })])).unwrap();
    assert_eq!(again[&1].computed_at, 1_700_000_000);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 1, "{leftovers:?}");
}

#[test]
fn conflicting_values_are_an_integrity_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = PowerCache::new(dir.path());
    let j = quadric();
    cache.merge_write(&j, &BTreeMap::from([(1, entry(2, 2))])).unwrap();
    let err = cache.merge_write(&j, &BTreeMap::from([(1, entry(3, 2))])).unwrap_err();
    assert!(matches!(err, CliError::Integrity { p: 1, .. }));
    let text = err.to_string();
    assert!(text.contains("d = 2, reg = 2") && text.contains("d = 3, reg = 2"), "{text}");
    assert_eq!(err.exit_code(), 4);
    assert_eq!(cache.read(&j).unwrap().len(), 1);
}

#[test]
fn key_ignores_variable_names_but_not_generators() {
    let a = quadric();
    let r = Ring::new(["a", "b", "c"]).unwrap();
    let renamed = MonomialIdeal::from_exponents(&r, &[&[0, 2, 0], &[2, 0, 0], &[1, 1, 0]]).unwrap();
    assert_eq!(ideal_hash(&a), ideal_hash(&renamed));
    let other = MonomialIdeal::from_exponents(&r, &[&[2, 0, 0], &[0, 2, 0]]).unwrap();
    assert_ne!(ideal_hash(&a), ideal_hash(&other));
}

#[test]
fn concurrent_writers_lose_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let j = quadric();
    std::thread::scope(|s| {
        for p in 1..=8u32 {
            let (path, j) = (dir.path(), &j);
            s.spawn(move || {
                PowerCache::new(path).merge_write(j, &BTreeMap::from([(p, entry(2 * p, i64::from(2 * p)))])).unwrap();
            });
        }
    });
    assert_eq!(PowerCache::new(dir.path()).read(&j).unwrap().len(), 8);
}
