use trigonal::catalog::{build_catalog, verify};

#[test]
fn every_entry_verifies() {
    let entries = build_catalog().expect("catalog assembles");
    assert_eq!(entries.len(), 18);
    let mut bad = Vec::new();
    for e in &entries {
        let r = verify(e);
        for l in r.failures() {
            bad.push(format!("{} {}: {}", r.entry, l.name, l.detail));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
