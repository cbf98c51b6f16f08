use hzknot::FixtureSet;

#[test]
fn every_fixture_in_the_table_passes() {
    let set = FixtureSet::load(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/appendix.json")).unwrap();
    let outcomes = set.run();
    let mut failed = Vec::new();
    for o in &outcomes {
        if let Some(e) = &o.error {
            failed.push(format!("{}: {e}", o.name));
        }
        for c in o.failures() {
            failed.push(format!("{}: {} ({})", o.name, c.name, c.detail));
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
    assert_eq!(outcomes.len(), set.fixtures.len());
}
