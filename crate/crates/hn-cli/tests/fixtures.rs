//! The JSON fixtures shipped under fixtures/corpus must stay in sync
//! with the built-in catalog.

use std::fs;
use std::path::Path;

use hn_cli::io;
use hn_core::corpus;

#[test]
fn fixtures_match_builtin_corpus() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/corpus");
    let entries = corpus::standard_corpus();
    let mut files: Vec<_> = fs::read_dir(&dir)
        .expect("fixtures directory exists")
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), entries.len());
    for e in &entries {
        let path = dir.join(format!("{}.json", e.name));
        let text = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {:?}", path));
        let spec = io::spec_from_str(&text).expect("fixture parses");
        assert_eq!(spec.n, e.spec.n, "{}", e.name);
        assert_eq!(spec.d, e.spec.d, "{}", e.name);
        assert_eq!(spec.forms.len(), e.spec.forms.len(), "{}", e.name);
        for (a, b) in spec.forms.iter().zip(e.spec.forms.iter()) {
            assert_eq!(a.c, b.c, "{}", e.name);
            assert_eq!(a.alpha, b.alpha, "{}", e.name);
        }
    }
}
