//! The example tables, embedded verbatim in the polynomial text format.

use std::sync::OnceLock;

use ring::text::PolyFile;

pub const ALPHA_TILDE: &str = include_str!("../data/alpha_tilde.poly");
pub const ALPHA_HELPERS: &str = include_str!("../data/alpha_helpers.poly");
pub const ETA: &str = include_str!("../data/eta.poly");
pub const THETA_RELATIONS: &str = include_str!("../data/theta_relations.poly");
pub const CANONICAL_PRINTED: &str = include_str!("../data/canonical_relations_printed.poly");

fn cached(cell: &'static OnceLock<PolyFile>, src: &str) -> &'static PolyFile {
    cell.get_or_init(|| PolyFile::parse(src).expect("embedded data parses"))
}

pub fn alpha_tilde() -> &'static PolyFile {
    static C: OnceLock<PolyFile> = OnceLock::new();
    cached(&C, ALPHA_TILDE)
}

pub fn alpha_helpers() -> &'static PolyFile {
    static C: OnceLock<PolyFile> = OnceLock::new();
    cached(&C, ALPHA_HELPERS)
}

pub fn eta() -> &'static PolyFile {
    static C: OnceLock<PolyFile> = OnceLock::new();
    cached(&C, ETA)
}

pub fn theta_relations() -> &'static PolyFile {
    static C: OnceLock<PolyFile> = OnceLock::new();
    cached(&C, THETA_RELATIONS)
}

pub fn canonical_printed() -> &'static PolyFile {
    static C: OnceLock<PolyFile> = OnceLock::new();
    cached(&C, CANONICAL_PRINTED)
}

/// Integer list from a `# key: ...` header line.
pub fn header_ints(f: &PolyFile, key: &str) -> Vec<i64> {
    f.header
        .get(key)
        .map(|s| s.split_whitespace().map(|t| t.parse().expect("integer header")).collect())
        .unwrap_or_default()
}
