//! Bundled tables and fusions, parsed once on first use.

use std::sync::OnceLock;

use crate::table::{parse_fusion, parse_table, CharacterTable, FusionMap};

/// `(file name, contents)` of every bundled table.
pub const TABLE_FILES: &[(&str, &str)] = &[
    ("C3.tbl", include_str!("../data/C3.tbl")),
    ("C5.tbl", include_str!("../data/C5.tbl")),
    ("C7.tbl", include_str!("../data/C7.tbl")),
    ("7-3.tbl", include_str!("../data/7-3.tbl")),
    ("A4.tbl", include_str!("../data/A4.tbl")),
    ("S4.tbl", include_str!("../data/S4.tbl")),
    ("A5.tbl", include_str!("../data/A5.tbl")),
    ("2.A5.tbl", include_str!("../data/2.A5.tbl")),
    ("L2_7.tbl", include_str!("../data/L2_7.tbl")),
];

/// `(file name, contents)` of every bundled fusion.
pub const FUSION_FILES: &[(&str, &str)] = &[
    ("C5-A5.fus", include_str!("../data/C5-A5.fus")),
    ("A4-A5.fus", include_str!("../data/A4-A5.fus")),
    ("A4-S4.fus", include_str!("../data/A4-S4.fus")),
    ("C7-7-3.fus", include_str!("../data/C7-7-3.fus")),
    ("7-3-C3.fus", include_str!("../data/7-3-C3.fus")),
    ("7-3-L2_7.fus", include_str!("../data/7-3-L2_7.fus")),
    ("S4-L2_7.fus", include_str!("../data/S4-L2_7.fus")),
    ("2.A5-A5.fus", include_str!("../data/2.A5-A5.fus")),
];

fn parsed_tables() -> &'static [CharacterTable] {
    static TABLES: OnceLock<Vec<CharacterTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        TABLE_FILES
            .iter()
            .map(|(file, src)| {
                parse_table(src).unwrap_or_else(|e| panic!("bundled table {file}: {e}"))
            })
            .collect()
    })
}

fn parsed_fusions() -> &'static [FusionMap] {
    static FUSIONS: OnceLock<Vec<FusionMap>> = OnceLock::new();
    FUSIONS.get_or_init(|| {
        FUSION_FILES
            .iter()
            .map(|(file, src)| {
                parse_fusion(src).unwrap_or_else(|e| panic!("bundled fusion {file}: {e}"))
            })
            .collect()
    })
}

pub fn tables() -> Vec<CharacterTable> {
    parsed_tables().to_vec()
}

pub fn table(name: &str) -> Option<CharacterTable> {
    parsed_tables().iter().find(|t| t.name() == name).cloned()
}

pub fn fusions() -> Vec<FusionMap> {
    parsed_fusions().to_vec()
}

pub fn fusion(source: &str, target: &str) -> Option<FusionMap> {
    parsed_fusions()
        .iter()
        .find(|f| f.source() == source && f.target() == target)
        .cloned()
}

/// Subgroup fusions into `target` whose source table is bundled.
pub fn subgroup_fusions_into(target: &str) -> Vec<(CharacterTable, FusionMap)> {
    parsed_fusions()
        .iter()
        .filter(|f| f.target() == target && f.kind() == crate::table::FusionKind::Subgroup)
        .filter_map(|f| table(f.source()).map(|t| (t, f.clone())))
        .collect()
}
