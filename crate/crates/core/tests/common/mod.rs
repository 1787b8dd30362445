#![allow(dead_code)]

pub mod oracles;

use std::path::PathBuf;
use zpl_core::zetalab::ZeroTable;

pub fn table_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/zeros_10k.txt")
}

pub fn real_table() -> ZeroTable {
    ZeroTable::load(table_path()).expect("bundled zero table")
}
