#![allow(dead_code)]

use std::path::PathBuf;

use weylcluster::cli::load_spec;
use weylcluster::preseed::Preseed;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn preseed(name: &str) -> Preseed {
    load_spec(&fixture(name)).expect("fixture parses").preseed
}

pub fn weyl1() -> Preseed {
    preseed("weyl1.toml")
}

pub fn weyl2() -> Preseed {
    preseed("weyl2.toml")
}

pub fn quantum() -> Preseed {
    preseed("quantum.toml")
}

pub fn binomial2() -> Preseed {
    preseed("binomial2.toml")
}
