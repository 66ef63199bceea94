#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rlbwt_order::text::load_text;
use rlbwt_order::{EndMarkerPolicy, Ordering, Text};

pub const CORPUS_ENV: &str = "RLBWT_CORPUS_DIR";

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn corpus_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| workspace_root().join("data/cantrbry"))
}

pub fn corpus_path(name: &str) -> PathBuf {
    let p = corpus_dir().join(name);
    assert!(
        p.exists(),
        "corpus file {} not found; set {CORPUS_ENV} to the Canterbury corpus directory",
        p.display()
    );
    p
}

pub fn corpus_text(name: &str) -> Text {
    load_text(corpus_path(name), EndMarkerPolicy::Auto).unwrap()
}

pub fn text(s: &str) -> Text {
    Text::new(s.as_bytes().to_vec(), b'$').unwrap()
}

pub fn ord(s: &str) -> Ordering {
    Ordering::new(s.as_bytes().to_vec()).unwrap()
}

pub fn descending_order_file() -> PathBuf {
    workspace_root().join("data/orderings/descending.order")
}
