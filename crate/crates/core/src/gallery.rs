//! Built-in example tableaux.

use crate::error::{Error, Result};
use crate::format::parse_tableau;
use crate::tableau::Tableau;

/// `(name, file contents)` for every gallery entry, in display order.
pub const ENTRIES: [(&str, &str); 8] = [
    ("hankel", include_str!("../gallery/hankel.tab")),
    ("wave", include_str!("../gallery/wave.tab")),
    ("zerodim-a", include_str!("../gallery/zerodim-a.tab")),
    ("zerodim-b", include_str!("../gallery/zerodim-b.tab")),
    ("zerodim-c", include_str!("../gallery/zerodim-c.tab")),
    ("zerodim-d", include_str!("../gallery/zerodim-d.tab")),
    ("onedim", include_str!("../gallery/onedim.tab")),
    ("moduli-320", include_str!("../gallery/moduli-320.tab")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

/// File text of a gallery entry.
pub fn source(name: &str) -> Result<&'static str> {
    ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Unknown(format!("gallery entry {name:?}")))
}

pub fn load(name: &str) -> Result<Tableau> {
    parse_tableau(source(name)?)
}

/// Every gallery tableau, in display order.
pub fn all() -> Vec<Tableau> {
    names()
        .map(|n| load(n).expect("gallery files parse"))
        .collect()
}

pub fn hankel() -> Tableau {
    load("hankel").expect("gallery")
}

pub fn wave() -> Tableau {
    load("wave").expect("gallery")
}

pub fn onedim() -> Tableau {
    load("onedim").expect("gallery")
}
