//! TOML tableau files.
//!
//! ```toml
//! name = "onedim"
//! n = 3
//! r = 2
//! basis = [
//!   [["1", "0", "5"], ["0", "1/9", "1"]],
//! ]
//! ```
//!
//! A tableau is given either by `basis` (a list of `r x n` arrays) or by
//! `relations` (rows of length `r*n`, entry `(a, i)` at column `a*n + i`).
//! Numbers are strings so fractions stay exact; plain integers are also
//! accepted. Eikonal inputs carry `phase_generators` instead, written in
//! the variables `x1..xn, p1..pn`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, parse_rational, Rational, RationalMatrix};
use crate::polyring::{parse_poly, MPoly};
use crate::tableau::Tableau;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational> {
        match self {
            Number::Int(k) => Ok(crate::exactlin::rat(*k)),
            Number::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    n: usize,
    r: Option<usize>,
    basis: Option<Vec<Vec<Vec<Number>>>>,
    relations: Option<Vec<Vec<Number>>>,
    phase_generators: Option<Vec<String>>,
}

/// Contents of a tableau or eikonal input file.
#[derive(Debug, Clone)]
pub enum InputFile {
    Tableau(Tableau),
    Eikonal(EikonalInput),
}

#[derive(Debug, Clone)]
pub struct EikonalInput {
    pub name: String,
    pub n: usize,
    pub generators: Vec<MPoly>,
}

fn parse_raw(text: &str) -> Result<RawFile> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim().to_string()))
}

fn matrix(rows: &[Vec<Number>], r: usize, n: usize, what: &str) -> Result<RationalMatrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != n) {
        return Err(Error::Parse(format!("{what} must be a {r}x{n} array")));
    }
    let data = rows
        .iter()
        .flatten()
        .map(Number::value)
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::new(r, n, data)
}

/// Parses either kind of input file.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let raw = parse_raw(text)?;
    let name = raw.name.clone().unwrap_or_else(|| "unnamed".into());
    if let Some(gens) = &raw.phase_generators {
        if raw.basis.is_some() || raw.relations.is_some() {
            return Err(Error::Parse(
                "phase_generators cannot be combined with a tableau".into(),
            ));
        }
        let vars = crate::eikonal::phase_space(raw.n);
        let generators = gens
            .iter()
            .map(|g| parse_poly(g, &vars))
            .collect::<Result<Vec<_>>>()?;
        return Ok(InputFile::Eikonal(EikonalInput {
            name,
            n: raw.n,
            generators,
        }));
    }
    let r = raw
        .r
        .ok_or_else(|| Error::Parse("missing field `r`".into()))?;
    let n = raw.n;
    match (&raw.basis, &raw.relations) {
        (Some(basis), None) => {
            let mats = basis
                .iter()
                .enumerate()
                .map(|(k, b)| matrix(b, r, n, &format!("basis element {k}")))
                .collect::<Result<Vec<_>>>()?;
            Tableau::new(name, n, r, mats).map(InputFile::Tableau)
        }
        (None, Some(rel)) => {
            let rows = rel
                .iter()
                .map(|row| {
                    if row.len() != r * n {
                        return Err(Error::Parse(format!(
                            "relation rows must have r*n = {} entries",
                            r * n
                        )));
                    }
                    row.iter().map(Number::value).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = if rows.is_empty() {
                RationalMatrix::zeros(0, r * n)
            } else {
                RationalMatrix::from_rows(&rows)?
            };
            Tableau::from_relations(name, n, r, &m).map(InputFile::Tableau)
        }
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either `basis` or `relations`, not both".into(),
        )),
        (None, None) => Err(Error::Parse(
            "missing `basis`, `relations` or `phase_generators`".into(),
        )),
    }
}

/// Parses a tableau file.
pub fn parse_tableau(text: &str) -> Result<Tableau> {
    match parse_input(text)? {
        InputFile::Tableau(t) => Ok(t),
        InputFile::Eikonal(_) => Err(Error::Parse(
            "expected a tableau, found phase_generators".into(),
        )),
    }
}

/// Parses an eikonal file.
pub fn parse_eikonal(text: &str) -> Result<EikonalInput> {
    match parse_input(text)? {
        InputFile::Eikonal(e) => Ok(e),
        InputFile::Tableau(_) => Err(Error::Parse("expected phase_generators".into())),
    }
}

/// Writes a tableau in basis form.
pub fn render_tableau(t: &Tableau) -> String {
    let mut out = format!(
        "name = \"{}\"\nn = {}\nr = {}\nbasis = [\n",
        t.name(),
        t.n(),
        t.r()
    );
    for b in t.basis() {
        let rows: Vec<String> = b
            .to_rows()
            .iter()
            .map(|row| {
                let e: Vec<String> = row
                    .iter()
                    .map(|x| format!("\"{}\"", fmt_rational(x)))
                    .collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        out.push_str(&format!("  [{}],\n", rows.join(", ")));
    }
    out.push_str("]\n");
    out
}
