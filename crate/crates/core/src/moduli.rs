//! Parametric endovolutive tableaux with fixed characters and their
//! quadratic involutivity ideals.
//!
//! Free entries `B^{a,lambda}_{i,b}` are those with `lambda < i`,
//! `b < s_lambda`, `a < s_lambda` (endovolutive) and `a >= s_i`. They get
//! variables `x0, x1, ...` block by block, blocks ordered by `(lambda, i)`
//! and entries numbered down each column, left to right.

use std::fmt::Write as _;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rational, RationalMatrix};
use crate::involutive::{involutivity_test, quadratic_tuples};
use crate::par::{item_rng, Execution};
use crate::polyring::{MPoly, VarTable};
use crate::tableau::SymbolBlocks;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricTableau {
    pub r: usize,
    pub n: usize,
    pub characters: Vec<usize>,
    pub vars: VarTable,
    /// `blocks[lambda][i]`, `r x r` matrices of polynomials.
    pub blocks: Vec<Vec<Vec<Vec<MPoly>>>>,
    /// Position `(lambda, i, a, b)` of each variable.
    pub positions: Vec<(usize, usize, usize, usize)>,
}

/// Characters must be nonincreasing, at most `r`, with `n` entries.
pub fn validate_characters(r: usize, n: usize, chars: &[usize]) -> Result<()> {
    if chars.len() != n {
        return Err(Error::InvalidCharacters(format!(
            "expected {n} characters, got {}",
            chars.len()
        )));
    }
    if chars.first().is_some_and(|&s| s > r) || chars.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidCharacters(format!(
            "{chars:?} must be nonincreasing and at most r = {r}"
        )));
    }
    Ok(())
}

pub fn parametric_endovolutive(r: usize, n: usize, chars: &[usize]) -> Result<ParametricTableau> {
    validate_characters(r, n, chars)?;
    let ell = chars.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
    let mut positions = Vec::new();
    for lambda in 0..ell {
        for i in lambda + 1..n {
            for b in 0..chars[lambda] {
                for a in chars[i]..chars[lambda] {
                    positions.push((lambda, i, a, b));
                }
            }
        }
    }
    let vars = VarTable::indexed("x", 0, positions.len());
    let mut blocks: Vec<Vec<Vec<Vec<MPoly>>>> = (0..ell)
        .map(|lambda| {
            (0..n)
                .map(|i| {
                    (0..r)
                        .map(|a| {
                            (0..r)
                                .map(|b| {
                                    if i == lambda && a == b && a < chars[lambda] {
                                        MPoly::one(&vars)
                                    } else {
                                        MPoly::zero(&vars)
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    for (k, &(lambda, i, a, b)) in positions.iter().enumerate() {
        blocks[lambda][i][a][b] = MPoly::var(&vars, k);
    }
    Ok(ParametricTableau {
        r,
        n,
        characters: chars.to_vec(),
        vars,
        blocks,
        positions,
    })
}

impl ParametricTableau {
    pub fn num_vars(&self) -> usize {
        self.positions.len()
    }

    /// Numeric blocks at a full assignment.
    pub fn instantiate(&self, x: &[Rational]) -> Result<SymbolBlocks> {
        self.check_assignment(x)?;
        let blocks = self
            .blocks
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        let data = m
                            .iter()
                            .flatten()
                            .map(|p| p.eval(x))
                            .collect::<Result<Vec<_>>>()?;
                        RationalMatrix::new(self.r, self.r, data)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SymbolBlocks::new(self.n, self.r, self.characters.clone(), blocks)
    }

    /// Assignment reproducing given numeric blocks, if they fit the pattern.
    pub fn assignment_from_blocks(&self, b: &SymbolBlocks) -> Result<Vec<Rational>> {
        let x: Vec<Rational> = self
            .positions
            .iter()
            .map(|&(l, i, a, bb)| b.blocks[l][i][(a, bb)].clone())
            .collect();
        if self.instantiate(&x)? != *b {
            return Err(Error::Precondition(
                "blocks do not fit the endovolutive pattern".into(),
            ));
        }
        Ok(x)
    }

    fn check_assignment(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.num_vars() {
            return Err(Error::Dimension(format!(
                "assignment has {} values, expected {}",
                x.len(),
                self.num_vars()
            )));
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (lambda, row) in self.blocks.iter().enumerate() {
            for (i, m) in row.iter().enumerate() {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter()
                                .map(|p| p.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })
                    .collect();
                let _ = writeln!(out, "B^{}_{} = [{}]", lambda + 1, i + 1, rows.join(", "));
            }
        }
        out
    }
}

fn entry_product(
    p: &ParametricTableau,
    x: usize,
    y: usize,
    z: usize,
    w: usize,
    a: usize,
    b: usize,
) -> MPoly {
    // (B^x_y B^z_w)^a_b
    let mut acc = MPoly::zero(&p.vars);
    for c in 0..p.r {
        let (u, v) = (&p.blocks[x][y][a][c], &p.blocks[z][w][c][b]);
        if !u.is_zero() && !v.is_zero() {
            acc = &acc + &(u * v);
        }
    }
    acc
}

/// Index tuple `(lambda, mu, l, k, a, b)` of a quadratic condition.
pub type Provenance = (usize, usize, usize, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliIdeal {
    pub vars: VarTable,
    pub generators: Vec<MPoly>,
    /// Every condition producing each generator (up to sign).
    pub provenance: Vec<Vec<Provenance>>,
}

pub fn involutivity_ideal(p: &ParametricTableau) -> ModuliIdeal {
    involutivity_ideal_with(p, Execution::default())
}

pub fn involutivity_ideal_with(p: &ParametricTableau, exec: Execution) -> ModuliIdeal {
    // Reuse the numeric index set; the blocks' shape is all it reads.
    let shape = p
        .instantiate(&vec![Rational::zero(); p.num_vars()])
        .expect("zero assignment");
    let tuples = quadratic_tuples(&shape);
    let entries = exec.map(tuples.len(), |t| {
        let (lambda, mu, l, k) = tuples[t];
        let mut out = Vec::new();
        for a in p.characters[l]..p.r {
            for b in 0..p.r {
                let g = &entry_product(p, lambda, l, mu, k, a, b)
                    - &entry_product(p, lambda, k, mu, l, a, b);
                if !g.is_zero() {
                    out.push((g, (lambda, mu, l, k, a, b)));
                }
            }
        }
        out
    });
    let mut generators: Vec<MPoly> = Vec::new();
    let mut provenance: Vec<Vec<Provenance>> = Vec::new();
    for (g, prov) in entries.into_iter().flatten() {
        let neg = -&g;
        match generators.iter().position(|h| *h == g || *h == neg) {
            Some(k) => provenance[k].push(prov),
            None => {
                generators.push(g);
                provenance.push(vec![prov]);
            }
        }
    }
    ModuliIdeal {
        vars: p.vars.clone(),
        generators,
        provenance,
    }
}

/// Whether every generator vanishes at the full assignment `x`.
pub fn point_check(ideal: &ModuliIdeal, x: &[Rational]) -> Result<bool> {
    if x.len() != ideal.vars.len() {
        return Err(Error::Dimension(format!(
            "assignment has {} values, expected {}",
            x.len(),
            ideal.vars.len()
        )));
    }
    for g in &ideal.generators {
        if !g.eval(x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Singular,
    Macaulay2,
    Sage,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singular" => Ok(Self::Singular),
            "macaulay2" | "m2" => Ok(Self::Macaulay2),
            "sage" | "sage-text" => Ok(Self::Sage),
            other => Err(Error::Unknown(format!("export format {other:?}"))),
        }
    }
}

/// Ring declaration over the rationals and the generator list. A ring
/// without variables gets a single placeholder variable `x0`.
pub fn export_ideal(ideal: &ModuliIdeal, format: ExportFormat) -> String {
    let names: Vec<String> = if ideal.vars.is_empty() {
        vec!["x0".to_string()]
    } else {
        ideal.vars.names().to_vec()
    };
    let gens: Vec<String> = ideal.generators.iter().map(MPoly::render).collect();
    let mut out = String::new();
    match format {
        ExportFormat::Singular => {
            let _ = writeln!(out, "ring R = 0, ({}), dp;", names.join(", "));
            let body = if gens.is_empty() {
                "0".to_string()
            } else {
                gens.join(",\n  ")
            };
            let _ = writeln!(out, "ideal I =\n  {body};");
        }
        ExportFormat::Macaulay2 => {
            let _ = writeln!(out, "R = QQ[{}];", names.join(", "));
            let body = if gens.is_empty() {
                "0_R".to_string()
            } else {
                gens.join(",\n  ")
            };
            let _ = writeln!(out, "I = ideal(\n  {body});");
        }
        ExportFormat::Sage => {
            let _ = writeln!(
                out,
                "R = PolynomialRing(QQ, [{}])",
                names
                    .iter()
                    .map(|v| format!("'{v}'"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let _ = writeln!(out, "{}, = R.gens()", names.join(", "));
            let _ = writeln!(out, "I = R.ideal([\n  {}])", gens.join(",\n  "));
        }
    }
    out
}

/// Seeded assignment: each variable is zero with probability 1/2 (or
/// always, if listed in `zeros`), otherwise an integer in `[-5, 5]`.
pub fn seeded_assignment(
    p: &ParametricTableau,
    zeros: &[usize],
    seed: u64,
    index: usize,
) -> Vec<Rational> {
    let mut rng = item_rng(seed, index);
    (0..p.num_vars())
        .map(|k| {
            let v = if rng.random_bool(0.5) {
                0
            } else {
                rng.random_range(-5..=5)
            };
            if zeros.contains(&k) {
                rat(0)
            } else {
                rat(v)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub assignment: Vec<Rational>,
    pub symbolic: bool,
    pub numeric: bool,
}

/// Compares `point_check` with the numeric involutivity test on the
/// instantiated blocks at `count` seeded assignments.
pub fn agreement_sweep(
    p: &ParametricTableau,
    ideal: &ModuliIdeal,
    zeros: &[usize],
    count: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<Agreement>> {
    exec.map(count, |k| {
        let x = seeded_assignment(p, zeros, seed, k);
        let symbolic = point_check(ideal, &x)?;
        let numeric = involutivity_test(&p.instantiate(&x)?)?.involutive();
        Ok(Agreement {
            assignment: x,
            symbolic,
            numeric,
        })
    })
    .into_iter()
    .collect()
}

impl ModuliIdeal {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} generators in {} variables",
            self.generators.len(),
            self.vars.len()
        );
        for (g, prov) in self.generators.iter().zip(&self.provenance) {
            let (l, m, ll, k, a, b) = prov[0];
            let _ = writeln!(
                out,
                "  {g}    from lambda={} mu={} l={} k={} a={} b={}",
                l + 1,
                m + 1,
                ll + 1,
                k + 1,
                a + 1,
                b + 1
            );
        }
        out
    }
}
