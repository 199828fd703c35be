//! Endovolutivity, the quadratic involutivity conditions and Cartan's test.
//!
//! Blocks are endovolutive when `B^{a,lambda}_{i,b} = 0` for `a >= s_lambda`.
//! For endovolutive blocks the tableau is involutive exactly when
//! `(B^lambda_l B^mu_k - B^lambda_k B^mu_l)^a_b = 0` for
//! `lambda < l < k`, `lambda <= mu < k`, `a >= s_l` (0-based).

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, unit, Rational, RationalMatrix, Subspace};
use crate::par::{item_rng, Execution};
use crate::prolong::prolongation;
use crate::tableau::{
    blocks, characters_in_basis, random_invertible, symbol_coeffs, Frame, SymbolBlocks, Tableau,
    FRAME_BUDGET, GENERIC_RANGE,
};

/// A nonzero entry `B^{a,lambda}_{i,b}` with `a >= s_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoViolation {
    pub lambda: usize,
    pub i: usize,
    pub a: usize,
    pub b: usize,
    pub value: Rational,
}

/// A nonzero entry `(a, b)` of `B^lambda_l B^mu_k - B^lambda_k B^mu_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticViolation {
    pub lambda: usize,
    pub mu: usize,
    pub l: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub value: Rational,
}

impl QuadraticViolation {
    /// 1-based rendering, matching the usual index conventions.
    pub fn render(&self) -> String {
        format!(
            "lambda={} mu={} l={} k={} a={} b={} value={}",
            self.lambda + 1,
            self.mu + 1,
            self.l + 1,
            self.k + 1,
            self.a + 1,
            self.b + 1,
            fmt_rational(&self.value)
        )
    }
}

pub fn endovolutive_violations(b: &SymbolBlocks) -> Vec<EndoViolation> {
    let mut out = Vec::new();
    for (lambda, row) in b.blocks.iter().enumerate() {
        for (i, m) in row.iter().enumerate() {
            for a in b.characters[lambda]..b.r {
                for bb in 0..b.r {
                    if !m[(a, bb)].is_zero() {
                        out.push(EndoViolation {
                            lambda,
                            i,
                            a,
                            b: bb,
                            value: m[(a, bb)].clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn is_endovolutive(b: &SymbolBlocks) -> bool {
    endovolutive_violations(b).is_empty()
}

/// `(B^lambda_l B^mu_k - B^lambda_k B^mu_l)^a_b`.
pub fn quadratic_entry(
    b: &SymbolBlocks,
    lambda: usize,
    mu: usize,
    l: usize,
    k: usize,
    a: usize,
    bb: usize,
) -> Rational {
    let (bl, bk) = (&b.blocks[lambda][l], &b.blocks[lambda][k]);
    let (ml, mk) = (&b.blocks[mu][l], &b.blocks[mu][k]);
    (0..b.r).fold(Rational::zero(), |acc, c| {
        acc + &bl[(a, c)] * &mk[(c, bb)] - &bk[(a, c)] * &ml[(c, bb)]
    })
}

/// Every `(lambda, mu, l, k)` in the quadratic index set.
pub fn quadratic_tuples(b: &SymbolBlocks) -> Vec<(usize, usize, usize, usize)> {
    let ell = b.character_index();
    let mut out = Vec::new();
    for lambda in 0..ell {
        for l in lambda + 1..b.n {
            for k in l + 1..b.n {
                for mu in lambda..k.min(ell) {
                    out.push((lambda, mu, l, k));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutivityReport {
    pub characters: Vec<usize>,
    pub endovolutive: bool,
    pub endo_violations: Vec<EndoViolation>,
    /// `None` when the quadratic sweep was skipped.
    pub quadratic_ok: Option<bool>,
    pub violations: Vec<QuadraticViolation>,
    pub entries_checked: usize,
    /// `s_1 + 2 s_2 + ... + l s_l`.
    pub cartan_lhs: usize,
    /// `dim A(1)`.
    pub cartan_rhs: usize,
}

impl InvolutivityReport {
    pub fn involutive(&self) -> bool {
        self.endovolutive && self.quadratic_ok == Some(true)
    }

    pub fn cartan_equal(&self) -> bool {
        self.cartan_lhs == self.cartan_rhs
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "endovolutive: {}", yes_no(self.endovolutive));
        for v in self.endo_violations.iter().take(5) {
            let _ = writeln!(
                out,
                "  B^{}_{} has entry ({}, {}) = {}",
                v.lambda + 1,
                v.i + 1,
                v.a + 1,
                v.b + 1,
                fmt_rational(&v.value)
            );
        }
        match self.quadratic_ok {
            None => {
                let _ = writeln!(out, "quadratic conditions: skipped");
            }
            Some(ok) => {
                let _ = writeln!(
                    out,
                    "quadratic conditions: {} ({} entries, {} nonzero)",
                    if ok { "satisfied" } else { "violated" },
                    self.entries_checked,
                    self.violations.len()
                );
                for v in self.violations.iter().take(5) {
                    let _ = writeln!(out, "  {}", v.render());
                }
            }
        }
        let _ = writeln!(
            out,
            "cartan test: {} {} {}",
            self.cartan_lhs,
            if self.cartan_equal() { "=" } else { "<" },
            self.cartan_rhs
        );
        let _ = writeln!(out, "involutive: {}", yes_no(self.involutive()));
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `s_1 + 2 s_2 + ... + n s_n`.
pub fn cartan_sum(chars: &[usize]) -> usize {
    chars.iter().enumerate().map(|(i, s)| (i + 1) * s).sum()
}

pub fn involutivity_test(b: &SymbolBlocks) -> Result<InvolutivityReport> {
    involutivity_test_with(b, Execution::default())
}

pub fn involutivity_test_with(b: &SymbolBlocks, exec: Execution) -> Result<InvolutivityReport> {
    let endo_violations = endovolutive_violations(b);
    let endovolutive = endo_violations.is_empty();
    let cartan_rhs = prolongation(&b.to_tableau("symbol")?).dim();
    let mut report = InvolutivityReport {
        characters: b.characters.clone(),
        endovolutive,
        endo_violations,
        quadratic_ok: None,
        violations: Vec::new(),
        entries_checked: 0,
        cartan_lhs: cartan_sum(&b.characters),
        cartan_rhs,
    };
    if !endovolutive {
        return Ok(report);
    }
    let tuples = quadratic_tuples(b);
    let results = exec.map(tuples.len(), |t| {
        let (lambda, mu, l, k) = tuples[t];
        let mut found = Vec::new();
        let mut count = 0;
        for a in b.characters[l]..b.r {
            for bb in 0..b.r {
                count += 1;
                let value = quadratic_entry(b, lambda, mu, l, k, a, bb);
                if !value.is_zero() {
                    found.push(QuadraticViolation {
                        lambda,
                        mu,
                        l,
                        k,
                        a,
                        b: bb,
                        value,
                    });
                }
            }
        }
        (count, found)
    });
    for (count, found) in results {
        report.entries_checked += count;
        report.violations.extend(found);
    }
    report.quadratic_ok = Some(report.violations.is_empty());
    Ok(report)
}

/// How an endovolutive frame was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoStage {
    /// The given frame was already endovolutive.
    Identity,
    /// A W-basis adapted to the image flag of the given V-basis.
    Aligned,
    /// The image flag was aligned after redrawing the V-basis.
    Redrawn { attempts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endovolutivization {
    /// `None` when the search budget ran out.
    pub frame: Option<Frame>,
    pub stage: Option<EndoStage>,
    pub attempts: usize,
}

impl Endovolutivization {
    pub fn found(&self) -> bool {
        self.frame.is_some()
    }
}

fn frame_blocks(t: &Tableau, f: &Frame) -> Option<SymbolBlocks> {
    symbol_coeffs(t, f).ok().map(|c| blocks(&c))
}

/// For the V-basis `gv`, the W-basis (if any) making the blocks
/// endovolutive.
///
/// In frame coordinates the blocks are endovolutive exactly when, for each
/// `lambda`, the columns of elements vanishing on `u_1..u_lambda` span
/// `z_1..z_{s_lambda}`. So the images `Im_lambda` must have dimension
/// `s_lambda`, and `gW^{-1}` is any basis adapted to that flag.
fn aligned_frame(
    t: &Tableau,
    gv: &RationalMatrix,
    chars: &[usize],
) -> Result<Option<RationalMatrix>> {
    let (r, s) = (t.r(), t.dim());
    let tv = t.transform(gv, &RationalMatrix::identity(r))?;
    let ell = chars.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
    let mut images = Vec::with_capacity(ell);
    for lambda in 0..ell {
        // Coefficients of elements whose first lambda columns vanish.
        let funcs: Vec<Vec<Rational>> = (0..lambda)
            .flat_map(|i| (0..r).map(move |a| (a, i)))
            .map(|(a, i)| tv.entry_functional(a, i))
            .collect();
        let coeffs = if funcs.is_empty() {
            (0..s).map(|k| unit(s, k)).collect()
        } else {
            RationalMatrix::from_rows(&funcs)?.kernel()
        };
        let mut im = Subspace::zero(r);
        for c in &coeffs {
            let pi = tv.element(c);
            for i in 0..tv.n() {
                im.insert(&pi.col(i));
            }
        }
        if im.dim() != chars[lambda] {
            return Ok(None);
        }
        images.push(im);
    }
    let mut p = Subspace::zero(r);
    let mut cols = Vec::with_capacity(r);
    let standard: Vec<Vec<Rational>> = (0..r).map(|a| unit(r, a)).collect();
    for v in images
        .iter()
        .rev()
        .flat_map(|im| im.basis().to_vec())
        .chain(standard)
    {
        if p.insert(&v) {
            cols.push(v);
        }
    }
    let p = RationalMatrix::from_columns(&cols, r)?;
    Ok(Some(p.inverse()?))
}

fn try_frame(t: &Tableau, base: &Frame, gv: &RationalMatrix) -> Result<Option<Frame>> {
    let Some(gw) = aligned_frame(t, gv, &base.characters)? else {
        return Ok(None);
    };
    let f = Frame {
        gv: gv.clone(),
        gw,
        ..base.clone()
    };
    Ok(frame_blocks(t, &f).filter(is_endovolutive).map(|_| f))
}

/// Searches for a frame with endovolutive blocks.
///
/// Tries the given frame, then the W-basis adapted to the image flag of
/// its V-basis, then the same alignment after up to `FRAME_BUDGET` seeded
/// V-basis redraws that keep the characters.
pub fn endovolutivize(t: &Tableau, f: &Frame, seed: u64) -> Result<Endovolutivization> {
    if let Some(b) = frame_blocks(t, f) {
        if is_endovolutive(&b) {
            return Ok(Endovolutivization {
                frame: Some(f.clone()),
                stage: Some(EndoStage::Identity),
                attempts: 0,
            });
        }
    } else {
        return Err(Error::NotGeneric(
            "frame does not solve the symbol relations".into(),
        ));
    }
    if let Some(g) = try_frame(t, f, &f.gv)? {
        return Ok(Endovolutivization {
            frame: Some(g),
            stage: Some(EndoStage::Aligned),
            attempts: 0,
        });
    }
    let identity_w = RationalMatrix::identity(t.r());
    for k in 0..FRAME_BUDGET {
        let gv = random_invertible(t.n(), GENERIC_RANGE, &mut item_rng(seed, k));
        if characters_in_basis(t, &gv, &identity_w)? != f.characters {
            continue;
        }
        if let Some(g) = try_frame(t, f, &gv)? {
            let attempts = k + 1;
            return Ok(Endovolutivization {
                frame: Some(g),
                stage: Some(EndoStage::Redrawn { attempts }),
                attempts,
            });
        }
    }
    Ok(Endovolutivization {
        frame: None,
        stage: None,
        attempts: FRAME_BUDGET,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanTest {
    pub lhs: usize,
    pub rhs: usize,
}

impl CartanTest {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn cartan_test(t: &Tableau, f: &Frame) -> CartanTest {
    CartanTest {
        lhs: cartan_sum(&f.characters),
        rhs: prolongation(t).dim(),
    }
}

/// The tableau of `r x l` matrices keeping the first `l` frame columns.
pub fn restrict_to_u(t: &Tableau, f: &Frame) -> Result<Tableau> {
    let ell = f.character_index();
    let tt = f.transform(t)?;
    if ell == tt.n() {
        return Ok(tt);
    }
    tt.truncate_columns(ell)
        .map(|u| u.with_name(format!("{}|U", t.name())))
}
