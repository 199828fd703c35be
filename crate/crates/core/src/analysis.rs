//! The full pipeline for one tableau and its plaintext report.

use std::fmt::Write as _;

use crate::charvar::{
    char_ideal, generic_phis, guillemin_check, guillemin_triples, hyperbolic_probe, is_determined,
    rank1_ideal, render_sheets, sample_vector, scheme_summary_from, separating_v, xi_fibers,
    EigenSheet, HyperbolicProbe, SchemeSummary, SAMPLE_RANGE,
};
use crate::error::{Error, Result};
use crate::exactlin::{fmt_vector, Rational};
use crate::involutive::{endovolutivize, involutivity_test, EndoStage, InvolutivityReport};
use crate::polyring::MPoly;
use crate::prolong::{prolongation, spencer_dims};
use crate::tableau::{blocks, generic_frame, symbol_coeffs, Frame, SymbolBlocks, Tableau};

/// Number of seeded triples for the normal-form check.
pub const GUILLEMIN_TRIPLES: usize = 10;
/// Number of covectors whose sheets are listed.
pub const SHEET_SAMPLES: usize = 3;
/// Generators of the rank-one ideal printed in full.
const SHOWN_GENERATORS: usize = 12;

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub name: String,
    pub seed: u64,
    pub n: usize,
    pub r: usize,
    pub dim: usize,
    pub frame: Frame,
    pub endo_stage: Option<EndoStage>,
    pub blocks: SymbolBlocks,
    pub involutivity: InvolutivityReport,
    pub prolongation_dim: usize,
    pub spencer: Vec<usize>,
    pub rank_one: Vec<MPoly>,
    pub char_ideal: Vec<MPoly>,
    pub scheme: SchemeSummary,
    pub eigenspace_dims: Vec<usize>,
    pub sheets: Vec<(Vec<Rational>, Vec<EigenSheet>)>,
    pub guillemin_passed: usize,
    pub hyperbolic: Option<HyperbolicProbe>,
    /// Contradictions with what involutivity guarantees.
    pub inconsistencies: Vec<String>,
}

impl AnalysisReport {
    pub fn character_index(&self) -> usize {
        self.frame.character_index()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tableau {} (seed {})", self.name, self.seed);
        let _ = writeln!(out, "n = {}, r = {}, dim A = {}", self.n, self.r, self.dim);
        let _ = writeln!(out, "\n[frame]");
        let _ = writeln!(out, "characters {:?}", self.frame.characters);
        let _ = writeln!(
            out,
            "l = {}, s_l = {}",
            self.character_index(),
            self.frame.cartan_integer()
        );
        let _ = writeln!(
            out,
            "genericity: {} of {} random bases attain the maximum{}",
            self.frame.random_hits,
            self.frame.random_draws,
            if self.frame.certified() {
                ""
            } else {
                " (not certified)"
            }
        );
        let _ = writeln!(out, "gV = {}", self.frame.gv);
        let _ = writeln!(out, "gW = {}", self.frame.gw);
        let stage = match &self.endo_stage {
            Some(EndoStage::Identity) => "already endovolutive".to_string(),
            Some(EndoStage::Aligned) => "W-basis aligned to the image flag".to_string(),
            Some(EndoStage::Redrawn { attempts }) => {
                format!("aligned after {attempts} V-basis redraws")
            }
            None => "no endovolutive frame found".to_string(),
        };
        let _ = writeln!(out, "endovolutive frame: {stage}");
        let _ = writeln!(out, "\n[symbol]");
        for (lambda, row) in self.blocks.blocks.iter().enumerate() {
            for (i, b) in row.iter().enumerate() {
                let _ = writeln!(out, "B^{}_{} = {}", lambda + 1, i + 1, b);
            }
        }
        let _ = writeln!(out, "\n[involutivity]");
        out.push_str(&self.involutivity.render());
        let _ = writeln!(out, "\n[prolongation]");
        let _ = writeln!(out, "dim A(1) = {}", self.prolongation_dim);
        let spencer: Vec<String> = self
            .spencer
            .iter()
            .enumerate()
            .map(|(k, d)| format!("H^{} = {}", k + 1, d))
            .collect();
        let _ = writeln!(out, "spencer {}", spencer.join(", "));
        let _ = writeln!(out, "\n[rank-one ideal]");
        let _ = writeln!(out, "{} generators", self.rank_one.len());
        for g in self.rank_one.iter().take(SHOWN_GENERATORS) {
            let _ = writeln!(out, "  {g}");
        }
        if self.rank_one.len() > SHOWN_GENERATORS {
            let _ = writeln!(out, "  ...");
        }
        let _ = writeln!(out, "\n[characteristic ideal]");
        for (i, d) in self.char_ideal.iter().enumerate() {
            let _ = writeln!(out, "d{} = {}", i + 1, d);
        }
        let _ = writeln!(out, "\n[characteristic scheme]");
        out.push_str(&self.scheme.render());
        let _ = writeln!(out, "dim W1(phi) at seeded phi: {:?}", self.eigenspace_dims);
        for (phi, sheets) in &self.sheets {
            let _ = writeln!(out, "sheets over phi = {}", fmt_vector(phi));
            if sheets.is_empty() {
                let _ = writeln!(out, "  none (W1(phi) is not invariant)");
            }
            out.push_str(&render_sheets(sheets));
        }
        if self.character_index() > 0 {
            let _ = writeln!(
                out,
                "normal form: {} of {} seeded triples preserve W1(phi) and commute",
                self.guillemin_passed, GUILLEMIN_TRIPLES
            );
        }
        if let Some(h) = &self.hyperbolic {
            let _ = writeln!(out, "\n[determined]");
            out.push_str(&h.render());
        }
        let _ = writeln!(out, "\n[consistency]");
        if self.inconsistencies.is_empty() {
            let _ = writeln!(out, "ok");
        }
        for s in &self.inconsistencies {
            let _ = writeln!(out, "INCONSISTENT: {s}");
        }
        out
    }
}

/// Runs every stage on `t`. Sampling is seeded by `seed`.
pub fn analyze(t: &Tableau, seed: u64) -> Result<AnalysisReport> {
    let f0 = generic_frame(t, seed)?;
    let endo = endovolutivize(t, &f0, seed)?;
    let endo_stage = endo.stage.clone();
    let frame = endo.frame.unwrap_or(f0);
    let b = blocks(&symbol_coeffs(t, &frame)?);
    let involutivity = involutivity_test(&b)?;
    let involutive = involutivity.involutive();
    let ell = frame.character_index();
    let mut inconsistencies = Vec::new();
    if involutive && !involutivity.cartan_equal() {
        inconsistencies.push("involutive blocks fail Cartan's test".into());
    }
    let prolongation_dim = prolongation(t).dim();
    let spencer = spencer_dims(t, t.n().min(4))?;
    let scheme = scheme_summary_from(t.name(), &b, involutive, seed)?;
    let mut eigenspace_dims = Vec::new();
    let mut sheets = Vec::new();
    let mut guillemin_passed = 0;
    if ell > 0 {
        let (_, phis) = generic_phis(&b, seed)?;
        eigenspace_dims = crate::charvar::eigenspace_dims(
            &b,
            crate::charvar::PHI_BATCH,
            seed,
            Default::default(),
        )?;
        if involutive && eigenspace_dims.iter().any(|&d| d != frame.cartan_integer()) {
            inconsistencies.push(format!(
                "dim W1(phi) differs from s_l = {}",
                frame.cartan_integer()
            ));
        }
        for phi in phis.iter().take(SHEET_SAMPLES) {
            match separating_v(&b, phi, seed).and_then(|v| xi_fibers(&b, phi, &v)) {
                Ok(s) => {
                    if s.iter().any(|x| !x.in_tableau) {
                        inconsistencies.push(format!(
                            "a sheet over {} is not in the tableau",
                            fmt_vector(phi)
                        ));
                    }
                    sheets.push((phi.clone(), s));
                }
                Err(Error::Characteristic(_)) if !involutive => {
                    sheets.push((phi.clone(), Vec::new()))
                }
                Err(Error::Characteristic(msg)) => inconsistencies.push(msg),
                Err(e) => return Err(e),
            }
        }
        for (phi, v1, v2) in guillemin_triples(&b, GUILLEMIN_TRIPLES, seed) {
            if guillemin_check(&b, &phi, &v1, &v2)?.passed() {
                guillemin_passed += 1;
            }
        }
        if involutive && guillemin_passed < GUILLEMIN_TRIPLES {
            inconsistencies.push("normal form fails on an involutive symbol".into());
        }
    }
    let hyperbolic = if is_determined(&frame.characters, t.r()) {
        let phi = sample_vector(t.n(), SAMPLE_RANGE, seed ^ 0xd1, 0);
        let etas: Vec<Vec<Rational>> = (1..=3)
            .map(|k| sample_vector(t.n(), SAMPLE_RANGE, seed ^ 0xd1, k))
            .collect();
        Some(hyperbolic_probe(&b, &phi, &etas)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        name: t.name().to_string(),
        seed,
        n: t.n(),
        r: t.r(),
        dim: t.dim(),
        frame,
        endo_stage,
        rank_one: rank1_ideal(t)?.generators,
        char_ideal: char_ideal(&b)?.determinants,
        blocks: b,
        involutivity,
        prolongation_dim,
        spencer,
        scheme,
        eigenspace_dims,
        sheets,
        guillemin_passed,
        hyperbolic,
        inconsistencies,
    })
}
