//! Rank-one and characteristic ideals, mutual eigenspaces and sheets of
//! the characteristic variety, and the determined/hyperbolic probe.
//!
//! Everything here is read in frame coordinates of a [`SymbolBlocks`]:
//! `B(phi)(v) = sum_lambda phi_lambda v^i B^lambda_i` with `phi` of length
//! `l`. A covector `xi` of length `n` is characteristic when some nonzero
//! `w` has `w (x) xi` in the tableau.

use std::fmt::Write as _;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{fmt_vector, is_zero_vec, rat, unit, Rational, RationalMatrix, Subspace};
use crate::involutive::{endovolutivize, involutivity_test, InvolutivityReport};
use crate::par::{item_rng, Execution};
use crate::polyring::{linear_interreduce, poly_det, MPoly, UniPoly, VarTable};
use crate::tableau::{blocks, generic_frame, outer, symbol_coeffs, Frame, SymbolBlocks, Tableau};

/// Entries of sampled covectors are drawn from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 20;
/// Number of seeded covectors used to estimate generic eigenspace dimension.
pub const PHI_BATCH: usize = 12;

/// The 2x2 minors of `pi(alpha) = sum alpha_k basis_k`, interreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneIdeal {
    pub vars: VarTable,
    pub generators: Vec<MPoly>,
}

impl RankOneIdeal {
    pub fn vanishes_at(&self, alpha: &[Rational]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(alpha)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn rank1_ideal(t: &Tableau) -> Result<RankOneIdeal> {
    let vars = VarTable::indexed("a", 0, t.dim());
    let entry = |a: usize, i: usize| MPoly::linear(&vars, &t.entry_functional(a, i));
    let mut minors = Vec::new();
    for a in 0..t.r() {
        for b in a + 1..t.r() {
            for i in 0..t.n() {
                for j in i + 1..t.n() {
                    let m = &(&entry(a, i) * &entry(b, j)) - &(&entry(a, j) * &entry(b, i));
                    if !m.is_zero() {
                        minors.push(m);
                    }
                }
            }
        }
    }
    Ok(RankOneIdeal {
        generators: linear_interreduce(&minors)?,
        vars,
    })
}

/// Determinants `d_i = det(sum_lambda xi_lambda B^lambda_i - xi_i I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharIdeal {
    pub vars: VarTable,
    pub determinants: Vec<MPoly>,
}

impl CharIdeal {
    pub fn vanishes_at(&self, xi: &[Rational]) -> Result<bool> {
        for d in &self.determinants {
            if !d.eval(xi)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn char_ideal(b: &SymbolBlocks) -> Result<CharIdeal> {
    let vars = VarTable::indexed("xi", 1, b.n);
    let determinants = (0..b.n)
        .map(|i| {
            let m: Vec<Vec<MPoly>> = (0..b.r)
                .map(|a| {
                    (0..b.r)
                        .map(|c| {
                            let mut e = MPoly::zero(&vars);
                            for (lambda, row) in b.blocks.iter().enumerate() {
                                let x = &row[i][(a, c)];
                                if !x.is_zero() {
                                    e = &e + &MPoly::var(&vars, lambda).scale(x);
                                }
                            }
                            if a == c {
                                e = &e - &MPoly::var(&vars, i);
                            }
                            e
                        })
                        .collect()
                })
                .collect();
            poly_det(&m)
        })
        .collect::<Result<_>>()?;
    Ok(CharIdeal { vars, determinants })
}

fn check_phi(b: &SymbolBlocks, phi: &[Rational]) -> Result<()> {
    if phi.len() != b.character_index() {
        return Err(Error::Dimension(format!(
            "phi must have length l = {}",
            b.character_index()
        )));
    }
    if is_zero_vec(phi) {
        return Err(Error::Precondition("phi must be nonzero".into()));
    }
    Ok(())
}

/// `W1(phi)`: vectors supported on the first `s_m` coordinates
/// (`m` the first index with `phi_m != 0`) killed by every
/// `B(phi)(u_mu) - phi_mu I`, `mu < l`.
pub fn mutual_eigenspace(b: &SymbolBlocks, phi: &[Rational]) -> Result<Subspace> {
    check_phi(b, phi)?;
    let r = b.r;
    let first = phi.iter().position(|x| !x.is_zero()).expect("nonzero");
    let support = b.characters[first];
    let mut rows: Vec<Vec<Rational>> = (support..r).map(|a| unit(r, a)).collect();
    for (mu, phi_mu) in phi.iter().enumerate() {
        let m = b
            .eval(phi, &unit(b.n, mu))?
            .sub(&RationalMatrix::identity(r).scale(phi_mu))?;
        rows.extend(m.to_rows());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(r));
    }
    Ok(Subspace::span(
        r,
        &RationalMatrix::from_rows(&rows)?.kernel(),
    ))
}

/// Matrix of `m` restricted to the span of `basis` (columns), or `None`
/// when the span is not invariant.
pub fn restrict(m: &RationalMatrix, basis: &[Vec<Rational>]) -> Result<Option<RationalMatrix>> {
    let d = basis.len();
    if d == 0 {
        return Ok(Some(RationalMatrix::zeros(0, 0)));
    }
    let k = RationalMatrix::from_columns(basis, m.rows())?;
    let mut cols = Vec::with_capacity(d);
    for v in basis {
        match k.solve(&m.mul_vec(v)?) {
            Ok(c) => cols.push(c),
            Err(Error::Inconsistent) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(RationalMatrix::from_columns(&cols, d)?))
}

/// `v` in `Y` (coordinates `l..n`) padded to a vector of `V`.
fn y_vector(b: &SymbolBlocks, v: &[Rational]) -> Result<Vec<Rational>> {
    let ell = b.character_index();
    if v.len() != b.n - ell {
        return Err(Error::Dimension(format!(
            "v must have length n - l = {}",
            b.n - ell
        )));
    }
    let mut full = vec![Rational::zero(); ell];
    full.extend_from_slice(v);
    Ok(full)
}

/// `B(phi)(v)` restricted to `W1(phi)`, for `v` in `Y`.
pub fn restricted_operator(
    b: &SymbolBlocks,
    phi: &[Rational],
    v: &[Rational],
) -> Result<(Subspace, Option<RationalMatrix>)> {
    let w1 = mutual_eigenspace(b, phi)?;
    let m = b.eval(phi, &y_vector(b, v)?)?;
    let restricted = restrict(&m, w1.basis())?;
    Ok((w1, restricted))
}

/// One point (or conjugate family of points) of the characteristic
/// variety over `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSheet {
    pub phi: Vec<Rational>,
    /// Full covector `xi` when the sheet is rational.
    pub xi: Option<Vec<Rational>>,
    /// Monic factor of the restricted characteristic polynomial of `B(phi)(v)`.
    pub factor: UniPoly,
    pub multiplicity: u32,
    /// Mutual eigenvectors (rational sheets only).
    pub eigenvectors: Vec<Vec<Rational>>,
    /// Every eigenvector `w` has `w (x) xi` in the tableau.
    pub in_tableau: bool,
}

impl EigenSheet {
    pub fn render(&self) -> String {
        match &self.xi {
            Some(xi) => format!(
                "xi = {}  multiplicity {}  eigenvectors {}",
                fmt_vector(xi),
                self.multiplicity,
                self.eigenvectors
                    .iter()
                    .map(|w| fmt_vector(w))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            None => format!("{} = 0  multiplicity {}", self.factor, self.multiplicity),
        }
    }
}

/// Sheets over `phi`, split by the restricted characteristic polynomial of
/// `B(phi)(v)` for the separating vector `v` in `Y`.
pub fn xi_fibers(b: &SymbolBlocks, phi: &[Rational], v: &[Rational]) -> Result<Vec<EigenSheet>> {
    let (w1, restricted) = restricted_operator(b, phi, v)?;
    let ell = b.character_index();
    let Some(m) = restricted else {
        return Err(Error::Characteristic(
            "B(phi)(v) does not preserve W1(phi)".into(),
        ));
    };
    let k = if w1.dim() == 0 {
        RationalMatrix::zeros(b.r, 0)
    } else {
        RationalMatrix::from_columns(w1.basis(), b.r)?
    };
    // Restrictions of B(phi)(u_rho) for every rho >= l.
    let mut ops = Vec::new();
    for rho in ell..b.n {
        let full = b.eval(phi, &unit(b.n, rho))?;
        match restrict(&full, w1.basis())? {
            Some(x) => ops.push(x),
            None => {
                return Err(Error::Characteristic(format!(
                    "B(phi)(u_{}) does not preserve W1(phi)",
                    rho + 1
                )))
            }
        }
    }
    let tableau = b.to_tableau("symbol")?;
    let mut sheets = Vec::new();
    for (factor, mult) in UniPoly::charpoly(&m)?.squarefree() {
        let roots = factor.rational_roots();
        let mut rest = factor.clone();
        for root in &roots {
            rest = rest.div_rem(&UniPoly::linear_root(root.clone())).0;
            // Generalized eigenspace of m at root, inside W1 coordinates.
            let gen = UniPoly::linear_root(root.clone())
                .pow(mult)
                .eval_matrix(&m)?
                .kernel();
            let mut xi = phi.to_vec();
            let mut stacked: Vec<Vec<Rational>> = Vec::new();
            for op in &ops {
                let Some(ro) = restrict(op, &gen)? else {
                    return Err(Error::Characteristic(
                        "commuting operators split inconsistently".into(),
                    ));
                };
                // A single eigenvalue on the generalized eigenspace.
                let lam = trace(&ro) / rat(ro.rows() as i64);
                let nil = ro.sub(&RationalMatrix::identity(ro.rows()).scale(&lam))?;
                if !UniPoly::linear_root(Rational::zero())
                    .pow(ro.rows() as u32)
                    .eval_matrix(&nil)?
                    .is_zero()
                {
                    return Err(Error::NotGeneric(
                        "v does not separate the sheets over phi".into(),
                    ));
                }
                let shifted = op.sub(&RationalMatrix::identity(op.rows()).scale(&lam))?;
                stacked.extend(shifted.to_rows());
                xi.push(lam);
            }
            let gm = RationalMatrix::from_columns(&gen, m.rows())?;
            let local = if stacked.is_empty() {
                gen.clone()
            } else {
                let s = RationalMatrix::from_rows(&stacked)?.mul(&gm)?;
                s.kernel()
                    .iter()
                    .map(|c| gm.mul_vec(c))
                    .collect::<Result<_>>()?
            };
            let eigenvectors: Vec<Vec<Rational>> = local
                .iter()
                .map(|c| k.mul_vec(c))
                .collect::<Result<Vec<_>>>()?;
            let in_tableau = eigenvectors
                .iter()
                .all(|w| tableau.contains(&outer(w, &xi)));
            sheets.push(EigenSheet {
                phi: phi.to_vec(),
                xi: Some(xi),
                factor: UniPoly::linear_root(root.clone()),
                multiplicity: mult,
                eigenvectors,
                in_tableau,
            });
        }
        if rest.degree() > 0 {
            sheets.push(EigenSheet {
                phi: phi.to_vec(),
                xi: None,
                factor: rest.monic(),
                multiplicity: mult,
                eigenvectors: Vec::new(),
                in_tableau: true,
            });
        }
    }
    Ok(sheets)
}

fn trace(m: &RationalMatrix) -> Rational {
    (0..m.rows()).fold(Rational::zero(), |acc, i| acc + &m[(i, i)])
}

/// Seeded nonzero integer vector with entries in `[-range, range]`.
pub fn sample_vector(len: usize, range: i64, seed: u64, index: usize) -> Vec<Rational> {
    let mut rng = item_rng(seed, index);
    loop {
        let v: Vec<Rational> = (0..len)
            .map(|_| rat(rng.random_range(-range..=range)))
            .collect();
        if len == 0 || !is_zero_vec(&v) {
            return v;
        }
    }
}

/// Candidate vectors tried by [`separating_v`].
pub const V_CANDIDATES: usize = 8;

/// A vector in `Y` whose restricted operator `B(phi)(v)` has the most
/// distinct eigenvalues among seeded candidates, so that distinct sheets
/// get distinct values of `xi(v)`. Falls back to the first candidate when
/// `W1(phi)` is not invariant.
pub fn separating_v(b: &SymbolBlocks, phi: &[Rational], seed: u64) -> Result<Vec<Rational>> {
    let len = b.n - b.character_index();
    let mut best: Option<(usize, Vec<Rational>)> = None;
    for k in 0..V_CANDIDATES {
        let v = sample_vector(len, SAMPLE_RANGE, seed ^ 0x5eed, k);
        let Some(m) = restricted_operator(b, phi, &v)?.1 else {
            return Ok(sample_vector(len, SAMPLE_RANGE, seed ^ 0x5eed, 0));
        };
        let distinct = UniPoly::charpoly(&m)?.squarefree_part().degree();
        if best.as_ref().is_none_or(|(d, _)| distinct > *d) {
            best = Some((distinct, v));
        }
        if len == 0 {
            break;
        }
    }
    Ok(best.map(|(_, v)| v).unwrap_or_default())
}

/// `PHI_BATCH` seeded covectors with the minimal `dim W1(phi)` of the
/// batch, which is taken as the generic value.
pub fn generic_phis(b: &SymbolBlocks, seed: u64) -> Result<(usize, Vec<Vec<Rational>>)> {
    let ell = b.character_index();
    let phis: Vec<Vec<Rational>> = (0..PHI_BATCH)
        .map(|k| sample_vector(ell, SAMPLE_RANGE, seed, k))
        .collect();
    let dims = phis
        .iter()
        .map(|p| mutual_eigenspace(b, p).map(|w| w.dim()))
        .collect::<Result<Vec<_>>>()?;
    let min = dims.iter().copied().min().unwrap_or(0);
    Ok((
        min,
        phis.into_iter()
            .zip(dims)
            .filter(|(_, d)| *d == min)
            .map(|(p, _)| p)
            .collect(),
    ))
}

/// One component of the characteristic scheme over a generic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub factor: UniPoly,
    pub multiplicity: u32,
    /// Dimension of the eigenvector space of each point of the component.
    pub fiber_dim: usize,
    pub xi: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeSummary {
    pub name: String,
    pub characters: Vec<usize>,
    pub involutive: bool,
    /// `l - 1`, or `None` for the zero tableau.
    pub dim: Option<usize>,
    /// `s_l`.
    pub degree: usize,
    pub phi: Vec<Rational>,
    pub v: Vec<Rational>,
    /// `dim W1(phi)`.
    pub eigenspace_dim: usize,
    pub components: Vec<Component>,
}

impl SchemeSummary {
    /// Multiplicities of the components, largest first.
    pub fn multiplicity_pattern(&self) -> Vec<u32> {
        let mut m: Vec<u32> = self.components.iter().map(|c| c.multiplicity).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    /// `sum multiplicity * degree` over the components.
    pub fn total_degree(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.multiplicity as usize * c.factor.degree())
            .sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.involutive {
            let _ = writeln!(
                out,
                "non-involutive: degree and dimension theorems not applicable"
            );
        }
        match self.dim {
            Some(d) => {
                let _ = writeln!(out, "dim {d}, degree {}", self.degree);
            }
            None => {
                let _ = writeln!(out, "empty (zero tableau)");
                return out;
            }
        }
        let _ = writeln!(
            out,
            "sample phi {}, v {}",
            fmt_vector(&self.phi),
            fmt_vector(&self.v)
        );
        let _ = writeln!(out, "dim W1(phi) = {}", self.eigenspace_dim);
        let _ = writeln!(out, "components (factors in t = xi(v)):");
        for c in &self.components {
            let point = match &c.xi {
                Some(xi) => format!("xi = {}", fmt_vector(xi)),
                None => format!("{} = 0", c.factor),
            };
            let _ = writeln!(
                out,
                "  {point}  degree {}  multiplicity {}  fiber dim {}",
                c.factor.degree(),
                c.multiplicity,
                c.fiber_dim
            );
        }
        let _ = writeln!(
            out,
            "multiplicity pattern {:?}",
            self.multiplicity_pattern()
        );
        out
    }
}

/// Frame, endovolutive blocks and involutivity report for a tableau.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub frame: Frame,
    pub blocks: SymbolBlocks,
    pub report: InvolutivityReport,
}

pub fn prepare(t: &Tableau, seed: u64) -> Result<Prepared> {
    let f = generic_frame(t, seed)?;
    let e = endovolutivize(t, &f, seed)?;
    let frame = e.frame.unwrap_or(f);
    let blocks = blocks(&symbol_coeffs(t, &frame)?);
    let report = involutivity_test(&blocks)?;
    Ok(Prepared {
        frame,
        blocks,
        report,
    })
}

pub fn scheme_summary(t: &Tableau, seed: u64) -> Result<SchemeSummary> {
    let p = prepare(t, seed)?;
    scheme_summary_from(t.name(), &p.blocks, p.report.involutive(), seed)
}

pub fn scheme_summary_from(
    name: &str,
    b: &SymbolBlocks,
    involutive: bool,
    seed: u64,
) -> Result<SchemeSummary> {
    let ell = b.character_index();
    let mut summary = SchemeSummary {
        name: name.to_string(),
        characters: b.characters.clone(),
        involutive,
        dim: ell.checked_sub(1),
        degree: if ell == 0 { 0 } else { b.characters[ell - 1] },
        phi: Vec::new(),
        v: Vec::new(),
        eigenspace_dim: 0,
        components: Vec::new(),
    };
    if ell == 0 {
        return Ok(summary);
    }
    let (dim, phis) = generic_phis(b, seed)?;
    let phi = phis[0].clone();
    let v = separating_v(b, &phi, seed)?;
    summary.eigenspace_dim = dim;
    let sheets = match xi_fibers(b, &phi, &v) {
        Ok(s) => s,
        Err(Error::Characteristic(_)) if !involutive => Vec::new(),
        Err(e) => return Err(e),
    };
    let (w1, m) = restricted_operator(b, &phi, &v)?;
    for s in sheets {
        let fiber_dim = match (&s.xi, &m) {
            (Some(_), _) => s.eigenvectors.len(),
            (None, Some(m)) => {
                let k = s.factor.eval_matrix(m)?.kernel().len();
                k / s.factor.degree()
            }
            (None, None) => 0,
        };
        summary.components.push(Component {
            factor: s.factor,
            multiplicity: s.multiplicity,
            fiber_dim,
            xi: s.xi,
        });
    }
    debug_assert_eq!(w1.dim(), dim);
    summary.phi = phi;
    summary.v = v;
    Ok(summary)
}

/// Exact Guillemin normal form checks at one triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuilleminReport {
    pub eigenspace_dim: usize,
    pub invariant: bool,
    /// `None` when invariance already failed.
    pub commute: Option<bool>,
}

impl GuilleminReport {
    pub fn passed(&self) -> bool {
        self.invariant && self.commute == Some(true)
    }
}

/// `B(phi)(v)` and `B(phi)(v2)` (full vectors of `V`) preserve `W1(phi)`
/// and commute there.
pub fn guillemin_check(
    b: &SymbolBlocks,
    phi: &[Rational],
    v: &[Rational],
    v2: &[Rational],
) -> Result<GuilleminReport> {
    let w1 = mutual_eigenspace(b, phi)?;
    let m1 = restrict(&b.eval(phi, v)?, w1.basis())?;
    let m2 = restrict(&b.eval(phi, v2)?, w1.basis())?;
    let (invariant, commute) = match (m1, m2) {
        (Some(a), Some(c)) => (true, Some(a.mul(&c)? == c.mul(&a)?)),
        _ => (false, None),
    };
    Ok(GuilleminReport {
        eigenspace_dim: w1.dim(),
        invariant,
        commute,
    })
}

/// Seeded `(phi, v, v2)` triples, `v` and `v2` full vectors of `V`.
pub fn guillemin_triples(
    b: &SymbolBlocks,
    count: usize,
    seed: u64,
) -> Vec<(Vec<Rational>, Vec<Rational>, Vec<Rational>)> {
    (0..count)
        .map(|k| {
            (
                sample_vector(b.character_index(), SAMPLE_RANGE, seed, 3 * k),
                sample_vector(b.n, SAMPLE_RANGE, seed, 3 * k + 1),
                sample_vector(b.n, SAMPLE_RANGE, seed, 3 * k + 2),
            )
        })
        .collect()
}

/// Rank-one elements `w (x) xi` of the tableau, in standard coordinates,
/// collected from rational sheets over coordinate and seeded small
/// covectors `phi`.
pub fn rank_one_samples(
    f: &Frame,
    b: &SymbolBlocks,
    count: usize,
    seed: u64,
) -> Result<Vec<(Vec<Rational>, Vec<Rational>)>> {
    let ell = b.character_index();
    let mut out = Vec::new();
    if ell == 0 {
        return Ok(out);
    }
    let mut phis: Vec<Vec<Rational>> = (0..ell).map(|k| unit(ell, k)).collect();
    phis.extend((0..200).map(|k| sample_vector(ell, 6, seed, k)));
    for phi in phis {
        let sheets = match separating_v(b, &phi, seed).and_then(|v| xi_fibers(b, &phi, &v)) {
            Ok(s) => s,
            Err(Error::Characteristic(_)) => continue,
            Err(e) => return Err(e),
        };
        for s in sheets {
            let Some(xi) = &s.xi else { continue };
            for w in &s.eigenvectors {
                out.push((f.vector_to_standard(w), f.covector_to_standard(xi)));
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IncidenceReport {
    pub forward_checked: usize,
    pub forward_passed: usize,
    pub backward_checked: usize,
    pub backward_passed: usize,
}

impl IncidenceReport {
    pub fn passed(&self) -> bool {
        self.forward_checked == self.forward_passed && self.backward_checked == self.backward_passed
    }
}

/// Forward: every rank-one sample `w (x) xi` (standard coordinates) in the
/// tableau has `B(xi)(v) w = xi(v) w` at seeded `v`. Backward: every
/// rational sheet over seeded `phi` gives rank-one elements of the tableau.
pub fn incidence_check(
    t: &Tableau,
    f: &Frame,
    b: &SymbolBlocks,
    samples: &[(Vec<Rational>, Vec<Rational>)],
    seed: u64,
) -> Result<IncidenceReport> {
    let mut rep = IncidenceReport::default();
    let ell = b.character_index();
    if ell == 0 {
        return Ok(rep);
    }
    for (k, (w, xi)) in samples.iter().enumerate() {
        if !t.contains(&outer(w, xi)) {
            return Err(Error::Precondition(format!(
                "sample {k} is not in the tableau"
            )));
        }
        let (wf, xf) = (f.vector_from_standard(w), f.covector_from_standard(xi));
        for j in 0..3 {
            let v = sample_vector(b.n, SAMPLE_RANGE, seed, 3 * k + j);
            rep.forward_checked += 1;
            let lhs = b.eval(&xf[..ell], &v)?.mul_vec(&wf)?;
            let xv = xf
                .iter()
                .zip(&v)
                .fold(Rational::zero(), |acc, (a, c)| acc + a * c);
            if lhs == wf.iter().map(|x| x * &xv).collect::<Vec<_>>() {
                rep.forward_passed += 1;
            }
        }
    }
    for k in 0..4 {
        let phi = sample_vector(ell, SAMPLE_RANGE, seed, 1000 + k);
        let Ok(sheets) = separating_v(b, &phi, seed).and_then(|v| xi_fibers(b, &phi, &v)) else {
            continue;
        };
        for s in sheets {
            let Some(xi) = &s.xi else { continue };
            for w in &s.eigenvectors {
                rep.backward_checked += 1;
                let pi = outer(&f.vector_to_standard(w), &f.covector_to_standard(xi));
                if t.contains(&pi) && !pi.is_zero() {
                    rep.backward_passed += 1;
                }
            }
        }
    }
    Ok(rep)
}

/// Characters `(r, ..., r, 0)`.
pub fn is_determined(chars: &[usize], r: usize) -> bool {
    match chars.split_last() {
        Some((&last, init)) => r > 0 && last == 0 && init.iter().all(|&s| s == r),
        None => false,
    }
}

/// `sigma_phi = sum_{lambda < n} phi_lambda B^lambda_n - phi_n I`.
pub fn sigma_phi(b: &SymbolBlocks, phi: &[Rational]) -> Result<RationalMatrix> {
    if !is_determined(&b.characters, b.r) {
        return Err(Error::InvalidCharacters(format!(
            "{:?} is not determined",
            b.characters
        )));
    }
    if phi.len() != b.n {
        return Err(Error::Dimension("phi must have length n".into()));
    }
    let last = b.n - 1;
    let m = b.eval(&phi[..last], &unit(b.n, last))?;
    m.sub(&RationalMatrix::identity(b.r).scale(&phi[last]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaVerdict {
    /// Real spectrum, diagonalizable.
    Passed,
    /// Fewer real roots than the degree of the squarefree part.
    ComplexEigenvalues { real_roots: usize, degree: usize },
    /// Real spectrum but a nontrivial Jordan block.
    NotDiagonalizable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperbolicProbe {
    /// `sigma_phi` is singular.
    Characteristic,
    Checked(Vec<(Vec<Rational>, UniPoly, EtaVerdict)>),
}

impl HyperbolicProbe {
    pub fn passed(&self) -> bool {
        matches!(self, HyperbolicProbe::Checked(v) if v.iter().all(|(_, _, e)| *e == EtaVerdict::Passed))
    }

    pub fn render(&self) -> String {
        match self {
            HyperbolicProbe::Characteristic => "phi is characteristic\n".into(),
            HyperbolicProbe::Checked(v) => {
                let mut out = String::new();
                for (eta, p, e) in v {
                    let _ = writeln!(out, "  eta {}  charpoly {}  {:?}", fmt_vector(eta), p, e);
                }
                let _ = writeln!(
                    out,
                    "probe {}",
                    if self.passed() { "passed" } else { "failed" }
                );
                out
            }
        }
    }
}

/// For each `eta`, `sigma_phi^{-1} sigma_eta` must have real spectrum
/// (Sturm count) and be diagonalizable (its squarefree characteristic
/// part annihilates it).
pub fn hyperbolic_probe(
    b: &SymbolBlocks,
    phi: &[Rational],
    etas: &[Vec<Rational>],
) -> Result<HyperbolicProbe> {
    let s = sigma_phi(b, phi)?;
    if s.det()?.is_zero() {
        return Ok(HyperbolicProbe::Characteristic);
    }
    let s_inv = s.inverse()?;
    let mut out = Vec::new();
    for eta in etas {
        let m = s_inv.mul(&sigma_phi(b, eta)?)?;
        let p = UniPoly::charpoly(&m)?;
        let sq = p.squarefree_part();
        let real = sq.count_real_roots();
        let verdict = if real < sq.degree() {
            EtaVerdict::ComplexEigenvalues {
                real_roots: real,
                degree: sq.degree(),
            }
        } else if !sq.eval_matrix(&m)?.is_zero() {
            EtaVerdict::NotDiagonalizable
        } else {
            EtaVerdict::Passed
        };
        out.push((eta.clone(), p, verdict));
    }
    Ok(HyperbolicProbe::Checked(out))
}

/// `dim W1(phi)` at every seeded covector of a batch.
pub fn eigenspace_dims(
    b: &SymbolBlocks,
    count: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<usize>> {
    let ell = b.character_index();
    exec.map(count, |k| {
        mutual_eigenspace(b, &sample_vector(ell, SAMPLE_RANGE, seed, k)).map(|w| w.dim())
    })
    .into_iter()
    .collect()
}

/// Renders rational sheets and implicit factors over one `phi`.
pub fn render_sheets(sheets: &[EigenSheet]) -> String {
    let mut out = String::new();
    for s in sheets {
        let _ = writeln!(out, "  {}", s.render());
    }
    out
}

/// `true` if `x` is one of the given points up to a nonzero scalar.
pub fn projectively_contains(points: &[Vec<Rational>], x: &[Rational]) -> bool {
    points.iter().any(|p| {
        let Some(j) = p.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if x[j].is_zero() {
            return false;
        }
        let c = &x[j] / &p[j];
        p.iter().zip(x).all(|(a, b)| a * &c == *b)
    })
}
