//! Tableaux, generic frames, Cartan characters and symbol blocks.
//!
//! A tableau is a subspace `A` of `r x n` matrices, given by a basis.
//! Entry `(a, i)` of an element is read as a linear functional on the
//! coefficient space `Q^s`; characters count how many new independent
//! functionals each column contributes. Matrices are flattened row-major,
//! entry `(a, i)` at index `a * n + i`.
//!
//! All indices in this module are 0-based: the usual 1-based `pi^a_i` with
//! `1 <= a <= r`, `1 <= i <= n` is entry `(a - 1, i - 1)` here.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{combine, is_zero_vec, rat, unit, Rational, RationalMatrix, Subspace};

/// Number of random bases sampled when certifying generic characters.
pub const GENERIC_DRAWS: usize = 20;
/// Entries of random bases are drawn from `[-GENERIC_RANGE, GENERIC_RANGE]`.
pub const GENERIC_RANGE: i64 = 20;
/// Extra random draws allowed when no sampled basis admits a generic W-basis.
pub const FRAME_BUDGET: usize = 200;

/// A linear subspace of `W (x) V*`, stored by a basis of `r x n` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    name: String,
    n: usize,
    r: usize,
    basis: Vec<RationalMatrix>,
}

impl Tableau {
    /// Builds a tableau; the basis matrices must be `r x n` and independent.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        r: usize,
        basis: Vec<RationalMatrix>,
    ) -> Result<Self> {
        for (k, b) in basis.iter().enumerate() {
            if b.rows() != r || b.cols() != n {
                return Err(Error::InvalidTableau(format!(
                    "basis element {k} is {}x{}, expected {r}x{n}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        let t = Self {
            name: name.into(),
            n,
            r,
            basis,
        };
        if t.flat_matrix().rank() != t.basis.len() {
            return Err(Error::InvalidTableau(
                "basis matrices are linearly dependent".into(),
            ));
        }
        Ok(t)
    }

    /// The tableau cut out by linear relations on flattened entries
    /// (`relations` is `t x (r n)`).
    pub fn from_relations(
        name: impl Into<String>,
        n: usize,
        r: usize,
        relations: &RationalMatrix,
    ) -> Result<Self> {
        if relations.cols() != r * n {
            return Err(Error::InvalidTableau(format!(
                "relations have {} columns, expected r*n = {}",
                relations.cols(),
                r * n
            )));
        }
        let kernel = if relations.rows() == 0 {
            (0..r * n).map(|k| unit(r * n, k)).collect()
        } else {
            relations.kernel()
        };
        let basis = kernel.into_iter().map(|v| unflatten(&v, r, n)).collect();
        Self::new(name, n, r, basis)
    }

    /// The full tableau `W (x) V*`.
    pub fn full(n: usize, r: usize) -> Self {
        let basis = (0..r * n)
            .map(|k| unflatten(&unit(r * n, k), r, n))
            .collect();
        Self {
            name: "full".into(),
            n,
            r,
            basis,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `s = dim A`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// `s x (r n)` matrix of flattened basis elements.
    pub fn flat_matrix(&self) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.as_slice().to_vec()).collect();
        if rows.is_empty() {
            return RationalMatrix::zeros(0, self.r * self.n);
        }
        RationalMatrix::from_rows(&rows).expect("uniform shapes")
    }

    pub fn subspace(&self) -> Subspace {
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.as_slice().to_vec()).collect();
        Subspace::span(self.r * self.n, &rows)
    }

    pub fn contains(&self, pi: &RationalMatrix) -> bool {
        pi.rows() == self.r && pi.cols() == self.n && self.subspace().contains(pi.as_slice())
    }

    /// `sum_k c_k basis_k`.
    pub fn element(&self, coeffs: &[Rational]) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.as_slice().to_vec()).collect();
        unflatten(&combine(&rows, coeffs, self.r * self.n), self.r, self.n)
    }

    /// Coordinates of `pi` in the basis.
    pub fn coordinates(&self, pi: &RationalMatrix) -> Result<Vec<Rational>> {
        self.flat_matrix().transpose().solve(pi.as_slice())
    }

    /// Vector of the entry functional `pi -> pi^a_i` on `Q^s`.
    pub fn entry_functional(&self, a: usize, i: usize) -> Vec<Rational> {
        self.basis.iter().map(|b| b[(a, i)].clone()).collect()
    }

    /// Basis change `pi -> gW pi gV^{-1}`.
    pub fn transform(&self, gv: &RationalMatrix, gw: &RationalMatrix) -> Result<Self> {
        let gv_inv = gv.inverse()?;
        if gw.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let basis = self
            .basis
            .iter()
            .map(|b| gw.mul(b)?.mul(&gv_inv))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: self.name.clone(),
            n: self.n,
            r: self.r,
            basis,
        })
    }

    /// Characters read in the tableau's own coordinates.
    pub fn column_characters(&self) -> Vec<usize> {
        let mut f = Subspace::zero(self.dim());
        (0..self.n)
            .map(|i| {
                let before = f.dim();
                for a in 0..self.r {
                    f.insert(&self.entry_functional(a, i));
                }
                f.dim() - before
            })
            .collect()
    }

    /// Annihilator of `A` in flattened coordinates: a `(rn - s) x rn` relation matrix.
    pub fn relations(&self) -> RationalMatrix {
        let k = self.flat_matrix().kernel();
        if k.is_empty() {
            return RationalMatrix::zeros(0, self.r * self.n);
        }
        RationalMatrix::from_rows(&k).expect("uniform")
    }

    /// The tableau of `r x m` matrices keeping the first `m` columns.
    pub fn truncate_columns(&self, m: usize) -> Result<Self> {
        let basis: Vec<RationalMatrix> = self.basis.iter().map(|b| b.columns(0..m)).collect();
        Self::new(self.name.clone(), m, self.r, basis)
    }
}

/// Row-major flattening inverse.
pub fn unflatten(v: &[Rational], r: usize, n: usize) -> RationalMatrix {
    RationalMatrix::new(r, n, v.to_vec()).expect("length r*n")
}

/// Outer product `w (x) xi` as an `r x n` matrix.
pub fn outer(w: &[Rational], xi: &[Rational]) -> RationalMatrix {
    let data = w
        .iter()
        .flat_map(|a| xi.iter().map(move |b| a * b))
        .collect();
    RationalMatrix::new(w.len(), xi.len(), data).expect("shape")
}

/// `characters_in_basis`: characters after `pi -> gW pi gV^{-1}`.
pub fn characters_in_basis(
    t: &Tableau,
    gv: &RationalMatrix,
    gw: &RationalMatrix,
) -> Result<Vec<usize>> {
    Ok(t.transform(gv, gw)?.column_characters())
}

/// Bases of `V*` and `W` in which a tableau is read, with its characters.
///
/// Rows of `gv` are the covectors `u^i`; rows of `gw` are the covectors
/// `z^a`. Frame coordinates relate to standard ones by
/// `xi_std = xi' gV`, `w_std = gW^{-1} w'`, `pi_std = gW^{-1} pi' gV`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub gv: RationalMatrix,
    pub gw: RationalMatrix,
    pub characters: Vec<usize>,
    /// Random draws (out of `random_draws`) attaining the maximal characters.
    pub random_hits: usize,
    pub random_draws: usize,
}

impl Frame {
    /// `l = max{i : s_i > 0}` as a count (0 for the zero tableau).
    pub fn character_index(&self) -> usize {
        self.characters
            .iter()
            .rposition(|&x| x > 0)
            .map_or(0, |i| i + 1)
    }

    /// `s_l`, or 0 for the zero tableau.
    pub fn cartan_integer(&self) -> usize {
        match self.character_index() {
            0 => 0,
            l => self.characters[l - 1],
        }
    }

    /// Probabilistic genericity certificate: the maximum was attained by at
    /// least two independent random bases.
    pub fn certified(&self) -> bool {
        self.random_hits >= 2
    }

    pub fn transform(&self, t: &Tableau) -> Result<Tableau> {
        t.transform(&self.gv, &self.gw)
    }

    pub fn covector_to_standard(&self, xi: &[Rational]) -> Vec<Rational> {
        self.gv.transpose().mul_vec(xi).expect("length n")
    }

    pub fn covector_from_standard(&self, xi: &[Rational]) -> Vec<Rational> {
        self.gv
            .inverse()
            .expect("invertible")
            .transpose()
            .mul_vec(xi)
            .expect("length n")
    }

    pub fn vector_to_standard(&self, w: &[Rational]) -> Vec<Rational> {
        self.gw
            .inverse()
            .expect("invertible")
            .mul_vec(w)
            .expect("length r")
    }

    pub fn vector_from_standard(&self, w: &[Rational]) -> Vec<Rational> {
        self.gw.mul_vec(w).expect("length r")
    }

    /// Vector in `V` from frame coordinates (coefficients of `u_i`) to standard.
    pub fn v_vector_to_standard(&self, v: &[Rational]) -> Vec<Rational> {
        self.gv
            .inverse()
            .expect("invertible")
            .mul_vec(v)
            .expect("length n")
    }
}

fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

fn permutation_matrix(p: &[usize]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(p.len(), p.len());
    for (i, &j) in p.iter().enumerate() {
        m[(i, j)] = rat(1);
    }
    m
}

/// Invertible integer matrix with entries in `[-range, range]`.
pub fn random_invertible(n: usize, range: i64, rng: &mut ChaCha8Rng) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rat(rng.random_range(-range..=range)))
                    .collect()
            })
            .collect();
        let m = RationalMatrix::from_rows(&rows).expect("square");
        if n == 0 || !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// For each column `i`, the covectors `z` with `z . pi(u_i)` in the span
/// of the functionals of earlier columns. Computed in `t`'s own coordinates.
pub fn dependency_flag(t: &Tableau) -> Vec<Subspace> {
    let s = t.dim();
    let mut f = Subspace::zero(s);
    let mut out = Vec::with_capacity(t.n());
    for i in 0..t.n() {
        // z -> sum_a z_a f_{a,i} modulo F_{i-1}, in quotient coordinates.
        let images: Vec<Vec<Rational>> = (0..t.r())
            .map(|a| f.quotient_coords(&t.entry_functional(a, i)))
            .collect();
        let q = s - f.dim();
        let k = if q == 0 {
            Subspace::full(t.r())
        } else {
            let m = RationalMatrix::from_columns(&images, q).expect("uniform");
            Subspace::span(t.r(), &m.kernel())
        };
        out.push(k);
        for a in 0..t.r() {
            f.insert(&t.entry_functional(a, i));
        }
    }
    out
}

/// Builds `gW` whose rows `z^{s_i+1..r}` span the dependency space of
/// column `i`, or `None` when those spaces are not nested.
///
/// Each level of the flag owns a block of row positions. A new covector
/// whose first nonzero coordinate falls inside its block keeps that
/// position, so an already adapted basis yields the identity; the rest
/// fill the remaining slots from the top down.
fn adapted_gw(t: &Tableau, chars: &[usize]) -> Option<RationalMatrix> {
    let flag = dependency_flag(t);
    if flag.windows(2).any(|w| !w[1].contains_subspace(&w[0])) {
        return None;
    }
    let r = t.r();
    let mut rows: Vec<Option<Vec<Rational>>> = vec![None; r];
    let mut span = Subspace::zero(r);
    let standard: Vec<Vec<Rational>> = (0..r).map(|a| unit(r, a)).collect();
    let levels = flag
        .iter()
        .map(|k| k.basis().to_vec())
        .chain(std::iter::once(standard));
    let mut top = r;
    for candidates in levels {
        // This level owns positions bottom..top.
        let fresh: Vec<Vec<Rational>> = candidates.into_iter().filter(|z| span.insert(z)).collect();
        let bottom = top - fresh.len();
        let mut rest = Vec::new();
        for z in fresh {
            let p = z.iter().position(|x| !x.is_zero()).expect("nonzero");
            if (bottom..top).contains(&p) && rows[p].is_none() {
                rows[p] = Some(z);
            } else {
                rest.push(z);
            }
        }
        let mut free = (bottom..top)
            .rev()
            .filter(|&p| rows[p].is_none())
            .collect::<Vec<_>>()
            .into_iter();
        for z in rest {
            rows[free.next().expect("free slot")] = Some(z);
        }
        top = bottom;
    }
    let rows: Vec<Vec<Rational>> = rows.into_iter().map(|z| z.expect("filled")).collect();
    let gw = RationalMatrix::from_rows(&rows).expect("square");
    // Positions s_i.. must hold exactly the dependency space of column i.
    for (i, k) in flag.iter().enumerate() {
        debug_assert_eq!(k.dim(), r - chars[i]);
    }
    Some(gw)
}

/// Searches for bases realizing the generic (lexicographically maximal)
/// characters and a W-basis adapted to them.
///
/// Candidates: the identity, then column permutations (n <= 5), then
/// `GENERIC_DRAWS` seeded random integer bases. If no maximal candidate
/// admits an adapted W-basis, up to `FRAME_BUDGET` further draws are made.
pub fn generic_frame(t: &Tableau, seed: u64) -> Result<Frame> {
    let n = t.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = vec![RationalMatrix::identity(n)];
    if n <= 5 {
        candidates.extend(
            lex_permutations(n)
                .iter()
                .skip(1)
                .map(|p| permutation_matrix(p)),
        );
    }
    let fixed = candidates.len();
    candidates.extend((0..GENERIC_DRAWS).map(|_| random_invertible(n, GENERIC_RANGE, &mut rng)));
    let chars: Vec<Vec<usize>> = candidates
        .iter()
        .map(|gv| characters_in_basis(t, gv, &RationalMatrix::identity(t.r())))
        .collect::<Result<_>>()?;
    let best = chars.iter().max().cloned().unwrap_or_default();
    let random_hits = chars[fixed..].iter().filter(|c| **c == best).count();
    let frame = |gv: &RationalMatrix| -> Result<Option<Frame>> {
        let tv = t.transform(gv, &RationalMatrix::identity(t.r()))?;
        Ok(adapted_gw(&tv, &best).map(|gw| Frame {
            gv: gv.clone(),
            gw,
            characters: best.clone(),
            random_hits,
            random_draws: GENERIC_DRAWS,
        }))
    };
    for (gv, c) in candidates.iter().zip(&chars) {
        if *c == best {
            if let Some(f) = frame(gv)? {
                return Ok(f);
            }
        }
    }
    for _ in 0..FRAME_BUDGET {
        let gv = random_invertible(n, GENERIC_RANGE, &mut rng);
        if characters_in_basis(t, &gv, &RationalMatrix::identity(t.r()))? == best {
            if let Some(f) = frame(&gv)? {
                return Ok(f);
            }
        }
    }
    Err(Error::NotGeneric(
        "no sampled basis admits an adapted W-basis".into(),
    ))
}

/// Coefficients `B^{a,lambda}_{i,b}` expressing each dependent entry
/// through the independent ones, in frame coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCoeffs {
    pub n: usize,
    pub r: usize,
    pub characters: Vec<usize>,
    /// Independent entries `(lambda, b)` with `b < s_lambda`, lambda-major.
    pub independent: Vec<(usize, usize)>,
    /// `rows[i][a - s_i][k]`: coefficient of independent entry `k` in `pi^a_i`.
    pub rows: Vec<Vec<Vec<Rational>>>,
}

impl SymbolCoeffs {
    pub fn get(&self, i: usize, a: usize, lambda: usize, b: usize) -> Rational {
        let si = self.characters[i];
        if a < si || lambda >= self.characters.len() || b >= self.characters[lambda] {
            return Rational::zero();
        }
        let k = self
            .independent
            .iter()
            .position(|&e| e == (lambda, b))
            .expect("independent entry");
        self.rows[i][a - si][k].clone()
    }

    /// Number of dependent-entry relations `t = rn - s`.
    pub fn relation_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Solves every dependent entry `pi^a_i` (`a >= s_i`) for the independent ones.
pub fn symbol_coeffs(t: &Tableau, f: &Frame) -> Result<SymbolCoeffs> {
    let tt = f.transform(t)?;
    let chars = &f.characters;
    if tt.column_characters() != *chars {
        return Err(Error::NotGeneric(
            "frame does not realize its characters".into(),
        ));
    }
    let s = tt.dim();
    let independent: Vec<(usize, usize)> = chars
        .iter()
        .enumerate()
        .flat_map(|(l, &sl)| (0..sl).map(move |b| (l, b)))
        .collect();
    let cols: Vec<Vec<Rational>> = independent
        .iter()
        .map(|&(l, b)| tt.entry_functional(b, l))
        .collect();
    let m = RationalMatrix::from_columns(&cols, s)?;
    if m.rank() != s {
        return Err(Error::NotGeneric(
            "leading entries are not independent".into(),
        ));
    }
    let mut rows = Vec::with_capacity(tt.n());
    for i in 0..tt.n() {
        let mut col = Vec::new();
        for a in chars[i]..tt.r() {
            let c = m.solve(&tt.entry_functional(a, i))?;
            for (k, &(l, _)) in independent.iter().enumerate() {
                if l >= i && !c[k].is_zero() {
                    return Err(Error::NotGeneric(format!(
                        "entry ({a},{i}) depends on column {l}"
                    )));
                }
            }
            col.push(c);
        }
        rows.push(col);
    }
    let coeffs = SymbolCoeffs {
        n: tt.n(),
        r: tt.r(),
        characters: chars.clone(),
        independent,
        rows,
    };
    // Residual check: every basis element satisfies the relations.
    for b in tt.basis() {
        for i in 0..tt.n() {
            for a in chars[i]..tt.r() {
                let rhs = coeffs
                    .independent
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (k, &(l, bb))| {
                        acc + &coeffs.rows[i][a - chars[i]][k] * &b[(bb, l)]
                    });
                if rhs != b[(a, i)] {
                    return Err(Error::NotGeneric("residual check failed".into()));
                }
            }
        }
    }
    Ok(coeffs)
}

/// The `l x n` array of `r x r` matrices `B^lambda_i`.
///
/// `blocks[lambda][i]` has entry `(a, b)` equal to `B^{a,lambda}_{i,b}`,
/// and the identity on the first `s_lambda` coordinates when `i == lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolBlocks {
    pub n: usize,
    pub r: usize,
    pub characters: Vec<usize>,
    pub blocks: Vec<Vec<RationalMatrix>>,
}

impl SymbolBlocks {
    pub fn new(
        n: usize,
        r: usize,
        characters: Vec<usize>,
        blocks: Vec<Vec<RationalMatrix>>,
    ) -> Result<Self> {
        let l = characters.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        if characters.len() != n || blocks.len() != l || blocks.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("block array shape".into()));
        }
        if blocks
            .iter()
            .flatten()
            .any(|b| b.rows() != r || b.cols() != r)
        {
            return Err(Error::Dimension("blocks must be r x r".into()));
        }
        Ok(Self {
            n,
            r,
            characters,
            blocks,
        })
    }

    pub fn character_index(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, lambda: usize, i: usize) -> &RationalMatrix {
        &self.blocks[lambda][i]
    }

    /// `B(phi)(v) = sum phi_lambda v^i B^lambda_i`.
    pub fn eval(&self, phi: &[Rational], v: &[Rational]) -> Result<RationalMatrix> {
        if phi.len() != self.character_index() || v.len() != self.n {
            return Err(Error::Dimension("phi has length l, v has length n".into()));
        }
        let mut acc = RationalMatrix::zeros(self.r, self.r);
        for (l, row) in self.blocks.iter().enumerate() {
            for (i, b) in row.iter().enumerate() {
                let c = &phi[l] * &v[i];
                if !c.is_zero() {
                    acc = acc.add(&b.scale(&c))?;
                }
            }
        }
        Ok(acc)
    }

    /// The tableau (in frame coordinates) spanned by `pi_(lambda,b)` with
    /// column `i` equal to `B^lambda_i e_b`.
    pub fn to_tableau(&self, name: &str) -> Result<Tableau> {
        let mut basis = Vec::new();
        for (l, row) in self.blocks.iter().enumerate() {
            for b in 0..self.characters[l] {
                let mut m = RationalMatrix::zeros(self.r, self.n);
                for (i, blk) in row.iter().enumerate() {
                    for a in 0..self.r {
                        m[(a, i)] = blk[(a, b)].clone();
                    }
                }
                basis.push(m);
            }
        }
        Tableau::new(name, self.n, self.r, basis)
    }

    /// Whether `w (x) xi` satisfies the symbol relations:
    /// `B(xi)(u_i) w = xi_i w` for every `i`.
    pub fn is_rank_one_solution(&self, w: &[Rational], xi: &[Rational]) -> Result<bool> {
        let l = self.character_index();
        for i in 0..self.n {
            let lhs = self.eval(&xi[..l], &unit(self.n, i))?.mul_vec(w)?;
            let rhs: Vec<Rational> = w.iter().map(|x| x * &xi[i]).collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(!is_zero_vec(w))
    }
}

/// Assembles `B^lambda_i` from the solved coefficients.
pub fn blocks(c: &SymbolCoeffs) -> SymbolBlocks {
    let chars = &c.characters;
    let l = chars.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
    let blocks = (0..l)
        .map(|lambda| {
            (0..c.n)
                .map(|i| {
                    let mut m = RationalMatrix::zeros(c.r, c.r);
                    if i == lambda {
                        for a in 0..chars[lambda] {
                            m[(a, a)] = rat(1);
                        }
                    }
                    for a in chars[i]..c.r {
                        for b in 0..chars[lambda] {
                            m[(a, b)] = c.get(i, a, lambda, b);
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    SymbolBlocks {
        n: c.n,
        r: c.r,
        characters: chars.clone(),
        blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn hankel_standard_and_permuted_characters() {
        let t = gallery::hankel();
        assert_eq!(t.column_characters(), vec![3, 1, 1]);
        let swap = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let rev = RationalMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(characters_in_basis(&t, &swap, &rev).unwrap(), vec![3, 2, 0]);
    }

    #[test]
    fn singular_basis_change_rejected() {
        let t = gallery::hankel();
        let z = RationalMatrix::zeros(3, 3);
        assert_eq!(
            characters_in_basis(&t, &z, &RationalMatrix::identity(3)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn zero_and_full_tableaux() {
        let z = Tableau::new("zero", 3, 2, vec![]).unwrap();
        let f = generic_frame(&z, 0).unwrap();
        assert_eq!(f.characters, vec![0, 0, 0]);
        assert_eq!(f.character_index(), 0);
        assert!(blocks(&symbol_coeffs(&z, &f).unwrap()).blocks.is_empty());
        let full = Tableau::full(2, 2);
        let f = generic_frame(&full, 0).unwrap();
        assert_eq!(f.characters, vec![2, 2]);
        assert_eq!(symbol_coeffs(&full, &f).unwrap().relation_count(), 0);
    }

    #[test]
    fn dependent_basis_rejected() {
        let m = RationalMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let e = Tableau::new("dup", 2, 2, vec![m.clone(), m.scale(&rat(2))]);
        assert!(matches!(e, Err(Error::InvalidTableau(_))));
    }

    #[test]
    fn hankel_frame_is_the_documented_permutation() {
        let t = gallery::hankel();
        let f = generic_frame(&t, 7).unwrap();
        assert_eq!(
            f.gv,
            RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
        );
        assert_eq!(
            f.gw,
            RationalMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
        );
        assert!(f.certified());
    }

    #[test]
    fn blocks_round_trip_to_frame_tableau() {
        let t = gallery::hankel();
        let f = generic_frame(&t, 0).unwrap();
        let b = blocks(&symbol_coeffs(&t, &f).unwrap());
        let back = b.to_tableau("x").unwrap();
        assert_eq!(back.subspace(), f.transform(&t).unwrap().subspace());
    }
}
