//! The Spencer map, prolongation and Spencer cohomology.
//!
//! `delta_k : A (x) /\^{k-1} V* -> W (x) /\^k V*` sends `pi (x) u^J` to
//! `sum_i pi^a_i z_a (x) u^i /\ u^J`; `H^k` is its cokernel. For `k = 2`
//! its kernel is the prolongation `A(1)`: elements of `A (x) V*` that are
//! symmetric once included in `W (x) V* (x) V*`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{unit, Rational, RationalMatrix, Subspace};
use crate::tableau::{outer, unflatten, Frame, Tableau};

/// Increasing index sets of size `k` in lexicographic order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `u^i /\ u^J` (left) or `u^J /\ u^i` (right) as `(sign, sorted set)`.
fn wedge_one(i: usize, j: &[usize], left: bool) -> Option<(i64, Vec<usize>)> {
    if j.contains(&i) {
        return None;
    }
    let moved = if left {
        j.iter().filter(|&&x| x < i).count()
    } else {
        j.iter().filter(|&&x| x > i).count()
    };
    let mut out = j.to_vec();
    out.push(i);
    out.sort_unstable();
    Some((if moved % 2 == 0 { 1 } else { -1 }, out))
}

/// Coordinates of `W (x) /\^k V*`: index `a * C(n,k) + position of J`.
struct WedgeSpace {
    r: usize,
    sets: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl WedgeSpace {
    fn new(r: usize, n: usize, k: usize) -> Self {
        let sets = wedge_basis(n, k);
        let index = sets
            .iter()
            .enumerate()
            .map(|(p, s)| (s.clone(), p))
            .collect();
        Self { r, sets, index }
    }

    fn dim(&self) -> usize {
        self.r * self.sets.len()
    }

    fn coord(&self, a: usize, set: &[usize]) -> usize {
        a * self.sets.len() + self.index[set]
    }
}

/// Matrix of `delta_2` on `A (x) V*` with its index codebooks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    /// `(r C(n,2)) x (s n)`.
    pub matrix: RationalMatrix,
    /// Row codebook `(a, i, j)` with `i < j`.
    pub rows: Vec<(usize, usize, usize)>,
    /// Column codebook `(k, j)`: basis element `k` tensored with `u^j`.
    pub cols: Vec<(usize, usize)>,
}

/// `(delta P)^a_{ij} = P^a_{i,j} - P^a_{j,i}`.
pub fn delta_matrix(t: &Tableau) -> DeltaMap {
    let (n, r, s) = (t.n(), t.r(), t.dim());
    let rows: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|a| (0..n).flat_map(move |i| (i + 1..n).map(move |j| (a, i, j))))
        .collect();
    let cols: Vec<(usize, usize)> = (0..s).flat_map(|k| (0..n).map(move |j| (k, j))).collect();
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (ri, &(a, i, j)) in rows.iter().enumerate() {
        for (ci, &(k, jj)) in cols.iter().enumerate() {
            let b = &t.basis()[k];
            // P^a_{i,j} picks column jj == j with entry (a, i); minus the swap.
            let mut v = Rational::zero();
            if jj == j {
                v += &b[(a, i)];
            }
            if jj == i {
                v -= &b[(a, j)];
            }
            m[(ri, ci)] = v;
        }
    }
    DeltaMap {
        matrix: m,
        rows,
        cols,
    }
}

/// `A(1)` as a subspace of `A (x) V*`; vectors have length `s n`, entry
/// `(k, j)` at `k * n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prolongation {
    pub n: usize,
    pub s: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl Prolongation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `A(1)` as a tableau of `s x n` matrices (target space `A`).
    pub fn as_tableau(&self, name: &str) -> Result<Tableau> {
        let basis = self
            .basis
            .iter()
            .map(|v| unflatten(v, self.s, self.n))
            .collect();
        Tableau::new(name, self.n, self.s, basis)
    }

    /// Symmetric view `P^a_{i,j}` of an element given by its coordinates.
    pub fn symmetric_view(&self, t: &Tableau, v: &[Rational]) -> Vec<RationalMatrix> {
        (0..t.r())
            .map(|a| {
                let mut m = RationalMatrix::zeros(self.n, self.n);
                for i in 0..self.n {
                    for j in 0..self.n {
                        for k in 0..self.s {
                            let c = &v[k * self.n + j];
                            if !c.is_zero() {
                                m[(i, j)] += c * &t.basis()[k][(a, i)];
                            }
                        }
                    }
                }
                m
            })
            .collect()
    }
}

pub fn prolongation(t: &Tableau) -> Prolongation {
    let d = delta_matrix(t);
    let basis = if d.rows.is_empty() {
        (0..t.dim() * t.n())
            .map(|k| unit(t.dim() * t.n(), k))
            .collect()
    } else {
        d.matrix.kernel()
    };
    Prolongation {
        n: t.n(),
        s: t.dim(),
        basis,
    }
}

/// Image of `delta_k` in `W (x) /\^k V*`, as a subspace.
fn delta_image(t: &Tableau, k: usize, space: &WedgeSpace) -> Subspace {
    let lower = wedge_basis(t.n(), k - 1);
    let mut img = Subspace::zero(space.dim());
    for b in t.basis() {
        for j in &lower {
            let mut v = vec![Rational::zero(); space.dim()];
            for i in 0..t.n() {
                let Some((sign, set)) = wedge_one(i, j, true) else {
                    continue;
                };
                for a in 0..t.r() {
                    if !b[(a, i)].is_zero() {
                        v[space.coord(a, &set)] += &b[(a, i)] * Rational::from_integer(sign.into());
                    }
                }
            }
            img.insert(&v);
        }
    }
    img
}

/// `dim H^k` for `k = 1..=kmax`.
pub fn spencer_dims(t: &Tableau, kmax: usize) -> Result<Vec<usize>> {
    if kmax > t.n() {
        return Err(Error::Precondition(format!(
            "kmax {kmax} exceeds n = {}",
            t.n()
        )));
    }
    Ok((1..=kmax)
        .map(|k| {
            let space = WedgeSpace::new(t.r(), t.n(), k);
            space.dim() - delta_image(t, k, &space).dim()
        })
        .collect())
}

/// Exactness data for one position of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub label: String,
    pub dim: usize,
    /// Rank of the incoming map.
    pub image: usize,
    /// Dimension of the kernel of the outgoing map.
    pub kernel: usize,
}

impl Position {
    pub fn exact(&self) -> bool {
        self.image == self.kernel
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub positions: Vec<Position>,
    /// Consecutive maps compose to zero (and induced maps are well defined).
    pub complex: bool,
}

impl SequenceReport {
    pub fn exact(&self) -> bool {
        self.complex && self.positions.iter().all(Position::exact)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for p in &self.positions {
            let _ = writeln!(
                out,
                "  {}: dim {}, image {}, kernel {}{}",
                p.label,
                p.dim,
                p.image,
                p.kernel,
                if p.exact() { "" } else { "  NOT EXACT" }
            );
        }
        out
    }
}

/// Builds positions from a chain of maps `C0 -> C1 -> ... -> Cm`.
fn chain_report(
    labels: Vec<String>,
    dims: &[usize],
    maps: &[RationalMatrix],
    complex: bool,
) -> SequenceReport {
    let ranks: Vec<usize> = maps.iter().map(RationalMatrix::rank).collect();
    let complex = complex
        && maps
            .windows(2)
            .all(|w| w[1].mul(&w[0]).map(|m| m.is_zero()).unwrap_or(false));
    let positions = (0..dims.len())
        .map(|p| Position {
            label: labels[p].clone(),
            dim: dims[p],
            image: if p == 0 { 0 } else { ranks[p - 1] },
            kernel: if p < maps.len() {
                dims[p] - ranks[p]
            } else {
                dims[p]
            },
        })
        .collect();
    SequenceReport { positions, complex }
}

/// Matrix with the given columns; `rows x 0` when there are none.
fn columns(cols: &[Vec<Rational>], rows: usize) -> RationalMatrix {
    if cols.is_empty() {
        RationalMatrix::zeros(rows, 0)
    } else {
        RationalMatrix::from_columns(cols, rows).expect("uniform")
    }
}

/// Checks that `0 -> W -> H^1 -> ... -> H^n -> 0`, with maps induced by
/// `/\ phi`, is exact. `phi` is in the tableau's own coordinates.
pub fn quillen_exactness_check(t: &Tableau, phi: &[Rational]) -> Result<SequenceReport> {
    let (n, r) = (t.n(), t.r());
    if phi.len() != n {
        return Err(Error::Dimension("phi must have length n".into()));
    }
    if rank_one_fiber(t, phi)?.dim() > 0 {
        return Err(Error::Characteristic("phi is characteristic".into()));
    }
    let spaces: Vec<WedgeSpace> = (0..=n).map(|k| WedgeSpace::new(r, n, k)).collect();
    let images: Vec<Subspace> = (0..=n)
        .map(|k| {
            if k == 0 {
                Subspace::zero(r)
            } else {
                delta_image(t, k, &spaces[k])
            }
        })
        .collect();
    let mut dims = vec![r];
    let mut labels = vec!["W".to_string()];
    for k in 1..=n {
        dims.push(spaces[k].dim() - images[k].dim());
        labels.push(format!("H^{k}"));
    }
    let mut well_defined = true;
    let wedge_phi = |k: usize, v: &[Rational]| -> Vec<Rational> {
        // v in W (x) /\^k, returns v /\ phi in W (x) /\^{k+1}.
        let mut out = vec![Rational::zero(); spaces[k + 1].dim()];
        for a in 0..r {
            for (p, set) in spaces[k].sets.iter().enumerate() {
                let c = &v[a * spaces[k].sets.len() + p];
                if c.is_zero() {
                    continue;
                }
                for (i, f) in phi.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    if let Some((sign, s2)) = wedge_one(i, set, false) {
                        out[spaces[k + 1].coord(a, &s2)] +=
                            c * f * Rational::from_integer(sign.into());
                    }
                }
            }
        }
        out
    };
    let mut maps = Vec::new();
    for k in 0..n {
        // Domain basis: W itself for k = 0, otherwise free coordinates of H^k.
        let domain: Vec<usize> = if k == 0 {
            (0..r).collect()
        } else {
            images[k].free_coordinates()
        };
        let cols: Vec<Vec<Rational>> = domain
            .iter()
            .map(|&p| {
                let e = unit(spaces[k].dim(), p);
                images[k + 1].quotient_coords(&wedge_phi(k, &e))
            })
            .collect();
        if k > 0 {
            for v in images[k].basis() {
                if !images[k + 1].contains(&wedge_phi(k, v)) {
                    well_defined = false;
                }
            }
        }
        maps.push(columns(&cols, dims[k + 1]));
    }
    Ok(chain_report(labels, &dims, &maps, well_defined))
}

/// `w` with `pi = w (x) phi`, if it exists and is nonzero.
fn rank_one_factor(pi: &RationalMatrix, phi: &[Rational]) -> Option<Vec<Rational>> {
    let j = phi.iter().position(|x| !x.is_zero())?;
    let w: Vec<Rational> = (0..pi.rows()).map(|a| &pi[(a, j)] / &phi[j]).collect();
    if outer(&w, phi) == *pi && w.iter().any(|x| !x.is_zero()) {
        Some(w)
    } else {
        None
    }
}

/// `{w : w (x) xi in A}` for `xi` in the tableau's coordinates.
pub fn rank_one_fiber(t: &Tableau, xi: &[Rational]) -> Result<Subspace> {
    let (n, r) = (t.n(), t.r());
    if xi.len() != n {
        return Err(Error::Dimension("covector length".into()));
    }
    // Columns of w -> w (x) xi in flattened coordinates, reduced modulo A.
    let a = t.subspace();
    let cols: Vec<Vec<Rational>> = (0..r)
        .map(|k| a.reduce(outer(&unit(r, k), xi).as_slice()))
        .collect();
    Ok(Subspace::span(r, &columns(&cols, r * n).kernel()))
}

/// Checks exactness of `0 -> W (x) S^2 U' -> H^1 (x) U' -> H^2` in frame
/// coordinates, where `U'` is spanned by `u^{l+1..n}`.
pub fn guillemin_sequence_check(t: &Tableau, f: &Frame) -> Result<SequenceReport> {
    let tt = f.transform(t)?;
    let (n, r) = (tt.n(), tt.r());
    let l = f.character_index();
    let tail: Vec<usize> = (l..n).collect();
    let m = tail.len();
    let sym: Vec<(usize, usize)> = (0..m).flat_map(|x| (x..m).map(move |y| (x, y))).collect();
    let a_sub = tt.subspace();
    let h1 = a_sub.free_coordinates();
    let sp2 = WedgeSpace::new(r, n, 2);
    let img2 = delta_image(&tt, 2, &sp2);
    let h2_dim = sp2.dim() - img2.dim();
    // Coordinates of H^1 (x) U': (position in h1, position in tail).
    let mid = h1.len() * m;
    let mid_index = |p: usize, y: usize| p * m + y;
    let h1_pos: BTreeMap<usize, usize> = h1.iter().enumerate().map(|(q, &p)| (p, q)).collect();
    // iota: z_a (x) u^x u^y -> classes of z_a (x) u^x (x) u^y (+ swap).
    let mut iota_cols = Vec::new();
    for a in 0..r {
        for &(x, y) in &sym {
            let mut v = vec![Rational::zero(); mid];
            let pairs = if x == y {
                vec![(x, y)]
            } else {
                vec![(x, y), (y, x)]
            };
            for (p1, p2) in pairs {
                let e = unit(r * n, a * n + tail[p1]);
                let q = a_sub.reduce(&e);
                for (&p, &qi) in &h1_pos {
                    if !q[p].is_zero() {
                        v[mid_index(qi, p2)] += &q[p];
                    }
                }
            }
            iota_cols.push(v);
        }
    }
    // delta-bar: [z_a (x) u^i] (x) u^y -> class of z_a (x) u^i /\ u^y.
    let mut delta_cols = Vec::new();
    for &p in &h1 {
        let (a, i) = (p / n, p % n);
        for &y in &tail {
            let mut v = vec![Rational::zero(); sp2.dim()];
            if let Some((sign, set)) = wedge_one(y, &[i], false) {
                v[sp2.coord(a, &set)] += Rational::from_integer(sign.into());
            }
            delta_cols.push(img2.quotient_coords(&v));
        }
    }
    let dims = [r * sym.len(), mid, h2_dim];
    let maps = [columns(&iota_cols, mid), columns(&delta_cols, h2_dim)];
    let labels = vec![
        "W(x)S2U'".to_string(),
        "H1(x)U'".to_string(),
        "H2".to_string(),
    ];
    let mut rep = chain_report(labels, &dims, &maps, true);
    // The sequence is only claimed exact up to H2; drop the last position.
    rep.positions.pop();
    Ok(rep)
}

/// Outcome of the rank-one prolongation checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankOneProlongReport {
    pub forward_checked: usize,
    pub forward_passed: usize,
    pub backward_checked: usize,
    pub backward_passed: usize,
}

impl RankOneProlongReport {
    pub fn passed(&self) -> bool {
        self.forward_checked == self.forward_passed && self.backward_checked == self.backward_passed
    }
}

/// Whether `c (x) xi` (coefficients `c` in `A`) lies in `A(1)`.
pub fn in_prolongation(t: &Tableau, c: &[Rational], xi: &[Rational]) -> bool {
    let d = delta_matrix(t);
    let v: Vec<Rational> = c
        .iter()
        .flat_map(|ck| xi.iter().map(move |x| ck * x))
        .collect();
    d.rows.is_empty()
        || d.matrix
            .mul_vec(&v)
            .expect("length")
            .iter()
            .all(Zero::is_zero)
}

/// For rank-one samples `w (x) xi` (standard coordinates), checks
/// `(w (x) xi) (x) xi` lies in `A(1)`; conversely, for each sampled `xi`,
/// every `pi` with `pi (x) xi` in `A(1)` must be `w (x) xi` with `w (x) xi` in `A`.
pub fn rank1_prolong_check(
    t: &Tableau,
    samples: &[(Vec<Rational>, Vec<Rational>)],
) -> Result<RankOneProlongReport> {
    let mut rep = RankOneProlongReport::default();
    let d = delta_matrix(t);
    for (w, xi) in samples {
        let pi = outer(w, xi);
        rep.forward_checked += 1;
        if let Ok(c) = t.coordinates(&pi) {
            if t.contains(&pi) && in_prolongation(t, &c, xi) {
                rep.forward_passed += 1;
            }
        }
        // Backward: kernel of c -> delta(c (x) xi).
        let s = t.dim();
        let cols: Vec<Vec<Rational>> = (0..s)
            .map(|k| {
                let v: Vec<Rational> = (0..s)
                    .flat_map(|kk| {
                        xi.iter()
                            .map(move |x| if kk == k { x.clone() } else { Rational::zero() })
                    })
                    .collect();
                if d.rows.is_empty() {
                    Vec::new()
                } else {
                    d.matrix.mul_vec(&v).expect("length")
                }
            })
            .collect();
        let kernel = if d.rows.is_empty() {
            (0..s).map(|k| unit(s, k)).collect()
        } else {
            columns(&cols, d.rows.len()).kernel()
        };
        for c in kernel {
            rep.backward_checked += 1;
            let pi = t.element(&c);
            if rank_one_factor(&pi, xi).is_some() {
                rep.backward_passed += 1;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::gallery;

    #[test]
    fn hankel_prolongation_and_cohomology() {
        let t = gallery::hankel();
        let d = delta_matrix(&t);
        assert_eq!((d.matrix.rows(), d.matrix.cols()), (9, 15));
        assert_eq!(prolongation(&t).dim(), 7);
        assert_eq!(spencer_dims(&t, 2).unwrap(), vec![4, 1]);
    }

    #[test]
    fn single_entry_tableau() {
        let t = Tableau::new("e", 2, 1, vec![RationalMatrix::from_i64(&[&[1, 0]])]).unwrap();
        let d = delta_matrix(&t);
        assert_eq!((d.matrix.rows(), d.matrix.cols()), (1, 2));
        assert_eq!(prolongation(&t).dim(), 1);
    }

    #[test]
    fn full_tableau_cohomology_vanishes() {
        let t = Tableau::full(3, 2);
        assert_eq!(prolongation(&t).dim(), 2 * 6);
        assert_eq!(spencer_dims(&t, 3).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn quillen_rejects_characteristic() {
        let t = gallery::hankel();
        // xi = (1, 0, 0) is rank one: e1 (x) xi is the alpha_0 basis element.
        assert!(matches!(
            quillen_exactness_check(&t, &[rat(1), rat(0), rat(0)]),
            Err(Error::Characteristic(_))
        ));
    }

    #[test]
    fn quillen_sequences_are_exact() {
        let w = gallery::wave();
        let rep = quillen_exactness_check(&w, &[rat(1), rat(0), rat(0)]).unwrap();
        assert!(rep.exact(), "{}", rep.render());
        let h = gallery::hankel();
        let rep = quillen_exactness_check(&h, &[rat(2), rat(-3), rat(5)]).unwrap();
        assert!(rep.exact(), "{}", rep.render());
        assert_eq!(
            rep.positions.iter().map(|p| p.dim).collect::<Vec<_>>(),
            vec![3, 4, 1, 0]
        );
    }

    #[test]
    fn guillemin_sequences() {
        for t in [gallery::wave(), gallery::hankel()] {
            let f = crate::tableau::generic_frame(&t, 0).unwrap();
            let rep = guillemin_sequence_check(&t, &f).unwrap();
            assert!(rep.exact(), "{}\n{}", t.name(), rep.render());
        }
    }
}
