//! Dense exact linear algebra over the rationals.
//!
//! Pivot choice is deterministic everywhere: the first nonzero entry,
//! scanning columns left to right and rows top to bottom. Kernel bases
//! are read off the reduced row echelon form with one vector per free
//! column, so equal inputs always produce equal outputs.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Renders `p` or `p/q` in lowest terms.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a vector as `(a, b, c)`.
pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Integer convenience constructor. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(&r).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(row, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by integer Bareiss elimination after clearing row denominators.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            a.push(
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect(),
            );
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = if n == 0 {
            BigInt::one()
        } else {
            a[n - 1][n - 1].clone()
        };
        Ok(Rational::new(sign * d, scale))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.matrix.columns(n..2 * n))
    }

    /// One solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix[(row, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    /// `[[a, b], [c, d]]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// A subspace of `Q^dim` kept as fully reduced echelon rows.
///
/// The normal form of a vector is its residue after eliminating pivot
/// coordinates; it is zero exactly on members and its free coordinates
/// give coordinates in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            s.insert(&unit(ambient, i));
        }
        s
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis, pivots increasing.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; these index a basis of the quotient.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Quotient coordinates of `v`: its normal form read at free coordinates.
    pub fn quotient_coords(&self, v: &[Rational]) -> Vec<Rational> {
        let r = self.reduce(v);
        self.free_coordinates()
            .into_iter()
            .map(|j| r[j].clone())
            .collect()
    }

    /// Adds `v`; returns false when it was already a member.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j; solve [U | -W] (a, b) = 0.
        let n = self.ambient;
        let k = self.dim();
        let mut cols: Vec<Vec<Rational>> = self.rows.clone();
        cols.extend(
            other
                .rows
                .iter()
                .map(|w| w.iter().map(|x| -x.clone()).collect()),
        );
        if cols.is_empty() {
            return Subspace::zero(n);
        }
        let m = RationalMatrix::from_columns(&cols, n).expect("equal lengths");
        let vecs: Vec<Vec<Rational>> = m
            .kernel()
            .into_iter()
            .map(|c| combine(&self.rows, &c[..k], n))
            .collect();
        Subspace::span(n, &vecs)
    }
}

/// Standard basis vector.
pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `sum c_i v_i` for vectors of length `n`.
pub fn combine(vectors: &[Vec<Rational>], coeffs: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Least common multiple of denominators times `v`, divided by the gcd of
/// the numerators, with the first nonzero entry made positive.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x * &sign / &g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows)
    }

    #[test]
    fn hilbert_inverse_is_exact() {
        let h = RationalMatrix::from_rows(
            &(0..3)
                .map(|i| (0..3).map(|j| ratio(1, i + j + 1)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let inv = h.inverse().unwrap();
        assert_eq!(h.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(inv[(0, 0)], rat(9));
        assert_eq!(inv[(1, 1)], rat(192));
        assert_eq!(h.det().unwrap(), ratio(1, 2160));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn non_square_det_is_rejected() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.det(), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert_eq!(a.inverse(), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn det_needs_row_swap() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.det().unwrap(), rat(-1));
        let b = m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(b.det().unwrap(), rat(-6));
    }

    #[test]
    fn singular_inverse_and_inconsistent_solve() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert_eq!(a.solve(&[rat(1), rat(2)]), Err(Error::Inconsistent));
        assert_eq!(a.solve(&[rat(2), rat(2)]).unwrap(), vec![rat(2), rat(0)]);
    }

    #[test]
    fn subspace_normal_form_and_quotient() {
        let s = Subspace::span(
            3,
            &[vec![rat(1), rat(1), rat(0)], vec![rat(2), rat(2), rat(0)]],
        );
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[rat(3), rat(3), rat(0)]));
        assert!(!s.contains(&[rat(1), rat(0), rat(0)]));
        assert_eq!(s.free_coordinates(), vec![1, 2]);
        assert_eq!(
            s.quotient_coords(&[rat(1), rat(0), rat(5)]),
            vec![rat(-1), rat(5)]
        );
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[unit(3, 0), unit(3, 1)]);
        let b = Subspace::span(3, &[unit(3, 1), unit(3, 2)]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&unit(3, 1)));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&ratio(4, -6)), "-2/3");
    }

    #[test]
    fn primitive_vector() {
        let v = primitive(&[ratio(-1, 2), rat(0), ratio(3, 4)]);
        assert_eq!(v, vec![rat(2), rat(0), rat(-3)]);
    }
}
