//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lex monomials, so the
//! rendered form of a polynomial is canonical: terms by descending total
//! degree, ties broken lexicographically with `v0 > v1 > ...`.

mod det;
mod parse;
mod univariate;

pub use det::poly_det;
pub use parse::parse_poly;
pub use univariate::{rational_roots, squarefree_decomposition, sturm_count, UniPoly};

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, Rational};

/// Ordered variable names shared by polynomials of one ring.
#[derive(Clone, Debug)]
pub struct VarTable(Arc<Vec<String>>);

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    /// `prefix0, prefix1, ...` starting from `start`.
    pub fn indexed(prefix: &str, start: usize, count: usize) -> Self {
        Self::new((start..start + count).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarTable {}

/// Exponent vector ordered graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    fn checked_div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over a [`VarTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: VarTable,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(vars: &VarTable) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The `i`th variable.
    pub fn var(vars: &VarTable, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::term(vars, Monomial(e), Rational::one())
    }

    pub fn term(vars: &VarTable, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "monomial arity");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `sum c_i v_i` for a coefficient vector over the variables.
    pub fn linear(vars: &VarTable, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                p.terms.insert(Monomial(e), c.clone());
            }
        }
        p
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that occur with nonzero exponent, increasing.
    pub fn used_variables(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// Common degree in the given variables if every term agrees.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut d = None;
        for m in self.terms.keys() {
            let e: u32 = vars.iter().map(|&i| m.0[i]).sum();
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        d
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarTableMismatch(format!(
                "[{}] vs [{}]",
                self.vars.names().join(","),
                other.vars.names().join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / d`; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check(d)?;
        let (lm, lc) = d.leading_term().ok_or(Error::InexactDivision)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(&lm).ok_or(Error::InexactDivision)?;
            let t = Self::term(&self.vars, qm, c / &lc);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Normalizes sign so the leading coefficient is positive.
    pub fn positive(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Evaluates at a full assignment (one value per variable).
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} variables",
                values.len(),
                self.vars.len()
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates at a named assignment; every variable must be present.
    pub fn eval_named(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let full = self
            .vars
            .names()
            .iter()
            .map(|n| {
                values
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::MissingVariable(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval(&full)
    }

    /// Substitutes a value for one variable.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2.0[var], 0);
            out.add_term(m2, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Re-expresses the polynomial over `target`, mapping variables by name.
    pub fn to_table(&self, target: &VarTable) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::VarTableMismatch(n.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Canonical text with explicit `*` and `^`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn fmt_monomial(vars: &VarTable, m: &Monomial) -> String {
    let parts: Vec<String> =
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars.name(i).to_string()
                } else {
                    format!("{}^{e}", vars.name(i))
                }
            })
            .collect();
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(&self.vars, m);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            /// Panics on mismatched variable tables; see the `checked_` form.
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs)
                    .expect("polynomials from different rings")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Reduces a list of polynomials to a linearly independent one with the
/// same linear span: Gauss-Jordan on coefficient vectors indexed by the
/// monomials present, leading monomials descending. Zero inputs vanish.
pub fn linear_interreduce(polys: &[MPoly]) -> Result<Vec<MPoly>> {
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    let vars = first.vars.clone();
    for p in polys {
        first.check(p)?;
    }
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect();
    let r = crate::exactlin::RationalMatrix::from_rows(&rows)?.rref();
    Ok((0..r.rank())
        .map(|i| {
            let mut p = MPoly::zero(&vars);
            for (j, m) in monos.iter().enumerate() {
                p.add_term(m.clone(), r.matrix[(i, j)].clone());
            }
            p
        })
        .collect())
}
