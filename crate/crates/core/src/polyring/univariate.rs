use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial, VarTable};
use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix};

/// Dense univariate polynomial, coefficients from degree 0 upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - c`
    pub fn linear_root(c: Rational) -> Self {
        Self::new(vec![-c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&RationalMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.leading();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, x) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * x;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree factorization by Yun's algorithm: monic factors with
    /// their multiplicities, multiplicity increasing.
    pub fn squarefree(&self) -> Vec<(UniPoly, u32)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let b_next = b.div_rem(&a).0;
            let c_next = d.div_rem(&a).0;
            d = c_next.sub(&b_next.derivative());
            if a.degree() > 0 {
                out.push((a, i));
            }
            b = b_next;
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return Self::constant(Rational::one());
        }
        self.div_rem(&self.gcd(&self.derivative())).0.monic()
    }

    fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        seq
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_roots_between(&self, a: &Rational, b: &Rational) -> usize {
        if self.degree() == 0 || a >= b {
            return 0;
        }
        let p = self.squarefree_part();
        let seq = p.sturm_sequence();
        let sign = |x: &Rational, q: &UniPoly| -> i8 {
            let v = q.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        };
        let va = Self::variations(seq.iter().map(|q| sign(a, q)));
        let vb = Self::variations(seq.iter().map(|q| sign(b, q)));
        let at_b = usize::from(p.eval(b).is_zero());
        va - vb - at_b
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let seq = self.squarefree_part().sturm_sequence();
        let lead_sign = |q: &UniPoly, neg: bool| {
            let s: i8 = if q.leading().is_positive() { 1 } else { -1 };
            if neg && q.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        };
        let vm = Self::variations(seq.iter().map(|q| lead_sign(q, true)));
        let vp = Self::variations(seq.iter().map(|q| lead_sign(q, false)));
        vm - vp
    }

    /// Distinct rational roots, increasing.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let p = self.squarefree_part();
        let l = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            let k = ints
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero polynomial");
            ints.drain(..k);
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonempty").abs();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    for s in [1, -1] {
                        let q = Rational::new(&num * BigInt::from(s), den.clone());
                        if p.eval(&q).is_zero() && !roots.contains(&q) {
                            roots.push(q);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// `det(t I - M)` by the Faddeev-LeVerrier recurrence.
    pub fn charpoly(m: &RationalMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut mk = RationalMatrix::zeros(n, n);
        for k in 1..=n {
            mk = m
                .mul(&mk)?
                .add(&RationalMatrix::identity(n).scale(&c[n - k + 1]))?;
            let am = m.mul(&mk)?;
            let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &am[(i, i)]);
            c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        }
        Ok(Self::new(c))
    }

    /// As a polynomial in variable `var` of `vars`.
    pub fn to_mpoly(&self, vars: &VarTable, var: usize) -> MPoly {
        let mut p = MPoly::zero(vars);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[var] = i as u32;
            p = &p + &MPoly::term(vars, Monomial::from_exponents(e), c.clone());
        }
        p
    }

    /// Reads a polynomial in at most one variable; returns the variable
    /// index, or `None` for constants.
    pub fn from_mpoly(p: &MPoly) -> Result<(Self, Option<usize>)> {
        let used = p.used_variables();
        if used.len() > 1 {
            return Err(Error::NotUnivariate);
        }
        let var = used.first().copied();
        let deg = var.map_or(0, |v| p.degree_in(v)) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            let e = var.map_or(0, |v| m.exponents()[v]) as usize;
            coeffs[e] = c.clone();
        }
        Ok((Self::new(coeffs), var))
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let e = n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly(&VarTable::new(["t"]), 0))
    }
}

/// Squarefree decomposition of a polynomial in at most one variable.
pub fn squarefree_decomposition(p: &MPoly) -> Result<Vec<(MPoly, u32)>> {
    let (u, var) = UniPoly::from_mpoly(p)?;
    Ok(match var {
        None => Vec::new(),
        Some(v) => u
            .squarefree()
            .into_iter()
            .map(|(f, k)| (f.to_mpoly(p.vars(), v), k))
            .collect(),
    })
}

/// Distinct real roots in the open interval `(a, b)`.
pub fn sturm_count(p: &MPoly, a: &Rational, b: &Rational) -> Result<usize> {
    Ok(UniPoly::from_mpoly(p)?.0.count_roots_between(a, b))
}

/// Distinct rational roots, increasing.
pub fn rational_roots(p: &MPoly) -> Result<Vec<Rational>> {
    Ok(UniPoly::from_mpoly(p)?.0.rational_roots())
}
