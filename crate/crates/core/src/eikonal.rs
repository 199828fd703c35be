//! Poisson brackets of phase-space polynomials and a degree-bounded
//! closure probe for modules generated by eikonal observables.
//!
//! Phase space over `n` base coordinates has variables `x1..xn` followed
//! by `p1..pn`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactlin::{Rational, RationalMatrix};
use crate::par::Execution;
use crate::polyring::{MPoly, Monomial, VarTable};

/// Default x-degree bound for [`closure_probe`].
pub const DEFAULT_BOUND: u32 = 3;

/// Variables `x1..xn, p1..pn`.
pub fn phase_space(n: usize) -> VarTable {
    VarTable::new(
        (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("p{i}"))),
    )
}

fn halves(f: &MPoly) -> Result<usize> {
    let k = f.vars().len();
    if !k.is_multiple_of(2) {
        return Err(Error::VarTableMismatch(
            "phase space needs an even number of variables".into(),
        ));
    }
    Ok(k / 2)
}

/// `{F, G} = sum_i (dF/dp_i dG/dx_i - dG/dp_i dF/dx_i)`.
pub fn poisson_bracket(f: &MPoly, g: &MPoly) -> Result<MPoly> {
    if f.vars() != g.vars() {
        return Err(Error::VarTableMismatch(
            "observables from different phase spaces".into(),
        ));
    }
    let n = halves(f)?;
    let mut acc = MPoly::zero(f.vars());
    for i in 0..n {
        let a = &f.derivative(n + i) * &g.derivative(i);
        let b = &g.derivative(n + i) * &f.derivative(i);
        acc = &(&acc + &a) - &b;
    }
    Ok(acc)
}

/// Outcome for one pair of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub i: usize,
    pub j: usize,
    pub bracket: MPoly,
    /// Coefficients `g` with `{F_i, F_j} = sum g_k F_k`, if found at the bound.
    pub member: Option<Vec<MPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub bound: u32,
    pub generators: Vec<MPoly>,
    pub pairs: Vec<PairVerdict>,
}

impl ClosureReport {
    /// Every bracket lies in the module at this bound.
    pub fn closed(&self) -> bool {
        self.pairs.iter().all(|p| p.member.is_some())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "x-degree bound: {}", self.bound);
        for (k, g) in self.generators.iter().enumerate() {
            let _ = writeln!(out, "F{} = {}", k + 1, g);
        }
        for p in &self.pairs {
            let _ = writeln!(out, "{{F{}, F{}}} = {}", p.i + 1, p.j + 1, p.bracket);
            match &p.member {
                Some(g) => {
                    let terms: Vec<String> = g
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| format!("({c})*F{}", k + 1))
                        .collect();
                    let rhs = if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join(" + ")
                    };
                    let _ = writeln!(out, "  member: {rhs}");
                }
                None => {
                    let _ = writeln!(out, "  not a member at this bound");
                }
            }
        }
        let verdict = if self.closed() {
            "closed"
        } else {
            "not closed at this bound"
        };
        let _ = writeln!(out, "verdict: {verdict}");
        out
    }
}

fn monomials_up_to(vars: &[usize], nvars: usize, max_degree: u32) -> Vec<Monomial> {
    (0..=max_degree)
        .flat_map(|d| monomials_of_degree(vars, nvars, d))
        .collect()
}

fn monomials_of_degree(vars: &[usize], nvars: usize, degree: u32) -> Vec<Monomial> {
    fn go(vars: &[usize], left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(Monomial::from_exponents(e.clone()));
                }
            }
            Some((&v, rest)) => {
                for k in (0..=left).rev() {
                    e[v] = k;
                    go(rest, left - k, e, out);
                }
                e[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    go(vars, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Tests whether `target = sum g_k F_k` with `g_k` of x-degree at most
/// `bound` and p-degree making each product homogeneous.
pub fn module_membership(target: &MPoly, gens: &[MPoly], bound: u32) -> Result<Option<Vec<MPoly>>> {
    let vars = target.vars().clone();
    let n = halves(target)?;
    if target.is_zero() {
        return Ok(Some(gens.iter().map(|_| MPoly::zero(&vars)).collect()));
    }
    let ps: Vec<usize> = (n..2 * n).collect();
    let xs: Vec<usize> = (0..n).collect();
    let dt = target
        .homogeneous_degree_in(&ps)
        .ok_or_else(|| Error::Precondition("bracket is not homogeneous in p".into()))?;
    // Columns: (generator, multiplier monomial).
    let mut cols: Vec<(usize, Monomial, MPoly)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let dg = g.homogeneous_degree_in(&ps).expect("checked by caller");
        if dg > dt {
            continue;
        }
        for mx in monomials_up_to(&xs, 2 * n, bound) {
            for mp in monomials_of_degree(&ps, 2 * n, dt - dg) {
                let e: Vec<u32> = mx
                    .exponents()
                    .iter()
                    .zip(mp.exponents())
                    .map(|(a, b)| a + b)
                    .collect();
                let m = Monomial::from_exponents(e);
                let prod = &MPoly::term(&vars, m.clone(), Rational::from_integer(1.into())) * g;
                cols.push((k, m, prod));
            }
        }
    }
    if cols.is_empty() {
        return Ok(None);
    }
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for m in target
        .terms()
        .map(|(m, _)| m)
        .chain(cols.iter().flat_map(|(_, _, p)| p.terms().map(|(m, _)| m)))
    {
        let next = index.len();
        index.entry(m.clone()).or_insert(next);
    }
    let mut a = RationalMatrix::zeros(index.len(), cols.len());
    for (j, (_, _, p)) in cols.iter().enumerate() {
        for (m, c) in p.terms() {
            a[(index[m], j)] = c.clone();
        }
    }
    let mut b = vec![Rational::from_integer(0.into()); index.len()];
    for (m, c) in target.terms() {
        b[index[m]] = c.clone();
    }
    match a.solve(&b) {
        Ok(c) => {
            let mut g: Vec<MPoly> = gens.iter().map(|_| MPoly::zero(&vars)).collect();
            for ((k, m, _), x) in cols.iter().zip(c) {
                g[*k] = &g[*k] + &MPoly::term(&vars, m.clone(), x);
            }
            Ok(Some(g))
        }
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Brackets every pair of generators and tests module membership.
pub fn closure_probe(generators: &[MPoly], bound: u32) -> Result<ClosureReport> {
    closure_probe_with(generators, bound, Execution::default())
}

pub fn closure_probe_with(
    generators: &[MPoly],
    bound: u32,
    exec: Execution,
) -> Result<ClosureReport> {
    if let Some(first) = generators.first() {
        let n = halves(first)?;
        let ps: Vec<usize> = (n..2 * n).collect();
        for (k, g) in generators.iter().enumerate() {
            if g.vars() != first.vars() {
                return Err(Error::VarTableMismatch("generators".into()));
            }
            if g.is_zero() || g.homogeneous_degree_in(&ps).is_none() {
                return Err(Error::Precondition(format!(
                    "generator {} is not homogeneous in p",
                    k + 1
                )));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..generators.len())
        .flat_map(|i| (i + 1..generators.len()).map(move |j| (i, j)))
        .collect();
    let verdicts = exec.map(pairs.len(), |k| -> Result<PairVerdict> {
        let (i, j) = pairs[k];
        let bracket = poisson_bracket(&generators[i], &generators[j])?;
        let member = module_membership(&bracket, generators, bound)?;
        Ok(PairVerdict {
            i,
            j,
            bracket,
            member,
        })
    });
    Ok(ClosureReport {
        bound,
        generators: generators.to_vec(),
        pairs: verdicts.into_iter().collect::<Result<_>>()?,
    })
}
