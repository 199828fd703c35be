use super::MPoly;
use crate::error::{Error, Result};

/// Determinant of a square polynomial matrix.
///
/// Cofactor expansion up to 4x4; larger matrices use fraction-free
/// Bareiss elimination with exact polynomial division.
pub fn poly_det(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Err(Error::Dimension("empty polynomial matrix".into()));
    }
    let vars = m[0][0].vars().clone();
    for e in m.iter().flatten() {
        if e.vars() != &vars {
            return Err(Error::VarTableMismatch("matrix entries".into()));
        }
    }
    if n <= 4 {
        Ok(cofactor(m))
    } else {
        bareiss(m.to_vec())
    }
}

fn cofactor(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MPoly::zero(m[0][0].vars());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = &m[0][j] * &cofactor(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn bareiss(mut a: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let mut negate = false;
    let mut prev = MPoly::one(&vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(MPoly::zero(&vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = MPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}
