//! Exact Gaussian elimination over `Q(eta)`.

use crate::error::{Error, Result};
use crate::rational::RationalFunction;

/// Solves `a * x = b` for a unique `x`. `a` is row-major with `cols` columns.
pub fn solve(mut a: Vec<Vec<RationalFunction>>, mut b: Vec<RationalFunction>, cols: usize) -> Result<Vec<RationalFunction>> {
    let rows = a.len();
    debug_assert_eq!(b.len(), rows);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // simplest nonzero pivot keeps intermediate degrees down
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| cost(&a[i][c]))
        else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv()?;
        for k in c..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                if !a[r][k].is_zero() {
                    a[i][k] = &a[i][k] - &(&f * &a[r][k]);
                }
            }
            b[i] = &b[i] - &(&f * &b[r]);
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if let Some(i) = (r..rows).find(|&i| !b[i].is_zero()) {
        return Err(Error::InconsistentSystem(format!(
            "equation {i} reduces to 0 = {}",
            b[i]
        )));
    }
    if pivots.len() < cols {
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        return Err(Error::SingularSystem(format!("free columns {free:?}")));
    }
    let mut x = vec![RationalFunction::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = b[row].clone();
    }
    Ok(x)
}

fn cost(f: &RationalFunction) -> usize {
    f.numer().term_count() + f.denom().term_count() + f.denom().degree().unwrap_or(0)
}
