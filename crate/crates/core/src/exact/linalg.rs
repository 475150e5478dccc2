//! Exact Gaussian elimination over the rationals.

use super::ring::{int, Rational, Ring};
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = int(1) / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// A basis of the right kernel, one vector per free column (free entry set to 1).
pub fn kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![int(0); cols];
            v[free] = int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Unique solution of `a x = b`; rejects rank-deficient or inconsistent systems.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return Err(Error::Singular("inconsistent system".into()));
    }
    if pivots.len() < n {
        return Err(Error::Singular(format!(
            "rank {} for {} unknowns",
            pivots.len(),
            n
        )));
    }
    Ok((0..n).map(|i| aug[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solves_two_by_two() {
        let a = vec![row(&[2, 1]), row(&[1, 3])];
        let x = solve(&a, &row(&[3, 5])).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }

    #[test]
    fn detects_singular_and_inconsistent() {
        let a = vec![row(&[1, 2]), row(&[2, 4])];
        assert!(solve(&a, &row(&[1, 2])).is_err());
        assert!(solve(&a, &row(&[1, 3])).is_err());
    }

    #[test]
    fn overdetermined_consistent() {
        let a = vec![row(&[1, 0]), row(&[0, 1]), row(&[1, 1])];
        assert_eq!(solve(&a, &row(&[1, 2, 3])).unwrap(), row(&[1, 2]));
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&[row(&[1, 1, 1])]);
        assert_eq!(k.len(), 2);
        for v in k {
            let s: Rational = v.iter().sum();
            assert_eq!(s, int(0));
        }
    }
}
