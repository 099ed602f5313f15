//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rat::Q;
use crate::{Error, Result};

pub type Mat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for i in 0..n {
        m[i][i] = Q::one();
    }
    m
}

pub fn transpose(m: &Mat) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &Mat, v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc + x * y })
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {x : m x = 0}, one vector per free column, in column order.
pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn det(m: &Mat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let piv = a[c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &piv[c];
                for j in c..n {
                    if !piv[j].is_zero() {
                        let t = &f * &piv[j];
                        a[i][j] -= t;
                    }
                }
            }
        }
    }
    d
}

pub fn inverse(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let mut a: Mat = m.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::Singular(format!("{n}x{n} inverse")));
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves m x = b for a matrix with independent columns; errors if inconsistent.
pub fn solve(m: &Mat, b: &[Q]) -> Result<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Mat = m.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let piv = rref(&mut a);
    if piv.contains(&cols) {
        return Err(Error::Singular("inconsistent system".into()));
    }
    if piv.len() < cols {
        return Err(Error::Singular("dependent columns".into()));
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&a), q(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_err());
        assert_eq!(det(&identity(4)), q(1));
    }

    #[test]
    fn null_and_solve() {
        let a = m(&[&[1, 1, 1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(mat_vec(&a, v), vec![q(0)]);
        }
        let b = m(&[&[1, 0], &[0, 2], &[1, 1]]);
        assert_eq!(solve(&b, &[q(1), q(4), q(3)]).unwrap(), vec![q(1), q(2)]);
        assert!(solve(&b, &[q(1), q(4), q(0)]).is_err());
        assert_eq!(rank(&b), 2);
    }
}
