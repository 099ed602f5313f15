//! Exact rational simplex method (two phase, Bland's rule).
//!
//! Problems are in standard form: minimize c.x subject to A x = b, x >= 0.

use num_traits::{One, Signed, Zero};

use crate::linalg::Mat;
use crate::rat::Q;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Q, x: Vec<Q> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows 0..m constraints, each of width cols+1 (last is rhs)
    t: Mat,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.t[r][c];
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pr = self.t[r].clone();
        for i in 0..self.t.len() {
            if i != r && !self.t[i][c].is_zero() {
                let f = self.t[i][c].clone();
                for (x, y) in self.t[i].iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Q], allowed: usize) -> Vec<Q> {
        (0..allowed)
            .map(|j| {
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !self.t[r][j].is_zero() && !cost[b].is_zero() {
                        d -= &cost[b] * &self.t[r][j];
                    }
                }
                d
            })
            .collect()
    }

    /// Runs simplex on columns 0..allowed; returns false if unbounded.
    fn run(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            let d = self.reduced_costs(cost, allowed);
            let Some(c) = (0..allowed).find(|&j| d[j].is_negative()) else { return true };
            let mut best: Option<(Q, usize, usize)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][c];
                if a.is_positive() {
                    let ratio = &self.t[r][self.cols] / a;
                    let b = self.basis[r];
                    let better = match &best {
                        None => true,
                        Some((q, _, bb)) => ratio < *q || (ratio == *q && b < *bb),
                    };
                    if better {
                        best = Some((ratio, r, b));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Minimizes c.x subject to A x = b, x >= 0.
pub fn minimize(c: &[Q], a: &Mat, b: &[Q]) -> LpOutcome {
    let m = a.len();
    let nv = c.len();
    let cols = nv + m;
    let mut t: Mat = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|x| if neg { -x.clone() } else { x.clone() }).collect();
        row.extend((0..m).map(|j| if j == i { Q::one() } else { Q::zero() }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (nv..nv + m).collect(), cols };
    let mut c1 = vec![Q::zero(); cols];
    for x in c1.iter_mut().skip(nv) {
        *x = Q::one();
    }
    tab.run(&c1, cols);
    let infeas: Q = tab.basis.iter().enumerate().filter(|(_, &bv)| bv >= nv).map(|(r, _)| tab.t[r][cols].clone()).sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis where possible, drop redundant rows
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= nv {
            if let Some(j) = (0..nv).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
                r += 1;
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
            }
        } else {
            r += 1;
        }
    }
    let mut c2 = c.to_vec();
    c2.resize(cols, Q::zero());
    if !tab.run(&c2, nv) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); nv];
    for (r, &bv) in tab.basis.iter().enumerate() {
        x[bv] = tab.t[r][cols].clone();
    }
    let value = crate::linalg::dot(c, &x);
    LpOutcome::Optimal { value, x }
}

/// Whether p is a convex combination of pts.
pub fn in_convex_hull(pts: &[Vec<Q>], p: &[Q]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let d = p.len();
    let mut a: Mat = (0..d).map(|i| pts.iter().map(|v| v[i].clone()).collect()).collect();
    a.push(vec![Q::one(); pts.len()]);
    let mut b = p.to_vec();
    b.push(Q::one());
    !matches!(minimize(&vec![Q::zero(); pts.len()], &a, &b), LpOutcome::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| q(a)).collect()
    }

    #[test]
    fn small_lp() {
        // min -x - y, x + y + s = 4, x + 3y + t = 6
        let a = vec![v(&[1, 1, 1, 0]), v(&[1, 3, 0, 1])];
        match minimize(&v(&[-1, -1, 0, 0]), &a, &v(&[4, 6])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-4)),
            o => panic!("{o:?}"),
        }
        let a = vec![v(&[1, -1])];
        assert_eq!(minimize(&v(&[-1, 0]), &a, &v(&[0])), LpOutcome::Unbounded);
        let a = vec![v(&[1, 1])];
        assert_eq!(minimize(&v(&[0, 0]), &a, &v(&[-1])), LpOutcome::Infeasible);
    }

    #[test]
    fn hull_membership() {
        let sq = vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2]), v(&[2, 2])];
        assert!(in_convex_hull(&sq, &v(&[1, 1])));
        assert!(in_convex_hull(&sq, &v(&[2, 0])));
        assert!(!in_convex_hull(&sq, &v(&[3, 1])));
    }
}
