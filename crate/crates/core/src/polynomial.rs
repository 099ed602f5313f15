//! Integer polynomials in the grid variables x_{i,j}, face polynomials,
//! the positive parameterization and u-variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{self, check_ambient, compatibility_degree, nonfrozen_subsets, KSubset};
use crate::rat::{fmt_q, Q};
use crate::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u8>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial over Z in the (k-1)(n-k) variables x_{i,j}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    pub k: usize,
    pub n: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    pub fn nvars(&self) -> usize {
        (self.k - 1) * (self.n - self.k)
    }

    pub fn zero(k: usize, n: usize) -> Self {
        MultiPoly { k, n, terms: BTreeMap::new() }
    }

    pub fn constant(k: usize, n: usize, c: i64) -> Self {
        let mut p = Self::zero(k, n);
        if c != 0 {
            p.terms.insert(Mono(vec![0; (k - 1) * (n - k)]), BigInt::from(c));
        }
        p
    }

    pub fn one(k: usize, n: usize) -> Self {
        Self::constant(k, n, 1)
    }

    pub fn var_index(k: usize, n: usize, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i < k && j >= 1 && j <= n - k, "variable x_{{{i},{j}}} out of range");
        (i - 1) * (n - k) + (j - 1)
    }

    pub fn var(k: usize, n: usize, i: usize, j: usize) -> Self {
        let mut e = vec![0; (k - 1) * (n - k)];
        e[Self::var_index(k, n, i, j)] = 1;
        let mut p = Self::zero(k, n);
        p.terms.insert(Mono(e), BigInt::one());
        p
    }

    pub fn from_terms(k: usize, n: usize, it: impl IntoIterator<Item = (Vec<u8>, BigInt)>) -> Self {
        let mut p = Self::zero(k, n);
        for (e, c) in it {
            p.add_term(Mono(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.is_constant() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { k: self.k, n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.k, self.n);
        }
        MultiPoly { k: self.k, n: self.n, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut acc: HashMap<Vec<u8>, BigInt> = HashMap::with_capacity(self.len() * o.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e: Vec<u8> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Mono(e), c)).collect();
        MultiPoly { k: self.k, n: self.n, terms }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = Self::one(self.k, self.n);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn product<'a>(k: usize, n: usize, it: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
        it.into_iter().fold(Self::one(k, n), |acc, p| acc.mul(p))
    }

    /// Value at a point given as the flat list of x_{i,j} (row-major).
    pub fn eval(&self, x: &[Q]) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = Q::from_integer(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &x[v];
                }
            }
            total += t;
        }
        total
    }

    /// Exact division; errors when a remainder would be left.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let Some((dm, dc)) = d.leading().map(|(m, c)| (m.clone(), c.clone())) else {
            return Err(Error::NonExact("division by zero polynomial".into()));
        };
        let mut r = self.clone();
        let mut quo = Self::zero(self.k, self.n);
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) || !rc.is_multiple_of(&dc) {
                return Err(Error::NonExact(format!("{} terms left over", r.len())));
            }
            let qm = Mono(rm.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect());
            let qc = &rc / &dc;
            let mut t = Self::zero(self.k, self.n);
            t.terms.insert(qm.clone(), qc.clone());
            r = r.sub(&d.mul(&t));
            quo.add_term(qm, qc);
        }
        Ok(quo)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Vec<u8> {
        let mut g: Option<Vec<u8>> = None;
        for m in self.terms.keys() {
            g = Some(match g {
                None => m.0.clone(),
                Some(g) => g.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        g.unwrap_or_else(|| vec![0; self.nvars()])
    }

    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exponent vectors, in term order.
    pub fn exponents(&self) -> Vec<Vec<u8>> {
        self.terms.keys().map(|m| m.0.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let c = self.n - self.k;
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, x)| {
                let ex: Vec<[usize; 3]> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| [v / c + 1, v % c + 1, e as usize])
                    .collect();
                serde_json::json!({"exponents": ex, "coeff": x.to_string()})
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let c = self.n - self.k;
        let mut first = true;
        for (m, x) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let name = format!("x{}{}", v / c + 1, v % c + 1);
                    factors.push(if e == 1 { name } else { format!("{name}^{e}") });
                }
            }
            let sign = if x.is_negative() { "-" } else { "+" };
            let ax = x.abs();
            let body = match (factors.is_empty(), ax.is_one()) {
                (true, _) => ax.to_string(),
                (false, true) => factors.join("*"),
                (false, false) => format!("{}*{}", ax, factors.join("*")),
            };
            if first {
                write!(f, "{}{}", if sign == "-" { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {sign} {body}")?;
            }
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion (matrices here are at most 5 x 5).
pub fn det(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    let (k, nn) = (m[0][0].k, m[0][0].n);
    fn rec(m: &[Vec<MultiPoly>], rows: &[usize], col: usize, k: usize, n: usize) -> MultiPoly {
        if rows.len() == 1 {
            return m[rows[0]][col].clone();
        }
        let mut acc = MultiPoly::zero(k, n);
        for (t, &r) in rows.iter().enumerate() {
            if m[r][col].is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let sub = rec(m, &rest, col + 1, k, n).mul(&m[r][col]);
            acc = if t % 2 == 0 { acc.add(&sub) } else { acc.sub(&sub) };
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    Ok(rec(m, &rows, 0, k, nn))
}

pub type Vec3 = [MultiPoly; 3];

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> MultiPoly {
    let m = vec![
        vec![a[0].clone(), b[0].clone(), c[0].clone()],
        vec![a[1].clone(), b[1].clone(), c[1].clone()],
        vec![a[2].clone(), b[2].clone(), c[2].clone()],
    ];
    det(&m).expect("3x3")
}

// ---------------------------------------------------------------------------
// face polynomials

/// Sum over weakly increasing tuples a_1 <= ... <= a_m with a_l in ivs[l] of
/// x_{row0+l, a_l}, split into independent chain factors.
fn chain_factors(k: usize, n: usize, row0: usize, ivs: &[(i64, i64)]) -> Vec<MultiPoly> {
    let c = (n - k) as i64;
    let ivs: Vec<(i64, i64)> = ivs.iter().map(|&(lo, hi)| (lo.max(1), hi.min(c))).collect();
    if ivs.iter().any(|&(lo, hi)| lo > hi) {
        return vec![MultiPoly::zero(k, n)];
    }
    let mut out = Vec::new();
    let mut start = 0;
    while start < ivs.len() {
        let mut end = start + 1;
        while end < ivs.len() && ivs[end - 1].1 > ivs[end].0 {
            end += 1;
        }
        out.push(weakly_increasing_sum(k, n, row0 + start, &ivs[start..end]));
        start = end;
    }
    out
}

fn weakly_increasing_sum(k: usize, n: usize, row0: usize, ivs: &[(i64, i64)]) -> MultiPoly {
    let nv = (k - 1) * (n - k);
    let mut terms = Vec::new();
    let mut cur = vec![0u8; nv];
    fn rec(
        l: usize,
        prev: i64,
        ivs: &[(i64, i64)],
        k: usize,
        n: usize,
        row0: usize,
        cur: &mut Vec<u8>,
        terms: &mut Vec<(Vec<u8>, BigInt)>,
    ) {
        if l == ivs.len() {
            terms.push((cur.clone(), BigInt::one()));
            return;
        }
        let (lo, hi) = ivs[l];
        for a in lo.max(prev)..=hi {
            let v = MultiPoly::var_index(k, n, row0 + l, a as usize);
            cur[v] += 1;
            rec(l + 1, a, ivs, k, n, row0, cur, terms);
            cur[v] -= 1;
        }
    }
    rec(0, 1, ivs, k, n, row0, &mut cur, &mut terms);
    MultiPoly::from_terms(k, n, terms)
}

/// Staircase data of tau_J: the first row and the index intervals.
/// J may repeat its first entry (as in tau_{3367}).
pub fn tau_staircase(j: &[usize]) -> (usize, Vec<(i64, i64)>) {
    let mut s = 0;
    while s < j.len() && j[s] == s + 1 {
        s += 1;
    }
    let jp: Vec<i64> = j[s..].iter().map(|&x| (x - s) as i64).collect();
    let m = jp.len();
    let mut ivs = Vec::new();
    if m >= 2 {
        for l in 1..m {
            let lo = jp[l - 1] - l as i64;
            let hi = if l < m - 1 { jp[l] - l as i64 } else { jp[l] - (l as i64 + 1) };
            ivs.push((lo, hi));
        }
    }
    (s + 1, ivs)
}

fn check_tau_input(j: &[usize], k: usize, n: usize) -> Result<()> {
    check_ambient(k, n)?;
    let ok = j.len() == k
        && j[0] >= 1
        && j[k - 1] <= n
        && j.windows(2).enumerate().all(|(t, w)| w[0] < w[1] || (t == 0 && w[0] == w[1]));
    if !ok {
        return Err(Error::BadSubset(format!("tau index {j:?} for ({k},{n})")));
    }
    Ok(())
}

/// tau_J as a list of factors (product of the chain polynomials).
pub fn tau_factors(j: &[usize], k: usize, n: usize) -> Result<Vec<MultiPoly>> {
    check_tau_input(j, k, n)?;
    let (row0, ivs) = tau_staircase(j);
    Ok(chain_factors(k, n, row0, &ivs))
}

pub fn tau(j: &KSubset) -> MultiPoly {
    let f = tau_factors(j.elems(), j.k(), j.n()).expect("valid subset");
    MultiPoly::product(j.k(), j.n(), &f)
}

/// Numeric tau by dynamic programming over the staircase.
pub fn tau_eval(j: &[usize], k: usize, n: usize, x: &[Q]) -> Q {
    let (row0, ivs) = tau_staircase(j);
    let c = (n - k) as i64;
    // dp[a] = sum over tuples ending at column a
    let mut dp: Vec<Q> = vec![Q::zero(); c as usize + 2];
    let mut first = true;
    for (l, &(lo, hi)) in ivs.iter().enumerate() {
        let (lo, hi) = (lo.max(1), hi.min(c));
        let mut next = vec![Q::zero(); c as usize + 2];
        let mut run = Q::zero();
        for a in 1..=c {
            if !first {
                run += &dp[a as usize];
            }
            if a >= lo && a <= hi {
                let base = if first { Q::one() } else { run.clone() };
                let v = MultiPoly::var_index(k, n, row0 + l, a as usize);
                next[a as usize] = base * &x[v];
            }
        }
        dp = next;
        first = false;
    }
    if first {
        return Q::one();
    }
    dp.iter().fold(Q::zero(), |acc, t| acc + t)
}

/// P_i (row sums) and Q_j (sums over monotone 0/1 shifts), as in the PK potential.
pub fn pk_factors(k: usize, n: usize) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    check_ambient(k, n)?;
    let p = (1..k)
        .map(|i| (1..=n - k).fold(MultiPoly::zero(k, n), |acc, j| acc.add(&MultiPoly::var(k, n, i, j))))
        .collect();
    let qs = (1..n - k)
        .map(|j| {
            let mut acc = MultiPoly::zero(k, n);
            // t = (0,..,0,1,..,1) with `ones` trailing ones
            for ones in 0..k {
                let mut t = MultiPoly::one(k, n);
                for i in 1..k {
                    let shift = usize::from(i + ones >= k);
                    t = t.mul(&MultiPoly::var(k, n, i, j + shift));
                }
                acc = acc.add(&t);
            }
            acc
        })
        .collect();
    Ok((p, qs))
}

/// Whether (i,J) indexes a planar face.
pub fn planar_face_admissible(i: usize, j: &[usize], k: usize, n: usize) -> bool {
    let m = j.len();
    m >= 2
        && m <= k
        && i >= 1
        && i + m <= k + 1
        && j.windows(2).all(|w| w[0] < w[1])
        && j[0] >= 1
        && j[m - 1] + k <= n - 2 + m
}

/// Index intervals of the planar face: summand l sits on row i+l-1.
pub fn planar_face_intervals(j: &[usize]) -> Vec<(i64, i64)> {
    (1..j.len()).map(|l| ((j[l - 1] - (l - 1)) as i64, (j[l] - (l - 1)) as i64)).collect()
}

pub fn delta(i: usize, j: &[usize], k: usize, n: usize) -> Result<MultiPoly> {
    check_ambient(k, n)?;
    if !planar_face_admissible(i, j, k, n) {
        return Err(Error::Inadmissible(format!("planar face ({i},{j:?}) for ({k},{n})")));
    }
    Ok(weakly_increasing_sum(k, n, i, &planar_face_intervals(j)))
}

/// All admissible planar-face indices (i,J).
pub fn planar_face_indices(k: usize, n: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for m in 2..=k {
        let top = n - 2 - (k - m);
        if top < m {
            continue;
        }
        for i in 1..=k - m + 1 {
            for s in combinat::all_subsets_raw(m, top) {
                out.push((i, s));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// positive parameterization

/// Sum over weakly increasing (a_i..a_{k-1}) in [1,j] of prod x_{r,a_r}.
pub fn bcfw_entry(i: usize, j: usize, k: usize, n: usize) -> MultiPoly {
    let ivs = vec![(1i64, j as i64); k - i];
    weakly_increasing_sum(k, n, i, &ivs)
}

/// k x n matrix [I_k | M]; row r of M carries the sign (-1)^{k-r}, last row all ones.
pub fn bcfw_matrix(k: usize, n: usize) -> Result<Vec<Vec<MultiPoly>>> {
    check_ambient(k, n)?;
    let mut m = vec![vec![MultiPoly::zero(k, n); n]; k];
    for r in 0..k {
        m[r][r] = MultiPoly::one(k, n);
    }
    for j in 1..=n - k {
        for i in 1..k {
            let e = bcfw_entry(i, j, k, n);
            m[i - 1][k + j - 1] = if (k - i) % 2 == 0 { e } else { e.neg() };
        }
        m[k - 1][k + j - 1] = MultiPoly::one(k, n);
    }
    Ok(m)
}

pub fn plucker(j: &[usize], m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let sub: Vec<Vec<MultiPoly>> = m.iter().map(|row| j.iter().map(|&c| row[c - 1].clone()).collect()).collect();
    det(&sub)
}

fn column(m: &[Vec<MultiPoly>], c: usize) -> Result<Vec3> {
    if m.len() != 3 || c == 0 || c > m[0].len() {
        return Err(Error::Inadmissible(format!("column {c} of a {}-row matrix", m.len())));
    }
    Ok([m[0][c - 1].clone(), m[1][c - 1].clone(), m[2][c - 1].clone()])
}

/// X_{(a,b),(c,d),(e,f)} = det(u_a x u_b, u_c x u_d, u_e x u_f).
pub fn compound_x(m: &[Vec<MultiPoly>], pairs: [(usize, usize); 3]) -> Result<MultiPoly> {
    let v: Vec<Vec3> =
        pairs.iter().map(|&(a, b)| Ok(cross(&column(m, a)?, &column(m, b)?))).collect::<Result<_>>()?;
    Ok(det3(&v[0], &v[1], &v[2]))
}

/// A_{ijk} = det((u1 x u2) x (ui x ui+1), uj, (uj+1 x uj+2) x (uk x u1)).
pub fn compound_a(m: &[Vec<MultiPoly>], i: usize, j: usize, k: usize) -> Result<MultiPoly> {
    let u = |c| column(m, c);
    let a = cross(&cross(&u(1)?, &u(2)?), &cross(&u(i)?, &u(i + 1)?));
    let c = cross(&cross(&u(j + 1)?, &u(j + 2)?), &cross(&u(k)?, &u(1)?));
    Ok(det3(&a, &u(j)?, &c))
}

/// The resolved minor for k = 3 on the given 3 x n matrix.
pub fn resolved_minor(j: &KSubset, m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    if j.k() != 3 {
        return Err(Error::Inadmissible(format!("resolved minors need k=3, got {j}")));
    }
    let n = j.n();
    let [i, jj, kk] = [j.elems()[0], j.elems()[1], j.elems()[2]];
    if i == 1 {
        return plucker(j.elems(), m);
    }
    let (num, den) = if jj == n - 1 {
        (compound_x(m, [(1, 2), (i, i + 1), (n - 1, n)])?, plucker(&[1, 2, i + 1], m)?)
    } else {
        let d = plucker(&[1, 2, i + 1], m)?.mul(&plucker(&[1, jj + 1, jj + 2], m)?);
        (compound_a(m, i, jj, kk)?, d)
    };
    num.div_exact(&den).map_err(|e| Error::NonExact(format!("resolved minor {j}: {e}")))
}

/// Subsets J having a lexicographically smaller I with (I,J) noncrossing
/// but not weakly separated.
pub fn lexicographic_resolution_set(k: usize, n: usize) -> Result<Vec<KSubset>> {
    let nf = nonfrozen_subsets(k, n)?;
    Ok(nf
        .iter()
        .filter(|j| nf.iter().any(|i| i < *j && combinat::is_noncrossing(i, j) && !combinat::is_weakly_separated(i, j)))
        .cloned()
        .collect())
}

// ---------------------------------------------------------------------------
// rational functions kept as products of factors

/// scalar * prod num_i^e / prod den_i^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRatio {
    pub k: usize,
    pub n: usize,
    pub scalar: Q,
    pub num: Vec<(MultiPoly, u32)>,
    pub den: Vec<(MultiPoly, u32)>,
}

impl FactoredRatio {
    pub fn new(k: usize, n: usize, num: Vec<MultiPoly>, den: Vec<MultiPoly>) -> Result<Self> {
        let mut r = FactoredRatio {
            k,
            n,
            scalar: Q::one(),
            num: num.into_iter().map(|p| (p, 1)).collect(),
            den: den.into_iter().map(|p| (p, 1)).collect(),
        };
        r.normalize()?;
        Ok(r)
    }

    pub fn one(k: usize, n: usize) -> Self {
        FactoredRatio { k, n, scalar: Q::one(), num: Vec::new(), den: Vec::new() }
    }

    /// Splits off monomial and integer content, makes each factor primitive
    /// with positive leading coefficient, and cancels identical factors.
    pub fn normalize(&mut self) -> Result<()> {
        let mut tally: BTreeMap<MultiPoly, i64> = BTreeMap::new();
        let mut scalar = self.scalar.clone();
        for (side, list) in [(1i64, std::mem::take(&mut self.num)), (-1, std::mem::take(&mut self.den))] {
            for (p, e) in list {
                if p.is_zero() {
                    return Err(Error::ZeroDenominator("zero factor in a ratio".into()));
                }
                let (c, parts) = canonical_parts(&p);
                let ce = Q::from_integer(c).pow(e as i32);
                scalar = if side > 0 { scalar * ce } else { scalar / ce };
                for f in parts {
                    *tally.entry(f).or_insert(0) += side * e as i64;
                }
            }
        }
        self.scalar = scalar;
        for (f, e) in tally {
            match e.cmp(&0) {
                Ordering::Greater => self.num.push((f, e as u32)),
                Ordering::Less => self.den.push((f, (-e) as u32)),
                Ordering::Equal => {}
            }
        }
        Ok(())
    }

    pub fn mul(&self, o: &FactoredRatio) -> Result<FactoredRatio> {
        let mut r = FactoredRatio {
            k: self.k,
            n: self.n,
            scalar: &self.scalar * &o.scalar,
            num: self.num.iter().chain(&o.num).cloned().collect(),
            den: self.den.iter().chain(&o.den).cloned().collect(),
        };
        r.normalize()?;
        Ok(r)
    }

    pub fn pow(&self, e: u32) -> FactoredRatio {
        FactoredRatio {
            k: self.k,
            n: self.n,
            scalar: self.scalar.pow(e as i32),
            num: self.num.iter().map(|(p, x)| (p.clone(), x * e)).collect(),
            den: self.den.iter().map(|(p, x)| (p.clone(), x * e)).collect(),
        }
    }

    pub fn inv(&self) -> FactoredRatio {
        FactoredRatio {
            k: self.k,
            n: self.n,
            scalar: Q::one() / &self.scalar,
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn expand_num(&self) -> MultiPoly {
        expand(self.k, self.n, &self.num)
    }

    pub fn expand_den(&self) -> MultiPoly {
        expand(self.k, self.n, &self.den)
    }

    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        let mut v = self.scalar.clone();
        for (p, e) in &self.num {
            v *= p.eval(x).pow(*e as i32);
        }
        for (p, e) in &self.den {
            let d = p.eval(x);
            if d.is_zero() {
                return Err(Error::ZeroDenominator(p.to_string()));
            }
            v /= d.pow(*e as i32);
        }
        Ok(v)
    }

    /// Exact equality by one cross-multiplied comparison after cancellation.
    pub fn equals(&self, o: &FactoredRatio) -> Result<bool> {
        let q = self.mul(&o.inv())?;
        let (s_num, s_den) = (q.scalar.numer().clone(), q.scalar.denom().clone());
        Ok(q.expand_num().scale(&s_num) == q.expand_den().scale(&s_den))
    }

    /// Checks self + o == 1 symbolically.
    pub fn sums_to_one(&self, o: &FactoredRatio) -> Result<bool> {
        // a N1/D1 + b N2/D2 = 1 with the common part G of D1, D2 pulled out
        let d1: BTreeMap<MultiPoly, u32> = self.den.iter().cloned().collect();
        let d2: BTreeMap<MultiPoly, u32> = o.den.iter().cloned().collect();
        let mut g = Vec::new();
        let mut r1 = Vec::new();
        let mut r2 = Vec::new();
        for (p, &e1) in &d1 {
            let e2 = d2.get(p).copied().unwrap_or(0);
            let c = e1.min(e2);
            if c > 0 {
                g.push((p.clone(), c));
            }
            if e1 > c {
                r1.push((p.clone(), e1 - c));
            }
        }
        for (p, &e2) in &d2 {
            let e1 = d1.get(p).copied().unwrap_or(0);
            if e2 > e1.min(e2) {
                r2.push((p.clone(), e2 - e1.min(e2)));
            }
        }
        let (k, n) = (self.k, self.n);
        let (r1e, r2e) = (expand(k, n, &r1), expand(k, n, &r2));
        let den = self.scalar.denom() * o.scalar.denom();
        let a = self.scalar.numer() * o.scalar.denom();
        let b = o.scalar.numer() * self.scalar.denom();
        let lhs = self.expand_num().mul(&r2e).scale(&a).add(&o.expand_num().mul(&r1e).scale(&b));
        let rhs = expand(k, n, &g).mul(&r1e).mul(&r2e).scale(&den);
        Ok(lhs == rhs)
    }

    pub fn to_string_pretty(&self) -> String {
        let side = |l: &[(MultiPoly, u32)]| {
            if l.is_empty() {
                return "1".to_string();
            }
            l.iter()
                .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
                .collect::<Vec<_>>()
                .join("*")
        };
        format!("{} * {} / {}", fmt_q(&self.scalar), side(&self.num), side(&self.den))
    }
}

fn expand(k: usize, n: usize, l: &[(MultiPoly, u32)]) -> MultiPoly {
    l.iter().fold(MultiPoly::one(k, n), |acc, (p, e)| acc.mul(&p.pow(*e)))
}

/// Integer content (sign included) and the remaining factors: one per variable
/// in the monomial content plus the primitive remainder when it is not constant.
fn canonical_parts(p: &MultiPoly) -> (BigInt, Vec<MultiPoly>) {
    let (k, n) = (p.k, p.n);
    let mc = p.monomial_content();
    let mut c = p.integer_content();
    if p.leading().map(|(_, x)| x.is_negative()).unwrap_or(false) {
        c = -c;
    }
    let rest_terms = p.terms.iter().map(|(m, x)| {
        let e: Vec<u8> = m.0.iter().zip(&mc).map(|(a, b)| a - b).collect();
        (e, x / &c)
    });
    let rest = MultiPoly::from_terms(k, n, rest_terms);
    let mut parts = Vec::new();
    let cols = n - k;
    for (v, &e) in mc.iter().enumerate() {
        for _ in 0..e {
            parts.push(MultiPoly::var(k, n, v / cols + 1, v % cols + 1));
        }
    }
    if !rest.is_constant() {
        parts.push(rest);
    }
    (c, parts)
}

// ---------------------------------------------------------------------------
// u-variables and binary identities

/// Index data for u_J: numerator and denominator tau indices.
pub fn u_indices(j: &KSubset) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    if j.is_frozen() {
        return Err(Error::Frozen(j.to_string()));
    }
    let (k, n) = (j.k(), j.n());
    let e = j.elems().to_vec();
    let mut r = 0;
    while r < k && e[k - 1 - r] == n - r {
        r += 1;
    }
    let p = k - r;
    let plus = |v: &[usize]| {
        let mut w = v.to_vec();
        w[0] += 1;
        w
    };
    if p == 1 {
        return Ok((vec![plus(&e)], vec![e]));
    }
    let mut jq: Vec<usize> = e[..p - 1].to_vec();
    for t in 1..=r + 1 {
        jq.push(e[p - 1] + t);
    }
    Ok((vec![plus(&e), jq.clone()], vec![e.clone(), plus(&jq)]))
}

pub fn u_variable(j: &KSubset) -> Result<FactoredRatio> {
    let (k, n) = (j.k(), j.n());
    let (nu, de) = u_indices(j)?;
    let mut num = Vec::new();
    let mut den = Vec::new();
    for t in &nu {
        num.extend(tau_factors(t, k, n)?);
    }
    for t in &de {
        den.extend(tau_factors(t, k, n)?);
    }
    FactoredRatio::new(k, n, num, den)
}

pub fn u_eval(j: &KSubset, x: &[Q]) -> Result<Q> {
    let (k, n) = (j.k(), j.n());
    let (nu, de) = u_indices(j)?;
    let mut v = Q::one();
    for t in &nu {
        v *= tau_eval(t, k, n, x);
    }
    for t in &de {
        let d = tau_eval(t, k, n, x);
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!("tau{t:?}")));
        }
        v /= d;
    }
    Ok(v)
}

/// The subsets I crossing J with their compatibility degrees.
pub fn crossing_exponents(j: &KSubset) -> Result<Vec<(KSubset, u32)>> {
    let mut out = Vec::new();
    for i in nonfrozen_subsets(j.k(), j.n())? {
        let c = compatibility_degree(&i, j)?;
        if c > 0 {
            out.push((i, c));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityMode {
    Symbolic,
    Random { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub j: KSubset,
    pub mode: IdentityMode,
    pub pass: bool,
    pub witness: Option<Vec<Q>>,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        let mode = match &self.mode {
            IdentityMode::Symbolic => serde_json::json!("symbolic"),
            IdentityMode::Random { trials, seed } => serde_json::json!({"random": {"trials": trials, "seed": seed}}),
        };
        let witness = self.witness.as_ref().map(|w| w.iter().map(fmt_q).collect::<Vec<_>>());
        serde_json::json!({"J": self.j.to_string(), "mode": mode, "pass": self.pass, "witness": witness})
    }
}

/// Positive integers in [1, 10^6]; integer points keep tau values integral.
pub fn random_point(nvars: usize, rng: &mut ChaCha8Rng) -> Vec<Q> {
    (0..nvars).map(|_| Q::from_integer(BigInt::from(rng.gen_range(1..=1_000_000)))).collect()
}

/// u_J + prod_I u_I^{c(I,J)} = 1.
pub fn binary_identity_check(j: &KSubset, mode: &IdentityMode) -> Result<Verdict> {
    Ok(binary_identity_checks(std::slice::from_ref(j), mode)?.remove(0))
}

/// The binary identity for several J of one ambient; random mode shares the
/// sample points (and the u-values at them) across all J.
pub fn binary_identity_checks(js: &[KSubset], mode: &IdentityMode) -> Result<Vec<Verdict>> {
    let Some(first) = js.first() else { return Ok(Vec::new()) };
    let (k, n) = (first.k(), first.n());
    if js.iter().any(|j| (j.k(), j.n()) != (k, n)) {
        return Err(Error::Dimension("mixed ambients in one identity batch".into()));
    }
    let cross: Vec<Vec<(KSubset, u32)>> = js.iter().map(crossing_exponents).collect::<Result<_>>()?;
    match mode {
        IdentityMode::Symbolic => js
            .iter()
            .zip(&cross)
            .map(|(j, cr)| {
                let uj = u_variable(j)?;
                let mut prod = FactoredRatio::one(k, n);
                for (i, c) in cr {
                    prod = prod.mul(&u_variable(i)?.pow(*c))?;
                }
                let pass = uj.sums_to_one(&prod)?;
                Ok(Verdict { j: j.clone(), mode: mode.clone(), pass, witness: None })
            })
            .collect(),
        IdentityMode::Random { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let nv = (k - 1) * (n - k);
            let nf = nonfrozen_subsets(k, n)?;
            let mut out: Vec<Verdict> =
                js.iter().map(|j| Verdict { j: j.clone(), mode: mode.clone(), pass: true, witness: None }).collect();
            for _ in 0..*trials {
                // positive integer point: every tau is a positive integer
                let x = random_point(nv, &mut rng);
                let mut taus: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
                let mut u: BTreeMap<&KSubset, (BigInt, BigInt)> = BTreeMap::new();
                for s in &nf {
                    let (nu, de) = u_indices(s)?;
                    let mut val = |t: &Vec<usize>| {
                        taus.entry(t.clone()).or_insert_with(|| tau_eval(t, k, n, &x).to_integer()).clone()
                    };
                    let a = nu.iter().fold(BigInt::one(), |acc, t| acc * val(t));
                    let b = de.iter().fold(BigInt::one(), |acc, t| acc * val(t));
                    if b.is_zero() {
                        return Err(Error::ZeroDenominator(format!("u{s} at a positive point")));
                    }
                    u.insert(s, (a, b));
                }
                for (v, cr) in out.iter_mut().zip(&cross) {
                    if !v.pass {
                        continue;
                    }
                    let (mut pn, mut pd) = (BigInt::one(), BigInt::one());
                    for (i, c) in cr {
                        let (a, b) = &u[i];
                        pn *= a.pow(*c);
                        pd *= b.pow(*c);
                    }
                    let (a, b) = &u[&v.j];
                    if a * &pd + &pn * b != b * &pd {
                        v.pass = false;
                        v.witness = Some(x.clone());
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Minor ratios whose BCFW values are x_{i,j}/sum_l x_{i,l}, keyed by (i,j).
pub fn root_potential_ratios(k: usize, n: usize) -> Result<Vec<((usize, usize), Vec<Vec<usize>>, Vec<Vec<usize>>)>> {
    let table = match (k, n) {
        (3, 6) => crate::data::ROOT_RATIOS_36,
        (4, 8) => crate::data::ROOT_RATIOS_48,
        _ => return Err(Error::Inadmissible(format!("no minor-ratio table for ({k},{n})"))),
    };
    let parse = |s: &str| -> Vec<Vec<usize>> {
        s.split_whitespace().map(|t| t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).collect()
    };
    Ok(table.iter().map(|&(i, j, nu, de)| ((i, j), parse(nu), parse(de))).collect())
}

/// Every displayed minor ratio equals x_{i,j} / P_i on the BCFW matrix.
pub fn root_potential_check(k: usize, n: usize) -> Result<Vec<((usize, usize), bool)>> {
    let m = bcfw_matrix(k, n)?;
    let (ps, _) = pk_factors(k, n)?;
    let mut out = Vec::new();
    for ((i, j), nu, de) in root_potential_ratios(k, n)? {
        let num = nu.iter().map(|c| plucker(c, &m)).collect::<Result<Vec<_>>>()?;
        let den = de.iter().map(|c| plucker(c, &m)).collect::<Result<Vec<_>>>()?;
        let lhs = FactoredRatio::new(k, n, num, den)?;
        let rhs = FactoredRatio::new(k, n, vec![MultiPoly::var(k, n, i, j)], vec![ps[i - 1].clone()])?;
        out.push(((i, j), lhs.equals(&rhs)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn x(k: usize, n: usize, i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(k, n, i, j)
    }

    fn sum(ps: &[MultiPoly]) -> MultiPoly {
        ps.iter().skip(1).fold(ps[0].clone(), |a, b| a.add(b))
    }

    #[test]
    fn ring_basics() {
        let (a, b) = (x(2, 4, 1, 1), x(2, 4, 1, 2));
        let lhs = a.add(&b).mul(&a.sub(&b));
        assert_eq!(lhs, a.mul(&a).sub(&b.mul(&b)));
        let id = vec![
            vec![MultiPoly::one(2, 4), MultiPoly::zero(2, 4)],
            vec![MultiPoly::zero(2, 4), MultiPoly::one(2, 4)],
        ];
        assert_eq!(det(&id).unwrap(), MultiPoly::one(2, 4));
        assert_eq!(a.add(&b).eval(&[q(1), q(1)]), q(2));
        assert_eq!(lhs.div_exact(&a.add(&b)).unwrap(), a.sub(&b));
        assert!(lhs.div_exact(&a).is_err());
    }

    #[test]
    fn tau_examples() {
        let (k, n) = (3, 7);
        for kk in 3..=6 {
            assert_eq!(tau(&KSubset::of(n, &[1, 2, kk])), MultiPoly::one(k, n));
        }
        for j in 3..=5 {
            for kk in j + 1..=6 {
                let t = tau(&KSubset::of(n, &[1, j, kk]));
                let want = sum(&(j - 2..=kk - 3).map(|a| x(k, n, 2, a)).collect::<Vec<_>>());
                assert_eq!(t, want, "tau 1{j}{kk}");
            }
        }
        let t = tau(&KSubset::of(8, &[2, 3, 7, 8]));
        let x = |i, j| x(4, 8, i, j);
        let first = sum(&[
            x(1, 1).mul(&x(2, 1)),
            x(1, 1).mul(&x(2, 2)),
            x(1, 2).mul(&x(2, 2)),
            x(1, 1).mul(&x(2, 3)),
            x(1, 2).mul(&x(2, 3)),
            x(1, 1).mul(&x(2, 4)),
            x(1, 2).mul(&x(2, 4)),
        ]);
        assert_eq!(t, first.mul(&x(3, 4)));
    }

    #[test]
    fn tau_236() {
        let x = |i, j| x(3, 6, i, j);
        let want = sum(&[
            x(1, 1).mul(&x(2, 1)),
            x(1, 1).mul(&x(2, 2)),
            x(1, 2).mul(&x(2, 2)),
            x(1, 1).mul(&x(2, 3)),
            x(1, 2).mul(&x(2, 3)),
        ]);
        assert_eq!(tau(&KSubset::of(6, &[2, 3, 6])), want);
    }

    #[test]
    fn tau_eval_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (k, n) in [(3, 7), (4, 8)] {
            let pt = random_point((k - 1) * (n - k), &mut rng);
            for j in nonfrozen_subsets(k, n).unwrap() {
                assert_eq!(tau(&j).eval(&pt), tau_eval(j.elems(), k, n, &pt), "{j}");
            }
        }
    }

    #[test]
    fn pk_factor_examples() {
        let (p, qs) = pk_factors(3, 6).unwrap();
        let x = |i, j| x(3, 6, i, j);
        assert_eq!(p[0], sum(&[x(1, 1), x(1, 2), x(1, 3)]));
        assert_eq!(qs[0], sum(&[x(1, 1).mul(&x(2, 1)), x(1, 1).mul(&x(2, 2)), x(1, 2).mul(&x(2, 2))]));
        let (_, q5) = pk_factors(5, 9).unwrap();
        assert!(q5.iter().all(|qq| qq.len() == 5));
    }

    #[test]
    fn delta_examples() {
        let x3 = |i, j| x(3, 6, i, j);
        assert_eq!(
            delta(1, &[1, 2, 3], 3, 6).unwrap(),
            sum(&[x3(1, 1).mul(&x3(2, 1)), x3(1, 1).mul(&x3(2, 2)), x3(1, 2).mul(&x3(2, 2))])
        );
        let x4 = |i, j| x(4, 8, i, j);
        assert_eq!(
            delta(2, &[1, 2, 4], 4, 8).unwrap(),
            sum(&[
                x4(2, 1).mul(&x4(3, 1)),
                x4(2, 1).mul(&x4(3, 2)),
                x4(2, 1).mul(&x4(3, 3)),
                x4(2, 2).mul(&x4(3, 2)),
                x4(2, 2).mul(&x4(3, 3)),
            ])
        );
        assert!(delta(3, &[1, 2, 4], 4, 8).is_err());
        assert_eq!(planar_face_indices(3, 6).len(), 10);
    }

    #[test]
    fn bcfw_entries() {
        let x = |i, j| x(4, 9, i, j);
        assert_eq!(bcfw_entry(3, 4, 4, 9), sum(&[x(3, 1), x(3, 2), x(3, 3), x(3, 4)]));
        assert_eq!(
            bcfw_entry(1, 2, 4, 9),
            sum(&[
                x(1, 1).mul(&x(2, 1)).mul(&x(3, 1)),
                x(1, 1).mul(&x(2, 1)).mul(&x(3, 2)),
                x(1, 1).mul(&x(2, 2)).mul(&x(3, 2)),
                x(1, 2).mul(&x(2, 2)).mul(&x(3, 2)),
            ])
        );
    }

    #[test]
    fn plucker_examples() {
        let m = bcfw_matrix(3, 6).unwrap();
        assert_eq!(plucker(&[1, 2, 3], &m).unwrap(), MultiPoly::one(3, 6));
        let x = |i, j| x(3, 6, i, j);
        let p356 = sum(&[x(1, 2).mul(&x(2, 1)), x(1, 3).mul(&x(2, 1)), x(1, 3).mul(&x(2, 2))]).mul(&x(2, 3));
        assert_eq!(plucker(&[3, 5, 6], &m).unwrap(), p356);
    }

    #[test]
    fn factored_ratio_cancels() {
        let a = x(3, 6, 1, 1).add(&x(3, 6, 1, 2));
        let r = FactoredRatio::new(3, 6, vec![a.mul(&x(3, 6, 2, 1))], vec![a.scale(&BigInt::from(-2))]).unwrap();
        assert_eq!(r.scalar, Q::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(r.num, vec![(x(3, 6, 2, 1), 1)]);
        assert!(r.den.is_empty());
    }

    #[test]
    fn u236_normal_form() {
        let u = u_variable(&KSubset::of(6, &[2, 3, 6])).unwrap();
        let x = |i, j| x(3, 6, i, j);
        let want = FactoredRatio::new(
            3,
            6,
            vec![x(1, 1).add(&x(1, 2)), x(2, 2).add(&x(2, 3))],
            vec![tau(&KSubset::of(6, &[2, 3, 6]))],
        )
        .unwrap();
        assert_eq!(u, want);
    }

    #[test]
    fn small_identities() {
        for e in [[1, 2, 4], [1, 3, 5], [2, 4, 6]] {
            let j = KSubset::of(6, &e);
            assert!(binary_identity_check(&j, &IdentityMode::Symbolic).unwrap().pass, "{j}");
            let r = binary_identity_check(&j, &IdentityMode::Random { trials: 3, seed: 1 }).unwrap();
            assert!(r.pass);
        }
    }
}
