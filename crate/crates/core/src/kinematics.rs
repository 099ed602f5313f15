//! Kinematic space K(k,n), the planar basis eta_J, distinguished points,
//! octahedral commutators, the (3,n) shift and noncrossing amplitudes.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinat::{self, check_ambient, is_noncrossing, is_weakly_separated, KSubset};
use crate::data;
use crate::linalg::{self, Mat};
use crate::rat::{fmt_q, parse_q, q, Q};
use crate::roots::{gamma_hat, GridVector};
use crate::{Error, Result};

/// A linear functional on R^{binom(n,k)}, read on K(k,n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KinFunctional {
    pub k: usize,
    pub n: usize,
    pub coeffs: BTreeMap<KSubset, Q>,
}

impl KinFunctional {
    pub fn zero(k: usize, n: usize) -> Self {
        KinFunctional { k, n, coeffs: BTreeMap::new() }
    }

    /// sum of c * s_J over (c, J).
    pub fn from_s_terms(k: usize, n: usize, terms: &[(i64, &[usize])]) -> Self {
        let mut f = Self::zero(k, n);
        for (c, j) in terms {
            f.add_term(&KSubset::of(n, j), &q(*c));
        }
        f
    }

    pub fn add_term(&mut self, j: &KSubset, c: &Q) {
        let e = self.coeffs.entry(j.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(j);
        }
    }

    pub fn add(&self, o: &KinFunctional) -> KinFunctional {
        let mut f = self.clone();
        for (j, c) in &o.coeffs {
            f.add_term(j, c);
        }
        f
    }

    pub fn scale(&self, c: &Q) -> KinFunctional {
        let mut f = Self::zero(self.k, self.n);
        for (j, x) in &self.coeffs {
            f.add_term(j, &(x * c));
        }
        f
    }

    pub fn sub(&self, o: &KinFunctional) -> KinFunctional {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn eval(&self, p: &KinPoint) -> Q {
        self.coeffs.iter().fold(Q::zero(), |s, (j, c)| match p.values.get(j) {
            Some(v) => s + c * v,
            None => s,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> =
            self.coeffs.iter().map(|(j, c)| (j.to_string(), fmt_q(c).into())).collect();
        serde_json::json!({"k": self.k, "n": self.n, "s": m})
    }
}

/// A point of R^{binom(n,k)} by its s-values (absent entries are zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KinPoint {
    pub k: usize,
    pub n: usize,
    pub values: BTreeMap<KSubset, Q>,
}

impl KinPoint {
    pub fn get(&self, j: &KSubset) -> Q {
        self.values.get(j).cloned().unwrap_or_else(Q::zero)
    }

    /// Momentum conservation: every label's s-values sum to zero.
    pub fn in_kinematic_space(&self) -> bool {
        (1..=self.n).all(|a| self.values.iter().filter(|(j, _)| j.contains(a)).map(|(_, v)| v).sum::<Q>().is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> =
            self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(j, c)| (j.to_string(), fmt_q(c).into())).collect();
        serde_json::json!({"k": self.k, "n": self.n, "s": m})
    }
}

/// Reads {"eta": {...}} or {"s": {...}} with rational strings.
pub fn parse_values(n: usize, obj: &serde_json::Map<String, serde_json::Value>) -> Result<BTreeMap<KSubset, Q>> {
    obj.iter()
        .map(|(key, v)| {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(x) => x.to_string(),
                _ => return Err(Error::Parse(format!("value for {key}"))),
            };
            Ok((KSubset::parse(n, key)?, parse_q(&s)?))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// heights and the planar basis

/// L_t(x) = sum_{m=1}^{n-1} m x_{t+m}, labels cyclic, x indexed 1..n (x[0] unused).
pub fn l_functional(t: usize, x: &[i64], n: usize) -> i64 {
    (1..n).map(|m| m as i64 * x[(t + m - 1) % n + 1]).sum()
}

/// -(1/n) min_t L_t(v - u) for integer points u, v indexed 1..n.
pub fn rho_height(u: &[i64], v: &[i64], n: usize) -> Q {
    let d: Vec<i64> = (0..=n).map(|a| if a == 0 { 0 } else { v[a] - u[a] }).collect();
    let m = (1..=n).map(|t| l_functional(t, &d, n)).min().unwrap();
    Q::new((-m).into(), (n as i64).into())
}

fn indicator(n: usize, j: &[usize]) -> Vec<i64> {
    let mut x = vec![0; n + 1];
    for &a in j {
        x[a] += 1;
    }
    x
}

/// eta_u(s) = sum_I rho_u(e_I) s_I for an integer point u (indexed 1..n).
pub fn eta_at_point(k: usize, n: usize, u: &[i64]) -> KinFunctional {
    let mut f = KinFunctional::zero(k, n);
    for i in combinat::all_subsets(k, n) {
        let h = rho_height(u, &indicator(n, i.elems()), n);
        if !h.is_zero() {
            f.coeffs.insert(i, h);
        }
    }
    f
}

pub fn eta_functional(j: &KSubset) -> KinFunctional {
    eta_at_point(j.k(), j.n(), &indicator(j.n(), j.elems()))
}

/// A fixed basis of K(k,n) with the planar-basis change of coordinates.
pub struct KinBasis {
    pub k: usize,
    pub n: usize,
    pub subsets: Vec<KSubset>,
    pub nonfrozen: Vec<KSubset>,
    /// basis vectors of K, each indexed like `subsets`
    pub basis: Vec<Vec<Q>>,
    /// m[J][b] = eta_J(basis_b)
    pub m: Mat,
    m_inv: Mat,
}

impl KinBasis {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        check_ambient(k, n)?;
        let subsets = combinat::all_subsets(k, n);
        let cons: Mat =
            (1..=n).map(|a| subsets.iter().map(|j| if j.contains(a) { Q::one() } else { Q::zero() }).collect()).collect();
        let basis = linalg::nullspace(&cons, subsets.len());
        let nonfrozen = combinat::nonfrozen_subsets(k, n)?;
        let m: Mat = nonfrozen
            .par_iter()
            .map(|j| {
                let f = eta_functional(j);
                basis.iter().map(|b| Self::pair(&subsets, &f, b)).collect()
            })
            .collect();
        let m_inv = linalg::inverse(&m).map_err(|_| Error::Singular(format!("planar basis change for ({k},{n})")))?;
        Ok(KinBasis { k, n, subsets, nonfrozen, basis, m, m_inv })
    }

    fn pair(subsets: &[KSubset], f: &KinFunctional, b: &[Q]) -> Q {
        subsets.iter().zip(b).fold(Q::zero(), |s, (j, x)| match f.coeffs.get(j) {
            Some(c) if !x.is_zero() => s + c * x,
            _ => s,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Values of f on the basis of K.
    pub fn restrict(&self, f: &KinFunctional) -> Vec<Q> {
        self.basis.iter().map(|b| Self::pair(&self.subsets, f, b)).collect()
    }

    pub fn functionals_equal_on_k(&self, f: &KinFunctional, g: &KinFunctional) -> Result<bool> {
        if (f.k, f.n) != (self.k, self.n) || (g.k, g.n) != (self.k, self.n) {
            return Err(Error::Dimension("functional ambient differs from basis".into()));
        }
        Ok(self.restrict(&f.sub(g)).iter().all(|x| x.is_zero()))
    }

    /// The point of K with the given eta-values on nonfrozen J (missing = 0).
    pub fn eta_to_s(&self, eta: &BTreeMap<KSubset, Q>) -> KinPoint {
        let rhs: Vec<Q> = self.nonfrozen.iter().map(|j| eta.get(j).cloned().unwrap_or_else(Q::zero)).collect();
        let c = linalg::mat_vec(&self.m_inv, &rhs);
        let mut values = BTreeMap::new();
        for (t, j) in self.subsets.iter().enumerate() {
            let v = self.basis.iter().zip(&c).fold(Q::zero(), |s, (b, x)| s + &b[t] * x);
            if !v.is_zero() {
                values.insert(j.clone(), v);
            }
        }
        KinPoint { k: self.k, n: self.n, values }
    }

    pub fn s_to_eta(&self, p: &KinPoint) -> BTreeMap<KSubset, Q> {
        self.nonfrozen.iter().map(|j| (j.clone(), eta_functional(j).eval(p))).collect()
    }

    /// Coefficients of f in the planar basis: f = sum c_J eta_J on K.
    pub fn in_eta_basis(&self, f: &KinFunctional) -> BTreeMap<KSubset, Q> {
        let r = self.restrict(f);
        // r_b = sum_J c_J m[J][b]  =>  c = r m^{-1}
        let d = self.dim();
        let mut out = BTreeMap::new();
        for (jj, j) in self.nonfrozen.iter().enumerate() {
            let c = (0..d).fold(Q::zero(), |s, b| s + &r[b] * &self.m_inv[b][jj]);
            if !c.is_zero() {
                out.insert(j.clone(), c);
            }
        }
        out
    }
}

/// Combination sum c_I eta_I as an s-functional.
pub fn eta_combination(k: usize, n: usize, c: &BTreeMap<KSubset, Q>) -> KinFunctional {
    c.iter().fold(KinFunctional::zero(k, n), |acc, (j, x)| acc.add(&eta_functional(j).scale(x)))
}

pub fn eval_combination(c: &BTreeMap<KSubset, Q>, eta: &BTreeMap<KSubset, Q>) -> Q {
    c.iter().fold(Q::zero(), |s, (j, x)| if j.is_frozen() { s } else { s + x * eta.get(j).cloned().unwrap_or_else(Q::zero) })
}

// ---------------------------------------------------------------------------
// distinguished points

/// s = 1 on each window {j..j+k-1}, s = -1 on {j..j+k-2, j+k}.
pub fn pk_point(k: usize, n: usize) -> Result<KinPoint> {
    check_ambient(k, n)?;
    let mut values = BTreeMap::new();
    let lab = |x: usize| (x - 1) % n + 1;
    for j in 1..=n {
        let w: Vec<usize> = (0..k).map(|t| lab(j + t)).collect();
        let mut s: Vec<usize> = (0..k - 1).map(|t| lab(j + t)).collect();
        s.push(lab(j + k));
        *values.entry(KSubset::new(n, &w)?).or_insert_with(Q::zero) += Q::one();
        *values.entry(KSubset::new(n, &s)?).or_insert_with(Q::zero) -= Q::one();
    }
    Ok(KinPoint { k, n, values })
}

/// s_J <= 0 for nonfrozen J and s_J >= 0 for frozen J; strict inequalities when `strict`.
pub fn kd_membership(p: &KinPoint, strict: bool) -> Result<bool> {
    Ok(combinat::all_subsets(p.k, p.n).iter().all(|j| {
        let v = p.get(j);
        match (j.is_frozen(), strict) {
            (true, false) => !v.is_negative(),
            (true, true) => v.is_positive(),
            (false, false) => !v.is_positive(),
            (false, true) => v.is_negative(),
        }
    }))
}

/// A random interior point of K_D: a positive balanced combination on the
/// nonfrozen sets offset by uniform windows, plus rotated PK points.
pub fn random_interior_kd(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<KinPoint> {
    let nf = combinat::nonfrozen_subsets(k, n)?;
    let counts: Mat =
        (1..=n).map(|a| nf.iter().map(|j| if j.contains(a) { Q::one() } else { Q::zero() }).collect()).collect();
    let ker = linalg::nullspace(&counts, nf.len());
    let mut w: Vec<Q> = vec![Q::zero(); nf.len()];
    for b in &ker {
        let c = q(rng.gen_range(-20..=20));
        for (x, y) in w.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    let big = w.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero) + q(rng.gen_range(1..=5));
    let mut values: BTreeMap<KSubset, Q> = BTreeMap::new();
    for (j, x) in nf.iter().zip(&w) {
        values.insert(j.clone(), -(x + &big));
    }
    // every label now carries the same weight; balance with uniform windows
    let per_label = Q::from_integer(num_bigint::BigInt::from(nf.iter().filter(|j| j.contains(1)).count())) * &big;
    let f = per_label / q(k as i64);
    let pk = pk_point(k, n)?;
    for r in 0..n {
        let beta = q(rng.gen_range(0..=3));
        for (j, v) in &pk.values {
            let rot: Vec<usize> = j.elems().iter().map(|&a| (a + r - 1) % n + 1).collect();
            *values.entry(KSubset::new(n, &rot)?).or_insert_with(Q::zero) += &beta * v;
        }
    }
    for j in 1..=n {
        let w: Vec<usize> = (0..k).map(|t| (j + t - 1) % n + 1).collect();
        *values.entry(KSubset::new(n, &w)?).or_insert_with(Q::zero) += &f;
    }
    Ok(KinPoint { k, n, values })
}

/// eta_J + eta_{J+a-b+c-d} - eta_{J+a-b} - eta_{J+c-d}.
pub fn octahedral_commutator(j: &KSubset, a: usize, b: usize, c: usize, d: usize) -> Result<KinFunctional> {
    let (k, n) = (j.k(), j.n());
    let labels = [a, b, c, d];
    if labels.iter().any(|&x| x == 0 || x > n) || (0..4).any(|s| (s + 1..4).any(|t| labels[s] == labels[t])) {
        return Err(Error::Inadmissible(format!("labels {labels:?}")));
    }
    if j.contains(a) || j.contains(c) || !j.contains(b) || !j.contains(d) {
        return Err(Error::Inadmissible(format!("shifted vertices of {j} by ({a},{b},{c},{d}) leave the hypersimplex")));
    }
    let u = indicator(n, j.elems());
    let shift = |s: &[(usize, i64)]| {
        let mut v = u.clone();
        for &(x, e) in s {
            v[x] += e;
        }
        v
    };
    let f = eta_at_point(k, n, &u)
        .add(&eta_at_point(k, n, &shift(&[(a, 1), (b, -1), (c, 1), (d, -1)])))
        .sub(&eta_at_point(k, n, &shift(&[(a, 1), (b, -1)])))
        .sub(&eta_at_point(k, n, &shift(&[(c, 1), (d, -1)])));
    Ok(f)
}

/// The point of K with eta_J = gamma_J(alpha) for nonfrozen J.
pub fn root_kinematics_point(basis: &KinBasis, alpha: &GridVector) -> KinPoint {
    let eta = basis.nonfrozen.iter().map(|j| (j.clone(), gamma_hat(j).pair(alpha))).collect();
    basis.eta_to_s(&eta)
}

// ---------------------------------------------------------------------------
// the (3,n) shift

pub type EtaCombo = BTreeMap<KSubset, Q>;

fn acc(c: &mut EtaCombo, j: &[usize], n: usize, x: i64) {
    let s = KSubset::of(n, j);
    if s.is_frozen() {
        return;
    }
    let e = c.entry(s.clone()).or_insert_with(Q::zero);
    *e += q(x);
    if e.is_zero() {
        c.remove(&s);
    }
}

/// -eta_A + sum_t eta(A with a_t replaced by the element of B cyclically after it).
pub fn eta_ab(a: &[usize; 3], b: &[usize; 3], n: usize) -> EtaCombo {
    let mut c = EtaCombo::new();
    acc(&mut c, a, n, -1);
    for t in 0..3 {
        let next = b.iter().copied().filter(|&x| x > a[t]).min().unwrap_or_else(|| *b.iter().min().unwrap());
        let mut r = *a;
        r[t] = next;
        acc(&mut c, &r, n, 1);
    }
    c
}

/// Nonfrozen I with a lexicographically larger partner J such that (I,J) is
/// noncrossing but not weakly separated.
pub fn shifted_subsets(n: usize) -> Result<Vec<KSubset>> {
    let nf = combinat::nonfrozen_subsets(3, n)?;
    Ok(nf
        .iter()
        .filter(|i| nf.iter().any(|j| *i < j && is_noncrossing(i, j) && !is_weakly_separated(i, j)))
        .cloned()
        .collect())
}

fn shift_one(i: &KSubset, n: usize, literal: bool) -> EtaCombo {
    let (i1, i2, i3) = (i.elems()[0], i.elems()[1], i.elems()[2]);
    let mut c = EtaCombo::new();
    let add = |c: &mut EtaCombo, d: &EtaCombo| {
        for (s, x) in d {
            let e = c.entry(s.clone()).or_insert_with(Q::zero);
            *e += x;
        }
    };
    let mut terms = 0i64;
    if i3 < n {
        for j in i1 + 1..n {
            if j + 1 < i2 {
                acc(&mut c, &[j, j + 1, n], n, -1);
                add(&mut c, &eta_ab(&[i1, j + 1, i3], &[j, i2, n], n));
                terms += 1;
            }
        }
    }
    if i3 + 1 < n {
        let js: Vec<usize> = (i2 + 1..i3).collect();
        let js = if literal { &js[..] } else { &js[..js.len().min(1)] };
        for &j in js {
            acc(&mut c, &[j, n - 1, n], n, -1);
            add(&mut c, &eta_ab(&[i2, i3, n], &[i1, j, n - 1], n));
            terms += 1;
        }
    }
    let over = if literal { i3 as i64 - i1 as i64 - 3 } else { terms };
    acc(&mut c, i.elems(), n, -(over - 1));
    c.retain(|_, x| !x.is_zero());
    c
}

/// Shifted invariants hat(eta)_I for k = 3 as combinations of eta; identity elsewhere.
///
/// The second sum keeps only its first admissible term and the overcount is
/// the number of terms actually present.
pub fn eta_hat_shift(n: usize) -> Result<BTreeMap<KSubset, EtaCombo>> {
    eta_hat_shift_with(n, false)
}

/// Same, with every term of the second sum and the overcount i3 - i1 - 3.
pub fn eta_hat_shift_literal(n: usize) -> Result<BTreeMap<KSubset, EtaCombo>> {
    eta_hat_shift_with(n, true)
}

fn eta_hat_shift_with(n: usize, literal: bool) -> Result<BTreeMap<KSubset, EtaCombo>> {
    let shifted = shifted_subsets(n)?;
    let mut out = BTreeMap::new();
    for j in combinat::nonfrozen_subsets(3, n)? {
        let c = if shifted.contains(&j) {
            shift_one(&j, n, literal)
        } else {
            EtaCombo::from([(j.clone(), Q::one())])
        };
        out.insert(j, c);
    }
    Ok(out)
}

/// True when n lies beyond the range in which the shift was validated.
pub fn shift_beyond_validated(n: usize) -> bool {
    n > 9
}

/// A reference shift table (n = 6 or 8) as combinations of eta.
pub fn shift_table(n: usize) -> Result<BTreeMap<KSubset, EtaCombo>> {
    let rows = match n {
        6 => data::SHIFT_TABLE_36,
        8 => data::SHIFT_TABLE_38,
        _ => return Err(Error::Inadmissible(format!("no reference shift table for n = {n}"))),
    };
    let mut out = BTreeMap::new();
    for r in rows {
        let (j, terms) = data::parse_shift_row(r);
        let mut c = EtaCombo::new();
        for (x, i) in terms {
            acc(&mut c, &i, n, x);
        }
        out.insert(KSubset::new(n, &j)?, c);
    }
    Ok(out)
}

/// The prime-valued eta point of K(3,6).
pub fn prime_eta_36() -> BTreeMap<KSubset, Q> {
    data::PRIME_ETA_36.iter().map(|(j, v)| (KSubset::parse(6, j).unwrap(), q(*v))).collect()
}

// ---------------------------------------------------------------------------
// amplitudes

/// Sum over maximal noncrossing collections of prod 1/values(J).
pub fn nc_amplitude(k: usize, n: usize, values: &BTreeMap<KSubset, Q>, cap: usize) -> Result<(Q, usize)> {
    let cols = combinat::enumerate_maximal_noncrossing(k, n, cap)?;
    let terms: Vec<Q> = cols
        .par_iter()
        .map(|c| {
            let mut p = Q::one();
            for j in &c.members {
                let v = values.get(j).cloned().unwrap_or_else(Q::zero);
                if v.is_zero() {
                    let names: Vec<String> = c.members.iter().map(|m| m.to_string()).collect();
                    return Err(Error::ZeroDenominator(format!("pole at {j} in collection {{{}}}", names.join(" "))));
                }
                p *= v;
            }
            Ok(Q::one() / p)
        })
        .collect::<Result<_>>()?;
    let total = terms.iter().fold(Q::zero(), |s, t| s + t);
    Ok((total, cols.len()))
}

/// A flip quadruple: (I,J) noncrossing with gamma_I + gamma_J = gamma_I' + gamma_J'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flip {
    pub i: KSubset,
    pub j: KSubset,
    pub i2: KSubset,
    pub j2: KSubset,
}

pub fn flip_quadruples(n: usize) -> Result<Vec<Flip>> {
    let nf = combinat::nonfrozen_subsets(3, n)?;
    let g: Vec<GridVector> = nf.iter().map(gamma_hat).collect();
    let mut sums: BTreeMap<GridVector, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..nf.len() {
        for b in a + 1..nf.len() {
            sums.entry(g[a].add(&g[b])).or_default().push((a, b));
        }
    }
    let mut out = Vec::new();
    for pairs in sums.values() {
        for &(a, b) in pairs {
            if !is_noncrossing(&nf[a], &nf[b]) {
                continue;
            }
            for &(c, d) in pairs {
                if (c, d) != (a, b) {
                    out.push(Flip { i: nf[a].clone(), j: nf[b].clone(), i2: nf[c].clone(), j2: nf[d].clone() });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub samples: usize,
    pub flips: usize,
    /// (sample index, flip, value) where the shifted difference is not positive
    pub violations: Vec<(usize, Flip, Q)>,
}

/// Looks for interior K_D points where a flip difference of shifted invariants is not positive.
pub fn flip_positivity_search(n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<SearchReport> {
    let basis = KinBasis::new(3, n)?;
    let shift = eta_hat_shift(n)?;
    let flips = flip_quadruples(n)?;
    let mut violations = Vec::new();
    for t in 0..samples {
        let p = random_interior_kd(3, n, rng)?;
        let eta = basis.s_to_eta(&p);
        let hat = |j: &KSubset| eval_combination(&shift[j], &eta);
        for f in &flips {
            let v = hat(&f.i2) + hat(&f.j2) - hat(&f.i) - hat(&f.j);
            if !v.is_positive() {
                violations.push((t, f.clone(), v));
            }
        }
    }
    Ok(SearchReport { samples, flips: flips.len(), violations })
}
