//! Generalized roots gamma_J on the (k-1) x (n-k) grid, their images v_J in
//! the row-sum-zero quotient, cubical relations and noncrossing decomposition.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::combinat::{check_ambient, is_noncrossing, KSubset, NcGraph};
use crate::linalg::{self, Mat};
use crate::rat::{fmt_q, q, Q};
use crate::{Error, Result};

/// Exact vector indexed by (i,j) in [1,k-1] x [1,n-k], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVector {
    pub k: usize,
    pub n: usize,
    data: Vec<Q>,
}

impl GridVector {
    pub fn zeros(k: usize, n: usize) -> Self {
        GridVector { k, n, data: vec![Q::zero(); (k - 1) * (n - k)] }
    }

    pub fn rows(&self) -> usize {
        self.k - 1
    }

    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i < self.k && j >= 1 && j <= self.n - self.k, "grid index ({i},{j}) out of range");
        (i - 1) * self.cols() + (j - 1)
    }

    pub fn unit(k: usize, n: usize, i: usize, j: usize) -> Self {
        let mut v = Self::zeros(k, n);
        v.set(i, j, q(1));
        v
    }

    pub fn from_flat(k: usize, n: usize, data: Vec<Q>) -> Result<Self> {
        if data.len() != (k - 1) * (n - k) {
            return Err(Error::Dimension(format!("{} entries for ({k},{n}) grid", data.len())));
        }
        Ok(GridVector { k, n, data })
    }

    pub fn from_ints(k: usize, n: usize, rows: &[&[i64]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| q(x))).collect();
        Self::from_flat(k, n, data).expect("grid shape")
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        let t = self.idx(i, j);
        self.data[t] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Q) {
        let t = self.idx(i, j);
        self.data[t] += x;
    }

    pub fn flat(&self) -> &[Q] {
        &self.data
    }

    pub fn add(&self, o: &GridVector) -> GridVector {
        GridVector { k: self.k, n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &GridVector) -> GridVector {
        GridVector { k: self.k, n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Q) -> GridVector {
        GridVector { k: self.k, n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row_sum(&self, i: usize) -> Q {
        (1..=self.cols()).fold(Q::zero(), |acc, j| acc + self.get(i, j))
    }

    /// Pairing with a point alpha given on the same grid.
    pub fn pair(&self, alpha: &GridVector) -> Q {
        linalg::dot(&self.data, &alpha.data)
    }

    /// Coordinates in H: drop the last column of every row.
    pub fn reduced(&self) -> Vec<Q> {
        (1..self.k).flat_map(|i| (1..self.cols()).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect()
    }

    /// Inverse of [`reduced`](Self::reduced): refills the last column so rows sum to zero.
    pub fn from_reduced(k: usize, n: usize, r: &[Q]) -> Self {
        let mut v = Self::zeros(k, n);
        let c = n - k - 1;
        for i in 1..k {
            let mut s = Q::zero();
            for j in 1..=c {
                let x = r[(i - 1) * c + j - 1].clone();
                s += &x;
                v.set(i, j, x);
            }
            v.set(i, n - k, -s);
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            (1..self.k).map(|i| (1..=self.cols()).map(|j| fmt_q(self.get(i, j))).collect()).collect();
        serde_json::json!({"k": self.k, "n": self.n, "entries": rows})
    }
}

/// The 0/1 vector of gamma_J: row l covers [j_l-(l-1), j_{l+1}-l-1].
pub fn gamma_hat(j: &KSubset) -> GridVector {
    let (k, n) = (j.k(), j.n());
    let e = j.elems();
    let mut v = GridVector::zeros(k, n);
    for l in 1..k {
        let lo = e[l - 1] - (l - 1);
        let hi = e[l] - l - 1;
        for c in lo..=hi {
            v.set(l, c, q(1));
        }
    }
    v
}

/// e_{i,j} -> f_{i,j} = e_{i,j} - e_{i,j+1}, cyclically in j.
pub fn project_f(v: &GridVector) -> GridVector {
    let mut w = GridVector::zeros(v.k, v.n);
    let c = v.cols();
    for i in 1..v.k {
        for j in 1..=c {
            let x = v.get(i, j);
            if !x.is_zero() {
                w.add_at(i, j, x);
                w.add_at(i, j % c + 1, &-x);
            }
        }
    }
    w
}

pub fn v_root(j: &KSubset) -> GridVector {
    project_f(&gamma_hat(j))
}

/// Sum of c_J v_J.
pub fn combination_vector(k: usize, n: usize, coeffs: &BTreeMap<KSubset, Q>) -> GridVector {
    coeffs.iter().fold(GridVector::zeros(k, n), |acc, (j, c)| acc.add(&v_root(j).scale(c)))
}

fn with_extra(i: &[usize], extra: &[usize], n: usize) -> Result<KSubset> {
    let all: Vec<usize> = i.iter().chain(extra).copied().collect();
    KSubset::new(n, &all)
}

/// gamma_{Iac} + gamma_{Ibd} = gamma_{Iad} + gamma_{Ibc}, both for gamma-hat and for v.
pub fn check_four_term(i: &[usize], a: usize, b: usize, c: usize, d: usize, n: usize) -> Result<bool> {
    if !(a < b && b < c && c < d) || [a, b, c, d].iter().any(|x| i.contains(x)) {
        return Err(Error::Inadmissible(format!("four-term data I={i:?} a,b,c,d={a},{b},{c},{d}")));
    }
    let s = |x, y| with_extra(i, &[x, y], n);
    let (ac, bd, ad, bc) = (s(a, c)?, s(b, d)?, s(a, d)?, s(b, c)?);
    let gh = gamma_hat(&ac).add(&gamma_hat(&bd)) == gamma_hat(&ad).add(&gamma_hat(&bc));
    let vv = v_root(&ac).add(&v_root(&bd)) == v_root(&ad).add(&v_root(&bc));
    Ok(gh && vv)
}

fn check_cube(i: &[usize], j: &[usize], l: &[usize], n: usize) -> Result<()> {
    let m = i.len();
    let bad = || Error::Inadmissible(format!("cube data i={i:?} j={j:?} L={l:?}"));
    if m < 2 || j.len() != m {
        return Err(bad());
    }
    let mut chain = Vec::new();
    for t in 0..m {
        chain.push(i[t]);
        chain.push(j[t]);
    }
    if chain.windows(2).any(|w| w[0] >= w[1]) || chain[0] == 0 || chain[2 * m - 1] > n {
        return Err(bad());
    }
    if l.iter().any(|x| chain.contains(x)) {
        return Err(bad());
    }
    Ok(())
}

/// The noncrossing pair of antipodal cube vertices:
/// {i1,j2,i3,j4,...} and {j1,i2,j3,...}, each joined with L.
pub fn cube_antipode(i: &[usize], j: &[usize], l: &[usize], n: usize) -> Result<(KSubset, KSubset)> {
    check_cube(i, j, l, n)?;
    let m1: Vec<usize> = (0..i.len()).map(|t| if t % 2 == 0 { i[t] } else { j[t] }).collect();
    let m2: Vec<usize> = (0..i.len()).map(|t| if t % 2 == 0 { j[t] } else { i[t] }).collect();
    Ok((with_extra(&m1, l, n)?, with_extra(&m2, l, n)?))
}

/// All long diagonals of the cube, one per antipodal pair.
pub fn cube_diagonals(i: &[usize], j: &[usize], l: &[usize], n: usize) -> Result<Vec<(KSubset, KSubset)>> {
    check_cube(i, j, l, n)?;
    let m = i.len();
    let mut out = Vec::new();
    for mask in 0..(1usize << (m - 1)) {
        let pick = |t: usize| t > 0 && mask >> (t - 1) & 1 == 1;
        let m1: Vec<usize> = (0..m).map(|t| if pick(t) { j[t] } else { i[t] }).collect();
        let m2: Vec<usize> = (0..m).map(|t| if pick(t) { i[t] } else { j[t] }).collect();
        out.push((with_extra(&m1, l, n)?, with_extra(&m2, l, n)?));
    }
    Ok(out)
}

/// For A sorted and B with exactly one element in each cyclic gap (a_t, a_{t+1}),
/// returns A with a_t replaced by the element of B following it, for each t.
pub fn cyclic_replacements(a: &[usize], b: &[usize], n: usize) -> Result<Vec<Vec<usize>>> {
    let m = a.len();
    let bad = || Error::Inadmissible(format!("{b:?} does not interleave {a:?} cyclically"));
    if b.len() != m || a.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad());
    }
    let in_gap = |x: usize, lo: usize, hi: usize| if lo < hi { lo < x && x < hi } else { x > lo || x < hi };
    let mut out = Vec::new();
    for t in 0..m {
        let (lo, hi) = (a[t], a[(t + 1) % m]);
        let hits: Vec<usize> = b.iter().copied().filter(|&x| in_gap(x, lo, hi)).collect();
        if hits.len() != 1 || hits[0] > n {
            return Err(bad());
        }
        let mut s = a.to_vec();
        s[t] = hits[0];
        s.sort_unstable();
        out.push(s);
    }
    Ok(out)
}

/// -beta_U + sum of the three single replacements of U by U'.
pub fn tripod_vector(u: &KSubset, u2: &[usize; 3]) -> Result<BTreeMap<KSubset, i64>> {
    let n = u.n();
    let e = u.elems();
    if u.k() != 3 {
        return Err(Error::Inadmissible(format!("tripod needs k=3, got {u}")));
    }
    if (0..3).any(|t| e[(t + 1) % 3] == e[t] % n + 1) {
        return Err(Error::Inadmissible(format!("tripod base {u} has cyclically adjacent labels")));
    }
    let mut out = BTreeMap::new();
    *out.entry(u.clone()).or_insert(0) -= 1;
    for s in cyclic_replacements(e, u2, n)? {
        *out.entry(KSubset::new(n, &s)?).or_insert(0) += 1;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

pub fn int_map_to_q(m: &BTreeMap<KSubset, i64>) -> BTreeMap<KSubset, Q> {
    m.iter().map(|(j, &c)| (j.clone(), q(c))).collect()
}

/// Positive noncrossing expansion sum t_J v_J.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCExpansion {
    pub terms: BTreeMap<KSubset, Q>,
}

impl NCExpansion {
    pub fn degree(&self) -> usize {
        self.terms.len()
    }

    pub fn resum(&self, k: usize, n: usize) -> GridVector {
        combination_vector(k, n, &self.terms)
    }

    pub fn is_valid(&self) -> bool {
        let t: Vec<&KSubset> = self.terms.keys().collect();
        self.terms.values().all(|c| c.is_positive())
            && t.iter().enumerate().all(|(a, x)| t[a + 1..].iter().all(|y| is_noncrossing(x, y)))
    }

    pub fn to_json(&self, k: usize, n: usize) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> =
            self.terms.iter().map(|(j, c)| (j.to_string(), serde_json::Value::String(fmt_q(c)))).collect();
        serde_json::json!({"k": k, "n": n, "coeffs": coeffs})
    }
}

/// The complete simplicial fan of noncrossing cones, in reduced coordinates.
pub struct Fan {
    pub k: usize,
    pub n: usize,
    pub graph: NcGraph,
    vecs: Vec<Vec<Q>>,
    start: Vec<usize>,
}

impl Fan {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        check_ambient(k, n)?;
        let graph = NcGraph::new(k, n)?;
        let vecs = graph.verts.iter().map(|j| v_root(j).reduced()).collect();
        // greedy lexicographic maximal collection
        let mut start: Vec<usize> = Vec::new();
        for v in 0..graph.verts.len() {
            if start.iter().all(|&u| graph.adj[v].get(u)) {
                start.push(v);
            }
        }
        let dim = (k - 1) * (n - k - 1);
        if start.len() != dim {
            return Err(Error::Degenerate(format!("greedy collection has {} members, expected {dim}", start.len())));
        }
        Ok(Fan { k, n, graph, vecs, start })
    }

    pub fn dim(&self) -> usize {
        (self.k - 1) * (self.n - self.k - 1)
    }

    fn basis(&self, c: &[usize]) -> Mat {
        let d = self.dim();
        (0..d).map(|r| c.iter().map(|&j| self.vecs[j][r].clone()).collect()).collect()
    }

    /// Determinant of the v_J coordinates of a collection in the f-lattice basis.
    pub fn lattice_det(&self, members: &[KSubset]) -> Result<Q> {
        let idx: Vec<usize> = members
            .iter()
            .map(|j| self.graph.index_of(j).ok_or_else(|| Error::BadSubset(format!("{j} not nonfrozen"))))
            .collect::<Result<_>>()?;
        if idx.len() != self.dim() {
            return Err(Error::Dimension(format!("{} members for dimension {}", idx.len(), self.dim())));
        }
        Ok(linalg::det(&self.basis(&idx)))
    }

    pub fn decompose(&self, v: &GridVector) -> Result<NCExpansion> {
        self.decompose_seeded(v, 0x5eed)
    }

    /// Walks from a generic interior point of a start cone to v, flipping across
    /// each wall the segment meets; the cone reached at v carries the expansion.
    pub fn decompose_seeded(&self, v: &GridVector, seed: u64) -> Result<NCExpansion> {
        if v.k != self.k || v.n != self.n {
            return Err(Error::Dimension(format!("vector for ({},{}) given to ({},{}) fan", v.k, v.n, self.k, self.n)));
        }
        for i in 1..v.k {
            let s = v.row_sum(i);
            if !s.is_zero() {
                return Err(Error::NotInH { row: i, sum: fmt_q(&s) });
            }
        }
        if v.is_zero() {
            return Ok(NCExpansion::default());
        }
        let target = v.reduced();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _attempt in 0..64 {
            let w: Vec<Q> = (0..self.dim()).map(|_| q(rng.gen_range(1..=997))).collect();
            match self.walk(&target, &w)? {
                Some(e) => return Ok(e),
                None => continue,
            }
        }
        Err(Error::Degenerate("wall-crossing walk kept meeting codimension-2 faces".into()))
    }

    fn walk(&self, target: &[Q], w: &[Q]) -> Result<Option<NCExpansion>> {
        let mut c = self.start.clone();
        let b0 = self.basis(&c);
        let p0 = linalg::mat_vec(&b0, w);
        let mut t_cur = Q::zero();
        for _step in 0..10_000 {
            let b = self.basis(&c);
            let cp = linalg::solve(&b, &p0)?;
            let cv = linalg::solve(&b, target)?;
            let mut best: Option<(Q, Vec<usize>)> = None;
            for s in 0..c.len() {
                let slope = &cv[s] - &cp[s];
                if !slope.is_negative() {
                    continue;
                }
                let t = &cp[s] / (&cp[s] - &cv[s]);
                match &mut best {
                    None => best = Some((t, vec![s])),
                    Some((bt, list)) => {
                        if t < *bt {
                            *bt = t;
                            *list = vec![s];
                        } else if t == *bt {
                            list.push(s);
                        }
                    }
                }
            }
            match best {
                Some((t, list)) if t < q(1) => {
                    if list.len() > 1 || t < t_cur {
                        return Ok(None);
                    }
                    let s = list[0];
                    let out = c[s];
                    let mut common = Bits::full(self.graph.verts.len());
                    for (r, &u) in c.iter().enumerate() {
                        if r != s {
                            common = common.and(&self.graph.adj[u]);
                        }
                    }
                    let cand: Vec<usize> = common.iter().filter(|&x| x != out && !c.contains(&x)).collect();
                    if cand.len() != 1 {
                        return Err(Error::Degenerate(format!("wall has {} replacements", cand.len())));
                    }
                    c[s] = cand[0];
                    t_cur = t;
                }
                _ => {
                    let terms = c
                        .iter()
                        .zip(cv)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(&j, x)| (self.graph.verts[j].clone(), x))
                        .collect();
                    return Ok(Some(NCExpansion { terms }));
                }
            }
        }
        Ok(None)
    }
}

pub fn noncrossing_decompose(v: &GridVector) -> Result<NCExpansion> {
    Fan::new(v.k, v.n)?.decompose(v)
}

pub fn noncrossing_degree(k: usize, n: usize, coeffs: &BTreeMap<KSubset, Q>) -> Result<usize> {
    Ok(noncrossing_decompose(&combination_vector(k, n, coeffs))?.degree())
}
