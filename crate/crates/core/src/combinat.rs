//! k-subsets of [n]: frozen sets, weak separation, compatibility degree and
//! the noncrossing complex.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::Bits;
use crate::{Error, Result};

pub const DEFAULT_CLIQUE_CAP: usize = 200_000;

pub fn check_ambient(k: usize, n: usize) -> Result<()> {
    if k < 2 || n < k + 2 {
        return Err(Error::BadAmbient { k, n });
    }
    Ok(())
}

/// A sorted k-element subset of {1..n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    n: usize,
    elems: Vec<usize>,
}

impl KSubset {
    /// Sorts the input; rejects repeats, out-of-range labels and bad (k,n).
    pub fn new(n: usize, elems: &[usize]) -> Result<Self> {
        let mut e = elems.to_vec();
        e.sort_unstable();
        check_ambient(e.len(), n)?;
        if e.windows(2).any(|w| w[0] == w[1]) || e[0] == 0 || e[e.len() - 1] > n {
            return Err(Error::BadSubset(format!("{elems:?} in [1,{n}]")));
        }
        Ok(KSubset { n, elems: e })
    }

    /// Panicking constructor for literals.
    pub fn of(n: usize, elems: &[usize]) -> Self {
        Self::new(n, elems).expect("valid k-subset")
    }

    /// Accepts "1,3,5" or, when every label is a single digit, "135".
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let elems: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad subset {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad subset {s:?}"))))
                .collect::<Result<_>>()?
        };
        Self::new(n, &elems)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elems.binary_search(&a).is_ok()
    }

    pub fn is_frozen(&self) -> bool {
        is_frozen(self)
    }

    /// Compact key: digits when n < 10, otherwise comma separated.
    pub fn key(&self) -> String {
        if self.n < 10 {
            self.elems.iter().map(|e| e.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Deserializing needs the ambient n, so the wire form is `{"n":..,"elems":[..]}`
/// only when read standalone; maps keyed by subsets go through [`KSubset::parse`].
impl<'de> Deserialize<'de> for KSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            elems: Vec<usize>,
        }
        let r = Raw::deserialize(d)?;
        KSubset::new(r.n, &r.elems).map_err(serde::de::Error::custom)
    }
}

pub fn is_frozen(j: &KSubset) -> bool {
    let (n, k) = (j.n, j.k());
    // a cyclic interval has exactly one "gap" when walking around the circle
    let gaps = (0..k)
        .filter(|&t| {
            let a = j.elems[t];
            let b = j.elems[(t + 1) % k];
            b != a % n + 1
        })
        .count();
    gaps <= 1
}

/// Weak separation for label sets of equal size inside [n].
pub fn weakly_separated_sets(a: &[usize], b: &[usize], n: usize) -> bool {
    let mut sig = Vec::new();
    for x in 1..=n {
        let ia = a.contains(&x);
        let ib = b.contains(&x);
        if ia != ib {
            sig.push(ia);
        }
    }
    if sig.is_empty() {
        return true;
    }
    let changes = (0..sig.len()).filter(|&t| sig[t] != sig[(t + sig.len() - 1) % sig.len()]).count();
    changes < 4
}

pub fn is_weakly_separated(i: &KSubset, j: &KSubset) -> bool {
    weakly_separated_sets(&i.elems, &j.elems, i.n)
}

/// Compatibility degree with positions matched in both sorted tuples.
pub fn compatibility_degree(i: &KSubset, j: &KSubset) -> Result<u32> {
    for s in [i, j] {
        if s.is_frozen() {
            return Err(Error::Frozen(s.to_string()));
        }
    }
    if i.n != j.n || i.k() != j.k() {
        return Err(Error::BadSubset(format!("ambient mismatch {i} vs {j}")));
    }
    Ok(raw_degree(&i.elems, &j.elems, i.n))
}

pub(crate) fn raw_degree(a: &[usize], b: &[usize], n: usize) -> u32 {
    let k = a.len();
    let mut c = 0;
    for p in 0..k {
        for q in p + 1..k {
            if (p + 1..q).any(|l| a[l] != b[l]) {
                // interiors differ, and they only grow with q
                break;
            }
            if !weakly_separated_sets(&[a[p], a[q]], &[b[p], b[q]], n) {
                c += 1;
            }
        }
    }
    c
}

pub fn is_noncrossing(i: &KSubset, j: &KSubset) -> bool {
    if i.is_frozen() || j.is_frozen() {
        return true;
    }
    raw_degree(&i.elems, &j.elems, i.n) == 0
}

/// All k-subsets of [n] in lexicographic order.
pub fn all_subsets(k: usize, n: usize) -> Vec<KSubset> {
    all_subsets_raw(k, n).into_iter().map(|elems| KSubset { n, elems }).collect()
}

/// m-subsets of [1,top] as plain sorted vectors, lex order.
pub fn all_subsets_raw(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    if k == 0 {
        return vec![cur];
    }
    loop {
        out.push(cur.clone());
        let mut t = k;
        while t > 0 && cur[t - 1] == n - k + t {
            t -= 1;
        }
        if t == 0 {
            return out;
        }
        cur[t - 1] += 1;
        for u in t..k {
            cur[u] = cur[u - 1] + 1;
        }
    }
}

pub fn nonfrozen_subsets(k: usize, n: usize) -> Result<Vec<KSubset>> {
    check_ambient(k, n)?;
    Ok(all_subsets(k, n).into_iter().filter(|j| !j.is_frozen()).collect())
}

/// A set of pairwise noncrossing nonfrozen subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NCCollection {
    pub k: usize,
    pub n: usize,
    pub members: Vec<KSubset>,
}

impl NCCollection {
    pub fn new(k: usize, n: usize, mut members: Vec<KSubset>) -> Self {
        members.sort();
        NCCollection { k, n, members }
    }

    pub fn is_pairwise_noncrossing(&self) -> bool {
        self.members.iter().enumerate().all(|(a, x)| self.members[a + 1..].iter().all(|y| is_noncrossing(x, y)))
    }
}

/// Noncrossing graph on nonfrozen subsets, adjacency stored as bitsets.
pub struct NcGraph {
    pub k: usize,
    pub n: usize,
    pub verts: Vec<KSubset>,
    pub adj: Vec<Bits>,
}

impl NcGraph {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        let verts = nonfrozen_subsets(k, n)?;
        let m = verts.len();
        let mut adj = vec![Bits::new(m); m];
        for a in 0..m {
            for b in a + 1..m {
                if raw_degree(&verts[a].elems, &verts[b].elems, n) == 0 {
                    adj[a].set(b);
                    adj[b].set(a);
                }
            }
        }
        Ok(NcGraph { k, n, verts, adj })
    }

    pub fn index_of(&self, j: &KSubset) -> Option<usize> {
        self.verts.binary_search(j).ok()
    }

    /// Maximal cliques as sorted index lists, in sorted order.
    pub fn maximal_cliques(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let m = self.verts.len();
        let order = degeneracy_order(&self.adj);
        let mut pos = vec![0; m];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let found = AtomicUsize::new(0);
        let per_root: Vec<Result<Vec<Vec<usize>>>> = order
            .par_iter()
            .map(|&v| {
                let mut p = Bits::new(m);
                let mut x = Bits::new(m);
                for u in self.adj[v].iter() {
                    if pos[u] > pos[v] {
                        p.set(u);
                    } else {
                        x.set(u);
                    }
                }
                let mut out = Vec::new();
                let mut r = vec![v];
                bron_kerbosch(&self.adj, &mut r, p, x, &mut out, &found, cap)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for r in per_root {
            all.extend(r?);
        }
        for c in all.iter_mut() {
            c.sort_unstable();
        }
        all.sort();
        Ok(all)
    }
}

fn degeneracy_order(adj: &[Bits]) -> Vec<usize> {
    let m = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(|a| a.count()).collect();
    let mut done = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let v = (0..m).filter(|&v| !done[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        done[v] = true;
        order.push(v);
        for u in adj[v].iter() {
            if !done[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

fn bron_kerbosch(
    adj: &[Bits],
    r: &mut Vec<usize>,
    p: Bits,
    mut x: Bits,
    out: &mut Vec<Vec<usize>>,
    found: &AtomicUsize,
    cap: usize,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() {
            if found.fetch_add(1, Ordering::Relaxed) >= cap {
                return Err(Error::CapExceeded { what: "maximal cliques".into(), cap });
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p.or(&x).iter().max_by_key(|&u| (p.and_count(&adj[u]), std::cmp::Reverse(u))).unwrap();
    let mut p = p;
    for v in p.and_not(&adj[pivot]).iter().collect::<Vec<_>>() {
        r.push(v);
        bron_kerbosch(adj, r, p.and(&adj[v]), x.and(&adj[v]), out, found, cap)?;
        r.pop();
        p.clear(v);
        x.set(v);
    }
    Ok(())
}

pub fn enumerate_maximal_noncrossing(k: usize, n: usize, cap: usize) -> Result<Vec<NCCollection>> {
    let g = NcGraph::new(k, n)?;
    let cl = g.maximal_cliques(cap)?;
    Ok(cl
        .into_iter()
        .map(|c| NCCollection::new(k, n, c.into_iter().map(|i| g.verts[i].clone()).collect()))
        .collect())
}

/// Standard Young tableaux of the k x m rectangle (hook length formula).
pub fn catalan_mdim(k: usize, m: usize) -> BigUint {
    let fact = |t: usize| -> BigUint { (1..=t).fold(BigUint::one(), |acc, x| acc * BigUint::from(x)) };
    let mut num = fact(k * m);
    let mut den = BigUint::one();
    for i in 0..k {
        num *= fact(i);
        den *= fact(m + i);
    }
    num / den
}

/// Closed-form degree for k = 3: 2 on full interleaving, 1 for any other crossing.
pub fn k3_exponent_rule(i: &KSubset, j: &KSubset) -> Result<u32> {
    if i.k() != 3 || j.k() != 3 {
        return Err(Error::Inadmissible(format!("k3 rule needs k=3, got {i} and {j}")));
    }
    if compatibility_degree(i, j)? == 0 {
        return Ok(0);
    }
    let (a, b) = (&i.elems, &j.elems);
    let inter = |a: &[usize], b: &[usize]| a[0] < b[0] && b[0] < a[1] && a[1] < b[1] && b[1] < a[2] && a[2] < b[2];
    Ok(if inter(a, b) || inter(b, a) { 2 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::of(n, e)
    }

    #[test]
    fn frozen_examples() {
        assert!(is_frozen(&s(6, &[1, 2, 3])));
        assert!(is_frozen(&s(6, &[1, 5, 6])));
        assert!(!is_frozen(&s(6, &[1, 3, 5])));
        assert_eq!(all_subsets(3, 6).iter().filter(|j| j.is_frozen()).count(), 6);
    }

    #[test]
    fn weak_separation_examples() {
        assert!(is_weakly_separated(&s(4, &[1, 2]), &s(4, &[3, 4])));
        assert!(!is_weakly_separated(&s(4, &[1, 3]), &s(4, &[2, 4])));
        assert!(!is_weakly_separated(&s(6, &[1, 4, 5]), &s(6, &[2, 3, 6])));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(compatibility_degree(&s(6, &[1, 3, 5]), &s(6, &[2, 4, 6])).unwrap(), 2);
        assert_eq!(compatibility_degree(&s(8, &[2, 4, 6, 8]), &s(8, &[1, 3, 5, 7])).unwrap(), 3);
        assert_eq!(compatibility_degree(&s(6, &[1, 2, 4]), &s(6, &[3, 5, 6])).unwrap(), 0);
        assert_eq!(compatibility_degree(&s(8, &[2, 4, 6, 8]), &s(8, &[1, 2, 4, 7])).unwrap(), 1);
        assert!(compatibility_degree(&s(6, &[1, 2, 3]), &s(6, &[2, 4, 6])).is_err());
    }

    #[test]
    fn noncrossing_examples() {
        assert!(is_noncrossing(&s(6, &[1, 4, 5]), &s(6, &[2, 3, 6])));
        assert!(!is_noncrossing(&s(6, &[1, 3, 5]), &s(6, &[2, 4, 6])));
        for n in 15..18 {
            assert!(is_noncrossing(&s(n, &[6, 7, 8, 15]), &s(n, &[1, 6, 9, 10])));
        }
    }

    #[test]
    fn nonfrozen_counts() {
        assert_eq!(nonfrozen_subsets(3, 6).unwrap().len(), 14);
        assert_eq!(nonfrozen_subsets(2, 5).unwrap().len(), 5);
        assert_eq!(nonfrozen_subsets(4, 8).unwrap().len(), 62);
        assert!(nonfrozen_subsets(1, 5).is_err());
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan_mdim(3, 3), BigUint::from(42u32));
        assert_eq!(catalan_mdim(4, 4), BigUint::from(24024u32));
        assert_eq!(catalan_mdim(2, 2), BigUint::from(2u32));
    }

    #[test]
    fn small_cliques() {
        let c = enumerate_maximal_noncrossing(3, 6, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(c.len(), 42);
        assert!(c.iter().all(|x| x.members.len() == 4 && x.is_pairwise_noncrossing()));
        assert_eq!(enumerate_maximal_noncrossing(2, 6, DEFAULT_CLIQUE_CAP).unwrap().len(), 14);
        assert!(matches!(enumerate_maximal_noncrossing(3, 7, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn k3_rule_examples() {
        assert_eq!(k3_exponent_rule(&s(6, &[1, 3, 5]), &s(6, &[2, 4, 6])).unwrap(), 2);
        assert_eq!(k3_exponent_rule(&s(6, &[1, 2, 4]), &s(6, &[3, 5, 6])).unwrap(), 0);
        assert_eq!(k3_exponent_rule(&s(6, &[1, 3, 4]), &s(6, &[2, 3, 5])).unwrap(), 1);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(KSubset::parse(6, "135").unwrap(), s(6, &[1, 3, 5]));
        assert_eq!(KSubset::parse(10, "3,6,10").unwrap().to_string(), "3,6,10");
        assert!(KSubset::parse(6, "1,1,2").is_err());
        assert!(KSubset::parse(6, "1,2,7").is_err());
    }
}
