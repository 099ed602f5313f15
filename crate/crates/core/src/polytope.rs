//! Exact polyhedral engine: double description, V/H conversion, face
//! lattices, Minkowski sums, regular subdivisions; and the polytopes built
//! from roots and face polynomials.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::combinat::{self, check_ambient, KSubset};
use crate::linalg::{self, Mat};
use crate::lp;
use crate::polynomial::{self, MultiPoly};
use crate::rat::{fmt_q, q, Q};
use crate::roots::{gamma_hat, v_root, Fan, GridVector};
use crate::{Error, Result};

/// Affine functional c + a.x, read as `>= 0` (inequalities) or `= 0` (equations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub c: Q,
    pub a: Vec<Q>,
}

impl Ineq {
    pub fn eval(&self, x: &[Q]) -> Q {
        &self.c + linalg::dot(&self.a, x)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"const": fmt_q(&self.c), "coeffs": self.a.iter().map(fmt_q).collect::<Vec<_>>()})
    }
}

/// A polytope with both representations and vertex-facet incidence.
#[derive(Clone, Debug)]
pub struct PolytopeRep {
    pub ambient: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<Q>>,
    pub equations: Vec<Ineq>,
    pub facets: Vec<Ineq>,
    /// incidence[f] = vertices on facet f
    pub incidence: Vec<Bits>,
}

// ---------------------------------------------------------------------------
// double description

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn int_row(r: &[Q]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(r.iter().map(|x| x.numer() * (&l / x.denom())).collect())
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |s, (x, y)| if x.is_zero() || y.is_zero() { s } else { s + x * y })
}

struct Ray {
    v: Vec<BigInt>,
    z: Bits,
}

/// Extreme rays of the pointed cone {x : r.x >= 0 for every row r}.
pub fn dd_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = rows.len();
    // an independent starting set
    let mut basis: Vec<usize> = Vec::new();
    let mut ech: Mat = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == dim {
            break;
        }
        let mut t = ech.clone();
        t.push(r.iter().map(|x| Q::from_integer(x.clone())).collect());
        if linalg::rank(&t) > ech.len() {
            ech = t;
            basis.push(i);
        }
    }
    if basis.len() < dim {
        return Err(Error::Degenerate(format!("cone is not pointed: rank {} < {dim}", basis.len())));
    }
    let inv = linalg::inverse(&ech)?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|c| {
            let col: Vec<Q> = inv.iter().map(|row| row[c].clone()).collect();
            let mut z = Bits::new(m);
            for (t, &b) in basis.iter().enumerate() {
                if t != c {
                    z.set(b);
                }
            }
            Ray { v: int_row(&col), z }
        })
        .collect();
    let in_basis: HashSet<usize> = basis.iter().copied().collect();
    for (ri, row) in rows.iter().enumerate() {
        if in_basis.contains(&ri) || row.iter().all(|x| x.is_zero()) {
            continue;
        }
        let s: Vec<BigInt> = rays.iter().map(|r| idot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if s[i].is_zero() {
                    r.z.set(ri);
                }
            }
            continue;
        }
        let pairs: Vec<(usize, usize)> = pos.iter().flat_map(|&p| neg.iter().map(move |&q| (p, q))).collect();
        let fresh: Vec<Ray> = pairs
            .par_iter()
            .filter_map(|&(p, nn)| {
                let z = rays[p].z.and(&rays[nn].z);
                if z.count() + 2 < dim {
                    return None;
                }
                let blocked = rays.iter().enumerate().any(|(t, r)| t != p && t != nn && z.is_subset(&r.z));
                if blocked {
                    return None;
                }
                let v: Vec<BigInt> =
                    rays[nn].v.iter().zip(&rays[p].v).map(|(a, b)| &s[p] * a - &s[nn] * b).collect();
                let mut z = z;
                z.set(ri);
                Some(Ray { v: primitive(v), z })
            })
            .collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if s[i].is_negative() {
                continue;
            }
            if s[i].is_zero() {
                r.z.set(ri);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------------------
// V and H representations

fn dedup_points(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let set: BTreeSet<Vec<Q>> = points.iter().cloned().collect();
    set.into_iter().collect()
}

/// Affine hull: base point, coordinates onto which it projects injectively, equations.
fn affine_frame(points: &[Vec<Q>]) -> (Vec<usize>, Vec<Ineq>) {
    let p0 = &points[0];
    let diffs: Mat = points[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let n = p0.len();
    if diffs.is_empty() {
        let eqs = (0..n)
            .map(|i| {
                let mut a = vec![Q::zero(); n];
                a[i] = Q::one();
                Ineq { c: -p0[i].clone(), a }
            })
            .collect();
        return (Vec::new(), eqs);
    }
    let mut r = diffs.clone();
    let piv = linalg::rref(&mut r);
    let eqs = linalg::nullspace(&diffs, n)
        .into_iter()
        .map(|w| {
            let w = int_row(&w).into_iter().map(Q::from_integer).collect::<Vec<_>>();
            Ineq { c: -linalg::dot(&w, p0), a: w }
        })
        .collect();
    (piv, eqs)
}

/// Orders points so that likely vertices come first (helps the DD).
fn heuristic_order(points: &[Vec<Q>]) -> Vec<usize> {
    let d = points.first().map_or(0, |p| p.len());
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut first: Vec<usize> = Vec::new();
    let mut seen = vec![false; points.len()];
    for _ in 0..(4 * d + 8) {
        let w: Vec<Q> = (0..d).map(|_| q(rng.gen_range(-1000..=1000))).collect();
        let best = (0..points.len()).min_by(|&a, &b| linalg::dot(&w, &points[a]).cmp(&linalg::dot(&w, &points[b])));
        if let Some(b) = best {
            if !seen[b] {
                seen[b] = true;
                first.push(b);
            }
        }
    }
    first.extend((0..points.len()).filter(|&i| !seen[i]));
    first
}

fn affine_rank(pts: &[&Vec<Q>]) -> usize {
    if pts.is_empty() {
        return 0;
    }
    let m: Mat = pts[1..].iter().map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect()).collect();
    if m.is_empty() {
        0
    } else {
        linalg::rank(&m)
    }
}

impl PolytopeRep {
    /// Convex hull of a finite point set (V to H).
    pub fn from_points(points: &[Vec<Q>]) -> Result<PolytopeRep> {
        if points.is_empty() {
            return Err(Error::Degenerate("empty point set".into()));
        }
        let pts = dedup_points(points);
        let ambient = pts[0].len();
        let (coords, equations) = affine_frame(&pts);
        let d = coords.len();
        if d == 0 {
            return Ok(PolytopeRep { ambient, dim: 0, vertices: pts, equations, facets: Vec::new(), incidence: Vec::new() });
        }
        let proj: Vec<Vec<Q>> = pts.iter().map(|p| coords.iter().map(|&c| p[c].clone()).collect()).collect();
        let order = heuristic_order(&proj);
        let rows: Vec<Vec<BigInt>> = order
            .iter()
            .map(|&i| int_row(&std::iter::once(Q::one()).chain(proj[i].iter().cloned()).collect::<Vec<_>>()))
            .collect();
        let rays = dd_rays(&rows, d + 1)?;
        let fac: Vec<(Q, Vec<Q>)> = rays
            .into_iter()
            .map(|r| {
                let r: Vec<Q> = r.into_iter().map(Q::from_integer).collect();
                (r[0].clone(), r[1..].to_vec())
            })
            .collect();
        // vertices: points whose tight facet normals have rank d
        let tight: Vec<Vec<usize>> = proj
            .iter()
            .map(|p| (0..fac.len()).filter(|&f| (&fac[f].0 + linalg::dot(&fac[f].1, p)).is_zero()).collect())
            .collect();
        let is_vertex: Vec<bool> = tight
            .par_iter()
            .map(|t| t.len() >= d && linalg::rank(&t.iter().map(|&f| fac[f].1.clone()).collect()) == d)
            .collect();
        let vidx: Vec<usize> = (0..pts.len()).filter(|&i| is_vertex[i]).collect();
        let mut incidence = vec![Bits::new(vidx.len()); fac.len()];
        for (vi, &p) in vidx.iter().enumerate() {
            for &f in &tight[p] {
                incidence[f].set(vi);
            }
        }
        let facets = fac
            .into_iter()
            .map(|(c, a)| {
                let mut full = vec![Q::zero(); ambient];
                for (t, &col) in coords.iter().enumerate() {
                    full[col] = a[t].clone();
                }
                Ineq { c, a: full }
            })
            .collect();
        let vertices = vidx.iter().map(|&i| pts[i].clone()).collect();
        Ok(PolytopeRep { ambient, dim: d, vertices, equations, facets, incidence })
    }

    /// Vertices of a full-dimensional bounded {x : c + a.x >= 0} (H to V).
    /// Only facet-defining inequalities are kept, one per facet.
    pub fn from_inequalities(ambient: usize, ineqs: &[Ineq]) -> Result<PolytopeRep> {
        let mut rows: Vec<Vec<BigInt>> = vec![std::iter::once(BigInt::one()).chain((0..ambient).map(|_| BigInt::zero())).collect()];
        for h in ineqs {
            rows.push(int_row(&std::iter::once(h.c.clone()).chain(h.a.iter().cloned()).collect::<Vec<_>>()));
        }
        let rays = dd_rays(&rows, ambient + 1)?;
        let mut vertices = Vec::new();
        for r in rays {
            if !r[0].is_positive() {
                return Err(Error::Degenerate("inequalities define an unbounded region".into()));
            }
            let x0 = Q::from_integer(r[0].clone());
            vertices.push(r[1..].iter().map(|x| Q::from_integer(x.clone()) / &x0).collect::<Vec<Q>>());
        }
        vertices.sort();
        let dim = affine_rank(&vertices.iter().collect::<Vec<_>>());
        if dim < ambient {
            return Self::from_points(&vertices);
        }
        let mut seen: BTreeMap<Bits, usize> = BTreeMap::new();
        let mut facets = Vec::new();
        let mut incidence = Vec::new();
        for h in ineqs {
            let mut b = Bits::new(vertices.len());
            for (i, v) in vertices.iter().enumerate() {
                if h.eval(v).is_zero() {
                    b.set(i);
                }
            }
            if seen.contains_key(&b) {
                continue;
            }
            let on: Vec<&Vec<Q>> = b.iter().map(|i| &vertices[i]).collect();
            if affine_rank(&on) + 1 == ambient {
                seen.insert(b.clone(), facets.len());
                facets.push(h.clone());
                incidence.push(b);
            }
        }
        Ok(PolytopeRep { ambient, dim, vertices, equations: Vec::new(), facets, incidence })
    }

    /// Which of the given inequalities define facets.
    pub fn facet_defining(&self, ineqs: &[Ineq]) -> Vec<bool> {
        ineqs
            .iter()
            .map(|h| {
                let on: Vec<&Vec<Q>> = self.vertices.iter().filter(|v| h.eval(v).is_zero()).collect();
                self.vertices.iter().all(|v| !h.eval(v).is_negative()) && !on.is_empty() && affine_rank(&on) + 1 == self.dim
            })
            .collect()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero()) && self.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn vertex_set(&self) -> BTreeSet<Vec<Q>> {
        self.vertices.iter().cloned().collect()
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::new(self)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.face_lattice().f_vector()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| v.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "inequalities": self.facets.iter().map(Ineq::to_json).collect::<Vec<_>>(),
            "equations": self.equations.iter().map(Ineq::to_json).collect::<Vec<_>>(),
            "f_vector": self.f_vector(),
        })
    }
}

// ---------------------------------------------------------------------------
// extreme points, faces, sums

/// Extreme points by exact LP separation: each point against the hull of the others.
pub fn extreme_points_lp(points: &[Vec<Q>]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        if points[..i].contains(&points[i]) {
            continue;
        }
        let others: Vec<Vec<Q>> = points.iter().enumerate().filter(|(j, p)| *j != i && **p != points[i]).map(|(_, p)| p.clone()).collect();
        if !lp::in_convex_hull(&others, &points[i]) {
            out.push(i);
        }
    }
    out
}

/// Extreme points via the facet description (scales to large candidate sets).
pub fn extreme_points(points: &[Vec<Q>]) -> Result<Vec<usize>> {
    let p = PolytopeRep::from_points(points)?;
    let vs = p.vertex_set();
    let mut seen = BTreeSet::new();
    Ok((0..points.len()).filter(|&i| vs.contains(&points[i]) && seen.insert(points[i].clone())).collect())
}

pub fn minkowski_sum(a: &[Vec<Q>], b: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let sums: BTreeSet<Vec<Q>> =
        a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())).collect();
    let sums: Vec<Vec<Q>> = sums.into_iter().collect();
    let idx = extreme_points(&sums)?;
    Ok(idx.into_iter().map(|i| sums[i].clone()).collect())
}

pub fn minkowski_sum_all(parts: &[Vec<Vec<Q>>]) -> Result<Vec<Vec<Q>>> {
    let mut acc = parts.first().cloned().ok_or_else(|| Error::Degenerate("no summands".into()))?;
    for p in &parts[1..] {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Faces as vertex sets, closed under intersection with facets.
pub struct FaceLattice {
    pub faces: Vec<(Bits, i64)>,
    pub dim: usize,
}

impl FaceLattice {
    pub fn new(p: &PolytopeRep) -> Self {
        let nv = p.vertices.len();
        let full = Bits::full(nv);
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(full.clone());
        let mut queue = VecDeque::from([full]);
        while let Some(f) = queue.pop_front() {
            for inc in &p.incidence {
                let g = f.and(inc);
                if g != f && seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        seen.insert(Bits::new(nv));
        let mut faces: Vec<Bits> = seen.into_iter().collect();
        faces.sort();
        let faces = faces
            .into_par_iter()
            .map(|b| {
                let d = if b.is_empty() {
                    -1
                } else {
                    affine_rank(&b.iter().map(|i| &p.vertices[i]).collect::<Vec<_>>()) as i64
                };
                (b, d)
            })
            .collect();
        FaceLattice { faces, dim: p.dim }
    }

    /// Face counts by dimension from -1 (the empty face) to dim (the polytope).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 2];
        for (_, d) in &self.faces {
            f[(d + 1) as usize] += 1;
        }
        f
    }
}

/// The face minimizing a functional: minimum value and the vertices attaining it.
pub fn minimize_face(vertices: &[Vec<Q>], w: &[Q]) -> (Q, Vec<Vec<Q>>) {
    let vals: Vec<Q> = vertices.iter().map(|v| linalg::dot(w, v)).collect();
    let m = vals.iter().min().cloned().unwrap_or_else(Q::zero);
    let face = vertices.iter().zip(&vals).filter(|(_, x)| **x == m).map(|(v, _)| v.clone()).collect();
    (m, face)
}

/// Minimizes over a Minkowski sum summand by summand; the face of the sum is the sum of faces.
pub fn minimize_face_sum(parts: &[Vec<Vec<Q>>], w: &[Q]) -> Result<(Q, Vec<Vec<Vec<Q>>>, Vec<Vec<Q>>)> {
    let mut total = Q::zero();
    let mut faces = Vec::new();
    for p in parts {
        let (m, f) = minimize_face(p, w);
        total += m;
        faces.push(f);
    }
    let sum = minkowski_sum_all(&faces)?;
    Ok((total, faces, sum))
}

/// Regular subdivision induced by lifting: cells are index sets of the input points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub cells: Vec<Vec<usize>>,
    /// true when every cell is a simplex
    pub triangulation: bool,
}

pub fn lift_and_lower_hull(points: &[Vec<Q>], heights: &[Q]) -> Result<Subdivision> {
    if points.len() != heights.len() || points.is_empty() {
        return Err(Error::Dimension("one height per point".into()));
    }
    if dedup_points(points).len() != points.len() {
        return Err(Error::Degenerate("repeated point".into()));
    }
    let (coords, _) = affine_frame(points);
    let d = coords.len();
    let lifted: Vec<Vec<Q>> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| coords.iter().map(|&c| p[c].clone()).chain(std::iter::once(h.clone())).collect())
        .collect();
    let all: Vec<usize> = (0..points.len()).collect();
    let hull = PolytopeRep::from_points(&lifted)?;
    if hull.dim == d {
        return Ok(Subdivision { triangulation: points.len() == d + 1, cells: vec![all] });
    }
    let mut cells: Vec<Vec<usize>> = hull
        .facets
        .iter()
        .filter(|f| f.a[d].is_positive())
        .map(|f| all.iter().copied().filter(|&i| f.eval(&lifted[i]).is_zero()).collect())
        .collect();
    cells.sort();
    let triangulation = cells.iter().all(|c| c.len() == d + 1);
    Ok(Subdivision { cells, triangulation })
}

// ---------------------------------------------------------------------------
// grid coordinates

/// gamma_J in reduced coordinates on {row sums = lambda}: (constant, coefficients).
pub fn reduced_functional(g: &GridVector, lambda: &[Q]) -> (Q, Vec<Q>) {
    let c = g.cols();
    let mut coef = Vec::new();
    let mut cst = Q::zero();
    for i in 1..g.k {
        let last = g.get(i, c).clone();
        cst += &last * &lambda[i - 1];
        for j in 1..c {
            coef.push(g.get(i, j) - &last);
        }
    }
    (cst, coef)
}

/// Full grid vector from reduced coordinates on {row sums = lambda}.
pub fn from_reduced_affine(k: usize, n: usize, r: &[Q], lambda: &[Q]) -> GridVector {
    let mut v = GridVector::from_reduced(k, n, r);
    for i in 1..k {
        v.add_at(i, n - k, &lambda[i - 1]);
    }
    v
}

fn exps_to_points(p: &MultiPoly) -> Vec<Vec<Q>> {
    p.exponents().into_iter().map(|e| e.into_iter().map(|x| q(x as i64)).collect()).collect()
}

/// Newton polytope of a polynomial, optionally divided by a monomial.
pub fn newton(poly: &MultiPoly, shift: Option<&[i64]>) -> Result<PolytopeRep> {
    if poly.is_zero() {
        return Err(Error::Degenerate("Newton polytope of zero".into()));
    }
    let mut pts = exps_to_points(poly);
    if let Some(s) = shift {
        for p in pts.iter_mut() {
            for (x, t) in p.iter_mut().zip(s) {
                *x -= q(*t);
            }
        }
    }
    PolytopeRep::from_points(&pts)
}

fn zero_lambda(k: usize) -> Vec<Q> {
    vec![Q::zero(); k - 1]
}

fn grid_points(vs: &[Vec<Q>], k: usize, n: usize, lambda: &[Q]) -> Vec<GridVector> {
    vs.iter().map(|r| from_reduced_affine(k, n, r, lambda)).collect()
}

// ---------------------------------------------------------------------------
// PK polytope

/// The inequalities gamma_J + 1 >= 0, J nonfrozen, in reduced coordinates.
pub fn pk_inequalities(k: usize, n: usize) -> Result<Vec<(KSubset, Ineq)>> {
    let lam = zero_lambda(k);
    Ok(combinat::nonfrozen_subsets(k, n)?
        .into_iter()
        .map(|j| {
            let (c, a) = reduced_functional(&gamma_hat(&j), &lam);
            (j, Ineq { c: c + Q::one(), a })
        })
        .collect())
}

/// The PK polytope from its inequalities.
pub fn pk_polytope(k: usize, n: usize) -> Result<PolytopeRep> {
    check_ambient(k, n)?;
    let ineqs: Vec<Ineq> = pk_inequalities(k, n)?.into_iter().map(|(_, h)| h).collect();
    PolytopeRep::from_inequalities((k - 1) * (n - k - 1), &ineqs)
}

/// Vertices (full grid) of Newt(P_1..P_{k-1} Q_1..Q_{n-k-1}) divided by prod x.
pub fn pk_laurent_newton(k: usize, n: usize) -> Result<Vec<GridVector>> {
    let (ps, qs) = polynomial::pk_factors(k, n)?;
    let parts: Vec<Vec<Vec<Q>>> = ps.iter().chain(&qs).map(exps_to_points).collect();
    let mut verts = minkowski_sum_all(&parts)?;
    for v in verts.iter_mut() {
        for x in v.iter_mut() {
            *x -= Q::one();
        }
    }
    verts.sort();
    verts.into_iter().map(|v| GridVector::from_flat(k, n, v)).collect()
}

#[derive(Clone, Debug)]
pub struct PkCheck {
    pub facets: usize,
    pub all_facet_defining: bool,
    pub vertices: usize,
    pub matches_newton: bool,
    pub min_gamma_is_minus_one: bool,
    pub in_cube: bool,
}

pub fn pk_check(k: usize, n: usize) -> Result<PkCheck> {
    let hs = pk_inequalities(k, n)?;
    let ineqs: Vec<Ineq> = hs.iter().map(|(_, h)| h.clone()).collect();
    let p = PolytopeRep::from_inequalities((k - 1) * (n - k - 1), &ineqs)?;
    let verts: BTreeSet<GridVector> = grid_points(&p.vertices, k, n, &zero_lambda(k)).into_iter().collect();
    let newt: BTreeSet<GridVector> = pk_laurent_newton(k, n)?.into_iter().collect();
    let min_ok = hs.iter().all(|(j, _)| verts.iter().map(|v| gamma_hat(j).pair(v)).min() == Some(q(-1)));
    let in_cube = verts.iter().all(|v| v.flat().iter().all(|x| *x >= q(-1) && *x <= q(2)));
    Ok(PkCheck {
        facets: p.facets.len(),
        all_facet_defining: p.facet_defining(&ineqs).iter().all(|&b| b),
        vertices: verts.len(),
        matches_newton: verts == newt,
        min_gamma_is_minus_one: min_ok,
        in_cube,
    })
}

// ---------------------------------------------------------------------------
// root polytope

/// conv{v_J} in reduced coordinates, or conv({0} u {gamma_J}) on the full grid when `hat`.
pub fn root_polytope(k: usize, n: usize, hat: bool) -> Result<PolytopeRep> {
    let js = combinat::nonfrozen_subsets(k, n)?;
    let pts: Vec<Vec<Q>> = if hat {
        std::iter::once(vec![Q::zero(); (k - 1) * (n - k)]).chain(js.iter().map(|j| gamma_hat(j).flat().to_vec())).collect()
    } else {
        js.iter().map(|j| v_root(j).reduced()).collect()
    };
    PolytopeRep::from_points(&pts)
}

/// Vertices of the PK polytope correspond to facets of the root polytope and back.
pub fn duality_check(k: usize, n: usize) -> Result<bool> {
    let pi = pk_polytope(k, n)?;
    let r = root_polytope(k, n, false)?;
    let js = combinat::nonfrozen_subsets(k, n)?;
    if r.vertices.len() != js.len() || r.facets.len() != pi.vertices.len() {
        return Ok(false);
    }
    let vj: Vec<Vec<Q>> = js.iter().map(|j| v_root(j).reduced()).collect();
    let r_sets: BTreeSet<BTreeSet<usize>> = r
        .incidence
        .iter()
        .map(|b| b.iter().map(|i| vj.iter().position(|v| *v == r.vertices[i]).unwrap()).collect())
        .collect();
    let lam = zero_lambda(k);
    let mut pi_sets = BTreeSet::new();
    for a in &pi.vertices {
        let alpha = from_reduced_affine(k, n, a, &lam);
        let vals: Vec<Q> = js.iter().map(|j| gamma_hat(j).pair(&alpha)).collect();
        if vals.iter().any(|x| *x < q(-1)) {
            return Ok(false);
        }
        pi_sets.insert((0..js.len()).filter(|&t| vals[t] == q(-1)).collect::<BTreeSet<usize>>());
    }
    Ok(r_sets == pi_sets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeReport {
    pub collections: usize,
    pub volume: BigInt,
    pub unimodular: bool,
}

/// Relative volume of the root polytope (units of 1/d!) from the noncrossing triangulation.
pub fn triangulation_volume(k: usize, n: usize, cap: usize) -> Result<VolumeReport> {
    let fan = Fan::new(k, n)?;
    let cols = combinat::enumerate_maximal_noncrossing(k, n, cap)?;
    let dets: Vec<Q> = cols.par_iter().map(|c| fan.lattice_det(&c.members)).collect::<Result<_>>()?;
    let volume = dets.iter().fold(BigInt::zero(), |s, d| s + d.abs().to_integer());
    Ok(VolumeReport { collections: cols.len(), unimodular: dets.iter().all(|d| d.abs().is_one()), volume })
}

// ---------------------------------------------------------------------------
// fibered simplex, planar faces, PK associahedron

/// 0/1 vertices of the fibered simplex: one 1 per row, columns weakly increasing down the rows.
pub fn omega_vertices(k: usize, m: usize) -> Vec<GridVector> {
    let n = k + m;
    let mut out = Vec::new();
    for cols in weakly_increasing(k - 1, m) {
        let mut v = GridVector::zeros(k, n);
        for (r, c) in cols.iter().enumerate() {
            v.set(r + 1, *c, Q::one());
        }
        out.push(v);
    }
    out
}

fn weakly_increasing(len: usize, top: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in weakly_increasing(len - 1, top) {
        let lo = rest.last().copied().unwrap_or(1);
        for c in lo..=top {
            let mut t = rest.clone();
            t.push(c);
            out.push(t);
        }
    }
    out
}

pub fn planar_face(i: usize, j: &[usize], k: usize, n: usize) -> Result<PolytopeRep> {
    newton(&polynomial::delta(i, j, k, n)?, None)
}

/// Vertex lists of all planar faces, in index order.
pub fn planar_face_summands(k: usize, n: usize) -> Result<Vec<Vec<Vec<Q>>>> {
    polynomial::planar_face_indices(k, n)
        .into_iter()
        .map(|(i, j)| Ok(exps_to_points(&polynomial::delta(i, &j, k, n)?)))
        .collect()
}

/// Minkowski sum of all planar faces and the number of summands.
pub fn pk_associahedron(k: usize, n: usize) -> Result<(PolytopeRep, usize)> {
    check_ambient(k, n)?;
    let parts = planar_face_summands(k, n)?;
    let verts = minkowski_sum_all(&parts)?;
    Ok((PolytopeRep::from_points(&verts)?, parts.len()))
}

/// binom(n,k) - k(n-k) - 1.
pub fn summand_count_formula(k: usize, n: usize) -> usize {
    let b = combinat::all_subsets_raw(k, n).len();
    b - k * (n - k) - 1
}

#[derive(Clone, Debug)]
pub struct TauFacets {
    pub constants: Vec<(KSubset, Q)>,
    pub lambda: Vec<Q>,
    /// subsets whose inequality gamma_J >= c_J is facet-defining
    pub facet_subsets: Vec<KSubset>,
    /// distinct non-monomial factors of prod tau coincide with the planar face polynomials
    pub factors_are_planar_faces: bool,
    /// {gamma_J >= c_J} has exactly the vertices of Newt(prod tau) (up to the monomial part)
    pub matches_newton: bool,
    pub polytope: PolytopeRep,
    pub grid_vertices: Vec<GridVector>,
}

fn strip_monomial(f: &MultiPoly) -> MultiPoly {
    let g = f.monomial_content();
    MultiPoly::from_terms(f.k, f.n, f.terms().map(|(m, c)| (m.0.iter().zip(&g).map(|(a, b)| a - b).collect(), c.clone())))
}

/// Facet constants of the Newton polytope of the product of face polynomials.
pub fn tau_newton_facets(k: usize, n: usize) -> Result<TauFacets> {
    check_ambient(k, n)?;
    let mut factors: BTreeSet<MultiPoly> = BTreeSet::new();
    for j in combinat::all_subsets(k, n) {
        for f in polynomial::tau_factors(j.elems(), k, n)? {
            if f.len() > 1 {
                factors.insert(strip_monomial(&f));
            }
        }
    }
    let faces: BTreeSet<MultiPoly> = polynomial::planar_face_indices(k, n)
        .into_iter()
        .map(|(i, j)| polynomial::delta(i, &j, k, n))
        .collect::<Result<_>>()?;
    let factors_are_planar_faces = factors == faces;
    let parts: Vec<Vec<Vec<Q>>> = faces.iter().map(exps_to_points).collect();
    let cols = n - k;
    let lambda: Vec<Q> = (0..k - 1).map(|r| parts.iter().map(|p| p[0][r * cols..(r + 1) * cols].iter().sum::<Q>()).sum()).collect();
    let js = combinat::nonfrozen_subsets(k, n)?;
    let constants: Vec<(KSubset, Q)> = js
        .iter()
        .map(|j| {
            let g = gamma_hat(j);
            let c = parts.iter().map(|p| p.iter().map(|e| linalg::dot(g.flat(), e)).min().unwrap()).sum();
            (j.clone(), c)
        })
        .collect();
    let ineqs: Vec<Ineq> = constants
        .iter()
        .map(|(j, c)| {
            let (c0, a) = reduced_functional(&gamma_hat(j), &lambda);
            Ineq { c: c0 - c, a }
        })
        .collect();
    let poly = PolytopeRep::from_inequalities((k - 1) * (cols - 1), &ineqs)?;
    let fd = poly.facet_defining(&ineqs);
    let facet_subsets = js.iter().zip(&fd).filter(|(_, &b)| b).map(|(j, _)| j.clone()).collect();
    let grid_vertices = grid_points(&poly.vertices, k, n, &lambda);
    // each H-vertex must be the unique minimizer over the Minkowski sum of a
    // direction interior to its normal cone
    let matches_newton = grid_vertices.par_iter().all(|v| {
        let mut w = vec![Q::zero(); v.flat().len()];
        for (t, (j, c)) in constants.iter().enumerate() {
            if !fd[t] || gamma_hat(j).pair(v) != *c {
                continue;
            }
            for (x, y) in w.iter_mut().zip(gamma_hat(j).flat()) {
                *x += y;
            }
        }
        let mut sum = vec![Q::zero(); w.len()];
        for p in &parts {
            let (_, f) = minimize_face(p, &w);
            if f.len() != 1 {
                return false;
            }
            for (x, y) in sum.iter_mut().zip(&f[0]) {
                *x += y;
            }
        }
        sum == v.flat()
    });
    Ok(TauFacets { constants, lambda, facet_subsets, factors_are_planar_faces, matches_newton, polytope: poly, grid_vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Q>> {
        v.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn square_round_trip() {
        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[1, 1]]);
        let p = PolytopeRep::from_points(&sq).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.facets.len(), 4);
        assert_eq!(p.f_vector(), vec![1, 4, 4, 1]);
        let back = PolytopeRep::from_inequalities(2, &p.facets).unwrap();
        assert_eq!(back.vertex_set(), p.vertex_set());
    }

    #[test]
    fn collinear_and_simplex() {
        let line = pts(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert_eq!(extreme_points_lp(&line), vec![0, 2]);
        assert_eq!(extreme_points(&line).unwrap(), vec![0, 2]);
        let simplex = pts(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let p = PolytopeRep::from_points(&simplex).unwrap();
        assert_eq!(p.dim, 3);
        assert_eq!(p.f_vector(), vec![1, 4, 6, 4, 1]);
        assert_eq!(p.equations.len(), 1);
    }

    #[test]
    fn lifting() {
        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let flat = lift_and_lower_hull(&sq, &[q(0), q(1), q(2), q(3)]).unwrap();
        assert_eq!(flat.cells.len(), 1);
        let bent = lift_and_lower_hull(&sq, &[q(0), q(0), q(0), q(1)]).unwrap();
        assert_eq!(bent.cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(bent.triangulation);
    }

    #[test]
    fn omega_counts() {
        assert_eq!(omega_vertices(2, 4).len(), 4);
        assert_eq!(omega_vertices(3, 1).len(), 1);
        assert_eq!(omega_vertices(3, 2).len(), 3);
        assert_eq!(omega_vertices(4, 3).len(), 10);
    }
}
