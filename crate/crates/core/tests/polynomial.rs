use std::collections::BTreeSet;

use grascat::combinat::{compatibility_degree, nonfrozen_subsets, KSubset};
use grascat::polynomial::*;
use grascat::rat::q;
use grascat::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn ks(n: usize, s: &str) -> KSubset {
    KSubset::parse(n, s).unwrap()
}

/// "11.21 + 12.22" is x_{1,1}x_{2,1} + x_{1,2}x_{2,2}; single-digit indices only.
fn poly(k: usize, n: usize, s: &str) -> MultiPoly {
    s.split('+').fold(MultiPoly::zero(k, n), |acc, mono| {
        let m = mono.trim().split('.').fold(MultiPoly::one(k, n), |m, v| {
            let d: Vec<usize> = v.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            m.mul(&MultiPoly::var(k, n, d[0], d[1]))
        });
        acc.add(&m)
    })
}

fn tau_ratio(k: usize, n: usize, num: &[&[usize]], den: &[&[usize]]) -> FactoredRatio {
    let f = |ts: &[&[usize]]| ts.iter().flat_map(|t| tau_factors(t, k, n).unwrap()).collect::<Vec<_>>();
    FactoredRatio::new(k, n, f(num), f(den)).unwrap()
}

#[test]
fn ring_examples() {
    let (x, y) = (MultiPoly::var(2, 4, 1, 1), MultiPoly::var(2, 4, 1, 2));
    assert_eq!(x.add(&y).mul(&x.sub(&y)), x.pow(2).sub(&y.pow(2)));
    assert_eq!(x.add(&y).eval(&[q(1), q(1)]), q(2));
    let id = vec![vec![MultiPoly::one(2, 4), MultiPoly::zero(2, 4)], vec![MultiPoly::zero(2, 4), MultiPoly::one(2, 4)]];
    assert_eq!(det(&id).unwrap(), MultiPoly::one(2, 4));
    assert!(det(&[vec![x.clone()], vec![y.clone()]]).is_err());
}

#[test]
fn tau_displays() {
    let t = tau(&ks(8, "2378"));
    assert_eq!(t, poly(4, 8, "11.21 + 11.22 + 12.22 + 11.23 + 12.23 + 11.24 + 12.24").mul(&poly(4, 8, "34")));
    assert_eq!(tau(&ks(6, "236")), poly(3, 6, "11.21 + 11.22 + 12.22 + 11.23 + 12.23"));
    assert_eq!(tau(&ks(6, "236")).len(), 5);
    // row-2 window [j-2, k-3]
    assert_eq!(tau(&ks(7, "146")), poly(3, 7, "22 + 23"));
}

#[test]
fn pk_factor_shapes() {
    let (p, qs) = pk_factors(3, 6).unwrap();
    assert_eq!(p[0], poly(3, 6, "11 + 12 + 13"));
    assert_eq!(qs[0], poly(3, 6, "11.21 + 11.22 + 12.22"));
    for (k, n) in [(3, 7), (4, 8), (5, 10)] {
        let (p, qs) = pk_factors(k, n).unwrap();
        assert_eq!(p.len(), k - 1);
        assert_eq!(qs.len(), n - k - 1);
        assert!(qs.iter().all(|f| f.len() == k));
    }
}

#[test]
fn delta_displays() {
    assert_eq!(delta(1, &[1, 2, 3], 3, 6).unwrap(), poly(3, 6, "11.21 + 11.22 + 12.22"));
    assert_eq!(delta(2, &[1, 2, 4], 4, 8).unwrap(), poly(4, 8, "21.31 + 21.32 + 21.33 + 22.32 + 22.33"));
    assert_eq!(delta(1, &[1, 3, 4], 3, 6).unwrap(), poly(3, 6, "11.22 + 12.22 + 11.23 + 12.23 + 13.23"));
    // every weakly increasing column choice is a vertex, including a1 < a2 = 3
    let want = poly(4, 8, "11 + 12").mul(&poly(4, 8, "22")).mul(&poly(4, 8, "32 + 33 + 34"))
        .add(&poly(4, 8, "11 + 12 + 13").mul(&poly(4, 8, "23")).mul(&poly(4, 8, "33 + 34")));
    assert_eq!(delta(1, &[1, 3, 4, 6], 4, 8).unwrap(), want);
    assert!(delta(1, &[3], 3, 6).is_err());
}

#[test]
fn bcfw_entries_and_minors() {
    assert_eq!(bcfw_entry(3, 4, 4, 9), poly(4, 9, "31 + 32 + 33 + 34"));
    assert_eq!(bcfw_entry(1, 2, 4, 9), poly(4, 9, "11.21.31 + 11.21.32 + 11.22.32 + 12.22.32"));
    let m13 = poly(3, 6, "11.21 + 11.22 + 11.23 + 12.22 + 12.23 + 13.23");
    assert_eq!(bcfw_entry(1, 3, 3, 6), m13);
    let m = bcfw_matrix(3, 6).unwrap();
    assert_eq!(plucker(&[1, 2, 3], &m).unwrap(), MultiPoly::one(3, 6));
    assert_eq!(plucker(&[2, 3, 6], &m).unwrap(), m13);
    assert_eq!(plucker(&[3, 5, 6], &m).unwrap(), poly(3, 6, "12.21 + 13.21 + 13.22").mul(&poly(3, 6, "23")));
}

#[test]
fn plucker_positivity() {
    for (k, n) in [(3, 6), (3, 7), (3, 8), (4, 7), (4, 8)] {
        let m = bcfw_matrix(k, n).unwrap();
        for j in grascat::combinat::all_subsets(k, n) {
            let p = plucker(j.elems(), &m).unwrap();
            assert!(!p.is_zero() && p.coefficients_nonnegative(), "({k},{n}) p{j}");
        }
    }
}

#[test]
fn resolved_minor_displays() {
    let m = bcfw_matrix(3, 7).unwrap();
    let p357 = resolved_minor(&ks(7, "357"), &m).unwrap();
    assert_eq!(p357, poly(3, 7, "12.23 + 13.23 + 12.24 + 13.24 + 14.24").mul(&poly(3, 7, "21")));
    let m6 = bcfw_matrix(3, 6).unwrap();
    let p = |s: &[usize]| plucker(s, &m6).unwrap();
    for (j, d) in [("236", [1, 4, 5]), ("356", [1, 2, 4])] {
        let hat = resolved_minor(&ks(6, j), &m6).unwrap();
        assert_eq!(hat.mul(&p(&d)), p(ks(6, j).elems()).mul(&p(&d)).sub(&p(&[1, 2, 3]).mul(&p(&[4, 5, 6]))), "{j}");
    }
}

#[test]
fn resolved_minors_are_exact_and_positive() {
    for n in 6..=8 {
        let m = bcfw_matrix(3, n).unwrap();
        for j in nonfrozen_subsets(3, n).unwrap() {
            let hat = resolved_minor(&j, &m).unwrap();
            assert!(hat.coefficients_nonnegative(), "(3,{n}) {j}");
        }
    }
    let x = compound_x(&bcfw_matrix(3, 7).unwrap(), [(1, 2), (3, 4), (5, 6)]).unwrap();
    let a = compound_a(&bcfw_matrix(3, 7).unwrap(), 3, 5, 6).unwrap();
    let p167 = plucker(&[1, 6, 7], &bcfw_matrix(3, 7).unwrap()).unwrap();
    assert_eq!(a, x.mul(&p167));
}

#[test]
fn resolution_set_matches_criterion() {
    for n in [6, 7] {
        let m = bcfw_matrix(3, n).unwrap();
        let changed: Vec<KSubset> = nonfrozen_subsets(3, n)
            .unwrap()
            .into_iter()
            .filter(|j| resolved_minor(j, &m).unwrap() != plucker(j.elems(), &m).unwrap())
            .collect();
        assert_eq!(changed, lexicographic_resolution_set(3, n).unwrap());
    }
    let seven: Vec<KSubset> = ["236", "237", "247", "347", "356", "357", "367", "467"].iter().map(|s| ks(7, s)).collect();
    assert_eq!(lexicographic_resolution_set(3, 7).unwrap(), seven);
    let counts: Vec<usize> = (6..=9).map(|n| lexicographic_resolution_set(3, n).unwrap().len()).collect();
    assert_eq!(counts, [2, 8, 19, 36]);
}

#[test]
fn u_variable_forms() {
    let u = u_variable(&ks(6, "236")).unwrap();
    let want = FactoredRatio::new(
        3,
        6,
        vec![poly(3, 6, "11 + 12"), poly(3, 6, "22 + 23")],
        vec![poly(3, 6, "11.21 + 11.22 + 12.22 + 11.23 + 12.23")],
    )
    .unwrap();
    assert!(u.equals(&want).unwrap());
    for i in 2..=4 {
        let u = u_variable(&KSubset::of(7, &[i, 6, 7])).unwrap();
        assert!(u.equals(&tau_ratio(3, 7, &[&[i + 1, 6, 7]], &[&[i, 6, 7]])).unwrap(), "u{i}67");
    }
    let u = u_variable(&ks(8, "1358")).unwrap();
    assert!(u.equals(&tau_ratio(4, 8, &[&[2, 3, 5, 8], &[1, 3, 6, 7]], &[&[1, 3, 5, 8], &[2, 3, 6, 7]])).unwrap());
    assert!(u_variable(&ks(6, "123")).is_err());
}

#[test]
fn tail_ratio_index_is_not_lowered() {
    // tau_{i,n-1,n}/tau_{i-1,n-1,n} in place of u_{i,n-1,n} breaks the identity
    let j = ks(7, "367");
    let lowered = tau_ratio(3, 7, &[&[3, 6, 7]], &[&[2, 6, 7]]);
    let mut prod = FactoredRatio::one(3, 7);
    for (i, c) in crossing_exponents(&j).unwrap() {
        prod = prod.mul(&u_variable(&i).unwrap().pow(c)).unwrap();
    }
    assert!(u_variable(&j).unwrap().sums_to_one(&prod).unwrap());
    assert!(!lowered.sums_to_one(&prod).unwrap());
}

fn crossing_set(j: &KSubset) -> BTreeSet<(KSubset, u32)> {
    crossing_exponents(j).unwrap().into_iter().collect()
}

#[test]
fn identity_examples() {
    let want: BTreeSet<(KSubset, u32)> = ["135", "136", "235", "236"].iter().map(|s| (ks(6, s), 1)).collect();
    assert_eq!(crossing_set(&ks(6, "124")), want);
    assert!(crossing_set(&ks(6, "135")).contains(&(ks(6, "246"), 2)));
    for (n, j) in [(6, "124"), (6, "135"), (8, "2367"), (8, "2368")] {
        assert!(binary_identity_check(&ks(n, j), &IdentityMode::Symbolic).unwrap().pass, "{j}");
    }
}

#[test]
fn unit_exponents_break_the_2368_identity() {
    let j = ks(8, "2368");
    let ex = crossing_exponents(&j).unwrap();
    let doubled: Vec<&KSubset> = ex.iter().filter(|(_, c)| *c == 2).map(|(i, _)| i).collect();
    let listed: Vec<KSubset> = ["1247", "1257", "1347", "1357"].iter().map(|s| ks(8, s)).collect();
    assert_eq!(doubled, listed.iter().collect::<Vec<_>>());
    let uj = u_variable(&j).unwrap();
    let mut flat = FactoredRatio::one(4, 8);
    let mut graded = FactoredRatio::one(4, 8);
    for (i, c) in &ex {
        let ui = u_variable(i).unwrap();
        flat = flat.mul(&ui).unwrap();
        graded = graded.mul(&ui.pow(*c)).unwrap();
    }
    assert!(uj.sums_to_one(&graded).unwrap());
    assert!(!uj.sums_to_one(&flat).unwrap());
}

#[test]
fn random_mode_reports() {
    let mode = IdentityMode::Random { trials: 20, seed: 7 };
    let js = nonfrozen_subsets(3, 9).unwrap();
    let a = binary_identity_checks(&js, &mode).unwrap();
    assert!(a.iter().all(|v| v.pass && v.witness.is_none()));
    assert_eq!(a, binary_identity_checks(&js, &mode).unwrap());
    let one = binary_identity_check(&ks(9, "258"), &mode).unwrap();
    assert_eq!(one.to_json()["mode"]["random"]["seed"], 7);
}

#[test]
fn minor_ratios_give_row_fractions() {
    for (k, n) in [(3, 6), (4, 8)] {
        let r = root_potential_check(k, n).unwrap();
        assert_eq!(r.len(), (k - 1) * (n - k));
        assert!(r.iter().all(|(_, ok)| *ok), "({k},{n})");
    }
    let m = bcfw_matrix(3, 6).unwrap();
    let p = |s: &[usize]| plucker(s, &m).unwrap();
    let (ps, _) = pk_factors(3, 6).unwrap();
    let lhs = FactoredRatio::new(3, 6, vec![p(&[1, 5, 6]), p(&[2, 3, 4])], vec![p(&[1, 3, 4]), p(&[2, 5, 6])]).unwrap();
    assert!(lhs.equals(&FactoredRatio::new(3, 6, vec![poly(3, 6, "11")], vec![ps[0].clone()]).unwrap()).unwrap());
    let lhs = FactoredRatio::new(3, 6, vec![p(&[1, 2, 3]), p(&[1, 5, 6])], vec![p(&[1, 2, 5]), p(&[1, 3, 6])]).unwrap();
    assert!(lhs.equals(&FactoredRatio::new(3, 6, vec![poly(3, 6, "23")], vec![ps[1].clone()]).unwrap()).unwrap());
    let m = bcfw_matrix(4, 8).unwrap();
    let p = |s: &[usize]| plucker(s, &m).unwrap();
    let (ps, _) = pk_factors(4, 8).unwrap();
    let lhs =
        FactoredRatio::new(4, 8, vec![p(&[1, 2, 3, 4]), p(&[1, 2, 7, 8])], vec![p(&[1, 2, 3, 7]), p(&[1, 2, 4, 8])]).unwrap();
    assert!(lhs.equals(&FactoredRatio::new(4, 8, vec![poly(4, 8, "34")], vec![ps[2].clone()]).unwrap()).unwrap());
}

fn rational_point(len: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((1i64..=10_000, 1i64..=10_000), len)
        .prop_map(|v| v.into_iter().map(|(a, b)| Q::new(BigInt::from(a), BigInt::from(b))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_evaluation_routes_agree(x in rational_point(12)) {
        // (4,8) has 12 variables
        for j in nonfrozen_subsets(4, 8).unwrap() {
            prop_assert_eq!(tau(&j).eval(&x), tau_eval(j.elems(), 4, 8, &x));
        }
    }

    #[test]
    fn identities_hold_at_rational_points(x in rational_point(8)) {
        // (3,7): 8 variables; independent of the batch evaluator
        let js = nonfrozen_subsets(3, 7).unwrap();
        for j in &js {
            let mut prod = Q::one();
            for i in &js {
                let c = compatibility_degree(i, j).unwrap();
                if c > 0 {
                    prod *= num_traits::pow(u_eval(i, &x).unwrap(), c as usize);
                }
            }
            let uj = u_eval(j, &x).unwrap();
            prop_assert!(uj.is_positive() && uj < Q::one());
            prop_assert_eq!(uj + prod, Q::one(), "{}", j);
            prop_assert_eq!(u_variable(j).unwrap().eval(&x).unwrap(), u_eval(j, &x).unwrap());
        }
    }
}
