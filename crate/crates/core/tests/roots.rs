use std::collections::BTreeMap;
use std::sync::OnceLock;

use grascat::combinat::{all_subsets_raw, enumerate_maximal_noncrossing, is_noncrossing, KSubset, DEFAULT_CLIQUE_CAP};
use grascat::rat::q;
use grascat::roots::*;
use grascat::{Error, Q};
use num_traits::Signed;
use proptest::prelude::*;

fn ks(n: usize, s: &str) -> KSubset {
    KSubset::parse(n, s).unwrap()
}

fn combo(n: usize, terms: &[(&str, i64)]) -> BTreeMap<KSubset, Q> {
    terms.iter().map(|(s, c)| (ks(n, s), q(*c))).collect()
}

fn units(k: usize, n: usize, cells: &[(usize, usize)]) -> GridVector {
    cells.iter().fold(GridVector::zeros(k, n), |acc, &(i, j)| acc.add(&GridVector::unit(k, n, i, j)))
}

#[test]
fn gamma_examples() {
    assert_eq!(gamma_hat(&ks(6, "135")), units(3, 6, &[(1, 1), (2, 2)]));
    assert!(gamma_hat(&ks(6, "123")).is_zero());
    assert_eq!(gamma_hat(&ks(9, "1458")), units(4, 9, &[(1, 1), (1, 2), (3, 3), (3, 4)]));
}

#[test]
fn projection_examples() {
    let e11 = GridVector::unit(3, 6, 1, 1);
    assert_eq!(project_f(&e11), e11.sub(&GridVector::unit(3, 6, 1, 2)));
    assert!(project_f(&units(3, 6, &[(1, 1), (1, 2), (1, 3)])).is_zero());
    let v = v_root(&ks(6, "135"));
    assert!((1..3).all(|i| v.row_sum(i) == q(0)));
    assert!(v_root(&ks(6, "156")).is_zero());
}

#[test]
fn root_sums_in_f_coordinates() {
    let a = v_root(&ks(6, "124")).add(&v_root(&ks(6, "356")));
    assert_eq!(a, project_f(&units(3, 6, &[(1, 3), (2, 1)])));
    let b = v_root(&ks(6, "145")).add(&v_root(&ks(6, "236")));
    assert_eq!(b, project_f(&units(3, 6, &[(1, 1), (1, 2), (2, 2), (2, 3)])));
}

#[test]
fn interleaved_diagonals_agree() {
    let diags = cube_diagonals(&[1, 3, 5], &[2, 4, 6], &[], 6).unwrap();
    assert_eq!(diags.len(), 4);
    let s0 = gamma_hat(&diags[0].0).add(&gamma_hat(&diags[0].1));
    for (x, y) in &diags {
        assert_eq!(gamma_hat(x).add(&gamma_hat(y)), s0);
    }
    assert!(diags.contains(&(ks(6, "145"), ks(6, "236"))));
}

#[test]
fn jacobi_degeneration() {
    // {b} u I u {c} = {2,3,4} is an interval, so the fourth term vanishes
    assert!(gamma_hat(&ks(6, "234")).is_zero());
    let lhs = gamma_hat(&ks(6, "134")).add(&gamma_hat(&ks(6, "236")));
    assert_eq!(lhs, gamma_hat(&ks(6, "136")));
    assert!(check_four_term(&[3], 1, 2, 4, 6, 6).unwrap());
}

#[test]
fn twelve_label_four_term() {
    let v = |s: &[usize]| v_root(&KSubset::of(12, s));
    let lhs = v(&[1, 3, 5, 7, 9, 11]).add(&v(&[2, 4, 6, 8, 10, 12]));
    let rhs = v(&[1, 4, 5, 8, 9, 12]).add(&v(&[2, 3, 6, 7, 10, 11]));
    assert_eq!(lhs, rhs);
}

#[test]
fn antipode_examples() {
    let (a, b) = cube_antipode(&[2, 5], &[3, 7], &[], 8).unwrap();
    assert_eq!((a, b), (ks(8, "27"), ks(8, "35")));
    let (a, b) = cube_antipode(&[1, 3, 5, 7, 9, 11], &[2, 4, 6, 8, 10, 12], &[], 12).unwrap();
    assert_eq!(a, KSubset::of(12, &[1, 4, 5, 8, 9, 12]));
    assert_eq!(b, KSubset::of(12, &[2, 3, 6, 7, 10, 11]));
    assert!(is_noncrossing(&a, &b));
    let (a, b) = cube_antipode(&[1, 3, 5], &[2, 4, 8], &[6, 10], 10).unwrap();
    assert_eq!(a, KSubset::of(10, &[1, 4, 5, 6, 10]));
    assert_eq!(b, KSubset::of(10, &[2, 3, 6, 8, 10]));
    assert!(is_noncrossing(&a, &b));
    let lhs = gamma_hat(&KSubset::of(10, &[1, 3, 5, 6, 10])).add(&gamma_hat(&KSubset::of(10, &[2, 4, 6, 8, 10])));
    assert_eq!(lhs, gamma_hat(&a).add(&gamma_hat(&b)));
    assert!(cube_antipode(&[1, 3], &[2, 2], &[], 6).is_err());
    assert!(cube_antipode(&[1, 3], &[2, 4], &[3], 6).is_err());
}

#[test]
fn five_ten_identity() {
    let v = |s: &[usize]| v_root(&KSubset::of(10, s));
    assert_eq!(v(&[1, 3, 5, 7, 9]).add(&v(&[2, 4, 6, 8, 10])), v(&[1, 4, 5, 8, 9]).add(&v(&[2, 3, 6, 7, 10])));
    assert!(is_noncrossing(&KSubset::of(10, &[1, 4, 5, 8, 9]), &KSubset::of(10, &[2, 3, 6, 7, 10])));
}

#[test]
fn four_term_exhaustive() {
    for (k, n) in [(3, 6), (3, 7), (3, 8), (4, 8)] {
        for abcd in all_subsets_raw(4, n) {
            let rest: Vec<usize> = (1..=n).filter(|x| !abcd.contains(x)).collect();
            for pick in all_subsets_raw(k - 2, rest.len()) {
                let i: Vec<usize> = pick.iter().map(|&p| rest[p - 1]).collect();
                assert!(check_four_term(&i, abcd[0], abcd[1], abcd[2], abcd[3], n).unwrap(), "({k},{n}) I={i:?} {abcd:?}");
            }
        }
    }
}

#[test]
fn cube_identities_exhaustive() {
    for (k, n) in [(3, 6), (3, 7), (3, 8), (4, 8)] {
        for m in 2..=k {
            for chain in all_subsets_raw(2 * m, n) {
                let i: Vec<usize> = chain.iter().step_by(2).copied().collect();
                let j: Vec<usize> = chain.iter().skip(1).step_by(2).copied().collect();
                let rest: Vec<usize> = (1..=n).filter(|x| !chain.contains(x)).collect();
                for pick in all_subsets_raw(k - m, rest.len()) {
                    let l: Vec<usize> = pick.iter().map(|&p| rest[p - 1]).collect();
                    let diags = cube_diagonals(&i, &j, &l, n).unwrap();
                    let s0 = v_root(&diags[0].0).add(&v_root(&diags[0].1));
                    assert!(diags.iter().all(|(x, y)| v_root(x).add(&v_root(y)) == s0));
                    let (a, b) = cube_antipode(&i, &j, &l, n).unwrap();
                    assert!(is_noncrossing(&a, &b), "{a} {b}");
                    assert!(diags.contains(&(a, b)));
                }
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let v = v_root(&ks(6, "134")).add(&v_root(&ks(6, "235")));
    assert_eq!(noncrossing_decompose(&v).unwrap().terms, combo(6, &[("135", 1)]));
    assert_eq!(noncrossing_decompose(&GridVector::zeros(3, 6)).unwrap().degree(), 0);
    let bad = GridVector::unit(3, 6, 2, 1);
    assert!(matches!(noncrossing_decompose(&bad), Err(Error::NotInH { row: 2, .. })));
}

#[test]
fn degree_examples() {
    assert_eq!(noncrossing_degree(3, 6, &combo(6, &[("135", 1)])).unwrap(), 1);
    let c = combo(6, &[("246", -1), ("124", 1), ("346", 1), ("256", 1)]);
    assert_eq!(noncrossing_degree(3, 6, &c).unwrap(), 2);
}

#[test]
fn tripod_shape_and_errors() {
    let t = tripod_vector(&ks(6, "135"), &[2, 4, 6]).unwrap();
    assert_eq!(t.len(), 4);
    assert_eq!(t[&ks(6, "135")], -1);
    let e = noncrossing_decompose(&combination_vector(3, 6, &int_map_to_q(&t))).unwrap();
    assert_eq!(e.terms, combo(6, &[("145", 1), ("236", 1)]));
    assert!(tripod_vector(&ks(6, "124"), &[3, 5, 6]).is_err());
    assert!(tripod_vector(&ks(6, "135"), &[2, 3, 6]).is_err());
}

#[test]
fn collections_are_unimodular() {
    for (k, n) in [(2, 6), (3, 6), (3, 7)] {
        let fan = Fan::new(k, n).unwrap();
        for c in enumerate_maximal_noncrossing(k, n, DEFAULT_CLIQUE_CAP).unwrap() {
            assert_eq!(fan.lattice_det(&c.members).unwrap().abs(), q(1), "({k},{n}) {:?}", c.members);
        }
    }
}

fn fan(k: usize, n: usize) -> &'static Fan {
    static F36: OnceLock<Fan> = OnceLock::new();
    static F37: OnceLock<Fan> = OnceLock::new();
    static F48: OnceLock<Fan> = OnceLock::new();
    let cell = match (k, n) {
        (3, 6) => &F36,
        (3, 7) => &F37,
        _ => &F48,
    };
    cell.get_or_init(|| Fan::new(k, n).unwrap())
}

fn h_vector() -> impl Strategy<Value = GridVector> {
    prop_oneof![Just((3usize, 6usize)), Just((3, 7)), Just((4, 8))].prop_flat_map(|(k, n)| {
        let d = (k - 1) * (n - k - 1);
        (proptest::collection::vec((-30i64..=30, 1i64..=6), d), Just((k, n))).prop_map(move |(r, (k, n))| {
            let r: Vec<Q> = r.into_iter().map(|(a, b)| Q::new(a.into(), b.into())).collect();
            GridVector::from_reduced(k, n, &r)
        })
    })
}

fn int_h_vector() -> impl Strategy<Value = GridVector> {
    prop_oneof![Just((3usize, 6usize)), Just((3, 7)), Just((4, 8))].prop_flat_map(|(k, n)| {
        let d = (k - 1) * (n - k - 1);
        proptest::collection::vec(-20i64..=20, d)
            .prop_map(move |r| GridVector::from_reduced(k, n, &r.into_iter().map(q).collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_round_trip(v in h_vector()) {
        let e = fan(v.k, v.n).decompose(&v).unwrap();
        prop_assert!(e.is_valid());
        prop_assert_eq!(e.resum(v.k, v.n), v.clone());
        let e2 = fan(v.k, v.n).decompose_seeded(&v, 99).unwrap();
        prop_assert_eq!(e, e2);
    }

    #[test]
    fn lattice_input_gives_integer_coefficients(v in int_h_vector()) {
        let e = fan(v.k, v.n).decompose(&v).unwrap();
        prop_assert!(e.terms.values().all(|c| c.is_integer()));
        prop_assert_eq!(e.resum(v.k, v.n), v);
    }

    #[test]
    fn positive_noncrossing_input_is_fixed(seed in 0usize..42, scale in 1i64..5) {
        let c = &enumerate_maximal_noncrossing(3, 6, DEFAULT_CLIQUE_CAP).unwrap()[seed];
        let coeffs: BTreeMap<KSubset, Q> = c.members.iter().enumerate().map(|(t, j)| (j.clone(), q(scale + t as i64))).collect();
        let e = fan(3, 6).decompose(&combination_vector(3, 6, &coeffs)).unwrap();
        prop_assert_eq!(e.terms, coeffs);
    }
}
