//! Closed forms and published tables, at sizes small enough for the default
//! test run. The full ranges live in the CLI acceptance suite.

use arone_core::arith;
use arone_core::homology::{AbelianGroup, GradedGroup};
use arone_core::hopf::{self, Edge, EdFunctor, Generator};
use arone_core::kunneth::*;
use arone_core::verify::*;
use num_bigint::BigInt;

fn graded(entries: &[(usize, &str)]) -> GradedGroup {
    let mut g = GradedGroup::new();
    for (k, s) in entries {
        g.insert(*k, s.parse().unwrap());
    }
    g
}

/// H^2 of the complex for d = 1..36, as published.
const H2_TABLE: [&str; 36] = [
    "0", "0", "Z/2", "Z/3", "Z/2", "Z/2 + Z/5", "0", "Z/7", "Z/2", "Z/2 + Z/3", "0", "Z/2 + Z/3 + Z/11",
    "0", "Z/13", "0", "0", "Z/2", "Z/2 + Z/17", "0", "Z/2 + Z/19", "0", "0", "0", "Z/2 + Z/23",
    "0", "Z/5", "0", "Z/3", "0", "Z/3 + Z/5 + Z/29", "0", "Z/31", "Z/2", "Z/2", "0", "Z/2 + Z/3",
];

#[test]
fn h2_table_agrees_with_j_sets() {
    for (i, s) in H2_TABLE.iter().enumerate() {
        let d = i as u64 + 1;
        let from_j = arith::j_set(d).iter().fold(AbelianGroup::zero(), |g, &p| g.direct_sum(&AbelianGroup::cyclic(p)));
        assert_eq!(from_j, s.parse::<AbelianGroup>().unwrap(), "d = {d}");
    }
}

#[test]
fn h1_reports() {
    let eight = verify_h1(8).unwrap();
    assert!(eight.passed(), "{}", eight.summary());
    assert_eq!(eight.computed, "Z/2");
    assert!(eight.witnesses.iter().any(|w| w.value.starts_with("4*<1> + 14*<2> + 28*<3> + 35*<4>")));
    assert_eq!(verify_h1(6).unwrap().computed, "0");
    assert_eq!(verify_h1(2).unwrap().computed, "Z/2");
    for d in 2..=24 {
        assert!(verify_h1(d).unwrap().passed(), "d = {d}");
    }
}

#[test]
fn h2_reports_against_the_table() {
    for d in 2..=20 {
        let r = verify_h2(d).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.computed.parse::<AbelianGroup>().unwrap(), H2_TABLE[d - 1].parse().unwrap(), "d = {d}");
    }
}

#[test]
fn top_degree_reports() {
    for d in 2..=8 {
        let r = verify_top_degrees(d).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}

#[test]
fn cocycle_system_examples() {
    let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert!(verify_cocycle_system(4, &v(&[2, 3, 2])));
    assert!(!verify_cocycle_system(4, &v(&[1, 0, 0])));
    assert!(verify_cocycle_system(9, &v(&[0; 8])));
}

#[test]
fn modpn_reports() {
    for (p, n, d) in [(2, 1, 5), (5, 2, 25), (3, 1, 7), (2, 2, 6), (2, 3, 4), (3, 1, 5)] {
        let r = verify_h1_modpn(p, n, d).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let z = verify_z1_modpn(p, n, d).unwrap();
        assert!(z.passed(), "{}", z.summary());
    }
    assert_eq!(verify_h1_modpn(2, 1, 5).unwrap().computed, "Z/2");
    assert_eq!(verify_h1_modpn(5, 2, 25).unwrap().computed, "Z/5");
    assert_eq!(verify_h1_modpn(3, 1, 7).unwrap().computed, "0");
}

#[test]
fn comparison_reference_values() {
    assert_eq!(franjou_pirashvili_reference(2, 5).to_string(), "Z/2");
    assert_eq!(franjou_pirashvili_reference(1, 8).to_string(), "Z/4");
    assert!(franjou_pirashvili_reference(6, 3).is_zero());
    for d in [9, 6, 2] {
        assert!(verify_ext1_comparison(d).unwrap().passed());
    }
    assert_eq!(verify_ext1_comparison(9).unwrap().computed, "Z/3");
}

#[test]
fn compositions_examples() {
    assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    assert_eq!(compositions(6, 1), vec![vec![6]]);
    assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
    for d in 1..12 {
        for c in 1..=d {
            assert_eq!(compositions(d, c).len() as u128, arith::binomial_u128(d as u64 - 1, c as u64 - 1).unwrap());
        }
    }
}

#[test]
fn graded_ext_examples() {
    assert_eq!(graded_ext_a_sd(1).unwrap(), graded(&[(0, "Z")]));
    assert_eq!(graded_ext_a_sd(2).unwrap(), graded(&[(1, "Z/2")]));
    assert_eq!(graded_ext_a_sd(5).unwrap(), graded(&[(1, "Z/5"), (2, "Z/2"), (4, "Z/2")]));
}

#[test]
fn kunneth_examples() {
    let z2 = graded(&[(1, "Z/2")]);
    assert_eq!(kunneth_product(&z2, &z2), graded(&[(1, "Z/2"), (2, "Z/2")]));
    let unit = graded(&[(0, "Z")]);
    let h = graded(&[(2, "Z/3 + Z"), (5, "Z/4")]);
    assert_eq!(kunneth_product(&unit, &h), h);
    assert_eq!(kunneth_product(&z2, &unit), z2);
}

#[test]
fn tensor_square_of_symmetric_powers() {
    assert_eq!(ext_tensorpower_sd(2, 2).unwrap(), graded(&[(0, "Z")]));
    assert_eq!(ext_tensorpower_sd(2, 3).unwrap(), graded(&[(1, "Z/2 + Z/2")]));
    assert_eq!(ext_tensorpower_sd(2, 4).unwrap(), graded(&[(1, "Z/3 + Z/3 + Z/2"), (2, "Z/2 + Z/2 + Z/2")]));
    assert_eq!(
        ext_tensorpower_sd(2, 5).unwrap(),
        graded(&[(1, "Z/2 + Z/2"), (2, "Z/3 + Z/3 + Z/2 + Z/2"), (3, "Z/2 + Z/2 + Z/2 + Z/2")])
    );
    for d in 2..=5 {
        assert!(verify_kunneth(2, d).unwrap().passed());
    }
}

#[test]
fn exterior_powers() {
    assert_eq!(exterior_cross_effect_dims(2), vec![0, 1]);
    assert_eq!(exterior_cross_effect_dims(1), vec![1]);
    assert_eq!(exterior_cross_effect_dims(4), vec![0, 0, 0, 1]);
    assert_eq!(ext_tensorpower_lambda(2, 4).unwrap(), graded(&[(2, "Z^3")]));
    for d in 1..=8 {
        assert_eq!(ext_tensorpower_lambda(1, d).unwrap(), graded(&[(d - 1, "Z")]));
    }
    assert!(ext_tensorpower_lambda(3, 2).unwrap().is_zero());
    for d in 1..=9 {
        for c in 1..=d {
            assert_eq!(ext_tensorpower_lambda(c, d).unwrap(), lambda_closed_form(c, d), "c={c} d={d}");
        }
    }
}

#[test]
fn ed_matrix_of_the_coproduct() {
    let e = hopf::ed_matrix(2, &Edge::new(0, Generator::Delta, 0)).unwrap();
    // rows e1^2, e1e2, e2^2, x1, x2; columns e^2, x
    assert_eq!(e.block(), vec![vec![1, 0], vec![2, 1], vec![1, 0], vec![0, 1], vec![0, 1]]);
}

#[test]
fn ed_matrix_of_the_antipode() {
    // D(S) = (1 + (-1)^d) / p * e^d
    for d in [2usize, 3, 4, 8, 9] {
        let p = arith::prime_power(d as u64).unwrap().0 as i64;
        let e = hopf::ed_matrix(d, &Edge::new(0, Generator::Antipode, 0)).unwrap();
        let sign = if d % 2 == 0 { 1 } else { -1 };
        assert_eq!(e.block(), vec![vec![sign, (1 + sign) / p], vec![0, -1]], "d = {d}");
    }
}

#[test]
fn relations_hold() {
    for (d, bound) in [(2, 2), (3, 2), (4, 1), (5, 1)] {
        let r = hopf::relations::check_all_relations(d, bound).unwrap();
        assert!(r.passed(), "d = {d}: {:?}", r.failures);
    }
}

#[test]
fn e_d_needs_a_prime_power() {
    assert!(EdFunctor::new(6).is_err());
}

#[test]
fn section_obstructions() {
    for (d, p) in [(2, 2), (4, 2), (3, 3), (9, 3), (5, 5)] {
        let o = hopf::section_obstruction(d).unwrap();
        assert_eq!(o.lambda, Some(hopf::Ratio::new(-1, p)), "d = {d}");
        assert!(o.obstructs());
    }
    let (_, _, v) = hopf::equivariant_obstruction(2).unwrap();
    assert_eq!(v, Some(hopf::Ratio::new(-1, 2)));
}

#[test]
fn arithmetic_report_suites() {
    assert!(verify_kummer(5, 60).unwrap().passed());
    assert!(verify_granville(3, 2, 40).unwrap().passed());
    assert!(verify_mu_theta(3, 60).unwrap().passed());
}
