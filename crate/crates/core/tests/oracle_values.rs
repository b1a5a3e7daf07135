//! Frozen expected values computed with an independent exact implementation
//! (symbolic algebra, term-by-term from the printed polynomials).

use nineteen_vertex_core::rmatrix::{eval_q_family, QKind};
use nineteen_vertex_core::scalar::Scalar;
use nineteen_vertex_core::variety::{aux_cminus_sq, surface_s1};
use nineteen_vertex_core::{Couplings, Error, Rat};

fn r(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn couplings_12() -> Couplings<Rat> {
    Couplings::derive(r(1, 1), r(2, 1)).unwrap()
}

fn args8() -> Vec<Rat> {
    vec![
        r(1, 2),
        r(-2, 3),
        r(3, 1),
        r(1, 5),
        r(-1, 4),
        r(2, 7),
        r(5, 3),
        r(-3, 2),
    ]
}

#[test]
fn q_family_values_at_a_fixed_rational_tuple() {
    let cpl = couplings_12();
    let args = args8();
    assert_eq!(eval_q_family(QKind::Q, &args, &cpl).unwrap(), r(6113, 2520));
    assert_eq!(
        eval_q_family(QKind::Q1, &args, &cpl).unwrap(),
        r(-2048033, 169344)
    );
    assert_eq!(
        eval_q_family(QKind::Q2, &args, &cpl).unwrap(),
        r(-175883, 7056)
    );
}

#[test]
fn aux_elimination_at_the_vertex_point_is_one() {
    let cpl = couplings_12();
    let aux = aux_cminus_sq(&cpl, &r(1, 1), &r(0, 1), &r(0, 1), &r(1, 1)).unwrap();
    assert_eq!(aux, r(1, 1));
    // a+ = 0 sits under the a+^3 denominator
    match aux_cminus_sq(&cpl, &r(0, 1), &r(1, 1), &r(1, 1), &r(1, 1)) {
        Err(Error::VanishingDenominator { factors, .. }) => {
            assert!(factors.contains(&"a_plus"));
        }
        other => panic!("expected a domain error, got {other:?}"),
    }
}

#[test]
fn quartic_surface_vanishes_at_its_rational_singular_points() {
    let cpl = couplings_12();
    let p1 = [r(0, 1), r(0, 1), r(0, 1), r(1, 1)];
    assert!(surface_s1(&cpl, &p1).is_zero());
    let ratio = (-cpl.lambda2_plus.clone())
        .try_div(&cpl.lambda1_plus)
        .unwrap();
    let p2 = [r(1, 1), r(0, 1), ratio, r(0, 1)];
    assert!(surface_s1(&cpl, &p2).is_zero());
}
