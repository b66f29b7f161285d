mod common;

use common::q;
use kenum::lattice::{Monomial, MonomialMap, RationalSum, ZeroTestConfig};
use kenum::stable::{
    degree_axiom_check, displayed_r_matrix, r_matrix, stab_matrix, unitarity_holds,
    yang_baxter_check, yang_baxter_holds, BlockOrdering, Chamber, FixedPointMatrix, StableError,
};
use num_traits::Zero;

fn cfg() -> ZeroTestConfig {
    ZeroTestConfig::default()
}

fn invert_u() -> MonomialMap {
    MonomialMap::from_full_images(2, vec![Monomial::from_integer([-1, 0]), Monomial::var(2, 1)])
}

fn hbar_to_one() -> MonomialMap {
    MonomialMap::from_full_images(2, vec![Monomial::var(2, 0), Monomial::one(2)])
}

#[test]
fn displayed_entries_agree_at_sample_points() {
    let r = r_matrix().unwrap();
    let shown = displayed_r_matrix();
    for (u, h) in [(q(4), q(9)), (q(25), q(49)), (q(1) / q(4), q(121))] {
        for i in 0..2 {
            for j in 0..2 {
                let point = [u.clone(), h.clone()];
                assert_eq!(r.get(i, j).evaluate(&point).unwrap(), shown[2 * i + j].evaluate(&point).unwrap());
            }
        }
    }
}

#[test]
fn r_at_u_equal_one_has_zero_diagonal() {
    let shown = displayed_r_matrix();
    for h in [9, 25, 121] {
        let point = [q(1), q(h)];
        assert!(shown[0].evaluate(&point).unwrap().is_zero());
        assert!(shown[3].evaluate(&point).unwrap().is_zero());
        assert!(!shown[1].evaluate(&point).unwrap().is_zero());
    }
}

#[test]
fn determinant_is_unitary() {
    let r = r_matrix().unwrap();
    let det = r.determinant2();
    let det_inv = det.substitute(&invert_u()).unwrap();
    assert!(det.mul(&det_inv).sub(&RationalSum::one(2)).is_zero());
}

#[test]
fn unitarity_controls() {
    let c = cfg();
    let r = r_matrix().unwrap();
    let ordering = yang_baxter_check(&c).unwrap();
    assert_eq!(ordering, BlockOrdering::Direct);
    assert!(unitarity_holds(&r, ordering, &c).unwrap());
    assert!(unitarity_holds(&FixedPointMatrix::identity(2, 2), ordering, &c).unwrap());
    let two = RationalSum::constant(2, q(2));
    let perturbed = FixedPointMatrix::from_fn(2, 2, |i, j| {
        if (i, j) == (0, 1) {
            r.get(i, j).mul(&two)
        } else {
            r.get(i, j).clone()
        }
    });
    assert!(!unitarity_holds(&perturbed, ordering, &c).unwrap());
    assert!(!yang_baxter_holds(&perturbed, ordering, &c).unwrap());
}

#[test]
fn classical_limit_is_trivial() {
    let c = cfg();
    let r1 = r_matrix().unwrap().substitute(&hbar_to_one()).unwrap();
    assert!(r1.equals(&FixedPointMatrix::identity(2, 2), &c));
    assert!(yang_baxter_holds(&r1, BlockOrdering::Direct, &c).unwrap());
    assert!(yang_baxter_holds(&r1, BlockOrdering::Swapped, &c).unwrap());
}

#[test]
fn envelopes_are_triangular_with_opposite_support() {
    let plus = stab_matrix(Chamber::Plus).unwrap();
    let minus = stab_matrix(Chamber::Minus).unwrap();
    assert!(plus.get(1, 0).is_zero());
    assert!(minus.get(0, 1).is_zero());
    assert!(!plus.get(0, 1).is_zero());
    assert!(!minus.get(1, 0).is_zero());
}

#[test]
fn slopes_outside_the_unit_interval_are_rejected() {
    for chamber in [Chamber::Plus, Chamber::Minus] {
        assert!(matches!(
            degree_axiom_check(chamber, &q(2)),
            Err(StableError::SlopeOutOfRange(_))
        ));
        assert!(degree_axiom_check(chamber, &(q(1) / q(3))).unwrap());
    }
}
