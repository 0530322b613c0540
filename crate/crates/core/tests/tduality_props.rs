use num_bigint::BigInt;
use proptest::prelude::*;
use tdual_core::flagcoh::chern_classes;
use tdual_core::rootdata::named_group;
use tdual_core::tduality::{
    bfield_shift, dual_chern, reduction_torsor_shift, ChernVector, ShiftMatrix, TwistClass,
};
use tdual_core::zlinalg::IntMatrix;

fn chern(n: usize, dim: usize) -> impl Strategy<Value = ChernVector> {
    proptest::collection::vec(
        proptest::collection::vec((-9i64..=9).prop_map(BigInt::from), dim),
        n,
    )
    .prop_map(ChernVector::new)
}

fn shift(n: usize) -> impl Strategy<Value = ShiftMatrix> {
    proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n)
        .prop_map(|m| ShiftMatrix::new(IntMatrix::from_rows(&m)).unwrap())
}

fn case(n: usize) -> impl Strategy<Value = (ChernVector, ChernVector, ShiftMatrix, ShiftMatrix)> {
    (chern(n, n), chern(n, n), shift(n), shift(n))
}

proptest! {
    #[test]
    fn shift_is_additive_and_invertible(
        (chat, c, b1, b2) in (2usize..=4).prop_flat_map(case)
    ) {
        let n = chat.len();
        prop_assert_eq!(bfield_shift(&chat, &ShiftMatrix::zero(n), &c).unwrap(), chat.clone());
        let once = bfield_shift(&chat, &b1, &c).unwrap();
        let twice = bfield_shift(&once, &b2, &c).unwrap();
        prop_assert_eq!(twice, bfield_shift(&chat, &b1.add(&b2).unwrap(), &c).unwrap());
        prop_assert_eq!(bfield_shift(&once, &b1.neg(), &c).unwrap(), chat);
    }

    #[test]
    fn torsor_action_composes(b1 in shift(2), b2 in shift(2), k in 1i64..4) {
        let rd = named_group("SU(3)").unwrap();
        let u = TwistClass::from_level(&rd, k).unwrap();
        let a = reduction_torsor_shift(&rd, &u, &b1).unwrap();
        let ab = reduction_torsor_shift(&rd, &a.twist, &b2).unwrap();
        let direct = reduction_torsor_shift(&rd, &u, &b1.add(&b2).unwrap()).unwrap();
        prop_assert_eq!(&ab.twist, &direct.twist);
        prop_assert_eq!(&ab.class, &direct.class);
        let base = reduction_torsor_shift(&rd, &u, &ShiftMatrix::zero(2)).unwrap();
        prop_assert_eq!(&a.class, &base.class);
        let formula = bfield_shift(&ChernVector::new(u.matrix().col_vecs()), &b1, &chern_classes(&rd)).unwrap();
        prop_assert_eq!(a.dual_chern, formula);
    }
}

#[test]
fn dual_chern_depends_only_on_image() {
    use tdual_core::flagcoh::{build_complex, is_cycle};
    let rd = named_group("SU(3)").unwrap();
    let cx = build_complex(&rd).unwrap();
    for k in 0..4 {
        let u = TwistClass::from_level(&rd, k).unwrap();
        let reference = dual_chern(&rd, &u).unwrap();
        let mut compared = 0;
        // right-multiplying by a unimodular matrix changes u but not u(Λ)
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let v = IntMatrix::from_rows(&[vec![1, a], vec![0, 1]]);
                let w = IntMatrix::from_rows(&[vec![1, 0], vec![b, 1]]);
                for sign in [1i64, -1] {
                    let m = (&(u.matrix() * &v) * &w).scale(&BigInt::from(sign));
                    let u2 = TwistClass::from_matrix(&rd, m).unwrap();
                    if is_cycle(&cx, &u2) {
                        assert_eq!(dual_chern(&rd, &u2).unwrap(), reference);
                        compared += 1;
                    }
                }
            }
        }
        assert!(compared >= 2);
    }
}

#[test]
fn rank_two_instantiation() {
    // product of two circles over a point: c = (c1, c2), B12 = 1
    let chat = ChernVector::new(vec![
        vec![BigInt::from(3), BigInt::from(0)],
        vec![BigInt::from(0), BigInt::from(5)],
    ]);
    let c = ChernVector::new(vec![
        vec![BigInt::from(2), BigInt::from(0)],
        vec![BigInt::from(0), BigInt::from(2)],
    ]);
    let b = ShiftMatrix::new(IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]])).unwrap();
    let out = bfield_shift(&chat, &b, &c).unwrap();
    assert_eq!(out.classes[0], vec![BigInt::from(3), BigInt::from(-2)]);
    assert_eq!(out.classes[1], vec![BigInt::from(2), BigInt::from(5)]);
}

#[test]
fn su2_lens_space_chain() {
    let rd = named_group("SU(2)").unwrap();
    for k in 1..=3i64 {
        let u = TwistClass::from_matrix(&rd, IntMatrix::from_rows(&[vec![k]])).unwrap();
        let d = dual_chern(&rd, &u).unwrap();
        // index of kZ in Z, counted directly
        let index = 60 / (0..60i64).filter(|x| x % k == 0).count();
        assert_eq!(BigInt::from(index), d.index);
    }
}
