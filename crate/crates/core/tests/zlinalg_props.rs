use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use tdual_core::zlinalg::{
    image_basis, kernel_basis, smith_normal_form, subquotient, sym2_map, tensor_map, wedge2_map,
    IntMatrix, Lattice, LatticeMap,
};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-10i64..=10, c), r)
    })
}

fn sized(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
        .prop_map(|m| IntMatrix::from_rows(&m))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

/// `|Z^n / M Z^n|` by enumerating the classes `adj(M)·x mod |det M|`, which
/// separate cosets, reachable from the unit vectors.
fn coset_count(m: &[Vec<i128>]) -> usize {
    let n = m.len();
    let d = det_i128(m).abs();
    assert!(d > 0);
    let cofactor = |i: usize, j: usize| -> i128 {
        let minor: Vec<Vec<i128>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
            .collect();
        let s = if (i + j).is_multiple_of(2) { 1 } else { -1 };
        s * det_i128(&minor)
    };
    // adj[i][j] = cofactor(j, i)
    let gens: Vec<Vec<i128>> = (0..n)
        .map(|k| (0..n).map(|i| cofactor(k, i).rem_euclid(d)).collect())
        .collect();
    let zero = vec![0i128; n];
    let mut seen: HashSet<Vec<i128>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<i128> = x
                .iter()
                .zip(g)
                .map(|(a, b)| (a + b).rem_euclid(d))
                .collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_decomposition(rows in matrix(6, 6)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.left * &m) * &s.right, s.diag.clone());
        prop_assert!(s.diag.is_diagonal());
        prop_assert_eq!(s.left.det().abs(), BigInt::one());
        prop_assert_eq!(s.right.det().abs(), BigInt::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert_eq!(f.len(), m.rank());
    }

    #[test]
    fn rank_nullity(rows in matrix(6, 6)) {
        let f = LatticeMap::from_matrix(IntMatrix::from_rows(&rows));
        let im = image_basis(&f);
        let ker = kernel_basis(&f);
        prop_assert_eq!(im.rank() + ker.rank(), f.domain.rank());
        for v in ker.basis.col_vecs() {
            prop_assert!(f.apply(&v).iter().all(Zero::is_zero));
        }
        for v in f.matrix.col_vecs() {
            prop_assert!(im.contains_vector(&v));
        }
    }

    #[test]
    fn subquotient_order_matches_coset_count(rows in matrix(4, 4).prop_filter("square", |m| m.len() == m[0].len())) {
        let m128: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let d = det_i128(&m128).abs();
        prop_assume!(d > 0 && d <= 50);
        let inner = Lattice::new("M", IntMatrix::from_rows(&rows)).unwrap();
        let g = subquotient(&inner, &Lattice::standard("Z", rows.len())).unwrap();
        prop_assert_eq!(g.free_rank, 0);
        let order = g.order().unwrap().to_usize().unwrap();
        prop_assert_eq!(order, d as usize);
        prop_assert_eq!(order, coset_count(&m128));
    }

    #[test]
    fn functors_preserve_composition(f in sized(3, 2), g in sized(2, 3), h in sized(2, 2)) {
        let (f, g, h) = (LatticeMap::from_matrix(f), LatticeMap::from_matrix(g), LatticeMap::from_matrix(h));
        let gf = LatticeMap::from_matrix(&g.matrix * &f.matrix);
        prop_assert_eq!(wedge2_map(&gf).matrix, &wedge2_map(&g).matrix * &wedge2_map(&f).matrix);
        prop_assert_eq!(sym2_map(&gf).matrix, &sym2_map(&g).matrix * &sym2_map(&f).matrix);
        let hh = LatticeMap::from_matrix(&h.matrix * &h.matrix);
        prop_assert_eq!(
            tensor_map(&gf, &hh).matrix,
            &tensor_map(&g, &h).matrix * &tensor_map(&f, &h).matrix
        );
    }
}

#[test]
fn coset_oracle_on_known_cases() {
    assert_eq!(coset_count(&[vec![2, 0], vec![0, 3]]), 6);
    assert_eq!(coset_count(&[vec![2, 1], vec![0, 2]]), 4);
    assert_eq!(coset_count(&[vec![1]]), 1);
}

#[test]
fn functors_preserve_identity() {
    for n in 1..5 {
        let id = LatticeMap::identity(&Lattice::standard("Z", n));
        assert_eq!(wedge2_map(&id).matrix, IntMatrix::identity(n * (n - 1) / 2));
        assert_eq!(sym2_map(&id).matrix, IntMatrix::identity(n * (n + 1) / 2));
        assert_eq!(tensor_map(&id, &id).matrix, IntMatrix::identity(n * n));
    }
    let d = LatticeMap::from_matrix(IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]));
    assert_eq!(
        sym2_map(&d).matrix,
        IntMatrix::diagonal(&[BigInt::from(1), BigInt::from(-1), BigInt::from(1)])
    );
}

#[test]
fn image_matches_brute_force_enumeration() {
    let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]);
    let im = image_basis(&LatticeMap::from_matrix(m.clone()));
    let span = |b: &IntMatrix, bound: i64| -> HashSet<(i64, i64)> {
        let mut out = HashSet::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                let v = b.mul_vec(&[BigInt::from(x), BigInt::from(y)][..b.cols()]);
                let (a, c) = (v[0].to_i64().unwrap(), v[1].to_i64().unwrap());
                if a.abs() <= 4 && c.abs() <= 4 {
                    out.insert((a, c));
                }
            }
        }
        out
    };
    assert_eq!(span(&m, 10), span(&im.basis, 10));
    assert_eq!(im.basis, IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]));
}
