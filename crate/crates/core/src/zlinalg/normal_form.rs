//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of a Smith decomposition `left * m * right = diag`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n)
            .map(|i| self.diag[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms `U`, `V` such that `U m V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let nq = -q;
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let nq = -q;
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot: move it into place
                let (pi, pj) = min_abs_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // row and column cleared; enforce divisibility on the trailing block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith {
        left: u,
        diag: d,
        right: v,
    }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &d[(i, j)];
        if x.is_zero() {
            return;
        }
        let b = &d[*best];
        if b.is_zero() || x.abs() < b.abs() {
            *best = (i, j);
        }
    };
    for i in t..d.rows() {
        consider(i, t, &mut best);
    }
    for j in t..d.cols() {
        consider(t, j, &mut best);
    }
    best
}

/// Column Hermite form together with the unimodular column transform.
#[derive(Debug, Clone)]
pub struct ColumnHermite {
    /// `m * transform`; the first `rank` columns are the echelon basis, the rest are zero.
    pub reduced: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    /// Row index of the pivot of each basis column.
    pub pivots: Vec<usize>,
}

/// Column-style Hermite reduction.
///
/// The lattice spanned by the columns of `m` gets a basis in column echelon
/// form: pivot rows strictly increase, pivots are positive, and every entry
/// to the left of a pivot in its row lies in `[0, pivot)`. This basis is
/// unique for the lattice, so two generating sets span the same lattice
/// exactly when their forms are equal.
pub fn column_hermite_with_transform(m: &IntMatrix) -> ColumnHermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = IntMatrix::identity(cols);
    let mut k = 0;
    let mut pivots = Vec::new();
    for i in 0..rows {
        if k == cols {
            break;
        }
        // Euclid along row i over columns k..
        loop {
            let mut best: Option<usize> = None;
            for j in k..cols {
                if !a[(i, j)].is_zero() && best.is_none_or(|b| a[(i, j)].abs() < a[(i, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(k, b);
            v.swap_cols(k, b);
            let mut done = true;
            for j in k + 1..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = -a[(i, j)].div_floor(&a[(i, k)]);
                a.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !a[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(i, k)].is_zero() {
            continue;
        }
        if a[(i, k)].is_negative() {
            a.negate_col(k);
            v.negate_col(k);
        }
        for j in 0..k {
            let q = -a[(i, j)].div_floor(&a[(i, k)]);
            a.add_col_multiple(j, k, &q);
            v.add_col_multiple(j, k, &q);
        }
        pivots.push(i);
        k += 1;
    }
    ColumnHermite {
        reduced: a,
        transform: v,
        rank: k,
        pivots,
    }
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `m`.
pub fn column_hermite(m: &IntMatrix) -> IntMatrix {
    let h = column_hermite_with_transform(m);
    let idx: Vec<usize> = (0..h.rank).collect();
    h.reduced.select_cols(&idx)
}

/// Reduces `v` modulo the lattice whose canonical basis is `hnf` (from [`column_hermite`]).
/// The result has entries in `[0, pivot)` at every pivot row.
pub fn reduce_mod_hermite(hnf: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let h = column_hermite_with_transform(hnf);
    let mut out = v.to_vec();
    for (k, &p) in h.pivots.iter().enumerate() {
        let q = out[p].div_floor(&h.reduced[(p, k)]);
        if q.is_zero() {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o -= &q * &h.reduced[(i, k)];
        }
    }
    out
}

/// Some integer solution of `m x = y`, if one exists.
pub fn solve_integer(m: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), y.len());
    let s = smith_normal_form(m);
    let z = s.left.mul_vec(y);
    let factors = s.invariant_factors();
    let mut w = vec![BigInt::zero(); m.cols()];
    for (i, zi) in z.iter().enumerate() {
        if i < factors.len() {
            let (q, r) = zi.div_rem(&factors[i]);
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        } else if !zi.is_zero() {
            return None;
        }
    }
    Some(s.right.mul_vec(&w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::matrix::big;

    fn check_smith(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.left * m) * &s.right, s.diag);
        assert!(s.diag.is_diagonal());
        assert_eq!(s.left.det().abs(), big(1));
        assert_eq!(s.right.det().abs(), big(1));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn smith_identity() {
        let s = check_smith(&IntMatrix::identity(2));
        assert_eq!(s.diag, IntMatrix::identity(2));
        assert_eq!(s.left, IntMatrix::identity(2));
        assert_eq!(s.right, IntMatrix::identity(2));
    }

    #[test]
    fn smith_two_by_two() {
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diag, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn smith_zero() {
        let s = check_smith(&IntMatrix::zeros(2, 2));
        assert!(s.diag.is_zero());
        check_smith(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![big(1), big(6)]);
    }

    #[test]
    fn hermite_canonical() {
        let h = column_hermite(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(h, IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]));
        // same lattice from another generating set
        let h2 = column_hermite(&IntMatrix::from_rows(&[vec![3, 1, 2], vec![2, 0, 2]]));
        assert_eq!(h2, h);
    }

    #[test]
    fn reduce_against_hermite() {
        let h = IntMatrix::from_rows(&[vec![2, 0], vec![1, 3]]);
        let r = reduce_mod_hermite(&h, &[big(5), big(-4)]);
        assert_eq!(r, vec![big(1), big(0)]);
    }

    #[test]
    fn integer_solve() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(
            solve_integer(&m, &[big(4), big(9)]),
            Some(vec![big(2), big(3)])
        );
        assert_eq!(solve_integer(&m, &[big(1), big(0)]), None);
    }
}
