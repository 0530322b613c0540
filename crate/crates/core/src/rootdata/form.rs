use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::datum::RootDatum;
use crate::error::{Error, Result};
use crate::zlinalg::matrix::serialize_bigint;
use crate::zlinalg::rational::RatMatrix;
use crate::zlinalg::IntMatrix;

pub const FORM_NORMALIZATION: &str =
    "basic form: on each simple factor, coroots of long roots have square length 2; gram on simple coroots is level·A·diag(d)";

/// Symmetric invariant bilinear form on `t`, as a Gram matrix on the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantForm {
    pub gram: IntMatrix,
    #[serde(serialize_with = "serialize_bigint")]
    pub level: BigInt,
}

/// `level` times the basic form: per simple factor, the minimal Weyl-invariant
/// integral form on `Q^∨` in which coroots of long roots have square length 2.
///
/// With `A·diag(d)` symmetric and `d = 1` on long roots, the Gram matrix is
/// `⟨α_i^∨, α_j^∨⟩ = A_ij d_j`.
pub fn basic_form(rd: &RootDatum, level: i64) -> Result<InvariantForm> {
    if level < 0 {
        return Err(Error::InvalidInput(format!("negative level {level}")));
    }
    let d = rd.coroot_symmetrizer();
    let r = rd.rank();
    let k = BigInt::from(level);
    let gram = IntMatrix::from_fn(r, r, |i, j| &k * &rd.cartan[(i, j)] * &d[j]);
    Ok(InvariantForm { gram, level: k })
}

impl InvariantForm {
    pub fn is_symmetric(&self) -> bool {
        self.gram.is_symmetric()
    }

    /// Exact invariance under every simple reflection: `sᵀ G s = G`.
    pub fn is_weyl_invariant(&self, rd: &RootDatum) -> bool {
        (0..rd.rank()).all(|i| {
            let s = rd.reflection_on_coroots(i);
            &(&s.transpose() * &self.gram) * &s == self.gram
        })
    }

    /// Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.gram.rows();
        (1..=n).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.gram
                .select_rows(&idx)
                .select_cols(&idx)
                .det()
                .is_positive()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    /// The form in coweight coordinates: `A^{-1} G A^{-T}`.
    pub fn on_coweights(&self, rd: &RootDatum) -> RatMatrix {
        let a_inv = RatMatrix::from_int(&rd.cartan)
            .inverse()
            .expect("Cartan matrix is invertible");
        a_inv
            .mul(&RatMatrix::from_int(&self.gram))
            .mul(&a_inv.transpose())
    }

    /// Gram matrix on the chosen basis of the integral lattice (rational in general).
    pub fn on_integral_lattice(&self, rd: &RootDatum) -> RatMatrix {
        let l = RatMatrix::from_int(&rd.integral_lattice.basis);
        l.transpose().mul(&self.on_coweights(rd)).mul(&l)
    }

    pub fn scaled(&self, k: i64) -> InvariantForm {
        let k = BigInt::from(k);
        InvariantForm {
            gram: self.gram.scale(&k),
            level: &self.level * &k,
        }
    }

    pub fn zero(rank: usize) -> InvariantForm {
        InvariantForm {
            gram: IntMatrix::zeros(rank, rank),
            level: BigInt::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::named_group;

    #[test]
    fn basic_examples() {
        let a1 = named_group("SU(2)").unwrap();
        assert_eq!(
            basic_form(&a1, 1).unwrap().gram,
            IntMatrix::from_rows(&[vec![2]])
        );
        let a2 = named_group("SU(3)").unwrap();
        assert_eq!(
            basic_form(&a2, 1).unwrap().gram,
            IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]])
        );
        assert!(basic_form(&a2, 0).unwrap().is_zero());
        assert!(basic_form(&a2, -1).is_err());
    }

    #[test]
    fn non_simply_laced_normalization() {
        let g2 = named_group("G2").unwrap();
        let f = basic_form(&g2, 1).unwrap();
        // short coroot (of the long root α_2) has length 2, long coroot 6
        assert_eq!(f.gram, IntMatrix::from_rows(&[vec![6, -3], vec![-3, 2]]));
        let b3 = named_group("Spin(7)").unwrap();
        let f = basic_form(&b3, 1).unwrap();
        assert_eq!(f.gram[(2, 2)], BigInt::from(4));
        assert_eq!(f.gram[(0, 0)], BigInt::from(2));
    }

    #[test]
    fn invariant_and_definite() {
        for name in [
            "SU(2)", "SU(5)", "Spin(7)", "Sp(3)", "Spin(8)", "G2", "F4", "E6", "E8", "SU(2)xG2",
        ] {
            let rd = named_group(name).unwrap();
            let f = basic_form(&rd, 1).unwrap();
            assert!(f.is_symmetric(), "{name}");
            assert!(f.is_weyl_invariant(&rd), "{name}");
            assert!(f.is_positive_definite(), "{name}");
            assert!(f.scaled(3).is_weyl_invariant(&rd));
        }
        // a symmetric but non-invariant form is caught
        let a2 = named_group("SU(3)").unwrap();
        let bad = InvariantForm {
            gram: IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]),
            level: BigInt::from(1),
        };
        assert!(!bad.is_weyl_invariant(&a2));
    }

    #[test]
    fn form_on_adjoint_lattice() {
        let so3 = named_group("SO(3)").unwrap();
        let g = basic_form(&so3, 1).unwrap().on_integral_lattice(&so3);
        // Λ = Z·α^∨/2, so ⟨λ, λ⟩ = 2/4
        assert_eq!(g.get(0, 0), &crate::zlinalg::rational::rat(1, 2));
    }
}
