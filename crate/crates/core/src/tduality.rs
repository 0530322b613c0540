//! T-duals of `K -> K/T`: dual Chern classes, B-field shifts and the
//! Langlands-dual construction.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flagcoh::{build_complex, class_in_h3, h3_of_k, is_cycle, LssComplex};
use crate::rootdata::{basic_form, find_phi, langlands_dual, PhiSearch, RootDatum};
use crate::zlinalg::matrix::serialize_bigint_vec;
use crate::zlinalg::rational::RatMatrix;
use crate::zlinalg::{image_basis, IntMatrix, Lattice, LatticeMap};

pub const BASIS_CONVENTION: &str =
    "Λ in its chosen basis (simple coroots when simply connected); P in fundamental weights";

/// A representative `u ∈ Hom(Λ, P)` of a twist on `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistClass {
    pub map: LatticeMap,
}

impl TwistClass {
    /// `matrix` has columns `u(λ_a)` in weight coordinates.
    pub fn from_matrix(rd: &RootDatum, matrix: IntMatrix) -> Result<Self> {
        let map = LatticeMap::new(
            Lattice::standard("Λ", rd.rank()),
            rd.weight_lattice(),
            matrix,
        )?;
        Ok(TwistClass { map })
    }

    pub fn zero(rd: &RootDatum) -> Self {
        let r = rd.rank();
        TwistClass::from_matrix(rd, IntMatrix::zeros(r, r)).expect("square")
    }

    /// `λ ↦ k⟨λ, -⟩` for the basic form; `u(λ_a)(α_j^∨) = k⟨λ_a, α_j^∨⟩`.
    pub fn from_level(rd: &RootDatum, level: i64) -> Result<Self> {
        let form = basic_form(rd, level)?;
        let l = RatMatrix::from_int(&rd.integral_lattice.basis);
        let pairing = l
            .transpose()
            .mul(&form.on_coweights(rd))
            .mul(&RatMatrix::from_int(&rd.cartan.transpose()));
        let m = pairing
            .transpose()
            .to_int()
            .ok_or_else(|| Error::Internal("form pairing Λ × Q^∨ is not integral".into()))?;
        TwistClass::from_matrix(rd, m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.map.matrix
    }

    pub fn add(&self, other: &TwistClass) -> Result<TwistClass> {
        if self.matrix().rows() != other.matrix().rows()
            || self.matrix().cols() != other.matrix().cols()
        {
            return Err(Error::DimensionMismatch("twists of different rank".into()));
        }
        Ok(TwistClass {
            map: LatticeMap {
                domain: self.map.domain.clone(),
                codomain: self.map.codomain.clone(),
                matrix: self.matrix().add(other.matrix()),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernVector {
    #[serde(serialize_with = "serialize_classes")]
    pub classes: Vec<Vec<BigInt>>,
    pub basis_convention: String,
}

fn serialize_classes<S: serde::Serializer>(
    v: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct Row<'a>(#[serde(serialize_with = "serialize_bigint_vec")] &'a Vec<BigInt>);
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&Row(c))?;
    }
    seq.end()
}

impl ChernVector {
    pub fn new(classes: Vec<Vec<BigInt>>) -> Self {
        ChernVector {
            classes,
            basis_convention: "H²(B) ≅ P, fundamental weight coordinates".into(),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Integers `B_ij`, `i < j`; entries on and below the diagonal are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftMatrix {
    pub b: IntMatrix,
}

impl ShiftMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(
                "shift matrix must be square".into(),
            ));
        }
        let n = m.rows();
        let b = IntMatrix::from_fn(n, n, |i, j| {
            if i < j {
                m[(i, j)].clone()
            } else {
                BigInt::zero()
            }
        });
        Ok(ShiftMatrix { b })
    }

    pub fn zero(n: usize) -> Self {
        ShiftMatrix {
            b: IntMatrix::zeros(n, n),
        }
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    pub fn neg(&self) -> Self {
        ShiftMatrix { b: self.b.neg() }
    }

    pub fn add(&self, other: &ShiftMatrix) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(
                "shift matrices of different size".into(),
            ));
        }
        Ok(ShiftMatrix {
            b: self.b.add(&other.b),
        })
    }

    /// `v = Σ B_ij y_i∧y_j` in the basis `y_i∧y_j` (`i < j`).
    pub fn wedge_vector(&self) -> Vec<BigInt> {
        crate::zlinalg::lattice::wedge2_pairs(self.size())
            .into_iter()
            .map(|(i, j)| self.b[(i, j)].clone())
            .collect()
    }
}

/// `ĉ'_k = ĉ_k + Σ_{i<k} B_ik c_i − Σ_{j>k} B_kj c_j`.
pub fn bfield_shift(chat: &ChernVector, b: &ShiftMatrix, c: &ChernVector) -> Result<ChernVector> {
    let n = chat.len();
    if c.len() != n || b.size() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} dual classes, {} classes, {}×{} shift",
            n,
            c.len(),
            b.size(),
            b.size()
        )));
    }
    let dim = chat.classes.first().map_or(0, Vec::len);
    if chat
        .classes
        .iter()
        .chain(&c.classes)
        .any(|v| v.len() != dim)
    {
        return Err(Error::DimensionMismatch(
            "classes of different length".into(),
        ));
    }
    let mut out = chat.classes.clone();
    for (k, ck) in out.iter_mut().enumerate() {
        for i in 0..k {
            for (x, y) in ck.iter_mut().zip(&c.classes[i]) {
                *x += &b.b[(i, k)] * y;
            }
        }
        for j in k + 1..n {
            for (x, y) in ck.iter_mut().zip(&c.classes[j]) {
                *x -= &b.b[(k, j)] * y;
            }
        }
    }
    Ok(ChernVector {
        classes: out,
        basis_convention: chat.basis_convention.clone(),
    })
}

/// Dual Chern data: the image `u(Λ) ⊆ P` in canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualChern {
    pub classes: ChernVector,
    pub lattice: Lattice,
    /// Index of `u(Λ)` in `P`, `0` when the rank drops.
    #[serde(serialize_with = "crate::zlinalg::matrix::serialize_bigint")]
    pub index: BigInt,
}

fn dual_data(rd: &RootDatum, u: &TwistClass) -> DualChern {
    let lattice = image_basis(&u.map);
    let index = lattice
        .index_in(&rd.weight_lattice())
        .unwrap_or_else(|_| BigInt::zero());
    DualChern {
        classes: ChernVector::new(lattice.basis.col_vecs()),
        lattice,
        index,
    }
}

pub fn dual_chern(rd: &RootDatum, u: &TwistClass) -> Result<DualChern> {
    let cx = build_complex(rd)?;
    if !is_cycle(&cx, u) {
        return Err(Error::NotACycle);
    }
    Ok(dual_data(rd, u))
}

/// `u = φ*∘λ`, with `λ: Λ ≅ Λ^{L,*} -> P^L` and `φ*: P^L -> P`.
pub fn langlands_twist(rd: &RootDatum) -> Result<TwistClass> {
    match find_phi(rd) {
        PhiSearch::Found(iso) => {
            let dual = langlands_dual(rd);
            let lambda = dual.dual_basis();
            TwistClass::from_matrix(rd, &iso.phi_star.matrix * &lambda)
        }
        PhiSearch::Absent {
            obstructions,
            nodes_explored,
        } => Err(Error::Unavailable(format!(
            "no Dynkin isomorphism onto the Langlands dual of {} (factors without a match: {}; {} nodes explored)",
            rd.label,
            obstructions.join(", "),
            nodes_explored
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LanglandsReport {
    pub group: String,
    pub dual_group: String,
    pub permutation: Vec<usize>,
    pub twist: TwistClass,
    /// `u(Λ)` in canonical basis.
    pub twist_image: Lattice,
    /// `φ*(ι^{L,*}(Λ^{L,*}))`, the Chern lattice of `K^L -> B`.
    pub dual_chern_lattice: Lattice,
    pub lattices_equal: bool,
    pub twist_is_cycle: bool,
    #[serde(serialize_with = "crate::zlinalg::matrix::serialize_bigint")]
    pub index_in_p: BigInt,
}

/// Compares the image of the Langlands twist with the Chern lattice of the
/// Langlands dual bundle, computed on the dual side and transported by `φ`.
pub fn verify_langlands_tdual(rd: &RootDatum) -> Result<LanglandsReport> {
    let u = langlands_twist(rd)?;
    let iso = find_phi(rd)
        .found()
        .cloned()
        .ok_or_else(|| Error::Internal("φ disappeared".into()))?;
    let dual = langlands_dual(rd);
    let dual_image = image_basis(&dual.iota_star());
    let transported =
        Lattice::spanned_by("φ*ι^L*(Λ^L*)", &(&iso.phi_star.matrix * &dual_image.basis));
    let twist_image = image_basis(&u.map);
    let cx = build_complex(rd)?;
    let twist_is_cycle = is_cycle(&cx, &u);
    let index_in_p = twist_image
        .index_in(&rd.weight_lattice())
        .unwrap_or_else(|_| BigInt::zero());
    Ok(LanglandsReport {
        group: rd.label.clone(),
        dual_group: dual.label.clone(),
        permutation: iso.perm.clone(),
        lattices_equal: twist_image.basis == transported.basis,
        twist: u,
        twist_image,
        dual_chern_lattice: transported,
        twist_is_cycle,
        index_in_p,
    })
}

/// Result of acting on a reduction by `v = Σ B_ij y_i∧y_j`.
#[derive(Debug, Clone, Serialize)]
pub struct TorsorShift {
    pub twist: TwistClass,
    pub dual_chern: ChernVector,
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub class: Vec<BigInt>,
}

/// Shifts the representative by the boundary `d20(v)`; the class in `H³` is
/// unchanged while the dual Chern classes move by [`bfield_shift`].
pub fn reduction_torsor_shift(
    rd: &RootDatum,
    u: &TwistClass,
    b: &ShiftMatrix,
) -> Result<TorsorShift> {
    let cx = build_complex(rd)?;
    shift_in_complex(rd, &cx, u, b)
}

pub(crate) fn shift_in_complex(
    rd: &RootDatum,
    cx: &LssComplex,
    u: &TwistClass,
    b: &ShiftMatrix,
) -> Result<TorsorShift> {
    if b.size() != rd.rank() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} shift for rank {}",
            b.size(),
            b.size(),
            rd.rank()
        )));
    }
    if !is_cycle(cx, u) {
        return Err(Error::NotACycle);
    }
    let h3 = h3_of_k(cx)?;
    let boundary = cx.twist_from_vector(&cx.d20.apply(&b.wedge_vector()));
    let shifted = TwistClass::from_matrix(rd, u.matrix().add(&boundary))?;
    let class = class_in_h3(cx, &h3, &shifted)?;
    Ok(TorsorShift {
        dual_chern: ChernVector::new(shifted.matrix().col_vecs()),
        twist: shifted,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::named_group;
    use crate::zlinalg::matrix::bigvec;

    fn cv(v: &[&[i64]]) -> ChernVector {
        ChernVector::new(v.iter().map(|x| bigvec(x)).collect())
    }

    #[test]
    fn shift_formula_rank_two() {
        let chat = cv(&[&[1, 0], &[0, 1]]);
        let c = cv(&[&[2, 3], &[5, 7]]);
        let b = ShiftMatrix::new(IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]])).unwrap();
        let out = bfield_shift(&chat, &b, &c).unwrap();
        // ĉ₁' = ĉ₁ − c₂, ĉ₂' = ĉ₂ + c₁
        assert_eq!(out.classes, vec![bigvec(&[-4, -7]), bigvec(&[2, 4])]);
        assert_eq!(
            bfield_shift(&chat, &ShiftMatrix::zero(2), &c).unwrap(),
            chat
        );
        assert_eq!(bfield_shift(&out, &b.neg(), &c).unwrap(), chat);
        assert!(bfield_shift(&chat, &ShiftMatrix::zero(3), &c).is_err());
    }

    #[test]
    fn su2_dual_chern() {
        let rd = named_group("SU(2)").unwrap();
        for k in 1..=3 {
            let u = TwistClass::from_matrix(&rd, IntMatrix::from_rows(&[vec![k]])).unwrap();
            let d = dual_chern(&rd, &u).unwrap();
            assert_eq!(d.index, BigInt::from(k));
            assert_eq!(d.classes.classes, vec![bigvec(&[k])]);
        }
        let d = dual_chern(&rd, &TwistClass::zero(&rd)).unwrap();
        assert_eq!(d.lattice.rank(), 0);
        assert_eq!(
            TwistClass::from_level(&rd, 1).unwrap().matrix(),
            &IntMatrix::from_rows(&[vec![2]])
        );
    }

    #[test]
    fn langlands_examples() {
        let su2 = named_group("SU(2)").unwrap();
        assert_eq!(
            langlands_twist(&su2).unwrap().matrix(),
            &IntMatrix::from_rows(&[vec![2]])
        );
        let su3 = named_group("SU(3)").unwrap();
        assert_eq!(
            langlands_twist(&su3).unwrap().matrix(),
            &IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]])
        );
        assert!(matches!(
            langlands_twist(&named_group("Spin(7)").unwrap()),
            Err(Error::Unavailable(_))
        ));

        let rep = verify_langlands_tdual(&su2).unwrap();
        assert!(rep.lattices_equal && rep.twist_is_cycle);
        assert_eq!(rep.twist_image.basis, IntMatrix::from_rows(&[vec![2]]));
        let rep = verify_langlands_tdual(&su3).unwrap();
        assert!(rep.lattices_equal && rep.twist_is_cycle);
        assert_eq!(rep.index_in_p, BigInt::from(3));
        let rep = verify_langlands_tdual(&named_group("G2").unwrap()).unwrap();
        assert!(rep.lattices_equal);
        assert_eq!(rep.index_in_p, BigInt::from(1));
    }

    #[test]
    fn torsor_shift_matches_formula() {
        let rd = named_group("SU(3)").unwrap();
        let u = TwistClass::from_level(&rd, 1).unwrap();
        let b = ShiftMatrix::new(IntMatrix::from_rows(&[vec![0, 3], vec![0, 0]])).unwrap();
        let out = reduction_torsor_shift(&rd, &u, &b).unwrap();
        let direct = bfield_shift(
            &ChernVector::new(u.matrix().col_vecs()),
            &b,
            &crate::flagcoh::chern_classes(&rd),
        )
        .unwrap();
        assert_eq!(out.dual_chern, direct);
        let before = reduction_torsor_shift(&rd, &u, &ShiftMatrix::zero(2)).unwrap();
        assert_eq!(out.class, before.class);
        assert_eq!(before.twist, u);
    }
}
