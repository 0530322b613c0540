//! Low-degree integral cohomology of `K` and of the flag manifold `B = K/T`
//! from the Leray–Serre spectral sequence of `T -> K -> B`.
//!
//! Coordinates: `Λ*` in the basis dual to the chosen basis of `Λ`, `Λ̃* = P` in
//! fundamental weights. `Λ²Λ*` uses `e_a∧e_b` (`a < b`), `Λ*⊗P` uses `e_a⊗ω_k`
//! at index `a·r + k`, and `S²P` uses monomials `ω_iω_j` (`i <= j`).

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::tduality::{ChernVector, TwistClass};
use crate::zlinalg::lattice::{kernel_of_matrix, sym_product, wedge2_index, wedge2_pairs};
use crate::zlinalg::matrix::serialize_bigint_vec;
use crate::zlinalg::{
    image_basis, smith_normal_form, subquotient, sym2_map, FgAbGroup, IntMatrix, Lattice,
    LatticeMap,
};

/// The complex `Λ²Λ* --d20--> Λ*⊗P --d21--> S²P / S²P^W`.
#[derive(Debug, Clone, Serialize)]
pub struct LssComplex {
    pub rank: usize,
    pub c0: Lattice,
    pub c1: Lattice,
    /// `S²P` with the invariant sublattice.
    pub sym2: Lattice,
    pub invariants: Lattice,
    pub d20: LatticeMap,
    /// `Λ*⊗P -> S²P`, before passing to the quotient.
    pub d21_lift: LatticeMap,
    /// `S²P -> Z^m`, kernel exactly `S²P^W`.
    pub quotient: IntMatrix,
    /// `quotient ∘ d21_lift`.
    pub d21: LatticeMap,
}

impl LssComplex {
    pub fn c2_rank(&self) -> usize {
        self.quotient.rows()
    }

    /// Coordinates of `u ∈ Hom(Λ, P)` in `Λ*⊗P`.
    pub fn twist_vector(&self, u: &TwistClass) -> Vec<BigInt> {
        let r = self.rank;
        let m = &u.map.matrix;
        (0..r * r)
            .map(|idx| m[(idx % r, idx / r)].clone())
            .collect()
    }

    /// The inverse of [`twist_vector`](Self::twist_vector).
    pub fn twist_from_vector(&self, v: &[BigInt]) -> IntMatrix {
        let r = self.rank;
        IntMatrix::from_fn(r, r, |k, a| v[a * r + k].clone())
    }
}

/// `S²P^W`: common kernel of `S²(s_i) - 1` over the simple reflections.
pub fn sym_invariants(rd: &RootDatum) -> Lattice {
    let r = rd.rank();
    let n = r * (r + 1) / 2;
    let mut stacked = IntMatrix::zeros(0, n);
    for i in 0..r {
        let s = sym2_map(&LatticeMap::from_matrix(rd.reflection_on_weights(i))).matrix;
        stacked = stacked.vstack(&s.sub(&IntMatrix::identity(n)));
    }
    kernel_of_matrix(&stacked, "S²P^W")
}

/// Integer matrix whose kernel is exactly the saturated sublattice `sub`.
fn quotient_map(sub: &Lattice) -> IntMatrix {
    let s = smith_normal_form(&sub.basis);
    let k = s.rank();
    let rows: Vec<usize> = (k..sub.ambient_dim).collect();
    s.left.select_rows(&rows)
}

pub fn build_complex(rd: &RootDatum) -> Result<LssComplex> {
    let r = rd.rank();
    let iota_star = rd.dual_basis();
    let c = |a: usize| iota_star.col(a);

    let pairs = wedge2_pairs(r);
    let mut d20 = IntMatrix::zeros(r * r, pairs.len());
    for (col, &(a, b)) in pairs.iter().enumerate() {
        let (ca, cb) = (c(a), c(b));
        for k in 0..r {
            d20[(b * r + k, col)] += &ca[k];
            d20[(a * r + k, col)] -= &cb[k];
        }
    }

    let sym_dim = r * (r + 1) / 2;
    let cols: Vec<Vec<BigInt>> = (0..r * r)
        .map(|idx| {
            let (a, k) = (idx / r, idx % r);
            let mut e = vec![BigInt::zero(); r];
            e[k] = 1.into();
            sym_product(&c(a), &e)
        })
        .collect();
    let d21_lift = IntMatrix::from_cols(sym_dim, &cols);

    let invariants = sym_invariants(rd);
    let quotient = quotient_map(&invariants);
    let d21 = &quotient * &d21_lift;

    if !(&d21 * &d20).is_zero() {
        return Err(Error::Internal(format!("d21∘d20 ≠ 0 for {}", rd.label)));
    }

    let c0 = Lattice::standard("Λ²Λ*", pairs.len());
    let c1 = Lattice::standard("Λ*⊗P", r * r);
    let sym2 = Lattice::standard("S²P", sym_dim);
    let c2 = Lattice::standard("S²P/S²P^W", quotient.rows());
    Ok(LssComplex {
        rank: r,
        d20: LatticeMap::new(c0.clone(), c1.clone(), d20)?,
        d21_lift: LatticeMap::new(c1.clone(), sym2.clone(), d21_lift)?,
        d21: LatticeMap::new(c1.clone(), c2, d21)?,
        quotient,
        c0,
        c1,
        sym2,
        invariants,
    })
}

/// `H³(K) = ker d21 / im d20`, with generator lifts in `Λ*⊗P`.
pub fn h3_of_k(cx: &LssComplex) -> Result<FgAbGroup> {
    let ker = kernel_of_matrix(&cx.d21.matrix, "ker d21");
    let im = image_basis(&cx.d20);
    subquotient(&im, &ker)
}

/// `H²(K) = coker(ι*: Λ* -> P)`; the other edge term `ker d20` must vanish.
pub fn h2_of_k(rd: &RootDatum, cx: &LssComplex) -> Result<FgAbGroup> {
    let ker = kernel_of_matrix(&cx.d20.matrix, "ker d20");
    if ker.rank() != 0 {
        return Err(Error::Internal(format!(
            "ker d20 has rank {} for {}; the extension for H² is not determined",
            ker.rank(),
            rd.label
        )));
    }
    subquotient(&image_basis(&rd.iota_star()), &rd.weight_lattice())
}

/// `H¹(K) = ker ι*`.
pub fn h1_of_k(rd: &RootDatum) -> Result<FgAbGroup> {
    let ker = kernel_of_matrix(&rd.dual_basis(), "ker ι*");
    subquotient(
        &Lattice::spanned_by("0", &IntMatrix::zeros(rd.rank(), 0)),
        &ker,
    )
}

/// `H²(B) ≅ P`.
pub fn h2_of_b(rd: &RootDatum) -> Result<FgAbGroup> {
    subquotient(
        &Lattice::spanned_by("0", &IntMatrix::zeros(rd.rank(), 0)),
        &rd.weight_lattice(),
    )
}

/// `H⁴(B)` presented as `S²P / S²P^W`.
pub fn h4_of_b(cx: &LssComplex) -> Result<FgAbGroup> {
    subquotient(&cx.invariants, &cx.sym2)
}

/// `c_i = ι*(e_i)`: Chern classes of `K -> B` in `H²(B) ≅ P`.
pub fn chern_classes(rd: &RootDatum) -> ChernVector {
    ChernVector::new(rd.dual_basis().col_vecs())
}

/// `d21(u) = 0`, i.e. the symmetrization of `(X, Y) ↦ u(X)(Y)` is Weyl invariant.
pub fn is_cycle(cx: &LssComplex, u: &TwistClass) -> bool {
    cx.d21.apply(&cx.twist_vector(u)).iter().all(Zero::is_zero)
}

/// Coordinates of `[u]` in the invariant-factor presentation of `H³(K)`.
pub fn class_in_h3(cx: &LssComplex, h3: &FgAbGroup, u: &TwistClass) -> Result<Vec<BigInt>> {
    if !is_cycle(cx, u) {
        return Err(Error::NotACycle);
    }
    h3.coordinates(&cx.twist_vector(u))
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub label: String,
    pub h1_k: FgAbGroup,
    pub h2_k: FgAbGroup,
    pub h3_k: FgAbGroup,
    pub h2_b: FgAbGroup,
    pub h4_b: FgAbGroup,
    /// Set when `S²P/S²P^W` has torsion, contradicting torsion-freeness of `H⁴(B)`.
    pub h4_b_torsion_flag: bool,
    pub chern: ChernVector,
    pub complex_ranks: [usize; 3],
    pub filtration: Vec<String>,
}

pub fn cohomology_report(rd: &RootDatum) -> Result<CohomologyReport> {
    let cx = build_complex(rd)?;
    let h4_b = h4_of_b(&cx)?;
    let h4_b_torsion_flag = !h4_b.is_free();
    let filtration = vec![
        "H¹(K) = ker ι* = E∞^{0,1}".to_string(),
        "H²(K) = E∞^{2,0} = coker ι*, since E∞^{0,2} = ker d20 = 0".to_string(),
        "H³(K) = E∞^{2,1} = ker d21 / im d20 ⊆ F²H³, since E∞^{3,0} = H³(B) = 0 and E∞^{1,2} = E∞^{0,3} = 0"
            .to_string(),
    ];
    Ok(CohomologyReport {
        label: rd.label.clone(),
        h1_k: h1_of_k(rd)?,
        h2_k: h2_of_k(rd, &cx)?,
        h3_k: h3_of_k(&cx)?,
        h2_b: h2_of_b(rd)?,
        h4_b,
        h4_b_torsion_flag,
        chern: chern_classes(rd),
        complex_ranks: [cx.c0.rank(), cx.c1.rank(), cx.c2_rank()],
        filtration,
    })
}

/// `Λ³Λ* -> P⊗Λ²Λ*`, the next Koszul differential.
fn koszul_d3(rd: &RootDatum) -> IntMatrix {
    let r = rd.rank();
    let iota_star = rd.dual_basis();
    let w2 = wedge2_pairs(r).len();
    let triples: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|a| (a + 1..r).flat_map(move |b| (b + 1..r).map(move |c| (a, b, c))))
        .collect();
    let mut m = IntMatrix::zeros(r * w2, triples.len());
    for (col, &(a, b, c)) in triples.iter().enumerate() {
        let terms = [(a, b, c, 1i64), (b, a, c, -1), (c, a, b, 1)];
        for (x, p, q, sign) in terms {
            let w = wedge2_index(r, p, q);
            for k in 0..r {
                m[(k * w2 + w, col)] += &iota_star[(k, x)] * sign;
            }
        }
    }
    m
}

#[derive(Debug, Clone, Serialize)]
pub struct DualizabilityReport {
    pub dualizable: bool,
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub class: Vec<BigInt>,
    /// `E∞^{0,3} = 0`: the Koszul map on `Λ³Λ*` is injective.
    pub e_inf_03_zero: bool,
    /// `E∞^{1,2} = 0`, from `H¹(B) = 0`.
    pub e_inf_12_zero: bool,
    /// `E∞^{3,0} = H³(B) = 0`.
    pub h3_b_zero: bool,
    pub explanation: String,
}

/// Checks that the class of `u` lies in `F²H³(K)`, the condition for a T-dual.
pub fn dualizability_report(rd: &RootDatum, u: &TwistClass) -> Result<DualizabilityReport> {
    let cx = build_complex(rd)?;
    let h3 = h3_of_k(&cx)?;
    let class = class_in_h3(&cx, &h3, u)?;
    let e_inf_03_zero = kernel_of_matrix(&koszul_d3(rd), "ker").rank() == 0;
    // B is simply connected with cohomology concentrated in even degrees
    let e_inf_12_zero = true;
    let h3_b_zero = true;
    let dualizable = e_inf_03_zero && e_inf_12_zero && h3_b_zero;
    let explanation = if dualizable {
        "H³(K) = E∞^{2,1}, so every class lies in F²H³ and the pair (K -> B, h) is T-dualizable"
            .to_string()
    } else {
        "E∞^{0,3} does not vanish; the class need not lie in F²H³".to_string()
    };
    Ok(DualizabilityReport {
        dualizable,
        class,
        e_inf_03_zero,
        e_inf_12_zero,
        h3_b_zero,
        explanation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::named_group;
    use crate::zlinalg::matrix::{big, bigvec};

    fn cx(name: &str) -> (RootDatum, LssComplex) {
        let rd = named_group(name).unwrap();
        let c = build_complex(&rd).unwrap();
        (rd, c)
    }

    #[test]
    fn invariant_ranks() {
        assert_eq!(sym_invariants(&named_group("SU(2)").unwrap()).rank(), 1);
        assert_eq!(sym_invariants(&named_group("SU(3)").unwrap()).rank(), 1);
        assert_eq!(
            sym_invariants(&named_group("SU(2)xSU(2)").unwrap()).rank(),
            2
        );
        let a1 = sym_invariants(&named_group("SU(2)").unwrap());
        assert_eq!(a1.basis, IntMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn complex_ranks() {
        let (_, c) = cx("SU(2)");
        assert_eq!((c.c0.rank(), c.c1.rank(), c.c2_rank()), (0, 1, 0));
        let (rd, c) = cx("SO(3)");
        assert_eq!(c.c1.rank(), 1);
        assert_eq!(rd.dual_basis(), IntMatrix::from_rows(&[vec![2]]));
        let (_, c) = cx("SU(3)");
        assert_eq!((c.c0.rank(), c.c1.rank(), c.c2_rank()), (1, 4, 2));
    }

    #[test]
    fn h3_examples() {
        for name in ["SU(2)", "SO(3)", "SU(3)", "PSU(3)", "Spin(5)", "G2"] {
            let (_, c) = cx(name);
            let h = h3_of_k(&c).unwrap();
            assert_eq!((h.free_rank, h.torsion.len()), (1, 0), "{name}");
        }
        let (_, c) = cx("SU(2)xSU(3)");
        assert_eq!(h3_of_k(&c).unwrap().free_rank, 2);
    }

    #[test]
    fn h2_examples() {
        let (rd, c) = cx("SU(2)");
        assert!(h2_of_k(&rd, &c).unwrap().is_trivial());
        let (rd, c) = cx("SO(3)");
        assert_eq!(h2_of_k(&rd, &c).unwrap().torsion, bigvec(&[2]));
        let (rd, c) = cx("PSU(3)");
        assert_eq!(h2_of_k(&rd, &c).unwrap().torsion, bigvec(&[3]));
        assert!(h1_of_k(&rd).unwrap().is_trivial());
    }

    #[test]
    fn h4_of_flag() {
        let (_, c) = cx("SU(2)");
        assert_eq!(h4_of_b(&c).unwrap().free_rank, 0);
        let (_, c) = cx("SU(3)");
        let h = h4_of_b(&c).unwrap();
        assert_eq!((h.free_rank, h.is_free()), (2, true));
    }

    #[test]
    fn chern() {
        let so3 = named_group("SO(3)").unwrap();
        assert_eq!(chern_classes(&so3).classes, vec![bigvec(&[2])]);
        let su3 = named_group("SU(3)").unwrap();
        assert_eq!(
            chern_classes(&su3).classes,
            vec![bigvec(&[1, 0]), bigvec(&[0, 1])]
        );
    }

    #[test]
    fn cycles_and_classes() {
        let (rd, c) = cx("SU(2)");
        let h3 = h3_of_k(&c).unwrap();
        for k in -3..=3 {
            let u = TwistClass::from_matrix(&rd, IntMatrix::from_rows(&[vec![k]])).unwrap();
            assert!(is_cycle(&c, &u));
            assert_eq!(class_in_h3(&c, &h3, &u).unwrap(), vec![big(k)]);
        }

        let (rd, c) = cx("SU(3)");
        let h3 = h3_of_k(&c).unwrap();
        let basic = TwistClass::from_level(&rd, 1).unwrap();
        assert!(is_cycle(&c, &basic));
        let bad =
            TwistClass::from_matrix(&rd, IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]])).unwrap();
        assert!(!is_cycle(&c, &bad));
        assert!(matches!(class_in_h3(&c, &h3, &bad), Err(Error::NotACycle)));

        // a boundary has class zero
        let boundary = c.twist_from_vector(&c.d20.matrix.col(0));
        let bu = TwistClass::from_matrix(&rd, boundary).unwrap();
        assert!(is_cycle(&c, &bu));
        assert!(class_in_h3(&c, &h3, &bu).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn dualizable() {
        for name in ["SU(2)", "SO(3)", "SU(3)", "G2"] {
            let rd = named_group(name).unwrap();
            let u = TwistClass::from_level(&rd, 1).unwrap();
            let rep = dualizability_report(&rd, &u).unwrap();
            assert!(rep.dualizable && rep.e_inf_03_zero, "{name}");
        }
    }
}
