use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lattice::Lattice;
use super::matrix::{serialize_bigint_vec, IntMatrix};
use super::normal_form::{reduce_mod_hermite, smith_normal_form};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r`, presented as
/// a subquotient `outer / inner` of an ambient lattice.
///
/// Generators are ordered torsion first (in divisibility order), then free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgAbGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub torsion: Vec<BigInt>,
    /// Columns are representatives of the generators in ambient coordinates.
    pub generator_lifts: IntMatrix,
    #[serde(skip)]
    outer: Lattice,
    #[serde(skip)]
    inner: Lattice,
    /// Rows map outer-basis coordinates to generator coordinates.
    #[serde(skip)]
    coordinate_map: IntMatrix,
}

impl FgAbGroup {
    pub fn trivial(ambient_dim: usize) -> Self {
        let zero = Lattice::new("0", IntMatrix::zeros(ambient_dim, 0)).expect("empty basis");
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
            generator_lifts: IntMatrix::zeros(ambient_dim, 0),
            outer: zero.clone(),
            inner: zero,
            coordinate_map: IntMatrix::zeros(0, 0),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Order of each generator; `0` stands for infinite order.
    pub fn moduli(&self) -> Vec<BigInt> {
        self.torsion
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::zero(), self.free_rank))
            .collect()
    }

    pub fn outer(&self) -> &Lattice {
        &self.outer
    }

    pub fn inner(&self) -> &Lattice {
        &self.inner
    }

    /// Coordinates of the class of an ambient vector of the outer lattice.
    /// Torsion coordinates are reduced into `[0, d)`.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.outer.coordinates(v).ok_or(Error::NotSublattice)?;
        let raw = self.coordinate_map.mul_vec(&c);
        Ok(self.reduce(raw))
    }

    pub fn reduce(&self, coords: Vec<BigInt>) -> Vec<BigInt> {
        coords
            .into_iter()
            .zip(self.moduli())
            .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(&d) })
            .collect()
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(Zero::is_zero))
    }

    /// Human-readable isomorphism type, e.g. `Z/2 + Z`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `outer / inner` as an invariant-factor decomposition with generator lifts.
pub fn subquotient(inner: &Lattice, outer: &Lattice) -> Result<FgAbGroup> {
    let rel = outer.express(inner)?;
    let m = outer.rank();
    let s = smith_normal_form(&rel);
    let factors = s.invariant_factors();
    let left_inv = unimodular_inverse(&s.left);

    // generator i <-> column i of outer * U^{-1}
    let lifts_all = &outer.basis * &left_inv;
    let kept: Vec<usize> = (0..m)
        .filter(|&i| i >= factors.len() || !factors[i].is_one())
        .collect();
    let torsion: Vec<BigInt> = kept
        .iter()
        .filter(|&&i| i < factors.len())
        .map(|&i| factors[i].clone())
        .collect();
    let free_rank = kept.len() - torsion.len();

    let mut coordinate_map = s.left.select_rows(&kept);
    let mut lifts = lifts_all.select_cols(&kept);

    // deterministic representatives: positive leading entry, reduced modulo inner
    let inner_hnf = inner.canonical().basis;
    for g in 0..kept.len() {
        let col = lifts.col(g);
        if col
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            lifts.negate_col(g);
            coordinate_map.negate_row(g);
        }
        let reduced = reduce_mod_hermite(&inner_hnf, &lifts.col(g));
        for (i, x) in reduced.into_iter().enumerate() {
            lifts[(i, g)] = x;
        }
    }

    Ok(FgAbGroup {
        free_rank,
        torsion,
        generator_lifts: lifts,
        outer: outer.clone(),
        inner: inner.clone(),
        coordinate_map,
    })
}

/// Matrix of the homomorphism `src -> dst` induced by an ambient map `f`.
///
/// Column `j` holds the coordinates in `dst` of the image of generator `j` of `src`.
pub fn induced_map_on_subquotient(
    f: &IntMatrix,
    src: &FgAbGroup,
    dst: &FgAbGroup,
) -> Result<IntMatrix> {
    if f.cols() != src.outer.ambient_dim || f.rows() != dst.outer.ambient_dim {
        return Err(Error::DimensionMismatch("ambient map".into()));
    }
    for v in src.inner.basis.col_vecs() {
        if !dst.inner.contains_vector(&f.mul_vec(&v)) {
            return Err(Error::NotCompatible(
                "inner lattice not mapped into inner".into(),
            ));
        }
    }
    for v in src.outer.basis.col_vecs() {
        if !dst.outer.contains_vector(&f.mul_vec(&v)) {
            return Err(Error::NotCompatible(
                "outer lattice not mapped into outer".into(),
            ));
        }
    }
    let cols = src
        .generator_lifts
        .col_vecs()
        .iter()
        .map(|g| dst.coordinates(&f.mul_vec(g)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_cols(dst.num_generators(), &cols))
}

/// Inverse of a unimodular matrix, via its Smith decomposition.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    // U m V = D with D = ±I, so m^{-1} = V D U.
    let s = smith_normal_form(m);
    assert!(
        s.diag.is_square() && (0..s.diag.rows()).all(|i| s.diag[(i, i)].is_one()),
        "matrix is not unimodular"
    );
    &s.right * &s.left
}
