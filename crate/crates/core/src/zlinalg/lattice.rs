use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::matrix::IntMatrix;
use super::normal_form::{column_hermite, column_hermite_with_transform, solve_integer};
use crate::error::{Error, Result};

/// A free abelian group with a chosen basis, embedded in `Z^ambient_dim`.
///
/// Basis vectors are the columns of `basis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub label: String,
    pub ambient_dim: usize,
    pub basis: IntMatrix,
}

impl Lattice {
    pub fn new(label: impl Into<String>, basis: IntMatrix) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::DependentBasis);
        }
        Ok(Lattice {
            label: label.into(),
            ambient_dim: basis.rows(),
            basis,
        })
    }

    /// `Z^n` with the standard basis.
    pub fn standard(label: impl Into<String>, n: usize) -> Self {
        Lattice {
            label: label.into(),
            ambient_dim: n,
            basis: IntMatrix::identity(n),
        }
    }

    /// The lattice spanned by arbitrary generators, in canonical basis.
    pub fn spanned_by(label: impl Into<String>, generators: &IntMatrix) -> Self {
        Lattice {
            label: label.into(),
            ambient_dim: generators.rows(),
            basis: column_hermite(generators),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Same lattice, canonical (Hermite) basis.
    pub fn canonical(&self) -> Lattice {
        Lattice {
            label: self.label.clone(),
            ambient_dim: self.ambient_dim,
            basis: column_hermite(&self.basis),
        }
    }

    /// Equality of the underlying sets, ignoring labels and basis choice.
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim
            && column_hermite(&self.basis) == column_hermite(&other.basis)
    }

    /// Coordinates of an ambient vector in this basis, if it lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        solve_integer(&self.basis, v)
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim
            && other
                .basis
                .col_vecs()
                .iter()
                .all(|c| self.contains_vector(c))
    }

    /// Matrix expressing the basis of `sub` in this basis. Errors if `sub` is not contained.
    pub fn express(&self, sub: &Lattice) -> Result<IntMatrix> {
        if self.ambient_dim != sub.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, sub.ambient_dim
            )));
        }
        let cols = sub
            .basis
            .col_vecs()
            .iter()
            .map(|c| self.coordinates(c).ok_or(Error::NotSublattice))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_cols(self.rank(), &cols))
    }

    /// |outer / self| when ranks agree, via the determinant of the inclusion.
    pub fn index_in(&self, outer: &Lattice) -> Result<BigInt> {
        if self.rank() != outer.rank() {
            return Err(Error::DimensionMismatch(
                "index of lower-rank sublattice".into(),
            ));
        }
        Ok(num_traits::Signed::abs(&outer.express(self)?.det()))
    }
}

/// Homomorphism between lattices, as a matrix in the chosen bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeMap {
    pub domain: Lattice,
    pub codomain: Lattice,
    pub matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(domain: Lattice, codomain: Lattice, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.rank() || matrix.cols() != domain.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for map of ranks {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain.rank(),
                codomain.rank()
            )));
        }
        Ok(LatticeMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Map `Z^cols -> Z^rows` with standard bases.
    pub fn from_matrix(matrix: IntMatrix) -> Self {
        LatticeMap {
            domain: Lattice::standard("Z^n", matrix.cols()),
            codomain: Lattice::standard("Z^m", matrix.rows()),
            matrix,
        }
    }

    pub fn identity(l: &Lattice) -> Self {
        LatticeMap {
            domain: l.clone(),
            codomain: l.clone(),
            matrix: IntMatrix::identity(l.rank()),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LatticeMap) -> Result<LatticeMap> {
        if first.codomain.rank() != self.domain.rank() {
            return Err(Error::DimensionMismatch("composition".into()));
        }
        Ok(LatticeMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Image `f(domain)` as a sublattice of the codomain coordinates, canonical basis.
pub fn image_basis(f: &LatticeMap) -> Lattice {
    Lattice::spanned_by(format!("im({})", f.codomain.label), &f.matrix)
}

/// Kernel of `f` in domain coordinates, canonical basis. Always saturated.
pub fn kernel_basis(f: &LatticeMap) -> Lattice {
    kernel_of_matrix(&f.matrix, format!("ker -> {}", f.codomain.label))
}

pub fn kernel_of_matrix(m: &IntMatrix, label: impl Into<String>) -> Lattice {
    let h = column_hermite_with_transform(m);
    let idx: Vec<usize> = (h.rank..m.cols()).collect();
    Lattice::spanned_by(label, &h.transform.select_cols(&idx))
}

/// Lexicographic pairs `(i, j)` with `i < j`.
pub fn wedge2_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Lexicographic pairs `(i, j)` with `i <= j`.
pub fn sym2_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

pub fn sym2_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // offset of row i in the triangular enumeration
    i * n - i * (i + 1) / 2 + j
}

pub fn wedge2_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// The product `x·y` in `S²(Z^n)`, in the basis `e_i e_j` (`i <= j`).
pub fn sym_product(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let n = x.len();
    let mut out = vec![BigInt::zero(); n * (n + 1) / 2];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            out[sym2_index(n, i, j)] += &x[i] * &y[j];
        }
    }
    out
}

/// `x ∧ y` in `Λ²(Z^n)`, basis `e_i ∧ e_j` (`i < j`).
pub fn wedge_product(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let n = x.len();
    wedge2_pairs(n)
        .into_iter()
        .map(|(i, j)| &x[i] * &y[j] - &x[j] * &y[i])
        .collect()
}

/// `f ⊗ g` on `domain(f) ⊗ domain(g)`, basis pairs in lexicographic order.
pub fn tensor_map(f: &LatticeMap, g: &LatticeMap) -> LatticeMap {
    LatticeMap {
        domain: tensor_lattice(&f.domain, &g.domain),
        codomain: tensor_lattice(&f.codomain, &g.codomain),
        matrix: f.matrix.kronecker(&g.matrix),
    }
}

/// `Λ²f`.
pub fn wedge2_map(f: &LatticeMap) -> LatticeMap {
    let cols: Vec<Vec<BigInt>> = wedge2_pairs(f.domain.rank())
        .into_iter()
        .map(|(i, j)| wedge_product(&f.matrix.col(i), &f.matrix.col(j)))
        .collect();
    let n = f.codomain.rank();
    LatticeMap {
        domain: power_lattice("Λ²", &f.domain, wedge2_pairs(f.domain.rank()).len()),
        codomain: power_lattice("Λ²", &f.codomain, n * n.saturating_sub(1) / 2),
        matrix: IntMatrix::from_cols(n * n.saturating_sub(1) / 2, &cols),
    }
}

/// `S²f`.
pub fn sym2_map(f: &LatticeMap) -> LatticeMap {
    let cols: Vec<Vec<BigInt>> = sym2_pairs(f.domain.rank())
        .into_iter()
        .map(|(i, j)| sym_product(&f.matrix.col(i), &f.matrix.col(j)))
        .collect();
    let n = f.codomain.rank();
    LatticeMap {
        domain: power_lattice("S²", &f.domain, sym2_pairs(f.domain.rank()).len()),
        codomain: power_lattice("S²", &f.codomain, n * (n + 1) / 2),
        matrix: IntMatrix::from_cols(n * (n + 1) / 2, &cols),
    }
}

fn tensor_lattice(a: &Lattice, b: &Lattice) -> Lattice {
    Lattice::standard(format!("{}⊗{}", a.label, b.label), a.rank() * b.rank())
}

fn power_lattice(prefix: &str, a: &Lattice, n: usize) -> Lattice {
    Lattice::standard(format!("{prefix}{}", a.label), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::matrix::{big, bigvec};

    fn map(rows: &[Vec<i64>]) -> LatticeMap {
        LatticeMap::from_matrix(IntMatrix::from_rows(rows))
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&map(&[vec![0, 0], vec![0, 0]])).rank(), 0);
        let im = image_basis(&map(&[vec![2]]));
        assert_eq!(im.basis, IntMatrix::from_rows(&[vec![2]]));
        let im = image_basis(&map(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(im.basis, IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&LatticeMap::from_matrix(IntMatrix::identity(3))).rank(),
            0
        );
        let k = kernel_basis(&map(&[vec![2, -2]]));
        assert_eq!(k.basis, IntMatrix::from_rows(&[vec![1], vec![1]]));
        let k = kernel_basis(&LatticeMap::from_matrix(IntMatrix::zeros(2, 3)));
        assert!(k.same_lattice(&Lattice::standard("Z3", 3)));
    }

    #[test]
    fn functor_examples() {
        let id2 = LatticeMap::from_matrix(IntMatrix::identity(2));
        assert_eq!(wedge2_map(&id2).matrix, IntMatrix::identity(1));
        assert_eq!(sym2_map(&id2).matrix, IntMatrix::identity(3));
        let d = map(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(
            sym2_map(&d).matrix,
            IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]])
        );
        assert_eq!(tensor_map(&id2, &d).matrix.rows(), 4);
    }

    #[test]
    fn index_helpers() {
        for n in 0..6 {
            for (k, (i, j)) in sym2_pairs(n).into_iter().enumerate() {
                assert_eq!(sym2_index(n, i, j), k);
                assert_eq!(sym2_index(n, j, i), k);
            }
            for (k, (i, j)) in wedge2_pairs(n).into_iter().enumerate() {
                assert_eq!(wedge2_index(n, i, j), k);
            }
        }
    }

    #[test]
    fn containment_and_index() {
        let outer = Lattice::standard("Z2", 2);
        let inner = Lattice::new("L", IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert!(outer.contains(&inner));
        assert!(!inner.contains(&outer));
        assert_eq!(inner.index_in(&outer).unwrap(), big(6));
        assert_eq!(inner.coordinates(&bigvec(&[4, 3])), Some(bigvec(&[2, 1])));
        assert!(Lattice::new("bad", IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])).is_err());
    }
}
