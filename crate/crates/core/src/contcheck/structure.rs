use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Real structure constants `[e_i, e_j] = Σ_k f[i][j][k] e_k` of a compact Lie
/// algebra with the invariant inner product `⟨X, Y⟩ = −tr(XY)`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureConstants {
    pub algebra: String,
    pub dim: usize,
    /// Flattened `f[i][j][k]` at `(i·dim + j)·dim + k`.
    pub f: Vec<f64>,
    /// Flattened Gram matrix of the basis.
    pub gram: Vec<f64>,
    /// Basis indices spanning the Cartan subalgebra.
    pub cartan: Vec<usize>,
}

fn commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

fn pairing(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    -(a * b).trace().re
}

impl StructureConstants {
    /// `su(n)`: real antisymmetric, imaginary symmetric off-diagonal, then
    /// diagonal `i(E_kk − E_{k+1,k+1})`.
    pub fn su(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("su({n})")));
        }
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let unit = |r: usize, c: usize| {
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            m[(r, c)] = one;
            m
        };
        let mut basis = Vec::new();
        for r in 0..n {
            for c in r + 1..n {
                basis.push(unit(r, c) - unit(c, r));
                basis.push((unit(r, c) + unit(c, r)) * i);
            }
        }
        let cartan: Vec<usize> = (basis.len()..basis.len() + n - 1).collect();
        for k in 0..n - 1 {
            basis.push((unit(k, k) - unit(k + 1, k + 1)) * i);
        }
        let dim = basis.len();
        let gram = DMatrix::<f64>::from_fn(dim, dim, |a, b| pairing(&basis[a], &basis[b]));
        let gram_inv = gram
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Internal("degenerate Gram matrix".into()))?;
        let mut f = vec![0.0; dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let br = commutator(&basis[a], &basis[b]);
                let rhs = DVector::<f64>::from_fn(dim, |m, _| pairing(&basis[m], &br));
                let coords = &gram_inv * rhs;
                for k in 0..dim {
                    f[(a * dim + b) * dim + k] = coords[k];
                }
            }
        }
        Ok(StructureConstants {
            algebra: format!("su{n}"),
            dim,
            f,
            gram: gram.as_slice().to_vec(),
            cartan,
        })
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "su2" => Self::su(2),
            "su3" => Self::su(3),
            "su4" => Self::su(4),
            other => Err(Error::InvalidInput(format!("unknown algebra {other}"))),
        }
    }

    fn fijk(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f[(i * self.dim + j) * self.dim + k]
    }

    fn g(&self, i: usize, j: usize) -> f64 {
        self.gram[i * self.dim + j]
    }

    /// `c_ijk = ⟨[e_i, e_j], e_k⟩`.
    pub fn c_tensor(&self) -> Vec<f64> {
        let d = self.dim;
        let mut c = vec![0.0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    c[(i * d + j) * d + k] =
                        (0..d).map(|m| self.fijk(i, j, m) * self.g(m, k)).sum();
                }
            }
        }
        c
    }

    /// Largest `|[[x,y],z] + [[y,z],x] + [[z,x],y]|` coefficient.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    for n in 0..d {
                        let s: f64 = (0..d)
                            .map(|m| {
                                self.fijk(x, y, m) * self.fijk(m, z, n)
                                    + self.fijk(y, z, m) * self.fijk(m, x, n)
                                    + self.fijk(z, x, m) * self.fijk(m, y, n)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CFormReport {
    pub algebra: String,
    pub dim: usize,
    pub rank: usize,
    pub jacobi_residual: f64,
    pub bracket_antisymmetry_residual: f64,
    pub total_antisymmetry_residual: f64,
    pub ad_invariance_residual: f64,
    /// `max |c(H, H', Z)|` over Cartan `H, H'` and all basis `Z`.
    pub cartan_pair_residual: f64,
    /// `max |c(H, H', H'')|` over Cartan triples; `None` below rank 3.
    pub cartan_triple_residual: Option<f64>,
    /// Distance of `c` from a multiple of the Levi-Civita symbol (`su2` only).
    pub levi_civita_residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

pub const C_FORM_TOLERANCE: f64 = 1e-12;

/// Checks `c(X, Y, Z) = ⟨[X, Y], Z⟩`: totally antisymmetric, ad-invariant, and
/// zero as soon as two arguments lie in the Cartan subalgebra.
pub fn check_c_form(sc: &StructureConstants) -> CFormReport {
    let d = sc.dim;
    let c = sc.c_tensor();
    let at = |i: usize, j: usize, k: usize| c[(i * d + j) * d + k];
    let triples =
        || (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))));

    let bracket_antisymmetry_residual = triples()
        .map(|(i, j, k)| (sc.fijk(i, j, k) + sc.fijk(j, i, k)).abs())
        .fold(0.0, f64::max);
    let total_antisymmetry_residual = triples()
        .map(|(i, j, k)| {
            (at(i, j, k) + at(j, i, k))
                .abs()
                .max((at(i, j, k) + at(i, k, j)).abs())
        })
        .fold(0.0, f64::max);

    let mut ad_invariance_residual: f64 = 0.0;
    for w in 0..d {
        for (x, y, z) in triples() {
            let s: f64 = (0..d)
                .map(|m| {
                    sc.fijk(w, x, m) * at(m, y, z)
                        + sc.fijk(w, y, m) * at(x, m, z)
                        + sc.fijk(w, z, m) * at(x, y, m)
                })
                .sum();
            ad_invariance_residual = ad_invariance_residual.max(s.abs());
        }
    }

    let h = &sc.cartan;
    let cartan_pair_residual = h
        .iter()
        .flat_map(|&a| h.iter().flat_map(move |&b| (0..d).map(move |z| (a, b, z))))
        .map(|(a, b, z)| at(a, b, z).abs())
        .fold(0.0, f64::max);
    let cartan_triple_residual = (h.len() >= 3).then(|| {
        h.iter()
            .flat_map(|&a| {
                h.iter()
                    .flat_map(move |&b| h.iter().map(move |&e| (a, b, e)))
            })
            .filter(|(a, b, e)| a != b && b != e && a != e)
            .map(|(a, b, e)| at(a, b, e).abs())
            .fold(0.0, f64::max)
    });

    let levi_civita_residual = (d == 3).then(|| {
        let scale = at(0, 1, 2);
        let eps = |i: usize, j: usize, k: usize| -> f64 {
            match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        let dev = triples()
            .map(|(i, j, k)| (at(i, j, k) - scale * eps(i, j, k)).abs())
            .fold(0.0, f64::max);
        if scale.abs() < C_FORM_TOLERANCE {
            f64::INFINITY
        } else {
            dev
        }
    });

    let jacobi_residual = sc.jacobi_residual();
    let tol = C_FORM_TOLERANCE;
    let passed = [
        jacobi_residual,
        bracket_antisymmetry_residual,
        total_antisymmetry_residual,
        ad_invariance_residual,
        cartan_pair_residual,
        cartan_triple_residual.unwrap_or(0.0),
        levi_civita_residual.unwrap_or(0.0),
    ]
    .iter()
    .all(|&r| r < tol);

    CFormReport {
        algebra: sc.algebra.clone(),
        dim: d,
        rank: h.len(),
        jacobi_residual,
        bracket_antisymmetry_residual,
        total_antisymmetry_residual,
        ad_invariance_residual,
        cartan_pair_residual,
        cartan_triple_residual,
        levi_civita_residual,
        tolerance: tol,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_is_levi_civita() {
        let sc = StructureConstants::su(2).unwrap();
        assert_eq!(sc.dim, 3);
        let r = check_c_form(&sc);
        assert!(r.passed, "{r:?}");
        assert!(r.levi_civita_residual.unwrap() < 1e-12);
    }

    #[test]
    fn su3_and_su4() {
        for n in [3, 4] {
            let sc = StructureConstants::su(n).unwrap();
            assert_eq!(sc.dim, n * n - 1);
            let r = check_c_form(&sc);
            assert!(r.passed, "{r:?}");
            assert_eq!(r.rank, n - 1);
            assert_eq!(r.cartan_triple_residual.is_some(), n == 4);
        }
    }

    #[test]
    fn detects_a_broken_bracket() {
        let mut sc = StructureConstants::su(2).unwrap();
        sc.f[5] += 0.1;
        assert!(!check_c_form(&sc).passed);
    }

    #[test]
    fn c_is_nonzero() {
        let sc = StructureConstants::su(3).unwrap();
        assert!(sc.c_tensor().iter().any(|x| x.abs() > 0.5));
    }
}
