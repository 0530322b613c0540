use serde::Serialize;

use super::datum::{langlands_dual, RootDatum};
use crate::zlinalg::{IntMatrix, Lattice, LatticeMap};

/// Isomorphism `φ: k -> k^L` given by a relabeling of simple roots.
///
/// `φ(α_i^∨) = α^{L,∨}_{perm[i]}`; on `t` this sends the simple coroot `α_i^∨`
/// to the simple root `α_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinIso {
    pub perm: Vec<usize>,
    /// `φ*: P^L -> P`, pullback of weights of the dual along `φ`.
    ///
    /// Weights of `K^L` are coweights of `K`; in coordinates
    /// `(φ* y)_k = y_{perm[k]}`.
    pub phi_star: LatticeMap,
}

impl DynkinIso {
    fn from_perm(perm: Vec<usize>) -> Self {
        let r = perm.len();
        let m = IntMatrix::from_fn(r, r, |k, j| if perm[k] == j { 1.into() } else { 0.into() });
        DynkinIso {
            perm,
            phi_star: LatticeMap {
                domain: Lattice::standard("P^L", r),
                codomain: Lattice::standard("P", r),
                matrix: m,
            },
        }
    }
}

/// Outcome of searching for `φ`, with evidence when none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PhiSearch {
    Found(DynkinIso),
    Absent {
        /// Factors of type B or C (rank ≥ 3) that have no matching dual factor.
        obstructions: Vec<String>,
        nodes_explored: usize,
    },
}

impl PhiSearch {
    pub fn found(&self) -> Option<&DynkinIso> {
        match self {
            PhiSearch::Found(iso) => Some(iso),
            PhiSearch::Absent { .. } => None,
        }
    }
}

/// Searches for a permutation `σ` of simple roots with `A^L[σi][σj] = A[i][j]`,
/// where `A^L = Aᵀ` is the Cartan matrix of the Langlands dual.
///
/// Backtracking in index order, so the identity is returned whenever it works.
pub fn find_phi(rd: &RootDatum) -> PhiSearch {
    let dual = langlands_dual(rd);
    let a = &rd.cartan;
    let b = &dual.cartan;
    let r = rd.rank();
    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    let mut explored = 0usize;

    fn go(
        i: usize,
        a: &IntMatrix,
        b: &IntMatrix,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        explored: &mut usize,
    ) -> bool {
        let r = perm.len();
        if i == r {
            return true;
        }
        for cand in 0..r {
            if used[cand] {
                continue;
            }
            *explored += 1;
            let consistent =
                (0..i).all(|j| a[(i, j)] == b[(cand, perm[j])] && a[(j, i)] == b[(perm[j], cand)]);
            if !consistent {
                continue;
            }
            perm[i] = cand;
            used[cand] = true;
            if go(i + 1, a, b, perm, used, explored) {
                return true;
            }
            used[cand] = false;
            perm[i] = usize::MAX;
        }
        false
    }

    if go(0, a, b, &mut perm, &mut used, &mut explored) {
        PhiSearch::Found(DynkinIso::from_perm(perm))
    } else {
        let obstructions = rd
            .components
            .iter()
            .filter(|c| {
                let d = c.dual();
                d != **c && !rd.components.contains(&d)
            })
            .map(|c| c.name())
            .collect();
        PhiSearch::Absent {
            obstructions,
            nodes_explored: explored,
        }
    }
}
