//! Central extensions of the integral lattice coming from loop group extensions.
//!
//! An extension `1 -> S¹ -> Λ̂ -> Λ -> 0` of a free abelian group is determined
//! up to isomorphism by its commutator map, an alternating bi-additive form
//! `b: Λ × Λ -> ℚ/ℤ`. Values are stored as rationals in `[0, 1)` on the chosen
//! basis of `Λ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{InvariantForm, RootDatum};
use crate::zlinalg::rational::{frac_part, RatMatrix};
use crate::zlinalg::Lattice;

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Serializes a rational matrix as rows of strings like `"1/2"`.
pub fn serialize_rat_rows<S: Serializer>(
    rows: &[Vec<BigRational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

/// Alternating `ℚ/ℤ`-valued form on `Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorMap {
    pub lattice: Lattice,
    #[serde(serialize_with = "serialize_rat_rows")]
    pub values: Vec<Vec<BigRational>>,
}

impl CommutatorMap {
    /// Reduces every entry into `[0, 1)` and checks that the result is alternating.
    pub fn new(lattice: Lattice, values: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = lattice.rank();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "commutator map on a rank {n} lattice needs an {n}×{n} matrix"
            )));
        }
        let values: Vec<Vec<BigRational>> = values
            .iter()
            .map(|r| r.iter().map(frac_part).collect())
            .collect();
        for (i, row) in values.iter().enumerate() {
            if !row[i].is_zero() {
                return Err(Error::InvalidInput(format!(
                    "b(e{i}, e{i}) = {} is not 0 mod 1",
                    row[i]
                )));
            }
            for j in i + 1..n {
                if !frac_part(&(&row[j] + &values[j][i])).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "b(e{i}, e{j}) + b(e{j}, e{i}) = {} + {} is not 0 mod 1",
                        row[j], values[j][i]
                    )));
                }
            }
        }
        Ok(CommutatorMap { lattice, values })
    }

    pub fn zero(lattice: Lattice) -> Self {
        let n = lattice.rank();
        CommutatorMap {
            lattice,
            values: vec![vec![BigRational::zero(); n]; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.values[i][j]
    }

    /// `b(x, y)` for coordinate vectors in the basis of `Λ`, in `[0, 1)`.
    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let n = self.rank();
        assert!(x.len() == n && y.len() == n);
        let mut acc = BigRational::zero();
        for (xi, row) in x.iter().zip(&self.values) {
            if xi.is_zero() {
                continue;
            }
            for (yj, v) in y.iter().zip(row) {
                if yj.is_zero() || v.is_zero() {
                    continue;
                }
                acc += v * BigRational::from_integer(xi * yj);
            }
        }
        frac_part(&acc)
    }

    /// First basis pair `i < j` with `b(e_i, e_j) ≠ 0`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, BigRational)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.values[i][j].is_zero())
            .map(|(i, j)| (i, j, self.values[i][j].clone()))
    }
}

/// Antisymmetric rational matrix `B` with `B mod ℤ = b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntisymLift {
    #[serde(serialize_with = "serialize_rat_rows")]
    pub matrix: Vec<Vec<BigRational>>,
}

impl AntisymLift {
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == -self.matrix[j][i].clone()))
    }

    /// Entrywise reduction mod `ℤ`.
    pub fn reduce(&self, lattice: Lattice) -> Result<CommutatorMap> {
        CommutatorMap::new(lattice, self.matrix.clone())
    }
}

/// `b(λ, μ) = [½⟨λ, μ⟩]` for a simply connected group all of whose factors are
/// simply laced.
pub fn commutator_from_level(rd: &RootDatum, form: &InvariantForm) -> Result<CommutatorMap> {
    if !rd.is_simply_laced() {
        return Err(Error::RequiresExplicitB(format!(
            "{} has a factor that is not simply laced",
            rd.label
        )));
    }
    if !rd.is_simply_connected() {
        return Err(Error::RequiresExplicitB(format!(
            "{} is not simply connected",
            rd.label
        )));
    }
    let g = form.on_integral_lattice(rd);
    let n = rd.rank();
    let values = (0..n)
        .map(|i| (0..n).map(|j| frac_part(&(g.get(i, j) * half()))).collect())
        .collect();
    CommutatorMap::new(rd.integral_lattice.clone(), values)
}

/// The extension is trivial exactly when its commutator map vanishes.
pub fn is_extension_trivial(b: &CommutatorMap) -> bool {
    b.values.iter().flatten().all(Zero::is_zero)
}

/// Canonical lift: upper entries are the representatives in `[0, 1)`,
/// lower entries their negatives.
pub fn lift_commutator(b: &CommutatorMap) -> AntisymLift {
    let n = b.rank();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => b.values[i][j].clone(),
                    std::cmp::Ordering::Greater => -b.values[j][i].clone(),
                    std::cmp::Ordering::Equal => BigRational::zero(),
                })
                .collect()
        })
        .collect();
    AntisymLift { matrix }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The form is not symmetric on the simple coroots.
    AsymmetricForm { i: usize, j: usize },
    /// `⟨H_i, H_j⟩` is not an integer.
    NonIntegralPairing { i: usize, j: usize, value: String },
    /// `b(λ_i, H_a) ≠ [½⟨λ_i, H_a⟩]`.
    CommutatorMismatch {
        lambda: usize,
        coroot: usize,
        expected: String,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

/// Compatibility of `b` with the level: `⟨H_α, H_β⟩ ∈ ℤ` on simple coroots and
/// `b(λ, H_α) = [½⟨λ, H_α⟩]` for every basis vector `λ` of `Λ` and simple coroot `H_α`.
pub fn admissibility_check(
    rd: &RootDatum,
    form: &InvariantForm,
    b: &CommutatorMap,
) -> Result<AdmissibilityReport> {
    let r = rd.rank();
    if b.rank() != r || form.gram.rows() != r || form.gram.cols() != r {
        return Err(Error::DimensionMismatch(format!(
            "rank {r} datum, {}×{} form, rank {} commutator map",
            form.gram.rows(),
            form.gram.cols(),
            b.rank()
        )));
    }
    let mut violations = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if form.gram[(i, j)] != form.gram[(j, i)] {
                violations.push(Violation::AsymmetricForm { i, j });
            }
        }
    }
    let gram = RatMatrix::from_int(&form.gram);
    for i in 0..r {
        for j in 0..r {
            let v = gram.get(i, j);
            if !v.is_integer() {
                violations.push(Violation::NonIntegralPairing {
                    i,
                    j,
                    value: v.to_string(),
                });
            }
        }
    }
    // ⟨λ_i, H_a⟩ = (Lᵀ · F · Aᵀ)[i][a] with F the form on coweights
    let l = RatMatrix::from_int(&rd.integral_lattice.basis);
    let pairing = l
        .transpose()
        .mul(&form.on_coweights(rd))
        .mul(&RatMatrix::from_int(&rd.cartan.transpose()));
    let iota = rd.iota().matrix;
    for i in 0..r {
        let e_i: Vec<BigInt> = (0..r).map(|k| BigInt::from(u8::from(k == i))).collect();
        for a in 0..r {
            let expected = frac_part(&(pairing.get(i, a) * half()));
            let found = b.eval(&e_i, &iota.col(a));
            if expected != found {
                violations.push(Violation::CommutatorMismatch {
                    lambda: i,
                    coroot: a,
                    expected: expected.to_string(),
                    found: found.to_string(),
                });
            }
        }
    }
    Ok(AdmissibilityReport {
        passed: violations.is_empty(),
        violations,
    })
}

/// Where the commutator map comes from.
#[derive(Debug, Clone)]
pub enum ExtensionInput<'a> {
    Level(&'a InvariantForm),
    Explicit(CommutatorMap),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivializabilityReport {
    pub trivializable: bool,
    pub b: CommutatorMap,
    pub lift: AntisymLift,
    /// A basis pair on which `b` does not vanish.
    pub witness: Option<Witness>,
    pub explanation: String,
}

/// The reduction is fibrewise trivializable exactly when the extension of `Λ`
/// is trivial, i.e. when `b ≡ 0`.
pub fn fibrewise_trivializable(
    rd: &RootDatum,
    input: ExtensionInput<'_>,
) -> Result<TrivializabilityReport> {
    let b = match input {
        ExtensionInput::Level(form) => commutator_from_level(rd, form)?,
        ExtensionInput::Explicit(b) => {
            if b.rank() != rd.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "commutator map of rank {} for a rank {} group",
                    b.rank(),
                    rd.rank()
                )));
            }
            b
        }
    };
    let trivializable = is_extension_trivial(&b);
    let witness = b.first_nonzero().map(|(i, j, v)| Witness {
        i,
        j,
        value: v.to_string(),
    });
    let explanation = match &witness {
        None => format!(
            "b vanishes on Λ of {}, so the extension of Λ is trivial and the reduction is fibrewise trivializable",
            rd.label
        ),
        Some(w) => format!(
            "b(λ{}, λ{}) = {} ≠ 0, so the extension of Λ is nontrivial and the reduction is not fibrewise trivializable",
            w.i, w.j, w.value
        ),
    };
    let lift = lift_commutator(&b);
    Ok(TrivializabilityReport {
        trivializable,
        b,
        lift,
        witness,
        explanation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{basic_form, named_group};
    use crate::zlinalg::matrix::bigvec;
    use crate::zlinalg::rational::rat;

    fn level_b(name: &str, k: i64) -> CommutatorMap {
        let rd = named_group(name).unwrap();
        commutator_from_level(&rd, &basic_form(&rd, k).unwrap()).unwrap()
    }

    #[test]
    fn su2_always_trivial() {
        for k in 0..6 {
            assert!(is_extension_trivial(&level_b("SU(2)", k)));
        }
    }

    #[test]
    fn su3_levels() {
        let b = level_b("SU(3)", 1);
        assert_eq!(b.get(0, 1), &rat(1, 2));
        assert_eq!(b.get(1, 0), &rat(1, 2));
        assert!(!is_extension_trivial(&b));
        assert!(is_extension_trivial(&level_b("SU(3)", 2)));
        assert!(is_extension_trivial(&level_b("SU(4)", 2)));
    }

    #[test]
    fn refuses_to_guess() {
        for name in ["G2", "Spin(7)", "SO(3)", "PSU(3)"] {
            let rd = named_group(name).unwrap();
            let f = basic_form(&rd, 1).unwrap();
            assert!(matches!(
                commutator_from_level(&rd, &f),
                Err(Error::RequiresExplicitB(_))
            ));
            assert!(matches!(
                fibrewise_trivializable(&rd, ExtensionInput::Level(&f)),
                Err(Error::RequiresExplicitB(_))
            ));
        }
    }

    #[test]
    fn rejects_non_alternating() {
        let l = Lattice::standard("Λ", 2);
        assert!(CommutatorMap::new(
            l.clone(),
            vec![vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]]
        )
        .is_err());
        assert!(CommutatorMap::new(
            l.clone(),
            vec![vec![rat(0, 1), rat(1, 3)], vec![rat(1, 3), rat(0, 1)]]
        )
        .is_err());
        let ok = CommutatorMap::new(
            l,
            vec![vec![rat(0, 1), rat(1, 3)], vec![rat(-1, 3), rat(0, 1)]],
        )
        .unwrap();
        assert_eq!(ok.get(1, 0), &rat(2, 3));
    }

    #[test]
    fn canonical_lifts() {
        let l = Lattice::standard("Λ", 2);
        assert!(lift_commutator(&CommutatorMap::zero(l.clone()))
            .matrix
            .iter()
            .flatten()
            .all(Zero::is_zero));
        let b = CommutatorMap::new(
            l.clone(),
            vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(0, 1)]],
        )
        .unwrap();
        let lift = lift_commutator(&b);
        assert_eq!(
            lift.matrix,
            vec![vec![rat(0, 1), rat(1, 2)], vec![rat(-1, 2), rat(0, 1)]]
        );
        assert!(lift.is_antisymmetric());
        assert_eq!(lift.reduce(l).unwrap(), b);

        let l3 = Lattice::standard("Λ", 3);
        let h = rat(1, 2);
        let z = rat(0, 1);
        let b3 = CommutatorMap::new(
            l3.clone(),
            vec![
                vec![z.clone(), h.clone(), z.clone()],
                vec![h.clone(), z.clone(), h.clone()],
                vec![z.clone(), h.clone(), z.clone()],
            ],
        )
        .unwrap();
        let lift3 = lift_commutator(&b3);
        assert_eq!(lift3.matrix[0][1], h);
        assert_eq!(lift3.matrix[0][2], z);
        assert_eq!(lift3.matrix[1][2], h);
        assert_eq!(lift3.matrix[2][1], -h.clone());
        assert_eq!(lift3.reduce(l3).unwrap(), b3);
    }

    #[test]
    fn evaluation_is_bilinear() {
        let b = level_b("SU(4)", 1);
        let x = bigvec(&[1, -2, 3]);
        let y = bigvec(&[0, 5, 1]);
        let x2 = bigvec(&[4, 1, -1]);
        let sum: Vec<BigInt> = x.iter().zip(&x2).map(|(a, c)| a + c).collect();
        assert_eq!(
            b.eval(&sum, &y),
            frac_part(&(b.eval(&x, &y) + b.eval(&x2, &y)))
        );
        assert_eq!(frac_part(&(b.eval(&x, &y) + b.eval(&y, &x))), rat(0, 1));
    }

    #[test]
    fn admissibility() {
        let rd = named_group("SU(3)").unwrap();
        let f = basic_form(&rd, 1).unwrap();
        let b = commutator_from_level(&rd, &f).unwrap();
        assert!(admissibility_check(&rd, &f, &b).unwrap().passed);

        let zero = CommutatorMap::zero(rd.integral_lattice.clone());
        let rep = admissibility_check(&rd, &f, &zero).unwrap();
        assert!(!rep.passed);
        assert!(rep.violations.contains(&Violation::CommutatorMismatch {
            lambda: 0,
            coroot: 1,
            expected: "1/2".into(),
            found: "0".into(),
        }));

        for name in ["SU(2)", "SO(3)", "G2", "Spin(7)", "E6_adj"] {
            let rd = named_group(name).unwrap();
            let f0 = basic_form(&rd, 0).unwrap();
            let z = CommutatorMap::zero(rd.integral_lattice.clone());
            assert!(admissibility_check(&rd, &f0, &z).unwrap().passed, "{name}");
        }
    }

    #[test]
    fn so3_needs_even_level() {
        let rd = named_group("SO(3)").unwrap();
        let z = CommutatorMap::zero(rd.integral_lattice.clone());
        assert!(
            !admissibility_check(&rd, &basic_form(&rd, 1).unwrap(), &z)
                .unwrap()
                .passed
        );
        assert!(
            admissibility_check(&rd, &basic_form(&rd, 2).unwrap(), &z)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn reports() {
        let rd = named_group("SU(3)").unwrap();
        let f = basic_form(&rd, 1).unwrap();
        let rep = fibrewise_trivializable(&rd, ExtensionInput::Level(&f)).unwrap();
        assert!(!rep.trivializable);
        let w = rep.witness.unwrap();
        assert_eq!((w.i, w.j, w.value.as_str()), (0, 1, "1/2"));

        let f2 = basic_form(&rd, 2).unwrap();
        assert!(
            fibrewise_trivializable(&rd, ExtensionInput::Level(&f2))
                .unwrap()
                .trivializable
        );

        let z = CommutatorMap::zero(rd.integral_lattice.clone());
        assert!(
            fibrewise_trivializable(&rd, ExtensionInput::Explicit(z))
                .unwrap()
                .trivializable
        );
    }
}
