use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::cartan::{block_cartan, Component, Series};
use crate::error::{Error, Result};
use crate::zlinalg::rational::RatMatrix;
use crate::zlinalg::{subquotient, FgAbGroup, IntMatrix, Lattice, LatticeMap};

/// Which subgroup of the center `P^∨/Q^∨` is the fundamental group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FundamentalGroup {
    SimplyConnected,
    Adjoint,
    /// Generators of `Λ/Q^∨`, as coweight coordinate vectors.
    Generators(IntMatrix),
}

/// Root datum of a compact connected semisimple group.
///
/// Coordinates: vectors in `t` are written in the fundamental coweight basis
/// (dual to the simple roots), vectors in `t*` in the fundamental weight basis
/// (dual to the simple coroots). Both `P^∨` and `P` are therefore the standard
/// lattices, and every stored lattice is integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub label: String,
    pub components: Vec<Component>,
    /// `cartan[(i, j)] = ⟨α_i^∨, α_j⟩`.
    pub cartan: IntMatrix,
    /// Root basis -> weight coordinates (columns are the simple roots).
    pub simple_roots: LatticeMap,
    /// Coroot basis -> coweight coordinates (columns are the simple coroots).
    pub simple_coroots: LatticeMap,
    /// The integral lattice `Λ = ker(exp)`, `Q^∨ ⊆ Λ ⊆ P^∨`.
    pub integral_lattice: Lattice,
    pub fundamental_group: FundamentalGroup,
}

impl RootDatum {
    pub fn build(components: &[Component], choice: FundamentalGroup) -> Result<RootDatum> {
        if components.is_empty() {
            return Err(Error::InvalidSeries("no simple factors".into()));
        }
        for c in components {
            Component::new(c.series, c.rank)?;
        }
        let cartan = block_cartan(components);
        Self::assemble(components.to_vec(), cartan, choice)
    }

    fn assemble(
        components: Vec<Component>,
        cartan: IntMatrix,
        choice: FundamentalGroup,
    ) -> Result<RootDatum> {
        let r = cartan.rows();
        let coroots = cartan.transpose();
        let basis = match &choice {
            FundamentalGroup::SimplyConnected => coroots.clone(),
            FundamentalGroup::Adjoint => IntMatrix::identity(r),
            FundamentalGroup::Generators(g) => {
                if g.rows() != r {
                    return Err(Error::InvalidCenterSubgroup(format!(
                        "generators must have {r} coweight coordinates, got {}",
                        g.rows()
                    )));
                }
                normalize_between(&cartan, &Lattice::spanned_by("Λ", &coroots.hstack(g)).basis)
            }
        };
        let label = standard_name(&components, &cartan, &basis);
        Ok(RootDatum {
            label,
            simple_roots: LatticeMap::new(
                Lattice::standard("Q", r),
                Lattice::standard("P", r),
                cartan.clone(),
            )?,
            simple_coroots: LatticeMap::new(
                Lattice::standard("Q^∨", r),
                Lattice::standard("P^∨", r),
                coroots,
            )?,
            integral_lattice: Lattice::new("Λ", basis)?,
            components,
            cartan,
            fundamental_group: choice,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    /// Index ranges of the simple factors.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut off = 0;
        self.components
            .iter()
            .map(|c| {
                let r = off..off + c.rank;
                off += c.rank;
                r
            })
            .collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.components.iter().all(|c| c.series.is_simply_laced())
    }

    pub fn coroot_lattice(&self) -> Lattice {
        Lattice::new("Q^∨", self.cartan.transpose()).expect("Cartan matrix is invertible")
    }

    pub fn root_lattice(&self) -> Lattice {
        Lattice::new("Q", self.cartan.clone()).expect("Cartan matrix is invertible")
    }

    pub fn weight_lattice(&self) -> Lattice {
        Lattice::standard("P", self.rank())
    }

    pub fn coweight_lattice(&self) -> Lattice {
        Lattice::standard("P^∨", self.rank())
    }

    pub fn is_simply_connected(&self) -> bool {
        self.integral_lattice.same_lattice(&self.coroot_lattice())
    }

    pub fn is_adjoint(&self) -> bool {
        self.integral_lattice.same_lattice(&self.coweight_lattice())
    }

    /// Basis of `Λ*` dual to the chosen basis of `Λ`, in weight coordinates.
    ///
    /// With `Λ` spanned by the columns of `L` (coweight coordinates) this is
    /// `A·L^{-T}`; it is the matrix of `ι*: Λ* -> P`.
    pub fn dual_basis(&self) -> IntMatrix {
        dual_basis_of(&self.cartan, &self.integral_lattice.basis)
            .expect("integral lattice lies between Q^∨ and P^∨")
    }

    /// `ι*: Λ* -> Λ̃* = P`.
    pub fn iota_star(&self) -> LatticeMap {
        LatticeMap {
            domain: Lattice::standard("Λ*", self.rank()),
            codomain: self.weight_lattice(),
            matrix: self.dual_basis(),
        }
    }

    /// `ι: Λ̃ = Q^∨ -> Λ` in the coroot basis and the basis of `Λ`.
    pub fn iota(&self) -> LatticeMap {
        let m = self
            .integral_lattice
            .express(&self.coroot_lattice())
            .expect("Q^∨ ⊆ Λ");
        LatticeMap {
            domain: self.coroot_lattice(),
            codomain: self.integral_lattice.clone(),
            matrix: m,
        }
    }

    /// `π_1 = Λ/Q^∨`.
    pub fn fundamental_group_order(&self) -> BigInt {
        self.coroot_lattice()
            .index_in(&self.integral_lattice)
            .expect("same rank")
    }

    pub fn fundamental_group_structure(&self) -> FgAbGroup {
        subquotient(&self.coroot_lattice(), &self.integral_lattice).expect("Q^∨ ⊆ Λ")
    }

    /// Simple reflection `s_i` on `P`, weight coordinates.
    pub fn reflection_on_weights(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        IntMatrix::from_fn(r, r, |k, j| {
            let d = if k == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if j == i {
                d - &self.cartan[(k, i)]
            } else {
                d
            }
        })
    }

    /// Simple reflection `s_i` on `t`, coroot coordinates.
    pub fn reflection_on_coroots(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        IntMatrix::from_fn(r, r, |m, k| {
            let d = if m == k {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if m == i {
                d - &self.cartan[(k, i)]
            } else {
                d
            }
        })
    }

    /// Simple reflection `s_i` on `t`, coweight coordinates.
    pub fn reflection_on_coweights(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        IntMatrix::from_fn(r, r, |m, k| {
            let d = if m == k {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if k == i {
                d - &self.cartan[(i, m)]
            } else {
                d
            }
        })
    }

    /// Symmetrizer `d` with `A·diag(d)` symmetric; per factor the minimum is 1,
    /// attained on the long roots.
    pub fn coroot_symmetrizer(&self) -> Vec<BigInt> {
        symmetrizer(&self.cartan, &self.blocks(), false)
    }

    /// Symmetrizer `e` with `diag(e)·A` symmetric; per factor the minimum is 1,
    /// attained on the short roots. `e_i` is proportional to `|α_i|²`.
    pub fn root_symmetrizer(&self) -> Vec<BigInt> {
        symmetrizer(&self.cartan, &self.blocks(), true)
    }
}

/// `A·L^{-T}` for a lattice basis `L` between `Q^∨` and `P^∨`.
pub(crate) fn dual_basis_of(cartan: &IntMatrix, basis: &IntMatrix) -> Result<IntMatrix> {
    let l_inv_t = RatMatrix::from_int(basis)
        .inverse()
        .ok_or(Error::NotBetweenLattices)?
        .transpose();
    RatMatrix::from_int(cartan)
        .mul(&l_inv_t)
        .to_int()
        .ok_or(Error::NotBetweenLattices)
}

/// Keep the coroot basis or standard basis when the lattice is one of the two extremes.
fn normalize_between(cartan: &IntMatrix, basis: &IntMatrix) -> IntMatrix {
    let coroots = cartan.transpose();
    let r = cartan.rows();
    let lat = Lattice::spanned_by("Λ", basis);
    if lat.same_lattice(&Lattice::spanned_by("Q^∨", &coroots)) {
        coroots
    } else if lat.same_lattice(&Lattice::standard("P^∨", r)) {
        IntMatrix::identity(r)
    } else {
        lat.basis
    }
}

fn symmetrizer(cartan: &IntMatrix, blocks: &[std::ops::Range<usize>], rows: bool) -> Vec<BigInt> {
    use num_rational::BigRational;
    let r = cartan.rows();
    let mut out = vec![BigInt::zero(); r];
    for block in blocks {
        let mut vals: Vec<Option<BigRational>> = vec![None; r];
        vals[block.start] = Some(BigRational::one());
        let mut stack = vec![block.start];
        while let Some(i) = stack.pop() {
            for j in block.clone() {
                if i == j || cartan[(i, j)].is_zero() || vals[j].is_some() {
                    continue;
                }
                let vi = vals[i].clone().unwrap();
                let ratio = BigRational::new(cartan[(i, j)].clone(), cartan[(j, i)].clone());
                // columns: A_ij d_j = A_ji d_i; rows: e_i A_ij = e_j A_ji
                vals[j] = Some(if rows { vi * ratio } else { vi / ratio });
                stack.push(j);
            }
        }
        let den = block.clone().fold(BigInt::one(), |acc, i| {
            acc.lcm(vals[i].as_ref().unwrap().denom())
        });
        let ints: Vec<BigInt> = block
            .clone()
            .map(|i| {
                (vals[i].clone().unwrap() * BigRational::from_integer(den.clone())).to_integer()
            })
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for (k, i) in block.clone().enumerate() {
            out[i] = &ints[k] / &g;
        }
    }
    out
}

fn standard_name(components: &[Component], cartan: &IntMatrix, basis: &IntMatrix) -> String {
    let r = cartan.rows();
    let sc = basis == &cartan.transpose();
    let adj = basis == &IntMatrix::identity(r);
    let name = |c: &Component, sc: bool, adj: bool| -> String {
        let n = c.rank;
        match (c.series, sc, adj) {
            (_, true, true) => c.name(),
            (Series::A, true, _) => format!("SU({})", n + 1),
            (Series::A, _, true) if n == 1 => "SO(3)".into(),
            (Series::A, _, true) => format!("PSU({})", n + 1),
            (Series::B, true, _) => format!("Spin({})", 2 * n + 1),
            (Series::B, _, true) => format!("SO({})", 2 * n + 1),
            (Series::C, true, _) => format!("Sp({n})"),
            (Series::C, _, true) => format!("PSp({n})"),
            (Series::D, true, _) => format!("Spin({})", 2 * n),
            (Series::D, _, true) => format!("PSO({})", 2 * n),
            (_, true, _) => c.name(),
            (_, _, true) => format!("{}_adj", c.name()),
            _ => c.name(),
        }
    };
    if components.len() == 1 {
        let c = &components[0];
        if sc || adj {
            return name(c, sc, adj);
        }
        return format!("{}/Γ", name(c, true, false));
    }
    let joined = components
        .iter()
        .map(|c| name(c, true, false))
        .collect::<Vec<_>>()
        .join("×");
    if sc {
        joined
    } else if adj {
        format!("({joined})_adj")
    } else {
        format!("({joined})/Γ")
    }
}

/// Parses a named group (`SU(3)`, `SO(3)`, `Spin(8)`, `Sp(3)`, `G2`, `E6_adj`, …),
/// optionally a product joined by `x` or `×`.
pub fn named_group(name: &str) -> Result<RootDatum> {
    let parts: Vec<&str> = name
        .split(['×', '*'])
        .flat_map(|p| p.split(" x "))
        .flat_map(split_product_x)
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Error::InvalidInput("empty group name".into()));
    }
    let mut components = Vec::new();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    let mut offset = 0usize;
    let mut all_sc = true;
    let mut all_adj = true;
    for p in &parts {
        let (comps, kind) = single_factor(p)?;
        let rank: usize = comps.iter().map(|c: &Component| c.rank).sum();
        match kind {
            Kind::SimplyConnected => all_adj = false,
            Kind::Adjoint => {
                all_sc = false;
                for k in 0..rank {
                    let mut v = vec![BigInt::zero(); rank];
                    v[k] = BigInt::one();
                    gens.push(shift(&v, offset));
                }
            }
            Kind::Gens(g) => {
                all_sc = false;
                all_adj = false;
                gens.extend(g.into_iter().map(|v| shift(&v, offset)));
            }
        }
        offset += rank;
        components.extend(comps);
    }
    let total = offset;
    let choice = if all_sc {
        FundamentalGroup::SimplyConnected
    } else if all_adj {
        FundamentalGroup::Adjoint
    } else {
        let gens: Vec<Vec<BigInt>> = gens
            .into_iter()
            .map(|mut v| {
                v.resize(total, BigInt::zero());
                v
            })
            .collect();
        FundamentalGroup::Generators(IntMatrix::from_cols(total, &gens))
    };
    let rd = RootDatum::build(&components, choice)?;
    Ok(if parts.len() == 1 {
        rd.with_label(parts[0].to_string())
    } else {
        rd.with_label(parts.join("×"))
    })
}

fn split_product_x(s: &str) -> Vec<&str> {
    // "SU(2)xSU(2)": an 'x' directly after ')' separates factors
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'x' || bytes[i] == b'X') && bytes[i - 1] == b')' {
            out.push(&s[start..i]);
            start = i + 1;
        }
    }
    out.push(&s[start..]);
    out
}

fn shift(v: &[BigInt], offset: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); offset];
    out.extend(v.iter().cloned());
    out
}

enum Kind {
    SimplyConnected,
    Adjoint,
    Gens(Vec<Vec<BigInt>>),
}

fn single_factor(p: &str) -> Result<(Vec<Component>, Kind)> {
    let comp = |s: Series, n: usize| Component::new(s, n);
    let unit = |rank: usize, k: usize, scale: i64| {
        let mut v = vec![BigInt::zero(); rank];
        v[k] = BigInt::from(scale);
        v
    };
    if let Some((head, arg)) = p.strip_suffix(')').and_then(|q| q.split_once('(')) {
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad group parameter in {p}")))?;
        let head = head.trim();
        return match (head, n) {
            ("SU", n) if n >= 2 => Ok((vec![comp(Series::A, n - 1)?], Kind::SimplyConnected)),
            ("PSU", n) if n >= 2 => Ok((vec![comp(Series::A, n - 1)?], Kind::Adjoint)),
            ("Spin", 3) => Ok((vec![comp(Series::A, 1)?], Kind::SimplyConnected)),
            ("Spin", 4) => Ok((
                vec![comp(Series::A, 1)?, comp(Series::A, 1)?],
                Kind::SimplyConnected,
            )),
            ("Spin", 5) => Ok((vec![comp(Series::B, 2)?], Kind::SimplyConnected)),
            ("Spin", 6) => Ok((vec![comp(Series::A, 3)?], Kind::SimplyConnected)),
            ("Spin", n) if n >= 7 && n % 2 == 1 => {
                Ok((vec![comp(Series::B, (n - 1) / 2)?], Kind::SimplyConnected))
            }
            ("Spin", n) if n >= 8 => Ok((vec![comp(Series::D, n / 2)?], Kind::SimplyConnected)),
            ("SO", 3) => Ok((vec![comp(Series::A, 1)?], Kind::Adjoint)),
            ("SO", 5) => Ok((vec![comp(Series::B, 2)?], Kind::Adjoint)),
            ("SO", 6) => Ok((vec![comp(Series::A, 3)?], Kind::Gens(vec![unit(3, 1, 1)]))),
            ("SO", n) if n >= 7 && n % 2 == 1 => {
                Ok((vec![comp(Series::B, (n - 1) / 2)?], Kind::Adjoint))
            }
            ("SO", n) if n >= 8 => {
                let m = n / 2;
                Ok((vec![comp(Series::D, m)?], Kind::Gens(vec![unit(m, 0, 1)])))
            }
            ("PSO", 6) => Ok((vec![comp(Series::A, 3)?], Kind::Adjoint)),
            ("PSO", n) if n >= 8 && n % 2 == 0 => {
                Ok((vec![comp(Series::D, n / 2)?], Kind::Adjoint))
            }
            ("Sp", 1) => Ok((vec![comp(Series::A, 1)?], Kind::SimplyConnected)),
            ("Sp", 2) => Ok((vec![comp(Series::B, 2)?], Kind::SimplyConnected)),
            ("Sp", n) if n >= 3 => Ok((vec![comp(Series::C, n)?], Kind::SimplyConnected)),
            ("PSp", 1) => Ok((vec![comp(Series::A, 1)?], Kind::Adjoint)),
            ("PSp", 2) => Ok((vec![comp(Series::B, 2)?], Kind::Adjoint)),
            ("PSp", n) if n >= 3 => Ok((vec![comp(Series::C, n)?], Kind::Adjoint)),
            _ => Err(Error::InvalidInput(format!("unknown group {p}"))),
        };
    }
    let (base, adjoint) = match p.strip_suffix("_adj") {
        Some(b) => (b, true),
        None => (p, false),
    };
    let c: Component = base.parse()?;
    Ok((
        vec![c],
        if adjoint {
            Kind::Adjoint
        } else {
            Kind::SimplyConnected
        },
    ))
}

/// Full root system in weight coordinates, as the orbit of the simple roots
/// under the simple reflections. Sorted lexicographically.
pub fn all_roots(rd: &RootDatum) -> Vec<Vec<i64>> {
    let r = rd.rank();
    let refl: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            rd.reflection_on_weights(i)
                .to_i64_rows()
                .expect("small entries")
        })
        .collect();
    let simple: Vec<Vec<i64>> = (0..r)
        .map(|j| {
            rd.cartan
                .col(j)
                .iter()
                .map(|x| x.to_i64().unwrap())
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while let Some(v) = frontier.pop() {
        for s in &refl {
            let w: Vec<i64> = s
                .iter()
                .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
                .collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Squared length of a root (weight coordinates) under the invariant form
/// `diag(e)·A` on root coordinates, `e` the root symmetrizer.
pub fn root_length_squared(rd: &RootDatum, root: &[i64]) -> BigInt {
    let a = RatMatrix::from_int(&rd.cartan);
    let inv = a.inverse().expect("Cartan matrix is invertible");
    let w: Vec<num_rational::BigRational> = root
        .iter()
        .map(|&x| num_rational::BigRational::from_integer(BigInt::from(x)))
        .collect();
    let c: Vec<BigInt> = inv
        .mul_vec(&w)
        .into_iter()
        .map(|x| {
            assert!(x.is_integer(), "roots lie in the root lattice");
            x.to_integer()
        })
        .collect();
    let e = rd.root_symmetrizer();
    let r = rd.rank();
    let mut s = BigInt::zero();
    for i in 0..r {
        for j in 0..r {
            s += &c[i] * &c[j] * &e[i] * &rd.cartan[(i, j)];
        }
    }
    s
}

/// `(long, short)` root counts. Simply laced factors count as all long.
pub fn long_short_counts(rd: &RootDatum) -> (usize, usize) {
    let roots = all_roots(rd);
    let blocks = rd.blocks();
    let (mut long, mut short) = (0, 0);
    for root in &roots {
        let block = blocks
            .iter()
            .find(|b| root_support_in(root, b))
            .expect("every root lives in one factor");
        let max = block
            .clone()
            .map(|i| {
                let col: Vec<i64> = rd
                    .cartan
                    .col(i)
                    .iter()
                    .map(|x| x.to_i64().unwrap())
                    .collect();
                root_length_squared(rd, &col)
            })
            .max()
            .unwrap();
        if root_length_squared(rd, root) == max {
            long += 1;
        } else {
            short += 1;
        }
    }
    (long, short)
}

// weight coordinates of a root are supported on its own factor's indices
fn root_support_in(root: &[i64], block: &std::ops::Range<usize>) -> bool {
    root.iter()
        .enumerate()
        .all(|(i, x)| *x == 0 || block.contains(&i))
}

/// `Λ* ⊆ P` for a lattice `Q^∨ ⊆ Λ ⊆ P^∨`, canonical basis in weight coordinates.
pub fn dual_lattice(rd: &RootDatum, lattice: &Lattice) -> Result<Lattice> {
    if lattice.ambient_dim != rd.rank()
        || lattice.rank() != rd.rank()
        || !lattice.contains(&rd.coroot_lattice())
        || !rd.coweight_lattice().contains(lattice)
    {
        return Err(Error::NotBetweenLattices);
    }
    let b = dual_basis_of(&rd.cartan, &lattice.basis)?;
    Ok(Lattice::spanned_by("Λ*", &b))
}

/// Root datum with roots and coroots exchanged. Its integral lattice is `Λ*`,
/// which in the dual's coweight coordinates has the same numbers as `Λ*` in
/// the weight coordinates of `rd`.
pub fn langlands_dual(rd: &RootDatum) -> RootDatum {
    let components: Vec<Component> = rd.components.iter().map(|c| c.dual()).collect();
    let cartan = rd.cartan.transpose();
    let dual_lat = rd.dual_basis();
    let basis = normalize_between(&cartan, &dual_lat);
    let r = rd.rank();
    let choice = if basis == cartan.transpose() {
        FundamentalGroup::SimplyConnected
    } else if basis == IntMatrix::identity(r) {
        FundamentalGroup::Adjoint
    } else {
        FundamentalGroup::Generators(basis.clone())
    };
    let components = components
        .into_iter()
        .map(|c| Component::unchecked(c.series, c.rank))
        .collect();
    let mut out = RootDatum::assemble(components, cartan, choice).expect("dual data is consistent");
    out.integral_lattice = Lattice::new("Λ", basis).expect("full rank");
    out
}
