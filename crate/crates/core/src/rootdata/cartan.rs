use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zlinalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn is_simply_laced(self) -> bool {
        matches!(self, Series::A | Series::D | Series::E)
    }

    /// Series of the Langlands dual factor.
    pub fn dual(self) -> Series {
        match self {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::InvalidSeries(other.to_string())),
        }
    }
}

/// A simple factor: Dynkin type and rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub series: Series,
    pub rank: usize,
}

impl Component {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidSeries(format!("{series}{rank}")));
        }
        Ok(Component { series, rank })
    }

    /// Without range checks; used for Langlands duals such as `C2`.
    pub(crate) fn unchecked(series: Series, rank: usize) -> Self {
        Component { series, rank }
    }

    pub fn dual(self) -> Component {
        Component {
            series: self.series.dual(),
            rank: self.rank,
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// Number of roots of the factor.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }

    /// Degrees of the basic Weyl-invariant polynomials.
    pub fn weyl_degrees(&self) -> Vec<usize> {
        let n = self.rank;
        match self.series {
            Series::A => (2..=n + 1).collect(),
            Series::B | Series::C => (1..=n).map(|k| 2 * k).collect(),
            Series::D => {
                let mut d: Vec<usize> = (1..n).map(|k| 2 * k).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Series::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Series::F => vec![2, 6, 8, 12],
            Series::G => vec![2, 6],
        }
    }

    /// Cartan matrix with entries `⟨α_i^∨, α_j⟩`, Bourbaki numbering.
    pub fn cartan(&self) -> IntMatrix {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.series {
            Series::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1)),
            Series::B | Series::C => (0..n - 1).for_each(|i| link(i, i + 1)),
            Series::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            Series::E => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            Series::F => (0..3).for_each(|i| link(i, i + 1)),
            Series::G => link(0, 1),
        }
        match self.series {
            // α_n short
            Series::B => a[n - 1][n - 2] = -2,
            // α_n long
            Series::C => a[n - 2][n - 1] = -2,
            // α_3, α_4 short
            Series::F => a[2][1] = -2,
            // α_1 short
            Series::G => a[0][1] = -3,
            _ => {}
        }
        IntMatrix::from_rows(&a)
    }
}

/// Parses `"A2"`, `"e8"`, … into a component.
impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let series: Series = head.parse()?;
        let rank: usize = tail
            .parse()
            .map_err(|_| Error::InvalidSeries(s.to_string()))?;
        Component::new(series, rank)
    }
}

/// Block-diagonal Cartan matrix of a list of factors.
pub fn block_cartan(components: &[Component]) -> IntMatrix {
    let r: usize = components.iter().map(|c| c.rank).sum();
    let mut m = IntMatrix::zeros(r, r);
    let mut off = 0;
    for c in components {
        let a = c.cartan();
        for i in 0..c.rank {
            for j in 0..c.rank {
                m[(off + i, off + j)] = a[(i, j)].clone();
            }
        }
        off += c.rank;
    }
    m
}

/// Checks the defining properties of a (generalized) finite-type Cartan matrix.
pub fn is_cartan_like(a: &IntMatrix) -> bool {
    use num_traits::ToPrimitive;
    if !a.is_square() {
        return false;
    }
    let n = a.rows();
    for i in 0..n {
        if a[(i, i)].to_i64() != Some(2) {
            return false;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let (Some(x), Some(y)) = (a[(i, j)].to_i64(), a[(j, i)].to_i64()) else {
                return false;
            };
            if x > 0 || !(0..=3).contains(&(x * y)) || ((x == 0) != (y == 0)) {
                return false;
            }
        }
    }
    true
}
