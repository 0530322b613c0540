use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Samples of a cutoff `χ` on a uniform grid of `[0, 1]`.
#[derive(Debug, Clone, Serialize)]
pub struct Cutoff {
    pub name: String,
    pub smoothness: String,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

const PLATEAU: f64 = 0.05;
const ENDPOINT_TOL: f64 = 1e-14;

impl Cutoff {
    /// Samples `f` at `n + 1` equally spaced points.
    pub fn sample(name: &str, smoothness: &str, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let values = grid.iter().map(|&t| f(t)).collect();
        Cutoff {
            name: name.into(),
            smoothness: smoothness.into(),
            grid,
            values,
        }
    }

    pub fn intervals(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// `χ(0) = 0`, `χ(1) = 1`, constant on the first and last 5% of samples,
    /// on a uniform grid with an even number of intervals.
    pub fn validate(&self) -> Result<()> {
        let n = self.intervals();
        if n < 4 || !n.is_multiple_of(2) || self.grid.len() != self.values.len() {
            return Err(Error::InadmissibleCutoff(format!(
                "{}: need an even number ≥ 4 of intervals, got {n}",
                self.name
            )));
        }
        let h = 1.0 / n as f64;
        if self
            .grid
            .iter()
            .enumerate()
            .any(|(i, &t)| (t - i as f64 * h).abs() > 1e-12)
        {
            return Err(Error::InadmissibleCutoff(format!(
                "{}: grid is not uniform on [0, 1]",
                self.name
            )));
        }
        let (first, last) = (self.values[0], self.values[n]);
        if first.abs() > ENDPOINT_TOL || (last - 1.0).abs() > ENDPOINT_TOL {
            return Err(Error::InadmissibleCutoff(format!(
                "{}: χ(0) = {first}, χ(1) = {last}",
                self.name
            )));
        }
        let m = ((n + 1) as f64 * PLATEAU).ceil() as usize;
        let flat = |range: &[f64], v: f64| range.iter().all(|x| (x - v).abs() <= ENDPOINT_TOL);
        if !flat(&self.values[..m], first) || !flat(&self.values[n + 1 - m..], last) {
            return Err(Error::InadmissibleCutoff(format!(
                "{}: not constant on the first and last {m} samples",
                self.name
            )));
        }
        Ok(())
    }
}

/// Trapezoid value of `∫ χ'(χ² − χ)` using every `stride`-th sample, with `χ'`
/// from central differences.
fn trapezoid(values: &[f64], stride: usize) -> f64 {
    let v: Vec<f64> = values.iter().step_by(stride).copied().collect();
    let n = v.len() - 1;
    let h = 1.0 / n as f64;
    let deriv = |i: usize| -> f64 {
        if i == 0 {
            (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        } else if i == n {
            (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h)
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        }
    };
    let g = |i: usize| deriv(i) * (v[i] * v[i] - v[i]);
    let inner: f64 = (1..n).map(g).sum();
    h * (inner + 0.5 * (g(0) + g(n)))
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureReport {
    pub name: String,
    pub intervals: usize,
    pub trapezoid: f64,
    pub trapezoid_coarse: f64,
    /// `(4 I_h − I_2h) / 3`.
    pub richardson: f64,
}

pub fn quadrature(chi: &Cutoff) -> Result<QuadratureReport> {
    chi.validate()?;
    let fine = trapezoid(&chi.values, 1);
    let coarse = trapezoid(&chi.values, 2);
    Ok(QuadratureReport {
        name: chi.name.clone(),
        intervals: chi.intervals(),
        trapezoid: fine,
        trapezoid_coarse: coarse,
        richardson: (4.0 * fine - coarse) / 3.0,
    })
}

/// `∫₀¹ χ'(t)(χ(t)² − χ(t)) dt`, which is `−1/6` for every admissible `χ`.
pub fn cutoff_integral(chi: &Cutoff) -> Result<f64> {
    Ok(quadrature(chi)?.richardson)
}

/// Observed order of the extrapolated quadrature from grids `n`, `2n`, `4n`:
/// `log2(|R_n − R_2n| / |R_2n − R_4n|)`.
pub fn richardson_order(sample: impl Fn(usize) -> Cutoff, n: usize) -> Result<f64> {
    let r = [n, 2 * n, 4 * n]
        .into_iter()
        .map(|m| cutoff_integral(&sample(m)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(((r[0] - r[1]).abs() / (r[1] - r[2]).abs()).log2())
}

/// Rescales `[0.1, 0.9]` onto `[0, 1]` and clamps, leaving 10% plateaus.
fn inner(t: f64) -> f64 {
    ((t - 0.1) / 0.8).clamp(0.0, 1.0)
}

fn smoothstep(s: f64) -> f64 {
    s * s * (3.0 - 2.0 * s)
}

fn quintic(s: f64) -> f64 {
    s * s * s * (s * (6.0 * s - 15.0) + 10.0)
}

fn bump_ratio(s: f64) -> f64 {
    let f = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    let (a, b) = (f(s), f(1.0 - s));
    a / (a + b)
}

/// Five structurally different admissible cutoffs on `n` intervals.
pub fn standard_cutoffs(n: usize) -> Vec<Cutoff> {
    vec![
        Cutoff::sample("smoothstep", "C1", n, |t| smoothstep(inner(t))),
        Cutoff::sample("quintic", "C2", n, |t| quintic(inner(t))),
        Cutoff::sample("bump-ratio", "C∞", n, |t| bump_ratio(inner(t))),
        Cutoff::sample("plateaued-ramp", "C2", n, |t| {
            let s = inner(t);
            if s < 0.5 {
                0.5 * quintic((2.0 * s / 0.8).min(1.0))
            } else {
                0.5 + 0.5 * quintic(((2.0 * s - 1.0) / 0.8).min(1.0))
            }
        }),
        Cutoff::sample("non-monotone", "C2", n, |t| {
            let s = quintic(inner(t));
            s + 0.5 * (2.0 * PI * s).sin()
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antiderivative_oracle(c: &Cutoff) -> f64 {
        let f = |x: f64| x * x * x / 3.0 - x * x / 2.0;
        f(*c.values.last().unwrap()) - f(c.values[0])
    }

    #[test]
    fn all_standard_cutoffs_give_minus_one_sixth() {
        for c in standard_cutoffs(4096) {
            let v = cutoff_integral(&c).unwrap();
            assert!(
                (v - antiderivative_oracle(&c)).abs() < 1e-9,
                "{}: {v}",
                c.name
            );
        }
    }

    #[test]
    fn extrapolation_order() {
        for k in 0..5 {
            let p = richardson_order(|n| standard_cutoffs(n).swap_remove(k), 128).unwrap();
            assert!(p >= 2.0, "cutoff {k}: order {p}");
        }
    }

    #[test]
    fn non_monotone_really_is() {
        let c = &standard_cutoffs(512)[4];
        assert!(c.values.windows(2).any(|w| w[1] < w[0]));
    }

    #[test]
    fn rejects_bad_cutoffs() {
        let ramp = Cutoff::sample("ramp", "C0", 100, |t| t);
        assert!(matches!(
            cutoff_integral(&ramp),
            Err(Error::InadmissibleCutoff(_))
        ));
        let shifted = Cutoff::sample("shifted", "C∞", 100, |t| 0.5 + 0.5 * bump_ratio(inner(t)));
        assert!(shifted.validate().is_err());
        let odd = Cutoff::sample("odd", "C2", 101, |t| quintic(inner(t)));
        assert!(odd.validate().is_err());
    }
}
