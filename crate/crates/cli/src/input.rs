//! Turning group specs and matrix arguments into core values.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use tdual_core::rootdata::datum::FundamentalGroup;
use tdual_core::rootdata::{named_group, Component, RootDatum};
use tdual_core::zlinalg::IntMatrix;

use crate::args::{GroupSpec, UsageError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumJson {
    components: Vec<ComponentJson>,
    #[serde(default)]
    fundamental_group: Option<FundamentalJson>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    series: String,
    rank: usize,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FundamentalJson {
    Named(String),
    Generators { generators: Vec<Vec<i64>> },
}

/// Parses the root-datum JSON schema.
pub fn datum_from_json(text: &str) -> Result<RootDatum, UsageError> {
    let d: DatumJson =
        serde_json::from_str(text).map_err(|e| UsageError(format!("bad root-datum JSON: {e}")))?;
    let mut comps = Vec::with_capacity(d.components.len());
    for c in &d.components {
        let comp: Component = format!("{}{}", c.series.trim(), c.rank)
            .parse()
            .map_err(|e| UsageError(format!("bad component {}{}: {e}", c.series, c.rank)))?;
        comps.push(comp);
    }
    let rank: usize = comps.iter().map(|c| c.rank).sum();
    let choice = match d.fundamental_group {
        None => FundamentalGroup::SimplyConnected,
        Some(FundamentalJson::Named(s)) => match s.as_str() {
            "simply_connected" => FundamentalGroup::SimplyConnected,
            "adjoint" => FundamentalGroup::Adjoint,
            other => return Err(UsageError(format!("unknown fundamental_group {other:?}"))),
        },
        Some(FundamentalJson::Generators { generators }) => {
            let cols: Vec<Vec<BigInt>> = generators
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            if cols.iter().any(|c| c.len() != rank) {
                return Err(UsageError(format!(
                    "fundamental_group generators must have length {rank}"
                )));
            }
            FundamentalGroup::Generators(IntMatrix::from_cols(rank, &cols))
        }
    };
    let rd = RootDatum::build(&comps, choice).map_err(|e| UsageError(e.to_string()))?;
    Ok(match d.label {
        Some(l) => rd.with_label(l),
        None => rd,
    })
}

pub fn load_group(spec: &GroupSpec) -> Result<RootDatum, UsageError> {
    match spec {
        GroupSpec::Named(name) => named_group(name).map_err(|e| UsageError(e.to_string())),
        GroupSpec::Inline(text) => datum_from_json(text),
        GroupSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            datum_from_json(&text)
        }
    }
}

pub fn int_matrix(rows: &[Vec<String>], what: &str) -> Result<IntMatrix, UsageError> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            r.push(
                x.parse::<BigInt>()
                    .map_err(|_| UsageError(format!("{what} entry {x:?} is not an integer")))?,
            );
        }
        out.push(r);
    }
    IntMatrix::try_from_rows(out, 0).map_err(|e| UsageError(format!("{what}: {e}")))
}

pub fn rat_matrix(rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<BigRational>>, UsageError> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    x.parse::<BigRational>()
                        .map_err(|_| UsageError(format!("{what} entry {x:?} is not a rational")))
                })
                .collect()
        })
        .collect()
}

/// Checks that a matrix is `n × n`.
pub fn check_square(m: &IntMatrix, n: usize, what: &str) -> Result<(), UsageError> {
    if m.rows() == n && m.cols() == n {
        Ok(())
    } else {
        Err(UsageError(format!(
            "{what} is {}×{}, expected {n}×{n}",
            m.rows(),
            m.cols()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_datum_matches_named() {
        let rd = datum_from_json(
            r#"{"components":[{"series":"A","rank":2}],"fundamental_group":"simply_connected","label":"SU(3)"}"#,
        )
        .unwrap();
        assert_eq!(rd, named_group("SU(3)").unwrap());
        let so3 = datum_from_json(
            r#"{"components":[{"series":"A","rank":1}],"fundamental_group":"adjoint"}"#,
        )
        .unwrap();
        assert!(so3.is_adjoint());
    }

    #[test]
    fn json_generators() {
        let rd = datum_from_json(
            r#"{"components":[{"series":"A","rank":3}],"fundamental_group":{"generators":[[0,1,0]]}}"#,
        )
        .unwrap();
        assert_eq!(rd.fundamental_group_order(), BigInt::from(2));
    }

    #[test]
    fn json_errors() {
        for text in [
            "{",
            r#"{"components":[{"series":"Q","rank":2}]}"#,
            r#"{"components":[{"series":"A","rank":2}],"fundamental_group":"weird"}"#,
            r#"{"components":[{"series":"A","rank":2}],"fundamental_group":{"generators":[[1]]}}"#,
            r#"{"components":[]}"#,
        ] {
            assert!(datum_from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn matrices() {
        let m = int_matrix(&[vec!["1".into(), "-2".into()]], "twist").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, -2]]));
        assert!(int_matrix(&[vec!["1/2".into()]], "twist").is_err());
        let r = rat_matrix(&[vec!["0".into(), "1/2".into()]], "b").unwrap();
        assert_eq!(r[0][1], BigRational::new(1.into(), 2.into()));
    }
}
