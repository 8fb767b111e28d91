//! JSON instance definitions. Scalars travel as strings (`"3/2"`, `"-1"`) so
//! that nothing passes through a float.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraAutomorphism, AlgebraError, FinDimAlgebra, Group};
use crate::linalg::{Field, FieldError, Matrix, Scalar};
use crate::suite::InstanceSpec;

#[derive(Debug, Error)]
pub enum InstanceFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Enveloping,
    GroupAlgebra,
}

/// A deliberately broken structure map, for exercising failure reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tamper {
    Translation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub labels: Vec<String>,
    /// `structure_constants[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    /// Row-major matrix of σ; column `j` holds the coordinates of `σ(e_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tamper: Option<Tamper>,
}

fn field_of(f: FieldSpec) -> Result<Field, FieldError> {
    match f {
        FieldSpec::Q => Ok(Field::Q),
        FieldSpec::Fp(p) => Field::prime(p),
    }
}

fn parse_all(field: Field, xs: &[String]) -> Result<Vec<Scalar>, FieldError> {
    xs.iter().map(|x| field.parse(x)).collect()
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile, InstanceFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<InstanceFile, InstanceFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| InstanceFileError::Io { path: path.display().to_string(), source })?;
        InstanceFile::parse(&text)
    }

    /// Validates the data and turns it into a buildable instance.
    pub fn to_spec(&self, default_name: &str) -> Result<InstanceSpec, InstanceFileError> {
        let field = field_of(self.field)?;
        let name = self.name.clone().unwrap_or_else(|| default_name.to_string());
        match self.kind {
            Kind::GroupAlgebra => {
                let table = self
                    .group_table
                    .clone()
                    .ok_or_else(|| InstanceFileError::Shape("group_algebra needs \"group_table\"".into()))?;
                if self.automorphism.is_some() || self.tamper.is_some() {
                    return Err(InstanceFileError::Shape(
                        "\"automorphism\" and \"tamper\" apply to enveloping instances only".into(),
                    ));
                }
                Group::new(table.clone())?;
                Ok(InstanceSpec::GroupAlgebra { name, field, table })
            }
            Kind::Enveloping => {
                let spec = self
                    .algebra
                    .as_ref()
                    .ok_or_else(|| InstanceFileError::Shape("enveloping needs \"algebra\"".into()))?;
                if spec.labels.len() != spec.dim {
                    return Err(InstanceFileError::Shape(format!(
                        "{} labels for an algebra of dimension {}",
                        spec.labels.len(),
                        spec.dim
                    )));
                }
                let c = spec
                    .structure_constants
                    .iter()
                    .map(|r| r.iter().map(|v| parse_all(field, v)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let unit = parse_all(field, &spec.unit)?;
                let a = FinDimAlgebra::from_constants(field, spec.labels.clone(), &c, &unit)?;
                let report = crate::algebra::check_algebra(&a, &name);
                if let Some(e) = report.failures().next() {
                    return Err(InstanceFileError::Shape(format!("algebra fails {}", e.identity)));
                }
                let sigma = match &self.automorphism {
                    None => AlgebraAutomorphism::identity(&a),
                    Some(rows) => {
                        if rows.len() != a.dim() || rows.iter().any(|r| r.len() != a.dim()) {
                            return Err(InstanceFileError::Shape(format!("automorphism must be {0}x{0}", a.dim())));
                        }
                        let rows = rows.iter().map(|r| parse_all(field, r)).collect::<Result<Vec<_>, _>>()?;
                        AlgebraAutomorphism::new(&a, Matrix::from_rows(field, &rows))?
                    }
                };
                Ok(match self.tamper {
                    None => InstanceSpec::Enveloping { name, a, sigma },
                    Some(Tamper::Translation) => InstanceSpec::TamperedTranslation { name, a, sigma },
                })
            }
        }
    }

    /// The file form of an instance; `to_spec` inverts it.
    pub fn from_spec(spec: &InstanceSpec) -> InstanceFile {
        let field_spec = |f: Field| match f {
            Field::Q => FieldSpec::Q,
            Field::Fp(p) => FieldSpec::Fp(p),
        };
        let algebra = |a: &FinDimAlgebra| {
            let d = a.dim();
            AlgebraSpec {
                dim: d,
                labels: a.labels().to_vec(),
                structure_constants: (0..d)
                    .map(|i| (0..d).map(|j| (0..d).map(|k| a.constant(i, j, k).to_string()).collect()).collect())
                    .collect(),
                unit: a.unit().to_dense(a.field(), d).iter().map(|x| x.to_string()).collect(),
            }
        };
        let matrix = |m: &Matrix| m.to_dense().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        match spec {
            InstanceSpec::GroupAlgebra { name, field, table } => InstanceFile {
                name: Some(name.clone()),
                field: field_spec(*field),
                kind: Kind::GroupAlgebra,
                algebra: None,
                automorphism: None,
                group_table: Some(table.clone()),
                tamper: None,
            },
            InstanceSpec::Enveloping { name, a, sigma } | InstanceSpec::TamperedTranslation { name, a, sigma } => {
                InstanceFile {
                    name: Some(name.clone()),
                    field: field_spec(a.field()),
                    kind: Kind::Enveloping,
                    algebra: Some(algebra(a)),
                    automorphism: Some(matrix(sigma.matrix())),
                    group_table: None,
                    tamper: matches!(spec, InstanceSpec::TamperedTranslation { .. }).then_some(Tamper::Translation),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::{default_instances, tampered_instance};

    #[test]
    fn round_trip_through_json() {
        let mut all = default_instances();
        all.push(tampered_instance());
        for spec in &all {
            let file = InstanceFile::from_spec(spec);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back = InstanceFile::parse(&text).unwrap();
            assert_eq!(back, file);
            let again = InstanceFile::from_spec(&back.to_spec("x").unwrap());
            assert_eq!(again, file);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            r#"{"field":"Q","kind":"group_algebra","group_table":[[0,1],[0,1]]}"#,
            r#"{"field":{"Fp":4},"kind":"group_algebra","group_table":[[0]]}"#,
            r#"{"field":"Q","kind":"enveloping"}"#,
            r#"{"field":"Q","kind":"enveloping","algebra":{"dim":1,"labels":["1"],"structure_constants":[[["x"]]],"unit":["1"]}}"#,
            r#"{"field":"Q","kind":"enveloping","algebra":{"dim":1,"labels":["1"],"structure_constants":[[["2"]]],"unit":["1"]}}"#,
            r#"{"field":"Q","kind":"torus"}"#,
        ];
        for text in bad {
            assert!(InstanceFile::parse(text).and_then(|f| f.to_spec("x")).is_err(), "{text}");
        }
    }
}
