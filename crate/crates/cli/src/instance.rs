//! Instance files.
//!
//! ```json
//! {"n": 3, "field": "Q", "generators": [{"factors": [{"coeffs": [1,0,0], "power": 2}]}]}
//! {"n": 2, "polys": ["x1^2*(x1+2*x2)", "x2^3"]}
//! ```
//!
//! Coefficients are integers or strings such as `"-3/4"`.

use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use lefschetz_core::{FactoredGenerator, FieldSpec, LinearForm, Poly, Scalar};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::parse::parse;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub coeffs: Vec<Coeff>,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub factors: Vec<FactorSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<String>>,
}

/// `q`, `Q`, or `fp:<prime>`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let lower = t.to_ascii_lowercase();
    let Some(p) = lower.strip_prefix("fp:") else {
        bail!("unknown field '{s}' (expected q or fp:<prime>)");
    };
    let p: u64 = p.parse().with_context(|| format!("bad prime in '{s}'"))?;
    Ok(FieldSpec::prime(p)?)
}

pub fn field_name(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::PrimeField(p) => format!("fp:{p}"),
    }
}

fn scalar(c: &Coeff, field: FieldSpec) -> Result<Scalar> {
    match c {
        Coeff::Int(v) => Ok(field.from_i64(*v)),
        Coeff::Text(s) => {
            let q = BigRational::from_str(s.trim()).map_err(|_| anyhow!("bad coefficient '{s}'"))?;
            field
                .from_rational(&q)
                .ok_or_else(|| anyhow!("coefficient '{s}' has no image in {}", field_name(field)))
        }
    }
}

/// A resolved instance: the ring and its generators, factored when given so.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub nvars: usize,
    pub field: FieldSpec,
    pub polys: Vec<Poly>,
    pub factored: Option<Vec<FactoredGenerator>>,
}

impl Instance {
    /// Resolves `file`. `field` and `nvars` from the command line take
    /// precedence over the file.
    pub fn from_file(file: &InstanceFile, field: Option<FieldSpec>, nvars: Option<usize>) -> Result<Self> {
        let field = match (field, &file.field) {
            (Some(f), _) => f,
            (None, Some(s)) => parse_field(s)?,
            (None, None) => FieldSpec::Rationals,
        };
        match (&file.generators, &file.polys) {
            (Some(gens), None) => {
                let n = nvars
                    .or(file.n)
                    .or_else(|| gens.first().and_then(|g| g.factors.first()).map(|f| f.coeffs.len()))
                    .ok_or_else(|| anyhow!("cannot tell the number of variables"))?;
                let factored = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let factors = g
                            .factors
                            .iter()
                            .map(|f| {
                                if f.coeffs.len() != n {
                                    bail!("generator {} has a factor with {} coefficients, expected {n}", i + 1, f.coeffs.len());
                                }
                                let coeffs = f.coeffs.iter().map(|c| scalar(c, field)).collect::<Result<Vec<_>>>()?;
                                Ok((LinearForm::new(coeffs)?, f.power))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(FactoredGenerator::new(factors)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Instance {
                    nvars: n,
                    field,
                    polys: factored.iter().map(FactoredGenerator::expand).collect(),
                    factored: Some(factored),
                })
            }
            (None, Some(polys)) => Instance::from_poly_strings(polys, field, nvars.or(file.n)),
            (Some(_), Some(_)) => bail!("give either \"generators\" or \"polys\", not both"),
            (None, None) => bail!("instance has no generators"),
        }
    }

    pub fn load(path: &Path, field: Option<FieldSpec>, nvars: Option<usize>) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: InstanceFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Instance::from_file(&file, field, nvars)
    }

    /// Polynomials in the text grammar; without `nvars` the ring is `x1..xN`
    /// for the largest index `N` used.
    pub fn from_poly_strings(polys: &[String], field: FieldSpec, nvars: Option<usize>) -> Result<Self> {
        if polys.is_empty() {
            bail!("instance has no generators");
        }
        let parsed = polys
            .iter()
            .map(|s| parse(s).with_context(|| format!("in '{s}'")))
            .collect::<Result<Vec<_>>>()?;
        let n = nvars.unwrap_or_else(|| parsed.iter().map(|p| p.max_var()).max().unwrap_or(0).max(1));
        let polys = parsed
            .iter()
            .zip(polys)
            .map(|(p, s)| p.to_poly(n, field).with_context(|| format!("in '{s}'")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            nvars: n,
            field,
            polys,
            factored: None,
        })
    }

    /// Replayable file form.
    pub fn to_file(&self) -> InstanceFile {
        let coeff = |s: &Scalar| match s.to_string().parse::<i64>() {
            Ok(v) => Coeff::Int(v),
            Err(_) => Coeff::Text(s.to_string()),
        };
        match &self.factored {
            Some(gens) => InstanceFile {
                n: Some(self.nvars),
                field: Some(field_name(self.field)),
                generators: Some(
                    gens.iter()
                        .map(|g| GeneratorSpec {
                            factors: g
                                .factors()
                                .iter()
                                .map(|(l, power)| FactorSpec {
                                    coeffs: l.coeffs().iter().map(coeff).collect(),
                                    power: *power,
                                })
                                .collect(),
                        })
                        .collect(),
                ),
                polys: None,
            },
            None => InstanceFile {
                n: Some(self.nvars),
                field: Some(field_name(self.field)),
                generators: None,
                polys: Some(self.polys.iter().map(ToString::to_string).collect()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_file() {
        let text = r#"{"n": 3, "field": "Q", "generators": [{"factors": [{"coeffs": [1,0,0], "power": 2}, {"coeffs": [1,2,3], "power": 1}]}]}"#;
        let file: InstanceFile = serde_json::from_str(text).unwrap();
        let inst = Instance::from_file(&file, None, None).unwrap();
        assert_eq!(inst.nvars, 3);
        assert_eq!(inst.polys[0].to_string(), "x1^3 + 2*x1^2*x2 + 3*x1^2*x3");
        assert_eq!(inst.to_file(), file);
    }

    #[test]
    fn poly_file_and_fields() {
        let file: InstanceFile = serde_json::from_str(r#"{"polys": ["x1^2*(x1+2*x2)", "x2^3"], "field": "fp:2147483647"}"#).unwrap();
        let inst = Instance::from_file(&file, None, None).unwrap();
        assert_eq!(inst.nvars, 2);
        assert_eq!(inst.field, FieldSpec::prime(2_147_483_647).unwrap());
        let again = Instance::from_file(&inst.to_file(), None, None).unwrap();
        assert_eq!(again, inst);
        assert!(parse_field("fp:15").is_err());
        assert!(parse_field("R").is_err());
        assert!(serde_json::from_str::<InstanceFile>(r#"{"gens": []}"#).is_err());
    }

    #[test]
    fn rational_coefficients() {
        let file: InstanceFile =
            serde_json::from_str(r#"{"generators": [{"factors": [{"coeffs": ["1/2", 1], "power": 1}]}]}"#).unwrap();
        let inst = Instance::from_file(&file, None, None).unwrap();
        assert_eq!(inst.nvars, 2);
        assert_eq!(inst.polys[0].to_string(), "1/2*x1 + x2");
    }
}
