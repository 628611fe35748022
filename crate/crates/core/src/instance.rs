//! Instance files: a face poset, an optional characteristic function and an
//! optional carrier triangulation, as JSON.
//!
//! ```json
//! {
//!   "name": "triangle",
//!   "dim": 2,
//!   "faces": [{"id": "Q", "codim": 0}, {"id": "F1", "codim": 1}, ...],
//!   "inclusions": [["p12", "F1"], ...],
//!   "lambda": {"F1": [1, 0], ...},
//!   "triangulation": {"points": 3, "simplices": [{"verts": [0], "carrier": "p12"}, ...]}
//! }
//! ```
//!
//! Covers of facets by `Q` may be omitted from `inclusions`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::charfn::{validate_lambda, CharFunction};
use crate::complex::{validate_carriers, CarrierComplex, Simplex};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::poset::{validate, FacePoset, ValidationReport, CHECK_SKELETON, CHECK_VERTEX};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    pub id: String,
    pub codim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexEntry {
    pub verts: Vec<usize>,
    pub carrier: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationEntry {
    pub points: usize,
    pub simplices: Vec<SimplexEntry>,
}

/// The on-disk schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<FaceEntry>,
    #[serde(default)]
    pub inclusions: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BTreeMap<String, Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<TriangulationEntry>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub poset: FacePoset,
    pub lambda: Option<CharFunction>,
    pub triangulation: Option<CarrierComplex>,
}

/// Checks that only produce warnings; every other failed check rejects the
/// instance.
pub const DIAGNOSTIC_CHECKS: [&str; 2] = [CHECK_VERTEX, CHECK_SKELETON];

impl Instance {
    /// Structural load: schema, face ids, codimensions, λ lengths and
    /// triangulation shape. Does not run [`Instance::validate`].
    pub fn from_file(file: InstanceFile) -> Result<Self> {
        let poset = FacePoset::new(
            file.dim,
            file.faces.into_iter().map(|f| (f.id, f.codim)).collect(),
            file.inclusions,
        )?;
        let lambda = match file.lambda {
            None => None,
            Some(raw) => {
                let mut values = BTreeMap::new();
                for (id, bits) in raw {
                    if let Some(bad) = bits.iter().find(|&&b| b > 1) {
                        return Err(Error::Input(format!("λ({id}) has entry {bad}, expected 0 or 1")));
                    }
                    let bits: Vec<bool> = bits.iter().map(|&b| b == 1).collect();
                    values.insert(id, Gf2Vector::from_bits(&bits));
                }
                Some(CharFunction::from_ids(&poset, file.dim, &values)?)
            }
        };
        let triangulation = match file.triangulation {
            None => None,
            Some(t) => {
                let simplices = t
                    .simplices
                    .into_iter()
                    .map(|s| {
                        let carrier = poset.find(&s.carrier).ok_or_else(|| {
                            Error::Input(format!("simplex {:?} has unknown carrier {}", s.verts, s.carrier))
                        })?;
                        Ok(Simplex::new(s.verts, carrier))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(CarrierComplex::new(t.points, simplices)?)
            }
        };
        Ok(Self {
            name: file.name,
            poset,
            lambda,
            triangulation,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    /// Every check on the poset, λ and the triangulation.
    pub fn validate(&self) -> ValidationReport {
        let mut report = validate(&self.poset);
        if let Some(l) = &self.lambda {
            report.checks.extend(validate_lambda(&self.poset, l).checks);
        }
        if let Some(t) = &self.triangulation {
            report.checks.extend(validate_carriers(t, &self.poset).checks);
        }
        report
    }

    /// Fails with the witnesses of every failed non-diagnostic check.
    pub fn require_valid(&self) -> Result<()> {
        let failures: Vec<String> = self
            .validate()
            .checks
            .into_iter()
            .filter(|c| !c.ok && !DIAGNOSTIC_CHECKS.contains(&c.name))
            .flat_map(|c| {
                let name = c.name;
                c.witnesses.into_iter().map(move |w| format!("{name}: {w}"))
            })
            .collect();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(failures))
        }
    }

    pub fn lambda(&self) -> Result<&CharFunction> {
        self.lambda
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("instance {} has no characteristic function", self.name)))
    }

    pub fn to_file(&self) -> InstanceFile {
        let p = &self.poset;
        InstanceFile {
            name: self.name.clone(),
            dim: p.dim(),
            faces: p
                .faces()
                .iter()
                .map(|f| FaceEntry {
                    id: f.id.clone(),
                    codim: f.codim,
                })
                .collect(),
            inclusions: p
                .covers()
                .iter()
                .filter(|&&(c, par)| !(p.is_top(par) && p.codim(c) == 1))
                .map(|&(c, par)| (p.id(c).to_string(), p.id(par).to_string()))
                .collect(),
            lambda: self.lambda.as_ref().map(|l| {
                l.values()
                    .iter()
                    .map(|(&f, v)| (p.id(f).to_string(), v.to_bits().into_iter().map(u8::from).collect()))
                    .collect()
            }),
            triangulation: self.triangulation.as_ref().map(|t| TriangulationEntry {
                points: t.points(),
                simplices: t
                    .simplices()
                    .iter()
                    .map(|s| SimplexEntry {
                        verts: s.verts.clone(),
                        carrier: p.id(s.carrier).to_string(),
                    })
                    .collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }
}

/// Structural load followed by validation.
pub fn parse(text: &str) -> Result<Instance> {
    let inst = Instance::from_json(text)?;
    inst.require_valid()?;
    Ok(inst)
}

pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
    parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn round_trip() {
        for inst in [
            standard::annulus(),
            standard::square_triangulated(),
            standard::triangle_triangulated(),
        ] {
            let text = inst.to_json();
            let back = parse(&text).unwrap();
            assert_eq!(back.to_json(), text);
            assert_eq!(back.poset.covers(), inst.poset.covers());
        }
    }

    #[test]
    fn short_lambda_names_the_facet() {
        let text = r#"{"name":"t","dim":2,
            "faces":[{"id":"Q","codim":0},{"id":"F1","codim":1},{"id":"F2","codim":1},{"id":"v","codim":2}],
            "inclusions":[["v","F1"],["v","F2"]],
            "lambda":{"F1":[1,0],"F2":[1]}}"#;
        let err = parse(text).unwrap_err().to_string();
        assert!(err.contains("F2"), "{err}");
    }

    #[test]
    fn unknown_keys_and_ids_are_rejected() {
        assert!(parse(r#"{"name":"x","dim":0,"faces":[{"id":"Q","codim":0}],"extra":1}"#).is_err());
        let err = parse(r#"{"name":"x","dim":1,"faces":[{"id":"Q","codim":0}],"inclusions":[["a","Q"]]}"#);
        assert!(err.unwrap_err().to_string().contains("unknown face id a"));
    }

    #[test]
    fn non_monotone_carriers_fail_validation() {
        let mut file = standard::square_triangulated().to_file();
        let t = file.triangulation.as_mut().unwrap();
        t.simplices.iter_mut().find(|s| s.verts == [0, 1]).unwrap().carrier = "LB".into();
        let err = parse(&serde_json::to_string(&file).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn annulus_diagnostics_do_not_reject() {
        let inst = parse(&standard::annulus().to_json()).unwrap();
        assert!(!inst.validate().passed(CHECK_VERTEX));
    }
}
