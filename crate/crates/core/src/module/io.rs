use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::group::{FiniteGroup, GroupSpec, DEFAULT_ORDER_CAP};
use crate::matrix::{FFMatrix, MatrixData};

use super::RepModule;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldData {
    pub p: u32,
    pub m: u32,
    /// Coefficients of the defining polynomial, constant term first.
    pub modulus: Vec<u32>,
}

impl FieldData {
    pub fn of(field: &Field) -> Self {
        FieldData {
            p: field.p(),
            m: field.m(),
            modulus: field.modulus().to_vec(),
        }
    }

    pub fn build(&self) -> Result<Field> {
        let f = FieldSpec::with_modulus(self.p, self.modulus.clone())?;
        if f.m() != self.m {
            return Err(Error::Parse(format!(
                "modulus has degree {} but m = {}",
                f.m(),
                self.m
            )));
        }
        Ok(f)
    }
}

/// Serialized module: `{field, group, dim, generators, label}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub field: FieldData,
    pub group: GroupSpec,
    pub dim: usize,
    pub generators: Vec<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl RepModule {
    pub fn to_data(&self) -> ModuleData {
        ModuleData {
            field: FieldData::of(self.field()),
            group: self.group().to_spec(),
            dim: self.dim(),
            generators: self.gens().iter().map(|g| g.to_data()).collect(),
            label: self.label().map(str::to_owned),
        }
    }

    /// Rebuilds a module, reusing `group` and `field` when they match the data.
    pub fn from_data_in(
        data: &ModuleData,
        group: &Arc<FiniteGroup>,
        field: &Field,
    ) -> Result<Self> {
        if &data.field.build()? != field {
            return Err(Error::FieldMismatch);
        }
        if data.group.permutations()? != group.generators() {
            return Err(Error::GroupMismatch);
        }
        Self::assemble(data, group.clone(), field.clone())
    }

    pub fn from_data(data: &ModuleData) -> Result<Self> {
        let field = data.field.build()?;
        let group = FiniteGroup::from_spec(&data.group, DEFAULT_ORDER_CAP)?;
        Self::assemble(data, group, field)
    }

    fn assemble(data: &ModuleData, group: Arc<FiniteGroup>, field: Field) -> Result<Self> {
        let gens = data
            .generators
            .iter()
            .map(|d| FFMatrix::from_data(&field, d))
            .collect::<Result<Vec<_>>>()?;
        if gens.iter().any(|g| g.rows() != data.dim) {
            return Err(Error::Parse(format!(
                "generator size does not match dim {}",
                data.dim
            )));
        }
        let m = if gens.is_empty() || data.dim == 0 {
            RepModule::unchecked(group.clone(), field, data.dim, gens, None)
        } else {
            RepModule::new(group, field, gens)?
        };
        Ok(match &data.label {
            Some(l) => m.with_label(l.clone()),
            None => m,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_data()).expect("module data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let data: ModuleData = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_data(&data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::s3;

    #[test]
    fn json_round_trip_is_exact() {
        let f = FieldSpec::new(3, 2).unwrap();
        let m = RepModule::regular(s3(), f).with_label("kS3");
        let s = m.to_json();
        let back = RepModule::from_json(&s).unwrap();
        assert_eq!(back.gens(), m.gens());
        assert_eq!(back.label(), Some("kS3"));
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn rejects_bad_relations() {
        let f = FieldSpec::new(2, 1).unwrap();
        let mut data = RepModule::trivial(s3(), f).to_data();
        data.generators[0].entries[0][0] = 0;
        assert!(RepModule::from_data(&data).is_err());
    }
}
