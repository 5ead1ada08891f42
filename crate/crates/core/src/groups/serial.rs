use serde::{Deserialize, Serialize};

use super::{Group, GroupError};

/// Orders up to this are serialized with an explicit table even when a
/// descriptor is available.
const INLINE_TABLE_LIMIT: usize = 256;

/// JSON form of a group: element keys plus either a table or a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub label: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<String>,
    pub elements: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

impl Group {
    pub fn to_json(&self) -> GroupJson {
        let n = self.order();
        let inline = n <= INLINE_TABLE_LIMIT || self.descriptor().is_none();
        GroupJson {
            label: self.label().to_string(),
            order: n,
            descriptor: self.descriptor().map(str::to_string),
            elements: self.keys().iter().map(|k| k.to_vec()).collect(),
            table: inline.then(|| (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()),
        }
    }

    /// Rebuilds a group from an explicit table; descriptor-only JSON is
    /// handled by [`crate::constructions::group_from_json`].
    pub fn from_json_table(json: &GroupJson) -> Result<Group, GroupError> {
        let table = json
            .table
            .as_ref()
            .ok_or_else(|| GroupError::NotAGroup("no table in JSON".into()))?;
        if json.elements.len() != json.order || table.len() != json.order {
            return Err(GroupError::NotAGroup("order does not match element list".into()));
        }
        let keys = json.elements.iter().map(|k| k.clone().into_boxed_slice()).collect();
        let flat = table.iter().flatten().copied().collect();
        let g = Group::from_table(json.label.clone(), keys, flat)?;
        Ok(match &json.descriptor {
            Some(d) => g.with_descriptor(d.clone()),
            None => g,
        })
    }
}
