//! JSON file format for group structures.
//!
//! ```json
//! {"ground_size": 8, "groups": [[1], [2], [1, 2, 3, 4, 5], [4, 6], [3, 5, 7], [6, 7, 8]]}
//! ```
//!
//! Indices are 1-based. A group listing the same index twice is rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::GroupStructure;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub ground_size: usize,
    pub groups: Vec<Vec<usize>>,
}

impl From<&GroupStructure> for StructureFile {
    fn from(s: &GroupStructure) -> Self {
        Self {
            ground_size: s.ground_size(),
            groups: s.to_one_based(),
        }
    }
}

pub fn parse_structure(text: &str) -> Result<GroupStructure> {
    let file: StructureFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    GroupStructure::from_one_based(file.ground_size, &file.groups)
}

pub fn read_structure(path: &Path) -> Result<GroupStructure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_structure(&text)
}

pub fn structure_to_json(s: &GroupStructure) -> String {
    serde_json::to_string(&StructureFile::from(s)).expect("plain data serializes")
}

pub fn write_structure(path: &Path, s: &GroupStructure) -> Result<()> {
    std::fs::write(path, structure_to_json(s) + "\n")
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = crate::fixtures::g1();
        let text = structure_to_json(&s);
        assert_eq!(parse_structure(&text).unwrap(), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_structure("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_structure(r#"{"ground_size": 2, "groups": [[1, 1, 2]]}"#),
            Err(Error::DuplicateIndex { group: 1, index: 1 })
        ));
        assert!(matches!(
            parse_structure(r#"{"ground_size": 2, "groups": [[0, 1, 2]]}"#),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(parse_structure(r#"{"ground_size": 1, "groups": [[1]], "x": 1}"#).is_err());
    }
}
