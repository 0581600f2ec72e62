use super::{CharacterTable, ChartError};
use crate::permgroup::{catalog_group, PermGroup};

macro_rules! tables {
    ($($name:literal),* $(,)?) => {
        const TABLES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../data/tables/", $name, ".json")))),*
        ];
    };
}

tables!(
    "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2^3", "D8", "Q8", "D4", "C9",
    "C3xC3", "C10", "D10", "C11", "C12", "C6xC2", "D12", "A4", "C13", "C14", "D14", "C15", "C16", "C4xC4",
    "C8xC2", "C4xC2xC2", "C2^4", "D16", "S4", "S5",
);

/// Names of the catalog groups with a shipped character table.
pub fn table_names() -> Vec<&'static str> {
    TABLES.iter().map(|(n, _)| *n).collect()
}

/// The shipped table of a catalog group, with representatives in the
/// catalog permutation model of that group.
pub fn catalog_table(name: &str) -> Result<CharacterTable, ChartError> {
    let (_, json) = TABLES.iter().find(|(n, _)| *n == name).ok_or(ChartError::NoTable)?;
    CharacterTable::from_json(json)
}

/// A table for an arbitrary permutation group, transported from a shipped
/// table of an isomorphic catalog group.
pub fn table_for_group(group: &PermGroup) -> Result<CharacterTable, ChartError> {
    let order = group.order()?;
    let classes = group.conjugacy_classes()?.len();
    for (name, _) in TABLES {
        let table = catalog_table(name)?;
        if table.order() != order || table.len() != classes {
            continue;
        }
        let source = catalog_group(name)?;
        match table.transport(&source, group) {
            Ok(t) => return Ok(t),
            Err(ChartError::GroupMismatch(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ChartError::NoTable)
}
