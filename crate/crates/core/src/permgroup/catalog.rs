use super::group::PermGroup;
use super::PermError;

macro_rules! groups {
    ($($name:literal),* $(,)?) => {
        const CATALOG: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../data/groups/", $name, ".json")))),*
        ];
    };
}

groups!(
    "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2^3", "D8", "Q8", "C9", "C3xC3",
    "C10", "D10", "C11", "C12", "C6xC2", "D12", "A4", "Dic3", "C13", "C14", "D14", "C15", "C16", "C4xC4",
    "C8xC2", "C4xC2xC2", "C2^4", "C2^2-C4", "C4-C4", "M16", "D16", "SD16", "Q16", "C2xD8", "C2xQ8", "Pauli",
    "S4", "S5", "S6", "S7", "A5", "D4",
);

/// Names of all catalog groups, smallest first.
pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

/// Looks up a catalog group by name (case-sensitive).
pub fn catalog_group(name: &str) -> Result<PermGroup, PermError> {
    let (n, json) =
        CATALOG.iter().find(|(n, _)| *n == name).ok_or_else(|| PermError::UnknownGroup(name.to_string()))?;
    let g: PermGroup = serde_json::from_str(json).map_err(|e| PermError::Parse(format!("{n}: {e}")))?;
    Ok(g.with_name(*n))
}

/// Every catalog group, in catalog order.
pub fn catalog() -> Vec<PermGroup> {
    CATALOG.iter().map(|(n, _)| catalog_group(n).expect("catalog data is valid")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::abelianized_grading;

    #[test]
    fn orders() {
        let expected = [
            ("C1", 1), ("V4", 4), ("S3", 6), ("Q8", 8), ("D8", 8), ("D4", 8), ("Dic3", 12), ("A4", 12),
            ("C2^2-C4", 16), ("Pauli", 16), ("SD16", 16), ("S5", 120), ("A5", 60), ("S7", 5040),
        ];
        for (name, order) in expected {
            assert_eq!(catalog_group(name).unwrap().order().unwrap(), order, "{name}");
        }
        assert_eq!(catalog_names().len(), 48);
        assert!(matches!(catalog_group("nope"), Err(PermError::UnknownGroup(_))));
    }

    #[test]
    fn class_law_grading_matches_abelianization() {
        for g in catalog().into_iter().filter(|g| g.order().unwrap() <= 120) {
            let law = g.class_fusion_law().unwrap();
            let grading = abelianized_grading(&law).unwrap();
            assert_eq!(grading.invariant_factors(), Some(g.abelianization().unwrap().invariant_factors.as_slice()), "{:?}", g.name());
        }
    }
}
