//! JSON diagram files.
//!
//! ```json
//! {
//!   "one_handles": 0,
//!   "components": [
//!     { "id": "K",  "tb": -1, "rot": 0, "coeff": "1" },
//!     { "id": "K'", "tb": -1, "rot": 0, "coeff": "-1" }
//!   ],
//!   "linking": [[0, -1], [-1, 0]]
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{ContactDiagram, LegendrianComponent, SurgeryError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default)]
    pub one_handles: u32,
    pub components: Vec<LegendrianComponent>,
    pub linking: Vec<Vec<i64>>,
}

impl TryFrom<DiagramFile> for ContactDiagram {
    type Error = SurgeryError;
    fn try_from(f: DiagramFile) -> Result<Self, SurgeryError> {
        ContactDiagram::new(f.one_handles, f.components, f.linking)
    }
}

impl From<&ContactDiagram> for DiagramFile {
    fn from(d: &ContactDiagram) -> Self {
        DiagramFile {
            one_handles: d.one_handles(),
            components: d.components().to_vec(),
            linking: d.linking().to_vec(),
        }
    }
}

pub fn parse_diagram(text: &str) -> Result<ContactDiagram, SurgeryError> {
    let f: DiagramFile =
        serde_json::from_str(text).map_err(|e| SurgeryError::InvalidDiagram(e.to_string()))?;
    f.try_into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Rat;

    #[test]
    fn parses_documented_example() {
        let d = parse_diagram(
            r#"{"one_handles": 0,
                "components": [{"id": "K", "tb": -1, "rot": 0, "coeff": "1"},
                               {"id": "K'", "tb": -1, "rot": 0, "coeff": "-1"}],
                "linking": [[0, -1], [-1, 0]]}"#,
        )
        .unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.components()[0].coeff, Rat::one());
        assert_eq!(d.linking()[0][1], -1);
    }

    #[test]
    fn round_trips_through_json() {
        let d = parse_diagram(
            r#"{"components": [{"id": "f", "tb": -1, "rot": 0, "coeff": "3/4"}], "linking": [[0]]}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&DiagramFile::from(&d)).unwrap();
        assert_eq!(parse_diagram(&text).unwrap(), d);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "not json",
            r#"{"components": [], "linking": [], "extra": 1}"#,
            r#"{"components": [{"id": "a", "tb": 0, "rot": 0, "coeff": "x"}], "linking": [[0]]}"#,
            r#"{"components": [{"id": "a", "tb": 0, "rot": 0, "coeff": "1"}], "linking": []}"#,
        ] {
            assert!(
                matches!(parse_diagram(bad), Err(SurgeryError::InvalidDiagram(_))),
                "{bad}"
            );
        }
    }
}
