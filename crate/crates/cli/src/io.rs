//! The presentation file format.

use serde::{Deserialize, Serialize};
use sofic_core::{Edge, LabeledPresentation, Result, SoficError, SoficShift, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub alphabet: Vec<String>,
    pub vertices: usize,
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

/// Parses and validates a presentation; the result is trimmed to its essential part.
pub fn parse_presentation(text: &str) -> Result<LabeledPresentation> {
    let file: PresentationFile =
        serde_json::from_str(text).map_err(|e| SoficError::Malformed(e.to_string()))?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        let label = file
            .alphabet
            .iter()
            .position(|s| *s == e.label)
            .ok_or_else(|| SoficError::UnknownSymbol(e.label.clone()))?;
        edges.push(Edge { from: e.from, to: e.to, label: label as Symbol });
    }
    LabeledPresentation::new(file.alphabet, file.vertices, edges)
}

pub fn to_file(p: &LabeledPresentation) -> PresentationFile {
    PresentationFile {
        alphabet: p.alphabet().to_vec(),
        vertices: p.vertex_count(),
        edges: p
            .edges()
            .iter()
            .map(|e| EdgeFile { from: e.from, to: e.to, label: p.alphabet()[e.label as usize].clone() })
            .collect(),
    }
}

pub fn load_shift(path: &std::path::Path) -> std::result::Result<SoficShift, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let p = parse_presentation(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    SoficShift::new(p).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GM: &str = r#"{"alphabet":["0","1"],"vertices":2,
        "edges":[{"from":0,"to":0,"label":"0"},{"from":0,"to":1,"label":"1"},{"from":1,"to":0,"label":"0"}]}"#;

    #[test]
    fn golden_mean_file() {
        let p = parse_presentation(GM).unwrap();
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(p.edges().len(), 3);
    }

    #[test]
    fn full_shift_file() {
        let text = r#"{"alphabet":["a","b"],"vertices":1,
            "edges":[{"from":0,"to":0,"label":"a"},{"from":0,"to":0,"label":"b"}]}"#;
        assert_eq!(parse_presentation(text).unwrap().vertex_count(), 1);
    }

    #[test]
    fn dead_end_is_empty() {
        let text = r#"{"alphabet":["0"],"vertices":2,"edges":[{"from":0,"to":1,"label":"0"}]}"#;
        assert_eq!(parse_presentation(text), Err(SoficError::EmptyLanguage));
    }

    #[test]
    fn unknown_label() {
        let text = r#"{"alphabet":["0"],"vertices":1,"edges":[{"from":0,"to":0,"label":"x"}]}"#;
        assert_eq!(parse_presentation(text), Err(SoficError::UnknownSymbol("x".into())));
    }

    #[test]
    fn round_trip() {
        let p = parse_presentation(GM).unwrap();
        let text = serde_json::to_string(&to_file(&p)).unwrap();
        assert_eq!(parse_presentation(&text).unwrap(), p);
    }
}
