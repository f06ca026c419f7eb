//! JSON interchange for simplicial complexes.
//!
//! The document form used by the command line:
//! `{"m": 4, "maximal_faces": [[1,2],[2,3],[3,4],[1,4]]}` with 1-indexed
//! vertices. Parsing applies the full construction validation.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub m: u32,
    pub maximal_faces: Vec<Vec<u32>>,
}

impl ComplexDoc {
    pub fn from_complex(k: &SimplicialComplex) -> ComplexDoc {
        ComplexDoc {
            m: k.m(),
            maximal_faces: k.maximal_faces().iter().map(|f| f.vertices()).collect(),
        }
    }

    pub fn into_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_maximal_faces(self.m, &self.maximal_faces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip() {
        let k = SimplicialComplex::from_maximal_faces(
            4,
            &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]],
        )
        .unwrap();
        let doc = ComplexDoc::from_complex(&k);
        assert_eq!(doc.m, 4);
        assert_eq!(doc.into_complex().unwrap(), k);

        // Canonical face order: by cardinality, then numeric bit value.
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"m":4,"maximal_faces":[[1,2],[2,3],[1,4],[3,4]]}"#);
        let parsed: ComplexDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.into_complex().unwrap(), k);
    }

    #[test]
    fn empty_complex_document() {
        let doc = ComplexDoc::from_complex(&SimplicialComplex::empty());
        assert_eq!(doc.m, 0);
        assert_eq!(doc.maximal_faces, vec![Vec::<u32>::new()]);
        assert_eq!(doc.into_complex().unwrap(), SimplicialComplex::empty());
    }

    #[test]
    fn invalid_documents_are_rejected() {
        let doc = ComplexDoc {
            m: 3,
            maximal_faces: vec![vec![1, 2]],
        };
        assert!(doc.into_complex().is_err());
    }
}
