//! Degreewise graded linear algebra over `P(w)`.
//!
//! Every module-theoretic question (kernels, cokernels, membership,
//! syzygies) is answered by exact linear algebra on finite graded pieces.

mod echelon;
mod graded;
mod groebner;
mod ideal;
mod matrix;
mod presentation;
mod syzygy;

pub use echelon::{Echelon, Insert};
pub use graded::{degree_piece, degree_piece_cached, rank_and_kernel, FreePiece, GradedFree, GradedMatrix};
pub use groebner::{GroebnerBasis, QuotientAmbient, StandardBasis};
pub use ideal::{ideal_membership, IdealGens, IdealSpan, MembershipRecord};
pub use matrix::Mat;
pub use presentation::{hilbert_of_coker, minimal_presentation, GradedAmbient, PolyRingAmbient, Presentation, PresentationResult};
pub use syzygy::{default_bound, stabilization_window, syzygies_up_to, SyzygyResult};

use ring::{default_names, text::parse_poly, Field, FieldSpec, Weights};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlaError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("entry ({row},{col}) is not homogeneous of degree {expected}")]
    NotHomogeneous { row: usize, col: usize, expected: i64 },
    #[error("component {component} is not of degree {expected}")]
    WrongDegree { component: usize, expected: i64 },
    #[error("ideal generator {0} is not homogeneous")]
    NotHomogeneousGen(usize),
    #[error("membership query is not homogeneous")]
    NotHomogeneousInput,
    #[error("field mismatch: document is over {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// JSON form of a graded matrix; entries are polynomial strings in `x0..xn`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GradedMatrixDoc {
    pub version: u32,
    pub weights: Weights,
    pub field: FieldSpec,
    pub row_twists: Vec<i64>,
    pub col_twists: Vec<i64>,
    pub entries: Vec<Vec<String>>,
}

impl<F: Field> GradedMatrix<F> {
    pub fn to_doc(&self) -> GradedMatrixDoc {
        let names = default_names(self.weights.len());
        GradedMatrixDoc {
            version: SCHEMA_VERSION,
            weights: self.weights.clone(),
            field: F::spec(),
            row_twists: self.target.twists.clone(),
            col_twists: self.source.twists.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.render(&names)).collect()).collect(),
        }
    }

    pub fn from_doc(doc: &GradedMatrixDoc) -> Result<Self, GlaError> {
        if doc.field != F::spec() {
            return Err(GlaError::FieldMismatch(doc.field.to_string()));
        }
        let names = default_names(doc.weights.len());
        let entries = doc
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_poly::<F>(s, &names, &doc.weights).map_err(|e| GlaError::Parse(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        GradedMatrix::new(
            doc.weights.clone(),
            GradedFree::new(doc.col_twists.clone()),
            GradedFree::new(doc.row_twists.clone()),
            entries,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, GlaError> {
        let doc: GradedMatrixDoc = serde_json::from_str(s).map_err(|e| GlaError::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationDoc {
    pub version: u32,
    pub generators: Vec<i64>,
    pub relations: GradedMatrixDoc,
}

impl<F: Field> Presentation<F> {
    pub fn to_json(&self) -> String {
        let doc = PresentationDoc {
            version: SCHEMA_VERSION,
            generators: self.generators.twists.clone(),
            relations: self.relations.to_doc(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, GlaError> {
        let doc: PresentationDoc = serde_json::from_str(s).map_err(|e| GlaError::Parse(e.to_string()))?;
        let relations = GradedMatrix::from_doc(&doc.relations)?;
        if relations.target.twists != doc.generators {
            return Err(GlaError::Shape("relation target differs from generators".into()));
        }
        Ok(Presentation { generators: GradedFree::new(doc.generators), relations })
    }
}
