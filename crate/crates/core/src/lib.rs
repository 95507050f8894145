//! Kauffman states, Seifert spaces and the alternative tree algorithm for
//! oriented link diagrams, with the top filtration level of knot Floer
//! homology of alternative links and an Alexander polynomial oracle.

pub mod algebra;
pub mod analysis;
pub mod ata;
pub mod corpus;
pub mod diagram;
pub mod par;
pub mod seifert;
pub mod states;
mod unionfind;

pub use algebra::{AlgebraError, HalfInt, LaurentPoly};
pub use diagram::{parse_pd, DecoratedDiagram, DiagramError, LinkDiagram};
