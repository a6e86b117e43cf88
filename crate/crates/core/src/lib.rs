//! Exact computations with graded q-differential algebras: q-numbers over
//! ℚ(q) and cyclotomic fields, truncated graded algebras and their
//! q-differentials, Hochschild-type cochains, the tensor calculus with its
//! universal envelope, and generalized cohomology of N-complexes.

mod poly;

pub mod acceptance;
pub mod cochain;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod homology;
pub mod linalg;
pub mod qdla;
pub mod scalar;
pub mod tensor;

pub use cochain::{BilinearProduct, Bimodule, Cochain, CochainAlgebra, Values};
pub use error::{Error, Result};
pub use graded::{
    covering, lift_map, make_algebra, parse_sparse, AlgebraData, AlgebraFile, Covering, DegreeOneMap, DifferentialFile, Element,
    GradedAlgebra, GradedMap, Grading, TruncatedAlgebra,
};
pub use homology::{
    cohomology, cohomology_table, hexagon_check, hexagon_classes, long_sequences, ComplexView, GeneralizedCohomology,
    HexagonClass, HexagonReport, SequenceReport, UngradedComplex,
};
pub use linalg::{Echelon, LinearMap, SparseVec};
pub use poly::Poly;
pub use qdla::{attach, inner_derivation, inner_differential, LawReport, QDiffAlgebra};
pub use scalar::{q_binomial, q_factorial, q_int, QMode, Scalar};
pub use tensor::envelope::{compare_envelopes, envelope_abstract, universal_extension, EnvelopeAbstract, EnvelopeReport};
pub use tensor::{extend_hom, omega_classical, omega_q_embedded, tensor_calculus, EmbeddedSubalgebra, TensorAlgebra, TensorCalculus, Variant};
