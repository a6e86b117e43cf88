//! Inputs shared by the criterion benchmarks in `benches/`.

use qdiff_core::{fixtures, GradedAlgebra, QMode};

/// ℂ² and ℂ³ in the given mode, the bases of most envelope benchmarks.
pub fn diagonals(mode: QMode) -> [GradedAlgebra; 2] {
    [fixtures::diagonal(2, mode), fixtures::diagonal(3, mode)]
}
