//! Mixed graphs, their η-Hermitian adjacency spectra, switching classification
//! of mixed cycles, and periodicity of the Grover walk with arc phases.

pub mod cli;
pub mod error;
pub mod generate;
pub mod graph;
pub mod linalg;
pub mod periodicity;
pub mod spectra;
pub mod switching;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{build_cycle, build_path, ArcIndex, MixedGraph, Orientation};
pub use linalg::{ComplexMatrix, Polynomial, Spectrum};
pub use periodicity::{period_of, PeriodOptions, PeriodReport};
pub use spectra::{Angle, RationalAngle};
pub use switching::{canonicalize_cycle, classify_cycle, CycleClassification, Move};
pub use walk::{time_evolution, WalkOperators};
