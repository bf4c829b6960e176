//! Monomial ideals, multicomplexes and the correspondence between pretty
//! k-clean ideals and k-decomposable multicomplexes.

pub mod cleanness;
pub mod error;
pub mod exponents;
pub mod ideals;
pub mod multicomplex;
pub mod oracles;
pub mod polarization;
pub mod sample;
pub mod search;
pub mod simplicial;

pub use error::{Error, Result};
pub use exponents::{Exp, ExpVec, Fin, Inf};
pub use ideals::{MonomialIdeal, MonomialPrime};
pub use multicomplex::{Multicomplex, ShedVerdict, SheddingTree, StanleySet};
pub use search::SearchBound;
pub use simplicial::{ComplexTree, SimplicialComplex};
pub use cleanness::{Cleanness, FiltrationMode, IdealTree, PrimeFiltration};
pub use polarization::PolarizationMap;
