//! Desk-scale workbench for strict topological theories over finite
//! commutative quantales: quantale-valued matrix algebra, T-categories and
//! T-distributors, Cauchy completion, and the opens/points comparison, all
//! checked by exhaustive enumeration on finite instances.

pub mod cauchy;
pub mod finset;
pub mod quantale;
pub mod theory;
pub mod vcat;
pub mod vmat;
pub mod report;
pub mod tcat;

pub use cauchy::{AdjointPair, CauchyCompletion};
pub use finset::{FinMap, FinSet};
pub use quantale::{Quantale, QuantaleError};
pub use theory::{MonadKind, Theory, TheoryError, TMatrix};
pub use vcat::{Presheaf, PresheafCategory, Representative, VCategory, Variance, VcatError};
pub use vmat::{MatError, VMatrix};
pub use report::{LawCheck, LawReport, Verdict};
pub use tcat::{TCategory, TFunctor, TGraph, TcatError};
