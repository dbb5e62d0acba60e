//! Exact arithmetic and solution families for `a·X^m + b·Y^n = c·I` over
//! 2×2 integer matrices.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod equation;
pub mod families;
pub mod mat2;
pub mod numtheory;
pub mod oracle;
pub mod quadfield;
pub mod solver;

pub use equation::{EquationSpec, SpecError};
pub use families::{FamilyDescriptor, SolutionPair};
pub use mat2::Mat2;
pub use quadfield::{CommutantFrame, QuadElem};
pub use solver::{classify, SolvabilityReport, Verdict};
