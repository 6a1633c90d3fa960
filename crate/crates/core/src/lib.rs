//! Finite-level Galois cohomology for abelian Galois modules: `H¹` over
//! residue rings, Tate–Shafarevich kernels, and machine-checked failures of
//! approximation for augmentation ideals.
//!
//! The layers build on each other:
//!
//! * [`linalg`]: integer Smith normal form and kernels/quotients over `Z/m`.
//! * [`group`]: finite groups from permutations, tables or builtins.
//! * [`module`]: `G`-modules over `Z/m`, group rings, augmentation ideals, duals.
//! * [`cohomology`]: `H¹`, `Ĥ⁰`, restriction, `Ш¹_cyc` and `Ш¹_Σ`.
//! * [`arithmetic`]: primality, power residues, local squares, decomposition groups.
//! * [`certificate`]: the end-to-end counterexample certificates.
//! * [`cli`]: the `tame-approx` command line.

pub mod arithmetic;
pub mod certificate;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod linalg;
pub mod module;

pub use cohomology::{h1, res_h1, sha_cyc, sha_sigma, tate_h0, H1Result, PlaceRecord};
pub use error::{ArithmeticError, CohomologyError, GroupError, LinalgError, ModuleError};
pub use group::{Group, Subgroup};
pub use linalg::{kernel_mod, quotient_structure, snf, AbGroupStructure, IntMatrix};
pub use module::GModule;
