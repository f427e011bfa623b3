//! Computations with elementary abelian actions on generalized Fermat
//! varieties.
//!
//! The group H ≅ Z_p^n generated by the diagonal maps
//! `phi_j : x_j -> ω_p x_j` acts on the complete intersection
//! `X_n^p(Λ) ⊂ P^n`, and quotients `X / K` by freely acting subgroups K give
//! the Z_p^m-actions of type (d; p, n). The modules cover:
//!
//! * [`group`]: arithmetic in H, subgroups over F_p, the generator permutation action;
//! * [`fixed_points`]: level sets and the fixed-point criterion for elements and subgroups;
//! * [`free_enum`]: enumeration and orbit classification of freely acting subgroups;
//! * [`geometry`]: exact general-position checks, the algebraic model and numeric fibers;
//! * [`cohomology`]: twisted-sheaf dimensions, plurigenera, genus, hyperbolicity;
//! * [`invariants`]: invariant monomials, binomial relations and the induced quotient action;
//! * [`golden`]: the frozen reference-value suite and its checker.

pub mod cohomology;
pub mod error;
pub mod fixed_points;
pub mod free_enum;
pub mod geometry;
pub mod golden;
pub mod group;
pub mod invariants;
pub mod json;
pub mod linalg;

pub use error::{Error, Result};
pub use group::{GeneratorPermutation, GroupElement, GroupParams, Subgroup};
