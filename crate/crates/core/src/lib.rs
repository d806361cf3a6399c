//! Steenrod squares acting on the mod-2 polynomial algebra `F2[x1, ..., xn]`,
//! Dickson invariants, and a hit-problem solver that emits checkable
//! certificates.
//!
//! A homogeneous polynomial `f` is *hit* when it can be written as
//! `f = Sq^{i_1}(u_1) + ... + Sq^{i_k}(u_k)` with every `i_j >= 1`.  The
//! solver in [`hitsolver`] decides this by GF(2) row reduction over the graded
//! component of `f` and returns either the preimages `(i, u_i)` or a reduced
//! residual proving non-membership.
//!
//! The [`verify`] module replays the classical Steenrod-square tables for
//! `V_n` and the Dickson invariants `Q_{n,s}`, the reduction steps used to show
//! that the Dickson algebra `D_n` is hit for `n > 3`, and scans all Dickson
//! monomials up to a degree bound.
//!
//! ```
//! use steenrod_hit::{dickson, hitsolver::{HitSolver, HitAnswer}};
//!
//! let solver = HitSolver::default();
//! let q32 = dickson::dickson_q(3, 2).unwrap();
//! match solver.is_hit(&q32).unwrap() {
//!     HitAnswer::Hit(cert) => assert!(cert.verify(&q32)),
//!     HitAnswer::NotHit(_) => unreachable!("Q_{{3,2}} is hit"),
//! }
//! ```

pub mod bits;
pub mod cli;
pub mod dickson;
pub mod f2poly;
pub mod hitsolver;
pub mod steenrod;
pub mod verify;

pub use f2poly::{F2Error, GradedBasis, Monomial, Polynomial};
pub use hitsolver::{HitAnswer, HitCertificate, HitSolver, SolverConfig};
pub use steenrod::{chi_sq, sq, OpKind, OperatorWord};
