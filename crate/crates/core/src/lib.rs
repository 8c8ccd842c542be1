//! Fano varieties with a torus action of complexity one and divisor class
//! group `Z`, described through their trinomial Cox rings.
//!
//! * [`linalg`]: exact integer and rational linear algebra (Smith normal form,
//!   rational solver, cone regularity).
//! * [`ring`]: the trinomial rings `R(A, n, L)`, their relations and maximal grading.
//! * [`invariants`]: `Z`-graded candidates, Picard index, anticanonical class and degree.
//! * [`classify`]: bounded enumeration for a given dimension and Picard index.
//! * [`tables`]: output formats and the shipped reference tables.
//! * [`tdiv`]: polyhedral divisors on the projective line and discrepancies.
//! * [`cli`]: the command-line front end.

pub mod classify;
pub mod cli;
pub mod invariants;
pub mod linalg;
pub mod ring;
pub mod tables;
pub mod tdiv;
