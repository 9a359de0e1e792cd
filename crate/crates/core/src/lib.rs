//! Rosenbrock-type integrators for index-1 differential-algebraic equations.

pub mod conditions;
pub mod dae;
pub mod experiments;
pub mod golden;
pub mod linalg;
pub mod problems;
pub mod stepper;
pub mod tableau;
