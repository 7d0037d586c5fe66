//! Many-body level density of a non-interacting Fermi gas.
//!
//! Three independent routes to the same quantity, at desk scale:
//!
//! - [`partition`]: exact arbitrary-precision counting of occupation
//!   configurations of a discrete integer spectrum, and the restricted
//!   integer-partition counts they correspond to;
//! - [`thermo`]: the grand-canonical saddle point of a smooth power-law
//!   spectrum, solved numerically for (beta, mu) with entropy and
//!   fluctuation determinant;
//! - [`asymptotics`]: closed-form degenerate and classical limits, and the
//!   modified-Gumbel factor F(Q, N) that measures the finite-particle-
//!   number correction between them.
//!
//! [`specfun`] supplies the Dirichlet eta, Gamma, and polylogarithm
//! machinery the smooth theory rests on.

pub mod asymptotics;
pub mod partition;
pub mod specfun;
pub mod thermo;
