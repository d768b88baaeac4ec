//! Verification workbench for multiplicative functions satisfying
//! `f(p+q-2) = f(p) + f(q) - f(2)` over primes.

pub mod cli;
pub mod goldbach;
pub mod multfunc;
pub mod rational;
pub mod replay;
pub mod report;
pub mod sieve;
pub mod solver;
pub mod spiro;
