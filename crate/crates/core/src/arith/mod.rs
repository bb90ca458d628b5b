//! Exact scalars: rationals, truncated p-adics, the p-adic logarithm and
//! Mahler binomials.

pub mod binomial;
pub mod padic;
pub mod rational;

pub use binomial::{binomial_int, mahler_binomial, mahler_binomial_int};
pub use padic::{is_prime, padic_log, padic_log_to, PadicNumber};
pub use rational::{int, rat, Rational};
