//! Exact computation of chromatic quasisymmetric functions of natural unit
//! interval orders.
//!
//! The library builds the generating function `X_G(x, t)` of proper colorings
//! of the incomparability graph `G` of a natural unit interval order, weighted
//! by `t^#ascents`, in two bases of the symmetric functions of degree `n`:
//!
//! - the Schur basis, by enumerating P-tableaux and their G-inversions
//!   ([`tableaux`]),
//! - the elementary basis, via the Jacobi-Trudi determinant ([`symfun`]).
//!
//! On top of the two pipelines sit closed-form e-expansions for special order
//! families ([`formulas`]), the witness/insertion bijection between tableau
//! shapes ([`biject`]), a brute-force coloring oracle ([`oracle`]) and the
//! positivity / palindromicity / unimodality checkers ([`verify`]).
//!
//! All arithmetic is exact. Polynomial coefficients are generic over an
//! integer-like scalar ([`poly::Coeff`]); the concrete alias used throughout
//! the pipeline is [`TPoly`], with arbitrary-precision [`num_bigint::BigInt`]
//! coefficients. Centers of symmetry are exact rationals ([`Center`]), never
//! floats.
//!
//! ```
//! use cqf_core::orders::NUIOrder;
//! use cqf_core::symfun::e_expansion;
//! use cqf_core::tableaux::Partition;
//! use cqf_core::TPoly;
//!
//! // The order whose incomparability graph is the path 1-2-3-4.
//! let path = NUIOrder::new(vec![2, 3, 4]).unwrap();
//! let expansion = e_expansion(&path);
//! assert_eq!(
//!     expansion.coeff(&Partition::new(vec![2, 2])),
//!     TPoly::from_ints(&[0, 1, 1]), // t + t^2
//! );
//! ```

pub mod biject;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod orders;
pub mod poly;
pub mod symfun;
pub mod tableaux;
pub mod verify;

/// Polynomial in `t` with arbitrary-precision integer coefficients.
pub type TPoly = poly::Poly<num_bigint::BigInt>;

/// Exact rational center of symmetry (half-integers occur: `|E|/2`).
pub type Center = num_rational::Rational64;

pub use error::Error;
