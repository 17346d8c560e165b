//! Two-prime quaternary sequences and their exact 4-adic complexity.
//!
//! For distinct odd primes p, q with gcd(p-1, q-1) = 4, the generalized
//! cyclotomic classes of order 4 modulo pq define a quaternary sequence of
//! period pq. This crate constructs the cyclotomic structure, generates the
//! sequence, computes its m-adic complexity exactly over big integers,
//! predicts the 4-adic complexity in closed form, and verifies the
//! congruence identities the closed form rests on.
//!
//! ```
//! use fouradic::{adic, sequence, TwoPrimeParams};
//!
//! let params = TwoPrimeParams::new(41, 5).unwrap();
//! let seq = sequence::generate(&params);
//! assert_eq!(adic::madic_complexity(&seq, 4).unwrap(), 204); // pq - 1
//! ```
//!
//! Each major capability has a runnable example under `examples/`; the
//! `fouradic` binary exposes the same operations as subcommands.

pub mod adic;
mod arith;
pub mod cyclotomy;
mod error;
pub mod scan;
pub mod sequence;
pub mod verify;

pub use cyclotomy::{ClassLabel, ClassTable, CyclotomicTable, TwoPrimeParams};
pub use error::{Error, Result};
pub use sequence::QuaternarySequence;
