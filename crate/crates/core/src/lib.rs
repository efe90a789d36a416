//! Exact-arithmetic workbench for the combinatorics and homological algebra
//! behind topological Hochschild homology and cohomology of regular quotients
//! `R/I` of even commutative ring spectra.
//!
//! The crate is organised by capability:
//!
//! - [`polytopes`]: faces of associahedra `K_n` and cyclohedra `W_n`.
//! - [`graded`]: even graded coefficient rings, Koszul complexes, and Tor/Ext
//!   over exterior algebras with brute-force resolutions.
//! - [`moduli`]: multiplications on `R/I` in the Künneth model, associativity,
//!   the noncommutativity matrix and obstruction degrees.
//! - [`thh`]: spectral sequence charts, hidden extensions, Weierstrass
//!   resolution of `π_*THH`, divisible towers and the Bökstedt spectral
//!   sequence for `k(n)`.
//! - [`cli`]: presets, rendering and the on-disk cache behind the `thh` binary.
//!
//! All arithmetic is exact: integers, `Z/p^N`, or `p`-adic integers truncated at
//! a fixed precision.

pub mod arith;
pub mod cli;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod moduli;
pub mod polytopes;
pub mod thh;

pub use error::{Error, Result};
