//! Even graded coefficient rings, Koszul complexes and homological algebra
//! over exterior algebras.

mod divided;
mod exterior;
mod koszul;
mod ring;

pub use divided::{divided_power_multiply, DividedMonomial};
pub use exterior::{
    ext_over_exterior, ext_ranks_bruteforce, tor_over_exterior, tor_quotient, tor_ranks_bruteforce,
    AlgebraPresentation, PresentationGenerator, PresentationKind, RankTable,
};
pub use koszul::{exterior_shapes, koszul_complex, koszul_tor, BasisElement, ChainComplex};

pub use ring::{
    BaseRing, Generator, GradedElement, GradedRingSpec, QuotientSpec, Ring, DEFAULT_PRECISION,
};
