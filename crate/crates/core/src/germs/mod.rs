//! Plane-curve germs, even blow-ups and the classification of negligible
//! singularities.

mod blowup;
mod classify;
mod factor;
mod germ;
mod oracle;
mod parse;
mod resolve;
mod univariate;

pub use blowup::{even_blow_up, even_blow_up_detailed, BlowUp, Direction, EvenBlowUp};
pub use classify::{classify, milnor_number, Singularity};
pub use germ::{Exponents, Germ};
pub use oracle::binomial_oracle;
pub use resolve::{
    even_resolve, even_resolve_with, InfinitelyNearPoint, PointClass, ResolutionTrace,
    ResolveOptions, DEFAULT_MAX_DEPTH,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("germ {germ} has a singular point at a non-rational direction (tangent factor {factor} is not square-free)")]
    RequiresAlgebraicExtension { germ: String, factor: String },
    #[error("resolution did not terminate within {max_depth} blow-ups")]
    DepthOverflow { max_depth: u32 },
}

/// Parses a germ from the text grammar.
pub fn parse_germ(text: &str) -> Result<Germ, GermError> {
    text.parse()
}

/// Multiplicity of the germ at the origin.
pub fn multiplicity(g: &Germ) -> u32 {
    g.multiplicity()
}
