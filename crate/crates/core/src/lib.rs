//! Exact invariants of fibred surfaces built from double covers of ruled
//! surfaces.

pub mod bounds;
pub mod constructions;
pub mod datum;
pub mod fibration;
pub mod germs;
pub mod hurwitz;
pub mod rational;
