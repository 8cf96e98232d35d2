pub mod endspace;
pub mod ordinal;
pub mod surface;
pub mod homology;
pub mod constructions;
pub mod decide;
pub mod cli;
